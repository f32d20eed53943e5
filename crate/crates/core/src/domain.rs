//! Ground sets and labeled assignments `E -> {0, 1, ..., k}`.
//!
//! A [`LabeledSet`] encodes a tuple of pairwise disjoint subsets `(X_1, ..., X_k)` as a
//! dense label array in ground-set order: `x(e) = i` puts `e` in `X_i`, and label 0 means
//! "not selected".

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct element identifiers. The declaration order is the
/// canonical order used for every tie-break in the crate.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Arc<[String]>,
    index: Arc<HashMap<String, usize>>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<GroundSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate element `{name}`")));
            }
        }
        Ok(GroundSet {
            names: names.into(),
            index: Arc::new(index),
        })
    }

    /// Elements named `e1, e2, ..., en`.
    pub fn indexed(n: usize) -> GroundSet {
        GroundSet::new((1..=n).map(|i| format!("e{i}"))).expect("names are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.position(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &str)> {
        self.names.iter().enumerate().map(|(i, s)| (i, s.as_str()))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A label in `{0, 1, ..., k}`; 0 means unassigned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Label(u8);

impl Label {
    pub const NONE: Label = Label(0);

    pub fn new(value: usize, k: usize) -> Result<Label> {
        if value > k || k > u8::MAX as usize {
            return Err(Error::Invalid(format!("label {value} outside 0..={k}")));
        }
        Ok(Label(value as u8))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn is_none(self) -> bool {
        self.0 == 0
    }
}

/// An element of `(k+1)^E` stored as one label per ground element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledSet {
    k: usize,
    labels: Vec<u8>,
}

impl LabeledSet {
    pub fn zeros(n: usize, k: usize) -> LabeledSet {
        assert!(
            (1..=u8::MAX as usize).contains(&k),
            "arity must be in 1..=255"
        );
        LabeledSet {
            k,
            labels: vec![0; n],
        }
    }

    pub fn from_labels(labels: &[usize], k: usize) -> Result<LabeledSet> {
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::Invalid(format!("arity k={k} must be in 1..=255")));
        }
        let labels = labels
            .iter()
            .map(|&l| Label::new(l, k).map(|l| l.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledSet { k, labels })
    }

    /// Builds the labeling from a tuple of subsets `(X_1, ..., X_k)`, failing when the
    /// subsets are not pairwise disjoint.
    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Result<LabeledSet> {
        let mut x = LabeledSet::zeros(n, parts.len());
        for (i, part) in parts.iter().enumerate() {
            for &e in part {
                if e >= n {
                    return Err(Error::Invalid(format!("element index {e} out of range")));
                }
                if x.labels[e] != 0 {
                    return Err(Error::Invalid(format!(
                        "element {e} appears in X_{} and X_{}",
                        x.labels[e],
                        i + 1
                    )));
                }
                x.labels[e] = (i + 1) as u8;
            }
        }
        Ok(x)
    }

    /// The tuple form `(X_1, ..., X_k)`.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (e, &l) in self.labels.iter().enumerate() {
            if l != 0 {
                parts[l as usize - 1].push(e);
            }
        }
        parts
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, e: usize) -> Label {
        Label(self.labels[e])
    }

    pub fn label(&self, e: usize) -> usize {
        self.labels[e] as usize
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().map(|&l| l as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.labels().collect()
    }

    /// A copy with `e` relabeled to `label`.
    pub fn with(&self, e: usize, label: usize) -> LabeledSet {
        assert!(label <= self.k, "label {label} exceeds k={}", self.k);
        let mut y = self.clone();
        y.labels[e] = label as u8;
        y
    }

    pub(crate) fn set(&mut self, e: usize, label: usize) {
        debug_assert!(label <= self.k);
        self.labels[e] = label as u8;
    }

    /// `supp(x)`, in ground-set order.
    pub fn support(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l != 0)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    pub fn check_same_domain(&self, other: &LabeledSet) -> Result<()> {
        if self.k != other.k || self.labels.len() != other.labels.len() {
            return Err(Error::DomainMismatch(format!(
                "(n={}, k={}) vs (n={}, k={})",
                self.labels.len(),
                self.k,
                other.labels.len(),
                other.k
            )));
        }
        Ok(())
    }

    /// Renders with element names, e.g. `{a:1, c:2}`.
    pub fn display<'a>(&'a self, ground: &'a GroundSet) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a LabeledSet, &'a GroundSet);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("{")?;
                let mut first = true;
                for e in self.0.support() {
                    if !first {
                        f.write_str(", ")?;
                    }
                    first = false;
                    write!(f, "{}:{}", self.1.name(e), self.0.label(e))?;
                }
                f.write_str("}")
            }
        }
        Named(self, ground)
    }
}

impl fmt::Debug for LabeledSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels)
    }
}

/// `x ⊓ y`: keeps the labels on which both agree and are nonzero.
pub fn meet(x: &LabeledSet, y: &LabeledSet) -> Result<LabeledSet> {
    x.check_same_domain(y)?;
    let labels = x
        .labels
        .iter()
        .zip(&y.labels)
        .map(|(&a, &b)| if a == b { a } else { 0 })
        .collect();
    Ok(LabeledSet { k: x.k, labels })
}

/// `x ⊔ y`: union of the label classes, with conflicting nonzero labels cancelled to 0.
pub fn join(x: &LabeledSet, y: &LabeledSet) -> Result<LabeledSet> {
    x.check_same_domain(y)?;
    let labels = x
        .labels
        .iter()
        .zip(&y.labels)
        .map(|(&a, &b)| match (a, b) {
            (0, b) => b,
            (a, 0) => a,
            (a, b) if a == b => a,
            _ => 0,
        })
        .collect();
    Ok(LabeledSet { k: x.k, labels })
}

/// `x ⪯ y`: every assigned element of `x` carries the same label in `y`.
pub fn partial_leq(x: &LabeledSet, y: &LabeledSet) -> Result<bool> {
    x.check_same_domain(y)?;
    Ok(x.labels
        .iter()
        .zip(&y.labels)
        .all(|(&a, &b)| a == 0 || a == b))
}

pub fn support(x: &LabeledSet) -> Vec<usize> {
    x.support()
}

/// Dense indexing of all `(k+1)^n` labelings; element `j` is digit `j` in base `k+1`,
/// least significant first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub n: usize,
    pub k: usize,
    size: usize,
}

impl Lattice {
    pub fn new(n: usize, k: usize) -> Lattice {
        let size = crate::budget::lattice_size(n, k);
        assert!(size <= usize::MAX as u128, "lattice too large to index");
        Lattice {
            n,
            k,
            size: size as usize,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labeling(&self, mut index: usize) -> LabeledSet {
        let base = self.k + 1;
        let mut x = LabeledSet::zeros(self.n, self.k);
        for e in 0..self.n {
            x.labels[e] = (index % base) as u8;
            index /= base;
        }
        x
    }

    pub fn index(&self, x: &LabeledSet) -> usize {
        let base = self.k + 1;
        x.labels
            .iter()
            .rev()
            .fold(0usize, |acc, &l| acc * base + l as usize)
    }

    /// Stride of element `e` in the dense index.
    pub fn stride(&self, e: usize) -> usize {
        (self.k + 1).pow(e as u32)
    }

    pub fn iter(&self) -> impl Iterator<Item = LabeledSet> + '_ {
        (0..self.size).map(|i| self.labeling(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(labels: &[usize], k: usize) -> LabeledSet {
        LabeledSet::from_labels(labels, k).unwrap()
    }

    #[test]
    fn meet_examples() {
        assert_eq!(
            meet(&ls(&[1, 0], 2), &ls(&[1, 2], 2)).unwrap(),
            ls(&[1, 0], 2)
        );
        assert_eq!(meet(&ls(&[1], 2), &ls(&[2], 2)).unwrap(), ls(&[0], 2));
        assert_eq!(
            meet(&ls(&[0, 0], 2), &ls(&[2, 1], 2)).unwrap(),
            ls(&[0, 0], 2)
        );
    }

    #[test]
    fn join_examples() {
        assert_eq!(
            join(&ls(&[1, 0], 2), &ls(&[0, 2], 2)).unwrap(),
            ls(&[1, 2], 2)
        );
        assert_eq!(join(&ls(&[1], 2), &ls(&[2], 2)).unwrap(), ls(&[0], 2));
        assert_eq!(
            join(&ls(&[1, 1], 2), &ls(&[1, 0], 2)).unwrap(),
            ls(&[1, 1], 2)
        );
    }

    #[test]
    fn partial_order_examples() {
        assert!(partial_leq(&ls(&[0, 2], 2), &ls(&[1, 2], 2)).unwrap());
        assert!(!partial_leq(&ls(&[1, 0], 2), &ls(&[2, 0], 2)).unwrap());
        assert!(partial_leq(&ls(&[1, 2], 2), &ls(&[1, 2], 2)).unwrap());
    }

    #[test]
    fn support_examples() {
        assert!(ls(&[0, 0, 0], 2).support().is_empty());
        assert_eq!(ls(&[1, 0, 2], 2).support(), vec![0, 2]);
        assert_eq!(ls(&[2, 2], 2).support(), vec![0, 1]);
    }

    #[test]
    fn domain_mismatch() {
        assert!(matches!(
            meet(&ls(&[1, 0], 2), &ls(&[1, 0], 3)),
            Err(Error::DomainMismatch(_))
        ));
        assert!(join(&ls(&[1], 2), &ls(&[1, 0], 2)).is_err());
        assert!(partial_leq(&ls(&[1], 2), &ls(&[1, 0], 2)).is_err());
    }

    #[test]
    fn tuple_form_requires_disjoint_parts() {
        let x = LabeledSet::from_parts(3, &[vec![0], vec![2]]).unwrap();
        assert_eq!(x, ls(&[1, 0, 2], 2));
        assert_eq!(x.parts(), vec![vec![0], vec![2]]);
        assert!(LabeledSet::from_parts(3, &[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn label_out_of_range() {
        assert!(LabeledSet::from_labels(&[3], 2).is_err());
        assert!(LabeledSet::from_labels(&[0], 0).is_err());
    }

    #[test]
    fn duplicate_elements_rejected() {
        assert!(GroundSet::new(["a", "b", "a"]).is_err());
        let g = GroundSet::new(["a", "b"]).unwrap();
        assert_eq!(g.lookup("b").unwrap(), 1);
        assert!(matches!(g.lookup("c"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn lattice_index_roundtrip() {
        let lat = Lattice::new(3, 2);
        assert_eq!(lat.size(), 27);
        for i in 0..lat.size() {
            assert_eq!(lat.index(&lat.labeling(i)), i);
        }
        assert_eq!(lat.labeling(1), ls(&[1, 0, 0], 2));
        assert_eq!(lat.labeling(3), ls(&[0, 1, 0], 2));
    }

    // Exhaustive lattice properties on n <= 4, k <= 3.
    #[test]
    fn meet_join_properties_exhaustive() {
        for k in 1..=3 {
            for n in 0..=4 {
                if (k + 1usize).pow(2 * n as u32) > 70_000 {
                    continue;
                }
                let lat = Lattice::new(n, k);
                let all: Vec<_> = lat.iter().collect();
                for x in &all {
                    for y in &all {
                        let m = meet(x, y).unwrap();
                        let j = join(x, y).unwrap();
                        assert!(partial_leq(&m, x).unwrap());
                        assert!(partial_leq(&m, y).unwrap());
                        assert_eq!(m, meet(y, x).unwrap());
                        assert_eq!(j, join(y, x).unwrap());
                        let sx = x.support();
                        let sy = y.support();
                        for e in m.support() {
                            assert!(sx.contains(&e) && sy.contains(&e));
                        }
                        for e in j.support() {
                            assert!(sx.contains(&e) || sy.contains(&e));
                        }
                    }
                }
            }
        }
    }
}
