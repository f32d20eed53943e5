//! Matroid membership oracles, the shipped families, and base/rank/exchange operations.

mod families;
mod validate;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use families::{
    ExplicitMatroid, GraphicMatroid, LinearMatroidGF2, PartitionMatroid, UniformMatroid,
};
pub use validate::{validate_axioms, AxiomVerdict, AxiomWitness};

use crate::budget::Budget;
use crate::error::{Error, Result};

/// An independence system given by a membership test over subsets of `0..n`.
///
/// `set` holds distinct in-range indices in no particular order.
pub trait Matroid: Send + Sync + fmt::Debug {
    fn ground_size(&self) -> usize;
    fn independent(&self, set: &[usize]) -> bool;
    fn kind(&self) -> &'static str {
        "custom"
    }
}

impl<M: Matroid + ?Sized> Matroid for Arc<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn independent(&self, set: &[usize]) -> bool {
        (**self).independent(set)
    }
    fn kind(&self) -> &'static str {
        (**self).kind()
    }
}

/// Membership oracle with an atomic invocation counter.
pub struct MatroidOracle {
    inner: Arc<dyn Matroid>,
    calls: AtomicU64,
}

impl MatroidOracle {
    pub fn new<M: Matroid + 'static>(m: M) -> MatroidOracle {
        MatroidOracle::from_arc(Arc::new(m))
    }

    pub fn from_arc(inner: Arc<dyn Matroid>) -> MatroidOracle {
        MatroidOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    pub fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        let n = self.ground_size();
        if let Some(&e) = set.iter().find(|&&e| e >= n) {
            return Err(Error::UnknownElement(format!("#{e}")));
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(self.inner.independent(set))
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    /// Uncounted access to the underlying matroid.
    pub fn matroid(&self) -> &Arc<dyn Matroid> {
        &self.inner
    }
}

impl fmt::Debug for MatroidOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatroidOracle")
            .field("inner", &self.inner)
            .field("calls", &self.calls())
            .finish()
    }
}

/// A maximal independent set, kept sorted in ground-set order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Base(Vec<usize>);

impl Base {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Size of every base, by greedy extension from the empty set. At most `n` calls.
pub fn rank(m: &MatroidOracle) -> Result<usize> {
    let mut current = Vec::new();
    for e in 0..m.ground_size() {
        current.push(e);
        if !m.is_independent(&current)? {
            current.pop();
        }
    }
    Ok(current.len())
}

/// Extends the independent set `a` to a base, scanning the remaining elements in
/// canonical order.
pub fn extend_to_base(m: &MatroidOracle, a: &[usize]) -> Result<Base> {
    let mut current = a.to_vec();
    current.sort_unstable();
    current.dedup();
    if !m.is_independent(&current)? {
        return Err(Error::Precondition(format!("{a:?} is not independent")));
    }
    for e in 0..m.ground_size() {
        if current.contains(&e) {
            continue;
        }
        current.push(e);
        if !m.is_independent(&current)? {
            current.pop();
        }
    }
    current.sort_unstable();
    Ok(Base(current))
}

/// Certifies `set` as a base: independent and no single element extends it.
pub fn as_base(m: &MatroidOracle, set: &[usize]) -> Result<Base> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if !m.is_independent(&s)? {
        return Err(Error::Precondition(format!("{set:?} is not independent")));
    }
    let mut probe = s.clone();
    for e in 0..m.ground_size() {
        if s.binary_search(&e).is_ok() {
            continue;
        }
        probe.push(e);
        let extends = m.is_independent(&probe)?;
        probe.pop();
        if extends {
            return Err(Error::Precondition(format!(
                "{set:?} is not maximal: element {e} can be added"
            )));
        }
    }
    Ok(Base(s))
}

/// For `A ⊊ B` with `B` a base and `A ∪ {e}` independent, finds `e' ∈ B \ A` such that
/// `(B \ {e'}) ∪ {e}` is a base.
///
/// Grows `A ∪ {e}` with the elements of `B \ A` in canonical order while it stays
/// independent; the single element of `B \ A` left out is `e'`. Costs at most
/// `|B| - |A| + 1` membership calls after the precondition checks.
pub fn exchange_witness(m: &MatroidOracle, a: &[usize], b: &Base, e: usize) -> Result<usize> {
    let n = m.ground_size();
    if e >= n {
        return Err(Error::UnknownElement(format!("#{e}")));
    }
    let mut a_sorted = a.to_vec();
    a_sorted.sort_unstable();
    a_sorted.dedup();
    if !a_sorted.iter().all(|&x| b.contains(x)) || a_sorted.len() >= b.len() {
        return Err(Error::Precondition(
            "A must be a strict subset of B".to_string(),
        ));
    }
    if a_sorted.binary_search(&e).is_ok() {
        return Err(Error::Precondition(format!("element {e} already in A")));
    }
    let mut current = a_sorted.clone();
    current.push(e);
    if !m.is_independent(&current)? {
        return Err(Error::Precondition(
            "A ∪ {e} is not independent".to_string(),
        ));
    }
    if b.contains(e) {
        return Ok(e);
    }
    let mut left_out = Vec::new();
    for &x in b.elements() {
        if a_sorted.binary_search(&x).is_ok() {
            continue;
        }
        current.push(x);
        if !m.is_independent(&current)? {
            current.pop();
            left_out.push(x);
        }
    }
    match left_out.as_slice() {
        [only] => Ok(*only),
        _ => Err(Error::Precondition(format!(
            "exchange left out {} elements of B; the oracle is not a matroid or B is not a base",
            left_out.len()
        ))),
    }
}

/// Depth-first enumeration of all independent sets in canonical order, never extending a
/// dependent set. Each candidate costs one membership call.
pub struct IndependentSets<'a> {
    oracle: &'a MatroidOracle,
    // (set, next element to try)
    stack: Vec<(Vec<usize>, usize)>,
    started: bool,
}

impl Iterator for IndependentSets<'_> {
    type Item = Result<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            return match self.oracle.is_independent(&[]) {
                Ok(true) => {
                    self.stack.push((Vec::new(), 0));
                    Some(Ok(Vec::new()))
                }
                Ok(false) => None,
                Err(err) => Some(Err(err)),
            };
        }
        let n = self.oracle.ground_size();
        while let Some((set, next)) = self.stack.last_mut() {
            if *next >= n {
                self.stack.pop();
                continue;
            }
            let e = *next;
            *next += 1;
            let mut candidate = set.clone();
            candidate.push(e);
            match self.oracle.is_independent(&candidate) {
                Ok(true) => {
                    self.stack.push((candidate.clone(), e + 1));
                    return Some(Ok(candidate));
                }
                Ok(false) => {}
                Err(err) => return Some(Err(err)),
            }
        }
        None
    }
}

pub fn enumerate_independent_sets<'a>(
    m: &'a MatroidOracle,
    budget: &Budget,
) -> Result<IndependentSets<'a>> {
    Budget::check(
        "matroid ground set size",
        m.ground_size() as u128,
        budget.max_matroid_n as u128,
    )?;
    Ok(IndependentSets {
        oracle: m,
        stack: Vec::new(),
        started: false,
    })
}
