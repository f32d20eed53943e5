use std::fmt;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;

use super::MatroidOracle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum AxiomWitness {
    /// The empty set is dependent.
    M1,
    /// `subset ⊆ superset`, superset independent, subset dependent.
    M2 {
        subset: Vec<usize>,
        superset: Vec<usize>,
    },
    /// `|smaller| < |larger|`, both independent, and no element of `larger \ smaller`
    /// augments `smaller`.
    M3 {
        smaller: Vec<usize>,
        larger: Vec<usize>,
    },
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::M1 => write!(f, "M1 fails: the empty set is dependent"),
            AxiomWitness::M2 { subset, superset } => write!(
                f,
                "M2 fails: {subset:?} is dependent but contained in independent {superset:?}"
            ),
            AxiomWitness::M3 { smaller, larger } => {
                write!(f, "M3 fails: no element of {larger:?} augments {smaller:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Matroid,
    Violated(AxiomWitness),
}

impl AxiomVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, AxiomVerdict::Matroid)
    }

    pub fn witness(&self) -> Option<&AxiomWitness> {
        match self {
            AxiomVerdict::Matroid => None,
            AxiomVerdict::Violated(w) => Some(w),
        }
    }
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&e| mask >> e & 1 == 1).collect()
}

/// Exhaustively checks the three matroid axioms over all `2^n` subsets.
///
/// M2 is checked by single-element removals (enough by induction). Once M2 holds, M3
/// only needs pairs with `|B| = |A| + 1`: any larger `B` contains an independent
/// `B' ⊆ B` of size `|A| + 1` whose augmenting element also lies in `B \ A`.
pub fn validate_axioms(m: &MatroidOracle, budget: &Budget) -> Result<AxiomVerdict> {
    let n = m.ground_size();
    Budget::check(
        "matroid ground set size",
        n as u128,
        budget.max_matroid_n.min(crate::budget::HARD_MATROID_N) as u128,
    )?;
    let total = 1u32 << n;
    let mut independent = vec![false; total as usize];
    for mask in 0..total {
        independent[mask as usize] = m.is_independent(&members(mask, n))?;
    }

    if !independent[0] {
        return Ok(AxiomVerdict::Violated(AxiomWitness::M1));
    }

    for mask in 0..total {
        if !independent[mask as usize] {
            continue;
        }
        for e in (0..n).rev().filter(|&e| mask >> e & 1 == 1) {
            let sub = mask & !(1 << e);
            if !independent[sub as usize] {
                return Ok(AxiomVerdict::Violated(AxiomWitness::M2 {
                    subset: members(sub, n),
                    superset: members(mask, n),
                }));
            }
        }
    }

    let by_size: Vec<Vec<u32>> = (0..=n)
        .map(|s| {
            (0..total)
                .filter(|&mask| independent[mask as usize] && mask.count_ones() as usize == s)
                .collect()
        })
        .collect();
    for s in 0..n {
        for &a in &by_size[s] {
            for &b in &by_size[s + 1] {
                let augments = (0..n)
                    .filter(|&e| b >> e & 1 == 1 && a >> e & 1 == 0)
                    .any(|e| independent[(a | 1 << e) as usize]);
                if !augments {
                    return Ok(AxiomVerdict::Violated(AxiomWitness::M3 {
                        smaller: members(a, n),
                        larger: members(b, n),
                    }));
                }
            }
        }
    }
    Ok(AxiomVerdict::Matroid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroids::{
        ExplicitMatroid, GraphicMatroid, LinearMatroidGF2, Matroid, PartitionMatroid,
        UniformMatroid,
    };

    #[derive(Debug)]
    struct EvenSets(usize);

    impl Matroid for EvenSets {
        fn ground_size(&self) -> usize {
            self.0
        }
        fn independent(&self, set: &[usize]) -> bool {
            set.len().is_multiple_of(2)
        }
    }

    fn check<M: Matroid + 'static>(m: M) -> AxiomVerdict {
        validate_axioms(&MatroidOracle::new(m), &Budget::default()).unwrap()
    }

    #[test]
    fn shipped_families_are_matroids() {
        assert!(check(UniformMatroid::new(4, 2)).holds());
        assert!(check(UniformMatroid::new(3, 0)).holds());
        assert!(
            check(PartitionMatroid::new(4, vec![(vec![0, 3], 1), (vec![1, 2], 2)]).unwrap())
                .holds()
        );
        assert!(check(
            GraphicMatroid::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (0, 1)]).unwrap()
        )
        .holds());
        assert!(check(
            LinearMatroidGF2::new(
                3,
                &[
                    vec![true, false, false],
                    vec![false, true, false],
                    vec![true, true, false],
                    vec![false, false, false],
                    vec![true, true, true],
                ]
            )
            .unwrap()
        )
        .holds());
    }

    #[test]
    fn even_cardinality_fails_m2() {
        assert_eq!(
            check(EvenSets(2)).witness(),
            Some(&AxiomWitness::M2 {
                subset: vec![0],
                superset: vec![0, 1],
            })
        );
    }

    #[test]
    fn missing_empty_set_fails_m1() {
        let m = ExplicitMatroid::new(1, vec![vec![0]]).unwrap();
        assert_eq!(check(m).witness(), Some(&AxiomWitness::M1));
    }

    #[test]
    fn hereditary_but_not_augmentable_fails_m3() {
        // {0} and {1,2} maximal: not all bases have equal size
        let m =
            ExplicitMatroid::new(3, vec![vec![], vec![0], vec![1], vec![2], vec![1, 2]]).unwrap();
        assert_eq!(
            check(m).witness(),
            Some(&AxiomWitness::M3 {
                smaller: vec![0],
                larger: vec![1, 2],
            })
        );
    }

    #[test]
    fn validator_counts_every_subset() {
        let o = MatroidOracle::new(UniformMatroid::new(4, 2));
        validate_axioms(&o, &Budget::default()).unwrap();
        assert_eq!(o.calls(), 16);
    }
}
