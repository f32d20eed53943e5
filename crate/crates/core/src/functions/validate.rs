//! Exhaustive checks of the defining axioms of monotone k-submodular functions.
//!
//! Every validator tabulates the function once through the oracle (so each costs
//! `(k+1)^n` counted evaluations) and then decides its inequality on exact values. A
//! failed check returns the first violating configuration in enumeration order.

use std::fmt;

use serde::Serialize;

use crate::budget::{lattice_size, Budget};
use crate::domain::{join, meet, LabeledSet, Lattice};
use crate::error::Result;
use crate::value::Value;

use super::FunctionOracle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `lower ⪯ upper` but `f(lower) > f(upper)`.
    NotMonotone {
        lower: Vec<usize>,
        upper: Vec<usize>,
        f_lower: Value,
        f_upper: Value,
    },
    /// `f(x) + f(y) < f(x ⊔ y) + f(x ⊓ y)`.
    NotKSubmodular {
        x: Vec<usize>,
        y: Vec<usize>,
        lhs: Value,
        rhs: Value,
    },
    /// `x ⪯ y` and `Δ_{e,i} f(x) < Δ_{e,i} f(y)`.
    NotOrthantSubmodular {
        x: Vec<usize>,
        y: Vec<usize>,
        element: usize,
        label: usize,
        gain_x: Value,
        gain_y: Value,
    },
    /// `Δ_{e,i} f(x) + Δ_{e,j} f(x) < 0` for `i != j`.
    NotPairwiseMonotone {
        x: Vec<usize>,
        element: usize,
        labels: (usize, usize),
        sum: Value,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotMonotone {
                lower,
                upper,
                f_lower,
                f_upper,
            } => write!(
                f,
                "not monotone: f({lower:?}) = {f_lower} > f({upper:?}) = {f_upper}"
            ),
            Witness::NotKSubmodular { x, y, lhs, rhs } => write!(
                f,
                "not k-submodular: f({x:?}) + f({y:?}) = {lhs} < f(join) + f(meet) = {rhs}"
            ),
            Witness::NotOrthantSubmodular {
                x,
                y,
                element,
                label,
                gain_x,
                gain_y,
            } => write!(
                f,
                "not orthant submodular: gain of e{} -> {label} is {gain_x} at {x:?} but {gain_y} at {y:?}",
                element + 1
            ),
            Witness::NotPairwiseMonotone {
                x,
                element,
                labels,
                sum,
            } => write!(
                f,
                "not pairwise monotone: gains of e{} -> {} and -> {} at {x:?} sum to {sum}",
                element + 1,
                labels.0,
                labels.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}

struct Tabulated {
    lattice: Lattice,
    points: Vec<LabeledSet>,
    values: Vec<Value>,
}

impl Tabulated {
    fn build(f: &FunctionOracle, limit: u128, what: &'static str) -> Result<Tabulated> {
        let n = f.ground_size();
        let k = f.arity();
        Budget::check(what, lattice_size(n, k), limit)?;
        let lattice = Lattice::new(n, k);
        let points: Vec<LabeledSet> = lattice.iter().collect();
        let values = points
            .iter()
            .map(|x| f.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tabulated {
            lattice,
            points,
            values,
        })
    }

    fn at(&self, x: &LabeledSet) -> Value {
        self.values[self.lattice.index(x)]
    }

    /// `Δ_{e,i} f` at the point with dense index `idx`; `e` must be unassigned there.
    fn gain(&self, idx: usize, e: usize, i: usize) -> Value {
        self.values[idx + i * self.lattice.stride(e)] - self.values[idx]
    }
}

/// Monotone iff no single assignment decreases the value; every comparable pair is
/// connected by a chain of such steps, so the witness is always a covering pair.
pub fn is_monotone(f: &FunctionOracle, budget: &Budget) -> Result<Verdict> {
    let t = Tabulated::build(f, budget.max_table, "monotonicity check (k+1)^n")?;
    let k = t.lattice.k;
    for (idx, x) in t.points.iter().enumerate() {
        for e in (0..x.len()).filter(|&e| x.label(e) == 0) {
            for i in 1..=k {
                let up = idx + i * t.lattice.stride(e);
                if t.values[up] < t.values[idx] {
                    return Ok(Verdict::Violated(Witness::NotMonotone {
                        lower: x.to_vec(),
                        upper: t.points[up].to_vec(),
                        f_lower: t.values[idx],
                        f_upper: t.values[up],
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks `f(x) + f(y) >= f(x ⊔ y) + f(x ⊓ y)` over all unordered pairs.
pub fn is_k_submodular(f: &FunctionOracle, budget: &Budget) -> Result<Verdict> {
    let t = Tabulated::build(
        f,
        budget.max_pair_lattice,
        "k-submodularity pair check (k+1)^n",
    )?;
    for (a, x) in t.points.iter().enumerate() {
        for (b, y) in t.points.iter().enumerate().skip(a + 1) {
            let j = join(x, y)?;
            let m = meet(x, y)?;
            let lhs = t.values[a] + t.values[b];
            let rhs = t.at(&j) + t.at(&m);
            if lhs < rhs {
                return Ok(Verdict::Violated(Witness::NotKSubmodular {
                    x: x.to_vec(),
                    y: y.to_vec(),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks `Δ_{e,i} f(x) >= Δ_{e,i} f(y)` for all `x ⪯ y`, `e ∉ supp(y)`, `i ∈ [k]`.
pub fn is_orthant_submodular(f: &FunctionOracle, budget: &Budget) -> Result<Verdict> {
    let t = Tabulated::build(
        f,
        budget.max_pair_lattice,
        "orthant submodularity check (k+1)^n",
    )?;
    let k = t.lattice.k;
    for (yi, y) in t.points.iter().enumerate() {
        let supp = y.support();
        let free: Vec<usize> = (0..y.len()).filter(|&e| y.label(e) == 0).collect();
        if free.is_empty() {
            continue;
        }
        // every x ⪯ y drops some subset of supp(y)
        for mask in 0u64..(1u64 << supp.len()) {
            let mut xi = yi;
            for (bit, &e) in supp.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    xi -= y.label(e) * t.lattice.stride(e);
                }
            }
            for &e in &free {
                for i in 1..=k {
                    let gx = t.gain(xi, e, i);
                    let gy = t.gain(yi, e, i);
                    if gx < gy {
                        return Ok(Verdict::Violated(Witness::NotOrthantSubmodular {
                            x: t.points[xi].to_vec(),
                            y: y.to_vec(),
                            element: e,
                            label: i,
                            gain_x: gx,
                            gain_y: gy,
                        }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks `Δ_{e,i} f(x) + Δ_{e,j} f(x) >= 0` for all `x`, `e ∉ supp(x)`, `i < j`.
pub fn is_pairwise_monotone(f: &FunctionOracle, budget: &Budget) -> Result<Verdict> {
    let t = Tabulated::build(f, budget.max_table, "pairwise monotonicity check (k+1)^n")?;
    let k = t.lattice.k;
    for (idx, x) in t.points.iter().enumerate() {
        for e in (0..x.len()).filter(|&e| x.label(e) == 0) {
            for i in 1..=k {
                for j in i + 1..=k {
                    let sum = t.gain(idx, e, i) + t.gain(idx, e, j);
                    if sum.is_negative() {
                        return Ok(Verdict::Violated(Witness::NotPairwiseMonotone {
                            x: x.to_vec(),
                            element: e,
                            labels: (i, j),
                            sum,
                        }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Runs both sides of the orthant-submodular/pairwise-monotone characterization and
/// returns whether they agree.
pub fn characterization_check(f: &FunctionOracle, budget: &Budget) -> Result<bool> {
    let direct = is_k_submodular(f, budget)?.holds();
    let via_parts =
        is_orthant_submodular(f, budget)?.holds() && is_pairwise_monotone(f, budget)?.holds();
    Ok(direct == via_parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{FnFunction, ModularFunction, TableFunction, WeightedCoverageFunction};

    fn v(x: i64) -> Value {
        Value::from(x)
    }

    fn budget() -> Budget {
        Budget::default()
    }

    fn modular() -> FunctionOracle {
        FunctionOracle::new(
            ModularFunction::new(
                2,
                vec![vec![v(3), v(1)], vec![v(2), v(2)], vec![v(0), v(5)]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn modular_passes_everything() {
        let f = modular();
        assert!(is_monotone(&f, &budget()).unwrap().holds());
        assert!(is_k_submodular(&f, &budget()).unwrap().holds());
        assert!(is_orthant_submodular(&f, &budget()).unwrap().holds());
        assert!(is_pairwise_monotone(&f, &budget()).unwrap().holds());
        assert!(characterization_check(&f, &budget()).unwrap());
    }

    #[test]
    fn coverage_passes() {
        let w = vec![
            vec![vec![v(4), v(1)], vec![v(7), v(0)], vec![v(2), v(6)]],
            vec![vec![v(0), v(3)], vec![v(5), v(5)], vec![v(1), v(0)]],
        ];
        let f = FunctionOracle::new(WeightedCoverageFunction::new(3, 2, w).unwrap());
        assert!(is_monotone(&f, &budget()).unwrap().holds());
        assert!(is_k_submodular(&f, &budget()).unwrap().holds());
        assert!(is_orthant_submodular(&f, &budget()).unwrap().holds());
    }

    #[test]
    fn decreasing_table_not_monotone() {
        let f = FunctionOracle::new(TableFunction::new(1, 1, vec![v(1), v(0)]).unwrap());
        let verdict = is_monotone(&f, &budget()).unwrap();
        assert_eq!(
            verdict.witness(),
            Some(&Witness::NotMonotone {
                lower: vec![0],
                upper: vec![1],
                f_lower: v(1),
                f_upper: v(0),
            })
        );
    }

    #[test]
    fn nonempty_indicator_is_k_submodular() {
        let f = FunctionOracle::new(FnFunction::new(2, 2, |x: &LabeledSet| {
            if x.support_size() >= 1 {
                Value::ONE
            } else {
                Value::ZERO
            }
        }));
        assert!(is_k_submodular(&f, &budget()).unwrap().holds());
    }

    #[test]
    fn pairwise_monotonicity_violation() {
        // every assignment of e1 loses 1 from the zero vector
        let f = FunctionOracle::new(FnFunction::new(1, 2, |x: &LabeledSet| {
            if x.label(0) == 0 {
                Value::ZERO
            } else {
                v(-1)
            }
        }));
        let verdict = is_pairwise_monotone(&f, &budget()).unwrap();
        assert_eq!(
            verdict.witness(),
            Some(&Witness::NotPairwiseMonotone {
                x: vec![0],
                element: 0,
                labels: (1, 2),
                sum: v(-2),
            })
        );
        assert!(!is_k_submodular(&f, &budget()).unwrap().holds());
        assert!(characterization_check(&f, &budget()).unwrap());
    }

    #[test]
    fn supermodular_entry_breaks_orthant_submodularity() {
        // f = |supp| on n=2, k=1, then bump f([1,1]) so the second gain exceeds the first
        let mut t =
            TableFunction::tabulate(2, 1, |x| Value::from(x.support_size() as i64)).unwrap();
        t.set(&LabeledSet::from_labels(&[1, 1], 1).unwrap(), v(5));
        let f = FunctionOracle::new(t);
        let verdict = is_orthant_submodular(&f, &budget()).unwrap();
        match verdict.witness() {
            Some(Witness::NotOrthantSubmodular { gain_x, gain_y, .. }) => {
                assert!(gain_x < gain_y)
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        assert_eq!(
            is_k_submodular(&f, &budget()).unwrap().witness(),
            Some(&Witness::NotKSubmodular {
                x: vec![1, 0],
                y: vec![0, 1],
                lhs: v(2),
                rhs: v(5),
            })
        );
        assert!(characterization_check(&f, &budget()).unwrap());
    }

    #[test]
    fn validators_count_calls() {
        let f = modular();
        is_monotone(&f, &budget()).unwrap();
        assert_eq!(f.calls(), 27);
    }

    #[test]
    fn budget_exceeded_fails_fast() {
        let f = FunctionOracle::new(FnFunction::new(9, 3, |_| Value::ZERO));
        let err = is_k_submodular(&f, &budget()).unwrap_err();
        assert!(matches!(err, crate::Error::BudgetExceeded { .. }));
        assert_eq!(f.calls(), 0);
    }
}
