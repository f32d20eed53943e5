//! Evaluation oracles, the shipped function families, and axiom validators.

mod families;
mod oracle;
pub mod validate;

pub use families::{ModularFunction, TableFunction, WeightedCoverageFunction};
pub use oracle::{marginal_gain, marginal_gain_from, FnFunction, FunctionOracle, KFunction};
pub use validate::{
    characterization_check, is_k_submodular, is_monotone, is_orthant_submodular,
    is_pairwise_monotone, Verdict, Witness,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{LabeledSet, Lattice};
    use crate::value::Value;

    fn v(x: i64) -> Value {
        Value::from(x)
    }

    fn ls(labels: &[usize], k: usize) -> LabeledSet {
        LabeledSet::from_labels(labels, k).unwrap()
    }

    // T1: n=2, k=2 table with f([1,0]) = 3 and f([1,2]) = 5.
    fn table_t1() -> TableFunction {
        TableFunction::tabulate(2, 2, |x| match (x.label(0), x.label(1)) {
            (0, 0) => v(0),
            (1, 0) => v(3),
            (2, 0) => v(1),
            (0, _) => v(2),
            (1, 2) => v(5),
            (1, 1) => v(4),
            _ => v(3),
        })
        .unwrap()
    }

    #[test]
    fn marginal_gain_examples() {
        let f = FunctionOracle::new(
            ModularFunction::new(2, vec![vec![v(3), v(1)], vec![v(2), v(2)]]).unwrap(),
        );
        assert_eq!(marginal_gain(&f, &ls(&[0, 0], 2), 0, 1).unwrap(), v(3));
        assert_eq!(f.calls(), 2);

        let t1 = FunctionOracle::new(table_t1());
        let x = ls(&[1, 0], 2);
        assert_eq!(marginal_gain(&t1, &x, 1, 2).unwrap(), v(2));
        let fx = t1.evaluate(&x).unwrap();
        t1.reset_calls();
        assert_eq!(marginal_gain_from(&t1, &x, fx, 1, 2).unwrap(), v(2));
        assert_eq!(t1.calls(), 1);
    }

    #[test]
    fn marginal_gain_from_zero_is_unit_value() {
        let t1 = FunctionOracle::new(table_t1());
        let zero = ls(&[0, 0], 2);
        for e in 0..2 {
            for i in 1..=2 {
                let unit = t1.evaluate(&zero.with(e, i)).unwrap();
                assert_eq!(marginal_gain(&t1, &zero, e, i).unwrap(), unit);
            }
        }
    }

    #[test]
    fn marginal_gain_matches_table_difference_everywhere() {
        let table = table_t1();
        let f = FunctionOracle::new(table.clone());
        let lat = Lattice::new(2, 2);
        for x in lat.iter() {
            for e in x
                .labels()
                .enumerate()
                .filter(|&(_, l)| l == 0)
                .map(|(e, _)| e)
            {
                for i in 1..=2 {
                    let y = x.with(e, i);
                    assert_eq!(
                        marginal_gain(&f, &x, e, i).unwrap(),
                        table.values()[lat.index(&y)] - table.values()[lat.index(&x)]
                    );
                }
            }
        }
    }

    #[test]
    fn marginal_gain_rejects_assigned_element() {
        let f = FunctionOracle::new(table_t1());
        assert!(matches!(
            marginal_gain(&f, &ls(&[1, 0], 2), 0, 2),
            Err(crate::Error::Precondition(_))
        ));
        assert!(marginal_gain(&f, &ls(&[0, 0], 2), 0, 3).is_err());
    }

    #[test]
    fn evaluate_rejects_foreign_domain() {
        let f = FunctionOracle::new(table_t1());
        assert!(matches!(
            f.evaluate(&ls(&[0, 0, 0], 2)),
            Err(crate::Error::DomainMismatch(_))
        ));
        assert_eq!(f.calls(), 0);
    }

    #[test]
    fn normalize_examples() {
        let f = FunctionOracle::new(TableFunction::new(1, 1, vec![v(2), v(5)]).unwrap());
        let g = f.normalize();
        assert_eq!(g.evaluate(&ls(&[1], 1)).unwrap(), v(3));
        assert_eq!(g.evaluate(&ls(&[0], 1)).unwrap(), v(0));

        let t1 = FunctionOracle::new(table_t1());
        let n1 = t1.normalize();
        let n2 = n1.normalize();
        for x in Lattice::new(2, 2).iter() {
            assert_eq!(n1.evaluate(&x).unwrap(), t1.evaluate(&x).unwrap());
            assert_eq!(n2.evaluate(&x).unwrap(), n1.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn counter_is_thread_safe() {
        let f = std::sync::Arc::new(FunctionOracle::new(table_t1()));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let f = std::sync::Arc::clone(&f);
                std::thread::spawn(move || {
                    let x = LabeledSet::zeros(2, 2);
                    for _ in 0..250 {
                        f.evaluate(&x).unwrap();
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(f.calls(), 1000);
    }
}
