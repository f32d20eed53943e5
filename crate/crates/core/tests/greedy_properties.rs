mod common;

use ksubmod::domain::LabeledSet;
use ksubmod::functions::{FunctionOracle, KFunction};
use ksubmod::generate::{generate_instance, FunctionKind, GeneratorConfig, MatroidKind};
use ksubmod::matroids::{Matroid, MatroidOracle, UniformMatroid};
use ksubmod::{greedy_maximize, Budget, GreedyOptions, Instance, Value};
use proptest::prelude::*;

fn instance(n: usize, k: usize, m: usize, f: usize, seed: u64) -> Instance {
    let config = GeneratorConfig {
        n,
        k,
        matroid: MatroidKind::ALL[m],
        function: FunctionKind::ALL[f],
    };
    generate_instance(config, seed, 0).unwrap()
}

/// The pair a full scan would pick from `s`: largest gain, then smallest element, then
/// smallest label, over every feasible `(e, i)`.
fn full_scan(f: &dyn KFunction, m: &dyn Matroid, s: &LabeledSet) -> Option<(usize, usize, Value)> {
    let base = f.value(s);
    let support = s.support();
    let mut best: Option<(usize, usize, Value)> = None;
    for e in (0..s.len()).filter(|&e| s.label(e) == 0) {
        let mut with = support.clone();
        with.push(e);
        if !m.independent(&with) {
            continue;
        }
        for i in 1..=s.k() {
            let gain = f.value(&s.with(e, i)) - base;
            if best.as_ref().is_none_or(|b| gain > b.2) {
                best = Some((e, i, gain));
            }
        }
    }
    best
}

#[test]
fn every_round_picks_the_full_scan_argmax() {
    for seed in 0..120u64 {
        let inst = instance(
            2 + seed as usize % 5,
            1 + seed as usize % 3,
            seed as usize % 4,
            seed as usize % 3,
            seed,
        );
        let f = inst.function_oracle();
        let m = inst.matroid_oracle();
        let out = greedy_maximize(&f, &m, GreedyOptions::default()).unwrap();
        let mut s = LabeledSet::zeros(inst.n(), inst.k);
        for (e, i, gain) in out.trace.selections() {
            assert_eq!(
                full_scan(f.function().as_ref(), m.matroid().as_ref(), &s),
                Some((e, i, gain)),
                "seed {seed}"
            );
            s = s.with(e, i);
        }
        assert_eq!(
            full_scan(f.function().as_ref(), m.matroid().as_ref(), &s),
            None
        );
        assert_eq!(s, out.solution);
    }
}

#[test]
fn lazy_and_plain_greedy_select_the_same_pairs() {
    for seed in 0..120u64 {
        let inst = instance(
            2 + seed as usize % 5,
            1 + seed as usize % 3,
            seed as usize % 4,
            seed as usize % 3,
            seed,
        );
        let plain = greedy_maximize(
            &inst.function_oracle(),
            &inst.matroid_oracle(),
            GreedyOptions { lazy: false },
        )
        .unwrap();
        let lazy = greedy_maximize(
            &inst.function_oracle(),
            &inst.matroid_oracle(),
            GreedyOptions { lazy: true },
        )
        .unwrap();
        assert_eq!(plain.solution, lazy.solution, "seed {seed}");
        assert_eq!(plain.value, lazy.value);
        assert_eq!(plain.trace.selections(), lazy.trace.selections());
    }
}

#[test]
fn k_one_matches_classical_greedy_on_submodular_functions() {
    for seed in 0..60u64 {
        let inst = instance(
            2 + seed as usize % 5,
            1,
            seed as usize % 4,
            seed as usize % 3,
            900 + seed,
        );
        let f = inst.function_oracle();
        let m = inst.matroid_oracle();
        assert!(common::classically_submodular(f.function().as_ref()));
        assert_eq!(
            ksubmod::functions::is_k_submodular(&f, &Budget::default())
                .unwrap()
                .holds(),
            common::classically_submodular(f.function().as_ref())
        );
        let ours = greedy_maximize(&f, &m, GreedyOptions::default()).unwrap();
        let (set, value) = common::classical_greedy(f.function().as_ref(), m.matroid().as_ref());
        assert_eq!(ours.solution.support(), set);
        assert_eq!(ours.value, value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_invariants(n in 1usize..6, k in 1usize..4, m in 0usize..4, f in 0usize..3, seed in any::<u64>()) {
        let inst = instance(n, k, m, f, seed);
        let fo = inst.function_oracle();
        let mo = inst.matroid_oracle();
        let out = greedy_maximize(&fo, &mo, GreedyOptions::default()).unwrap();
        let r = ksubmod::matroids::rank(&inst.matroid_oracle()).unwrap();
        prop_assert_eq!(out.solution.support_size(), r);
        prop_assert!(mo.matroid().independent(&out.solution.support()));
        prop_assert!(out.trace.membership_calls <= (r * n) as u64);
        prop_assert!(out.trace.evaluation_calls <= (k * r * n + 1) as u64);
        // values along the trace never decrease for monotone inputs
        let mut last = Value::ZERO;
        for it in &out.trace.iterations {
            prop_assert!(it.gain >= Value::ZERO);
            prop_assert_eq!(it.value_after, last + it.gain);
            last = it.value_after;
        }
        prop_assert_eq!(last, out.value);
    }

    #[test]
    fn uniform_modular_greedy_is_optimal(gains in proptest::collection::vec(proptest::collection::vec(0i64..20, 2), 1..6), cap in 0usize..6) {
        let n = gains.len();
        let cap = cap.min(n);
        let g: Vec<Vec<Value>> = gains.iter().map(|r| r.iter().map(|&v| Value::from(v)).collect()).collect();
        let f = FunctionOracle::new(ksubmod::functions::ModularFunction::new(2, g).unwrap());
        let m = MatroidOracle::new(UniformMatroid::new(n, cap));
        let out = greedy_maximize(&f, &m, GreedyOptions::default()).unwrap();
        let mut best: Vec<i64> = gains.iter().map(|r| *r.iter().max().unwrap()).collect();
        best.sort_unstable_by(|a, b| b.cmp(a));
        let expected: i64 = best.iter().take(cap).sum();
        prop_assert_eq!(out.value, Value::from(expected));
    }
}
