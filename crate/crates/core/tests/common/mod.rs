#![allow(dead_code)]

use ksubmod::domain::LabeledSet;
use ksubmod::functions::KFunction;
use ksubmod::matroids::Matroid;
use ksubmod::Value;

/// Textbook greedy for a set function under a matroid: repeatedly add the feasible
/// element with the largest marginal value (smallest index on ties) until none is
/// feasible. Works on plain sets and calls the function and matroid directly.
pub fn classical_greedy(f: &dyn KFunction, m: &dyn Matroid) -> (Vec<usize>, Value) {
    let n = f.ground_size();
    let value = |set: &[usize]| {
        let mut labels = vec![0; n];
        for &e in set {
            labels[e] = 1;
        }
        f.value(&LabeledSet::from_labels(&labels, 1).unwrap())
    };
    let base = value(&[]);
    let mut chosen: Vec<usize> = Vec::new();
    loop {
        let current = value(&chosen);
        let mut best: Option<(usize, Value)> = None;
        for e in 0..n {
            if chosen.contains(&e) {
                continue;
            }
            let mut with = chosen.clone();
            with.push(e);
            if !m.independent(&with) {
                continue;
            }
            let gain = value(&with) - current;
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((e, gain));
            }
        }
        match best {
            Some((e, _)) => chosen.push(e),
            None => break,
        }
    }
    let v = value(&chosen) - base;
    chosen.sort_unstable();
    (chosen, v)
}

/// Classical submodularity `f(A) + f(B) >= f(A ∪ B) + f(A ∩ B)` checked over all pairs
/// of subsets, for a function with `k = 1`.
pub fn classically_submodular(f: &dyn KFunction) -> bool {
    let n = f.ground_size();
    let at = |mask: u32| {
        let labels: Vec<usize> = (0..n).map(|e| (mask >> e & 1) as usize).collect();
        f.value(&LabeledSet::from_labels(&labels, 1).unwrap())
    };
    let values: Vec<Value> = (0..1u32 << n).map(at).collect();
    for a in 0..1u32 << n {
        for b in 0..1u32 << n {
            if values[a as usize] + values[b as usize]
                < values[(a | b) as usize] + values[(a & b) as usize]
            {
                return false;
            }
        }
    }
    true
}
