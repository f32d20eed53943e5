//! Greedy maximization of a monotone k-submodular function over the bases of a matroid.
//!
//! Each round picks the pair `(e, i)` with the largest marginal gain `Δ_{e,i} f(s)`
//! among elements `e` with `supp(s) ∪ {e}` independent, measured against the state at
//! the start of the round, then commits `s(e) <- i`. Ties go to the smallest element in
//! ground-set order, then the smallest label. Rounds continue until no element can be
//! added, which happens after exactly `rank(m)` rounds, so the rank is never computed.
//!
//! # Oracle accounting
//!
//! The scan is arranged so the counted calls stay within `M·|E|` membership and
//! `k·M·|E| + 1` evaluation calls whenever `M >= 1`:
//!
//! * `f(s)` is cached, so every gain costs one evaluation (the `+1` is `f(0)`).
//! * An element found dependent is dropped for good: if `S ∪ {e}` is dependent so is
//!   `S' ∪ {e}` for every `S' ⊇ S`.
//! * Round 1 evaluates all gains first and probes membership in decreasing-gain order
//!   until the first independent element. Later rounds probe the surviving candidates
//!   first and evaluate gains only for the independent ones. The closing probe that
//!   finds nothing addable therefore costs no evaluations, and rounds 1 and 2 together
//!   spend at most `|E|` membership calls.
//!
//! A rank-0 matroid still costs `|E|` membership calls (every singleton must be seen to
//! be dependent) and `k·|E|` gain evaluations from round 1.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::domain::LabeledSet;
use crate::error::{Error, Result};
use crate::functions::FunctionOracle;
use crate::matroids::MatroidOracle;
use crate::value::Value;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GreedyOptions {
    /// Reuse stale gains as upper bounds (priority-queue greedy). Produces the same
    /// selections as the plain scan whenever `f` is orthant submodular.
    pub lazy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub element: usize,
    pub label: usize,
    pub gain: Value,
    pub value_after: Value,
    pub membership_calls: u64,
    pub evaluation_calls: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    pub iterations: Vec<IterationRecord>,
    /// Calls spent by the final round that found no addable element.
    pub closing_membership_calls: u64,
    pub closing_evaluation_calls: u64,
    pub membership_calls: u64,
    /// Includes the single evaluation of `f(0)`.
    pub evaluation_calls: u64,
}

impl GreedyTrace {
    /// `(element, label, gain)` per round.
    pub fn selections(&self) -> Vec<(usize, usize, Value)> {
        self.iterations
            .iter()
            .map(|r| (r.element, r.label, r.gain))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub solution: LabeledSet,
    /// `f(s) - f(0)`.
    pub value: Value,
    /// `f(0)` as read from the oracle; nonzero means the objective was normalized.
    pub offset: Value,
    pub trace: GreedyTrace,
}

impl GreedyOutcome {
    pub fn normalized(&self) -> bool {
        !self.offset.is_zero()
    }

    /// Number of rounds, which equals `rank(m)` for a matroid.
    pub fn rounds(&self) -> usize {
        self.trace.iterations.len()
    }
}

struct Counters<'a> {
    f: &'a FunctionOracle,
    m: &'a MatroidOracle,
    f0: u64,
    m0: u64,
}

impl<'a> Counters<'a> {
    fn new(f: &'a FunctionOracle, m: &'a MatroidOracle) -> Self {
        Counters {
            f,
            m,
            f0: f.calls(),
            m0: m.calls(),
        }
    }

    /// Calls since the last mark; resets the mark.
    fn take(&mut self) -> (u64, u64) {
        let (fc, mc) = (self.f.calls(), self.m.calls());
        let out = (mc - self.m0, fc - self.f0);
        self.f0 = fc;
        self.m0 = mc;
        out
    }
}

struct State {
    s: LabeledSet,
    fs: Value,
    support: Vec<usize>,
}

impl State {
    fn feasible_with(&self, m: &MatroidOracle, e: usize) -> Result<bool> {
        let mut probe = self.support.clone();
        probe.push(e);
        m.is_independent(&probe)
    }

    fn gain(&self, f: &FunctionOracle, e: usize, i: usize) -> Result<Value> {
        Ok(f.evaluate(&self.s.with(e, i))? - self.fs)
    }

    /// Best label for `e` (largest gain, smallest label on ties).
    fn best_label(&self, f: &FunctionOracle, e: usize) -> Result<(Value, usize)> {
        let mut best: Option<(Value, usize)> = None;
        for i in 1..=self.s.k() {
            let g = self.gain(f, e, i)?;
            if best.is_none_or(|(bg, _)| g > bg) {
                best = Some((g, i));
            }
        }
        Ok(best.expect("k >= 1"))
    }

    fn commit(&mut self, e: usize, i: usize, gain: Value) {
        self.s.set(e, i);
        self.fs += gain;
        self.support.push(e);
    }
}

/// Runs the greedy on `f` and `m`. The oracles' counters keep accumulating; the trace
/// reports the calls made by this run.
pub fn greedy_maximize(
    f: &FunctionOracle,
    m: &MatroidOracle,
    options: GreedyOptions,
) -> Result<GreedyOutcome> {
    if f.ground_size() != m.ground_size() {
        return Err(Error::DomainMismatch(format!(
            "function has {} elements, matroid has {}",
            f.ground_size(),
            m.ground_size()
        )));
    }
    let n = f.ground_size();
    let k = f.arity();
    let mut counters = Counters::new(f, m);
    let zero = LabeledSet::zeros(n, k);
    let offset = f.evaluate(&zero)?;
    let mut state = State {
        s: zero,
        fs: offset,
        support: Vec::new(),
    };
    let mut trace = GreedyTrace {
        iterations: Vec::new(),
        closing_membership_calls: 0,
        closing_evaluation_calls: 0,
        membership_calls: 0,
        evaluation_calls: 0,
    };
    // f(0) is attributed to the run total, not to round 1
    let (_, initial_evals) = counters.take();

    if options.lazy {
        lazy_rounds(f, m, &mut state, &mut trace, &mut counters)?;
    } else {
        scan_rounds(f, m, &mut state, &mut trace, &mut counters)?;
    }

    trace.membership_calls = trace
        .iterations
        .iter()
        .map(|r| r.membership_calls)
        .sum::<u64>()
        + trace.closing_membership_calls;
    trace.evaluation_calls = initial_evals
        + trace
            .iterations
            .iter()
            .map(|r| r.evaluation_calls)
            .sum::<u64>()
        + trace.closing_evaluation_calls;
    Ok(GreedyOutcome {
        value: state.fs - offset,
        solution: state.s,
        offset,
        trace,
    })
}

fn scan_rounds(
    f: &FunctionOracle,
    m: &MatroidOracle,
    state: &mut State,
    trace: &mut GreedyTrace,
    counters: &mut Counters,
) -> Result<()> {
    let n = f.ground_size();
    // elements not yet selected and not yet seen to be dependent
    let mut alive: Vec<usize> = (0..n).collect();
    let mut round = 1;
    loop {
        let choice = if round == 1 {
            gain_first(f, m, state, &mut alive)?
        } else {
            membership_first(f, m, state, &mut alive)?
        };
        let (mc, ec) = counters.take();
        let Some((e, i, gain)) = choice else {
            trace.closing_membership_calls = mc;
            trace.closing_evaluation_calls = ec;
            return Ok(());
        };
        state.commit(e, i, gain);
        alive.retain(|&x| x != e);
        trace.iterations.push(IterationRecord {
            iteration: round,
            element: e,
            label: i,
            gain,
            value_after: state.fs,
            membership_calls: mc,
            evaluation_calls: ec,
        });
        round += 1;
    }
}

fn gain_first(
    f: &FunctionOracle,
    m: &MatroidOracle,
    state: &State,
    alive: &mut Vec<usize>,
) -> Result<Option<(usize, usize, Value)>> {
    let mut ranked = Vec::with_capacity(alive.len());
    for &e in alive.iter() {
        let (g, i) = state.best_label(f, e)?;
        ranked.push((g, e, i));
    }
    // larger gain first, then canonical element order
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut dead = Vec::new();
    let mut chosen = None;
    for (g, e, i) in ranked {
        if state.feasible_with(m, e)? {
            chosen = Some((e, i, g));
            break;
        }
        dead.push(e);
    }
    alive.retain(|e| !dead.contains(e));
    Ok(chosen)
}

fn membership_first(
    f: &FunctionOracle,
    m: &MatroidOracle,
    state: &State,
    alive: &mut Vec<usize>,
) -> Result<Option<(usize, usize, Value)>> {
    let mut feasible = Vec::with_capacity(alive.len());
    for &e in alive.iter() {
        if state.feasible_with(m, e)? {
            feasible.push(e);
        }
    }
    *alive = feasible;
    let mut best: Option<(usize, usize, Value)> = None;
    for &e in alive.iter() {
        let (g, i) = state.best_label(f, e)?;
        if best.is_none_or(|(_, _, bg)| g > bg) {
            best = Some((e, i, g));
        }
    }
    Ok(best)
}

#[derive(PartialEq, Eq)]
struct Entry {
    bound: Value,
    element: usize,
    label: usize,
    round: usize,
}

impl Ord for Entry {
    // max-heap: larger bound, then smaller element, then smaller label
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then(other.element.cmp(&self.element))
            .then(other.label.cmp(&self.label))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn lazy_rounds(
    f: &FunctionOracle,
    m: &MatroidOracle,
    state: &mut State,
    trace: &mut GreedyTrace,
    counters: &mut Counters,
) -> Result<()> {
    let n = f.ground_size();
    let k = f.arity();
    let mut heap = BinaryHeap::with_capacity(n * k);
    for e in 0..n {
        for i in 1..=k {
            heap.push(Entry {
                bound: state.gain(f, e, i)?,
                element: e,
                label: i,
                round: 1,
            });
        }
    }
    let mut dead = vec![false; n];
    let mut round = 1;
    loop {
        // feasibility of each element, cached within a round
        let mut checked: Vec<Option<bool>> = vec![None; n];
        let mut choice = None;
        while let Some(top) = heap.pop() {
            let e = top.element;
            if dead[e] || state.s.label(e) != 0 {
                continue;
            }
            let feasible = match checked[e] {
                Some(b) => b,
                None => {
                    let b = state.feasible_with(m, e)?;
                    checked[e] = Some(b);
                    b
                }
            };
            if !feasible {
                dead[e] = true;
                continue;
            }
            if top.round == round {
                choice = Some((e, top.label, top.bound));
                break;
            }
            heap.push(Entry {
                bound: state.gain(f, e, top.label)?,
                round,
                ..top
            });
        }
        let (mc, ec) = counters.take();
        let Some((e, i, gain)) = choice else {
            trace.closing_membership_calls = mc;
            trace.closing_evaluation_calls = ec;
            return Ok(());
        };
        state.commit(e, i, gain);
        trace.iterations.push(IterationRecord {
            iteration: round,
            element: e,
            label: i,
            gain,
            value_after: state.fs,
            membership_calls: mc,
            evaluation_calls: ec,
        });
        round += 1;
    }
}

/// `2·f(s) >= opt`.
pub fn guarantee_holds(value: Value, opt_value: Value) -> bool {
    value + value >= opt_value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{FnFunction, ModularFunction, TableFunction};
    use crate::matroids::{GraphicMatroid, PartitionMatroid, UniformMatroid};

    fn v(x: i64) -> Value {
        Value::from(x)
    }

    fn modular() -> FunctionOracle {
        FunctionOracle::new(
            ModularFunction::new(2, vec![vec![v(3), v(1)], vec![v(2), v(2)]]).unwrap(),
        )
    }

    fn run(f: &FunctionOracle, m: &MatroidOracle) -> GreedyOutcome {
        greedy_maximize(f, m, GreedyOptions::default()).unwrap()
    }

    #[test]
    fn single_round_picks_best_pair() {
        let out = run(&modular(), &MatroidOracle::new(UniformMatroid::new(2, 1)));
        assert_eq!(out.solution.to_vec(), vec![1, 0]);
        assert_eq!(out.value, v(3));
        assert!(guarantee_holds(out.value, v(3)));
    }

    #[test]
    fn ties_go_to_smallest_label() {
        let out = run(&modular(), &MatroidOracle::new(UniformMatroid::new(2, 2)));
        assert_eq!(out.solution.to_vec(), vec![1, 1]);
        assert_eq!(out.value, v(5));
        assert_eq!(out.trace.selections(), vec![(0, 1, v(3)), (1, 1, v(2))]);
    }

    #[test]
    fn ties_go_to_smallest_element() {
        let f = FunctionOracle::new(
            ModularFunction::new(1, vec![vec![v(1)], vec![v(4)], vec![v(4)]]).unwrap(),
        );
        let out = run(&f, &MatroidOracle::new(UniformMatroid::new(3, 1)));
        assert_eq!(out.solution.to_vec(), vec![0, 1, 0]);
        let lazy = greedy_maximize(
            &f,
            &MatroidOracle::new(UniformMatroid::new(3, 1)),
            GreedyOptions { lazy: true },
        )
        .unwrap();
        assert_eq!(lazy.solution, out.solution);
    }

    #[test]
    fn rank_zero_returns_zero_vector() {
        let f = modular();
        let m = MatroidOracle::new(UniformMatroid::new(2, 0));
        let out = run(&f, &m);
        assert!(out.solution.is_zero());
        assert_eq!(out.value, v(0));
        assert_eq!(out.rounds(), 0);
        // each singleton must be seen to be dependent
        assert_eq!(out.trace.membership_calls, 2);
    }

    #[test]
    fn rank_zero_lazy_mode() {
        let f = modular();
        let m = MatroidOracle::new(UniformMatroid::new(2, 0));
        let out = greedy_maximize(&f, &m, GreedyOptions { lazy: true }).unwrap();
        assert!(out.solution.is_zero());
        assert_eq!(out.trace.closing_evaluation_calls, 4);
    }

    #[test]
    fn empty_ground_set() {
        let f = FunctionOracle::new(ModularFunction::new(2, vec![]).unwrap());
        let out = run(&f, &MatroidOracle::new(UniformMatroid::new(0, 3)));
        assert!(out.solution.is_empty());
        assert_eq!(out.value, v(0));
    }

    #[test]
    fn mismatched_ground_sets() {
        let err = greedy_maximize(
            &modular(),
            &MatroidOracle::new(UniformMatroid::new(3, 1)),
            GreedyOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DomainMismatch(_)));
    }

    #[test]
    fn unnormalized_function_is_shifted() {
        let f = FunctionOracle::new(TableFunction::new(1, 1, vec![v(2), v(5)]).unwrap());
        let out = run(&f, &MatroidOracle::new(UniformMatroid::new(1, 1)));
        assert!(out.normalized());
        assert_eq!(out.offset, v(2));
        assert_eq!(out.value, v(3));
    }

    #[test]
    fn output_is_a_base_and_budgets_hold() {
        // 4-cycle with a chord and a loop
        let m = MatroidOracle::new(
            GraphicMatroid::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]).unwrap(),
        );
        let f = FunctionOracle::new(FnFunction::new(6, 2, |x: &LabeledSet| {
            x.labels()
                .enumerate()
                .map(|(e, l)| Value::from(((e as i64 + 1) * l as i64) % 5))
                .sum()
        }));
        let out = run(&f, &m);
        assert_eq!(out.solution.support_size(), 3);
        let (n, k, rank) = (6u64, 2u64, 3u64);
        assert!(out.trace.membership_calls <= rank * n);
        assert!(out.trace.evaluation_calls <= k * rank * n + 1);
        assert_eq!(out.trace.evaluation_calls, f.calls());
        assert_eq!(out.trace.membership_calls, m.calls());
    }

    #[test]
    fn uniform_rank_one_stays_within_membership_budget() {
        let f = FunctionOracle::new(
            ModularFunction::new(1, vec![vec![v(3)], vec![v(2)], vec![v(1)]]).unwrap(),
        );
        let m = MatroidOracle::new(UniformMatroid::new(3, 1));
        let out = run(&f, &m);
        assert_eq!(out.solution.to_vec(), vec![1, 0, 0]);
        assert_eq!(out.trace.membership_calls, 3);
        assert_eq!(out.trace.evaluation_calls, 4);
    }

    #[test]
    fn supports_are_nested_and_values_increase() {
        let m = MatroidOracle::new(
            PartitionMatroid::new(5, vec![(vec![0, 1, 2], 2), (vec![3, 4], 1)]).unwrap(),
        );
        let f = FunctionOracle::new(
            ModularFunction::new(
                2,
                vec![
                    vec![v(1), v(4)],
                    vec![v(3), v(0)],
                    vec![v(2), v(2)],
                    vec![v(5), v(1)],
                    vec![v(0), v(6)],
                ],
            )
            .unwrap(),
        );
        let out = run(&f, &m);
        let mut prev = Value::ZERO;
        for (j, r) in out.trace.iterations.iter().enumerate() {
            assert_eq!(r.iteration, j + 1);
            assert!(!r.gain.is_negative());
            assert!(r.value_after >= prev);
            prev = r.value_after;
        }
        assert_eq!(out.rounds(), 3);
        assert_eq!(out.value, v(4 + 3 + 6));
    }

    #[test]
    fn deterministic_traces() {
        let m = MatroidOracle::new(UniformMatroid::new(2, 2));
        let a = run(&modular(), &m);
        let b = run(&modular(), &m);
        assert_eq!(a, b);
    }
}
