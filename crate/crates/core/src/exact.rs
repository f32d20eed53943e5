//! Brute-force ground truth: the exact optimum over all feasible labelings, the check
//! that maximal optima fill a base, and the greedy-vs-optimum ratio harness.

use std::collections::HashSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::domain::LabeledSet;
use crate::error::{Error, Result};
use crate::functions::FunctionOracle;
use crate::greedy::{greedy_maximize, guarantee_holds, GreedyOptions};
use crate::instance::Instance;
use crate::matroids::{enumerate_independent_sets, rank, MatroidOracle};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// Optimum of `f(x) - f(0)` over feasible `x`.
    pub opt_value: Value,
    /// Lexicographically smallest optimal labeling.
    pub witness: LabeledSet,
    pub max_opt_support_size: usize,
    pub count_optima: u64,
    pub feasible_labelings: u64,
}

/// Independent sets, aborting once their labelings exceed the budget.
fn independent_sets(m: &MatroidOracle, k: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut sets = Vec::new();
    let mut labelings: u128 = 0;
    for set in enumerate_independent_sets(m, budget)? {
        let set = set?;
        labelings = labelings.saturating_add((k as u128).saturating_pow(set.len() as u32));
        Budget::check("feasible labelings", labelings, budget.max_labelings)?;
        sets.push(set);
    }
    Ok(sets)
}

/// Calls `visit` with every labeling of `set` using labels `1..=k`.
fn for_each_labeling(
    n: usize,
    k: usize,
    set: &[usize],
    mut visit: impl FnMut(&LabeledSet) -> Result<()>,
) -> Result<()> {
    let mut x = LabeledSet::zeros(n, k);
    for &e in set {
        x.set(e, 1);
    }
    loop {
        visit(&x)?;
        // odometer over the labels of `set`
        let mut pos = 0;
        loop {
            if pos == set.len() {
                return Ok(());
            }
            let e = set[pos];
            if x.label(e) < k {
                x.set(e, x.label(e) + 1);
                break;
            }
            x.set(e, 1);
            pos += 1;
        }
    }
}

pub fn brute_force_opt(
    f: &FunctionOracle,
    m: &MatroidOracle,
    budget: &Budget,
) -> Result<ExactResult> {
    check_domains(f, m)?;
    let n = f.ground_size();
    let k = f.arity();
    let sets = independent_sets(m, k, budget)?;
    let offset = f.evaluate(&LabeledSet::zeros(n, k))?;
    let mut best: Option<ExactResult> = None;
    let mut feasible = 0u64;
    for set in &sets {
        for_each_labeling(n, k, set, |x| {
            feasible += 1;
            let v = f.evaluate(x)? - offset;
            match &mut best {
                None => {
                    best = Some(ExactResult {
                        opt_value: v,
                        witness: x.clone(),
                        max_opt_support_size: x.support_size(),
                        count_optima: 1,
                        feasible_labelings: 0,
                    })
                }
                Some(b) if v > b.opt_value => {
                    *b = ExactResult {
                        opt_value: v,
                        witness: x.clone(),
                        max_opt_support_size: x.support_size(),
                        count_optima: 1,
                        feasible_labelings: 0,
                    }
                }
                Some(b) if v == b.opt_value => {
                    b.count_optima += 1;
                    b.max_opt_support_size = b.max_opt_support_size.max(x.support_size());
                    if x.to_vec() < b.witness.to_vec() {
                        b.witness = x.clone();
                    }
                }
                Some(_) => {}
            }
            Ok(())
        })?;
    }
    let mut result = best.ok_or_else(|| {
        Error::Precondition("the empty set is not independent; no feasible labeling".into())
    })?;
    result.feasible_labelings = feasible;
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalOptimaReport {
    pub holds: bool,
    pub rank: usize,
    pub optima: u64,
    pub maximal_optima: u64,
    /// A maximal optimum whose support is smaller than the rank, if any.
    pub counterexample: Option<Vec<usize>>,
}

/// Checks that every maximal optimal solution has support size `rank(m)`.
///
/// An optimum is maximal when no feasible single assignment `e -> i` keeps the optimal
/// value. Meaningful only for monotone `f`.
pub fn maximal_optima_check(
    f: &FunctionOracle,
    m: &MatroidOracle,
    budget: &Budget,
) -> Result<MaximalOptimaReport> {
    check_domains(f, m)?;
    let n = f.ground_size();
    let k = f.arity();
    let sets = independent_sets(m, k, budget)?;
    let independent: HashSet<u32> = sets
        .iter()
        .map(|s| s.iter().fold(0u32, |acc, &e| acc | 1 << e))
        .collect();
    let offset = f.evaluate(&LabeledSet::zeros(n, k))?;

    let mut opt: Option<Value> = None;
    let mut optima: Vec<LabeledSet> = Vec::new();
    for set in &sets {
        for_each_labeling(n, k, set, |x| {
            let v = f.evaluate(x)? - offset;
            match opt {
                Some(o) if v < o => {}
                Some(o) if v == o => optima.push(x.clone()),
                _ => {
                    opt = Some(v);
                    optima.clear();
                    optima.push(x.clone());
                }
            }
            Ok(())
        })?;
    }
    let opt = opt.unwrap_or(Value::ZERO);
    let r = rank(m)?;

    let mut maximal = 0u64;
    let mut counterexample = None;
    for x in &optima {
        let mask = x.support().iter().fold(0u32, |acc, &e| acc | 1 << e);
        let mut extendable = false;
        'outer: for e in (0..n).filter(|&e| x.label(e) == 0) {
            if !independent.contains(&(mask | 1 << e)) {
                continue;
            }
            for i in 1..=k {
                if f.evaluate(&x.with(e, i))? - offset == opt {
                    extendable = true;
                    break 'outer;
                }
            }
        }
        if !extendable {
            maximal += 1;
            if x.support_size() != r && counterexample.is_none() {
                counterexample = Some(x.to_vec());
            }
        }
    }
    Ok(MaximalOptimaReport {
        holds: counterexample.is_none(),
        rank: r,
        optima: optima.len() as u64,
        maximal_optima: maximal,
        counterexample,
    })
}

fn check_domains(f: &FunctionOracle, m: &MatroidOracle) -> Result<()> {
    if f.ground_size() != m.ground_size() {
        return Err(Error::DomainMismatch(format!(
            "function has {} elements, matroid has {}",
            f.ground_size(),
            m.ground_size()
        )));
    }
    if f.ground_size() > 32 {
        return Err(Error::BudgetExceeded {
            what: "exact solver ground set size",
            needed: f.ground_size() as u128,
            limit: 32,
        });
    }
    Ok(())
}

/// `f(greedy) / opt`, or 1 when `opt = 0`.
pub fn approximation_ratio(greedy_value: Value, opt_value: Value) -> Value {
    greedy_value.checked_div(&opt_value).unwrap_or(Value::ONE)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessRow {
    pub instance: String,
    pub n: usize,
    pub k: usize,
    pub matroid_type: String,
    #[serde(rename = "M")]
    pub rank: usize,
    pub greedy_value: Value,
    pub opt_value: Value,
    pub ratio: Value,
    pub membership_calls: u64,
    pub eval_calls: u64,
    pub membership_budget: u64,
    pub eval_budget: u64,
    pub greedy_support: usize,
    pub maximal_optima: Option<bool>,
}

impl HarnessRow {
    pub fn within_budgets(&self) -> bool {
        self.membership_calls <= self.membership_budget && self.eval_calls <= self.eval_budget
    }

    pub const CSV_HEADER: &'static str =
        "instance,n,k,matroid_type,M,greedy_value,opt_value,ratio,membership_calls,eval_calls";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.instance,
            self.n,
            self.k,
            self.matroid_type,
            self.rank,
            self.greedy_value,
            self.opt_value,
            self.ratio,
            self.membership_calls,
            self.eval_calls
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessReport {
    pub rows: Vec<HarnessRow>,
    pub min_ratio: Value,
    pub mean_ratio: f64,
    pub total_membership_calls: u64,
    pub total_eval_calls: u64,
}

impl HarnessReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(HarnessRow::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HarnessOptions {
    pub lazy: bool,
    /// Also run [`maximal_optima_check`] on every instance.
    pub maximal_optima: bool,
}

/// Greedy and brute force on one instance.
pub fn evaluate_instance(
    name: &str,
    inst: &Instance,
    options: HarnessOptions,
    budget: &Budget,
) -> Result<HarnessRow> {
    let f = inst.function_oracle();
    let m = inst.matroid_oracle();
    let greedy = greedy_maximize(&f, &m, GreedyOptions { lazy: options.lazy })?;
    let exact = brute_force_opt(&inst.function_oracle(), &inst.matroid_oracle(), budget)?;
    let r = greedy.rounds();
    let n = inst.n() as u64;
    let maximal_optima = if options.maximal_optima {
        Some(maximal_optima_check(&inst.function_oracle(), &inst.matroid_oracle(), budget)?.holds)
    } else {
        None
    };
    Ok(HarnessRow {
        instance: name.to_string(),
        n: inst.n(),
        k: inst.k,
        matroid_type: inst.matroid.kind().to_string(),
        rank: r,
        greedy_value: greedy.value,
        opt_value: exact.opt_value,
        ratio: approximation_ratio(greedy.value, exact.opt_value),
        membership_calls: greedy.trace.membership_calls,
        eval_calls: greedy.trace.evaluation_calls,
        membership_budget: r as u64 * n,
        eval_budget: inst.k as u64 * r as u64 * n + 1,
        greedy_support: greedy.solution.support_size(),
        maximal_optima,
    })
}

/// Runs greedy and brute force on every instance and aggregates the ratios. Stops at the
/// first instance with `2·f(greedy) < opt`, returning it serialized in the error.
pub fn ratio_harness<'a, I>(
    instances: I,
    options: HarnessOptions,
    budget: &Budget,
) -> Result<HarnessReport>
where
    I: IntoIterator<Item = (String, &'a Instance)>,
{
    let mut rows = Vec::new();
    for (name, inst) in instances {
        let row = evaluate_instance(&name, inst, options, budget)?;
        if !guarantee_holds(row.greedy_value, row.opt_value) {
            return Err(Error::GuaranteeViolation {
                instance: name,
                greedy: row.greedy_value,
                opt: row.opt_value,
                serialized: inst.to_json(),
            });
        }
        rows.push(row);
    }
    let min_ratio = rows.iter().map(|r| r.ratio).min().unwrap_or(Value::ONE);
    let mean_ratio = if rows.is_empty() {
        1.0
    } else {
        rows.iter().map(|r| r.ratio.to_f64()).sum::<f64>() / rows.len() as f64
    };
    Ok(HarnessReport {
        total_membership_calls: rows.iter().map(|r| r.membership_calls).sum(),
        total_eval_calls: rows.iter().map(|r| r.eval_calls).sum(),
        min_ratio,
        mean_ratio,
        rows,
    })
}
