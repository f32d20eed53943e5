//! Commands behind the `ksubmod` binary: solve, validate, generate and bench.
//!
//! Every command returns a serializable report. Rendering is deterministic, so the same
//! instance and flags always produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{
    approximation_ratio, brute_force_opt, evaluate_instance, maximal_optima_check, HarnessOptions,
    HarnessRow, MaximalOptimaReport,
};
use crate::functions::{
    is_k_submodular, is_monotone, is_orthant_submodular, is_pairwise_monotone, Verdict, Witness,
};
use crate::generate::{generate_instance, GeneratorConfig};
use crate::greedy::{greedy_maximize, guarantee_holds, GreedyOptions};
use crate::instance::{Instance, MatroidSpec};
use crate::matroids::{validate_axioms, AxiomVerdict, AxiomWitness};
use crate::value::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_GUARANTEE: i32 = 5;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Syntax { .. } | Error::Semantic { .. } | Error::UnknownElement(_) => EXIT_PARSE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::GuaranteeViolation { .. } => EXIT_GUARANTEE,
        _ => EXIT_ERROR,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            _ => Err(Error::Invalid(format!("unknown format `{s}` (json, text)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub exact: bool,
    pub validate: bool,
    pub trace: bool,
    pub lazy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl From<Verdict> for CheckReport {
    fn from(v: Verdict) -> CheckReport {
        CheckReport {
            holds: v.holds(),
            witness: v.witness().cloned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatroidCheckReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<NamedAxiomWitness>,
}

/// An axiom witness with element indices replaced by names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum NamedAxiomWitness {
    M1,
    M2 {
        subset: Vec<String>,
        superset: Vec<String>,
    },
    M3 {
        smaller: Vec<String>,
        larger: Vec<String>,
    },
}

fn matroid_check(inst: &Instance, v: AxiomVerdict) -> MatroidCheckReport {
    let names = |s: &[usize]| s.iter().map(|&e| inst.ground.name(e).to_string()).collect();
    MatroidCheckReport {
        holds: v.holds(),
        witness: v.witness().map(|w| match w {
            AxiomWitness::M1 => NamedAxiomWitness::M1,
            AxiomWitness::M2 { subset, superset } => NamedAxiomWitness::M2 {
                subset: names(subset),
                superset: names(superset),
            },
            AxiomWitness::M3 { smaller, larger } => NamedAxiomWitness::M3 {
                smaller: names(smaller),
                larger: names(larger),
            },
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub instance: String,
    pub monotone: CheckReport,
    pub k_submodular: CheckReport,
    pub matroid_axioms: MatroidCheckReport,
    pub verdict: &'static str,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

/// Monotonicity, k-submodularity and the matroid axioms, each decided exhaustively.
pub fn cmd_validate(inst: &Instance, budget: &Budget) -> Result<ValidationReport> {
    let f = inst.function_oracle();
    let monotone: CheckReport = is_monotone(&f, budget)?.into();
    let k_submodular: CheckReport = is_k_submodular(&f, budget)?.into();
    let matroid_axioms = matroid_check(inst, validate_axioms(&inst.matroid_oracle(), budget)?);
    let pass = monotone.holds && k_submodular.holds && matroid_axioms.holds;
    Ok(ValidationReport {
        instance: inst.digest(),
        monotone,
        k_submodular,
        matroid_axioms,
        verdict: if pass { "PASS" } else { "FAIL" },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub element: String,
    pub label: usize,
    pub gain: Value,
    pub value_after: Value,
    pub membership_calls: u64,
    pub evaluation_calls: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCalls {
    pub membership: u64,
    pub membership_budget: u64,
    pub evaluation: u64,
    pub evaluation_budget: u64,
    pub within_budgets: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactReport {
    pub opt: Value,
    pub witness: Vec<usize>,
    pub feasible_labelings: u64,
    pub ratio: Value,
    /// `PASS`, `FAIL`, or `NOT_APPLICABLE` when the guarantee's assumptions fail.
    pub verdict: &'static str,
    pub maximal_optima: MaximalOptimaReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub elements: Vec<String>,
    pub k: usize,
    pub function_type: &'static str,
    pub matroid_type: &'static str,
    pub objective: Value,
    /// Labels in element order.
    pub solution: Vec<usize>,
    pub support: BTreeMap<String, usize>,
    pub rounds: usize,
    /// `f(0)` when the function was not normalized.
    #[serde(skip_serializing_if = "Value::is_zero")]
    pub offset: Value,
    pub oracle_calls: OracleCalls,
    /// `certified` (family is monotone k-submodular by construction), `validated`,
    /// `void` (a validator found a violation) or `unchecked`.
    pub guarantee: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matroid_axioms: Option<MatroidCheckReport>,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.exact.as_ref().is_some_and(|e| e.verdict == "FAIL") {
            EXIT_GUARANTEE
        } else if self.validation.as_ref().is_some_and(|v| !v.passed())
            || self.matroid_axioms.as_ref().is_some_and(|m| !m.holds)
        {
            EXIT_VALIDATION
        } else {
            EXIT_OK
        }
    }
}

/// Whether the half-optimum guarantee applies, decided without the pair check.
fn guarantee_status(inst: &Instance, budget: &Budget) -> Result<&'static str> {
    if inst.function.certified() {
        return Ok("certified");
    }
    let f = inst.function_oracle();
    let holds = is_monotone(&f, budget)?.holds()
        && is_pairwise_monotone(&f, budget)?.holds()
        && is_orthant_submodular(&f, budget)?.holds();
    Ok(if holds { "validated" } else { "void" })
}

pub fn cmd_solve(inst: &Instance, options: SolveOptions, budget: &Budget) -> Result<RunReport> {
    let mut notes = Vec::new();
    let matroid_axioms = if matches!(inst.matroid, MatroidSpec::Explicit(_)) {
        let check = matroid_check(inst, validate_axioms(&inst.matroid_oracle(), budget)?);
        if !check.holds {
            notes.push("explicit independence system fails the matroid axioms".into());
        }
        Some(check)
    } else {
        None
    };
    let validation = if options.validate {
        Some(cmd_validate(inst, budget)?)
    } else {
        None
    };

    let f = inst.function_oracle();
    let m = inst.matroid_oracle();
    let out = greedy_maximize(&f, &m, GreedyOptions { lazy: options.lazy })?;
    if out.normalized() {
        notes.push(format!(
            "f(0) = {} was subtracted from every value",
            out.offset
        ));
    }
    let r = out.rounds() as u64;
    let n = inst.n() as u64;
    let oracle_calls = OracleCalls {
        membership: out.trace.membership_calls,
        membership_budget: r * n,
        evaluation: out.trace.evaluation_calls,
        evaluation_budget: inst.k as u64 * r * n + 1,
        within_budgets: out.trace.membership_calls <= r * n
            && out.trace.evaluation_calls <= inst.k as u64 * r * n + 1,
    };
    if !oracle_calls.within_budgets {
        notes.push("oracle calls exceed M|E| or kM|E|+1".into());
    }

    let guarantee = match &validation {
        _ if inst.function.certified() => "certified",
        Some(v) if v.monotone.holds && v.k_submodular.holds => "validated",
        Some(_) => "void",
        None if options.exact => guarantee_status(inst, budget)?,
        None => "unchecked",
    };
    if guarantee == "void" {
        notes
            .push("function is not monotone k-submodular; the 1/2 guarantee does not apply".into());
    }

    let exact = if options.exact {
        let opt = brute_force_opt(&inst.function_oracle(), &inst.matroid_oracle(), budget)?;
        let maximal_optima =
            maximal_optima_check(&inst.function_oracle(), &inst.matroid_oracle(), budget)?;
        let verdict = if guarantee == "void" || matroid_axioms.as_ref().is_some_and(|c| !c.holds) {
            "NOT_APPLICABLE"
        } else if guarantee_holds(out.value, opt.opt_value) {
            "PASS"
        } else {
            "FAIL"
        };
        if verdict == "FAIL" {
            notes.push(format!(
                "counterexample instance: {}",
                inst.to_json().trim_end()
            ));
        }
        Some(ExactReport {
            opt: opt.opt_value,
            witness: opt.witness.to_vec(),
            feasible_labelings: opt.feasible_labelings,
            ratio: approximation_ratio(out.value, opt.opt_value),
            verdict,
            maximal_optima,
        })
    } else {
        None
    };

    let trace = options.trace.then(|| {
        out.trace
            .iterations
            .iter()
            .map(|it| TraceRow {
                iteration: it.iteration,
                element: inst.ground.name(it.element).to_string(),
                label: it.label,
                gain: it.gain,
                value_after: it.value_after,
                membership_calls: it.membership_calls,
                evaluation_calls: it.evaluation_calls,
            })
            .collect()
    });

    Ok(RunReport {
        instance: inst.digest(),
        elements: inst.ground.names().to_vec(),
        k: inst.k,
        function_type: inst.function.kind(),
        matroid_type: inst.matroid.kind(),
        objective: out.value,
        solution: out.solution.to_vec(),
        support: inst.format_labeling(&out.solution),
        rounds: out.rounds(),
        offset: out.offset,
        oracle_calls,
        guarantee,
        trace,
        exact,
        validation,
        matroid_axioms,
        notes,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key:<22}{value}").unwrap();
}

fn check_text(c: &CheckReport) -> String {
    match &c.witness {
        None => "holds".into(),
        Some(w) => format!("FAILS: {w}"),
    }
}

fn matroid_text(c: &MatroidCheckReport) -> String {
    match &c.witness {
        None => "holds".into(),
        Some(w) => format!(
            "FAILS: {}",
            serde_json::to_string(w).expect("witness serializes")
        ),
    }
}

pub fn render_run(report: &RunReport, format: ReportFormat) -> String {
    if format == ReportFormat::Json {
        return json(report);
    }
    let mut out = String::new();
    line(&mut out, "instance", &report.instance);
    line(&mut out, "elements", report.elements.join(" "));
    line(&mut out, "k", report.k);
    line(&mut out, "function", report.function_type);
    line(&mut out, "matroid", report.matroid_type);
    line(&mut out, "objective", report.objective);
    let support: Vec<String> = report
        .support
        .iter()
        .map(|(e, i)| format!("{e}:{i}"))
        .collect();
    line(&mut out, "solution", format!("{{{}}}", support.join(", ")));
    line(&mut out, "rounds", report.rounds);
    let c = &report.oracle_calls;
    line(
        &mut out,
        "membership calls",
        format!("{} / {}", c.membership, c.membership_budget),
    );
    line(
        &mut out,
        "evaluation calls",
        format!("{} / {}", c.evaluation, c.evaluation_budget),
    );
    line(&mut out, "guarantee", report.guarantee);
    if let Some(trace) = &report.trace {
        for t in trace {
            line(
                &mut out,
                &format!("round {}", t.iteration),
                format!(
                    "{}:{} gain {} value {} (mem {}, eval {})",
                    t.element,
                    t.label,
                    t.gain,
                    t.value_after,
                    t.membership_calls,
                    t.evaluation_calls
                ),
            );
        }
    }
    if let Some(e) = &report.exact {
        line(&mut out, "optimum", e.opt);
        line(&mut out, "ratio", e.ratio);
        line(&mut out, "verdict", e.verdict);
        line(&mut out, "maximal optima full", e.maximal_optima.holds);
    }
    if let Some(v) = &report.validation {
        line(&mut out, "monotone", check_text(&v.monotone));
        line(&mut out, "k-submodular", check_text(&v.k_submodular));
        line(&mut out, "matroid axioms", matroid_text(&v.matroid_axioms));
    } else if let Some(m) = &report.matroid_axioms {
        line(&mut out, "matroid axioms", matroid_text(m));
    }
    for note in &report.notes {
        line(&mut out, "note", note);
    }
    out
}

pub fn render_validation(report: &ValidationReport, format: ReportFormat) -> String {
    if format == ReportFormat::Json {
        return json(report);
    }
    let mut out = String::new();
    line(&mut out, "instance", &report.instance);
    line(&mut out, "monotone", check_text(&report.monotone));
    line(&mut out, "k-submodular", check_text(&report.k_submodular));
    line(
        &mut out,
        "matroid axioms",
        matroid_text(&report.matroid_axioms),
    );
    line(&mut out, "verdict", report.verdict);
    out
}

/// File name of the `index`-th generated instance.
pub fn generated_name(config: GeneratorConfig, seed: u64, index: u64) -> String {
    format!(
        "{}_{}_n{}_k{}_s{}_{:03}.json",
        config.matroid, config.function, config.n, config.k, seed, index
    )
}

/// Writes `count` instances into `out_dir` and returns their paths.
pub fn cmd_generate(
    config: GeneratorConfig,
    seed: u64,
    count: u64,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut paths = Vec::new();
    for index in 0..count {
        let inst = generate_instance(config, seed, index)?;
        let path = out_dir.join(generated_name(config, seed, index));
        write_atomic(&path, inst.to_json().as_bytes())?;
        paths.push(path);
    }
    Ok(paths)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<HarnessRow>,
    pub min_ratio: Value,
    pub mean_ratio: f64,
    pub violations: Vec<String>,
    pub budget_overruns: Vec<String>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(HarnessRow::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            EXIT_GUARANTEE
        } else {
            EXIT_OK
        }
    }
}

/// Greedy against brute force on every `*.json` instance in `dir`, in file-name order.
///
/// A ratio below one half counts as a violation only when the guarantee's assumptions
/// hold for that instance.
pub fn cmd_bench(dir: &Path, lazy: bool, budget: &Budget) -> Result<BenchReport> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|x| x == "json"));
    files.sort();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut budget_overruns = Vec::new();
    for path in &files {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let inst = Instance::read(path)?;
        let row = evaluate_instance(
            &name,
            &inst,
            HarnessOptions {
                lazy,
                maximal_optima: false,
            },
            budget,
        )?;
        if !guarantee_holds(row.greedy_value, row.opt_value)
            && guarantee_status(&inst, budget)? != "void"
        {
            violations.push(name.clone());
        }
        if !row.within_budgets() {
            budget_overruns.push(name);
        }
        rows.push(row);
    }
    let min_ratio = rows.iter().map(|r| r.ratio).min().unwrap_or(Value::ONE);
    let mean_ratio = if rows.is_empty() {
        1.0
    } else {
        rows.iter().map(|r| r.ratio.to_f64()).sum::<f64>() / rows.len() as f64
    };
    Ok(BenchReport {
        rows,
        min_ratio,
        mean_ratio,
        violations,
        budget_overruns,
    })
}
