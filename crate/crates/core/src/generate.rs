//! Seeded random instances.
//!
//! Generation is deterministic in `(config, seed)`: the RNG is ChaCha8, whose output is
//! fixed across platforms and releases.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{lattice_size, Budget};
use crate::domain::{GroundSet, LabeledSet, Lattice};
use crate::error::{Error, Result};
use crate::exact::{approximation_ratio, brute_force_opt};
use crate::functions::{
    is_monotone, is_orthant_submodular, is_pairwise_monotone, FunctionOracle, KFunction,
    ModularFunction, TableFunction, WeightedCoverageFunction,
};
use crate::greedy::{greedy_maximize, GreedyOptions};
use crate::instance::{FunctionSpec, Instance, MatroidSpec};
use crate::matroids::{GraphicMatroid, LinearMatroidGF2, PartitionMatroid, UniformMatroid};
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatroidKind {
    Uniform,
    Partition,
    Graphic,
    LinearGf2,
}

impl MatroidKind {
    pub const ALL: [MatroidKind; 4] = [
        MatroidKind::Uniform,
        MatroidKind::Partition,
        MatroidKind::Graphic,
        MatroidKind::LinearGf2,
    ];
}

impl fmt::Display for MatroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatroidKind::Uniform => "uniform",
            MatroidKind::Partition => "partition",
            MatroidKind::Graphic => "graphic",
            MatroidKind::LinearGf2 => "linear_gf2",
        })
    }
}

impl FromStr for MatroidKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(MatroidKind::Uniform),
            "partition" => Ok(MatroidKind::Partition),
            "graphic" => Ok(MatroidKind::Graphic),
            "linear_gf2" | "linear" | "gf2" => Ok(MatroidKind::LinearGf2),
            _ => Err(Error::Invalid(format!(
                "unknown matroid type `{s}` (uniform, partition, graphic, linear_gf2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    Modular,
    Coverage,
    Table,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 3] = [
        FunctionKind::Modular,
        FunctionKind::Coverage,
        FunctionKind::Table,
    ];
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionKind::Modular => "modular",
            FunctionKind::Coverage => "coverage",
            FunctionKind::Table => "table",
        })
    }
}

impl FromStr for FunctionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modular" => Ok(FunctionKind::Modular),
            "coverage" | "weighted_coverage" => Ok(FunctionKind::Coverage),
            "table" => Ok(FunctionKind::Table),
            _ => Err(Error::Invalid(format!(
                "unknown function type `{s}` (modular, coverage, table)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub k: usize,
    pub matroid: MatroidKind,
    pub function: FunctionKind,
}

const MAX_RETRIES: usize = 20;
// table perturbation walks run only on lattices this small
const PERTURB_LATTICE: u128 = 1024;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The `index`-th instance of the batch seeded by `seed`.
pub fn generate_instance(config: GeneratorConfig, seed: u64, index: u64) -> Result<Instance> {
    let GeneratorConfig { n, k, .. } = config;
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    if config.function == FunctionKind::Table {
        Budget::check(
            "table entries (k+1)^n",
            lattice_size(n, k),
            Budget::from_env().max_table,
        )?;
    }
    let mut rng = rng_for(seed, index);
    let ground = GroundSet::indexed(n);
    let matroid = random_matroid(&mut rng, n, config.matroid);
    for _ in 0..MAX_RETRIES {
        if let Some(function) = random_function(&mut rng, n, k, config.function)? {
            return Instance::new(ground, k, function, matroid);
        }
    }
    Err(Error::Invalid(format!(
        "no valid {} function after {MAX_RETRIES} attempts",
        config.function
    )))
}

/// A random matroid of the given family with rank at least 1 when `n >= 1`.
pub fn random_matroid(rng: &mut impl Rng, n: usize, kind: MatroidKind) -> MatroidSpec {
    if n == 0 {
        return MatroidSpec::Uniform(UniformMatroid::new(0, 0));
    }
    match kind {
        MatroidKind::Uniform => MatroidSpec::Uniform(UniformMatroid::new(n, rng.gen_range(1..=n))),
        MatroidKind::Partition => {
            let parts = rng.gen_range(1..=n);
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); parts];
            for e in 0..n {
                members[rng.gen_range(0..parts)].push(e);
            }
            members.retain(|b| !b.is_empty());
            let mut blocks: Vec<(Vec<usize>, usize)> = members
                .into_iter()
                .map(|b| {
                    let cap = rng.gen_range(0..=b.len());
                    (b, cap)
                })
                .collect();
            if blocks.iter().all(|(_, c)| *c == 0) {
                let b = rng.gen_range(0..blocks.len());
                blocks[b].1 = 1;
            }
            MatroidSpec::Partition(PartitionMatroid::new(n, blocks).expect("blocks partition E"))
        }
        MatroidKind::Graphic => {
            let vertices = rng.gen_range(2..=n.max(2));
            let mut edges: Vec<(usize, usize)> = (0..n)
                .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
                .collect();
            if edges.iter().all(|(u, v)| u == v) {
                let e = rng.gen_range(0..n);
                edges[e] = (0, 1);
            }
            MatroidSpec::Graphic(GraphicMatroid::new(vertices, edges).expect("vertices in range"))
        }
        MatroidKind::LinearGf2 => {
            let dimension = rng.gen_range(1..=n);
            let mut columns: Vec<Vec<bool>> = (0..n)
                .map(|_| (0..dimension).map(|_| rng.gen_bool(0.5)).collect())
                .collect();
            if columns.iter().all(|c| c.iter().all(|b| !b)) {
                let e = rng.gen_range(0..n);
                let r = rng.gen_range(0..dimension);
                columns[e][r] = true;
            }
            MatroidSpec::LinearGf2(
                LinearMatroidGF2::new(dimension, &columns).expect("dimensions agree"),
            )
        }
    }
}

/// Nonnegative weight; mostly integers, sometimes a fraction with a small denominator.
fn random_weight(rng: &mut impl Rng) -> Value {
    let numer = rng.gen_range(0..=10i128);
    if rng.gen_bool(0.25) {
        Value::new(numer, rng.gen_range(2..=4)).expect("nonzero denominator")
    } else {
        Value::from_int(numer)
    }
}

pub fn random_modular(rng: &mut impl Rng, n: usize, k: usize) -> ModularFunction {
    let gains = (0..n)
        .map(|_| (0..k).map(|_| random_weight(rng)).collect())
        .collect();
    ModularFunction::new(k, gains).expect("nonnegative gains")
}

pub fn random_coverage(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
) -> (Vec<String>, WeightedCoverageFunction) {
    let items = rng.gen_range(1..=4);
    let weights = (0..items)
        .map(|_| {
            (0..n)
                .map(|_| {
                    (0..k)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                random_weight(rng)
                            } else {
                                Value::ZERO
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let universe = (1..=items).map(|u| format!("u{u}")).collect();
    (
        universe,
        WeightedCoverageFunction::new(n, k, weights).expect("nonnegative weights"),
    )
}

/// Monotone and k-submodular, decided through orthant submodularity plus pairwise
/// monotonicity (cheaper than the pair check at these sizes).
fn certified_table(t: &TableFunction) -> Result<bool> {
    let f = FunctionOracle::new(t.clone());
    let budget = Budget::from_env();
    Ok(is_monotone(&f, &budget)?.holds()
        && is_pairwise_monotone(&f, &budget)?.holds()
        && is_orthant_submodular(&f, &budget)?.holds())
}

/// A monotone k-submodular table: a tabulated modular-plus-coverage mixture, then a short
/// walk of single-entry perturbations that keep every axiom.
pub fn random_ksubmodular_table(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
) -> Result<Option<TableFunction>> {
    let modular = random_modular(rng, n, k);
    let (_, coverage) = random_coverage(rng, n, k);
    let mut table = TableFunction::tabulate(n, k, |x| modular.value(x) + coverage.value(x))?;
    if lattice_size(n, k) <= PERTURB_LATTICE && n > 0 {
        let lattice = table.lattice();
        for _ in 0..8 {
            let idx = rng.gen_range(1..lattice.size());
            let x = lattice.labeling(idx);
            let old = table.get(&x);
            let delta = Value::from_int(*[-2i128, -1, 1, 2].choose(rng).expect("nonempty"));
            table.set(&x, old + delta);
            if !certified_table(&table)? {
                table.set(&x, old);
            }
        }
    }
    Ok(certified_table(&table)?.then_some(table))
}

fn random_function(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    kind: FunctionKind,
) -> Result<Option<FunctionSpec>> {
    Ok(match kind {
        FunctionKind::Modular => Some(FunctionSpec::Modular(random_modular(rng, n, k))),
        FunctionKind::Coverage => {
            let (universe, function) = random_coverage(rng, n, k);
            Some(FunctionSpec::WeightedCoverage { universe, function })
        }
        FunctionKind::Table => random_ksubmodular_table(rng, n, k)?.map(FunctionSpec::Table),
    })
}

/// Integer table with entries drawn uniformly from `[0, 100]`.
pub fn random_raw_table(rng: &mut impl Rng, n: usize, k: usize) -> Result<TableFunction> {
    TableFunction::tabulate(n, k, |_| Value::from_int(rng.gen_range(0..=100)))
}

/// Pointwise maximum over all `x ⪯ y`, which makes any table monotone.
pub fn monotonize(t: &TableFunction) -> TableFunction {
    let lattice: Lattice = t.lattice();
    let mut values = t.values().to_vec();
    // predecessors of y have smaller dense index, so one pass in index order suffices
    for idx in 0..lattice.size() {
        let y = lattice.labeling(idx);
        for e in y.support() {
            let below = idx - y.label(e) * lattice.stride(e);
            if values[below] > values[idx] {
                values[idx] = values[below];
            }
        }
    }
    TableFunction::new(lattice.n, lattice.k, values).expect("same shape")
}

/// Adds `delta` to the entry at `x`.
pub fn perturb(t: &TableFunction, x: &LabeledSet, delta: Value) -> TableFunction {
    let mut out = t.clone();
    out.set(x, t.get(x) + delta);
    out
}

/// Hill-climbs over coverage weights looking for an instance where the greedy does
/// poorly relative to the optimum. Returns the worst instance found and its ratio.
pub fn adversarial_search(
    config: GeneratorConfig,
    seed: u64,
    steps: usize,
) -> Result<(Instance, Value)> {
    let budget = Budget::from_env();
    let mut rng = rng_for(seed, u64::MAX);
    let ratio_of = |inst: &Instance| -> Result<Value> {
        let g = greedy_maximize(
            &inst.function_oracle(),
            &inst.matroid_oracle(),
            GreedyOptions::default(),
        )?;
        let opt = brute_force_opt(&inst.function_oracle(), &inst.matroid_oracle(), &budget)?;
        Ok(approximation_ratio(g.value, opt.opt_value))
    };
    let config = GeneratorConfig {
        function: FunctionKind::Coverage,
        ..config
    };
    let mut best = generate_instance(config, seed, 0)?;
    let mut best_ratio = ratio_of(&best)?;
    for _ in 0..steps {
        let FunctionSpec::WeightedCoverage { universe, function } = &best.function else {
            unreachable!("search runs on coverage instances")
        };
        let mut weights = function.weights().to_vec();
        let u = rng.gen_range(0..weights.len());
        let e = rng.gen_range(0..best.n().max(1));
        let i = rng.gen_range(0..best.k);
        if best.n() == 0 {
            break;
        }
        weights[u][e][i] = random_weight(&mut rng);
        let candidate = Instance::new(
            best.ground.clone(),
            best.k,
            FunctionSpec::WeightedCoverage {
                universe: universe.clone(),
                function: WeightedCoverageFunction::new(best.n(), best.k, weights)?,
            },
            best.matroid.clone(),
        )?;
        let r = ratio_of(&candidate)?;
        if r <= best_ratio {
            best = candidate;
            best_ratio = r;
        }
    }
    Ok((best, best_ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::is_k_submodular;

    #[test]
    fn same_seed_same_instance() {
        let cfg = GeneratorConfig {
            n: 4,
            k: 2,
            matroid: MatroidKind::Graphic,
            function: FunctionKind::Coverage,
        };
        let a = generate_instance(cfg, 1, 0).unwrap();
        let b = generate_instance(cfg, 1, 0).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = generate_instance(cfg, 1, 1).unwrap();
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn oversized_table_rejected() {
        let cfg = GeneratorConfig {
            n: 10,
            k: 3,
            matroid: MatroidKind::Uniform,
            function: FunctionKind::Table,
        };
        assert!(matches!(
            generate_instance(cfg, 1, 0),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn generated_tables_are_certified() {
        let budget = Budget::default();
        for seed in 0..10 {
            let cfg = GeneratorConfig {
                n: 3,
                k: 2,
                matroid: MatroidKind::Partition,
                function: FunctionKind::Table,
            };
            let inst = generate_instance(cfg, seed, 0).unwrap();
            let f = inst.function_oracle();
            assert!(is_monotone(&f, &budget).unwrap().holds());
            assert!(is_k_submodular(&f, &budget).unwrap().holds());
        }
    }

    #[test]
    fn monotonize_is_monotone() {
        let mut rng = rng_for(7, 0);
        let raw = random_raw_table(&mut rng, 3, 2).unwrap();
        let m = monotonize(&raw);
        assert!(is_monotone(&FunctionOracle::new(m), &Budget::default())
            .unwrap()
            .holds());
    }

    #[test]
    fn every_family_has_positive_rank() {
        for kind in MatroidKind::ALL {
            for seed in 0..20 {
                let mut rng = rng_for(seed, 0);
                let spec = random_matroid(&mut rng, 3, kind);
                let inst = Instance::new(
                    GroundSet::indexed(3),
                    1,
                    FunctionSpec::Modular(random_modular(&mut rng, 3, 1)),
                    spec,
                )
                .unwrap();
                assert!(crate::matroids::rank(&inst.matroid_oracle()).unwrap() >= 1);
            }
        }
    }
}
