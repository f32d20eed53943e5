//! Instance files: one JSON object holding `k`, the ordered element list, a function
//! spec and a matroid spec.
//!
//! ```json
//! {
//!   "k": 2,
//!   "elements": ["a", "b"],
//!   "function": { "type": "modular", "gains": { "a": { "1": 3, "2": 1 }, "b": { "1": 2, "2": "7/2" } } },
//!   "matroid": { "type": "uniform", "N": 1 }
//! }
//! ```
//!
//! Function types:
//!
//! * `table`: `values` maps every labeling to a value. A key lists the labels of the
//!   elements in file order, either as digits (`"012"`, only when `k <= 9`) or
//!   comma-separated (`"0,1,2"`). The table must be total.
//! * `modular`: `gains[element][label]`; missing entries are 0.
//! * `weighted_coverage`: `universe` names the items; `weights` is a list of
//!   `{item, element, label, weight}` records, missing ones are 0.
//!
//! Matroid types: `uniform {N}`, `partition {blocks: [{elements, cap}]}`,
//! `graphic {vertices, edges: {element: [u, v]}}`, `linear_gf2 {dimension, columns:
//! {element: "0101"}}` and `explicit {independent_sets: [[...], ...]}`.
//!
//! Values are JSON integers or `"num/den"` strings; decimals are rejected.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::budget::{lattice_size, Budget};
use crate::domain::{GroundSet, LabeledSet, Lattice};
use crate::error::{Error, Result};
use crate::functions::{
    FunctionOracle, KFunction, ModularFunction, TableFunction, WeightedCoverageFunction,
};
use crate::matroids::{
    ExplicitMatroid, GraphicMatroid, LinearMatroidGF2, Matroid, MatroidOracle, PartitionMatroid,
    UniformMatroid,
};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Table(TableFunction),
    Modular(ModularFunction),
    WeightedCoverage {
        universe: Vec<String>,
        function: WeightedCoverageFunction,
    },
}

impl FunctionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FunctionSpec::Table(_) => "table",
            FunctionSpec::Modular(_) => "modular",
            FunctionSpec::WeightedCoverage { .. } => "weighted_coverage",
        }
    }

    fn as_function(&self) -> Arc<dyn KFunction> {
        match self {
            FunctionSpec::Table(t) => Arc::new(t.clone()),
            FunctionSpec::Modular(m) => Arc::new(m.clone()),
            FunctionSpec::WeightedCoverage { function, .. } => Arc::new(function.clone()),
        }
    }

    /// Families that are monotone and k-submodular for every admissible parameter choice.
    pub fn certified(&self) -> bool {
        matches!(
            self,
            FunctionSpec::Modular(_) | FunctionSpec::WeightedCoverage { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidSpec {
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
    Graphic(GraphicMatroid),
    LinearGf2(LinearMatroidGF2),
    Explicit(ExplicitMatroid),
}

impl MatroidSpec {
    pub fn kind(&self) -> &'static str {
        self.as_matroid().kind()
    }

    fn as_matroid(&self) -> Arc<dyn Matroid> {
        match self {
            MatroidSpec::Uniform(m) => Arc::new(m.clone()),
            MatroidSpec::Partition(m) => Arc::new(m.clone()),
            MatroidSpec::Graphic(m) => Arc::new(m.clone()),
            MatroidSpec::LinearGf2(m) => Arc::new(m.clone()),
            MatroidSpec::Explicit(m) => Arc::new(m.clone()),
        }
    }

    /// The four structured families satisfy the matroid axioms by construction;
    /// explicit lists must be validated.
    pub fn certified(&self) -> bool {
        !matches!(self, MatroidSpec::Explicit(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub ground: GroundSet,
    pub k: usize,
    pub function: FunctionSpec,
    pub matroid: MatroidSpec,
}

impl Instance {
    pub fn new(
        ground: GroundSet,
        k: usize,
        function: FunctionSpec,
        matroid: MatroidSpec,
    ) -> Result<Instance> {
        let f = function.as_function();
        let m = matroid.as_matroid();
        if f.arity() != k || f.ground_size() != ground.len() || m.ground_size() != ground.len() {
            return Err(Error::DomainMismatch(format!(
                "instance has n={}, k={k}; function has n={}, k={}; matroid has n={}",
                ground.len(),
                f.ground_size(),
                f.arity(),
                m.ground_size()
            )));
        }
        Ok(Instance {
            ground,
            k,
            function,
            matroid,
        })
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// A fresh evaluation oracle with a zeroed counter.
    pub fn function_oracle(&self) -> FunctionOracle {
        FunctionOracle::from_arc(self.function.as_function())
    }

    /// A fresh membership oracle with a zeroed counter.
    pub fn matroid_oracle(&self) -> MatroidOracle {
        MatroidOracle::from_arc(self.matroid.as_matroid())
    }

    pub fn parse_str(text: &str) -> Result<Instance> {
        Instance::parse_with_budget(text, &Budget::from_env())
    }

    pub fn parse_with_budget(text: &str, budget: &Budget) -> Result<Instance> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.into_instance(budget)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Instance> {
        Instance::parse_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&InstanceFile::from_instance(self))
            .expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// SHA-256 of the canonical compact serialization, hex encoded.
    pub fn digest(&self) -> String {
        let compact =
            serde_json::to_vec(&InstanceFile::from_instance(self)).expect("instance serializes");
        let hash = Sha256::digest(&compact);
        let mut out = String::with_capacity(64);
        for b in hash {
            write!(out, "{b:02x}").unwrap();
        }
        out
    }

    pub fn format_labeling(&self, x: &LabeledSet) -> BTreeMap<String, usize> {
        x.support()
            .into_iter()
            .map(|e| (self.ground.name(e).to_string(), x.label(e)))
            .collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    k: usize,
    elements: Vec<String>,
    function: FunctionFile,
    matroid: MatroidFile,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum FunctionFile {
    Table {
        values: BTreeMap<String, Value>,
    },
    Modular {
        gains: BTreeMap<String, BTreeMap<String, Value>>,
    },
    WeightedCoverage {
        universe: Vec<String>,
        weights: Vec<WeightFile>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightFile {
    item: String,
    element: String,
    label: usize,
    weight: Value,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum MatroidFile {
    Uniform {
        #[serde(rename = "N")]
        cap: usize,
    },
    Partition {
        blocks: Vec<BlockFile>,
    },
    Graphic {
        vertices: usize,
        edges: BTreeMap<String, [usize; 2]>,
    },
    LinearGf2 {
        dimension: usize,
        columns: BTreeMap<String, String>,
    },
    Explicit {
        independent_sets: Vec<Vec<String>>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockFile {
    elements: Vec<String>,
    cap: usize,
}

fn table_key(x: &LabeledSet, k: usize) -> String {
    if k <= 9 {
        x.labels().map(|l| char::from(b'0' + l as u8)).collect()
    } else {
        x.labels()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_table_key(key: &str, n: usize, k: usize) -> Option<Vec<usize>> {
    let labels: Vec<usize> = if key.contains(',') {
        key.split(',')
            .map(|p| p.trim().parse().ok())
            .collect::<Option<_>>()?
    } else if k <= 9 {
        key.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?
    } else if n == 1 {
        vec![key.trim().parse().ok()?]
    } else {
        return None;
    };
    (labels.len() == n && labels.iter().all(|&l| l <= k)).then_some(labels)
}

impl InstanceFile {
    fn into_instance(self, budget: &Budget) -> Result<Instance> {
        let k = self.k;
        if k < 1 {
            return Err(Error::semantic("k", "k must be at least 1"));
        }
        if k > u8::MAX as usize {
            return Err(Error::semantic("k", "k must be at most 255"));
        }
        let mut seen = HashSet::new();
        for (i, name) in self.elements.iter().enumerate() {
            if !seen.insert(name.as_str()) {
                return Err(Error::semantic(
                    format!("elements[{i}]"),
                    format!("duplicate element `{name}`"),
                ));
            }
        }
        let ground = GroundSet::new(self.elements.iter().cloned())?;
        let n = ground.len();
        let lookup = |path: String, name: &str| {
            ground
                .position(name)
                .ok_or_else(|| Error::semantic(path, format!("unknown element `{name}`")))
        };

        let function = match self.function {
            FunctionFile::Table { values } => {
                let size = lattice_size(n, k);
                if size > budget.max_table {
                    return Err(Error::semantic(
                        "function.values",
                        format!(
                            "table needs (k+1)^n = {size} entries, above the limit of {}",
                            budget.max_table
                        ),
                    ));
                }
                let lattice = Lattice::new(n, k);
                let mut dense: Vec<Option<Value>> = vec![None; lattice.size()];
                for (key, value) in values {
                    let labels = parse_table_key(&key, n, k).ok_or_else(|| {
                        Error::semantic(
                            format!("function.values.{key}"),
                            format!("expected {n} labels in 0..={k}"),
                        )
                    })?;
                    let idx = lattice.index(&LabeledSet::from_labels(&labels, k)?);
                    if dense[idx].replace(value).is_some() {
                        return Err(Error::semantic(
                            format!("function.values.{key}"),
                            "labeling listed twice",
                        ));
                    }
                }
                if let Some(missing) = dense.iter().position(Option::is_none) {
                    return Err(Error::semantic(
                        "function.values",
                        format!(
                            "table is not total: no value for `{}`",
                            table_key(&lattice.labeling(missing), k)
                        ),
                    ));
                }
                FunctionSpec::Table(TableFunction::new(
                    n,
                    k,
                    dense.into_iter().map(Option::unwrap).collect(),
                )?)
            }
            FunctionFile::Modular { gains } => {
                let mut dense = vec![vec![Value::ZERO; k]; n];
                for (name, per_label) in gains {
                    let e = lookup(format!("function.gains.{name}"), &name)?;
                    for (label, gain) in per_label {
                        let path = format!("function.gains.{name}.{label}");
                        let i: usize = label
                            .parse()
                            .ok()
                            .filter(|i| (1..=k).contains(i))
                            .ok_or_else(|| {
                                Error::semantic(&path, format!("label must be in 1..={k}"))
                            })?;
                        if gain.is_negative() {
                            return Err(Error::semantic(path, "gains must be nonnegative"));
                        }
                        dense[e][i - 1] = gain;
                    }
                }
                FunctionSpec::Modular(ModularFunction::new(k, dense)?)
            }
            FunctionFile::WeightedCoverage { universe, weights } => {
                let mut items = HashSet::new();
                for (i, u) in universe.iter().enumerate() {
                    if !items.insert(u.as_str()) {
                        return Err(Error::semantic(
                            format!("function.universe[{i}]"),
                            format!("duplicate item `{u}`"),
                        ));
                    }
                }
                let mut dense = vec![vec![vec![Value::ZERO; k]; n]; universe.len()];
                let mut set = HashSet::new();
                for (w, entry) in weights.iter().enumerate() {
                    let path = format!("function.weights[{w}]");
                    let u = universe
                        .iter()
                        .position(|x| *x == entry.item)
                        .ok_or_else(|| {
                            Error::semantic(
                                format!("{path}.item"),
                                format!("unknown item `{}`", entry.item),
                            )
                        })?;
                    let e = lookup(format!("{path}.element"), &entry.element)?;
                    if !(1..=k).contains(&entry.label) {
                        return Err(Error::semantic(
                            format!("{path}.label"),
                            format!("label must be in 1..={k}"),
                        ));
                    }
                    if entry.weight.is_negative() {
                        return Err(Error::semantic(
                            format!("{path}.weight"),
                            "weights must be nonnegative",
                        ));
                    }
                    if !set.insert((u, e, entry.label)) {
                        return Err(Error::semantic(
                            path,
                            "duplicate (item, element, label) entry",
                        ));
                    }
                    dense[u][e][entry.label - 1] = entry.weight;
                }
                FunctionSpec::WeightedCoverage {
                    function: WeightedCoverageFunction::new(n, k, dense)?,
                    universe,
                }
            }
        };

        let matroid = match self.matroid {
            MatroidFile::Uniform { cap } => MatroidSpec::Uniform(UniformMatroid::new(n, cap)),
            MatroidFile::Partition { blocks } => {
                let mut owner: Vec<Option<usize>> = vec![None; n];
                let mut parsed = Vec::with_capacity(blocks.len());
                for (b, block) in blocks.iter().enumerate() {
                    let mut members = Vec::with_capacity(block.elements.len());
                    for (j, name) in block.elements.iter().enumerate() {
                        let path = format!("matroid.blocks[{b}].elements[{j}]");
                        let e = lookup(path.clone(), name)?;
                        if let Some(prev) = owner[e] {
                            return Err(Error::semantic(
                                path,
                                format!("element `{name}` already belongs to block {prev}"),
                            ));
                        }
                        owner[e] = Some(b);
                        members.push(e);
                    }
                    parsed.push((members, block.cap));
                }
                if let Some(e) = owner.iter().position(Option::is_none) {
                    return Err(Error::semantic(
                        "matroid.blocks",
                        format!("element `{}` is in no block", ground.name(e)),
                    ));
                }
                MatroidSpec::Partition(PartitionMatroid::new(n, parsed)?)
            }
            MatroidFile::Graphic { vertices, edges } => {
                let mut ends: Vec<Option<(usize, usize)>> = vec![None; n];
                for (name, [u, v]) in edges {
                    let path = format!("matroid.edges.{name}");
                    let e = lookup(path.clone(), &name)?;
                    if u >= vertices || v >= vertices {
                        return Err(Error::semantic(
                            path,
                            format!("vertex outside 0..{vertices}"),
                        ));
                    }
                    ends[e] = Some((u, v));
                }
                if let Some(e) = ends.iter().position(Option::is_none) {
                    return Err(Error::semantic(
                        "matroid.edges",
                        format!("element `{}` has no edge", ground.name(e)),
                    ));
                }
                MatroidSpec::Graphic(GraphicMatroid::new(
                    vertices,
                    ends.into_iter().map(Option::unwrap).collect(),
                )?)
            }
            MatroidFile::LinearGf2 { dimension, columns } => {
                let mut cols: Vec<Option<Vec<bool>>> = vec![None; n];
                for (name, bits) in columns {
                    let path = format!("matroid.columns.{name}");
                    let e = lookup(path.clone(), &name)?;
                    let col: Option<Vec<bool>> = bits
                        .chars()
                        .map(|c| match c {
                            '0' => Some(false),
                            '1' => Some(true),
                            _ => None,
                        })
                        .collect();
                    match col {
                        Some(c) if c.len() == dimension => cols[e] = Some(c),
                        _ => {
                            return Err(Error::semantic(
                                path,
                                format!("expected a string of {dimension} binary digits"),
                            ))
                        }
                    }
                }
                if let Some(e) = cols.iter().position(Option::is_none) {
                    return Err(Error::semantic(
                        "matroid.columns",
                        format!("element `{}` has no column", ground.name(e)),
                    ));
                }
                let cols: Vec<Vec<bool>> = cols.into_iter().map(Option::unwrap).collect();
                MatroidSpec::LinearGf2(LinearMatroidGF2::new(dimension, &cols)?)
            }
            MatroidFile::Explicit { independent_sets } => {
                let mut sets = Vec::with_capacity(independent_sets.len());
                for (s, names) in independent_sets.iter().enumerate() {
                    let mut set = Vec::with_capacity(names.len());
                    for (j, name) in names.iter().enumerate() {
                        set.push(lookup(format!("matroid.independent_sets[{s}][{j}]"), name)?);
                    }
                    sets.push(set);
                }
                MatroidSpec::Explicit(ExplicitMatroid::new(n, sets)?)
            }
        };

        Instance::new(ground, k, function, matroid)
    }

    fn from_instance(inst: &Instance) -> InstanceFile {
        let g = &inst.ground;
        let k = inst.k;
        let function = match &inst.function {
            FunctionSpec::Table(t) => FunctionFile::Table {
                values: t
                    .lattice()
                    .iter()
                    .zip(t.values())
                    .map(|(x, v)| (table_key(&x, k), *v))
                    .collect(),
            },
            FunctionSpec::Modular(m) => FunctionFile::Modular {
                gains: m
                    .gains()
                    .iter()
                    .enumerate()
                    .map(|(e, row)| {
                        let labels = row
                            .iter()
                            .enumerate()
                            .map(|(i, v)| ((i + 1).to_string(), *v))
                            .collect();
                        (g.name(e).to_string(), labels)
                    })
                    .collect(),
            },
            FunctionSpec::WeightedCoverage { universe, function } => {
                let mut weights = Vec::new();
                for (u, item) in universe.iter().enumerate() {
                    for e in 0..inst.n() {
                        for i in 1..=k {
                            let w = function.weight(u, e, i);
                            if !w.is_zero() {
                                weights.push(WeightFile {
                                    item: item.clone(),
                                    element: g.name(e).to_string(),
                                    label: i,
                                    weight: w,
                                });
                            }
                        }
                    }
                }
                FunctionFile::WeightedCoverage {
                    universe: universe.clone(),
                    weights,
                }
            }
        };
        let matroid = match &inst.matroid {
            MatroidSpec::Uniform(m) => MatroidFile::Uniform { cap: m.cap() },
            MatroidSpec::Partition(m) => MatroidFile::Partition {
                blocks: m
                    .blocks()
                    .into_iter()
                    .map(|(members, cap)| BlockFile {
                        elements: members.iter().map(|&e| g.name(e).to_string()).collect(),
                        cap,
                    })
                    .collect(),
            },
            MatroidSpec::Graphic(m) => MatroidFile::Graphic {
                vertices: m.vertices(),
                edges: m
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(e, &(u, v))| (g.name(e).to_string(), [u, v]))
                    .collect(),
            },
            MatroidSpec::LinearGf2(m) => MatroidFile::LinearGf2 {
                dimension: m.dimension(),
                columns: (0..inst.n())
                    .map(|e| {
                        let bits = m
                            .column(e)
                            .iter()
                            .map(|&b| if b { '1' } else { '0' })
                            .collect();
                        (g.name(e).to_string(), bits)
                    })
                    .collect(),
            },
            MatroidSpec::Explicit(m) => MatroidFile::Explicit {
                independent_sets: m
                    .sets()
                    .map(|s| s.iter().map(|&e| g.name(e).to_string()).collect())
                    .collect(),
            },
        };
        InstanceFile {
            k,
            elements: g.names().to_vec(),
            function,
            matroid,
        }
    }
}
