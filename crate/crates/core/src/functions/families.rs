use crate::budget::{lattice_size, Budget};
use crate::domain::{LabeledSet, Lattice};
use crate::error::{Error, Result};
use crate::value::Value;

use super::KFunction;

/// A function given by its full value table over `{0, ..., k}^E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFunction {
    lattice: Lattice,
    values: Vec<Value>,
}

impl TableFunction {
    /// `values[i]` is the value of `Lattice::labeling(i)`.
    pub fn new(n: usize, k: usize, values: Vec<Value>) -> Result<TableFunction> {
        if k == 0 {
            return Err(Error::Invalid("arity k must be at least 1".into()));
        }
        let size = lattice_size(n, k);
        Budget::check("table entries (k+1)^n", size, Budget::default().max_table)?;
        if values.len() as u128 != size {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected (k+1)^n = {size}",
                values.len()
            )));
        }
        Ok(TableFunction {
            lattice: Lattice::new(n, k),
            values,
        })
    }

    /// Tabulates `f` over the whole lattice.
    pub fn tabulate(
        n: usize,
        k: usize,
        mut f: impl FnMut(&LabeledSet) -> Value,
    ) -> Result<TableFunction> {
        Budget::check(
            "table entries (k+1)^n",
            lattice_size(n, k),
            Budget::default().max_table,
        )?;
        let lattice = Lattice::new(n, k);
        let values = lattice.iter().map(|x| f(&x)).collect();
        TableFunction::new(n, k, values)
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn get(&self, x: &LabeledSet) -> Value {
        self.values[self.lattice.index(x)]
    }

    pub fn set(&mut self, x: &LabeledSet, v: Value) {
        let i = self.lattice.index(x);
        self.values[i] = v;
    }
}

impl KFunction for TableFunction {
    fn ground_size(&self) -> usize {
        self.lattice.n
    }
    fn arity(&self) -> usize {
        self.lattice.k
    }
    fn value(&self, x: &LabeledSet) -> Value {
        self.get(x)
    }
}

/// `f(x) = Σ_{e ∈ supp(x)} gain(e, x(e))` with nonnegative gains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularFunction {
    k: usize,
    // gains[e][i - 1]
    gains: Vec<Vec<Value>>,
}

impl ModularFunction {
    pub fn new(k: usize, gains: Vec<Vec<Value>>) -> Result<ModularFunction> {
        if k == 0 {
            return Err(Error::Invalid("arity k must be at least 1".into()));
        }
        for (e, row) in gains.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Invalid(format!(
                    "element {e} has {} gains, expected {k}",
                    row.len()
                )));
            }
            if let Some(g) = row.iter().find(|g| g.is_negative()) {
                return Err(Error::Invalid(format!("negative gain {g} for element {e}")));
            }
        }
        Ok(ModularFunction { k, gains })
    }

    pub fn gain(&self, e: usize, i: usize) -> Value {
        self.gains[e][i - 1]
    }

    pub fn gains(&self) -> &[Vec<Value>] {
        &self.gains
    }
}

impl KFunction for ModularFunction {
    fn ground_size(&self) -> usize {
        self.gains.len()
    }
    fn arity(&self) -> usize {
        self.k
    }
    fn value(&self, x: &LabeledSet) -> Value {
        x.labels()
            .enumerate()
            .filter(|&(_, l)| l != 0)
            .map(|(e, l)| self.gains[e][l - 1])
            .sum()
    }
}

/// `f(x) = Σ_u max_{e ∈ supp(x)} w(u, e, x(e))`, empty max = 0.
///
/// Each item `u` is covered by the best-weighted assigned element; the label an element
/// receives selects which weight it contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCoverageFunction {
    n: usize,
    k: usize,
    // weights[u][e][i - 1]
    weights: Vec<Vec<Vec<Value>>>,
}

impl WeightedCoverageFunction {
    pub fn new(n: usize, k: usize, weights: Vec<Vec<Vec<Value>>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("arity k must be at least 1".into()));
        }
        for (u, per_item) in weights.iter().enumerate() {
            if per_item.len() != n || per_item.iter().any(|row| row.len() != k) {
                return Err(Error::Invalid(format!(
                    "weights for item {u} must be an n x k matrix"
                )));
            }
            if per_item.iter().flatten().any(|w| w.is_negative()) {
                return Err(Error::Invalid(format!("negative weight for item {u}")));
            }
        }
        Ok(WeightedCoverageFunction { n, k, weights })
    }

    pub fn universe_size(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, u: usize, e: usize, i: usize) -> Value {
        self.weights[u][e][i - 1]
    }

    pub fn weights(&self) -> &[Vec<Vec<Value>>] {
        &self.weights
    }
}

impl KFunction for WeightedCoverageFunction {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn arity(&self) -> usize {
        self.k
    }
    fn value(&self, x: &LabeledSet) -> Value {
        let assigned: Vec<(usize, usize)> =
            x.labels().enumerate().filter(|&(_, l)| l != 0).collect();
        self.weights
            .iter()
            .map(|per_item| {
                assigned
                    .iter()
                    .map(|&(e, l)| per_item[e][l - 1])
                    .fold(Value::ZERO, Value::max)
            })
            .sum()
    }
}
