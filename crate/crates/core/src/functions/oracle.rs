use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::domain::LabeledSet;
use crate::error::{Error, Result};
use crate::value::Value;

/// A set function on `(k+1)^E`. Implementations must be deterministic and pure.
pub trait KFunction: Send + Sync + fmt::Debug {
    fn ground_size(&self) -> usize;
    fn arity(&self) -> usize;
    fn value(&self, x: &LabeledSet) -> Value;
}

impl<F: KFunction + ?Sized> KFunction for Arc<F> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn value(&self, x: &LabeledSet) -> Value {
        (**self).value(x)
    }
}

/// Adapter turning a closure into a [`KFunction`].
pub struct FnFunction<F> {
    n: usize,
    k: usize,
    f: F,
}

impl<F> FnFunction<F>
where
    F: Fn(&LabeledSet) -> Value + Send + Sync,
{
    pub fn new(n: usize, k: usize, f: F) -> Self {
        FnFunction { n, k, f }
    }
}

impl<F> fmt::Debug for FnFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnFunction(n={}, k={})", self.n, self.k)
    }
}

impl<F> KFunction for FnFunction<F>
where
    F: Fn(&LabeledSet) -> Value + Send + Sync,
{
    fn ground_size(&self) -> usize {
        self.n
    }
    fn arity(&self) -> usize {
        self.k
    }
    fn value(&self, x: &LabeledSet) -> Value {
        (self.f)(x)
    }
}

#[derive(Debug)]
struct Normalized {
    inner: Arc<dyn KFunction>,
    offset: Value,
}

impl KFunction for Normalized {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn arity(&self) -> usize {
        self.inner.arity()
    }
    fn value(&self, x: &LabeledSet) -> Value {
        self.inner.value(x) - self.offset
    }
}

/// Evaluation oracle with an invocation counter.
///
/// The counter is atomic, so `evaluate` can be called from several threads; it is the
/// only state the oracle mutates.
pub struct FunctionOracle {
    inner: Arc<dyn KFunction>,
    calls: AtomicU64,
}

impl FunctionOracle {
    pub fn new<F: KFunction + 'static>(f: F) -> FunctionOracle {
        FunctionOracle::from_arc(Arc::new(f))
    }

    pub fn from_arc(inner: Arc<dyn KFunction>) -> FunctionOracle {
        FunctionOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    pub fn arity(&self) -> usize {
        self.inner.arity()
    }

    pub fn evaluate(&self, x: &LabeledSet) -> Result<Value> {
        self.check_domain(x)?;
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(self.inner.value(x))
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    /// A fresh oracle for `g(x) = f(x) - f(0)`. Reading `f(0)` here is not counted.
    pub fn normalize(&self) -> FunctionOracle {
        let zero = LabeledSet::zeros(self.ground_size(), self.arity());
        let offset = self.inner.value(&zero);
        FunctionOracle::new(Normalized {
            inner: Arc::clone(&self.inner),
            offset,
        })
    }

    /// Uncounted access to the underlying function.
    pub fn function(&self) -> &Arc<dyn KFunction> {
        &self.inner
    }

    pub fn check_domain(&self, x: &LabeledSet) -> Result<()> {
        if x.len() != self.ground_size() || x.k() != self.arity() {
            return Err(Error::DomainMismatch(format!(
                "labeling has (n={}, k={}), function expects (n={}, k={})",
                x.len(),
                x.k(),
                self.ground_size(),
                self.arity()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for FunctionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionOracle")
            .field("inner", &self.inner)
            .field("calls", &self.calls())
            .finish()
    }
}

/// `Δ_{e,i} f(x) = f(x with e -> i) - f(x)`. Two evaluation calls.
pub fn marginal_gain(f: &FunctionOracle, x: &LabeledSet, e: usize, i: usize) -> Result<Value> {
    check_gain_args(f, x, e, i)?;
    let base = f.evaluate(x)?;
    marginal_gain_from(f, x, base, e, i)
}

/// Like [`marginal_gain`] with `f(x)` supplied by the caller. One evaluation call.
pub fn marginal_gain_from(
    f: &FunctionOracle,
    x: &LabeledSet,
    fx: Value,
    e: usize,
    i: usize,
) -> Result<Value> {
    check_gain_args(f, x, e, i)?;
    Ok(f.evaluate(&x.with(e, i))? - fx)
}

fn check_gain_args(f: &FunctionOracle, x: &LabeledSet, e: usize, i: usize) -> Result<()> {
    f.check_domain(x)?;
    if e >= x.len() {
        return Err(Error::Precondition(format!(
            "element index {e} out of range"
        )));
    }
    if x.label(e) != 0 {
        return Err(Error::Precondition(format!(
            "element {e} is already assigned label {}",
            x.label(e)
        )));
    }
    if i == 0 || i > x.k() {
        return Err(Error::Precondition(format!(
            "label {i} outside 1..={}",
            x.k()
        )));
    }
    Ok(())
}
