//! Set-function oracles and query accounting.
//!
//! One query is one evaluation of `f` on a set. A marginal gain costs one
//! query when the caller already holds `f(S)`.

use core::cell::Cell;

use crate::{ElementSet, Result};

/// A real-valued function on subsets of `0..ground_size()`.
///
/// Implementations must be pure: evaluating never mutates the instance, and
/// the result depends only on the members of `set`.
pub trait SetFunction {
    fn ground_size(&self) -> usize;

    fn eval(&self, set: &ElementSet) -> Result<f64>;

    /// `Δf(S, x)` for `x ∉ S`, when the objective can compute it without a
    /// full evaluation and `f(S) + Δf(S, x)` is bit-identical to
    /// `f(S ∪ {x})`. The default never can.
    fn exact_gain(&self, _set: &ElementSet, _x: usize) -> Option<f64> {
        None
    }

    /// `f` of the set whose members are the set bits of `bits`, for
    /// objectives with a word-sized fast path. Must be bit-identical to
    /// [`SetFunction::eval`]. The default has no fast path.
    fn eval_bits(&self, _bits: u64) -> Option<Result<f64>> {
        None
    }
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn eval(&self, set: &ElementSet) -> Result<f64> {
        (**self).eval(set)
    }

    fn exact_gain(&self, set: &ElementSet, x: usize) -> Option<f64> {
        (**self).exact_gain(set, x)
    }

    fn eval_bits(&self, bits: u64) -> Option<Result<f64>> {
        (**self).eval_bits(bits)
    }
}

/// Wraps an objective and counts every evaluation.
///
/// The counter is a `Cell`, so a counted oracle belongs to one worker;
/// concurrent runs each wrap the shared objective themselves and sum counts
/// afterwards.
pub struct QueryCountedOracle<'a> {
    inner: &'a dyn SetFunction,
    count: Cell<u64>,
}

impl<'a> QueryCountedOracle<'a> {
    pub fn new(inner: &'a dyn SetFunction) -> Self {
        Self {
            inner,
            count: Cell::new(0),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    pub fn eval(&self, set: &ElementSet) -> Result<f64> {
        self.count.set(self.count.get() + 1);
        self.inner.eval(set)
    }

    /// `f(S ∪ {x})`, leaving `set` unchanged. Costs one query.
    pub fn eval_with(&self, set: &mut ElementSet, x: usize) -> Result<f64> {
        let added = set.insert(x);
        let value = self.eval(set);
        if added {
            set.remove(x);
        }
        value
    }

    /// `f(S ∪ {x})` given the cached `base_value = f(S)`, for `x ∉ S`.
    /// Costs one query either way.
    pub fn eval_added(&self, set: &mut ElementSet, base_value: f64, x: usize) -> Result<f64> {
        if let Some(gain) = self.inner.exact_gain(set, x) {
            self.count.set(self.count.get() + 1);
            return Ok(base_value + gain);
        }
        self.eval_with(set, x)
    }

    /// Word-sized evaluation; `None`, and no query spent, when the objective
    /// has no such path.
    pub fn eval_bits(&self, bits: u64) -> Option<Result<f64>> {
        let value = self.inner.eval_bits(bits)?;
        self.count.set(self.count.get() + 1);
        Some(value)
    }

    pub fn queries(&self) -> u64 {
        self.count.get()
    }
}

/// `f(S ∪ {x}) − f(S)` given the cached `base_value = f(S)`.
///
/// Members of `S` have zero gain by convention and consume no query.
pub fn marginal_gain(
    oracle: &QueryCountedOracle<'_>,
    base_value: f64,
    set: &mut ElementSet,
    x: usize,
) -> Result<f64> {
    if set.contains(x) {
        return Ok(0.0);
    }
    Ok(oracle.eval_added(set, base_value, x)? - base_value)
}
