//! Semirings the chart engine is generic over.

use core::fmt::Debug;

use crate::error::Error;

/// `(⊕, ⊗, 0, 1)` plus the map from a mention weight to an axiom value.
pub trait Semiring {
    /// Carrier.
    type Value: Copy + PartialEq + Debug;

    /// When set, the engine keeps the first strictly-better candidate per cell
    /// (see [`Semiring::prefer`]); that candidate is the best derivation step.
    const TRACKS_ARGMAX: bool = false;

    /// Identity of ⊕, annihilator of ⊗.
    fn zero() -> Self::Value;
    /// Identity of ⊗.
    fn one() -> Self::Value;
    /// ⊕
    fn plus(a: Self::Value, b: Self::Value) -> Self::Value;
    /// ⊗
    fn times(a: Self::Value, b: Self::Value) -> Self::Value;
    /// Axiom value of a mention with weight `w` (finite or `-inf`).
    fn lift(w: f64) -> Self::Value;

    /// Argmax semirings: does `candidate` beat `incumbent`?
    fn prefer(_candidate: Self::Value, _incumbent: Self::Value) -> bool {
        false
    }
}

/// Log-space sum-product: computes `log Z(w)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LogReal;

/// Max-plus: computes MAP scores; the preferred instance of each item gives
/// the best derivation.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxTropical;

/// Derivation counting over `u64` with overflow detection.
#[derive(Debug, Clone, Copy, Default)]
pub struct Counting;

/// `log(exp(a) + exp(b))` for values in `[-inf, +inf)`.
#[inline]
pub fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + libm::log1p(libm::exp(lo - hi))
}

/// `log Σ exp(vᵢ)` with max-shift stabilization; empty input gives `-inf`.
pub fn log_sum_exp(values: &[f64]) -> Result<f64, Error> {
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        if v.is_nan() || v == f64::INFINITY {
            return Err(Error::NumericDomain(v));
        }
        if v > max {
            max = v;
        }
    }
    if max == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let sum: f64 = values.iter().map(|v| libm::exp(v - max)).sum();
    Ok(max + libm::log(sum))
}

impl Semiring for LogReal {
    type Value = f64;

    fn zero() -> f64 {
        f64::NEG_INFINITY
    }
    fn one() -> f64 {
        0.0
    }
    #[inline(always)]
    fn plus(a: f64, b: f64) -> f64 {
        log_add(a, b)
    }
    #[inline(always)]
    fn times(a: f64, b: f64) -> f64 {
        a + b
    }
    #[inline(always)]
    fn lift(w: f64) -> f64 {
        w
    }
}

impl Semiring for MaxTropical {
    type Value = f64;
    const TRACKS_ARGMAX: bool = true;

    fn zero() -> f64 {
        f64::NEG_INFINITY
    }
    fn one() -> f64 {
        0.0
    }
    #[inline(always)]
    fn plus(a: f64, b: f64) -> f64 {
        if b > a {
            b
        } else {
            a
        }
    }
    #[inline(always)]
    fn times(a: f64, b: f64) -> f64 {
        a + b
    }
    #[inline(always)]
    fn lift(w: f64) -> f64 {
        w
    }
    #[inline(always)]
    fn prefer(candidate: f64, incumbent: f64) -> bool {
        candidate > incumbent
    }
}

/// A derivation count, or a marker that it no longer fits in `u64`.
///
/// `Overflow` behaves like an infinite count: it absorbs ⊕ and ⊗ except that
/// multiplying by zero still gives zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Count {
    /// Exact value.
    Exact(u64),
    /// More than `u64::MAX`.
    Overflow,
}

impl Count {
    /// The exact value, or [`Error::CountOverflow`].
    pub fn exact(self) -> Result<u64, Error> {
        match self {
            Count::Exact(v) => Ok(v),
            Count::Overflow => Err(Error::CountOverflow),
        }
    }
}

impl Semiring for Counting {
    type Value = Count;

    fn zero() -> Count {
        Count::Exact(0)
    }
    fn one() -> Count {
        Count::Exact(1)
    }
    #[inline]
    fn plus(a: Count, b: Count) -> Count {
        match (a, b) {
            (Count::Exact(x), Count::Exact(y)) => x.checked_add(y).map_or(Count::Overflow, Count::Exact),
            _ => Count::Overflow,
        }
    }
    #[inline]
    fn times(a: Count, b: Count) -> Count {
        match (a, b) {
            (Count::Exact(0), _) | (_, Count::Exact(0)) => Count::Exact(0),
            (Count::Exact(x), Count::Exact(y)) => x.checked_mul(y).map_or(Count::Overflow, Count::Exact),
            _ => Count::Overflow,
        }
    }
    /// Forbidden mentions contribute no derivation.
    #[inline]
    fn lift(w: f64) -> Count {
        if w == f64::NEG_INFINITY {
            Count::Exact(0)
        } else {
            Count::Exact(1)
        }
    }
}
