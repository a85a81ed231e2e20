//! Error-free transformations and the dotted primitives they are built on.
//!
//! Rust never reassociates or contracts floating-point expressions on its
//! own, so `(a + b) - b` is evaluated exactly as written and `a * b + c`
//! is two roundings. The only fused operation is the explicit [`dfma`].

use std::hint::black_box;

use crate::dotted::Dotted;

/// An unevaluated pair `hi + lo` produced by an error-free transformation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EftPair<T> {
    pub hi: T,
    pub lo: T,
}

impl<T> EftPair<T> {
    #[inline(always)]
    pub const fn new(hi: T, lo: T) -> Self {
        EftPair { hi, lo }
    }
}

#[inline(always)]
pub fn dadd<T: Dotted>(a: T, b: T) -> T {
    a + b
}

#[inline(always)]
pub fn dsub<T: Dotted>(a: T, b: T) -> T {
    a - b
}

#[inline(always)]
pub fn dmul<T: Dotted>(a: T, b: T) -> T {
    a * b
}

#[inline(always)]
pub fn ddiv<T: Dotted>(a: T, b: T) -> T {
    a / b
}

#[inline(always)]
pub fn dsqrt<T: Dotted>(a: T) -> T {
    a.sqrt()
}

#[inline(always)]
pub fn dneg<T: Dotted>(a: T) -> T {
    -a
}

/// `a * b + c` rounded once.
#[inline(always)]
pub fn dfma<T: Dotted>(a: T, b: T, c: T) -> T {
    a.fma(b, c)
}

/// Knuth's branch-free sum: `hi = fl(a + b)` and, barring overflow,
/// `hi + lo == a + b` exactly. Six additions.
#[inline(always)]
pub fn two_sum<T: Dotted>(a: T, b: T) -> EftPair<T> {
    let s = dadd(a, b);
    let t = dsub(s, b);
    let e1 = dsub(a, t);
    let t2 = dsub(s, t);
    let e2 = dsub(b, t2);
    EftPair::new(s, dadd(e1, e2))
}

/// Difference counterpart of [`two_sum`]: `hi = fl(a - b)`, computed with
/// a real subtraction so NaN signs match plain `a - b`.
#[inline(always)]
pub fn two_diff<T: Dotted>(a: T, b: T) -> EftPair<T> {
    let s = dsub(a, b);
    let t = dadd(s, b);
    let e1 = dsub(a, t);
    let t2 = dsub(s, t);
    EftPair::new(s, dsub(e1, dadd(b, t2)))
}

/// Dekker's sum, exact only when `|a| >= |b|` or `a == 0`. The caller
/// guarantees the ordering; nothing is checked.
#[inline(always)]
pub fn fast_two_sum<T: Dotted>(a: T, b: T) -> EftPair<T> {
    let s = dadd(a, b);
    EftPair::new(s, dsub(b, dsub(s, a)))
}

/// `hi = fl(a * b)`, `lo = fl(fma(a, b, -hi))`. Exact unless the product
/// underflows.
#[inline(always)]
pub fn two_prod<T: Dotted>(a: T, b: T) -> EftPair<T> {
    let p = dmul(a, b);
    EftPair::new(p, dfma(a, b, dneg(p)))
}

/// The floating-point environment cannot support the error-free
/// transformations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnvironmentError {
    #[error("rounding mode is not round-to-nearest-even ({0})")]
    RoundingMode(&'static str),
    #[error("fused multiply-add is not single-rounding for {0}")]
    FusedMultiplyAdd(&'static str),
}

/// Verify that arithmetic rounds to nearest-even and that `fma` rounds
/// once, for both widths. Values pass through `black_box` so the checks
/// run on the hardware rather than in the constant folder.
pub fn check_environment() -> Result<(), EnvironmentError> {
    let one = black_box(1.0f64);
    let half_ulp = black_box(2f64.powi(-53));
    if one + half_ulp != 1.0 {
        return Err(EnvironmentError::RoundingMode("binary64 tie did not round to even"));
    }
    if (one + f64::EPSILON) + half_ulp != 1.0 + 2.0 * f64::EPSILON {
        return Err(EnvironmentError::RoundingMode("binary64 tie did not round to even"));
    }
    if -one - half_ulp != -1.0 || one + 3.0 * 2f64.powi(-54) != 1.0 + f64::EPSILON {
        return Err(EnvironmentError::RoundingMode("binary64 rounding is directed"));
    }
    let onef = black_box(1.0f32);
    let halff = black_box(2f32.powi(-24));
    if onef + halff != 1.0 || -onef - halff != -1.0 || onef + 3.0 * 2f32.powi(-25) != 1.0 + f32::EPSILON {
        return Err(EnvironmentError::RoundingMode("binary32 rounding is not nearest-even"));
    }

    let a = black_box(1.0 + f64::EPSILON);
    if dfma(a, a, -(1.0 + 2.0 * f64::EPSILON)) != 2f64.powi(-104) {
        return Err(EnvironmentError::FusedMultiplyAdd("binary64"));
    }
    let af = black_box(1.0 + f32::EPSILON);
    if dfma(af, af, -(1.0 + 2.0 * f32::EPSILON)) != 2f32.powi(-46) {
        return Err(EnvironmentError::FusedMultiplyAdd("binary32"));
    }
    Ok(())
}
