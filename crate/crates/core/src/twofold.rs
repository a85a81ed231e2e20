//! Twofold numbers: a value lane that evolves bitwise identically to plain
//! floating-point code, and an error lane estimating how far the value has
//! drifted from the exact result.
//!
//! Operation families follow a fixed arity suffix:
//!
//! | suffix | first operand | second operand |
//! |--------|---------------|----------------|
//! | none   | twofold       | twofold        |
//! | `1`    | twofold       | dotted         |
//! | `2`    | dotted        | twofold        |
//! | `0`    | dotted        | dotted         |
//!
//! Every function returns a fresh [`Twofold`]; no magnitude relation between
//! the lanes is maintained (see [`crate::coupled`] for that).

use crate::dotted::Dotted;
use crate::eft::{dadd, ddiv, dfma, dmul, dneg, dsqrt, dsub, two_diff, two_prod, two_sum, EftPair};
use crate::shape::{Shape, Shaped};

/// `value + error`, with `error` estimating `exact - value`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Twofold<T> {
    pub value: T,
    pub error: T,
}

impl<T: Dotted> Twofold<T> {
    #[inline(always)]
    pub const fn new(value: T, error: T) -> Self {
        Twofold { value, error }
    }

    /// A dotted number with a zero error lane.
    #[inline(always)]
    pub fn exact(value: T) -> Self {
        Twofold { value, error: T::ZERO }
    }

    pub fn zero() -> Self {
        Self::exact(T::ZERO)
    }

    pub fn one() -> Self {
        Self::exact(T::ONE)
    }

    /// `fl(value + error)`: the compensated estimate of the exact result.
    #[inline]
    pub fn compensated(self) -> T {
        self.value + self.error
    }

    /// Raw bit patterns of both lanes, zero-extended to `u64`.
    pub fn to_bits(self) -> (u64, u64) {
        (self.value.to_bits_u64(), self.error.to_bits_u64())
    }

    pub fn from_bits(value: u64, error: u64) -> Self {
        Twofold::new(T::from_bits_u64(value), T::from_bits_u64(error))
    }

    /// Bitwise identity of both lanes.
    pub fn bit_eq(&self, other: &Self) -> bool {
        self.to_bits() == other.to_bits()
    }

    /// Round a binary64 number into this width: the value lane is the
    /// nearest `T`, the error lane the rounded remainder.
    pub fn from_f64(x: f64) -> Self {
        let value = T::from_f64(x);
        let error = T::from_f64(x - value.to_f64());
        Twofold::new(value, error)
    }

    /// Change width. Widening is exact on both lanes; narrowing rounds the
    /// value and folds its rounding residual into the error lane.
    pub fn convert<U: Dotted>(self) -> Twofold<U> {
        let v = self.value.to_f64();
        let value = U::from_f64(v);
        let residual = v - value.to_f64();
        let error = if U::PRECISION >= T::PRECISION {
            U::from_f64(self.error.to_f64())
        } else {
            U::from_f64(residual + self.error.to_f64())
        };
        Twofold::new(value, error)
    }
}

impl<T: Dotted> From<T> for Twofold<T> {
    fn from(x: T) -> Self {
        Twofold::exact(x)
    }
}

impl From<f32> for Twofold<f64> {
    fn from(x: f32) -> Self {
        Twofold::exact(f64::from(x))
    }
}

impl From<Twofold<f32>> for Twofold<f64> {
    fn from(x: Twofold<f32>) -> Self {
        x.convert()
    }
}

impl From<i32> for Twofold<f64> {
    fn from(x: i32) -> Self {
        Twofold::exact(f64::from(x))
    }
}

impl From<i32> for Twofold<f32> {
    fn from(x: i32) -> Self {
        Twofold::from_f64(f64::from(x))
    }
}

impl From<f64> for Twofold<f32> {
    fn from(x: f64) -> Self {
        Twofold::from_f64(x)
    }
}

impl<T: Dotted> Shaped<T> for Twofold<T> {
    const SHAPE: Shape = Shape::Twofold;
    #[inline(always)]
    fn value_of(&self) -> T {
        self.value
    }
    #[inline(always)]
    fn error_of(&self) -> T {
        self.error
    }
}

#[inline(always)]
fn tf<T>(p: EftPair<T>) -> Twofold<T> {
    Twofold {
        value: p.hi,
        error: p.lo,
    }
}

// ---- add -----------------------------------------------------------------

/// Twofold sum. Eight additions: a two-sum of the value lanes plus two for
/// the error lanes.
#[inline(always)]
pub fn tadd<T: Dotted>(x: Twofold<T>, y: Twofold<T>) -> Twofold<T> {
    let s = two_sum(x.value, y.value);
    Twofold::new(s.hi, dadd(s.lo, dadd(x.error, y.error)))
}

#[inline(always)]
pub fn tadd1<T: Dotted>(x: Twofold<T>, y: T) -> Twofold<T> {
    let s = two_sum(x.value, y);
    Twofold::new(s.hi, dadd(s.lo, x.error))
}

#[inline(always)]
pub fn tadd2<T: Dotted>(x: T, y: Twofold<T>) -> Twofold<T> {
    let s = two_sum(x, y.value);
    Twofold::new(s.hi, dadd(s.lo, y.error))
}

/// Exact sum of two dotted numbers.
#[inline(always)]
pub fn tadd0<T: Dotted>(x: T, y: T) -> Twofold<T> {
    tf(two_sum(x, y))
}

// ---- sub -----------------------------------------------------------------

#[inline(always)]
pub fn tsub<T: Dotted>(x: Twofold<T>, y: Twofold<T>) -> Twofold<T> {
    let d = two_diff(x.value, y.value);
    Twofold::new(d.hi, dadd(d.lo, dsub(x.error, y.error)))
}

#[inline(always)]
pub fn tsub1<T: Dotted>(x: Twofold<T>, y: T) -> Twofold<T> {
    let d = two_diff(x.value, y);
    Twofold::new(d.hi, dadd(d.lo, x.error))
}

#[inline(always)]
pub fn tsub2<T: Dotted>(x: T, y: Twofold<T>) -> Twofold<T> {
    let d = two_diff(x, y.value);
    Twofold::new(d.hi, dsub(d.lo, y.error))
}

/// Exact difference of two dotted numbers.
#[inline(always)]
pub fn tsub0<T: Dotted>(x: T, y: T) -> Twofold<T> {
    tf(two_diff(x, y))
}

// ---- mul -----------------------------------------------------------------

/// Twofold product. The second-order `x.error * y.error` term is dropped.
#[inline(always)]
pub fn tmul<T: Dotted>(x: Twofold<T>, y: Twofold<T>) -> Twofold<T> {
    let p = two_prod(x.value, y.value);
    let cross = dadd(dmul(x.value, y.error), dmul(x.error, y.value));
    Twofold::new(p.hi, dadd(p.lo, cross))
}

#[inline(always)]
pub fn tmul1<T: Dotted>(x: Twofold<T>, y: T) -> Twofold<T> {
    let p = two_prod(x.value, y);
    Twofold::new(p.hi, dadd(p.lo, dmul(x.error, y)))
}

#[inline(always)]
pub fn tmul2<T: Dotted>(x: T, y: Twofold<T>) -> Twofold<T> {
    let p = two_prod(x, y.value);
    Twofold::new(p.hi, dadd(p.lo, dmul(x, y.error)))
}

/// Exact product of two dotted numbers (outside the underflow range).
#[inline(always)]
pub fn tmul0<T: Dotted>(x: T, y: T) -> Twofold<T> {
    tf(two_prod(x, y))
}

// ---- div -----------------------------------------------------------------

/// Twofold quotient: one FMA residual plus first-order propagation of both
/// error lanes.
#[inline(always)]
pub fn tdiv<T: Dotted>(x: Twofold<T>, y: Twofold<T>) -> Twofold<T> {
    let q = ddiv(x.value, y.value);
    let r = dfma(dneg(q), y.value, x.value);
    let num = dsub(dadd(r, x.error), dmul(q, y.error));
    Twofold::new(q, ddiv(num, y.value))
}

#[inline(always)]
pub fn tdiv1<T: Dotted>(x: Twofold<T>, y: T) -> Twofold<T> {
    let q = ddiv(x.value, y);
    let r = dfma(dneg(q), y, x.value);
    Twofold::new(q, ddiv(dadd(r, x.error), y))
}

#[inline(always)]
pub fn tdiv2<T: Dotted>(x: T, y: Twofold<T>) -> Twofold<T> {
    let q = ddiv(x, y.value);
    let r = dfma(dneg(q), y.value, x);
    Twofold::new(q, ddiv(dsub(r, dmul(q, y.error)), y.value))
}

/// Dotted quotient with its correctly rounded remainder: `value` is
/// `fl(x / y)` and `error` is `fl(x / y - value)`.
#[inline(always)]
pub fn tdiv0<T: Dotted>(x: T, y: T) -> Twofold<T> {
    let q = ddiv(x, y);
    let r = dfma(dneg(q), y, x);
    Twofold::new(q, ddiv(r, y))
}

// ---- sqrt ----------------------------------------------------------------

/// Twofold square root.
///
/// The value lane is always `sqrt(x.value)`. If the value lane is
/// non-negative but `x.value + x.error` is negative, the error lane becomes
/// NaN: the exact argument is outside the domain even though the rounded
/// one is not.
#[inline]
pub fn tsqrt<T: Dotted>(x: Twofold<T>) -> Twofold<T> {
    let root = dsqrt(x.value);
    if x.value < T::ZERO {
        return Twofold::new(root, T::NAN);
    }
    let s = dadd(x.value, x.error);
    let error = if s < T::ZERO {
        T::NAN
    } else if root == T::ZERO && x.error == T::ZERO {
        T::ZERO
    } else {
        let r = dadd(dfma(dneg(root), root, x.value), x.error);
        ddiv(r, dadd(root, dsqrt(s)))
    };
    Twofold::new(root, error)
}

#[inline]
pub fn tsqrt0<T: Dotted>(x: T) -> Twofold<T> {
    tsqrt(Twofold::exact(x))
}

// ---- service -------------------------------------------------------------

#[inline(always)]
pub fn tneg<T: Dotted>(x: Twofold<T>) -> Twofold<T> {
    Twofold::new(dneg(x.value), dneg(x.error))
}

/// `tneg(x)` when the value lane is negative, `x` otherwise.
#[inline(always)]
pub fn tabs<T: Dotted>(x: Twofold<T>) -> Twofold<T> {
    if x.value < T::ZERO {
        tneg(x)
    } else {
        x
    }
}

pub fn tisnan<T: Dotted>(x: Twofold<T>) -> bool {
    x.value.is_nan() || x.error.is_nan()
}

pub fn tisinf<T: Dotted>(x: Twofold<T>) -> bool {
    x.value.is_infinite() || x.error.is_infinite()
}

// ---- comparison ----------------------------------------------------------
//
// Twofolds compare by value lanes only, exactly like the plain program
// would. A disagreement between value lanes and `value + error` is not
// reported.

pub fn tlt<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    x.value_of() < y.value_of()
}

pub fn tle<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    x.value_of() <= y.value_of()
}

pub fn tgt<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    x.value_of() > y.value_of()
}

pub fn tge<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    x.value_of() >= y.value_of()
}

pub fn teq<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    x.value_of() == y.value_of()
}

/// IEEE `!=` of the value lanes; true when either value lane is NaN.
pub fn tne<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    x.value_of() != y.value_of()
}
