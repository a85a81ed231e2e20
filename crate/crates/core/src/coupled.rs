//! Coupled (renormalized) twofolds and the `p` family of operations.
//!
//! A coupled number keeps `|error| <= ulp(value) / 2`, so the mantissas of
//! the two lanes do not overlap and `value + error` carries roughly twice
//! the working precision. The `p` operations assume their shaped inputs
//! satisfy this and renormalize their outputs; debug builds assert the
//! output invariant, release builds check nothing.
//!
//! Arithmetic operators on coupled numbers yield plain twofolds. Use the
//! `p` functions to stay coupled.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::dotted::Dotted;
use crate::eft::{dadd, ddiv, dfma, dmul, dneg, dsqrt, fast_two_sum, EftPair};
use crate::shape::{Shape, Shaped};
use crate::twofold::*;

/// A twofold whose error lane is at most half an ulp of its value lane.
#[derive(Clone, Copy, Debug, Default)]
pub struct Coupled<T> {
    value: T,
    error: T,
}

impl<T: Dotted> Coupled<T> {
    /// Wrap a pair without checking the renormalization invariant.
    #[inline(always)]
    pub const fn new_unchecked(value: T, error: T) -> Self {
        Coupled { value, error }
    }

    pub fn exact(value: T) -> Self {
        Coupled { value, error: T::ZERO }
    }

    /// Round a binary64 number into this width (already renormalized).
    pub fn from_f64(x: f64) -> Self {
        renormalize(Twofold::from_f64(x))
    }

    #[inline(always)]
    pub fn value(&self) -> T {
        self.value
    }

    #[inline(always)]
    pub fn error(&self) -> T {
        self.error
    }

    #[inline(always)]
    pub fn as_twofold(self) -> Twofold<T> {
        Twofold::new(self.value, self.error)
    }

    pub fn bit_eq(&self, other: &Self) -> bool {
        self.as_twofold().bit_eq(&other.as_twofold())
    }
}

/// `|error| <= ulp(value) / 2`. Non-finite pairs are reported as satisfying
/// it: the invariant only constrains finite numbers.
pub fn is_renormalized<T: Dotted>(value: T, error: T) -> bool {
    if !value.is_finite() || !error.is_finite() {
        return true;
    }
    let half_ulp = value.ulp() * T::from_f64(0.5);
    if half_ulp == T::ZERO {
        // half of the smallest subnormal
        return error == T::ZERO;
    }
    error.abs() <= half_ulp
}

#[inline(always)]
fn checked<T: Dotted>(c: Coupled<T>) -> Coupled<T> {
    debug_assert!(
        is_renormalized(c.value, c.error),
        "coupled invariant violated: {:?}[{:?}]",
        c.value,
        c.error
    );
    c
}

#[inline(always)]
fn from_pair<T: Dotted>(p: EftPair<T>) -> Coupled<T> {
    Coupled::new_unchecked(p.hi, p.lo)
}

impl<T: Dotted> From<Coupled<T>> for Twofold<T> {
    fn from(c: Coupled<T>) -> Self {
        c.as_twofold()
    }
}

impl<T: Dotted> From<Twofold<T>> for Coupled<T> {
    fn from(t: Twofold<T>) -> Self {
        renormalize(t)
    }
}

impl<T: Dotted> From<T> for Coupled<T> {
    fn from(x: T) -> Self {
        Coupled::exact(x)
    }
}

impl<T: Dotted> Shaped<T> for Coupled<T> {
    const SHAPE: Shape = Shape::Coupled;
    #[inline(always)]
    fn value_of(&self) -> T {
        self.value
    }
    #[inline(always)]
    fn error_of(&self) -> T {
        self.error
    }
}

// ---- renormalization -----------------------------------------------------

/// Renormalize an arbitrary twofold. `value + error` is preserved exactly
/// (barring overflow).
#[inline(always)]
pub fn renormalize<T: Dotted>(x: Twofold<T>) -> Coupled<T> {
    let p = if x.value.abs() >= x.error.abs() {
        fast_two_sum(x.value, x.error)
    } else {
        fast_two_sum(x.error, x.value)
    };
    checked(from_pair(p))
}

/// Renormalize a twofold whose error lane does not exceed its value lane in
/// magnitude. The precondition is not checked.
#[inline(always)]
pub fn fast_renorm<T: Dotted>(x: Twofold<T>) -> Coupled<T> {
    checked(from_pair(fast_two_sum(x.value, x.error)))
}

/// Coupled sum of dotted `x` and `y`, requiring `|x| >= |y|`.
#[inline(always)]
pub fn fast_add0<T: Dotted>(x: T, y: T) -> Coupled<T> {
    checked(from_pair(fast_two_sum(x, y)))
}

/// Coupled difference of dotted `x` and `y`, requiring `|x| >= |y|`.
#[inline(always)]
pub fn fast_sub0<T: Dotted>(x: T, y: T) -> Coupled<T> {
    fast_add0(x, dneg(y))
}

// ---- arithmetic ----------------------------------------------------------

macro_rules! coupled_family {
    ($full:ident, $one:ident, $two:ident; $tfull:ident, $tone:ident, $ttwo:ident) => {
        #[inline(always)]
        pub fn $full<T: Dotted>(x: Coupled<T>, y: Coupled<T>) -> Coupled<T> {
            renormalize($tfull(x.as_twofold(), y.as_twofold()))
        }

        #[inline(always)]
        pub fn $one<T: Dotted>(x: Coupled<T>, y: T) -> Coupled<T> {
            renormalize($tone(x.as_twofold(), y))
        }

        #[inline(always)]
        pub fn $two<T: Dotted>(x: T, y: Coupled<T>) -> Coupled<T> {
            renormalize($ttwo(x, y.as_twofold()))
        }
    };
}

coupled_family!(padd, padd1, padd2; tadd, tadd1, tadd2);
coupled_family!(psub, psub1, psub2; tsub, tsub1, tsub2);
coupled_family!(pmul, pmul1, pmul2; tmul, tmul1, tmul2);
coupled_family!(pdiv, pdiv1, pdiv2; tdiv, tdiv1, tdiv2);

/// Same result as [`tadd0`]: a two-sum is already renormalized.
#[inline(always)]
pub fn padd0<T: Dotted>(x: T, y: T) -> Coupled<T> {
    let t = tadd0(x, y);
    checked(Coupled::new_unchecked(t.value, t.error))
}

#[inline(always)]
pub fn psub0<T: Dotted>(x: T, y: T) -> Coupled<T> {
    let t = tsub0(x, y);
    checked(Coupled::new_unchecked(t.value, t.error))
}

/// Same result as [`tmul0`]: a two-product is already renormalized.
#[inline(always)]
pub fn pmul0<T: Dotted>(x: T, y: T) -> Coupled<T> {
    let t = tmul0(x, y);
    checked(Coupled::new_unchecked(t.value, t.error))
}

/// Correctly rounded quotient `x / y` as a coupled pair.
#[inline(always)]
pub fn pdiv0<T: Dotted>(x: T, y: T) -> Coupled<T> {
    renormalize(tdiv0(x, y))
}

#[inline(always)]
pub fn psqrt<T: Dotted>(x: Coupled<T>) -> Coupled<T> {
    renormalize(tsqrt(x.as_twofold()))
}

#[inline(always)]
pub fn psqrt0<T: Dotted>(x: T) -> Coupled<T> {
    renormalize(tsqrt0(x))
}

// ---- twofold results from coupled inputs ---------------------------------

/// Twofold product of coupled numbers; one FMA absorbs a cross term.
#[inline(always)]
pub fn tmulp<T: Dotted>(x: Coupled<T>, y: Coupled<T>) -> Twofold<T> {
    let z = dmul(x.value, y.value);
    let r = dfma(x.value, y.value, dneg(z));
    let cross = dfma(x.value, y.error, dmul(x.error, y.value));
    Twofold::new(z, dadd(r, cross))
}

/// Twofold quotient of coupled numbers; the input error lanes are folded
/// with one FMA.
#[inline(always)]
pub fn tdivp<T: Dotted>(x: Coupled<T>, y: Coupled<T>) -> Twofold<T> {
    let q = ddiv(x.value, y.value);
    let r = dfma(dneg(q), y.value, x.value);
    let e = dfma(dneg(q), y.error, x.error);
    Twofold::new(q, ddiv(dadd(r, e), y.value))
}

/// Twofold square root of a coupled number. The small error lane lets the
/// denominator use `2·sqrt(value)` instead of a second square root.
#[inline(always)]
pub fn tsqrtp<T: Dotted>(x: Coupled<T>) -> Twofold<T> {
    let root = dsqrt(x.value);
    if x.value < T::ZERO {
        return Twofold::new(root, T::NAN);
    }
    if root == T::ZERO {
        return Twofold::new(root, T::ZERO);
    }
    let r = dadd(dfma(dneg(root), root, x.value), x.error);
    Twofold::new(root, ddiv(r, dadd(root, root)))
}

// ---- service -------------------------------------------------------------

pub fn pneg<T: Dotted>(x: Coupled<T>) -> Coupled<T> {
    Coupled::new_unchecked(dneg(x.value), dneg(x.error))
}

pub fn pabs<T: Dotted>(x: Coupled<T>) -> Coupled<T> {
    if x.value < T::ZERO {
        pneg(x)
    } else {
        x
    }
}

pub fn pisnan<T: Dotted>(x: Coupled<T>) -> bool {
    x.value.is_nan() || x.error.is_nan()
}

pub fn pisinf<T: Dotted>(x: Coupled<T>) -> bool {
    x.value.is_infinite() || x.error.is_infinite()
}

// ---- comparison ----------------------------------------------------------
//
// Coupled numbers order lexicographically: value lanes first, error lanes
// when the values tie. A NaN in whichever lane decides the comparison makes
// every predicate false, including `pne`.

fn lex_cmp<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: &X, y: &Y) -> Option<Ordering> {
    match x.value_of().partial_cmp(&y.value_of())? {
        Ordering::Equal => x.error_of().partial_cmp(&y.error_of()),
        ord => Some(ord),
    }
}

pub fn plt<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    matches!(lex_cmp(&x, &y), Some(Ordering::Less))
}

pub fn ple<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    matches!(lex_cmp(&x, &y), Some(Ordering::Less | Ordering::Equal))
}

pub fn pgt<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    matches!(lex_cmp(&x, &y), Some(Ordering::Greater))
}

pub fn pge<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    matches!(lex_cmp(&x, &y), Some(Ordering::Greater | Ordering::Equal))
}

pub fn peq<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    matches!(lex_cmp(&x, &y), Some(Ordering::Equal))
}

pub fn pne<T: Dotted, X: Shaped<T>, Y: Shaped<T>>(x: X, y: Y) -> bool {
    matches!(lex_cmp(&x, &y), Some(Ordering::Less | Ordering::Greater))
}

// ---- operators: coupled operands produce twofold results -----------------

impl<T: Dotted> Neg for Coupled<T> {
    type Output = Coupled<T>;
    fn neg(self) -> Coupled<T> {
        pneg(self)
    }
}

macro_rules! coupled_ops {
    ($tr:ident, $m:ident, $full:ident, $one:ident) => {
        impl<T: Dotted> $tr for Coupled<T> {
            type Output = Twofold<T>;
            fn $m(self, rhs: Coupled<T>) -> Twofold<T> {
                $full(self.as_twofold(), rhs.as_twofold())
            }
        }

        impl<T: Dotted> $tr<Twofold<T>> for Coupled<T> {
            type Output = Twofold<T>;
            fn $m(self, rhs: Twofold<T>) -> Twofold<T> {
                $full(self.as_twofold(), rhs)
            }
        }

        impl<T: Dotted> $tr<Coupled<T>> for Twofold<T> {
            type Output = Twofold<T>;
            fn $m(self, rhs: Coupled<T>) -> Twofold<T> {
                $full(self, rhs.as_twofold())
            }
        }

        impl<T: Dotted> $tr<T> for Coupled<T> {
            type Output = Twofold<T>;
            fn $m(self, rhs: T) -> Twofold<T> {
                $one(self.as_twofold(), rhs)
            }
        }
    };
}

coupled_ops!(Add, add, tadd, tadd1);
coupled_ops!(Sub, sub, tsub, tsub1);
coupled_ops!(Mul, mul, tmul, tmul1);
coupled_ops!(Div, div, tdiv, tdiv1);

impl<T: Dotted> PartialEq for Coupled<T> {
    /// Operators compare coupled numbers as twofolds (value lanes only);
    /// [`peq`] is the lexicographic test.
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Dotted> PartialOrd for Coupled<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: f64, e: f64) -> Coupled<f64> {
        Coupled::new_unchecked(v, e)
    }

    #[test]
    fn renormalize_cases() {
        let r = renormalize(Twofold::new(1.0f64, 2f64.powi(-53)));
        assert!(r.bit_eq(&c(1.0, 2f64.powi(-53))));
        let r = renormalize(Twofold::new(1e-20f64, 1.0));
        assert_eq!(r.value(), 1.0);
        assert_eq!(r.error(), 1e-20);
        let x = Twofold::new(3.0f64, 0.75);
        assert!(renormalize(renormalize(x).as_twofold()).bit_eq(&renormalize(x)));
        assert!(fast_renorm(x).bit_eq(&renormalize(x)));
    }

    #[test]
    fn fast_add_sub() {
        assert!(fast_add0(2.0f64, 1.0).bit_eq(&c(3.0, 0.0)));
        assert!(fast_add0(1.0f64, 2f64.powi(-80)).bit_eq(&c(1.0, 2f64.powi(-80))));
        assert!(fast_sub0(5.0f64, 0.1).bit_eq(&fast_add0(5.0, -0.1)));
    }

    #[test]
    fn dotted_variants_match_twofold() {
        for (a, b) in [(1.0f64, 1e-30), (-0.0, -0.0), (0.1, 0.2), (1e300, -1e284)] {
            let t = tadd0(a, b);
            let p = padd0(a, b);
            assert_eq!(t.to_bits(), p.as_twofold().to_bits());
            assert_eq!(tmul0(a, b).to_bits(), pmul0(a, b).as_twofold().to_bits());
        }
    }

    #[test]
    fn identities() {
        let x = c(1.5, 2f64.powi(-60));
        assert!(pmul(x, Coupled::exact(1.0)).bit_eq(&x));
        assert!(padd(x, Coupled::exact(0.0)).bit_eq(&x));
        assert!(tmulp(c(2.0, 0.0), c(3.0, 0.0)).bit_eq(&Twofold::new(6.0, 0.0)));
        assert!(tsqrtp(c(4.0, 0.0)).bit_eq(&Twofold::new(2.0, 0.0)));
        assert!(tsqrtp(c(0.0, 0.0)).bit_eq(&Twofold::new(0.0, 0.0)));
        assert!(tdivp(c(1.0, 0.0), c(4.0, 0.0)).bit_eq(&Twofold::new(0.25, 0.0)));
        let n = tsqrtp(c(-1.0, 0.0));
        assert!(n.value.is_nan() && n.error.is_nan());
    }

    #[test]
    fn outputs_are_renormalized() {
        let third = pdiv0(1.0f64, 3.0);
        assert!(is_renormalized(third.value(), third.error()));
        let s = psqrt0(2.0f64);
        assert!(is_renormalized(s.value(), s.error()));
        let y = padd(third, s);
        assert!(is_renormalized(y.value(), y.error()));
        assert!(!is_renormalized(1.0f64, 2f64.powi(-52)));
        assert!(is_renormalized(1.0f64, 2f64.powi(-53)));
    }

    #[test]
    fn comparisons() {
        let tiny = 2f64.powi(-55);
        assert!(peq(c(1.0, tiny), c(1.0, tiny)));
        assert!(plt(c(1.0, -(2f64.powi(-60))), c(1.0, 2f64.powi(-60))));
        assert!(pne(c(1.0, 0.0), c(1.0, 2f64.powi(-60))));
        assert!(!tne(c(1.0, 0.0), c(1.0, 2f64.powi(-60))));
        assert!(pgt(c(2.0, -1.0), c(1.0, 1.0)));
        assert!(pge(c(1.0, 0.0), c(1.0, 0.0)) && ple(c(1.0, 0.0), c(1.0, 0.0)));
        let nan = c(f64::NAN, 0.0);
        assert!(!plt(nan, c(1.0, 0.0)) && !pne(nan, c(1.0, 0.0)) && !peq(nan, nan));
        // error lane NaN only matters when values tie
        assert!(plt(c(1.0, f64::NAN), c(2.0, 0.0)));
        assert!(!plt(c(1.0, f64::NAN), c(1.0, 0.0)));
    }

    #[test]
    fn operators_yield_twofolds() {
        let x = c(1.0, 2f64.powi(-60));
        let y = c(3.0, 0.0);
        let z: Twofold<f64> = x + y;
        assert!(z.bit_eq(&tadd(x.as_twofold(), y.as_twofold())));
        let w: Twofold<f64> = x * 2.0;
        assert!(w.bit_eq(&tmul1(x.as_twofold(), 2.0)));
        assert!(pabs(-x).bit_eq(&x));
        assert!(pisnan(c(0.0, f64::NAN)) && pisinf(c(f64::INFINITY, 0.0)));
    }
}
