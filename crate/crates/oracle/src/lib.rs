//! Exact arithmetic on dyadic rationals (`m · 2^e`, `m` an arbitrary
//! precision integer).
//!
//! Every finite binary32/binary64 value is dyadic, and dyadics are closed
//! under addition, subtraction and multiplication, so sums and products of
//! floats are computed here without any rounding. Division and square root
//! are never evaluated directly; callers cross-multiply or square instead.
//!
//! This crate is test support only and deliberately shares no code with the
//! `twofold` implementation it checks.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact dyadic rational `mantissa · 2^exponent`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic {
            mantissa: BigInt::from(v),
            exponent: 0,
        }
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mantissa: BigInt::from(1),
            exponent: k,
        }
    }

    /// Exact value of a finite `f64`. Returns `None` for NaN and infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mut mantissa = BigInt::from(m);
        if negative {
            mantissa = -mantissa;
        }
        Some(Dyadic { mantissa, exponent: e })
    }

    /// Exact value of a finite `f32` (widening to `f64` is exact).
    pub fn from_f32(x: f32) -> Option<Self> {
        Self::from_f64(x as f64)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn scale2(&self, k: i64) -> Self {
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Closest-ish `f64` for diagnostics; not correctly rounded.
    pub fn to_f64_lossy(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.mantissa >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let e = self.exponent + shift;
        // scale in two steps so the intermediate does not overflow early
        top * 2f64.powi((e / 2) as i32) * 2f64.powi((e - e / 2) as i32)
    }

    /// `(m, e)` with `self ≈ m · 2^e` and `|m|` in `[2^59, 2^60)`.
    fn top_bits(&self) -> (f64, i64) {
        let bits = self.mantissa.bits() as i64;
        let shift = bits - 60;
        let m = if shift >= 0 {
            &self.mantissa >> shift as usize
        } else {
            &self.mantissa << (-shift) as usize
        };
        (m.to_f64().unwrap_or(f64::NAN), self.exponent + shift)
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = a.exponent.min(b.exponent);
        let ma = &a.mantissa << (a.exponent - e) as usize;
        let mb = &b.mantissa << (b.exponent - e) as usize;
        (ma, mb, e)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic {
            mantissa: a + b,
            exponent: e,
        }
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^{} (≈{:e})", self.mantissa, self.exponent, self.to_f64_lossy())
    }
}

/// Sum of exact values.
pub fn sum<'a, I: IntoIterator<Item = &'a Dyadic>>(items: I) -> Dyadic {
    items.into_iter().fold(Dyadic::zero(), |acc, x| &acc + x)
}

/// Approximate `a / b` as an `f64`, valid even when `a` and `b` are far
/// outside the `f64` range. Returns infinity for a zero `b` and nonzero `a`.
pub fn ratio(a: &Dyadic, b: &Dyadic) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    if b.is_zero() {
        return f64::INFINITY * f64::from(a.signum());
    }
    let (ma, ea) = a.top_bits();
    let (mb, eb) = b.top_bits();
    let e = (ea - eb).clamp(-4000, 4000) as i32;
    ma / mb * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
}

/// `|approx - exact| <= bound`, all exact.
pub fn within(approx: &Dyadic, exact: &Dyadic, bound: &Dyadic) -> bool {
    (approx - exact).abs() <= *bound
}
