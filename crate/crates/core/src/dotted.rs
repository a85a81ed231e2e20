//! The scalar ("dotted") types a twofold is built from: IEEE-754 binary32
//! and binary64.

use std::fmt::{Debug, Display, LowerExp};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

mod sealed {
    pub trait Sealed {}
    impl Sealed for f32 {}
    impl Sealed for f64 {}
}

/// Storage width of a dotted scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Width {
    W32,
    W64,
}

impl Width {
    pub fn bits(self) -> u32 {
        match self {
            Width::W32 => 32,
            Width::W64 => 64,
        }
    }
}

/// An ordinary binary floating-point scalar, `f32` or `f64`.
///
/// The trait is sealed. Bit-level helpers work on `u64` so code generic
/// over the width can share one implementation.
pub trait Dotted:
    sealed::Sealed
    + Copy
    + Default
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const WIDTH: Width;
    const ZERO: Self;
    const ONE: Self;
    const NAN: Self;
    const INFINITY: Self;
    /// Significand precision including the implicit bit (24 or 53).
    const PRECISION: u32;
    /// Stored fraction bits (23 or 52).
    const FRACTION_BITS: u32;
    const EXPONENT_BIAS: i32;
    /// Half an ulp of one: 2⁻²⁴ or 2⁻⁵³.
    const UNIT_ROUNDOFF: Self;

    /// `self * a + b` with a single rounding.
    fn fma(self, a: Self, b: Self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn is_nan(self) -> bool;
    fn is_infinite(self) -> bool;
    fn is_finite(self) -> bool;
    fn is_sign_negative(self) -> bool;
    fn to_bits_u64(self) -> u64;
    fn from_bits_u64(bits: u64) -> Self;
    /// Exact widening.
    fn to_f64(self) -> f64;
    /// Round-to-nearest narrowing (identity for `f64`).
    fn from_f64(x: f64) -> Self;
    /// Exact conversion from a small integer (|v| ≤ 2^PRECISION).
    fn from_i32(v: i32) -> Self;

    fn exponent_mask() -> u64 {
        (1u64 << (u64::from(Self::WIDTH.bits()) - 1 - u64::from(Self::FRACTION_BITS))) - 1
    }

    fn fraction_mask() -> u64 {
        (1u64 << Self::FRACTION_BITS) - 1
    }

    fn sign_bit() -> u64 {
        1u64 << (Self::WIDTH.bits() - 1)
    }

    /// Unit in the last place: spacing of floats at `|self|` (away from
    /// zero). Zero and subnormals report the smallest subnormal; NaN and
    /// infinities report NaN.
    fn ulp(self) -> Self {
        if !self.is_finite() {
            return Self::NAN;
        }
        let bits = self.to_bits_u64();
        let biased = (bits >> Self::FRACTION_BITS) & Self::exponent_mask();
        if biased == 0 {
            return Self::from_bits_u64(1);
        }
        if biased > u64::from(Self::FRACTION_BITS) {
            Self::from_bits_u64((biased - u64::from(Self::FRACTION_BITS)) << Self::FRACTION_BITS)
        } else {
            Self::from_bits_u64(1u64 << (biased - 1))
        }
    }
}

macro_rules! impl_dotted {
    ($t:ty, $bits:ty, $width:expr, $prec:expr, $bias:expr, $u:expr) => {
        impl Dotted for $t {
            const WIDTH: Width = $width;
            const ZERO: Self = 0.0;
            const ONE: Self = 1.0;
            const NAN: Self = <$t>::NAN;
            const INFINITY: Self = <$t>::INFINITY;
            const PRECISION: u32 = $prec;
            const FRACTION_BITS: u32 = $prec - 1;
            const EXPONENT_BIAS: i32 = $bias;
            const UNIT_ROUNDOFF: Self = $u;

            #[inline(always)]
            fn fma(self, a: Self, b: Self) -> Self {
                self.mul_add(a, b)
            }
            #[inline(always)]
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            #[inline(always)]
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
            #[inline(always)]
            fn is_nan(self) -> bool {
                <$t>::is_nan(self)
            }
            #[inline(always)]
            fn is_infinite(self) -> bool {
                <$t>::is_infinite(self)
            }
            #[inline(always)]
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
            #[inline(always)]
            fn is_sign_negative(self) -> bool {
                <$t>::is_sign_negative(self)
            }
            #[inline(always)]
            fn to_bits_u64(self) -> u64 {
                u64::from(self.to_bits())
            }
            #[inline(always)]
            fn from_bits_u64(bits: u64) -> Self {
                <$t>::from_bits(bits as $bits)
            }
            #[inline(always)]
            fn to_f64(self) -> f64 {
                self as f64
            }
            #[inline(always)]
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            #[inline(always)]
            fn from_i32(v: i32) -> Self {
                v as $t
            }
        }
    };
}

impl_dotted!(f32, u32, Width::W32, 24, 127, 5.960_464_5e-8);
impl_dotted!(f64, u64, Width::W64, 53, 1023, 1.110_223_024_625_156_5e-16);
