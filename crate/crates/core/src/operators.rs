//! Operator overloads so twofolds drop into ordinary float code.
//!
//! Twofolds of different widths promote to binary64 first. Dotted
//! operands must match the twofold's width, so float literals infer. Equality and
//! ordering look at value lanes only, so replacing `f64` with
//! `Twofold<f64>` never changes which branch a program takes. Use
//! [`Twofold::bit_eq`] for lane-exact comparison.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::dotted::Dotted;
use crate::twofold::*;

impl<T: Dotted> Neg for Twofold<T> {
    type Output = Twofold<T>;
    #[inline(always)]
    fn neg(self) -> Twofold<T> {
        tneg(self)
    }
}

macro_rules! binops {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $full:ident, $one:ident, $two:ident) => {
        impl<T: Dotted> $tr for Twofold<T> {
            type Output = Twofold<T>;
            #[inline(always)]
            fn $m(self, rhs: Twofold<T>) -> Twofold<T> {
                $full(self, rhs)
            }
        }

        impl<T: Dotted> $tr<T> for Twofold<T> {
            type Output = Twofold<T>;
            #[inline(always)]
            fn $m(self, rhs: T) -> Twofold<T> {
                $one(self, rhs)
            }
        }

        impl $tr<Twofold<f64>> for f64 {
            type Output = Twofold<f64>;
            #[inline(always)]
            fn $m(self, rhs: Twofold<f64>) -> Twofold<f64> {
                $two(self, rhs)
            }
        }

        impl $tr<Twofold<f32>> for f32 {
            type Output = Twofold<f32>;
            #[inline(always)]
            fn $m(self, rhs: Twofold<f32>) -> Twofold<f32> {
                $two(self, rhs)
            }
        }

        // mixed widths promote to binary64
        impl $tr<Twofold<f32>> for Twofold<f64> {
            type Output = Twofold<f64>;
            fn $m(self, rhs: Twofold<f32>) -> Twofold<f64> {
                $full(self, rhs.convert())
            }
        }

        impl $tr<Twofold<f64>> for Twofold<f32> {
            type Output = Twofold<f64>;
            fn $m(self, rhs: Twofold<f64>) -> Twofold<f64> {
                $full(self.convert(), rhs)
            }
        }

        impl<T: Dotted> $atr for Twofold<T> {
            #[inline(always)]
            fn $am(&mut self, rhs: Twofold<T>) {
                *self = $full(*self, rhs);
            }
        }

        impl<T: Dotted> $atr<T> for Twofold<T> {
            #[inline(always)]
            fn $am(&mut self, rhs: T) {
                *self = $one(*self, rhs);
            }
        }
    };
}

binops!(Add, add, AddAssign, add_assign, tadd, tadd1, tadd2);
binops!(Sub, sub, SubAssign, sub_assign, tsub, tsub1, tsub2);
binops!(Mul, mul, MulAssign, mul_assign, tmul, tmul1, tmul2);
binops!(Div, div, DivAssign, div_assign, tdiv, tdiv1, tdiv2);

impl<T: Dotted> PartialEq for Twofold<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Dotted> PartialEq<T> for Twofold<T> {
    fn eq(&self, other: &T) -> bool {
        self.value == *other
    }
}

impl<T: Dotted> PartialOrd for Twofold<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl<T: Dotted> PartialOrd<T> for Twofold<T> {
    fn partial_cmp(&self, other: &T) -> Option<Ordering> {
        self.value.partial_cmp(other)
    }
}

impl<T: Dotted> std::iter::Sum for Twofold<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Twofold::zero(), tadd)
    }
}

impl<T: Dotted> std::iter::Sum<T> for Twofold<T> {
    fn sum<I: Iterator<Item = T>>(iter: I) -> Self {
        iter.fold(Twofold::zero(), tadd1)
    }
}
