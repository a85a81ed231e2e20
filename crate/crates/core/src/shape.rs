//! Shape-generic access: the same code reads value and error lanes whether
//! a number is dotted, twofold or coupled.

use crate::dotted::Dotted;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Dotted,
    Twofold,
    Coupled,
}

/// Anything with a value lane and an error lane over the dotted type `T`.
pub trait Shaped<T: Dotted>: Copy {
    const SHAPE: Shape;
    fn value_of(&self) -> T;
    /// Zero for dotted numbers.
    fn error_of(&self) -> T;
}

macro_rules! dotted_shape {
    ($($t:ty),*) => {$(
        impl Shaped<$t> for $t {
            const SHAPE: Shape = Shape::Dotted;
            #[inline(always)]
            fn value_of(&self) -> $t {
                *self
            }
            #[inline(always)]
            fn error_of(&self) -> $t {
                0.0
            }
        }
    )*};
}
dotted_shape!(f32, f64);

/// Free-function form of [`Shaped::value_of`].
pub fn value_of<T: Dotted, X: Shaped<T>>(x: X) -> T {
    x.value_of()
}

/// Free-function form of [`Shaped::error_of`].
pub fn error_of<T: Dotted, X: Shaped<T>>(x: X) -> T {
    x.error_of()
}
