//! Twofold floating-point numbers.
//!
//! A [`Twofold`] pairs an ordinary `f32` or `f64` value with an error lane
//! that estimates how far the value has drifted from the exact result. The
//! value lane is computed exactly as plain float code would compute it, so
//! swapping `f64` for `Twofold<f64>` leaves results and control flow
//! unchanged while exposing the accumulated rounding error.
//!
//! ```
//! use twofold::Twofold;
//!
//! let x = Twofold::<f64>::from(0.1) + 0.2;
//! assert_eq!(x.value, 0.1 + 0.2);
//! assert!(x.error != 0.0);
//! ```
//!
//! [`Coupled`] numbers additionally keep the error below half an ulp of the
//! value, giving a double-length representation. The [`reduce`] module has
//! accumulators, [`lab`] runs the accuracy experiments, and [`bench`](mod@bench) the
//! throughput comparisons.

pub mod bench;
pub mod coupled;
pub mod dotted;
pub mod eft;
pub mod format;
pub mod lab;
mod operators;
pub mod reduce;
pub mod shape;
mod twofold;

pub use crate::coupled::{
    fast_add0, fast_renorm, fast_sub0, is_renormalized, pabs, padd, padd0, padd1, padd2, pdiv, pdiv0, pdiv1, pdiv2,
    peq, pge, pgt, pisinf, pisnan, ple, plt, pmul, pmul0, pmul1, pmul2, pne, pneg, psqrt, psqrt0, psub, psub0, psub1,
    psub2, renormalize, tdivp, tmulp, tsqrtp, Coupled,
};
pub use crate::dotted::{Dotted, Width};
pub use crate::eft::{check_environment, fast_two_sum, two_diff, two_prod, two_sum, EftPair, EnvironmentError};
pub use crate::format::{FormatOptions, ParseError};
pub use crate::reduce::{tdot, tsum, tsum_chunked, Accumulator, TwofoldSlice, TwofoldVec};
pub use crate::shape::{error_of, value_of, Shape, Shaped};
pub use crate::twofold::{
    tabs, tadd, tadd0, tadd1, tadd2, tdiv, tdiv0, tdiv1, tdiv2, teq, tge, tgt, tisinf, tisnan, tle, tlt, tmul, tmul0,
    tmul1, tmul2, tne, tneg, tsqrt, tsqrt0, tsub, tsub0, tsub1, tsub2, Twofold,
};
