//! Strict twofold accumulation and batched elementwise operations.
//!
//! Adding a dotted term to a twofold accumulator is exact up to the
//! rounding of the error lane itself, which gives summation and dot
//! products close to double-length accuracy. Value lanes still equal the
//! plain sequential loop bit for bit.
//!
//! The plain dot-product loop the value lane reproduces is *unfused*:
//! `s = s + x[i] * y[i]`, two roundings per term.

use crate::dotted::Dotted;
use crate::eft::{dadd, two_prod, two_sum};
use crate::twofold::{self, Twofold};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("chunk count must be at least 1")]
    NoChunks,
}

fn same_len(left: usize, right: usize) -> Result<(), ReduceError> {
    if left == right {
        Ok(())
    } else {
        Err(ReduceError::LengthMismatch { left, right })
    }
}

/// A running twofold sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator<T> {
    sum: Twofold<T>,
}

impl<T: Dotted> Accumulator<T> {
    pub fn new() -> Self {
        Accumulator { sum: Twofold::zero() }
    }

    /// Add one dotted term.
    #[inline(always)]
    pub fn add(&mut self, x: T) {
        let s = two_sum(self.sum.value, x);
        self.sum = Twofold::new(s.hi, dadd(self.sum.error, s.lo));
    }

    /// Add the exact product `x * y`: the high part goes through the value
    /// lane, the low part straight into the error lane.
    #[inline(always)]
    pub fn add_product(&mut self, x: T, y: T) {
        let p = two_prod(x, y);
        let s = two_sum(self.sum.value, p.hi);
        self.sum = Twofold::new(s.hi, dadd(self.sum.error, dadd(s.lo, p.lo)));
    }

    /// Add a twofold term.
    #[inline(always)]
    pub fn add_twofold(&mut self, x: Twofold<T>) {
        self.sum = twofold::tadd(self.sum, x);
    }

    pub fn get(&self) -> Twofold<T> {
        self.sum
    }
}

/// Sequential left-to-right twofold sum of dotted values.
pub fn tsum<T: Dotted>(xs: &[T]) -> Twofold<T> {
    let mut acc = Accumulator::new();
    for &x in xs {
        acc.add(x);
    }
    acc.get()
}

/// Sequential sum of twofold terms stored as separate value and error
/// arrays.
pub fn tsum_twofold<T: Dotted>(values: &[T], errors: &[T]) -> Result<Twofold<T>, ReduceError> {
    same_len(values.len(), errors.len())?;
    let mut acc = Accumulator::new();
    for (&v, &e) in values.iter().zip(errors) {
        acc.add_twofold(Twofold::new(v, e));
    }
    Ok(acc.get())
}

/// Twofold dot product. The value lane equals the unfused plain loop.
pub fn tdot<T: Dotted>(xs: &[T], ys: &[T]) -> Result<Twofold<T>, ReduceError> {
    same_len(xs.len(), ys.len())?;
    let mut acc = Accumulator::new();
    for (&x, &y) in xs.iter().zip(ys) {
        acc.add_product(x, y);
    }
    Ok(acc.get())
}

/// Plain sequential sum, the reference loop for [`tsum`]'s value lane.
pub fn plain_sum<T: Dotted>(xs: &[T]) -> T {
    let mut s = T::ZERO;
    for &x in xs {
        s = s + x;
    }
    s
}

/// Plain unfused dot product, the reference loop for [`tdot`]'s value lane.
pub fn plain_dot<T: Dotted>(xs: &[T], ys: &[T]) -> Result<T, ReduceError> {
    same_len(xs.len(), ys.len())?;
    let mut s = T::ZERO;
    for (&x, &y) in xs.iter().zip(ys) {
        s = s + x * y;
    }
    Ok(s)
}

/// Sum in `chunks` contiguous pieces on separate threads, then combine the
/// partial twofolds left to right.
///
/// This changes rounding relative to [`tsum`]: the value lane no longer
/// matches the sequential plain loop. Results are reproducible for a fixed
/// chunk count regardless of scheduling. Chunk `i` covers
/// `[i*len/chunks, (i+1)*len/chunks)`.
pub fn tsum_chunked<T: Dotted>(xs: &[T], chunks: usize) -> Result<Twofold<T>, ReduceError> {
    if chunks == 0 {
        return Err(ReduceError::NoChunks);
    }
    let n = xs.len();
    let bounds: Vec<(usize, usize)> = (0..chunks).map(|i| (i * n / chunks, (i + 1) * n / chunks)).collect();
    let partials: Vec<Twofold<T>> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(lo, hi)| scope.spawn(move || tsum(&xs[lo..hi])))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("summation thread panicked"))
            .collect()
    });
    Ok(partials.into_iter().fold(Twofold::zero(), twofold::tadd))
}

// ---- structure-of-arrays batches -----------------------------------------

/// Borrowed twofold array in structure-of-arrays layout.
#[derive(Clone, Copy, Debug)]
pub struct TwofoldSlice<'a, T> {
    pub values: &'a [T],
    pub errors: &'a [T],
}

impl<'a, T: Dotted> TwofoldSlice<'a, T> {
    pub fn new(values: &'a [T], errors: &'a [T]) -> Result<Self, ReduceError> {
        same_len(values.len(), errors.len())?;
        Ok(TwofoldSlice { values, errors })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Twofold<T> {
        Twofold::new(self.values[i], self.errors[i])
    }
}

/// Owned twofold array in structure-of-arrays layout.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TwofoldVec<T> {
    pub values: Vec<T>,
    pub errors: Vec<T>,
}

impl<T: Dotted> TwofoldVec<T> {
    pub fn with_len(n: usize) -> Self {
        TwofoldVec {
            values: vec![T::ZERO; n],
            errors: vec![T::ZERO; n],
        }
    }

    pub fn as_slice(&self) -> TwofoldSlice<'_, T> {
        TwofoldSlice {
            values: &self.values,
            errors: &self.errors,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Twofold<T> {
        Twofold::new(self.values[i], self.errors[i])
    }
}

impl<T: Dotted> FromIterator<Twofold<T>> for TwofoldVec<T> {
    fn from_iter<I: IntoIterator<Item = Twofold<T>>>(iter: I) -> Self {
        let (values, errors) = iter.into_iter().map(|t| (t.value, t.error)).unzip();
        TwofoldVec { values, errors }
    }
}

macro_rules! binary_slice_op {
    ($(#[$doc:meta])* $name:ident, $op:path) => {
        $(#[$doc])*
        pub fn $name<T: Dotted>(
            xs: TwofoldSlice<'_, T>,
            ys: TwofoldSlice<'_, T>,
        ) -> Result<TwofoldVec<T>, ReduceError> {
            same_len(xs.len(), ys.len())?;
            let mut out = TwofoldVec::with_len(xs.len());
            let lanes = xs
                .values
                .iter()
                .zip(xs.errors)
                .zip(ys.values.iter().zip(ys.errors))
                .zip(out.values.iter_mut().zip(out.errors.iter_mut()));
            for (((&x0, &x1), (&y0, &y1)), (z0, z1)) in lanes {
                let z = $op(Twofold::new(x0, x1), Twofold::new(y0, y1));
                *z0 = z.value;
                *z1 = z.error;
            }
            Ok(out)
        }
    };
}

binary_slice_op!(
    /// Elementwise [`twofold::tadd`].
    tadd_slice,
    twofold::tadd
);
binary_slice_op!(
    /// Elementwise [`twofold::tsub`].
    tsub_slice,
    twofold::tsub
);
binary_slice_op!(
    /// Elementwise [`twofold::tmul`].
    tmul_slice,
    twofold::tmul
);
binary_slice_op!(
    /// Elementwise [`twofold::tdiv`].
    tdiv_slice,
    twofold::tdiv
);

/// Elementwise [`twofold::tsqrt`].
pub fn tsqrt_slice<T: Dotted>(xs: TwofoldSlice<'_, T>) -> TwofoldVec<T> {
    let mut out = TwofoldVec::with_len(xs.len());
    let lanes = xs
        .values
        .iter()
        .zip(xs.errors)
        .zip(out.values.iter_mut().zip(out.errors.iter_mut()));
    for ((&x0, &x1), (z0, z1)) in lanes {
        let z = twofold::tsqrt(Twofold::new(x0, x1));
        *z0 = z.value;
        *z1 = z.error;
    }
    out
}
