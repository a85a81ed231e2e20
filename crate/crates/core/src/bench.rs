//! Throughput harness comparing twofold kernels with their plain
//! counterparts.
//!
//! Inputs come from a seeded ChaCha stream, so numeric results are
//! reproducible; only the timings vary between runs.

use std::fmt::Write as _;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dotted::{Dotted, Width};
use crate::reduce::{self, TwofoldSlice, TwofoldVec};
use crate::twofold::Twofold;

/// Fits in L1 on any current CPU.
pub const SMALL_BYTES: usize = 1024;
/// Far larger than any last-level cache.
pub const LARGE_BYTES: usize = 64 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Sum,
    Dot,
    Tsum,
    Tdot,
    /// Elementwise tadd/tmul/tdiv/tsqrt.
    Ops,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("could not allocate {bytes} bytes of benchmark input")]
    Allocation { bytes: usize },
    #[error("invalid size {0:?} (use e.g. small, large, 4096, 1KiB, 64MiB)")]
    Size(String),
    #[error("array of {bytes} bytes holds no {width}-bit elements")]
    Empty { bytes: usize, width: u32 },
}

/// Input size in bytes per array.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Size(pub usize);

impl FromStr for Size {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Self, BenchError> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "small" => return Ok(Size(SMALL_BYTES)),
            "large" => return Ok(Size(LARGE_BYTES)),
            _ => {}
        }
        let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        let (num, unit) = t.split_at(split);
        let n: usize = num.parse().map_err(|_| BenchError::Size(s.to_string()))?;
        let mult = match unit {
            "" | "b" => 1,
            "k" | "kb" | "kib" => 1 << 10,
            "m" | "mb" | "mib" => 1 << 20,
            "g" | "gb" | "gib" => 1 << 30,
            _ => return Err(BenchError::Size(s.to_string())),
        };
        n.checked_mul(mult)
            .map(Size)
            .ok_or_else(|| BenchError::Size(s.to_string()))
    }
}

/// One measured kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub name: String,
    pub width: u32,
    pub size: usize,
    pub ops_per_sec: f64,
    /// Throughput relative to the plain counterpart (1 for plain kernels).
    pub ratio: f64,
    pub seed: u64,
    /// Value lane of the kernel result (or of element 0 for `ops`).
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct BenchConfig {
    pub kernel: Kernel,
    pub size: Size,
    pub width: Width,
    pub seed: u64,
    /// Minimum wall time per measurement.
    pub min_time: Duration,
}

impl BenchConfig {
    pub fn new(kernel: Kernel, size: Size, width: Width, seed: u64) -> Self {
        BenchConfig {
            kernel,
            size,
            width,
            seed,
            min_time: Duration::from_millis(200),
        }
    }
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    match cfg.width {
        Width::W32 => run_width::<f32>(cfg),
        Width::W64 => run_width::<f64>(cfg),
    }
}

fn alloc<T: Dotted>(n: usize) -> Result<Vec<T>, BenchError> {
    let mut v = Vec::new();
    v.try_reserve_exact(n).map_err(|_| BenchError::Allocation {
        bytes: n * std::mem::size_of::<T>(),
    })?;
    Ok(v)
}

fn random_array<T: Dotted>(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Result<Vec<T>, BenchError> {
    let mut v = alloc(n)?;
    v.extend((0..n).map(|_| T::from_f64(rng.gen_range(lo..hi))));
    Ok(v)
}

/// Run `f` repeatedly for at least `min_time`; returns (calls per second,
/// last result).
fn measure<R>(min_time: Duration, mut f: impl FnMut() -> R) -> (f64, R) {
    let start = Instant::now();
    let mut reps = 0u64;
    loop {
        let r = black_box(f());
        reps += 1;
        let elapsed = start.elapsed();
        if elapsed >= min_time {
            return (reps as f64 / elapsed.as_secs_f64(), r);
        }
    }
}

fn run_width<T: Dotted>(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let elem = std::mem::size_of::<T>();
    let n = cfg.size.0 / elem;
    if n == 0 {
        return Err(BenchError::Empty {
            bytes: cfg.size.0,
            width: T::WIDTH.bits(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let record = |name: &str, ops_per_sec: f64, ratio: f64, r: Twofold<T>| BenchRecord {
        name: name.to_string(),
        width: T::WIDTH.bits(),
        size: cfg.size.0,
        ops_per_sec,
        ratio,
        seed: cfg.seed,
        value: r.value.to_f64(),
        error: r.error.to_f64(),
    };
    let per_call = n as f64;
    let plain_sum = |xs: &[T]| measure(cfg.min_time, || reduce::plain_sum(black_box(xs)));
    let plain_dot = |xs: &[T], ys: &[T]| {
        measure(cfg.min_time, || {
            reduce::plain_dot(black_box(xs), black_box(ys)).expect("equal lengths")
        })
    };

    let records = match cfg.kernel {
        Kernel::Sum => {
            let xs = random_array::<T>(&mut rng, n, -1.0, 1.0)?;
            let (rate, s) = plain_sum(&xs);
            vec![record("sum", rate * per_call, 1.0, Twofold::exact(s))]
        }
        Kernel::Tsum => {
            let xs = random_array::<T>(&mut rng, n, -1.0, 1.0)?;
            let (base, _) = plain_sum(&xs);
            let (rate, s) = measure(cfg.min_time, || reduce::tsum(black_box(&xs)));
            vec![record("tsum", rate * per_call, rate / base, s)]
        }
        Kernel::Dot => {
            let xs = random_array::<T>(&mut rng, n, -1.0, 1.0)?;
            let ys = random_array::<T>(&mut rng, n, -1.0, 1.0)?;
            let (rate, s) = plain_dot(&xs, &ys);
            vec![record("dot", rate * per_call, 1.0, Twofold::exact(s))]
        }
        Kernel::Tdot => {
            let xs = random_array::<T>(&mut rng, n, -1.0, 1.0)?;
            let ys = random_array::<T>(&mut rng, n, -1.0, 1.0)?;
            let (base, _) = plain_dot(&xs, &ys);
            let (rate, s) = measure(cfg.min_time, || {
                reduce::tdot(black_box(&xs), black_box(&ys)).expect("equal lengths")
            });
            vec![record("tdot", rate * per_call, rate / base, s)]
        }
        Kernel::Ops => run_ops::<T>(&mut rng, n, cfg.min_time)?
            .into_iter()
            .map(|(name, rate, base, r)| record(name, rate * per_call, rate / base, r))
            .collect(),
    };
    Ok(records)
}

type OpsRow<T> = (&'static str, f64, f64, Twofold<T>);

fn run_ops<T: Dotted>(rng: &mut ChaCha8Rng, n: usize, min_time: Duration) -> Result<Vec<OpsRow<T>>, BenchError> {
    let xv = random_array::<T>(rng, n, 0.5, 2.0)?;
    let yv = random_array::<T>(rng, n, 0.5, 2.0)?;
    let tiny = T::UNIT_ROUNDOFF.to_f64();
    let xe = random_array::<T>(rng, n, -tiny, tiny)?;
    let ye = random_array::<T>(rng, n, -tiny, tiny)?;
    let x = TwofoldSlice::new(&xv, &xe).expect("equal lengths");
    let y = TwofoldSlice::new(&yv, &ye).expect("equal lengths");
    let mut out = alloc::<T>(n)?;
    out.resize(n, T::ZERO);

    let mut plain = |op: fn(T, T) -> T| {
        measure(min_time, || {
            for ((o, &a), &b) in out.iter_mut().zip(black_box(&xv)).zip(black_box(&yv)) {
                *o = op(a, b);
            }
            out[0]
        })
        .0
    };
    let base_add = plain(|a, b| a + b);
    let base_mul = plain(|a, b| a * b);
    let base_div = plain(|a, b| a / b);
    let base_sqrt = plain(|a, _| a.sqrt());

    let first = |v: TwofoldVec<T>| v.get(0);
    let twofold = |op: fn(TwofoldSlice<'_, T>, TwofoldSlice<'_, T>) -> TwofoldVec<T>| {
        let (rate, v) = measure(min_time, || op(black_box(x), black_box(y)));
        (rate, first(v))
    };
    let (tadd, r_add) = twofold(|a, b| reduce::tadd_slice(a, b).expect("equal lengths"));
    let (tmul, r_mul) = twofold(|a, b| reduce::tmul_slice(a, b).expect("equal lengths"));
    let (tdiv, r_div) = twofold(|a, b| reduce::tdiv_slice(a, b).expect("equal lengths"));
    let (tsqrt, r_sqrt) = twofold(|a, _| reduce::tsqrt_slice(a));
    Ok(vec![
        ("tadd", tadd, base_add, r_add),
        ("tmul", tmul, base_mul, r_mul),
        ("tdiv", tdiv, base_div, r_div),
        ("tsqrt", tsqrt, base_sqrt, r_sqrt),
    ])
}

/// Aligned text table.
pub fn render_table(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:>5} {:>12} {:>14} {:>8} {:>6}",
        "kernel", "width", "bytes", "MOPS", "ratio", "seed"
    );
    for r in records {
        let _ = writeln!(
            out,
            "{:<8} {:>5} {:>12} {:>14.2} {:>8.3} {:>6}",
            r.name,
            r.width,
            r.size,
            r.ops_per_sec / 1e6,
            r.ratio,
            r.seed
        );
    }
    out
}

/// One JSON object per line.
pub fn render_records(records: &[BenchRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("bench record serializes") + "\n")
        .collect()
}
