//! Shared generators and oracle-backed checks. Each `check_*` function
//! returns a one-line summary on success and a diagnostic on failure.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twofold::format::{format, parse, FormatOptions};
use twofold::reduce::{tdot, tsum};
use twofold::*;
use twofold_oracle::{ratio, Dyadic};

pub type Outcome = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn exact<T: Dotted>(x: T) -> Dyadic {
    Dyadic::from_f64(x.to_f64()).expect("finite input to oracle")
}

pub fn exact_pair<T: Dotted>(x: Twofold<T>) -> Dyadic {
    &exact(x.value) + &exact(x.error)
}

fn width_bits<T: Dotted>() -> u32 {
    T::WIDTH.bits()
}

/// Uniform over bit patterns, NaN and infinities included.
pub fn any_bits<T: Dotted>(r: &mut ChaCha8Rng) -> T {
    let bits: u64 = r.gen();
    let bits = if width_bits::<T>() == 32 {
        bits & 0xffff_ffff
    } else {
        bits
    };
    T::from_bits_u64(bits)
}

/// Uniform over finite bit patterns: subnormals, zeros and extremes included.
pub fn any_finite<T: Dotted>(r: &mut ChaCha8Rng) -> T {
    loop {
        let x = any_bits::<T>(r);
        if x.is_finite() {
            return x;
        }
    }
}

/// Random sign and full-precision mantissa, binary exponent in `lo..=hi`.
pub fn scaled<T: Dotted>(r: &mut ChaCha8Rng, lo: i32, hi: i32) -> T {
    let frac_bits = T::PRECISION - 1;
    let m: u64 = (1u64 << frac_bits) | (r.gen::<u64>() & ((1u64 << frac_bits) - 1));
    let e = r.gen_range(lo..=hi);
    let sign = if r.gen() { -1.0 } else { 1.0 };
    let x = sign * m as f64 * 2f64.powi(e - frac_bits as i32);
    T::from_f64(x)
}

/// A twofold with `|error| <= ulp(value)`.
pub fn small_error_twofold<T: Dotted>(r: &mut ChaCha8Rng, lo: i32, hi: i32) -> Twofold<T> {
    let v: T = scaled(r, lo, hi);
    let e = v.ulp() * T::from_f64(r.gen_range(-1.0..=1.0));
    Twofold::new(v, e)
}

fn unit_sq<T: Dotted>() -> Dyadic {
    Dyadic::pow2(-2 * i64::from(T::PRECISION))
}

// ---- 1. error-free transformations --------------------------------------

fn sum_pair<T: Dotted>(r: &mut ChaCha8Rng) -> (T, T) {
    match r.gen_range(0..5) {
        0 => (any_finite(r), any_finite(r)),
        1 => {
            let k = r.gen_range(-100..100);
            (scaled(r, k, k + 30), scaled(r, k, k + 30))
        }
        2 => {
            // near-total cancellation
            let a: T = scaled(r, -200, 200);
            let k = T::from_f64(r.gen_range(-8..=8) as f64);
            (a, -(a + a.ulp() * k))
        }
        3 => {
            let tiny = T::from_bits_u64(r.gen_range(0..1u64 << (T::PRECISION + 1)));
            (tiny, any_finite(r))
        }
        _ => {
            let a: T = scaled(r, -60, 60);
            (a, scaled(r, -150, 150))
        }
    }
}

fn prod_pair<T: Dotted>(r: &mut ChaCha8Rng) -> (T, T) {
    let bias = T::EXPONENT_BIAS;
    match r.gen_range(0..4) {
        0 => (any_finite(r), any_finite(r)),
        1 => (scaled(r, -bias / 2, bias / 2), scaled(r, -bias / 2, bias / 2)),
        2 => {
            // close to the underflow edge of the product
            let edge = 1 - bias + T::PRECISION as i32;
            let ea = r.gen_range(-bias / 2..bias / 2);
            let eb = edge - ea + r.gen_range(-4..8);
            (scaled(r, ea, ea), scaled(r, eb, eb))
        }
        _ => (scaled(r, -20, 20), any_finite(r)),
    }
}

/// `hi + lo == a op b` exactly for two_sum, two_diff and two_prod over
/// `pairs` checked inputs each. two_prod is only checked where the product
/// is at least `2^(emin + p)`; below that its low part can underflow.
pub fn check_eft<T: Dotted>(pairs: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let (mut sums, mut prods, mut skipped) = (0usize, 0usize, 0usize);
    while sums < pairs {
        let (a, b) = sum_pair::<T>(&mut r);
        let s = two_sum(a, b);
        let d = two_diff(a, b);
        if !s.hi.is_finite() || !d.hi.is_finite() {
            skipped += 1;
            continue;
        }
        let (xa, xb) = (exact(a), exact(b));
        if &exact(s.hi) + &exact(s.lo) != &xa + &xb {
            return Err(format!("two_sum({a:e}, {b:e}) = {:e} + {:e} is inexact", s.hi, s.lo));
        }
        if &exact(d.hi) + &exact(d.lo) != &xa - &xb {
            return Err(format!("two_diff({a:e}, {b:e}) = {:e} + {:e} is inexact", d.hi, d.lo));
        }
        sums += 1;
    }
    let floor = T::from_f64(2f64.powi(1 - T::EXPONENT_BIAS + T::PRECISION as i32));
    while prods < pairs {
        let (a, b) = prod_pair::<T>(&mut r);
        let p = two_prod(a, b);
        if !p.hi.is_finite() || p.hi.abs() < floor {
            skipped += 1;
            continue;
        }
        if &exact(p.hi) + &exact(p.lo) != &exact(a) * &exact(b) {
            return Err(format!("two_prod({a:e}, {b:e}) = {:e} + {:e} is inexact", p.hi, p.lo));
        }
        prods += 1;
    }
    Ok(format!(
        "binary{}: {sums} sums/differences and {prods} products exact ({skipped} out-of-range draws skipped)",
        width_bits::<T>()
    ))
}

// ---- 2. value-lane shadow fuzz -------------------------------------------

#[derive(Clone, Copy, Debug)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
}

/// Which operands are passed as twofolds: both, first only, second only,
/// neither (the `""`, `1`, `2`, `0` arity families).
#[derive(Clone, Copy, Debug)]
enum Arity {
    Full,
    One,
    Two,
    Zero,
}

#[derive(Clone, Copy, Debug)]
struct Node {
    op: Op,
    arity: Arity,
    a: usize,
    b: usize,
    via_operator: bool,
}

fn leaf<T: Dotted>(r: &mut ChaCha8Rng) -> Twofold<T> {
    let v: T = match r.gen_range(0..20) {
        0 => T::ZERO,
        1 => -T::ZERO,
        2 => any_bits(r),
        3 => any_finite(r),
        4 => T::from_f64(r.gen_range(-4..=4) as f64),
        _ => scaled(r, -30, 30),
    };
    let e = if v.is_finite() && r.gen_bool(0.8) {
        v.ulp() * T::from_f64(r.gen_range(-1.0..=1.0))
    } else {
        T::ZERO
    };
    Twofold::new(v, e)
}

fn eval_twofold<T: Dotted>(n: &Node, x: Twofold<T>, y: Twofold<T>) -> Twofold<T> {
    let (xv, yv) = (x.value, y.value);
    match (n.op, n.arity, n.via_operator) {
        (Op::Add, Arity::Full, false) => tadd(x, y),
        (Op::Add, Arity::Full, true) => x + y,
        (Op::Add, Arity::One, false) => tadd1(x, yv),
        (Op::Add, Arity::One, true) => x + yv,
        (Op::Add, Arity::Two, _) => tadd2(xv, y),
        (Op::Add, Arity::Zero, _) => tadd0(xv, yv),
        (Op::Sub, Arity::Full, false) => tsub(x, y),
        (Op::Sub, Arity::Full, true) => x - y,
        (Op::Sub, Arity::One, false) => tsub1(x, yv),
        (Op::Sub, Arity::One, true) => x - yv,
        (Op::Sub, Arity::Two, _) => tsub2(xv, y),
        (Op::Sub, Arity::Zero, _) => tsub0(xv, yv),
        (Op::Mul, Arity::Full, false) => tmul(x, y),
        (Op::Mul, Arity::Full, true) => x * y,
        (Op::Mul, Arity::One, false) => tmul1(x, yv),
        (Op::Mul, Arity::One, true) => x * yv,
        (Op::Mul, Arity::Two, _) => tmul2(xv, y),
        (Op::Mul, Arity::Zero, _) => tmul0(xv, yv),
        (Op::Div, Arity::Full, false) => tdiv(x, y),
        (Op::Div, Arity::Full, true) => x / y,
        (Op::Div, Arity::One, false) => tdiv1(x, yv),
        (Op::Div, Arity::One, true) => x / yv,
        (Op::Div, Arity::Two, _) => tdiv2(xv, y),
        (Op::Div, Arity::Zero, _) => tdiv0(xv, yv),
        (Op::Sqrt, Arity::Zero, _) => tsqrt0(xv),
        (Op::Sqrt, _, _) => tsqrt(x),
    }
}

fn eval_plain<T: Dotted>(op: Op, x: T, y: T) -> T {
    match op {
        Op::Add => x + y,
        Op::Sub => x - y,
        Op::Mul => x * y,
        Op::Div => x / y,
        Op::Sqrt => x.sqrt(),
    }
}

/// Build one random DAG (shared subexpressions allowed, depth <= 20) and
/// return the first node index whose value lane differs from plain code.
fn fuzz_one<T: Dotted>(r: &mut ChaCha8Rng) -> Option<String> {
    const MAX_DEPTH: usize = 20;
    let leaves = r.gen_range(2..8);
    let mut tf: Vec<Twofold<T>> = (0..leaves).map(|_| leaf(r)).collect();
    let mut plain: Vec<T> = tf.iter().map(|x| x.value).collect();
    let mut depth = vec![0usize; leaves];
    let nodes = r.gen_range(1..48);
    for i in 0..nodes {
        let op = match r.gen_range(0..9) {
            0 | 1 => Op::Add,
            2 | 3 => Op::Sub,
            4 | 5 => Op::Mul,
            6 | 7 => Op::Div,
            _ => Op::Sqrt,
        };
        let arity = match r.gen_range(0..4) {
            0 => Arity::Full,
            1 => Arity::One,
            2 => Arity::Two,
            _ => Arity::Zero,
        };
        // operands: prefer recent nodes so chains get deep
        let pick = |r: &mut ChaCha8Rng| {
            let n = tf.len();
            if r.gen_bool(0.6) {
                n - 1 - r.gen_range(0..n.min(3))
            } else {
                r.gen_range(0..n)
            }
        };
        let (mut a, mut b) = (pick(r), pick(r));
        if depth[a] >= MAX_DEPTH {
            a = r.gen_range(0..leaves);
        }
        if depth[b] >= MAX_DEPTH {
            b = r.gen_range(0..leaves);
        }
        let node = Node {
            op,
            arity,
            a,
            b,
            via_operator: r.gen(),
        };
        let z = eval_twofold(&node, tf[a], tf[b]);
        let p = eval_plain(op, plain[a], plain[b]);
        if z.value.to_bits_u64() != p.to_bits_u64() {
            return Some(format!(
                "node {i} {node:?}: twofold value {:e} ({:#x}) vs plain {:e} ({:#x}); inputs {:?} {:?}",
                z.value,
                z.value.to_bits_u64(),
                p,
                p.to_bits_u64(),
                tf[a],
                tf[b]
            ));
        }
        tf.push(z);
        plain.push(p);
        depth.push(1 + depth[a].max(depth[b]));
    }
    None
}

pub fn check_shadow<T: Dotted>(dags: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for d in 0..dags {
        if let Some(msg) = fuzz_one::<T>(&mut r) {
            return Err(format!("binary{} DAG {d}: {msg}", width_bits::<T>()));
        }
    }
    Ok(format!(
        "binary{}: {dags} DAGs, value lanes bitwise equal",
        width_bits::<T>()
    ))
}

// ---- error-lane fidelity ---------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FidelityOp {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
}

impl FidelityOp {
    pub const ALL: [FidelityOp; 5] = [
        FidelityOp::Add,
        FidelityOp::Sub,
        FidelityOp::Mul,
        FidelityOp::Div,
        FidelityOp::Sqrt,
    ];
}

/// `|(v+e) - exact| / (u^2 · scale)` for one operation; `scale` is
/// `|x|+|y|` for add/sub and `|exact|` otherwise.
pub fn fidelity_ratio<T: Dotted>(op: FidelityOp, x: Twofold<T>, y: Twofold<T>) -> f64 {
    let (xe, ye) = (exact_pair(x), exact_pair(y));
    let u2 = unit_sq::<T>();
    match op {
        FidelityOp::Add | FidelityOp::Sub => {
            let (z, want) = if op == FidelityOp::Add {
                (tadd(x, y), &xe + &ye)
            } else {
                (tsub(x, y), &xe - &ye)
            };
            let err = (&exact_pair(z) - &want).abs();
            ratio(&err, &(&(&xe.abs() + &ye.abs()) * &u2))
        }
        FidelityOp::Mul => {
            let want = &xe * &ye;
            let err = (&exact_pair(tmul(x, y)) - &want).abs();
            ratio(&err, &(&want.abs() * &u2))
        }
        FidelityOp::Div => {
            // |q - X/Y| / |X/Y| = |q·Y - X| / |X|
            let q = exact_pair(tdiv(x, y));
            let err = (&(&q * &ye) - &xe).abs();
            ratio(&err, &(&xe.abs() * &u2))
        }
        FidelityOp::Sqrt => {
            // |s - sqrt X| / sqrt X ≈ |s^2 - X| / (2 s^2)
            let s = exact_pair(tsqrt(x));
            let err = (&(&s * &s) - &xe).abs();
            ratio(&err, &(&(&(&s * &s) * &u2) * &Dyadic::from_int(2)))
        }
    }
}

pub fn fidelity_input<T: Dotted>(r: &mut ChaCha8Rng, op: FidelityOp) -> (Twofold<T>, Twofold<T>) {
    let span = if width_bits::<T>() == 32 { 30 } else { 200 };
    let mut x = small_error_twofold::<T>(r, -span, span);
    let mut y = small_error_twofold::<T>(r, -span, span);
    if matches!(op, FidelityOp::Add | FidelityOp::Sub) && r.gen_bool(0.3) {
        // heavy cancellation
        let k = T::from_f64(r.gen_range(-16..=16) as f64);
        let v = x.value + x.value.ulp() * k;
        y = Twofold::new(
            if op == FidelityOp::Add { -v } else { v },
            v.ulp() * T::from_f64(r.gen_range(-0.5..=0.5)),
        );
    }
    if op == FidelityOp::Sqrt {
        x = tabs(x);
    }
    (x, y)
}

/// Largest observed fidelity ratio over `n` random inputs.
pub fn max_fidelity<T: Dotted>(op: FidelityOp, n: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let (x, y) = fidelity_input::<T>(&mut r, op);
            fidelity_ratio(op, x, y)
        })
        .fold(0.0, f64::max)
}

// ---- 7. reductions -----------------------------------------------------------

/// Values spanning `2^±30` arranged in near-cancelling pairs, shuffled.
pub fn adversarial<T: Dotted>(r: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    let mut xs = Vec::with_capacity(n);
    while xs.len() + 1 < n {
        let a: T = scaled(r, -30, 30);
        let k = T::from_f64(r.gen_range(-64..=64) as f64);
        xs.push(a);
        xs.push(-(a + a.ulp() * k));
    }
    while xs.len() < n {
        xs.push(scaled(r, -30, 30));
    }
    xs.shuffle(r);
    xs
}

/// Pairs of products `a·b` and `(-a)·(b + k·ulp(b))` that nearly cancel,
/// shuffled together.
pub fn adversarial_dot<T: Dotted>(r: &mut ChaCha8Rng, n: usize) -> (Vec<T>, Vec<T>) {
    let mut pairs = Vec::with_capacity(n);
    while pairs.len() + 1 < n {
        let (a, b): (T, T) = (scaled(r, -15, 15), scaled(r, -15, 15));
        let k = T::from_f64(r.gen_range(-64..=64) as f64);
        pairs.push((a, b));
        pairs.push((-a, b + b.ulp() * k));
    }
    while pairs.len() < n {
        pairs.push((scaled(r, -15, 15), scaled(r, -15, 15)));
    }
    pairs.shuffle(r);
    pairs.into_iter().unzip()
}

/// tsum and tdot against the oracle: `|(v+e) - exact| <= n·u²·Σ|terms|`.
pub fn check_reductions<T: Dotted>(n: usize, trials: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let u2 = unit_sq::<T>();
    let nn = Dyadic::from_int(n as i64);
    let mut worst: f64 = 0.0;
    for trial in 0..trials {
        let xs = adversarial::<T>(&mut r, n);
        let terms: Vec<Dyadic> = xs.iter().map(|&x| exact(x)).collect();
        let want = twofold_oracle::sum(&terms);
        let mass = twofold_oracle::sum(&terms.iter().map(Dyadic::abs).collect::<Vec<_>>());
        let bound = &(&nn * &u2) * &mass;
        let got = exact_pair(tsum(&xs));
        let err = (&got - &want).abs();
        worst = worst.max(ratio(&err, &bound));
        if err > bound {
            return Err(format!(
                "binary{} tsum trial {trial}: error exceeds n·u²·Σ|x|",
                width_bits::<T>()
            ));
        }

        let (xs, ys) = adversarial_dot::<T>(&mut r, n);
        let prods: Vec<Dyadic> = xs.iter().zip(&ys).map(|(&x, &y)| &exact(x) * &exact(y)).collect();
        let want = twofold_oracle::sum(&prods);
        let mass = twofold_oracle::sum(&prods.iter().map(Dyadic::abs).collect::<Vec<_>>());
        let bound = &(&nn * &u2) * &mass;
        let got = exact_pair(tdot(&xs, &ys).expect("equal lengths"));
        let err = (&got - &want).abs();
        worst = worst.max(ratio(&err, &bound));
        if err > bound {
            return Err(format!(
                "binary{} tdot trial {trial}: error exceeds n·u²·Σ|xy|",
                width_bits::<T>()
            ));
        }
    }
    Ok(format!(
        "binary{}: {trials} trials x n={n}, worst error {:.3e} of the bound",
        width_bits::<T>(),
        worst
    ))
}

// ---- 8. coupled invariants ---------------------------------------------------

pub fn coupled_input<T: Dotted>(r: &mut ChaCha8Rng) -> Coupled<T> {
    let span = if width_bits::<T>() == 32 { 40 } else { 300 };
    renormalize(small_error_twofold::<T>(r, -span, span))
}

type PBinary<T> = fn(Coupled<T>, Coupled<T>) -> Coupled<T>;

pub fn check_coupled<T: Dotted>(n: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let ops: [(&str, PBinary<T>); 17] = [
        ("padd", padd),
        ("psub", psub),
        ("pmul", pmul),
        ("pdiv", pdiv),
        ("padd1", |x, y| padd1(x, y.value())),
        ("psub1", |x, y| psub1(x, y.value())),
        ("pmul1", |x, y| pmul1(x, y.value())),
        ("pdiv1", |x, y| pdiv1(x, y.value())),
        ("padd2", |x, y| padd2(x.value(), y)),
        ("psub2", |x, y| psub2(x.value(), y)),
        ("pmul2", |x, y| pmul2(x.value(), y)),
        ("pdiv2", |x, y| pdiv2(x.value(), y)),
        ("padd0", |x, y| padd0(x.value(), y.value())),
        ("psub0", |x, y| psub0(x.value(), y.value())),
        ("pmul0", |x, y| pmul0(x.value(), y.value())),
        ("pdiv0", |x, y| pdiv0(x.value(), y.value())),
        ("psqrt", |x, _| psqrt(pabs(x))),
    ];
    for (name, op) in ops {
        for _ in 0..n {
            let (x, y) = (coupled_input::<T>(&mut r), coupled_input::<T>(&mut r));
            let z = op(x, y);
            if !is_renormalized(z.value(), z.error()) {
                return Err(format!("{name}({x:?}, {y:?}) = {z:?} is not renormalized"));
            }
        }
    }
    for _ in 0..n {
        let x = coupled_input::<T>(&mut r);
        let z = psqrt0(pabs(x).value());
        if !is_renormalized(z.value(), z.error()) {
            return Err(format!("psqrt0({:?}) = {z:?} is not renormalized", x.value()));
        }
    }

    // renormalize keeps value+error exactly, whatever the lane magnitudes
    for _ in 0..n {
        let t = match r.gen_range(0..3) {
            0 => Twofold::new(scaled::<T>(&mut r, -40, 40), scaled(&mut r, -40, 40)),
            1 => Twofold::new(any_finite::<T>(&mut r), any_finite(&mut r)),
            _ => small_error_twofold::<T>(&mut r, -60, 60),
        };
        let c = renormalize(t);
        if !c.value().is_finite() || !c.error().is_finite() {
            continue;
        }
        if exact_pair(c.as_twofold()) != exact_pair(t) {
            return Err(format!("renormalize({t:?}) = {c:?} changed the sum"));
        }
        if !is_renormalized(c.value(), c.error()) {
            return Err(format!("renormalize({t:?}) = {c:?} is not renormalized"));
        }
    }

    // padd0 is tadd0 bit for bit, special values included
    for _ in 0..n {
        let (a, b): (T, T) = match r.gen_range(0..3) {
            0 => (any_bits(&mut r), any_bits(&mut r)),
            1 => sum_pair(&mut r),
            _ => (
                scaled(&mut r, -20, 20),
                [T::ZERO, -T::ZERO, T::INFINITY, T::NAN][r.gen_range(0..4)],
            ),
        };
        let (p, t) = (padd0(a, b), tadd0(a, b));
        if !p.as_twofold().bit_eq(&t) {
            return Err(format!("padd0({a:e}, {b:e}) = {p:?} differs from tadd0 = {t:?}"));
        }
    }
    Ok(format!(
        "binary{}: {n} inputs per p-op, renormalize and padd0 checks",
        width_bits::<T>()
    ))
}

// ---- 10. text format -----------------------------------------------------------

fn format_lane<T: Dotted>(r: &mut ChaCha8Rng) -> T {
    match r.gen_range(0..10) {
        0 => T::INFINITY,
        1 => -T::INFINITY,
        2 => {
            // NaN with a random payload and sign
            let frac = T::fraction_mask();
            let payload = (r.gen::<u64>() & frac).max(1);
            let sign = if r.gen() { T::sign_bit() } else { 0 };
            T::from_bits_u64(sign | (T::exponent_mask() << (T::PRECISION - 1)) | payload)
        }
        3 => T::NAN,
        4 => [T::ZERO, -T::ZERO][r.gen_range(0..2)],
        5 => T::from_bits_u64(r.gen_range(1..1u64 << (T::PRECISION - 1))),
        _ => any_finite(r),
    }
}

pub fn check_format<T: Dotted>(n: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for _ in 0..n {
        let x = Twofold::new(format_lane::<T>(&mut r), format_lane::<T>(&mut r));
        let text = format(x, FormatOptions::hex());
        let back: Twofold<T> = parse(&text).map_err(|e| format!("{text:?} does not parse: {e}"))?;
        if back.to_bits() != x.to_bits() {
            return Err(format!("{text:?} parsed to {back:?}, expected {x:?}"));
        }
    }
    Ok(format!("binary{}: {n} hex round trips", width_bits::<T>()))
}
