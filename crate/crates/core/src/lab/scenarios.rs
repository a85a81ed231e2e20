use std::str::FromStr;

use thiserror::Error;

use super::lu::{lu_solve, LuError, Matrix};
use super::number::{Kind, LabNumber};
use super::report::{digits_tolerance, Expectation, Quantity, ScenarioReport, Tolerance};
use crate::coupled::Coupled;
use crate::twofold::Twofold;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Solve(#[from] LuError),
}

/// Run a generic scenario body for a runtime-chosen kind.
macro_rules! dispatch {
    ($kind:expr, $f:ident, $($arg:expr),*) => {
        match $kind {
            Kind::Dotted32 => $f::<f32>($($arg),*),
            Kind::Dotted64 => $f::<f64>($($arg),*),
            Kind::Twofold32 => $f::<Twofold<f32>>($($arg),*),
            Kind::Twofold64 => $f::<Twofold<f64>>($($arg),*),
            Kind::Coupled32 => $f::<Coupled<f32>>($($arg),*),
            Kind::Coupled64 => $f::<Coupled<f64>>($($arg),*),
        }
    };
}

fn is_twofold(kind: Kind) -> bool {
    matches!(kind, Kind::Twofold32 | Kind::Twofold64)
}

fn is_64(kind: Kind) -> bool {
    kind.width() == crate::dotted::Width::W64
}

// ---- timer summation ----

pub const TICKS_PER_HOUR: f64 = 36_000.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummationConfig {
    pub hours: f64,
}

impl Default for SummationConfig {
    fn default() -> Self {
        Self { hours: 100.0 }
    }
}

/// A timer counting tenths of a second by repeated addition of `0.1`.
pub fn run_summation(kind: Kind, config: SummationConfig) -> Result<ScenarioReport, LabError> {
    let h = config.hours;
    if !h.is_finite() || h < 0.0 || (h * TICKS_PER_HOUR).fract() != 0.0 || h * TICKS_PER_HOUR > 1e12 {
        return Err(LabError::Parameter(format!(
            "hours must be a non-negative multiple of 1/36000, got {h}"
        )));
    }
    Ok(dispatch!(kind, summation, config))
}

fn summation<K: LabNumber>(config: SummationConfig) -> ScenarioReport {
    let ticks = (config.hours * TICKS_PER_HOUR) as u64;
    let tick = K::from_f64(0.1);
    let mut acc = K::from_f64(0.0);
    for _ in 0..ticks {
        acc = acc.add(tick);
    }
    let hours = acc.div(K::from_f64(3600.0));

    let mut r = ScenarioReport::new("summation", K::KIND);
    r.header
        .push(format!("test: type={}, hours={}", K::KIND.type_name(), config.hours));
    r.quantities.push(Quantity::new("1/10 s", tick, 6));
    let golden = match K::KIND {
        Kind::Twofold32 if config.hours == 100.0 => Some(Expectation::new(
            96.3958,
            3.54008,
            Tolerance::Relative(1e-4),
            Tolerance::Relative(1e-4),
        )),
        Kind::Dotted64 | Kind::Twofold64 | Kind::Coupled64 if config.hours == 100.0 => {
            Some(Expectation::value_only(100.0, Tolerance::Absolute(1e-6)))
        }
        _ => None,
    };
    r.quantities.push(
        Quantity::new("result", hours, 6)
            .with_suffix(" hours")
            .expect_if(golden),
    );
    r.footer.push(format!("expect: {} hours", config.hours));
    r
}

// ---- quadratic equation ----

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticConfig {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for QuadraticConfig {
    fn default() -> Self {
        Self {
            a: 1.0,
            b: 2.0,
            c: 1e-8,
        }
    }
}

/// Parse a coefficient written as a decimal, or a sum or difference of
/// decimals such as `1+1e-8`, evaluated in binary64.
pub fn parse_coefficient(text: &str) -> Result<f64, LabError> {
    let bad = || LabError::Parameter(format!("cannot parse coefficient {text:?}"));
    let s = text.trim();
    // split at a sign that is neither leading nor part of an exponent
    let bytes = s.as_bytes();
    let split =
        (1..bytes.len()).find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        None => f64::from_str(s).map_err(|_| bad()),
        Some(i) => {
            let left = f64::from_str(s[..i].trim()).map_err(|_| bad())?;
            let right = f64::from_str(s[i + 1..].trim()).map_err(|_| bad())?;
            Ok(if bytes[i] == b'+' { left + right } else { left - right })
        }
    }
}

/// Roots of `a x^2 + b x + c` by the school formula.
pub fn run_quadratic(kind: Kind, config: QuadraticConfig) -> Result<ScenarioReport, LabError> {
    if config.a == 0.0 || ![config.a, config.b, config.c].iter().all(|x| x.is_finite()) {
        return Err(LabError::Parameter("coefficients must be finite with a != 0".into()));
    }
    Ok(dispatch!(kind, quadratic, config))
}

fn quadratic<K: LabNumber>(config: QuadraticConfig) -> ScenarioReport {
    let a = K::from_f64(config.a);
    let b = K::from_f64(config.b);
    let c = K::from_f64(config.c);
    let four = K::from_f64(4.0);
    let two = K::from_f64(2.0);
    let d = b.mul(b).sub(four.mul(a).mul(c)).sqrt();
    let two_a = two.mul(a);
    let x0 = b.neg().sub(d).div(two_a);
    let x1 = b.neg().add(d).div(two_a);

    let digits = if is_64(K::KIND) { 15 } else { 6 };
    let default_ab = config.a == 1.0 && config.b == 2.0;
    let golden = |name: &str| -> Option<Expectation> {
        if !default_ab || !is_twofold(K::KIND) {
            return None;
        }
        match (K::KIND, name) {
            (Kind::Twofold64, "x1") if config.c == 1e-8 => Some(Expectation::new(
                -5.00000008063495e-09,
                1.78873546454856e-17,
                digits_tolerance(15),
                Tolerance::Relative(1e-6),
            )),
            (Kind::Twofold32, "d") if config.c == 1.0 + 1e-8 => {
                Some(Expectation::new(0.0, f64::NAN, Tolerance::Exact, Tolerance::Exact))
            }
            (Kind::Twofold64, "d") if config.c == 1.0 + 1e-8 => {
                Some(Expectation::new(f64::NAN, f64::NAN, Tolerance::Exact, Tolerance::Exact))
            }
            _ => None,
        }
    };

    let mut r = ScenarioReport::new("quadratic", K::KIND);
    r.header.push(format!("test: type={}", K::KIND.type_name()));
    r.section = Some("parameters:".into());
    for (name, x) in [("a", a), ("b", b), ("c", c), ("d", d), ("x0", x0), ("x1", x1)] {
        r.quantities
            .push(Quantity::new(name, x, digits).expect_if(golden(name)));
    }
    r
}

// ---- Rump polynomial ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum RumpOrder {
    /// `21bb - 2aa + 55bbbb - 10aabb + a/2b`, left to right.
    #[default]
    Literal,
    /// `(21b^2 - 2a^2) + (55b^4 - 10a^2b^2) + a/2b` with `b^4 = b^2 b^2`.
    Grouped,
}

pub const RUMP_A: f64 = 77617.0;
pub const RUMP_B: f64 = 33096.0;

pub fn run_rump(kind: Kind, order: RumpOrder) -> Result<ScenarioReport, LabError> {
    Ok(dispatch!(kind, rump, order))
}

/// Evaluate the polynomial in the given order.
pub fn rump_polynomial<K: LabNumber>(order: RumpOrder) -> K {
    let k = K::from_f64;
    let (a, b) = (k(RUMP_A), k(RUMP_B));
    let t5 = a.div(k(2.0).mul(b));
    match order {
        RumpOrder::Literal => {
            let t1 = k(21.0).mul(b).mul(b);
            let t2 = k(2.0).mul(a).mul(a);
            let t3 = k(55.0).mul(b).mul(b).mul(b).mul(b);
            let t4 = k(10.0).mul(a).mul(a).mul(b).mul(b);
            t1.sub(t2).add(t3).sub(t4).add(t5)
        }
        RumpOrder::Grouped => {
            let (a2, b2) = (a.mul(a), b.mul(b));
            let b4 = b2.mul(b2);
            let left = k(21.0).mul(b2).sub(k(2.0).mul(a2));
            let right = k(55.0).mul(b4).sub(k(10.0).mul(a2).mul(b2));
            left.add(right).add(t5)
        }
    }
}

fn rump<K: LabNumber>(order: RumpOrder) -> ScenarioReport {
    let f = rump_polynomial::<K>(order);
    let rel = digits_tolerance(6);
    let golden = match (K::KIND, order) {
        (Kind::Twofold64, RumpOrder::Literal) => Some(Expectation::new(
            1.1726039400531787,
            -2.0,
            digits_tolerance(14),
            Tolerance::Relative(1e-6),
        )),
        (Kind::Twofold32, RumpOrder::Literal) => {
            Some(Expectation::new(1.172603, -2.47524e-8, rel, Tolerance::Relative(1e-4)))
        }
        (Kind::Twofold64, RumpOrder::Grouped) => Some(Expectation::new(
            2687.17,
            -2688.0,
            Tolerance::Relative(1e-3),
            Tolerance::Relative(1e-3),
        )),
        (Kind::Twofold32, RumpOrder::Grouped) => Some(Expectation::new(-4.38709e12, 4.38709e12, rel, rel)),
        _ => None,
    };
    let label = match order {
        RumpOrder::Literal => "literal",
        RumpOrder::Grouped => "grouped",
    };
    let mut r = ScenarioReport::new("rump", K::KIND);
    r.header
        .push(format!("test: type={}, order={label}", K::KIND.type_name()));
    r.quantities.push(Quantity::new("f", f, 6).expect_if(golden));
    r.footer.push(format!(
        "expect: {}",
        crate::format::format_dotted(RUMP_A / (2.0 * RUMP_B) - 2.0, Default::default())
    ));
    r
}

// ---- ill-conditioned Jordan system ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum JordanVariant {
    /// Scaled so every coefficient is an integer; the solution is exact.
    Integer,
    /// Coefficients divided through, `lambda` carries its rounding residual.
    #[default]
    Normalized,
    /// Normalized, then every error lane of `A` and `f` is zeroed.
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JordanConfig {
    /// `lambda = numerator / denominator`.
    pub numerator: i64,
    pub denominator: i64,
    pub order: usize,
    pub variant: JordanVariant,
}

impl Default for JordanConfig {
    fn default() -> Self {
        Self {
            numerator: 1,
            denominator: 10_000,
            order: 5,
            variant: JordanVariant::Normalized,
        }
    }
}

impl JordanConfig {
    /// Parse a positive decimal `lambda` such as `1e-4` or `0.0001` into an
    /// exact ratio.
    pub fn with_lambda(mut self, text: &str) -> Result<Self, LabError> {
        let (p, q) = decimal_ratio(text)
            .ok_or_else(|| LabError::Parameter(format!("lambda must be a positive decimal, got {text:?}")))?;
        self.numerator = p;
        self.denominator = q;
        Ok(self)
    }

    pub fn lambda_text(&self) -> String {
        crate::format::format_dotted(self.numerator as f64 / self.denominator as f64, Default::default())
    }
}

fn decimal_ratio(text: &str) -> Option<(i64, i64)> {
    let s = text.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() || !(int.bytes().chain(frac.bytes())).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut p: i64 = format!("{int}{frac}").parse().ok()?;
    let mut scale = exp - frac.len() as i32;
    let mut q: i64 = 1;
    while scale > 0 {
        p = p.checked_mul(10)?;
        scale -= 1;
    }
    while scale < 0 {
        q = q.checked_mul(10)?;
        scale += 1;
    }
    if p == 0 {
        return None;
    }
    while p % 10 == 0 && q % 10 == 0 {
        p /= 10;
        q /= 10;
    }
    Some((p, q))
}

pub fn run_jordan(kind: Kind, config: JordanConfig) -> Result<ScenarioReport, LabError> {
    if config.order == 0 || config.numerator <= 0 || config.denominator <= 0 {
        return Err(LabError::Parameter("order and lambda must be positive".into()));
    }
    // all integers involved must be exact in the narrowest width used
    let limit = if is_64(kind) { 1i64 << 53 } else { 1i64 << 24 };
    let sum = config.numerator.checked_add(config.denominator);
    if sum.is_none_or(|s| s > limit) {
        return Err(LabError::Parameter(format!(
            "lambda numerator and denominator must sum to at most {limit} for {kind}"
        )));
    }
    dispatch!(kind, jordan, config)
}

/// The system `A x = f`: `lambda` on the diagonal, ones above it, and `f`
/// chosen so the exact solution is all ones.
pub fn jordan_system<K: LabNumber>(config: JordanConfig) -> (Matrix<K>, Vec<K>) {
    let n = config.order;
    let (p, q) = (config.numerator, config.denominator);
    let (diag, sup, f_full, f_last) = match config.variant {
        JordanVariant::Integer => {
            let k = |x: i64| K::from_f64(x as f64);
            (k(p), k(q), k(p + q), k(p))
        }
        JordanVariant::Normalized | JordanVariant::Truncated => {
            let lambda = K::ratio(p, q);
            (lambda, K::from_f64(1.0), K::ratio(p + q, q), lambda)
        }
    };
    let mut a = Matrix::zeros(n);
    let mut f = vec![f_full; n];
    f[n - 1] = f_last;
    for i in 0..n {
        a.set(i, i, diag);
        if i + 1 < n {
            a.set(i, i + 1, sup);
        }
    }
    if config.variant == JordanVariant::Truncated {
        a = a.map(K::truncate);
        f.iter_mut().for_each(|x| *x = x.truncate());
    }
    (a, f)
}

fn jordan<K: LabNumber>(config: JordanConfig) -> Result<ScenarioReport, LabError> {
    let (a, f) = jordan_system::<K>(config);
    let x = lu_solve(&a, &f)?;

    let default_lambda = config.numerator == 1 && config.denominator == 10_000 && config.order == 5;
    let rel = Tolerance::Relative(1e-3);
    let golden_x1 = match (K::KIND, config.variant) {
        (Kind::Twofold64, JordanVariant::Normalized) => Some(Expectation::new(1.11012, -0.110123, rel, rel)),
        (Kind::Twofold64, JordanVariant::Truncated) => Some(Expectation::new(1.11012, 4.79169e-5, rel, rel)),
        (Kind::Twofold32, JordanVariant::Normalized) => Some(Expectation::new(-1.65923e8, 1.65923e8, rel, rel)),
        (Kind::Twofold32, JordanVariant::Truncated) => Some(Expectation::new(-1.65923e8, -25280.1, rel, rel)),
        _ => None,
    }
    .filter(|_| default_lambda);

    let variant = match config.variant {
        JordanVariant::Integer => "integer",
        JordanVariant::Normalized => "normalized",
        JordanVariant::Truncated => "normalized, truncated",
    };
    let mut r = ScenarioReport::new("jordan", K::KIND);
    r.header.push(format!("luptest: {}", K::KIND.type_name()));
    r.header.push(format!(
        "problem: jordan{} lambda={}, {variant}",
        config.order,
        config.lambda_text()
    ));
    r.section = Some("x (result):".into());
    for (i, &xi) in x.iter().enumerate() {
        let mut q = Quantity::new(&format!("x{}", i + 1), xi, 6);
        if config.variant == JordanVariant::Integer {
            let error = if K::KIND.shape() == crate::shape::Shape::Dotted {
                Tolerance::Ignore
            } else {
                Tolerance::Exact
            };
            q = q.expect(Expectation::new(1.0, 0.0, Tolerance::Exact, error));
        } else if i == 0 {
            q = q.expect_if(golden_x1);
        }
        r.quantities.push(q);
    }
    Ok(r)
}
