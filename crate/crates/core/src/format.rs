//! Text form of twofold numbers: `VALUE[ERROR]`.
//!
//! The default is six significant digits in C `%g` style
//! (`3.14159[-8.74228e-08]`). Hex mode writes C99 hexadecimal float
//! literals, which round-trip bit-exactly through [`parse`]; NaNs other
//! than the canonical quiet NaN carry their raw bits as `nan(0x...)`.

use std::fmt;

use crate::coupled::Coupled;
use crate::dotted::Dotted;
use crate::twofold::Twofold;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormatOptions {
    /// Significant digits in decimal mode (at least 1).
    pub digits: usize,
    pub hex: bool,
}

impl Default for FormatOptions {
    fn default() -> Self {
        FormatOptions { digits: 6, hex: false }
    }
}

impl FormatOptions {
    pub fn digits(digits: usize) -> Self {
        FormatOptions { digits, hex: false }
    }

    pub fn hex() -> Self {
        FormatOptions { digits: 6, hex: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("expected `VALUE[ERROR]`, got {0:?}")]
    Shape(String),
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("hex literal {0:?} is not exactly representable at this width")]
    Inexact(String),
}

/// Format one dotted scalar.
pub fn format_dotted<T: Dotted>(x: T, opts: FormatOptions) -> String {
    if opts.hex {
        to_hex(x)
    } else {
        to_general(x.to_f64(), opts.digits.max(1))
    }
}

/// `VALUE[ERROR]`.
pub fn format<T: Dotted>(x: Twofold<T>, opts: FormatOptions) -> String {
    format!("{}[{}]", format_dotted(x.value, opts), format_dotted(x.error, opts))
}

/// Parse `VALUE[ERROR]`; whitespace around either part is ignored. Each part
/// is either a decimal literal (rounded to nearest) or an exact hex literal.
pub fn parse<T: Dotted>(text: &str) -> Result<Twofold<T>, ParseError> {
    let text = text.trim();
    let open = text.find('[').ok_or_else(|| ParseError::Shape(text.to_string()))?;
    if !text.ends_with(']') || open == 0 {
        return Err(ParseError::Shape(text.to_string()));
    }
    let value = parse_dotted::<T>(&text[..open])?;
    let error = parse_dotted::<T>(&text[open + 1..text.len() - 1])?;
    Ok(Twofold::new(value, error))
}

/// Parse one dotted scalar in either decimal or hex form.
pub fn parse_dotted<T: Dotted>(text: &str) -> Result<T, ParseError> {
    let s = text.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let lower = body.to_ascii_lowercase();
    let magnitude = if let Some(hex) = lower.strip_prefix("0x") {
        parse_hex::<T>(hex).ok_or_else(|| ParseError::Number(s.to_string()))??
    } else if lower == "nan" {
        T::NAN
    } else if let Some(payload) = lower.strip_prefix("nan(0x").and_then(|p| p.strip_suffix(')')) {
        let bits = u64::from_str_radix(payload, 16).map_err(|_| ParseError::Number(s.to_string()))?;
        let x = T::from_bits_u64(bits);
        if !x.is_nan() {
            return Err(ParseError::Number(s.to_string()));
        }
        // raw bits already carry the sign
        return Ok(if negative { -x } else { x });
    } else if lower.is_empty() || lower.starts_with(['+', '-']) {
        return Err(ParseError::Number(s.to_string()));
    } else {
        body.parse::<T>().map_err(|_| ParseError::Number(s.to_string()))?
    };
    Ok(if negative { -magnitude } else { magnitude })
}

impl<T: Dotted> fmt::Display for Twofold<T> {
    /// `{}` uses six significant digits, `{:.N}` uses N, `{:#}` prints hex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opts = if f.alternate() {
            FormatOptions::hex()
        } else {
            FormatOptions::digits(f.precision().unwrap_or(6))
        };
        f.write_str(&format(*self, opts))
    }
}

impl<T: Dotted> fmt::Display for Coupled<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.as_twofold(), f)
    }
}

impl<T: Dotted> std::str::FromStr for Twofold<T> {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

// ---- decimal -------------------------------------------------------------

/// C `%.{digits}g`, except that NaN prints without its sign.
fn to_general(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

// ---- hexadecimal ---------------------------------------------------------

fn to_hex<T: Dotted>(x: T) -> String {
    let bits = x.to_bits_u64();
    let negative = bits & T::sign_bit() != 0;
    let sign = if negative { "-" } else { "" };
    if x.is_nan() {
        let canonical = T::NAN.to_bits_u64();
        return if bits == canonical {
            "nan".into()
        } else {
            format!("nan(0x{bits:x})")
        };
    }
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let biased = ((bits >> T::FRACTION_BITS) & T::exponent_mask()) as i32;
    let fraction = bits & T::fraction_mask();
    if biased == 0 && fraction == 0 {
        return format!("{sign}0x0p+0");
    }
    // pad the fraction to whole hex digits
    let pad = (4 - T::FRACTION_BITS % 4) % 4;
    let width = ((T::FRACTION_BITS + pad) / 4) as usize;
    let digits = format!("{:0width$x}", fraction << pad, width = width);
    let digits = digits.trim_end_matches('0');
    let (lead, exp) = if biased == 0 {
        (0, 1 - T::EXPONENT_BIAS)
    } else {
        (1, biased - T::EXPONENT_BIAS)
    };
    let dot = if digits.is_empty() { "" } else { "." };
    format!("{sign}0x{lead}{dot}{digits}p{exp:+}")
}

/// Parse the part after `0x` (sign already stripped). `None` on syntax
/// errors; `Some(Err)` when the literal needs rounding.
fn parse_hex<T: Dotted>(s: &str) -> Option<Result<T, ParseError>> {
    let (mant, exp) = s.split_once('p')?;
    let exp: i64 = exp.parse().ok()?;
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let mut m: u128 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        let d = c.to_digit(16)?;
        m = m.checked_mul(16)?.checked_add(u128::from(d))?;
    }
    if m == 0 {
        return Some(Ok(T::ZERO));
    }
    let inexact = || Err(ParseError::Inexact(format!("0x{s}")));
    // value = m · 2^k
    let k = exp - 4 * frac_part.len() as i64;
    let top = 127 - i64::from(m.leading_zeros());
    let e = top + k;
    let p = i64::from(T::PRECISION);
    let emin = 1 - i64::from(T::EXPONENT_BIAS);
    let emax = i64::from(T::EXPONENT_BIAS);
    if e > emax {
        return Some(inexact());
    }
    // exponent of the last significand bit at this magnitude
    let q = (e - (p - 1)).max(emin - (p - 1));
    let significand = if q >= k {
        let shift = (q - k) as u32;
        if shift >= 128 || m & ((1u128 << shift) - 1) != 0 {
            return Some(inexact());
        }
        m >> shift
    } else {
        m << (k - q) as u32
    };
    let significand = significand as u64;
    let bits = if e >= emin {
        (((e + i64::from(T::EXPONENT_BIAS)) as u64) << T::FRACTION_BITS) | (significand & T::fraction_mask())
    } else {
        significand
    };
    Some(Ok(T::from_bits_u64(bits)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_matches_printf() {
        let cases: [(f64, &str); 12] = [
            (1.0, "1"),
            (0.0, "0"),
            (100.0, "100"),
            (std::f64::consts::PI, "3.14159"),
            (-8.742278e-8, "-8.74228e-08"),
            (1e-8, "1e-08"),
            (123456.0, "123456"),
            (1234567.0, "1.23457e+06"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (96.39583, "96.3958"),
            (-1.65923e8, "-1.65923e+08"),
        ];
        for (x, want) in cases {
            assert_eq!(to_general(x, 6), want, "{x}");
        }
        assert_eq!(to_general(-5.00000008063495e-09, 15), "-5.00000008063495e-09");
        assert_eq!(to_general(1.99999999, 15), "1.99999999");
        assert_eq!(to_general(999999.5, 6), "1e+06");
        assert_eq!(to_general(f64::NAN, 6), "nan");
        assert_eq!(to_general(f64::NEG_INFINITY, 6), "-inf");
    }

    #[test]
    fn pi_as_binary32_twofold() {
        let pi: Twofold<f32> = Twofold::from_f64(std::f64::consts::PI);
        assert_eq!(format(pi, FormatOptions::default()), "3.14159[-8.74228e-08]");
        assert_eq!(pi.to_string(), "3.14159[-8.74228e-08]");
        assert_eq!(Twofold::<f64>::one().to_string(), "1[0]");
    }

    #[test]
    fn hex_literals() {
        assert_eq!(to_hex(1.0f64), "0x1p+0");
        assert_eq!(to_hex(3.0f64), "0x1.8p+1");
        assert_eq!(to_hex(-0.1f64), "-0x1.999999999999ap-4");
        assert_eq!(to_hex(0.1f32), "0x1.99999ap-4");
        assert_eq!(to_hex(5e-324f64), "0x0.0000000000001p-1022");
        assert_eq!(to_hex(f32::from_bits(1)), "0x0.000002p-126");
        assert_eq!(to_hex(-0.0f64), "-0x0p+0");
        assert_eq!(to_hex(f64::INFINITY), "inf");
        assert_eq!(to_hex(f64::NAN), "nan");
        assert_eq!(to_hex(f64::MAX), "0x1.fffffffffffffp+1023");
    }

    #[test]
    fn parse_forms() {
        let x: Twofold<f64> = parse("1.11012 [-0.110123  ]").unwrap();
        assert_eq!(x.value, 1.11012);
        assert_eq!(x.error, -0.110123);
        let y: Twofold<f32> = parse("0x1.99999ap-4[-0x1.99999ap-30]").unwrap();
        assert_eq!(y.value, 0.1f32);
        let n: Twofold<f64> = parse("nan[-inf]").unwrap();
        assert!(n.value.is_nan() && n.error == f64::NEG_INFINITY);
        assert_eq!(parse_dotted::<f64>("0x10p-4").unwrap(), 1.0);
        assert_eq!(parse_dotted::<f64>("0x.8p1").unwrap(), 1.0);
        assert_eq!(parse_dotted::<f64>("-0x0p+0").unwrap().to_bits(), (-0.0f64).to_bits());
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(matches!(parse::<f64>("1.0"), Err(ParseError::Shape(_))));
        assert!(matches!(parse::<f64>("[1]"), Err(ParseError::Shape(_))));
        assert!(matches!(parse::<f64>("1[x]"), Err(ParseError::Number(_))));
        assert!(matches!(parse::<f64>("1[--1]"), Err(ParseError::Number(_))));
        assert!(matches!(
            parse_dotted::<f32>("0x1.000001p+0"),
            Err(ParseError::Inexact(_))
        ));
        assert!(matches!(parse_dotted::<f64>("0x1p+1024"), Err(ParseError::Inexact(_))));
        assert!(matches!(parse_dotted::<f64>("0x1p-1075"), Err(ParseError::Inexact(_))));
        assert!(parse_dotted::<f64>("0xp1").is_err());
    }

    #[test]
    fn nan_payloads_round_trip() {
        for bits in [0xfff8_0000_0000_0000u64, 0x7ff0_0000_0000_0001, 0x7ff8_0000_0000_0000] {
            let x = f64::from_bits(bits);
            let s = to_hex(x);
            assert_eq!(parse_dotted::<f64>(&s).unwrap().to_bits(), bits, "{s}");
        }
        let x = f32::from_bits(0xffc0_0001);
        assert_eq!(parse_dotted::<f32>(&to_hex(x)).unwrap().to_bits(), 0xffc0_0001);
    }
}
