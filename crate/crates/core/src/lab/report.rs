use std::fmt::Write as _;

use serde::Serialize;

use super::number::{Kind, LabNumber};
use crate::dotted::Dotted;
use crate::format::{format_dotted, FormatOptions};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", content = "bound", rename_all = "lowercase")]
pub enum Tolerance {
    /// Bitwise equal, or both NaN.
    Exact,
    Relative(f64),
    Absolute(f64),
    Ignore,
}

impl Tolerance {
    fn accepts(self, got: f64, want: f64) -> bool {
        match self {
            Tolerance::Ignore => true,
            _ if want.is_nan() => got.is_nan(),
            Tolerance::Exact => got.to_bits() == want.to_bits(),
            Tolerance::Relative(r) => (got - want).abs() <= r * want.abs(),
            Tolerance::Absolute(a) => (got - want).abs() <= a,
        }
    }

    fn describe(self) -> String {
        match self {
            Tolerance::Exact => "exact".into(),
            Tolerance::Relative(r) => format!("rel {r:e}"),
            Tolerance::Absolute(a) => format!("abs {a:e}"),
            Tolerance::Ignore => "any".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Expectation {
    pub value: f64,
    pub error: f64,
    pub value_tolerance: Tolerance,
    pub error_tolerance: Tolerance,
}

impl Expectation {
    pub fn new(value: f64, error: f64, value_tolerance: Tolerance, error_tolerance: Tolerance) -> Self {
        Self {
            value,
            error,
            value_tolerance,
            error_tolerance,
        }
    }

    pub fn value_only(value: f64, tolerance: Tolerance) -> Self {
        Self::new(value, 0.0, tolerance, Tolerance::Ignore)
    }

    pub fn check(&self, value: f64, error: f64) -> bool {
        self.value_tolerance.accepts(value, self.value) && self.error_tolerance.accepts(error, self.error)
    }

    fn describe(&self) -> String {
        let d = |x: f64| format_dotted(x, FormatOptions::default());
        match self.error_tolerance {
            Tolerance::Ignore => format!("{} ({})", d(self.value), self.value_tolerance.describe()),
            e => format!(
                "{}[{}] ({}, {})",
                d(self.value),
                d(self.error),
                self.value_tolerance.describe(),
                e.describe()
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unchecked,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
    pub error: f64,
    pub value_hex: String,
    pub error_hex: String,
    pub value_dec: String,
    pub error_dec: String,
    /// Dotted kinds print the value alone.
    pub has_error: bool,
    pub suffix: String,
    pub expected: Option<Expectation>,
    pub verdict: Verdict,
}

impl Quantity {
    pub fn new<K: LabNumber>(name: &str, x: K, digits: usize) -> Self {
        let (v, e) = (x.value(), x.error());
        let dec = FormatOptions::digits(digits);
        Self {
            name: name.to_string(),
            value: v.to_f64(),
            error: e.to_f64(),
            value_hex: format_dotted(v, FormatOptions::hex()),
            error_hex: format_dotted(e, FormatOptions::hex()),
            value_dec: format_dotted(v, dec),
            error_dec: format_dotted(e, dec),
            has_error: K::KIND.shape() != crate::shape::Shape::Dotted,
            suffix: String::new(),
            expected: None,
            verdict: Verdict::Unchecked,
        }
    }

    pub fn with_suffix(mut self, suffix: &str) -> Self {
        self.suffix = suffix.to_string();
        self
    }

    pub fn expect(mut self, expectation: Expectation) -> Self {
        self.verdict = if expectation.check(self.value, self.error) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.expected = Some(expectation);
        self
    }

    pub fn expect_if(self, expectation: Option<Expectation>) -> Self {
        match expectation {
            Some(e) => self.expect(e),
            None => self,
        }
    }

    fn text(&self) -> String {
        if self.has_error {
            format!("{}[{}]", self.value_dec, self.error_dec)
        } else {
            self.value_dec.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioReport {
    pub scenario: String,
    pub kind: Kind,
    pub header: Vec<String>,
    /// Heading above indented quantities, e.g. `parameters:`.
    pub section: Option<String>,
    pub quantities: Vec<Quantity>,
    pub footer: Vec<String>,
}

impl ScenarioReport {
    pub fn new(scenario: &str, kind: Kind) -> Self {
        Self {
            scenario: scenario.to_string(),
            kind,
            header: Vec::new(),
            section: None,
            quantities: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn quantity(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.name == name)
    }

    pub fn passed(&self) -> bool {
        self.quantities.iter().all(|q| q.verdict != Verdict::Fail)
    }
}

#[derive(Serialize)]
struct Record<'a> {
    scenario: &'a str,
    kind: Kind,
    name: &'a str,
    value_hex: &'a str,
    error_hex: &'a str,
    value_dec: &'a str,
    error_dec: &'a str,
    expected: Option<String>,
    verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Records,
}

/// Render reports as a text log or as JSON lines, one per quantity.
pub fn report_emit(reports: &[ScenarioReport], format: OutputFormat) -> String {
    let mut out = String::new();
    for r in reports {
        match format {
            OutputFormat::Text => {
                for line in &r.header {
                    let _ = writeln!(out, "{line}");
                }
                let indent = match &r.section {
                    Some(s) => {
                        let _ = writeln!(out, "{s}");
                        "  "
                    }
                    None => "",
                };
                for q in &r.quantities {
                    let mark = match q.verdict {
                        Verdict::Fail => "  <- FAIL",
                        _ => "",
                    };
                    let _ = writeln!(out, "{indent}{}: {}{}{mark}", q.name, q.text(), q.suffix);
                }
                for line in &r.footer {
                    let _ = writeln!(out, "{line}");
                }
            }
            OutputFormat::Records => {
                for q in &r.quantities {
                    let rec = Record {
                        scenario: &r.scenario,
                        kind: r.kind,
                        name: &q.name,
                        value_hex: &q.value_hex,
                        error_hex: &q.error_hex,
                        value_dec: &q.value_dec,
                        error_dec: &q.error_dec,
                        expected: q.expected.as_ref().map(Expectation::describe),
                        verdict: q.verdict,
                    };
                    let line = serde_json::to_string(&rec).expect("record serializes");
                    let _ = writeln!(out, "{line}");
                }
            }
        }
    }
    out
}

/// Helper for golden values quoted at a given number of significant digits.
pub fn digits_tolerance(digits: u32) -> Tolerance {
    Tolerance::Relative(10f64.powi(1 - digits as i32))
}
