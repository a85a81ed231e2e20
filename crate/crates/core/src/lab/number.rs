use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::coupled::{self, Coupled};
use crate::dotted::{Dotted, Width};
use crate::shape::Shape;
use crate::twofold::{self, Twofold};

/// The six number kinds every scenario runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dotted32,
    Dotted64,
    Twofold32,
    Twofold64,
    Coupled32,
    Coupled64,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Dotted32,
        Kind::Dotted64,
        Kind::Twofold32,
        Kind::Twofold64,
        Kind::Coupled32,
        Kind::Coupled64,
    ];

    pub fn width(self) -> Width {
        match self {
            Kind::Dotted32 | Kind::Twofold32 | Kind::Coupled32 => Width::W32,
            Kind::Dotted64 | Kind::Twofold64 | Kind::Coupled64 => Width::W64,
        }
    }

    pub fn shape(self) -> Shape {
        match self {
            Kind::Dotted32 | Kind::Dotted64 => Shape::Dotted,
            Kind::Twofold32 | Kind::Twofold64 => Shape::Twofold,
            Kind::Coupled32 | Kind::Coupled64 => Shape::Coupled,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Dotted32 => "dotted32",
            Kind::Dotted64 => "dotted64",
            Kind::Twofold32 => "twofold32",
            Kind::Twofold64 => "twofold64",
            Kind::Coupled32 => "coupled32",
            Kind::Coupled64 => "coupled64",
        }
    }

    /// C++-style type name used in text logs, e.g. `twofold<float>`.
    pub fn type_name(self) -> &'static str {
        match self {
            Kind::Dotted32 => "float",
            Kind::Dotted64 => "double",
            Kind::Twofold32 => "twofold<float>",
            Kind::Twofold64 => "twofold<double>",
            Kind::Coupled32 => "coupled<float>",
            Kind::Coupled64 => "coupled<double>",
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Arithmetic shared by all six kinds, so one scenario or solver body
/// serves every kind. Each kind uses its own semantics: dotted is plain
/// IEEE, twofold uses the `t` operations, coupled the `p` operations.
pub trait LabNumber: Copy + Debug {
    type Dotted: Dotted;
    const KIND: Kind;

    /// Round a binary64 number into this kind (twofolds keep the residual).
    fn from_f64(x: f64) -> Self;
    /// Build from lanes; dotted kinds drop the error lane.
    fn from_lanes(value: Self::Dotted, error: Self::Dotted) -> Self;
    fn value(self) -> Self::Dotted;
    /// Zero for dotted kinds.
    fn error(self) -> Self::Dotted;

    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn div(self, rhs: Self) -> Self;
    fn sqrt(self) -> Self;
    fn neg(self) -> Self;
    fn abs(self) -> Self;
    /// The kind's own `<`.
    fn lt(self, rhs: Self) -> bool;
    fn is_zero(self) -> bool;

    /// Correctly rounded `p / q` for integers exactly representable in the
    /// dotted width: the error lane holds the rounded remainder.
    fn ratio(p: i64, q: i64) -> Self {
        let t = twofold::tdiv0(Self::Dotted::from_f64(p as f64), Self::Dotted::from_f64(q as f64));
        Self::from_lanes(t.value, t.error)
    }

    /// Same number with the error lane zeroed.
    fn truncate(self) -> Self {
        Self::from_lanes(self.value(), Self::Dotted::ZERO)
    }
}

macro_rules! dotted_kind {
    ($t:ty, $kind:expr) => {
        impl LabNumber for $t {
            type Dotted = $t;
            const KIND: Kind = $kind;

            fn from_f64(x: f64) -> Self {
                <$t as Dotted>::from_f64(x)
            }
            fn from_lanes(value: $t, _error: $t) -> Self {
                value
            }
            fn value(self) -> $t {
                self
            }
            fn error(self) -> $t {
                0.0
            }
            fn add(self, rhs: Self) -> Self {
                self + rhs
            }
            fn sub(self, rhs: Self) -> Self {
                self - rhs
            }
            fn mul(self, rhs: Self) -> Self {
                self * rhs
            }
            fn div(self, rhs: Self) -> Self {
                self / rhs
            }
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            fn neg(self) -> Self {
                -self
            }
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
            fn lt(self, rhs: Self) -> bool {
                self < rhs
            }
            fn is_zero(self) -> bool {
                self == 0.0
            }
        }
    };
}

dotted_kind!(f32, Kind::Dotted32);
dotted_kind!(f64, Kind::Dotted64);

macro_rules! twofold_kind {
    ($t:ty, $kind:expr) => {
        impl LabNumber for Twofold<$t> {
            type Dotted = $t;
            const KIND: Kind = $kind;

            fn from_f64(x: f64) -> Self {
                Twofold::from_f64(x)
            }
            fn from_lanes(value: $t, error: $t) -> Self {
                Twofold::new(value, error)
            }
            fn value(self) -> $t {
                self.value
            }
            fn error(self) -> $t {
                self.error
            }
            fn add(self, rhs: Self) -> Self {
                twofold::tadd(self, rhs)
            }
            fn sub(self, rhs: Self) -> Self {
                twofold::tsub(self, rhs)
            }
            fn mul(self, rhs: Self) -> Self {
                twofold::tmul(self, rhs)
            }
            fn div(self, rhs: Self) -> Self {
                twofold::tdiv(self, rhs)
            }
            fn sqrt(self) -> Self {
                twofold::tsqrt(self)
            }
            fn neg(self) -> Self {
                twofold::tneg(self)
            }
            fn abs(self) -> Self {
                twofold::tabs(self)
            }
            fn lt(self, rhs: Self) -> bool {
                twofold::tlt(self, rhs)
            }
            fn is_zero(self) -> bool {
                twofold::teq(self, 0.0)
            }
        }
    };
}

twofold_kind!(f32, Kind::Twofold32);
twofold_kind!(f64, Kind::Twofold64);

macro_rules! coupled_kind {
    ($t:ty, $kind:expr) => {
        impl LabNumber for Coupled<$t> {
            type Dotted = $t;
            const KIND: Kind = $kind;

            fn from_f64(x: f64) -> Self {
                Coupled::from_f64(x)
            }
            /// Renormalizes.
            fn from_lanes(value: $t, error: $t) -> Self {
                coupled::renormalize(Twofold::new(value, error))
            }
            fn value(self) -> $t {
                Coupled::value(&self)
            }
            fn error(self) -> $t {
                Coupled::error(&self)
            }
            fn add(self, rhs: Self) -> Self {
                coupled::padd(self, rhs)
            }
            fn sub(self, rhs: Self) -> Self {
                coupled::psub(self, rhs)
            }
            fn mul(self, rhs: Self) -> Self {
                coupled::pmul(self, rhs)
            }
            fn div(self, rhs: Self) -> Self {
                coupled::pdiv(self, rhs)
            }
            fn sqrt(self) -> Self {
                coupled::psqrt(self)
            }
            fn neg(self) -> Self {
                coupled::pneg(self)
            }
            fn abs(self) -> Self {
                coupled::pabs(self)
            }
            fn lt(self, rhs: Self) -> bool {
                coupled::plt(self, rhs)
            }
            fn is_zero(self) -> bool {
                coupled::peq(self, Coupled::exact(0.0))
            }
        }
    };
}

coupled_kind!(f32, Kind::Coupled32);
coupled_kind!(f64, Kind::Coupled64);
