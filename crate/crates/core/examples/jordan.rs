//! Pivoted LU on a 5x5 Jordan cell with a small eigenvalue. The error lanes
//! of the solution show how much of it is noise.

use twofold::lab::{jordan_system, lu_solve, JordanConfig, JordanVariant, LabNumber};
use twofold::{Coupled, Twofold};

fn solve<K: LabNumber + std::fmt::Display>(label: &str, variant: JordanVariant) {
    let config = JordanConfig {
        variant,
        ..Default::default()
    };
    let (a, f) = jordan_system::<K>(config);
    let x = lu_solve(&a, &f).unwrap();
    let shown: Vec<String> = x.iter().map(|xi| format!("{xi}")).collect();
    println!("{label:<16} {variant:?}: {}", shown.join("  "));
}

fn main() {
    for variant in [
        JordanVariant::Integer,
        JordanVariant::Normalized,
        JordanVariant::Truncated,
    ] {
        solve::<f64>("double", variant);
        solve::<Twofold<f32>>("twofold<float>", variant);
        solve::<Twofold<f64>>("twofold<double>", variant);
        solve::<Coupled<f64>>("coupled<double>", variant);
    }
}
