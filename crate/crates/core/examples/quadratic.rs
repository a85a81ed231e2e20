//! Roots of x^2 + 2x + c: cancellation in the small root, and a
//! discriminant whose sign the error lane disagrees with.

use twofold::lab::{report_emit, run_quadratic, Kind, OutputFormat, QuadraticConfig};

fn main() {
    for c in [1e-8, 1.0 + 1e-8, 1.0 - 1e-8] {
        let reports: Vec<_> = [Kind::Dotted64, Kind::Twofold32, Kind::Twofold64]
            .into_iter()
            .map(|k| {
                run_quadratic(
                    k,
                    QuadraticConfig {
                        c,
                        ..Default::default()
                    },
                )
                .unwrap()
            })
            .collect();
        println!("--- c = {c:e}");
        print!("{}", report_emit(&reports, OutputFormat::Text));
    }
}
