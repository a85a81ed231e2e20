//! Rump's polynomial: every float width agrees on a wrong answer, and the
//! error lane flags it.

use twofold::lab::{rump_polynomial, RumpOrder};
use twofold::Twofold;

fn main() {
    for order in [RumpOrder::Literal, RumpOrder::Grouped] {
        let d: f64 = rump_polynomial(order);
        let t32: Twofold<f32> = rump_polynomial(order);
        let t64: Twofold<f64> = rump_polynomial(order);
        println!("{order:?}");
        println!("  double          {d}");
        println!("  twofold<float>  {t32}");
        println!("  twofold<double> {t64}");
    }
    println!("true value        {:.6}", 77617.0 / 66192.0 - 2.0);
}
