//! Error-free transformations: every rounding error is itself a float.

use twofold::{fast_two_sum, two_diff, two_prod, two_sum};

fn main() {
    let s = two_sum(1.0f64, 2f64.powi(-60));
    println!("1 + 2^-60     = {:e} + {:e}", s.hi, s.lo);

    let d = two_diff(0.3f64, 0.1);
    println!("0.3 - 0.1     = {:e} + {:e}", d.hi, d.lo);

    let p = two_prod(0.1f64, 0.1);
    println!("0.1 * 0.1     = {:e} + {:e}", p.hi, p.lo);

    let f = fast_two_sum(1e16f64, 1.5);
    println!("1e16 + 1.5    = {:e} + {:e}", f.hi, f.lo);

    let p32 = two_prod(0.1f32, 0.1);
    println!("binary32 prod = {:e} + {:e}", p32.hi, p32.lo);
}
