//! Twofold arithmetic: the value lane is exactly what plain floats compute,
//! the error lane estimates what they got wrong.

use twofold::{tdiv, tmul0, tsqrt, Twofold};

fn main() {
    let x = Twofold::<f64>::from(0.1);
    let y = x + 0.2;
    println!("0.1 + 0.2      = {y:.17}");
    println!("plain          = {:.17}", 0.1 + 0.2);

    let sq = tmul0(1.0 + f64::EPSILON, 1.0 + f64::EPSILON);
    println!("(1+eps)^2      = {sq:.17}");

    let third = tdiv(Twofold::<f64>::from(1.0), Twofold::from(3.0));
    println!("1/3            = {third:.17}");
    println!("sqrt(2)        = {:.17}", tsqrt(Twofold::<f64>::from(2.0)));

    // mixed widths promote to binary64; the float lane knows it is not 0.1
    let a = Twofold::<f32>::from_f64(0.1);
    let b = Twofold::<f64>::from(0.1);
    println!("0.1f + 0.1     = {:.17}", a + b);

    let mut acc = Twofold::<f32>::zero();
    for _ in 0..1000 {
        acc += 0.01;
    }
    println!("1000 x 0.01f   = {acc}  (value lane {})", acc.value);
}
