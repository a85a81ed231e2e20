//! Coupled numbers keep |error| <= ulp(value)/2, giving double-length
//! arithmetic with the value lane as the leading part.

use twofold::{padd, pdiv, pmul, psqrt, renormalize, tadd0, Coupled, Twofold};

fn main() {
    let loose = Twofold::new(1.0f64, 1.0);
    let c = renormalize(loose);
    println!("renormalize(1[1])  = {c}");

    let third = pdiv(Coupled::exact(1.0f64), Coupled::exact(3.0));
    let back = pmul(third, Coupled::exact(3.0));
    println!("1/3 * 3            = {back:.17}");

    let two = psqrt(Coupled::exact(2.0f64));
    let sq = pmul(two, two);
    println!("sqrt(2)^2          = {sq:.17}");

    let tiny = padd(Coupled::exact(1e16f64), Coupled::exact(1.0));
    println!("1e16 + 1           = {tiny:.17}");

    // a coupled value is always a valid twofold
    let t: Twofold<f64> = third.into();
    println!("as twofold         = {t:#}");
    println!("tadd0(1, 2^-60)    = {:#}", tadd0(1.0f64, 2f64.powi(-60)));
}
