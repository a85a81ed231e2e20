//! Sums and dot products whose value lane is the plain loop and whose
//! error lane recovers the lost digits.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twofold::reduce::{plain_dot, plain_sum};
use twofold::{tdot, tsum, tsum_chunked, Accumulator};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut xs: Vec<f64> = (0..5_000)
        .flat_map(|_| {
            let big = rng.gen_range(1e10..1e12);
            let small: f64 = rng.gen_range(-1.0..1.0);
            [big, small, -big]
        })
        .collect();
    xs.shuffle(&mut rng);
    let exact: f64 = xs.iter().filter(|x| x.abs() < 2.0).sum();

    let s = tsum(&xs);
    println!("plain sum        {:.6e}", plain_sum(&xs));
    println!("tsum             {s:.10}");
    println!("value + error    {:.6e}", s.compensated());
    println!("small terms only {exact:.6e}");
    println!("chunked (8)      {:.10}", tsum_chunked(&xs, 8).unwrap());

    let ys: Vec<f64> = xs.iter().map(|_| 1.0 + rng.gen_range(-1e-9..1e-9)).collect();
    let d = tdot(&xs, &ys).unwrap();
    println!("plain dot        {:.6e}", plain_dot(&xs, &ys).unwrap());
    println!("tdot             {d:.10}");

    let mut acc = Accumulator::new();
    for (&x, &y) in xs.iter().zip(&ys) {
        acc.add_product(x, y);
    }
    assert!(acc.get().bit_eq(&d));
}
