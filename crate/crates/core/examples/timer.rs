//! A timer adding 0.1 s per tick in binary32 drifts by hours over four days.
//! The error lane sees the drift.

use twofold::Twofold;

fn main() {
    let hours = std::env::args()
        .nth(1)
        .and_then(|h| h.parse::<u32>().ok())
        .unwrap_or(100);
    let tick = Twofold::<f32>::from_f64(0.1);
    let mut t = Twofold::<f32>::zero();
    for _ in 0..hours * 36_000 {
        t += tick;
    }
    let h = t / 3600.0;
    println!("tick:   {tick}");
    println!("after {hours} hours of ticks: {h} hours");
    println!("corrected: {} hours", h.compensated());
}
