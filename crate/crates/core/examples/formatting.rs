//! Printing and parsing `value[error]` text.

use twofold::format::{format, parse, FormatOptions};
use twofold::Twofold;

fn main() {
    let pi = Twofold::<f32>::from_f64(std::f64::consts::PI);
    println!("pi as twofold<float>  {pi}");
    println!("with 9 digits         {pi:.9}");
    println!("hex                   {pi:#}");

    let text = format(pi, FormatOptions::hex());
    let back: Twofold<f32> = parse(&text).unwrap();
    assert!(back.bit_eq(&pi));

    for s in ["1.5[2e-17]", "0x1.8p+0[-0x1p-60]", "nan[inf]", "-0[0]", "2.5"] {
        match s.parse::<Twofold<f64>>() {
            Ok(x) => println!("{s:<22}-> {x:#}"),
            Err(e) => println!("{s:<22}-> error: {e}"),
        }
    }
    println!("{:?}", "1.0[2".parse::<Twofold<f64>>());
}
