//! Throughput of twofold kernels against their plain counterparts.

use twofold::bench::{self, BenchConfig, Kernel, Size, SMALL_BYTES};
use twofold::Width;

fn main() {
    let mut records = Vec::new();
    for kernel in [Kernel::Sum, Kernel::Tsum, Kernel::Dot, Kernel::Tdot] {
        for width in [Width::W32, Width::W64] {
            records.extend(bench::run(&BenchConfig::new(kernel, Size(SMALL_BYTES * 64), width, 1)).unwrap());
        }
    }
    print!("{}", bench::render_table(&records));
}
