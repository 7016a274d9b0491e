//! Prints per-n counts of square-free connected graphs and the chi > 3 list.
//!
//! cargo run --release -p sicset-core --example census -- 12

use sicset_core::enumeration::{enumerate_square_free_connected, EnumerationOptions};

fn main() {
    let n_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let report = enumerate_square_free_connected(
        EnumerationOptions {
            n_max,
            chi_gt: Some(3),
        },
        |_| {},
    )
    .expect("valid bound");
    for (k, c) in report.counts.iter().enumerate() {
        println!("{} {}", k + 1, c);
    }
    println!("total {}", report.total);
    for s in &report.filtered {
        println!("chi>3 {s}");
    }
    eprintln!("elapsed {:?}", report.elapsed);
}
