//! Orthogonal-representation search in d = 3 for the eight square-free
//! 13-vertex graphs with chromatic number 4.
//!
//! `cargo run --release -p sicset-core --example realize_thirteen -- [restarts] [field]`

use sicset_core::graph::parse_graph6;
use sicset_core::realize::{realization_runs, Field, RealizationStatus, RealizeOptions};

const GRAPHS: [&str; 8] = [
    "L?AEB?oDDIQSUS",
    "L?AEB?oFDHISPS",
    "L?ABA_oo_iREJa",
    "L?ABAagF@bWgHc",
    "L?ABEagE`gH``c",
    "L?AB?vOLDPHa`o",
    "L?BDA_gEREHcac",
    "L?`D@bCUCbDgWc",
];

fn main() {
    let mut args = std::env::args().skip(1);
    let restarts: usize = args
        .next()
        .map_or(200, |s| s.parse().expect("restart count"));
    let field = match args.next().as_deref() {
        Some("complex") => Field::Complex,
        _ => Field::Real,
    };
    println!("graph found degenerate failed min_residual median_residual");
    for s in GRAPHS {
        let g = parse_graph6(s).expect("valid graph6");
        let mut opts = RealizeOptions::new(3, field);
        opts.restarts = restarts;
        let runs = realization_runs(&g, &opts).expect("valid options");
        let count = |st| runs.iter().filter(|r| r.status == st).count();
        let mut residuals: Vec<f64> = runs.iter().map(|r| r.residual).collect();
        residuals.sort_by(f64::total_cmp);
        println!(
            "{s} {} {} {} {:.3e} {:.3e}",
            count(RealizationStatus::Found),
            count(RealizationStatus::Degenerate),
            count(RealizationStatus::Failed),
            residuals[0],
            residuals[residuals.len() / 2]
        );
    }
}
