//! Monte Carlo volume fractions of the correlation-vector regions.
//!
//!     cargo run --release --example volume_fractions -- [n] [seed]

use entropic_witness::geometry::sample_fractions;

fn main() {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(1_000_000, |a| a.parse().expect("n"));
    let seed: u64 = args.next().map_or(42, |a| a.parse().expect("seed"));

    println!("{:<18} {:>10} {:>16} {:>16} {:>16}", "r = s", "physical", "useful|physical", "negH|physical", "negH|useful");
    for local in [[0.0, 0.0, 0.0], [0.0, 0.0, 0.25], [0.1, 0.1, 0.25]] {
        let f = sample_fractions(local, local, n, seed).unwrap();
        println!(
            "{:<18} {:>10.5} {:>9.5}±{:.5} {:>9.5}±{:.5} {:>9.5}±{:.5}",
            format!("{local:?}"),
            f.frac_physical,
            f.frac_useful_of_physical,
            f.stderr_useful_of_physical,
            f.frac_neg_h_of_physical,
            f.stderr_neg_h_of_physical,
            f.frac_neg_h_of_useful,
            f.stderr_neg_h_of_useful,
        );
    }
}
