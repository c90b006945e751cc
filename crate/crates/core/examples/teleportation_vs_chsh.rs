//! How negative conditional entropy, CHSH violation and teleportation
//! usefulness overlap on random two-qubit states.
//!
//!     cargo run --release --example teleportation_vs_chsh -- [n]

use entropic_witness::sampling::random_state;
use entropic_witness::witness_report;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n: usize = std::env::args().nth(1).map_or(100_000, |a| a.parse().expect("n"));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut useful, mut neg_h, mut chsh, mut both, mut neg_h_useless) = (0, 0, 0, 0, 0);
    for _ in 0..n {
        let r = witness_report(&random_state(&mut rng)).unwrap();
        let is_useful = r.avg_fidelity > 2.0 / 3.0;
        let is_neg = r.cond_entropy < 0.0;
        let violates = r.chsh > 1.0;
        useful += is_useful as usize;
        neg_h += is_neg as usize;
        chsh += violates as usize;
        both += (is_neg && violates) as usize;
        neg_h_useless += (is_neg && !is_useful) as usize;
    }
    let pct = |k: usize| 100.0 * k as f64 / n as f64;
    println!("random states: {n}");
    println!("  useful for teleportation (F_av > 2/3): {:6.2}%", pct(useful));
    println!("  H(A|B) < 0:                            {:6.2}%", pct(neg_h));
    println!("  CHSH violated (M > 1):                 {:6.2}%", pct(chsh));
    println!("  both H(A|B) < 0 and M > 1:             {:6.2}%", pct(both));
    // on Bell-diagonal states this never happens; with local Bloch vectors it can
    println!("  H(A|B) < 0 but F_av <= 2/3:            {:6.3}% ({neg_h_useless})", pct(neg_h_useless));
}
