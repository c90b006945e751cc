//! Labelled grid of correlation vectors, as CSV on stdout.
//!
//!     cargo run --example region_mesh -- 0.1,0.1,0.25 > mesh.csv

use entropic_witness::geometry::{region_mesh, write_mesh_csv, RegionLabel};
use entropic_witness::harness::parse_vector;

fn main() {
    let local = std::env::args().nth(1).map_or([0.0; 3], |a| parse_vector(&a).unwrap());
    let mesh = region_mesh(local, local, 21).unwrap();
    let count = |l| mesh.iter().filter(|p| p.label == l).count();
    eprintln!(
        "r = s = {local:?}: {} unphysical, {} in O, {} useful, {} with H(A|B) < 0",
        count(RegionLabel::Unphysical),
        count(RegionLabel::PhysicalInO),
        count(RegionLabel::UsefulTeleport),
        count(RegionLabel::NegativeCondEntropy),
    );
    write_mesh_csv(std::io::stdout().lock(), &mesh).unwrap();
}
