use entropic_witness::geometry::{
    classify, in_octahedron, in_tetrahedron, region_mesh, sample_fractions, RegionLabel,
};
use entropic_witness::{CanonicalBloch, TwoQubitState};

fn grid(n: usize) -> impl Iterator<Item = [f64; 3]> {
    let coord = move |i: usize| -1.0 + 2.0 * i as f64 / (n - 1) as f64;
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| [coord(i), coord(j), coord(k)])))
}

#[test]
fn tetrahedron_is_exactly_the_physical_set() {
    let mut mismatches = Vec::new();
    for v in grid(51) {
        let unphysical = classify(v, [0.0; 3], [0.0; 3]).unwrap() == RegionLabel::Unphysical;
        if unphysical == in_tetrahedron(v) {
            mismatches.push(v);
        }
    }
    assert!(mismatches.is_empty(), "{} mismatches, first {:?}", mismatches.len(), mismatches.first());
}

#[test]
fn octahedron_states_are_separable() {
    for v in grid(31).filter(|&v| in_octahedron(v)) {
        let rho = TwoQubitState::from_canonical(&CanonicalBloch::bell_diagonal(v).unwrap()).unwrap();
        assert!(rho.is_physical(1e-10));
        assert!(rho.concurrence() < 1e-7, "{v:?}");
        assert!(rho.conditional_entropy().unwrap() >= -1e-9, "{v:?}");
    }
}

#[test]
fn labels_are_nested() {
    for (r, s) in [([0.0; 3], [0.0; 3]), ([0.0, 0.0, 0.25], [0.0, 0.0, 0.25]), ([0.1, 0.1, 0.25], [0.1, 0.1, 0.25])] {
        for v in grid(15) {
            let rho = TwoQubitState::from_canonical(&CanonicalBloch::new(r, s, v).unwrap()).unwrap();
            match classify(v, r, s).unwrap() {
                RegionLabel::Unphysical => assert!(!rho.is_physical(1e-10)),
                RegionLabel::PhysicalInO => assert!(rho.average_fidelity() <= 2.0 / 3.0),
                RegionLabel::UsefulTeleport => {
                    assert!(rho.average_fidelity() > 2.0 / 3.0);
                    assert!(rho.conditional_entropy().unwrap() >= 0.0);
                }
                RegionLabel::NegativeCondEntropy => {
                    assert!(rho.average_fidelity() > 2.0 / 3.0);
                    assert!(rho.conditional_entropy().unwrap() < 0.0);
                }
            }
        }
    }
}

/// Sign flips of two coordinates and coordinate permutations map the
/// tetrahedron onto itself.
fn tetrahedral_images(v: [f64; 3]) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for flip in [[1.0, 1.0, 1.0], [-1.0, -1.0, 1.0], [-1.0, 1.0, -1.0], [1.0, -1.0, -1.0]] {
        let w = [v[0] * flip[0], v[1] * flip[1], v[2] * flip[2]];
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            out.push([w[p[0]], w[p[1]], w[p[2]]]);
        }
    }
    out
}

#[test]
fn bell_diagonal_mesh_is_symmetric() {
    let mesh = region_mesh([0.0; 3], [0.0; 3], 21).unwrap();
    let lookup = |v: [f64; 3]| {
        let idx = |x: f64| ((x + 1.0) * 10.0).round() as usize;
        mesh[idx(v[0]) * 441 + idx(v[1]) * 21 + idx(v[2])].label
    };
    // points on the octahedron surface have F_av = 2/3 exactly and are ties
    let on_face = |v: [f64; 3]| (v.iter().map(|x| x.abs()).sum::<f64>() - 1.0).abs() < 1e-9;
    for p in mesh.iter().filter(|p| !on_face(p.v)) {
        for image in tetrahedral_images(p.v) {
            assert_eq!(lookup(image), p.label, "{:?} vs {:?}", p.v, image);
        }
    }
    // negative conditional entropy needs an eigenvalue (1 + c·v)/4 above 1/2,
    // i.e. v in the corner of 𝒯 cut off by c·v = 1 for some vertex c
    let vertices = [[-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0], [-1.0, -1.0, -1.0]];
    let neg: Vec<_> = mesh.iter().filter(|p| p.label == RegionLabel::NegativeCondEntropy).collect();
    assert!(!neg.is_empty());
    for p in neg {
        let corners = vertices
            .iter()
            .filter(|c: &&[f64; 3]| (0..3).map(|k| p.v[k] * c[k]).sum::<f64>() > 1.0)
            .count();
        assert_eq!(corners, 1, "{:?}", p.v);
    }
}

#[test]
fn local_vectors_break_the_symmetry() {
    let r = [0.0, 0.0, 0.25];
    let mesh = region_mesh(r, r, 21).unwrap();
    let asymmetric = mesh.iter().any(|p| {
        tetrahedral_images(p.v).into_iter().any(|w| classify(w, r, r).unwrap() != p.label)
    });
    assert!(asymmetric);
}

#[test]
fn fixed_seed_is_bit_identical() {
    let a = sample_fractions([0.0, 0.0, 0.25], [0.0, 0.0, 0.25], 200_000, 7).unwrap();
    let b = sample_fractions([0.0, 0.0, 0.25], [0.0, 0.0, 0.25], 200_000, 7).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let c = sample_fractions([0.0, 0.0, 0.25], [0.0, 0.0, 0.25], 200_000, 8).unwrap();
    assert_ne!(a.n_physical, c.n_physical);
}

#[test]
fn prefix_of_longer_run_is_consistent() {
    // the first shard of a longer run sees the same samples
    let short = sample_fractions([0.0; 3], [0.0; 3], 65_536, 11).unwrap();
    let long = sample_fractions([0.0; 3], [0.0; 3], 131_072, 11).unwrap();
    assert!(long.n_physical >= short.n_physical);
    assert!(long.n_physical - short.n_physical <= 65_536);
}

#[test]
fn stderr_shrinks_with_sample_size() {
    let a = sample_fractions([0.0; 3], [0.0; 3], 250_000, 3).unwrap();
    let b = sample_fractions([0.0; 3], [0.0; 3], 1_000_000, 3).unwrap();
    let ratio = a.stderr_useful_of_physical / b.stderr_useful_of_physical;
    assert!((ratio - 2.0).abs() < 0.1, "{ratio}");
    // analytic: 𝒯 has twice the volume of 𝒪, and 𝒯 is 1/3 of the cube
    assert!((b.frac_useful_of_physical - 0.5).abs() < 3.0 * b.stderr_useful_of_physical);
    assert!((b.frac_physical - 1.0 / 3.0).abs() < 3.0 * b.stderr_physical);
}

#[test]
fn conditional_fraction_consistency() {
    let f = sample_fractions([0.1, 0.1, 0.25], [0.1, 0.1, 0.25], 100_000, 5).unwrap();
    for x in [f.frac_physical, f.frac_useful_of_physical, f.frac_neg_h_of_physical, f.frac_neg_h_of_useful] {
        assert!((0.0..=1.0).contains(&x));
    }
    assert!((f.frac_neg_h_of_useful - f.frac_neg_h_of_physical / f.frac_useful_of_physical).abs() < 1e-12);
}
