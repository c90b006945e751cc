//! Geometry of the correlation vector `v` of canonical states: tetrahedron and
//! octahedron membership, region labels, and Monte Carlo volume fractions.

use std::io::Write;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues4, entropy_from_eigenvalues, kron, pauli, re, Mat4, PSD_TOL};
use crate::state::{CanonicalBloch, SingleQubitState, TwoQubitState};

/// Vertices of the physical tetrahedron for Bell-diagonal states.
pub const TETRAHEDRON_VERTICES: [[f64; 3]; 4] =
    [[-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0], [-1.0, -1.0, -1.0]];

/// Outward facet normals `n` of the tetrahedron; membership is `n·v ≤ 1`
/// for all four. Each facet is the plane through three vertices, opposite
/// the fourth.
const TETRAHEDRON_FACETS: [[f64; 3]; 4] =
    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];

const GEOMETRY_TOL: f64 = 1e-12;

pub fn in_tetrahedron(v: [f64; 3]) -> bool {
    TETRAHEDRON_FACETS
        .iter()
        .all(|n| n[0] * v[0] + n[1] * v[1] + n[2] * v[2] <= 1.0 + GEOMETRY_TOL)
}

pub fn in_octahedron(v: [f64; 3]) -> bool {
    v.iter().map(|x| x.abs()).sum::<f64>() <= 1.0 + GEOMETRY_TOL
}

/// Classification of a canonical state by its correlation vector.
///
/// `NegativeCondEntropy` implies `UsefulTeleport`, which implies physical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionLabel {
    Unphysical,
    /// Physical but F_av ≤ 2/3; for canonical states this is v ∈ 𝒪.
    #[serde(rename = "physical_in_O")]
    PhysicalInO,
    UsefulTeleport,
    NegativeCondEntropy,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::Unphysical => "unphysical",
            RegionLabel::PhysicalInO => "physical_in_O",
            RegionLabel::UsefulTeleport => "useful_teleport",
            RegionLabel::NegativeCondEntropy => "negative_cond_entropy",
        }
    }
}

/// Label the canonical state (r, s, v) through the general state API.
pub fn classify(v: [f64; 3], r: [f64; 3], s: [f64; 3]) -> Result<RegionLabel> {
    let rho = TwoQubitState::from_canonical(&CanonicalBloch::new(r, s, v)?)?;
    if !rho.is_physical(PSD_TOL) {
        return Ok(RegionLabel::Unphysical);
    }
    if rho.average_fidelity() <= 2.0 / 3.0 {
        return Ok(RegionLabel::PhysicalInO);
    }
    if rho.conditional_entropy()? < 0.0 {
        Ok(RegionLabel::NegativeCondEntropy)
    } else {
        Ok(RegionLabel::UsefulTeleport)
    }
}

/// Fast classifier for a fixed (r, s): the local part of the matrix and
/// H(B) do not depend on `v`.
struct CanonicalClassifier {
    base: Mat4,
    correlators: [Mat4; 3],
    h_b: f64,
}

impl CanonicalClassifier {
    fn new(r: [f64; 3], s: [f64; 3]) -> Result<Self> {
        CanonicalBloch::new(r, s, [0.0; 3])?;
        let mut base = kron(&pauli(0), &pauli(0));
        for k in 0..3 {
            base += kron(&pauli(k + 1), &pauli(0)) * re(r[k]);
            base += kron(&pauli(0), &pauli(k + 1)) * re(s[k]);
        }
        let h_b = SingleQubitState::from_bloch(s)?.entropy()?;
        Ok(Self {
            base: base * re(0.25),
            correlators: [1, 2, 3].map(|k| kron(&pauli(k), &pauli(k)) * re(0.25)),
            h_b,
        })
    }

    fn label(&self, v: [f64; 3]) -> RegionLabel {
        let m = self.base
            + self.correlators[0] * re(v[0])
            + self.correlators[1] * re(v[1])
            + self.correlators[2] * re(v[2]);
        let eigs = eigenvalues4(&m);
        if eigs[3] < -PSD_TOL {
            return RegionLabel::Unphysical;
        }
        let n: f64 = v.iter().map(|x| x.abs()).sum();
        if 0.5 + n / 6.0 <= 2.0 / 3.0 {
            return RegionLabel::PhysicalInO;
        }
        let h_ab = entropy_from_eigenvalues(&eigs).expect("checked physical");
        if h_ab - self.h_b < 0.0 {
            RegionLabel::NegativeCondEntropy
        } else {
            RegionLabel::UsefulTeleport
        }
    }
}

/// Monte Carlo estimate of the volume fractions of each region for `v`
/// uniform in [−1, 1]³.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionReport {
    pub n_samples: u64,
    pub seed: u64,
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub n_physical: u64,
    pub n_useful: u64,
    #[serde(rename = "n_negH")]
    pub n_neg_h: u64,
    pub frac_physical: f64,
    pub frac_useful_of_physical: f64,
    #[serde(rename = "frac_negH_of_physical")]
    pub frac_neg_h_of_physical: f64,
    #[serde(rename = "frac_negH_of_useful")]
    pub frac_neg_h_of_useful: f64,
    pub stderr_physical: f64,
    pub stderr_useful_of_physical: f64,
    #[serde(rename = "stderr_negH_of_physical")]
    pub stderr_neg_h_of_physical: f64,
    #[serde(rename = "stderr_negH_of_useful")]
    pub stderr_neg_h_of_useful: f64,
}

pub const MIN_SAMPLES: u64 = 10_000;
const SHARD: u64 = 1 << 16;
/// Each sample consumes three u64 draws, i.e. six 32-bit ChaCha words.
const WORDS_PER_SAMPLE: u128 = 6;

/// Uniform correlation vectors, stream position `index` of the seeded generator.
pub struct CorrelationSampler {
    rng: ChaCha8Rng,
}

impl CorrelationSampler {
    pub fn at(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(index as u128 * WORDS_PER_SAMPLE);
        Self { rng }
    }

    fn coordinate(&mut self) -> f64 {
        let u = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        2.0 * u - 1.0
    }

    pub fn next_vector(&mut self) -> [f64; 3] {
        [self.coordinate(), self.coordinate(), self.coordinate()]
    }
}

#[derive(Clone, Copy, Default)]
struct Counts {
    physical: u64,
    useful: u64,
    negative: u64,
}

impl Counts {
    fn add(self, o: Counts) -> Counts {
        Counts {
            physical: self.physical + o.physical,
            useful: self.useful + o.useful,
            negative: self.negative + o.negative,
        }
    }
}

fn ratio(num: u64, den: u64) -> (f64, f64) {
    if den == 0 {
        return (0.0, 0.0);
    }
    let p = num as f64 / den as f64;
    (p, (p * (1.0 - p) / den as f64).sqrt())
}

/// Sample `n` correlation vectors and tally the region labels.
///
/// Shards of the stream are processed in parallel; each shard seeks to its
/// own offset, so the result is identical to a serial pass.
pub fn sample_fractions(r: [f64; 3], s: [f64; 3], n: u64, seed: u64) -> Result<FractionReport> {
    sample_fractions_with_progress(r, s, n, seed, |_| {})
}

/// As [`sample_fractions`], calling `progress` with the number of completed
/// samples after each shard.
pub fn sample_fractions_with_progress<F>(
    r: [f64; 3],
    s: [f64; 3],
    n: u64,
    seed: u64,
    progress: F,
) -> Result<FractionReport>
where
    F: Fn(u64) + Sync,
{
    if n < MIN_SAMPLES {
        return Err(Error::domain(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    let classifier = CanonicalClassifier::new(r, s)?;
    let done = std::sync::atomic::AtomicU64::new(0);
    let shards = n.div_ceil(SHARD);
    let counts = (0..shards)
        .into_par_iter()
        .map(|k| {
            let start = k * SHARD;
            let len = SHARD.min(n - start);
            let mut sampler = CorrelationSampler::at(seed, start);
            let mut c = Counts::default();
            for _ in 0..len {
                match classifier.label(sampler.next_vector()) {
                    RegionLabel::Unphysical => {}
                    RegionLabel::PhysicalInO => c.physical += 1,
                    RegionLabel::UsefulTeleport => {
                        c.physical += 1;
                        c.useful += 1;
                    }
                    RegionLabel::NegativeCondEntropy => {
                        c.physical += 1;
                        c.useful += 1;
                        c.negative += 1;
                    }
                }
            }
            let total = done.fetch_add(len, std::sync::atomic::Ordering::Relaxed) + len;
            progress(total);
            c
        })
        .reduce(Counts::default, Counts::add);

    let (frac_physical, stderr_physical) = ratio(counts.physical, n);
    let (fu, su) = ratio(counts.useful, counts.physical);
    let (fnp, snp) = ratio(counts.negative, counts.physical);
    let (fnu, snu) = ratio(counts.negative, counts.useful);
    Ok(FractionReport {
        n_samples: n,
        seed,
        r,
        s,
        n_physical: counts.physical,
        n_useful: counts.useful,
        n_neg_h: counts.negative,
        frac_physical,
        frac_useful_of_physical: fu,
        frac_neg_h_of_physical: fnp,
        frac_neg_h_of_useful: fnu,
        stderr_physical,
        stderr_useful_of_physical: su,
        stderr_neg_h_of_physical: snp,
        stderr_neg_h_of_useful: snu,
    })
}

/// One labelled grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshPoint {
    pub v: [f64; 3],
    pub label: RegionLabel,
}

/// Regular `resolution³` grid over [−1, 1]³ with region labels.
pub fn region_mesh(r: [f64; 3], s: [f64; 3], resolution: usize) -> Result<Vec<MeshPoint>> {
    if resolution < 10 {
        return Err(Error::domain(format!("mesh resolution {resolution} below 10")));
    }
    let classifier = CanonicalClassifier::new(r, s)?;
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (resolution - 1) as f64;
    let mut out = Vec::with_capacity(resolution.pow(3));
    for i in 0..resolution {
        for j in 0..resolution {
            for k in 0..resolution {
                let v = [coord(i), coord(j), coord(k)];
                out.push(MeshPoint { v, label: classifier.label(v) });
            }
        }
    }
    Ok(out)
}

/// CSV with header `v1,v2,v3,label`.
pub fn write_mesh_csv<W: Write>(mut w: W, mesh: &[MeshPoint]) -> std::io::Result<()> {
    writeln!(w, "v1,v2,v3,label")?;
    for p in mesh {
        writeln!(w, "{},{},{},{}", p.v[0], p.v[1], p.v[2], p.label.as_str())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn facets_pass_through_vertices() {
        for (f, n) in TETRAHEDRON_FACETS.iter().enumerate() {
            let on_plane = TETRAHEDRON_VERTICES
                .iter()
                .filter(|v| (n[0] * v[0] + n[1] * v[1] + n[2] * v[2] - 1.0).abs() < 1e-15)
                .count();
            assert_eq!(on_plane, 3, "facet {f}");
        }
    }

    #[test]
    fn tetrahedron_membership() {
        assert!(in_tetrahedron([0.0, 0.0, 0.0]));
        for v in TETRAHEDRON_VERTICES {
            assert!(in_tetrahedron(v));
        }
        assert!(!in_tetrahedron([1.0, 1.0, 1.0]));
        assert!(!in_tetrahedron([-1.0, -1.0, 1.0]));
    }

    #[test]
    fn octahedron_membership() {
        assert!(in_octahedron([0.0, 0.0, 0.0]));
        assert!(in_octahedron([1.0, 0.0, 0.0]));
        assert!(in_octahedron([0.0, 0.0, -1.0]));
        assert!(!in_octahedron([0.5, 0.5, 0.5]));
    }

    #[test]
    fn classify_examples() {
        let z = [0.0; 3];
        assert_eq!(classify(z, z, z).unwrap(), RegionLabel::PhysicalInO);
        assert_eq!(classify([-0.99; 3], z, z).unwrap(), RegionLabel::NegativeCondEntropy);
        assert_eq!(classify([1.0; 3], z, z).unwrap(), RegionLabel::Unphysical);
        assert!(classify([1.5, 0.0, 0.0], z, z).is_err());
    }

    #[test]
    fn near_singlet_conditional_entropy_from_spectrum() {
        // ¼(I − 0.99 Σσ⊗σ) has spectrum {0.9925, 0.0025 ×3}; H(B) = 1
        let h = |x: f64| -x * x.log2();
        let expected = h(0.9925) + 3.0 * h(0.0025) - 1.0;
        assert!((expected - (-0.924_391_543_389_661)).abs() < 1e-12);
        let rho = TwoQubitState::from_canonical(&CanonicalBloch::bell_diagonal([-0.99; 3]).unwrap())
            .unwrap();
        assert!((rho.conditional_entropy().unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn fast_classifier_agrees_with_state_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (r, s) in [([0.0; 3], [0.0; 3]), ([0.0, 0.0, 0.25], [0.0, 0.0, 0.25]), ([0.1, 0.1, 0.25], [0.1, 0.1, 0.25])]
        {
            let fast = CanonicalClassifier::new(r, s).unwrap();
            for _ in 0..2000 {
                let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
                assert_eq!(fast.label(v), classify(v, r, s).unwrap(), "v={v:?}");
            }
        }
    }

    #[test]
    fn sampler_seek_matches_serial_stream() {
        let mut serial = CorrelationSampler::at(9, 0);
        let draws: Vec<_> = (0..40).map(|_| serial.next_vector()).collect();
        let mut jumped = CorrelationSampler::at(9, 25);
        assert_eq!(jumped.next_vector(), draws[25]);
        assert!(draws.iter().flatten().all(|x| (-1.0..1.0).contains(x)));
    }

    #[test]
    fn too_few_samples_rejected() {
        assert!(sample_fractions([0.0; 3], [0.0; 3], 1000, 1).is_err());
    }

    #[test]
    fn mesh_requires_resolution() {
        assert!(region_mesh([0.0; 3], [0.0; 3], 5).is_err());
        let mesh = region_mesh([0.0; 3], [0.0; 3], 11).unwrap();
        assert_eq!(mesh.len(), 1331);
        let mut buf = Vec::new();
        write_mesh_csv(&mut buf, &mesh[..2]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("v1,v2,v3,label\n-1,-1,-1,negative_cond_entropy\n"));
    }
}
