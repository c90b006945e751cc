//! Quantum-memory-assisted entropic uncertainty: the Berta bound and the
//! tomographic, measurement and Fano estimates of H(R|B) + H(S|B).

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    binary_entropy, eigenvalues4, entropy_from_eigenvalues, hermiticity_defect2, kron, pauli, re,
    shannon_bits, trace4, Mat2, C64, HERMITIAN_TOL,
};
use crate::state::{Subsystem, TwoQubitState};

/// Estimates within this margin of the witness threshold count as not witnessed.
pub const WITNESS_MARGIN: f64 = 1e-9;

/// A nondegenerate single-qubit observable with a cached eigenbasis.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: Mat2,
    eigenvalues: [f64; 2],
    eigenvectors: [Vector2<C64>; 2],
}

impl Observable {
    pub fn new(matrix: Mat2) -> Result<Self> {
        if hermiticity_defect2(&matrix) > HERMITIAN_TOL {
            return Err(Error::domain("observable is not Hermitian"));
        }
        let eig = matrix.symmetric_eigen();
        let (hi, lo) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
        let eigenvalues = [eig.eigenvalues[hi], eig.eigenvalues[lo]];
        let scale = eigenvalues[0].abs().max(eigenvalues[1].abs()).max(1.0);
        if eigenvalues[0] - eigenvalues[1] <= 1e-12 * scale {
            return Err(Error::domain("observable is degenerate"));
        }
        let fix_phase = |v: Vector2<C64>| -> Vector2<C64> {
            // first non-negligible component made real and positive
            let pivot = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
            v * (pivot.conj() / pivot.norm())
        };
        let eigenvectors = [
            fix_phase(eig.eigenvectors.column(hi).into_owned()),
            fix_phase(eig.eigenvectors.column(lo).into_owned()),
        ];
        Ok(Self { matrix, eigenvalues, eigenvectors })
    }

    /// σ₁ with eigenvectors (|1⟩ ± |0⟩)/√2.
    pub fn sigma_x() -> Self {
        let h = re(std::f64::consts::FRAC_1_SQRT_2);
        Self {
            matrix: pauli(1),
            eigenvalues: [1.0, -1.0],
            eigenvectors: [Vector2::new(h, h), Vector2::new(h, -h)],
        }
    }

    /// σ₃ with eigenvectors |1⟩, |0⟩.
    pub fn sigma_z() -> Self {
        Self {
            matrix: pauli(3),
            eigenvalues: [1.0, -1.0],
            eigenvectors: [Vector2::new(re(1.0), re(0.0)), Vector2::new(re(0.0), re(1.0))],
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vector2<C64>; 2] {
        &self.eigenvectors
    }

    pub fn projectors(&self) -> [Mat2; 2] {
        self.eigenvectors.map(|v| v * v.adjoint())
    }
}

/// c = max |⟨ψ_r|φ_s⟩|² over the two eigenbases.
pub fn complementarity(r: &Observable, s: &Observable) -> f64 {
    let mut best = 0.0f64;
    for a in r.eigenvectors() {
        for b in s.eigenvectors() {
            best = best.max(a.dotc(b).norm_sqr());
        }
    }
    best
}

/// Σ_r (Π_r ⊗ I) ρ (Π_r ⊗ I): the classical-quantum state after measuring A.
pub fn postmeasure_cq(rho: &TwoQubitState, x: &Observable) -> TwoQubitState {
    let id = pauli(0);
    let mut out = nalgebra::Matrix4::zeros();
    for p in x.projectors() {
        let k = kron(&p, &id);
        out += k * rho.matrix() * k;
    }
    TwoQubitState::from_raw(out)
}

/// H(X|B) of the post-measurement state, in bits.
pub fn conditional_on_memory(rho: &TwoQubitState, x: &Observable) -> Result<f64> {
    let cq = postmeasure_cq(rho, x);
    let h_cq = entropy_from_eigenvalues(&eigenvalues4(cq.matrix()))?;
    Ok(h_cq - rho.partial_trace(Subsystem::B).entropy()?)
}

/// TE = H(R|B) + H(S|B).
pub fn tomographic_estimate(rho: &TwoQubitState, r: &Observable, s: &Observable) -> Result<f64> {
    Ok(conditional_on_memory(rho, r)? + conditional_on_memory(rho, s)?)
}

/// BB = log₂(1/c) + H(A|B).
pub fn berta_bound(rho: &TwoQubitState, r: &Observable, s: &Observable) -> Result<f64> {
    Ok((1.0 / complementarity(r, s)).log2() + rho.conditional_entropy()?)
}

/// p(a, b) = tr[(Π_a ⊗ Π_b) ρ], the same observable measured on both qubits.
/// Row index is A's outcome, column index B's.
pub fn joint_outcome_distribution(rho: &TwoQubitState, x: &Observable) -> [[f64; 2]; 2] {
    let p = x.projectors();
    let mut table = [[0.0; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            table[a][b] = trace4(&(kron(&p[a], &p[b]) * rho.matrix())).re.max(0.0);
        }
    }
    table
}

fn classical_conditional(table: &[[f64; 2]; 2]) -> f64 {
    let joint = shannon_bits(table.iter().flatten().copied());
    let marginal_b = shannon_bits((0..2).map(|b| table[0][b] + table[1][b]));
    joint - marginal_b
}

fn disagreement(table: &[[f64; 2]; 2]) -> f64 {
    (table[0][1] + table[1][0]).clamp(0.0, 1.0)
}

/// ME = H(R_A|R_B) + H(S_A|S_B) from the same-observable joint tables.
pub fn measurement_estimate(rho: &TwoQubitState, r: &Observable, s: &Observable) -> f64 {
    classical_conditional(&joint_outcome_distribution(rho, r))
        + classical_conditional(&joint_outcome_distribution(rho, s))
}

/// FE = h(p_R) + h(p_S), with p_X the probability the two outcomes differ.
pub fn fano_estimate(rho: &TwoQubitState, r: &Observable, s: &Observable) -> f64 {
    binary_entropy(disagreement(&joint_outcome_distribution(rho, r)))
        + binary_entropy(disagreement(&joint_outcome_distribution(rho, s)))
}

/// One of the four uncertainty quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    Te,
    Me,
    Fe,
    Bb,
}

impl Estimator {
    pub const ALL: [Estimator; 4] = [Estimator::Te, Estimator::Me, Estimator::Fe, Estimator::Bb];

    pub fn name(self) -> &'static str {
        match self {
            Estimator::Te => "te",
            Estimator::Me => "me",
            Estimator::Fe => "fe",
            Estimator::Bb => "bb",
        }
    }

    pub fn of(self, report: &UncertaintyReport) -> f64 {
        match self {
            Estimator::Te => report.te,
            Estimator::Me => report.me,
            Estimator::Fe => report.fe,
            Estimator::Bb => report.bb,
        }
    }

    /// Evaluate only this estimator with (σ₁, σ₃).
    pub fn evaluate(self, rho: &TwoQubitState) -> Result<f64> {
        let (r, s) = (Observable::sigma_x(), Observable::sigma_z());
        match self {
            Estimator::Te => tomographic_estimate(rho, &r, &s),
            Estimator::Me => Ok(measurement_estimate(rho, &r, &s)),
            Estimator::Fe => Ok(fano_estimate(rho, &r, &s)),
            Estimator::Bb => berta_bound(rho, &r, &s),
        }
    }
}

impl std::str::FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "te" => Ok(Estimator::Te),
            "me" => Ok(Estimator::Me),
            "fe" => Ok(Estimator::Fe),
            "bb" => Ok(Estimator::Bb),
            other => Err(Error::domain(format!("unknown estimator '{other}' (te|me|fe|bb)"))),
        }
    }
}

impl std::fmt::Display for Estimator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether each estimate lies strictly below log₂(1/c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnessed {
    pub te: bool,
    pub me: bool,
    pub fe: bool,
    pub bb: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub te: f64,
    pub me: f64,
    pub fe: f64,
    pub bb: f64,
    pub cond_entropy: f64,
    pub concurrence: f64,
    #[serde(rename = "tele_N")]
    pub tele_n: f64,
    pub avg_fidelity: f64,
    pub chsh: f64,
    pub witnessed: Witnessed,
}

/// `estimate < threshold` with the [`WITNESS_MARGIN`] guard.
pub fn is_witnessed(estimate: f64, threshold: f64) -> bool {
    estimate < threshold - WITNESS_MARGIN
}

/// Full report with R = σ₁, S = σ₃ (c = 1/2, threshold 1 bit).
pub fn witness_report(rho: &TwoQubitState) -> Result<UncertaintyReport> {
    witness_report_with(rho, &Observable::sigma_x(), &Observable::sigma_z())
}

pub fn witness_report_with(
    rho: &TwoQubitState,
    r: &Observable,
    s: &Observable,
) -> Result<UncertaintyReport> {
    rho.ensure_physical()?;
    let threshold = (1.0 / complementarity(r, s)).log2();
    let cond_entropy = rho.conditional_entropy()?;
    let te = tomographic_estimate(rho, r, s)?;
    let me = measurement_estimate(rho, r, s);
    let fe = fano_estimate(rho, r, s);
    let bb = threshold + cond_entropy;
    let tele_n = rho.teleportation_n();
    Ok(UncertaintyReport {
        te,
        me,
        fe,
        bb,
        cond_entropy,
        concurrence: rho.concurrence(),
        tele_n,
        avg_fidelity: 0.5 + tele_n / 6.0,
        chsh: rho.chsh_parameter(),
        witnessed: Witnessed {
            te: is_witnessed(te, threshold),
            me: is_witnessed(me, threshold),
            fe: is_witnessed(fe, threshold),
            bb: is_witnessed(bb, threshold),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::state::{BellState, EwlFamily, EwlSpec, SingleQubitState};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn complementarity_examples() {
        let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
        assert!(close(complementarity(&x, &z), 0.5, 1e-15));
        assert!(close(complementarity(&z, &z), 1.0, 1e-15));
        let diag = Observable::new((pauli(1) + pauli(3)) * re(FRAC_1_SQRT_2)).unwrap();
        assert!(close(complementarity(&z, &diag), (PI / 8.0).cos().powi(2), 1e-12));
        assert!(close(complementarity(&z, &diag), 0.853_553, 1e-6));
    }

    #[test]
    fn degenerate_observable_rejected() {
        assert!(matches!(Observable::new(pauli(0)), Err(Error::Domain(_))));
        let mut m = pauli(1);
        m[(0, 1)] = c(1.0, 0.5);
        assert!(Observable::new(m).is_err());
    }

    #[test]
    fn general_observable_matches_fixed_paulis() {
        let x = Observable::new(pauli(1)).unwrap();
        assert_eq!(x.eigenvalues(), [1.0, -1.0]);
        let rho = EwlSpec::new(EwlFamily::Psi, 0.8, 0.6, 0.4).unwrap().state().unwrap();
        let fixed = postmeasure_cq(&rho, &Observable::sigma_x());
        let general = postmeasure_cq(&rho, &x);
        assert!((fixed.matrix() - general.matrix()).norm() < 1e-14);
    }

    #[test]
    fn postmeasure_bell_sigma_z() {
        let bell = TwoQubitState::bell(BellState::PhiPlus);
        let cq = postmeasure_cq(&bell, &Observable::sigma_z());
        let m = cq.matrix();
        assert!(close(m[(0, 0)].re, 0.5, 1e-15) && close(m[(3, 3)].re, 0.5, 1e-15));
        assert!(m[(0, 3)].norm() < 1e-15 && m[(3, 0)].norm() < 1e-15);
        let mixed = postmeasure_cq(&TwoQubitState::maximally_mixed(), &Observable::sigma_x());
        assert!((mixed.matrix() - TwoQubitState::maximally_mixed().matrix()).norm() < 1e-15);
    }

    #[test]
    fn postmeasure_matches_elementwise_projector_sum() {
        let rho = EwlSpec::new(EwlFamily::Psi, 0.8, 0.6, 0.0).unwrap().state().unwrap();
        let x = Observable::sigma_x();
        let cq = postmeasure_cq(&rho, &x);
        // (Π⊗I) ρ (Π⊗I) entry by entry: Π_{ik} ρ_{(k,j),(l,m)} Π_{l n}
        let projs = x.projectors();
        for row in 0..4 {
            for col in 0..4 {
                let (i, j) = (row / 2, row % 2);
                let (n, m) = (col / 2, col % 2);
                let mut acc = c(0.0, 0.0);
                for p in &projs {
                    for k in 0..2 {
                        for l in 0..2 {
                            acc += p[(i, k)] * rho.matrix()[(2 * k + j, 2 * l + m)] * p[(l, n)];
                        }
                    }
                }
                assert!((acc - cq.matrix()[(row, col)]).norm() < 1e-15);
            }
        }
        assert!(close(trace4(cq.matrix()).re, 1.0, 1e-14));
    }

    #[test]
    fn conditional_on_memory_examples() {
        let z = Observable::sigma_z();
        let bell = TwoQubitState::bell(BellState::PhiPlus);
        assert!(close(conditional_on_memory(&bell, &z).unwrap(), 0.0, 1e-12));
        let mixed = TwoQubitState::maximally_mixed();
        assert!(close(conditional_on_memory(&mixed, &z).unwrap(), 1.0, 1e-14));
        let b = SingleQubitState::from_bloch([0.2, 0.3, -0.4]).unwrap();
        let prod = TwoQubitState::product(&SingleQubitState::maximally_mixed(), &b);
        assert!(close(conditional_on_memory(&prod, &Observable::sigma_x()).unwrap(), 1.0, 1e-12));
    }

    #[test]
    fn estimates_for_bell_and_mixed() {
        let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
        let bell = TwoQubitState::bell(BellState::PhiPlus);
        assert!(close(tomographic_estimate(&bell, &x, &z).unwrap(), 0.0, 1e-12));
        assert!(close(berta_bound(&bell, &x, &z).unwrap(), 0.0, 1e-12));
        assert!(close(measurement_estimate(&bell, &x, &z), 0.0, 1e-12));
        assert!(close(fano_estimate(&bell, &x, &z), 0.0, 1e-12));
        let mixed = TwoQubitState::maximally_mixed();
        assert!(close(tomographic_estimate(&mixed, &x, &z).unwrap(), 2.0, 1e-14));
        assert!(close(berta_bound(&mixed, &x, &z).unwrap(), 2.0, 1e-14));
        assert!(close(measurement_estimate(&mixed, &x, &z), 2.0, 1e-14));
        assert!(close(fano_estimate(&mixed, &x, &z), 2.0, 1e-14));
    }

    #[test]
    fn berta_bound_pure_product() {
        let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
        let prod = TwoQubitState::product(&SingleQubitState::ground(), &SingleQubitState::excited());
        assert!(close(berta_bound(&prod, &x, &z).unwrap(), 1.0, 1e-12));
    }

    #[test]
    fn joint_tables() {
        let z = Observable::sigma_z();
        let t = joint_outcome_distribution(&TwoQubitState::bell(BellState::PhiPlus), &z);
        assert!(close(t[0][0], 0.5, 1e-15) && close(t[1][1], 0.5, 1e-15));
        assert!(close(t[0][1], 0.0, 1e-15) && close(t[1][0], 0.0, 1e-15));
        let t = joint_outcome_distribution(&TwoQubitState::maximally_mixed(), &Observable::sigma_x());
        assert!(t.iter().flatten().all(|&p| close(p, 0.25, 1e-15)));
        let phi = EwlSpec::maximally_entangled(EwlFamily::Phi).state().unwrap();
        let t = joint_outcome_distribution(&phi, &z);
        assert!(close(t[0][1], 0.5, 1e-15) && close(t[1][0], 0.5, 1e-15));
        assert!(close(t[0][0], 0.0, 1e-15) && close(t[1][1], 0.0, 1e-15));
    }

    #[test]
    fn fano_for_anticorrelated_state() {
        let phi = EwlSpec::maximally_entangled(EwlFamily::Phi).state().unwrap();
        let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
        assert!(close(disagreement(&joint_outcome_distribution(&phi, &x)), 0.0, 1e-15));
        assert!(close(disagreement(&joint_outcome_distribution(&phi, &z)), 1.0, 1e-15));
        assert!(close(fano_estimate(&phi, &x, &z), 0.0, 1e-12));
    }

    #[test]
    fn report_bell_and_mixed() {
        let r = witness_report(&TwoQubitState::bell(BellState::PhiPlus)).unwrap();
        for v in [r.te, r.me, r.fe, r.bb] {
            assert!(close(v, 0.0, 1e-9));
        }
        assert_eq!(r.witnessed, Witnessed { te: true, me: true, fe: true, bb: true });
        assert!(close(r.concurrence, 1.0, 1e-7));
        let r = witness_report(&TwoQubitState::maximally_mixed()).unwrap();
        for v in [r.te, r.me, r.fe, r.bb] {
            assert!(close(v, 2.0, 1e-12));
        }
        assert_eq!(r.witnessed, Witnessed { te: false, me: false, fe: false, bb: false });
    }

    #[test]
    fn report_json_keys() {
        let r = witness_report(&TwoQubitState::maximally_mixed()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in
            ["te", "me", "fe", "bb", "cond_entropy", "concurrence", "tele_N", "avg_fidelity", "chsh"]
        {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["witnessed"]["te"], serde_json::Value::Bool(false));
    }

    #[test]
    fn estimator_parsing() {
        assert_eq!("ME".parse::<Estimator>().unwrap(), Estimator::Me);
        assert!("xx".parse::<Estimator>().is_err());
    }
}
