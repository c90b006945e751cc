//! Two-qubit density matrices and the quantities derived from them.
//!
//! All matrices use the basis ordering {|11⟩, |10⟩, |01⟩, |00⟩}, so that
//! entry (0, 0) is the doubly excited population and entry (0, 3) is the
//! |11⟩⟨00| coherence. Pauli matrices take their textbook form in this
//! ordering (σ₃|1⟩ = |1⟩).

use nalgebra::{DMatrix, Matrix3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, c, eigenvalues2, eigenvalues4, entropy_from_eigenvalues, hermiticity_defect2,
    hermiticity_defect4, kron, pauli, re, trace4, Mat2, Mat4, C64, HERMITIAN_TOL, PSD_TOL,
    TRACE_TOL,
};

/// Which qubit to keep in a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// A 2×2 density matrix in the {|1⟩, |0⟩} basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleQubitState {
    matrix: Mat2,
}

impl SingleQubitState {
    pub fn new(matrix: Mat2) -> Result<Self> {
        if hermiticity_defect2(&matrix) > HERMITIAN_TOL {
            return Err(Error::domain("single-qubit matrix is not Hermitian"));
        }
        let tr = matrix[(0, 0)] + matrix[(1, 1)];
        if (tr - re(1.0)).norm() > TRACE_TOL {
            return Err(Error::domain(format!("single-qubit trace is {tr}, expected 1")));
        }
        let state = Self { matrix };
        let min = state.eigenvalues()[1];
        if min < -PSD_TOL {
            return Err(Error::Unphysical { min_eigenvalue: min });
        }
        Ok(state)
    }

    pub(crate) fn from_raw(matrix: Mat2) -> Self {
        Self { matrix }
    }

    /// State with Bloch vector `b` (|b| ≤ 1).
    pub fn from_bloch(b: [f64; 3]) -> Result<Self> {
        let m = (pauli(0) + pauli(1) * re(b[0]) + pauli(2) * re(b[1]) + pauli(3) * re(b[2]))
            * re(0.5);
        Self::new(m)
    }

    pub fn maximally_mixed() -> Self {
        Self { matrix: pauli(0) * re(0.5) }
    }

    /// |1⟩⟨1|, the excited state.
    pub fn excited() -> Self {
        Self { matrix: Mat2::new(re(1.0), re(0.0), re(0.0), re(0.0)) }
    }

    /// |0⟩⟨0|, the ground state.
    pub fn ground() -> Self {
        Self { matrix: Mat2::new(re(0.0), re(0.0), re(0.0), re(1.0)) }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    /// Descending eigenvalues.
    pub fn eigenvalues(&self) -> [f64; 2] {
        eigenvalues2(&self.matrix)
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> Result<f64> {
        entropy_from_eigenvalues(&self.eigenvalues())
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let m = &self.matrix;
        [
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ]
    }
}

/// A two-qubit operator that is Hermitian with unit trace.
///
/// [`TwoQubitState::new`] additionally enforces positivity. Operators built
/// with [`TwoQubitState::from_hermitian`] or [`TwoQubitState::from_canonical`]
/// may be unphysical; use [`TwoQubitState::is_physical`] before treating them
/// as states. Entropy-based quantities return [`Error::Unphysical`] for them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct TwoQubitState {
    matrix: Mat4,
}

/// Wire format `{"re": [[..4..]; 4], "im": [[..4..]; 4]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub re: [[f64; 4]; 4],
    pub im: [[f64; 4]; 4],
}

impl TryFrom<StateJson> for TwoQubitState {
    type Error = Error;

    fn try_from(j: StateJson) -> Result<Self> {
        TwoQubitState::from_hermitian(Mat4::from_fn(|r, col| c(j.re[r][col], j.im[r][col])))
    }
}

impl From<TwoQubitState> for StateJson {
    fn from(s: TwoQubitState) -> Self {
        let mut out = StateJson { re: [[0.0; 4]; 4], im: [[0.0; 4]; 4] };
        for r in 0..4 {
            for col in 0..4 {
                out.re[r][col] = s.matrix[(r, col)].re;
                out.im[r][col] = s.matrix[(r, col)].im;
            }
        }
        out
    }
}

/// The four Bell states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellState {
    /// (|00⟩ + |11⟩)/√2
    PhiPlus,
    /// (|00⟩ − |11⟩)/√2
    PhiMinus,
    /// (|01⟩ + |10⟩)/√2
    PsiPlus,
    /// (|01⟩ − |10⟩)/√2, the singlet
    PsiMinus,
}

impl TwoQubitState {
    /// Validated density matrix: Hermitian, unit trace, PSD.
    pub fn new(matrix: Mat4) -> Result<Self> {
        let state = Self::from_hermitian(matrix)?;
        state.ensure_physical()?;
        Ok(state)
    }

    /// Hermitian unit-trace operator without the positivity check.
    pub fn from_hermitian(matrix: Mat4) -> Result<Self> {
        let defect = hermiticity_defect4(&matrix);
        if defect > HERMITIAN_TOL {
            return Err(Error::domain(format!("matrix is not Hermitian (defect {defect:.3e})")));
        }
        let tr = trace4(&matrix);
        if (tr - re(1.0)).norm() > TRACE_TOL {
            return Err(Error::domain(format!("trace is {tr}, expected 1")));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_raw(matrix: Mat4) -> Self {
        Self { matrix }
    }

    pub fn maximally_mixed() -> Self {
        Self { matrix: Mat4::identity() * re(0.25) }
    }

    /// Projector onto a (normalised) pure state with amplitudes in basis order.
    pub fn from_pure(amplitudes: [C64; 4]) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::domain("pure state amplitudes must be nonzero and finite"));
        }
        let psi = nalgebra::Vector4::from_iterator(amplitudes.iter().map(|a| a / norm));
        Ok(Self { matrix: psi * psi.adjoint() })
    }

    pub fn bell(which: BellState) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = re(0.0);
        // basis order: |11⟩, |10⟩, |01⟩, |00⟩
        let amps = match which {
            BellState::PhiPlus => [re(h), z, z, re(h)],
            BellState::PhiMinus => [re(-h), z, z, re(h)],
            BellState::PsiPlus => [z, re(h), re(h), z],
            BellState::PsiMinus => [z, re(-h), re(h), z],
        };
        Self::from_pure(amps).expect("Bell amplitudes are normalised")
    }

    pub fn product(a: &SingleQubitState, b: &SingleQubitState) -> Self {
        Self { matrix: kron(a.matrix(), b.matrix()) }
    }

    /// Canonical Bloch form with diagonal correlations. No positivity
    /// guarantee: check [`TwoQubitState::is_physical`].
    pub fn from_canonical(canon: &CanonicalBloch) -> Result<Self> {
        canon.validate()?;
        Ok(Self::from_raw(canonical_matrix(&canon.r, &canon.s, &canon.v)))
    }

    /// Reassemble the operator from its Bloch decomposition.
    pub fn from_bloch(b: &BlochDecomposition) -> Result<Self> {
        let mut m = kron(&pauli(0), &pauli(0));
        for i in 0..3 {
            m += kron(&pauli(i + 1), &pauli(0)) * re(b.x[i]);
            m += kron(&pauli(0), &pauli(i + 1)) * re(b.y[i]);
            for j in 0..3 {
                m += kron(&pauli(i + 1), &pauli(j + 1)) * re(b.t[i][j]);
            }
        }
        Self::from_hermitian(m * re(0.25))
    }

    /// Extended Werner-like state `r|Ξ⟩⟨Ξ| + (1 − r) I/4`.
    pub fn ewl(spec: &EwlSpec) -> Result<Self> {
        spec.validate()?;
        let a = spec.alpha;
        let b = C64::from_polar((1.0 - a * a).max(0.0).sqrt(), spec.theta);
        let z = re(0.0);
        let amps = match spec.family {
            // α|00⟩ + e^{iθ}√(1−α²)|11⟩
            EwlFamily::Psi => [b, z, z, re(a)],
            // α|10⟩ + e^{iθ}√(1−α²)|01⟩
            EwlFamily::Phi => [z, re(a), b, z],
        };
        let pure = Self::from_pure(amps)?;
        let m = pure.matrix * re(spec.purity) + Mat4::identity() * re((1.0 - spec.purity) / 4.0);
        Ok(Self { matrix: m })
    }

    /// Physical member of the canonical family at an octahedron vertex, with
    /// the local vectors constrained by positivity. `free` is the surviving
    /// local Bloch component; it is ignored at the (0, 0, ±1) vertices.
    pub fn octahedron_vertex(vertex: OctahedronVertex, free: f64) -> Result<Self> {
        Self::from_canonical(&vertex.canonical(free)?)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    /// Descending eigenvalues.
    pub fn eigenvalues(&self) -> [f64; 4] {
        eigenvalues4(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[3]
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    pub fn ensure_physical(&self) -> Result<()> {
        let min = self.min_eigenvalue();
        if min < -PSD_TOL {
            Err(Error::Unphysical { min_eigenvalue: min })
        } else {
            Ok(())
        }
    }

    pub fn partial_trace(&self, keep: Subsystem) -> SingleQubitState {
        let m = &self.matrix;
        let out = match keep {
            Subsystem::B => Mat2::from_fn(|j, l| m[(j, l)] + m[(2 + j, 2 + l)]),
            Subsystem::A => Mat2::from_fn(|i, k| m[(2 * i, 2 * k)] + m[(2 * i + 1, 2 * k + 1)]),
        };
        SingleQubitState::from_raw(out)
    }

    /// Von Neumann entropy H(AB) in bits.
    pub fn entropy(&self) -> Result<f64> {
        entropy_from_eigenvalues(&self.eigenvalues())
    }

    /// H(A|B) = H(AB) − H(B), in bits. Negative values certify entanglement.
    pub fn conditional_entropy(&self) -> Result<f64> {
        Ok(self.entropy()? - self.partial_trace(Subsystem::B).entropy()?)
    }

    /// max(0, −H(A|B)), the hashing lower bound on one-way distillable
    /// entanglement.
    pub fn distillable_lower_bound(&self) -> Result<f64> {
        Ok((-self.conditional_entropy()?).max(0.0))
    }

    pub fn bloch(&self) -> BlochDecomposition {
        let expect = |k: &Mat4| -> f64 { trace4(&(self.matrix * k)).re };
        let mut b = BlochDecomposition { x: [0.0; 3], y: [0.0; 3], t: [[0.0; 3]; 3] };
        for i in 0..3 {
            b.x[i] = expect(&kron(&pauli(i + 1), &pauli(0)));
            b.y[i] = expect(&kron(&pauli(0), &pauli(i + 1)));
            for j in 0..3 {
                b.t[i][j] = expect(&kron(&pauli(i + 1), &pauli(j + 1)));
            }
        }
        b
    }

    /// Wootters concurrence.
    ///
    /// The μᵢ are the eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y), obtained as the
    /// spectrum of the Hermitian √ρ ρ̃ √ρ.
    pub fn concurrence(&self) -> f64 {
        let yy = kron(&pauli(2), &pauli(2));
        let tilde = yy * self.matrix.map(|z| z.conj()) * yy;
        let root = linalg::sqrt_psd4(&self.matrix);
        let mut m = root * tilde * root;
        // symmetrise rounding noise before the Hermitian solver
        m = (m + m.adjoint()) * re(0.5);
        let mu = eigenvalues4(&m).map(|x| x.max(0.0).sqrt());
        (mu[0] - mu[1] - mu[2] - mu[3]).max(0.0)
    }

    /// N(ρ) = tr√(TᵀT), the sum of singular values of the correlation tensor.
    pub fn teleportation_n(&self) -> f64 {
        self.bloch().correlation_matrix().singular_values().sum()
    }

    /// Maximal average fidelity of standard teleportation, 1/2 + N/6.
    pub fn average_fidelity(&self) -> f64 {
        0.5 + self.teleportation_n() / 6.0
    }

    /// Sum of the two largest eigenvalues of TᵀT; CHSH is violated iff > 1.
    pub fn chsh_parameter(&self) -> f64 {
        let t = self.bloch().correlation_matrix();
        let mut e: Vec<f64> = (t.transpose() * t).symmetric_eigenvalues().iter().copied().collect();
        e.sort_by(|a, b| b.total_cmp(a));
        e[0] + e[1]
    }
}

/// Von Neumann entropy (bits) of a Hermitian PSD unit-trace matrix of any size.
pub fn von_neumann_entropy(m: &DMatrix<C64>) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::domain("entropy needs a square matrix"));
    }
    let defect = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if defect > HERMITIAN_TOL {
        return Err(Error::domain("entropy needs a Hermitian matrix"));
    }
    let eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    entropy_from_eigenvalues(&eigs)
}

pub(crate) fn canonical_matrix(r: &[f64; 3], s: &[f64; 3], v: &[f64; 3]) -> Mat4 {
    let mut m = kron(&pauli(0), &pauli(0));
    for k in 0..3 {
        let p = pauli(k + 1);
        m += kron(&p, &pauli(0)) * re(r[k]);
        m += kron(&pauli(0), &p) * re(s[k]);
        m += kron(&p, &p) * re(v[k]);
    }
    m * re(0.25)
}

/// Local Bloch vectors and correlation tensor, t_ij = tr[ρ(σᵢ⊗σⱼ)].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochDecomposition {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl BlochDecomposition {
    pub fn correlation_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.t[i][j])
    }

    /// Canonical form if the correlation tensor is diagonal within `tol`.
    pub fn as_canonical(&self, tol: f64) -> Option<CanonicalBloch> {
        for i in 0..3 {
            for j in 0..3 {
                if i != j && self.t[i][j].abs() > tol {
                    return None;
                }
            }
        }
        Some(CanonicalBloch {
            r: self.x,
            s: self.y,
            v: [self.t[0][0], self.t[1][1], self.t[2][2]],
        })
    }
}

/// Local vectors `r`, `s` and diagonal correlations `v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalBloch {
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub v: [f64; 3],
}

impl CanonicalBloch {
    pub fn new(r: [f64; 3], s: [f64; 3], v: [f64; 3]) -> Result<Self> {
        let c = Self { r, s, v };
        c.validate()?;
        Ok(c)
    }

    /// Bell-diagonal point (r = s = 0).
    pub fn bell_diagonal(v: [f64; 3]) -> Result<Self> {
        Self::new([0.0; 3], [0.0; 3], v)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, vec) in [("r", &self.r), ("s", &self.s), ("v", &self.v)] {
            if let Some(x) = vec.iter().find(|x| !(-1.0..=1.0).contains(*x)) {
                return Err(Error::domain(format!("{name} component {x} outside [-1, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EwlFamily {
    /// α|00⟩ + e^{iθ}√(1−α²)|11⟩
    Psi,
    /// α|10⟩ + e^{iθ}√(1−α²)|01⟩
    Phi,
}

impl std::str::FromStr for EwlFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi" => Ok(EwlFamily::Psi),
            "phi" => Ok(EwlFamily::Phi),
            other => Err(Error::domain(format!("unknown EWL family '{other}' (psi|phi)"))),
        }
    }
}

impl std::fmt::Display for EwlFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EwlFamily::Psi => "psi",
            EwlFamily::Phi => "phi",
        })
    }
}

/// Parameters of an extended Werner-like state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EwlSpec {
    pub family: EwlFamily,
    /// Weight `r` of the pure component.
    pub purity: f64,
    pub alpha: f64,
    pub theta: f64,
}

impl EwlSpec {
    pub fn new(family: EwlFamily, purity: f64, alpha: f64, theta: f64) -> Result<Self> {
        let s = Self { family, purity, alpha, theta };
        s.validate()?;
        Ok(s)
    }

    /// The maximally entangled member: r = 1, α = 1/√2, θ = 0.
    pub fn maximally_entangled(family: EwlFamily) -> Self {
        Self { family, purity: 1.0, alpha: std::f64::consts::FRAC_1_SQRT_2, theta: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.purity) {
            return Err(Error::domain(format!("purity {} outside [0, 1]", self.purity)));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::domain(format!("alpha {} outside [0, 1]", self.alpha)));
        }
        if !self.theta.is_finite() {
            return Err(Error::domain("theta must be finite"));
        }
        Ok(())
    }

    pub fn state(&self) -> Result<TwoQubitState> {
        TwoQubitState::ewl(self)
    }
}

/// The six vertices (±1,0,0), (0,±1,0), (0,0,±1) of the separable octahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OctahedronVertex {
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    ZPlus,
    ZMinus,
}

impl OctahedronVertex {
    pub const ALL: [OctahedronVertex; 6] = [
        OctahedronVertex::XPlus,
        OctahedronVertex::XMinus,
        OctahedronVertex::YPlus,
        OctahedronVertex::YMinus,
        OctahedronVertex::ZPlus,
        OctahedronVertex::ZMinus,
    ];

    pub fn vector(self) -> [f64; 3] {
        match self {
            OctahedronVertex::XPlus => [1.0, 0.0, 0.0],
            OctahedronVertex::XMinus => [-1.0, 0.0, 0.0],
            OctahedronVertex::YPlus => [0.0, 1.0, 0.0],
            OctahedronVertex::YMinus => [0.0, -1.0, 0.0],
            OctahedronVertex::ZPlus => [0.0, 0.0, 1.0],
            OctahedronVertex::ZMinus => [0.0, 0.0, -1.0],
        }
    }

    /// Canonical parameters surviving the positivity constraints at this vertex.
    pub fn canonical(self, free: f64) -> Result<CanonicalBloch> {
        if !(-1.0..=1.0).contains(&free) {
            return Err(Error::domain(format!("free parameter {free} outside [-1, 1]")));
        }
        let (r, s) = match self {
            OctahedronVertex::XPlus => ([free, 0.0, 0.0], [free, 0.0, 0.0]),
            OctahedronVertex::XMinus => ([free, 0.0, 0.0], [-free, 0.0, 0.0]),
            OctahedronVertex::YPlus => ([0.0, free, 0.0], [0.0, free, 0.0]),
            OctahedronVertex::YMinus => ([0.0, free, 0.0], [0.0, -free, 0.0]),
            OctahedronVertex::ZPlus | OctahedronVertex::ZMinus => ([0.0; 3], [0.0; 3]),
        };
        CanonicalBloch::new(r, s, self.vector())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn mat_close(a: &Mat4, b: &Mat4, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() <= tol)
    }

    #[test]
    fn zero_canonical_is_maximally_mixed() {
        let s = TwoQubitState::from_canonical(&CanonicalBloch::bell_diagonal([0.0; 3]).unwrap())
            .unwrap();
        assert!(mat_close(s.matrix(), TwoQubitState::maximally_mixed().matrix(), 1e-15));
    }

    #[test]
    fn singlet_vertex() {
        let s = TwoQubitState::from_canonical(
            &CanonicalBloch::bell_diagonal([-1.0, -1.0, -1.0]).unwrap(),
        )
        .unwrap();
        let singlet = TwoQubitState::bell(BellState::PsiMinus);
        assert!(mat_close(s.matrix(), singlet.matrix(), 1e-15));
    }

    #[test]
    fn canonical_rejects_out_of_range() {
        assert!(CanonicalBloch::new([1.2, 0.0, 0.0], [0.0; 3], [0.0; 3]).is_err());
        let bad = CanonicalBloch { r: [0.0; 3], s: [0.0; 3], v: [0.0, -1.5, 0.0] };
        assert!(TwoQubitState::from_canonical(&bad).is_err());
    }

    #[test]
    fn physicality_examples() {
        assert!(TwoQubitState::maximally_mixed().is_physical(PSD_TOL));
        let outside = TwoQubitState::from_canonical(
            &CanonicalBloch::bell_diagonal([1.0, 1.0, 1.0]).unwrap(),
        )
        .unwrap();
        assert!(!outside.is_physical(PSD_TOL));
        assert!(outside.entropy().is_err());
        let example =
            CanonicalBloch::new([0.0, 0.0, 0.25], [0.0, 0.0, 0.25], [0.95, -0.25, 0.30]).unwrap();
        assert!(TwoQubitState::from_canonical(&example).unwrap().is_physical(PSD_TOL));
    }

    #[test]
    fn new_rejects_bad_matrices() {
        let mut m = Mat4::identity() * re(0.25);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(TwoQubitState::new(m), Err(Error::Domain(_))));
        let m = Mat4::identity() * re(0.3);
        assert!(matches!(TwoQubitState::new(m), Err(Error::Domain(_))));
        let m = Mat4::from_diagonal(&nalgebra::Vector4::new(re(1.2), re(-0.2), re(0.0), re(0.0)));
        assert!(matches!(TwoQubitState::new(m), Err(Error::Unphysical { .. })));
    }

    #[test]
    fn bloch_of_canonical_is_diagonal() {
        let canon = CanonicalBloch::new([0.1, -0.2, 0.3], [0.05, 0.0, -0.1], [0.4, -0.3, 0.2])
            .unwrap();
        let b = TwoQubitState::from_canonical(&canon).unwrap().bloch();
        let back = b.as_canonical(1e-14).unwrap();
        for k in 0..3 {
            assert!(close(back.r[k], canon.r[k], 1e-14));
            assert!(close(back.s[k], canon.s[k], 1e-14));
            assert!(close(back.v[k], canon.v[k], 1e-14));
        }
    }

    #[test]
    fn bloch_of_bell_phi_plus() {
        let b = EwlSpec::maximally_entangled(EwlFamily::Psi).state().unwrap().bloch();
        let expect = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            assert!(close(b.x[i], 0.0, 1e-14) && close(b.y[i], 0.0, 1e-14));
            for j in 0..3 {
                assert!(close(b.t[i][j], expect[i][j], 1e-14));
            }
        }
    }

    #[test]
    fn partial_traces() {
        let bell = TwoQubitState::bell(BellState::PhiPlus);
        let rb = bell.partial_trace(Subsystem::B);
        assert!((rb.matrix() - pauli(0) * re(0.5)).norm() < 1e-15);

        let a = SingleQubitState::from_bloch([0.3, -0.1, 0.5]).unwrap();
        let b = SingleQubitState::from_bloch([0.0, 0.6, -0.2]).unwrap();
        let prod = TwoQubitState::product(&a, &b);
        assert!((prod.partial_trace(Subsystem::A).matrix() - a.matrix()).norm() < 1e-15);
        assert!((prod.partial_trace(Subsystem::B).matrix() - b.matrix()).norm() < 1e-15);
    }

    #[test]
    fn ewl_marginal_closed_form() {
        for &(r, alpha, theta) in &[(0.8, 0.6, 0.3), (0.3, 0.9, -1.0), (1.0, 0.2, 2.0)] {
            let rho = EwlSpec::new(EwlFamily::Psi, r, alpha, theta).unwrap().state().unwrap();
            let m = rho.partial_trace(Subsystem::B);
            let top = r * (1.0 - alpha * alpha) + (1.0 - r) / 2.0;
            assert!(close(m.matrix()[(0, 0)].re, top, 1e-14));
            assert!(m.matrix()[(0, 1)].norm() < 1e-15);
        }
    }

    #[test]
    fn entropy_examples() {
        assert!(close(TwoQubitState::bell(BellState::PsiPlus).entropy().unwrap(), 0.0, 1e-12));
        assert!(close(TwoQubitState::maximally_mixed().entropy().unwrap(), 2.0, 1e-14));
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(0.75), re(0.25)]));
        assert!(close(von_neumann_entropy(&m).unwrap(), 0.811_278, 1e-6));
        let three = DMatrix::from_diagonal_element(3, 3, re(1.0 / 3.0));
        assert!(close(von_neumann_entropy(&three).unwrap(), 3f64.log2(), 1e-14));
    }

    #[test]
    fn conditional_entropy_examples() {
        let bell = TwoQubitState::bell(BellState::PhiPlus);
        assert!(close(bell.conditional_entropy().unwrap(), -1.0, 1e-12));
        assert!(close(bell.distillable_lower_bound().unwrap(), 1.0, 1e-12));
        let mixed = TwoQubitState::maximally_mixed();
        assert!(close(mixed.conditional_entropy().unwrap(), 1.0, 1e-14));
        assert_eq!(mixed.distillable_lower_bound().unwrap(), 0.0);
    }

    #[test]
    fn werner_distillable_bound_from_spectrum() {
        // spectrum {r + (1-r)/4, (1-r)/4 ×3} with r = 0.9, and H(B) = 1
        let rho = EwlSpec::new(EwlFamily::Psi, 0.9, FRAC_1_SQRT_2, 0.0).unwrap().state().unwrap();
        assert!(close(rho.distillable_lower_bound().unwrap(), 0.496_816_268_319_416, 1e-12));
    }

    #[test]
    fn concurrence_examples() {
        assert!(close(TwoQubitState::bell(BellState::PhiMinus).concurrence(), 1.0, 1e-7));
        assert!(close(TwoQubitState::maximally_mixed().concurrence(), 0.0, 1e-12));
        let rho = EwlSpec::new(EwlFamily::Psi, 0.5, FRAC_1_SQRT_2, 0.0).unwrap().state().unwrap();
        assert!(close(rho.concurrence(), 0.25, 1e-9));
    }

    #[test]
    fn teleportation_and_chsh_examples() {
        let bell = TwoQubitState::bell(BellState::PsiMinus);
        assert!(close(bell.teleportation_n(), 3.0, 1e-12));
        assert!(close(bell.average_fidelity(), 1.0, 1e-12));
        assert!(close(bell.chsh_parameter(), 2.0, 1e-12));
        let mixed = TwoQubitState::maximally_mixed();
        assert!(close(mixed.teleportation_n(), 0.0, 1e-14));
        assert!(close(mixed.average_fidelity(), 0.5, 1e-14));
        assert!(close(mixed.chsh_parameter(), 0.0, 1e-14));
        let canon = CanonicalBloch::bell_diagonal([0.5, -0.3, 0.4]).unwrap();
        assert!(close(TwoQubitState::from_canonical(&canon).unwrap().teleportation_n(), 1.2, 1e-12));
    }

    #[test]
    fn ewl_named_states() {
        let psi = EwlSpec::maximally_entangled(EwlFamily::Psi).state().unwrap();
        assert!(mat_close(psi.matrix(), TwoQubitState::bell(BellState::PhiPlus).matrix(), 1e-15));
        let phi = EwlSpec::maximally_entangled(EwlFamily::Phi).state().unwrap();
        assert!(mat_close(phi.matrix(), TwoQubitState::bell(BellState::PsiPlus).matrix(), 1e-15));
        let noise = EwlSpec::new(EwlFamily::Phi, 0.0, 0.3, 1.0).unwrap().state().unwrap();
        assert!(mat_close(noise.matrix(), TwoQubitState::maximally_mixed().matrix(), 1e-15));
        assert!(EwlSpec::new(EwlFamily::Phi, 1.1, 0.3, 0.0).is_err());
        assert!(EwlSpec::new(EwlFamily::Psi, 0.5, -0.1, 0.0).is_err());
    }

    #[test]
    fn octahedron_vertex_x_plus_spectrum() {
        let s = TwoQubitState::octahedron_vertex(OctahedronVertex::XPlus, 0.5).unwrap();
        let e = s.eigenvalues();
        let expect = [0.75, 0.25, 0.0, 0.0];
        for k in 0..4 {
            assert!(close(e[k], expect[k], 1e-12));
        }
        assert!(close(s.conditional_entropy().unwrap(), 0.0, 1e-12));
    }

    #[test]
    fn octahedron_vertices_have_zero_conditional_entropy() {
        for v in OctahedronVertex::ALL {
            for &a in &[-1.0, -0.4, 0.0, 0.7, 1.0] {
                let s = TwoQubitState::octahedron_vertex(v, a).unwrap();
                assert!(s.is_physical(PSD_TOL), "{v:?} a={a}");
                assert!(close(s.conditional_entropy().unwrap(), 0.0, 1e-9), "{v:?} a={a}");
            }
        }
        assert!(TwoQubitState::octahedron_vertex(OctahedronVertex::XPlus, 1.5).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = EwlSpec::new(EwlFamily::Phi, 0.7, 0.4, 0.9).unwrap().state().unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with("{\"re\":"));
        let back: TwoQubitState = serde_json::from_str(&text).unwrap();
        assert!(mat_close(back.matrix(), s.matrix(), 1e-15));
        let canon: CanonicalBloch =
            serde_json::from_str(r#"{"r":[0,0,0.25],"s":[0,0,0.25],"v":[0.95,-0.25,0.3]}"#).unwrap();
        assert_eq!(canon.v, [0.95, -0.25, 0.3]);
        let bad = r#"{"re":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],"im":[[0,1,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
        assert!(serde_json::from_str::<TwoQubitState>(bad).is_err());
    }
}
