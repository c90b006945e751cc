use crate::error::{Error, Result};
use crate::linalg::{kron, re, Mat2, Mat4, C64};
use crate::state::{SingleQubitState, TwoQubitState};

const P_TOL: f64 = 1e-12;

fn kraus(p: C64) -> Result<[Mat2; 2]> {
    let mod2 = p.norm_sqr();
    if !p.is_finite() || mod2 > 1.0 + P_TOL {
        return Err(Error::domain(format!("|p| = {} exceeds 1", p.norm())));
    }
    let z = re(0.0);
    // basis {|1⟩, |0⟩}: E₀ = diag(p, 1), E₁ = √(1−|p|²) |0⟩⟨1|
    let e0 = Mat2::new(p, z, z, re(1.0));
    let e1 = Mat2::new(z, z, re((1.0 - mod2).max(0.0).sqrt()), z);
    Ok([e0, e1])
}

/// Single-qubit amplitude damping with decoherence function `p`:
/// ρ₁₁ → ρ₁₁|p|², ρ₁₀ → ρ₁₀ p.
pub fn damp_qubit(rho: &SingleQubitState, p: C64) -> Result<SingleQubitState> {
    let mut out = Mat2::zeros();
    for e in kraus(p)? {
        out += e * rho.matrix() * e.adjoint();
    }
    Ok(SingleQubitState::from_raw(out))
}

/// The same damping channel applied independently to both qubits.
pub fn apply_channel(rho: &TwoQubitState, p: C64) -> Result<TwoQubitState> {
    let ops = kraus(p)?;
    let mut out = Mat4::zeros();
    for a in &ops {
        for b in &ops {
            let k = kron(a, b);
            out += k * rho.matrix() * k.adjoint();
        }
    }
    Ok(TwoQubitState::from_raw(out))
}
