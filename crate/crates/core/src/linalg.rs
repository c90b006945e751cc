//! Small fixed-size complex linear algebra shared by the state and channel code.
//!
//! Single-qubit index 0 is |1⟩ and index 1 is |0⟩; two-qubit index is
//! `2 * a + b`, giving the ordering {|11⟩, |10⟩, |01⟩, |00⟩}.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;

/// Eigenvalues below this are treated as a PSD violation.
pub const PSD_TOL: f64 = 1e-10;
/// Entrywise tolerance on `m - m†`.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Pauli matrix `σ_k` for `k` in 1..=3; `k = 0` gives the identity.
pub fn pauli(k: usize) -> Mat2 {
    let (o, z, i) = (re(1.0), re(0.0), c(0.0, 1.0));
    match k {
        0 => Mat2::new(o, z, z, o),
        1 => Mat2::new(z, o, o, z),
        2 => Mat2::new(z, -i, i, z),
        3 => Mat2::new(o, z, z, -o),
        _ => panic!("pauli index {k} out of range"),
    }
}

pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

pub fn trace4(m: &Mat4) -> C64 {
    m[(0, 0)] + m[(1, 1)] + m[(2, 2)] + m[(3, 3)]
}

/// Largest entrywise deviation from Hermiticity.
pub fn hermiticity_defect4(m: &Mat4) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..4 {
        for col in 0..4 {
            worst = worst.max((m[(r, col)] - m[(col, r)].conj()).norm());
        }
    }
    worst
}

pub fn hermiticity_defect2(m: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..2 {
        for col in 0..2 {
            worst = worst.max((m[(r, col)] - m[(col, r)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian 4×4 matrix in descending order.
pub fn eigenvalues4(m: &Mat4) -> [f64; 4] {
    let e = m.symmetric_eigenvalues();
    let mut out = [e[0], e[1], e[2], e[3]];
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Eigenvalues of a Hermitian 2×2 matrix in descending order (closed form).
pub fn eigenvalues2(m: &Mat2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean + rad, mean - rad]
}

/// Von Neumann entropy in bits from a spectrum.
///
/// Fails when an eigenvalue is below `-PSD_TOL`; the rest are clamped to
/// [0, 1] and `0 log 0 = 0`.
pub fn entropy_from_eigenvalues(eigs: &[f64]) -> Result<f64> {
    let min = eigs.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(Error::Unphysical { min_eigenvalue: min });
    }
    Ok(eigs.iter().map(|&l| xlog2x(l.clamp(0.0, 1.0))).sum::<f64>())
}

/// `-x log2 x` with the `0 log 0 = 0` convention.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy of a probability vector, in bits.
pub fn shannon_bits<I: IntoIterator<Item = f64>>(probs: I) -> f64 {
    probs.into_iter().map(|p| xlog2x(p.clamp(0.0, 1.0))).sum()
}

pub fn binary_entropy(p: f64) -> f64 {
    shannon_bits([p, 1.0 - p])
}

/// Hermitian square root of a PSD matrix; negative eigenvalues are clamped.
pub fn sqrt_psd4(m: &Mat4) -> Mat4 {
    let eig = m.symmetric_eigen();
    let mut out = Mat4::zeros();
    for k in 0..4 {
        let w = eig.eigenvalues[k].max(0.0).sqrt();
        let v = eig.eigenvectors.column(k);
        out += (v * v.adjoint()) * re(w);
    }
    out
}
