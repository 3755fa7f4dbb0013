//! Wootters concurrence of two-qubit states.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigen, ComplexMat4};
use crate::state::{Basis, DensityMatrix, MIN_EIGENVALUE_TOL};

/// Concurrence value in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

/// Trace and Hermiticity tolerance for inputs to [`concurrence`].
const INPUT_TOL: f64 = 1e-10;

/// Off-X entries allowed by [`concurrence_x`].
pub const X_FORM_TOL: f64 = 1e-10;

/// Eigenvalues of ρ below this are treated as exact zeros.
const RANK_CUTOFF: f64 = 1e-14;

impl Concurrence {
    /// `max(0, raw)` capped at 1. Raw values are expected to be in range up
    /// to round-off.
    pub fn clamped(raw: f64) -> Self {
        Concurrence(raw.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_entangled(self) -> bool {
        self.0 > 0.0
    }
}

impl fmt::Display for Concurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<Concurrence> for f64 {
    fn from(c: Concurrence) -> f64 {
        c.0
    }
}

/// σ_y ⊗ σ_y; the same in either single-qubit ordering.
fn spin_flip() -> ComplexMat4 {
    let mut y = ComplexMat4::zeros();
    for (r, k, v) in [(0, 3, -1.0), (1, 2, 1.0), (2, 1, 1.0), (3, 0, -1.0)] {
        y[(r, k)] = c(v);
    }
    y
}

/// Wootters concurrence `max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)`, with `λᵢ` the
/// eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` in decreasing order.
///
/// Writing `ρ = W W†` with `W` built from the eigenvectors of ρ, the `√λᵢ`
/// are the singular values of `Wᵀ (σ_y⊗σ_y) W`. Working with that matrix
/// avoids square roots of round-off-level eigenvalues, which matter for
/// pure and low-rank states.
pub fn concurrence(rho: &DensityMatrix) -> Result<Concurrence> {
    let rho = rho.canonical();
    let diag = rho.diagnostics();
    if diag.trace_err > INPUT_TOL || diag.herm_err > INPUT_TOL || diag.min_eig < MIN_EIGENVALUE_TOL
    {
        return Err(Error::InvalidState(format!(
            "concurrence input: trace error {:e}, hermiticity error {:e}, minimum eigenvalue {:e}",
            diag.trace_err, diag.herm_err, diag.min_eig
        )));
    }
    let (values, vectors) = hermitian_eigen(rho.matrix());
    let kept: Vec<usize> = (0..4).filter(|&k| values[k] > RANK_CUTOFF).collect();
    let w = DMatrix::<Complex64>::from_fn(4, kept.len(), |r, k| {
        vectors[(r, kept[k])] * c(values[kept[k]].sqrt())
    });
    let flip = DMatrix::from_column_slice(4, 4, spin_flip().as_slice());
    let tau = w.transpose() * flip * &w;
    let mut s: Vec<f64> = tau.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    let raw = match s.split_first() {
        Some((first, rest)) => first - rest.iter().sum::<f64>(),
        None => 0.0,
    };
    Ok(Concurrence::clamped(raw))
}

/// Concurrence of an X-form state, `max(0, 2(|ρ₂₃| − √(ρ₁₁ρ₄₄)))`.
///
/// Only the canonical entries (1,1), (2,2), (2,3), (3,2), (3,3), (4,4) may
/// be nonzero; anything else above 1e-10 is rejected.
pub fn concurrence_x(rho: &DensityMatrix) -> Result<Concurrence> {
    let rho = if rho.basis() == Basis::Canonical {
        rho.clone()
    } else {
        rho.canonical()
    };
    let m = rho.matrix();
    for r in 0..4 {
        for k in 0..4 {
            let allowed = r == k || matches!((r, k), (1, 2) | (2, 1));
            if !allowed && m[(r, k)].norm() > X_FORM_TOL {
                return Err(Error::NotXForm {
                    row: r + 1,
                    col: k + 1,
                    modulus: m[(r, k)].norm(),
                });
            }
        }
    }
    let corners = (m[(0, 0)].re * m[(3, 3)].re).max(0.0).sqrt();
    Ok(Concurrence::clamped(2.0 * (m[(1, 2)].norm() - corners)))
}
