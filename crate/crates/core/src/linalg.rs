//! Small dense complex linear algebra: the 4×4 operator type, the 16×16
//! superoperator type, Hermitian eigenvalues, the matrix exponential and
//! null spaces.

use nalgebra::{DMatrix, SMatrix, SVector};
use num_complex::Complex64;

/// Operator on the two-qubit space.
pub type ComplexMat4 = SMatrix<Complex64, 4, 4>;
/// Superoperator acting on column-stacked 4×4 matrices.
pub type SuperOp = SMatrix<Complex64, 16, 16>;
/// Column-stacked 4×4 matrix.
pub type SuperVec = SVector<Complex64, 16>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Column-stacking vectorization: entry `(r, c)` lands at index `4c + r`.
pub fn vec4(m: &ComplexMat4) -> SuperVec {
    SuperVec::from_column_slice(m.as_slice())
}

pub fn unvec4(v: &SuperVec) -> ComplexMat4 {
    ComplexMat4::from_column_slice(v.as_slice())
}

/// `a ⊗ b` for 4×4 operands.
pub fn kron4(a: &ComplexMat4, b: &ComplexMat4) -> SuperOp {
    let mut out = SuperOp::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..4 {
                for l in 0..4 {
                    out[(4 * i + k, 4 * j + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Largest entry modulus.
pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<Complex64, R, C>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Eigenvalues of a Hermitian 4×4 matrix, ascending. Only the Hermitian
/// part of `m` is used.
pub fn hermitian_eigenvalues(m: &ComplexMat4) -> [f64; 4] {
    hermitian_eigen(m).0
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(m: &ComplexMat4) -> ([f64; 4], ComplexMat4) {
    let herm = (m + m.adjoint()) * c(0.5);
    let eig = herm.symmetric_eigen();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut values = [0.0; 4];
    let mut vectors = ComplexMat4::zeros();
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = eig.eigenvalues[src];
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the degree-13 diagonal Padé approximant is
/// accurate to double precision without scaling.
const THETA13: f64 = 5.371_920_351_148_152;

/// Matrix exponential of a superoperator; see [`expm_dense`].
pub fn expm(a: &SuperOp) -> Option<SuperOp> {
    let dense = DMatrix::from_column_slice(16, 16, a.as_slice());
    expm_dense(&dense).map(|e| SuperOp::from_column_slice(e.as_slice()))
}

/// Matrix exponential by scaling and squaring with a [13/13] Padé
/// approximant.
///
/// Returns `None` if the Padé denominator is singular, which only happens
/// for non-finite input.
pub fn expm_dense(a: &DMatrix<Complex64>) -> Option<DMatrix<Complex64>> {
    assert!(a.is_square(), "expm needs a square matrix");
    let norm = one_norm(a);
    if !norm.is_finite() {
        return None;
    }
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * c(0.5_f64.powi(squarings));

    let id = DMatrix::<Complex64>::identity(a.nrows(), a.ncols());
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| c(PADE13[k]);

    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &scaled * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let mut result = (&v - &u).lu().solve(&(&v + &u))?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Some(result)
}

/// Orthonormal basis of the numerical null space of `a`: right singular
/// vectors whose singular value is below `rel_tol` times the largest one.
pub fn null_space(a: &SuperOp, rel_tol: f64) -> Vec<SuperVec> {
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let scale = svd.singular_values.max().max(f64::MIN_POSITIVE);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= rel_tol * scale)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(values: [f64; 4]) -> ComplexMat4 {
        ComplexMat4::from_diagonal(&nalgebra::Vector4::from_iterator(values.map(c)))
    }

    fn dense(m: &ComplexMat4) -> DMatrix<Complex64> {
        DMatrix::from_column_slice(4, 4, m.as_slice())
    }

    #[test]
    fn vec_round_trip_and_layout() {
        let m = ComplexMat4::from_fn(|r, col| c((10 * r + col) as f64));
        let v = vec4(&m);
        assert_eq!(v[4 * 2 + 1], c(12.0));
        assert_eq!(unvec4(&v), m);
    }

    #[test]
    fn kron_matches_vec_identity() {
        // vec(A X B) = (B^T ⊗ A) vec X
        let a = ComplexMat4::from_fn(|r, k| Complex64::new(r as f64 - k as f64, 0.3 * r as f64));
        let b = ComplexMat4::from_fn(|r, k| Complex64::new(0.1 * (r * k) as f64, 1.0 - k as f64));
        let x =
            ComplexMat4::from_fn(|r, k| Complex64::new((r + 2 * k) as f64, (r * k) as f64 * 0.5));
        let lhs = vec4(&(a * x * b));
        let rhs = kron4(&b.transpose(), &a) * vec4(&x);
        assert!(max_abs(&(lhs - rhs)) < 1e-12);
    }

    #[test]
    fn eigenvalues_sorted() {
        let vals = hermitian_eigenvalues(&diag([0.4, -0.1, 0.9, 0.0]));
        assert_eq!(vals, [-0.1, 0.0, 0.4, 0.9]);
    }

    #[test]
    fn expm_of_diagonal() {
        let e = expm_dense(&dense(&diag([0.0, -1.0, 2.0, -30.0]))).unwrap();
        for (k, x) in [0.0_f64, -1.0, 2.0, -30.0].iter().enumerate() {
            assert!((e[(k, k)].re - x.exp()).abs() <= 1e-14 * x.exp().max(1.0));
        }
    }

    #[test]
    fn expm_rotation_generator() {
        // exp(-i t σ_x) = cos t - i sin t σ_x, with large t to force squaring
        let t = 40.3;
        let mut gen = ComplexMat4::zeros();
        gen[(0, 1)] = -I * t;
        gen[(1, 0)] = -I * t;
        let e = expm_dense(&dense(&gen)).unwrap();
        assert!((e[(0, 0)] - c(t.cos())).norm() < 1e-12);
        assert!((e[(0, 1)] + I * t.sin()).norm() < 1e-12);
        assert!((e[(2, 2)] - ONE).norm() < 1e-12);
    }

    #[test]
    fn null_space_of_projector_complement() {
        let mut p = SuperOp::identity();
        p[(3, 3)] = ZERO;
        p[(9, 9)] = ZERO;
        let ns = null_space(&p, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((p * v).norm() < 1e-14);
        }
    }
}
