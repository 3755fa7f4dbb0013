//! Two-qubit density matrices, the canonical and collective bases, and the
//! initial-state families.
//!
//! Single-qubit states are ordered `|1⟩, |0⟩` (excited first), so the
//! canonical product basis is `|11⟩, |10⟩, |01⟩, |00⟩` with atom A as the
//! left factor. The collective basis is `|e⟩, |s⟩, |a⟩, |g⟩` where
//!
//! ```text
//! |e⟩ = |11⟩    |s⟩ = (|01⟩ + |10⟩)/√2    |a⟩ = (|10⟩ − |01⟩)/√2    |g⟩ = |00⟩
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};

use nalgebra::Vector4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues, ComplexMat4, ZERO};

/// Largest tolerated `|ρ − ρ†|` entry.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Largest tolerated `|tr ρ − 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative tolerated eigenvalue.
pub const MIN_EIGENVALUE_TOL: f64 = -1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `|11⟩, |10⟩, |01⟩, |00⟩`
    Canonical,
    /// `|e⟩, |s⟩, |a⟩, |g⟩`
    Collective,
}

/// Index of each collective state in the collective basis.
pub mod collective {
    pub const E: usize = 0;
    pub const S: usize = 1;
    pub const A: usize = 2;
    pub const G: usize = 3;
}

/// Columns are the collective states expressed in the canonical basis.
pub fn collective_to_canonical() -> ComplexMat4 {
    let h = c(FRAC_1_SQRT_2);
    #[rustfmt::skip]
    let u = ComplexMat4::new(
        c(1.0), ZERO, ZERO, ZERO,
        ZERO,   h,    h,    ZERO,
        ZERO,   h,    -h,   ZERO,
        ZERO,   ZERO, ZERO, c(1.0),
    );
    u
}

/// The singlet `|a⟩` in the canonical basis.
pub fn singlet_ket() -> Vector4<Complex64> {
    Vector4::new(ZERO, c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2), ZERO)
}

pub fn projector(ket: &Vector4<Complex64>) -> ComplexMat4 {
    ket * ket.adjoint()
}

/// Invariant residuals of a candidate density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    /// `|tr ρ − 1|`
    pub trace_err: f64,
    /// Largest entry of `|ρ − ρ†|`.
    pub herm_err: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eig: f64,
}

impl Diagnostics {
    pub fn of(mat: &ComplexMat4) -> Self {
        let herm_err = (mat - mat.adjoint())
            .iter()
            .fold(0.0_f64, |acc, z| acc.max(z.norm()));
        Diagnostics {
            trace_err: (mat.trace() - c(1.0)).norm(),
            herm_err,
            min_eig: hermitian_eigenvalues(mat)[0],
        }
    }

    pub fn is_valid(&self) -> bool {
        self.is_valid_within(TRACE_TOL, HERMITICITY_TOL, MIN_EIGENVALUE_TOL)
    }

    pub fn is_valid_within(&self, trace_tol: f64, herm_tol: f64, min_eig: f64) -> bool {
        self.trace_err <= trace_tol && self.herm_err <= herm_tol && self.min_eig >= min_eig
    }

    fn describe(&self) -> String {
        format!(
            "trace error {:e}, hermiticity error {:e}, minimum eigenvalue {:e}",
            self.trace_err, self.herm_err, self.min_eig
        )
    }
}

/// Reports the invariant residuals of `rho` without modifying it.
pub fn validate_density(rho: &DensityMatrix) -> Diagnostics {
    Diagnostics::of(&rho.mat)
}

/// A Hermitian, unit-trace, positive semidefinite 4×4 matrix tagged with
/// the basis its entries refer to.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMat4,
    basis: Basis,
}

impl DensityMatrix {
    /// Checks the invariants at the default tolerances.
    pub fn new(mat: ComplexMat4, basis: Basis) -> Result<Self> {
        let diag = Diagnostics::of(&mat);
        if !diag.is_valid() {
            return Err(Error::InvalidState(diag.describe()));
        }
        Ok(DensityMatrix { mat, basis })
    }

    /// Accepts `mat` if its residuals are within the given tolerances, then
    /// replaces it by its Hermitian part.
    pub fn with_tolerance(mat: ComplexMat4, basis: Basis, tol: f64) -> Result<Self> {
        let diag = Diagnostics::of(&mat);
        if !diag.is_valid_within(tol, tol, -tol) {
            return Err(Error::InvalidState(diag.describe()));
        }
        let mat = (mat + mat.adjoint()) * c(0.5);
        Ok(DensityMatrix { mat, basis })
    }

    pub(crate) fn from_trusted(mat: ComplexMat4, basis: Basis) -> Self {
        DensityMatrix { mat, basis }
    }

    pub fn pure(ket: &Vector4<Complex64>, basis: Basis) -> Result<Self> {
        let norm = ket.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState(
                "zero or non-finite state vector".into(),
            ));
        }
        let ket = ket / c(norm);
        Ok(DensityMatrix::from_trusted(projector(&ket), basis))
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix::from_trusted(ComplexMat4::identity() * c(0.25), Basis::Canonical)
    }

    /// `|k⟩⟨k|` for collective index `k`, returned in the collective basis.
    pub fn collective_state(k: usize) -> Self {
        let mut mat = ComplexMat4::zeros();
        mat[(k, k)] = c(1.0);
        DensityMatrix::from_trusted(mat, Basis::Collective)
    }

    pub fn matrix(&self) -> &ComplexMat4 {
        &self.mat
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    pub fn to_basis(&self, target: Basis) -> DensityMatrix {
        change_basis(self, target)
    }

    pub fn canonical(&self) -> DensityMatrix {
        self.to_basis(Basis::Canonical)
    }

    pub fn collective(&self) -> DensityMatrix {
        self.to_basis(Basis::Collective)
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// `tr ρ²`
    pub fn purity(&self) -> f64 {
        (self.mat * self.mat).trace().re
    }

    pub fn fidelity_singlet(&self) -> f64 {
        fidelity_singlet(self)
    }

    pub fn diagnostics(&self) -> Diagnostics {
        validate_density(self)
    }

    /// Largest entrywise modulus difference, after bringing `other` into
    /// this matrix's basis.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        let other = other.to_basis(self.basis);
        (self.mat - other.mat)
            .iter()
            .fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }
}

/// Expresses `rho` in `target`. The transformation is unitary, so trace,
/// Hermiticity and spectrum are preserved.
pub fn change_basis(rho: &DensityMatrix, target: Basis) -> DensityMatrix {
    let u = collective_to_canonical();
    let mat = match (rho.basis, target) {
        (a, b) if a == b => rho.mat,
        (Basis::Collective, Basis::Canonical) => u * rho.mat * u.adjoint(),
        (Basis::Canonical, Basis::Collective) => u.adjoint() * rho.mat * u,
        _ => unreachable!(),
    };
    DensityMatrix::from_trusted(mat, target)
}

/// `⟨a|ρ|a⟩`, the overlap with the singlet.
pub fn fidelity_singlet(rho: &DensityMatrix) -> f64 {
    match rho.basis {
        Basis::Collective => rho.mat[(collective::A, collective::A)].re,
        Basis::Canonical => {
            let a = singlet_ket();
            (a.adjoint() * rho.mat * a)[(0, 0)].re
        }
    }
}

/// Initial-state families.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    CollectiveE,
    CollectiveG,
    CollectiveS,
    CollectiveA,
    /// `(cos θ_A|0⟩ + e^{iφ_A} sin θ_A|1⟩) ⊗ (cos θ_B|0⟩ + e^{iφ_B} sin θ_B|1⟩)`
    Product {
        theta_a: f64,
        phi_a: f64,
        theta_b: f64,
        phi_b: f64,
    },
    /// Free-atom Gibbs state at temperature `t0` (units of ω).
    Gibbs {
        t0: f64,
    },
    /// Maximally entangled pure state parametrized by `a ∈ [0,1]` and two
    /// phases.
    MaxEnt {
        a: f64,
        theta1: f64,
        theta2: f64,
    },
    /// Populations `x`, `1 − x` on `|10⟩`, `|01⟩` with coherence `−z/2`.
    XClass {
        x: f64,
        z: f64,
    },
    /// `cos η |01⟩ + sin η |10⟩`
    Eta {
        eta: f64,
    },
    Raw(PathBuf),
}

impl StateSpec {
    /// Checks the parameter ranges of the family.
    pub fn validate(&self) -> Result<()> {
        fn finite(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::domain(name, v, "must be finite"))
            }
        }
        match *self {
            StateSpec::Product {
                theta_a,
                phi_a,
                theta_b,
                phi_b,
            } => {
                finite("thetaA", theta_a)?;
                finite("phiA", phi_a)?;
                finite("thetaB", theta_b)?;
                finite("phiB", phi_b)
            }
            StateSpec::Gibbs { t0 } => {
                if t0 >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain("T0", t0, "temperature must be >= 0"))
                }
            }
            StateSpec::MaxEnt { a, theta1, theta2 } => {
                if !(0.0..=1.0).contains(&a) {
                    return Err(Error::domain("a", a, "must lie in [0, 1]"));
                }
                for (name, v) in [("th1", theta1), ("th2", theta2)] {
                    if !(0.0..=2.0 * PI).contains(&v) {
                        return Err(Error::domain(name, v, "must lie in [0, 2π]"));
                    }
                }
                Ok(())
            }
            StateSpec::XClass { x, z } => {
                if !(x > 0.0 && x < 1.0) {
                    return Err(Error::domain("x", x, "must lie in (0, 1)"));
                }
                if !(z > 0.0 && z < 1.0) {
                    return Err(Error::domain("z", z, "must lie in (0, 1)"));
                }
                if z * z / 4.0 > x * (1.0 - x) {
                    return Err(Error::Constraint { x, z });
                }
                Ok(())
            }
            StateSpec::Eta { eta } => {
                if eta > PI / 2.0 && eta < PI {
                    Ok(())
                } else {
                    Err(Error::domain("eta", eta, "must lie in (π/2, π)"))
                }
            }
            _ => Ok(()),
        }
    }
}

/// Builds the initial state described by `spec`, in the canonical basis.
pub fn make_state(spec: &StateSpec) -> Result<DensityMatrix> {
    spec.validate()?;
    let rho = match *spec {
        StateSpec::CollectiveE => DensityMatrix::collective_state(collective::E),
        StateSpec::CollectiveS => DensityMatrix::collective_state(collective::S),
        StateSpec::CollectiveA => DensityMatrix::collective_state(collective::A),
        StateSpec::CollectiveG => DensityMatrix::collective_state(collective::G),
        StateSpec::Product {
            theta_a,
            phi_a,
            theta_b,
            phi_b,
        } => {
            let ket = qubit_ket(theta_a, phi_a).kronecker(&qubit_ket(theta_b, phi_b));
            DensityMatrix::pure(
                &Vector4::from_column_slice(ket.as_slice()),
                Basis::Canonical,
            )?
        }
        StateSpec::Gibbs { t0 } => gibbs_state(if t0 == 0.0 { f64::INFINITY } else { 1.0 / t0 }),
        StateSpec::MaxEnt { a, theta1, theta2 } => {
            DensityMatrix::from_trusted(projector(&maxent_ket(a, theta1, theta2)), Basis::Canonical)
        }
        StateSpec::XClass { x, z } => xclass_state(x, z),
        StateSpec::Eta { eta } => {
            let ket = Vector4::new(ZERO, c(eta.sin()), c(eta.cos()), ZERO);
            DensityMatrix::from_trusted(projector(&ket), Basis::Canonical)
        }
        StateSpec::Raw(ref path) => read_raw_matrix(path)?,
    };
    Ok(rho.canonical())
}

/// `e^{iφ} sin θ |1⟩ + cos θ |0⟩` in the `|1⟩, |0⟩` ordering.
fn qubit_ket(theta: f64, phi: f64) -> nalgebra::Vector2<Complex64> {
    nalgebra::Vector2::new(Complex64::from_polar(theta.sin(), phi), c(theta.cos()))
}

/// Unit vector whose projector is the maximally entangled state with
/// parameters `(a, ϑ₁, ϑ₂)`.
pub fn maxent_ket(a: f64, theta1: f64, theta2: f64) -> Vector4<Complex64> {
    let b = (1.0 - a * a).max(0.0).sqrt();
    let s = FRAC_1_SQRT_2;
    Vector4::new(
        c(a * s),
        Complex64::from_polar(b * s, theta1),
        Complex64::from_polar(b * s, theta2),
        Complex64::from_polar(-a * s, theta1 + theta2),
    )
}

/// Gibbs state of the free two-atom Hamiltonian at inverse temperature
/// `beta_omega` (in units of 1/ω). `f64::INFINITY` gives `|00⟩⟨00|`.
pub fn gibbs_state(beta_omega: f64) -> DensityMatrix {
    let y = (-beta_omega).exp();
    let z = (1.0 + y) * (1.0 + y);
    let d = Vector4::new(y * y / z, y / z, y / z, 1.0 / z).map(c);
    DensityMatrix::from_trusted(ComplexMat4::from_diagonal(&d), Basis::Canonical)
}

fn xclass_state(x: f64, z: f64) -> DensityMatrix {
    let mut m = ComplexMat4::zeros();
    m[(1, 1)] = c(x);
    m[(2, 2)] = c(1.0 - x);
    m[(1, 2)] = c(-z / 2.0);
    m[(2, 1)] = c(-z / 2.0);
    DensityMatrix::from_trusted(m, Basis::Canonical)
}

/// Reads a 4×4 complex matrix in the canonical basis: four lines of four
/// whitespace-separated entries such as `0.5`, `-0.25+0.1j` or `1e-3-2e-4j`.
/// Blank lines and lines starting with `#` are skipped.
pub fn read_raw_matrix(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mat = parse_raw_matrix(&text).map_err(|msg| Error::Format {
        path: path.to_path_buf(),
        msg,
    })?;
    DensityMatrix::new(mat, Basis::Canonical).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

pub fn parse_raw_matrix(text: &str) -> std::result::Result<ComplexMat4, String> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if rows.len() != 4 {
        return Err(format!("expected 4 rows, found {}", rows.len()));
    }
    let mut m = ComplexMat4::zeros();
    for (r, line) in rows.iter().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(format!(
                "row {} has {} entries, expected 4",
                r + 1,
                fields.len()
            ));
        }
        for (col, field) in fields.iter().enumerate() {
            m[(r, col)] = parse_complex(field).ok_or_else(|| {
                format!("row {}, column {}: cannot parse `{field}`", r + 1, col + 1)
            })?;
        }
    }
    Ok(m)
}

/// Parses `re`, `imj`, or `re±imj`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let Some(body) = s.strip_suffix(['j', 'i']) else {
        return s.parse::<f64>().ok().map(c);
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let parse_im = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => t.parse::<f64>().ok(),
    };
    match split {
        Some(k) => Some(Complex64::new(
            body[..k].parse().ok()?,
            parse_im(&body[k..])?,
        )),
        None => Some(Complex64::new(0.0, parse_im(body)?)),
    }
}

/// Writes `m` in the raw matrix format, one row per line.
pub fn format_raw_matrix(m: &ComplexMat4) -> String {
    let mut out = String::new();
    for r in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|col| {
                let z = m[(r, col)];
                format!("{:e}{:+e}j", z.re, z.im)
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

impl fmt::Display for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..4 {
            for col in 0..4 {
                let z = self.mat[(r, col)];
                if col > 0 {
                    f.write_str("  ")?;
                }
                write!(f, "{:>11.8}{:+.8}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
