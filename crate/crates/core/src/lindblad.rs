//! The Lindblad generator for two atoms in a common thermal photon
//! reservoir, time propagation, and stationary states.
//!
//! The generator is `L = −i[H, ·] + L_D` with
//!
//! ```text
//! H   = (ω/2)(σ₃ᴬ + σ₃ᴮ) + Ω(σ₊ᴬσ₋ᴮ + σ₊ᴮσ₋ᴬ)
//! L_D = ½ Σⱼₖ Γ↓ⱼₖ (2σ₋ʲρσ₊ᵏ − σ₊ᵏσ₋ʲρ − ρσ₊ᵏσ₋ʲ)
//!           + Γ↑ⱼₖ (2σ₊ʲρσ₋ᵏ − σ₋ᵏσ₊ʲρ − ρσ₋ᵏσ₊ʲ)
//! ```
//!
//! where `Γ↓ⱼₖ = γⱼₖ(1 + n̄)`, `Γ↑ⱼₖ = γⱼₖ n̄`, `γ_AA = γ_BB = γ₀` and
//! `γ_AB = γ_BA = Gγ₀`. Time is measured in units of `1/γ₀` only when
//! `γ₀ = 1`; in general all rates carry their own units.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    c, expm, kron4, max_abs, null_space, unvec4, vec4, ComplexMat4, SuperOp, SuperVec, I, ONE, ZERO,
};
use crate::state::{collective, collective_to_canonical, singlet_ket, Basis, DensityMatrix};

/// Smallest βω accepted by the dynamics; the photon number diverges as
/// βω → 0.
pub const MIN_BETA_OMEGA: f64 = 1e-6;

/// Invariant tolerance applied to propagated states.
pub const PROPAGATION_TOL: f64 = 1e-8;

/// Singular values below this fraction of the largest are treated as zero
/// when extracting the stationary subspace.
const NULL_SPACE_RTOL: f64 = 1e-10;

/// `‖Lρ‖_max` below which a propagated state counts as stationary.
const STATIONARITY_TOL: f64 = 1e-10;

/// Agreement required between the null-space and propagation routes.
const STEADY_AGREEMENT_TOL: f64 = 1e-8;

/// Mean thermal photon number `1/(e^{βω} − 1)` at the transition
/// frequency. `f64::INFINITY` (zero temperature) gives exactly 0.
pub fn mean_photon_number(beta_omega: f64) -> Result<f64> {
    if beta_omega.is_nan() || beta_omega <= 0.0 {
        return Err(Error::domain(
            "beta*omega",
            beta_omega,
            "must be positive (infinite temperature is not a valid reservoir)",
        ));
    }
    if beta_omega < MIN_BETA_OMEGA {
        return Err(Error::domain(
            "beta*omega",
            beta_omega,
            "below the minimum of 1e-6 accepted by the dynamics",
        ));
    }
    if beta_omega == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(1.0 / beta_omega.exp_m1())
}

/// Physical configuration of the atoms and the reservoir.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReservoirParams {
    /// Transition frequency ω.
    pub omega: f64,
    /// Single-atom spontaneous emission rate γ₀.
    pub gamma0: f64,
    /// Collective factor G, with γ = Gγ₀.
    pub g: f64,
    /// Dipole–dipole coupling Ω.
    pub cap_omega: f64,
    /// Inverse temperature β; `f64::INFINITY` is the zero-temperature
    /// reservoir.
    pub beta: f64,
}

impl Default for ReservoirParams {
    fn default() -> Self {
        ReservoirParams {
            omega: 1.0,
            gamma0: 1.0,
            g: 1.0,
            cap_omega: 0.0,
            beta: 1.0,
        }
    }
}

impl ReservoirParams {
    pub fn new(omega: f64, gamma0: f64, g: f64, cap_omega: f64, beta: f64) -> Result<Self> {
        let p = ReservoirParams {
            omega,
            gamma0,
            g,
            cap_omega,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Default parameters with the given collective factor and βω.
    pub fn with_g_beta_omega(g: f64, beta_omega: f64) -> Result<Self> {
        let p = ReservoirParams {
            g,
            beta: beta_omega,
            ..Default::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::domain("omega", self.omega, "must be positive"));
        }
        if !(self.gamma0 > 0.0 && self.gamma0.is_finite()) {
            return Err(Error::domain("gamma0", self.gamma0, "must be positive"));
        }
        if !(0.0..=1.0).contains(&self.g) {
            return Err(Error::domain("G", self.g, "must lie in [0, 1]"));
        }
        if !self.cap_omega.is_finite() {
            return Err(Error::domain("Omega", self.cap_omega, "must be finite"));
        }
        mean_photon_number(self.beta_omega()).map(|_| ())
    }

    pub fn beta_omega(&self) -> f64 {
        self.beta * self.omega
    }

    pub fn mean_photon_number(&self) -> Result<f64> {
        mean_photon_number(self.beta_omega())
    }

    /// Collective damping constant γ = Gγ₀.
    pub fn gamma(&self) -> f64 {
        self.g * self.gamma0
    }

    /// True in the strongly correlated regime γ = γ₀, where the singlet is
    /// decoupled and the stationary states form a one-parameter family.
    pub fn is_strongly_correlated(&self) -> bool {
        self.g == 1.0
    }

    pub fn hamiltonian(&self) -> ComplexMat4 {
        let ops = Ladder::new();
        (ops.sz[0] + ops.sz[1]) * c(self.omega / 2.0)
            + (ops.raise[0] * ops.lower[1] + ops.raise[1] * ops.lower[0]) * c(self.cap_omega)
    }
}

/// σ₊, σ₋, σ₃ for atoms A (index 0) and B (index 1) in the canonical basis.
struct Ladder {
    raise: [ComplexMat4; 2],
    lower: [ComplexMat4; 2],
    sz: [ComplexMat4; 2],
}

impl Ladder {
    fn new() -> Self {
        // single-qubit ordering |1⟩, |0⟩
        let id = nalgebra::Matrix2::<Complex64>::identity();
        let raise = Matrix2::new(ZERO, ONE, ZERO, ZERO);
        let sz = Matrix2::new(ONE, ZERO, ZERO, -ONE);
        let lift = |m: &Matrix2<Complex64>, atom: usize| -> ComplexMat4 {
            let k = if atom == 0 {
                m.kronecker(&id)
            } else {
                id.kronecker(m)
            };
            ComplexMat4::from_column_slice(k.as_slice())
        };
        Ladder {
            raise: [lift(&raise, 0), lift(&raise, 1)],
            lower: [lift(&raise.adjoint(), 0), lift(&raise.adjoint(), 1)],
            sz: [lift(&sz, 0), lift(&sz, 1)],
        }
    }
}

/// Rate matrix γⱼₖ.
fn rate_matrix(p: &ReservoirParams) -> [[f64; 2]; 2] {
    let (g0, g) = (p.gamma0, p.gamma());
    [[g0, g], [g, g0]]
}

/// Applies the generator directly to a 4×4 matrix (canonical basis),
/// without going through the superoperator.
pub fn apply_generator(p: &ReservoirParams, rho: &ComplexMat4) -> Result<ComplexMat4> {
    let n = p.mean_photon_number()?;
    let h = p.hamiltonian();
    let ops = Ladder::new();
    let rates = rate_matrix(p);
    let mut out = (h * rho - rho * h) * (-I);
    for (j, row) in rates.iter().enumerate() {
        for (k, &rate) in row.iter().enumerate() {
            let down = rate * (1.0 + n);
            let up = rate * n;
            let (lj, rk) = (&ops.lower[j], &ops.raise[k]);
            let rl = rk * lj;
            out += (lj * rho * rk * c(2.0) - rl * rho - rho * rl) * c(0.5 * down);
            let (rj, lk) = (&ops.raise[j], &ops.lower[k]);
            let lr = lk * rj;
            out += (rj * rho * lk * c(2.0) - lr * rho - rho * lr) * c(0.5 * up);
        }
    }
    Ok(out)
}

/// Matrix of the generator acting on column-stacked density matrices.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    mat: SuperOp,
    params: ReservoirParams,
}

/// Builds the Liouvillian. With column stacking `vec(AXB) = (Bᵀ ⊗ A) vec X`,
/// so the commutator part is `−i(1 ⊗ H − Hᵀ ⊗ 1)`.
pub fn build_liouvillian(p: &ReservoirParams) -> Result<Liouvillian> {
    p.validate()?;
    let n = p.mean_photon_number()?;
    let id = ComplexMat4::identity();
    let h = p.hamiltonian();
    let ops = Ladder::new();
    let rates = rate_matrix(p);

    let mut mat = (kron4(&id, &h) - kron4(&h.transpose(), &id)) * (-I);
    // D[J, K]ρ = J ρ K − ½ K J ρ − ½ ρ K J
    let dissipator = |jump: &ComplexMat4, partner: &ComplexMat4| -> SuperOp {
        let kj = partner * jump;
        kron4(&partner.transpose(), jump) - (kron4(&id, &kj) + kron4(&kj.transpose(), &id)) * c(0.5)
    };
    for (j, row) in rates.iter().enumerate() {
        for (k, &rate) in row.iter().enumerate() {
            let down = rate * (1.0 + n);
            let up = rate * n;
            mat += dissipator(&ops.lower[j], &ops.raise[k]) * c(down);
            if up != 0.0 {
                mat += dissipator(&ops.raise[j], &ops.lower[k]) * c(up);
            }
        }
    }
    Ok(Liouvillian { mat, params: *p })
}

/// Column-stacked index of collective element `(row, col)`.
const fn idx(row: usize, col: usize) -> usize {
    4 * col + row
}

impl Liouvillian {
    pub fn new(p: &ReservoirParams) -> Result<Self> {
        build_liouvillian(p)
    }

    pub fn matrix(&self) -> &SuperOp {
        &self.mat
    }

    pub fn params(&self) -> &ReservoirParams {
        &self.params
    }

    /// `L ρ` in the canonical basis.
    pub fn apply(&self, rho: &ComplexMat4) -> ComplexMat4 {
        unvec4(&(self.mat * vec4(rho)))
    }

    /// The same superoperator with matrix elements taken in the collective
    /// basis `|e⟩, |s⟩, |a⟩, |g⟩`.
    pub fn in_collective_basis(&self) -> SuperOp {
        let u = collective_to_canonical();
        // vec(U X U†) = (Ū ⊗ U) vec X
        let w = kron4(&u.conjugate(), &u);
        w.adjoint() * self.mat * w
    }

    /// Rate matrix `M` with `d/dt (ρ_ee, ρ_ss, ρ_aa, ρ_gg)ᵀ = M (…)ᵀ`,
    /// extracted from the generator.
    pub fn diagonal_block(&self) -> Matrix4<f64> {
        let lc = self.in_collective_basis();
        Matrix4::from_fn(|r, k| lc[(idx(r, r), idx(k, k))].re)
    }

    /// Coupled equations for `(ρ_es, ρ_sg)`.
    pub fn es_sg_block(&self) -> Matrix2<Complex64> {
        self.block([
            (collective::E, collective::S),
            (collective::S, collective::G),
        ])
    }

    /// Coupled equations for `(ρ_ea, ρ_ag)`.
    pub fn ea_ag_block(&self) -> Matrix2<Complex64> {
        self.block([
            (collective::E, collective::A),
            (collective::A, collective::G),
        ])
    }

    /// Complex rate `λ` with `dρ_eg/dt = λ ρ_eg`.
    pub fn eg_rate(&self) -> Complex64 {
        let k = idx(collective::E, collective::G);
        self.in_collective_basis()[(k, k)]
    }

    /// Complex rate `λ` with `dρ_sa/dt = λ ρ_sa`.
    pub fn sa_rate(&self) -> Complex64 {
        let k = idx(collective::S, collective::A);
        self.in_collective_basis()[(k, k)]
    }

    fn block(&self, elements: [(usize, usize); 2]) -> Matrix2<Complex64> {
        let lc = self.in_collective_basis();
        let ix = elements.map(|(r, k)| idx(r, k));
        Matrix2::from_fn(|r, k| lc[(ix[r], ix[k])])
    }

    /// `exp(L t)`.
    pub fn propagator(&self, t: f64) -> Result<SuperOp> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::domain("t", t, "time must be finite and >= 0"));
        }
        expm(&(self.mat * c(t))).ok_or_else(|| Error::Numerical("matrix exponential failed".into()))
    }

    /// Evolves `rho0` to time `t` with the matrix exponential.
    pub fn evolve(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        let v = self.propagator(t)? * vec4(rho0.canonical().matrix());
        checked_state(unvec4(&v), t)
    }
}

fn checked_state(mat: ComplexMat4, t: f64) -> Result<DensityMatrix> {
    DensityMatrix::with_tolerance(mat, Basis::Canonical, PROPAGATION_TOL)
        .map_err(|e| Error::Numerical(format!("state at t = {t} left the state space: {e}")))
}

/// The generator-derived diagonal block.
pub fn diagonal_block(p: &ReservoirParams) -> Result<Matrix4<f64>> {
    Ok(build_liouvillian(p)?.diagonal_block())
}

/// `exp(L t) ρ₀`, returned in the canonical basis.
pub fn propagate(rho0: &DensityMatrix, p: &ReservoirParams, t: f64) -> Result<DensityMatrix> {
    build_liouvillian(p)?.evolve(rho0, t)
}

/// Fixed-step classical Runge–Kutta integration of `dρ/dt = Lρ`, with the
/// largest step not exceeding `dt_max`.
pub fn propagate_rk(
    rho0: &DensityMatrix,
    p: &ReservoirParams,
    t: f64,
    dt_max: f64,
) -> Result<DensityMatrix> {
    if !(dt_max > 0.0 && dt_max.is_finite()) {
        return Err(Error::domain("dt_max", dt_max, "must be positive"));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain("t", t, "time must be finite and >= 0"));
    }
    let l = build_liouvillian(p)?;
    let steps = (t / dt_max).ceil().max(0.0) as usize;
    let mut v: SuperVec = vec4(rho0.canonical().matrix());
    if steps > 0 {
        let h = t / steps as f64;
        let (half, full, sixth) = (c(h / 2.0), c(h), c(h / 6.0));
        let m = &l.mat;
        for _ in 0..steps {
            let k1 = m * v;
            let k2 = m * (v + k1 * half);
            let k3 = m * (v + k2 * half);
            let k4 = m * (v + k3 * full);
            v += (k1 + (k2 + k3) * c(2.0) + k4) * sixth;
        }
    }
    checked_state(unvec4(&v), t)
}

/// Stationary state from the null space of the generator alone.
///
/// For G < 1 the null space is one-dimensional and the result does not
/// depend on `rho0`. For G = 1 it is two-dimensional and the member with
/// unit trace and the singlet fidelity of `rho0` is returned.
pub fn stationary_from_null_space(
    p: &ReservoirParams,
    rho0: &DensityMatrix,
) -> Result<DensityMatrix> {
    let l = build_liouvillian(p)?;
    let basis = null_space(&l.mat, NULL_SPACE_RTOL);
    let expected = if p.is_strongly_correlated() { 2 } else { 1 };
    if basis.len() != expected {
        return Err(Error::Degeneracy {
            found: basis.len(),
            expected,
        });
    }
    let mats: Vec<ComplexMat4> = basis.iter().map(unvec4).collect();
    let mat = if expected == 1 {
        let tr = mats[0].trace();
        mats[0] / tr
    } else {
        let a = singlet_ket();
        let overlap = |m: &ComplexMat4| (a.adjoint() * m * a)[(0, 0)];
        let system = Matrix2::new(
            mats[0].trace(),
            mats[1].trace(),
            overlap(&mats[0]),
            overlap(&mats[1]),
        );
        let rhs = nalgebra::Vector2::new(ONE, c(rho0.fidelity_singlet()));
        let coef = system.lu().solve(&rhs).ok_or(Error::Degeneracy {
            found: 2,
            expected: 2,
        })?;
        mats[0] * coef[0] + mats[1] * coef[1]
    };
    let residual = max_abs(&l.apply(&mat));
    if residual > STATIONARITY_TOL {
        return Err(Error::Numerical(format!(
            "null-space state has residual |Lρ| = {residual:e}"
        )));
    }
    DensityMatrix::with_tolerance(mat, Basis::Canonical, PROPAGATION_TOL)
        .map_err(|e| Error::Numerical(format!("null-space state is not a density matrix: {e}")))
}

/// Propagates `rho0` until `‖Lρ‖_max < 1e-10`, starting at `t_start` and
/// doubling the time up to `t_limit`.
pub fn stationary_by_propagation(
    p: &ReservoirParams,
    rho0: &DensityMatrix,
    t_start: f64,
    t_limit: f64,
) -> Result<DensityMatrix> {
    let l = build_liouvillian(p)?;
    let mut t = t_start;
    loop {
        let rho = l.evolve(rho0, t)?;
        let residual = max_abs(&l.apply(rho.matrix()));
        if residual < STATIONARITY_TOL {
            return Ok(rho);
        }
        if t >= t_limit {
            return Err(Error::NotConverged { t, residual });
        }
        t = (2.0 * t).min(t_limit);
    }
}

/// Stationary state reached from `rho0`.
///
/// Computed from the null space of the generator and cross-checked against
/// propagation from `rho0` (starting at t = 200, doubling up to t = 12800);
/// the two must agree to 1e-8. At zero temperature with G = 1 coherences
/// between `|a⟩` and `|g⟩` never decay, and propagation reports
/// [`Error::NotConverged`].
pub fn steady_state(p: &ReservoirParams, rho0: &DensityMatrix) -> Result<DensityMatrix> {
    let from_null = stationary_from_null_space(p, rho0)?;
    let from_prop = stationary_by_propagation(p, rho0, 200.0 / p.gamma0, 12800.0 / p.gamma0)?;
    let diff = from_null.max_abs_diff(&from_prop);
    if diff > STEADY_AGREEMENT_TOL {
        return Err(Error::Numerical(format!(
            "null-space and propagated stationary states differ by {diff:e}"
        )));
    }
    Ok(from_null)
}
