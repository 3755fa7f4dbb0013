//! Closed-form stationary states and asymptotic entanglement in the
//! strongly correlated regime (G = 1).
//!
//! Every formula is evaluated in terms of `y = e^{−βω} ∈ [0, 1]`, so the
//! zero-temperature (`y = 0`) and infinite-temperature (`y = 1`) ends are
//! ordinary arguments. Useful identities:
//!
//! ```text
//! u = 1 + y + y²            1 + 2 cosh βω = u / y
//! cosh βω − 1 = (1 − y)² / 2y
//! ```

use std::f64::consts::PI;

use crate::entanglement::Concurrence;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMat4};
use crate::state::{gibbs_state, projector, singlet_ket, Basis, DensityMatrix};

/// Reservoir temperature in the form the closed forms use.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalContext {
    beta_omega: f64,
}

impl ThermalContext {
    /// `beta_omega ∈ [0, ∞]`; 0 is the infinite-temperature limit and
    /// `f64::INFINITY` the zero-temperature one.
    pub fn new(beta_omega: f64) -> Result<Self> {
        if beta_omega.is_nan() || beta_omega < 0.0 {
            return Err(Error::domain(
                "beta*omega",
                beta_omega,
                "must lie in [0, ∞]",
            ));
        }
        Ok(ThermalContext { beta_omega })
    }

    /// From `T/ω ∈ [0, ∞]`.
    pub fn from_temperature(t_over_omega: f64) -> Result<Self> {
        if t_over_omega.is_nan() || t_over_omega < 0.0 {
            return Err(Error::domain("T/omega", t_over_omega, "must lie in [0, ∞]"));
        }
        Self::new(1.0 / t_over_omega)
    }

    pub fn zero_temperature() -> Self {
        ThermalContext {
            beta_omega: f64::INFINITY,
        }
    }

    pub fn infinite_temperature() -> Self {
        ThermalContext { beta_omega: 0.0 }
    }

    pub fn beta_omega(&self) -> f64 {
        self.beta_omega
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta_omega
    }

    /// Boltzmann factor `y = e^{−βω}`.
    pub fn y(&self) -> f64 {
        (-self.beta_omega).exp()
    }

    /// `u = 1 + y + y²`
    pub fn u(&self) -> f64 {
        let y = self.y();
        1.0 + y + y * y
    }

    /// `3/(1 + 2 cosh βω) = 3y/u`
    fn three_over(&self) -> f64 {
        3.0 * self.y() / self.u()
    }
}

fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::domain(name, v, "must lie in [0, 1]"))
    }
}

/// Stationary state reached from any initial state with singlet fidelity
/// `f`, in the canonical basis.
pub fn asymptotic_state(f: f64, ctx: ThermalContext) -> Result<DensityMatrix> {
    check_unit("F", f)?;
    let (y, u) = (ctx.y(), ctx.u());
    let rest = 1.0 - f;
    let mut m = ComplexMat4::zeros();
    m[(0, 0)] = c(y * y * rest / u);
    let sym = y * rest / (2.0 * u);
    m[(1, 1)] = c(sym + f / 2.0);
    m[(2, 2)] = c(sym + f / 2.0);
    m[(1, 2)] = c(sym - f / 2.0);
    m[(2, 1)] = c(sym - f / 2.0);
    m[(3, 3)] = c(rest / u);
    Ok(DensityMatrix::from_trusted(m, Basis::Canonical))
}

/// Fidelity `F_β = y/(1+y)²` at which the asymptotic state is the Gibbs
/// state.
pub fn threshold_fidelity(ctx: ThermalContext) -> f64 {
    let y = ctx.y();
    y / ((1.0 + y) * (1.0 + y))
}

/// Weight `p` of the singlet in the thermal Werner form
/// `(1 − p)ϱ_β + p|a⟩⟨a|` of the asymptotic state.
pub fn mixing_probability(f: f64, ctx: ThermalContext) -> Result<f64> {
    check_unit("F", f)?;
    let threshold = threshold_fidelity(ctx);
    if f < threshold {
        return Err(Error::BelowThreshold {
            fidelity: f,
            threshold,
        });
    }
    let y = ctx.y();
    Ok((((1.0 + y) * (1.0 + y) * f - y) / ctx.u()).clamp(0.0, 1.0))
}

/// `(1 − p)ϱ_β + p|a⟩⟨a|`.
pub fn thermal_werner_state(p: f64, ctx: ThermalContext) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    let gibbs = gibbs_state(ctx.beta_omega());
    let mat = gibbs.matrix() * c(1.0 - p) + projector(&singlet_ket()) * c(p);
    Ok(DensityMatrix::from_trusted(mat, Basis::Canonical))
}

/// Separability threshold `p₀ = 2y/(1 + 4y + y²)` of thermal Werner states.
pub fn werner_separability_threshold(ctx: ThermalContext) -> f64 {
    let y = ctx.y();
    2.0 * y / (1.0 + 4.0 * y + y * y)
}

/// Concurrence of the thermal Werner state with mixing probability `p`.
pub fn werner_concurrence(p: f64, ctx: ThermalContext) -> Result<Concurrence> {
    check_unit("p", p)?;
    Ok(Concurrence::clamped(
        p - 2.0 * threshold_fidelity(ctx) * (1.0 - p),
    ))
}

/// `max(0, F − 3(1 − F)/(1 + 2 cosh βω))`.
pub fn asymptotic_concurrence(f: f64, ctx: ThermalContext) -> Result<Concurrence> {
    check_unit("F", f)?;
    Ok(Concurrence::clamped(asymptotic_concurrence_raw(f, ctx)))
}

/// The expression inside the max, which changes sign at the entanglement
/// threshold.
pub fn asymptotic_concurrence_raw(f: f64, ctx: ThermalContext) -> f64 {
    f - ctx.three_over() * (1.0 - f)
}

/// Fidelity `F₀ = 3/(4 + 2 cosh βω)` above which the asymptotic state is
/// entangled.
pub fn entanglement_threshold(ctx: ThermalContext) -> f64 {
    let y = ctx.y();
    3.0 * y / (1.0 + 4.0 * y + y * y)
}

/// Temperature `T_c/ω` above which the asymptotic state for fidelity `f` is
/// separable. Defined for `0 ≤ f < 1/2`; at `f = 0` it is 0.
pub fn critical_temperature(f: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&f) {
        return Err(Error::domain(
            "F",
            f,
            "critical temperature exists only for 0 <= F < 1/2",
        ));
    }
    if f == 0.0 {
        return Ok(0.0);
    }
    let root = 3.0_f64.sqrt() * (3.0 - 8.0 * f + 4.0 * f * f).sqrt();
    Ok(1.0 / ((root + 3.0 - 4.0 * f) / (2.0 * f)).ln())
}

/// Singlet fidelity `(1 − α²)/2` of a product state with factor overlap `α`.
pub fn product_fidelity(alpha: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    Ok(0.5 * (1.0 - alpha * alpha))
}

/// Asymptotic concurrence for a pure product initial state with factor
/// overlap `α = |⟨φ|ψ⟩|`.
pub fn product_asymptotic_concurrence(alpha: f64, ctx: ThermalContext) -> Result<Concurrence> {
    check_unit("alpha", alpha)?;
    let (y, a2) = (ctx.y(), alpha * alpha);
    // ((1−α²) cosh βω − 1 − 2α²)/(1 + 2 cosh βω), multiplied through by y
    let num = 0.5 * (1.0 - a2) * (1.0 + y * y) - (1.0 + 2.0 * a2) * y;
    Ok(Concurrence::clamped(num / ctx.u()))
}

/// Critical temperature for a product initial state. `α = 0` gives
/// `f64::INFINITY`; `α = 1` is an error since no entanglement is ever
/// created.
pub fn product_critical_temperature(alpha: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    if alpha == 1.0 {
        return Err(Error::domain(
            "alpha",
            alpha,
            "parallel factors never become entangled",
        ));
    }
    if alpha == 0.0 {
        return Ok(f64::INFINITY);
    }
    let a2 = alpha * alpha;
    let root = 3.0_f64.sqrt() * (2.0 * a2 + a2 * a2).sqrt();
    Ok(1.0 / ((root + 1.0 + 2.0 * a2) / (1.0 - a2)).ln())
}

/// Singlet fidelity of the Gibbs state at `β₀ω`.
pub fn gibbs_fidelity(beta0_omega: f64) -> Result<f64> {
    Ok(threshold_fidelity(ThermalContext::new(beta0_omega)?))
}

/// Critical reservoir temperature for a Gibbs initial state at `T₀/ω`.
pub fn gibbs_critical_temperature(t0_over_omega: f64) -> Result<f64> {
    if t0_over_omega.is_nan() || t0_over_omega <= 0.0 {
        return Err(Error::domain("T0/omega", t0_over_omega, "must be positive"));
    }
    critical_temperature(gibbs_fidelity(1.0 / t0_over_omega)?)
}

/// Singlet fidelity `(1 − a²)(1 − cos ϑ)/2` of the maximally entangled
/// state with parameters `(a, ϑ₁, ϑ₂)`, `ϑ = ϑ₁ − ϑ₂`.
pub fn maxent_fidelity(a: f64, theta: f64) -> f64 {
    0.5 * (1.0 - a * a) * (1.0 - theta.cos())
}

/// Phase difference from the two phases of the maximally entangled family.
pub fn phase_difference(theta1: f64, theta2: f64) -> f64 {
    theta1 - theta2
}

/// Whether `(a, ϑ)` lies in the closed region where the fidelity is at
/// least 1/2, so the state stays entangled at every finite temperature.
pub fn in_entangled_region(a: f64, theta: f64) -> bool {
    if !(0.0..=std::f64::consts::FRAC_1_SQRT_2).contains(&a) {
        return false;
    }
    let a2 = a * a;
    let edge = (a2 / (a2 - 1.0)).clamp(-1.0, 1.0).acos();
    edge <= theta && theta <= 2.0 * PI - edge
}

/// Asymptotic concurrence for a maximally entangled initial state. Inside
/// the entangled region the dedicated formula is used; outside it the
/// result falls back to [`asymptotic_concurrence`] of the fidelity.
pub fn maxent_asymptotic_concurrence(
    a: f64,
    theta: f64,
    ctx: ThermalContext,
) -> Result<Concurrence> {
    check_unit("a", a)?;
    if !in_entangled_region(a, theta) {
        return asymptotic_concurrence(maxent_fidelity(a, theta), ctx);
    }
    Ok(Concurrence::clamped(maxent_asymptotic_concurrence_raw(
        a, theta, ctx,
    )))
}

fn maxent_asymptotic_concurrence_raw(a: f64, theta: f64, ctx: ThermalContext) -> f64 {
    let (y, b2) = (ctx.y(), 1.0 - a * a);
    let half_sin2 = (theta / 2.0).sin().powi(2);
    let num = b2 * half_sin2 * (1.0 + y * y) - 2.0 * y * b2 * theta.cos() - (1.0 + 2.0 * a * a) * y;
    num / ctx.u()
}

/// Zero-temperature value `(1 − a²) sin²(ϑ/2)`.
pub fn maxent_concurrence_max(a: f64, theta: f64) -> f64 {
    (1.0 - a * a) * (theta / 2.0).sin().powi(2)
}

/// Infinite-temperature value `−(a² + (1 − a²) cos ϑ)`.
pub fn maxent_concurrence_min(a: f64, theta: f64) -> f64 {
    -(a * a + (1.0 - a * a) * theta.cos())
}

/// Reservoir temperature at which a maximally entangled initial state
/// relaxes exactly to the reservoir's Gibbs state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GibbsReturn {
    Finite(f64),
    /// On the curve where the fidelity equals 1/4.
    Infinite,
    /// Fidelity above 1/4; no reservoir temperature works.
    Never,
}

/// Tolerance on `F − 1/4` for the infinite-temperature case.
const QUARTER_TOL: f64 = 1e-12;

pub fn gibbs_return_temperature(a: f64, theta: f64) -> GibbsReturn {
    let f = maxent_fidelity(a, theta);
    if (f - 0.25).abs() <= QUARTER_TOL {
        return GibbsReturn::Infinite;
    }
    if f > 0.25 {
        return GibbsReturn::Never;
    }
    if f <= 0.0 {
        return GibbsReturn::Finite(0.0);
    }
    let a2 = a * a;
    let cos = theta.cos();
    let num = a2 + (1.0 - a2) * cos + (2.0 * a2 - 1.0 + 2.0 * (1.0 - a2) * cos).max(0.0).sqrt();
    let den = (1.0 - a2) * (1.0 - cos);
    GibbsReturn::Finite(1.0 / (num / den).ln())
}

/// The phase difference on the infinite-return-temperature curve,
/// `arccos((2a² − 1)/(2(a² − 1)))` for `a ∈ [0, √3/2]`.
pub fn gibbs_return_curve(a: f64) -> Option<f64> {
    if !(0.0..=3.0_f64.sqrt() / 2.0).contains(&a) {
        return None;
    }
    let a2 = a * a;
    Some(
        ((2.0 * a2 - 1.0) / (2.0 * (a2 - 1.0)))
            .clamp(-1.0, 1.0)
            .acos(),
    )
}

/// Asymptotic concurrence for the X-class initial state with initial
/// concurrence `z`: `z + (1 − z)(cosh βω − 1)/(1 + 2 cosh βω)`.
pub fn xclass_asymptotic_concurrence(z: f64, ctx: ThermalContext) -> Result<Concurrence> {
    check_unit("z", z)?;
    let y = ctx.y();
    Ok(Concurrence::clamped(
        z + (1.0 - z) * (1.0 - y) * (1.0 - y) / (2.0 * ctx.u()),
    ))
}

/// Singlet fidelity `(1 + z)/2` of the X-class state.
pub fn xclass_fidelity(z: f64) -> f64 {
    0.5 * (1.0 + z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(beta_omega: f64) -> ThermalContext {
        ThermalContext::new(beta_omega).unwrap()
    }

    #[test]
    fn context_limits() {
        let hot = ThermalContext::infinite_temperature();
        assert_eq!((hot.y(), hot.u()), (1.0, 3.0));
        let cold = ThermalContext::zero_temperature();
        assert_eq!((cold.y(), cold.u()), (0.0, 1.0));
        assert_eq!(ThermalContext::from_temperature(0.0).unwrap(), cold);
        assert!(ThermalContext::new(-1.0).is_err());
    }

    #[test]
    fn threshold_fidelity_values() {
        assert_eq!(
            threshold_fidelity(ThermalContext::infinite_temperature()),
            0.25
        );
        assert_eq!(threshold_fidelity(ThermalContext::zero_temperature()), 0.0);
        assert!((threshold_fidelity(ctx(2f64.ln())) - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn mixing_probability_values() {
        let k = ctx(2f64.ln());
        let fb = threshold_fidelity(k);
        assert!(mixing_probability(fb, k).unwrap().abs() < 1e-15);
        assert!((mixing_probability(1.0, k).unwrap() - 1.0).abs() < 1e-15);
        // (2.25·0.5 − 0.5)/1.75
        assert!((mixing_probability(0.5, k).unwrap() - 0.625 / 1.75).abs() < 1e-15);
        assert!(matches!(
            mixing_probability(0.1, k),
            Err(Error::BelowThreshold { .. })
        ));
    }

    #[test]
    fn werner_values() {
        let k = ctx(0.7);
        assert!((werner_concurrence(1.0, k).unwrap().value() - 1.0).abs() < 1e-15);
        let p0 = werner_separability_threshold(k);
        assert!(werner_concurrence(p0, k).unwrap().value() < 1e-15);
        assert!(
            (werner_separability_threshold(ThermalContext::infinite_temperature()) - 1.0 / 3.0)
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn asymptotic_concurrence_values() {
        let k = ctx(1.0);
        assert_eq!(asymptotic_concurrence(1.0, k).unwrap().value(), 1.0);
        let f0 = entanglement_threshold(k);
        assert!(asymptotic_concurrence_raw(f0, k).abs() < 1e-15);
        // 0.5 − 1.5/(1 + 2 cosh 1)
        let cosh1 = 1f64.cosh();
        let expected = 0.5 - 1.5 / (1.0 + 2.0 * cosh1);
        assert!((asymptotic_concurrence(0.5, k).unwrap().value() - expected).abs() < 1e-15);
        assert!((expected - 0.132_907_293_4).abs() < 1e-10);
        assert!(asymptotic_concurrence(1.5, k).is_err());
    }

    #[test]
    fn critical_temperature_limits() {
        assert!(critical_temperature(0.5 - 1e-12).unwrap() > 1e3);
        assert!(critical_temperature(1e-9).unwrap() < 0.06);
        assert_eq!(critical_temperature(0.0).unwrap(), 0.0);
        assert!(critical_temperature(0.5).is_err());
        assert!(critical_temperature(0.7).is_err());
    }

    #[test]
    fn product_family() {
        assert!(
            (product_asymptotic_concurrence(0.0, ThermalContext::zero_temperature())
                .unwrap()
                .value()
                - 0.5)
                .abs()
                < 1e-15
        );
        for b in [0.1, 1.0, 5.0] {
            assert_eq!(
                product_asymptotic_concurrence(1.0, ctx(b)).unwrap().value(),
                0.0
            );
        }
        assert_eq!(product_critical_temperature(0.0).unwrap(), f64::INFINITY);
        assert!(product_critical_temperature(1.0).is_err());
        assert!(product_critical_temperature(1e-6).unwrap() > 5.0);
    }

    #[test]
    fn gibbs_family() {
        assert_eq!(gibbs_fidelity(0.0).unwrap(), 0.25);
        assert_eq!(gibbs_fidelity(f64::INFINITY).unwrap(), 0.0);
        assert!(gibbs_critical_temperature(1e-3).unwrap() < 1e-3);
        assert!(gibbs_critical_temperature(0.0).is_err());
    }

    #[test]
    fn maxent_fidelity_and_region() {
        assert!((maxent_fidelity(0.0, PI) - 1.0).abs() < 1e-15);
        let edge = std::f64::consts::FRAC_1_SQRT_2;
        assert!((maxent_fidelity(edge, PI) - 0.5).abs() < 1e-15);
        assert!(in_entangled_region(edge, PI));
        assert!((maxent_fidelity(0.5, PI) - 0.75).abs() < 1e-15);
        assert!(in_entangled_region(0.5, PI));
        assert!(!in_entangled_region(0.5, 0.3));
        assert!(!in_entangled_region(0.9, PI));
    }

    #[test]
    fn maxent_limits() {
        for b in [0.01, 1.0, 50.0] {
            assert!(
                (maxent_asymptotic_concurrence(0.0, PI, ctx(b))
                    .unwrap()
                    .value()
                    - 1.0)
                    .abs()
                    < 1e-15
            );
        }
        assert!((maxent_concurrence_max(0.5, PI) - 0.75).abs() < 1e-15);
        assert!((maxent_concurrence_min(0.5, PI) - 0.5).abs() < 1e-15);
        let cold = maxent_asymptotic_concurrence_raw(0.5, PI, ThermalContext::zero_temperature());
        let hot =
            maxent_asymptotic_concurrence_raw(0.5, PI, ThermalContext::infinite_temperature());
        assert!((cold - 0.75).abs() < 1e-15 && (hot - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gibbs_return_cases() {
        assert_eq!(
            gibbs_return_temperature(0.0, PI / 3.0),
            GibbsReturn::Infinite
        );
        assert_eq!(gibbs_return_temperature(0.0, PI), GibbsReturn::Never);
        assert_eq!(gibbs_return_temperature(1.0, 2.0), GibbsReturn::Finite(0.0));
        match gibbs_return_temperature(0.0, PI / 6.0) {
            GibbsReturn::Finite(t) => assert!((t - 0.3916).abs() < 1e-3),
            other => panic!("unexpected {other:?}"),
        }
        assert!((gibbs_return_curve(0.0).unwrap() - PI / 3.0).abs() < 1e-15);
        assert!(gibbs_return_curve(0.9).is_none());
    }

    #[test]
    fn xclass_limits() {
        let z = 0.3;
        assert!(
            (xclass_asymptotic_concurrence(z, ThermalContext::infinite_temperature())
                .unwrap()
                .value()
                - z)
                .abs()
                < 1e-15
        );
        assert!(
            (xclass_asymptotic_concurrence(z, ThermalContext::zero_temperature())
                .unwrap()
                .value()
                - (z + (1.0 - z) / 2.0))
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn asymptotic_state_corners() {
        let a = asymptotic_state(1.0, ctx(0.4)).unwrap();
        assert!((a.fidelity_singlet() - 1.0).abs() < 1e-15);
        assert!(asymptotic_state(-0.1, ctx(0.4)).is_err());
    }
}
