mod common;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use thermwerner::lindblad::{
    build_liouvillian, mean_photon_number, propagate, propagate_rk, steady_state, Liouvillian,
    ReservoirParams,
};
use thermwerner::state::{collective, gibbs_state, Basis, DensityMatrix};

use common::{initial_states, random_density, rng};

fn params(omega: f64, gamma0: f64, g: f64, cap: f64, beta_omega: f64) -> ReservoirParams {
    ReservoirParams::new(omega, gamma0, g, cap, beta_omega / omega).unwrap()
}

fn random_params(rng: &mut impl Rng) -> ReservoirParams {
    params(
        rng.random_range(0.5..2.0),
        rng.random_range(0.2..1.5),
        rng.random_range(0.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(0.2..3.0),
    )
}

#[test]
fn trace_is_preserved() {
    let mut rng = rng(10);
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let rho0 = random_density(&mut rng);
        for t in [0.1, 1.0, 5.0] {
            let rho = propagate(&rho0, &p, t).unwrap();
            assert!((rho.trace() - 1.0).norm() < 1e-12);
        }
    }
}

#[test]
fn runge_kutta_agrees_with_exponential() {
    let mut rng = rng(11);
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let rho0 = random_density(&mut rng);
        let t = rng.random_range(0.5..3.0);
        let exact = propagate(&rho0, &p, t).unwrap();
        let rk = propagate_rk(&rho0, &p, t, 1e-3).unwrap();
        assert!(exact.max_abs_diff(&rk) < 1e-8);
    }
}

#[test]
fn runge_kutta_is_fourth_order() {
    let p = params(1.0, 1.0, 0.7, 0.3, 1.0);
    let rho0 = random_density(&mut rng(12));
    let exact = propagate(&rho0, &p, 2.0).unwrap();
    let err = |dt: f64| exact.max_abs_diff(&propagate_rk(&rho0, &p, 2.0, dt).unwrap());
    let ratio = err(0.1) / err(0.05);
    assert!((12.0..20.0).contains(&ratio), "error ratio {ratio}");
}

fn rotating(x: usize, y: usize) -> DensityMatrix {
    let mut m = thermwerner::linalg::ComplexMat4::zeros();
    for (r, k) in [(x, x), (x, y), (y, x), (y, y)] {
        m[(r, k)] = Complex64::new(0.5, 0.0);
    }
    DensityMatrix::new(m, Basis::Collective).unwrap()
}

#[test]
fn eg_and_sa_coherences_are_pure_exponentials() {
    let mut rng = rng(13);
    for _ in 0..5 {
        let p = random_params(&mut rng);
        let l = Liouvillian::new(&p).unwrap();
        let n = p.mean_photon_number().unwrap();
        let eg = -Complex64::new((1.0 + 2.0 * n) * p.gamma0, 2.0 * p.omega);
        let sa = -Complex64::new((1.0 + 2.0 * n) * p.gamma0, 2.0 * p.cap_omega);
        assert!((l.eg_rate() - eg).norm() < 1e-12);
        assert!((l.sa_rate() - sa).norm() < 1e-12);
        for ((x, y), rate) in [
            ((collective::E, collective::G), eg),
            ((collective::S, collective::A), sa),
        ] {
            let rho0 = rotating(x, y);
            for t in [0.5, 2.0] {
                let z = l.evolve(&rho0, t).unwrap().collective().entry(x, y);
                assert!((z - 0.5 * (rate * t).exp()).norm() < 1e-10);
            }
        }
    }
}

/// The coupled coherence equations, with the frequency of ρ_es taken as
/// `−i(ω − Ω)`, the Bohr frequency of the |e⟩ ↔ |s⟩ transition.
#[test]
fn coherence_blocks_match_rate_equations() {
    let mut rng = rng(14);
    for _ in 0..10 {
        let p = random_params(&mut rng);
        let l = Liouvillian::new(&p).unwrap();
        let (g0, gm, w, cap) = (p.gamma0, p.gamma(), p.omega, p.cap_omega);
        let n = p.mean_photon_number().unwrap();
        let cx = Complex64::new;
        let es_sg = Matrix2::new(
            -cx(0.5 * ((1.0 + 2.0 * n) * gm + (3.0 + 4.0 * n) * g0), w - cap),
            cx((g0 + gm) * n, 0.0),
            cx((g0 + gm) * (1.0 + n), 0.0),
            -cx(0.5 * ((1.0 + 2.0 * n) * gm + (1.0 + 4.0 * n) * g0), w + cap),
        );
        let ea_ag = Matrix2::new(
            cx(
                0.5 * ((1.0 + 2.0 * n) * gm - (3.0 + 4.0 * n) * g0),
                -(w + cap),
            ),
            cx(-(g0 - gm) * n, 0.0),
            cx(-(g0 - gm) * (1.0 + n), 0.0),
            -cx(0.5 * ((1.0 + 4.0 * n) * g0 - (1.0 + 2.0 * n) * gm), w - cap),
        );
        assert!(
            (l.es_sg_block() - es_sg).norm() < 1e-12,
            "{}",
            l.es_sg_block()
        );
        assert!(
            (l.ea_ag_block() - ea_ag).norm() < 1e-12,
            "{}",
            l.ea_ag_block()
        );
    }
}

#[test]
fn dipole_coupling_leaves_populations_alone() {
    let mut rng = rng(15);
    for _ in 0..5 {
        let base = random_params(&mut rng);
        let shifted = ReservoirParams {
            cap_omega: base.cap_omega + 0.8,
            ..base
        };
        let d0 = build_liouvillian(&base).unwrap().diagonal_block();
        let d1 = build_liouvillian(&shifted).unwrap().diagonal_block();
        assert!((d0 - d1).abs().max() < 1e-14);
        // so do the G < 1 stationary states
        if base.g < 1.0 {
            let rho0 = random_density(&mut rng);
            let a = steady_state(&base, &rho0).unwrap();
            let b = steady_state(&shifted, &rho0).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-9);
        }
    }
}

#[test]
fn detailed_balance_below_strong_correlation() {
    for (g, beta_omega) in [(0.0, 0.4), (0.5, 1.0), (0.99, 2.5)] {
        let p = params(1.0, 1.0, g, 0.2, beta_omega);
        let rho = steady_state(&p, &DensityMatrix::maximally_mixed())
            .unwrap()
            .collective();
        let pop = |k| rho.entry(k, k).re;
        let y = (-beta_omega).exp();
        assert!((pop(collective::E) - y * y * pop(collective::G)).abs() < 1e-10);
        assert!((pop(collective::S) - y * pop(collective::G)).abs() < 1e-10);
        assert!(rho.max_abs_diff(&gibbs_state(beta_omega)) < 1e-10);
    }
}

#[test]
fn coherences_vanish_at_strong_correlation() {
    // ρ_ag relaxes at rate n̄γ₀, which bounds the useful range of βω at t = 80
    for beta_omega in [0.2, 0.5, 1.0, 1.5] {
        let l = Liouvillian::new(&params(1.0, 1.0, 1.0, 0.3, beta_omega)).unwrap();
        for (_, rho0) in initial_states(16, 10) {
            let rho = l.evolve(&rho0, 80.0).unwrap().collective();
            for r in 0..4 {
                for k in 0..4 {
                    if r != k {
                        assert!(rho.entry(r, k).norm() < 1e-8, "βω={beta_omega} ({r},{k})");
                    }
                }
            }
        }
    }
}

#[test]
fn slowest_coherence_decays_at_photon_number_rate() {
    for beta_omega in [2.0, 3.0, 5.0] {
        let l = Liouvillian::new(&params(1.0, 1.0, 1.0, 0.0, beta_omega)).unwrap();
        let n = mean_photon_number(beta_omega).unwrap();
        let slowest = l
            .ea_ag_block()
            .eigenvalues()
            .map(|ev| ev.iter().map(|z| -z.re).fold(f64::INFINITY, f64::min));
        let slowest = slowest.unwrap_or_else(|| {
            // complex eigenvalues: use the characteristic polynomial
            let m = l.ea_ag_block();
            let tr = m.trace();
            let det = m.determinant();
            let disc = (tr * tr - det * 4.0).sqrt();
            let roots = [(tr + disc) / 2.0, (tr - disc) / 2.0];
            roots.iter().map(|z| -z.re).fold(f64::INFINITY, f64::min)
        });
        assert!(
            (slowest - n).abs() < 1e-10,
            "βω={beta_omega}: {slowest} vs {n}"
        );
    }
}
