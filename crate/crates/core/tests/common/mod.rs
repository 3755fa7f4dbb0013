#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thermwerner::linalg::ComplexMat4;
use thermwerner::state::{format_raw_matrix, make_state, Basis, DensityMatrix, StateSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Full-rank random state `A A† / tr(A A†)` with uniform complex entries.
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let a = ComplexMat4::from_fn(|_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = a * a.adjoint();
    let tr = m.trace();
    DensityMatrix::with_tolerance(m / tr, Basis::Canonical, 1e-12).unwrap()
}

/// Random canonical-basis X state with only the (2,3) coherence.
pub fn random_x_state(rng: &mut impl Rng) -> DensityMatrix {
    let w: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..1.0));
    let total: f64 = w.iter().sum();
    let p = w.map(|v| v / total);
    let modulus = rng.random_range(0.0..1.0) * (p[1] * p[2]).sqrt();
    let phase = rng.random_range(0.0..2.0 * PI);
    let mut m = ComplexMat4::from_diagonal(&nalgebra::Vector4::from_iterator(
        p.iter().map(|&v| Complex64::new(v, 0.0)),
    ));
    m[(1, 2)] = Complex64::from_polar(modulus, phase);
    m[(2, 1)] = m[(1, 2)].conj();
    DensityMatrix::with_tolerance(m, Basis::Canonical, 1e-12).unwrap()
}

pub fn random_spec(rng: &mut impl Rng, family: usize) -> StateSpec {
    let angle = |rng: &mut dyn rand::RngCore, max: f64| rng.random_range(0.0..max);
    match family % 9 {
        0 => [
            StateSpec::CollectiveE,
            StateSpec::CollectiveS,
            StateSpec::CollectiveA,
            StateSpec::CollectiveG,
        ][rng.random_range(0..4)]
        .clone(),
        1 => StateSpec::Product {
            theta_a: angle(rng, PI),
            phi_a: angle(rng, 2.0 * PI),
            theta_b: angle(rng, PI),
            phi_b: angle(rng, 2.0 * PI),
        },
        2 => StateSpec::Gibbs {
            t0: rng.random_range(0.1..10.0),
        },
        3 => StateSpec::MaxEnt {
            a: rng.random_range(0.0..1.0),
            theta1: angle(rng, 2.0 * PI),
            theta2: angle(rng, 2.0 * PI),
        },
        4 => {
            let x: f64 = rng.random_range(0.05..0.95);
            let zmax = 2.0 * (x * (1.0 - x)).sqrt();
            StateSpec::XClass {
                x,
                z: rng.random_range(0.0..1.0) * zmax.min(1.0),
            }
        }
        5 => StateSpec::Eta {
            eta: rng.random_range(0.51 * PI..0.99 * PI),
        },
        6 => StateSpec::CollectiveA,
        7 => StateSpec::CollectiveE,
        _ => StateSpec::Product {
            theta_a: angle(rng, PI),
            phi_a: 0.0,
            theta_b: PI - angle(rng, PI),
            phi_b: 0.0,
        },
    }
}

/// A spread of initial states over every family; every tenth is a random
/// full-rank state read back from a raw matrix file.
pub fn initial_states(seed: u64, n: usize) -> Vec<(String, DensityMatrix)> {
    let mut rng = rng(seed);
    (0..n)
        .map(|k| {
            if k % 10 == 9 {
                let rho = random_density(&mut rng);
                let path = std::env::temp_dir().join(format!(
                    "thermwerner-raw-{}-{seed}-{k}.txt",
                    std::process::id()
                ));
                std::fs::write(&path, format_raw_matrix(rho.matrix())).unwrap();
                let spec = StateSpec::Raw(path.clone());
                let loaded = make_state(&spec).unwrap();
                std::fs::remove_file(&path).ok();
                (spec.to_string(), loaded)
            } else {
                let spec = random_spec(&mut rng, k);
                let rho = make_state(&spec).unwrap();
                (spec.to_string(), rho)
            }
        })
        .collect()
}

pub fn max_abs_real(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
