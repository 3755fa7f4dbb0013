//! One-parameter sweeps of the derived quantities.
//!
//! Every grid point is evaluated independently, so the points are mapped in
//! parallel; rows come back in grid order, which is ascending in the swept
//! variable.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::asymptotics::{
    asymptotic_concurrence, critical_temperature, entanglement_threshold, gibbs_return_temperature,
    maxent_asymptotic_concurrence, maxent_fidelity, mixing_probability, phase_difference,
    product_asymptotic_concurrence, product_fidelity, threshold_fidelity,
    xclass_asymptotic_concurrence, xclass_fidelity, GibbsReturn, ThermalContext,
};
use crate::config::{GridRange, RunConfig};
use crate::entanglement::{concurrence, Concurrence};
use crate::error::{Error, Result};
use crate::lindblad::steady_state;
use crate::state::{make_state, StateSpec};
use crate::table::SweepTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    /// Reservoir temperature `T/ω`.
    Temp,
    /// Reservoir correlation `G`; each point runs the full dynamics.
    G,
    /// Singlet fidelity of the initial state.
    F,
    /// Factor overlap of a product initial state.
    Alpha,
    /// Initial concurrence of an X-class state.
    Z,
    /// Amplitude `a` of a maximally entangled state (phases from `--state`).
    A,
    /// Phase difference `ϑ₁ − ϑ₂` of a maximally entangled state (`a` from
    /// `--state`).
    Theta,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Temp => "temp",
            SweepParam::G => "G",
            SweepParam::F => "F",
            SweepParam::Alpha => "alpha",
            SweepParam::Z => "z",
            SweepParam::A => "a",
            SweepParam::Theta => "theta",
        }
    }

    /// Column labels of a sweep over this parameter.
    pub fn columns(self) -> Vec<&'static str> {
        let mut cols = vec![self.name()];
        if self != SweepParam::F {
            cols.push("F");
        }
        cols.extend(["F_beta", "F0", "p", "C_as", "T_c"]);
        match self {
            SweepParam::G => cols.push("concurrence"),
            SweepParam::A | SweepParam::Theta => cols.push("T_return"),
            _ => {}
        }
        cols
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "temp" | "T" => SweepParam::Temp,
            "G" | "g" => SweepParam::G,
            "F" | "f" => SweepParam::F,
            "alpha" => SweepParam::Alpha,
            "z" => SweepParam::Z,
            "a" => SweepParam::A,
            "theta" => SweepParam::Theta,
            other => {
                return Err(Error::Parse {
                    pos: 1,
                    msg: format!(
                    "unknown sweep parameter `{other}` (expected temp, G, F, alpha, z, a or theta)"
                ),
                })
            }
        })
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sweeps `param` over `range`, holding everything else at `base`.
pub fn sweep_table(param: SweepParam, range: &GridRange, base: &RunConfig) -> Result<SweepTable> {
    let point = Point::new(param, base)?;
    let rows: Vec<Vec<Option<f64>>> = range
        .points()
        .par_iter()
        .map(|&x| point.row(x))
        .collect::<Result<_>>()?;
    let mut table = SweepTable::new(param.columns());
    for row in rows {
        table.push(row)?;
    }
    Ok(table)
}

/// What stays fixed across the grid.
struct Point<'a> {
    param: SweepParam,
    base: &'a RunConfig,
    /// `(a, ϑ)` for the maximally entangled sweeps.
    maxent: Option<(f64, f64)>,
    /// Fidelity of the configured initial state, for the temperature sweep.
    state_fidelity: Option<f64>,
}

impl<'a> Point<'a> {
    fn new(param: SweepParam, base: &'a RunConfig) -> Result<Self> {
        let maxent = match (param, &base.state) {
            (SweepParam::A | SweepParam::Theta, StateSpec::MaxEnt { a, theta1, theta2 }) => {
                Some((*a, phase_difference(*theta1, *theta2)))
            }
            (SweepParam::A | SweepParam::Theta, other) => {
                return Err(Error::InvalidState(format!(
                    "sweeping `{param}` needs a maxent:a,th1,th2 state, got `{other}`"
                )))
            }
            _ => None,
        };
        let state_fidelity = match param {
            // round-off can push a computed fidelity just outside [0, 1]
            SweepParam::Temp => Some(make_state(&base.state)?.fidelity_singlet().clamp(0.0, 1.0)),
            _ => None,
        };
        Ok(Point {
            param,
            base,
            maxent,
            state_fidelity,
        })
    }

    fn row(&self, x: f64) -> Result<Vec<Option<f64>>> {
        let ctx = match self.param {
            SweepParam::Temp => ThermalContext::from_temperature(x)?,
            _ => ThermalContext::new(self.base.beta_omega)?,
        };
        let unit = |name: &'static str| {
            if (0.0..=1.0).contains(&x) {
                Ok(x)
            } else {
                Err(Error::domain(name, x, "must lie in [0, 1]"))
            }
        };
        let mut extra = None;
        let (f, c_as): (f64, Option<Concurrence>) = match self.param {
            SweepParam::Temp => {
                let f = self.state_fidelity.expect("set for temperature sweeps");
                (f, Some(asymptotic_concurrence(f, ctx)?))
            }
            SweepParam::F => {
                let f = unit("F")?;
                (f, Some(asymptotic_concurrence(f, ctx)?))
            }
            SweepParam::Alpha => {
                let alpha = unit("alpha")?;
                (
                    product_fidelity(alpha)?,
                    Some(product_asymptotic_concurrence(alpha, ctx)?),
                )
            }
            SweepParam::Z => {
                let z = unit("z")?;
                (
                    xclass_fidelity(z),
                    Some(xclass_asymptotic_concurrence(z, ctx)?),
                )
            }
            SweepParam::A | SweepParam::Theta => {
                let (a0, theta0) = self.maxent.expect("checked in Point::new");
                let (a, theta) = match self.param {
                    SweepParam::A => (unit("a")?, theta0),
                    _ => (a0, x),
                };
                extra = match gibbs_return_temperature(a, theta) {
                    GibbsReturn::Finite(t) => Some(t),
                    GibbsReturn::Infinite | GibbsReturn::Never => None,
                };
                (
                    maxent_fidelity(a, theta),
                    Some(maxent_asymptotic_concurrence(a, theta, ctx)?),
                )
            }
            SweepParam::G => {
                let g = unit("G")?;
                let config = RunConfig {
                    g,
                    ..self.base.clone()
                };
                let rho = steady_state(&config.params()?, &make_state(&config.state)?)?;
                extra = Some(concurrence(&rho)?.value());
                let f = rho.fidelity_singlet().clamp(0.0, 1.0);
                // The closed forms describe the strongly correlated regime only.
                let c_as = if g == 1.0 {
                    Some(asymptotic_concurrence(f, ctx)?)
                } else {
                    None
                };
                (f, c_as)
            }
        };
        let closed_forms = c_as.is_some();
        let p = if closed_forms {
            mixing_probability(f, ctx).ok()
        } else {
            None
        };
        let t_c = if closed_forms {
            critical_temperature(f).ok()
        } else {
            None
        };
        let mut row = vec![Some(x)];
        if self.param != SweepParam::F {
            row.push(Some(f));
        }
        row.extend([
            Some(threshold_fidelity(ctx)),
            Some(entanglement_threshold(ctx)),
            p,
            c_as.map(Concurrence::value),
            t_c,
        ]);
        if matches!(
            self.param,
            SweepParam::G | SweepParam::A | SweepParam::Theta
        ) {
            row.push(extra);
        }
        Ok(row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(s: &str) -> GridRange {
        s.parse().unwrap()
    }

    #[test]
    fn param_names_round_trip() {
        for p in [
            SweepParam::Temp,
            SweepParam::G,
            SweepParam::F,
            SweepParam::Alpha,
            SweepParam::Z,
            SweepParam::A,
            SweepParam::Theta,
        ] {
            assert_eq!(p.name().parse::<SweepParam>().unwrap(), p);
        }
        assert!("beta".parse::<SweepParam>().is_err());
    }

    #[test]
    fn singlet_temperature_sweep_stays_maximally_entangled() {
        let base = RunConfig {
            state: StateSpec::CollectiveA,
            ..RunConfig::default()
        };
        let t = sweep_table(SweepParam::Temp, &grid("0.1:2:0.1"), &base).unwrap();
        assert_eq!(t.len(), 20);
        for c in t.column("C_as").unwrap() {
            assert_eq!(c, Some(1.0));
        }
        assert!(t.column("T_c").unwrap().iter().all(Option::is_none));
    }

    #[test]
    fn fidelity_sweep_sign_change_at_f0() {
        let t = sweep_table(SweepParam::F, &grid("0:1:0.05"), &RunConfig::default()).unwrap();
        let f0 = t.column("F0").unwrap()[0].unwrap();
        assert!((f0 - 0.423_360_390_181_528_7).abs() < 1e-12);
        assert_eq!(t.columns().iter().filter(|c| *c == "F").count(), 1);
        let fs = t.column("F").unwrap();
        let cs = t.column("C_as").unwrap();
        for (f, c) in fs.iter().zip(&cs) {
            assert_eq!(c.unwrap() > 0.0, f.unwrap() > f0);
        }
        // p is undefined below F_β
        let p = t.column("p").unwrap();
        assert!(p[0].is_none() && p[20].is_some());
    }

    #[test]
    fn maxent_sweeps_need_maxent_state() {
        let err = sweep_table(SweepParam::A, &grid("0:1:0.5"), &RunConfig::default());
        assert!(matches!(err, Err(Error::InvalidState(_))));
        let base = RunConfig {
            state: StateSpec::MaxEnt {
                a: 0.0,
                theta1: 0.0,
                theta2: 0.0,
            },
            ..RunConfig::default()
        };
        let t = sweep_table(SweepParam::Theta, &grid("0:3:0.5"), &base).unwrap();
        assert_eq!(t.columns().last().unwrap(), "T_return");
    }

    #[test]
    fn out_of_range_point_is_an_error() {
        assert!(sweep_table(SweepParam::Z, &grid("0.5:1.5:0.5"), &RunConfig::default()).is_err());
    }
}
