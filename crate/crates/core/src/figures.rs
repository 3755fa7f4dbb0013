//! Data behind the five temperature-dependence figures.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::{
    asymptotic_concurrence, gibbs_critical_temperature, gibbs_fidelity,
    product_asymptotic_concurrence, xclass_asymptotic_concurrence, ThermalContext,
};
use crate::config::GridRange;
use crate::error::{Error, Result};
use crate::table::SweepTable;

/// Factor overlap of the product state in the second figure.
pub const FIG2_ALPHA: f64 = 0.25;
/// Temperature `T₀/ω` of the Gibbs initial state in the fourth figure.
pub const FIG4_T0: f64 = 4.0;
/// Initial concurrences shown in the fifth figure.
pub const FIG5_Z: [f64; 3] = [0.25, 0.5, 0.75];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    /// Asymptotic concurrence vs T for a product state with orthogonal
    /// factors.
    Fig1,
    /// Same for factor overlap 1/4.
    Fig2,
    /// Critical temperature vs the temperature of a Gibbs initial state.
    Fig3,
    /// Asymptotic concurrence vs T for the Gibbs initial state at T₀/ω = 4.
    Fig4,
    /// Asymptotic concurrence vs T for X-class states with several initial
    /// concurrences.
    Fig5,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
    ];

    /// Default horizontal grid.
    pub fn default_grid(self) -> GridRange {
        match self {
            FigureId::Fig3 => GridRange {
                start: 0.1,
                stop: 10.0,
                step: 0.01,
            },
            _ => GridRange {
                start: 0.01,
                stop: 5.0,
                step: 0.01,
            },
        }
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig1" | "1" => Ok(FigureId::Fig1),
            "fig2" | "2" => Ok(FigureId::Fig2),
            "fig3" | "3" => Ok(FigureId::Fig3),
            "fig4" | "4" => Ok(FigureId::Fig4),
            "fig5" | "5" => Ok(FigureId::Fig5),
            _ => Err(Error::Parse {
                pos: 1,
                msg: format!("unknown figure `{s}` (expected fig1..fig5)"),
            }),
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = FigureId::ALL.iter().position(|id| id == self).unwrap() + 1;
        write!(f, "fig{n}")
    }
}

/// Tabulates a figure over `grid` (temperatures in units of ω).
pub fn figure_table(id: FigureId, grid: &GridRange) -> Result<SweepTable> {
    let temps = grid.points();
    let mut table = match id {
        FigureId::Fig3 => SweepTable::new(["T0", "Tc"]),
        FigureId::Fig5 => {
            let mut cols = vec!["T".to_string()];
            cols.extend(FIG5_Z.iter().map(|z| format!("C_as_z{z}")));
            SweepTable::new(cols)
        }
        _ => SweepTable::new(["T", "C_as"]),
    };
    let gibbs_f = gibbs_fidelity(1.0 / FIG4_T0)?;
    for &t in &temps {
        let row = match id {
            FigureId::Fig3 => vec![t, gibbs_critical_temperature(t)?],
            _ => {
                let ctx = ThermalContext::from_temperature(t)?;
                match id {
                    FigureId::Fig1 => vec![t, product_asymptotic_concurrence(0.0, ctx)?.value()],
                    FigureId::Fig2 => {
                        vec![t, product_asymptotic_concurrence(FIG2_ALPHA, ctx)?.value()]
                    }
                    FigureId::Fig4 => vec![t, asymptotic_concurrence(gibbs_f, ctx)?.value()],
                    FigureId::Fig5 => {
                        let mut row = vec![t];
                        for z in FIG5_Z {
                            row.push(xclass_asymptotic_concurrence(z, ctx)?.value());
                        }
                        row
                    }
                    FigureId::Fig3 => unreachable!(),
                }
            }
        };
        table.push_values(&row)?;
    }
    Ok(table)
}

/// First grid value of column `x` at which column `y` has reached zero.
/// Concurrences are clamped at zero, so the grid spacing is the
/// resolution.
pub fn first_zero_crossing(table: &SweepTable, x: &str, y: &str) -> Option<f64> {
    let xs = table.column(x)?;
    let ys = table.column(y)?;
    xs.into_iter()
        .zip(ys)
        .find(|(_, y)| y.is_some_and(|y| y <= 0.0))
        .and_then(|(x, _)| x)
}
