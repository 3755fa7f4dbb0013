//! Time-evolution traces and steady-state reports for a single
//! configuration.

use std::fmt;

use crate::asymptotics::{
    critical_temperature, entanglement_threshold, mixing_probability, threshold_fidelity,
    ThermalContext,
};
use crate::config::RunConfig;
use crate::entanglement::concurrence;
use crate::error::Result;
use crate::lindblad::{steady_state, Liouvillian};
use crate::state::{collective, make_state, DensityMatrix};
use crate::table::SweepTable;

/// Columns of an evolution trace. Populations and coherences are in the
/// collective basis.
pub const EVOLVE_COLUMNS: [&str; 21] = [
    "t",
    "rho_ee",
    "rho_ss",
    "rho_aa",
    "rho_gg",
    "re_rho_es",
    "im_rho_es",
    "re_rho_sg",
    "im_rho_sg",
    "re_rho_ea",
    "im_rho_ea",
    "re_rho_ag",
    "im_rho_ag",
    "re_rho_eg",
    "im_rho_eg",
    "re_rho_sa",
    "im_rho_sa",
    "concurrence",
    "fidelity",
    "purity",
    "trace_err",
];

const COHERENCES: [(usize, usize); 6] = {
    use collective::{A, E, G, S};
    [(E, S), (S, G), (E, A), (A, G), (E, G), (S, A)]
};

/// `ρ(t)` at `t = 0, dt_out, …, t_max`, each time computed directly from
/// the matrix exponential.
pub fn evolve_table(config: &RunConfig) -> Result<SweepTable> {
    let l = Liouvillian::new(&config.params()?)?;
    let rho0 = make_state(&config.state)?;
    let mut table = SweepTable::new(EVOLVE_COLUMNS);
    for t in config.output_times()? {
        let rho = l.evolve(&rho0, t)?;
        table.push_values(&trace_row(t, &rho)?)?;
    }
    Ok(table)
}

fn trace_row(t: f64, rho: &DensityMatrix) -> Result<Vec<f64>> {
    let col = rho.collective();
    let mut row = vec![t];
    row.extend((0..4).map(|k| col.entry(k, k).re));
    for (r, k) in COHERENCES {
        let z = col.entry(r, k);
        row.extend([z.re, z.im]);
    }
    row.extend([
        concurrence(rho)?.value(),
        rho.fidelity_singlet(),
        rho.purity(),
        (rho.trace() - 1.0).norm(),
    ]);
    Ok(row)
}

/// Stationary state of one configuration and what the closed forms say
/// about it.
#[derive(Clone, Debug)]
pub struct SteadyReport {
    pub state: DensityMatrix,
    pub fidelity: f64,
    pub concurrence: f64,
    /// Singlet weight in the thermal Werner form; `None` below `F_β`.
    pub mixing_probability: Option<f64>,
    /// `T_c/ω`, reported for `F < 1/2`.
    pub critical_temperature: Option<f64>,
    pub threshold_fidelity: f64,
    pub entanglement_threshold: f64,
}

/// Fidelities this close to `F_β` count as `F_β` (p = 0).
const THRESHOLD_SNAP: f64 = 1e-10;

pub fn steady_report(config: &RunConfig) -> Result<SteadyReport> {
    let p = config.params()?;
    let ctx = ThermalContext::new(config.beta_omega)?;
    let state = steady_state(&p, &make_state(&config.state)?)?;
    let fidelity = state.fidelity_singlet();
    let f_beta = threshold_fidelity(ctx);
    let f_for_p = if (fidelity - f_beta).abs() < THRESHOLD_SNAP {
        f_beta
    } else {
        fidelity.clamp(0.0, 1.0)
    };
    Ok(SteadyReport {
        concurrence: concurrence(&state)?.value(),
        mixing_probability: mixing_probability(f_for_p, ctx).ok(),
        critical_temperature: critical_temperature(fidelity.max(0.0)).ok(),
        threshold_fidelity: f_beta,
        entanglement_threshold: entanglement_threshold(ctx),
        fidelity,
        state,
    })
}

impl SteadyReport {
    /// One-row CSV form: the scalar results followed by the real and
    /// imaginary parts of the canonical-basis matrix.
    pub fn to_table(&self) -> Result<SweepTable> {
        let mut columns: Vec<String> = ["F", "concurrence", "p", "T_c", "F_beta", "F0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut row = vec![
            Some(self.fidelity),
            Some(self.concurrence),
            self.mixing_probability,
            self.critical_temperature,
            Some(self.threshold_fidelity),
            Some(self.entanglement_threshold),
        ];
        let m = self.state.canonical();
        for r in 0..4 {
            for k in 0..4 {
                columns.push(format!("re_rho_{}{}", r + 1, k + 1));
                columns.push(format!("im_rho_{}{}", r + 1, k + 1));
                let z = m.entry(r, k);
                row.extend([Some(z.re), Some(z.im)]);
            }
        }
        let mut table = SweepTable::new(columns);
        table.push(row)?;
        Ok(table)
    }
}

impl fmt::Display for SteadyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "steady state (basis |11>, |10>, |01>, |00>):")?;
        write!(f, "{}", self.state.canonical())?;
        writeln!(f, "fidelity F = {:.10}", self.fidelity)?;
        writeln!(f, "concurrence = {:.10}", self.concurrence)?;
        match self.mixing_probability {
            Some(p) => writeln!(f, "mixing probability p = {p:.10}")?,
            None => writeln!(f, "mixing probability p: below threshold")?,
        }
        if let Some(tc) = self.critical_temperature {
            writeln!(f, "critical temperature T_c/omega = {tc:.10}")?;
        }
        writeln!(
            f,
            "threshold fidelity F_beta = {:.10}",
            self.threshold_fidelity
        )?;
        writeln!(
            f,
            "entanglement threshold F0 = {:.10}",
            self.entanglement_threshold
        )
    }
}
