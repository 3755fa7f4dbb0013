//! Two two-level atoms in a common thermal photon reservoir.
//!
//! The crate propagates the Lindblad master equation for the pair, finds
//! its stationary states, and evaluates the closed-form results for the
//! strongly correlated regime: thermal Werner stationary states,
//! asymptotic concurrence, and critical temperatures.
//!
//! ```
//! use thermwerner::{asymptotics, lindblad, state};
//!
//! let params = lindblad::ReservoirParams::with_g_beta_omega(1.0, 1.0).unwrap();
//! let rho0 = state::make_state(&state::StateSpec::CollectiveE).unwrap();
//! let rho = lindblad::steady_state(&params, &rho0).unwrap();
//!
//! let ctx = asymptotics::ThermalContext::new(1.0).unwrap();
//! let closed_form = asymptotics::asymptotic_state(0.0, ctx).unwrap();
//! assert!(rho.max_abs_diff(&closed_form) < 1e-8);
//! ```

pub mod asymptotics;
pub mod config;
pub mod entanglement;
pub mod error;
pub mod figures;
pub mod linalg;
pub mod lindblad;
pub mod runs;
pub mod state;
pub mod sweep;
pub mod table;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    mod asymptotics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
