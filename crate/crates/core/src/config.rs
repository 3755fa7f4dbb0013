//! Run configuration and the textual grammar for initial states.
//!
//! ```text
//! e | g | s | a
//! product:θA,φA,θB,φB
//! gibbs:T0
//! maxent:a,th1,th2
//! xclass:x,z
//! eta:η
//! file:PATH
//! ```
//!
//! Angles are in radians, temperatures in units of ω. Whitespace is
//! ignored everywhere except inside a file path, which is only trimmed.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lindblad::ReservoirParams;
use crate::state::StateSpec;

/// Parses a state description and checks its parameter ranges.
pub fn parse_state_spec(text: &str) -> Result<StateSpec> {
    let spec = parse_unchecked(text)?;
    spec.validate()?;
    Ok(spec)
}

fn parse_unchecked(text: &str) -> Result<StateSpec> {
    // (original column, char) for every non-whitespace character
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, ch)| !ch.is_whitespace())
        .map(|(i, ch)| (i + 1, ch))
        .collect();
    let end_col = text.len() + 1;
    let col_at = |k: usize| chars.get(k).map_or(end_col, |&(col, _)| col);

    if chars.is_empty() {
        return Err(Error::Parse {
            pos: 1,
            msg: "empty state description".into(),
        });
    }

    let colon = chars.iter().position(|&(_, ch)| ch == ':');
    let head_end = colon.unwrap_or(chars.len());
    let head: String = chars[..head_end].iter().map(|&(_, ch)| ch).collect();
    let head_lower = head.to_ascii_lowercase();

    if colon.is_none() {
        return match head_lower.as_str() {
            "e" => Ok(StateSpec::CollectiveE),
            "g" => Ok(StateSpec::CollectiveG),
            "s" => Ok(StateSpec::CollectiveS),
            "a" => Ok(StateSpec::CollectiveA),
            "product" | "gibbs" | "maxent" | "xclass" | "eta" | "file" => Err(Error::Parse {
                pos: end_col,
                msg: format!("expected `:` and parameters after `{head}`"),
            }),
            _ => Err(Error::Parse {
                pos: col_at(0),
                msg: format!("unknown state `{head}`"),
            }),
        };
    }
    let colon = colon.unwrap();

    if head_lower == "file" {
        let start = chars[colon].0;
        let path = text[start..].trim();
        if path.is_empty() {
            return Err(Error::Parse {
                pos: end_col,
                msg: "missing file path".into(),
            });
        }
        return Ok(StateSpec::Raw(PathBuf::from(path)));
    }

    let arity = match head_lower.as_str() {
        "product" => 4,
        "maxent" => 3,
        "xclass" => 2,
        "gibbs" | "eta" => 1,
        "e" | "g" | "s" | "a" => {
            return Err(Error::Parse {
                pos: col_at(colon),
                msg: format!("state `{head}` takes no parameters"),
            })
        }
        _ => {
            return Err(Error::Parse {
                pos: col_at(0),
                msg: format!("unknown state family `{head}`"),
            })
        }
    };

    // split the parameter list on commas, remembering each field's column
    let mut values = Vec::with_capacity(arity);
    let mut k = colon + 1;
    loop {
        let start = k;
        while k < chars.len() && chars[k].1 != ',' {
            k += 1;
        }
        let field: String = chars[start..k].iter().map(|&(_, ch)| ch).collect();
        if field.is_empty() {
            return Err(Error::Parse {
                pos: col_at(start),
                msg: "expected a number".into(),
            });
        }
        let v = field.parse::<f64>().map_err(|_| Error::Parse {
            pos: col_at(start),
            msg: format!("`{field}` is not a decimal number"),
        })?;
        values.push(v);
        if k >= chars.len() {
            break;
        }
        k += 1; // comma
    }
    if values.len() != arity {
        return Err(Error::Parse {
            pos: end_col,
            msg: format!(
                "`{head_lower}` takes {arity} parameter(s), found {}",
                values.len()
            ),
        });
    }

    Ok(match head_lower.as_str() {
        "product" => StateSpec::Product {
            theta_a: values[0],
            phi_a: values[1],
            theta_b: values[2],
            phi_b: values[3],
        },
        "maxent" => StateSpec::MaxEnt {
            a: values[0],
            theta1: values[1],
            theta2: values[2],
        },
        "xclass" => StateSpec::XClass {
            x: values[0],
            z: values[1],
        },
        "gibbs" => StateSpec::Gibbs { t0: values[0] },
        "eta" => StateSpec::Eta { eta: values[0] },
        _ => unreachable!(),
    })
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_state_spec(s)
    }
}

/// Canonical text form; parses back to the same value.
impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::CollectiveE => f.write_str("e"),
            StateSpec::CollectiveG => f.write_str("g"),
            StateSpec::CollectiveS => f.write_str("s"),
            StateSpec::CollectiveA => f.write_str("a"),
            StateSpec::Product {
                theta_a,
                phi_a,
                theta_b,
                phi_b,
            } => write!(f, "product:{theta_a},{phi_a},{theta_b},{phi_b}"),
            StateSpec::Gibbs { t0 } => write!(f, "gibbs:{t0}"),
            StateSpec::MaxEnt { a, theta1, theta2 } => write!(f, "maxent:{a},{theta1},{theta2}"),
            StateSpec::XClass { x, z } => write!(f, "xclass:{x},{z}"),
            StateSpec::Eta { eta } => write!(f, "eta:{eta}"),
            StateSpec::Raw(path) => write!(f, "file:{}", path.display()),
        }
    }
}

/// Everything a CLI run needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub state: StateSpec,
    pub omega: f64,
    pub gamma0: f64,
    pub g: f64,
    pub cap_omega: f64,
    /// βω; `f64::INFINITY` for a zero-temperature reservoir.
    pub beta_omega: f64,
    pub t_max: f64,
    pub dt_out: f64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = ReservoirParams::default();
        RunConfig {
            state: StateSpec::CollectiveE,
            omega: p.omega,
            gamma0: p.gamma0,
            g: p.g,
            cap_omega: p.cap_omega,
            beta_omega: p.beta_omega(),
            t_max: 10.0,
            dt_out: 0.1,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> Result<ReservoirParams> {
        ReservoirParams::new(
            self.omega,
            self.gamma0,
            self.g,
            self.cap_omega,
            self.beta_omega / self.omega,
        )
    }

    /// Reservoir temperature `T/ω`.
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta_omega
    }

    /// Output times `0, dt_out, 2 dt_out, …` up to `t_max`.
    pub fn output_times(&self) -> Result<Vec<f64>> {
        if !(self.dt_out > 0.0 && self.dt_out.is_finite()) {
            return Err(Error::domain("dt-out", self.dt_out, "must be positive"));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(Error::domain(
                "t-max",
                self.t_max,
                "must be finite and >= 0",
            ));
        }
        let n = (self.t_max / self.dt_out + 1e-9).floor() as usize;
        Ok((0..=n).map(|k| k as f64 * self.dt_out).collect())
    }

    /// Canonical command-line flags describing this configuration.
    pub fn to_flag_string(&self) -> String {
        let mut s = format!(
            "--state {} --g {} --beta-omega {} --omega {} --gamma0 {} --cap-omega {} --t-max {} --dt-out {}",
            self.state,
            self.g,
            self.beta_omega,
            self.omega,
            self.gamma0,
            self.cap_omega,
            self.t_max,
            self.dt_out
        );
        if let Some(out) = &self.out {
            s.push_str(&format!(" --out {}", out.display()));
        }
        s
    }
}

/// Uniform grid written `start:stop:step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::domain("range", start, "endpoints must be finite"));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::domain("step", step, "must be positive"));
        }
        if stop < start {
            return Err(Error::domain("stop", stop, "must not be below start"));
        }
        Ok(GridRange { start, stop, step })
    }

    /// Grid points `start + k·step` not exceeding `stop` (up to a relative
    /// slack of 1e-9 steps).
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for GridRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                pos: 1,
                msg: format!("range `{s}` must have the form start:stop:step"),
            });
        }
        let mut values = [0.0; 3];
        let mut col = 1;
        for (slot, part) in values.iter_mut().zip(&parts) {
            *slot = part.trim().parse().map_err(|_| Error::Parse {
                pos: col,
                msg: format!("`{part}` is not a number"),
            })?;
            col += part.len() + 1;
        }
        GridRange::new(values[0], values[1], values[2])
    }
}
