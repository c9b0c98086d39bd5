//! State input: JSON state files, sampled-grid CSV files, and the packet /
//! basis-state presets.

use num_complex::Complex64;
use phasekit::basis::StateSpec;
use phasekit::{PhaseIndex, ScaleParam};
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::CliError;

/// Exactly one source must be given: a state file or one of the presets.
#[derive(Clone, Debug, clap::Args)]
pub struct StateArgs {
    /// State file: `.json` in the state schema, or CSV rows `x,re,im`.
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Gaussian packet preset `CENTER,WIDTH,MOMENTUM` (hbar from config).
    #[arg(long, value_name = "CENTER,WIDTH,MOMENTUM")]
    pub packet: Option<String>,
    /// Basis-state preset `N,X,P` at the configured scale.
    #[arg(long, value_name = "N,X,P")]
    pub hermite: Option<String>,
}

impl StateArgs {
    pub fn load(&self, config: &RunConfig) -> Result<StateSpec, CliError> {
        let given = [
            self.state.is_some(),
            self.packet.is_some(),
            self.hermite.is_some(),
        ]
        .iter()
        .filter(|&&g| g)
        .count();
        if given != 1 {
            return Err(CliError::config(
                "give exactly one of --state, --packet, --hermite".to_string(),
            ));
        }
        let state = if let Some(path) = &self.state {
            from_file(path)?
        } else if let Some(text) = &self.packet {
            let [center, width, momentum] = parse_floats(text, "--packet")?;
            StateSpec::gaussian_packet(center, width, momentum, config.hbar)
                .map_err(|e| CliError::config(format!("bad --packet: {e}")))?
        } else {
            let text = self.hermite.as_ref().unwrap();
            let [n, x, p] = parse_floats(text, "--hermite")?;
            if n < 0.0 || n.fract() != 0.0 {
                return Err(CliError::config(format!(
                    "--hermite index must be a nonnegative integer, got {n}"
                )));
            }
            let scale = ScaleParam::new(config.a, config.hbar)
                .map_err(|e| CliError::config(format!("bad scale in config: {e}")))?;
            let idx = PhaseIndex::new(n as usize, x, p, scale)
                .map_err(|e| CliError::config(format!("bad --hermite: {e}")))?;
            StateSpec::hermite_gaussian(idx)
        };
        state
            .validate()
            .map_err(|e| CliError::config(format!("state does not validate: {e}")))?;
        Ok(state)
    }
}

fn parse_floats<const K: usize>(text: &str, flag: &str) -> Result<[f64; K], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != K {
        return Err(CliError::config(format!(
            "{flag} needs {K} comma-separated values, got {}",
            parts.len()
        )));
    }
    let mut out = [0.0; K];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::config(format!("{flag}: `{part}` is not a number")))?;
    }
    Ok(out)
}

fn from_file(path: &Path) -> Result<StateSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read state {}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        grid_from_csv(&text, path)
    } else {
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("malformed state {}: {e}", path.display())))
    }
}

/// CSV grid states: `x,re,im` per row, '#' lines ignored.
fn grid_from_csv(text: &str, path: &Path) -> Result<StateSpec, CliError> {
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(CliError::config(format!(
                "{}:{}: expected 3 columns (x,re,im), got {}",
                path.display(),
                lineno + 1,
                cols.len()
            )));
        }
        let parse = |s: &str| -> Result<f64, CliError> {
            s.parse().map_err(|_| {
                CliError::config(format!(
                    "{}:{}: `{s}` is not a number",
                    path.display(),
                    lineno + 1
                ))
            })
        };
        xs.push(parse(cols[0])?);
        values.push(Complex64::new(parse(cols[1])?, parse(cols[2])?));
    }
    StateSpec::sampled_grid(xs, values)
        .map_err(|e| CliError::config(format!("bad grid state {}: {e}", path.display())))
}
