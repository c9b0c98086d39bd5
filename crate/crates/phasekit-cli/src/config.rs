//! Run configuration: defaults, JSON config files, and dotted-name flag
//! overrides. Precedence is defaults, then the config file, then flags.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::CliError;

pub const VERSION_STRING: &str = concat!("phasekit ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Planck constant over 2 pi in the run's units.
    pub hbar: f64,
    /// Position dispersion scale of the working basis.
    pub a: f64,
    pub quadrature: QuadratureConfig,
    pub grid: GridConfig,
    pub truncation: TruncationConfig,
    pub window: WindowConfig,
    pub verify: VerifyConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub gh_order: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinements: u32,
}

/// Lattice geometry in units of the working scale: steps `h_x * a`,
/// `h_p * b`, half extents `extent_x * a`, `extent_p * b`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub h_x: f64,
    pub h_p: f64,
    pub extent_x: f64,
    pub extent_p: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TruncationConfig {
    pub n_max: usize,
    pub tail_tol: f64,
}

/// Scale-fan integration window shape.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowConfig {
    pub factor: f64,
    pub log_nodes: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// Scales the eigenvalue in the residual checks. 1.0 is the true
    /// eigenvalue; anything else is a deliberate negative control and makes
    /// the eigen checks fail loudly.
    pub eigenvalue_multiplier: f64,
    pub kernel_tol: f64,
    pub ortho_tol: f64,
    pub commutator_tol: f64,
    pub eigen_tol: f64,
    pub moment_tol: f64,
    pub parseval_tol: f64,
    pub transport_tol: f64,
    pub reconstruct_tol: f64,
    pub inversion_tol: f64,
    pub fourier_tol: f64,
    pub scale_fan_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            hbar: 1.0,
            a: 1.0,
            quadrature: QuadratureConfig::default(),
            grid: GridConfig::default(),
            truncation: TruncationConfig::default(),
            window: WindowConfig::default(),
            verify: VerifyConfig::default(),
        }
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            gh_order: 64,
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_refinements: 16,
        }
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            h_x: 0.005,
            h_p: 0.005,
            extent_x: 8.0,
            extent_p: 8.0,
        }
    }
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig {
            n_max: 40,
            tail_tol: 1e-8,
        }
    }
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            factor: 300.0,
            log_nodes: 65,
        }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            eigenvalue_multiplier: 1.0,
            kernel_tol: 1e-9,
            ortho_tol: 1e-12,
            commutator_tol: 1e-13,
            eigen_tol: 1e-5,
            moment_tol: 1e-8,
            parseval_tol: 1e-8,
            transport_tol: 1e-7,
            reconstruct_tol: 1e-7,
            inversion_tol: 1e-4,
            fourier_tol: 1e-8,
            scale_fan_tol: 1e-2,
        }
    }
}

/// Flag-level overrides for every config key, named after the dotted config
/// paths. Collected globally so they work before or after the subcommand.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct ConfigOverrides {
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true)]
    pub a: Option<f64>,
    #[arg(long = "quadrature.gh_order", global = true)]
    pub quadrature_gh_order: Option<usize>,
    #[arg(long = "quadrature.abs_tol", global = true)]
    pub quadrature_abs_tol: Option<f64>,
    #[arg(long = "quadrature.rel_tol", global = true)]
    pub quadrature_rel_tol: Option<f64>,
    #[arg(long = "quadrature.max_refinements", global = true)]
    pub quadrature_max_refinements: Option<u32>,
    #[arg(long = "grid.h_x", global = true)]
    pub grid_h_x: Option<f64>,
    #[arg(long = "grid.h_p", global = true)]
    pub grid_h_p: Option<f64>,
    #[arg(long = "grid.extent_x", global = true)]
    pub grid_extent_x: Option<f64>,
    #[arg(long = "grid.extent_p", global = true)]
    pub grid_extent_p: Option<f64>,
    #[arg(long = "truncation.n_max", global = true)]
    pub truncation_n_max: Option<usize>,
    #[arg(long = "truncation.tail_tol", global = true)]
    pub truncation_tail_tol: Option<f64>,
    #[arg(long = "window.factor", global = true)]
    pub window_factor: Option<f64>,
    #[arg(long = "window.log_nodes", global = true)]
    pub window_log_nodes: Option<usize>,
    #[arg(long = "verify.eigenvalue_multiplier", global = true)]
    pub verify_eigenvalue_multiplier: Option<f64>,
    #[arg(long = "verify.kernel_tol", global = true)]
    pub verify_kernel_tol: Option<f64>,
    #[arg(long = "verify.ortho_tol", global = true)]
    pub verify_ortho_tol: Option<f64>,
    #[arg(long = "verify.commutator_tol", global = true)]
    pub verify_commutator_tol: Option<f64>,
    #[arg(long = "verify.eigen_tol", global = true)]
    pub verify_eigen_tol: Option<f64>,
    #[arg(long = "verify.moment_tol", global = true)]
    pub verify_moment_tol: Option<f64>,
    #[arg(long = "verify.parseval_tol", global = true)]
    pub verify_parseval_tol: Option<f64>,
    #[arg(long = "verify.transport_tol", global = true)]
    pub verify_transport_tol: Option<f64>,
    #[arg(long = "verify.reconstruct_tol", global = true)]
    pub verify_reconstruct_tol: Option<f64>,
    #[arg(long = "verify.inversion_tol", global = true)]
    pub verify_inversion_tol: Option<f64>,
    #[arg(long = "verify.fourier_tol", global = true)]
    pub verify_fourier_tol: Option<f64>,
    #[arg(long = "verify.scale_fan_tol", global = true)]
    pub verify_scale_fan_tol: Option<f64>,
}

impl RunConfig {
    /// Defaults, then the config file (explicit path or `PHASEKIT_CONFIG`),
    /// then flag overrides; validated at the end.
    pub fn resolve(path: Option<&Path>, overrides: &ConfigOverrides) -> Result<RunConfig, CliError> {
        let mut config = match explicit_or_env(path) {
            Some(p) => from_file(&p)?,
            None => RunConfig::default(),
        };
        config.apply(overrides);
        config.validate()?;
        Ok(config)
    }

    fn apply(&mut self, ov: &ConfigOverrides) {
        macro_rules! set {
            ($slot:expr, $val:expr) => {
                if let Some(v) = $val {
                    $slot = v;
                }
            };
        }
        set!(self.hbar, ov.hbar);
        set!(self.a, ov.a);
        set!(self.quadrature.gh_order, ov.quadrature_gh_order);
        set!(self.quadrature.abs_tol, ov.quadrature_abs_tol);
        set!(self.quadrature.rel_tol, ov.quadrature_rel_tol);
        set!(self.quadrature.max_refinements, ov.quadrature_max_refinements);
        set!(self.grid.h_x, ov.grid_h_x);
        set!(self.grid.h_p, ov.grid_h_p);
        set!(self.grid.extent_x, ov.grid_extent_x);
        set!(self.grid.extent_p, ov.grid_extent_p);
        set!(self.truncation.n_max, ov.truncation_n_max);
        set!(self.truncation.tail_tol, ov.truncation_tail_tol);
        set!(self.window.factor, ov.window_factor);
        set!(self.window.log_nodes, ov.window_log_nodes);
        set!(self.verify.eigenvalue_multiplier, ov.verify_eigenvalue_multiplier);
        set!(self.verify.kernel_tol, ov.verify_kernel_tol);
        set!(self.verify.ortho_tol, ov.verify_ortho_tol);
        set!(self.verify.commutator_tol, ov.verify_commutator_tol);
        set!(self.verify.eigen_tol, ov.verify_eigen_tol);
        set!(self.verify.moment_tol, ov.verify_moment_tol);
        set!(self.verify.parseval_tol, ov.verify_parseval_tol);
        set!(self.verify.transport_tol, ov.verify_transport_tol);
        set!(self.verify.reconstruct_tol, ov.verify_reconstruct_tol);
        set!(self.verify.inversion_tol, ov.verify_inversion_tol);
        set!(self.verify.fourier_tol, ov.verify_fourier_tol);
        set!(self.verify.scale_fan_tol, ov.verify_scale_fan_tol);
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("hbar", self.hbar),
            ("a", self.a),
            ("quadrature.abs_tol", self.quadrature.abs_tol),
            ("quadrature.rel_tol", self.quadrature.rel_tol),
            ("grid.h_x", self.grid.h_x),
            ("grid.h_p", self.grid.h_p),
            ("grid.extent_x", self.grid.extent_x),
            ("grid.extent_p", self.grid.extent_p),
            ("truncation.tail_tol", self.truncation.tail_tol),
            ("verify.kernel_tol", self.verify.kernel_tol),
            ("verify.ortho_tol", self.verify.ortho_tol),
            ("verify.commutator_tol", self.verify.commutator_tol),
            ("verify.eigen_tol", self.verify.eigen_tol),
            ("verify.moment_tol", self.verify.moment_tol),
            ("verify.parseval_tol", self.verify.parseval_tol),
            ("verify.transport_tol", self.verify.transport_tol),
            ("verify.reconstruct_tol", self.verify.reconstruct_tol),
            ("verify.inversion_tol", self.verify.inversion_tol),
            ("verify.fourier_tol", self.verify.fourier_tol),
            ("verify.scale_fan_tol", self.verify.scale_fan_tol),
        ];
        for (key, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::config(format!(
                    "{key} must be finite and positive, got {v}"
                )));
            }
        }
        if self.quadrature.gh_order < 2 || self.quadrature.gh_order > 512 {
            return Err(CliError::config(format!(
                "quadrature.gh_order must lie in 2..=512, got {}",
                self.quadrature.gh_order
            )));
        }
        if !(self.window.factor.is_finite() && self.window.factor > 1.0) {
            return Err(CliError::config(format!(
                "window.factor must exceed 1, got {}",
                self.window.factor
            )));
        }
        if self.window.log_nodes < 3 {
            return Err(CliError::config(format!(
                "window.log_nodes must be at least 3, got {}",
                self.window.log_nodes
            )));
        }
        let m = self.verify.eigenvalue_multiplier;
        if !(m.is_finite() && m != 0.0) {
            return Err(CliError::config(format!(
                "verify.eigenvalue_multiplier must be finite and nonzero, got {m}"
            )));
        }
        Ok(())
    }

    /// One-line canonical JSON of the fully resolved config, embedded in
    /// every output header.
    pub fn canonical_line(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

fn explicit_or_env(path: Option<&Path>) -> Option<std::path::PathBuf> {
    if let Some(p) = path {
        return Some(p.to_path_buf());
    }
    std::env::var_os("PHASEKIT_CONFIG").map(std::path::PathBuf::from)
}

fn from_file(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::config(format!("cannot read config {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("malformed config {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = serde_json::from_str::<RunConfig>(r#"{"hbarr": 2.0}"#);
        assert!(err.is_err());
    }

    #[test]
    fn overrides_win_over_defaults() {
        let mut config = RunConfig::default();
        let ov = ConfigOverrides {
            quadrature_gh_order: Some(96),
            verify_eigenvalue_multiplier: Some(3.0),
            ..ConfigOverrides::default()
        };
        config.apply(&ov);
        assert_eq!(config.quadrature.gh_order, 96);
        assert_eq!(config.verify.eigenvalue_multiplier, 3.0);
    }

    #[test]
    fn nonpositive_tolerance_fails_validation() {
        let mut config = RunConfig::default();
        config.verify.kernel_tol = 0.0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn canonical_line_is_single_line_json() {
        let line = RunConfig::default().canonical_line();
        assert!(!line.contains('\n'));
        let back: RunConfig = serde_json::from_str(&line).unwrap();
        back.validate().unwrap();
    }
}
