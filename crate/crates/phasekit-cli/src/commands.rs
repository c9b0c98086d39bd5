//! The data-emitting subcommands: project, density, kernel, basis. Each one
//! assembles its whole output in memory in a fixed order, then writes it,
//! so identical runs emit identical bytes regardless of thread count.

use num_complex::Complex64;
use phasekit::basis::{phi, phi_tilde};
use phasekit::kernel::{chi_closed, KernelArgs};
use phasekit::operators::{GridAxis, PhaseField};
use phasekit::transform::{project, project_spectrum};
use phasekit::quadrature::IntegrationSpec;
use phasekit::{PhaseIndex, ScaleParam};
use std::path::PathBuf;

use crate::config::RunConfig;
use crate::output::{csv_header, fmt_f, write_file};
use crate::state_io::StateArgs;
use crate::CliError;

fn num_err(e: phasekit::PhaseError) -> CliError {
    CliError::from(e)
}

fn working_scale(config: &RunConfig) -> Result<ScaleParam, CliError> {
    ScaleParam::new(config.a, config.hbar).map_err(|e| CliError::config(e.to_string()))
}

#[derive(Clone, Debug, clap::Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Base label position.
    #[arg(long = "base-x", default_value_t = 0.0)]
    pub base_x: f64,
    /// Base label momentum.
    #[arg(long = "base-p", default_value_t = 0.0)]
    pub base_p: f64,
    #[arg(long, default_value = "spectrum.json")]
    pub out_json: PathBuf,
    #[arg(long, default_value = "spectrum.csv")]
    pub out_csv: PathBuf,
}

pub fn cmd_project(config: &RunConfig, args: &ProjectArgs) -> Result<(), CliError> {
    let state = args.state.load(config)?;
    let scale = working_scale(config)?;
    let spectrum = project_spectrum(
        &state,
        args.base_x,
        args.base_p,
        scale,
        config.truncation.n_max,
        config.quadrature.gh_order,
    )
    .map_err(num_err)?;

    let mut json = serde_json::to_string_pretty(&spectrum).expect("spectrum serializes");
    json.push('\n');
    write_file(&args.out_json, &json)?;

    let mut csv = csv_header(
        config,
        &[
            ("base_x", fmt_f(args.base_x)),
            ("base_p", fmt_f(args.base_p)),
        ],
        "n,re,im,abs2",
    );
    let mut sum = 0.0f64;
    for (n, amp) in spectrum.amplitudes.iter().enumerate() {
        let abs2 = amp.norm_sqr();
        sum += abs2;
        csv.push_str(&format!(
            "{n},{},{},{}\n",
            fmt_f(amp.re),
            fmt_f(amp.im),
            fmt_f(abs2)
        ));
    }
    csv.push_str(&format!("# sum_abs2 {}\n", fmt_f(sum)));
    csv.push_str(&format!("# tail_bound {}\n", fmt_f(spectrum.tail_bound)));
    write_file(&args.out_csv, &csv)
}

#[derive(Clone, Debug, clap::Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Discrete index of the density sheet.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Lattice center, position axis.
    #[arg(long = "center-x", default_value_t = 0.0)]
    pub center_x: f64,
    /// Lattice center, momentum axis.
    #[arg(long = "center-p", default_value_t = 0.0)]
    pub center_p: f64,
    /// Sample count per axis (odd keeps the center on a node).
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    #[arg(long, default_value = "density.csv")]
    pub out: PathBuf,
}

pub fn cmd_density(config: &RunConfig, args: &DensityArgs) -> Result<(), CliError> {
    if args.samples < 2 {
        return Err(CliError::config(format!(
            "--samples must be at least 2, got {}",
            args.samples
        )));
    }
    let state = args.state.load(config)?;
    let scale = working_scale(config)?;
    let half_x = config.grid.extent_x * scale.a();
    let half_p = config.grid.extent_p * scale.b();
    let step_x = 2.0 * half_x / (args.samples - 1) as f64;
    let step_p = 2.0 * half_p / (args.samples - 1) as f64;
    let xs = GridAxis {
        start: args.center_x - half_x,
        step: step_x,
        count: args.samples,
    };
    let ps = GridAxis {
        start: args.center_p - half_p,
        step: step_p,
        count: args.samples,
    };
    let n = args.n;
    let spec = IntegrationSpec::gauss_hermite(config.quadrature.gh_order);
    // One probe call surfaces label/state unit mismatches as a clean error
    // before the parallel fill (whose closure cannot return one).
    let probe = PhaseIndex::new(n, args.center_x, args.center_p, scale)
        .map_err(|e| CliError::config(e.to_string()))?;
    project(&state, &probe, &spec).map_err(num_err)?;
    let field = PhaseField::sample(xs, ps, scale, |big_x, big_p| {
        let idx = PhaseIndex {
            n,
            x: big_x,
            p: big_p,
            scale,
        };
        project(&state, &idx, &spec).expect("state validated on load")
    })
    .map_err(num_err)?;

    let norm = 2.0 * std::f64::consts::PI * config.hbar;
    let mut csv = csv_header(
        config,
        &[
            ("n", n.to_string()),
            ("center_x", fmt_f(args.center_x)),
            ("center_p", fmt_f(args.center_p)),
        ],
        "X,P,density",
    );
    let mut mass = 0.0f64;
    for i in 0..xs.count {
        let x = xs.value(i);
        for j in 0..ps.count {
            let d = field.values[[i, j]].norm_sqr() / norm;
            mass += d;
            csv.push_str(&format!("{},{},{}\n", fmt_f(x), fmt_f(ps.value(j)), fmt_f(d)));
        }
    }
    mass *= step_x * step_p;
    csv.push_str(&format!("# mass {}\n", fmt_f(mass)));
    write_file(&args.out, &csv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KernelSweep {
    /// Index table at fixed labels.
    Nn,
    /// Left label swept over the lattice at fixed indices.
    Xp,
}

#[derive(Clone, Debug, clap::Args)]
pub struct KernelCmdArgs {
    #[arg(long, value_enum, default_value = "nn")]
    pub sweep: KernelSweep,
    /// Left label `X,P,A`.
    #[arg(long, value_name = "X,P,A", default_value = "0,0,1")]
    pub left: String,
    /// Right label `X,P,A`.
    #[arg(long, value_name = "X,P,A", default_value = "0,0,1")]
    pub right: String,
    /// Left index for the xp sweep.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Right index for the xp sweep.
    #[arg(long = "n-prime", default_value_t = 0)]
    pub n_prime: usize,
    /// Index ceiling for the nn table.
    #[arg(long = "n-max", default_value_t = 8)]
    pub n_max: usize,
    /// Samples per axis for the xp sweep.
    #[arg(long, default_value_t = 41)]
    pub samples: usize,
    #[arg(long, default_value = "kernel.csv")]
    pub out: PathBuf,
}

fn parse_label(text: &str, flag: &str, hbar: f64) -> Result<(f64, f64, ScaleParam), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::config(format!(
            "{flag} needs X,P,A, got `{text}`"
        )));
    }
    let mut vals = [0.0f64; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::config(format!("{flag}: `{part}` is not a number")))?;
    }
    let scale = ScaleParam::new(vals[2], hbar)
        .map_err(|e| CliError::config(format!("{flag}: {e}")))?;
    Ok((vals[0], vals[1], scale))
}

pub fn cmd_kernel(config: &RunConfig, args: &KernelCmdArgs) -> Result<(), CliError> {
    let (lx, lp, lscale) = parse_label(&args.left, "--left", config.hbar)?;
    let (rx, rp, rscale) = parse_label(&args.right, "--right", config.hbar)?;
    match args.sweep {
        KernelSweep::Nn => {
            let mut csv = csv_header(
                config,
                &[
                    ("left", args.left.clone()),
                    ("right", args.right.clone()),
                ],
                "n,n_prime,re,im,abs",
            );
            for n in 0..=args.n_max {
                for np in 0..=args.n_max {
                    let left = PhaseIndex::new(n, lx, lp, lscale)
                        .map_err(|e| CliError::config(e.to_string()))?;
                    let right = PhaseIndex::new(np, rx, rp, rscale)
                        .map_err(|e| CliError::config(e.to_string()))?;
                    let ka = KernelArgs::new(left, right)
                        .map_err(|e| CliError::config(e.to_string()))?;
                    let chi = chi_closed(&ka).map_err(num_err)?;
                    csv.push_str(&format!(
                        "{n},{np},{},{},{}\n",
                        fmt_f(chi.re),
                        fmt_f(chi.im),
                        fmt_f(chi.norm())
                    ));
                }
            }
            write_file(&args.out, &csv)
        }
        KernelSweep::Xp => {
            if args.samples < 2 {
                return Err(CliError::config(format!(
                    "--samples must be at least 2, got {}",
                    args.samples
                )));
            }
            let right = PhaseIndex::new(args.n_prime, rx, rp, rscale)
                .map_err(|e| CliError::config(e.to_string()))?;
            let half_x = config.grid.extent_x * lscale.a();
            let half_p = config.grid.extent_p * lscale.b();
            let step_x = 2.0 * half_x / (args.samples - 1) as f64;
            let step_p = 2.0 * half_p / (args.samples - 1) as f64;
            let mut csv = csv_header(
                config,
                &[
                    ("n", args.n.to_string()),
                    ("n_prime", args.n_prime.to_string()),
                    ("left_scale", fmt_f(lscale.a())),
                    ("right", args.right.clone()),
                ],
                "X,P,re,im,abs",
            );
            for i in 0..args.samples {
                let x = rx - half_x + step_x * i as f64;
                for j in 0..args.samples {
                    let p = rp - half_p + step_p * j as f64;
                    let left = PhaseIndex::new(args.n, x, p, lscale)
                        .map_err(|e| CliError::config(e.to_string()))?;
                    let ka = KernelArgs::new(left, right)
                        .map_err(|e| CliError::config(e.to_string()))?;
                    let chi = chi_closed(&ka).map_err(num_err)?;
                    csv.push_str(&format!(
                        "{},{},{},{},{}\n",
                        fmt_f(x),
                        fmt_f(p),
                        fmt_f(chi.re),
                        fmt_f(chi.im),
                        fmt_f(chi.norm())
                    ));
                }
            }
            write_file(&args.out, &csv)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Representation {
    Position,
    Momentum,
}

#[derive(Clone, Debug, clap::Args)]
pub struct BasisArgs {
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Label position.
    #[arg(long = "label-x", default_value_t = 0.0)]
    pub label_x: f64,
    /// Label momentum.
    #[arg(long = "label-p", default_value_t = 0.0)]
    pub label_p: f64,
    #[arg(long, value_enum, default_value = "position")]
    pub rep: Representation,
    #[arg(long, default_value_t = 401)]
    pub samples: usize,
    #[arg(long, default_value = "basis.csv")]
    pub out: PathBuf,
}

pub fn cmd_basis(config: &RunConfig, args: &BasisArgs) -> Result<(), CliError> {
    if args.samples < 2 {
        return Err(CliError::config(format!(
            "--samples must be at least 2, got {}",
            args.samples
        )));
    }
    let scale = working_scale(config)?;
    let idx = PhaseIndex::new(args.n, args.label_x, args.label_p, scale)
        .map_err(|e| CliError::config(e.to_string()))?;
    let (center, half, columns) = match args.rep {
        Representation::Position => (
            args.label_x,
            config.grid.extent_x * scale.a(),
            "x,re,im,abs2",
        ),
        Representation::Momentum => (
            args.label_p,
            config.grid.extent_p * scale.b(),
            "p,re,im,abs2",
        ),
    };
    let step = 2.0 * half / (args.samples - 1) as f64;
    let mut csv = csv_header(
        config,
        &[
            ("n", args.n.to_string()),
            ("label_x", fmt_f(args.label_x)),
            ("label_p", fmt_f(args.label_p)),
        ],
        columns,
    );
    for k in 0..args.samples {
        let t = center - half + step * k as f64;
        let v: Complex64 = match args.rep {
            Representation::Position => phi(&idx, t),
            Representation::Momentum => phi_tilde(&idx, t),
        };
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f(t),
            fmt_f(v.re),
            fmt_f(v.im),
            fmt_f(v.norm_sqr())
        ));
    }
    write_file(&args.out, &csv)
}
