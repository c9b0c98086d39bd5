//! The verification suite behind `phasekit verify`: every structural
//! identity the library promises, measured at the configured tolerances and
//! reported as one record per check.

use num_complex::Complex64;
use phasekit::basis::{fourier_of_phi, fourier_spec, phi, phi_tilde, StateSpec};
use phasekit::kernel::{
    chi_closed, chi_equal_scale, chi_quadrature, kernel_transport, KernelArgs,
    DEFAULT_CLOSED_FORM_CAP,
};
use phasekit::operators::{
    commutator_check, eigen_residual_with_multiplier, matrix_dispersion, GridAxis, PhaseField,
};
use phasekit::quadrature::{default_gh_order, integrate_1d, IntegrationSpec};
use phasekit::transform::{
    norm_integral, norm_integral_specs, project, project_spectrum, reconstruct_integral_xp,
    reconstruct_scale_p, reconstruct_scale_x, reconstruct_sum, ScaleWindow,
};
use phasekit::{PhaseIndex, Result as PhaseResult, ScaleParam};
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, VERSION_STRING};
use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// Code location of the identity under test, for tracing a failure.
    pub anchor: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerifyReport {
    fn build(config: &RunConfig, checks: Vec<CheckRecord>) -> VerifyReport {
        let pass = checks.iter().all(|c| c.pass);
        VerifyReport {
            version: VERSION_STRING.to_string(),
            config: config.clone(),
            checks,
            pass,
        }
    }
}

fn record(name: &str, anchor: &str, measured: f64, expected: f64, tolerance: f64) -> CheckRecord {
    CheckRecord {
        name: name.to_string(),
        anchor: anchor.to_string(),
        measured,
        expected,
        tolerance,
        pass: (measured - expected).abs() <= tolerance,
    }
}

struct Setup {
    scale: ScaleParam,
    packet: StateSpec,
    /// The packet written as the ground member of the family at its own
    /// label; the reference wavefunction for reconstruction checks.
    packet_index: PhaseIndex,
}

impl Setup {
    fn new(config: &RunConfig) -> Result<Setup, CliError> {
        let scale = ScaleParam::new(config.a, config.hbar)
            .map_err(|e| CliError::config(e.to_string()))?;
        let w = 1.3 * config.a;
        let center = 0.4 * config.a;
        let momentum = 1.2 * scale.b();
        let packet = StateSpec::gaussian_packet(center, w, momentum, config.hbar)
            .map_err(|e| CliError::config(e.to_string()))?;
        let packet_scale = ScaleParam::new(w, config.hbar)
            .map_err(|e| CliError::config(e.to_string()))?;
        let packet_index = PhaseIndex::new(0, center, momentum, packet_scale)
            .map_err(|e| CliError::config(e.to_string()))?;
        Ok(Setup {
            scale,
            packet,
            packet_index,
        })
    }
}

pub fn run_suite(config: &RunConfig) -> Result<VerifyReport, CliError> {
    let setup = Setup::new(config)?;
    let mut checks = Vec::new();
    let num = CliError::from;

    checks.push(kernel_closed_vs_quadrature(config, &setup).map_err(num)?);
    checks.push(kernel_orthonormality(config, &setup).map_err(num)?);
    checks.push(kernel_hermitian_symmetry(config, &setup).map_err(num)?);
    checks.push(kernel_equal_scale(config, &setup).map_err(num)?);
    checks.push(commutator(config));
    checks.push(matrix_diagonal(config, &setup));
    checks.push(eigen_basis_fields(config, &setup).map_err(num)?);
    checks.push(eigen_kernel_fields(config, &setup).map_err(num)?);
    checks.push(dispersion_moments(config, &setup).map_err(num)?);
    let (parseval, tail) = spectrum_checks(config, &setup).map_err(num)?;
    checks.push(parseval);
    checks.push(tail);
    checks.push(lattice_completeness(config, &setup).map_err(num)?);
    checks.push(transport(config, &setup).map_err(num)?);
    checks.push(resummation(config, &setup).map_err(num)?);
    checks.push(inversion_xp(config, &setup).map_err(num)?);
    checks.push(fourier_pair(config, &setup).map_err(num)?);
    checks.push(scale_fans(config, &setup).map_err(num)?);

    Ok(VerifyReport::build(config, checks))
}

fn kernel_closed_vs_quadrature(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let a = config.a;
    let b = setup.scale.b();
    // Fixed draws spanning index depth, displacement, and scale ratio.
    let cases: [(usize, f64, f64, f64, usize, f64, f64, f64); 6] = [
        (0, 0.0, 0.0, 1.0, 0, 0.5, -0.3, 0.7),
        (3, 1.2, -0.4, 0.8, 2, -0.6, 0.9, 1.4),
        (8, -1.5, 2.0, 1.1, 8, 1.5, -2.0, 0.5),
        (5, 0.3, 0.7, 2.0, 1, 0.1, -1.1, 0.6),
        (2, -0.9, -1.8, 0.45, 7, 0.8, 1.3, 1.9),
        (6, 2.0, 0.2, 1.3, 4, -2.0, -0.2, 1.0),
    ];
    let mut worst = 0.0f64;
    for (n, x, p, s, np, xp, pp, sp) in cases {
        let left = PhaseIndex::new(n, x * a, p * b, ScaleParam::new(s * a, config.hbar)?)?;
        let right = PhaseIndex::new(np, xp * a, pp * b, ScaleParam::new(sp * a, config.hbar)?)?;
        let ka = KernelArgs::new(left, right)?;
        let closed = chi_closed(&ka)?;
        let quad = chi_quadrature(&ka, &ka.default_quadrature_spec())?;
        worst = worst.max((closed - quad).norm());
    }
    Ok(record(
        "kernel closed form vs quadrature",
        "kernel::chi_closed",
        worst,
        0.0,
        config.verify.kernel_tol,
    ))
}

fn kernel_orthonormality(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let mut worst = 0.0f64;
    for n in 0..=12usize {
        for np in 0..=12usize {
            let left = PhaseIndex::new(n, 0.37 * config.a, -0.8 * setup.scale.b(), setup.scale)?;
            let right = PhaseIndex::new(np, 0.37 * config.a, -0.8 * setup.scale.b(), setup.scale)?;
            let chi = chi_closed(&KernelArgs::new(left, right)?)?;
            let delta = if n == np { 1.0 } else { 0.0 };
            worst = worst.max((chi - Complex64::new(delta, 0.0)).norm());
        }
    }
    Ok(record(
        "coincident labels reduce to the identity",
        "kernel::chi_closed",
        worst,
        0.0,
        config.verify.ortho_tol,
    ))
}

fn kernel_hermitian_symmetry(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let a = config.a;
    let b = setup.scale.b();
    let mut worst = 0.0f64;
    for (n, x, p, s, np, xp, pp, sp) in [
        (1usize, 0.4, -0.2, 1.0, 2usize, -0.3, 0.6, 0.8),
        (4, -1.0, 1.1, 0.6, 0, 0.9, -0.7, 1.5),
        (3, 0.0, 2.0, 1.2, 3, 0.0, -2.0, 1.2),
    ] {
        let left = PhaseIndex::new(n, x * a, p * b, ScaleParam::new(s * a, config.hbar)?)?;
        let right = PhaseIndex::new(np, xp * a, pp * b, ScaleParam::new(sp * a, config.hbar)?)?;
        let ka = KernelArgs::new(left, right)?;
        let fwd = chi_closed(&ka)?;
        let rev = chi_closed(&ka.swapped())?;
        worst = worst.max((fwd - rev.conj()).norm());
    }
    Ok(record(
        "swapping sides conjugates the kernel",
        "kernel::KernelArgs::swapped",
        worst,
        0.0,
        config.verify.ortho_tol,
    ))
}

fn kernel_equal_scale(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let a = config.a;
    let b = setup.scale.b();
    let mut worst = 0.0f64;
    for (n, x, p, np, xp, pp) in [
        (0usize, 2.0, 2.0, 0usize, 0.0, 0.0),
        (2, 0.5, -0.8, 1, -0.4, 0.3),
        (5, -1.2, 0.0, 3, 0.7, 1.5),
    ] {
        let left = PhaseIndex::new(n, x * a, p * b, setup.scale)?;
        let right = PhaseIndex::new(np, xp * a, pp * b, setup.scale)?;
        let ka = KernelArgs::new(left, right)?;
        worst = worst.max((chi_equal_scale(&ka)? - chi_closed(&ka)?).norm());
    }
    Ok(record(
        "equal-scale shortcut agrees with the general form",
        "kernel::chi_equal_scale",
        worst,
        0.0,
        config.verify.ortho_tol,
    ))
}

fn commutator(config: &RunConfig) -> CheckRecord {
    record(
        "truncated commutator is canonical off the last row",
        "operators::commutator_check",
        commutator_check(32),
        0.0,
        config.verify.commutator_tol,
    )
}

fn matrix_diagonal(config: &RunConfig, setup: &Setup) -> CheckRecord {
    let m = matrix_dispersion(32, setup.scale);
    let bb = setup.scale.big_b();
    let mut worst = 0.0f64;
    // The last index is truncation-contaminated by construction.
    for k in 0..31 {
        let expect = (2 * k + 1) as f64 * bb;
        worst = worst.max((m[[k, k]] - Complex64::new(expect, 0.0)).norm() / bb);
    }
    record(
        "dispersion matrix carries the odd-integer ladder",
        "operators::matrix_dispersion",
        worst,
        0.0,
        config.verify.commutator_tol,
    )
}

fn eigen_axes(config: &RunConfig, center_x: f64, center_p: f64) -> PhaseResult<(GridAxis, GridAxis)> {
    let scale = ScaleParam::new(config.a, config.hbar)?;
    let xs = GridAxis::centered(
        center_x,
        config.grid.extent_x * scale.a(),
        config.grid.h_x * scale.a(),
    )?;
    let ps = GridAxis::centered(
        center_p,
        config.grid.extent_p * scale.b(),
        config.grid.h_p * scale.b(),
    )?;
    Ok((xs, ps))
}

fn eigen_basis_fields(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let scale = setup.scale;
    let x0 = 0.7 * config.a;
    let (xs, ps) = eigen_axes(config, x0, 0.0)?;
    let mut worst = 0.0f64;
    for n in [0usize, 3, 6] {
        let field = PhaseField::sample(xs, ps, scale, |big_x, big_p| {
            let idx = PhaseIndex {
                n,
                x: big_x,
                p: big_p,
                scale,
            };
            phi(&idx, x0).conj()
        })?;
        let r =
            eigen_residual_with_multiplier(n, &field, config.verify.eigenvalue_multiplier)?;
        worst = worst.max(r);
    }
    Ok(record(
        "basis fields satisfy the eigenvalue equation",
        "operators::eigen_residual",
        worst,
        0.0,
        config.verify.eigen_tol,
    ))
}

fn eigen_kernel_fields(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let scale = setup.scale;
    let right_scale = ScaleParam::new(0.6 * config.a, config.hbar)?;
    let xr = 0.3 * config.a;
    let pr = -0.4 * scale.b();
    // Half extents sized to the kernel's own envelope, not the basis one.
    let sigma_x = (2.0 * (scale.big_a() + right_scale.big_a())).sqrt();
    let sigma_p = (2.0 * (scale.big_b() + right_scale.big_b())).sqrt();
    let xs = GridAxis::centered(xr, 3.5 * sigma_x, config.grid.h_x * scale.a())?;
    let ps = GridAxis::centered(pr, 3.5 * sigma_p, config.grid.h_p * scale.b())?;
    let mut worst = 0.0f64;
    for (n, np) in [(0usize, 0usize), (2, 1)] {
        let field = PhaseField::sample(xs, ps, scale, |big_x, big_p| {
            let left = PhaseIndex {
                n,
                x: big_x,
                p: big_p,
                scale,
            };
            let right = PhaseIndex {
                n: np,
                x: xr,
                p: pr,
                scale: right_scale,
            };
            chi_closed(&KernelArgs::new(left, right).expect("equal hbar"))
                .expect("indices under cap")
        })?;
        let r =
            eigen_residual_with_multiplier(n, &field, config.verify.eigenvalue_multiplier)?;
        worst = worst.max(r);
    }
    Ok(record(
        "kernel fields satisfy the eigenvalue equation",
        "operators::eigen_residual",
        worst,
        0.0,
        config.verify.eigen_tol,
    ))
}

fn dispersion_moments(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let scale = setup.scale;
    let (a2, b2) = (scale.big_a(), scale.big_b());
    let mut worst = 0.0f64;
    for n in 0..=10usize {
        let idx = PhaseIndex::new(n, 0.3 * config.a, -0.7 * scale.b(), scale)?;
        let order = default_gh_order(2 * n + 2);
        let spec_x = IntegrationSpec::gauss_hermite(order)
            .with_envelope(idx.x, std::f64::consts::SQRT_2 * scale.a());
        let var_x = integrate_1d(
            |x| {
                let v = phi(&idx, x);
                (x - idx.x).powi(2) * (v * v.conj())
            },
            &spec_x,
        )?
        .re;
        let expect_x = (2 * n + 1) as f64 * a2;
        worst = worst.max(((var_x - expect_x) / expect_x).abs());

        let spec_p = IntegrationSpec::gauss_hermite(order)
            .with_envelope(idx.p, std::f64::consts::SQRT_2 * scale.b());
        let var_p = integrate_1d(
            |p| {
                let v = phi_tilde(&idx, p);
                (p - idx.p).powi(2) * (v * v.conj())
            },
            &spec_p,
        )?
        .re;
        let expect_p = (2 * n + 1) as f64 * b2;
        worst = worst.max(((var_p - expect_p) / expect_p).abs());
    }
    Ok(record(
        "dispersions follow the odd-integer ladder",
        "quadrature::integrate_1d",
        worst,
        0.0,
        config.verify.moment_tol,
    ))
}

fn spectrum_checks(
    config: &RunConfig,
    setup: &Setup,
) -> PhaseResult<(CheckRecord, CheckRecord)> {
    let spectrum = project_spectrum(
        &setup.packet,
        0.0,
        0.0,
        setup.scale,
        config.truncation.n_max,
        config.quadrature.gh_order,
    )?;
    let parseval = record(
        "spectrum weight resolves unity",
        "transform::project_spectrum",
        spectrum.norm_sum(),
        1.0,
        config.verify.parseval_tol,
    );
    let tail = record(
        "truncation tail stays under the configured bound",
        "transform::Spectrum",
        spectrum.tail_bound,
        0.0,
        config.truncation.tail_tol,
    );
    Ok((parseval, tail))
}

fn lattice_completeness(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let mut worst = 0.0f64;
    for n in [0usize, 1] {
        let (sx, sp) = norm_integral_specs(&setup.packet, n, setup.scale);
        let v = norm_integral(&setup.packet, n, setup.scale, &sx, &sp)?;
        worst = worst.max((v - 1.0).abs());
    }
    Ok(record(
        "label-plane completeness recovers unit mass",
        "transform::norm_integral",
        worst,
        0.0,
        config.verify.inversion_tol,
    ))
}

fn transport(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let base_scale = ScaleParam::new(0.9 * config.a, config.hbar)?;
    let spectrum = project_spectrum(
        &setup.packet,
        0.2 * config.a,
        -0.4 * setup.scale.b(),
        base_scale,
        config.truncation.n_max,
        config.quadrature.gh_order,
    )?;
    let target = PhaseIndex::new(
        2,
        1.1 * config.a,
        1.4 * setup.scale.b(),
        ScaleParam::new(1.25 * config.a, config.hbar)?,
    )?;
    let via_kernel = kernel_transport(
        &spectrum,
        &target,
        DEFAULT_CLOSED_FORM_CAP,
        config.truncation.tail_tol,
    )?;
    let direct = project(
        &setup.packet,
        &target,
        &IntegrationSpec::gauss_hermite(config.quadrature.gh_order),
    )?;
    Ok(record(
        "kernel transport equals direct projection",
        "kernel::kernel_transport",
        (via_kernel - direct).norm(),
        0.0,
        config.verify.transport_tol,
    ))
}

fn resummation(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let spectrum = project_spectrum(
        &setup.packet,
        0.0,
        0.0,
        setup.scale,
        config.truncation.n_max,
        config.quadrature.gh_order,
    )?;
    let mut worst = 0.0f64;
    let mut k = 0;
    loop {
        let x = (-6.0 + 0.25 * k as f64) * config.a;
        if x > 6.0 * config.a {
            break;
        }
        let diff = (reconstruct_sum(&spectrum, x)? - phi(&setup.packet_index, x)).norm();
        worst = worst.max(diff);
        k += 1;
    }
    Ok(record(
        "resummation reproduces the state pointwise",
        "transform::reconstruct_sum",
        worst,
        0.0,
        config.verify.reconstruct_tol,
    ))
}

fn inversion_xp(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let mut worst = 0.0f64;
    for xf in [0.0, 0.9, 2.0] {
        let x = xf * config.a;
        let psi = phi(&setup.packet_index, x);
        for n in [0usize, 3] {
            let v = reconstruct_integral_xp(
                &setup.packet,
                n,
                setup.scale,
                x,
                config.quadrature.gh_order,
            )?;
            worst = worst.max((v - psi).norm() / psi.norm());
        }
    }
    Ok(record(
        "phase-plane inversion is index independent",
        "transform::reconstruct_integral_xp",
        worst,
        0.0,
        config.verify.inversion_tol,
    ))
}

fn fourier_pair(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let scale = ScaleParam::new(0.7 * config.a, config.hbar)?;
    let b = setup.scale.b();
    let mut worst = 0.0f64;
    for n in 0..=8usize {
        let idx = PhaseIndex::new(n, 0.3 * config.a, -1.2 * b, scale)?;
        let spec = fourier_spec(&idx, default_gh_order(n));
        for pf in [-3.0, 0.4, 4.0] {
            let p = pf * b;
            worst = worst.max((phi_tilde(&idx, p) - fourier_of_phi(&idx, p, &spec)?).norm());
        }
    }
    Ok(record(
        "momentum representation is the transform of the position one",
        "basis::fourier_of_phi",
        worst,
        0.0,
        config.verify.fourier_tol,
    ))
}

fn scale_fans(config: &RunConfig, setup: &Setup) -> PhaseResult<CheckRecord> {
    let w = 1.3 * config.a;
    let b_packet = config.hbar / (2.0 * w);
    let center = 0.4 * config.a;
    let momentum = setup.packet_index.p;
    let order = config.quadrature.gh_order;

    let mut window_p = ScaleWindow::about(b_packet)?;
    window_p.factor = config.window.factor;
    window_p.log_nodes = config.window.log_nodes;
    let x = center + w;
    let rec_p = reconstruct_scale_p(&setup.packet, 0, config.hbar, center, x, &window_p, order)?;
    let psi = phi(&setup.packet_index, x);
    let rel_p = (rec_p.value - psi).norm() / psi.norm();

    let mut window_x = ScaleWindow::about(w)?;
    window_x.factor = config.window.factor;
    window_x.log_nodes = config.window.log_nodes;
    let p = momentum + b_packet;
    let rec_x =
        reconstruct_scale_x(&setup.packet, 1, config.hbar, momentum, p, &window_x, order)?;
    let psi_tilde = phi_tilde(&setup.packet_index, p);
    let rel_x = (rec_x.value - psi_tilde).norm() / psi_tilde.norm();

    Ok(record(
        "scale fans recover both wavefunctions",
        "transform::reconstruct_scale_p",
        rel_p.max(rel_x),
        0.0,
        config.verify.scale_fan_tol,
    ))
}
