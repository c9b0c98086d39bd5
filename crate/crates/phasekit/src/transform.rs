//! Projection of wavefunctions onto the basis family and the inverse maps:
//! discrete resummation at a fixed label, the phase-plane integral at a fixed
//! scale, and the scale-family integrals along each axis.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{packet_index, phi, phi_family, phi_tilde, StateSpec};
use crate::error::{PhaseError, Result};
use crate::kernel::chi_closed_core;
use crate::quadrature::{
    default_gh_order, gauss_hermite, integrate_1d, integrate_2d, IntegrationSpec, Method,
};
use crate::scales::{PhaseIndex, ScaleParam};

const PI: f64 = std::f64::consts::PI;

/// Tail bounds above this make [`reconstruct_sum`] refuse to resum.
pub const RECONSTRUCT_TAIL_TOL: f64 = 1e-6;

/// Common label of every member in a spectrum: phase-space center and scale.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpectrumBase {
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(flatten)]
    pub scale: ScaleParam,
}

/// Projection amplitudes of one state onto the discrete family at a fixed
/// base label, entry `m` belonging to index `m`.
///
/// `tail_bound` bounds the squared weight left above the truncation; for a
/// normalized state the amplitudes of the full family resolve unity, so
/// `1 - norm_sum` is that bound up to roundoff.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Spectrum {
    pub base: SpectrumBase,
    #[serde(with = "crate::serde_util::complex_list")]
    pub amplitudes: Vec<Complex64>,
    pub tail_bound: f64,
}

impl Spectrum {
    /// Wrap amplitudes taken at `base`, deriving the tail bound from the
    /// normalization deficit.
    pub fn new(base: SpectrumBase, amplitudes: Vec<Complex64>) -> Result<Spectrum> {
        let s = Spectrum {
            base,
            amplitudes,
            tail_bound: 0.0,
        };
        let sum = s.norm_sum();
        if sum > 1.0 + 1e-10 {
            return Err(PhaseError::InvalidParameter(format!(
                "spectrum squared amplitudes sum to {sum}, above 1; \
                 the source state cannot be normalized"
            )));
        }
        let s = Spectrum {
            tail_bound: (1.0 - sum).max(0.0),
            ..s
        };
        s.validate()?;
        Ok(s)
    }

    /// Structural invariants; call after deserializing or assembling by hand.
    pub fn validate(&self) -> Result<()> {
        if self.amplitudes.is_empty() {
            return Err(PhaseError::InvalidParameter(
                "spectrum needs at least one amplitude".into(),
            ));
        }
        if self
            .amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(PhaseError::InvalidParameter(
                "spectrum amplitudes must be finite".into(),
            ));
        }
        if !self.base.x.is_finite() || !self.base.p.is_finite() {
            return Err(PhaseError::InvalidParameter(
                "spectrum base center must be finite".into(),
            ));
        }
        let sum = self.norm_sum();
        if sum > 1.0 + 1e-10 {
            return Err(PhaseError::InvalidParameter(format!(
                "spectrum squared amplitudes sum to {sum}, above 1"
            )));
        }
        // The stored bound must actually bound the deficit.
        if !self.tail_bound.is_finite() || self.tail_bound < (1.0 - sum).max(0.0) - 1e-9 {
            return Err(PhaseError::InvalidParameter(format!(
                "tail bound {} does not cover the normalization deficit {}",
                self.tail_bound,
                (1.0 - sum).max(0.0)
            )));
        }
        Ok(())
    }

    /// Sum of squared amplitude magnitudes.
    pub fn norm_sum(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

enum Part {
    Analytic(PhaseIndex),
    Grid {
        state: StateSpec,
        lo: f64,
        hi: f64,
    },
}

/// Flattened evaluator for `<basis member | state>` that is cheap to call at
/// many labels: analytic content goes through the closed kernel, sampled
/// grids through envelope-matched quadrature.
pub(crate) struct Projector {
    parts: Vec<(Complex64, Part)>,
    hbar: Option<f64>,
    gh_order: usize,
}

impl Projector {
    pub(crate) fn new(state: &StateSpec, gh_order: usize) -> Result<Projector> {
        state.validate()?;
        gauss_hermite(gh_order)?;
        let mut parts = Vec::new();
        flatten(state, Complex64::new(1.0, 0.0), &mut parts)?;
        let mut hbar = None;
        for (_, part) in &parts {
            if let Part::Analytic(idx) = part {
                let h = idx.scale.hbar();
                match hbar {
                    None => hbar = Some(h),
                    Some(prev) if prev != h => {
                        return Err(PhaseError::ScaleMismatch(format!(
                            "state components use hbar = {prev} and {h}"
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(Projector {
            parts,
            hbar,
            gh_order,
        })
    }

    /// Fail if the state pins `hbar` to something other than `hbar`.
    pub(crate) fn target_check(&self, hbar: f64) -> Result<()> {
        if let Some(h) = self.hbar {
            if h != hbar {
                return Err(PhaseError::ScaleMismatch(format!(
                    "state uses hbar = {h}, target label uses {hbar}"
                )));
            }
        }
        Ok(())
    }

    /// `<idx | state>`. Total on validated projectors: the closed form never
    /// fails, and the grid quadrature spec is valid by construction.
    pub(crate) fn amplitude(&self, idx: &PhaseIndex) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (coeff, part) in &self.parts {
            let v = match part {
                Part::Analytic(src) => chi_closed_core(idx, src),
                Part::Grid { state, lo, hi } => {
                    let spec = IntegrationSpec::gauss_hermite(self.gh_order)
                        .with_envelope(idx.x, 2.0 * idx.scale.a())
                        .with_domain(*lo, *hi);
                    integrate_1d(|x| phi(idx, x).conj() * state.eval_zero_tail(x), &spec)
                        .expect("grid projection spec is valid by construction")
                }
            };
            acc += coeff * v;
        }
        acc
    }
}

fn flatten(state: &StateSpec, coeff: Complex64, out: &mut Vec<(Complex64, Part)>) -> Result<()> {
    match state {
        StateSpec::HermiteGaussian { index } => {
            out.push((coeff, Part::Analytic(*index)));
        }
        StateSpec::GaussianPacket {
            center,
            width,
            momentum,
            hbar,
        } => {
            out.push((
                coeff,
                Part::Analytic(packet_index(*center, *width, *momentum, *hbar)?),
            ));
        }
        StateSpec::Superposition { components } => {
            for c in components {
                flatten(&c.state, coeff * c.coeff, out)?;
            }
        }
        StateSpec::SampledGrid { x_nodes, .. } => {
            let lo = x_nodes[0];
            let hi = x_nodes[x_nodes.len() - 1];
            out.push((
                coeff,
                Part::Grid {
                    state: state.clone(),
                    lo,
                    hi,
                },
            ));
        }
    }
    Ok(())
}

fn order_of(spec: &IntegrationSpec) -> usize {
    match spec.method {
        Method::GaussHermite { order } => order,
        _ => 64,
    }
}

/// Projection amplitude `<idx | state>`.
///
/// Analytic content resolves through the closed kernel; only sampled-grid
/// content consumes `spec` (its Gauss-Hermite order, envelope matching being
/// automatic). The quadrature ground truth is [`project_quadrature`].
pub fn project(state: &StateSpec, idx: &PhaseIndex, spec: &IntegrationSpec) -> Result<Complex64> {
    let proj = Projector::new(state, order_of(spec))?;
    proj.target_check(idx.scale.hbar())?;
    Ok(proj.amplitude(idx))
}

/// The defining integral `integral conj(phi_idx) psi` evaluated per `spec`.
pub fn project_quadrature(
    state: &StateSpec,
    idx: &PhaseIndex,
    spec: &IntegrationSpec,
) -> Result<Complex64> {
    state.validate()?;
    let idx = *idx;
    integrate_1d(|x| phi(&idx, x).conj() * state.eval_zero_tail(x), spec)
}

/// Envelope-matched spec for [`project_quadrature`]: the product of the basis
/// envelope (curvature `1/(4 a^2)` at `idx.x`) and the state's envelope hint.
pub fn default_project_spec(state: &StateSpec, idx: &PhaseIndex) -> IntegrationSpec {
    let (c_s, w_s) = state.envelope_hint();
    let a = idx.scale.a();
    let c_idx = 1.0 / (4.0 * a * a);
    let c_state = 1.0 / (w_s * w_s);
    let c = c_idx + c_state;
    let mu = (c_idx * idx.x + c_state * c_s) / c;
    IntegrationSpec::gauss_hermite(default_gh_order(idx.n + state.degree_hint()))
        .with_envelope(mu, 1.0 / c.sqrt())
}

/// Amplitudes of `state` on the family at one base label for all indices
/// `0..=n_max`.
pub fn project_spectrum(
    state: &StateSpec,
    x: f64,
    p: f64,
    scale: ScaleParam,
    n_max: usize,
    gh_order: usize,
) -> Result<Spectrum> {
    let proj = Projector::new(state, gh_order)?;
    proj.target_check(scale.hbar())?;
    let base = SpectrumBase { x, p, scale };
    let amplitudes: Vec<Complex64> = (0..=n_max)
        .map(|n| {
            let idx = PhaseIndex { n, x, p, scale };
            proj.amplitude(&idx)
        })
        .collect();
    Spectrum::new(base, amplitudes)
}

/// `integral |<n, X, P | state>|^2 dX dP / (2 pi hbar)` at fixed `n` and
/// scale. The family at each fixed discrete index resolves the identity, so
/// this is 1 for any normalized state; measuring it is the lattice-level
/// completeness check.
pub fn norm_integral(
    state: &StateSpec,
    n: usize,
    scale: ScaleParam,
    spec_x: &IntegrationSpec,
    spec_p: &IntegrationSpec,
) -> Result<f64> {
    let proj = Projector::new(state, order_of(spec_x).max(order_of(spec_p)))?;
    proj.target_check(scale.hbar())?;
    let v = integrate_2d(
        |x, p| {
            let idx = PhaseIndex { n, x, p, scale };
            Complex64::new(proj.amplitude(&idx).norm_sqr(), 0.0)
        },
        spec_x,
        spec_p,
    )?;
    Ok(v.re / (2.0 * PI * scale.hbar()))
}

/// Envelope-matched specs for [`norm_integral`]: the squared amplitude decays
/// in `X` with curvature `1/(2 (a^2 + W^2/4))` about the state's center and
/// correspondingly in `P`.
pub fn norm_integral_specs(
    state: &StateSpec,
    n: usize,
    scale: ScaleParam,
) -> (IntegrationSpec, IntegrationSpec) {
    let (c_s, w_s) = state.envelope_hint();
    let (p_s, b_s) = state.momentum_hint(scale.hbar());
    let a = scale.a();
    let b = scale.b();
    let order = default_gh_order(2 * (n + state.degree_hint()));
    let width_x = (2.0 * (a * a + 0.25 * w_s * w_s)).sqrt();
    let width_p = (2.0 * (b * b + b_s * b_s)).sqrt();
    (
        IntegrationSpec::gauss_hermite(order).with_envelope(c_s, width_x),
        IntegrationSpec::gauss_hermite(order).with_envelope(p_s, width_p),
    )
}

/// Resum a spectrum back into a position wavefunction at `x`. Refuses when
/// the tail bound says the truncation dropped more than
/// [`RECONSTRUCT_TAIL_TOL`] of the squared weight.
pub fn reconstruct_sum(spectrum: &Spectrum, x: f64) -> Result<Complex64> {
    spectrum.validate()?;
    if !(spectrum.tail_bound < RECONSTRUCT_TAIL_TOL) {
        return Err(PhaseError::TailTooHeavy {
            tail: spectrum.tail_bound,
            tol: RECONSTRUCT_TAIL_TOL,
        });
    }
    let base = &spectrum.base;
    let fam = phi_family(
        spectrum.amplitudes.len() - 1,
        base.x,
        base.p,
        base.scale,
        x,
    );
    Ok(spectrum
        .amplitudes
        .iter()
        .zip(fam.iter())
        .map(|(amp, f)| amp * f)
        .sum())
}

/// Phase-plane inversion at a fixed discrete index and scale:
///
/// `psi(x) = integral <n, X, P | psi> phi_{n,X,P}(x) dX dP / (2 pi hbar)`.
pub fn reconstruct_integral_xp(
    state: &StateSpec,
    n: usize,
    scale: ScaleParam,
    x: f64,
    order: usize,
) -> Result<Complex64> {
    let (spec_x, spec_p) = xp_reconstruction_specs(state, n, scale, x, order);
    reconstruct_integral_xp_with(state, n, scale, x, &spec_x, &spec_p)
}

/// [`reconstruct_integral_xp`] with explicit quadrature specs.
pub fn reconstruct_integral_xp_with(
    state: &StateSpec,
    n: usize,
    scale: ScaleParam,
    x: f64,
    spec_x: &IntegrationSpec,
    spec_p: &IntegrationSpec,
) -> Result<Complex64> {
    let proj = Projector::new(state, order_of(spec_x).max(order_of(spec_p)))?;
    proj.target_check(scale.hbar())?;
    let v = integrate_2d(
        |cx, cp| {
            let idx = PhaseIndex {
                n,
                x: cx,
                p: cp,
                scale,
            };
            proj.amplitude(&idx) * phi(&idx, x)
        },
        spec_x,
        spec_p,
    )?;
    Ok(v / (2.0 * PI * scale.hbar()))
}

/// Envelope-matched specs for the phase-plane inversion at evaluation point
/// `x`. In `X` the integrand carries two Gaussians, the amplitude's about the
/// state's center and the basis function's about `x`; their product fixes the
/// center and width exactly, which is what lets moderate orders reach
/// roundoff.
pub fn xp_reconstruction_specs(
    state: &StateSpec,
    _n: usize,
    scale: ScaleParam,
    x: f64,
    order: usize,
) -> (IntegrationSpec, IntegrationSpec) {
    let (c_s, w_s) = state.envelope_hint();
    let (p_s, b_s) = state.momentum_hint(scale.hbar());
    let a = scale.a();
    let b = scale.b();
    let c1 = 1.0 / (4.0 * a * a + w_s * w_s);
    let c2 = 1.0 / (4.0 * a * a);
    let cx = c1 + c2;
    let mu = (c1 * c_s + c2 * x) / cx;
    (
        IntegrationSpec::gauss_hermite(order).with_envelope(mu, 1.0 / cx.sqrt()),
        IntegrationSpec::gauss_hermite(order)
            .with_envelope(p_s, 2.0 * (b * b + b_s * b_s).sqrt()),
    )
}

/// Integration window for the scale-family reconstructions: log-spaced
/// trapezoid over `[reference/factor, reference*factor]` with doubling until
/// the discretization error estimate clears the tolerances.
///
/// The window truncation itself biases the result like `1/factor`; the
/// reconstructions quantify it by redoing the integral over the doubled
/// window and folding the shift into the reported tolerance.
#[derive(Clone, Copy, Debug)]
pub struct ScaleWindow {
    pub reference: f64,
    pub factor: f64,
    pub log_nodes: usize,
    pub max_doublings: u32,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl ScaleWindow {
    /// Default window about a reference scale.
    pub fn about(reference: f64) -> Result<ScaleWindow> {
        let w = ScaleWindow {
            reference,
            factor: 300.0,
            log_nodes: 65,
            max_doublings: 6,
            abs_tol: 1e-10,
            rel_tol: 1e-6,
        };
        w.check()?;
        Ok(w)
    }

    fn check(&self) -> Result<()> {
        if !(self.reference.is_finite() && self.reference > 0.0) {
            return Err(PhaseError::InvalidParameter(format!(
                "window reference scale must be finite and positive, got {}",
                self.reference
            )));
        }
        if !(self.factor.is_finite() && self.factor > 1.0) {
            return Err(PhaseError::InvalidParameter(format!(
                "window factor must exceed 1, got {}",
                self.factor
            )));
        }
        if self.log_nodes < 3 || self.max_doublings < 1 {
            return Err(PhaseError::InvalidParameter(format!(
                "window needs at least 3 log nodes and one doubling, got {} and {}",
                self.log_nodes, self.max_doublings
            )));
        }
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0 && (self.abs_tol > 0.0 || self.rel_tol > 0.0))
        {
            return Err(PhaseError::InvalidParameter(
                "window tolerances must be nonnegative and not both zero".into(),
            ));
        }
        Ok(())
    }
}

/// Result of a scale-family reconstruction. `tolerance` combines the
/// trapezoid error estimate with the window-doubling shift; `window_shift`
/// is that shift alone.
#[derive(Clone, Copy, Debug)]
pub struct Reconstruction {
    pub value: Complex64,
    pub tolerance: f64,
    pub window_shift: f64,
}

/// Trapezoid over `[lo, hi]` with node doubling and a Richardson error
/// estimate. Node values fill in parallel but sum in index order.
fn log_trapezoid<G>(g: G, lo: f64, hi: f64, window: &ScaleWindow) -> Result<(Complex64, f64)>
where
    G: Fn(f64) -> Complex64 + Sync,
{
    let eval = |count: usize| -> Complex64 {
        let step = (hi - lo) / (count - 1) as f64;
        let vals: Vec<Complex64> = (0..count)
            .into_par_iter()
            .map(|k| g(lo + step * k as f64))
            .collect();
        let mut acc = 0.5 * (vals[0] + vals[count - 1]);
        for v in &vals[1..count - 1] {
            acc += v;
        }
        acc * step
    };
    let mut count = window.log_nodes;
    let mut prev = eval(count);
    let mut last_err = f64::INFINITY;
    for _ in 0..window.max_doublings {
        count = 2 * count - 1;
        let cur = eval(count);
        last_err = (cur - prev).norm() / 3.0;
        if last_err <= window.abs_tol.max(window.rel_tol * cur.norm()) {
            return Ok((cur, last_err));
        }
        prev = cur;
    }
    Err(PhaseError::NonConvergence {
        refinements: window.max_doublings,
        estimate: prev.norm(),
        error: last_err,
    })
}

fn window_gate(
    v1: Complex64,
    e1: f64,
    v2: Complex64,
    e2: f64,
) -> std::result::Result<Reconstruction, PhaseError> {
    let shift = (v2 - v1).norm();
    let quad = e1.max(e2);
    let tolerance = quad + shift;
    let floor = quad.max(1e-3 * v1.norm().max(v2.norm())).max(1e-10);
    if shift > 10.0 * floor {
        return Err(PhaseError::WindowSensitive {
            value: v2,
            tolerance,
            shift,
        });
    }
    Ok(Reconstruction {
        value: v2,
        tolerance,
        window_shift: shift,
    })
}

/// Scale-family reconstruction along the momentum axis at a fixed position
/// center:
///
/// `integral db/b integral dP b <n, X, P, b | psi> (x - X) phi_{n,X,P,b}(x)
///  / (pi hbar) = sign(x - X) psi(x)`.
///
/// The recovered value carries the sign of `x - X` and vanishes at the fan
/// center itself. The momentum scale runs over `window` (log-spaced about
/// `window.reference`); the inner integral is Gauss-Hermite of order
/// `gh_order` with the envelope matched to the running scale.
pub fn reconstruct_scale_p(
    state: &StateSpec,
    n: usize,
    hbar: f64,
    x_center: f64,
    x: f64,
    window: &ScaleWindow,
    gh_order: usize,
) -> Result<Reconstruction> {
    window.check()?;
    if !(hbar.is_finite() && hbar > 0.0) || !x_center.is_finite() || !x.is_finite() {
        return Err(PhaseError::InvalidParameter(format!(
            "scale reconstruction needs finite positive hbar and finite points, \
             got hbar {hbar}, center {x_center}, x {x}"
        )));
    }
    let proj = Projector::new(state, gh_order)?;
    proj.target_check(hbar)?;
    let (p_s, b_s) = state.momentum_hint(hbar);
    let run = |factor: f64| -> Result<(Complex64, f64)> {
        let lo = (window.reference / factor).ln();
        let hi = (window.reference * factor).ln();
        log_trapezoid(
            |u| {
                let b_run = u.exp();
                let scale =
                    ScaleParam::from_b(b_run, hbar).expect("running scale is positive");
                let width = 2.0 * (b_run * b_run + b_s * b_s).sqrt();
                let spec =
                    IntegrationSpec::gauss_hermite(gh_order).with_envelope(p_s, width);
                let inner = integrate_1d(
                    |p| {
                        let idx = PhaseIndex {
                            n,
                            x: x_center,
                            p,
                            scale,
                        };
                        proj.amplitude(&idx) * phi(&idx, x)
                    },
                    &spec,
                )
                .expect("inner spec is valid by construction");
                inner * (x - x_center) / (PI * hbar)
            },
            lo,
            hi,
            window,
        )
    };
    let (v1, e1) = run(window.factor)?;
    let (v2, e2) = run(2.0 * window.factor)?;
    window_gate(v1, e1, v2, e2)
}

/// Scale-family reconstruction along the position axis at a fixed momentum
/// center; the mirror of [`reconstruct_scale_p`], recovering
/// `sign(p - P) psi_tilde(p)` from
///
/// `integral da/a integral dX a <n, X, P, a | psi> (p - P)
///  phi_tilde_{n,X,P,a}(p) / (pi hbar)`.
///
/// No parity prefactor appears: the momentum-representation factor already
/// carries the full index dependence. See
/// [`reconstruct_scale_x_with_parity`] for the deliberately broken variant.
pub fn reconstruct_scale_x(
    state: &StateSpec,
    n: usize,
    hbar: f64,
    p_center: f64,
    p: f64,
    window: &ScaleWindow,
    gh_order: usize,
) -> Result<Reconstruction> {
    reconstruct_scale_x_with_parity(state, n, hbar, p_center, p, window, gh_order, false)
}

/// [`reconstruct_scale_x`] with an optional `(-1)^n` prefactor bolted on.
///
/// Including the prefactor flips the sign at every odd index, which shows up
/// as a relative error of exactly 2 against the true momentum wavefunction;
/// it exists as a negative control and for studying that sign structure.
#[allow(clippy::too_many_arguments)]
pub fn reconstruct_scale_x_with_parity(
    state: &StateSpec,
    n: usize,
    hbar: f64,
    p_center: f64,
    p: f64,
    window: &ScaleWindow,
    gh_order: usize,
    include_parity: bool,
) -> Result<Reconstruction> {
    window.check()?;
    if !(hbar.is_finite() && hbar > 0.0) || !p_center.is_finite() || !p.is_finite() {
        return Err(PhaseError::InvalidParameter(format!(
            "scale reconstruction needs finite positive hbar and finite points, \
             got hbar {hbar}, center {p_center}, p {p}"
        )));
    }
    let proj = Projector::new(state, gh_order)?;
    proj.target_check(hbar)?;
    let (c_s, w_s) = state.envelope_hint();
    let parity = if include_parity && n % 2 == 1 { -1.0 } else { 1.0 };
    let run = |factor: f64| -> Result<(Complex64, f64)> {
        let lo = (window.reference / factor).ln();
        let hi = (window.reference * factor).ln();
        log_trapezoid(
            |u| {
                let a_run = u.exp();
                let scale = ScaleParam::new(a_run, hbar).expect("running scale is positive");
                let width = (4.0 * a_run * a_run + w_s * w_s).sqrt();
                let spec =
                    IntegrationSpec::gauss_hermite(gh_order).with_envelope(c_s, width);
                let inner = integrate_1d(
                    |cx| {
                        let idx = PhaseIndex {
                            n,
                            x: cx,
                            p: p_center,
                            scale,
                        };
                        proj.amplitude(&idx) * phi_tilde(&idx, p)
                    },
                    &spec,
                )
                .expect("inner spec is valid by construction");
                inner * (p - p_center) / (PI * hbar)
            },
            lo,
            hi,
            window,
        )
    };
    let (v1, e1) = run(window.factor)?;
    let (v2, e2) = run(2.0 * window.factor)?;
    window_gate(parity * v1, e1, parity * v2, e2)
}

/// Default window for [`reconstruct_scale_p`]: centered on the state's
/// momentum half-width.
pub fn default_scale_window_p(state: &StateSpec, hbar: f64) -> Result<ScaleWindow> {
    let (_, b_s) = state.momentum_hint(hbar);
    ScaleWindow::about(b_s)
}

/// Default window for [`reconstruct_scale_x`]: centered on half the state's
/// envelope width.
pub fn default_scale_window_x(state: &StateSpec) -> Result<ScaleWindow> {
    let (_, w_s) = state.envelope_hint();
    ScaleWindow::about(0.5 * w_s)
}
