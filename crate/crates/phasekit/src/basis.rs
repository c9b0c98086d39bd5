//! Basis functions in position and momentum representation, plus a small
//! declarative language for input states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};
use crate::hermite::{hermite_eval, hermite_sequence, log_prefactor_unchecked};
use crate::quadrature::{integrate_1d, IntegrationSpec};
use crate::scales::{PhaseIndex, ScaleParam};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// `i^k`, exact.
pub(crate) fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(-i)^k`, exact.
pub(crate) fn neg_i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Position-representation basis function at `idx`, evaluated at `x`:
///
/// `H_n(xi) exp(lp - xi^2 / 2) exp(i P x / hbar)`,
/// `xi = (x - X) / (sqrt(2) a)`,
///
/// with `lp` the log prefactor of order `n` at scale `a`. The position
/// density has mean `X` and variance `(2n+1) a^2`; the plane-wave factor
/// shifts the momentum density to mean `P`.
pub fn phi(idx: &PhaseIndex, x: f64) -> Complex64 {
    let a = idx.scale.a();
    let xi = (x - idx.x) / (SQRT_2 * a);
    let lp = log_prefactor_unchecked(idx.n, a);
    let amp = hermite_eval(idx.n, xi) * (lp - 0.5 * xi * xi).exp();
    Complex64::from_polar(amp, idx.p * x / idx.scale.hbar())
}

/// Momentum-representation counterpart of [`phi`]:
///
/// `(-i)^n H_n(xi_p) exp(lp_b - xi_p^2 / 2) exp(-i X (p - P) / hbar)`,
/// `xi_p = (p - P) / (sqrt(2) b)`.
///
/// This is exactly the unitary Fourier transform
/// `(2 pi hbar)^{-1/2} integral phi(x) exp(-i p x / hbar) dx`
/// of [`phi`]; no extra phase convention is involved (covered by tests).
pub fn phi_tilde(idx: &PhaseIndex, p: f64) -> Complex64 {
    let b = idx.scale.b();
    let xi = (p - idx.p) / (SQRT_2 * b);
    let lp = log_prefactor_unchecked(idx.n, b);
    let amp = hermite_eval(idx.n, xi) * (lp - 0.5 * xi * xi).exp();
    neg_i_pow(idx.n) * Complex64::from_polar(amp, -idx.x * (p - idx.p) / idx.scale.hbar())
}

/// `phi` for all orders `0..=n_max` at one point, sharing the recurrence
/// sweep. Entry `n` matches `phi` with that index.
pub fn phi_family(
    n_max: usize,
    x_center: f64,
    p_center: f64,
    scale: ScaleParam,
    x: f64,
) -> Vec<Complex64> {
    let a = scale.a();
    let xi = (x - x_center) / (SQRT_2 * a);
    let gauss = -0.5 * xi * xi;
    let phase = Complex64::from_polar(1.0, p_center * x / scale.hbar());
    hermite_sequence(n_max, xi)
        .iter()
        .enumerate()
        .map(|(n, h)| phase * (h * (log_prefactor_unchecked(n, a) + gauss).exp()))
        .collect()
}

/// `(2 pi hbar)^{-1/2} integral phi(x) exp(-i p x / hbar) dx` by quadrature.
///
/// Use [`fourier_spec`] (or an equivalent envelope match) for the spec;
/// agreement with [`phi_tilde`] is the cross-representation consistency
/// check.
pub fn fourier_of_phi(idx: &PhaseIndex, p: f64, spec: &IntegrationSpec) -> Result<Complex64> {
    let hbar = idx.scale.hbar();
    let norm = 1.0 / (2.0 * std::f64::consts::PI * hbar).sqrt();
    let idx = *idx;
    let v = integrate_1d(
        |x| phi(&idx, x) * Complex64::from_polar(1.0, -p * x / hbar),
        spec,
    )?;
    Ok(v * norm)
}

/// Envelope-matched spec for [`fourier_of_phi`]: the integrand's Gaussian
/// factor is `exp(-(x - X)^2 / (4 a^2))`.
pub fn fourier_spec(idx: &PhaseIndex, order: usize) -> IntegrationSpec {
    IntegrationSpec::gauss_hermite(order).with_envelope(idx.x, 2.0 * idx.scale.a())
}

fn default_hbar() -> f64 {
    1.0
}

/// Declarative description of a wavefunction on the line.
///
/// Variants are plain data so they round-trip through JSON. Build them
/// through the constructors, or call [`StateSpec::validate`] after
/// deserializing or assembling one by hand; evaluation trusts those
/// invariants.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StateSpec {
    /// A single basis member.
    HermiteGaussian { index: PhaseIndex },
    /// Normalized ground Gaussian of half-width `width` centered at `center`,
    /// boosted to momentum `momentum`. Identical to the basis member with
    /// `n = 0` at scale `a = width`.
    GaussianPacket {
        center: f64,
        width: f64,
        momentum: f64,
        #[serde(default = "default_hbar")]
        hbar: f64,
    },
    /// Linear combination. Coefficients must leave the state normalized to
    /// within 1e-8, checked at construction / validation by quadrature.
    Superposition { components: Vec<Component> },
    /// Uniformly spaced complex samples. Evaluation interpolates with a
    /// 4-point cubic stencil, O(h^4); points outside the node range are out
    /// of domain.
    SampledGrid {
        x_nodes: Vec<f64>,
        #[serde(with = "crate::serde_util::complex_list")]
        values: Vec<Complex64>,
    },
}

/// One term of a superposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Component {
    #[serde(with = "crate::serde_util::complex_pair")]
    pub coeff: Complex64,
    pub state: StateSpec,
}

/// Validated index form of a Gaussian packet.
pub(crate) fn packet_index(center: f64, width: f64, momentum: f64, hbar: f64) -> Result<PhaseIndex> {
    PhaseIndex::new(0, center, momentum, ScaleParam::new(width, hbar)?)
}

impl StateSpec {
    pub fn hermite_gaussian(index: PhaseIndex) -> StateSpec {
        StateSpec::HermiteGaussian { index }
    }

    pub fn gaussian_packet(center: f64, width: f64, momentum: f64, hbar: f64) -> Result<StateSpec> {
        packet_index(center, width, momentum, hbar)?;
        Ok(StateSpec::GaussianPacket {
            center,
            width,
            momentum,
            hbar,
        })
    }

    pub fn superposition(components: Vec<(Complex64, StateSpec)>) -> Result<StateSpec> {
        let s = StateSpec::Superposition {
            components: components
                .into_iter()
                .map(|(coeff, state)| Component { coeff, state })
                .collect(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn sampled_grid(x_nodes: Vec<f64>, values: Vec<Complex64>) -> Result<StateSpec> {
        let s = StateSpec::SampledGrid { x_nodes, values };
        s.validate()?;
        Ok(s)
    }

    /// Check every structural invariant, including the superposition
    /// normalization (quadrature, 1e-8).
    pub fn validate(&self) -> Result<()> {
        match self {
            StateSpec::HermiteGaussian { index } => {
                PhaseIndex::new(index.n, index.x, index.p, index.scale)?;
                Ok(())
            }
            StateSpec::GaussianPacket {
                center,
                width,
                momentum,
                hbar,
            } => {
                packet_index(*center, *width, *momentum, *hbar)?;
                Ok(())
            }
            StateSpec::SampledGrid { x_nodes, values } => validate_grid(x_nodes, values),
            StateSpec::Superposition { components } => {
                if components.is_empty() {
                    return Err(PhaseError::InvalidParameter(
                        "superposition needs at least one component".into(),
                    ));
                }
                for c in components {
                    if !c.coeff.re.is_finite() || !c.coeff.im.is_finite() {
                        return Err(PhaseError::InvalidParameter(
                            "superposition coefficient must be finite".into(),
                        ));
                    }
                    c.state.validate()?;
                }
                let norm = self.norm_quadrature()?;
                if (norm - 1.0).abs() > 1e-8 {
                    return Err(PhaseError::InvalidParameter(format!(
                        "superposition squared norm is {norm}, must equal 1 within 1e-8"
                    )));
                }
                Ok(())
            }
        }
    }

    /// `integral |psi|^2` by adaptive quadrature over the support hull.
    /// Sampled grids contribute zero outside their node range here.
    pub fn norm_quadrature(&self) -> Result<f64> {
        let (lo, hi) = self.support_hull();
        let spec = IntegrationSpec::adaptive(1e-10, 1e-10, 18).with_domain(lo, hi);
        let v = integrate_1d(
            |x| Complex64::new(self.eval_zero_tail(x).norm_sqr(), 0.0),
            &spec,
        )?;
        Ok(v.re)
    }

    /// Like [`eval_state`] but a sampled grid reads as zero outside its
    /// domain. Used wherever the state sits inside an integrand.
    pub(crate) fn eval_zero_tail(&self, x: f64) -> Complex64 {
        match self {
            StateSpec::SampledGrid { x_nodes, values } => {
                grid_eval(x_nodes, values, x).unwrap_or(Complex64::new(0.0, 0.0))
            }
            StateSpec::Superposition { components } => components
                .iter()
                .map(|c| c.coeff * c.state.eval_zero_tail(x))
                .sum(),
            other => eval_state(other, x).unwrap_or(Complex64::new(0.0, 0.0)),
        }
    }

    /// Conservative interval holding all but a negligible part of the state.
    pub(crate) fn support_hull(&self) -> (f64, f64) {
        match self {
            StateSpec::SampledGrid { x_nodes, .. } => {
                (x_nodes[0], x_nodes[x_nodes.len() - 1])
            }
            StateSpec::Superposition { components } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for c in components {
                    let (l, h) = c.state.support_hull();
                    lo = lo.min(l);
                    hi = hi.max(h);
                }
                (lo, hi)
            }
            _ => {
                let (c, w) = self.envelope_hint();
                (c - 14.0 * w, c + 14.0 * w)
            }
        }
    }

    /// `(center, W)` such that the position-space magnitude decays roughly
    /// like `exp(-((x - center)/W)^2)`. Drives envelope matching in the
    /// transforms; grids get a heuristic spread covering their span.
    pub(crate) fn envelope_hint(&self) -> (f64, f64) {
        match self {
            StateSpec::HermiteGaussian { index } => (
                index.x,
                2.0 * index.scale.a() * ((index.n + 1) as f64).sqrt(),
            ),
            StateSpec::GaussianPacket { center, width, .. } => (*center, 2.0 * width),
            StateSpec::SampledGrid { x_nodes, .. } => {
                let lo = x_nodes[0];
                let hi = x_nodes[x_nodes.len() - 1];
                (0.5 * (lo + hi), 0.125 * (hi - lo).max(f64::MIN_POSITIVE))
            }
            StateSpec::Superposition { components } => {
                let centers: Vec<(f64, f64)> =
                    components.iter().map(|c| c.state.envelope_hint()).collect();
                let mid =
                    centers.iter().map(|(c, _)| c).sum::<f64>() / centers.len() as f64;
                let spread = centers
                    .iter()
                    .map(|(c, w)| w + (c - mid).abs())
                    .fold(0.0f64, f64::max);
                (mid, spread)
            }
        }
    }

    /// `(center, half-width)` of the momentum-space magnitude, same role as
    /// [`Self::envelope_hint`] on the conjugate axis.
    pub(crate) fn momentum_hint(&self, hbar: f64) -> (f64, f64) {
        match self {
            StateSpec::HermiteGaussian { index } => (
                index.p,
                index.scale.b() * ((index.n + 1) as f64).sqrt(),
            ),
            StateSpec::GaussianPacket {
                width, momentum, hbar: h, ..
            } => (*momentum, *h / (2.0 * *width)),
            StateSpec::SampledGrid { x_nodes, .. } => {
                // Content is band-limited by the sample spacing.
                let h = (x_nodes[x_nodes.len() - 1] - x_nodes[0]) / (x_nodes.len() - 1) as f64;
                (0.0, 0.5 * std::f64::consts::PI * hbar / h)
            }
            StateSpec::Superposition { components } => {
                let hints: Vec<(f64, f64)> = components
                    .iter()
                    .map(|c| c.state.momentum_hint(hbar))
                    .collect();
                let mid = hints.iter().map(|(c, _)| c).sum::<f64>() / hints.len() as f64;
                let spread = hints
                    .iter()
                    .map(|(c, w)| w + (c - mid).abs())
                    .fold(0.0f64, f64::max);
                (mid, spread)
            }
        }
    }

    /// Rough polynomial degree of the state on top of its Gaussian envelope;
    /// feeds quadrature order choices.
    pub(crate) fn degree_hint(&self) -> usize {
        match self {
            StateSpec::HermiteGaussian { index } => index.n,
            StateSpec::GaussianPacket { .. } => 0,
            StateSpec::SampledGrid { .. } => 16,
            StateSpec::Superposition { components } => components
                .iter()
                .map(|c| c.state.degree_hint())
                .max()
                .unwrap_or(0),
        }
    }

    /// `hbar` carried by the state, when it carries one at all.
    pub fn hbar_hint(&self) -> Option<f64> {
        match self {
            StateSpec::HermiteGaussian { index } => Some(index.scale.hbar()),
            StateSpec::GaussianPacket { hbar, .. } => Some(*hbar),
            StateSpec::Superposition { components } => {
                components.iter().find_map(|c| c.state.hbar_hint())
            }
            StateSpec::SampledGrid { .. } => None,
        }
    }
}

/// Evaluate a state description at `x`.
pub fn eval_state(state: &StateSpec, x: f64) -> Result<Complex64> {
    match state {
        StateSpec::HermiteGaussian { index } => Ok(phi(index, x)),
        StateSpec::GaussianPacket {
            center,
            width,
            momentum,
            hbar,
        } => Ok(phi(&packet_index(*center, *width, *momentum, *hbar)?, x)),
        StateSpec::Superposition { components } => {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in components {
                acc += c.coeff * eval_state(&c.state, x)?;
            }
            Ok(acc)
        }
        StateSpec::SampledGrid { x_nodes, values } => grid_eval(x_nodes, values, x),
    }
}

fn validate_grid(nodes: &[f64], values: &[Complex64]) -> Result<()> {
    if nodes.len() < 4 {
        return Err(PhaseError::InvalidParameter(format!(
            "sampled grid needs at least 4 nodes, got {}",
            nodes.len()
        )));
    }
    if values.len() != nodes.len() {
        return Err(PhaseError::InvalidParameter(format!(
            "sampled grid has {} nodes but {} values",
            nodes.len(),
            values.len()
        )));
    }
    let h = (nodes[nodes.len() - 1] - nodes[0]) / (nodes.len() - 1) as f64;
    if !(h.is_finite() && h > 0.0) {
        return Err(PhaseError::InvalidParameter(
            "sampled grid nodes must be finite and increasing".into(),
        ));
    }
    for (k, pair) in nodes.windows(2).enumerate() {
        let step = pair[1] - pair[0];
        if !(step > 0.0) || (step - h).abs() > 1e-6 * h {
            return Err(PhaseError::InvalidParameter(format!(
                "sampled grid spacing is not uniform near node {k}: step {step} vs mean {h}"
            )));
        }
    }
    if values
        .iter()
        .any(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(PhaseError::InvalidParameter(
            "sampled grid values must be finite".into(),
        ));
    }
    Ok(())
}

/// Cubic (4-point Lagrange) interpolation on the uniform grid.
fn grid_eval(nodes: &[f64], values: &[Complex64], x: f64) -> Result<Complex64> {
    let count = nodes.len();
    if count < 4 || values.len() != count {
        return Err(PhaseError::InvalidParameter(
            "sampled grid needs at least 4 matching nodes and values".into(),
        ));
    }
    let lo = nodes[0];
    let hi = nodes[count - 1];
    if x < lo || x > hi {
        return Err(PhaseError::OutOfDomain { x, lo, hi });
    }
    let h = (hi - lo) / (count - 1) as f64;
    let j = (((x - lo) / h).floor() as isize).clamp(1, count as isize - 3) as usize;
    let t = (x - (lo + h * j as f64)) / h;
    let wm1 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    let w0 = (t * t - 1.0) * (t - 2.0) / 2.0;
    let w1 = -t * (t + 1.0) * (t - 2.0) / 2.0;
    let w2 = t * (t * t - 1.0) / 6.0;
    Ok(values[j - 1] * wm1 + values[j] * w0 + values[j + 1] * w1 + values[j + 2] * w2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_idx(n: usize) -> PhaseIndex {
        PhaseIndex::new(n, 0.0, 0.0, ScaleParam::unit()).unwrap()
    }

    #[test]
    fn ground_state_peak_value() {
        // phi_0(0) at the origin with unit scale: (2 pi)^{-1/4}
        let v = phi(&unit_idx(0), 0.0);
        let expect = (2.0 * std::f64::consts::PI).powf(-0.25);
        assert!((v.re - expect).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn first_excited_vanishes_at_center() {
        let v = phi(&unit_idx(1), 0.0);
        assert_eq!(v.norm(), 0.0);
    }

    #[test]
    fn modulus_ignores_momentum_label() {
        let s = ScaleParam::new(0.7, 1.0).unwrap();
        let i1 = PhaseIndex::new(2, 0.3, 0.0, s).unwrap();
        let i2 = PhaseIndex::new(2, 0.3, 1.9, s).unwrap();
        for &x in &[-1.0, 0.1, 2.5] {
            assert!((phi(&i1, x).norm() - phi(&i2, x).norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn momentum_ground_peak_value() {
        // b = 1/2 at unit scale, so phi_tilde_0(0) = (2 pi)^{-1/4} sqrt(2)
        let v = phi_tilde(&unit_idx(0), 0.0);
        let expect = (2.0 * std::f64::consts::PI).powf(-0.25) * SQRT_2;
        assert!((v.re - expect).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn momentum_second_order_sign() {
        // (-i)^2 = -1 and H_2(0) = -2: the value at the center is positive.
        let v = phi_tilde(&unit_idx(2), 0.0);
        assert!(v.re > 0.0);
        assert!(v.im.abs() < 1e-18);
    }

    #[test]
    fn family_matches_single_evaluations() {
        let s = ScaleParam::new(1.3, 2.0).unwrap();
        for &x in &[-0.8, 0.0, 1.7] {
            let fam = phi_family(12, 0.4, -0.9, s, x);
            for (n, &v) in fam.iter().enumerate() {
                let idx = PhaseIndex::new(n, 0.4, -0.9, s).unwrap();
                assert!((v - phi(&idx, x)).norm() < 1e-15, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn packet_is_ground_basis_member() {
        let spec = StateSpec::gaussian_packet(0.4, 1.3, 0.6, 1.0).unwrap();
        let idx = PhaseIndex::new(0, 0.4, 0.6, ScaleParam::new(1.3, 1.0).unwrap()).unwrap();
        for &x in &[-2.0, 0.4, 1.1] {
            let v = eval_state(&spec, x).unwrap();
            assert_eq!(v, phi(&idx, x));
        }
    }

    #[test]
    fn grid_interpolation_reproduces_smooth_state() {
        let idx = unit_idx(0);
        let n_nodes = 2001;
        let lo = -10.0;
        let h = 20.0 / (n_nodes - 1) as f64;
        let nodes: Vec<f64> = (0..n_nodes).map(|k| lo + h * k as f64).collect();
        let values: Vec<Complex64> = nodes.iter().map(|&x| phi(&idx, x)).collect();
        let grid = StateSpec::sampled_grid(nodes, values).unwrap();
        let v = eval_state(&grid, 0.37).unwrap();
        assert!((v - phi(&idx, 0.37)).norm() < 1e-8);
    }

    #[test]
    fn grid_rejects_out_of_domain() {
        let nodes: Vec<f64> = (0..5).map(|k| k as f64).collect();
        let values = vec![Complex64::new(1.0, 0.0); 5];
        let grid = StateSpec::sampled_grid(nodes, values).unwrap();
        match eval_state(&grid, 4.5) {
            Err(PhaseError::OutOfDomain { lo, hi, .. }) => {
                assert_eq!(lo, 0.0);
                assert_eq!(hi, 4.0);
            }
            other => panic!("expected OutOfDomain, got {other:?}"),
        }
    }

    #[test]
    fn grid_validation() {
        let vals = |k: usize| vec![Complex64::new(0.0, 0.0); k];
        assert!(StateSpec::sampled_grid(vec![0.0, 1.0, 2.0], vals(3)).is_err());
        assert!(StateSpec::sampled_grid(vec![0.0, 1.0, 2.0, 2.5], vals(4)).is_err());
        assert!(StateSpec::sampled_grid(vec![0.0, 1.0, 2.0, 3.0], vals(3)).is_err());
        assert!(StateSpec::sampled_grid(vec![0.0, 1.0, 2.0, 3.0], vals(4)).is_ok());
    }

    #[test]
    fn superposition_normalization_is_enforced() {
        let s = ScaleParam::unit();
        let c0 = StateSpec::hermite_gaussian(PhaseIndex::new(0, 0.0, 0.0, s).unwrap());
        let c1 = StateSpec::hermite_gaussian(PhaseIndex::new(1, 0.0, 0.0, s).unwrap());
        let r = 0.5f64.sqrt();
        let ok = StateSpec::superposition(vec![
            (Complex64::new(r, 0.0), c0.clone()),
            (Complex64::new(0.0, r), c1.clone()),
        ]);
        assert!(ok.is_ok());
        let bad = StateSpec::superposition(vec![
            (Complex64::new(1.0, 0.0), c0),
            (Complex64::new(0.5, 0.0), c1),
        ]);
        assert!(matches!(bad, Err(PhaseError::InvalidParameter(_))));
    }

    #[test]
    fn state_spec_round_trips_through_json() {
        // Orthonormal components (same label, different order) keep the
        // normalization gate happy with non-trivial coefficients.
        let s = ScaleParam::new(1.3, 1.0).unwrap();
        let spec = StateSpec::superposition(vec![
            (
                Complex64::new(0.6, 0.0),
                StateSpec::hermite_gaussian(PhaseIndex::new(2, 0.1, -0.4, s).unwrap()),
            ),
            (
                Complex64::new(0.0, 0.8),
                StateSpec::hermite_gaussian(PhaseIndex::new(0, 0.1, -0.4, s).unwrap()),
            ),
        ])
        .unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(!text.contains("\"b\""), "derived scale must not serialize: {text}");
        let back: StateSpec = serde_json::from_str(&text).unwrap();
        back.validate().unwrap();
        for &x in &[-0.5, 0.3, 1.4] {
            let v0 = eval_state(&spec, x).unwrap();
            let v1 = eval_state(&back, x).unwrap();
            assert!((v0 - v1).norm() < 1e-15);
        }
    }
}
