//! Integration over the real line: Gauss-Hermite rules with envelope-folded
//! weights, and a composite-Simpson fallback for integrands without a clean
//! Gaussian envelope.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{PhaseError, Result};

pub const MAX_GH_ORDER: usize = 512;

/// Gauss-Hermite rule of a given order.
///
/// Nodes come from the symmetric tridiagonal Jacobi matrix (zero diagonal,
/// off-diagonal `sqrt(k/2)`). What is stored is `w_i * exp(t_i^2)`: callers
/// pass the full integrand including its own Gaussian factor, and the folded
/// weights stay O(1) at every order while plain weights underflow past order
/// ~380. The folded weight is the reciprocal Christoffel sum over the
/// orthonormal Hermite *functions*, which are bounded, so no intermediate
/// ever leaves the representable range.
#[derive(Debug)]
pub struct GaussHermite {
    order: usize,
    nodes: Vec<f64>,
    weights_mod: Vec<f64>,
}

impl GaussHermite {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes in ascending order, exactly symmetric about zero.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `w_i * exp(t_i^2)`, matching `nodes()` by position.
    pub fn weights_mod(&self) -> &[f64] {
        &self.weights_mod
    }

    fn build(order: usize) -> Self {
        let mut jac = DMatrix::<f64>::zeros(order, order);
        for k in 1..order {
            let off = ((k as f64) / 2.0).sqrt();
            jac[(k - 1, k)] = off;
            jac[(k, k - 1)] = off;
        }
        let mut raw: Vec<f64> = jac.symmetric_eigenvalues().iter().copied().collect();
        raw.sort_by(f64::total_cmp);
        // Enforce exact spectral symmetry: average each node with its mirror.
        let mut nodes = vec![0.0; order];
        for i in 0..order {
            nodes[i] = 0.5 * (raw[i] - raw[order - 1 - i]);
        }
        if order % 2 == 1 {
            nodes[order / 2] = 0.0;
        }
        // w_i exp(t_i^2) = 1 / sum_{k < order} h_k(t_i)^2 with h_k the
        // orthonormal Hermite functions,
        // h_{k+1} = t sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}.
        // The h_k are bounded and even in t after squaring, so the weights
        // stay finite at every order and mirror nodes get bitwise-equal
        // weights.
        let quarter_root_pi = std::f64::consts::PI.powf(-0.25);
        let weights_mod = nodes
            .iter()
            .map(|&t| {
                let mut prev = 0.0f64;
                let mut cur = quarter_root_pi * (-0.5 * t * t).exp();
                let mut sum = cur * cur;
                for k in 0..order - 1 {
                    let kf = k as f64;
                    let next = t * (2.0 / (kf + 1.0)).sqrt() * cur
                        - (kf / (kf + 1.0)).sqrt() * prev;
                    prev = cur;
                    cur = next;
                    sum += cur * cur;
                }
                1.0 / sum
            })
            .collect();
        GaussHermite {
            order,
            nodes,
            weights_mod,
        }
    }
}

/// Cached rule lookup; rules are built once per order per process.
pub fn gauss_hermite(order: usize) -> Result<Arc<GaussHermite>> {
    if order == 0 || order > MAX_GH_ORDER {
        return Err(PhaseError::InvalidParameter(format!(
            "Gauss-Hermite order must be in 1..={MAX_GH_ORDER}, got {order}"
        )));
    }
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussHermite>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(rule) = cache.read().unwrap().get(&order) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(GaussHermite::build(order));
    let mut guard = cache.write().unwrap();
    Ok(guard.entry(order).or_insert(rule).clone())
}

/// Default order for integrands whose polynomial part has roughly the given
/// total degree on top of the Gaussian envelope.
pub fn default_gh_order(degree_hint: usize) -> usize {
    64.max(degree_hint + 24)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Method {
    GaussHermite {
        order: usize,
    },
    Adaptive {
        abs_tol: f64,
        rel_tol: f64,
        max_refinements: u32,
    },
}

/// How to evaluate an integral over the real line.
///
/// `center` and `width` describe the affine map `t -> center + width t` under
/// which the integrand's Gaussian envelope becomes `exp(-t^2)`. Getting the
/// map right is what makes the Gauss-Hermite route exact for
/// polynomial-times-Gaussian integrands; callers that know their envelope
/// should always set it.
#[derive(Clone, Debug)]
pub struct IntegrationSpec {
    pub method: Method,
    /// Optional truncation of the domain; `None` integrates the whole line.
    pub domain: Option<(f64, f64)>,
    pub center: f64,
    pub width: f64,
}

impl Default for IntegrationSpec {
    fn default() -> Self {
        IntegrationSpec {
            method: Method::GaussHermite { order: 64 },
            domain: None,
            center: 0.0,
            width: 1.0,
        }
    }
}

impl IntegrationSpec {
    pub fn gauss_hermite(order: usize) -> Self {
        IntegrationSpec {
            method: Method::GaussHermite { order },
            ..Default::default()
        }
    }

    pub fn adaptive(abs_tol: f64, rel_tol: f64, max_refinements: u32) -> Self {
        IntegrationSpec {
            method: Method::Adaptive {
                abs_tol,
                rel_tol,
                max_refinements,
            },
            ..Default::default()
        }
    }

    pub fn with_envelope(mut self, center: f64, width: f64) -> Self {
        self.center = center;
        self.width = width;
        self
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Some((lo, hi));
        self
    }

    fn check(&self) -> Result<()> {
        if !(self.width.is_finite() && self.width > 0.0) || !self.center.is_finite() {
            return Err(PhaseError::InvalidParameter(format!(
                "integration envelope must be finite with positive width, got center {} width {}",
                self.center, self.width
            )));
        }
        if let Some((lo, hi)) = self.domain {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(PhaseError::InvalidParameter(format!(
                    "integration domain must be a finite interval, got ({lo}, {hi})"
                )));
            }
        }
        if let Method::Adaptive {
            abs_tol, rel_tol, ..
        } = self.method
        {
            if !(abs_tol >= 0.0 && rel_tol >= 0.0 && (abs_tol > 0.0 || rel_tol > 0.0)) {
                return Err(PhaseError::InvalidParameter(
                    "adaptive tolerances must be nonnegative and not both zero".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Integral of `f` over the line (or `spec.domain`) per `spec`.
///
/// Gauss-Hermite with a finite domain simply discards nodes that fall
/// outside; the adaptive route truncates an unbounded domain at 12 envelope
/// widths around the center.
pub fn integrate_1d<F>(f: F, spec: &IntegrationSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.check()?;
    match spec.method {
        Method::GaussHermite { order } => {
            let rule = gauss_hermite(order)?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, w) in rule.nodes().iter().zip(rule.weights_mod()) {
                let x = spec.center + spec.width * t;
                if let Some((lo, hi)) = spec.domain {
                    if x < lo || x > hi {
                        continue;
                    }
                }
                acc += *w * f(x);
            }
            Ok(acc * spec.width)
        }
        Method::Adaptive {
            abs_tol,
            rel_tol,
            max_refinements,
        } => {
            let (lo, hi) = spec
                .domain
                .unwrap_or((spec.center - 12.0 * spec.width, spec.center + 12.0 * spec.width));
            adaptive_simpson(&f, lo, hi, abs_tol, rel_tol, max_refinements)
        }
    }
}

fn composite_simpson<F>(f: &F, lo: f64, hi: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let h = (hi - lo) / panels as f64;
    let mut acc = f(lo) + f(hi);
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + h * k as f64);
    }
    acc * (h / 3.0)
}

fn adaptive_simpson<F>(
    f: &F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_refinements: u32,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut panels = 32usize;
    let mut prev = composite_simpson(f, lo, hi, panels);
    let mut last_err = f64::INFINITY;
    for _ in 0..max_refinements {
        panels *= 2;
        let cur = composite_simpson(f, lo, hi, panels);
        last_err = (cur - prev).norm() / 15.0;
        if last_err <= abs_tol.max(rel_tol * cur.norm()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(PhaseError::NonConvergence {
        refinements: max_refinements,
        estimate: prev.norm(),
        error: last_err,
    })
}

/// Tensor-product integral over the phase plane.
///
/// Outer nodes run in parallel but partial sums are collected by index and
/// added sequentially, so the result is bitwise independent of the worker
/// count.
pub fn integrate_2d<F>(f: F, spec_x: &IntegrationSpec, spec_p: &IntegrationSpec) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    spec_x.check()?;
    spec_p.check()?;
    match (&spec_x.method, &spec_p.method) {
        (&Method::GaussHermite { order: qx }, &Method::GaussHermite { order: qp }) => {
            let rx = gauss_hermite(qx)?;
            let rp = gauss_hermite(qp)?;
            let partials: Vec<Complex64> = rx
                .nodes()
                .par_iter()
                .zip(rx.weights_mod().par_iter())
                .map(|(&tx, &wx)| {
                    let x = spec_x.center + spec_x.width * tx;
                    if let Some((lo, hi)) = spec_x.domain {
                        if x < lo || x > hi {
                            return Complex64::new(0.0, 0.0);
                        }
                    }
                    let mut inner = Complex64::new(0.0, 0.0);
                    for (tp, wp) in rp.nodes().iter().zip(rp.weights_mod()) {
                        let p = spec_p.center + spec_p.width * tp;
                        if let Some((lo, hi)) = spec_p.domain {
                            if p < lo || p > hi {
                                continue;
                            }
                        }
                        inner += *wp * f(x, p);
                    }
                    inner * wx
                })
                .collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for v in partials {
                acc += v;
            }
            Ok(acc * spec_x.width * spec_p.width)
        }
        _ => {
            // Mixed or fully adaptive: nest, letting each axis use its own method.
            let outer = |x: f64| -> Complex64 {
                integrate_1d(|p| f(x, p), spec_p).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            };
            let v = integrate_1d(outer, spec_x)?;
            if v.re.is_nan() || v.im.is_nan() {
                return Err(PhaseError::NonConvergence {
                    refinements: 0,
                    estimate: f64::NAN,
                    error: f64::NAN,
                });
            }
            Ok(v)
        }
    }
}

/// `integral conj(f) g` under `spec`.
pub fn inner_product<F, G>(f: F, g: G, spec: &IntegrationSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    integrate_1d(|x| f(x).conj() * g(x), spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_gaussian_integrates_to_sqrt_pi() {
        let spec = IntegrationSpec::gauss_hermite(32);
        let v = integrate_1d(|x| Complex64::new((-x * x).exp(), 0.0), &spec).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn node_symmetry_is_exact() {
        for &order in &[7, 16, 61, 128] {
            let r = gauss_hermite(order).unwrap();
            let n = r.nodes();
            let w = r.weights_mod();
            for i in 0..order {
                assert_eq!(n[i], -n[order - 1 - i]);
                assert_eq!(w[i], w[order - 1 - i]);
            }
            if order % 2 == 1 {
                assert_eq!(n[order / 2], 0.0);
            }
        }
    }

    #[test]
    fn high_order_weights_stay_finite() {
        let r = gauss_hermite(512).unwrap();
        for (&t, &w) in r.nodes().iter().zip(r.weights_mod()) {
            assert!(t.is_finite());
            assert!(w.is_finite() && w > 0.0, "weight {w} at node {t}");
        }
    }

    #[test]
    fn adaptive_flags_nonconvergence() {
        // Step discontinuity at an irrational point defeats Simpson quickly.
        let f = |x: f64| {
            if x < std::f64::consts::FRAC_1_SQRT_2 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        };
        let spec = IntegrationSpec::adaptive(1e-15, 0.0, 4).with_domain(0.0, 1.0);
        match integrate_1d(f, &spec) {
            Err(PhaseError::NonConvergence { refinements, .. }) => assert_eq!(refinements, 4),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn adaptive_matches_gauss_hermite_on_smooth_integrand() {
        let f = |x: f64| Complex64::new((-x * x).exp() * (x * x + 0.3 * x), 0.0);
        let gh = integrate_1d(f, &IntegrationSpec::gauss_hermite(24)).unwrap();
        let ad = integrate_1d(f, &IntegrationSpec::adaptive(1e-12, 1e-12, 16)).unwrap();
        assert!((gh - ad).norm() < 1e-11);
    }

    #[test]
    fn spec_validation() {
        let bad = IntegrationSpec::gauss_hermite(16).with_envelope(0.0, -1.0);
        assert!(integrate_1d(|_| Complex64::new(0.0, 0.0), &bad).is_err());
        assert!(gauss_hermite(0).is_err());
        assert!(gauss_hermite(MAX_GH_ORDER + 1).is_err());
        let bad_dom = IntegrationSpec::gauss_hermite(16).with_domain(1.0, 1.0);
        assert!(integrate_1d(|_| Complex64::new(0.0, 0.0), &bad_dom).is_err());
    }
}
