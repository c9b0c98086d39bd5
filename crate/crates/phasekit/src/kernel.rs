//! Overlap kernel between basis members at arbitrary centers and scales.

use num_complex::Complex64;

use crate::basis::{i_pow, phi};
use crate::error::{PhaseError, Result};
use crate::hermite::{hermite_sequence, ln_factorial};
use crate::quadrature::{default_gh_order, integrate_1d, IntegrationSpec};
use crate::scales::PhaseIndex;
use crate::transform::Spectrum;

/// Default cap on the discrete indices accepted by the closed form. The
/// assembly itself stays accurate far beyond this; the cap exists so that
/// accidental huge indices fail loudly instead of burning time.
pub const DEFAULT_CLOSED_FORM_CAP: usize = 30;

/// Hard ceiling for an explicit cap: beyond a combined index of a few
/// hundred the Hermite factors overflow before the log-domain prefactor can
/// cancel them.
pub const MAX_CLOSED_FORM_CAP: usize = 128;

/// Ordered argument pair for the overlap `<left | right>`; `left` is the
/// conjugated side. Both labels must share `hbar` (the two envelope scales
/// may differ freely).
#[derive(Clone, Copy, Debug)]
pub struct KernelArgs {
    pub left: PhaseIndex,
    pub right: PhaseIndex,
}

impl KernelArgs {
    pub fn new(left: PhaseIndex, right: PhaseIndex) -> Result<Self> {
        if left.scale.hbar() != right.scale.hbar() {
            return Err(PhaseError::ScaleMismatch(format!(
                "kernel sides use hbar = {} and {}",
                left.scale.hbar(),
                right.scale.hbar()
            )));
        }
        Ok(Self { left, right })
    }

    pub fn swapped(&self) -> Self {
        Self {
            left: self.right,
            right: self.left,
        }
    }

    /// Envelope-matched Gauss-Hermite spec for the defining integral: the
    /// product of the two position envelopes is a Gaussian centered at the
    /// dispersion-weighted mean of the centers with curvature
    /// `(a^2 + a'^2) / (4 a^2 a'^2)`.
    pub fn default_quadrature_spec(&self) -> IntegrationSpec {
        let a = self.left.scale.a();
        let ap = self.right.scale.a();
        let c = (a * a + ap * ap) / (4.0 * a * a * ap * ap);
        let mu = (self.left.x * ap * ap + self.right.x * a * a) / (a * a + ap * ap);
        IntegrationSpec::gauss_hermite(default_gh_order(self.left.n + self.right.n))
            .with_envelope(mu, 1.0 / c.sqrt())
    }
}

/// `<left | right>` by quadrature of the defining position-space integral.
///
/// This is the ground-truth route: with an envelope-matched spec the
/// integrand is polynomial-times-Gaussian, so Gauss-Hermite is exact up to
/// roundoff once the order covers the combined degree.
pub fn chi_quadrature(args: &KernelArgs, spec: &IntegrationSpec) -> Result<Complex64> {
    let left = args.left;
    let right = args.right;
    integrate_1d(|x| phi(&left, x).conj() * phi(&right, x), spec)
}

/// Closed form of `<left | right>` under the default cap.
pub fn chi_closed(args: &KernelArgs) -> Result<Complex64> {
    chi_closed_capped(args, DEFAULT_CLOSED_FORM_CAP)
}

/// Closed form with an explicit cap on both discrete indices.
///
/// The result is a Gaussian-phase envelope times a finite double Hermite
/// sum; every factorial-sized factor is assembled in the log domain, so the
/// evaluation is stable across the whole admissible range.
pub fn chi_closed_capped(args: &KernelArgs, cap: usize) -> Result<Complex64> {
    if cap > MAX_CLOSED_FORM_CAP {
        return Err(PhaseError::InvalidParameter(format!(
            "closed-form cap {cap} exceeds the stability ceiling {MAX_CLOSED_FORM_CAP}"
        )));
    }
    let top = args.left.n.max(args.right.n);
    if top > cap {
        return Err(PhaseError::CapExceeded {
            requested: top,
            cap,
        });
    }
    Ok(chi_closed_core(&args.left, &args.right))
}

/// Shared assembly. Callers guarantee matching `hbar` and indices within the
/// stability ceiling.
pub(crate) fn chi_closed_core(left: &PhaseIndex, right: &PhaseIndex) -> Complex64 {
    let (n, x, p) = (left.n, left.x, left.p);
    let (npr, xpr, ppr) = (right.n, right.x, right.p);
    let hbar = left.scale.hbar();
    let a = left.scale.a();
    let ap = right.scale.a();
    let b = left.scale.b();
    let bp = right.scale.b();
    let a2 = a * a + ap * ap;
    let b2 = b * b + bp * bp;
    let xi_x = (xpr - x) / (2.0 * a2).sqrt();
    let xi_p = (ppr - p) / (2.0 * b2).sqrt();
    let env_mag = -(x - xpr) * (x - xpr) / (4.0 * a2) - (p - ppr) * (p - ppr) / (4.0 * b2);
    let env_arg = -(ap * ap * x + a * a * xpr) * (p - ppr) / (hbar * a2);
    let env = Complex64::from_polar(env_mag.exp(), env_arg);
    let hx = hermite_sequence(n + npr, xi_x);
    let hp = hermite_sequence(n + npr, xi_p);
    let ln_b = b.ln();
    let ln_bp = bp.ln();
    let base = std::f64::consts::LN_2 + 0.5 * (ln_factorial(n) + ln_factorial(npr))
        - 0.5 * ((n + npr + 1) as f64) * (2.0 * b2).ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for l in 0..=n {
        for m in 0..=npr {
            let expo = base
                + ((n - l + m) as f64 + 0.5) * ln_bp
                + ((npr - m + l) as f64 + 0.5) * ln_b
                - ln_factorial(l)
                - ln_factorial(n - l)
                - ln_factorial(m)
                - ln_factorial(npr - m);
            let mag = expo.exp() * hx[n + npr - l - m] * hp[l + m];
            let signed = if (npr - m) % 2 == 1 { -mag } else { mag };
            sum += i_pow(l + m) * signed;
        }
    }
    env * sum
}

/// Equal-scale specialization of the kernel; rejects labels whose scales or
/// `hbar` differ. Agrees with [`chi_closed`] wherever both apply.
pub fn chi_equal_scale(args: &KernelArgs) -> Result<Complex64> {
    if args.left.scale != args.right.scale {
        return Err(PhaseError::ScaleMismatch(format!(
            "equal-scale kernel needs identical scales, got a = {} and a = {}",
            args.left.scale.a(),
            args.right.scale.a()
        )));
    }
    let (n, x, p) = (args.left.n, args.left.x, args.left.p);
    let (npr, xpr, ppr) = (args.right.n, args.right.x, args.right.p);
    let scale = args.left.scale;
    let a = scale.a();
    let b = scale.b();
    let hbar = scale.hbar();
    let env_mag = -(x - xpr) * (x - xpr) / (8.0 * a * a) - (p - ppr) * (p - ppr) / (8.0 * b * b);
    // The cross phase couples the mean position to the momentum offset.
    let env_arg = -(x + xpr) * (p - ppr) / (2.0 * hbar);
    let env = Complex64::from_polar(env_mag.exp(), env_arg);
    let hx = hermite_sequence(n + npr, (xpr - x) / (2.0 * a));
    let hp = hermite_sequence(n + npr, (ppr - p) / (2.0 * b));
    let base = 0.5 * (ln_factorial(n) + ln_factorial(npr))
        - ((n + npr) as f64) * std::f64::consts::LN_2;
    let mut sum = Complex64::new(0.0, 0.0);
    for l in 0..=n {
        for m in 0..=npr {
            let expo = base
                - ln_factorial(l)
                - ln_factorial(n - l)
                - ln_factorial(m)
                - ln_factorial(npr - m);
            let mag = expo.exp() * hx[n + npr - l - m] * hp[l + m];
            let signed = if (npr - m) % 2 == 1 { -mag } else { mag };
            sum += i_pow(l + m) * signed;
        }
    }
    Ok(env * sum)
}

/// Reexpand a spectrum taken at one base label onto a single target label:
/// `sum_m chi(target; base_m) amplitudes[m]`.
///
/// The discrete family at a fixed base is complete, so this matches a direct
/// projection of the underlying state up to the spectrum's tail; the tail
/// bound must clear `tail_tol` before the sum is attempted.
pub fn kernel_transport(
    spectrum: &Spectrum,
    target: &PhaseIndex,
    cap: usize,
    tail_tol: f64,
) -> Result<Complex64> {
    if spectrum.base.scale.hbar() != target.scale.hbar() {
        return Err(PhaseError::ScaleMismatch(format!(
            "spectrum base uses hbar = {}, target uses {}",
            spectrum.base.scale.hbar(),
            target.scale.hbar()
        )));
    }
    if cap > MAX_CLOSED_FORM_CAP {
        return Err(PhaseError::InvalidParameter(format!(
            "closed-form cap {cap} exceeds the stability ceiling {MAX_CLOSED_FORM_CAP}"
        )));
    }
    if target.n > cap {
        return Err(PhaseError::CapExceeded {
            requested: target.n,
            cap,
        });
    }
    if !(spectrum.tail_bound <= tail_tol) {
        return Err(PhaseError::TailTooHeavy {
            tail: spectrum.tail_bound,
            tol: tail_tol,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, amp) in spectrum.amplitudes.iter().enumerate() {
        let src = PhaseIndex {
            n: m,
            x: spectrum.base.x,
            p: spectrum.base.p,
            scale: spectrum.base.scale,
        };
        acc += chi_closed_core(target, &src) * amp;
    }
    Ok(acc)
}
