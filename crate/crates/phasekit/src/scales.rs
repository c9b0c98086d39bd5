//! Envelope scales and the combined state label.

use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};

/// Envelope scale pair `(a, b)` with `a * b = hbar / 2`.
///
/// `a` is the position half-width of the ground envelope and `b` the matching
/// momentum half-width. Only `a` and `hbar` are stored; `b` is always derived,
/// so the constraint cannot drift and never appears in serialized form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScaleParamRaw", into = "ScaleParamRaw")]
pub struct ScaleParam {
    a: f64,
    hbar: f64,
}

#[derive(Serialize, Deserialize)]
struct ScaleParamRaw {
    a: f64,
    #[serde(default = "default_hbar")]
    hbar: f64,
}

fn default_hbar() -> f64 {
    1.0
}

impl ScaleParam {
    pub fn new(a: f64, hbar: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(PhaseError::InvalidParameter(format!(
                "scale a must be finite and positive, got {a}"
            )));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(PhaseError::InvalidParameter(format!(
                "hbar must be finite and positive, got {hbar}"
            )));
        }
        Ok(Self { a, hbar })
    }

    /// Scale fixed by the momentum half-width instead: `a = hbar / (2 b)`.
    pub fn from_b(b: f64, hbar: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(PhaseError::InvalidParameter(format!(
                "scale b must be finite and positive, got {b}"
            )));
        }
        Self::new(hbar / (2.0 * b), hbar)
    }

    /// `a = 1`, `hbar = 1`.
    pub fn unit() -> Self {
        Self { a: 1.0, hbar: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.hbar / (2.0 * self.a)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Position dispersion quantum `A = a^2`.
    pub fn big_a(&self) -> f64 {
        self.a * self.a
    }

    /// Momentum dispersion quantum `B = b^2`.
    pub fn big_b(&self) -> f64 {
        let b = self.b();
        b * b
    }
}

impl TryFrom<ScaleParamRaw> for ScaleParam {
    type Error = PhaseError;

    fn try_from(raw: ScaleParamRaw) -> Result<Self> {
        ScaleParam::new(raw.a, raw.hbar)
    }
}

impl From<ScaleParam> for ScaleParamRaw {
    fn from(s: ScaleParam) -> Self {
        ScaleParamRaw {
            a: s.a,
            hbar: s.hbar,
        }
    }
}

/// Full label of one basis member: discrete index `n`, center `(X, P)`, scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseIndex {
    pub n: usize,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(flatten)]
    pub scale: ScaleParam,
}

impl PhaseIndex {
    pub fn new(n: usize, x: f64, p: f64, scale: ScaleParam) -> Result<Self> {
        if !x.is_finite() || !p.is_finite() {
            return Err(PhaseError::InvalidParameter(format!(
                "phase-space center must be finite, got ({x}, {p})"
            )));
        }
        Ok(Self { n, x, p, scale })
    }

    /// Position and momentum dispersions `((2n+1) a^2, (2n+1) b^2)`.
    pub fn dispersions(&self) -> (f64, f64) {
        let f = (2 * self.n + 1) as f64;
        (f * self.scale.big_a(), f * self.scale.big_b())
    }
}
