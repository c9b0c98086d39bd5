//! The momentum-dispersion operator in two guises: dense matrices over the
//! discrete basis, and finite-difference stencils over phase-space lattices.

use ndarray::parallel::prelude::*;
use ndarray::{Array2, Axis};
use num_complex::Complex64;

use crate::error::{PhaseError, Result};
use crate::scales::ScaleParam;

/// Dimensionless momentum quadrature on the first `dim` basis members:
/// `sqrt(k/2)` on the sub- and superdiagonal, real symmetric.
pub fn matrix_p(dim: usize) -> Array2<Complex64> {
    let mut m = Array2::default((dim, dim));
    for k in 1..dim {
        let v = ((k as f64) / 2.0).sqrt();
        m[[k - 1, k]] = Complex64::new(v, 0.0);
        m[[k, k - 1]] = Complex64::new(v, 0.0);
    }
    m
}

/// Conjugate position quadrature: `+i sqrt(k/2)` above the diagonal,
/// `-i sqrt(k/2)` below, Hermitian.
pub fn matrix_x(dim: usize) -> Array2<Complex64> {
    let mut m = Array2::default((dim, dim));
    for k in 1..dim {
        let v = ((k as f64) / 2.0).sqrt();
        m[[k - 1, k]] = Complex64::new(0.0, v);
        m[[k, k - 1]] = Complex64::new(0.0, -v);
    }
    m
}

/// Largest entrywise deviation of `[matrix_x, matrix_p]` from its exact
/// truncated value `i diag(1, .., 1, 1 - dim)`. Zero up to roundoff at every
/// dimension; the corner term is the truncation's only footprint.
pub fn commutator_check(dim: usize) -> f64 {
    let x = matrix_x(dim);
    let p = matrix_p(dim);
    let c = x.dot(&p) - p.dot(&x);
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let expect = if i == j {
                let v = if i + 1 == dim { 1.0 - dim as f64 } else { 1.0 };
                Complex64::new(0.0, v)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((c[[i, j]] - expect).norm());
        }
    }
    worst
}

/// Quarter sum of the squared quadratures, `(p^2 + x^2) / 4`: diagonal
/// `(2n + 1) / 4` on indices the truncation cannot reach (all but the last
/// row and column).
pub fn matrix_reduced_dispersion(dim: usize) -> Array2<Complex64> {
    let p = matrix_p(dim);
    let x = matrix_x(dim);
    let mut m = p.dot(&p) + x.dot(&x);
    m.mapv_inplace(|z| z * 0.25);
    m
}

/// Dispersion operator on the discrete basis at the given scale:
/// `B (p^2 + x^2)` in the dimensionless quadratures, hence diagonal
/// `(2n + 1) B` away from the truncation edge.
pub fn matrix_dispersion(dim: usize, scale: ScaleParam) -> Array2<Complex64> {
    let p = matrix_p(dim);
    let x = matrix_x(dim);
    let mut m = p.dot(&p) + x.dot(&x);
    let bb = scale.big_b();
    m.mapv_inplace(|z| z * bb);
    m
}

/// Uniform lattice axis: node `k` sits at `start + k * step`.
#[derive(Clone, Copy, Debug)]
pub struct GridAxis {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl GridAxis {
    /// Symmetric axis about `center` reaching at least `half_extent` out;
    /// the count comes out odd so the center is a node.
    pub fn centered(center: f64, half_extent: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0)
            || !(half_extent.is_finite() && half_extent > 0.0)
            || !center.is_finite()
        {
            return Err(PhaseError::InvalidParameter(format!(
                "axis needs finite center and positive extent/step, got \
                 center {center}, half_extent {half_extent}, step {step}"
            )));
        }
        let half = (half_extent / step).ceil() as usize;
        Ok(GridAxis {
            start: center - step * half as f64,
            step,
            count: 2 * half + 1,
        })
    }

    pub fn value(&self, k: usize) -> f64 {
        self.start + self.step * k as f64
    }
}

/// Default lattice geometry for eigenfunction residual checks at a scale:
/// steps `(a/200, b/200)`, half extents `(8a, 8b)`. Calibrated so that
/// basis-field residuals for orders up to 6 land near 1e-6..1e-5 with
/// clean second-order step scaling.
pub fn default_axes(center_x: f64, center_p: f64, scale: ScaleParam) -> (GridAxis, GridAxis) {
    let a = scale.a();
    let b = scale.b();
    let xs = GridAxis::centered(center_x, 8.0 * a, a / 200.0).expect("valid scale");
    let ps = GridAxis::centered(center_p, 8.0 * b, b / 200.0).expect("valid scale");
    (xs, ps)
}

// Five interior points plus the boundary pair per axis.
const MIN_AXIS_POINTS_DIRECT: usize = 7;
// The composed stencil loses a margin of two on each side.
const MIN_AXIS_POINTS_COMPOSED: usize = 9;

/// Complex field sampled on an `(X, P)` lattice at one scale; rows index X.
#[derive(Clone, Debug)]
pub struct PhaseField {
    pub xs: GridAxis,
    pub ps: GridAxis,
    pub scale: ScaleParam,
    pub values: Array2<Complex64>,
}

impl PhaseField {
    /// Sample `f(X, P)` over the lattice. Rows fill in parallel; each slot is
    /// written exactly once, so the result does not depend on scheduling.
    pub fn sample<F>(xs: GridAxis, ps: GridAxis, scale: ScaleParam, f: F) -> Result<PhaseField>
    where
        F: Fn(f64, f64) -> Complex64 + Sync,
    {
        check_axis_counts(&xs, &ps, MIN_AXIS_POINTS_DIRECT)?;
        let mut values = Array2::default((xs.count, ps.count));
        values
            .axis_iter_mut(Axis(0))
            .into_par_iter()
            .enumerate()
            .for_each(|(i, mut row)| {
                let x = xs.value(i);
                for j in 0..ps.count {
                    row[j] = f(x, ps.value(j));
                }
            });
        Ok(PhaseField {
            xs,
            ps,
            scale,
            values,
        })
    }
}

fn check_axis_counts(xs: &GridAxis, ps: &GridAxis, need: usize) -> Result<()> {
    let got = xs.count.min(ps.count);
    if got < need {
        return Err(PhaseError::GridTooSmall { need, got });
    }
    Ok(())
}

/// Apply the dispersion operator's second-order stencil
///
/// `L = -(hbar^2/2) d2/dX2 - 2 B^2 d2/dP2 - (4 i B^2 / hbar) X d/dP
///      + (2 B^2 / hbar^2) X^2`
///
/// on the lattice interior. The boundary ring of the result is zero; input
/// boundary values still feed the interior stencils, so fields must be
/// sampled over the full lattice, not just the interior.
pub fn fd_apply_dispersion(field: &PhaseField) -> Result<PhaseField> {
    check_axis_counts(&field.xs, &field.ps, MIN_AXIS_POINTS_DIRECT)?;
    let nx = field.xs.count;
    let np = field.ps.count;
    let hx2 = field.xs.step * field.xs.step;
    let hp = field.ps.step;
    let hp2 = hp * hp;
    let hbar = field.scale.hbar();
    let bb = field.scale.big_b();
    let c_xx = -0.5 * hbar * hbar / hx2;
    let c_pp = -2.0 * bb * bb / hp2;
    let c_mix = -4.0 * bb * bb / (hbar * 2.0 * hp);
    let c_pot = 2.0 * bb * bb / (hbar * hbar);
    let v = &field.values;
    let mut out = Array2::default((nx, np));
    out.axis_iter_mut(Axis(0))
        .into_par_iter()
        .enumerate()
        .for_each(|(i, mut row)| {
            if i == 0 || i + 1 == nx {
                return;
            }
            let x = field.xs.value(i);
            let mix = Complex64::new(0.0, c_mix * x);
            let pot = c_pot * x * x;
            for j in 1..np - 1 {
                let center = v[[i, j]];
                let dxx = v[[i + 1, j]] + v[[i - 1, j]] - 2.0 * center;
                let dpp = v[[i, j + 1]] + v[[i, j - 1]] - 2.0 * center;
                let dp = v[[i, j + 1]] - v[[i, j - 1]];
                row[j] = c_xx * dxx + c_pp * dpp + mix * dp + pot * center;
            }
        });
    Ok(PhaseField {
        xs: field.xs,
        ps: field.ps,
        scale: field.scale,
        values: out,
    })
}

/// The same operator assembled by composing first-order stencils:
/// `L = B (ptilde^2 + xtilde^2)` with `ptilde = sqrt(2) b (i d/dP - X/hbar)`
/// and `xtilde = -i sqrt(2) a d/dX`, each derivative a centered first
/// difference applied twice. Valid on an interior margin of two; that ring
/// of the result is zero. Differs from [`fd_apply_dispersion`] only through
/// the composed-versus-direct second-difference truncation terms.
pub fn fd_apply_dispersion_composed(field: &PhaseField) -> Result<PhaseField> {
    check_axis_counts(&field.xs, &field.ps, MIN_AXIS_POINTS_COMPOSED)?;
    let nx = field.xs.count;
    let np = field.ps.count;
    let hbar = field.scale.hbar();
    let a = field.scale.a();
    let b = field.scale.b();
    let sqrt2 = std::f64::consts::SQRT_2;

    let apply_ptilde = |src: &Array2<Complex64>, margin: usize| -> Array2<Complex64> {
        let mut dst = Array2::default((nx, np));
        dst.axis_iter_mut(Axis(0))
            .into_par_iter()
            .enumerate()
            .for_each(|(i, mut row)| {
                if i < margin || i + margin >= nx {
                    return;
                }
                let x = field.xs.value(i);
                for j in margin..np - margin {
                    let dp = (src[[i, j + 1]] - src[[i, j - 1]]) / (2.0 * field.ps.step);
                    let val = Complex64::new(0.0, 1.0) * dp - (x / hbar) * src[[i, j]];
                    row[j] = sqrt2 * b * val;
                }
            });
        dst
    };
    let apply_xtilde = |src: &Array2<Complex64>, margin: usize| -> Array2<Complex64> {
        let mut dst = Array2::default((nx, np));
        dst.axis_iter_mut(Axis(0))
            .into_par_iter()
            .enumerate()
            .for_each(|(i, mut row)| {
                if i < margin || i + margin >= nx {
                    return;
                }
                for j in margin..np - margin {
                    let dx = (src[[i + 1, j]] - src[[i - 1, j]]) / (2.0 * field.xs.step);
                    row[j] = Complex64::new(0.0, -1.0) * sqrt2 * a * dx;
                }
            });
        dst
    };

    let p1 = apply_ptilde(&field.values, 1);
    let pp = apply_ptilde(&p1, 2);
    let x1 = apply_xtilde(&field.values, 1);
    let xx = apply_xtilde(&x1, 2);
    let bb = field.scale.big_b();
    let mut out = pp + xx;
    out.mapv_inplace(|z| z * bb);
    Ok(PhaseField {
        xs: field.xs,
        ps: field.ps,
        scale: field.scale,
        values: out,
    })
}

/// Sample a candidate eigenfield and measure its relative residual under the
/// dispersion stencil at eigenvalue `(2n + 1) B`.
pub fn eigen_residual<F>(
    n: usize,
    xs: GridAxis,
    ps: GridAxis,
    scale: ScaleParam,
    field_fn: F,
) -> Result<f64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let field = PhaseField::sample(xs, ps, scale, field_fn)?;
    eigen_residual_of(n, &field)
}

/// Relative interior residual `||L f - (2n+1) B f|| / ||(2n+1) B f||` of an
/// already sampled field.
pub fn eigen_residual_of(n: usize, field: &PhaseField) -> Result<f64> {
    eigen_residual_with_multiplier(n, field, 1.0)
}

/// Residual with the eigenvalue scaled by `multiplier`; `1.0` is the true
/// eigenvalue, anything else serves as a negative control (the residual then
/// sits at order one instead of the stencil's truncation level).
pub fn eigen_residual_with_multiplier(
    n: usize,
    field: &PhaseField,
    multiplier: f64,
) -> Result<f64> {
    if !(multiplier.is_finite() && multiplier != 0.0) {
        return Err(PhaseError::InvalidParameter(format!(
            "eigenvalue multiplier must be finite and nonzero, got {multiplier}"
        )));
    }
    let applied = fd_apply_dispersion(field)?;
    let lambda = ((2 * n + 1) as f64) * field.scale.big_b() * multiplier;
    let nx = field.xs.count;
    let np = field.ps.count;
    let mut field_sq = 0.0f64;
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for i in 1..nx - 1 {
        for j in 1..np - 1 {
            let f = field.values[[i, j]];
            field_sq += f.norm_sqr();
            let scaled = lambda * f;
            num += (applied.values[[i, j]] - scaled).norm_sqr();
            den += scaled.norm_sqr();
        }
    }
    if field_sq.sqrt() < 1e-300 {
        return Err(PhaseError::ZeroField);
    }
    Ok((num / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_commutator_is_tight() {
        // [x, p] on two basis members: i diag(1, -1). The only roundoff is
        // (sqrt(1/2))^2 landing one ulp off 1/2.
        assert!(commutator_check(2) < 1e-15);
    }

    #[test]
    fn quadrature_matrices_match_hand_values() {
        let p = matrix_p(3);
        let x = matrix_x(3);
        let r = 0.5f64.sqrt();
        assert_eq!(p[[0, 1]], Complex64::new(r, 0.0));
        assert_eq!(p[[1, 0]], Complex64::new(r, 0.0));
        assert_eq!(p[[1, 2]], Complex64::new(1.0, 0.0));
        assert_eq!(x[[0, 1]], Complex64::new(0.0, r));
        assert_eq!(x[[1, 0]], Complex64::new(0.0, -r));
        assert_eq!(p[[0, 0]], Complex64::new(0.0, 0.0));
        assert_eq!(x[[2, 2]], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn reduced_dispersion_diagonal() {
        // Quarter sum at dim 3: quarter-integer diagonal up to one ulp, last
        // entry contaminated by truncation by design. Off-diagonal entries
        // cancel exactly.
        let m = matrix_reduced_dispersion(3);
        assert!((m[[0, 0]] - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        assert!((m[[1, 1]] - Complex64::new(0.75, 0.0)).norm() < 1e-15);
        assert!((m[[2, 2]] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        for (idx, v) in m.indexed_iter() {
            if idx.0 != idx.1 {
                assert_eq!(*v, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn dispersion_matrix_diagonal_at_unit_scale() {
        // B = 1/4 at a = hbar = 1: diagonal (2n+1)/4 away from the edge.
        let m = matrix_dispersion(6, ScaleParam::unit());
        for k in 0..5 {
            let expect = (2 * k + 1) as f64 * 0.25;
            assert!((m[[k, k]] - Complex64::new(expect, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn grid_too_small_is_rejected() {
        let xs = GridAxis::centered(0.0, 0.25, 0.1).unwrap();
        assert_eq!(xs.count, 7);
        let ps = GridAxis::centered(0.0, 0.2, 0.1).unwrap();
        assert_eq!(ps.count, 5);
        let err = PhaseField::sample(xs, ps, ScaleParam::unit(), |_, _| {
            Complex64::new(1.0, 0.0)
        });
        assert!(matches!(err, Err(PhaseError::GridTooSmall { need: 7, got: 5 })));
    }

    #[test]
    fn zero_field_is_rejected() {
        let xs = GridAxis::centered(0.0, 0.5, 0.1).unwrap();
        let field = PhaseField::sample(xs, xs, ScaleParam::unit(), |_, _| {
            Complex64::new(0.0, 0.0)
        })
        .unwrap();
        assert!(matches!(
            eigen_residual_of(0, &field),
            Err(PhaseError::ZeroField)
        ));
    }
}
