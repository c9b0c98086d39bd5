//! Physicists' Hermite polynomials and the log-domain normalization prefactor.

use std::sync::OnceLock;

use crate::error::{PhaseError, Result};

/// `H_n(x)` by the upward recurrence `H_{k+1} = 2x H_k - 2k H_{k-1}`.
///
/// The recurrence is forward-stable for the dominant solution, which `H_n`
/// is, so relative error stays near machine precision for every argument the
/// crate reaches (|x| up to a few tens, n up to a few hundred).
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_0(x) .. H_n(x)` in one recurrence sweep.
///
/// Entry `k` is bitwise equal to `hermite_eval(k, x)`: both run the same
/// arithmetic in the same order.
pub fn hermite_sequence(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(2.0 * x);
    for k in 1..n_max {
        let next = 2.0 * x * out[k] - 2.0 * (k as f64) * out[k - 1];
        out.push(next);
    }
    out
}

/// First `n_terms` terms of `sum_k H_k(x) u^k / k!`, the expansion of the
/// generating function `exp(2 x u - u^2)`.
pub fn generating_function_partial_sum(x: f64, u: f64, n_terms: usize) -> f64 {
    if n_terms == 0 {
        return 0.0;
    }
    let h = hermite_sequence(n_terms - 1, x);
    let mut weight = 1.0;
    let mut acc = 0.0;
    for (k, hk) in h.iter().enumerate() {
        if k > 0 {
            weight *= u / (k as f64);
        }
        acc += hk * weight;
    }
    acc
}

/// `ln` of the positive normalization prefactor of the order-`n` envelope at
/// scale `s`:
///
/// `-(1/2) * (n ln 2 + ln n! + (1/2) ln(2 pi) + ln s)`.
///
/// Keeping this in the log domain is what makes high orders usable; the plain
/// prefactor underflows near n = 150.
pub fn log_prefactor(n: usize, s: f64) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(PhaseError::InvalidParameter(format!(
            "prefactor scale must be finite and positive, got {s}"
        )));
    }
    Ok(log_prefactor_unchecked(n, s))
}

pub(crate) fn log_prefactor_unchecked(n: usize, s: f64) -> f64 {
    -0.5 * ((n as f64) * std::f64::consts::LN_2
        + ln_factorial(n)
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + s.ln())
}

const LN_FACTORIAL_CAP: usize = 1024;

/// `ln(n!)` from a lazily built cumulative table with compensated summation.
///
/// The cap sits far above any reachable order (closed-form caps and
/// quadrature orders are two orders of magnitude smaller).
pub(crate) fn ln_factorial(n: usize) -> f64 {
    assert!(n <= LN_FACTORIAL_CAP, "ln_factorial cap exceeded: {n}");
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(LN_FACTORIAL_CAP + 1);
        v.push(0.0);
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        for k in 1..=LN_FACTORIAL_CAP {
            let y = (k as f64).ln() - comp;
            let s = acc + y;
            comp = (s - acc) - y;
            acc = s;
            v.push(acc);
        }
        v
    });
    table[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_match_hand_expansion() {
        // H_0 = 1, H_1 = 2x, H_2 = 4x^2 - 2, H_3 = 8x^3 - 12x
        for &x in &[-1.5, -0.3, 0.0, 0.7, 2.0] {
            assert_eq!(hermite_eval(0, x), 1.0);
            assert_eq!(hermite_eval(1, x), 2.0 * x);
            assert_eq!(hermite_eval(2, x), 4.0 * x * x - 2.0);
            assert_eq!(hermite_eval(3, x), 2.0 * x * (4.0 * x * x - 2.0) - 8.0 * x);
        }
        assert_eq!(hermite_eval(2, 0.0), -2.0);
        assert_eq!(hermite_eval(4, 0.5), 1.0);
    }

    #[test]
    fn sequence_is_bitwise_consistent_with_eval() {
        let xs = [-2.7, -0.4, 0.0, 0.9, 3.3];
        for &x in &xs {
            let seq = hermite_sequence(40, x);
            for (k, &v) in seq.iter().enumerate() {
                assert_eq!(v, hermite_eval(k, x), "order {k} at x = {x}");
            }
        }
        assert_eq!(hermite_sequence(3, 1.0), vec![1.0, 2.0, 2.0, -4.0]);
    }

    #[test]
    fn ln_factorial_agrees_with_direct_sum() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        let mut direct = 0.0;
        for k in 1..=60u32 {
            direct += (k as f64).ln();
            let table = ln_factorial(k as usize);
            assert!(
                (table - direct).abs() <= 1e-12 * direct.max(1.0),
                "k = {k}: {table} vs {direct}"
            );
        }
    }

    #[test]
    fn log_prefactor_frozen_values() {
        let two_pi = 2.0 * std::f64::consts::PI;
        let v0 = log_prefactor(0, 1.0).unwrap();
        assert!((v0 + 0.25 * two_pi.ln()).abs() < 1e-15);
        let v1 = log_prefactor(1, 1.0).unwrap();
        let expect = -0.5 * (std::f64::consts::LN_2 + 0.5 * two_pi.ln());
        assert!((v1 - expect).abs() < 1e-15);
        // scale enters as -(1/2) ln s
        let va = log_prefactor(0, 2.0).unwrap();
        assert!((va - (v0 - 0.5 * std::f64::consts::LN_2)).abs() < 1e-15);
    }

    #[test]
    fn log_prefactor_rejects_bad_scale() {
        assert!(log_prefactor(0, 0.0).is_err());
        assert!(log_prefactor(0, -1.0).is_err());
        assert!(log_prefactor(0, f64::INFINITY).is_err());
    }
}
