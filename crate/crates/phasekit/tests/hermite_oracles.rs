//! The Hermite evaluator against oracles it shares no code with: exact
//! rational recurrence, the generating function, and parity.

use num::rational::BigRational;
use num::{BigInt, ToPrimitive};
use phasekit::hermite::{generating_function_partial_sum, hermite_eval, hermite_sequence, log_prefactor};
use proptest::prelude::*;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `H_n` at a rational point, every step exact.
fn exact_hermite(n: usize, x: &BigRational) -> BigRational {
    let mut prev = big(1);
    if n == 0 {
        return prev;
    }
    let mut cur = big(2) * x;
    for k in 1..n {
        let next = big(2) * x * &cur - big(2 * k as i64) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn recurrence_matches_exact_rational_oracle() {
    // Dyadic rationals so the f64 argument is the same number the oracle sees.
    let points: [(i64, i64); 6] = [(-3, 2), (-1, 4), (0, 1), (5, 8), (7, 4), (5, 2)];
    let orders: Vec<usize> = (0..=10).chain([20, 40, 60]).collect();
    for &(num, den) in &points {
        let x_exact = BigRational::new(BigInt::from(num), BigInt::from(den));
        let x = num as f64 / den as f64;
        for &n in &orders {
            let expect = exact_hermite(n, &x_exact)
                .to_f64()
                .expect("oracle value fits in f64 at these orders");
            let got = hermite_eval(n, x);
            // Forward error rides on the largest member of the sweep.
            let scale = hermite_sequence(n, x)
                .iter()
                .fold(1.0f64, |m, v| m.max(v.abs()));
            assert!(
                (got - expect).abs() <= 1e-11 * scale,
                "n = {n}, x = {num}/{den}: {got} vs {expect}"
            );
        }
    }
}

#[test]
fn partial_sums_track_the_generating_function() {
    // sum_k H_k(x) u^k / k! = exp(2 x u - u^2); 30 terms bury the tail far
    // below the comparison tolerance at these |u|.
    for &(x, u) in &[(0.3, 0.15), (-1.1, 0.4), (2.0, -0.25), (0.0, 0.5)] {
        let s = generating_function_partial_sum(x, u, 30);
        let expect = (2.0 * x * u - u * u).exp();
        assert!(
            (s - expect).abs() < 1e-12,
            "x = {x}, u = {u}: {s} vs {expect}"
        );
    }
}

#[test]
fn partial_sum_term_counts() {
    assert_eq!(generating_function_partial_sum(0.7, 0.3, 0), 0.0);
    assert_eq!(generating_function_partial_sum(0.7, 0.3, 1), 1.0);
    let two = generating_function_partial_sum(0.7, 0.3, 2);
    assert_eq!(two, 1.0 + 2.0 * 0.7 * 0.3);
}

proptest! {
    #[test]
    fn parity_is_exact(x in -40.0f64..40.0, n in 0usize..=80) {
        // Negation commutes with every recurrence step bit for bit.
        let left = hermite_eval(n, -x);
        let right = if n % 2 == 0 { hermite_eval(n, x) } else { -hermite_eval(n, x) };
        prop_assert_eq!(left, right);
    }

    #[test]
    fn leading_growth_dominates(x in 1.5f64..20.0, n in 2usize..=40) {
        // For x beyond the largest zero the sequence is strictly increasing.
        let seq = hermite_sequence(n, x);
        let zeros_edge = (2.0 * n as f64 + 1.0).sqrt();
        if x > zeros_edge {
            for k in 1..=n {
                prop_assert!(seq[k] > seq[k - 1], "k = {}, x = {}", k, x);
            }
        }
    }
}

#[test]
fn log_prefactor_against_independent_sum() {
    // n = 50, s = 0.7, summed term by term with no shared code path.
    let n = 50usize;
    let s = 0.7f64;
    let mut ln_fact = 0.0f64;
    for k in 2..=n {
        ln_fact += (k as f64).ln();
    }
    let expect = -0.5
        * (n as f64 * 2.0f64.ln() + ln_fact + 0.5 * (2.0 * std::f64::consts::PI).ln() + s.ln());
    let got = log_prefactor(n, s).unwrap();
    assert!((got - expect).abs() < 1e-12 * expect.abs());
}
