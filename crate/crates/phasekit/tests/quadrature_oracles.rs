//! Quadrature rules against closed-form integrals, including the dispersion
//! moments of the basis states.

use num_complex::Complex64;
use phasekit::basis::phi;
use phasekit::quadrature::{
    default_gh_order, gauss_hermite, inner_product, integrate_1d, IntegrationSpec,
};
use phasekit::{PhaseIndex, ScaleParam};

/// (2j - 1)!! as f64.
fn double_factorial_odd(j: u32) -> f64 {
    (1..=j).map(|k| (2 * k - 1) as f64).product::<f64>().max(1.0)
}

#[test]
fn even_moments_are_exact_at_low_order() {
    // A 16-point rule integrates polynomials through degree 31 exactly:
    // int t^{2j} e^{-t^2} dt = sqrt(pi) (2j-1)!! / 2^j.
    let rule = gauss_hermite(16).unwrap();
    for j in 0..=15u32 {
        let got: f64 = rule
            .nodes()
            .iter()
            .zip(rule.weights_mod())
            .map(|(&t, &w)| w * (-t * t).exp() * t.powi(2 * j as i32))
            .sum();
        let expect = std::f64::consts::PI.sqrt() * double_factorial_odd(j) / 2f64.powi(j as i32);
        assert!(
            (got - expect).abs() < 1e-12 * expect,
            "j = {j}: {got} vs {expect}"
        );
        // Odd moments vanish by symmetry of the rule itself.
        let odd: f64 = rule
            .nodes()
            .iter()
            .zip(rule.weights_mod())
            .map(|(&t, &w)| w * (-t * t).exp() * t.powi(2 * j as i32 + 1))
            .sum();
        assert!(odd.abs() < 1e-12 * expect.max(1.0));
    }
}

struct XorShift(u64);

impl XorShift {
    fn next_f64(&mut self) -> f64 {
        // xorshift64*, mapped to [0, 1).
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0.wrapping_mul(0x2545F4914F6CDD1D) >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

#[test]
fn shifted_gaussian_polynomials_integrate_analytically() {
    // int (alpha + beta x + gamma x^2) e^{-(x-mu)^2/s^2} dx
    //   = sqrt(pi) s (alpha + beta mu + gamma (mu^2 + s^2/2)).
    let mut rng = XorShift(0x9E3779B97F4A7C15);
    for draw in 0..25 {
        let alpha = rng.in_range(-2.0, 2.0);
        let beta = rng.in_range(-2.0, 2.0);
        let gamma = rng.in_range(-2.0, 2.0);
        let mu = rng.in_range(-3.0, 3.0);
        let s = rng.in_range(0.3, 2.5);
        let spec = IntegrationSpec::gauss_hermite(32).with_envelope(mu, s);
        let got = integrate_1d(
            |x| {
                let z = (x - mu) / s;
                Complex64::new((alpha + beta * x + gamma * x * x) * (-z * z).exp(), 0.0)
            },
            &spec,
        )
        .unwrap();
        let expect =
            std::f64::consts::PI.sqrt() * s * (alpha + beta * mu + gamma * (mu * mu + s * s / 2.0));
        assert!(
            (got.re - expect).abs() < 1e-10 * (1.0 + expect.abs()),
            "draw {draw}: {} vs {expect}",
            got.re
        );
        assert!(got.im.abs() < 1e-13);
    }
}

#[test]
fn envelope_mismatch_still_converges_at_higher_order() {
    // int e^{-x^2 + 2x} dx = sqrt(pi) e. The matched envelope (1, 1) nails it
    // at modest order; the centered envelope (0, 1) needs more nodes but gets
    // to the same place.
    let expect = std::f64::consts::PI.sqrt() * 1f64.exp();
    let f = |x: f64| Complex64::new((-x * x + 2.0 * x).exp(), 0.0);

    let matched = IntegrationSpec::gauss_hermite(24).with_envelope(1.0, 1.0);
    let got = integrate_1d(f, &matched).unwrap();
    assert!((got.re - expect).abs() < 1e-12 * expect);

    let offset = IntegrationSpec::gauss_hermite(96).with_envelope(0.0, 1.0);
    let got = integrate_1d(f, &offset).unwrap();
    assert!((got.re - expect).abs() < 1e-9 * expect);
}

#[test]
fn adaptive_agrees_with_gauss_hermite() {
    let f = |x: f64| Complex64::new((-x * x + 2.0 * x).exp(), 0.0);
    let expect = std::f64::consts::PI.sqrt() * 1f64.exp();
    let spec = IntegrationSpec::adaptive(1e-12, 1e-12, 20).with_envelope(1.0, 1.0);
    let got = integrate_1d(f, &spec).unwrap();
    assert!((got.re - expect).abs() < 1e-10 * expect);
}

#[test]
fn basis_inner_products_are_orthonormal() {
    let scale = ScaleParam::new(0.9, 1.0).unwrap();
    let i0 = PhaseIndex::new(0, 0.2, -0.5, scale).unwrap();
    let i1 = PhaseIndex::new(1, 0.2, -0.5, scale).unwrap();
    let spec = IntegrationSpec::gauss_hermite(64).with_envelope(0.2, 0.9 * 2.0);
    let norm = inner_product(|x| phi(&i0, x), |x| phi(&i0, x), &spec).unwrap();
    assert!((norm.re - 1.0).abs() < 1e-14, "norm {norm}");
    assert!(norm.im.abs() < 1e-14);
    let cross = inner_product(|x| phi(&i0, x), |x| phi(&i1, x), &spec).unwrap();
    assert!(cross.norm() < 1e-14, "cross {cross}");
}

#[test]
fn dispersion_moments_follow_the_ladder() {
    // Position variance over |phi_n|^2 is (2n+1) a^2; the momentum-side state
    // gives (2n+1) b^2; their product is (2n+1)^2 hbar^2 / 4.
    let scale = ScaleParam::new(0.8, 1.0).unwrap();
    let (a2, b2) = (scale.big_a(), scale.big_b());
    for n in 0..=10usize {
        let idx = PhaseIndex::new(n, 0.3, -0.7, scale).unwrap();
        let order = default_gh_order(2 * n + 2);
        let spec =
            IntegrationSpec::gauss_hermite(order).with_envelope(idx.x, std::f64::consts::SQRT_2 * scale.a());
        let var_x = integrate_1d(
            |x| {
                let v = phi(&idx, x);
                (x - idx.x).powi(2) * (v * v.conj())
            },
            &spec,
        )
        .unwrap()
        .re;
        let expect_x = (2 * n + 1) as f64 * a2;
        assert!(
            (var_x - expect_x).abs() < 1e-8 * expect_x,
            "n = {n}: var_x {var_x} vs {expect_x}"
        );

        let p_spec = IntegrationSpec::gauss_hermite(order)
            .with_envelope(idx.p, std::f64::consts::SQRT_2 * scale.b());
        let var_p = integrate_1d(
            |p| {
                let v = phasekit::basis::phi_tilde(&idx, p);
                (p - idx.p).powi(2) * (v * v.conj())
            },
            &p_spec,
        )
        .unwrap()
        .re;
        let expect_p = (2 * n + 1) as f64 * b2;
        assert!(
            (var_p - expect_p).abs() < 1e-8 * expect_p,
            "n = {n}: var_p {var_p} vs {expect_p}"
        );

        let product = expect_x * expect_p;
        let ladder = ((2 * n + 1) as f64).powi(2) * scale.hbar().powi(2) / 4.0;
        assert!((product - ladder).abs() < 1e-12 * ladder);
    }
}
