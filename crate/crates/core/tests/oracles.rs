mod support;

use dbridge::alpha::{construct_alpha, AlphaKind, AlphaRatio, Catalog};
use dbridge::elliptic::{complete_k_of, k_of_inv_sqrt2};
use dbridge::maps::{phi_of_k, s_of_k};
use dbridge::spectrum::{omega_minus, omega_plus, GraphGeometry};
use num_bigint::BigUint;
use support::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn complete_k_matches_trapezoid() {
    for i in 0..=999 {
        let k = i as f64 / 1000.0;
        let got = complete_k_of(k).unwrap();
        assert!(rel(got, k_trapezoid(k)) < 1e-13, "k = {k}");
    }
}

#[test]
fn k_of_inverse_sqrt2_frozen() {
    // trapezoid value, frozen
    let oracle = k_trapezoid(std::f64::consts::FRAC_1_SQRT_2);
    assert!(rel(oracle, 1.854_074_677_301_372) < 1e-15);
    assert!(rel(k_of_inv_sqrt2(), oracle) < 1e-15);
}

#[test]
fn phi_matches_legendre_form() {
    for i in 1..200 {
        let k = std::f64::consts::FRAC_1_SQRT_2
            + (1.0 - std::f64::consts::FRAC_1_SQRT_2) * i as f64 / 200.0;
        assert!(rel(phi_of_k(k).unwrap(), phi_gauss(k)) < 1e-12, "k = {k}");
    }
    // frozen from the Legendre-form integral
    assert!((phi_gauss(0.72) - 0.794_764_255_382_440_8).abs() < 1e-14);
    assert!((phi_gauss(0.8) - 0.459_462_443_367_120_2).abs() < 1e-14);
    assert!((phi_gauss(0.99) - 0.042_739_301_470_566_2).abs() < 1e-14);
}

#[test]
fn s_matches_trapezoid_form() {
    for &k in &[0.7072f64, 0.75, 0.9, 0.999] {
        let oracle = 4.0 * (2.0 * k).mul_add(k, -1.0).sqrt() * k_trapezoid(k);
        assert!(rel(s_of_k(k).unwrap(), oracle) < 1e-13);
    }
}

#[test]
fn frequencies_match_bisection_oracle() {
    for name in ["inv_sqrt5", "inv_sqrt3", "inv_one_plus_sqrt5"] {
        let alpha = Catalog::default().resolve(name).unwrap();
        let geom = GraphGeometry::from_ratio(&alpha, 1.0).unwrap();
        for n in [1u64, 2, 7, 19, 34] {
            let frac = (n as f64 * alpha.value()).fract();
            let plus = omega_plus(&geom, &alpha, n).unwrap().unwrap().omega;
            let minus = omega_minus(&geom, &alpha, n).unwrap().unwrap().omega;
            assert!(
                rel(plus, omega_bisect(n, frac, 1.0, 1.0)) < 1e-9,
                "{name} n = {n} plus"
            );
            assert!(
                rel(minus, omega_bisect(n, frac, -1.0, 1.0)) < 1e-9,
                "{name} n = {n} minus"
            );
        }
    }
}

#[test]
fn inverse_sqrt5_first_frequencies_frozen() {
    // bisection-oracle values, frozen
    let alpha = AlphaRatio::quadratic(0, 1, 5, 5).unwrap();
    let geom = GraphGeometry::from_ratio(&alpha, 1.0).unwrap();
    let w = omega_plus(&geom, &alpha, 1).unwrap().unwrap();
    assert!(rel(w.omega, -0.531_482_087_419_527_4) < 1e-12);
    let w = omega_minus(&geom, &alpha, 1).unwrap().unwrap();
    assert!(rel(w.omega, -101.657_160_185_001_77) < 1e-12);
}

#[test]
fn constructed_digits_match_explicit_strings() {
    for &ell in &[0.0, 5.0, 5.25, 0.3, 12.0] {
        let (alpha, _) = construct_alpha(ell, 6).unwrap();
        let AlphaKind::Constructed(c) = alpha.kind() else {
            unreachable!()
        };
        let want = constructed_digits(ell, 3000);
        for (i, &b) in want.iter().enumerate() {
            assert_eq!(
                c.bit(i as u64 + 1).unwrap(),
                b,
                "ℓ = {ell}, digit {}",
                i + 1
            );
        }
    }
}

#[test]
fn dyadic_xi_tilde_approaches_target() {
    for &ell in &[0.0, 5.0, 5.25] {
        let (alpha, starts) = construct_alpha(ell, 7).unwrap();
        let AlphaKind::Constructed(c) = alpha.kind() else {
            unreachable!()
        };
        let digits = constructed_digits(ell, 2 * *starts.last().unwrap() as usize + 200);
        let target = BigUint::from((ell * 4.0) as u64);
        let mut last_gap: Option<(BigUint, usize)> = None;
        for (j, &nj) in starts.iter().enumerate().take(6) {
            let (y, shift) = xi_tilde_dyadic(&digits, nj as usize);
            // y·2^-shift - ℓ with ℓ = target/4
            let scaled_target = &target << (shift - 2);
            assert!(y > scaled_target, "ℓ = {ell}, j = {}", j + 1);
            let gap = (&y - &scaled_target, shift);
            // once every fractional digit of ℓ is placed the gap is below 2^-n_j
            if j >= 2 {
                assert!((gap.0.bits() as i64) - (gap.1 as i64) <= -(nj as i64));
            }
            if let Some((g, s)) = &last_gap {
                assert!((&gap.0 << *s) < (g << gap.1), "gap not decreasing");
            }
            last_gap = Some(gap);
            let lib = c.xi_tilde_block(j + 1).unwrap();
            let oracle = dyadic_to_f64(&y, shift);
            assert!((lib - oracle).abs() <= 1e-15 * oracle.max(1.0));
        }
    }
}

fn dyadic_to_f64(y: &BigUint, shift: usize) -> f64 {
    let bits = y.bits() as usize;
    let drop = bits.saturating_sub(60);
    let top = (y >> drop).to_u64_digits().first().copied().unwrap_or(0) as f64;
    top * 2f64.powi(drop as i32 - shift as i32)
}
