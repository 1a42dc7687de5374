use std::f64::consts::PI;

use proptest::prelude::*;
use udw_causality::quadrature::{integrate, integrate_oscillatory, integrate_with, Tolerance, MAX_EVALUATIONS};
use udw_causality::specfun::*;

// Reference values computed with 40-digit arithmetic and rounded to f64.
const ERF: &[(f64, f64)] = &[
    (-5.5, -0.9999999999999927),
    (-2.0, -0.9953222650189527),
    (-0.3, -0.3286267594591274),
    (1e-08, 1.1283791670955126e-08),
    (0.1, 0.1124629160182849),
    (0.5, 0.5204998778130465),
    (1.0, 0.8427007929497149),
    (1.5, 0.9661051464753108),
    (2.0, 0.9953222650189527),
    (2.5, 0.999593047982555),
    (3.0, 0.9999779095030014),
    (3.5, 0.9999992569016276),
    (4.0, 0.9999999845827421),
    (5.0, 0.9999999999984626),
    (6.0, 1.0),
];

const ERFC: &[(f64, f64)] = &[
    (0.5, 0.4795001221869535),
    (1.0, 0.15729920705028513),
    (2.0, 0.004677734981047266),
    (3.0, 2.209049699858544e-05),
    (5.0, 1.537459794428035e-12),
    (10.0, 2.088487583762545e-45),
    (20.0, 5.395865611607901e-176),
    (26.0, 5.663192408856143e-296),
];

const SI: &[(f64, f64)] = &[
    (1e-06, 9.999999999999445e-07),
    (0.1, 0.09994446110827696),
    (0.5, 0.4931074180430667),
    (1.0, 0.946083070367183),
    (2.0, 1.6054129768026948),
    (3.0, 1.8486525279994683),
    (4.0, 1.7582031389490531),
    (4.5, 1.654140414379244),
    (5.0, 1.549931244944674),
    (7.5, 1.5106815309433859),
    (10.0, 1.6583475942188741),
    (20.0, 1.54824170104344),
    (50.0, 1.551617072485936),
    (100.0, 1.5622254668890563),
    (1000.0, 1.5702331219687713),
    (100000.0, 1.570806320399394),
];

const CI: &[(f64, f64)] = &[
    (1e-06, -13.23829489306299),
    (0.1, -1.7278683866572966),
    (0.5, -0.1777840788066129),
    (1.0, 0.33740392290096816),
    (2.0, 0.422980828774865),
    (3.0, 0.11962978600800032),
    (4.0, -0.1409816978869304),
    (4.5, -0.19349112210173874),
    (5.0, -0.19002974965664388),
    (7.5, 0.11563320323793427),
    (10.0, -0.04545643300445537),
    (20.0, 0.044419820845353314),
    (50.0, -0.005628386324116306),
    (100.0, -0.005148825142610492),
    (1000.0, 0.0008263155110906822),
    (100000.0, 3.5758791572935135e-07),
    (1e8, 9.316390307435767e-09),
];

const J0: &[(f64, f64)] = &[
    (0.0, 1.0),
    (0.1, 0.99750156206604),
    (1.0, 0.7651976865579666),
    (2.404825557695773, -6.10876525973673e-17),
    (3.0, -0.26005195490193345),
    (5.0, -0.1775967713143383),
    (7.9, 0.19436184484127825),
    (8.1, 0.14751745404437766),
    (10.0, -0.24593576445134835),
    (12.5, 0.1468840547004211),
    (15.0, -0.014224472826780772),
    (19.9, 0.17287775639261846),
    (20.1, 0.15953606793729708),
    (30.0, -0.08636798358104021),
    (50.0, 0.055812327669251816),
    (100.0, 0.019985850304223122),
    (1000.0, 0.024786686152420176),
    (10000.0, -0.0070961603533888015),
];

const I0E: &[(f64, f64)] = &[
    (0.0, 1.0),
    (0.01, 0.9900745851497075),
    (0.5, 0.6450352704491501),
    (1.0, 0.46575960759364043),
    (5.0, 0.18354081260932836),
    (10.0, 0.1278333371634286),
    (19.0, 0.09214465721171876),
    (20.0, 0.08978031188482602),
    (21.0, 0.08758915965422785),
    (30.0, 0.0731459464822373),
    (50.0, 0.05656162664745419),
    (100.0, 0.03994437929909668),
    (700.0, 0.015081295651531358),
    (10000.0, 0.003989472674604732),
    (1e8, 3.989422809001105e-05),
];

const WILBRAHAM_GIBBS: f64 = 1.851937051982466;

#[test]
fn erf_reference_table() {
    for &(x, want) in ERF {
        let got = erf(x);
        assert!((got - want).abs() <= ERF_ABS_TOL, "erf({x}) = {got}, want {want}");
    }
}

#[test]
fn erfc_reference_table_relative() {
    for &(x, want) in ERFC {
        let got = erfc(x);
        assert!(((got - want) / want).abs() <= 1e-12, "erfc({x}) = {got}, want {want}");
    }
}

#[test]
fn si_reference_table() {
    for &(x, want) in SI {
        let got = sine_integral(x);
        assert!((got - want).abs() <= SICI_ABS_TOL, "Si({x}) = {got}, want {want}");
    }
}

#[test]
fn ci_reference_table() {
    for &(x, want) in CI {
        let got = cosine_integral(x).unwrap();
        assert!((got - want).abs() <= SICI_ABS_TOL, "Ci({x}) = {got}, want {want}");
    }
}

#[test]
fn j0_reference_table() {
    for &(x, want) in J0 {
        let got = bessel_j0(x);
        assert!((got - want).abs() <= J0_ABS_TOL, "J0({x}) = {got}, want {want}");
    }
}

#[test]
fn i0_scaled_reference_table() {
    for &(x, want) in I0E {
        let got = bessel_i0_scaled(x).unwrap();
        assert!(((got - want) / want).abs() <= I0_SCALED_REL_TOL, "I0e({x}) = {got}, want {want}");
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

// Integral representations evaluated by adaptive quadrature.

fn erf_oracle(x: f64) -> f64 {
    let r = integrate(|t: f64| (-t * t).exp(), 0.0, x, 3e-15).unwrap();
    2.0 / PI.sqrt() * r.value
}

fn si_oracle(x: f64) -> f64 {
    let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
    integrate(sinc, 0.0, x, 1e-13).unwrap().value
}

fn ci_oracle(x: f64) -> f64 {
    const GAMMA: f64 = 0.577_215_664_901_532_9;
    let g = |t: f64| if t == 0.0 { 0.0 } else { (t.cos() - 1.0) / t };
    GAMMA + x.ln() + integrate(g, 0.0, x, 1e-13).unwrap().value
}

fn j0_oracle(x: f64) -> f64 {
    let scale = x.max(1.0);
    integrate_oscillatory(|th: f64| (x * th.sin()).cos(), 0.0, PI, scale, 1e-14).unwrap().value / PI
}

fn i0e_oracle(x: f64) -> f64 {
    let f = |th: f64| (x * (th.cos() - 1.0)).exp();
    integrate_with(f, &[0.0, PI], Tolerance::relative(5e-14), MAX_EVALUATIONS).unwrap().value / PI
}

#[test]
fn erf_matches_integral_on_log_grid() {
    for x in log_grid(1e-4, 6.0, 1000) {
        let (got, want) = (erf(x), erf_oracle(x));
        assert!((got - want).abs() <= ERF_ABS_TOL, "x={x}: {got} vs {want}");
    }
}

#[test]
fn sici_match_integrals_on_log_grid() {
    for x in log_grid(1e-3, 200.0, 1000) {
        let (s, so) = (sine_integral(x), si_oracle(x));
        assert!((s - so).abs() <= SICI_ABS_TOL, "Si x={x}: {s} vs {so}");
        let (c, co) = (cosine_integral(x).unwrap(), ci_oracle(x));
        assert!((c - co).abs() <= SICI_ABS_TOL, "Ci x={x}: {c} vs {co}");
    }
}

#[test]
fn j0_matches_integral_on_log_grid() {
    for x in log_grid(1e-3, 500.0, 1000) {
        let (got, want) = (bessel_j0(x), j0_oracle(x));
        assert!((got - want).abs() <= J0_ABS_TOL, "x={x}: {got} vs {want}");
    }
}

#[test]
fn i0_scaled_matches_integral_on_log_grid() {
    for x in log_grid(1e-3, 1e4, 1000) {
        let (got, want) = (bessel_i0_scaled(x).unwrap(), i0e_oracle(x));
        assert!(((got - want) / want).abs() <= I0_SCALED_REL_TOL, "x={x}: {got} vs {want}");
    }
}

#[test]
fn si_bounded_by_gibbs_constant() {
    for x in log_grid(1e-3, 1e6, 4000) {
        assert!(sine_integral(x).abs() <= WILBRAHAM_GIBBS + 1e-15);
    }
    assert!((sine_integral(PI) - WILBRAHAM_GIBBS).abs() < 1e-14);
}

#[test]
fn i0_scaled_is_monotone_and_bounded() {
    let xs = log_grid(1e-6, 1e300, 3000);
    let mut prev = 1.0;
    for x in xs {
        let v = bessel_i0_scaled(x).unwrap();
        assert!(v > 0.0 && v <= 1.0 && v <= prev, "x={x}");
        prev = v;
    }
}

proptest! {
    #[test]
    fn erf_is_odd_and_bounded(x in -40.0f64..40.0) {
        prop_assert_eq!(erf(-x), -erf(x));
        prop_assert!(erf(x).abs() <= 1.0);
    }

    #[test]
    fn si_is_odd(x in -1e4f64..1e4) {
        prop_assert_eq!(sine_integral(-x), -sine_integral(x));
    }

    #[test]
    fn j0_is_even_and_bounded(x in -1e4f64..1e4) {
        prop_assert_eq!(bessel_j0(-x), bessel_j0(x));
        prop_assert!(bessel_j0(x).abs() <= 1.0);
    }

    #[test]
    fn erf_erfc_complement(x in -6.0f64..6.0) {
        prop_assert!((erf(x) + erfc(x) - 1.0).abs() <= 2e-15);
    }

    #[test]
    fn i0_scaled_never_overflows(x in 0.0f64..f64::MAX) {
        let v = bessel_i0_scaled(x).unwrap();
        prop_assert!(v.is_finite() && v > 0.0);
    }
}
