//! Adaptive Gauss-Kronrod (7/15) quadrature, fixed-panel integration of
//! oscillatory integrands and Cauchy principal values through a simple pole.
//!
//! Panels are always summed in position order with compensated summation, so
//! a given `(f, a, b, tol)` yields the same bits on every run.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default evaluation budget of the adaptive driver.
pub const MAX_EVALUATIONS: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Values the integrators can accumulate: reals, complex numbers and small
/// fixed-size real vectors (integrated componentwise, error is the max norm).
pub trait QuadValue: Copy + Send + Sync {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, k: f64) -> Self;
    /// Max-norm over components.
    fn norm(self) -> f64;
    fn is_finite(self) -> bool;
    /// One step of Neumaier summation: `sum += x` with the lost low-order
    /// bits collected in `comp`.
    fn neumaier(sum: &mut Self, comp: &mut Self, x: Self);
}

fn neumaier_f64(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn neumaier(sum: &mut Self, comp: &mut Self, x: Self) {
        neumaier_f64(sum, comp, x);
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm(self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
    fn neumaier(sum: &mut Self, comp: &mut Self, x: Self) {
        neumaier_f64(&mut sum.re, &mut comp.re, x.re);
        neumaier_f64(&mut sum.im, &mut comp.im, x.im);
    }
}

impl<const N: usize> QuadValue for [f64; N] {
    fn zero() -> Self {
        [0.0; N]
    }
    fn add(mut self, other: Self) -> Self {
        self.iter_mut().zip(other).for_each(|(a, b)| *a += b);
        self
    }
    fn sub(mut self, other: Self) -> Self {
        self.iter_mut().zip(other).for_each(|(a, b)| *a -= b);
        self
    }
    fn scale(mut self, k: f64) -> Self {
        self.iter_mut().for_each(|a| *a *= k);
        self
    }
    fn norm(self) -> f64 {
        self.iter().fold(0.0, |m, a| m.max(a.abs()))
    }
    fn is_finite(self) -> bool {
        self.iter().all(|a| a.is_finite())
    }
    fn neumaier(sum: &mut Self, comp: &mut Self, x: Self) {
        for i in 0..N {
            neumaier_f64(&mut sum[i], &mut comp[i], x[i]);
        }
    }
}

/// Compensated running sum.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<V> {
    sum: V,
    comp: V,
}

impl<V: QuadValue> CompensatedSum<V> {
    pub fn new() -> Self {
        CompensatedSum {
            sum: V::zero(),
            comp: V::zero(),
        }
    }

    pub fn add(&mut self, x: V) {
        V::neumaier(&mut self.sum, &mut self.comp, x);
    }

    pub fn value(&self) -> V {
        self.sum.add(self.comp)
    }
}

impl<V: QuadValue> Default for CompensatedSum<V> {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<V = f64> {
    pub value: V,
    pub est_abs_error: f64,
    pub panels_used: usize,
}

/// Stopping rule: the estimated error must not exceed `max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    pub fn relative(rel: f64) -> Self {
        Tolerance { abs: 0.0, rel }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }

    fn check(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(self.abs) || !ok(self.rel) || (self.abs == 0.0 && self.rel == 0.0) {
            return Err(Error::invalid("tol", "must be positive and finite"));
        }
        Ok(())
    }
}

/// A simple pole of the integrand `f_smooth(v) / (v - location)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSpec {
    pub location: f64,
}

impl PoleSpec {
    pub fn new(location: f64) -> Self {
        PoleSpec { location }
    }

    pub fn order(&self) -> u32 {
        1
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<V> Eq for Panel<V> {}

impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V> Ord for Panel<V> {
    // largest error first; ties broken by position for determinism
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> (V, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc.scale(WGK[7]);
    let mut g = fc.scale(WG[3]);
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        let s = f1.add(f2);
        k = k.add(s.scale(WGK[j]));
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            g = g.add(s.scale(WG[j / 2]));
        }
    }
    let k = k.scale(h);
    let g = g.scale(h);
    let roundoff = 8.0 * f64::EPSILON * resabs * h.abs();
    (k, k.sub(g).norm().max(roundoff))
}

/// Adaptive quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<V, F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    integrate_with(f, &[a, b], Tolerance::absolute(tol), MAX_EVALUATIONS)
}

/// Adaptive quadrature over the consecutive intervals of `knots`, which must
/// be non-decreasing. Interior knots mark kinks or steps of the integrand.
pub fn integrate_with<V, F>(
    f: F,
    knots: &[f64],
    tol: Tolerance,
    max_evaluations: usize,
) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    tol.check()?;
    if knots.len() < 2 {
        return Err(Error::invalid("interval", "needs at least two endpoints"));
    }
    if knots.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("interval", "endpoints must be finite"));
    }
    if knots.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("interval", "endpoints must be increasing"));
    }

    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel<V>> = Vec::new();
    let mut evaluations = 0;
    for w in knots.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (value, error) = kronrod(&f, w[0], w[1]);
        evaluations += 15;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }
    if heap.is_empty() {
        return Ok(QuadratureResult {
            value: V::zero(),
            est_abs_error: 0.0,
            panels_used: 1,
        });
    }

    loop {
        let (value, error) = total(heap.iter().chain(done.iter()));
        if !value.is_finite() {
            return Err(Error::Singular(
                "integrand is not finite on the integration interval".into(),
            ));
        }
        let target = tol.target(value.norm());
        if error <= target {
            return Ok(QuadratureResult {
                value,
                est_abs_error: error,
                panels_used: heap.len() + done.len(),
            });
        }
        if evaluations + 30 > max_evaluations || heap.is_empty() {
            return Err(Error::Convergence {
                evaluations,
                est_abs_error: error,
                tol: target,
            });
        }
        // refine the worst panels until the running estimate drops or the
        // heap is exhausted, then recompute the totals exactly
        let mut running = error;
        while running > target && evaluations + 30 <= max_evaluations {
            let Some(p) = heap.pop() else { break };
            let mid = 0.5 * (p.a + p.b);
            if mid <= p.a || mid >= p.b {
                done.push(p);
                continue;
            }
            let (v1, e1) = kronrod(&f, p.a, mid);
            let (v2, e2) = kronrod(&f, mid, p.b);
            evaluations += 30;
            running += e1 + e2 - p.error;
            heap.push(Panel {
                a: p.a,
                b: mid,
                value: v1,
                error: e1,
            });
            heap.push(Panel {
                a: mid,
                b: p.b,
                value: v2,
                error: e2,
            });
        }
    }
}

fn total<'a, V: QuadValue + 'a>(panels: impl Iterator<Item = &'a Panel<V>>) -> (V, f64) {
    let mut sorted: Vec<&Panel<V>> = panels.collect();
    sorted.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = CompensatedSum::new();
    let mut error = CompensatedSum::<f64>::new();
    for p in sorted {
        value.add(p.value);
        error.add(p.error);
    }
    (value.value(), error.value())
}

/// Integrates an oscillatory `f` over `[a, b]` on fixed panels of a quarter
/// of the shortest wavelength `2 pi / osc_scale`, running the adaptive rule on
/// each panel with a proportional share of `tol`.
pub fn integrate_oscillatory<V, F>(
    f: F,
    a: f64,
    b: f64,
    osc_scale: f64,
    tol: f64,
) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    if !(osc_scale.is_finite() && osc_scale > 0.0) {
        return Err(Error::invalid("osc_scale", "must be positive"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive and finite"));
    }
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::invalid("interval", "needs finite a <= b"));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: V::zero(),
            est_abs_error: 0.0,
            panels_used: 1,
        });
    }
    let width = FRAC_PI_2 / osc_scale;
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let mut value = CompensatedSum::new();
    let mut error = CompensatedSum::<f64>::new();
    let mut panels = 0;
    for i in 0..n {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n { b } else { a + width * (i + 1) as f64 };
        if hi <= lo {
            continue;
        }
        let r = integrate(&f, lo, hi, tol * (hi - lo) / (b - a))?;
        value.add(r.value);
        error.add(r.est_abs_error);
        panels += r.panels_used;
    }
    Ok(QuadratureResult {
        value: value.value(),
        est_abs_error: error.value(),
        panels_used: panels.max(1),
    })
}

/// Cauchy principal value of `int_a^b f_smooth(v) / (v - p) dv`.
///
/// Computed as `int (f(v) - f(p)) / (v - p) dv + f(p) ln((b - p)/(p - a))`,
/// with the regular part split at `p` so that no node lands on the pole.
pub fn integrate_pv<V, F>(
    f_smooth: F,
    pole: PoleSpec,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    integrate_pv_with(f_smooth, pole, &[a, b], tol)
}

/// [`integrate_pv`] over the span of `knots`, which also mark kinks of
/// `f_smooth` away from the pole.
pub fn integrate_pv_with<V, F>(
    f_smooth: F,
    pole: PoleSpec,
    knots: &[f64],
    tol: f64,
) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    let p = pole.location;
    let (a, b) = match (knots.first(), knots.last()) {
        (Some(&a), Some(&b)) if knots.len() >= 2 => (a, b),
        _ => return Err(Error::invalid("interval", "needs at least two endpoints")),
    };
    if !(a < p && p < b) {
        return Err(Error::invalid(
            "pole",
            format!("location {p} must lie strictly inside ({a}, {b})"),
        ));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive and finite"));
    }
    let mut left: Vec<f64> = knots.iter().copied().filter(|&x| x < p).collect();
    left.push(p);
    let mut right = vec![p];
    right.extend(knots.iter().copied().filter(|&x| x > p));

    let fp = f_smooth(p);
    let regular = |v: f64| f_smooth(v).sub(fp).scale(1.0 / (v - p));
    let lhs = integrate_with(&regular, &left, Tolerance::absolute(0.5 * tol), MAX_EVALUATIONS)?;
    let rhs = integrate_with(&regular, &right, Tolerance::absolute(0.5 * tol), MAX_EVALUATIONS)?;
    let log_term = fp.scale(((b - p) / (p - a)).ln());
    let mut value = CompensatedSum::new();
    value.add(lhs.value);
    value.add(rhs.value);
    value.add(log_term);
    Ok(QuadratureResult {
        value: value.value(),
        est_abs_error: lhs.est_abs_error + rhs.est_abs_error,
        panels_used: lhs.panels_used + rhs.panels_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::sine_integral;
    use std::f64::consts::PI;

    #[test]
    fn constant_is_exact() {
        let r = integrate(|_| 1.0, 0.0, 1.0, 1e-10).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.panels_used >= 1);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let r = integrate(|x| x, -1.0, 1.0, 1e-10).unwrap();
        assert!(r.value.abs() < 1e-16);
    }

    #[test]
    fn sinc_matches_si() {
        let r = integrate(|x: f64| if x == 0.0 { 1.0 } else { x.sin() / x }, 0.0, 4.0, 1e-12).unwrap();
        assert!((r.value - sine_integral(4.0)).abs() <= 1e-12);
    }

    #[test]
    fn polynomial_exactness() {
        // K15 integrates degree 22 exactly on a single panel
        for deg in 0..=22 {
            let r = integrate(|x: f64| x.powi(deg), 0.0, 1.0, 1.0).unwrap();
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((r.value - want).abs() < 1e-15, "deg {deg}");
        }
    }

    #[test]
    fn complex_and_vector_values() {
        let r = integrate(|x: f64| Complex64::new(x.cos(), x.sin()), 0.0, PI, 1e-12).unwrap();
        assert!(r.value.re.abs() < 1e-13 && (r.value.im - 2.0).abs() < 1e-13);
        let r = integrate(|x: f64| [1.0, x, x * x], 0.0, 3.0, 1e-12).unwrap();
        assert!((r.value[2] - 9.0).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_is_a_convergence_error() {
        let err = integrate_with(|x: f64| (1.0 / x).sin(), &[1e-9, 1.0], Tolerance::absolute(1e-14), 3000)
            .unwrap_err();
        assert!(err.is_convergence());
    }

    #[test]
    fn bad_arguments() {
        assert!(integrate(|x| x, 1.0, 0.0, 1e-9).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(integrate(|x| x, 0.0, f64::INFINITY, 1e-9).is_err());
        assert!(integrate_pv(|_| 1.0, PoleSpec::new(2.0), 0.0, 1.0, 1e-9).is_err());
        assert!(integrate_oscillatory(|x| x, 0.0, 1.0, 0.0, 1e-9).is_err());
    }

    #[test]
    fn whole_periods_vanish() {
        for k in 1..5 {
            let b = 2.0 * PI * k as f64 / 50.0;
            let r = integrate_oscillatory(|x: f64| (50.0 * x).sin(), 0.0, b, 50.0, 1e-12).unwrap();
            assert!(r.value.abs() < 1e-12);
        }
        let r = integrate_oscillatory(|x: f64| x, 1.0, 1.0, 3.0, 1e-9).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn pv_examples() {
        let r = integrate_pv(|_| 1.0, PoleSpec::new(0.0), -1.0, 2.0, 1e-12).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-14);
        let r = integrate_pv(|_| 1.0, PoleSpec::new(0.0), -1.0, 1.0, 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
        let r = integrate_pv(|v: f64| Complex64::new(0.0, -v).exp(), PoleSpec::new(0.0), -2.0, 2.0, 1e-12)
            .unwrap();
        assert!(r.value.re.abs() < 1e-12);
        assert!((r.value.im + 2.0 * sine_integral(2.0)).abs() < 1e-12);
        assert_eq!(PoleSpec::new(0.5).order(), 1);
    }
}
