//! Adaptive Gauss-Kronrod integration.
//!
//! Panels are integrated with the 15-point Kronrod rule and its embedded 7-point Gauss
//! rule; the difference of the two is the panel error. The panel with the largest error
//! is bisected until the summed error meets `max(abs_tol, rel_tol·|value|)`. Both rules are
//! open, so integrands are never evaluated at panel endpoints.
//!
//! Nested (iterated) integrals pass an inner error estimate alongside every inner value;
//! it is integrated with the Kronrod weights and added to the outer estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special_functions::erfc;

// Kronrod abscissae on [0, 1); the Gauss nodes are the odd entries here.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
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
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of any panel.
    pub max_depth: usize,
    /// Semi-infinite ranges are truncated where the tail bound drops below
    /// `abs_tol / truncation_margin`.
    pub truncation_margin: f64,
}

impl QuadSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_depth: usize) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_depth,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Defaults for triple integrals (second moments).
    pub fn triple() -> Self {
        Self {
            rel_tol: 1e-5,
            abs_tol: 1e-9,
            ..Self::default()
        }
    }

    /// Same spec with the relative and absolute tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            rel_tol: (self.rel_tol * factor).max(1e-14),
            abs_tol: self.abs_tol * factor,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        if self.max_depth < 10 {
            return Err(Error::InvalidParameter(format!(
                "max_depth must be at least 10, got {}",
                self.max_depth
            )));
        }
        if !(self.truncation_margin >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "truncation_margin must be >= 1, got {}",
                self.truncation_margin
            )));
        }
        Ok(())
    }
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_depth: 50,
            truncation_margin: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evals: usize,
}

/// Gaussian envelope `amplitude · r · exp(−coeff (r − shift)²)` dominating a radial
/// integrand for `r >= shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTail {
    pub shift: f64,
    pub coeff: f64,
    pub amplitude: f64,
}

impl GaussianTail {
    /// Upper bound on `∫_R^∞` of the envelope, valid for `R >= shift`.
    pub fn mass_beyond(&self, r: f64) -> f64 {
        let u = r - self.shift;
        let c = self.coeff;
        let gauss = (-c * u * u).exp() / (2.0 * c);
        let lin = self.shift * 0.5 * (std::f64::consts::PI / c).sqrt() * erfc(c.sqrt() * u);
        self.amplitude * (gauss + lin)
    }

    /// Smallest radius (to within 1e-6) past which the envelope mass is below `target`.
    pub fn truncation_radius(&self, from: f64, target: f64) -> f64 {
        let start = from.max(self.shift);
        if self.mass_beyond(start) <= target {
            return start;
        }
        let mut step = 1.0;
        let mut hi = start + step;
        while self.mass_beyond(hi) > target {
            step *= 2.0;
            hi = start + step;
        }
        let mut lo = start;
        while hi - lo > 1e-6 {
            let mid = 0.5 * (lo + hi);
            if self.mass_beyond(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    inner_err: f64,
    depth: usize,
}

impl Panel {
    fn total_err(&self) -> f64 {
        self.err + self.inner_err
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_err()
            .total_cmp(&other.total_err())
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn kronrod_panel<F>(f: &F, lo: f64, hi: f64, depth: usize, parallel: bool) -> Panel
where
    F: Fn(f64) -> (f64, f64) + Sync,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut nodes = [0.0; 15];
    for j in 0..7 {
        nodes[2 * j] = center - half * XGK[j];
        nodes[2 * j + 1] = center + half * XGK[j];
    }
    nodes[14] = center;
    let evals: Vec<(f64, f64)> = if parallel {
        nodes.par_iter().map(|&x| f(x)).collect()
    } else {
        nodes.iter().map(|&x| f(x)).collect()
    };

    let mut kronrod = WGK[7] * evals[14].0;
    let mut gauss = WG[3] * evals[14].0;
    let mut inner = WGK[7] * evals[14].1;
    for j in 0..7 {
        let (fl, el) = evals[2 * j];
        let (fr, er) = evals[2 * j + 1];
        kronrod += WGK[j] * (fl + fr);
        inner += WGK[j] * (el + er);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (fl + fr);
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        err: ((kronrod - gauss) * half).abs(),
        inner_err: inner * half.abs(),
        depth,
    }
}

fn adaptive<F>(f: &F, breaks: &[f64], spec: &QuadSpec, parallel: bool) -> Result<QuadResult>
where
    F: Fn(f64) -> (f64, f64) + Sync,
{
    spec.validate()?;
    if breaks.len() < 2 || breaks.iter().any(|b| !b.is_finite()) {
        return Err(Error::InvalidParameter(
            "integration range must be finite".into(),
        ));
    }
    if breaks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "integration limits must be strictly increasing, got {breaks:?}"
        )));
    }

    const MAX_PANELS: usize = 20_000;
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut value = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    for w in breaks.windows(2) {
        let p = kronrod_panel(f, w[0], w[1], 0, parallel);
        evals += 15;
        value += p.value;
        err += p.total_err();
        heap.push(p);
    }

    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
        if err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        if worst.depth >= spec.max_depth || heap.len() + frozen.len() >= MAX_PANELS {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            frozen.push(worst);
            continue;
        }
        let left = kronrod_panel(f, worst.lo, mid, worst.depth + 1, parallel);
        let right = kronrod_panel(f, mid, worst.hi, worst.depth + 1, parallel);
        evals += 30;
        value += left.value + right.value - worst.value;
        err += left.total_err() + right.total_err() - worst.total_err();
        heap.push(left);
        heap.push(right);
    }

    // Final sums in panel order so the result does not depend on heap history.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let err_estimate: f64 = panels.iter().map(|p| p.total_err()).sum();
    let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
    if err_estimate > tol || !value.is_finite() {
        return Err(Error::ToleranceNotMet {
            value,
            err_estimate,
        });
    }
    Ok(QuadResult {
        value,
        err_estimate,
        evals,
    })
}

/// Integrate `f` over `(lo, hi)`.
pub fn integrate_1d<F>(f: F, lo: f64, hi: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate_1d_breaks(f, &[lo, hi], spec)
}

/// Integrate `f` over `(breaks[0], breaks[last])`, starting with one panel per interval
/// between consecutive break points. Use this where `f` has kinks at known locations.
pub fn integrate_1d_breaks<F>(f: F, breaks: &[f64], spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    adaptive(&|x| (f(x), 0.0), breaks, spec, false)
}

/// Like [`integrate_1d_breaks`] for an integrand that is itself an approximation and
/// returns `(value, error estimate)`.
pub fn integrate_1d_nested<F>(f: F, breaks: &[f64], spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> (f64, f64) + Sync,
{
    adaptive(&f, breaks, spec, false)
}

/// Integrate over `[lo, ∞)` an integrand dominated beyond `tail.shift` by the Gaussian
/// envelope in `tail`. The range is cut where the envelope mass falls below
/// `abs_tol / truncation_margin`; that mass is added to the error estimate.
pub fn integrate_radial_semi_infinite<F>(
    f: F,
    lo: f64,
    tail: GaussianTail,
    spec: &QuadSpec,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate_radial_semi_infinite_nested(|r| (f(r), 0.0), lo, tail, spec)
}

pub fn integrate_radial_semi_infinite_nested<F>(
    f: F,
    lo: f64,
    tail: GaussianTail,
    spec: &QuadSpec,
) -> Result<QuadResult>
where
    F: Fn(f64) -> (f64, f64) + Sync,
{
    if !(tail.coeff > 0.0) || !(tail.amplitude > 0.0) || !(tail.shift >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "invalid Gaussian tail envelope {tail:?}"
        )));
    }
    spec.validate()?;
    let target = if spec.abs_tol > 0.0 {
        spec.abs_tol / spec.truncation_margin
    } else {
        f64::MIN_POSITIVE
    };
    let r_max = tail.truncation_radius(lo, target);
    let mut breaks = vec![lo];
    if tail.shift > lo && tail.shift < r_max {
        breaks.push(tail.shift);
    }
    breaks.push(r_max);
    let mut res = adaptive(&f, &breaks, spec, false)?;
    res.err_estimate += tail.mass_beyond(r_max);
    Ok(res)
}

/// Region for [`integrate_3d_iterated`]: `θ ∈ theta`, `ω₁ ∈ w1(θ)`, `ω₂ ∈ w2(θ, ω₁)`.
pub struct IteratedRegion<L1, L2>
where
    L1: Fn(f64) -> (f64, f64) + Sync,
    L2: Fn(f64, f64) -> (f64, f64) + Sync,
{
    pub theta: (f64, f64),
    pub w1: L1,
    pub w2: L2,
}

/// Iterated adaptive integration of `f(θ, ω₁, ω₂)`, innermost over ω₂.
///
/// Inner levels run at `spec` tightened by 1e-2 so that the outer integrand is smooth
/// on the scale of the outer tolerance. Inner error estimates are integrated into the
/// outer estimate. The 15 nodes of each outer panel are evaluated on the rayon pool;
/// the summation order is fixed, so results do not depend on the worker count.
pub fn integrate_3d_iterated<F, L1, L2>(
    f: F,
    region: &IteratedRegion<L1, L2>,
    spec: &QuadSpec,
) -> Result<QuadResult>
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
    L1: Fn(f64) -> (f64, f64) + Sync,
    L2: Fn(f64, f64) -> (f64, f64) + Sync,
{
    let mid_spec = spec.tightened(1e-2);
    let inner_spec = spec.tightened(1e-3);

    let inner = |theta: f64, w1: f64| -> (f64, f64) {
        let (lo, hi) = (region.w2)(theta, w1);
        if !(hi > lo) {
            return (0.0, 0.0);
        }
        settle(adaptive(&|w2| (f(theta, w1, w2), 0.0), &[lo, hi], &inner_spec, false))
    };
    let middle = |theta: f64| -> (f64, f64) {
        let (lo, hi) = (region.w1)(theta);
        if !(hi > lo) {
            return (0.0, 0.0);
        }
        settle(adaptive(&|w1| inner(theta, w1), &[lo, hi], &mid_spec, false))
    };
    let (lo, hi) = region.theta;
    adaptive(&middle, &[lo, hi], spec, true)
}

// Inner levels that miss their tolerance still hand back their best estimate; the
// outer level sees the large error and refines or fails accordingly.
fn settle(r: Result<QuadResult>) -> (f64, f64) {
    match r {
        Ok(q) => (q.value, q.err_estimate),
        Err(Error::ToleranceNotMet {
            value,
            err_estimate,
        }) => (value, err_estimate),
        Err(_) => (f64::NAN, f64::INFINITY),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_1d(|x| x, 0.0, 1.0, &QuadSpec::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        assert_eq!(r.evals, 15);
    }

    #[test]
    fn edge_mean_integral() {
        let r = integrate_1d(
            |p: f64| 2.0 / (PI + 2.0 * p + (2.0 * p).sin()),
            0.0,
            PI / 2.0,
            &QuadSpec::default(),
        )
        .unwrap();
        assert!((r.value - 0.61082).abs() < 1e-5);
    }

    #[test]
    fn truncated_gaussian_disk_mass() {
        let big_r: f64 = 1.3;
        let r = integrate_1d(
            |r: f64| (-PI * r * r).exp() * 2.0 * PI * r,
            0.0,
            big_r,
            &QuadSpec::default(),
        )
        .unwrap();
        let exact = 1.0 - (-PI * big_r * big_r).exp();
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn open_rule_never_touches_endpoints() {
        let r = integrate_1d(
            |x: f64| {
                assert!(x > 0.0 && x < 1.0);
                x.ln()
            },
            0.0,
            1.0,
            &QuadSpec::new(1e-6, 1e-8, 60).unwrap(),
        )
        .unwrap();
        assert!((r.value + 1.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_ranges_and_specs() {
        let s = QuadSpec::default();
        assert!(integrate_1d(|x| x, 1.0, 0.0, &s).is_err());
        assert!(integrate_1d(|x| x, 0.0, f64::INFINITY, &s).is_err());
        assert!(QuadSpec::new(0.5, 0.0, 20).is_err());
        assert!(QuadSpec::new(1e-6, 0.0, 5).is_err());
    }

    #[test]
    fn tolerance_failure_carries_best_estimate() {
        let spec = QuadSpec::new(1e-12, 0.0, 10).unwrap();
        let r = integrate_1d(|x: f64| x.powf(-0.9), 0.0, 1.0, &spec);
        match r {
            Err(Error::ToleranceNotMet {
                value,
                err_estimate,
            }) => {
                assert!(value > 0.0 && err_estimate > 0.0);
            }
            other => panic!("expected ToleranceNotMet, got {other:?}"),
        }
    }

    #[test]
    fn radial_semi_infinite_closed_form() {
        let tail = GaussianTail {
            shift: 0.0,
            coeff: PI,
            amplitude: 1.0,
        };
        let spec = QuadSpec {
            rel_tol: 1e-12,
            abs_tol: 1e-13,
            ..QuadSpec::default()
        };
        let r = integrate_radial_semi_infinite(|r: f64| r * (-PI * r * r).exp(), 0.0, tail, &spec)
            .unwrap();
        assert!((r.value - 1.0 / (2.0 * PI)).abs() < 1e-10);
    }

    #[test]
    fn doubling_truncation_radius_changes_little() {
        let tail = GaussianTail {
            shift: 1.0,
            coeff: PI / 4.0,
            amplitude: 1.0,
        };
        let spec = QuadSpec::default();
        let f = |r: f64| r * (-PI / 4.0 * (r - 1.0) * (r - 1.0)).exp();
        let r_max = tail.truncation_radius(0.0, spec.abs_tol / spec.truncation_margin);
        let a = integrate_1d_breaks(f, &[0.0, 1.0, r_max], &spec).unwrap();
        let b = integrate_1d_breaks(f, &[0.0, 1.0, 2.0 * r_max], &spec).unwrap();
        assert!((a.value - b.value).abs() < spec.abs_tol);
    }

    #[test]
    fn simplex_volume() {
        let region = IteratedRegion {
            theta: (0.0, 1.0),
            w1: |t: f64| (0.0, t),
            w2: |_t: f64, w1: f64| (0.0, w1),
        };
        let r = integrate_3d_iterated(|_, _, _| 1.0, &region, &QuadSpec::triple()).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn nested_error_is_propagated() {
        let r = integrate_1d_nested(|_| (1.0, 0.25), &[0.0, 2.0], &QuadSpec::new(1e-2, 1.0, 10).unwrap())
            .unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
        assert!((r.err_estimate - 0.5).abs() < 1e-14);
    }
}
