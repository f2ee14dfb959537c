//! First and second moments of the cell size, closed-form bounds and the two-moment
//! Gamma fit.
//!
//! Everything is computed at unit intensity. A point P belongs to the cell of S₀ with
//! probability `exp(−V(P))`, so the mean cell size is the integral of that quantity
//! over the domain. Second moments integrate `exp(−V(P₁, P₂))` over pairs of points;
//! after the change of variables to `(z, θ, ω₁, ω₂)` the radial integral is done
//! analytically and leaves `f(ω₁, ω₂) / V²` over the angular regions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::error::{domain, Error, Result};
use crate::quadrature::{
    integrate_1d, integrate_1d_breaks, integrate_1d_nested, integrate_3d_iterated,
    integrate_radial_semi_infinite_nested, GaussianTail, IteratedRegion, QuadResult, QuadSpec,
};
use crate::special_functions::{erf, erfc, expint_upper, struve_m1};
use crate::void_geometry::{
    self, bulk_unchecked, corner_void_unchecked, edge_void_unchecked, jacobian_unchecked,
    CornerRegion, EdgeRegion, PolarPoint, SeedLocation,
};

/// Offsets beyond which the quadrant mean is replaced by the edge mean. At `a = 8`
/// the two differ by less than 1e-9.
pub const QUADRANT_EDGE_CROSSOVER: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Quadrature,
    BoundUpper,
    BoundLower,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::BoundUpper => "bound_upper",
            Method::BoundLower => "bound_lower",
        }
    }
}

/// A cell-size moment with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    pub location: SeedLocation,
    /// 1 for the mean, 2 for the second moment.
    pub order: u8,
    pub value: f64,
    pub err_estimate: f64,
    pub method: Method,
}

impl MomentResult {
    fn from_quad(location: SeedLocation, order: u8, q: QuadResult) -> Self {
        Self {
            location,
            order,
            value: q.value,
            err_estimate: q.err_estimate,
            method: Method::Quadrature,
        }
    }

    fn exact(location: SeedLocation, order: u8, value: f64, method: Method) -> Self {
        Self {
            location,
            order,
            value,
            err_estimate: value.abs() * f64::EPSILON * 8.0,
            method,
        }
    }
}

/// Shape `k` and scale `nu` of a Gamma distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    pub k: f64,
    pub nu: f64,
}

impl GammaParams {
    pub fn new(k: f64, nu: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite() && nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Gamma parameters must be positive, got k={k}, nu={nu}"
            )));
        }
        Ok(Self { k, nu })
    }

    pub fn mean(&self) -> f64 {
        self.k * self.nu
    }

    pub fn variance(&self) -> f64 {
        self.k * self.nu * self.nu
    }
}

fn check_offset(x: f64, name: &str) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return domain(format!("{name} must be finite and >= 0, got {x}"));
    }
    Ok(())
}

/// Mean cell size with the seed at the corner, `arccos(2/π) / √(π² − 4)`.
pub fn mean_corner() -> MomentResult {
    let value = (2.0 / PI).acos() / (PI * PI - 4.0).sqrt();
    MomentResult::exact(SeedLocation::Corner, 1, value, Method::ClosedForm)
}

/// The corner mean by quadrature of `∫ dφ / (2(π/2 + sin 2φ))`, to cross-check
/// [`mean_corner`].
pub fn mean_corner_quadrature(spec: &QuadSpec) -> Result<MomentResult> {
    let q = integrate_1d(
        |phi: f64| 0.5 / (FRAC_PI_2 + (2.0 * phi).sin()),
        0.0,
        FRAC_PI_2,
        spec,
    )?;
    Ok(MomentResult::from_quad(SeedLocation::Corner, 1, q))
}

/// Mean cell size with the seed on the boundary of a half-plane.
pub fn mean_edge() -> MomentResult {
    static EDGE: OnceLock<MomentResult> = OnceLock::new();
    *EDGE.get_or_init(|| {
        let spec = QuadSpec {
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            ..QuadSpec::default()
        };
        let q = integrate_1d(
            |phi: f64| 2.0 / (PI + 2.0 * phi + (2.0 * phi).sin()),
            0.0,
            FRAC_PI_2,
            &spec,
        )
        .expect("smooth integrand on a finite interval");
        MomentResult::from_quad(SeedLocation::Edge, 1, q)
    })
}

/// Mean cell size with the seed on a quadrant boundary at distance `a` from the corner.
///
/// Integrates `exp(−V)` in polar coordinates around the corner. The angular integral
/// is split at the case thresholds φ₁(r) and φ₂(r); the radial one is cut at `a/2`
/// and `a` and truncated where the quarter-disk envelope `exp(−π(r−a)²/4)` is
/// negligible. Offsets above [`QUADRANT_EDGE_CROSSOVER`] return [`mean_edge`].
pub fn mean_quadrant(a: f64, spec: &QuadSpec) -> Result<MomentResult> {
    check_offset(a, "corner offset")?;
    spec.validate()?;
    let location = SeedLocation::QuadrantBoundary { a };
    if a > QUADRANT_EDGE_CROSSOVER {
        return Ok(MomentResult {
            location,
            ..mean_edge()
        });
    }
    let inner_spec = spec.tightened(1e-2);
    let angular = |r: f64| -> (f64, f64) {
        if r == 0.0 {
            return (0.0, 0.0);
        }
        let integrand = |phi: f64| {
            let v = void_geometry::quadrant_void_for_case(
                PolarPoint::new(r, phi),
                a,
                quadrant_case(r, phi, a),
            );
            if v.is_nan() {
                1.0
            } else {
                (-v).exp()
            }
        };
        let q = if r < a / 2.0 {
            integrate_1d(integrand, 0.0, FRAC_PI_2, &inner_spec)
        } else {
            let p1 = void_geometry::phi1_unchecked(r, a);
            let p2 = void_geometry::phi2_unchecked(r, a);
            integrate_1d_breaks(integrand, &dedup_breaks(&[0.0, p1, p2, FRAC_PI_2]), &inner_spec)
        };
        let (v, e) = settle(q);
        (r * v, r * e)
    };

    let mut total = QuadResult {
        value: 0.0,
        err_estimate: 0.0,
        evals: 0,
    };
    if a > 0.0 {
        let q = integrate_1d_nested(angular, &[0.0, a / 2.0], spec)?;
        accumulate(&mut total, q);
    }
    let tail = GaussianTail {
        shift: a,
        coeff: FRAC_PI_4,
        amplitude: FRAC_PI_2,
    };
    let q = integrate_radial_semi_infinite_nested(angular, a / 2.0, tail, spec)?;
    accumulate(&mut total, q);
    Ok(MomentResult::from_quad(location, 1, total))
}

fn quadrant_case(r: f64, phi: f64, a: f64) -> void_geometry::VoidCase {
    use void_geometry::VoidCase;
    if r < a / 2.0 {
        VoidCase::Q3Small
    } else if phi < void_geometry::phi1_unchecked(r, a) {
        VoidCase::Q1
    } else if phi < void_geometry::phi2_unchecked(r, a) {
        VoidCase::Q2
    } else {
        VoidCase::Q3
    }
}

/// Mean cell size with the seed at distance `h` from the boundary of a half-plane.
///
/// Angles in `[π/2, π]` mirror those in `[0, π/2]`, hence the factor 2. The radial
/// envelope is the half-disk bound `exp(−π(r−h)²/2)`.
pub fn mean_halfplane(h: f64, spec: &QuadSpec) -> Result<MomentResult> {
    check_offset(h, "half-plane offset")?;
    spec.validate()?;
    let inner_spec = spec.tightened(1e-2);
    let angular = |r: f64| -> (f64, f64) {
        if r == 0.0 {
            return (0.0, 0.0);
        }
        let small = r <= h / 2.0;
        let p0 = void_geometry::phi0_unchecked(r, h);
        let integrand = |phi: f64| {
            use void_geometry::VoidCase;
            let case = if small || phi < p0 {
                VoidCase::H1
            } else {
                VoidCase::H2
            };
            let v = void_geometry::halfplane_void_for_case(PolarPoint::new(r, phi), h, case);
            if v.is_nan() {
                1.0
            } else {
                (-v).exp()
            }
        };
        let breaks = if small {
            vec![0.0, FRAC_PI_2]
        } else {
            dedup_breaks(&[0.0, p0, FRAC_PI_2])
        };
        let (v, e) = settle(integrate_1d_breaks(integrand, &breaks, &inner_spec));
        (2.0 * r * v, 2.0 * r * e)
    };

    let mut total = QuadResult {
        value: 0.0,
        err_estimate: 0.0,
        evals: 0,
    };
    if h > 0.0 {
        let q = integrate_1d_nested(angular, &[0.0, h / 2.0], spec)?;
        accumulate(&mut total, q);
    }
    let tail = GaussianTail {
        shift: h,
        coeff: FRAC_PI_2,
        amplitude: PI,
    };
    let q = integrate_radial_semi_infinite_nested(angular, h / 2.0, tail, spec)?;
    accumulate(&mut total, q);
    let location = SeedLocation::HalfPlaneOffset { h };
    Ok(MomentResult::from_quad(location, 1, total))
}

fn dedup_breaks(points: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(points.len());
    for &p in points {
        match out.last() {
            Some(&last) if p <= last + 1e-14 => {}
            _ => out.push(p),
        }
    }
    if out.len() == 1 {
        out.push(points[points.len() - 1] + f64::EPSILON);
    }
    out
}

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

fn accumulate(total: &mut QuadResult, q: QuadResult) {
    total.value += q.value;
    total.err_estimate += q.err_estimate;
    total.evals += q.evals;
}

/// Upper bound on the quadrant mean,
/// `exp(−πa²/4) − erfc(a√π/2) − (π/4) M₁(2a²) + mean_corner`.
pub fn upper_bound_mean_quadrant(a: f64) -> Result<MomentResult> {
    check_offset(a, "corner offset")?;
    let value = (-PI * a * a / 4.0).exp() - erfc(a * PI.sqrt() / 2.0)
        - FRAC_PI_4 * struve_m1(2.0 * a * a)?
        + mean_corner().value;
    Ok(MomentResult {
        err_estimate: 1e-12,
        ..MomentResult::exact(SeedLocation::QuadrantBoundary { a }, 1, value, Method::BoundUpper)
    })
}

/// Lower bound on the quadrant mean from ignoring both boundaries, `(1 + erf(a√π))/4`.
pub fn lower_bound_mean_quadrant(a: f64) -> Result<MomentResult> {
    check_offset(a, "corner offset")?;
    let value = 0.25 * (1.0 + erf(a * PI.sqrt()));
    Ok(MomentResult::exact(
        SeedLocation::QuadrantBoundary { a },
        1,
        value,
        Method::BoundLower,
    ))
}

/// Lower bound on the half-plane mean that exceeds 1 for seeds close to the boundary:
///
/// `1 − e^{−πh²}/2 + (E₁(10πh²/3) − E₁(5πh²/6) + E₁(πh²/2) − E₁(2πh²)) / 2`.
///
/// At `h = 0` the exponential integrals diverge; the trivial bound is returned instead.
pub fn lower_bound_mean_halfplane(h: f64) -> Result<MomentResult> {
    check_offset(h, "half-plane offset")?;
    if h == 0.0 {
        return trivial_lower_bound_mean_halfplane(h);
    }
    let s = PI * h * h;
    let value = 1.0 - 0.5 * (-s).exp()
        + 0.5
            * (expint_upper(10.0 * s / 3.0)? - expint_upper(5.0 * s / 6.0)?
                + expint_upper(s / 2.0)?
                - expint_upper(2.0 * s)?);
    Ok(MomentResult {
        err_estimate: 1e-12,
        ..MomentResult::exact(SeedLocation::HalfPlaneOffset { h }, 1, value, Method::BoundLower)
    })
}

/// Lower bound on the half-plane mean from ignoring the boundary, `(1 + erf(h√π))/2`.
pub fn trivial_lower_bound_mean_halfplane(h: f64) -> Result<MomentResult> {
    check_offset(h, "half-plane offset")?;
    let value = 0.5 * (1.0 + erf(h * PI.sqrt()));
    Ok(MomentResult::exact(
        SeedLocation::HalfPlaneOffset { h },
        1,
        value,
        Method::BoundLower,
    ))
}

/// Second moment of the cell size with the seed at the corner.
pub fn second_moment_corner(spec: &QuadSpec) -> Result<MomentResult> {
    spec.validate()?;
    let both = IteratedRegion {
        theta: (0.0, FRAC_PI_2),
        w1: |t: f64| (t - FRAC_PI_2, t),
        w2: |t: f64, w1: f64| (-w1, FRAC_PI_2 - t),
    };
    let below = IteratedRegion {
        theta: (-FRAC_PI_2, 0.0),
        w1: |t: f64| (-FRAC_PI_2, t),
        w2: |_t: f64, w1: f64| (-w1, FRAC_PI_2),
    };
    let part_spec = spec.tightened(0.5);
    let q1 = integrate_3d_iterated(
        |t, w1, w2| pair_weight(w1, w2, corner_void_unchecked(CornerRegion::BothTruncated, t, w1, w2)),
        &both,
        &part_spec,
    )?;
    let q2 = integrate_3d_iterated(
        |t, w1, w2| 2.0 * pair_weight(w1, w2, corner_void_unchecked(CornerRegion::ThetaBelow, t, w1, w2)),
        &below,
        &part_spec,
    )?;
    Ok(MomentResult::from_quad(SeedLocation::Corner, 2, sum_quads(&[q1, q2])))
}

/// Second moment of the cell size with the seed on the boundary of a half-plane.
pub fn second_moment_edge(spec: &QuadSpec) -> Result<MomentResult> {
    spec.validate()?;
    let part_spec = spec.tightened(0.25);
    let both_right = IteratedRegion {
        theta: (0.0, FRAC_PI_2),
        w1: |t: f64| (t - FRAC_PI_2, t),
        w2: |t: f64, w1: f64| (-w1, FRAC_PI_2 - t),
    };
    let straddle = IteratedRegion {
        theta: (0.0, FRAC_PI_2),
        w1: |t: f64| (t - FRAC_PI_2, t),
        w2: |t: f64, _w1: f64| (FRAC_PI_2 - t, FRAC_PI_2),
    };
    let both_left = IteratedRegion {
        theta: (0.0, FRAC_PI_2),
        w1: |t: f64| (-FRAC_PI_2, t - FRAC_PI_2),
        w2: |_t: f64, w1: f64| (-w1, FRAC_PI_2),
    };
    let below = IteratedRegion {
        theta: (-FRAC_PI_2, 0.0),
        w1: |t: f64| (-FRAC_PI_2, t),
        w2: |_t: f64, w1: f64| (-w1, FRAC_PI_2),
    };
    let term = |region: EdgeRegion| {
        move |t: f64, w1: f64, w2: f64| 2.0 * pair_weight(w1, w2, edge_void_unchecked(region, t, w1, w2))
    };
    let q1 = integrate_3d_iterated(term(EdgeRegion::BothRight), &both_right, &part_spec)?;
    let q2 = integrate_3d_iterated(term(EdgeRegion::Straddle), &straddle, &part_spec)?;
    let q3 = integrate_3d_iterated(term(EdgeRegion::BothLeft), &both_left, &part_spec)?;
    let q4 = integrate_3d_iterated(term(EdgeRegion::ThetaBelow), &below, &part_spec)?;
    Ok(MomentResult::from_quad(
        SeedLocation::Edge,
        2,
        sum_quads(&[q1, q2, q3, q4]),
    ))
}

/// Second moment of the typical cell in the plane. The integrand does not depend on θ,
/// so the θ integral contributes a factor 2π.
pub fn second_moment_bulk(spec: &QuadSpec) -> Result<MomentResult> {
    spec.validate()?;
    let inner_spec = spec.tightened(1e-2);
    let q = integrate_1d_nested(
        |w1: f64| {
            settle(integrate_1d(
                |w2: f64| pair_weight(w1, w2, bulk_unchecked(w1, w2)),
                -w1,
                FRAC_PI_2,
                &inner_spec,
            ))
        },
        &[-FRAC_PI_2, FRAC_PI_2],
        spec,
    )?;
    let scale = 2.0 * PI;
    let q = QuadResult {
        value: scale * q.value,
        err_estimate: scale * q.err_estimate,
        evals: q.evals,
    };
    Ok(MomentResult::from_quad(SeedLocation::Bulk, 2, q))
}

// f(ω₁, ω₂) / V², zero where the points are collinear with S₀.
fn pair_weight(w1: f64, w2: f64, v: f64) -> f64 {
    if !(w1 + w2 > 0.0) || v <= 0.0 {
        return 0.0;
    }
    jacobian_unchecked(w1, w2) / (v * v)
}

fn sum_quads(parts: &[QuadResult]) -> QuadResult {
    let mut total = QuadResult {
        value: 0.0,
        err_estimate: 0.0,
        evals: 0,
    };
    for &q in parts {
        accumulate(&mut total, q);
    }
    total
}

/// Match a Gamma distribution to the first two moments: `k = m²/var`, `ν = m/k`.
pub fn fit_gamma(mean: f64, second_moment: f64) -> Result<GammaParams> {
    if !(mean > 0.0 && mean.is_finite()) {
        return domain(format!("mean must be positive, got {mean}"));
    }
    let var = second_moment - mean * mean;
    if !(var > 0.0 && var.is_finite()) {
        return domain(format!(
            "variance must be positive, got second moment {second_moment} for mean {mean}"
        ));
    }
    let k = mean * mean / var;
    GammaParams::new(k, mean / k)
}

/// Convert a unit-intensity moment to intensity `lambda`. Lengths scale by `1/√λ`
/// and areas by `1/λ`, so offsets are divided by `√λ`, means by `λ` and second
/// moments by `λ²`.
pub fn rescale_intensity(m: MomentResult, lambda: f64) -> Result<MomentResult> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return domain(format!("intensity must be positive, got {lambda}"));
    }
    let area_scale = lambda.powi(m.order as i32);
    let location = match m.location.offset() {
        Some(off) => m.location.with_offset(off / lambda.sqrt()),
        None => m.location,
    };
    Ok(MomentResult {
        location,
        value: m.value / area_scale,
        err_estimate: m.err_estimate / area_scale,
        ..m
    })
}

/// One row of the Gamma-fit table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitRow {
    pub location: SeedLocation,
    pub mean: MomentResult,
    pub second_moment: MomentResult,
    pub variance: f64,
    pub gamma: GammaParams,
}

/// Mean, variance and Gamma fit at the corner, on the edge and in the bulk, computed at
/// `spec`.
pub fn fit_table(spec: &QuadSpec) -> Result<[FitRow; 3]> {
    let bulk_mean = MomentResult::exact(SeedLocation::Bulk, 1, 1.0, Method::ClosedForm);
    let rows = [
        (mean_corner(), second_moment_corner(spec)?),
        (mean_edge(), second_moment_edge(spec)?),
        (bulk_mean, second_moment_bulk(spec)?),
    ];
    let mut out = Vec::with_capacity(3);
    for (mean, second) in rows {
        let gamma = fit_gamma(mean.value, second.value)?;
        out.push(FitRow {
            location: mean.location,
            mean,
            second_moment: second,
            variance: second.value - mean.value * mean.value,
            gamma,
        });
    }
    Ok([out[0], out[1], out[2]])
}

/// [`fit_table`] at [`QuadSpec::triple`], computed once per process.
pub fn default_fit_table() -> Result<&'static [FitRow; 3]> {
    static TABLE: OnceLock<Result<[FitRow; 3]>> = OnceLock::new();
    TABLE
        .get_or_init(|| fit_table(&QuadSpec::triple()))
        .as_ref()
        .map_err(Clone::clone)
}

/// Fitted Gamma parameters for the corner, edge or bulk.
pub fn fitted_gamma(location: SeedLocation) -> Result<GammaParams> {
    let idx = match location.canonical() {
        SeedLocation::Corner => 0,
        SeedLocation::Edge => 1,
        SeedLocation::Bulk => 2,
        other => {
            return Err(Error::Region(format!(
                "no fitted cell-size distribution for {other:?}; use corner, edge or bulk"
            )))
        }
    };
    Ok(default_fit_table()?[idx].gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_closed_form_and_quadrature_agree() {
        let c = mean_corner();
        assert!((c.value - 0.363_511_598_341_309).abs() < 1e-14);
        let q = mean_corner_quadrature(&QuadSpec::default()).unwrap();
        assert!((c.value - q.value).abs() < 1e-10);
    }

    #[test]
    fn edge_mean_value() {
        let e = mean_edge();
        assert!((e.value - 0.610_815_133_239_278_9).abs() < 1e-12);
        assert!(e.value < 2f64.ln());
    }

    #[test]
    fn quadrant_mean_reference_values() {
        let spec = QuadSpec::default();
        for &(a, expect) in &[(0.0, 0.363_511_6), (1.0, 0.657_244), (2.0, 0.629_457)] {
            let m = mean_quadrant(a, &spec).unwrap();
            assert!((m.value - expect).abs() < 2e-6, "a={a}: {}", m.value);
        }
    }

    #[test]
    fn halfplane_at_zero_is_edge() {
        let m = mean_halfplane(0.0, &QuadSpec::default()).unwrap();
        assert!((m.value - mean_edge().value).abs() < 1e-7);
        let m1 = mean_halfplane(1.0, &QuadSpec::default()).unwrap();
        assert!(m1.value > 1.0);
    }

    #[test]
    fn bounds_at_zero_and_infinity() {
        let u0 = upper_bound_mean_quadrant(0.0).unwrap().value;
        assert!((u0 - mean_corner().value).abs() < 1e-14);
        let u50 = upper_bound_mean_quadrant(50.0).unwrap().value;
        assert!((u50 - 0.863_511_598_341_309).abs() < 1e-5);
        assert_eq!(lower_bound_mean_quadrant(0.0).unwrap().value, 0.25);
        assert!((lower_bound_mean_quadrant(10.0).unwrap().value - 0.5).abs() < 1e-15);
        assert_eq!(lower_bound_mean_halfplane(0.0).unwrap().value, 0.5);
        assert!(lower_bound_mean_halfplane(1.0).unwrap().value > 1.0);
        assert!((lower_bound_mean_halfplane(20.0).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_fit_round_trip() {
        let g = fit_gamma(0.5, 0.4).unwrap();
        assert!((g.mean() - 0.5).abs() < 1e-15);
        assert!((g.variance() - 0.15).abs() < 1e-15);
        assert!(fit_gamma(1.0, 1.0).is_err());
        assert!(fit_gamma(-1.0, 2.0).is_err());
    }

    #[test]
    fn rescaling_rules() {
        let c = mean_corner();
        assert_eq!(rescale_intensity(c, 1.0).unwrap(), c);
        let r = rescale_intensity(c, 4.0).unwrap();
        assert!((r.value - c.value / 4.0).abs() < 1e-16);
        let q = MomentResult::exact(SeedLocation::QuadrantBoundary { a: 2.0 }, 2, 1.0, Method::Quadrature);
        let r = rescale_intensity(q, 4.0).unwrap();
        assert_eq!(r.location, SeedLocation::QuadrantBoundary { a: 1.0 });
        assert_eq!(r.value, 1.0 / 16.0);
        assert!(rescale_intensity(q, 0.0).is_err());
    }

    #[test]
    fn fitted_gamma_rejects_offsets() {
        assert!(matches!(
            fitted_gamma(SeedLocation::QuadrantBoundary { a: 1.0 }),
            Err(Error::Region(_))
        ));
    }
}
