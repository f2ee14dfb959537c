//! Void areas: the part of the domain covered by the disk centred at a point P whose
//! radius is the distance from P to the seed S₀. P belongs to the cell of S₀ exactly
//! when its void holds no other seed, so `exp(−void)` is the coverage probability at
//! unit intensity.
//!
//! Two families are provided:
//!
//! - single-point voids in a quadrant (seed on the x-axis at distance `a` from the
//!   corner) and in a half-plane (seed at height `h` above the boundary), in polar
//!   coordinates around the corner / boundary foot point;
//! - normalized two-point voids for seeds at the corner, on the edge and in the bulk,
//!   in the `(θ, ω₁, ω₂)` coordinates where both points lie on a line at unit distance
//!   from S₀.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};

// Relative distance below which P is taken to coincide with the seed; polar round-off
// alone puts P about 1e-16 away.
const COINCIDENCE_EPS: f64 = 1e-13;

/// Point in polar coordinates around the corner (quadrant) or the boundary foot point
/// (half-plane).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub r: f64,
    pub phi: f64,
}

impl PolarPoint {
    pub fn new(r: f64, phi: f64) -> Self {
        Self { r, phi }
    }

    pub fn x(&self) -> f64 {
        self.r * self.phi.cos()
    }

    pub fn y(&self) -> f64 {
        self.r * self.phi.sin()
    }
}

/// Where the seed S₀ sits relative to the boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeedLocation {
    /// On a quadrant boundary at distance `a` from the corner.
    QuadrantBoundary { a: f64 },
    /// At distance `h` from the boundary of a half-plane.
    HalfPlaneOffset { h: f64 },
    Corner,
    Edge,
    Bulk,
}

impl SeedLocation {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SeedLocation::QuadrantBoundary { a } if !(a >= 0.0 && a.is_finite()) => {
                domain(format!("corner offset must be finite and >= 0, got {a}"))
            }
            SeedLocation::HalfPlaneOffset { h } if !(h >= 0.0 && h.is_finite()) => {
                domain(format!("half-plane offset must be finite and >= 0, got {h}"))
            }
            _ => Ok(()),
        }
    }

    /// Maps `QuadrantBoundary{0}` to `Corner` and `HalfPlaneOffset{0}` to `Edge`.
    pub fn canonical(self) -> Self {
        match self {
            SeedLocation::QuadrantBoundary { a } if a == 0.0 => SeedLocation::Corner,
            SeedLocation::HalfPlaneOffset { h } if h == 0.0 => SeedLocation::Edge,
            other => other,
        }
    }

    /// Offset from the nearest boundary feature, if the location carries one.
    pub fn offset(&self) -> Option<f64> {
        match *self {
            SeedLocation::QuadrantBoundary { a } => Some(a),
            SeedLocation::HalfPlaneOffset { h } => Some(h),
            SeedLocation::Corner | SeedLocation::Edge => Some(0.0),
            SeedLocation::Bulk => None,
        }
    }

    pub fn with_offset(self, offset: f64) -> Self {
        match self {
            SeedLocation::QuadrantBoundary { .. } => SeedLocation::QuadrantBoundary { a: offset },
            SeedLocation::HalfPlaneOffset { .. } => SeedLocation::HalfPlaneOffset { h: offset },
            other => other,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SeedLocation::QuadrantBoundary { .. } => "quadrant",
            SeedLocation::HalfPlaneOffset { .. } => "halfplane",
            SeedLocation::Corner => "corner",
            SeedLocation::Edge => "edge",
            SeedLocation::Bulk => "bulk",
        }
    }
}

/// Which closed form describes a single-point void.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VoidCase {
    /// Quadrant, cut by the x-axis only.
    Q1,
    /// Quadrant, cut by both axes, corner outside the disk.
    Q2,
    /// Quadrant, corner inside the disk, `r >= a/2`.
    Q3,
    /// Quadrant, `r < a/2` (the corner is always inside).
    Q3Small,
    /// Half-plane, disk cut by the boundary.
    H1,
    /// Half-plane, disk entirely inside.
    H2,
    /// Half-plane, `r <= h/2` (always cut).
    HSmall,
}

/// Angle at which the void of P becomes tangent to the y-axis.
pub fn phi1(r: f64, a: f64) -> Result<f64> {
    check_radial(r, a)?;
    if a == 0.0 {
        return Ok(0.0);
    }
    if r < a / 2.0 {
        return domain(format!("phi1 requires r >= a/2, got r={r}, a={a}"));
    }
    Ok(phi1_unchecked(r, a))
}

/// Angle at which the void of P passes through the corner.
pub fn phi2(r: f64, a: f64) -> Result<f64> {
    check_radial(r, a)?;
    if a == 0.0 {
        return Ok(FRAC_PI_2);
    }
    if r < a / 2.0 {
        return domain(format!("phi2 requires r >= a/2, got r={r}, a={a}"));
    }
    Ok(phi2_unchecked(r, a))
}

fn check_radial(r: f64, a: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) || !(a >= 0.0 && a.is_finite()) {
        return domain(format!("need finite r >= 0 and a >= 0, got r={r}, a={a}"));
    }
    Ok(())
}

pub(crate) fn phi1_unchecked(r: f64, a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    clamped_acos((-a + (2.0 * a * a + r * r).sqrt()) / r)
}

pub(crate) fn phi2_unchecked(r: f64, a: f64) -> f64 {
    if a == 0.0 {
        return FRAC_PI_2;
    }
    clamped_acos(a / (2.0 * r))
}

/// Angle at which the void of P (half-plane, seed at height h) touches the boundary.
pub fn phi0(r: f64, h: f64) -> Result<f64> {
    check_radial(r, h)?;
    if r == 0.0 {
        return domain("phi0 requires r > 0");
    }
    Ok(phi0_unchecked(r, h))
}

pub(crate) fn phi0_unchecked(r: f64, h: f64) -> f64 {
    clamped_asin((-h + (2.0 * h * h + r * r).sqrt()) / r)
}

fn clamped_acos(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

fn clamped_asin(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).asin()
}

fn check_quadrant_point(p: PolarPoint, a: f64) -> Result<()> {
    if !(p.r >= 0.0 && p.r.is_finite()) || !(0.0..=FRAC_PI_2).contains(&p.phi) {
        return domain(format!("point {p:?} is not in the quadrant"));
    }
    if !(a >= 0.0 && a.is_finite()) {
        return domain(format!("corner offset must be >= 0, got {a}"));
    }
    Ok(())
}

/// Case split for the quadrant void of `p` with the seed at distance `a` from the corner.
///
/// Angular ranges are half-open: `[0, φ₁)`, `[φ₁, φ₂)`, `[φ₂, π/2]`.
pub fn quadrant_void_case(p: PolarPoint, a: f64) -> Result<VoidCase> {
    check_quadrant_point(p, a)?;
    Ok(quadrant_case_unchecked(p, a))
}

fn quadrant_case_unchecked(p: PolarPoint, a: f64) -> VoidCase {
    if p.r < a / 2.0 {
        return VoidCase::Q3Small;
    }
    if p.phi < phi1_unchecked(p.r, a) {
        VoidCase::Q1
    } else if p.phi < phi2_unchecked(p.r, a) {
        VoidCase::Q2
    } else {
        VoidCase::Q3
    }
}

/// Area of `D(P, |P − S₀|) ∩ ℝ²₊` for the seed at `(a, 0)`.
pub fn void_area_quadrant(p: PolarPoint, a: f64) -> Result<f64> {
    check_quadrant_point(p, a)?;
    let case = quadrant_case_unchecked(p, a);
    let v = quadrant_void_for_case(p, a, case);
    if v.is_nan() {
        return Err(Error::Degenerate(format!(
            "point {p:?} coincides with the seed"
        )));
    }
    Ok(v)
}

/// Evaluate one specific quadrant closed form, regardless of which case applies.
/// Returns NaN when P coincides with the seed.
pub fn quadrant_void_for_case(p: PolarPoint, a: f64, case: VoidCase) -> f64 {
    let (sin_phi, cos_phi) = p.phi.sin_cos();
    let x = p.r * cos_phi;
    let y = p.r * sin_phi;
    let dx = x - a;
    let d = dx.hypot(y);
    if d <= COINCIDENCE_EPS * (p.r + a) {
        return f64::NAN;
    }
    let d2 = d * d;
    // ω: half-angle subtended by the chord on the x-axis, ω₂: on the y-axis.
    let omega = clamped_acos(y / d);
    let omega2 = clamped_acos(x / d);
    match case {
        VoidCase::Q1 => PI * d2 - omega * d2 + y * dx.abs(),
        VoidCase::Q2 => PI * d2 - (omega + omega2) * d2 + y * dx.abs() + x * d * omega2.sin(),
        VoidCase::Q3 | VoidCase::Q3Small => {
            0.5 * y * (x + a) + 0.5 * x * d * omega2.sin() + 0.5 * (1.5 * PI - omega2 - omega) * d2
        }
        _ => f64::NAN,
    }
}

fn check_halfplane_point(p: PolarPoint, h: f64) -> Result<()> {
    if !(p.r >= 0.0 && p.r.is_finite()) || !(0.0..=PI).contains(&p.phi) {
        return domain(format!("point {p:?} is not in the half-plane"));
    }
    if !(h >= 0.0 && h.is_finite()) {
        return domain(format!("half-plane offset must be >= 0, got {h}"));
    }
    Ok(())
}

/// Case split for the half-plane void; angles past π/2 are mirrored.
pub fn halfplane_void_case(p: PolarPoint, h: f64) -> Result<VoidCase> {
    check_halfplane_point(p, h)?;
    Ok(halfplane_case_unchecked(p, h))
}

fn halfplane_case_unchecked(p: PolarPoint, h: f64) -> VoidCase {
    let phi = mirror_to_right(p.phi);
    if p.r <= h / 2.0 {
        VoidCase::HSmall
    } else if phi < phi0_unchecked(p.r, h) {
        VoidCase::H1
    } else {
        VoidCase::H2
    }
}

fn mirror_to_right(phi: f64) -> f64 {
    if phi > FRAC_PI_2 {
        PI - phi
    } else {
        phi
    }
}

/// Area of `D(P, |P − S₀|) ∩ {y >= 0}` for the seed at `(0, h)`.
pub fn void_area_halfplane(p: PolarPoint, h: f64) -> Result<f64> {
    check_halfplane_point(p, h)?;
    let case = halfplane_case_unchecked(p, h);
    let v = halfplane_void_for_case(p, h, case);
    if v.is_nan() {
        return Err(Error::Degenerate(format!(
            "point {p:?} coincides with the seed"
        )));
    }
    Ok(v)
}

/// Evaluate one half-plane closed form. Returns NaN when P coincides with the seed.
pub fn halfplane_void_for_case(p: PolarPoint, h: f64, case: VoidCase) -> f64 {
    let (sin_phi, cos_phi) = p.phi.sin_cos();
    let x = p.r * cos_phi;
    let y = p.r * sin_phi;
    let d = x.hypot(y - h);
    if d <= COINCIDENCE_EPS * (p.r + h) {
        return f64::NAN;
    }
    let d2 = d * d;
    match case {
        VoidCase::H1 | VoidCase::HSmall => {
            let omega = clamped_acos(y / d);
            (PI - omega + 0.5 * (2.0 * omega).sin()) * d2
        }
        VoidCase::H2 => PI * d2,
        _ => f64::NAN,
    }
}

/// Jacobian factor `sin(ω₁+ω₂) / (cos³ω₁ cos³ω₂)` of the two-point change of variables.
pub fn jacobian_factor(w1: f64, w2: f64) -> Result<f64> {
    check_open_angle(w1)?;
    check_open_angle(w2)?;
    if !(w1 + w2 > 0.0) {
        return domain(format!(
            "points collinear with or mis-ordered around the seed: w1 + w2 = {}",
            w1 + w2
        ));
    }
    Ok(jacobian_unchecked(w1, w2))
}

pub(crate) fn jacobian_unchecked(w1: f64, w2: f64) -> f64 {
    let c1 = w1.cos();
    let c2 = w2.cos();
    (w1 + w2).sin() / (c1 * c1 * c1 * c2 * c2 * c2)
}

fn check_open_angle(w: f64) -> Result<()> {
    if !(w.abs() < FRAC_PI_2) {
        return domain(format!("angle must lie in (-pi/2, pi/2), got {w}"));
    }
    Ok(())
}

// Normalized void of one point whose own angle is φ = θ ± ω, as the building blocks
// of the two-point voids.
fn full_term(w: f64) -> f64 {
    (PI + 2.0 * w + (2.0 * w).sin()) / (2.0 * w.cos().powi(2))
}

fn corner_first_term(theta: f64, w1: f64) -> f64 {
    (2.0 * theta + (2.0 * (theta - w1)).sin() + (2.0 * w1).sin()) / (2.0 * w1.cos().powi(2))
}

/// Normalized void of two points in the bulk.
pub fn normalized_void_bulk(w1: f64, w2: f64) -> Result<f64> {
    check_open_angle(w1)?;
    check_open_angle(w2)?;
    Ok(bulk_unchecked(w1, w2))
}

pub(crate) fn bulk_unchecked(w1: f64, w2: f64) -> f64 {
    full_term(w1) + full_term(w2)
}

/// Integration regions for the seed at the corner of the quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerRegion {
    /// `0 <= θ < π/2`: both voids truncated by the axes.
    BothTruncated,
    /// `−π/2 <= θ < 0`: the void of P₂ covers the one of P₁.
    ThetaBelow,
    /// `π/2 <= θ <= π`: the void of P₁ covers the one of P₂.
    ThetaAbove,
}

/// Region of `(θ, ω₁, ω₂)` for the corner seed, if the two points lie in the quadrant.
pub fn corner_region(theta: f64, w1: f64, w2: f64) -> Option<CornerRegion> {
    if !(w1.abs() < FRAC_PI_2 && w2.abs() < FRAC_PI_2) {
        return None;
    }
    let in_range = |x: f64, lo: f64, hi: f64| x >= lo && x < hi;
    if in_range(theta, 0.0, FRAC_PI_2)
        && in_range(w1, theta - FRAC_PI_2, theta)
        && in_range(w2, -w1, FRAC_PI_2 - theta)
    {
        Some(CornerRegion::BothTruncated)
    } else if in_range(theta, -FRAC_PI_2, 0.0) && w1 <= theta && w2 >= -w1 {
        Some(CornerRegion::ThetaBelow)
    } else if (FRAC_PI_2..=PI).contains(&theta)
        && w1 >= theta - FRAC_PI_2
        && w2 >= -w1
        && w2 <= FRAC_PI_2 - theta
    {
        Some(CornerRegion::ThetaAbove)
    } else {
        None
    }
}

/// Normalized two-point void in the quadrant with the seed at the corner.
pub fn normalized_void_corner(theta: f64, w1: f64, w2: f64) -> Result<f64> {
    let region = corner_region(theta, w1, w2).ok_or_else(|| {
        Error::Region(format!("(theta, w1, w2) = ({theta}, {w1}, {w2}) is outside the quadrant regions"))
    })?;
    Ok(corner_void_unchecked(region, theta, w1, w2))
}

pub(crate) fn corner_void_unchecked(region: CornerRegion, theta: f64, w1: f64, w2: f64) -> f64 {
    match region {
        CornerRegion::BothTruncated => {
            corner_first_term(theta, w1)
                + (PI - 2.0 * theta + (2.0 * (theta + w2)).sin() + (2.0 * w2).sin())
                    / (2.0 * w2.cos().powi(2))
        }
        CornerRegion::ThetaBelow => {
            (PI + 2.0 * (2.0 * (theta + w2)).sin()) / (2.0 * w2.cos().powi(2))
        }
        CornerRegion::ThetaAbove => {
            (PI + 2.0 * (2.0 * (theta - w1)).sin()) / (2.0 * w1.cos().powi(2))
        }
    }
}

/// Integration regions for the seed on the boundary of the half-plane, `θ ∈ [−π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRegion {
    /// Both points in the upper-right quadrant.
    BothRight,
    /// P₁ upper-right, P₂ upper-left.
    Straddle,
    /// Both points in the upper-left quadrant.
    BothLeft,
    /// `θ < 0`: only P₂ matters.
    ThetaBelow,
}

pub fn edge_region(theta: f64, w1: f64, w2: f64) -> Option<EdgeRegion> {
    if !(w1.abs() < FRAC_PI_2 && w2.abs() < FRAC_PI_2) || w2 < -w1 {
        return None;
    }
    if (0.0..=FRAC_PI_2).contains(&theta) {
        if w1 > theta {
            None
        } else if w1 >= theta - FRAC_PI_2 {
            if w2 < FRAC_PI_2 - theta {
                Some(EdgeRegion::BothRight)
            } else {
                Some(EdgeRegion::Straddle)
            }
        } else {
            Some(EdgeRegion::BothLeft)
        }
    } else if (-FRAC_PI_2..0.0).contains(&theta) && w1 <= theta {
        Some(EdgeRegion::ThetaBelow)
    } else {
        None
    }
}

/// Normalized two-point void in the half-plane with the seed on the boundary.
pub fn normalized_void_edge(theta: f64, w1: f64, w2: f64) -> Result<f64> {
    let region = edge_region(theta, w1, w2).ok_or_else(|| {
        Error::Region(format!("(theta, w1, w2) = ({theta}, {w1}, {w2}) is outside the half-plane regions"))
    })?;
    Ok(edge_void_unchecked(region, theta, w1, w2))
}

fn edge_left_term(theta: f64, w2: f64) -> f64 {
    (2.0 * PI - 2.0 * theta + (2.0 * w2).sin() - (2.0 * (theta + w2)).sin())
        / (2.0 * w2.cos().powi(2))
}

pub(crate) fn edge_void_unchecked(region: EdgeRegion, theta: f64, w1: f64, w2: f64) -> f64 {
    match region {
        EdgeRegion::BothRight => corner_first_term(theta, w1) + full_term(w2),
        EdgeRegion::Straddle => corner_first_term(theta, w1) + edge_left_term(theta, w2),
        EdgeRegion::BothLeft => full_term(w1) + edge_left_term(theta, w2),
        EdgeRegion::ThetaBelow => {
            (PI + 2.0 * theta + 2.0 * w2 + (2.0 * (theta + w2)).sin()) / (2.0 * w2.cos().powi(2))
        }
    }
}

/// Cartesian positions of the two points for `z = 1`, seed at the origin.
pub fn two_point_positions(theta: f64, w1: f64, w2: f64) -> [(f64, f64); 2] {
    let r1 = 1.0 / w1.cos();
    let r2 = 1.0 / w2.cos();
    let p1 = theta - w1;
    let p2 = theta + w2;
    [(r1 * p1.cos(), r1 * p1.sin()), (r2 * p2.cos(), r2 * p2.sin())]
}
