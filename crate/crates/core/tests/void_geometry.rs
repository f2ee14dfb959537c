use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vbl_core::void_geometry::*;

struct Estimate {
    area: f64,
    /// Standard error of a plain Monte Carlo sampler with the same number of points.
    se: f64,
}

/// Stratified area sampler: one jittered point per cell of an `n × n` grid over the box.
fn sample_area<F: Fn(f64, f64) -> bool>(
    inside: F,
    (x0, x1, y0, y1): (f64, f64, f64, f64),
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Estimate {
    let hx = (x1 - x0) / n as f64;
    let hy = (y1 - y0) / n as f64;
    let mut hits = 0u64;
    for i in 0..n {
        for j in 0..n {
            let x = x0 + (i as f64 + rng.gen::<f64>()) * hx;
            let y = y0 + (j as f64 + rng.gen::<f64>()) * hy;
            if inside(x, y) {
                hits += 1;
            }
        }
    }
    let total = (n * n) as f64;
    let frac = hits as f64 / total;
    let box_area = (x1 - x0) * (y1 - y0);
    Estimate {
        area: frac * box_area,
        se: box_area * (frac * (1.0 - frac) / total).sqrt(),
    }
}

fn disk_box(cx: f64, cy: f64, r: f64) -> (f64, f64, f64, f64) {
    (cx - r, cx + r, cy - r, cy + r)
}

fn quadrant_oracle(p: PolarPoint, a: f64, n: usize, rng: &mut ChaCha8Rng) -> Estimate {
    let (px, py) = (p.x(), p.y());
    let d2 = (px - a).powi(2) + py * py;
    let (_, x1, _, y1) = disk_box(px, py, d2.sqrt());
    let inside = |x: f64, y: f64| (x - px).powi(2) + (y - py).powi(2) <= d2;
    sample_area(inside, (0.0, x1.max(0.0), 0.0, y1.max(0.0)), n, rng)
}

fn halfplane_oracle(p: PolarPoint, h: f64, n: usize, rng: &mut ChaCha8Rng) -> Estimate {
    let (px, py) = (p.x(), p.y());
    let d2 = px * px + (py - h).powi(2);
    let (x0, x1, _, y1) = disk_box(px, py, d2.sqrt());
    let inside = |x: f64, y: f64| (x - px).powi(2) + (y - py).powi(2) <= d2;
    sample_area(inside, (x0, x1, 0.0, y1.max(0.0)), n, rng)
}

#[derive(Clone, Copy)]
enum Domain {
    Quadrant,
    UpperHalf,
    Plane,
}

/// Area of the union of the disks around both points (radius = distance to the origin),
/// restricted to the domain.
fn union_oracle(theta: f64, w1: f64, w2: f64, dom: Domain, rng: &mut ChaCha8Rng) -> Estimate {
    let pts = two_point_positions(theta, w1, w2);
    let radii2: Vec<f64> = pts.iter().map(|&(x, y)| x * x + y * y).collect();
    let mut bx = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (&(x, y), &r2) in pts.iter().zip(&radii2) {
        let r = r2.sqrt();
        bx = (bx.0.min(x - r), bx.1.max(x + r), bx.2.min(y - r), bx.3.max(y + r));
    }
    match dom {
        Domain::Quadrant => {
            bx.0 = bx.0.max(0.0);
            bx.2 = bx.2.max(0.0);
        }
        Domain::UpperHalf => bx.2 = bx.2.max(0.0),
        Domain::Plane => {}
    }
    let inside = |x: f64, y: f64| {
        pts.iter()
            .zip(&radii2)
            .any(|(&(px, py), &r2)| (x - px).powi(2) + (y - py).powi(2) <= r2)
    };
    sample_area(inside, bx, 500, rng)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn quadrant_reference_point_against_dense_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = PolarPoint::new(1.0, FRAC_PI_4);
    let v = void_area_quadrant(p, 1.0).unwrap();
    let est = quadrant_oracle(p, 1.0, 3163, &mut rng);
    assert!(rel(v, est.area) < 1e-3, "{v} vs {}", est.area);
}

#[test]
fn halfplane_reference_point_against_dense_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = PolarPoint::new(0.5, FRAC_PI_3);
    let v = void_area_halfplane(p, 1.0).unwrap();
    let est = halfplane_oracle(p, 1.0, 3163, &mut rng);
    assert!(rel(v, est.area) < 1e-3, "{v} vs {}", est.area);
}

#[test]
fn quadrant_closed_forms_match_sampler_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 1000 {
        let p = PolarPoint::new(rng.gen_range(0.0..4.0), rng.gen_range(0.0..=FRAC_PI_2));
        let a = rng.gen_range(0.0..3.0);
        let d = (p.x() - a).hypot(p.y());
        if d < 0.05 {
            continue;
        }
        let v = void_area_quadrant(p, a).unwrap();
        let est = quadrant_oracle(p, a, 200, &mut rng);
        assert!(
            (v - est.area).abs() <= 3.0 * est.se,
            "P={p:?} a={a}: closed {v}, sampled {} ± {}",
            est.area,
            est.se
        );
        checked += 1;
    }
}

#[test]
fn halfplane_closed_forms_match_sampler_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 1000 {
        let p = PolarPoint::new(rng.gen_range(0.0..4.0), rng.gen_range(0.0..=PI));
        let h = rng.gen_range(0.0..3.0);
        let d = p.x().hypot(p.y() - h);
        if d < 0.05 {
            continue;
        }
        let v = void_area_halfplane(p, h).unwrap();
        let est = halfplane_oracle(p, h, 200, &mut rng);
        assert!(
            (v - est.area).abs() <= 3.0 * est.se,
            "P={p:?} h={h}: closed {v}, sampled {} ± {}",
            est.area,
            est.se
        );
        checked += 1;
    }
}

#[test]
fn both_signs_of_the_x_offset_are_covered() {
    // Points left and right of the seed in the first case of the quadrant split.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for &(r, phi, a) in &[(0.6, 0.1, 1.0), (1.6, 0.1, 1.0), (2.5, 0.3, 2.0), (1.2, 0.05, 2.0)] {
        let p = PolarPoint::new(r, phi);
        let v = void_area_quadrant(p, a).unwrap();
        let est = quadrant_oracle(p, a, 1000, &mut rng);
        assert!(rel(v, est.area) < 1e-3, "{r} {phi} {a}: {v} vs {}", est.area);
    }
}

#[test]
fn corner_two_point_void_matches_union_sampler() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut per_region = [0usize; 3];
    while per_region.iter().any(|&c| c < 8) {
        let theta = rng.gen_range(-1.4..3.0);
        let w1: f64 = rng.gen_range(-1.2..1.2);
        let w2 = rng.gen_range(-1.2..1.2);
        let Some(region) = corner_region(theta, w1, w2) else {
            continue;
        };
        let idx = region as usize;
        if per_region[idx] >= 8 {
            continue;
        }
        let v = normalized_void_corner(theta, w1, w2).unwrap();
        let est = union_oracle(theta, w1, w2, Domain::Quadrant, &mut rng);
        assert!(
            rel(v, est.area) < 1e-3,
            "{region:?} ({theta}, {w1}, {w2}): {v} vs {}",
            est.area
        );
        per_region[idx] += 1;
    }
}

#[test]
fn edge_two_point_void_matches_union_sampler() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut per_region = [0usize; 4];
    while per_region.iter().any(|&c| c < 8) {
        let theta = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
        let w1: f64 = rng.gen_range(-1.2..1.2);
        let w2 = rng.gen_range(-1.2..1.2);
        let Some(region) = edge_region(theta, w1, w2) else {
            continue;
        };
        let idx = region as usize;
        if per_region[idx] >= 8 {
            continue;
        }
        let v = normalized_void_edge(theta, w1, w2).unwrap();
        let est = union_oracle(theta, w1, w2, Domain::UpperHalf, &mut rng);
        assert!(
            rel(v, est.area) < 1e-3,
            "{region:?} ({theta}, {w1}, {w2}): {v} vs {}",
            est.area
        );
        per_region[idx] += 1;
    }
}

#[test]
fn bulk_two_point_void_matches_union_sampler() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let w1: f64 = rng.gen_range(-1.2..1.2);
        let w2 = rng.gen_range((-w1).max(-1.2f64)..1.2);
        let theta = rng.gen_range(-PI..PI);
        let v = normalized_void_bulk(w1, w2).unwrap();
        let est = union_oracle(theta, w1, w2, Domain::Plane, &mut rng);
        assert!(rel(v, est.area) < 1e-3, "({w1}, {w2}): {v} vs {}", est.area);
    }
}

#[test]
fn quadrant_continuity_across_thresholds_on_a_grid() {
    for i in 1..=20 {
        let a = 0.25 * i as f64;
        for j in 0..20 {
            let r = a / 2.0 + 0.01 + 0.4 * j as f64;
            let p1 = phi1(r, a).unwrap();
            let p2 = phi2(r, a).unwrap();
            let at1 = PolarPoint::new(r, p1);
            let at2 = PolarPoint::new(r, p2);
            let gap1 = quadrant_void_for_case(at1, a, VoidCase::Q1)
                - quadrant_void_for_case(at1, a, VoidCase::Q2);
            let gap2 = quadrant_void_for_case(at2, a, VoidCase::Q2)
                - quadrant_void_for_case(at2, a, VoidCase::Q3);
            assert!(gap1.abs() < 1e-10, "phi1 a={a} r={r}: {gap1}");
            assert!(gap2.abs() < 1e-10, "phi2 a={a} r={r}: {gap2}");
        }
    }
}

#[test]
fn zero_offset_gives_the_corner_integrand() {
    for i in 0..50 {
        let r = 0.1 + 0.1 * i as f64;
        let phi = FRAC_PI_2 * i as f64 / 49.0;
        let v = void_area_quadrant(PolarPoint::new(r, phi), 0.0).unwrap();
        let expect = r * r * (FRAC_PI_2 + (2.0 * phi).sin());
        assert!((v - expect).abs() <= 1e-12 * expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn quadrant_void_is_positive_and_inside_its_disk(
        r in 0.0f64..10.0,
        phi in 0.0f64..=FRAC_PI_2,
        a in 0.0f64..5.0,
    ) {
        let p = PolarPoint::new(r, phi);
        let d2 = (p.x() - a).powi(2) + p.y().powi(2);
        prop_assume!(d2 > 1e-6);
        let v = void_area_quadrant(p, a).unwrap();
        prop_assert!(v > 0.0);
        prop_assert!(v <= PI * d2 * (1.0 + 1e-12), "v={} disk={}", v, PI * d2);
    }

    #[test]
    fn halfplane_void_is_positive_and_inside_its_disk(
        r in 0.0f64..10.0,
        phi in 0.0f64..=PI,
        h in 0.0f64..5.0,
    ) {
        let p = PolarPoint::new(r, phi);
        let d2 = p.x().powi(2) + (p.y() - h).powi(2);
        prop_assume!(d2 > 1e-6);
        let v = void_area_halfplane(p, h).unwrap();
        prop_assert!(v > 0.0);
        prop_assert!(v <= PI * d2 * (1.0 + 1e-12));
    }

    #[test]
    fn bulk_void_is_symmetric(w1 in -1.5f64..1.5, w2 in -1.5f64..1.5) {
        let a = normalized_void_bulk(w1, w2).unwrap();
        let b = normalized_void_bulk(w2, w1).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * a.abs());
        prop_assert!(a > 0.0);
    }
}
