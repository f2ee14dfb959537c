//! Monte Carlo oracle for cell sizes and secure degrees.
//!
//! Each trial draws a Poisson process in the square `[0, L]²`, adds the seed S₀ at a
//! fixed position and computes the exact Voronoi cell of S₀ by clipping the square
//! with perpendicular bisectors. Trial `t` draws from its own ChaCha stream keyed by
//! `(rng_seed, t)`, and trials are collected in index order, so results are identical
//! for any number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }
}

/// Convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    pub vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self {
            vertices: vec![
                Point::new(x0, y0),
                Point::new(x1, y0),
                Point::new(x1, y1),
                Point::new(x0, y1),
            ],
        }
    }

    pub fn square(side: f64) -> Self {
        Self::rectangle(0.0, 0.0, side, side)
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let mut s = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            s += a.x * b.y - b.x * a.y;
        }
        0.5 * s
    }

    /// Whether `p` lies in the closed polygon.
    pub fn contains(&self, p: &Point) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= 0.0
        })
    }

    /// Largest distance from `c` to a vertex.
    pub fn max_dist_from(&self, c: &Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dist2(c))
            .fold(0.0, f64::max)
            .sqrt()
    }

    /// Keep the part where `nx·x + ny·y <= c` (Sutherland-Hodgman, one edge).
    pub fn clip(&mut self, nx: f64, ny: f64, c: f64) {
        let n = self.vertices.len();
        if n == 0 {
            return;
        }
        let side = |p: &Point| nx * p.x + ny * p.y - c;
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let sa = side(&a);
            let sb = side(&b);
            if sa <= 0.0 {
                out.push(a);
            }
            if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
                let t = sa / (sa - sb);
                out.push(Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
            }
        }
        self.vertices = out;
    }

    /// Keep the points at least as close to `s0` as to `s`.
    pub fn clip_bisector(&mut self, s0: &Point, s: &Point) {
        let nx = s.x - s0.x;
        let ny = s.y - s0.y;
        let c = 0.5 * (s.x * s.x + s.y * s.y - s0.x * s0.x - s0.y * s0.y);
        self.clip(nx, ny, c);
    }
}

/// Monte Carlo configuration for cell-size statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub side_l: f64,
    pub intensity: f64,
    pub seed0: Point,
    pub trials: usize,
    pub rng_seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.side_l > 0.0 && self.side_l.is_finite()) {
            return domain(format!("side length must be positive, got {}", self.side_l));
        }
        if !(self.intensity >= 0.0 && self.intensity.is_finite()) {
            return domain(format!("intensity must be >= 0, got {}", self.intensity));
        }
        if self.trials == 0 {
            return domain("trials must be at least 1");
        }
        check_inside(&self.seed0, self.side_l)
    }
}

fn check_inside(p: &Point, side: f64) -> Result<()> {
    if !(0.0..=side).contains(&p.x) || !(0.0..=side).contains(&p.y) {
        return domain(format!(
            "seed ({}, {}) lies outside the square [0, {side}]^2",
            p.x, p.y
        ));
    }
    Ok(())
}

/// Sample statistics of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimStats {
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// `√(variance / trials)`.
    pub std_err_mean: f64,
    /// Large-sample standard error of the variance, `√((m₄ − variance²) / trials)`.
    pub std_err_variance: f64,
    pub trials: usize,
}

impl SimStats {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self {
                mean: f64::NAN,
                variance: f64::NAN,
                std_err_mean: f64::NAN,
                std_err_variance: f64::NAN,
                trials: 0,
            };
        }
        let nf = n as f64;
        let mean = xs.iter().sum::<f64>() / nf;
        let (m2, m4) = xs.iter().fold((0.0, 0.0), |(s2, s4), &x| {
            let d2 = (x - mean) * (x - mean);
            (s2 + d2, s4 + d2 * d2)
        });
        let variance = if n > 1 { m2 / (nf - 1.0) } else { 0.0 };
        let m4 = m4 / nf;
        let biased = m2 / nf;
        Self {
            mean,
            variance,
            std_err_mean: (variance / nf).sqrt(),
            std_err_variance: ((m4 - biased * biased).max(0.0) / nf).sqrt(),
            trials: n,
        }
    }

    /// Sample second moment `variance·(n−1)/n + mean²`.
    pub fn second_moment(&self) -> f64 {
        let n = self.trials as f64;
        self.variance * (n - 1.0) / n + self.mean * self.mean
    }
}

/// Random stream for trial `trial` of a run keyed by `rng_seed`.
pub fn trial_rng(rng_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(trial);
    rng
}

/// Poisson process of the given intensity on `[0, side]²`.
pub fn sample_ppp<R: Rng + ?Sized>(intensity: f64, side: f64, rng: &mut R) -> Vec<Point> {
    sample_ppp_rect(intensity, (0.0, 0.0, side, side), rng)
}

/// Poisson process on the rectangle `(x0, y0, x1, y1)`.
pub fn sample_ppp_rect<R: Rng + ?Sized>(
    intensity: f64,
    rect: (f64, f64, f64, f64),
    rng: &mut R,
) -> Vec<Point> {
    let (x0, y0, x1, y1) = rect;
    let mean = intensity * (x1 - x0) * (y1 - y0);
    if !(mean > 0.0) {
        return Vec::new();
    }
    let count = Poisson::new(mean)
        .expect("positive finite Poisson mean")
        .sample(rng) as usize;
    (0..count)
        .map(|_| Point::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1)))
        .collect()
}

/// Voronoi cell of `seed0` among `others`, restricted to `[0, side]²`.
///
/// Seeds are clipped in order of distance; once a seed is at least twice as far as the
/// farthest vertex its bisector cannot cut the cell, and neither can any later one.
pub fn voronoi_cell(seed0: Point, others: &[Point], side: f64) -> Result<ConvexPolygon> {
    check_inside(&seed0, side)?;
    let mut order: Vec<(f64, Point)> = others.iter().map(|p| (p.dist2(&seed0), *p)).collect();
    if order.iter().any(|(d2, _)| *d2 == 0.0) {
        return Err(Error::Degenerate(format!(
            "another seed coincides with ({}, {})",
            seed0.x, seed0.y
        )));
    }
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cell = ConvexPolygon::square(side);
    let mut reach2 = 4.0 * cell.max_dist_from(&seed0).powi(2);
    for (d2, s) in order {
        if d2 >= reach2 {
            break;
        }
        cell.clip_bisector(&seed0, &s);
        reach2 = 4.0 * cell.max_dist_from(&seed0).powi(2);
    }
    Ok(cell)
}

pub fn voronoi_cell_area(seed0: Point, others: &[Point], side: f64) -> Result<f64> {
    Ok(voronoi_cell(seed0, others, side)?.area())
}

/// Area of every cell of the tessellation of `points` in `[0, side]²`.
pub fn tessellation_areas(points: &[Point], side: f64) -> Result<Vec<f64>> {
    (0..points.len())
        .map(|i| {
            let others: Vec<Point> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| *p)
                .collect();
            voronoi_cell_area(points[i], &others, side)
        })
        .collect()
}

/// Cell area of `cfg.seed0` in each trial, in trial order.
pub fn simulate_cell_areas(cfg: &SimConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.rng_seed, t);
            let pts = sample_ppp(cfg.intensity, cfg.side_l, &mut rng);
            // A draw landing exactly on S₀ has probability zero; treat it as absent.
            let pts: Vec<Point> = pts.into_iter().filter(|p| *p != cfg.seed0).collect();
            voronoi_cell_area(cfg.seed0, &pts, cfg.side_l)
        })
        .collect()
}

pub fn simulate_cell_area(cfg: &SimConfig) -> Result<SimStats> {
    Ok(SimStats::from_samples(&simulate_cell_areas(cfg)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub i: usize,
    pub j: usize,
    pub x: f64,
    pub y: f64,
    pub stats: SimStats,
}

/// Cell statistics for seeds at `(iΔ, jΔ)`, `i, j < n_per_axis`, row-major in `i`.
/// Every position reuses `base.rng_seed`, so neighbouring positions see the same
/// point patterns and their differences are less noisy.
pub fn grid_scan(
    delta: f64,
    n_per_axis: usize,
    trials_per_seed: usize,
    base: &SimConfig,
) -> Result<Vec<GridPoint>> {
    if !(delta > 0.0 && delta.is_finite()) {
        return domain(format!("grid spacing must be positive, got {delta}"));
    }
    if n_per_axis == 0 {
        return domain("grid needs at least one position per axis");
    }
    let mut out = Vec::with_capacity(n_per_axis * n_per_axis);
    for i in 0..n_per_axis {
        for j in 0..n_per_axis {
            let (x, y) = (i as f64 * delta, j as f64 * delta);
            let cfg = SimConfig {
                seed0: Point::new(x, y),
                trials: trials_per_seed,
                ..*base
            };
            out.push(GridPoint {
                i,
                j,
                x,
                y,
                stats: simulate_cell_area(&cfg)?,
            });
        }
    }
    Ok(out)
}

/// Per-trial secure degrees of S₀.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSamples {
    pub in_degree: Vec<u64>,
    pub out_degree: Vec<u64>,
}

impl DegreeSamples {
    pub fn in_pmf(&self) -> Vec<f64> {
        histogram(&self.in_degree)
    }

    pub fn out_pmf(&self) -> Vec<f64> {
        histogram(&self.out_degree)
    }
}

/// Normalized histogram with one bin per value from 0 to the maximum.
pub fn histogram(xs: &[u64]) -> Vec<f64> {
    let max = xs.iter().copied().max().unwrap_or(0) as usize;
    let mut h = vec![0.0; max + 1];
    for &x in xs {
        h[x as usize] += 1.0;
    }
    let n = xs.len().max(1) as f64;
    h.iter_mut().for_each(|v| *v /= n);
    h
}

/// Secure in- and out-degree of S₀ with legitimate users and eavesdroppers drawn as
/// independent Poisson processes on `[0, side]²`.
///
/// The in-degree counts legitimate users inside the cell of S₀ among the
/// eavesdroppers; the out-degree counts those strictly closer to S₀ than its nearest
/// eavesdropper. Legitimate users are only drawn in the square window around S₀ that
/// covers both regions, which leaves the counts' distribution unchanged.
pub fn simulate_secure_degrees(
    lambda_l: f64,
    lambda_e: f64,
    seed0: Point,
    side: f64,
    trials: usize,
    rng_seed: u64,
) -> Result<DegreeSamples> {
    for (name, v) in [("lambda_l", lambda_l), ("lambda_e", lambda_e)] {
        if !(v > 0.0 && v.is_finite()) {
            return domain(format!("{name} must be positive, got {v}"));
        }
    }
    if !(side > 0.0 && side.is_finite()) {
        return domain(format!("side length must be positive, got {side}"));
    }
    if trials == 0 {
        return domain("trials must be at least 1");
    }
    check_inside(&seed0, side)?;
    let pairs: Vec<(u64, u64)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(rng_seed, t);
            let eaves: Vec<Point> = sample_ppp(lambda_e, side, &mut rng)
                .into_iter()
                .filter(|p| *p != seed0)
                .collect();
            let cell = voronoi_cell(seed0, &eaves, side)?;
            let d_e2 = eaves
                .iter()
                .map(|e| e.dist2(&seed0))
                .fold(f64::INFINITY, f64::min);
            let reach = cell.max_dist_from(&seed0).max(d_e2.sqrt()).min(2.0 * side);
            let rect = (
                (seed0.x - reach).max(0.0),
                (seed0.y - reach).max(0.0),
                (seed0.x + reach).min(side),
                (seed0.y + reach).min(side),
            );
            let legit = sample_ppp_rect(lambda_l, rect, &mut rng);
            let n_in = legit.iter().filter(|u| cell.contains(u)).count() as u64;
            let n_out = legit.iter().filter(|u| u.dist2(&seed0) < d_e2).count() as u64;
            Ok((n_in, n_out))
        })
        .collect::<Result<_>>()?;
    Ok(DegreeSamples {
        in_degree: pairs.iter().map(|p| p.0).collect(),
        out_degree: pairs.iter().map(|p| p.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_configuration_is_the_square() {
        let a = voronoi_cell_area(Point::new(3.0, 4.0), &[], 10.0).unwrap();
        assert_eq!(a, 100.0);
    }

    #[test]
    fn two_seeds_split_evenly() {
        let l = 8.0;
        let a = Point::new(l / 4.0, l / 2.0);
        let b = Point::new(3.0 * l / 4.0, l / 2.0);
        assert!((voronoi_cell_area(a, &[b], l).unwrap() - l * l / 2.0).abs() < 1e-12);
        assert!((voronoi_cell_area(b, &[a], l).unwrap() - l * l / 2.0).abs() < 1e-12);
    }

    #[test]
    fn coincident_seed_is_degenerate() {
        let p = Point::new(1.0, 1.0);
        assert!(matches!(
            voronoi_cell_area(p, &[p], 5.0),
            Err(Error::Degenerate(_))
        ));
        assert!(voronoi_cell_area(Point::new(-1.0, 1.0), &[], 5.0).is_err());
    }

    #[test]
    fn polygon_basics() {
        let sq = ConvexPolygon::square(2.0);
        assert_eq!(sq.area(), 4.0);
        assert!(sq.contains(&Point::new(1.0, 1.0)));
        assert!(!sq.contains(&Point::new(3.0, 1.0)));
        let mut half = sq.clone();
        half.clip(1.0, 0.0, 1.0);
        assert!((half.area() - 2.0).abs() < 1e-15);
        let mut none = sq;
        none.clip(1.0, 0.0, -1.0);
        assert_eq!(none.area(), 0.0);
    }

    #[test]
    fn ppp_empty_at_zero_intensity() {
        let mut rng = trial_rng(1, 0);
        assert!(sample_ppp(0.0, 10.0, &mut rng).is_empty());
    }

    #[test]
    fn stats_of_known_samples() {
        let s = SimStats::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!((s.std_err_mean - (5.0 / 12.0f64).sqrt()).abs() < 1e-15);
        assert!((s.second_moment() - 7.5).abs() < 1e-14);
    }

    #[test]
    fn histogram_normalizes() {
        let h = histogram(&[0, 1, 1, 3]);
        assert_eq!(h, vec![0.25, 0.5, 0.0, 0.25]);
    }
}
