//! Secure in- and out-degree of a node S₀ among legitimate users and eavesdroppers.
//!
//! A legitimate user can receive securely from S₀ when it is closer to S₀ than to
//! every eavesdropper, so the in-degree counts legitimate users inside the cell of S₀
//! in the eavesdropper tessellation. Given the cell size A (in units of `1/λ_e`) the
//! count is Poisson with mean `p·A`, `p = λ_l/λ_e`. With A ~ Gamma(k, ν) the
//! in-degree is negative binomial:
//!
//! `P(N = n) = Γ(k+n) / (n! Γ(k)) · zⁿ (1−z)ᵏ`, `z = pν/(1+pν)`.
//!
//! The out-degree counts users closer to S₀ than S₀'s nearest eavesdropper and is
//! geometric with parameter `p/(1+p)`.

use crate::error::{domain, Error, Result};
use crate::moments::{fitted_gamma, GammaParams};
use crate::special_functions::{
    hyp2f1_secrecy, negbin_ln_pmf, negbin_tail_ln_prefactor, FuncEvalPolicy,
};
use crate::void_geometry::SeedLocation;

/// Intensities of legitimate users and eavesdroppers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityRatio {
    lambda_l: f64,
    lambda_e: f64,
}

impl IntensityRatio {
    pub fn new(lambda_l: f64, lambda_e: f64) -> Result<Self> {
        for (name, v) in [("lambda_l", lambda_l), ("lambda_e", lambda_e)] {
            if !(v > 0.0 && v.is_finite()) {
                return domain(format!("{name} must be positive and finite, got {v}"));
            }
        }
        Ok(Self { lambda_l, lambda_e })
    }

    pub fn lambda_l(&self) -> f64 {
        self.lambda_l
    }

    pub fn lambda_e(&self) -> f64 {
        self.lambda_e
    }

    /// `λ_l / λ_e`.
    pub fn p(&self) -> f64 {
        self.lambda_l / self.lambda_e
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) {
        return domain(format!("intensity ratio p must be positive and finite, got {p}"));
    }
    Ok(())
}

/// Success parameter `z = pν/(1+pν)` of the negative-binomial in-degree.
pub fn in_degree_z(p: f64, g: GammaParams) -> f64 {
    let x = p * g.nu;
    x / (1.0 + x)
}

/// `P(N_in = n)` evaluated in log space.
pub fn in_degree_pmf(n: u64, p: f64, g: GammaParams) -> Result<f64> {
    check_p(p)?;
    Ok(negbin_ln_pmf(g.k, n, in_degree_z(p, g)).exp())
}

/// `P(N_in <= n)` from the hypergeometric closed form of the upper tail. Falls back to
/// summing the PMF if the series does not converge.
pub fn in_degree_cdf(n: u64, p: f64, g: GammaParams) -> Result<f64> {
    check_p(p)?;
    let z = in_degree_z(p, g);
    match hyp2f1_secrecy(g.k, n, z, &FuncEvalPolicy::default()) {
        Ok(f) => {
            let tail = (negbin_tail_ln_prefactor(g.k, n, z) + f.ln()).exp();
            Ok((1.0 - tail).clamp(0.0, 1.0))
        }
        Err(Error::NonConvergence { .. }) => in_degree_cdf_by_sum(n, p, g),
        Err(e) => Err(e),
    }
}

/// `P(N_in <= n)` by direct summation of the PMF.
pub fn in_degree_cdf_by_sum(n: u64, p: f64, g: GammaParams) -> Result<f64> {
    check_p(p)?;
    let z = in_degree_z(p, g);
    let s: f64 = (0..=n).map(|m| negbin_ln_pmf(g.k, m, z).exp()).sum();
    Ok(s.min(1.0))
}

/// Mean and variance of the in-degree from the first two cell-size moments:
/// `p·E{A}` and `p·E{A} + p²(E{A²} − E{A}²)`.
pub fn in_degree_moments(p: f64, mean_a: f64, second_a: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    if !(mean_a > 0.0) || !(second_a > mean_a * mean_a) {
        return domain(format!(
            "need E{{A}} > 0 and E{{A^2}} > E{{A}}^2, got {mean_a}, {second_a}"
        ));
    }
    let mean = p * mean_a;
    Ok((mean, mean + p * p * (second_a - mean_a * mean_a)))
}

/// `P(N_out = n) = (p/(1+p))ⁿ / (1+p)`.
pub fn out_degree_pmf(n: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    let q = p / (1.0 + p);
    Ok((n as f64 * q.ln()).exp() / (1.0 + p))
}

/// `P(N_out <= n) = 1 − (p/(1+p))ⁿ⁺¹`.
pub fn out_degree_cdf(n: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    let q = p / (1.0 + p);
    Ok(-((n as f64 + 1.0) * q.ln()).exp_m1())
}

/// Probability of no secure incoming link, `(1+pν)^{−k}`.
pub fn in_isolation(p: f64, g: GammaParams) -> Result<f64> {
    check_p(p)?;
    Ok((-g.k * (p * g.nu).ln_1p()).exp())
}

/// Probability of no secure outgoing link, `1/(1+p)`.
pub fn out_isolation(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(1.0 / (1.0 + p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolationRow {
    pub lambda_e: f64,
    pub p_in_isolated: f64,
    pub p_out_isolated: f64,
}

/// In- and out-isolation probabilities over a grid of eavesdropper intensities, using
/// the fitted cell-size distribution at `location` (corner, edge or bulk only).
pub fn isolation_comparison(
    lambda_l: f64,
    lambda_e_grid: &[f64],
    location: SeedLocation,
) -> Result<Vec<IsolationRow>> {
    let g = fitted_gamma(location)?;
    isolation_comparison_with(lambda_l, lambda_e_grid, g)
}

/// [`isolation_comparison`] with explicit Gamma parameters.
pub fn isolation_comparison_with(
    lambda_l: f64,
    lambda_e_grid: &[f64],
    g: GammaParams,
) -> Result<Vec<IsolationRow>> {
    lambda_e_grid
        .iter()
        .map(|&lambda_e| {
            let p = IntensityRatio::new(lambda_l, lambda_e)?.p();
            Ok(IsolationRow {
                lambda_e,
                p_in_isolated: in_isolation(p, g)?,
                p_out_isolated: out_isolation(p)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeKind {
    InDegree(GammaParams),
    OutDegree,
}

/// A secure-degree distribution for a given intensity ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeDistribution {
    pub kind: DegreeKind,
    pub ratio: IntensityRatio,
}

impl DegreeDistribution {
    pub fn new(kind: DegreeKind, ratio: IntensityRatio) -> Self {
        Self { kind, ratio }
    }

    pub fn pmf(&self, n: u64) -> Result<f64> {
        let p = self.ratio.p();
        match self.kind {
            DegreeKind::InDegree(g) => in_degree_pmf(n, p, g),
            DegreeKind::OutDegree => out_degree_pmf(n, p),
        }
    }

    pub fn cdf(&self, n: u64) -> Result<f64> {
        let p = self.ratio.p();
        match self.kind {
            DegreeKind::InDegree(g) => in_degree_cdf(n, p, g),
            DegreeKind::OutDegree => out_degree_cdf(n, p),
        }
    }

    pub fn mean(&self) -> f64 {
        let p = self.ratio.p();
        match self.kind {
            DegreeKind::InDegree(g) => p * g.mean(),
            DegreeKind::OutDegree => p,
        }
    }

    pub fn variance(&self) -> f64 {
        let p = self.ratio.p();
        match self.kind {
            DegreeKind::InDegree(g) => p * g.mean() + p * p * g.variance(),
            DegreeKind::OutDegree => p * (1.0 + p),
        }
    }

    /// Smallest `N` such that `P(N_deg > N) < eps`.
    ///
    /// The ratio `pmf(m+1)/pmf(m) = z(k+m)/(m+1)` is monotone in m and tends to z, so
    /// beyond any m the tail is dominated by a geometric series with ratio
    /// `max(z, ratio at m)`.
    pub fn support_bound(&self, eps: f64) -> Result<u64> {
        if !(eps > 0.0 && eps < 1.0) {
            return domain(format!("eps must lie in (0, 1), got {eps}"));
        }
        let p = self.ratio.p();
        let (k, z) = match self.kind {
            DegreeKind::InDegree(g) => (g.k, in_degree_z(p, g)),
            DegreeKind::OutDegree => (1.0, p / (1.0 + p)),
        };
        let mut m: u64 = 0;
        loop {
            let next = negbin_ln_pmf(k, m + 1, z).exp();
            let mf = (m + 1) as f64;
            let rho = (z * (k + mf) / (mf + 1.0)).max(z);
            if rho < 1.0 && next / (1.0 - rho) < eps {
                return Ok(m);
            }
            m += 1;
            if m > 100_000_000 {
                return Err(Error::NonConvergence {
                    terms: m as usize,
                    value: next,
                });
            }
        }
    }
}
