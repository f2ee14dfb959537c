//! Real special functions needed by the closed forms and bounds.
//!
//! Everything here is pure and deterministic. Only the orders and argument ranges
//! that actually occur are supported: the Bessel and Struve functions are of order one,
//! and the hypergeometric function is restricted to `₂F₁(1, 1+k+n; 2+n; z)` with
//! `0 <= z < 1`.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_1d, QuadSpec};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Above this argument M₁ is integrated directly instead of differencing two series.
pub const STRUVE_M1_CROSSOVER: f64 = 8.0;

/// Above this `z` the hypergeometric series is replaced by the complement of the
/// cumulative negative-binomial sum.
pub const HYP2F1_Z_SWITCH: f64 = 0.9;

/// Tolerance and term budget for series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuncEvalPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl FuncEvalPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0, 1e-3], got {rel_tol}"
            )));
        }
        if max_terms < 50 {
            return Err(Error::InvalidParameter(format!(
                "max_terms must be at least 50, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for FuncEvalPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 10_000,
        }
    }
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < 2.0 {
        erf_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    v.copysign(x)
}

/// Complementary error function, accurate in the far right tail.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= 2.0 {
        erfc_continued_fraction(x)
    } else if x > -2.0 {
        1.0 - erf_series(x.abs()).copysign(x)
    } else {
        2.0 - erfc_continued_fraction(-x)
    }
}

// erf(x) = 2/√π e^{-x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!, all terms positive for x >= 0.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        term *= 2.0 * x2 / (2.0 * n + 3.0);
        sum += term;
        n += 1.0;
        if term <= sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-x2).exp() * sum
}

// Modified Lentz evaluation of erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for j in 1..5000 {
        let a = j as f64 / 2.0;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (f * PI.sqrt())
}

/// Modified Bessel function of the first kind, order one.
///
/// Ascending series up to x = 30, Hankel asymptotic expansion beyond. Overflows to
/// `+inf` past x ≈ 713.
pub fn bessel_i1(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("bessel_i1 requires finite x >= 0, got {x}"));
    }
    if x <= 30.0 {
        Ok(bessel_i1_series(x))
    } else {
        Ok(bessel_i1_asymptotic(x))
    }
}

fn bessel_i1_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = x / 2.0;
    let mut sum = term;
    let mut k = 0.0;
    while term > sum * 1e-17 {
        term *= q / ((k + 1.0) * (k + 2.0));
        sum += term;
        k += 1.0;
    }
    sum
}

fn bessel_i1_asymptotic(x: f64) -> f64 {
    // I₁(x) ~ e^x / √(2πx) · Σ (-1)^k Π_{j<=k}(4 - (2j-1)²) / (k! (8x)^k)
    let mut term: f64 = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let next = -term * (4.0 - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    (x - 0.5 * (2.0 * PI * x).ln()).exp() * sum
}

/// Modified Struve function L₁ from its ascending series.
///
/// Intended for moderate arguments; the series is summed until the terms fall below
/// double precision, which for large x means roughly x terms.
pub fn struve_l1(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("struve_l1 requires finite x >= 0, got {x}"));
    }
    // L₁(x) = Σ (x/2)^{2k+2} / (Γ(k+3/2) Γ(k+5/2)); first term is 2x²/(3π).
    let q = x * x / 4.0;
    let mut term = 2.0 * x * x / (3.0 * PI);
    let mut sum = term;
    let mut k = 0.0;
    while term > sum * 1e-17 {
        term *= q / ((k + 1.5) * (k + 2.5));
        sum += term;
        k += 1.0;
    }
    Ok(sum)
}

/// Modified Struve function of the second kind, M₁(x) = L₁(x) − I₁(x).
///
/// Below [`STRUVE_M1_CROSSOVER`] the two series are differenced. Above it both terms
/// grow like eˣ, so the integral representation
/// `M₁(x) = −(2x/π) ∫₀^{π/2} e^{−x cos t} sin²t dt` is integrated instead.
pub fn struve_m1(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("struve_m1 requires finite x >= 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= STRUVE_M1_CROSSOVER {
        return Ok(struve_l1(x)? - bessel_i1_series(x));
    }
    let spec = QuadSpec {
        rel_tol: 1e-13,
        abs_tol: 1e-300,
        ..QuadSpec::default()
    };
    let integral = integrate_1d(
        |t: f64| {
            let s = t.sin();
            (-x * t.cos()).exp() * s * s
        },
        0.0,
        PI / 2.0,
        &spec,
    )?;
    Ok(-FRAC_2_PI * x * integral.value)
}

/// Exponential integral `∫ₓ^∞ e^{−t}/t dt` (conventionally E₁), for x > 0.
pub fn expint_upper(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_nan() {
        return domain(format!("expint_upper requires x > 0, got {x}"));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 1.0 {
        // E₁(x) = −γ − ln x − Σ_{k>=1} (−x)^k / (k·k!)
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= -x / kf;
            let add = term / kf;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() - sum)
    } else {
        // Continued fraction e^{-x} / (x + 1 − 1²/(x + 3 − 2²/(x + 5 − ...))), modified Lentz.
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h * (-x).exp())
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the Gamma function for x > 0 (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("ln_gamma requires finite x > 0, got {x}"));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx).
        return (PI / (PI * x).sin()).ln() - ln_gamma_pos(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `₂F₁(1, 1+k+n; 2+n; z)` for `k > 0`, `n >= 0`, `0 <= z < 1`.
///
/// For `z <= HYP2F1_Z_SWITCH` the hypergeometric series is summed with a ratio-based
/// remainder bound. Above the switch the value is recovered from the complement of the
/// cumulative negative-binomial sum `Σ_{m<=n} C(k+m−1, m) zᵐ (1−z)ᵏ`, whose tail is
/// exactly prefactor · ₂F₁; the series is used again if that complement is too small
/// to be resolved without cancellation.
pub fn hyp2f1_secrecy(k: f64, n: u64, z: f64, policy: &FuncEvalPolicy) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return domain(format!("hyp2f1_secrecy requires k > 0, got {k}"));
    }
    if !(0.0..1.0).contains(&z) {
        return domain(format!("hyp2f1_secrecy requires 0 <= z < 1, got {z}"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > HYP2F1_Z_SWITCH {
        let complement = negbin_upper_tail_by_complement(k, n, z);
        if complement > 1e-3 {
            let ln_prefactor = negbin_tail_ln_prefactor(k, n, z);
            return Ok(complement / ln_prefactor.exp());
        }
    }
    hyp2f1_series(k, n, z, policy)
}

fn hyp2f1_series(k: f64, n: u64, z: f64, policy: &FuncEvalPolicy) -> Result<f64> {
    let nf = n as f64;
    let b = 1.0 + k + nf;
    let c = 2.0 + nf;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..policy.max_terms {
        let jf = j as f64;
        term *= z * (b + jf) / (c + jf);
        sum += term;
        // Term ratios are monotone in j and tend to z, so the remainder is bounded by a
        // geometric series with ratio max(current ratio, z).
        let ratio = (z * (b + jf + 1.0) / (c + jf + 1.0)).max(z);
        if ratio < 1.0 {
            let remainder = term * ratio / (1.0 - ratio);
            if remainder <= 0.1 * policy.rel_tol * sum {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConvergence {
        terms: policy.max_terms,
        value: sum,
    })
}

/// ln of `z^{n+1} (1−z)^k Γ(k+n+1) / (Γ(k) Γ(n+2))`, the factor relating the
/// negative-binomial upper tail to ₂F₁.
pub(crate) fn negbin_tail_ln_prefactor(k: f64, n: u64, z: f64) -> f64 {
    let nf = n as f64;
    (nf + 1.0) * z.ln() + k * (-z).ln_1p() + ln_gamma_pos(k + nf + 1.0)
        - ln_gamma_pos(k)
        - ln_gamma_pos(nf + 2.0)
}

/// ln P(N = m) for the negative binomial with `P(N=m) = Γ(k+m)/(m! Γ(k)) zᵐ (1−z)ᵏ`.
pub(crate) fn negbin_ln_pmf(k: f64, m: u64, z: f64) -> f64 {
    let mf = m as f64;
    let log_zm = if m == 0 { 0.0 } else { mf * z.ln() };
    ln_gamma_pos(k + mf) - ln_gamma_pos(mf + 1.0) - ln_gamma_pos(k) + log_zm + k * (-z).ln_1p()
}

fn negbin_upper_tail_by_complement(k: f64, n: u64, z: f64) -> f64 {
    let head: f64 = (0..=n).map(|m| negbin_ln_pmf(k, m, z).exp()).sum();
    1.0 - head
}
