//! Quadrature routes to the series constants, independent of both the
//! closed forms and the series summation: each function here evaluates a
//! defining integral numerically so the other routes have something
//! external to agree with.
//!
//! The kernels rely on Q_k(t) = 1 + t + … + t^{k−1} ≥ 1 on [0, 1], so the
//! logarithmic derivative Q′_k/Q_k never needs pole handling there.

use num::bigint::BigInt;
use num::BigRational;

use super::{integrate_01, QuadResult};
use crate::closed_form::RootSet;
use crate::error::{Error, Result};
use crate::harmonic::{harmonic, to_f64_exact};
use crate::poly::{geom_log_deriv, geom_poly};
use crate::series::harmonic_gap;

/// Which integral route to the alternating-series constant S(k) to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SIntegralForm {
    /// ∫₀¹ (Q′_k/Q_k)(t) · t^k/(1 + t^k) dt — a smooth kernel.
    LogDeriv,
    /// (1/2)·log(2k) − (1/2)·∫₀¹ Q_k(t)/(1 + t^k) dt — a polynomial-ratio
    /// kernel with the constant pulled out front.
    PolyRatio,
}

fn require_small_exponent(k: u64) -> Result<i32> {
    i32::try_from(k).map_err(|_| Error::Domain(format!("k = {k} is too large to exponentiate")))
}

/// S(k) by quadrature, k ≥ 2, through either integral form.
pub fn s_integral(k: u64, form: SIntegralForm) -> Result<QuadResult> {
    if k < 2 {
        return Err(Error::Domain(format!("s_integral needs k >= 2, got {k}")));
    }
    let ki = require_small_exponent(k)?;
    match form {
        SIntegralForm::LogDeriv => integrate_01(
            |t| {
                let p = t.powi(ki);
                geom_log_deriv(k, t) * p / (1.0 + p)
            },
            false,
        ),
        SIntegralForm::PolyRatio => {
            let inner = integrate_01(|t| geom_poly(k, t) / (1.0 + t.powi(ki)), false)?;
            Ok(QuadResult {
                value: 0.5 * ((2 * k) as f64).ln() - 0.5 * inner.value,
                error_estimate: 0.5 * inner.error_estimate,
                evaluations: inner.evaluations,
            })
        }
    }
}

/// T(k) by quadrature, k ≥ 2: −∫₀¹ (Q′_k/Q_k)(t) · log(1 − t^k) dt.
///
/// The logarithm is split as log(1−t) + log Q_k(t); both factors stay
/// well-conditioned near t = 1, unlike 1 − t^k itself.
pub fn t_integral(k: u64) -> Result<QuadResult> {
    if k < 2 {
        return Err(Error::Domain(format!("t_integral needs k >= 2, got {k}")));
    }
    integrate_01(
        |t| -geom_log_deriv(k, t) * ((1.0 - t).ln() + geom_poly(k, t).ln()),
        true,
    )
}

/// U(k) by quadrature, k ≥ 1: −∫₀¹ k·y^{k−1}/(1 + y^k) · log(1 − y) dy.
pub fn u_integral(k: u64) -> Result<QuadResult> {
    if k == 0 {
        return Err(Error::Domain("u_integral needs k >= 1".into()));
    }
    let ki = require_small_exponent(k)?;
    integrate_01(
        |y| {
            let p = y.powi(ki);
            -(k as f64) * y.powi(ki - 1) / (1.0 + p) * (1.0 - y).ln()
        },
        true,
    )
}

/// How far quadrature strays from the exact-rational evaluation of the
/// harmonic gap identity
///
///   ∫₀¹ (Q′_k/Q_k)(t) · t^{nk} dt = log k − (H_{kn} − H_n),
///
/// for k ≥ 2, n ≥ 1, nk ≤ 10⁴ (the exact-arithmetic budget). The right-hand
/// side is evaluated from exact rationals, so the returned residual charges
/// everything to the quadrature route.
pub fn harmonic_gap_residual(k: u64, n: u64) -> Result<f64> {
    if k < 2 || n < 1 {
        return Err(Error::Domain(format!(
            "harmonic_gap_residual needs k >= 2 and n >= 1, got k = {k}, n = {n}"
        )));
    }
    let kn = k
        .checked_mul(n)
        .ok_or_else(|| Error::Domain(format!("index overflow: {k} * {n}")))?;
    if kn > 10_000 {
        return Err(Error::Domain(format!(
            "k*n = {kn} exceeds the exact-evaluation budget of 10000"
        )));
    }
    let power = kn as i32;
    let quad = integrate_01(|t| geom_log_deriv(k, t) * t.powi(power), false)?;
    let exact = (k as f64).ln() - harmonic_gap(k, n)?;
    Ok((quad.value - exact).abs())
}

/// How far quadrature strays from H_n/n in the identity
///
///   ∫₀¹ (1 − xⁿ)/(n(1 − x)) dx = H_n/n,   n ≥ 1.
///
/// The integrand is evaluated as the polynomial Q_n(x)/n (exactly equal to
/// the displayed ratio), so no 0/0 care is needed at x = 1; the right-hand
/// side comes from exact rationals.
pub fn harmonic_ratio_residual(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("harmonic_ratio_residual needs n >= 1".into()));
    }
    let quad = integrate_01(|x| geom_poly(n, x) / (n as f64), false)?;
    let exact_ratio = harmonic(n)? / BigRational::from_integer(BigInt::from(n));
    Ok((quad.value - to_f64_exact(&exact_ratio)).abs())
}

/// ∫₀¹ (α − t)·log(1 − t)/(1 − 2αt + t²) dt by quadrature, for α ∈ [−1, 1).
///
/// This is the defining kernel of `alpha_integral_closed`; the denominator
/// equals (t − α)² + (1 − α²) ≥ 1 − α² > 0 for α > −1 and (1 + t)² ≥ 1 at
/// α = −1, so the kernel has no interior pole.
pub fn alpha_kernel_integral(alpha: f64) -> Result<QuadResult> {
    if !(-1.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "alpha must lie in [-1, 1), got {alpha}"
        )));
    }
    integrate_01(
        |t| (alpha - t) * (1.0 - t).ln() / (1.0 - 2.0 * alpha * t + t * t),
        true,
    )
}

/// ∫₀¹ Σ_j Re(1/(t − e^{iθ_j})) · log(1 − t) dt by quadrature — the direct
/// route to `root_integral_closed`, using
/// Re(1/(t − e^{iθ})) = (t − cos θ)/(t² − 2t·cos θ + 1).
///
/// Angles very close to 0 or 2π put a near-pole next to the log endpoint;
/// the quadrature then reports a convergence failure rather than a wrong
/// value.
pub fn root_kernel_integral(roots: &RootSet) -> Result<QuadResult> {
    let cosines: Vec<f64> = roots.angles().iter().map(|&theta| theta.cos()).collect();
    integrate_01(
        |t| {
            let mut kernel = 0.0;
            for &c in &cosines {
                kernel += (t - c) / (t * t - 2.0 * t * c + 1.0);
            }
            kernel * (1.0 - t).ln()
        },
        true,
    )
}
