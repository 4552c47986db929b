//! Double-exponential (tanh-sinh) quadrature on (0, 1), plus the complex
//! Cauchy-type integral ∫₀¹ log(1−t)/(z−t) dt built from it and the residual
//! of that integral's reflection identity.
//!
//! The substitution t(u) = 1/(1 + e^{−π·sinh u}) pushes both endpoints to
//! infinity at a double-exponential rate, so endpoint singularities of
//! log(1−t) type cost nothing special: the transformed integrand decays fast
//! enough that a modest trapezoid grid in u is spectrally accurate. Levels
//! halve the step and reuse all previous evaluations.

pub mod identities;

use std::f64::consts::FRAC_PI_2;

use crate::elementary::{CompensatedSum, PI_SQUARED};
use crate::error::{Error, Result};
use crate::Complex;

/// Tanh-sinh node evaluations stop past this |u|; the weight there is
/// ~1e−36, far below anything double precision can register.
const U_MAX: f64 = 4.0;

/// Default absolute tolerance for `integrate_01`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default cap on step-halving levels.
pub const DEFAULT_MAX_LEVEL: u32 = 12;

/// Nodes closer to an endpoint than this may return non-finite values
/// without aborting the quadrature when `allow_log_endpoints` is set.
const ENDPOINT_GUARD: f64 = 1e-12;

/// Outcome of one quadrature: value, achieved level-to-level difference as
/// the error estimate, and how many integrand evaluations were spent.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

/// The tanh-sinh abscissa and weight at parameter u:
/// t = 1/(1+e^{−2a}), dt/du = (π/2)·cosh(u)·2e^{−2a}/(1+e^{−2a})²,
/// with a = (π/2)·sinh(u).
fn transform(u: f64) -> (f64, f64) {
    let a = FRAC_PI_2 * u.sinh();
    let e = (-2.0 * a).exp();
    let denom = 1.0 + e;
    let t = 1.0 / denom;
    let w = FRAC_PI_2 * u.cosh() * 2.0 * e / (denom * denom);
    (t, w)
}

/// One weighted sample w·f(t(u)); nodes saturated to t = 0 or t = 1 in
/// floating point contribute nothing (their true weight is below 1e−35).
fn sample<F: Fn(f64) -> f64>(
    f: &F,
    u: f64,
    allow_log_endpoints: bool,
    evaluations: &mut u64,
) -> Result<f64> {
    let (t, w) = transform(u);
    if t <= 0.0 || t >= 1.0 {
        return Ok(0.0);
    }
    let v = f(t);
    *evaluations += 1;
    if v.is_finite() {
        Ok(w * v)
    } else if allow_log_endpoints && (t < ENDPOINT_GUARD || 1.0 - t < ENDPOINT_GUARD) {
        // An integrable endpoint blowup sampled too close to the edge; the
        // discarded mass is below the tolerance floor.
        Ok(0.0)
    } else {
        Err(Error::Domain(format!(
            "integrand returned a non-finite value at t = {t}"
        )))
    }
}

/// ∫₀¹ f(t) dt by tanh-sinh quadrature with explicit tolerance and level cap.
///
/// Levels halve the step h, reusing prior nodes; the run is accepted once
/// consecutive levels agree within tol/2, and that difference is reported as
/// the error estimate. Integrands may blow up at the endpoints (log-type or
/// integrable algebraic singularities) when `allow_log_endpoints` is set;
/// non-finite values away from the endpoints are always domain errors.
pub fn integrate_01_with<F: Fn(f64) -> f64>(
    f: F,
    tol: f64,
    max_level: u32,
    allow_log_endpoints: bool,
) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut evaluations: u64 = 0;

    // Level 0: step h = 1, nodes u = −4, …, 4.
    let mut h = 1.0;
    let mut sum = CompensatedSum::new();
    for j in -(U_MAX as i64)..=(U_MAX as i64) {
        sum.add(sample(&f, j as f64, allow_log_endpoints, &mut evaluations)?);
    }
    let mut prev = h * sum.value();

    for _level in 1..=max_level {
        h *= 0.5;
        let max_j = (U_MAX / h) as i64;
        let mut odd = CompensatedSum::new();
        let mut j = -max_j + 1;
        while j <= max_j {
            odd.add(sample(&f, j as f64 * h, allow_log_endpoints, &mut evaluations)?);
            j += 2;
        }
        let current = prev / 2.0 + h * odd.value();
        let difference = (current - prev).abs();
        if difference < tol / 2.0 {
            return Ok(QuadResult {
                value: current,
                error_estimate: difference,
                evaluations,
            });
        }
        prev = current;
    }
    Err(Error::Convergence(format!(
        "quadrature did not reach tolerance {tol:.3e} within {max_level} levels"
    )))
}

/// `integrate_01_with` at the default tolerance (1e−12) and level cap (12).
pub fn integrate_01<F: Fn(f64) -> f64>(f: F, allow_log_endpoints: bool) -> Result<QuadResult> {
    integrate_01_with(f, DEFAULT_TOL, DEFAULT_MAX_LEVEL, allow_log_endpoints)
}

/// ∫₀¹ log(1−t)/(z−t) dt for z off the ray [0, +∞), via one real quadrature
/// per component: 1/(z−t) = ((x−t) − iy)/((x−t)² + y²) for z = x + iy.
pub fn cauchy_log_integral(z: Complex) -> Result<Complex> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("z = {z} is not finite")));
    }
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(Error::Domain(format!(
            "z = {z} lies on the cut [0, +inf); the integral is undefined there"
        )));
    }
    let (x, y) = (z.re, z.im);
    let re = integrate_01(
        |t| {
            let d = (x - t) * (x - t) + y * y;
            (1.0 - t).ln() * (x - t) / d
        },
        true,
    )?;
    let im = integrate_01(
        |t| {
            let d = (x - t) * (x - t) + y * y;
            -(1.0 - t).ln() * y / d
        },
        true,
    )?;
    Ok(Complex::new(re.value, im.value))
}

/// Residual of the reflection identity for G(z) = ∫₀¹ log(1−t)/(z−t) dt:
///
///   |G(z) + G(1/z) − (π²/6 − Log(1−z)·Log(1−1/z))|
///
/// with principal-branch logarithms. Both z and 1/z must avoid the cut
/// [0, +∞), which holds automatically for any off-cut z ≠ 0.
pub fn functional_equation_residual(z: Complex) -> Result<f64> {
    if z.norm_sqr() == 0.0 {
        return Err(Error::Domain("z = 0 has no reciprocal".into()));
    }
    let w = z.inv();
    let lhs = cauchy_log_integral(z)? + cauchy_log_integral(w)?;
    let one = Complex::new(1.0, 0.0);
    let rhs = Complex::new(PI_SQUARED / 6.0, 0.0) - ((one - z).ln() * (one - w).ln());
    Ok((lhs - rhs).norm())
}
