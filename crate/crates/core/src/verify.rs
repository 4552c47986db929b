//! Named verification suites: batches of independent numerical checks,
//! each comparing two routes to the same quantity and reporting residuals
//! against a fixed tolerance. The command-line `verify` command and the
//! acceptance tests both run these.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{
    alpha_integral_closed, root_integral_closed, s_closed, t_closed, u_closed, RootSet,
};
use crate::elementary::PI_SQUARED;
use crate::error::Result;
use crate::quadrature::identities::{
    alpha_kernel_integral, harmonic_gap_residual, harmonic_ratio_residual, root_kernel_integral,
    s_integral, t_integral, u_integral, SIntegralForm,
};
use crate::quadrature::{functional_equation_residual, integrate_01};
use crate::series::{sum_accelerated, SeriesFamily};
use crate::Complex;

/// One check inside a suite: what was compared, how far apart the routes
/// landed, and the tolerance the residual was held to.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub label: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Outcome of a whole suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            cases: Vec::new(),
        }
    }

    fn push(&mut self, label: String, residual: f64, tolerance: f64) {
        self.cases.push(CaseResult {
            label,
            residual,
            tolerance,
            // NaN must fail, so compare on the accepting side.
            passed: residual < tolerance,
        });
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|case| case.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.cases.iter().fold(0.0, |acc, case| acc.max(case.residual))
    }

    /// The case with the largest residual (by the same ordering as
    /// [`Self::max_residual`]), if the suite ran any cases.
    pub fn worst_case(&self) -> Option<&CaseResult> {
        self.cases
            .iter()
            .max_by(|a, b| a.residual.total_cmp(&b.residual))
    }
}

/// Reflection-identity residuals for G(z) = ∫₀¹ log(1−t)/(z−t) dt over a
/// 20-point polar grid (4 radii × 5 angles) kept at distance ≥ 0.1 from
/// the cut [0, +∞); each residual must stay below 1e−9.
pub fn functional_equation_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("functional-eq");
    for &r in &[0.3, 1.0, 3.0, 10.0] {
        for &(phi, phi_label) in &[
            (PI / 6.0, "pi/6"),
            (PI / 2.0, "pi/2"),
            (3.0 * PI / 4.0, "3pi/4"),
            (PI, "pi"),
            (5.0 * PI / 4.0, "5pi/4"),
        ] {
            let z = Complex::from_polar(r, phi);
            let residual = functional_equation_residual(z)?;
            report.push(format!("r = {r}, phi = {phi_label}"), residual, 1e-9);
        }
    }
    Ok(report)
}

/// Residuals of the harmonic-gap integral identity
/// ∫₀¹ (Q′_k/Q_k)·t^{nk} dt = log k − (H_{kn} − H_n) for k = 2..6, n = 1..4,
/// each below 1e−10.
pub fn harmonic_gap_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("gap-integral");
    for k in 2..=6 {
        for n in 1..=4 {
            let residual = harmonic_gap_residual(k, n)?;
            report.push(format!("k = {k}, n = {n}"), residual, 1e-10);
        }
    }
    Ok(report)
}

/// Residuals of ∫₀¹ (1−xⁿ)/(n(1−x)) dx = H_n/n for n = 1..50, each below
/// 1e−12.
pub fn harmonic_ratio_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ratio-integral");
    for n in 1..=50 {
        let residual = harmonic_ratio_residual(n)?;
        report.push(format!("n = {n}"), residual, 1e-12);
    }
    Ok(report)
}

/// The parametric kernel ∫₀¹ (α−t)·log(1−t)/(1−2αt+t²) dt: quadrature vs
/// the closed form at five α values (tolerance 1e−8), plus three fixed
/// rescalings of the kernel integrated directly against their elementary
/// values (tolerance 1e−9).
pub fn alpha_kernel_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("alpha-kernel");
    for &alpha in &[-1.0, -0.5, 0.0, 0.5, 0.9] {
        let quad = alpha_kernel_integral(alpha)?.value;
        let closed = alpha_integral_closed(alpha)?;
        report.push(
            format!("alpha = {alpha}"),
            (quad - closed).abs(),
            1e-8,
        );
    }

    let log_sq = |x: f64| x.ln() * x.ln();
    let first = integrate_01(
        |t| (1.0 + 2.0 * t) * (1.0 - t).ln() / (1.0 + t + t * t),
        true,
    )?;
    report.push(
        "(1+2t)/(1+t+t^2) vs -(5/36)pi^2 + (1/4)log^2(3)".into(),
        (first.value - (-5.0 / 36.0 * PI_SQUARED + 0.25 * log_sq(3.0))).abs(),
        1e-9,
    );
    let second = integrate_01(|t| t * (1.0 - t).ln() / (1.0 + t * t), true)?;
    report.push(
        "t/(1+t^2) vs -(5/96)pi^2 + (1/8)log^2(2)".into(),
        (second.value - (-5.0 / 96.0 * PI_SQUARED + 0.125 * log_sq(2.0))).abs(),
        1e-9,
    );
    let third = integrate_01(
        |t| (1.0 - 2.0 * t) * (1.0 - t).ln() / (1.0 - t + t * t),
        true,
    )?;
    report.push(
        "(1-2t)/(1-t+t^2) vs pi^2/18".into(),
        (third.value - PI_SQUARED / 18.0).abs(),
        1e-9,
    );
    Ok(report)
}

/// Random conjugate-closed root sets on the unit circle: the closed form of
/// ∫₀¹ (P′/P)·log(1−t) dt vs direct quadrature of the kernel, tolerance
/// 1e−7 per case. Reproducible from the seed; angles keep a distance of at
/// least 0.2 from the positive real axis so the kernel stays integrable at
/// quadrature precision.
pub fn root_set_suite(seed: u64, cases: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("root-sets");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let pairs = rng.gen_range(0..=3u32);
        let with_minus_one = pairs == 0 || rng.gen_bool(0.25);
        let mut angles = Vec::new();
        for _ in 0..pairs {
            let theta = rng.gen_range(0.2..PI);
            angles.push(theta);
            angles.push(2.0 * PI - theta);
        }
        if with_minus_one {
            angles.push(PI);
        }
        let set = RootSet::new(angles)?;
        let closed = root_integral_closed(&set);
        let quad = root_kernel_integral(&set)?.value;
        report.push(
            format!("case {case}: {} roots", set.len()),
            (quad - closed).abs(),
            1e-7,
        );
    }
    Ok(report)
}

/// Triple-route agreement for the series families with k ≤ 8: closed form
/// vs accelerated summation (tolerance max(1e−8, the acceleration's own
/// error estimate)) and closed form vs quadrature (tolerance 1e−9; both
/// integral forms for S).
pub fn cross_check_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("cross");
    let accel_target = 1e-8;
    for k in 2..=8 {
        let closed = s_closed(k)?.value;
        let accel = sum_accelerated(SeriesFamily::S(k), accel_target)?;
        report.push(
            format!("S({k}) closed vs accelerated"),
            (closed - accel.value).abs(),
            accel.error_estimate.max(1e-8),
        );
        let log_deriv = s_integral(k, SIntegralForm::LogDeriv)?.value;
        report.push(
            format!("S({k}) closed vs log-derivative quadrature"),
            (closed - log_deriv).abs(),
            1e-9,
        );
        let poly_ratio = s_integral(k, SIntegralForm::PolyRatio)?.value;
        report.push(
            format!("S({k}) closed vs polynomial-ratio quadrature"),
            (closed - poly_ratio).abs(),
            1e-9,
        );
    }
    for k in 2..=8 {
        let closed = t_closed(k)?.value;
        let accel = sum_accelerated(SeriesFamily::T(k), accel_target)?;
        report.push(
            format!("T({k}) closed vs accelerated"),
            (closed - accel.value).abs(),
            accel.error_estimate.max(1e-8),
        );
        let quad = t_integral(k)?.value;
        report.push(
            format!("T({k}) closed vs quadrature"),
            (closed - quad).abs(),
            1e-9,
        );
    }
    for k in 1..=8 {
        let closed = u_closed(k)?.value;
        let accel = sum_accelerated(SeriesFamily::U(k), accel_target)?;
        report.push(
            format!("U({k}) closed vs accelerated"),
            (closed - accel.value).abs(),
            accel.error_estimate.max(1e-8),
        );
        let quad = u_integral(k)?.value;
        report.push(
            format!("U({k}) closed vs quadrature"),
            (closed - quad).abs(),
            1e-9,
        );
    }
    Ok(report)
}
