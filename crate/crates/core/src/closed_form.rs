//! Closed-form values for the series families, kept as exact symbolic
//! decompositions (rational coefficients times a small set of constant
//! atoms) alongside their floating-point evaluation.
//!
//! The formulas evaluated here:
//!
//! - `s_closed(k)`:  ((k−1)/(2k))·log 2 + (1/2)·log k
//!   − (π/(2k²))·Σ_{ℓ=1}^{⌊k/2⌋} (k+1−2ℓ)·cot((2ℓ−1)π/(2k))
//! - `t_closed(k)`:  ((k−1)(k+2)/(24k))·π² − (1/2)·log²k
//!   − (1/2)·Σ_{j=1}^{k−1} log²(2 sin(jπ/k))
//! - `u_closed(k)`:  ((k²+1)/(24k))·π² − (1/2)·Σ_{j=0}^{k−1} log²(2 sin((2j+1)π/(2k)))
//! - `j_closed(k)`:  t_closed(k) + (1/2)·log²k (evaluated directly, not by
//!   rearrangement)
//! - `alpha_integral_closed(α)`: π²/12 − (arccos α − π)²/8 − (1/8)·log²(2(1−α)),
//!   the value of ∫₀¹ (α−t)·log(1−t)/(1−2αt+t²) dt
//! - `root_integral_closed`: −nπ²/12 + (1/2)Σ log²|1−a_j| + (1/2)Σ Arg(1−a_j)²
//!   for unit-circle roots a_j = e^{iθ_j}, the value of ∫₀¹ (P′/P)·log(1−t) dt
//!
//! Angles are carried as exact rational multiples of π until the final
//! float evaluation, so large `k` does not degrade them.

use std::f64::consts::PI;
use std::fmt;

use num::bigint::BigInt;
use num::{BigRational, Zero};

use crate::elementary::{cot, log_2sin, CompensatedSum, PI_SQUARED};
use crate::error::{Error, Result};
use crate::harmonic::to_f64_exact;

/// An exact rational multiple of π, strictly between 0 and π.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PiFraction {
    pub num: u64,
    pub den: u64,
}

impl PiFraction {
    /// Reduce `num/den` and require 0 < num/den < 1 (angle inside (0, π)).
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::Domain(format!(
                "angle {num}/{den}·pi must lie strictly inside (0, pi)"
            )));
        }
        let g = gcd(num, den);
        Ok(PiFraction {
            num: num / g,
            den: den / g,
        })
    }

    /// The angle as a float, evaluated as (π·num)/den.
    pub fn angle(self) -> f64 {
        PI * self.num as f64 / self.den as f64
    }
}

impl fmt::Display for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One irrational building block of a closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum ConstantAtom {
    /// π²
    Pi2,
    /// π
    Pi,
    /// log m for an integer m ≥ 2
    LogInt(u64),
    /// The square of a logged real that is not a plain integer log; `note`
    /// names the quantity inside the log (e.g. "log(5)").
    LogSq { log_value: f64, note: String },
    /// log²(2·sin θ) for θ an exact rational multiple of π
    Log2SinSq(PiFraction),
    /// π·cot θ for θ an exact rational multiple of π (the π is folded into
    /// the atom so coefficients stay rational)
    CotTerm(PiFraction),
}

impl ConstantAtom {
    pub fn value(&self) -> f64 {
        match self {
            ConstantAtom::Pi2 => PI_SQUARED,
            ConstantAtom::Pi => PI,
            ConstantAtom::LogInt(m) => (*m as f64).ln(),
            ConstantAtom::LogSq { log_value, .. } => log_value * log_value,
            ConstantAtom::Log2SinSq(fr) => {
                let l = log_2sin(fr.angle()).expect("atom angle lies in (0, pi)");
                l * l
            }
            ConstantAtom::CotTerm(fr) => {
                PI * cot(fr.angle()).expect("atom angle lies in (0, pi)")
            }
        }
    }
}

impl fmt::Display for ConstantAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantAtom::Pi2 => write!(f, "pi^2"),
            ConstantAtom::Pi => write!(f, "pi"),
            ConstantAtom::LogInt(m) => write!(f, "log({m})"),
            ConstantAtom::LogSq { note, .. } => write!(f, "{note}^2"),
            ConstantAtom::Log2SinSq(fr) => write!(f, "log2sin({fr})^2"),
            ConstantAtom::CotTerm(fr) => write!(f, "pi*cot({fr})"),
        }
    }
}

/// A closed-form constant: an exact decomposition Σ coefficient·atom plus
/// its compensated float evaluation. Atoms are unique (equal atoms merged)
/// and zero coefficients dropped.
#[derive(Clone, Debug)]
pub struct ClosedFormValue {
    pub terms: Vec<(BigRational, ConstantAtom)>,
    pub value: f64,
}

impl ClosedFormValue {
    /// Merge duplicate atoms, drop vanished coefficients, evaluate.
    pub fn from_terms(raw: Vec<(BigRational, ConstantAtom)>) -> Self {
        let mut terms: Vec<(BigRational, ConstantAtom)> = Vec::new();
        for (coeff, atom) in raw {
            if let Some((existing, _)) = terms.iter_mut().find(|(_, a)| *a == atom) {
                *existing += coeff;
            } else {
                terms.push((coeff, atom));
            }
        }
        terms.retain(|(coeff, _)| !coeff.is_zero());
        let mut sum = CompensatedSum::new();
        for (coeff, atom) in &terms {
            sum.add(to_f64_exact(coeff) * atom.value());
        }
        ClosedFormValue {
            terms,
            value: sum.value(),
        }
    }

    /// Σ scale_i · part_i as a single merged decomposition.
    pub fn linear_combination(parts: &[(BigRational, &ClosedFormValue)]) -> Self {
        let mut raw = Vec::new();
        for (scale, part) in parts {
            for (coeff, atom) in &part.terms {
                raw.push((scale * coeff, atom.clone()));
            }
        }
        ClosedFormValue::from_terms(raw)
    }
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Closed form of the alternating series S(k) = Σ (−1)^{n−1}(log k − (H_{kn}−H_n)).
///
/// k = 1 degenerates to the empty decomposition (every series term is 0).
pub fn s_closed(k: u64) -> Result<ClosedFormValue> {
    if k == 0 {
        return Err(Error::Domain("s_closed needs k >= 1".into()));
    }
    let mut terms = Vec::new();
    if k > 1 {
        // ((k−1)/(2k))·log 2
        terms.push((
            ratio(int(k as i64 - 1), int(2) * int(k as i64)),
            ConstantAtom::LogInt(2),
        ));
        // (1/2)·log k
        terms.push((ratio(int(1), int(2)), ConstantAtom::LogInt(k)));
    }
    // −(π/(2k²))·Σ (k+1−2ℓ)·cot((2ℓ−1)π/(2k)), with the π folded into the
    // CotTerm atoms so the coefficients stay rational.
    for ell in 1..=k / 2 {
        let weight = int(k as i64 + 1 - 2 * ell as i64);
        let coeff = -ratio(weight, int(2) * int(k as i64) * int(k as i64));
        terms.push((coeff, ConstantAtom::CotTerm(PiFraction::new(2 * ell - 1, 2 * k)?)));
    }
    Ok(ClosedFormValue::from_terms(terms))
}

/// Closed form of T(k) = Σ (log k − (H_{kn}−H_n))/n.
///
/// The log²k piece is kept as the final term, so `j_closed` and `t_closed`
/// share their entire evaluation prefix.
pub fn t_closed(k: u64) -> Result<ClosedFormValue> {
    if k == 0 {
        return Err(Error::Domain("t_closed needs k >= 1".into()));
    }
    let mut terms = sin_log_decomposition(k)?;
    if k > 1 {
        terms.push((
            -ratio(int(1), int(2)),
            ConstantAtom::LogSq {
                log_value: (k as f64).ln(),
                note: format!("log({k})"),
            },
        ));
    }
    Ok(ClosedFormValue::from_terms(terms))
}

/// Closed form of J(k) = T(k) + (1/2)·log²k, evaluated directly:
/// ((k−1)(k+2)/(24k))·π² − (1/2)·Σ_{j=1}^{k−1} log²(2 sin(jπ/k)).
pub fn j_closed(k: u64) -> Result<ClosedFormValue> {
    if k < 2 {
        return Err(Error::Domain(format!("j_closed needs k >= 2, got {k}")));
    }
    Ok(ClosedFormValue::from_terms(sin_log_decomposition(k)?))
}

/// Shared π²/log-sine part of `t_closed` and `j_closed`:
/// ((k−1)(k+2)/(24k))·π² − (1/2)·Σ_{j=1}^{k−1} log²(2 sin(jπ/k)).
fn sin_log_decomposition(k: u64) -> Result<Vec<(BigRational, ConstantAtom)>> {
    let mut terms = Vec::new();
    let pi2_coeff = ratio(
        int(k as i64 - 1) * int(k as i64 + 2),
        int(24) * int(k as i64),
    );
    if !pi2_coeff.is_zero() {
        terms.push((pi2_coeff, ConstantAtom::Pi2));
    }
    for j in 1..k {
        terms.push((
            -ratio(int(1), int(2)),
            ConstantAtom::Log2SinSq(PiFraction::new(j, k)?),
        ));
    }
    Ok(terms)
}

/// Closed form of the alternating series U(k) = Σ (−1)^{n−1} H_{kn}/n:
/// ((k²+1)/(24k))·π² − (1/2)·Σ_{j=0}^{k−1} log²(2 sin((2j+1)π/(2k))).
pub fn u_closed(k: u64) -> Result<ClosedFormValue> {
    if k == 0 {
        return Err(Error::Domain("u_closed needs k >= 1".into()));
    }
    let mut terms = vec![(
        ratio(
            int(k as i64) * int(k as i64) + int(1),
            int(24) * int(k as i64),
        ),
        ConstantAtom::Pi2,
    )];
    for j in 0..k {
        terms.push((
            -ratio(int(1), int(2)),
            ConstantAtom::Log2SinSq(PiFraction::new(2 * j + 1, 2 * k)?),
        ));
    }
    Ok(ClosedFormValue::from_terms(terms))
}

/// Closed form of the derived alternating series
/// Σ (−1)^{n−1}(H_{4n} + H_n − 2H_{2n}), which is 2·S(2) − S(4) term by
/// term; the decomposition is that combination with atoms merged.
pub fn derived_quad_closed() -> Result<ClosedFormValue> {
    let s2 = s_closed(2)?;
    let s4 = s_closed(4)?;
    Ok(ClosedFormValue::linear_combination(&[
        (BigRational::from_integer(int(2)), &s2),
        (BigRational::from_integer(int(-1)), &s4),
    ]))
}

/// Value of ∫₀¹ (α−t)·log(1−t)/(1−2αt+t²) dt for −1 ≤ α < 1:
/// π²/12 − (arccos α − π)²/8 − (1/8)·log²(2(1−α)).
pub fn alpha_integral_closed(alpha: f64) -> Result<f64> {
    if !(-1.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "alpha must lie in [-1, 1), got {alpha}"
        )));
    }
    let arc = alpha.acos() - PI;
    let log_term = (2.0 * (1.0 - alpha)).ln();
    Ok(PI_SQUARED / 12.0 - arc * arc / 8.0 - log_term * log_term / 8.0)
}

/// A conjugate-closed multiset of unit-circle roots e^{iθ}, θ ∈ (0, 2π).
///
/// Conjugate closure (θ and 2π−θ appearing with equal multiplicity, except
/// θ = π which is self-paired) makes the underlying polynomial real; a root
/// at 1 (θ = 0 or 2π) is excluded because it makes the integral divergent.
#[derive(Clone, Debug)]
pub struct RootSet {
    angles: Vec<f64>,
}

/// Slack allowed when checking conjugate closure of float angles.
const CONJUGATE_TOL: f64 = 1e-9;

impl RootSet {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::Domain("root set needs at least one root".into()));
        }
        for &theta in &angles {
            if !theta.is_finite() || theta <= 0.0 || theta >= 2.0 * PI {
                return Err(Error::Domain(format!(
                    "root angle {theta} outside (0, 2*pi); the root 1 is excluded"
                )));
            }
        }
        // A multiset is symmetric under θ ↦ 2π−θ exactly when, after
        // sorting, opposite entries pair to 2π (odd-length middles pair
        // with themselves, forcing θ = π).
        let mut sorted = angles.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));
        for i in 0..sorted.len() {
            let partner = sorted[sorted.len() - 1 - i];
            if (sorted[i] + partner - 2.0 * PI).abs() > CONJUGATE_TOL {
                return Err(Error::Domain(format!(
                    "roots are not conjugate-closed: angle {} lacks the partner {}",
                    sorted[i],
                    2.0 * PI - sorted[i]
                )));
            }
        }
        Ok(RootSet { angles })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// Value of ∫₀¹ (P′/P)(t)·log(1−t) dt where P is the real polynomial with
/// the given unit-circle roots:
///
///   −nπ²/12 + (1/2)·Σ log²|1−a_j| + (1/2)·Σ Arg(1−a_j)²
///
/// using |1−e^{iθ}| = 2 sin(θ/2) and Arg(1−e^{iθ}) = (θ−π)/2.
pub fn root_integral_closed(roots: &RootSet) -> f64 {
    let n = roots.len() as f64;
    let mut sum = CompensatedSum::new();
    sum.add(-n / 12.0 * PI_SQUARED);
    for &theta in roots.angles() {
        let log_mod = log_2sin(theta / 2.0).expect("theta/2 lies in (0, pi)");
        let arg = (theta - PI) / 2.0;
        sum.add(0.5 * log_mod * log_mod);
        sum.add(0.5 * arg * arg);
    }
    sum.value()
}
