//! Base-16 series for π² and BBP-style extraction of hexadecimal digits at
//! arbitrary positions without computing earlier digits.
//!
//! The driving series is
//!
//!   π² = Σ_{n≥0} 16^{−n} Σ_{r=1}^{7} a_r/(8n+r)²,
//!   a = (16, −16, −8, −16, −4, −4, 2),
//!
//! which splits into two dilogarithm components: Li₂(1/2) over even
//! denominators and Re Li₂((1+i)/2) over all residues mod 8, recombined as
//! 32·(octant part) − 8·(half part) = π². That recombination holds exactly
//! bracket by bracket, which the tests check in exact rational arithmetic.
//!
//! Digit extraction at position d multiplies the series by 16^d and keeps
//! only fractional parts: every head term is reduced to
//! (16^{d−n} mod (8n+r)²)/(8n+r)² by modular exponentiation, so the whole
//! computation stays in 64-bit integers and unit-interval floats.

use crate::elementary::CompensatedSum;
use crate::error::{Error, Result};

/// Numerators a_1..a_7 of the base-16 series for π².
pub const COEFFICIENTS: [i64; 7] = [16, -16, -8, -16, -4, -4, 2];

/// Weights of the component converging to Re Li₂((1+i)/2) = 5π²/96 − log²2/8,
/// residues r = 1..8 per 16^{−n} bracket. Each is the exact dyadic value of
/// 2^{−r/2}·cos(rπ/4): the half-integer powers of two and the cosines
/// combine to plain dyadic rationals.
pub const OCTANT_WEIGHTS: [f64; 8] = [0.5, 0.0, -0.25, -0.25, -0.125, 0.0, 0.0625, 0.0625];

/// Weights of the component converging to Li₂(1/2) = π²/12 − log²2/2,
/// residues r = 1..8 per 16^{−n} bracket (only even denominators appear:
/// the series is Σ 2^{−4n} Σ_{r=1}^{4} 2^{2−r}/(8n+2r)²).
pub const HALF_WEIGHTS: [f64; 8] = [0.0, 2.0, 0.0, 1.0, 0.0, 0.5, 0.0, 0.25];

/// Positions may not exceed this; beyond it the moduli (8n+r)² would no
/// longer fit the exact 63-bit modular arithmetic used here.
pub const MAX_POSITION: u64 = 100_000_000;

/// Largest digit window one call may return.
pub const MAX_DIGIT_COUNT: u32 = 16;

/// How many terms past n = d the extraction keeps: 16^{−21} ≈ 5·10^{−26}
/// is far below the accumulator's resolution.
const TAIL_TERMS: u64 = 21;

/// Digits committed from one fractional evaluation. A single f64 carries
/// 53 bits ≈ 13 hex digits, so an 8-digit commit leaves a wide safety
/// margin; longer windows are stitched from several evaluations.
const CHUNK: usize = 8;

/// Extra digits read past a chunk's commit point, used to cross-check the
/// seam against the next chunk's leading digits.
const LOOKAHEAD: usize = 4;

/// A run of hexadecimal digits of frac(π²).
///
/// Position 0 is the first digit after the radix point (the integer part,
/// 9, is not part of any run). `carry_warning` is set when the fractional
/// remainder after the requested digits sits within 16^{−2} of a digit-cell
/// boundary, i.e. when accumulated rounding could have carried into the
/// last digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexDigitRun {
    pub start_position: u64,
    pub digits: Vec<u8>,
    pub carry_warning: bool,
}

/// (a·b) mod m for m < 2^63, exact.
///
/// Small moduli (below 2^52) take a float-assisted Barrett path: the
/// quotient estimate from one double division is off by at most a few
/// units and is corrected exactly in integer arithmetic. Larger moduli
/// fall back to 128-bit division.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m >= 1 && m < (1 << 63) && a < m && b < m);
    if m < (1 << 52) {
        let q = ((a as f64) * (b as f64) / (m as f64)) as u64;
        let prod = (a as u128 * b as u128) as i128;
        let mut r = prod - (q as u128 * m as u128) as i128;
        while r < 0 {
            r += m as i128;
        }
        while r >= m as i128 {
            r -= m as i128;
        }
        r as u64
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

/// base^exp mod m for m < 2^63, by binary exponentiation over [`mul_mod`].
pub fn mod_pow(base: u64, exp: u64, m: u64) -> u64 {
    debug_assert!(m >= 1 && m < (1 << 63));
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % m;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

/// Partial sum Σ_{n=0}^{N} 16^{−n} Σ_{r=1}^{7} a_r/(8n+r)²; converges to π²
/// like O(16^{−N}).
pub fn pi2_series_partial(max_bracket: u64) -> f64 {
    weighted_partial(&COEFFICIENTS.map(|a| a as f64), max_bracket)
}

/// Partial sum of the Li₂(1/2) component (see [`HALF_WEIGHTS`]); converges
/// to π²/12 − (1/2)log²2.
pub fn dilog_half_partial(max_bracket: u64) -> f64 {
    weighted_partial(&HALF_WEIGHTS, max_bracket)
}

/// Partial sum of the Re Li₂((1+i)/2) component (see [`OCTANT_WEIGHTS`]);
/// converges to 5π²/96 − (1/8)log²2.
pub fn dilog_octant_partial(max_bracket: u64) -> f64 {
    weighted_partial(&OCTANT_WEIGHTS, max_bracket)
}

fn weighted_partial(weights: &[f64], max_bracket: u64) -> f64 {
    let mut sum = CompensatedSum::new();
    let mut scale = 1.0;
    for n in 0..=max_bracket {
        for (index, &w) in weights.iter().enumerate() {
            if w != 0.0 {
                let denominator = (8 * n + index as u64 + 1) as f64;
                sum.add(scale * w / (denominator * denominator));
            }
        }
        scale /= 16.0;
        if scale == 0.0 {
            break;
        }
    }
    sum.value()
}

/// Compensated accumulator over the unit circle ℝ/ℤ: sums terms from
/// (−1, 1) and keeps the running value reduced into [0, 1).
///
/// The reduction steps are exact (the subtraction because both operands lie
/// within a factor of two of each other, the addition via an
/// exactly-compensated two-sum), so unlike a plain float sum the reduction
/// itself contributes no drift; the only rounding left is the one inherent
/// in each incoming term.
struct FracSum {
    sum: f64,
    compensation: f64,
}

impl FracSum {
    fn new() -> Self {
        FracSum {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        debug_assert!(x.abs() < 1.0);
        let t = self.sum + x;
        self.compensation += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
        if self.sum >= 1.0 {
            // sum ∈ [1, 2): the shift down is exact.
            self.sum -= 1.0;
        } else if self.sum < 0.0 {
            // sum ∈ (−1, 0): shift up with an exact two-sum residual.
            let shifted = self.sum + 1.0;
            let z = shifted - 1.0;
            self.compensation += self.sum - z;
            self.sum = if shifted >= 1.0 { 0.0 } else { shifted };
        }
    }

    fn value(&self) -> f64 {
        let v = (self.sum + self.compensation).rem_euclid(1.0);
        if v >= 1.0 {
            0.0
        } else {
            v
        }
    }
}

/// 16^exp mod every modulus in `m2`, all lanes advanced through the same
/// square-and-double schedule (16^e = 2^{4e}, so the multiply steps are
/// doublings: one shift and at most one subtraction).
///
/// Keeping the seven chains in lockstep matters for speed: a single chain
/// is one long serial dependency through [`mul_mod`], while seven
/// independent ones overlap in the pipeline and run near division
/// throughput instead of division latency.
fn pow16_mod_each(exp: u64, m2: &[u64; 7]) -> [u64; 7] {
    let mut x = [0u64; 7];
    for lane in 0..7 {
        x[lane] = 1 % m2[lane];
    }
    let e = 4 * exp;
    if e == 0 {
        return x;
    }
    let top = 63 - e.leading_zeros();
    for i in (0..=top).rev() {
        for lane in 0..7 {
            x[lane] = mul_mod(x[lane], x[lane], m2[lane]);
        }
        if (e >> i) & 1 == 1 {
            for lane in 0..7 {
                // x < m2 < 2^63, so the shift cannot wrap and one
                // conditional subtraction completes the reduction.
                let doubled = x[lane] << 1;
                x[lane] = if doubled >= m2[lane] {
                    doubled - m2[lane]
                } else {
                    doubled
                };
            }
        }
    }
    x
}

/// frac(16^d·π²), evaluated as Σ_n Σ_r a_r·16^{d−n}/(8n+r)² mod 1 with every
/// head term reduced modulo (8n+r)² before division, so no intermediate
/// ever leaves the unit interval. The head walks n-major because the seven
/// r-lanes share the exponent d−n (see [`pow16_mod_each`]).
fn frac_at(d: u64) -> f64 {
    let mut acc = FracSum::new();
    // Head: n = 0..=d.
    for n in 0..=d {
        let mut m2 = [0u64; 7];
        for lane in 0..7 {
            let m = 8 * n + lane as u64 + 1;
            m2[lane] = m * m;
        }
        let powers = pow16_mod_each(d - n, &m2);
        for lane in 0..7 {
            let a = COEFFICIENTS[lane];
            // |a| ≤ 16 and power < m2, so the product fits u64 whenever
            // m2 < 2^59 — true everywhere below the position cap's last
            // stretch, where the wide path takes over.
            let scaled = if m2[lane] < (1 << 59) {
                (a.unsigned_abs() * powers[lane]) % m2[lane]
            } else {
                ((a.unsigned_abs() as u128 * powers[lane] as u128) % m2[lane] as u128) as u64
            };
            let term = scaled as f64 / m2[lane] as f64;
            acc.add(if a < 0 { -term } else { term });
        }
    }
    // Tail: n = d+1..=d+21 with plain 16^{−j} factors.
    for (index, &a) in COEFFICIENTS.iter().enumerate() {
        let r = index as u64 + 1;
        let mut scale = 1.0;
        for j in 1..=TAIL_TERMS {
            scale /= 16.0;
            let m = (8 * (d + j) + r) as f64;
            acc.add(a as f64 * scale / (m * m));
        }
    }
    acc.value()
}

/// Reads `count` base-16 digits off the front of y ∈ [0, 1) and returns
/// them with the remaining fraction. All three steps per digit are exact:
/// scaling by 16 shifts the exponent, floor and the subtraction stay
/// within the same binade.
fn extract(mut y: f64, count: usize) -> (Vec<u8>, f64) {
    let mut digits = Vec::with_capacity(count);
    for _ in 0..count {
        y *= 16.0;
        let digit = y.floor();
        y -= digit;
        digits.push(digit as u8);
    }
    (digits, y)
}

/// The hexadecimal digits of frac(π²) starting at `start_position`
/// (0-based; the integer part is excluded), `count` of them, 1 ≤ count ≤ 16,
/// start_position ≤ 10^8.
///
/// Windows longer than 8 digits are stitched from several fractional
/// evaluations, so every returned digit comes from the leading — most
/// reliable — digits of its own evaluation. Adjacent chunks are
/// cross-checked on a 4-digit overlap; `carry_warning` is set when that
/// check fails or when the remainder after the last digit sits within
/// 16^{−2} of a digit-cell boundary, i.e. whenever accumulated rounding
/// could have nudged the trailing digit.
pub fn hex_digits(start_position: u64, count: u32) -> Result<HexDigitRun> {
    if count < 1 || count > MAX_DIGIT_COUNT {
        return Err(Error::Domain(format!(
            "digit count must be in 1..={MAX_DIGIT_COUNT}, got {count}"
        )));
    }
    if start_position > MAX_POSITION {
        return Err(Error::Domain(format!(
            "start position {start_position} exceeds the supported maximum {MAX_POSITION}"
        )));
    }

    let requested = count as usize;
    let chunks = requested.div_ceil(CHUNK);
    let mut digits = Vec::with_capacity(requested);
    let mut carry_warning = false;
    let mut previous_lookahead: Option<Vec<u8>> = None;
    for c in 0..chunks {
        let position = start_position + (c * CHUNK) as u64;
        let y = frac_at(position);
        let last = c + 1 == chunks;
        let commit = if last { requested - c * CHUNK } else { CHUNK };
        let take = if last { commit } else { CHUNK + LOOKAHEAD };
        let (chunk_digits, remainder) = extract(y, take);
        if let Some(expected) = previous_lookahead.take() {
            let overlap = expected.len().min(chunk_digits.len());
            if chunk_digits[..overlap] != expected[..overlap] {
                carry_warning = true;
            }
        }
        digits.extend_from_slice(&chunk_digits[..commit]);
        if last {
            carry_warning |= remainder.min(1.0 - remainder) < 1.0 / 256.0;
        } else {
            previous_lookahead = Some(chunk_digits[CHUNK..].to_vec());
        }
    }
    Ok(HexDigitRun {
        start_position,
        digits,
        carry_warning,
    })
}
