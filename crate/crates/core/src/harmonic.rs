//! Harmonic numbers: exact rational values, correctly rounded conversions,
//! and stable float paths for indices too large for exact arithmetic.

use crate::elementary::{CompensatedSum, EULER_GAMMA};
use crate::{Error, Result};
use num::bigint::{BigInt, BigUint};
use num::{BigRational, Integer, One, Zero};
use std::cmp::Ordering;

/// Above this index `harmonic_real` switches from the exact rational value
/// to the asymptotic expansion (whose error is already < 1e-24 there).
pub const ASYMPTOTIC_CROSSOVER: u64 = 1_000_000;

/// Exact harmonic number H_n = 1 + 1/2 + ... + 1/n.
pub fn harmonic(n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("harmonic: index must be >= 1".into()));
    }
    Ok(reciprocal_range_sum(1, n))
}

/// Exact sum of 1/j over lo..=hi.
///
/// Divide-and-conquer keeps intermediate denominators near the lcm of the
/// range instead of its full product; the reduction work stays at the top
/// few merge levels.
pub fn reciprocal_range_sum(lo: u64, hi: u64) -> BigRational {
    assert!(1 <= lo && lo <= hi, "empty or zero-based range");
    if hi - lo < 8 {
        let mut acc = BigRational::zero();
        for j in lo..=hi {
            acc += BigRational::new(BigInt::one(), BigInt::from(j));
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        reciprocal_range_sum(lo, mid) + reciprocal_range_sum(mid + 1, hi)
    }
}

/// Compensated float sum of 1/j over lo..=hi.
pub fn reciprocal_range_sum_f64(lo: u64, hi: u64) -> f64 {
    assert!(1 <= lo && lo <= hi, "empty or zero-based range");
    let mut acc = CompensatedSum::new();
    for j in lo..=hi {
        acc.add(1.0 / j as f64);
    }
    acc.value()
}

/// Compensated float prefix sum H_n; absolute error stays near one ulp.
pub fn harmonic_float(n: u64) -> f64 {
    reciprocal_range_sum_f64(1, n)
}

/// H_n as a float: exact rational rounding up to the crossover, the
/// asymptotic expansion above it.
pub fn harmonic_real(n: u64) -> Result<f64> {
    harmonic_real_with_crossover(n, ASYMPTOTIC_CROSSOVER)
}

/// Same as [`harmonic_real`] with a caller-chosen crossover.
pub fn harmonic_real_with_crossover(n: u64, crossover: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("harmonic_real: index must be >= 1".into()));
    }
    if n <= crossover {
        Ok(to_f64_exact(&harmonic(n)?))
    } else {
        Ok(harmonic_asymptotic(n))
    }
}

/// ln n + gamma + 1/(2n) - 1/(12n^2); the dropped term is +1/(120n^4).
fn harmonic_asymptotic(n: u64) -> f64 {
    let x = n as f64;
    x.ln() + EULER_GAMMA + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x)
}

/// Round an exact rational to the nearest f64 (ties to even).
///
/// Works on the raw big integers so it stays correct when numerator and
/// denominator are thousands of digits (naive numer/denom conversion
/// overflows to inf/inf).
pub fn to_f64_exact(r: &BigRational) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    let negative = r.numer().sign() == num::bigint::Sign::Minus;
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();

    // Scale so the integer quotient lands in [2^54, 2^56): 53 mantissa bits
    // plus 2-3 rounding bits.
    let shift = 55 - (num.bits() as i64 - den.bits() as i64);
    let (q, rem) = if shift >= 0 {
        (num << shift as usize).div_rem(den)
    } else {
        num.div_rem(&(den << (-shift) as usize))
    };

    let drop = q.bits() as i64 - 53;
    debug_assert!((2..=3).contains(&drop));
    let head = &q >> drop as usize;
    let tail = &q - (&head << drop as usize);
    let half = BigUint::one() << (drop - 1) as usize;

    let mut mantissa = head
        .to_u64_digits()
        .first()
        .copied()
        .expect("53-bit mantissa fits one limb");
    let round_up = match tail.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => !rem.is_zero() || mantissa & 1 == 1,
    };
    let mut exp = (drop - shift) as i32;
    if round_up {
        mantissa += 1;
        if mantissa == 1 << 53 {
            mantissa >>= 1;
            exp += 1;
        }
    }

    let magnitude = ldexp(mantissa as f64, exp);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// m * 2^e without rounding in the normal range (split scaling avoids
/// spurious overflow of the intermediate power).
fn ldexp(m: f64, e: i32) -> f64 {
    if (-900..=900).contains(&e) {
        m * 2f64.powi(e)
    } else if e > 0 {
        m * 2f64.powi(900) * 2f64.powi(e - 900)
    } else {
        m * 2f64.powi(-900) * 2f64.powi(e + 900)
    }
}
