//! Elementary evaluations and constants shared by the closed forms.

use crate::{Error, Result};
use std::f64::consts::PI;

/// Euler-Mascheroni constant, correctly rounded.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// pi^2 as a correctly rounded literal (not computed as PI*PI, which is
/// off by the squared rounding of PI).
pub const PI_SQUARED: f64 = 9.869_604_401_089_358_618_8;

/// log(2 sin(theta)) for theta in the open interval (0, pi).
///
/// The zeros at theta = pi/6 and 5pi/6 are where the absolute error floor
/// (~1e-16 from the argument rounding) dominates the relative error.
pub fn log_2sin(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    Ok((2.0 * theta.sin()).ln())
}

/// cot(theta) = cos(theta)/sin(theta) for theta in (0, pi).
pub fn cot(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    Ok(theta.cos() / theta.sin())
}

fn check_angle(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "angle {theta} outside the open interval (0, pi)"
        )))
    }
}

/// Neumaier-compensated accumulator: keeps the running error of a long f64
/// sum near one ulp of the total instead of growing with the term count.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
