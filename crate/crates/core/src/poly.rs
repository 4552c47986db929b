//! The geometric polynomial 1 + t + ... + t^(k-1), its derivative, and its
//! logarithmic derivative. On [0, 1] the polynomial is at least 1, so the
//! ratio needs no pole handling there.

/// 1 + t + ... + t^(k-1), evaluated by Horner's rule.
pub fn geom_poly(k: u64, t: f64) -> f64 {
    let mut acc = 0.0;
    for _ in 0..k {
        acc = acc * t + 1.0;
    }
    acc
}

/// Derivative of [`geom_poly`]: sum of j*t^(j-1) for j = 1..k-1.
pub fn geom_poly_deriv(k: u64, t: f64) -> f64 {
    let mut acc = 0.0;
    for j in (1..k).rev() {
        acc = acc * t + j as f64;
    }
    acc
}

/// geom_poly_deriv / geom_poly.
pub fn geom_log_deriv(k: u64, t: f64) -> f64 {
    geom_poly_deriv(k, t) / geom_poly(k, t)
}
