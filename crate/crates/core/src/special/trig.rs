//! sin(πx) and cos(πx) with exact results at multiples of 1/2.

use std::f64::consts::PI;

/// Returns `(sin(πx), cos(πx))`.
pub fn sincos_pi(x: f64) -> (f64, f64) {
    if !x.is_finite() {
        return (f64::NAN, f64::NAN);
    }
    // reduce to r in [-1, 1] with x = 2m + r
    let r = x - 2.0 * (0.5 * x).round();
    let twice = 2.0 * r;
    if twice == twice.round() {
        return match twice as i64 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            -1 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
    }
    let (s, c) = (PI * r).sin_cos();
    (s, c)
}

pub fn sin_pi(x: f64) -> f64 {
    sincos_pi(x).0
}

pub fn cos_pi(x: f64) -> f64 {
    sincos_pi(x).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_at_half_integers() {
        assert_eq!(sincos_pi(0.0), (0.0, 1.0));
        assert_eq!(sincos_pi(1.0), (0.0, -1.0));
        assert_eq!(sincos_pi(-1.0), (0.0, -1.0));
        assert_eq!(sincos_pi(0.5), (1.0, 0.0));
        assert_eq!(sincos_pi(1.5), (-1.0, 0.0));
        assert_eq!(sincos_pi(-0.5), (-1.0, 0.0));
        assert_eq!(sin_pi(7.0), 0.0);
        assert_eq!(cos_pi(4.0), 1.0);
    }

    #[test]
    fn matches_libm_elsewhere() {
        for i in -40..=40 {
            let x = 0.137 * i as f64;
            assert!((sin_pi(x) - (PI * x).sin()).abs() < 1e-14);
            assert!((cos_pi(x) - (PI * x).cos()).abs() < 1e-14);
        }
    }
}
