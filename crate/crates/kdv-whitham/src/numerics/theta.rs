//! Jacobi theta series `θ(z; T) = sum_n exp(pi i n² T + 2 pi i n z)` for
//! purely imaginary `T = i κ`, where it is real for real `z`:
//!
//! ```text
//! θ(z) = 1 + 2 sum_{n>=1} exp(-pi κ n²) cos(2 pi n z)
//! ```

use std::f64::consts::PI;

use crate::{Error, Result};

/// Hard cap on the number of summed terms.
pub const TERM_CAP: usize = 100_000;

/// `θ` and its first two `z`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub theta: f64,
    pub d1: f64,
    pub d2: f64,
}

impl ThetaValue {
    /// `d²/dz² log θ`.
    pub fn log_second_derivative(&self) -> f64 {
        self.d2 / self.theta - (self.d1 / self.theta).powi(2)
    }
}

/// Sum the series symmetrically until the terms drop below `tol`.
pub fn theta3(z: f64, tau_im: f64, tol: f64) -> Result<ThetaValue> {
    if !(tau_im > 0.0) {
        return Err(Error::Domain(format!("theta needs Im T > 0, got {tau_im}")));
    }
    if tau_im < 1e-3 {
        return Err(Error::SlowConvergence { tau_im });
    }
    let mut v = ThetaValue { theta: 1.0, d1: 0.0, d2: 0.0 };
    for n in 1..=TERM_CAP {
        let nf = n as f64;
        let w = 2.0 * (-PI * tau_im * nf * nf).exp();
        let (s, c) = (2.0 * PI * nf * z).sin_cos();
        let k = 2.0 * PI * nf;
        v.theta += w * c;
        v.d1 -= w * k * s;
        v.d2 -= w * k * k * c;
        if w * k * k < tol {
            return Ok(v);
        }
    }
    Err(Error::SlowConvergence { tau_im })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_and_even() {
        for z in [0.1, 0.37, -0.8] {
            let a = theta3(z, 0.7, 1e-16).unwrap();
            let b = theta3(z + 1.0, 0.7, 1e-16).unwrap();
            let c = theta3(-z, 0.7, 1e-16).unwrap();
            assert!((a.theta - b.theta).abs() < 1e-13);
            assert!((a.theta - c.theta).abs() < 1e-15);
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let h = 1e-5;
        let z = 0.23;
        let v = theta3(z, 0.4, 1e-16).unwrap();
        let p = theta3(z + h, 0.4, 1e-16).unwrap().theta;
        let m = theta3(z - h, 0.4, 1e-16).unwrap().theta;
        assert!(((p - m) / (2.0 * h) - v.d1).abs() < 1e-7);
        assert!(((p - 2.0 * v.theta + m) / (h * h) - v.d2).abs() < 1e-3);
    }

    #[test]
    fn tiny_imaginary_part_rejected() {
        assert!(matches!(theta3(0.0, 1e-4, 1e-15), Err(Error::SlowConvergence { .. })));
    }
}
