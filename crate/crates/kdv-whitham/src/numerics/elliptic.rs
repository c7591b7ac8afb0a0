//! Complete elliptic integrals by the arithmetic-geometric mean.
//!
//! The argument is the modulus `s`; the parameter is `m = s^2`:
//!
//! ```text
//! K(s) = int_0^{pi/2} dθ / sqrt(1 - s² sin²θ)
//! E(s) = int_0^{pi/2} sqrt(1 - s² sin²θ) dθ
//! ```

use std::f64::consts::PI;

use crate::{Error, Result};

/// `K(s)` and `E(s)` for one modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair {
    pub k: f64,
    pub e: f64,
    pub s: f64,
}

/// `K` and `E` at modulus `s ∈ [0, 1)`.
pub fn elliptic_ke(s: f64) -> Result<EllipticPair> {
    if !(0.0..1.0).contains(&s.abs()) || s.is_nan() {
        return Err(Error::Domain(format!("elliptic modulus must satisfy |s| < 1, got {s}")));
    }
    let (k, e) = ke_from_parameter(s * s, (1.0 - s * s).sqrt());
    Ok(EllipticPair { k, e, s })
}

/// `K` and `E` from the parameter `m` and the complementary modulus
/// `sqrt(1 - m)`, passed separately so callers can avoid cancellation.
pub fn ke_from_parameter(m: f64, kprime: f64) -> (f64, f64) {
    let (k, g) = k_and_deficit(m, kprime);
    (k, k * (1.0 - g))
}

/// `K` and `1 - E/K`, the latter free of cancellation for small `m`.
pub fn k_and_deficit(m: f64, kprime: f64) -> (f64, f64) {
    let mut a = 1.0f64;
    let mut b = kprime;
    // c_{n+1} = c_n² / (4 a_{n+1}) keeps every c accurate as m -> 0
    let mut c = m / (2.0 * (1.0 + kprime));
    let mut sum = 0.5 * m;
    let mut pow = 1.0;
    for _ in 0..40 {
        sum += pow * c * c;
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow *= 2.0;
        if c.abs() <= 1e-17 * a {
            break;
        }
        c = c * c / (2.0 * (a + b));
    }
    (PI / (2.0 * a), sum)
}

/// `K'(s) = K(sqrt(1 - s²))` and `E'(s)`.
pub fn complementary(s: f64) -> Result<EllipticPair> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::Domain(format!("complementary modulus needs 0 < s <= 1, got {s}")));
    }
    let sp = (1.0 - s * s).sqrt();
    let (k, e) = ke_from_parameter(1.0 - s * s, s);
    Ok(EllipticPair { k, e, s: sp })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_modulus() {
        let p = elliptic_ke(0.0).unwrap();
        assert_eq!(p.k, PI / 2.0);
        assert!((p.e - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        // K(1/sqrt 2) = Γ(1/4)² / (4 sqrt(pi))
        let p = elliptic_ke(0.5f64.sqrt()).unwrap();
        assert!((p.k - 1.854_074_677_301_372).abs() < 1e-14);
        assert!((p.e - 1.350_643_881_047_675_5).abs() < 1e-14);
    }

    #[test]
    fn small_modulus_series() {
        for s in [1e-3, 1e-2, 3e-2] {
            let m: f64 = s * s;
            let p = elliptic_ke(s).unwrap();
            let k = PI / 2.0 * (1.0 + m / 4.0 + 9.0 * m * m / 64.0);
            let e = PI / 2.0 * (1.0 - m / 4.0 - 3.0 * m * m / 64.0);
            assert!((p.k - k).abs() < (2.0 * m.powi(3)).max(1e-15));
            assert!((p.e - e).abs() < (2.0 * m.powi(3)).max(1e-15));
        }
    }

    #[test]
    fn log_limit() {
        let mut prev = f64::INFINITY;
        for d in [1e-4, 1e-6, 1e-8, 1e-10] {
            let (k, _) = ke_from_parameter(1.0 - d, d.sqrt());
            let gap = (k - 0.5 * (16.0 / d).ln()).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 1e-9);
    }

    #[test]
    fn rejects_unit_modulus() {
        assert!(elliptic_ke(1.0).is_err());
    }
}
