//! Jacobi elliptic functions by descending Landen / AGM.

/// `(sn, cn, dn)` at argument `z` and modulus `s ∈ [0, 1]`.
pub fn jacobi_sncndn(z: f64, s: f64) -> (f64, f64, f64) {
    let m = s * s;
    sncndn_parameter(z, m, (1.0 - m).max(0.0).sqrt())
}

/// Same with the parameter `m` and `sqrt(1 - m)` given separately.
pub fn sncndn_parameter(z: f64, m: f64, kprime: f64) -> (f64, f64, f64) {
    if m == 0.0 {
        return (z.sin(), z.cos(), 1.0);
    }
    if kprime == 0.0 {
        let c = 1.0 / z.cosh();
        return (z.tanh(), c, c);
    }
    const LEVELS: usize = 16;
    let mut a = [0.0f64; LEVELS + 1];
    let mut c = [0.0f64; LEVELS + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = kprime;
    let mut n = 0;
    while n < LEVELS {
        let an = 0.5 * (a[n] + b);
        let cn = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
        a[n] = an;
        c[n] = cn;
        if cn.abs() <= 1e-16 * an {
            break;
        }
    }
    let mut phi = (1u64 << n) as f64 * a[n] * z;
    let mut prev = phi;
    for j in (1..=n).rev() {
        prev = phi;
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let d = (prev - phi).cos();
    // near odd multiples of K both cn and d vanish; dn² = cn² + k'² sn² holds there
    let dn = if n >= 1 && d.abs() > 1e-3 { cn / d } else { (cn * cn + kprime * kprime * sn * sn).sqrt() };
    (sn, cn, dn)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin() {
        for s in [0.0, 0.3, 0.9, 1.0] {
            let (sn, cn, dn) = jacobi_sncndn(0.0, s);
            assert_eq!((sn, cn, dn), (0.0, 1.0, 1.0));
        }
    }

    #[test]
    fn half_period() {
        let m: f64 = 0.4 / 0.7;
        let kp = (1.0 - m).sqrt();
        let (k, _) = crate::numerics::elliptic::ke_from_parameter(m, kp);
        for j in [1.0, 3.0, -5.0] {
            let (_, _, dn) = sncndn_parameter(j * k, m, kp);
            assert!((dn - kp).abs() < 1e-13, "{dn}");
        }
    }

    #[test]
    fn degenerate_moduli() {
        for z in [-2.0, 0.4, 3.0] {
            let (sn, cn, dn) = jacobi_sncndn(z, 0.0);
            assert_eq!((sn, cn, dn), (f64::sin(z), f64::cos(z), 1.0));
            let (sn, cn, dn) = jacobi_sncndn(z, 1.0);
            assert!((sn - f64::tanh(z)).abs() < 1e-15);
            assert!((cn - 1.0 / f64::cosh(z)).abs() < 1e-15);
            assert!((dn - 1.0 / f64::cosh(z)).abs() < 1e-15);
        }
    }

    #[test]
    fn reference_value() {
        // sn(0.5 | m = 0.5)
        let (sn, cn, dn) = jacobi_sncndn(0.5, 0.5f64.sqrt());
        assert!((sn - 0.470_750_473_655_657).abs() < 1e-14);
        assert!((cn - 0.882_266_394_890_439).abs() < 1e-14);
        assert!((dn - 0.942_972_425_777_386).abs() < 1e-14);
    }

    #[test]
    fn near_unit_modulus_tends_to_sech() {
        let d: f64 = 1e-14;
        let (_, _, dn) = sncndn_parameter(1.3, 1.0 - d, d.sqrt());
        assert!((dn - 1.0 / 1.3f64.cosh()).abs() < 1e-10);
    }
}
