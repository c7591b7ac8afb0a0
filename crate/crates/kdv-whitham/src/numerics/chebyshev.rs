//! Chebyshev collocation: fit, antiderivative, quadrature.
//!
//! Samples live on the Lobatto points `x_l = cos(pi l / N)`, `l = 0..=N`, so a
//! series with `N + 1` coefficients is fitted from `N + 1` samples by a
//! DCT-I, done here as an FFT of the even extension.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::{Error, Result};

/// Coefficients `a_0..a_N` of `sum a_n T_n(x)` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
}

/// Quadrature resolution policy: start at `n_start` coefficients and double
/// up to `n_max` until the tail test passes.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub n_start: usize,
    pub n_max: usize,
    /// Relative size of the last two coefficients that counts as resolved.
    pub tail_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { n_start: 128, n_max: 1024, tail_tol: 1e-12 }
    }
}

/// Lobatto points `cos(pi l / n)` for `l = 0..=n`.
pub fn cheb_points(n: usize) -> Vec<f64> {
    (0..=n).map(|l| (PI * l as f64 / n as f64).cos()).collect()
}

/// Fit from samples at [`cheb_points`]; `samples.len() = N + 1`, `N >= 1`.
pub fn cheb_fit(samples: &[f64]) -> ChebSeries {
    let n = samples.len() - 1;
    assert!(n >= 1, "need at least two samples");
    let m = 2 * n;
    let mut buf: Vec<Complex64> = (0..m)
        .map(|j| {
            let l = if j <= n { j } else { m - j };
            Complex64::new(samples[l], 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let mut coeffs: Vec<f64> = buf[..=n].iter().map(|c| c.re / n as f64).collect();
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    ChebSeries { coeffs }
}

impl ChebSeries {
    /// Degree `N` (one less than the number of coefficients).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &a in self.coeffs.iter().skip(1).rev() {
            let b0 = a + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + x * b1 - b2
    }

    /// `F` with `F' = f` and `F(-1) = 0`.
    pub fn antiderivative(&self) -> ChebSeries {
        let a = &self.coeffs;
        let n = a.len() - 1;
        let at = |k: usize| if k <= n { a[k] } else { 0.0 };
        let mut b = vec![0.0; n + 1];
        if n >= 1 {
            b[1] = (2.0 * a[0] - at(2)) / 2.0;
        }
        for k in 2..n {
            b[k] = (a[k - 1] - a[k + 1]) / (2.0 * k as f64);
        }
        if n >= 2 {
            b[n] = a[n - 1] / (2.0 * n as f64);
        }
        b[0] = -(1..=n).map(|k| if k % 2 == 1 { -b[k] } else { b[k] }).sum::<f64>();
        ChebSeries { coeffs: b }
    }

    /// Term-by-term derivative, same length as `self`.
    pub fn derivative(&self) -> ChebSeries {
        let a = &self.coeffs;
        let n = a.len() - 1;
        let mut c = vec![0.0; n + 1];
        if n >= 1 {
            c[n - 1] = 2.0 * n as f64 * a[n];
            for k in (0..n.saturating_sub(1)).rev() {
                c[k] = c[k + 2] + 2.0 * (k + 1) as f64 * a[k + 1];
            }
            c[0] *= 0.5;
        }
        ChebSeries { coeffs: c }
    }

    /// `int_{-1}^{1} f`, twice the sum of the odd antiderivative coefficients.
    pub fn integral(&self) -> f64 {
        let b = self.antiderivative().coeffs;
        2.0 * b.iter().skip(1).step_by(2).sum::<f64>()
    }

    /// Largest of the last two coefficients relative to the largest one.
    pub fn tail(&self) -> f64 {
        let n = self.coeffs.len();
        let scale = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let last = self.coeffs[n - 1].abs().max(if n >= 2 { self.coeffs[n - 2].abs() } else { 0.0 });
        last / scale
    }
}

fn fit_fn(f: &mut impl FnMut(f64) -> f64, n: usize) -> ChebSeries {
    let samples: Vec<f64> = cheb_points(n).into_iter().map(&mut *f).collect();
    cheb_fit(&samples)
}

fn adaptive(
    mut f: impl FnMut(f64) -> f64,
    cfg: QuadConfig,
    what: &'static str,
    reduce: impl Fn(&ChebSeries) -> f64,
) -> Result<f64> {
    let mut n = cfg.n_start.max(2);
    loop {
        let s = fit_fn(&mut f, n);
        let tail = s.tail();
        if !tail.is_finite() {
            return Err(Error::NonFinite(what));
        }
        if tail <= cfg.tail_tol {
            return Ok(reduce(&s));
        }
        if n >= cfg.n_max {
            return Err(Error::Resolution { what, tail, n });
        }
        n *= 2;
    }
}

/// `int_{-1}^{1} f(x) dx`.
pub fn integral(f: impl FnMut(f64) -> f64, cfg: QuadConfig) -> Result<f64> {
    adaptive(f, cfg, "chebyshev integral", ChebSeries::integral)
}

/// `int_a^b f(mu) / sqrt(mu - a) dmu` via `mu = a + (b - a)(1 + y)^2 / 4`.
pub fn integral_endpoint_sqrt(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    cfg: QuadConfig,
) -> Result<f64> {
    if !(b > a) {
        return Err(Error::Domain(format!("endpoint-sqrt integral needs a < b, got [{a}, {b}]")));
    }
    let w = b - a;
    let v = adaptive(
        |y| f(a + w * (1.0 + y) * (1.0 + y) / 4.0),
        cfg,
        "endpoint-sqrt integral",
        ChebSeries::integral,
    )?;
    Ok(w.sqrt() * v)
}

/// `int_{-1}^{1} f(nu) / sqrt(1 - nu^2) dnu = pi a_0`.
pub fn integral_cheb_weight(f: impl FnMut(f64) -> f64, cfg: QuadConfig) -> Result<f64> {
    adaptive(f, cfg, "chebyshev-weight integral", |s| PI * s.coeffs[0])
}

/// Fixed-resolution variant returning `(pi a_0, tail)` for callers that do
/// their own resolution bookkeeping.
pub fn cheb_weight_fixed(samples: &[f64]) -> (f64, f64) {
    let s = cheb_fit(samples);
    (PI * s.coeffs[0], s.tail())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit(f: impl Fn(f64) -> f64, n: usize) -> ChebSeries {
        cheb_fit(&cheb_points(n).into_iter().map(f).collect::<Vec<_>>())
    }

    #[test]
    fn fits_t3_and_constant() {
        let s = fit(|x| 4.0 * x * x * x - 3.0 * x, 16);
        for (k, a) in s.coeffs.iter().enumerate() {
            let want = if k == 3 { 1.0 } else { 0.0 };
            assert!((a - want).abs() < 1e-14, "a_{k} = {a}");
        }
        let s = fit(|_| 1.0, 8);
        assert!((s.coeffs[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exp_tail_and_reproduction() {
        let s = fit(f64::exp, 32);
        assert!(s.coeffs[32].abs() < 1e-12);
        for x in cheb_points(32) {
            assert!((s.eval(x) - x.exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn antiderivative_examples() {
        let one = ChebSeries { coeffs: vec![1.0, 0.0, 0.0] };
        let f = one.antiderivative();
        assert!((f.coeffs[1] - 1.0).abs() < 1e-15);
        assert!(f.eval(-1.0).abs() < 1e-15);
        let t1 = ChebSeries { coeffs: vec![0.0, 1.0, 0.0, 0.0] };
        let f = t1.antiderivative();
        for x in [-0.7, 0.0, 0.3, 1.0] {
            assert!((f.eval(x) - (x * x - 1.0) / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn integrals() {
        let cfg = QuadConfig::default();
        assert!((integral(|_| 1.0, cfg).unwrap() - 2.0).abs() < 1e-14);
        assert!(integral(|x| x, cfg).unwrap().abs() < 1e-14);
        let e = std::f64::consts::E;
        assert!((integral(f64::exp, cfg).unwrap() - (e - 1.0 / e)).abs() < 1e-12);
    }

    #[test]
    fn endpoint_sqrt_examples() {
        let cfg = QuadConfig::default();
        assert!((integral_endpoint_sqrt(|_| 1.0, 0.0, 1.0, cfg).unwrap() - 2.0).abs() < 1e-14);
        assert!((integral_endpoint_sqrt(|m| m, 0.0, 1.0, cfg).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!(integral_endpoint_sqrt(|m| m, 1.0, 1.0, cfg).is_err());
    }

    #[test]
    fn cheb_weight_examples() {
        let cfg = QuadConfig::default();
        assert!((integral_cheb_weight(|_| 1.0, cfg).unwrap() - PI).abs() < 1e-14);
        assert!(integral_cheb_weight(|x| 2.0 * x * x - 1.0, cfg).unwrap().abs() < 1e-14);
        // pi I_0(1)
        let i0 = 1.266_065_877_752_008_4;
        assert!((integral_cheb_weight(f64::exp, cfg).unwrap() - PI * i0).abs() < 1e-12);
    }

    #[test]
    fn unresolved_is_reported() {
        let cfg = QuadConfig { n_start: 16, n_max: 64, tail_tol: 1e-12 };
        let err = integral(|x| x.abs(), cfg).unwrap_err();
        assert!(matches!(err, Error::Resolution { .. }));
    }
}
