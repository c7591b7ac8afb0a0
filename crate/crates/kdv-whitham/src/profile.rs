//! Single-hump initial data.
//!
//! A profile is a smooth, rapidly decaying `u0` with a unique minimum
//! `u0(0) = -1`. Its two monotone pieces have inverses `f-` (decreasing
//! branch, `x < 0`) and `f+` (increasing branch, `x > 0`). The sech² hump
//!
//! ```text
//! u0(x) = -1 / cosh² x,    f±(y) = ln((1 ± sqrt(1 + y)) / sqrt(-y))
//! ```
//!
//! comes with closed forms for everything below; any other profile is
//! handled by root finding and quadrature.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::numerics::chebyshev::{integral_cheb_weight, integral_endpoint_sqrt, QuadConfig};
use crate::numerics::roots::bisect;
use crate::numerics::simplex::{simplex_minimize, SimplexOptions};
use crate::{Error, Result};

/// Which monotone piece of the hump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `x < 0`, inverse `f-`.
    Decreasing,
    /// `x > 0`, inverse `f+`.
    Increasing,
}

/// Whether the lowest Riemann invariant is still on the decreasing branch
/// (`PreHump`) or has passed the minimum onto the increasing one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HumpRegime {
    PreHump,
    PostHump,
}

/// Point of gradient catastrophe of the Hopf flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub x_c: f64,
    pub t_c: f64,
    pub u_c: f64,
}

type Func = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Sech2,
    Generic { u0: Func },
}

/// Initial data. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Profile {
    kind: Kind,
    name: String,
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Profile").field("name", &self.name).finish()
    }
}

fn check_open_unit(y: f64) -> Result<()> {
    if y > -1.0 && y < 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("profile value must lie in (-1, 0), got {y}")))
    }
}

impl Profile {
    /// `u0(x) = -sech² x` with closed forms.
    pub fn sech2() -> Self {
        Profile { kind: Kind::Sech2, name: "sech2".into() }
    }

    /// A generic hump from its values alone. The caller guarantees a unique
    /// minimum `-1` at `x = 0` and decay to zero.
    pub fn from_fn(name: impl Into<String>, u0: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Profile { kind: Kind::Generic { u0: Arc::new(u0) }, name: name.into() }
    }

    /// A generic hump from samples `(x_i, u_i)` with strictly increasing
    /// `x`, interpolated by a natural cubic spline and held at the end
    /// values outside the table.
    pub fn from_samples(name: impl Into<String>, xs: Vec<f64>, us: Vec<f64>) -> Result<Self> {
        let spline = Spline::new(xs, us)?;
        Ok(Profile::from_fn(name, move |x| spline.eval(x)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// True when closed forms are used.
    pub fn is_closed_form(&self) -> bool {
        matches!(self.kind, Kind::Sech2)
    }

    /// The same data, forced onto the generic numerical path.
    pub fn as_generic(&self) -> Profile {
        match &self.kind {
            Kind::Sech2 => Profile::from_fn("sech2-generic", |x: f64| -1.0 / x.cosh().powi(2)),
            Kind::Generic { .. } => self.clone(),
        }
    }

    /// `u0(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Sech2 => -1.0 / x.cosh().powi(2),
            Kind::Generic { u0 } => u0(x),
        }
    }

    /// `u0'(x)`; five-point differences for generic data.
    pub fn derivative(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Sech2 => 2.0 * x.tanh() / x.cosh().powi(2),
            Kind::Generic { u0 } => {
                let h = 1e-3;
                (u0(x - 2.0 * h) - 8.0 * u0(x - h) + 8.0 * u0(x + h) - u0(x + 2.0 * h)) / (12.0 * h)
            }
        }
    }

    /// `f±(y)` for `y ∈ (-1, 0)`.
    pub fn inverse(&self, y: f64, branch: Branch) -> Result<f64> {
        check_open_unit(y)?;
        match &self.kind {
            Kind::Sech2 => {
                let r = (1.0 + y).sqrt();
                Ok(match branch {
                    Branch::Decreasing => -r.atanh(),
                    Branch::Increasing => r.atanh(),
                })
            }
            Kind::Generic { u0 } => {
                let sign = match branch {
                    Branch::Decreasing => -1.0,
                    Branch::Increasing => 1.0,
                };
                let mut far = 1.0;
                while u0(sign * far) <= y {
                    far *= 2.0;
                    if far > 1e4 {
                        return Err(Error::NonConvergence {
                            what: format!("bracket for inverse at y = {y}"),
                            residual: u0(sign * far) - y,
                        });
                    }
                }
                let (a, b) = if sign < 0.0 { (-far, 0.0) } else { (0.0, far) };
                let mut x = bisect(|x| u0(x) - y, a, b, 1e-15)?;
                for _ in 0..2 {
                    let d = self.derivative(x);
                    if d != 0.0 {
                        let nx = x - (u0(x) - y) / d;
                        if (nx - x).abs() < 1e-8 && nx * sign >= 0.0 {
                            x = nx;
                        }
                    }
                }
                Ok(x)
            }
        }
    }

    /// `f±'(y)`; diverges at both ends of `(-1, 0)`.
    pub fn inverse_derivative(&self, y: f64, branch: Branch) -> Result<f64> {
        check_open_unit(y)?;
        match &self.kind {
            Kind::Sech2 => {
                let v = 1.0 / (2.0 * y * (1.0 + y).sqrt());
                Ok(match branch {
                    Branch::Decreasing => v,
                    Branch::Increasing => -v,
                })
            }
            Kind::Generic { .. } => Ok(1.0 / self.derivative(self.inverse(y, branch)?)),
        }
    }

    /// `f-''(y)`.
    pub fn inverse_second_derivative(&self, y: f64) -> Result<f64> {
        check_open_unit(y)?;
        match &self.kind {
            Kind::Sech2 => {
                let w = 1.0 + y;
                Ok(-0.5 / (y * y * w.sqrt()) - 0.25 / (y * w * w.sqrt()))
            }
            Kind::Generic { .. } => {
                let h = 1e-4 * (1.0 + y).min(-y).min(1e-1) * 10.0;
                let g = |v: f64| self.inverse_derivative(v, Branch::Decreasing);
                Ok((g(y - 2.0 * h)? - 8.0 * g(y - h)? + 8.0 * g(y + h)? - g(y + 2.0 * h)?) / (12.0 * h))
            }
        }
    }

    /// `f-'''(y)` by fourth-order central differences of `f-'` with step
    /// `1e-3`.
    pub fn inverse_third_derivative(&self, y: f64) -> Result<f64> {
        let h = 1e-3;
        let g = |v: f64| self.inverse_derivative(v, Branch::Decreasing);
        Ok((-g(y + 2.0 * h)? + 16.0 * g(y + h)? - 30.0 * g(y)? + 16.0 * g(y - h)? - g(y - 2.0 * h)?)
            / (12.0 * h * h))
    }

    /// Gradient catastrophe point. Closed form for sech², otherwise
    /// [`Profile::critical_point_numeric`].
    pub fn critical_point(&self) -> Result<CriticalPoint> {
        match self.kind {
            Kind::Sech2 => {
                let s3 = 3f64.sqrt();
                Ok(CriticalPoint {
                    x_c: -s3 / 2.0 + ((s3 - 1.0) / 2f64.sqrt()).ln(),
                    t_c: s3 / 8.0,
                    u_c: -2.0 / 3.0,
                })
            }
            Kind::Generic { .. } => self.critical_point_numeric(),
        }
    }

    /// `t_c = min_ξ -1 / (6 u0'(ξ))` over the decreasing branch, by simplex.
    pub fn critical_point_numeric(&self) -> Result<CriticalPoint> {
        let g = |xi: f64| {
            let d = self.derivative(xi);
            if xi < 0.0 && d < 0.0 {
                -1.0 / (6.0 * d)
            } else {
                f64::INFINITY
            }
        };
        let mut best = (-0.5, f64::INFINITY);
        for i in 1..400 {
            let xi = -10.0 * i as f64 / 400.0;
            let v = g(xi);
            if v < best.1 {
                best = (xi, v);
            }
        }
        let opts = SimplexOptions { stop_value: f64::NEG_INFINITY, tol: 1e-12, max_iter: 2000, initial_step: 0.02 };
        let r = simplex_minimize(|z| g(z[0]), &[best.0], opts);
        if !r.converged || !r.value.is_finite() {
            return Err(Error::NonConvergence { what: "critical point".into(), residual: r.value });
        }
        // the minimum is flat; polish on u0'' = 0 instead
        let h = 1e-3;
        let u2 = |x: f64| {
            let u = |v: f64| self.evaluate(v);
            (-u(x + 2.0 * h) + 16.0 * u(x + h) - 30.0 * u(x) + 16.0 * u(x - h) - u(x - 2.0 * h)) / (12.0 * h * h)
        };
        let xi = bisect(u2, r.point[0] - 0.05, r.point[0] + 0.05, 1e-14).unwrap_or(r.point[0]);
        let t_c = g(xi);
        let u_c = self.evaluate(xi);
        Ok(CriticalPoint { x_c: xi + 6.0 * t_c * u_c, t_c, u_c })
    }

    /// The kernel
    ///
    /// ```text
    /// Φ(ξ, η) = 1/(2√2) ∫_{-1}^{1} f-'((1+m)ξ/2 + (1-m)η/2) / sqrt(1-m) dm
    /// ```
    ///
    /// and, with `regime = PostHump`, its continuation with `η` on the
    /// increasing branch. Closed form for sech², quadrature otherwise.
    pub fn phi_kernel(&self, xi: f64, eta: f64, regime: HumpRegime) -> Result<f64> {
        if !(xi > -1.0 && xi < 0.0 && (-1.0..0.0).contains(&eta)) {
            return Err(Error::Domain(format!("kernel arguments out of range: ({xi}, {eta})")));
        }
        if regime == HumpRegime::PostHump && xi <= eta {
            return Err(Error::Domain("post-hump kernel needs xi > eta".into()));
        }
        match (&self.kind, regime) {
            (Kind::Sech2, _) if xi == eta => self.inverse_derivative(xi, Branch::Decreasing),
            (Kind::Sech2, HumpRegime::PreHump) if xi < eta => {
                let a = ((eta - xi) / (-xi * (1.0 + eta))).sqrt();
                Ok(-a.atanh() / (2.0 * (-xi * (eta - xi)).sqrt()))
            }
            _ => {
                let x3 = if eta == -1.0 {
                    0.0
                } else {
                    match regime {
                        HumpRegime::PreHump => self.inverse(eta, Branch::Decreasing)?,
                        HumpRegime::PostHump => self.inverse(eta, Branch::Increasing)?,
                    }
                };
                if xi > eta && (self.is_closed_form() || regime == HumpRegime::PostHump || eta == -1.0) {
                    let (_, h) = self.moment_integrals(xi, eta, x3)?;
                    return Ok(-h / (2.0 * (xi - eta).sqrt()));
                }
                self.phi_quadrature(xi, eta)
            }
        }
    }

    /// Direct quadrature of the pre-hump kernel, `½ ∫_0^1 f-'(ξ + σ(η-ξ)) σ^{-1/2} dσ`.
    pub fn phi_quadrature(&self, xi: f64, eta: f64) -> Result<f64> {
        let mut err = None;
        let v = integral_endpoint_sqrt(
            |s| match self.inverse_derivative(xi + s * (eta - xi), Branch::Decreasing) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    f64::NAN
                }
            },
            0.0,
            1.0,
            QuadConfig::default(),
        );
        if let Some(e) = err {
            return Err(e);
        }
        Ok(0.5 * v?)
    }

    /// `J(λ) = ∫_{f-(λ)}^{X3} sqrt(λ - u0) dx` and
    /// `H(λ) = ∫_{f-(λ)}^{X3} dx / sqrt(λ - u0)` with `β3 = u0(X3) < λ`.
    /// `X3 < 0` is the pre-hump configuration, `X3 > 0` post-hump.
    pub fn moment_integrals(&self, lambda: f64, beta3: f64, x3: f64) -> Result<(f64, f64)> {
        match self.kind {
            Kind::Sech2 => Ok(sech2_jh(lambda, lambda - beta3, x3.tanh())),
            Kind::Generic { .. } => {
                let a = self.inverse(lambda, Branch::Decreasing)?;
                let b = x3;
                if !(b > a) {
                    return Err(Error::Domain(format!("moment integral needs X3 > f-(λ): {b} vs {a}")));
                }
                let d1 = -self.derivative(a);
                let h2 = 1e-3;
                let d2 = -(self.derivative(a + h2) - self.derivative(a - h2)) / (4.0 * h2);
                let cfg = QuadConfig { n_start: 64, n_max: 2048, tail_tol: 1e-12 };
                let j = integral_endpoint_sqrt(
                    |x| ((lambda - self.evaluate(x)).max(0.0) * (x - a)).sqrt(),
                    a,
                    b,
                    cfg,
                )?;
                let h = integral_endpoint_sqrt(
                    |x| {
                        let d = x - a;
                        if d < 1e-6 {
                            // λ - u0 loses all digits to cancellation here
                            1.0 / (d1 + d2 * d.max(0.0)).sqrt()
                        } else {
                            ((x - a) / (lambda - self.evaluate(x))).sqrt()
                        }
                    },
                    a,
                    b,
                    cfg,
                )?;
                Ok((j, h))
            }
        }
    }

    /// Second form of the post-hump kernel, quadrature of
    ///
    /// ```text
    /// Φ(λ, β3) = (∫_{β3}^{-1} f+'(y) dy / sqrt(λ - y) + ∫_{-1}^{λ} f-'(y) dy / sqrt(λ - y)) / (2 sqrt(λ - β3))
    /// ```
    ///
    /// with the `(1 + y)^{-1/2}` singularities of `f±'` absorbed into a
    /// Chebyshev weight.
    pub fn phi_post_hump_quadrature(&self, lambda: f64, beta3: f64) -> Result<f64> {
        let cfg = QuadConfig { n_start: 128, n_max: 4096, tail_tol: 1e-12 };
        let mut err = None;
        // f±'(y) sqrt(1+y) stays finite at y = -1; nudge the Lobatto node off it
        let mut g = |y: f64, br: Branch| match self.inverse_derivative(y.max(-1.0 + 1e-14), br) {
            Ok(v) => v * (1.0 + y.max(-1.0 + 1e-14)).sqrt(),
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        };
        // ∫_{-1}^{λ} f-'(y)/sqrt(λ-y) dy, weight 1/sqrt((1+y)(λ-y))
        let c = 0.5 * (lambda - 1.0);
        let w = 0.5 * (lambda + 1.0);
        let second = integral_cheb_weight(|v| g(c + w * v, Branch::Decreasing), cfg)?;
        // ∫_{-1}^{β3} f+'(y)/sqrt(λ-y) dy with 1/sqrt(1+y) taken by the endpoint substitution
        let first = if beta3 > -1.0 {
            integral_endpoint_sqrt(|y| g(y, Branch::Increasing) / (lambda - y).sqrt(), -1.0, beta3, cfg)?
        } else {
            0.0
        };
        if let Some(e) = err {
            return Err(e);
        }
        Ok((second - first) / (2.0 * (lambda - beta3).sqrt()))
    }
}

/// `atan(z) - z`, accurate for small `z`.
fn atan_minus_id(z: f64) -> f64 {
    if z.abs() < 0.1 {
        let z2 = z * z;
        let mut term = z;
        let mut sum = 0.0;
        for k in 1..16 {
            term *= -z2;
            sum += term / (2 * k + 1) as f64;
        }
        sum
    } else {
        z.atan() - z
    }
}

/// Closed-form `(J, H)` for sech², with `Δ = λ - β3` and `τ3 = tanh X3`.
pub(crate) fn sech2_jh(lambda: f64, delta: f64, tau3: f64) -> (f64, f64) {
    let s = (-lambda).sqrt();
    let r = delta.max(0.0).sqrt();
    let h = r.atan2(-tau3 * s) / s;
    let j = if tau3 < 0.0 && r < 0.3 * tau3.abs() * s {
        let z1 = r / tau3.abs();
        atan_minus_id(z1) - s * atan_minus_id(z1 / s)
    } else {
        r.atan2(-tau3) - s * r.atan2(-tau3 * s)
    };
    (j, h)
}

/// Natural cubic spline through tabulated data.
#[derive(Debug, Clone)]
struct Spline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    m: Vec<f64>,
}

impl Spline {
    fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 4 || ys.len() != n {
            return Err(Error::Domain("tabulated profile needs at least 4 (x, u) rows".into()));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("tabulated profile x must be strictly increasing".into()));
        }
        let mut m = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            let a = h0 / 6.0;
            let b = (h0 + h1) / 3.0;
            let cc = h1 / 6.0;
            let rhs = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
            let denom = b - a * c[i - 1];
            c[i] = cc / denom;
            d[i] = (rhs - a * d[i - 1]) / denom;
        }
        for i in (1..n - 1).rev() {
            m[i] = d[i] - c[i] * m[i + 1];
        }
        Ok(Spline { xs, ys, m })
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}

/// Hump time value `T = π / (6 sqrt 3)` for sech².
pub const SECH2_HUMP_TIME: f64 = PI / (6.0 * 1.732_050_807_568_877_2);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let p = Profile::sech2();
        assert_eq!(p.evaluate(0.0), -1.0);
        assert!((p.evaluate(-1.0) + 0.419_974_341_614_026_1).abs() < 1e-15);
        let g = p.as_generic();
        assert!((g.evaluate(-1.0) - p.evaluate(-1.0)).abs() < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        let p = Profile::sech2();
        let v = p.inverse(-2.0 / 3.0, Branch::Decreasing).unwrap();
        let want = ((1.0 - (1.0f64 / 3.0).sqrt()) / (2.0f64 / 3.0).sqrt()).ln();
        assert!((v - want).abs() < 1e-15);
        assert!((v + 0.658_478_948_462_408).abs() < 1e-12);
        let a = p.inverse(-0.5, Branch::Decreasing).unwrap();
        let b = p.inverse(-0.5, Branch::Increasing).unwrap();
        assert!((a + b).abs() < 1e-15);
        assert!(p.inverse(-1.0 + 1e-15, Branch::Decreasing).unwrap().abs() < 1e-6);
        assert!(p.inverse(0.0, Branch::Decreasing).is_err());
        assert!(p.inverse(-1.2, Branch::Increasing).is_err());
    }

    #[test]
    fn inverse_derivative_examples() {
        let p = Profile::sech2();
        let d = p.inverse_derivative(-2.0 / 3.0, Branch::Decreasing).unwrap();
        assert!((d + 3.0 * 3f64.sqrt() / 4.0).abs() < 1e-14);
        let d = p.inverse_derivative(-0.5, Branch::Decreasing).unwrap();
        assert!((d + 2f64.sqrt()).abs() < 1e-14);
        let h = 1e-5;
        let fd = (p.inverse(-0.3 + h, Branch::Decreasing).unwrap()
            - p.inverse(-0.3 - h, Branch::Decreasing).unwrap())
            / (2.0 * h);
        assert!((fd - p.inverse_derivative(-0.3, Branch::Decreasing).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn critical_point_closed_and_numeric() {
        let p = Profile::sech2();
        let cp = p.critical_point().unwrap();
        assert!((cp.x_c + 1.524_504).abs() < 1e-6);
        assert!((cp.t_c - 0.216_506).abs() < 1e-6);
        let num = p.as_generic().critical_point().unwrap();
        assert!((num.t_c - cp.t_c).abs() < 1e-8);
        assert!((num.x_c - cp.x_c).abs() < 1e-8);
        assert!((num.u_c - cp.u_c).abs() < 1e-8);
    }

    #[test]
    fn rescaled_hump_scales_critical_time() {
        let lam = 2.5;
        let p = Profile::from_fn("wide", move |x: f64| -1.0 / (x / lam).cosh().powi(2));
        let cp = p.critical_point().unwrap();
        assert!((cp.t_c - lam * 3f64.sqrt() / 8.0).abs() < 1e-8);
    }

    #[test]
    fn kernel_examples() {
        let p = Profile::sech2();
        let uc = -2.0 / 3.0;
        let v = p.phi_kernel(uc, uc, HumpRegime::PreHump).unwrap();
        assert!((v + 1.299_038).abs() < 1e-6);
        let closed = p.phi_kernel(-0.4, -0.8, HumpRegime::PreHump).unwrap();
        let quad = p.phi_quadrature(-0.4, -0.8).unwrap();
        assert!((closed - quad).abs() < 1e-8);
        assert!((closed + 1.437_827_489_388_664).abs() < 1e-12);
        let below = p.phi_kernel(-0.8, -0.4, HumpRegime::PreHump).unwrap();
        assert!((below + 1.365_144_729_122_99).abs() < 1e-12);
        assert!((below - p.phi_quadrature(-0.8, -0.4).unwrap()).abs() < 1e-10);
        let hump = p.phi_kernel(-0.25, -1.0, HumpRegime::PreHump).unwrap();
        assert!((hump + 6.0 * SECH2_HUMP_TIME).abs() < 1e-12);
    }

    #[test]
    fn generic_kernel_matches_closed_form() {
        let p = Profile::sech2();
        let g = p.as_generic();
        for (xi, eta) in [(-0.4, -0.8), (-0.7, -0.3), (-0.25, -1.0)] {
            let a = p.phi_kernel(xi, eta, HumpRegime::PreHump).unwrap();
            let b = g.phi_kernel(xi, eta, HumpRegime::PreHump).unwrap();
            assert!((a - b).abs() < 1e-8, "({xi}, {eta}): {a} vs {b}");
        }
        let a = p.phi_kernel(-0.3, -0.9, HumpRegime::PostHump).unwrap();
        let b = g.phi_kernel(-0.3, -0.9, HumpRegime::PostHump).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn post_hump_kernel_second_form() {
        let p = Profile::sech2();
        for (l, b3) in [(-0.3, -0.9), (-0.15, -0.95), (-0.5, -0.99)] {
            let a = p.phi_kernel(l, b3, HumpRegime::PostHump).unwrap();
            let b = p.phi_post_hump_quadrature(l, b3).unwrap();
            assert!((a - b).abs() < 1e-9, "({l}, {b3}): {a} vs {b}");
        }
    }

    #[test]
    fn kernel_is_continuous_over_the_hump() {
        let p = Profile::sech2();
        let eps = 1e-12;
        let a = p.phi_kernel(-0.3, -1.0 + eps, HumpRegime::PreHump).unwrap();
        let b = p.phi_kernel(-0.3, -1.0 + eps, HumpRegime::PostHump).unwrap();
        assert!((a - b).abs() < 1e-5);
    }

    #[test]
    fn spline_profile() {
        let xs: Vec<f64> = (0..=400).map(|i| -10.0 + 0.05 * i as f64).collect();
        let us: Vec<f64> = xs.iter().map(|x| -1.0 / x.cosh().powi(2)).collect();
        let p = Profile::from_samples("table", xs, us).unwrap();
        assert!((p.evaluate(-0.73) + 1.0 / 0.73f64.cosh().powi(2)).abs() < 1e-5);
        assert!(Profile::from_samples("bad", vec![0.0, 1.0, 1.0, 2.0], vec![0.0; 4]).is_err());
    }
}
