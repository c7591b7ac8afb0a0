//! The dispersionless limit `u_t + 6 u u_x = 0` by characteristics.
//!
//! The solution is `u = u0(ξ)` with `x = 6 t u0(ξ) + ξ`. Each sample is found
//! by a one-dimensional simplex on the squared residual; precision mode adds
//! a Newton polish.

use crate::numerics::roots::Mode;
use crate::numerics::simplex::{simplex_minimize, SimplexOptions};
use crate::profile::Profile;
use crate::{Error, Result};

/// Residual accepted in precision mode.
pub const PRECISION_RESIDUAL: f64 = 1e-10;
/// Residual accepted in exploratory mode.
pub const EXPLORATORY_RESIDUAL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfSample {
    pub x: f64,
    pub t: f64,
    /// Characteristic label.
    pub xi: f64,
    pub u: f64,
    /// `x - 6 t u0(ξ) - ξ`.
    pub residual: f64,
}

/// Which side of the oscillation zone a branch covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    LeftOfZone,
    RightOfZone,
}

fn residual(p: &Profile, x: f64, t: f64, xi: f64) -> f64 {
    x - 6.0 * t * p.evaluate(xi) - xi
}

fn tolerance(mode: Mode) -> f64 {
    match mode {
        Mode::Exploratory => EXPLORATORY_RESIDUAL,
        Mode::Precision => PRECISION_RESIDUAL,
    }
}

/// Solve for `ξ` at `(x, t)` starting from `xi_start`.
pub fn solve_at(p: &Profile, x: f64, t: f64, xi_start: f64, mode: Mode) -> Result<HopfSample> {
    let tol = tolerance(mode);
    let stop = match mode {
        Mode::Exploratory => tol * tol,
        Mode::Precision => 1e-30,
    };
    let opts = SimplexOptions { stop_value: stop, tol: 1e-15, max_iter: 2000, initial_step: 1e-2 };
    let r = simplex_minimize(|z| residual(p, x, t, z[0]).powi(2), &[xi_start], opts);
    let mut xi = r.point[0];
    let mut res = residual(p, x, t, xi);
    if mode == Mode::Precision {
        for _ in 0..8 {
            let d = -6.0 * t * p.derivative(xi) - 1.0;
            if d == 0.0 || res == 0.0 {
                break;
            }
            let nx = xi - res / d;
            let nr = residual(p, x, t, nx);
            if nr.abs() >= res.abs() {
                break;
            }
            xi = nx;
            res = nr;
        }
    }
    if !(res.abs() < tol) {
        return Err(Error::NonConvergence { what: format!("Hopf solve at x = {x}, t = {t}"), residual: res });
    }
    Ok(HopfSample { x, t, xi, u: p.evaluate(xi), residual: res })
}

/// Samples along a branch, plus the index of the first failed point.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfBranch {
    pub side: Side,
    pub samples: Vec<HopfSample>,
    pub failed_at: Option<usize>,
}

/// Continuation along `x_grid`, which must run from the single-valued
/// side toward the zone. The first point is seeded with `ξ = x`, every
/// later one with the previous `ξ`. Stops at the first failure.
pub fn solve_branch(p: &Profile, x_grid: &[f64], t: f64, side: Side, mode: Mode) -> HopfBranch {
    let mut samples = Vec::with_capacity(x_grid.len());
    let mut seed = x_grid.first().copied().unwrap_or(0.0);
    for (i, &x) in x_grid.iter().enumerate() {
        match solve_at(p, x, t, seed, mode) {
            Ok(s) => {
                seed = s.xi;
                samples.push(s);
            }
            Err(_) => return HopfBranch { side, samples, failed_at: Some(i) },
        }
    }
    HopfBranch { side, samples, failed_at: None }
}

/// Points `(6 t u + f±(u), u)` of the multivalued characteristic curve,
/// decreasing branch first. Used for plots only.
pub fn characteristic_curve(p: &Profile, t: f64, n: usize) -> Vec<(f64, f64)> {
    use crate::profile::Branch;
    let mut out = Vec::with_capacity(2 * n);
    let us: Vec<f64> = (1..n).map(|i| -1.0 + i as f64 / n as f64).collect();
    for &u in &us {
        if let Ok(x) = p.inverse(u, Branch::Decreasing) {
            out.push((6.0 * t * u + x, u));
        }
    }
    for &u in us.iter().rev() {
        if let Ok(x) = p.inverse(u, Branch::Increasing) {
            out.push((6.0 * t * u + x, u));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_time_zero() {
        let p = Profile::sech2();
        for x in [-3.0, -0.7, 0.0, 1.2] {
            let s = solve_at(&p, x, 0.0, x, Mode::Precision).unwrap();
            assert!((s.xi - x).abs() < 1e-12);
            assert!((s.u - p.evaluate(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn forward_substitution_example() {
        let p = Profile::sech2();
        let u = p.evaluate(-1.0);
        assert!((u + 0.419_974).abs() < 1e-6);
        let x = 6.0 * 0.1 * u - 1.0;
        assert!((x + 1.251_984).abs() < 1e-6);
        let s = solve_at(&p, x, 0.1, x, Mode::Precision).unwrap();
        assert!((s.xi + 1.0).abs() < 1e-10);
        assert!(s.residual.abs() < 1e-12);
    }

    #[test]
    fn critical_point_value() {
        let p = Profile::sech2();
        let cp = p.critical_point().unwrap();
        let s = solve_at(&p, cp.x_c, cp.t_c, cp.x_c, Mode::Exploratory).unwrap();
        assert!((s.u - cp.u_c).abs() < 1e-2);
    }

    #[test]
    fn branch_stops_at_failure() {
        let p = Profile::sech2();
        let xs = vec![-6.0, -5.0, f64::NAN, -3.0];
        let b = solve_branch(&p, &xs, 0.1, Side::LeftOfZone, Mode::Precision);
        assert_eq!(b.failed_at, Some(2));
        assert_eq!(b.samples.len(), 2);
    }

    #[test]
    fn curve_has_both_branches() {
        let c = characteristic_curve(&Profile::sech2(), 0.4, 50);
        assert_eq!(c.len(), 98);
        assert!(c[0].0 < c[97].0);
    }
}
