//! Zone edges, the hump crossing, and the semi-cubic laws near breakup.
//!
//! Leading edge (`β2 = β3 = b3`, outer `β1 = b1`):
//!
//! ```text
//! x = 6 t b1 + f-(b1),   Φ(b3, b1) + 6t = 0,   ∂_ξ Φ(b3, b1) = 0
//! ```
//!
//! Trailing edge (`β1 = β2 = β`, outer `β3`), with `Δ = β - β3`:
//!
//! ```text
//! -H(β) / (2 sqrt Δ) + 6t = 0,   J(β) / Δ^{3/2} - 4t = 0,   x = 6 t β3 + X3
//! ```
//!
//! These are the `β2 → β1` limits of the hodograph system; they hold on
//! both sides of the hump. With `X3 = 0` the same pair gives the hump time.

use crate::numerics::chebyshev::{integral_endpoint_sqrt, QuadConfig};
use crate::numerics::roots::{bisect, solve_system, Mode};
use crate::profile::{Branch, CriticalPoint, Profile};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Leading,
    Trailing,
}

/// One edge at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgePoint {
    pub kind: EdgeKind,
    pub t: f64,
    pub x_edge: f64,
    /// `β1` at the leading edge, `β3` at the trailing edge.
    pub beta_outer: f64,
    /// The merged pair.
    pub beta_double: f64,
    /// `u0(X3) = β3`.
    pub x3: f64,
    /// Summed squared residual of the edge system.
    pub residual: f64,
}

impl EdgePoint {
    /// `(β1, β2, β3)` at the edge.
    pub fn beta(&self) -> [f64; 3] {
        match self.kind {
            EdgeKind::Leading => [self.beta_outer, self.beta_double, self.beta_double],
            EdgeKind::Trailing => [self.beta_double, self.beta_double, self.beta_outer],
        }
    }
}

/// Leading-edge seed `(b1, b3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingSeed {
    pub b1: f64,
    pub b3: f64,
}

/// Trailing-edge seed `(β, X3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrailingSeed {
    pub beta: f64,
    pub x3: f64,
}

// Edge values near breakup scale as u_c + a sqrt((t - t_c) / |f'''(u_c)|)
// with these coefficients, which only depend on the local cubic shape.
const LEAD_B1: f64 = 8.52;
const LEAD_B3: f64 = -2.11;
const TRAIL_B: f64 = 4.76;
const TRAIL_B3: f64 = -6.30;

fn accept(mode: Mode) -> f64 {
    match mode {
        Mode::Exploratory => 1e-6,
        Mode::Precision => 1e-20,
    }
}

fn local_scale(p: &Profile, cp: &CriticalPoint, t: f64) -> Result<f64> {
    let f3 = p.inverse_third_derivative(cp.u_c)?;
    Ok(((t - cp.t_c).max(0.0) / f3.abs()).sqrt())
}

/// `∂_ξ Φ(ξ, η) = ½ ∫_0^1 f-''(ξ + σ(η - ξ)) (1 - σ) σ^{-1/2} dσ`.
fn phi_dxi(p: &Profile, xi: f64, eta: f64) -> Result<f64> {
    let mut err = None;
    let v = integral_endpoint_sqrt(
        |s| match p.inverse_second_derivative(xi + s * (eta - xi)) {
            Ok(v) => v * (1.0 - s),
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        },
        0.0,
        1.0,
        QuadConfig { n_start: 32, n_max: 2048, tail_tol: 1e-14 },
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(0.5 * v?)
}

fn lead_residual(p: &Profile, t: f64, z: &[f64]) -> Vec<f64> {
    let (b1, b3) = (z[0], z[1]);
    if !(b1 > b3 && b3 > -1.0 && b1 < 0.0) {
        return vec![f64::NAN; 2];
    }
    let phi = p.phi_kernel(b3, b1, crate::profile::HumpRegime::PreHump);
    let d = phi_dxi(p, b3, b1);
    match (phi, d) {
        (Ok(phi), Ok(d)) => vec![phi + 6.0 * t, d],
        _ => vec![f64::NAN; 2],
    }
}

/// Leading edge at `t`, from `seed` or from the breakup scaling.
pub fn leading_edge(p: &Profile, t: f64, seed: Option<LeadingSeed>, mode: Mode) -> Result<EdgePoint> {
    let cp = p.critical_point()?;
    if !(t > cp.t_c) {
        return Err(Error::Domain(format!("leading edge needs t > t_c = {}, got {t}", cp.t_c)));
    }
    let seed = match seed {
        Some(s) => s,
        None => {
            let c = local_scale(p, &cp, t)?;
            LeadingSeed { b1: cp.u_c + LEAD_B1 * c, b3: cp.u_c + LEAD_B3 * c }
        }
    };
    let mut opts = mode.system_options();
    opts.simplex.initial_step = 1e-3;
    let sol = solve_system(|z| lead_residual(p, t, z), &[seed.b1, seed.b3], opts);
    if !(sol.value <= accept(mode)) {
        return Err(Error::NonConvergence { what: format!("leading edge at t = {t}"), residual: sol.value });
    }
    let (b1, b3) = (sol.point[0], sol.point[1]);
    let x = 6.0 * t * b1 + p.inverse(b1, Branch::Decreasing)?;
    let x3 = p.inverse(b3, Branch::Decreasing)?;
    Ok(EdgePoint { kind: EdgeKind::Leading, t, x_edge: x, beta_outer: b1, beta_double: b3, x3, residual: sol.value })
}

fn trail_residual(p: &Profile, t: f64, beta: f64, x3: f64) -> Vec<f64> {
    let b3 = p.evaluate(x3);
    if !(beta > b3 && beta < 0.0) {
        return vec![f64::NAN; 2];
    }
    match p.moment_integrals(beta, b3, x3) {
        Ok((j, h)) => {
            let d = beta - b3;
            let sd = d.sqrt();
            vec![-h / (2.0 * sd) + 6.0 * t, j / (d * sd) - 4.0 * t]
        }
        Err(_) => vec![f64::NAN; 2],
    }
}

/// Trailing edge at `t`, from `seed` or from the breakup scaling.
pub fn trailing_edge(p: &Profile, t: f64, seed: Option<TrailingSeed>, mode: Mode) -> Result<EdgePoint> {
    let cp = p.critical_point()?;
    if !(t > cp.t_c) {
        return Err(Error::Domain(format!("trailing edge needs t > t_c = {}, got {t}", cp.t_c)));
    }
    let seed = match seed {
        Some(s) => s,
        None => {
            let c = local_scale(p, &cp, t)?;
            let b3 = cp.u_c + TRAIL_B3 * c;
            TrailingSeed { beta: cp.u_c + TRAIL_B * c, x3: p.inverse(b3, Branch::Decreasing)? }
        }
    };
    let mut opts = mode.system_options();
    opts.simplex.initial_step = 1e-3;
    let sol = solve_system(|z| trail_residual(p, t, z[0], z[1]), &[seed.beta, seed.x3], opts);
    if !(sol.value <= accept(mode)) {
        return Err(Error::NonConvergence { what: format!("trailing edge at t = {t}"), residual: sol.value });
    }
    let (beta, x3) = (sol.point[0], sol.point[1]);
    let b3 = p.evaluate(x3);
    Ok(EdgePoint {
        kind: EdgeKind::Trailing,
        t,
        x_edge: 6.0 * t * b3 + x3,
        beta_outer: b3,
        beta_double: beta,
        x3,
        residual: sol.value,
    })
}

/// Time at which `β3` first reaches the hump minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HumpCrossing {
    pub t_hump: f64,
    pub x_t: f64,
    pub beta1: f64,
    pub residual: f64,
}

/// Solve the trailing-edge pair with `X3 = 0` for `(β1, T)`; then
/// `x_T = -6T`. `T` is eliminated first so that `β1` can be bracketed.
pub fn hump_time(p: &Profile, mode: Mode) -> Result<HumpCrossing> {
    let th = |b: f64| -> Result<(f64, f64)> {
        let (j, h) = p.moment_integrals(b, -1.0, 0.0)?;
        let d = b + 1.0;
        Ok((j / (d * d.sqrt()), h / (12.0 * d.sqrt())))
    };
    // J/Δ^{3/2} = 4T with T from the first equation
    let g = |b: f64| th(b).map(|(jd, t)| jd - 4.0 * t).unwrap_or(f64::NAN);
    let grid: Vec<f64> = (1..100).map(|i| -1.0 + i as f64 / 100.0).collect();
    let mut bracket = None;
    for w in grid.windows(2) {
        let (a, b) = (g(w[0]), g(w[1]));
        if a.is_finite() && b.is_finite() && a * b <= 0.0 {
            bracket = Some((w[0], w[1]));
            break;
        }
    }
    let (a, b) = bracket.ok_or(Error::NoBracket { a: -0.99, b: -0.01 })?;
    let beta0 = bisect(g, a, b, 1e-15)?;
    let t0 = th(beta0)?.1;
    let mut opts = mode.system_options();
    opts.simplex.initial_step = 1e-4;
    let sol = solve_system(|z| trail_residual(p, z[1], z[0], 0.0), &[beta0, t0], opts);
    let (beta, t) = if sol.value.is_finite() { (sol.point[0], sol.point[1]) } else { (beta0, t0) };
    Ok(HumpCrossing { t_hump: t, x_t: -6.0 * t, beta1: beta, residual: sol.value })
}

/// `(x⁻_app, x⁺_app)`:
///
/// ```text
/// x⁻ ≈ x_c + 6 u_c (t - t_c) - 36 √2 / sqrt|f-'''(u_c)| (t - t_c)^{3/2}
/// x⁺ ≈ x_c + 6 u_c (t - t_c) + 4 √10 / (3 sqrt|f-'''(u_c)|) (t - t_c)^{3/2}
/// ```
pub fn edge_asymptotics(p: &Profile, t: f64) -> Result<(f64, f64)> {
    let cp = p.critical_point()?;
    if t < cp.t_c {
        return Err(Error::Domain(format!("edge asymptotics need t >= t_c = {}, got {t}", cp.t_c)));
    }
    let f3 = p.inverse_third_derivative(cp.u_c)?.abs().sqrt();
    let dt = t - cp.t_c;
    let base = cp.x_c + 6.0 * cp.u_c * dt;
    let d32 = dt * dt.sqrt();
    Ok((base - 36.0 * 2f64.sqrt() / f3 * d32, base + 4.0 * 10f64.sqrt() / (3.0 * f3) * d32))
}

/// Both edges along a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeTrack {
    pub leading: Vec<EdgePoint>,
    pub trailing: Vec<EdgePoint>,
}

/// Marching times from `t_c + 1e-4` to `t_end`: geometric in `t - t_c`
/// up to `1e-2`, then steps of at most `5e-3`. Requested times are
/// inserted exactly.
fn march_times(t_c: f64, t_end: f64, extra: &[f64]) -> Vec<f64> {
    let mut ts = Vec::new();
    let mut d = 1e-4;
    while d < 1e-2 && t_c + d < t_end {
        ts.push(t_c + d);
        d *= 10f64.powf(0.25);
    }
    let mut t = t_c + 1e-2;
    while t < t_end {
        ts.push(t);
        t += 5e-3;
    }
    ts.push(t_end);
    ts.extend(extra.iter().copied().filter(|&s| s > t_c && s <= t_end));
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    ts
}

/// Edges at each requested time (each `> t_c`), by continuation in `t`.
pub fn edge_track(p: &Profile, times: &[f64], mode: Mode) -> Result<EdgeTrack> {
    let cp = p.critical_point()?;
    let t_end = times.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(t_end > cp.t_c) {
        return Ok(EdgeTrack { leading: vec![], trailing: vec![] });
    }
    let mut lead_seed = None;
    let mut trail_seed = None;
    let mut out = EdgeTrack { leading: vec![], trailing: vec![] };
    let mut prev: Option<(f64, EdgePoint, EdgePoint)> = None;
    let mut prev2: Option<(f64, EdgePoint, EdgePoint)> = None;
    for t in march_times(cp.t_c, t_end, times) {
        // linear extrapolation in t once two previous points exist
        if let (Some((t1, l1, r1)), Some((t0, l0, r0))) = (prev, prev2) {
            let f = (t - t1) / (t1 - t0);
            lead_seed = Some(LeadingSeed {
                b1: l1.beta_outer + f * (l1.beta_outer - l0.beta_outer),
                b3: l1.beta_double + f * (l1.beta_double - l0.beta_double),
            });
            trail_seed = Some(TrailingSeed {
                beta: r1.beta_double + f * (r1.beta_double - r0.beta_double),
                x3: r1.x3 + f * (r1.x3 - r0.x3),
            });
        }
        let l = leading_edge(p, t, lead_seed, mode)?;
        let r = trailing_edge(p, t, trail_seed, mode)?;
        lead_seed = Some(LeadingSeed { b1: l.beta_outer, b3: l.beta_double });
        trail_seed = Some(TrailingSeed { beta: r.beta_double, x3: r.x3 });
        if times.iter().any(|&s| (s - t).abs() < 1e-14) {
            out.leading.push(l);
            out.trailing.push(r);
        }
        prev2 = prev;
        prev = Some((t, l, r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hump_crossing_closed_form() {
        let h = hump_time(&Profile::sech2(), Mode::Precision).unwrap();
        let s3 = 3f64.sqrt();
        assert!((h.t_hump - std::f64::consts::PI / (6.0 * s3)).abs() < 1e-12);
        assert!((h.x_t + std::f64::consts::PI / s3).abs() < 1e-12);
        assert!((h.beta1 + 0.25).abs() < 1e-12);
        assert!(h.residual < 1e-20);
    }

    #[test]
    fn edges_at_t_04() {
        let p = Profile::sech2();
        let tr = edge_track(&p, &[0.25, 0.4], Mode::Precision).unwrap();
        let l = tr.leading[1];
        assert!((l.beta_outer + 0.006_439).abs() < 1e-6, "{l:?}");
        assert!((l.beta_double + 0.881_823).abs() < 1e-6);
        assert!((l.x_edge + 3.229_652).abs() < 1e-6);
        let r = tr.trailing[1];
        assert!((r.beta_double + 0.148_193).abs() < 1e-6, "{r:?}");
        assert!((r.x3 - 0.213_361).abs() < 1e-6);
        assert!((r.x_edge + 2.080_617).abs() < 1e-6);
        let r = tr.trailing[0];
        assert!((r.x_edge + 1.646_54).abs() < 1e-5);
        assert!(r.x3 < 0.0);
    }

    #[test]
    fn asymptotics_near_breakup() {
        let p = Profile::sech2();
        let cp = p.critical_point().unwrap();
        let (a, b) = edge_asymptotics(&p, cp.t_c).unwrap();
        assert!((a - cp.x_c).abs() < 1e-15 && (b - cp.x_c).abs() < 1e-15);
        let t = cp.t_c + 1e-4;
        let l = leading_edge(&p, t, None, Mode::Precision).unwrap();
        let r = trailing_edge(&p, t, None, Mode::Precision).unwrap();
        let (xm, xp) = edge_asymptotics(&p, t).unwrap();
        assert!((l.x_edge - xm).abs() < 2e-6, "{} vs {xm}", l.x_edge);
        assert!((r.x_edge - xp).abs() < 2e-6, "{} vs {xp}", r.x_edge);
        assert!(edge_asymptotics(&p, 0.1).is_err());
    }
}
