//! Hodograph solves across the oscillation zone at a fixed time.

use std::f64::consts::PI;

use super::edges::{edge_track, EdgePoint};
use super::phase::phase_x3;
use super::{residual_from_phase, WhithamTriple};
use crate::numerics::roots::{solve_system, Mode};
use crate::profile::Profile;
use crate::{Error, Result};

/// A solved interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZonePoint {
    pub triple: WhithamTriple,
    pub q: f64,
    pub residual: [f64; 3],
    /// Summed squared residual.
    pub value: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZoneSolution {
    pub t: f64,
    pub leading: EdgePoint,
    pub trailing: EdgePoint,
    /// Interior points in increasing `x`.
    pub points: Vec<ZonePoint>,
    /// Where `X3` changes sign, if it does.
    pub x_hump: Option<f64>,
    /// Indices into `points` that missed the residual threshold.
    pub failures: Vec<usize>,
}

impl ZoneSolution {
    /// `(x, β1, β2, β3)` including both edges.
    pub fn profile(&self) -> Vec<(f64, [f64; 3])> {
        let mut out = vec![(self.leading.x_edge, self.leading.beta())];
        out.extend(self.points.iter().map(|p| (p.triple.x, p.triple.beta)));
        out.push((self.trailing.x_edge, self.trailing.beta()));
        out
    }

    pub fn width(&self) -> f64 {
        self.trailing.x_edge - self.leading.x_edge
    }
}

/// `nx` points on `[a, b]`, both ends included: a third crowded toward each
/// end by a half-cosine map over a quarter of the width, the rest uniform.
pub fn graded_grid(a: f64, b: f64, nx: usize) -> Vec<f64> {
    let nx = nx.max(7);
    let ne = nx / 3;
    let nm = nx - 2 * ne;
    let q = 0.25 * (b - a);
    let mut g = Vec::with_capacity(nx);
    for k in 0..ne {
        g.push(a + q * (1.0 - (0.5 * PI * k as f64 / ne as f64).cos()));
    }
    for k in 0..nm {
        g.push(a + q + (b - a - 2.0 * q) * k as f64 / (nm - 1) as f64);
    }
    for k in (0..ne).rev() {
        g.push(b - q * (1.0 - (0.5 * PI * k as f64 / ne as f64).cos()));
    }
    g
}

fn threshold(mode: Mode) -> f64 {
    match mode {
        Mode::Exploratory => 1e-6,
        Mode::Precision => 1e-12,
    }
}

fn residual_at(p: &Profile, t: f64, x: f64, z: &[f64]) -> Vec<f64> {
    let (b1, b2, x3) = (z[0], z[1], z[2]);
    let b3 = p.evaluate(x3);
    if !(0.0 > b1 && b1 > b2 && b2 > b3) {
        return vec![f64::NAN; 3];
    }
    let Ok(tr) = WhithamTriple::from_x3(p, b1, b2, x3, x, t) else { return vec![f64::NAN; 3] };
    match phase_x3(p, b1, b2, x3) {
        Ok(ph) => residual_from_phase(&tr, &ph).to_vec(),
        Err(_) => vec![f64::NAN; 3],
    }
}

fn solve_point(p: &Profile, t: f64, x: f64, seed: [f64; 3], mode: Mode) -> Result<ZonePoint> {
    let mut opts = mode.system_options();
    opts.simplex.initial_step = 1e-3;
    // a polish always follows: continuation seeds are close
    opts.newton_iter = opts.newton_iter.max(12);
    let sol = solve_system(|z| residual_at(p, t, x, z), &seed, opts);
    let [b1, b2, x3] = [sol.point[0], sol.point[1], sol.point[2]];
    let triple = WhithamTriple::from_x3(p, b1, b2, x3, x, t)?;
    let ph = phase_x3(p, b1, b2, x3)?;
    let residual = residual_from_phase(&triple, &ph);
    let value: f64 = residual.iter().map(|r| r * r).sum();
    Ok(ZonePoint { triple, q: ph.q, residual, value, converged: value <= threshold(mode) })
}

fn seed_of(z: &ZonePoint) -> [f64; 3] {
    [z.triple.beta[0], z.triple.beta[1], z.triple.x3]
}

/// Linear extrapolation from the last two converged points.
fn extrapolate(done: &[ZonePoint], x: f64) -> Option<[f64; 3]> {
    let ok: Vec<&ZonePoint> = done.iter().rev().filter(|z| z.converged).take(2).collect();
    match ok.as_slice() {
        [a, b] => {
            let f = (x - a.triple.x) / (a.triple.x - b.triple.x);
            let (sa, sb) = (seed_of(a), seed_of(b));
            Some([0, 1, 2].map(|i| sa[i] + f * (sa[i] - sb[i])))
        }
        [a] => Some(seed_of(a)),
        _ => None,
    }
}

/// Try `seed(1)`, then `seed(f)` for a few ordered factors.
fn solve_with_fallback(p: &Profile, t: f64, x: f64, seed: impl Fn(f64) -> [f64; 3], mode: Mode) -> Result<ZonePoint> {
    let mut best: Option<ZonePoint> = None;
    for f in [1.0, 0.5, 2.0, 0.25, 4.0] {
        if let Ok(z) = solve_point(p, t, x, seed(f), mode) {
            if z.converged {
                return Ok(z);
            }
            if best.map_or(true, |b| z.value < b.value) {
                best = Some(z);
            }
        }
    }
    best.ok_or_else(|| Error::NonConvergence { what: format!("zone point x = {x}"), residual: f64::INFINITY })
}

/// Sweep from one edge toward the interior.
fn sweep(p: &Profile, t: f64, xs: &[f64], edge: &EdgePoint, from_left: bool, mode: Mode) -> Vec<ZonePoint> {
    let mut done: Vec<ZonePoint> = Vec::with_capacity(xs.len());
    for &x in xs {
        let z = match extrapolate(&done, x) {
            Some(s) => {
                let gap = (s[0] - s[1]).abs().max(1e-8);
                solve_with_fallback(p, t, x, |f| [s[0], s[1] + (f - 1.0) * gap, s[2]], mode)
            }
            None => {
                // first point off the edge: the merged pair opens like sqrt(d)
                let d = (x - edge.x_edge).abs();
                let b = edge.beta_double;
                let gap = 0.5 * (edge.beta_outer - b).abs() * (d / 0.5).sqrt().min(0.5);
                if from_left {
                    // β2 stays near the double value, β3 drops
                    let slope = p.derivative(edge.x3).abs().max(1e-3);
                    solve_with_fallback(p, t, x, |f| [edge.beta_outer, b, edge.x3 + f * gap / slope], mode)
                } else {
                    solve_with_fallback(p, t, x, |f| [b + 0.5 * f * gap, b - 0.5 * f * gap, edge.x3], mode)
                }
            }
        };
        if let Ok(z) = z {
            done.push(z);
        }
    }
    done
}

/// Zone at time `t` on an `nx`-point graded grid between the edges. The
/// edges come from `edges` or from a fresh edge track. Each half of the
/// grid is swept from its edge toward the middle.
pub fn solve_zone(
    p: &Profile,
    t: f64,
    nx: usize,
    edges: Option<(EdgePoint, EdgePoint)>,
    mode: Mode,
) -> Result<ZoneSolution> {
    let (leading, trailing) = match edges {
        Some(e) => e,
        None => {
            let tr = edge_track(p, &[t], Mode::Precision)?;
            (tr.leading[0], tr.trailing[0])
        }
    };
    let grid = graded_grid(leading.x_edge, trailing.x_edge, nx);
    let inner = &grid[1..grid.len() - 1];
    let mid = inner.len() / 2;
    let left = sweep(p, t, &inner[..mid], &leading, true, mode);
    let rev: Vec<f64> = inner[mid..].iter().rev().copied().collect();
    let mut right = sweep(p, t, &rev, &trailing, false, mode);
    right.reverse();
    let mut points = left;
    points.extend(right);
    let failures: Vec<usize> = points.iter().enumerate().filter(|(_, z)| !z.converged).map(|(i, _)| i).collect();
    if points.len() < inner.len() {
        return Err(Error::NonConvergence {
            what: format!("zone at t = {t}: {} of {} points solved", points.len(), inner.len()),
            residual: f64::INFINITY,
        });
    }
    let x_hump = locate_hump(p, t, &points, mode);
    Ok(ZoneSolution { t, leading, trailing, points, x_hump, failures })
}

/// Bisection on the sign of `X3` between the grid points where it flips.
fn locate_hump(p: &Profile, t: f64, points: &[ZonePoint], mode: Mode) -> Option<f64> {
    let i = points.windows(2).position(|w| w[0].triple.x3 <= 0.0 && w[1].triple.x3 > 0.0)?;
    let (mut a, mut b) = (points[i], points[i + 1]);
    for _ in 0..60 {
        if (b.triple.x - a.triple.x).abs() < 1e-13 {
            break;
        }
        let x = 0.5 * (a.triple.x + b.triple.x);
        let f = 0.5;
        let seed = [0, 1, 2].map(|k| seed_of(&a)[k] + f * (seed_of(&b)[k] - seed_of(&a)[k]));
        let z = solve_point(p, t, x, seed, mode).ok()?;
        if z.triple.x3 > 0.0 {
            b = z;
        } else {
            a = z;
        }
    }
    // X3 is linear in x on this scale
    let (xa, xb) = (a.triple.x, b.triple.x);
    let (ya, yb) = (a.triple.x3, b.triple.x3);
    Some(if yb != ya { xa - ya * (xb - xa) / (yb - ya) } else { 0.5 * (xa + xb) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = graded_grid(-3.0, -2.0, 30);
        assert_eq!(g.len(), 30);
        assert_eq!(g[0], -3.0);
        assert_eq!(*g.last().unwrap(), -2.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let near = g[1] - g[0];
        let g2 = graded_grid(-3.0, -2.0, 60);
        // distance of the first interior point falls like 1/n²
        let r = near / (g2[1] - g2[0]);
        assert!(r > 3.5 && r < 4.5, "{r}");
    }
}
