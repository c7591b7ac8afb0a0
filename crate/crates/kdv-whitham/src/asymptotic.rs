//! The leading-order small-ε solution.
//!
//! Inside the zone `[x⁻, x⁺]`
//!
//! ```text
//! u = β2 + β3 - β1 + 2 (β1 - β2) / dn²(Ω/ε; s),   Ω = sqrt(β1 - β3) (x - 2 (β1+β2+β3) t - q)
//! ```
//!
//! and outside it the Hopf solution. The theta form
//!
//! ```text
//! u = β1 + β2 + β3 + 2α + (β1 - β3)/(2K²) (log θ)''(Z; iK'/K),   Z = Ω / (2εK)
//! ```
//!
//! is the same function (`(log θ)'' = 4K² [(1-s²)/dn²(2KZ) - E/K]`); it is
//! kept as an independent check on the dn path.

use crate::hopf::{solve_at, HopfSample};
use crate::numerics::elliptic::ke_from_parameter;
use crate::numerics::jacobi::sncndn_parameter;
use crate::numerics::roots::{bisect, Mode};
use crate::numerics::theta::theta3;
use crate::profile::Profile;
use crate::whitham::{phase_x3, WhithamTriple, ZoneSolution};
use crate::{Error, Result};

/// Where a sample sits relative to the zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    OutsideLeft,
    Whitham,
    OutsideRight,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::OutsideLeft => "outside_left",
            Region::Whitham => "whitham",
            Region::OutsideRight => "outside_right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Underlying {
    Whitham { triple: WhithamTriple, q: f64 },
    Hopf(HopfSample),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSample {
    pub x: f64,
    pub t: f64,
    pub eps: f64,
    pub u_app: f64,
    pub region: Region,
    pub source: Underlying,
}

/// `Ω` at `(x, t)`.
pub fn omega(tr: &WhithamTriple, q: f64, x: f64, t: f64) -> f64 {
    (tr.beta[0] - tr.beta[2]).sqrt() * (x - 2.0 * tr.sum() * t - q)
}

/// The dn form.
pub fn u_elliptic(tr: &WhithamTriple, q: f64, x: f64, t: f64, eps: f64) -> f64 {
    let [b1, b2, b3] = tr.beta;
    let span = b1 - b3;
    let kprime = ((b1 - b2) / span).sqrt();
    let (_, _, dn) = sncndn_parameter(omega(tr, q, x, t) / eps, tr.s2, kprime);
    b2 + b3 - b1 + 2.0 * (b1 - b2) / (dn * dn)
}

/// The theta form. Fails where the nome gets too close to 1 for the series.
pub fn u_theta(tr: &WhithamTriple, q: f64, x: f64, t: f64, eps: f64) -> Result<f64> {
    let [b1, b2, b3] = tr.beta;
    let span = b1 - b3;
    if tr.s2 == 0.0 {
        return Ok(b1);
    }
    // K' from the complementary parameter
    let (kp, _) = ke_from_parameter((b1 - b2) / span, tr.s2.sqrt());
    let z = omega(tr, q, x, t) / (2.0 * eps * tr.k);
    let th = theta3(z, kp / tr.k, 1e-17)?;
    Ok(tr.sum() + 2.0 * tr.alpha + span / (2.0 * tr.k * tr.k) * th.log_second_derivative())
}

/// `(β1 - β2 + β3, β1 + β2 - β3)`, the range of the dn form over one period.
pub fn envelope(tr: &WhithamTriple) -> (f64, f64) {
    let [b1, b2, b3] = tr.beta;
    (b1 - b2 + b3, b1 + b2 - b3)
}

/// The mean `β1 + β2 + β3 + 2α`.
pub fn mean_value(tr: &WhithamTriple) -> f64 {
    tr.sum() + 2.0 * tr.alpha
}

/// Local maxima of a sampled curve, strict on the left.
pub fn count_maxima(u: &[f64]) -> usize {
    u.windows(3).filter(|w| w[1] > w[0] && w[1] >= w[2]).count()
}

/// Four-point Lagrange interpolation on a nonuniform stencil.
fn lagrange4(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        let mut w = 1.0;
        for j in 0..4 {
            if j != i {
                w *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        s += w * ys[i];
    }
    s
}

/// Zone data at one time, ready for sampling anywhere on the line.
pub struct Composite<'a> {
    profile: &'a Profile,
    zone: &'a ZoneSolution,
    xs: Vec<f64>,
    /// `(β1, β2, X3, q)` per node.
    cols: [Vec<f64>; 4],
    mode: Mode,
    max_gap: f64,
}

impl<'a> Composite<'a> {
    /// Tabulate the zone, edges included. Edge phases are computed in
    /// their merged limits.
    pub fn new(profile: &'a Profile, zone: &'a ZoneSolution, mode: Mode) -> Result<Self> {
        let n = zone.points.len() + 2;
        if n < 4 {
            return Err(Error::InterpolationGap { x: zone.leading.x_edge, reason: format!("{n} nodes") });
        }
        let mut xs = Vec::with_capacity(n);
        let mut cols: [Vec<f64>; 4] = Default::default();
        let mut push = |x: f64, b1: f64, b2: f64, x3: f64, q: f64| {
            xs.push(x);
            for (c, v) in cols.iter_mut().zip([b1, b2, x3, q]) {
                c.push(v);
            }
        };
        let lead = &zone.leading;
        let [l1, l2, _] = lead.beta();
        push(lead.x_edge, l1, l2, lead.x3, phase_x3(profile, l1, l2, lead.x3)?.q);
        for z in &zone.points {
            push(z.triple.x, z.triple.beta[0], z.triple.beta[1], z.triple.x3, z.q);
        }
        let tr = &zone.trailing;
        let [t1, t2, _] = tr.beta();
        push(tr.x_edge, t1, t2, tr.x3, phase_x3(profile, t1, t2, tr.x3)?.q);
        Ok(Composite { profile, zone, xs, cols, mode, max_gap: 0.125 * zone.width() })
    }

    /// Refuse intervals wider than `gap` inside the zone.
    pub fn with_max_gap(mut self, gap: f64) -> Self {
        self.max_gap = gap;
        self
    }

    pub fn edges(&self) -> (f64, f64) {
        (self.zone.leading.x_edge, self.zone.trailing.x_edge)
    }

    pub fn region(&self, x: f64) -> Region {
        let (a, b) = self.edges();
        if x < a {
            Region::OutsideLeft
        } else if x > b {
            Region::OutsideRight
        } else {
            Region::Whitham
        }
    }

    /// Interpolated triple and phase at `x` inside the zone.
    pub fn interpolate(&self, x: f64) -> Result<(WhithamTriple, f64)> {
        let n = self.xs.len();
        let i = self.xs.partition_point(|&v| v <= x).clamp(1, n - 1) - 1;
        let gap = self.xs[i + 1] - self.xs[i];
        if gap > self.max_gap {
            return Err(Error::InterpolationGap { x, reason: format!("interval {gap:.3e}") });
        }
        let s = i.saturating_sub(1).min(n - 4);
        let xs = &self.xs[s..s + 4];
        let [b1, b2, x3, q] = [0, 1, 2, 3].map(|k| lagrange4(xs, &self.cols[k][s..s + 4], x));
        let b3 = self.profile.evaluate(x3);
        // keep the ordering where interpolation overshoots a merged pair
        let b1 = b1.min(-f64::MIN_POSITIVE);
        let b2 = b2.clamp(b3, b1);
        let triple = WhithamTriple::from_x3(self.profile, b1, b2, x3, x, self.zone.t)?;
        Ok((triple, q))
    }

    /// Hopf value outside the zone, bracketed against the edge characteristic.
    pub fn hopf(&self, x: f64) -> Result<HopfSample> {
        let p = self.profile;
        let t = self.zone.t;
        let r = |xi: f64| x - 6.0 * t * p.evaluate(xi) - xi;
        let (a, b) = match self.region(x) {
            Region::OutsideLeft => {
                let xi_edge = self.zone.leading.x_edge - 6.0 * t * self.zone.leading.beta_outer;
                (x - 1.0, xi_edge)
            }
            Region::OutsideRight => (self.zone.trailing.x3, x + 6.0 * t + 1.0),
            Region::Whitham => return Err(Error::Domain(format!("x = {x} is inside the zone"))),
        };
        let xi = bisect(r, a, b, 1e-15)?;
        solve_at(p, x, t, xi, self.mode)
    }

    pub fn sample(&self, x: f64, eps: f64) -> Result<AsymptoticSample> {
        let t = self.zone.t;
        let region = self.region(x);
        let (u_app, source) = match region {
            Region::Whitham => {
                let (triple, q) = self.interpolate(x)?;
                (u_elliptic(&triple, q, x, t, eps), Underlying::Whitham { triple, q })
            }
            _ => {
                let h = self.hopf(x)?;
                (h.u, Underlying::Hopf(h))
            }
        };
        Ok(AsymptoticSample { x, t, eps, u_app, region, source })
    }

    pub fn sample_grid(&self, xs: &[f64], eps: f64) -> Result<Vec<AsymptoticSample>> {
        xs.iter().map(|&x| self.sample(x, eps)).collect()
    }
}
