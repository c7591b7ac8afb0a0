//! One-phase Whitham modulation for single-hump data.
//!
//! Riemann invariants `β1 > β2 > β3` satisfy `∂t βi + vi ∂x βi = 0` with
//!
//! ```text
//! vi = 4 Π_{k≠i}(βi - βk) / (βi + α) + 2 Σ βk,   α = -β1 + (β1 - β3) E(s)/K(s),
//! s² = (β2 - β3)/(β1 - β3)
//! ```
//!
//! and the hodograph solution `x = vi t + wi` with
//! `wi = ½ (vi - 2Σβ) ∂q/∂βi + q`.
//!
//! Points inside the zone are parametrized by `(β1, β2, X3)` where
//! `u0(X3) = β3`; `X3 < 0` before the hump time and `X3 > 0` after it.

mod edges;
mod identity;
mod phase;
mod zone;

pub use edges::{
    edge_asymptotics, edge_track, hump_time, leading_edge, trailing_edge, EdgeKind, EdgePoint, EdgeTrack,
    HumpCrossing, LeadingSeed, TrailingSeed,
};
pub use identity::{phase_identity, rho, tau, PhaseIdentityParts};
pub use phase::{phase, phase_x3, q_direct, q_phase, q_symmetric, x3_of, PhaseData};
pub use zone::{graded_grid, solve_zone, ZonePoint, ZoneSolution};

use crate::numerics::elliptic::k_and_deficit;
use crate::profile::{HumpRegime, Profile};
use crate::{Error, Result};

/// A point of the modulated wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhithamTriple {
    pub beta: [f64; 3],
    pub x: f64,
    pub t: f64,
    /// `u0(X3) = β3`; its sign selects the side of the hump.
    pub x3: f64,
    pub alpha: f64,
    /// `s² = (β2 - β3)/(β1 - β3)`.
    pub s2: f64,
    pub k: f64,
    pub e: f64,
    /// `1 - E/K`, kept separately to avoid cancellation near `s = 0`.
    deficit: f64,
}

impl WhithamTriple {
    /// From `(β1, β2, X3)`.
    pub fn from_x3(p: &Profile, b1: f64, b2: f64, x3: f64, x: f64, t: f64) -> Result<Self> {
        let b3 = p.evaluate(x3);
        Self::build([b1, b2, b3], x3, x, t)
    }

    /// From the three invariants and the side of the hump.
    pub fn new(p: &Profile, beta: [f64; 3], regime: HumpRegime, x: f64, t: f64) -> Result<Self> {
        let x3 = phase::x3_of(p, beta[2], regime)?;
        Self::build(beta, x3, x, t)
    }

    fn build(beta: [f64; 3], x3: f64, x: f64, t: f64) -> Result<Self> {
        let [b1, b2, b3] = beta;
        if !(0.0 > b1 && b1 >= b2 && b2 >= b3 && b3 >= -1.0) {
            return Err(Error::Domain(format!("need 0 > β1 >= β2 >= β3 >= -1, got {beta:?}")));
        }
        let span = b1 - b3;
        if span <= 0.0 {
            return Err(Error::Degenerate("β1 = β3".into()));
        }
        let s2 = (b2 - b3) / span;
        let kprime = ((b1 - b2) / span).sqrt();
        let (k, deficit) = k_and_deficit(s2, kprime);
        let e = k * (1.0 - deficit);
        let alpha = -b1 + span * (1.0 - deficit);
        Ok(WhithamTriple { beta, x, t, x3, alpha, s2, k, e, deficit })
    }

    pub fn regime(&self) -> HumpRegime {
        if self.x3 > 0.0 {
            HumpRegime::PostHump
        } else {
            HumpRegime::PreHump
        }
    }

    /// `βi + α` for each i, each formed without cancellation.
    pub fn shifted(&self) -> [f64; 3] {
        let [b1, b2, b3] = self.beta;
        let span = b1 - b3;
        [span * (1.0 - self.deficit), (b2 - b3) - span * self.deficit, -span * self.deficit]
    }

    pub fn sum(&self) -> f64 {
        self.beta.iter().sum()
    }
}

/// `4 Π_{k≠i}(βi - βk) / (βi + α)`, the part of `vi` beyond `2Σβ`.
fn speed_parts(tr: &WhithamTriple) -> Result<[f64; 3]> {
    let b = tr.beta;
    let sh = tr.shifted();
    let mut d = [0.0; 3];
    for i in 0..3 {
        let mut prod = 1.0;
        for k in 0..3 {
            if k != i {
                prod *= b[i] - b[k];
            }
        }
        if sh[i] == 0.0 || !sh[i].is_finite() {
            return Err(Error::Degenerate(format!("β{} + α = {} at {:?}", i + 1, sh[i], b)));
        }
        d[i] = 4.0 * prod / sh[i];
    }
    Ok(d)
}

/// Characteristic speeds `(v1, v2, v3)`.
pub fn speeds(tr: &WhithamTriple) -> Result<[f64; 3]> {
    let d = speed_parts(tr)?;
    let s2 = 2.0 * tr.sum();
    Ok(d.map(|v| v + s2))
}

/// `(w1, w2, w3)` of the hodograph solution.
pub fn w_coeffs(p: &Profile, tr: &WhithamTriple) -> Result<[f64; 3]> {
    let d = speed_parts(tr)?;
    let ph = phase::phase_x3(p, tr.beta[0], tr.beta[1], tr.x3)?;
    Ok([0, 1, 2].map(|i| 0.5 * d[i] * ph.dq[i] + ph.q))
}

/// Hodograph residuals scaled to stay finite at both edges:
///
/// ```text
/// S1 = ((v1 - v2) t + w1 - w2) / ((β1 - β2) K)
/// S2 = v3 t + w3 - x
/// S3 = ((v2 - v3) t + w2 - w3) / (β2 - β3)
/// ```
///
/// with the differences divided out analytically.
pub fn hodograph_residual(p: &Profile, tr: &WhithamTriple) -> Result<[f64; 3]> {
    let ph = phase::phase_x3(p, tr.beta[0], tr.beta[1], tr.x3)?;
    Ok(residual_from_phase(tr, &ph))
}

pub(crate) fn residual_from_phase(tr: &WhithamTriple, ph: &PhaseData) -> [f64; 3] {
    let [b1, b2, b3] = tr.beta;
    let [h1, h2, h3] = tr.shifted();
    let t = tr.t;
    let a = ph.dq.map(|d| t + 0.5 * d);
    let s1 = 4.0 * ((b1 - b3) * a[0] / h1 + (b2 - b3) * a[1] / h2) / tr.k;
    let d3 = 4.0 * (b3 - b1) * (b3 - b2) / h3;
    let s2 = d3 * a[2] + 2.0 * tr.sum() * t + ph.q - tr.x;
    let s3 = -4.0 * (b1 - b2) * a[1] / h2 - 4.0 * (b1 - b3) * a[2] / h3;
    [s1, s2, s3]
}

/// Unscaled residuals `vi t + wi - x`.
pub fn hodograph_plain(p: &Profile, tr: &WhithamTriple) -> Result<[f64; 3]> {
    let v = speeds(tr)?;
    let w = w_coeffs(p, tr)?;
    Ok([0, 1, 2].map(|i| v[i] * tr.t + w[i] - tr.x))
}

/// `∂x βi = (α + βi) / (Π_{j≠i}(βi - βj) ∂_{βi} Q)` with `Q = Σ ∂q/∂βj`.
/// `∂_{βi} Q` is a central difference of the analytic gradient.
pub fn beta_x_derivatives(p: &Profile, tr: &WhithamTriple) -> Result<[f64; 3]> {
    let regime = tr.regime();
    let big_q = |b: [f64; 3]| -> Result<f64> { Ok(phase::phase(p, b, regime)?.dq.iter().sum()) };
    let sh = tr.shifted();
    let b = tr.beta;
    let mut out = [0.0; 3];
    for i in 0..3 {
        let h = 1e-5 * (b[0] - b[2]).min(1.0);
        let mut bp = b;
        let mut bm = b;
        bp[i] += h;
        bm[i] -= h;
        if i == 0 {
            bp[0] = bp[0].min(-1e-12);
        }
        let dq = (big_q(bp)? - big_q(bm)?) / (bp[i] - bm[i]);
        let mut prod = 1.0;
        for k in 0..3 {
            if k != i {
                prod *= b[i] - b[k];
            }
        }
        out[i] = sh[i] / (prod * dq);
    }
    Ok(out)
}
