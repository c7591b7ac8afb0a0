//! The phase `q(β1, β2, β3)` and its gradient.
//!
//! With `X3` the point where `u0(X3) = β3` (left of the hump before the
//! hump time, right of it after), the inner average over `μ` is done in
//! closed form through the moments
//!
//! ```text
//! J(λ) = ∫_{f-(λ)}^{X3} sqrt(λ - u0) dx,   H(λ) = ∫_{f-(λ)}^{X3} dx / sqrt(λ - u0)
//! ```
//!
//! which gives, with `Δ = λ - β3`,
//!
//! ```text
//! q   = ½ ⟨2 X3 - 2 J / sqrt Δ⟩
//! ∂3q = ½ ⟨-J / Δ^{3/2}⟩
//! ∂1q = ½ ⟨(1+ν)/2 (J - Δ H) / Δ^{3/2}⟩      (∂2q with (1-ν)/2)
//! ```
//!
//! where `⟨g⟩ = (1/π) ∫ g(λ(ν)) dν / sqrt(1 - ν²)` and
//! `λ(ν) = (β1+β2)/2 + (β1-β2)/2 ν`. The same expressions hold on both
//! sides of the hump, so the regime only enters through the sign of `X3`.

use std::f64::consts::PI;

use crate::numerics::chebyshev::{integral_cheb_weight, integral_endpoint_sqrt, QuadConfig};
use crate::profile::{Branch, HumpRegime, Profile};
use crate::{Error, Result};

/// `q` and `∂q/∂βi` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseData {
    pub q: f64,
    pub dq: [f64; 3],
    pub beta3: f64,
}

const N_START: usize = 16;
const N_MAX: usize = 1024;
const TOL: f64 = 2e-15;

/// `X3` for `β3` on the side of the hump given by `regime`.
pub fn x3_of(p: &Profile, beta3: f64, regime: HumpRegime) -> Result<f64> {
    if beta3 == -1.0 {
        return Ok(0.0);
    }
    match regime {
        HumpRegime::PreHump => p.inverse(beta3, Branch::Decreasing),
        HumpRegime::PostHump => p.inverse(beta3, Branch::Increasing),
    }
}

/// Inner quantities `(R, R3, Rλ)` at one `λ`.
fn inner(p: &Profile, lambda: f64, beta3: f64, x3: f64) -> Result<[f64; 3]> {
    let delta = lambda - beta3;
    let small = delta <= 1e-13 * (1.0 + beta3.abs());
    if delta <= 0.0 || (small && !p.is_closed_form()) {
        if x3 > 0.0 || delta < -1e-13 {
            return Err(Error::Domain(format!("phase needs λ > β3, got λ = {lambda}, β3 = {beta3}")));
        }
        let fp = 1.0 / p.derivative(x3);
        return Ok([2.0 * x3, 2.0 / 3.0 * fp, 4.0 / 3.0 * fp]);
    }
    let (j, h) = p.moment_integrals(lambda, beta3, x3)?;
    let sd = delta.sqrt();
    let d32 = delta * sd;
    Ok([2.0 * x3 - 2.0 * j / sd, -j / d32, (j - delta * h) / d32])
}

/// `q` and its gradient, from `(β1, β2, X3)`.
pub fn phase_x3(p: &Profile, b1: f64, b2: f64, x3: f64) -> Result<PhaseData> {
    phase_with(p, b1, b2, x3, p.evaluate(x3))
}

fn phase_with(p: &Profile, b1: f64, b2: f64, x3: f64, beta3: f64) -> Result<PhaseData> {
    if b2 < beta3 && b2 > beta3 - 1e-13 {
        // rounding in u0(f(β3))
        return phase_with(p, b1, b2, x3, b2);
    }
    if !(b1 >= b2 && b2 >= beta3 && b1 < 0.0) {
        return Err(Error::Domain(format!("phase needs 0 > β1 >= β2 >= β3, got ({b1}, {b2}, {beta3})")));
    }
    let c = 0.5 * (b1 + b2);
    let w = 0.5 * (b1 - b2);
    // Lobatto nodes ν_l = cos(π l / n); node values are kept and reused on doubling
    let eval = |nu: f64| -> Result<[f64; 4]> {
        let [r, r3, rl] = inner(p, c + w * nu, beta3, x3)?;
        Ok([r, 0.5 * (1.0 + nu) * rl, 0.5 * (1.0 - nu) * rl, r3])
    };
    let mut n = N_START;
    let mut vals: Vec<[f64; 4]> = (0..=n).map(|l| eval((PI * l as f64 / n as f64).cos())).collect::<Result<_>>()?;
    let mean = |vals: &[[f64; 4]], n: usize| -> [f64; 4] {
        let mut s = [0.0; 4];
        for (l, v) in vals.iter().enumerate() {
            let wt = if l == 0 || l == n { 0.5 } else { 1.0 };
            for k in 0..4 {
                s[k] += wt * v[k];
            }
        }
        s.map(|v| v / n as f64)
    };
    let mut prev = mean(&vals, n);
    if w == 0.0 {
        return Ok(PhaseData { q: 0.5 * prev[0], dq: [0.5 * prev[1], 0.5 * prev[2], 0.5 * prev[3]], beta3 });
    }
    loop {
        let n2 = 2 * n;
        let mut next = Vec::with_capacity(n2 + 1);
        for l in 0..=n2 {
            if l % 2 == 0 {
                next.push(vals[l / 2]);
            } else {
                next.push(eval((PI * l as f64 / n2 as f64).cos())?);
            }
        }
        let cur = mean(&next, n2);
        let change = (0..4).map(|k| (cur[k] - prev[k]).abs() / (1.0 + cur[k].abs())).fold(0.0, f64::max);
        vals = next;
        n = n2;
        prev = cur;
        if change < TOL {
            break;
        }
        if n >= N_MAX {
            return Err(Error::Resolution { what: "phase quadrature", tail: change, n });
        }
    }
    Ok(PhaseData { q: 0.5 * prev[0], dq: [0.5 * prev[1], 0.5 * prev[2], 0.5 * prev[3]], beta3 })
}

/// `q` and its gradient for an ordered triple on the given side of the hump.
pub fn phase(p: &Profile, beta: [f64; 3], regime: HumpRegime) -> Result<PhaseData> {
    let x3 = x3_of(p, beta[2], regime)?;
    phase_with(p, beta[0], beta[1], x3, beta[2])
}

/// `q` alone.
pub fn q_phase(p: &Profile, beta: [f64; 3], regime: HumpRegime) -> Result<f64> {
    Ok(phase(p, beta, regime)?.q)
}

/// `q` for any ordering of the arguments, before the hump time.
pub fn q_symmetric(p: &Profile, beta: [f64; 3]) -> Result<f64> {
    let mut b = beta;
    b.sort_by(|a, c| c.total_cmp(a));
    q_phase(p, b, HumpRegime::PreHump)
}

/// Before the hump time, `q` straight from its defining double integral
///
/// ```text
/// q = 1/(2√2 π) ∫∫ f-((1+μ)/2 ((1+ν)/2 β1 + (1-ν)/2 β2) + (1-μ)/2 β3) dμ dν / (sqrt(1-μ) sqrt(1-ν²))
/// ```
///
/// with the `ν` weight taken by Chebyshev orthogonality and the `μ` endpoint
/// by the square-root substitution. Slower than [`phase`]; used as a check.
pub fn q_direct(p: &Profile, beta: [f64; 3]) -> Result<f64> {
    let [b1, b2, b3] = beta;
    let cfg = QuadConfig { n_start: 32, n_max: 1024, tail_tol: 1e-14 };
    let mut err = None;
    let mut inner_nu = |mu: f64| -> f64 {
        let r = integral_cheb_weight(
            |nu| {
                let l = 0.5 * (1.0 + mu) * (0.5 * (1.0 + nu) * b1 + 0.5 * (1.0 - nu) * b2) + 0.5 * (1.0 - mu) * b3;
                match p.inverse(l, Branch::Decreasing) {
                    Ok(v) => v,
                    Err(e) => {
                        err = Some(e);
                        f64::NAN
                    }
                }
            },
            cfg,
        );
        match r {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        }
    };
    // ∫_{-1}^{1} g(μ) / sqrt(1-μ) dμ with s = -μ
    let v = integral_endpoint_sqrt(|s| inner_nu(-s), -1.0, 1.0, cfg);
    if let Some(e) = err {
        return Err(e);
    }
    Ok(v? / (2.0 * 2f64.sqrt() * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_reduces_to_inverse() {
        let p = Profile::sech2();
        let q = q_phase(&p, [-0.5, -0.5, -0.5], HumpRegime::PreHump).unwrap();
        assert!((q + 0.881_373_587_019_543).abs() < 1e-12, "{q}");
    }

    #[test]
    fn matches_direct_double_integral() {
        let p = Profile::sech2();
        for b in [[-0.2, -0.5, -0.9], [-0.05, -0.3, -0.35], [-0.6, -0.61, -0.99]] {
            let a = q_phase(&p, b, HumpRegime::PreHump).unwrap();
            let d = q_direct(&p, b).unwrap();
            assert!((a - d).abs() < 1e-10, "{b:?}: {a} vs {d}");
        }
    }

    #[test]
    fn gradient_matches_differences() {
        let p = Profile::sech2();
        for regime in [HumpRegime::PreHump, HumpRegime::PostHump] {
            let b = [-0.2, -0.5, -0.9];
            let d = phase(&p, b, regime).unwrap();
            let h = 1e-5;
            for i in 0..3 {
                let mut bp = b;
                let mut bm = b;
                bp[i] += h;
                bm[i] -= h;
                let fd = (q_phase(&p, bp, regime).unwrap() - q_phase(&p, bm, regime).unwrap()) / (2.0 * h);
                assert!((fd - d.dq[i]).abs() < 1e-8, "{regime:?} {i}: {fd} vs {}", d.dq[i]);
            }
        }
    }

    #[test]
    fn generic_profile_agrees() {
        let p = Profile::sech2();
        let g = p.as_generic();
        for (b, r) in [([-0.2, -0.5, -0.9], HumpRegime::PreHump), ([-0.1, -0.3, -0.95], HumpRegime::PostHump)] {
            let a = phase(&p, b, r).unwrap();
            let c = phase(&g, b, r).unwrap();
            assert!((a.q - c.q).abs() < 1e-9, "{} vs {}", a.q, c.q);
            for i in 0..3 {
                assert!((a.dq[i] - c.dq[i]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn leading_limit_is_finite() {
        let p = Profile::sech2();
        let x3 = p.inverse(-0.8, Branch::Decreasing).unwrap();
        let a = phase_x3(&p, -0.1, -0.8, x3).unwrap();
        let b = phase_x3(&p, -0.1, -0.8 + 1e-12, x3).unwrap();
        assert!((a.q - b.q).abs() < 1e-9);
        assert!((a.dq[1] - a.dq[2]).abs() < 1e-12);
    }
}
