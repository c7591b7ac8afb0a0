//! The phase from semiclassical scattering data, computed independently of
//! [`super::phase`].
//!
//! ```text
//! ρ(λ) = sqrt(-λ) x+(λ) + ∫_{x+}^∞ [sqrt(-λ) - sqrt(u0 - λ)] dy
//! τ(λ) = ∫_{x-}^{x+} sqrt(λ - u0) dy
//! ```
//!
//! and, with `P(λ) = |(λ - β1)(λ - β2)(λ - β3)|`,
//!
//! ```text
//! φ = (1/π) [∫_{β3}^{β2} ρ/√P - ∫_{β1}^{0} ρ/√P - ∫_{β2}^{β1} τ/√P + ∫_{-1}^{β3} τ/√P]
//! ```
//!
//! The last term is present only while `X3 < 0`. Signs follow the branch
//! of the square root on each interval. All integrals are tanh-sinh.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::numerics::tanh_sinh;
use crate::profile::{Branch, HumpRegime, Profile};
use crate::{Error, Result};

const INNER_TOL: f64 = 1e-14;
const OUTER_TOL: f64 = 1e-12;

/// Where `|u0|` has dropped below rounding on the right.
fn right_cutoff(p: &Profile, from: f64) -> f64 {
    let mut x = from.max(1.0);
    while p.evaluate(x).abs() > 1e-18 && x < 1e4 {
        x *= 1.5;
    }
    x
}

/// Reflection-type integral `ρ(λ)` for `λ ∈ (-1, 0)`.
pub fn rho(p: &Profile, lambda: f64) -> Result<f64> {
    let xp = p.inverse(lambda, Branch::Increasing)?;
    let s = (-lambda).sqrt();
    let end = right_cutoff(p, xp);
    let tail = tanh_sinh(
        |y| {
            let u = p.evaluate(y);
            -u / (s + (u - lambda).max(0.0).sqrt())
        },
        xp,
        end,
        INNER_TOL,
    );
    Ok(s * xp + tail)
}

/// Transmission-type integral `τ(λ)` for `λ ∈ (-1, 0)`.
pub fn tau(p: &Profile, lambda: f64) -> Result<f64> {
    let a = p.inverse(lambda, Branch::Decreasing)?;
    let b = p.inverse(lambda, Branch::Increasing)?;
    Ok(tanh_sinh(|y| (lambda - p.evaluate(y)).max(0.0).sqrt(), a, b, INNER_TOL))
}

/// The four contributions to `φ`, each already divided by `π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseIdentityParts {
    /// `ρ` over `[β1, 0]`.
    pub a1: f64,
    /// `ρ` over `[β3, β2]`.
    pub a2: f64,
    /// `τ` over the gap `[β2, β1]`.
    pub g: f64,
    /// `τ` over `[-1, β3]`.
    pub g0: f64,
    pub phi: f64,
}

/// `φ(β1, β2, β3)` for the side of the hump given by `regime`.
pub fn phase_identity(p: &Profile, beta: [f64; 3], regime: HumpRegime) -> Result<PhaseIdentityParts> {
    let [b1, b2, b3] = beta;
    if !(0.0 > b1 && b1 > b2 && b2 > b3 && b3 > -1.0) {
        return Err(Error::Domain(format!("phase identity needs 0 > β1 > β2 > β3 > -1, got {beta:?}")));
    }
    let err = RefCell::new(None);
    let guard = |r: Result<f64>| match r {
        Ok(v) => v,
        Err(e) => {
            *err.borrow_mut() = Some(e);
            f64::NAN
        }
    };
    // Every root of P at an end of the range is substituted away, so that
    // `λ - βi` is never formed near a root.
    let between = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64, other: f64| {
        let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        tanh_sinh(|th| { let l = m - h * th.cos(); g(l) / (l - other).abs().sqrt() }, 0.0, PI, OUTER_TOL)
    };
    let rho_g = |l: f64| guard(rho(p, l));
    let tau_g = |l: f64| guard(tau(p, l));
    let a1 = tanh_sinh(
        |s| { let l = b1 + s * s; 2.0 * rho_g(l) / ((l - b2) * (l - b3)).sqrt() },
        0.0,
        (-b1).sqrt(),
        OUTER_TOL,
    ) / PI;
    let a2 = between(&rho_g, b3, b2, b1) / PI;
    let g = between(&tau_g, b2, b1, b3) / PI;
    let g0 = match regime {
        HumpRegime::PreHump => {
            tanh_sinh(
                |s| { let l = (b3 - s * s).max(-1.0); 2.0 * tau_g(l) / ((b2 - l) * (b1 - l)).sqrt() },
                0.0,
                (b3 + 1.0).sqrt(),
                OUTER_TOL,
            ) / PI
        }
        HumpRegime::PostHump => 0.0,
    };
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let phi = a2 - a1 - g + g0;
    if !phi.is_finite() {
        return Err(Error::NonFinite("phase identity"));
    }
    Ok(PhaseIdentityParts { a1, a2, g, g0, phi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_closed_form() {
        let p = Profile::sech2();
        for l in [-0.9f64, -0.5, -0.1] {
            let want = PI * (1.0 - (-l).sqrt());
            assert!((tau(&p, l).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn agrees_with_hodograph_phase() {
        let p = Profile::sech2();
        for regime in [HumpRegime::PreHump, HumpRegime::PostHump] {
            for b in [[-0.1, -0.4, -0.8], [-0.01, -0.02, -0.03], [-0.05, -0.6, -0.62]] {
                let phi = phase_identity(&p, b, regime).unwrap().phi;
                let q = crate::whitham::q_phase(&p, b, regime).unwrap();
                assert!((phi - q).abs() < 1e-10, "{regime:?} {b:?}: {phi} vs {q}");
            }
        }
    }

    #[test]
    fn rho_reference_values() {
        // ½ ∫_λ^0 f+(ξ) / sqrt(ξ - λ) dξ evaluated in 30-digit arithmetic
        let p = Profile::sech2();
        for (l, want) in [(-0.8, 0.823_665_789_521_066_9), (-0.3, 0.847_164_080_186_043_6)] {
            assert!((rho(&p, l).unwrap() - want).abs() < 1e-11);
        }
    }
}
