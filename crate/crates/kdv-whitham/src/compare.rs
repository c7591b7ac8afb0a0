//! KdV against the asymptotic solution: difference fields, error metrics,
//! and least-squares fits of log-log data.

use crate::asymptotic::{AsymptoticSample, Composite, Region};
use crate::kdv::Snapshot;
use crate::whitham::{WhithamTriple, ZoneSolution};
use crate::{Error, Result};

/// Default threshold for the outer zone boundary.
pub const BOUNDARY_THRESHOLD: f64 = 1e-4;
/// Half-width of the central window, as a fraction of the zone width.
pub const MID_WINDOW: f64 = 0.05;

/// `u_kdv - u_app` on the KdV grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffField {
    pub x: Vec<f64>,
    pub t: f64,
    pub eps: f64,
    pub diff: Vec<f64>,
    pub region: Vec<Region>,
}

impl DiffField {
    /// From KdV values and asymptotic samples taken at the same points.
    pub fn new(u_kdv: &[f64], app: &[AsymptoticSample]) -> Result<Self> {
        if u_kdv.len() != app.len() || app.is_empty() {
            return Err(Error::Domain(format!("{} KdV values against {} samples", u_kdv.len(), app.len())));
        }
        Ok(DiffField {
            x: app.iter().map(|s| s.x).collect(),
            t: app[0].t,
            eps: app[0].eps,
            diff: u_kdv.iter().zip(app).map(|(u, s)| u - s.u_app).collect(),
            region: app.iter().map(|s| s.region).collect(),
        })
    }

    /// Largest `|diff|` over `x` in `[a, b]`, with its location.
    pub fn max_on(&self, a: f64, b: f64) -> Option<(f64, f64)> {
        self.x
            .iter()
            .zip(&self.diff)
            .filter(|(x, _)| **x >= a && **x <= b)
            .map(|(x, d)| (*x, d.abs()))
            .max_by(|p, q| p.1.total_cmp(&q.1))
    }

    /// Largest `|diff|` over one region.
    pub fn max_in(&self, region: Region) -> Option<(f64, f64)> {
        (0..self.x.len())
            .filter(|&i| self.region[i] == region)
            .map(|i| (self.x[i], self.diff[i].abs()))
            .max_by(|p, q| p.1.total_cmp(&q.1))
    }
}

/// Cubic Lagrange resampling of `(xs, ys)` onto `at`; `xs` increasing.
pub fn resample(xs: &[f64], ys: &[f64], at: &[f64]) -> Result<Vec<f64>> {
    let n = xs.len();
    if n < 4 || ys.len() != n {
        return Err(Error::Domain(format!("resampling needs 4 or more matched points, got {n}")));
    }
    Ok(at
        .iter()
        .map(|&x| {
            let i = xs.partition_point(|&v| v <= x).clamp(1, n - 1) - 1;
            let s = i.saturating_sub(1).min(n - 4);
            let mut v = 0.0;
            for a in s..s + 4 {
                let mut w = 1.0;
                for b in s..s + 4 {
                    if a != b {
                        w *= (x - xs[b]) / (xs[a] - xs[b]);
                    }
                }
                v += w * ys[a];
            }
            v
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub sigma_slope: f64,
    pub sigma_intercept: f64,
    pub r: f64,
    pub n_points: usize,
}

/// Least squares `y = slope z + intercept`. `r` is 0 when `y` is constant.
pub fn linreg(z: &[f64], y: &[f64]) -> Result<ScalingFit> {
    let m = z.len();
    if m < 3 || y.len() != m {
        return Err(Error::Domain(format!("regression needs 3 or more matched points, got {m}")));
    }
    let mf = m as f64;
    let zb = z.iter().sum::<f64>() / mf;
    let yb = y.iter().sum::<f64>() / mf;
    let (mut szz, mut szy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in z.iter().zip(y) {
        szz += (a - zb) * (a - zb);
        szy += (a - zb) * (b - yb);
        syy += (b - yb) * (b - yb);
    }
    if szz == 0.0 {
        return Err(Error::Degenerate("all abscissae equal".into()));
    }
    let slope = szy / szz;
    let intercept = yb - slope * zb;
    let r = if syy == 0.0 { 0.0 } else { szy / (szz * syy).sqrt() };
    let sigma = ((syy - slope * szy).max(0.0) / (mf - 2.0)).sqrt();
    Ok(ScalingFit {
        slope,
        intercept,
        sigma_slope: sigma / szz.sqrt(),
        sigma_intercept: sigma * (1.0 / mf + zb * zb / szz).sqrt(),
        r,
        n_points: m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundary {
    pub x: f64,
    /// The threshold was still exceeded at the end of the domain.
    pub at_domain_end: bool,
}

/// The outermost grid point on `side` where `|diff| >= threshold`; beyond it
/// the difference stays below threshold. Returns `edge` when no point
/// outside the zone exceeds it.
pub fn zone_boundary(diff: &DiffField, side: BoundarySide, edge: f64, threshold: f64) -> Boundary {
    let n = diff.x.len();
    let idx: Box<dyn Iterator<Item = usize>> = match side {
        BoundarySide::Left => Box::new(0..n),
        BoundarySide::Right => Box::new((0..n).rev()),
    };
    for (k, i) in idx.enumerate() {
        let outside = match side {
            BoundarySide::Left => diff.x[i] < edge,
            BoundarySide::Right => diff.x[i] > edge,
        };
        if !outside {
            break;
        }
        if diff.diff[i].abs() >= threshold {
            return Boundary { x: diff.x[i], at_domain_end: k == 0 };
        }
    }
    Boundary { x: edge, at_domain_end: false }
}

/// Where the edge windows end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edges {
    pub x_minus: f64,
    pub x_plus: f64,
    /// Local wavelength just inside each edge.
    pub wavelength_minus: f64,
    pub wavelength_plus: f64,
}

/// One comparison at one `(ε, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub eps: f64,
    pub t: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    pub err_mid: f64,
    pub err_left_edge: f64,
    pub err_right_edge: f64,
    pub err_hopf_minus: f64,
    pub err_hopf_plus: f64,
    /// Where `err_hopf_plus` is attained.
    pub argmax_hopf_plus: f64,
    pub x_hopf_minus: Boundary,
    pub x_hopf_plus: Boundary,
    /// `x_hopf⁻ / x⁻ - 1`.
    pub delta_minus: f64,
    /// `1 - x_hopf⁺ / x⁺`.
    pub delta_plus: f64,
}

pub fn error_metrics(diff: &DiffField, e: Edges, threshold: f64) -> Result<Metrics> {
    let width = e.x_plus - e.x_minus;
    let mid = 0.5 * (e.x_minus + e.x_plus);
    let h = MID_WINDOW * width;
    let empty = |what: &'static str| Error::Resolution { what, tail: f64::NAN, n: 0 };
    let err_mid = diff.max_on(mid - h, mid + h).ok_or_else(|| empty("central window"))?.1;
    let err_left_edge = diff.max_on(e.x_minus, e.x_minus + e.wavelength_minus).ok_or_else(|| empty("leading-edge window"))?.1;
    let err_right_edge = diff.max_on(e.x_plus - e.wavelength_plus, e.x_plus).ok_or_else(|| empty("trailing-edge window"))?.1;
    let (_, err_hopf_minus) = diff.max_in(Region::OutsideLeft).unwrap_or((e.x_minus, 0.0));
    let (argmax_hopf_plus, err_hopf_plus) = diff.max_in(Region::OutsideRight).unwrap_or((e.x_plus, 0.0));
    let xm = zone_boundary(diff, BoundarySide::Left, e.x_minus, threshold);
    let xp = zone_boundary(diff, BoundarySide::Right, e.x_plus, threshold);
    Ok(Metrics {
        eps: diff.eps,
        t: diff.t,
        x_minus: e.x_minus,
        x_plus: e.x_plus,
        err_mid,
        err_left_edge,
        err_right_edge,
        err_hopf_minus,
        err_hopf_plus,
        argmax_hopf_plus,
        x_hopf_minus: xm,
        x_hopf_plus: xp,
        delta_minus: xm.x / e.x_minus - 1.0,
        delta_plus: 1.0 - xp.x / e.x_plus,
    })
}

/// Spatial period `2Kε / sqrt(β1 - β3)` of the modulated wave.
pub fn wavelength(tr: &WhithamTriple, eps: f64) -> f64 {
    2.0 * tr.k * eps / (tr.beta[0] - tr.beta[2]).sqrt()
}

/// Edge windows from the nodes next to each edge; the trailing wavelength
/// diverges at the edge, so both are capped at a quarter of the zone.
pub fn edges_of(zone: &ZoneSolution, eps: f64) -> Result<Edges> {
    let (first, last) = match (zone.points.first(), zone.points.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InterpolationGap { x: zone.leading.x_edge, reason: "empty zone".into() }),
    };
    let cap = 0.25 * zone.width();
    Ok(Edges {
        x_minus: zone.leading.x_edge,
        x_plus: zone.trailing.x_edge,
        wavelength_minus: wavelength(&first.triple, eps).min(cap),
        wavelength_plus: wavelength(&last.triple, eps).min(cap),
    })
}

/// Everything compared at one `(ε, t)`.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub samples: Vec<AsymptoticSample>,
    pub diff: DiffField,
    pub metrics: Metrics,
}

/// Sample the composite on the KdV grid of `snap` and compare.
pub fn compare_snapshot(snap: &Snapshot, eps: f64, composite: &Composite, zone: &ZoneSolution) -> Result<Comparison> {
    let samples = composite.sample_grid(&snap.x, eps)?;
    let diff = DiffField::new(&snap.u, &samples)?;
    let mut metrics = error_metrics(&diff, edges_of(zone, eps)?, BOUNDARY_THRESHOLD)?;
    refine_outer_maxima(snap, eps, composite, &mut metrics)?;
    Ok(Comparison { samples, diff, metrics })
}

/// The outer maxima sit at the zone edges, between grid points. Scan the
/// grid cell next to each edge with the band-limited KdV interpolant.
fn refine_outer_maxima(snap: &Snapshot, eps: f64, composite: &Composite, m: &mut Metrics) -> Result<()> {
    const SUB: usize = 32;
    let h = match snap.x.as_slice() {
        [a, b, ..] => b - a,
        _ => return Ok(()),
    };
    let g = snap.interpolant();
    let (a, b) = composite.edges();
    let nudge = 1e-12 * (1.0 + a.abs().max(b.abs()));
    for k in 0..=SUB {
        let off = nudge + h * k as f64 / SUB as f64;
        let xl = a - off;
        let dl = (g.eval(xl) - composite.sample(xl, eps)?.u_app).abs();
        if dl > m.err_hopf_minus {
            m.err_hopf_minus = dl;
        }
        let xr = b + off;
        let dr = (g.eval(xr) - composite.sample(xr, eps)?.u_app).abs();
        if dr > m.err_hopf_plus {
            m.err_hopf_plus = dr;
            m.argmax_hopf_plus = xr;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(x: Vec<f64>, diff: Vec<f64>) -> DiffField {
        let region = vec![Region::Whitham; x.len()];
        DiffField { x, t: 0.4, eps: 0.01, diff, region }
    }

    #[test]
    fn exact_line() {
        let z = [0.0, 1.0, 2.0, 3.5];
        let y = z.map(|v| 2.0 * v + 1.0);
        let f = linreg(&z, &y).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r - 1.0).abs() < 1e-12 && f.sigma_slope < 1e-7);
    }

    #[test]
    fn constant_data() {
        let f = linreg(&[0.0, 1.0, 2.0], &[3.0, 3.0, 3.0]).unwrap();
        assert_eq!((f.slope, f.r), (0.0, 0.0));
        assert!(linreg(&[1.0, 1.0, 1.0], &[0.0, 1.0, 2.0]).is_err());
    }

    #[test]
    fn standard_errors_by_hand() {
        // s_zz = 2, s_zy = 2.5, s_yy = 3.5, slope 1.25, σ² = 0.375
        let f = linreg(&[0.0, 1.0, 2.0], &[0.0, 2.0, 2.5]).unwrap();
        assert!((f.slope - 1.25).abs() < 1e-14);
        assert!((f.sigma_slope - (0.375f64 / 2.0).sqrt()).abs() < 1e-14);
        assert!((f.sigma_intercept - (0.375f64 * (1.0 / 3.0 + 0.5)).sqrt()).abs() < 1e-14);
        assert!((f.r - 2.5 / 7f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn boundary_cases() {
        let x: Vec<f64> = (0..101).map(|i| -5.0 + 0.05 * i as f64).collect();
        let zero = field(x.clone(), vec![0.0; 101]);
        let b = zone_boundary(&zero, BoundarySide::Left, -3.2, BOUNDARY_THRESHOLD);
        assert_eq!((b.x, b.at_domain_end), (-3.2, false));
        let bump = field(x.clone(), x.iter().map(|&v| if v > -3.0 { 1e-3 } else { 0.0 }).collect());
        let b = zone_boundary(&bump, BoundarySide::Left, -2.0, BOUNDARY_THRESHOLD);
        assert!((b.x + 3.0).abs() <= 0.05 + 1e-12);
        let b = zone_boundary(&bump, BoundarySide::Right, -2.0, BOUNDARY_THRESHOLD);
        assert!(b.at_domain_end);
    }

    #[test]
    fn metrics_of_zero() {
        let x: Vec<f64> = (0..201).map(|i| -5.0 + 0.025 * i as f64).collect();
        let d = field(x, vec![0.0; 201]);
        let e = Edges { x_minus: -3.2, x_plus: -2.1, wavelength_minus: 0.05, wavelength_plus: 0.1 };
        let m = error_metrics(&d, e, BOUNDARY_THRESHOLD).unwrap();
        assert_eq!([m.err_mid, m.err_left_edge, m.err_right_edge, m.err_hopf_minus, m.err_hopf_plus], [0.0; 5]);
        assert_eq!((m.delta_minus, m.delta_plus), (0.0, 0.0));
    }

    #[test]
    fn resampling_is_exact_on_cubics() {
        let xs: Vec<f64> = (0..12).map(|i| (i as f64 * 0.3).powf(1.3)).collect();
        let f = |x: f64| 0.3 - x + 2.0 * x * x - 0.1 * x * x * x;
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let at = [0.05, 1.234, 3.3, 4.9];
        for (a, v) in at.iter().zip(resample(&xs, &ys, &at).unwrap()) {
            assert!((v - f(*a)).abs() < 1e-11);
        }
    }
}
