//! Nelder-Mead simplex minimization.
//!
//! Coefficients are the usual reflection 1, expansion 2, contraction 1/2,
//! shrink 1/2. Iteration stops when the best value drops below `stop_value`
//! or the simplex diameter drops below `tol`.

/// Stopping and start-up controls.
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub stop_value: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Edge length of the initial simplex, relative to `|x_i|` when nonzero.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions { stop_value: 1e-12, tol: 1e-12, max_iter: 5000, initial_step: 0.05 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn build_simplex(start: &[f64], step: f64) -> Vec<Vec<f64>> {
    let mut pts = vec![start.to_vec()];
    for i in 0..start.len() {
        let mut p = start.to_vec();
        p[i] += if p[i] != 0.0 { step * p[i].abs() } else { step };
        pts.push(p);
    }
    pts
}

fn clean(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimize `objective` from `start`. NaN values count as `+inf`.
pub fn simplex_minimize(
    mut objective: impl FnMut(&[f64]) -> f64,
    start: &[f64],
    opts: SimplexOptions,
) -> SimplexResult {
    let n = start.len();
    let mut pts = build_simplex(start, opts.initial_step);
    let mut vals: Vec<f64> = pts.iter().map(|p| clean(objective(p))).collect();
    let mut iterations = 0;
    let mut converged = false;

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let diameter = pts[1..]
            .iter()
            .flat_map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if vals[0] < opts.stop_value || diameter < opts.tol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iter {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..n).map(|j| pts[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&pts[n]).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = along(1.0);
        let fr = clean(objective(&xr));
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = clean(objective(&xe));
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let xc = along(0.5);
            let fc = clean(objective(&xc));
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = clean(objective(&xc));
            (xc, fc)
        };
        if fc < vals[n].min(fr) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        let best = pts[0].clone();
        for i in 1..=n {
            pts[i] = best.iter().zip(&pts[i]).map(|(b, p)| b + 0.5 * (p - b)).collect();
            vals[i] = clean(objective(&pts[i]));
        }
    }

    SimplexResult { point: pts[0].clone(), value: vals[0], iterations, converged }
}
