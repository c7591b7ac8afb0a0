//! Root finding: scalar bisection and small nonlinear systems.
//!
//! Systems are solved the way the Whitham and edge equations are: a simplex
//! minimization of the summed squared residual, then a damped Newton polish
//! with a finite-difference Jacobian to reach rounding level.

use super::simplex::{simplex_minimize, SimplexOptions, SimplexResult};
use crate::{Error, Result};

/// Bisection for a sign change of `f` on `[a, b]`.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NoBracket { a, b });
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Exploratory runs stop at residual `1e-6`; precision runs go to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exploratory,
    Precision,
}

impl Mode {
    pub fn system_options(self) -> SystemOptions {
        match self {
            Mode::Exploratory => SystemOptions::exploratory(),
            Mode::Precision => SystemOptions::precision(),
        }
    }
}

/// Controls for [`solve_system`].
#[derive(Debug, Clone, Copy)]
pub struct SystemOptions {
    pub simplex: SimplexOptions,
    /// Newton iterations after the simplex stage; 0 disables the polish.
    pub newton_iter: usize,
    /// Relative finite-difference step for the Jacobian.
    pub fd_step: f64,
}

impl SystemOptions {
    /// Stop at summed squared residual `1e-6`, as in exploratory runs.
    pub fn exploratory() -> Self {
        SystemOptions {
            simplex: SimplexOptions { stop_value: 1e-6, tol: 1e-10, max_iter: 4000, initial_step: 1e-2 },
            newton_iter: 0,
            fd_step: 1e-7,
        }
    }

    /// Drive residuals to rounding level.
    pub fn precision() -> Self {
        SystemOptions {
            simplex: SimplexOptions { stop_value: 1e-20, tol: 1e-13, max_iter: 6000, initial_step: 1e-2 },
            newton_iter: 30,
            fd_step: 1e-7,
        }
    }
}

/// Outcome of a system solve.
#[derive(Debug, Clone)]
pub struct SystemSolution {
    pub point: Vec<f64>,
    pub residual: Vec<f64>,
    /// Summed squared residual at `point`.
    pub value: f64,
    pub simplex: SimplexResult,
}

fn sumsq(r: &[f64]) -> f64 {
    let s: f64 = r.iter().map(|v| v * v).sum();
    if s.is_nan() {
        f64::INFINITY
    } else {
        s
    }
}

/// Gaussian elimination with partial pivoting; `None` if singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Solve `residual(z) = 0` for square systems, starting at `seed`.
pub fn solve_system(
    mut residual: impl FnMut(&[f64]) -> Vec<f64>,
    seed: &[f64],
    opts: SystemOptions,
) -> SystemSolution {
    let simplex = simplex_minimize(|z| sumsq(&residual(z)), seed, opts.simplex);
    let mut z = simplex.point.clone();
    let mut r = residual(&z);
    let mut value = sumsq(&r);
    let n = z.len();

    for _ in 0..opts.newton_iter {
        if value == 0.0 {
            break;
        }
        let mut jac = vec![vec![0.0; n]; r.len()];
        for j in 0..n {
            let h = opts.fd_step * z[j].abs().max(1e-3);
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[j] += h;
            zm[j] -= h;
            let rp = residual(&zp);
            let rm = residual(&zm);
            for i in 0..r.len() {
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let Some(dz) = solve_dense(jac, r.iter().map(|v| -v).collect()) else { break };
        let mut lambda = 1.0;
        let mut improved = false;
        while lambda > 1e-4 {
            let trial: Vec<f64> = z.iter().zip(&dz).map(|(a, d)| a + lambda * d).collect();
            let rt = residual(&trial);
            let vt = sumsq(&rt);
            if vt < value {
                z = trial;
                r = rt;
                value = vt;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !improved {
            break;
        }
    }

    SystemSolution { point: z, residual: r, value, simplex }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0, 1e-15).is_err());
    }

    #[test]
    fn dense_solve() {
        let a = vec![vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 4.0]];
        let x = solve_dense(a, vec![3.0, 5.0, 5.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nonlinear_system_to_rounding() {
        let f = |z: &[f64]| vec![z[0] * z[0] + z[1] * z[1] - 4.0, z[0] * z[1] - 1.0];
        let s = solve_system(f, &[1.5, 0.8], SystemOptions::precision());
        assert!(s.value < 1e-28, "value {}", s.value);
    }
}
