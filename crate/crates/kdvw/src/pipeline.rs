//! The `run` pipeline: per ε a KdV solve, per snapshot time a zone solve
//! shared across ε, then the comparison and a sweep-level fit.

use std::path::{Path, PathBuf};

use kdv_whitham::asymptotic::Composite;
use kdv_whitham::compare::{compare_snapshot, linreg, Metrics, BOUNDARY_THRESHOLD, MID_WINDOW};
use kdv_whitham::hopf::{solve_branch, Side};
use kdv_whitham::kdv::{Snapshot, SpectralField};
use kdv_whitham::numerics::Mode;
use kdv_whitham::profile::Profile;
use kdv_whitham::whitham::{solve_zone, ZoneSolution};

use crate::config::{ExperimentConfig, ProfileSpec};
use crate::table::{render_record, Cell, Table};
use crate::CliError;

/// Metric names fitted across ε, in output order.
pub const FITTED: [&str; 7] =
    ["err_mid", "err_hopf_minus", "err_hopf_plus", "delta_minus", "delta_plus", "err_left_edge", "err_right_edge"];

pub fn metric(m: &Metrics, name: &str) -> f64 {
    match name {
        "err_mid" => m.err_mid,
        "err_hopf_minus" => m.err_hopf_minus,
        "err_hopf_plus" => m.err_hopf_plus,
        "delta_minus" => m.delta_minus,
        "delta_plus" => m.delta_plus,
        "err_left_edge" => m.err_left_edge,
        "err_right_edge" => m.err_right_edge,
        _ => f64::NAN,
    }
}

pub fn eps_tag(eps: f64) -> String {
    format!("eps{:.4}", -eps.log10())
}

pub fn time_tag(t: f64) -> String {
    format!("t{t}")
}

#[derive(Debug, Default)]
pub struct Outcome {
    /// Paths relative to the output directory.
    pub artifacts: Vec<PathBuf>,
    pub failures: Vec<String>,
    pub params: Vec<(String, String)>,
}

fn write(out: &Path, rel: &Path, text: &str, artifacts: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let full = out.join(rel);
    if let Some(d) = full.parent() {
        std::fs::create_dir_all(d)?;
    }
    std::fs::write(&full, text)?;
    artifacts.push(rel.to_path_buf());
    Ok(())
}

pub fn load_profile(spec: &ProfileSpec) -> Result<Profile, CliError> {
    match spec {
        ProfileSpec::Sech2 => Ok(Profile::sech2()),
        ProfileSpec::File(p) => {
            let t = Table::read(p).map_err(|e| CliError::Config(format!("profile: {e}")))?;
            if t.columns.len() < 2 {
                return Err(CliError::Config("profile table needs columns x and u".into()));
            }
            let xs = t.column(&t.columns[0])?;
            let us = t.column(&t.columns[1])?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Profile::from_samples(name, xs, us).map_err(|e| CliError::Config(format!("profile: {e}")))
        }
    }
}

fn zone_table(z: &ZoneSolution) -> Table {
    let mut t = Table::new(&["x", "beta1", "beta2", "beta3", "x3", "q", "residual", "converged"]);
    let lead = z.leading.beta();
    t.push(vec![z.leading.x_edge.into(), lead[0].into(), lead[1].into(), lead[2].into(), z.leading.x3.into(), f64::NAN.into(), z.leading.residual.into(), "edge".into()]);
    for p in &z.points {
        let b = p.triple.beta;
        let ok = if p.converged { "yes" } else { "no" };
        t.push(vec![p.triple.x.into(), b[0].into(), b[1].into(), b[2].into(), p.triple.x3.into(), p.q.into(), p.value.into(), ok.into()]);
    }
    let tr = z.trailing.beta();
    t.push(vec![z.trailing.x_edge.into(), tr[0].into(), tr[1].into(), tr[2].into(), z.trailing.x3.into(), f64::NAN.into(), z.trailing.residual.into(), "edge".into()]);
    t
}

fn envelope_table(z: &ZoneSolution) -> Table {
    let mut t = Table::new(&["x", "lower", "upper"]);
    for (x, b) in z.profile() {
        t.push(vec![x.into(), (b[0] - b[1] + b[2]).into(), (b[0] + b[1] - b[2]).into()]);
    }
    t
}

fn metrics_record(m: &Metrics, extra: &[(String, String)]) -> String {
    let f = |v: f64| format!("{v:e}");
    let mut pairs: Vec<(String, String)> = extra.to_vec();
    pairs.extend([
        ("eps".into(), f(m.eps)),
        ("t".into(), f(m.t)),
        ("x_minus".into(), f(m.x_minus)),
        ("x_plus".into(), f(m.x_plus)),
        ("err_mid".into(), f(m.err_mid)),
        ("err_left_edge".into(), f(m.err_left_edge)),
        ("err_right_edge".into(), f(m.err_right_edge)),
        ("err_hopf_minus".into(), f(m.err_hopf_minus)),
        ("err_hopf_plus".into(), f(m.err_hopf_plus)),
        ("argmax_hopf_plus".into(), f(m.argmax_hopf_plus)),
        ("x_hopf_minus".into(), f(m.x_hopf_minus.x)),
        ("x_hopf_minus_at_domain_end".into(), m.x_hopf_minus.at_domain_end.to_string()),
        ("x_hopf_plus".into(), f(m.x_hopf_plus.x)),
        ("x_hopf_plus_at_domain_end".into(), m.x_hopf_plus.at_domain_end.to_string()),
        ("delta_minus".into(), f(m.delta_minus)),
        ("delta_plus".into(), f(m.delta_plus)),
        ("mid_window".into(), f(MID_WINDOW)),
        ("boundary_threshold".into(), f(BOUNDARY_THRESHOLD)),
    ]);
    render_record(&pairs)
}

/// Before breakup the whole line is Hopf.
fn hopf_only(p: &Profile, snap: &Snapshot, mode: Mode) -> Result<Table, CliError> {
    let br = solve_branch(p, &snap.x, snap.t, Side::LeftOfZone, mode);
    if let Some(i) = br.failed_at {
        return Err(CliError::Solver(kdv_whitham::Error::NonConvergence {
            what: format!("Hopf branch at x = {}", snap.x[i]),
            residual: f64::NAN,
        }));
    }
    let mut t = Table::new(&["x", "u_kdv", "u_app", "diff", "region"]);
    for ((x, u), h) in snap.x.iter().zip(&snap.u).zip(&br.samples) {
        t.push(vec![(*x).into(), (*u).into(), h.u.into(), (u - h.u).into(), "hopf".into()]);
    }
    Ok(t)
}

struct EpsResult {
    metrics: Vec<Metrics>,
    artifacts: Vec<PathBuf>,
    failures: Vec<String>,
    params: Vec<(String, String)>,
}

fn run_eps(
    cfg: &ExperimentConfig,
    p: &Profile,
    eps: f64,
    composites: &[(f64, Option<Composite<'_>>)],
    zones: &[(f64, Option<ZoneSolution>)],
    mode: Mode,
) -> EpsResult {
    let tag = eps_tag(eps);
    let rp = cfg.params(eps);
    let mut r = EpsResult { metrics: vec![], artifacts: vec![], failures: vec![], params: vec![] };
    let key = |k: &str| format!("run.{tag}.{k}");
    r.params.extend([
        (key("eps"), format!("{eps:e}")),
        (key("n"), rp.n.to_string()),
        (key("l"), format!("{:e}", rp.l)),
        (key("dt"), format!("{:e}", rp.dt)),
    ]);
    let dir = PathBuf::from(&tag);
    let (snaps, trace) = match SpectralField::init(p, rp.l, rp.n, eps, true).and_then(|(mut f, _)| f.evolve(cfg.tmax, rp.dt, &cfg.times)) {
        Ok(v) => v,
        Err(e) => {
            r.failures.push(format!("{tag}: KdV solve: {e}"));
            return r;
        }
    };
    let log_err = trace.final_err().abs().log10();
    r.params.push((key("log10_energy_err"), format!("{log_err:e}")));
    if let Some(v) = rp.log10_err {
        r.params.push((key("table_log10_err"), format!("{v:e}")));
    }
    let mut et = Table::new(&["t", "energy", "err"]);
    for ((t, e), d) in trace.times.iter().zip(&trace.energy).zip(trace.err()) {
        et.push(vec![(*t).into(), (*e).into(), d.into()]);
    }
    if let Err(e) = write(&cfg.out, &dir.join("energy.dat"), &et.render(), &mut r.artifacts) {
        r.failures.push(format!("{tag}: {e}"));
    }
    for snap in &snaps {
        let tt = time_tag(snap.t);
        let comp = composites.iter().find(|(t, _)| *t == snap.t).and_then(|(_, c)| c.as_ref());
        let zone = zones.iter().find(|(t, _)| *t == snap.t).and_then(|(_, z)| z.as_ref());
        let res = match (comp, zone) {
            (Some(c), Some(z)) => compare_snapshot(snap, eps, c, z).map_err(CliError::from).and_then(|cmp| {
                let mut t = Table::new(&["x", "u_kdv", "u_app", "diff", "region"]);
                for ((s, u), d) in cmp.samples.iter().zip(&snap.u).zip(&cmp.diff.diff) {
                    t.push(vec![s.x.into(), (*u).into(), s.u_app.into(), (*d).into(), s.region.label().into()]);
                }
                write(&cfg.out, &dir.join(format!("snapshot_{tt}.dat")), &t.render(), &mut r.artifacts)?;
                let extra = vec![("n".into(), rp.n.to_string()), ("l".into(), format!("{:e}", rp.l)), ("dt".into(), format!("{:e}", rp.dt))];
                write(&cfg.out, &dir.join(format!("metrics_{tt}.txt")), &metrics_record(&cmp.metrics, &extra), &mut r.artifacts)?;
                r.metrics.push(cmp.metrics);
                Ok(())
            }),
            _ if snap.t <= critical_time(p) => {
                hopf_only(p, snap, mode).and_then(|t| write(&cfg.out, &dir.join(format!("snapshot_{tt}.dat")), &t.render(), &mut r.artifacts))
            }
            _ => Err(CliError::Table(format!("no zone solution at t = {}", snap.t))),
        };
        if let Err(e) = res {
            r.failures.push(format!("{tag} {tt}: {e}"));
        }
    }
    r
}

fn critical_time(p: &Profile) -> f64 {
    p.critical_point().map(|c| c.t_c).unwrap_or(f64::INFINITY)
}

fn fit_tables(metrics: &[Metrics]) -> Option<(Table, Table)> {
    if metrics.len() < 3 {
        return None;
    }
    let mut sweep = Table::new(&["eps", "err_mid", "err_hopf_minus", "err_hopf_plus", "delta_minus", "delta_plus", "err_left_edge", "err_right_edge"]);
    for m in metrics {
        let mut row = vec![Cell::Num(m.eps)];
        row.extend(FITTED.iter().map(|n| Cell::Num(metric(m, n))));
        sweep.push(row);
    }
    let mut fits = Table::new(&["metric", "slope", "intercept", "sigma_slope", "sigma_intercept", "r", "n", "reported"]);
    for name in FITTED {
        let (z, y): (Vec<f64>, Vec<f64>) = metrics
            .iter()
            .map(|m| (m.eps.log10(), metric(m, name).log10()))
            .filter(|(_, y)| y.is_finite())
            .unzip();
        if let Ok(f) = linreg(&z, &y) {
            let rep = if f.r.abs() >= 0.99 { "yes" } else { "no" };
            fits.push(vec![
                name.into(),
                f.slope.into(),
                f.intercept.into(),
                f.sigma_slope.into(),
                f.sigma_intercept.into(),
                f.r.into(),
                (f.n_points as f64).into(),
                rep.into(),
            ]);
        }
    }
    Some((sweep, fits))
}

/// Everything except the manifest and the plots.
pub fn run(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = load_profile(&cfg.profile)?;
    std::fs::create_dir_all(&cfg.out)?;
    let mode = if cfg.precision { Mode::Precision } else { Mode::Exploratory };
    let mut out = Outcome::default();
    let t_c = critical_time(&p);

    let mut zones: Vec<(f64, Option<ZoneSolution>)> = Vec::new();
    for &t in &cfg.times {
        if t <= t_c {
            zones.push((t, None));
            continue;
        }
        match solve_zone(&p, t, cfg.nx_whitham, None, mode) {
            Ok(z) => {
                let tt = time_tag(t);
                write(&cfg.out, Path::new(&format!("zone_{tt}.dat")), &zone_table(&z).render(), &mut out.artifacts)?;
                write(&cfg.out, Path::new(&format!("envelope_{tt}.dat")), &envelope_table(&z).render(), &mut out.artifacts)?;
                if !z.failures.is_empty() {
                    out.failures.push(format!("zone {tt}: {} points above the residual threshold", z.failures.len()));
                }
                zones.push((t, Some(z)));
            }
            Err(e) => {
                out.failures.push(format!("zone {}: {e}", time_tag(t)));
                zones.push((t, None));
            }
        }
    }
    let mut composites = Vec::new();
    for (t, z) in &zones {
        let c = match z {
            Some(z) => match Composite::new(&p, z, mode) {
                Ok(c) => Some(c),
                Err(e) => {
                    out.failures.push(format!("composite {}: {e}", time_tag(*t)));
                    None
                }
            },
            None => None,
        };
        composites.push((*t, c));
    }

    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).max(1);
    let mut results: Vec<EpsResult> = Vec::new();
    for chunk in cfg.epsilons.chunks(workers) {
        std::thread::scope(|s| {
            let (p, composites, zones) = (&p, &composites, &zones);
            let handles: Vec<_> = chunk.iter().map(|&eps| s.spawn(move || run_eps(cfg, p, eps, composites, zones, mode))).collect();
            for h in handles {
                results.push(h.join().expect("worker panicked"));
            }
        });
    }

    for r in &results {
        out.artifacts.extend(r.artifacts.iter().cloned());
        out.failures.extend(r.failures.iter().cloned());
        out.params.extend(r.params.iter().cloned());
    }
    for &t in &cfg.times {
        let ms: Vec<Metrics> = results.iter().flat_map(|r| r.metrics.iter().copied()).filter(|m| m.t == t).collect();
        if let Some((sweep, fits)) = fit_tables(&ms) {
            let tt = time_tag(t);
            write(&cfg.out, Path::new(&format!("sweep_{tt}.dat")), &sweep.render(), &mut out.artifacts)?;
            write(&cfg.out, Path::new(&format!("fits_{tt}.dat")), &fits.render(), &mut out.artifacts)?;
        }
    }
    Ok(out)
}
