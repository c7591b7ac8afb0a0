//! SVG plots redrawn from the tables in an output directory.
//!
//! Per ε and time: the KdV solution over the asymptotic one, the
//! difference, and the KdV solution inside the oscillation envelope. Per
//! time with a sweep: one log-log plot per fitted metric.

use std::path::{Path, PathBuf};

use plotters::prelude::*;

use crate::table::{parse_record, record_value, Cell, Table};
use crate::CliError;

const SIZE: (u32, u32) = (900, 560);

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
    color: RGBColor,
    dots: bool,
}

fn perr<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Plot(e.to_string())
}

fn range(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.filter(|x| x.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if !(lo <= hi) {
        return (0.0, 1.0);
    }
    let pad = if hi > lo { 0.04 * (hi - lo) } else { 0.5 * lo.abs().max(1.0) };
    (lo - pad, hi + pad)
}

fn draw(path: &Path, title: &str, xlabel: &str, ylabel: &str, series: &[Series], rules: &[f64]) -> Result<(), CliError> {
    let (x0, x1) = range(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)).chain(rules.iter().copied()));
    let (y0, y1) = range(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let root = SVGBackend::new(path, SIZE).into_drawing_area();
    root.fill(&WHITE).map_err(perr)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 18))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(70)
        .build_cartesian_2d(x0..x1, y0..y1)
        .map_err(perr)?;
    chart.configure_mesh().x_desc(xlabel).y_desc(ylabel).draw().map_err(perr)?;
    for &r in rules {
        chart.draw_series(LineSeries::new([(r, y0), (r, y1)], BLACK.mix(0.5))).map_err(perr)?;
    }
    let mut labelled = false;
    for s in series {
        let c = s.color;
        let ann = if s.dots {
            chart.draw_series(s.points.iter().map(|&p| Circle::new(p, 3, c.filled()))).map_err(perr)?
        } else {
            chart.draw_series(LineSeries::new(s.points.iter().copied(), c)).map_err(perr)?
        };
        if !s.label.is_empty() {
            ann.label(s.label.clone()).legend(move |(x, y)| PathElement::new([(x, y), (x + 16, y)], c));
            labelled = true;
        }
    }
    if labelled {
        chart.configure_series_labels().background_style(WHITE.mix(0.8)).border_style(BLACK).draw().map_err(perr)?;
    }
    root.present().map_err(perr)?;
    Ok(())
}

fn pairs(t: &Table, x: &str, y: &str) -> Result<Vec<(f64, f64)>, CliError> {
    Ok(t.column(x)?.into_iter().zip(t.column(y)?).collect())
}

fn files(dir: &Path, prefix: &str, suffix: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .into_iter()
        .flatten()
        .flatten()
        .map(|e| e.path())
        .filter(|p| {
            p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with(prefix) && n.ends_with(suffix))
        })
        .collect();
    v.sort();
    v
}

fn time_part<'a>(p: &'a Path, prefix: &str, suffix: &str) -> &'a str {
    let n = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
    n.strip_prefix(prefix).and_then(|n| n.strip_suffix(suffix)).unwrap_or(n)
}

/// Plots for one snapshot table; returns the written paths.
fn snapshot_plots(root: &Path, eps_dir: &Path, snap: &Path) -> Result<Vec<PathBuf>, CliError> {
    let tt = time_part(snap, "snapshot_", ".dat");
    let tag = eps_dir.file_name().and_then(|n| n.to_str()).unwrap_or("");
    let t = Table::read(snap)?;
    let rules = match std::fs::read_to_string(eps_dir.join(format!("metrics_{tt}.txt"))) {
        Ok(text) => {
            let r = parse_record(&text);
            [record_value(&r, "x_minus"), record_value(&r, "x_plus")].into_iter().flatten().collect()
        }
        Err(_) => Vec::new(),
    };
    let mut out = Vec::new();
    let p = eps_dir.join(format!("overlay_{tt}.svg"));
    draw(
        &p,
        &format!("KdV and asymptotic solution, {tag}, {tt}"),
        "x",
        "u",
        &[
            Series { label: "KdV".into(), points: pairs(&t, "x", "u_kdv")?, color: BLUE, dots: false },
            Series { label: "asymptotic".into(), points: pairs(&t, "x", "u_app")?, color: RED, dots: false },
        ],
        &rules,
    )?;
    out.push(p);
    let p = eps_dir.join(format!("diff_{tt}.svg"));
    draw(&p, &format!("u_kdv - u_app, {tag}, {tt}"), "x", "difference", &[Series { label: String::new(), points: pairs(&t, "x", "diff")?, color: BLUE, dots: false }], &rules)?;
    out.push(p);
    let env = root.join(format!("envelope_{tt}.dat"));
    if env.exists() {
        let e = Table::read(&env)?;
        let (a, b) = (rules.first().copied(), rules.get(1).copied());
        let inside: Vec<(f64, f64)> = pairs(&t, "x", "u_kdv")?
            .into_iter()
            .filter(|(x, _)| match (a, b) {
                (Some(a), Some(b)) => *x >= a - 0.1 * (b - a) && *x <= b + 0.1 * (b - a),
                _ => true,
            })
            .collect();
        let p = eps_dir.join(format!("envelope_{tt}.svg"));
        draw(
            &p,
            &format!("oscillation envelope, {tag}, {tt}"),
            "x",
            "u",
            &[
                Series { label: "KdV".into(), points: inside, color: BLUE, dots: false },
                Series { label: "lower".into(), points: pairs(&e, "x", "lower")?, color: RED, dots: false },
                Series { label: "upper".into(), points: pairs(&e, "x", "upper")?, color: GREEN, dots: false },
            ],
            &rules,
        )?;
        out.push(p);
    }
    Ok(out)
}

/// One log-log plot per fitted metric, with the fitted line.
fn scaling_plots(root: &Path, fits: &Path) -> Result<Vec<PathBuf>, CliError> {
    let tt = time_part(fits, "fits_", ".dat");
    let sweep = Table::read(&root.join(format!("sweep_{tt}.dat")))?;
    let f = Table::read(fits)?;
    let z: Vec<f64> = sweep.column("eps")?.iter().map(|e| e.log10()).collect();
    let mut out = Vec::new();
    for row in &f.rows {
        let (Cell::Text(name), Cell::Num(slope), Cell::Num(icpt), Cell::Num(sig), Cell::Num(r)) = (&row[0], &row[1], &row[2], &row[3], &row[5]) else {
            return Err(CliError::Table(format!("malformed fit row in {}", fits.display())));
        };
        let y: Vec<f64> = sweep.column(name)?.iter().map(|v| v.log10()).collect();
        let pts: Vec<(f64, f64)> = z.iter().copied().zip(y).filter(|p| p.1.is_finite()).collect();
        let (z0, z1) = range(z.iter().copied());
        let line = vec![(z0, slope * z0 + icpt), (z1, slope * z1 + icpt)];
        let p = root.join(format!("scaling_{tt}_{name}.svg"));
        draw(
            &p,
            &format!("{name}, {tt}: slope {slope:.3} ± {sig:.3}, r = {r:.4}"),
            "log10 eps",
            &format!("log10 {name}"),
            &[
                Series { label: "data".into(), points: pts, color: BLUE, dots: true },
                Series { label: format!("{slope:.3} z {icpt:+.3}"), points: line, color: RED, dots: false },
            ],
            &[],
        )?;
        out.push(p);
    }
    Ok(out)
}

/// Every plot the tables in `dir` support. Paths are relative to `dir`.
pub fn plot_dir(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Config(format!("{} is not a directory", dir.display())));
    }
    let mut written = Vec::new();
    let mut tables = 0;
    for eps_dir in files(dir, "eps", "") {
        if !eps_dir.is_dir() {
            continue;
        }
        for snap in files(&eps_dir, "snapshot_", ".dat") {
            tables += 1;
            written.extend(snapshot_plots(dir, &eps_dir, &snap)?);
        }
    }
    for fits in files(dir, "fits_", ".dat") {
        tables += 1;
        written.extend(scaling_plots(dir, &fits)?);
    }
    if tables == 0 {
        return Err(CliError::Table(format!("no snapshot or fit tables in {}", dir.display())));
    }
    Ok(written.into_iter().map(|p| p.strip_prefix(dir).map(Path::to_path_buf).unwrap_or(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_gives_empty_axes() {
        let dir = std::env::temp_dir().join(format!("kdvw-plot-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("empty.svg");
        draw(&p, "empty", "x", "y", &[Series { label: "d".into(), points: vec![], color: BLUE, dots: false }], &[]).unwrap();
        assert!(std::fs::read_to_string(&p).unwrap().starts_with("<svg"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
