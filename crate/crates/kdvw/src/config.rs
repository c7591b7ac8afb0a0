//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comments start with '#'
//! profile = sech2          # or a path to a two-column (x, u0) file
//! epsilon = 0.1, 0.0316227766016838
//! times = 0.4
//! nx-whitham = 300
//! precision = true
//! ```
//!
//! Keys mirror the command-line flags; `-` and `_` are interchangeable.
//! Flags given on the command line win over the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use kdv_whitham::kdv::{table1_params, RunParams};

use crate::CliError;

/// ε at or below this needs `long`.
pub const LONG_EPS: f64 = 0.003_162_277_660_168_379_5;

const KEYS: [&str; 11] = ["profile", "epsilon", "tmax", "times", "nmodes", "l", "dt", "nx_whitham", "precision", "long", "out"];

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    Sech2,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub profile: ProfileSpec,
    pub epsilons: Vec<f64>,
    pub times: Vec<f64>,
    pub tmax: f64,
    pub nmodes: Option<usize>,
    pub l: Option<f64>,
    pub dt: Option<f64>,
    pub nx_whitham: usize,
    pub precision: bool,
    pub long: bool,
    pub out: PathBuf,
}

/// Raw key/value pairs, keys normalized.
pub type RawConfig = BTreeMap<String, String>;

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

pub fn parse_text(text: &str) -> Result<RawConfig, CliError> {
    let mut out = RawConfig::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
        let k = normalize(k);
        if !KEYS.contains(&k.as_str()) {
            return Err(CliError::Config(format!("line {}: unknown key '{}'", i + 1, k)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

pub fn read_file(path: &Path) -> Result<RawConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_text(&text)
}

fn list(key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    v.split(',').map(|s| number(key, s)).collect()
}

fn number(key: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = v.trim().parse().map_err(|_| CliError::Config(format!("{key}: '{}' is not a number", v.trim())))?;
    if !x.is_finite() {
        return Err(CliError::Config(format!("{key}: must be finite")));
    }
    Ok(x)
}

fn flag(key: &str, v: &str) -> Result<bool, CliError> {
    match v.trim() {
        "true" | "yes" | "1" | "" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        o => Err(CliError::Config(format!("{key}: '{o}' is not a boolean"))),
    }
}

impl ExperimentConfig {
    /// Build from raw pairs and check every invariant.
    pub fn from_raw(raw: &RawConfig) -> Result<Self, CliError> {
        let get = |k: &str| raw.get(k).map(String::as_str);
        let profile = match get("profile") {
            None | Some("sech2") => ProfileSpec::Sech2,
            Some(p) => ProfileSpec::File(PathBuf::from(p)),
        };
        let epsilons = match get("epsilon") {
            Some(v) => list("epsilon", v)?,
            None => vec![0.1],
        };
        let mut times = match get("times") {
            Some(v) => list("times", v)?,
            None => vec![0.4],
        };
        times.sort_by(f64::total_cmp);
        times.dedup();
        let tmax = match get("tmax") {
            Some(v) => number("tmax", v)?,
            None => times.last().copied().unwrap_or(0.4),
        };
        let nmodes = match get("nmodes") {
            Some(v) => Some(v.trim().parse::<usize>().map_err(|_| CliError::Config(format!("nmodes: '{v}' is not a count")))?),
            None => None,
        };
        let l = get("l").map(|v| number("L", v)).transpose()?;
        let dt = get("dt").map(|v| number("dt", v)).transpose()?;
        let nx_whitham = match get("nx_whitham") {
            Some(v) => v.trim().parse::<usize>().map_err(|_| CliError::Config(format!("nx-whitham: '{v}' is not a count")))?,
            None => 300,
        };
        let cfg = ExperimentConfig {
            profile,
            epsilons,
            times,
            tmax,
            nmodes,
            l,
            dt,
            nx_whitham,
            precision: get("precision").map(|v| flag("precision", v)).transpose()?.unwrap_or(false),
            long: get("long").map(|v| flag("long", v)).transpose()?.unwrap_or(false),
            out: PathBuf::from(get("out").unwrap_or("out")),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.epsilons.is_empty() {
            return bad("no epsilon given".into());
        }
        if let Some(e) = self.epsilons.iter().find(|&&e| !(e > 0.0 && e <= 1.0)) {
            return bad(format!("epsilon {e} outside (0, 1]"));
        }
        if !self.long {
            if let Some(e) = self.epsilons.iter().find(|&&e| e <= LONG_EPS * (1.0 + 1e-9)) {
                return bad(format!("epsilon {e} is an hour-scale run; pass --long"));
            }
        }
        if self.times.is_empty() || self.times.iter().any(|&t| !(t > 0.0)) {
            return bad("times must be positive".into());
        }
        if self.times.iter().any(|&t| t > self.tmax) {
            return bad(format!("snapshot time beyond tmax = {}", self.tmax));
        }
        if self.nx_whitham < 7 {
            return bad(format!("nx-whitham {} too small", self.nx_whitham));
        }
        if matches!(self.l, Some(l) if !(l > 0.0)) {
            return bad("L must be positive".into());
        }
        // Some tabulated rows sit above dt = 1/N and are known to be stable;
        // the bound applies once N or dt is chosen by hand.
        let custom = self.nmodes.is_some() || self.dt.is_some();
        for &e in &self.epsilons {
            let p = self.params(e);
            if p.n < 16 {
                return bad(format!("nmodes {} too small", p.n));
            }
            if !(p.dt > 0.0) || (custom && p.dt > 1.0 / p.n as f64) {
                return bad(format!("dt = {} must lie in (0, 1/N] with N = {}", p.dt, p.n));
            }
        }
        Ok(())
    }

    /// Solver parameters for one ε: the tabulated row, then overrides.
    pub fn params(&self, eps: f64) -> RunParams {
        let mut p = table1_params(eps);
        if let Some(n) = self.nmodes {
            p.n = n;
        }
        if let Some(l) = self.l {
            p.l = l;
        }
        if let Some(dt) = self.dt {
            p.dt = dt;
        }
        p
    }

    /// Normalized pairs, for the manifest.
    pub fn echo(&self) -> Vec<(String, String)> {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",");
        let mut out: Vec<(String, String)> = vec![
            ("profile".into(), match &self.profile {
                ProfileSpec::Sech2 => "sech2".into(),
                ProfileSpec::File(p) => p.display().to_string(),
            }),
            ("epsilon".into(), join(&self.epsilons)),
            ("times".into(), join(&self.times)),
            ("tmax".into(), format!("{:e}", self.tmax)),
            ("nx_whitham".into(), self.nx_whitham.to_string()),
            ("precision".into(), self.precision.to_string()),
            ("long".into(), self.long.to_string()),
        ];
        if let Some(n) = self.nmodes {
            out.push(("nmodes".into(), n.to_string()));
        }
        if let Some(l) = self.l {
            out.push(("l".into(), format!("{l:e}")));
        }
        if let Some(dt) = self.dt {
            out.push(("dt".into(), format!("{dt:e}")));
        }
        out
    }
}
