//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{self, ExperimentConfig, RawConfig};
use crate::{exit, manifest, pipeline, plot, CliError};

#[derive(Parser, Debug)]
#[command(name = "kdvw", version, about = "Small-dispersion KdV against its Whitham asymptotics")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve, compare and write every artifact.
    Run(RunArgs),
    /// Redraw the plots of an existing output directory.
    Plot {
        #[arg(long)]
        from: PathBuf,
    },
}

#[derive(Args, Debug, Default)]
pub struct RunArgs {
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated list.
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub tmax: Option<String>,
    /// Comma-separated snapshot times.
    #[arg(long)]
    pub times: Option<String>,
    #[arg(long)]
    pub nmodes: Option<String>,
    /// Half-period over π of the domain.
    #[arg(long = "L")]
    pub l: Option<String>,
    #[arg(long)]
    pub dt: Option<String>,
    #[arg(long)]
    pub nx_whitham: Option<String>,
    #[arg(long)]
    pub precision: bool,
    /// Allow ε ≤ 10^-2.5.
    #[arg(long)]
    pub long: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    fn raw(&self) -> Result<RawConfig, CliError> {
        let mut raw = match &self.config {
            Some(p) => config::read_file(p)?,
            None => RawConfig::new(),
        };
        let flags = [
            ("epsilon", &self.epsilon),
            ("tmax", &self.tmax),
            ("times", &self.times),
            ("nmodes", &self.nmodes),
            ("l", &self.l),
            ("dt", &self.dt),
            ("nx_whitham", &self.nx_whitham),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                raw.insert(k.into(), v.clone());
            }
        }
        if self.precision {
            raw.insert("precision".into(), "true".into());
        }
        if self.long {
            raw.insert("long".into(), "true".into());
        }
        if let Some(o) = &self.out {
            raw.insert("out".into(), o.display().to_string());
        }
        Ok(raw)
    }
}

fn code(e: &CliError) -> i32 {
    match e {
        CliError::Config(_) => exit::INVALID,
        _ => exit::PARTIAL,
    }
}

pub fn run(args: &RunArgs) -> i32 {
    let cfg = match args.raw().and_then(|r| ExperimentConfig::from_raw(&r)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("kdvw: {e}");
            return code(&e);
        }
    };
    let mut outcome = match pipeline::run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("kdvw: {e}");
            return code(&e);
        }
    };
    match plot::plot_dir(&cfg.out) {
        Ok(p) => outcome.artifacts.extend(p),
        Err(e) => outcome.failures.push(format!("plots: {e}")),
    }
    outcome.artifacts.sort();
    if let Err(e) = manifest::write(&cfg.out, &cfg.echo(), &outcome.params, &outcome.failures, &outcome.artifacts) {
        eprintln!("kdvw: manifest: {e}");
        return exit::PARTIAL;
    }
    for f in &outcome.failures {
        eprintln!("kdvw: {f}");
    }
    if outcome.failures.is_empty() {
        exit::OK
    } else {
        exit::PARTIAL
    }
}

pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INVALID } else { exit::OK };
        }
    };
    match cli.cmd {
        Command::Run(a) => run(&a),
        Command::Plot { from } => match plot::plot_dir(&from) {
            Ok(p) => {
                for f in p {
                    println!("{}", from.join(f).display());
                }
                exit::OK
            }
            Err(e) => {
                eprintln!("kdvw: {e}");
                code(&e)
            }
        },
    }
}
