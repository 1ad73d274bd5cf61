//! Command line front end.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error,
//! 3 numeric degeneracy, 4 I/O failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::catalog;
use crate::error::{GeomError, Result};
use crate::report::{self, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "pseudogauss",
    version,
    about = "Verify Gauss maps of submanifolds of pseudo-spheres"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the pipeline on a catalog surface or a chart file.
    Verify {
        /// Catalog name or path to a chart file.
        surface: String,
        /// Dimension for families built in several sizes (horosphere).
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        tuning: Tuning,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every catalog entry.
    Suite {
        #[command(flatten)]
        tuning: Tuning,
        /// Directory for per-entry reports and suite.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect the built-in surfaces.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show {
        name: String,
        /// Print only the chart in the text format.
        #[arg(long)]
        chart: bool,
    },
}

#[derive(Args, Debug)]
struct Tuning {
    /// Points per axis, e.g. 9x9 or 5x5x5.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    /// Fraction of each parameter interval dropped at both ends.
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    tol_analytic: Option<f64>,
    #[arg(long)]
    tol_fd: Option<f64>,
    #[arg(long)]
    tol_biharmonic: Option<f64>,
    /// Finite-difference step of the numeric routes.
    #[arg(long)]
    fd_step: Option<f64>,
    /// Seed for held-out points.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
struct GridSpec(Vec<usize>);

fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    s.split(['x', 'X', '×'])
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad grid '{s}': {e}")))
        .collect::<std::result::Result<_, _>>()
        .map(GridSpec)
}

impl Tuning {
    fn apply(&self, mut cfg: RunConfig) -> RunConfig {
        if let Some(g) = &self.grid {
            cfg.grid = Some(g.0.clone());
        }
        if let Some(v) = self.margin {
            cfg.margin = v;
        }
        if let Some(v) = self.tol_analytic {
            cfg.tol_analytic = v;
        }
        if let Some(v) = self.tol_fd {
            cfg.tol_fd = v;
        }
        if let Some(v) = self.tol_biharmonic {
            cfg.tol_biharmonic = v;
        }
        if let Some(v) = self.fd_step {
            cfg.fd_step = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let (label, result) = match &cli.command {
        Command::Verify { surface, .. } => (surface.clone(), dispatch(&cli.command, out, err)),
        _ => (String::new(), dispatch(&cli.command, out, err)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", report::error_record(&label, &e));
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> GeomError {
    GeomError::Io(e.to_string())
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Verify {
            surface,
            n,
            tuning,
            out: path,
        } => {
            let mut cfg = tuning.apply(RunConfig::for_surface(surface));
            cfg.n = *n;
            let r = report::run_verify(&cfg)?;
            let json = r.to_json();
            match path {
                Some(p) => {
                    std::fs::write(p, &json).map_err(io)?;
                    writeln!(
                        out,
                        "{}: {} verdict={} lambda={} checks={}/{}",
                        r.surface.name,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.fit.verdict.as_str(),
                        r.fit.lambda_p.map_or("-".into(), |l| format!("{l:.10}")),
                        r.checks.iter().filter(|c| c.passed).count(),
                        r.checks.len()
                    )
                    .map_err(io)?;
                }
                None => out.write_all(json.as_bytes()).map_err(io)?,
            }
            for c in r.failed_checks() {
                writeln!(
                    err,
                    "failed: {} measured {} {} {}",
                    c.name, c.measured, c.relation, c.threshold
                )
                .map_err(io)?;
            }
            Ok(if r.passed { 0 } else { 1 })
        }
        Command::Suite { tuning, out: dir } => {
            let cfg = tuning.apply(RunConfig::default());
            let s = report::run_suite(&cfg)?;
            match dir {
                Some(d) => {
                    std::fs::create_dir_all(d).map_err(io)?;
                    for r in &s.reports {
                        std::fs::write(d.join(format!("{}.json", r.surface.name)), r.to_json()).map_err(io)?;
                    }
                    std::fs::write(d.join("suite.json"), s.to_json()).map_err(io)?;
                    for e in &s.entries {
                        writeln!(
                            out,
                            "{:<26} {} {}",
                            e.name,
                            if e.passed { "PASS" } else { "FAIL" },
                            e.verdict.map_or("error", |v| v.as_str())
                        )
                        .map_err(io)?;
                    }
                    writeln!(out, "one-type sweep mismatches: {}", s.one_type_sweep.mismatches.len()).map_err(io)?;
                }
                None => out.write_all(s.to_json().as_bytes()).map_err(io)?,
            }
            for e in s.entries.iter().filter(|e| !e.passed) {
                writeln!(err, "failed: {} {:?}", e.name, e.failed_checks).map_err(io)?;
            }
            Ok(s.worst_exit)
        }
        Command::Catalog { action } => {
            match action {
                CatalogAction::List => {
                    for e in catalog::entries() {
                        let sig = e.immersion.signature();
                        writeln!(
                            out,
                            "{:<26} n={} t={} E^{}_{}  {}",
                            e.name,
                            e.n(),
                            e.immersion.index(),
                            sig.dim(),
                            sig.index(),
                            e.description
                        )
                        .map_err(io)?;
                    }
                }
                CatalogAction::Show { name, chart } => {
                    let e = catalog::get(name)?;
                    if *chart {
                        let cf = e
                            .immersion
                            .to_chart_file()
                            .ok_or_else(|| GeomError::InvalidParameter("chart is not expressible as text".into()))?;
                        write!(out, "{}", cf.to_text()).map_err(io)?;
                    } else {
                        writeln!(out, "{}", serde_json::to_string_pretty(&e.describe()).expect("json")).map_err(io)?;
                    }
                }
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let mut full = vec!["pseudogauss"];
        full.extend_from_slice(args);
        let code = run(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("9x9").unwrap().0, vec![9, 9]);
        assert_eq!(parse_grid("5×5×5").unwrap().0, vec![5, 5, 5]);
        assert!(parse_grid("9by9").is_err());
    }

    #[test]
    fn list_names_every_entry() {
        let (code, out, _) = call(&["catalog", "list"]);
        assert_eq!(code, 0);
        for name in catalog::names() {
            assert!(out.contains(&name));
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["verify", "nope"]).0, 2);
        assert_eq!(call(&["verify", "clifford_torus", "--grid", "2x2"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["catalog", "show", "nope"]).0, 2);
    }
}
