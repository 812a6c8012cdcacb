//! The `nkdet` command line tool.
//!
//! ```text
//! nkdet analyze <family> --<param> <value> ...
//! nkdet sweep <family> --axis <name>=<start>:<stop>:<step> [--axis ...] --<param> <value> ... [--output map.csv]
//! nkdet verify [--families a,b,...]
//! ```
//!
//! Settings come from built-in defaults, then `--config <file>`, then flags.
//!
//! Exit codes: 0 determinate (analyze) or success; 1 input or usage error;
//! 2 indeterminate or no stable solution (analyze), disagreements found
//! (verify); 3 boundary or hypothesis not met (analyze).

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nkdet_core::determinacy::Outcome;
use nkdet_core::family::{analyze_point, canonical_param, Family, ModelPoint, ParamSet};
use nkdet_core::sweep::{run_sweep, write_csv, Axis, SweepSpec};
use nkdet_core::verify::{verify, Suite};

use config::{Overrides, ReportConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_NOT_DETERMINATE: u8 = 2;
pub const EXIT_UNDECIDED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "nkdet", version, about = "Determinacy analysis for small New Keynesian models")]
pub struct Cli {
    #[command(flatten)]
    pub settings: Settings,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Settings {
    /// Entries of Fourier sequences with |v| <= zero-tol count as zero.
    #[arg(long, global = true)]
    pub zero_tol: Option<f64>,
    /// Roots this close to the unit circle count as on it.
    #[arg(long, global = true)]
    pub boundary_tol: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Evaluate sign decisions in exact rational arithmetic.
    #[arg(long, global = true)]
    pub exact: bool,
    /// `key = value` file with defaults for the settings above.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

/// Every model parameter any family uses; each family accepts its own subset.
#[derive(Debug, Args, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub phi_x: Option<f64>,
    #[arg(long)]
    pub phi_pi: Option<f64>,
    #[arg(long)]
    pub phi_r: Option<f64>,
    #[arg(long)]
    pub phi_y: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub rho_r: Option<f64>,
    #[arg(long)]
    pub varphi: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    /// Matrix entries for gabaix-matrix, row-major.
    #[arg(long, value_name = "M11,...,M33", value_delimiter = ',', allow_negative_numbers = true)]
    pub matrix: Option<Vec<f64>>,
}

impl ParamArgs {
    pub fn to_params(&self) -> Result<ParamSet, String> {
        let named = [
            ("beta", self.beta),
            ("sigma", self.sigma),
            ("eta", self.eta),
            ("k", self.k),
            ("phi_x", self.phi_x),
            ("phi_pi", self.phi_pi),
            ("phi_r", self.phi_r),
            ("phi_y", self.phi_y),
            ("gamma", self.gamma),
            ("rho_r", self.rho_r),
            ("varphi", self.varphi),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
        ];
        let mut out: ParamSet = named
            .into_iter()
            .filter_map(|(n, v)| v.map(|v| (n.to_string(), v)))
            .collect();
        if let Some(m) = &self.matrix {
            if m.len() != 9 {
                return Err(format!("--matrix needs 9 comma-separated entries, got {}", m.len()));
            }
            for (n, v) in Family::GabaixMatrix.param_names().iter().zip(m) {
                out.insert(n.to_string(), *v);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report on a single parameter point.
    Analyze {
        family: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Evaluate a 1-D or 2-D grid and write a CSV determinacy map.
    Sweep {
        family: String,
        /// `name=start:stop:step`; give once or twice, first axis varies slowest.
        #[arg(long = "axis", required = true, value_parser = parse_axis)]
        axes: Vec<Axis>,
        #[command(flatten)]
        params: ParamArgs,
        /// Write the CSV here instead of standard output.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Cross-check analytic classifiers and root bounds against the oracle
    /// on seeded random draws.
    Verify {
        /// Comma-separated families or property suites; all when omitted.
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
    },
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    let err = || format!("expected name=start:stop:step, got {s:?}");
    let (name, range) = s.split_once('=').ok_or_else(err)?;
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(err());
    }
    let num = |p: &str| p.trim().parse::<f64>().map_err(|_| err());
    Ok(Axis::new(
        &canonical_param(name),
        num(parts[0])?,
        num(parts[1])?,
        num(parts[2])?,
    ))
}

pub fn exit_code(outcome: Outcome) -> u8 {
    match outcome {
        Outcome::Determinate => EXIT_OK,
        Outcome::Indeterminate | Outcome::NoStableSolution => EXIT_NOT_DETERMINATE,
        Outcome::Boundary | Outcome::HypothesisNotMet => EXIT_UNDECIDED,
    }
}

fn resolve(settings: &Settings) -> Result<ReportConfig, String> {
    let mut cfg = ReportConfig::default();
    if let Some(path) = &settings.config {
        cfg = cfg.apply(&Overrides::load(path)?);
    }
    cfg = cfg.apply(&Overrides {
        zero_tol: settings.zero_tol,
        boundary_tol: settings.boundary_tol,
        seed: settings.seed,
        samples: settings.samples,
        exact: settings.exact.then_some(true),
    });
    cfg.validate()?;
    Ok(cfg)
}

fn family(name: &str) -> Result<Family, String> {
    name.parse::<Family>().map_err(|_| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family {name:?} (expected one of {})", names.join(", "))
    })
}

fn analyze_cmd(cfg: &ReportConfig, fam: &str, params: &ParamArgs, out: &mut dyn Write) -> Result<u8, String> {
    let fam = family(fam)?;
    let point = ModelPoint::from_params(fam, &params.to_params()?).map_err(|e| e.to_string())?;
    let report = analyze_point(&point, &cfg.tolerances()).map_err(|e| e.to_string())?;
    write!(out, "{}", report::render(&report)).map_err(|e| e.to_string())?;
    Ok(exit_code(report.outcome))
}

fn sweep_cmd(
    cfg: &ReportConfig,
    fam: &str,
    axes: &[Axis],
    params: &ParamArgs,
    output: Option<&PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, String> {
    let spec = SweepSpec {
        family: family(fam)?,
        fixed: params.to_params()?,
        axes: axes.to_vec(),
    };
    let rows = run_sweep(&spec, &cfg.tolerances()).map_err(|e| e.to_string())?;
    match output {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            write_csv(&spec, &rows, std::io::BufWriter::new(file)).map_err(|e| e.to_string())?;
            let _ = writeln!(err, "wrote {} rows to {}", rows.len(), path.display());
        }
        None => write_csv(&spec, &rows, out).map_err(|e| e.to_string())?,
    }
    Ok(EXIT_OK)
}

fn verify_cmd(cfg: &ReportConfig, families: &[String], out: &mut dyn Write) -> Result<u8, String> {
    let suites = if families.is_empty() {
        Suite::all()
    } else {
        families
            .iter()
            .map(|f| {
                f.parse::<Suite>().map_err(|_| {
                    let names: Vec<&str> = Suite::all().iter().map(|s| s.name()).collect();
                    format!("--families: unknown suite {f:?} (expected one of {})", names.join(", "))
                })
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = verify(&suites, cfg.samples, cfg.seed, &cfg.tolerances()).map_err(|e| e.to_string())?;
    writeln!(out, "{report}").map_err(|e| e.to_string())?;
    Ok(if report.disagreements() == 0 {
        EXIT_OK
    } else {
        EXIT_NOT_DETERMINATE
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = resolve(&cli.settings).and_then(|cfg| match &cli.command {
        Command::Analyze { family, params } => analyze_cmd(&cfg, family, params, out),
        Command::Sweep {
            family,
            axes,
            params,
            output,
        } => sweep_cmd(&cfg, family, axes, params, output.as_ref(), out, err),
        Command::Verify { families } => verify_cmd(&cfg, families, out),
    });
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("nkdet").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn axis_parsing() {
        let a = parse_axis("phi-pi=0:3:0.1").unwrap();
        assert_eq!(a.name, "phi_pi");
        assert_eq!((a.start, a.stop, a.step), (0.0, 3.0, 0.1));
        assert!(parse_axis("phi_pi=0:3").is_err());
        assert!(parse_axis("phi_pi").is_err());
        assert!(parse_axis("phi_pi=a:3:1").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(Outcome::Determinate), 0);
        assert_eq!(exit_code(Outcome::NoStableSolution), 2);
        assert_eq!(exit_code(Outcome::HypothesisNotMet), 3);
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_str(&["analyze", "gali", "--beta", "x"]);
        assert_eq!(code, 1);
        assert!(err.contains("--beta"));
        let (code, _, err) = run_str(&["analyze", "nope", "--beta", "0.5"]);
        assert_eq!(code, 1);
        assert!(err.contains("unknown family"));
        let (code, _, err) = run_str(&["verify", "--samples", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("--samples"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("analyze"));
    }

    #[test]
    fn parameter_of_another_family_is_rejected() {
        let (code, _, err) = run_str(&[
            "analyze", "gali", "--beta", "0.99", "--sigma", "0.5", "--eta", "1.2", "--k", "0.3",
            "--phi-x", "1",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("phi_x"));
    }
}
