//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the process exit code: 0 on success, 1 on usage or domain errors, 2 when a
//! strict check or a residual tolerance fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decomp::{component_value, ComponentSpec, Part, Scheme};
use crate::diagnostics::{full_report, report, to_json, to_markdown, CheckConfig};
use crate::error::{Error, Result};
use crate::measures::{index3, normalize, MeasureId, SharePoint3, SHARE_SUM_TOL};
use crate::render::{component_figure, panel_file_name, render_figure, DEFAULT_FIGURE_RESOLUTION};
use crate::simplex::{GridSpec, ScalarField, DEFAULT_MARGIN};
use crate::zerosets::{
    cv_dcp_zero_curve, mld_dci_zero_curves, theil_dcp_zero_curve, theil_dcp_zero_solve, verify_zero_curve, write_curves_csv, ZeroCurve,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

pub const MIN_RESOLUTION: usize = 16;
pub const MAX_RESOLUTION: usize = 4096;

pub const THREADS_ENV: &str = "INEQ_SIMPLEX_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ineq-simplex", version, about = "Decomposability diagnostics for inequality indices on the three-person simplex")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index, within, between and decomposition residual at one point.
    Eval(EvalArgs),
    /// Sample a component on the grid and write CSV.
    Field(FieldArgs),
    /// Render one panel, or all sixteen, as SVG.
    Figure(FigureArgs),
    /// Check properties 1A-2D against the expected table.
    Check(CheckArgs),
    /// Sample and verify an analytic zero set of a between component.
    Zeroset(ZerosetArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Md,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    CvDcp,
    TheilDcp,
    MldDci,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub measure: MeasureId,
    #[arg(long, default_value = "dcp")]
    pub scheme: Scheme,
    /// Income shares `z1,z2,z3`.
    #[arg(long, value_delimiter = ',', conflicts_with = "y", required_unless_present = "y", allow_negative_numbers = true)]
    pub z: Option<Vec<f64>>,
    /// Raw incomes `y1,y2,y3`, normalized to shares.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub y: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 200)]
    pub resolution: usize,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub margin: f64,
}

impl GridArgs {
    fn spec(&self) -> Result<GridSpec> {
        check_resolution(self.resolution)?;
        GridSpec::new(self.resolution, self.margin)
    }
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub measure: MeasureId,
    #[arg(long, default_value = "dcp")]
    pub scheme: Scheme,
    #[arg(long)]
    pub component: Part,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, required_unless_present = "all")]
    pub measure: Option<MeasureId>,
    #[arg(long, default_value = "dcp")]
    pub scheme: Scheme,
    #[arg(long, required_unless_present = "all")]
    pub component: Option<Part>,
    /// Render every classical panel into `--out-dir`.
    #[arg(long, conflicts_with_all = ["measure", "component"])]
    pub all: bool,
    #[arg(long, default_value_t = DEFAULT_FIGURE_RESOLUTION)]
    pub resolution: usize,
    /// Output file for a single panel.
    #[arg(long, required_unless_present = "all")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, required_unless_present = "all")]
    pub measure: Option<MeasureId>,
    #[arg(long, required_unless_present = "all")]
    pub scheme: Option<Scheme>,
    #[arg(long, conflicts_with_all = ["measure", "scheme"])]
    pub all: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Pass and zero tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value = "md")]
    pub format: OutputFormat,
    /// Exit with status 2 when a verdict disagrees with the expected table.
    #[arg(long)]
    pub strict: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZerosetArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Solve the Theil root at this height only.
    #[arg(long)]
    pub z3: Option<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// CSV file for the sampled curves.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn check_resolution(r: usize) -> Result<()> {
    if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&r) {
        return Err(Error::InvalidArgument(format!("resolution {r} outside [{MIN_RESOLUTION}, {MAX_RESOLUTION}]")));
    }
    Ok(())
}

/// Shares from `--z` (renormalized when they already sum to one up to
/// rounding) or from raw incomes `--y`.
fn parse_point(z: Option<&[f64]>, y: Option<&[f64]>) -> Result<SharePoint3> {
    if let Some(v) = z.or(y).filter(|v| v.len() != 3) {
        return Err(Error::InvalidArgument(format!("expected 3 comma-separated values, got {}", v.len())));
    }
    let shares = match (z, y) {
        (Some(z), _) => {
            let sum: f64 = z.iter().sum();
            if (sum - 1.0).abs() > SHARE_SUM_TOL {
                return Err(Error::InvalidShares(format!("shares sum to {sum}; pass raw incomes with --y")));
            }
            normalize(z)?
        }
        (None, Some(y)) => normalize(y)?,
        (None, None) => return Err(Error::InvalidArgument("one of --z or --y is required".into())),
    };
    SharePoint3::new(shares[0], shares[1], shares[2])
}

#[derive(Debug, Serialize)]
pub struct EvalRecord {
    pub measure: String,
    pub scheme: String,
    pub z: [f64; 3],
    pub index: f64,
    pub within: f64,
    pub between: f64,
    /// `I(z) - w I(pair) - I(z̄)`: zero exactly when the scheme decomposes.
    pub residual: f64,
}

pub fn eval_record(m: MeasureId, scheme: &Scheme, z: &SharePoint3) -> Result<EvalRecord> {
    let index = index3(m, z)?;
    let within = component_value(&ComponentSpec::within(m, scheme.clone()), z)?;
    let between = component_value(&ComponentSpec::between(m, scheme.clone()), z)?;
    let residual = between - index3(m, &z.smoothed())?;
    Ok(EvalRecord { measure: m.key().into(), scheme: scheme.key().into(), z: z.as_array(), index, within, between, residual })
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let z = parse_point(a.z.as_deref(), a.y.as_deref())?;
    let r = eval_record(a.measure, &a.scheme, &z)?;
    match a.format {
        OutputFormat::Json => writeln!(out, "{}", json(&r)?)?,
        _ => {
            writeln!(out, "{} / {} at {}", a.measure, a.scheme, z)?;
            writeln!(out, "index    {:.12}", r.index)?;
            writeln!(out, "within   {:.12}", r.within)?;
            writeln!(out, "between  {:.12}", r.between)?;
            writeln!(out, "residual {:.3e}", r.residual)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_field(a: &FieldArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = ComponentSpec::new(a.measure, a.scheme.clone(), a.component);
    let field = ScalarField::sample(a.grid.spec()?, |z| component_value(&spec, z).ok());
    match &a.out {
        Some(path) => field.write_csv(std::io::BufWriter::new(std::fs::File::create(path)?))?,
        None => field.write_csv(out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_figure(a: &FigureArgs, out: &mut dyn Write) -> Result<i32> {
    check_resolution(a.resolution)?;
    if a.all {
        std::fs::create_dir_all(&a.out_dir)?;
        for spec in ComponentSpec::classical() {
            let path = a.out_dir.join(panel_file_name(&spec));
            render_figure(&component_figure(&spec, a.resolution)?, &path)?;
            writeln!(out, "{}", path.display())?;
        }
        return Ok(EXIT_OK);
    }
    let (Some(m), Some(part), Some(path)) = (a.measure, a.component, a.out.as_ref()) else {
        return Err(Error::InvalidArgument("--measure, --component and --out are required without --all".into()));
    };
    let spec = ComponentSpec::new(m, a.scheme.clone(), part);
    render_figure(&component_figure(&spec, a.resolution)?, path)?;
    writeln!(out, "{}", path.display())?;
    Ok(EXIT_OK)
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = CheckConfig { grid: a.grid.spec()?, pass_tol: a.tolerance, zero_tol: a.tolerance, ..CheckConfig::default() };
    cfg.validate()?;
    let reports = match (&a.measure, &a.scheme) {
        (Some(m), Some(s)) if !a.all => vec![report(*m, s, &cfg)?],
        _ => full_report(&MeasureId::ALL, &Scheme::CLASSICAL, &cfg)?,
    };
    let text = match a.format {
        OutputFormat::Json => to_json(&reports)?,
        OutputFormat::Md | OutputFormat::Text => to_markdown(&reports),
        other => return Err(Error::InvalidArgument(format!("check writes json or md, not {other:?}"))),
    };
    match &a.out {
        Some(path) => std::fs::write(path, &text)?,
        None => writeln!(out, "{}", text.trim_end())?,
    }
    let mismatched = reports.iter().any(|r| !r.mismatches().is_empty());
    Ok(if a.strict && mismatched { EXIT_CHECK_FAILED } else { EXIT_OK })
}

fn cmd_zeroset(a: &ZerosetArgs, out: &mut dyn Write) -> Result<i32> {
    let (spec, curves): (ComponentSpec, Vec<ZeroCurve>) = match a.family {
        Family::CvDcp => (ComponentSpec::between(MeasureId::Cv, Scheme::Population), cv_dcp_zero_curve(a.samples)?.into()),
        Family::TheilDcp => {
            let spec = ComponentSpec::between(MeasureId::Theil, Scheme::Population);
            if let Some(z3) = a.z3 {
                let (z1, z2) = theil_dcp_zero_solve(z3)?;
                let residual = component_value(&spec, &SharePoint3::new(z1, z2, z3)?)?.abs();
                writeln!(out, "z1 = {z1:.8}")?;
                writeln!(out, "z2 = {z2:.8}")?;
                writeln!(out, "z3 = {z3:.8}")?;
                writeln!(out, "residual = {residual:.3e}")?;
                return Ok(if residual > a.tolerance { EXIT_CHECK_FAILED } else { EXIT_OK });
            }
            (spec, theil_dcp_zero_curve(a.samples)?.into())
        }
        Family::MldDci => {
            let c = mld_dci_zero_curves(a.samples)?;
            writeln!(out, "z3_min = {:e}", c.z3_min)?;
            (ComponentSpec::between(MeasureId::Mld, Scheme::Income), c.branches.into())
        }
    };
    if a.z3.is_some() && a.family != Family::TheilDcp {
        return Err(Error::InvalidArgument("--z3 applies to the theil-dcp family only".into()));
    }
    let mut worst: f64 = 0.0;
    for c in &curves {
        let r = verify_zero_curve(&spec, c, f64::INFINITY)?;
        let (first, last) = (c.points[0], c.points[c.len() - 1]);
        writeln!(
            out,
            "{}: {} points, {} in [{:.6}, {:.6}], ends {} .. {}, max residual {:.3e}",
            c.label,
            c.len(),
            c.parameter,
            c.range.0,
            c.range.1,
            first,
            last,
            r
        )?;
        worst = worst.max(r);
    }
    writeln!(out, "max residual = {worst:.3e}")?;
    if let Some(path) = &a.out {
        write_curves_csv(&curves, std::io::BufWriter::new(std::fs::File::create(path)?))?;
    }
    Ok(if worst > a.tolerance { EXIT_CHECK_FAILED } else { EXIT_OK })
}

/// Sizes the global thread pool from `INEQ_SIMPLEX_THREADS` when set.
fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV}={raw} is not a thread count")))?;
    // The pool can only be set once per process; later calls keep the first.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    configure_threads()?;
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Field(a) => cmd_field(a, out),
        Command::Figure(a) => cmd_figure(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Zeroset(a) => cmd_zeroset(a, out),
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_ERROR
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["ineq-simplex"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_reports_zero_residual_for_mld() {
        let (code, out, _) = call(&["eval", "--measure", "mld", "--scheme", "dcp", "--z", "0.2,0.3,0.5", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["residual"].as_f64().unwrap().abs() < 1e-10);
    }

    #[test]
    fn eval_accepts_raw_incomes() {
        let (code, out, _) = call(&["eval", "--measure", "theil", "--scheme", "dci", "--y", "3,5,12", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["z"][2].as_f64().unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["eval", "--measure", "atkinson", "--z", "0.2,0.3,0.5"]).0, 1);
        assert_eq!(call(&["eval", "--measure", "mld", "--z", "0.2,0.3,0.6"]).0, 1);
        assert_eq!(call(&["eval", "--measure", "mld", "--z", "0.5,0,0.5"]).0, 1);
        assert_eq!(call(&["check", "--all", "--resolution", "8"]).0, 1);
        assert_eq!(call(&["bogus"]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("zeroset"));
    }

    #[test]
    fn theil_root_to_eight_places() {
        let (code, out, _) = call(&["zeroset", "--family", "theil-dcp", "--z3", "0.5"]);
        assert_eq!(code, 0);
        assert!(out.contains("z1 = 0.05340609"), "{out}");
    }
}
