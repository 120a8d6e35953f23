//! `projdist` command line: `report`, `curve` and `gen`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 validation failure (including
//! bad arguments), 3 unparsable matrix file.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::distance::{full_report, walters_bound, DistanceReport};
use crate::error::Error;
use crate::halmos::canonical_decomposition;
use crate::matrices::ComplexMatrix;
use crate::matrix_file::{FileError, MatrixFile};
use crate::oracle::{oracle_distance, random_instance, InstanceSpec, OracleOutcome};
use crate::settings::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "projdist", version, about = "Distance from a projection to the projections orthogonal to an involution")]
pub struct Cli {
    /// Relative tolerance for validating input projections and involutions.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a pair (e, u) and report b = ‖eue‖, the distance and the minimizer.
    Report {
        /// Matrix file holding the projection e.
        e: PathBuf,
        /// Matrix file holding the involution u.
        u: PathBuf,
        /// Append the brute-force oracle minimum and argmin.
        #[arg(long)]
        oracle: bool,
        /// Phase grid size for the oracle.
        #[arg(long, default_value_t = 64)]
        omega_grid: usize,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the closed-form distance against the ½b + 4b² estimate as CSV.
    Curve {
        #[arg(long, default_value_t = 0.0)]
        b_min: f64,
        #[arg(long, default_value_t = 1.0)]
        b_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random pair with a prescribed canonical form.
    Gen {
        /// Dimensions of M00,M01,M10,M11, comma separated.
        #[arg(long, default_value = "0,0,0,0")]
        dims: String,
        /// Distinct eigenvalues of H, comma separated, each optionally `value:multiplicity`.
        #[arg(long, default_value = "")]
        spectrum: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output prefix; writes `<out>_e.json` and `<out>_u.json`.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure of one command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: e.to_string(),
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        let code = match e {
            FileError::Io { .. } => EXIT_IO,
            FileError::Syntax { .. } | FileError::Shape(_) => EXIT_PARSE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_IO,
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

/// Runs a parsed command and returns what it prints.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let tol = match cli.tol {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            return Err(Error::OutOfRange {
                value: t,
                range: "(0, inf)",
            }
            .into())
        }
        Some(t) => Tolerances::with_validation(t),
        None => Tolerances::default(),
    };
    match &cli.command {
        Command::Report {
            e,
            u,
            oracle,
            omega_grid,
            json,
        } => cmd_report(e, u, *oracle, *omega_grid, *json, &tol),
        Command::Curve {
            b_min,
            b_max,
            steps,
            out,
        } => {
            let csv = cmd_curve(*b_min, *b_max, *steps)?;
            match out {
                Some(path) => {
                    std::fs::write(path, &csv).map_err(|e| io_error(path, e))?;
                    Ok(format!("wrote {} rows to {}\n", steps, path.display()))
                }
                None => Ok(csv),
            }
        }
        Command::Gen {
            dims,
            spectrum,
            seed,
            out,
        } => {
            let spec = parse_spec(dims, spectrum, *seed)?;
            cmd_gen(&spec, out, &tol)
        }
    }
}

/// Rounds to 9 significant digits.
pub fn round_sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float")
}

/// Fixed-point text with 9 significant digits.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".into();
    }
    let decimals = (8 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    Ok(MatrixFile::read(path)?.to_matrix()?)
}

pub fn cmd_report(
    e_path: &Path,
    u_path: &Path,
    with_oracle: bool,
    omega_grid: usize,
    as_json: bool,
    tol: &Tolerances,
) -> Result<String, CliError> {
    let e = read_matrix(e_path)?;
    let u = read_matrix(u_path)?;
    let report = full_report(&e, &u, tol)?;
    let oracle = if with_oracle && !report.case_one {
        let cf = canonical_decomposition(&e, &u, tol)?;
        Some(oracle_distance(&cf, omega_grid)?)
    } else {
        None
    };
    Ok(if as_json {
        let mut text = serde_json::to_string_pretty(&report_json(&report, with_oracle, oracle.as_ref()))
            .expect("json values serialize");
        text.push('\n');
        text
    } else {
        report_text(&report, with_oracle, oracle.as_ref())
    })
}

fn report_text(r: &DistanceReport, with_oracle: bool, oracle: Option<&OracleOutcome>) -> String {
    let mut s = String::new();
    let case = if r.case_one { 1 } else { 2 };
    let _ = writeln!(s, "case={case} b={} d={}", f6(r.b), f6(r.d));
    let d = r.dims;
    let _ = writeln!(s, "dims m00={} m01={} m10={} m11={} m={}", d.m00, d.m01, d.m10, d.m11, d.m);
    let spectrum: Vec<String> = r.spectrum.iter().map(|&(t, k)| format!("{}x{k}", f6(t))).collect();
    let _ = writeln!(
        s,
        "spectrum {}",
        if spectrum.is_empty() { "-".into() } else { spectrum.join(" ") }
    );
    match &r.q0 {
        Some(_) => {
            let _ = writeln!(s, "minimizer q0 = 0+0+0+0+(1/2)[[I,I],[I,I]](H)");
        }
        None => {
            let _ = writeln!(s, "minimizer none: every feasible q is at distance 1 (witness q=0)");
        }
    }
    let _ = writeln!(
        s,
        "residuals projection={} orthogonality={} distance={}",
        f6(r.residual_projection),
        f6(r.residual_orthogonality),
        f6(r.residual_distance)
    );
    if let Some(gap) = r.route_gap {
        let _ = writeln!(s, "cstar_route_gap={}", f6(gap));
    }
    if let Some(gap) = r.norm_identity_gap {
        let _ = writeln!(s, "norm_identity_gap={}", f6(gap));
    }
    let _ = writeln!(
        s,
        "walters_bound={}",
        walters_bound(r.b).map_or_else(|| "n/a".to_string(), f6)
    );
    if with_oracle {
        match oracle {
            Some(o) => {
                let chi: String = o.argmin.chi.iter().map(|&c| if c { '1' } else { '0' }).collect();
                let omega: Vec<String> = o.argmin.omega.iter().map(|&a| f6(a)).collect();
                let _ = writeln!(
                    s,
                    "oracle min={} direct={} chi={} omega=[{}] patterns={}",
                    f6(o.min_value),
                    f6(o.direct_value),
                    if chi.is_empty() { "-".into() } else { chi },
                    omega.join(","),
                    o.patterns
                );
            }
            None => {
                let _ = writeln!(s, "oracle n/a (case 1)");
            }
        }
    }
    s
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| json!([round_sig9(m[(r, c)].re), round_sig9(m[(r, c)].im)]))
                .collect()
        })
        .collect();
    Value::Array(rows)
}

fn report_json(r: &DistanceReport, with_oracle: bool, oracle: Option<&OracleOutcome>) -> Value {
    let opt = |x: Option<f64>| x.map(round_sig9);
    let mut v = json!({
        "case": if r.case_one { 1 } else { 2 },
        "b": round_sig9(r.b),
        "d": round_sig9(r.d),
        "dims": {
            "m00": r.dims.m00, "m01": r.dims.m01, "m10": r.dims.m10, "m11": r.dims.m11, "m": r.dims.m,
        },
        "spectrum": r.spectrum.iter().map(|&(t, k)| json!({"value": round_sig9(t), "multiplicity": k})).collect::<Vec<_>>(),
        "q0": r.q0.as_ref().map(matrix_json),
        "residuals": {
            "projection": round_sig9(r.residual_projection),
            "orthogonality": round_sig9(r.residual_orthogonality),
            "distance": round_sig9(r.residual_distance),
        },
        "cstar_route_gap": opt(r.route_gap),
        "norm_identity_gap": opt(r.norm_identity_gap),
        "walters_bound": opt(walters_bound(r.b)),
    });
    if with_oracle {
        v["oracle"] = match oracle {
            Some(o) => json!({
                "min": round_sig9(o.min_value),
                "direct": round_sig9(o.direct_value),
                "chi": o.argmin.chi,
                "omega": o.argmin.omega.iter().map(|&a| round_sig9(a)).collect::<Vec<_>>(),
                "patterns": o.patterns,
            }),
            None => Value::Null,
        };
    }
    v
}

/// CSV `b,formula,walters` at `steps` evenly spaced points of `[b_min, b_max]`.
/// The `walters` column is empty where the estimate does not apply.
pub fn cmd_curve(b_min: f64, b_max: f64, steps: usize) -> Result<String, Error> {
    if !(0.0 <= b_min && b_min < b_max && b_max <= 1.0) {
        return Err(Error::BadRange(format!("need 0 <= b_min < b_max <= 1, got [{b_min}, {b_max}]")));
    }
    if steps == 0 {
        return Err(Error::BadRange("steps must be positive".into()));
    }
    let mut csv = String::from("b,formula,walters\n");
    for i in 0..steps {
        let b = if steps == 1 {
            b_min
        } else {
            b_min + (b_max - b_min) * i as f64 / (steps - 1) as f64
        };
        let d = crate::distance::distance_formula(b, false)?;
        let w = walters_bound(b).map(format_sig9).unwrap_or_default();
        let _ = writeln!(csv, "{},{},{}", format_sig9(b), format_sig9(d), w);
    }
    Ok(csv)
}

fn parse_spec(dims: &str, spectrum: &str, seed: u64) -> Result<InstanceSpec, Error> {
    let bad = |m: String| Error::BadSpec(m);
    let parts: Vec<usize> = dims
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| bad(format!("bad dimension {p:?}"))))
        .collect::<Result<_, _>>()?;
    let dims: [usize; 4] = parts
        .try_into()
        .map_err(|_| bad("--dims needs four comma separated values".into()))?;
    let spectrum = spectrum
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (value, mult) = p.split_once(':').unwrap_or((p, "1"));
            let t: f64 = value.parse().map_err(|_| bad(format!("bad spectral value {value:?}")))?;
            let k: usize = mult.parse().map_err(|_| bad(format!("bad multiplicity {mult:?}")))?;
            Ok((t, k))
        })
        .collect::<Result<_, Error>>()?;
    Ok(InstanceSpec::new(dims, spectrum, seed))
}

/// Paths written by `gen` for an output prefix.
pub fn gen_paths(prefix: &Path) -> (PathBuf, PathBuf) {
    let base = prefix.as_os_str().to_string_lossy();
    (PathBuf::from(format!("{base}_e.json")), PathBuf::from(format!("{base}_u.json")))
}

pub fn cmd_gen(spec: &InstanceSpec, prefix: &Path, tol: &Tolerances) -> Result<String, CliError> {
    let inst = random_instance(spec, tol)?;
    let (e_path, u_path) = gen_paths(prefix);
    MatrixFile::from_matrix(&inst.e).write(&e_path)?;
    MatrixFile::from_matrix(&inst.u).write(&u_path)?;
    let d = spec.dims();
    Ok(format!(
        "wrote {} and {} (dim {}; m00={} m01={} m10={} m11={} m={})\n",
        e_path.display(),
        u_path.display(),
        d.total(),
        d.m00,
        d.m01,
        d.m10,
        d.m11,
        d.m
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(0.2), "0.200000000");
        assert_eq!(format_sig9(0.26), "0.260000000");
        assert_eq!(format_sig9(0.0), "0.00000000");
        assert_eq!(format_sig9(12.5), "12.5000000");
        assert_eq!(round_sig9(0.1f64.sqrt()), 0.316227766);
    }

    #[test]
    fn curve_shape_and_values() {
        let csv = cmd_curve(0.0, 0.45, 10).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "b,formula,walters");
        assert_eq!(lines.len(), 11);
        assert!(lines[1..].iter().all(|l| l.split(',').all(|f| !f.is_empty())));

        let csv = cmd_curve(0.0, 1.0, 11).unwrap();
        let row = |b: &str| csv.lines().find(|l| l.starts_with(b)).unwrap().to_string();
        assert_eq!(row("0.200000000"), "0.200000000,0.100508962,0.260000000");
        assert!(row("0.500000000").ends_with(','));
    }

    #[test]
    fn curve_rejects_bad_ranges() {
        assert!(matches!(cmd_curve(0.5, 0.4, 10), Err(Error::BadRange(_))));
        assert!(matches!(cmd_curve(0.0, 1.5, 10), Err(Error::BadRange(_))));
        assert!(matches!(cmd_curve(0.0, 0.5, 0), Err(Error::BadRange(_))));
    }

    #[test]
    fn spec_parsing() {
        let s = parse_spec("0,1,1,0", "0.3, 0.7:2", 7).unwrap();
        assert_eq!(s.spectrum, vec![(0.3, 1), (0.7, 2)]);
        assert_eq!(s.dims().total(), 8);
        assert!(parse_spec("0,1,1", "", 0).is_err());
        assert!(parse_spec("0,0,0,0", "x", 0).is_err());
        assert!(parse_spec("1,0,0,0", "", 0).unwrap().spectrum.is_empty());
    }
}
