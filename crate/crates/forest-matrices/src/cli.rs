//! Deterministic command-line surface over edge-list and stochastic-matrix
//! files. The thin `forestmat` binary dispatches straight into [`run_cli`];
//! everything here is ordinary library code so the whole surface is testable
//! in-process.
//!
//! Output is byte-deterministic: JSON with a fixed key order and every real
//! number rendered with 17 significant digits, or CSV with one matrix row
//! per line. Flags are validated before any file is read, and nothing is
//! emitted until a command has run to completion.
//!
//! Exit codes: 0 success, 1 input or usage errors, 2 numerical instability
//! or overflow, 3 verification failure.

use std::io::Write;
use std::path::PathBuf;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forest::ForestSpectrum;
use crate::geninv;
use crate::graph::WeightedDigraph;
use crate::linalg::{Matrix, DEFAULT_TOL};
use crate::markov::{self, StochasticMatrix};
use crate::oracle;
use crate::spectral;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupInverseMethod {
    Forest,
    Perturb,
    Projection,
}

impl GroupInverseMethod {
    fn name(self) -> &'static str {
        match self {
            GroupInverseMethod::Forest => "forest",
            GroupInverseMethod::Perturb => "perturb",
            GroupInverseMethod::Projection => "projection",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Spectrum,
    ForestMatrix {
        k: usize,
        normalized: bool,
    },
    AllForests {
        tau: f64,
    },
    Eigenprojection,
    Eigen,
    GroupInverse {
        method: GroupInverseMethod,
        alpha: f64,
    },
    MpInverse,
    DenseForest {
        alpha: f64,
    },
    Stationary,
    LongRun,
    Verify,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::ForestMatrix { .. } => "forest-matrix",
            Command::AllForests { .. } => "all-forests",
            Command::Eigenprojection => "eigenprojection",
            Command::Eigen => "eigen",
            Command::GroupInverse { .. } => "group-inverse",
            Command::MpInverse => "mp-inverse",
            Command::DenseForest { .. } => "dense-forest",
            Command::Stationary => "stationary",
            Command::LongRun => "long-run",
            Command::Verify => "verify",
        }
    }
}

/// A fully validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub format: OutputFormat,
    pub tol: f64,
}

pub const USAGE: &str = "usage: forestmat <subcommand> <input> [--format json|csv] [--tol T]

subcommands over an edge-list file (`n=<N>` header optional, lines `tail head weight`):
  spectrum                              n, d, and the forest weights sigma_0..sigma_{n-d}
  forest-matrix --k K [--normalized]    the k-arc forest matrix Q_K, or J_K = Q_K / sigma_K
  all-forests [--tau T]                 Q(tau), sigma(tau), J(tau)  (tau defaults to 1)
  eigenprojection                       the normalized maximum in-forest matrix J~
  eigen                                 characteristic coefficients, eigenvalues, eigenvectors
  group-inverse [--method M] [--alpha A]  L^# (M: forest|perturb|projection, default forest)
  mp-inverse                            the Moore-Penrose inverse L^+
  dense-forest --alpha A                (L + alpha*J~)^{-1}
  verify                                oracle suite against exhaustive enumeration (n <= 8)

subcommands over a stochastic-matrix CSV file (n lines of n comma-separated probabilities):
  stationary                            stationary distribution pi (unichain only)
  long-run                              long-run transition matrix P^inf

exit codes: 0 success, 1 input error, 2 numerical instability, 3 verification failure";

/// Parses an argument list (without the program name). `None` means help
/// was requested and `USAGE` should be printed with exit code 0.
pub fn parse_args(args: &[String]) -> Result<Option<RunConfig>> {
    let Some(subcommand) = args.first() else {
        return Err(Error::Usage(
            "missing subcommand; run `forestmat help` for usage".into(),
        ));
    };
    if subcommand == "help" || subcommand == "--help" || subcommand == "-h" {
        return Ok(None);
    }

    // collect flags generically, then validate per subcommand
    let mut input: Option<PathBuf> = None;
    let mut format = OutputFormat::Json;
    let mut tol = DEFAULT_TOL;
    let mut k: Option<usize> = None;
    let mut tau: Option<f64> = None;
    let mut alpha: Option<f64> = None;
    let mut method: Option<GroupInverseMethod> = None;
    let mut normalized = false;
    let mut seen: Vec<&'static str> = Vec::new();

    let mut iter = args[1..].iter();
    while let Some(arg) = iter.next() {
        let mut flag_value = |name: &'static str| -> Result<&String> {
            seen.push(name);
            iter.next()
                .ok_or_else(|| Error::Usage(format!("flag {name} requires a value")))
        };
        match arg.as_str() {
            "--format" => {
                format = match flag_value("--format")?.as_str() {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    other => {
                        return Err(Error::Usage(format!(
                            "unknown output format `{other}`; expected json or csv"
                        )))
                    }
                };
            }
            "--tol" => {
                let raw = flag_value("--tol")?;
                tol = raw
                    .parse()
                    .map_err(|_| Error::Usage(format!("malformed tolerance `{raw}`")))?;
                if !tol.is_finite() || tol <= 0.0 {
                    return Err(Error::Usage("tolerance must be positive".into()));
                }
            }
            "--k" => {
                let raw = flag_value("--k")?;
                k = Some(
                    raw.parse()
                        .map_err(|_| Error::Usage(format!("malformed --k value `{raw}`")))?,
                );
            }
            "--tau" => {
                let raw = flag_value("--tau")?;
                let value: f64 = raw
                    .parse()
                    .map_err(|_| Error::Usage(format!("malformed --tau value `{raw}`")))?;
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::Usage("--tau must be a nonnegative real".into()));
                }
                tau = Some(value);
            }
            "--alpha" => {
                let raw = flag_value("--alpha")?;
                let value: f64 = raw
                    .parse()
                    .map_err(|_| Error::Usage(format!("malformed --alpha value `{raw}`")))?;
                if !value.is_finite() {
                    return Err(Error::Usage("--alpha must be a finite real".into()));
                }
                alpha = Some(value);
            }
            "--method" => {
                method = Some(match flag_value("--method")?.as_str() {
                    "forest" => GroupInverseMethod::Forest,
                    "perturb" => GroupInverseMethod::Perturb,
                    "projection" => GroupInverseMethod::Projection,
                    other => {
                        return Err(Error::Usage(format!(
                            "unknown group-inverse method `{other}`; expected forest, perturb, or projection"
                        )))
                    }
                });
            }
            "--normalized" => {
                seen.push("--normalized");
                normalized = true;
            }
            other if other.starts_with("--") => {
                return Err(Error::Usage(format!("unknown flag `{other}`")));
            }
            positional => {
                if input.is_some() {
                    return Err(Error::Usage(format!(
                        "unexpected extra argument `{positional}`"
                    )));
                }
                input = Some(PathBuf::from(positional));
            }
        }
    }

    let allowed: &[&str] = match subcommand.as_str() {
        "spectrum" | "eigenprojection" | "eigen" | "mp-inverse" | "verify" | "stationary"
        | "long-run" => &[],
        "forest-matrix" => &["--k", "--normalized"],
        "all-forests" => &["--tau"],
        "group-inverse" => &["--method", "--alpha"],
        "dense-forest" => &["--alpha"],
        other => return Err(Error::Usage(format!("unknown subcommand `{other}`"))),
    };
    for flag in &seen {
        if !allowed.contains(flag) && !matches!(*flag, "--format" | "--tol") {
            return Err(Error::Usage(format!(
                "flag {flag} is not valid for subcommand {subcommand}"
            )));
        }
    }

    let command = match subcommand.as_str() {
        "spectrum" => Command::Spectrum,
        "forest-matrix" => Command::ForestMatrix {
            k: k.ok_or_else(|| Error::Usage("missing required flag --k".into()))?,
            normalized,
        },
        "all-forests" => Command::AllForests {
            tau: tau.unwrap_or(1.0),
        },
        "eigenprojection" => Command::Eigenprojection,
        "eigen" => Command::Eigen,
        "group-inverse" => {
            let alpha = alpha.unwrap_or(1.0);
            if alpha == 0.0 {
                return Err(Error::Usage(
                    "--alpha must be nonzero for group-inverse".into(),
                ));
            }
            Command::GroupInverse {
                method: method.unwrap_or(GroupInverseMethod::Forest),
                alpha,
            }
        }
        "mp-inverse" => Command::MpInverse,
        "dense-forest" => {
            let alpha =
                alpha.ok_or_else(|| Error::Usage("missing required flag --alpha".into()))?;
            if alpha <= 0.0 {
                return Err(Error::Usage(
                    "--alpha must be positive for dense-forest".into(),
                ));
            }
            Command::DenseForest { alpha }
        }
        "stationary" => Command::Stationary,
        "long-run" => Command::LongRun,
        "verify" => Command::Verify,
        _ => unreachable!("validated above"),
    };

    let input = input.ok_or_else(|| Error::Usage("missing input file".into()))?;
    Ok(Some(RunConfig {
        command,
        input,
        format,
        tol,
    }))
}

/// Runs a validated invocation; returns the complete output text and the
/// exit code (0, or 3 when `verify` finds a failing comparison).
pub fn execute(config: &RunConfig) -> Result<(String, i32)> {
    let text = std::fs::read_to_string(&config.input)?;
    match &config.command {
        Command::Stationary | Command::LongRun => {
            let p = StochasticMatrix::parse_csv(&text)?;
            run_markov(config, &p)
        }
        _ => {
            let g = WeightedDigraph::parse_edge_list(&text)?;
            run_graph(config, &g)
        }
    }
}

/// Parses and runs, writing the payload to `out` and a single-line
/// diagnostic to `err` on failure; returns the process exit code.
pub fn run_cli(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = match parse_args(args) {
        Ok(Some(config)) => config,
        Ok(None) => {
            let _ = writeln!(out, "{USAGE}");
            return 0;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    match execute(&config) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_graph(config: &RunConfig, g: &WeightedDigraph) -> Result<(String, i32)> {
    let tol = config.tol;
    let n = g.n();
    let d = g.forest_dimension();
    if matches!(config.command, Command::Verify) {
        let report = oracle::verify_report(g, tol)?;
        let code = if report.passed { 0 } else { 3 };
        let mut json = JsonObject::new();
        json.push_str("command", "verify");
        json.push_int("n", n);
        json.push_int("d", d);
        json.push_raw("report", &verify_report_json(&report));
        let text = match config.format {
            OutputFormat::Json => json.finish(),
            OutputFormat::Csv => {
                let mut lines = String::new();
                for check in &report.checks {
                    lines.push_str(&format!(
                        "{},{},{},{}\n",
                        check.name,
                        fmt_real(check.residual),
                        fmt_real(check.threshold),
                        if check.passed { "pass" } else { "fail" }
                    ));
                }
                lines
            }
        };
        return Ok((text, code));
    }

    let lap = g.laplacian();
    let spectrum = ForestSpectrum::compute(&lap, d, tol)?;
    let mut json = JsonObject::new();
    json.push_str("command", config.command.name());
    json.push_int("n", n);
    json.push_int("d", d);

    let csv_matrix: Matrix;
    match &config.command {
        Command::Spectrum => {
            let sigma = &spectrum.sigmas()[..=spectrum.max_forest_arcs()];
            json.push_raw("sigma", &json_reals(sigma));
            let text = match config.format {
                OutputFormat::Json => json.finish(),
                OutputFormat::Csv => csv_reals(sigma),
            };
            return Ok((text, 0));
        }
        Command::ForestMatrix { k, normalized } => {
            json.push_int("k", *k);
            json.push_bool("normalized", *normalized);
            if *normalized {
                let j_k = spectrum.normalized(*k)?;
                json.push_raw("J", &json_matrix(&j_k));
                csv_matrix = j_k;
            } else {
                if *k > n {
                    return Err(Error::IndexOutOfRange(format!(
                        "k = {k} exceeds the vertex count {n}"
                    )));
                }
                let q_k = spectrum.q(*k).clone();
                json.push_raw("Q", &json_matrix(&q_k));
                csv_matrix = q_k;
            }
        }
        Command::AllForests { tau } => {
            let p = spectrum.parametric(*tau)?;
            json.push_real("tau", *tau);
            json.push_real("sigma", p.weight);
            json.push_raw("Q", &json_matrix(&p.matrix));
            json.push_raw("J", &json_matrix(&p.normalized));
            csv_matrix = p.normalized;
        }
        Command::Eigenprojection => {
            let projection = spectral::max_forest_projection(&spectrum);
            json.push_raw("J_tilde", &json_matrix(&projection));
            csv_matrix = projection;
        }
        Command::Eigen => {
            let eig = spectral::eigen_data(&spectrum)?;
            json.push_raw("coefficients", &json_reals(&eig.coeffs));
            json.push_raw("eigenvalues", &json_complex_list(&eig.eigenvalues));
            json.push_raw("root_residuals", &json_reals(&eig.residuals));
            let mut csv_lines = String::new();
            for ev in &eig.eigenvalues {
                csv_lines.push_str(&format!("{},{}\n", fmt_real(ev.re), fmt_real(ev.im)));
            }
            let mut groups = String::from("[");
            let mut first = true;
            for lambda in distinct_nonzero(&eig.eigenvalues, tol) {
                if !first {
                    groups.push(',');
                }
                first = false;
                let mut entry = JsonObject::new();
                entry.push_raw("eigenvalue", &json_complex(lambda));
                match spectral::eigenvectors_from_forests(&spectrum, &lap, lambda, tol) {
                    Ok(vectors) => {
                        let vecs: Vec<String> = vectors
                            .iter()
                            .map(|v| json_complex_list(&v.vector))
                            .collect();
                        entry.push_raw("vectors", &format!("[{}]", vecs.join(",")));
                        let residuals: Vec<f64> = vectors.iter().map(|v| v.residual).collect();
                        entry.push_raw("residuals", &json_reals(&residuals));
                    }
                    Err(Error::NoEigenvectorColumns) => {
                        // defective direction: report the empty extraction
                        entry.push_raw("vectors", "[]");
                        entry.push_raw("residuals", "[]");
                    }
                    Err(e) => return Err(e),
                }
                groups.push_str(&entry.finish_inline());
            }
            groups.push(']');
            json.push_raw("eigenvectors", &groups);
            let text = match config.format {
                OutputFormat::Json => json.finish(),
                OutputFormat::Csv => csv_lines,
            };
            return Ok((text, 0));
        }
        Command::GroupInverse { method, alpha } => {
            let projection = spectral::max_forest_projection(&spectrum);
            let inverse = match method {
                GroupInverseMethod::Forest => geninv::group_inverse_forest(&spectrum)?,
                GroupInverseMethod::Perturb => {
                    geninv::group_inverse_perturbation(&lap, &projection, *alpha, tol)?
                }
                GroupInverseMethod::Projection => {
                    geninv::group_inverse_projection(&lap, &projection, *alpha, tol)?
                }
            };
            let residuals = geninv::group_axiom_residuals(&lap, &inverse)?;
            json.push_str("method", method.name());
            json.push_real("alpha", *alpha);
            json.push_raw("group_inverse", &json_matrix(&inverse));
            let mut r = JsonObject::new();
            r.push_real("axa", residuals.axa);
            r.push_real("xax", residuals.xax);
            r.push_real("commute", residuals.commute);
            json.push_raw("residuals", &r.finish_inline());
            csv_matrix = inverse;
        }
        Command::MpInverse => {
            let projection = spectral::max_forest_projection(&spectrum);
            let inverse = geninv::moore_penrose(&lap, &projection, tol)?;
            let residuals = geninv::penrose_axiom_residuals(&lap, &inverse)?;
            json.push_raw("moore_penrose", &json_matrix(&inverse));
            let mut r = JsonObject::new();
            r.push_real("axa", residuals.axa);
            r.push_real("xax", residuals.xax);
            r.push_real("ax_symmetry", residuals.ax_symmetry);
            r.push_real("xa_symmetry", residuals.xa_symmetry);
            json.push_raw("residuals", &r.finish_inline());
            csv_matrix = inverse;
        }
        Command::DenseForest { alpha } => {
            let dense = geninv::dense_forest_matrix(&spectrum, &lap, *alpha, tol)?;
            json.push_real("alpha", *alpha);
            json.push_raw("dense_forest", &json_matrix(&dense));
            csv_matrix = dense;
        }
        Command::Stationary | Command::LongRun | Command::Verify => unreachable!("handled above"),
    }

    let text = match config.format {
        OutputFormat::Json => json.finish(),
        OutputFormat::Csv => csv_matrix_rows(&csv_matrix),
    };
    Ok((text, 0))
}

fn run_markov(config: &RunConfig, p: &StochasticMatrix) -> Result<(String, i32)> {
    let n = p.n();
    let d = p.digraph().forest_dimension();
    let mut json = JsonObject::new();
    json.push_str("command", config.command.name());
    json.push_int("n", n);
    json.push_int("d", d);
    match config.command {
        Command::Stationary => {
            let pi = markov::stationary_distribution(p, config.tol)?;
            json.push_raw("pi", &json_reals(&pi));
            let text = match config.format {
                OutputFormat::Json => json.finish(),
                OutputFormat::Csv => csv_reals(&pi),
            };
            Ok((text, 0))
        }
        Command::LongRun => {
            let p_inf = markov::long_run_matrix(p, config.tol)?;
            json.push_raw("P_inf", &json_matrix(&p_inf));
            let text = match config.format {
                OutputFormat::Json => json.finish(),
                OutputFormat::Csv => csv_matrix_rows(&p_inf),
            };
            Ok((text, 0))
        }
        _ => unreachable!("markov dispatch"),
    }
}

/// Distinct values among the (sorted) eigenvalue list, nonzero within `tol`;
/// multiple roots are bitwise-equal after cluster refinement, so exact
/// deduplication is deterministic.
fn distinct_nonzero(eigenvalues: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for ev in eigenvalues {
        if ev.norm() <= tol.max(1e-12) {
            continue;
        }
        if out.last().is_some_and(|prev| {
            prev.re.to_bits() == ev.re.to_bits() && prev.im.to_bits() == ev.im.to_bits()
        }) {
            continue;
        }
        out.push(*ev);
    }
    out
}

fn verify_report_json(report: &oracle::VerifyReport) -> String {
    let mut checks = String::from("[");
    for (i, check) in report.checks.iter().enumerate() {
        if i > 0 {
            checks.push(',');
        }
        let mut entry = JsonObject::new();
        entry.push_str("name", &check.name);
        entry.push_real("residual", check.residual);
        entry.push_real("threshold", check.threshold);
        entry.push_bool("passed", check.passed);
        checks.push_str(&entry.finish_inline());
    }
    checks.push(']');
    let mut obj = JsonObject::new();
    obj.push_bool("passed", report.passed);
    obj.push_raw("checks", &checks);
    obj.finish_inline()
}

// --- deterministic JSON / CSV rendering ------------------------------------

/// 17 significant digits, normalized so negative zero never leaks out.
fn fmt_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_reals(v: &[f64]) -> String {
    let fields: Vec<String> = v.iter().map(|x| fmt_real(*x)).collect();
    format!("[{}]", fields.join(","))
}

fn json_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| json_reals(m.row(i))).collect();
    format!("[{}]", rows.join(","))
}

fn json_complex(z: Complex64) -> String {
    format!("[{},{}]", fmt_real(z.re), fmt_real(z.im))
}

fn json_complex_list(v: &[Complex64]) -> String {
    let fields: Vec<String> = v.iter().map(|z| json_complex(*z)).collect();
    format!("[{}]", fields.join(","))
}

fn csv_reals(v: &[f64]) -> String {
    let fields: Vec<String> = v.iter().map(|x| fmt_real(*x)).collect();
    format!("{}\n", fields.join(","))
}

fn csv_matrix_rows(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        out.push_str(&csv_reals(m.row(i)));
    }
    out
}

/// Insertion-ordered JSON object builder.
struct JsonObject {
    body: String,
}

impl JsonObject {
    fn new() -> Self {
        JsonObject {
            body: String::new(),
        }
    }

    fn push_field(&mut self, key: &str, rendered: &str) {
        if !self.body.is_empty() {
            self.body.push(',');
        }
        self.body.push('"');
        self.body.push_str(&json_escape(key));
        self.body.push_str("\":");
        self.body.push_str(rendered);
    }

    fn push_str(&mut self, key: &str, value: &str) {
        self.push_field(key, &format!("\"{}\"", json_escape(value)));
    }

    fn push_int(&mut self, key: &str, value: usize) {
        self.push_field(key, &value.to_string());
    }

    fn push_real(&mut self, key: &str, value: f64) {
        self.push_field(key, &fmt_real(value));
    }

    fn push_bool(&mut self, key: &str, value: bool) {
        self.push_field(key, if value { "true" } else { "false" });
    }

    fn push_raw(&mut self, key: &str, rendered: &str) {
        self.push_field(key, rendered);
    }

    fn finish_inline(self) -> String {
        format!("{{{}}}", self.body)
    }

    fn finish(self) -> String {
        format!("{{{}}}\n", self.body)
    }
}
