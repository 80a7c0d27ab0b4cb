//! Command-line front end for the `magdirac` binary.
//!
//! Exit codes: `0` success, `1` invalid input, `2` a verification or bound
//! check failed (the report on standard output names the offending quantum
//! numbers).

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, BoundKind, BoundReport};
use crate::error::Error;
use crate::lattice::Lattice;
use crate::oracle;
use crate::scalar::C;
use crate::spectrum::DEFAULT_MERGE_TOLERANCE;
use crate::sphere::{self, SphereLabel};
use crate::torus::{self, SpinCData};

/// Environment variable overriding the default merge tolerance.
pub const TOLERANCE_ENV: &str = "MAGDIRAC_TOLERANCE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Mismatch(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "magdirac",
    version,
    about = "Spectra of magnetic Dirac operators on S³ and flat tori"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, Args)]
#[group(multiple = false)]
pub struct OutputFlags {
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Table,
    Json,
    Csv,
}

impl OutputFlags {
    fn format(self) -> Output {
        if self.json {
            Output::Json
        } else if self.csv {
            Output::Csv
        } else {
            Output::Table
        }
    }
}

#[derive(Debug, Args)]
pub struct TorusArgs {
    /// Lattice basis as a JSON array of basis vectors, e.g. `[[1,0],[0,1]]`.
    #[arg(long)]
    pub basis: String,
    /// Spin structure bits, comma separated (default all zero).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Spin-c twists in [0, 1), comma separated (default all zero).
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Parallel potential in standard components (default zero).
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Merged spectrum on S³ for the potential tη.
    Sphere {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 5.0)]
        cutoff: f64,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Eigenvalue curves on S³ as functions of t.
    SphereCurve {
        /// `a:b:steps`.
        #[arg(long, default_value = "-5:5:201", allow_hyphen_values = true)]
        t_range: String,
        #[arg(long, default_value_t = 5)]
        k_max: i64,
        /// Keep only samples with |value| <= window.
        #[arg(long, default_value_t = 5.0)]
        window: f64,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Merged spectrum on a flat torus.
    Torus {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long, default_value_t = 10.0)]
        cutoff: f64,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Eigenvalue estimates compared with the exact first eigenvalue.
    Bounds {
        #[arg(long, value_parser = ["sphere", "torus"])]
        model: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        /// Comma separated subset of friedrich,hijazi,baer,nodal,basic,diamagnetic.
        #[arg(long)]
        which: Option<String>,
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Matrix-oracle verification suites (JSON report).
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Parameters t at which two BRANCH curves on S³ meet.
    Collisions {
        #[arg(long, default_value_t = 4)]
        k_max: i64,
        #[command(flatten)]
        output: OutputFlags,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// 2×2 S³ blocks against the closed form.
    SphereBlocks {
        #[arg(long, default_value_t = 30)]
        k_max: i64,
        /// `a:b:points`.
        #[arg(long, default_value = "-4:4:17", allow_hyphen_values = true)]
        t_grid: String,
    },
    /// Per-mode torus matrices against ±2π|θ'|.
    TorusModes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Truncated D^{h+df} against the closed-form spectrum of D^h.
    Gauge {
        #[command(flatten)]
        torus: TorusArgs,
        /// JSON list of `{"freq": [..], "coeff": [re, im]}`; each term gets its
        /// conjugate partner so that f is real.
        #[arg(long)]
        f_terms: String,
        #[arg(long, default_value = "4,8,12")]
        cutoffs: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

/// Merge tolerance from the environment, or the default.
pub fn merge_tolerance() -> CliResult<f64> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(s) => {
            let v: f64 = s.trim().parse().map_err(|_| {
                CliError::Usage(format!("{TOLERANCE_ENV} must be a number, got '{s}'"))
            })?;
            if !(v >= 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!(
                    "{TOLERANCE_ENV} must be finite and nonnegative, got {v}"
                )));
            }
            Ok(v)
        }
        Err(_) => Ok(DEFAULT_MERGE_TOLERANCE),
    }
}

/// Parses `a:b:n`.
pub fn parse_range(s: &str) -> CliResult<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Usage(format!("expected a:b:n, got '{s}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a = parts[0].trim().parse().map_err(|_| bad())?;
    let b = parts[1].trim().parse().map_err(|_| bad())?;
    let n = parts[2].trim().parse().map_err(|_| bad())?;
    Ok((a, b, n))
}

fn grid(a: f64, b: f64, n: usize) -> CliResult<Vec<f64>> {
    match n {
        0 => Err(CliError::Usage("grid needs at least one point".into())),
        1 => Ok(vec![a]),
        _ => Ok((0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect()),
    }
}

fn parse_list<X: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<X>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad {what} entry '{x}'")))
        })
        .collect()
}

fn build_torus(
    basis: &str,
    delta: Option<&str>,
    theta: Option<&str>,
    a: Option<&str>,
) -> CliResult<SpinCData<f64>> {
    let vectors: Vec<Vec<f64>> = serde_json::from_str(basis)
        .map_err(|e| CliError::Usage(format!("malformed basis JSON: {e}")))?;
    let lattice = Lattice::from_basis_vectors(&vectors)?;
    let n = lattice.dim();
    let delta = match delta {
        Some(s) => parse_list::<u8>(s, "delta")?,
        None => vec![0; n],
    };
    let theta = match theta {
        Some(s) => parse_list::<f64>(s, "theta")?,
        None => vec![0.0; n],
    };
    let a = match a {
        Some(s) => parse_list::<f64>(s, "A")?,
        None => vec![0.0; n],
    };
    Ok(SpinCData::new(lattice, delta, theta, a)?)
}

#[derive(Debug, serde::Deserialize)]
struct FTerm {
    freq: Vec<i64>,
    coeff: [f64; 2],
}

fn parse_f_terms(s: &str) -> CliResult<Vec<(Vec<i64>, C<f64>)>> {
    let terms: Vec<FTerm> = serde_json::from_str(s)
        .map_err(|e| CliError::Usage(format!("malformed f-terms JSON: {e}")))?;
    Ok(terms
        .into_iter()
        .map(|t| (t.freq, C::new(t.coeff[0], t.coeff[1])))
        .collect())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print_json(out: &mut dyn Write, v: &impl Serialize) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, S>(args: I, out: &mut dyn Write) -> CliResult<()>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(cli, out)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Sphere { t, cutoff, output } => cmd_sphere(t, cutoff, output.format(), out),
        Command::SphereCurve {
            t_range,
            k_max,
            window,
            output,
        } => cmd_curve(&t_range, k_max, window, output.format(), out),
        Command::Torus {
            torus,
            cutoff,
            output,
        } => {
            let data = build_torus(
                &torus.basis,
                torus.delta.as_deref(),
                torus.theta.as_deref(),
                torus.a.as_deref(),
            )?;
            cmd_torus(&data, cutoff, output.format(), out)
        }
        Command::Bounds {
            model,
            t,
            which,
            basis,
            delta,
            theta,
            a,
            json,
        } => {
            let kinds = match which {
                Some(w) => w
                    .split(',')
                    .map(BoundKind::parse)
                    .collect::<Result<Vec<_>, _>>()?,
                None => match model.as_str() {
                    "sphere" => vec![
                        BoundKind::Friedrich,
                        BoundKind::Hijazi,
                        BoundKind::Basic,
                        BoundKind::Diamagnetic,
                    ],
                    _ => vec![
                        BoundKind::Friedrich,
                        BoundKind::Hijazi,
                        BoundKind::Baer,
                        BoundKind::Nodal,
                    ],
                },
            };
            let reports = if model == "sphere" {
                bounds::sphere_reports(t, &kinds)
            } else {
                let basis =
                    basis.ok_or_else(|| CliError::Usage("--model torus needs --basis".into()))?;
                let data = build_torus(&basis, delta.as_deref(), theta.as_deref(), a.as_deref())?;
                bounds::torus_reports(&data, &kinds)?
            };
            cmd_bounds(&model, t, reports, json, out)
        }
        Command::Verify(v) => cmd_verify(v, out),
        Command::Collisions { k_max, output } => cmd_collisions(k_max, output.format(), out),
    }
}

#[derive(Serialize)]
struct SphereEntryOut {
    value: f64,
    multiplicity: usize,
    contributors: Vec<String>,
}

fn cmd_sphere(t: f64, cutoff: f64, fmt: Output, out: &mut dyn Write) -> CliResult<()> {
    if !(cutoff > 0.0) || !t.is_finite() {
        return Err(CliError::Usage(format!(
            "need finite t and positive cutoff, got t={t}, cutoff={cutoff}"
        )));
    }
    let tol = merge_tolerance()?;
    let s = sphere::spectrum(t, cutoff, tol);
    let entries: Vec<SphereEntryOut> = s
        .entries
        .iter()
        .map(|e| SphereEntryOut {
            value: e.value,
            multiplicity: e.multiplicity,
            contributors: e.contributors.iter().map(SphereLabel::to_string).collect(),
        })
        .collect();
    match fmt {
        Output::Json => print_json(
            out,
            &json!({ "t": t, "cutoff": cutoff, "merge_tolerance": tol, "entries": entries }),
        ),
        Output::Csv => {
            writeln!(out, "value,multiplicity,contributors")?;
            for e in &entries {
                writeln!(
                    out,
                    "{},{},{}",
                    e.value,
                    e.multiplicity,
                    csv_field(&e.contributors.join(";"))
                )?;
            }
            Ok(())
        }
        Output::Table => {
            writeln!(out, "{:>24}  {:>6}  contributors", "value", "mult")?;
            for e in &entries {
                writeln!(
                    out,
                    "{:>24}  {:>6}  {}",
                    e.value,
                    e.multiplicity,
                    e.contributors.join(" ")
                )?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CurveRow {
    t: f64,
    family: String,
    k: i64,
    p: i64,
    sign: i8,
    value: f64,
}

fn cmd_curve(
    range: &str,
    k_max: i64,
    window: f64,
    fmt: Output,
    out: &mut dyn Write,
) -> CliResult<()> {
    let (a, b, steps) = parse_range(range)?;
    let samples = sphere::curve_samples(a, b, steps, k_max)?;
    let mut rows: Vec<CurveRow> = samples
        .into_iter()
        .filter(|s| s.value.abs() <= window)
        .map(|s| CurveRow {
            t: s.t,
            family: s.label.family.to_string(),
            k: s.label.k,
            p: s.label.p,
            sign: s.label.sign,
            value: s.value,
        })
        .collect();
    rows.sort_by(|x, y| {
        (&x.family, x.k, x.p, x.sign)
            .cmp(&(&y.family, y.k, y.p, y.sign))
            .then(x.t.total_cmp(&y.t))
    });
    match fmt {
        Output::Json => print_json(out, &rows),
        _ => {
            writeln!(out, "t,family,k,p,sign,value")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.t, r.family, r.k, r.p, r.sign, r.value
                )?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct TorusEntryOut {
    value: f64,
    multiplicity: usize,
    modes: Vec<Vec<i64>>,
}

fn cmd_torus(
    data: &SpinCData<f64>,
    cutoff: f64,
    fmt: Output,
    out: &mut dyn Write,
) -> CliResult<()> {
    let tol = merge_tolerance()?;
    let s = torus::spectrum(data, cutoff, tol)?;
    let entries: Vec<TorusEntryOut> = s
        .entries
        .iter()
        .map(|e| TorusEntryOut {
            value: e.value,
            multiplicity: e.multiplicity,
            modes: e.contributors.iter().map(|l| l.mode.clone()).collect(),
        })
        .collect();
    let zero = torus::zero_mode(data);
    let modes_str = |m: &[Vec<i64>]| {
        m.iter()
            .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(";")
    };
    match fmt {
        Output::Json => print_json(out, &json!({ "eigenvalues": entries, "zero_mode": zero })),
        Output::Csv => {
            writeln!(out, "value,multiplicity,modes")?;
            for e in &entries {
                writeln!(
                    out,
                    "{},{},{}",
                    e.value,
                    e.multiplicity,
                    csv_field(&modes_str(&e.modes))
                )?;
            }
            Ok(())
        }
        Output::Table => {
            match &zero {
                Some(m) => writeln!(out, "zero mode at {m:?}")?,
                None => writeln!(out, "no zero mode")?,
            }
            writeln!(out, "{:>24}  {:>6}  modes", "value", "mult")?;
            for e in &entries {
                writeln!(
                    out,
                    "{:>24}  {:>6}  {}",
                    e.value,
                    e.multiplicity,
                    modes_str(&e.modes)
                )?;
            }
            Ok(())
        }
    }
}

fn cmd_bounds(
    model: &str,
    t: f64,
    reports: Vec<(BoundKind, crate::Result<BoundReport<f64>>)>,
    json_out: bool,
    out: &mut dyn Write,
) -> CliResult<()> {
    let mut violations = Vec::new();
    let mut items = Vec::new();
    let mut table = String::new();
    for (kind, r) in &reports {
        match r {
            Ok(rep) => {
                if rep.violation {
                    violations.push(format!(
                        "{} (bound {}, λ₁ {})",
                        kind.name(),
                        rep.bound,
                        rep.lambda1
                    ));
                }
                items.push(json!({ "bound": kind, "applicable": true, "report": rep }));
                let _ = writeln!(
                    table,
                    "{:<12} {:<15} bound={:<22} lambda1={:<22} gap={:<22} equality={} violation={}{}",
                    kind.name(),
                    serde_json::to_value(rep.form).unwrap().as_str().unwrap_or(""),
                    rep.bound,
                    rep.lambda1,
                    rep.gap,
                    rep.equality,
                    rep.violation,
                    if rep.vacuous { " (vacuous)" } else { "" }
                );
            }
            Err(e) => {
                items.push(json!({ "bound": kind, "applicable": false, "reason": e.to_string() }));
                let _ = writeln!(table, "{:<12} not applicable: {e}", kind.name());
            }
        }
    }
    if json_out {
        print_json(out, &json!({ "model": model, "t": t, "bounds": items }))?;
    } else {
        out.write_all(table.as_bytes())?;
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "bound exceeds the exact eigenvalue: {}",
            violations.join(", ")
        )))
    }
}

fn cmd_verify(v: VerifyCommand, out: &mut dyn Write) -> CliResult<()> {
    match v {
        VerifyCommand::SphereBlocks { k_max, t_grid } => {
            let (a, b, n) = parse_range(&t_grid)?;
            let r = oracle::verify_sphere_blocks(k_max, &grid(a, b, n)?)?;
            print_json(out, &r)?;
            if r.pass {
                Ok(())
            } else {
                Err(CliError::Mismatch(r.worst.unwrap_or_default()))
            }
        }
        VerifyCommand::TorusModes { n, samples, seed } => {
            let r = oracle::verify_torus_modes::<f64>(n, samples, seed)?;
            print_json(out, &r)?;
            if r.pass {
                Ok(())
            } else {
                Err(CliError::Mismatch(r.worst.unwrap_or_default()))
            }
        }
        VerifyCommand::Gauge {
            torus,
            f_terms,
            cutoffs,
            count,
        } => {
            let data = build_torus(
                &torus.basis,
                torus.delta.as_deref(),
                torus.theta.as_deref(),
                torus.a.as_deref(),
            )?;
            let terms = parse_f_terms(&f_terms)?;
            let cutoffs: Vec<i64> = parse_list(&cutoffs, "cutoff")?;
            let r = oracle::verify_gauge(&data, &terms, &cutoffs, count)?;
            print_json(out, &r)?;
            if r.pass {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!(
                    "gauge residuals {:?} (monotone: {})",
                    r.residuals, r.monotone
                )))
            }
        }
    }
}

#[derive(Serialize)]
struct CollisionOut {
    first: [i64; 2],
    second: [i64; 2],
    t: f64,
    t_exact: String,
    f0: f64,
}

fn cmd_collisions(k_max: i64, fmt: Output, out: &mut dyn Write) -> CliResult<()> {
    if k_max < 1 {
        return Err(CliError::Usage(format!(
            "k-max must be at least 1, got {k_max}"
        )));
    }
    let pairs: Vec<(i64, i64)> = (1..=k_max)
        .flat_map(|k| (0..k).map(move |p| (k, p)))
        .collect();
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (i, &(k, p)) in pairs.iter().enumerate() {
        for &(k2, p2) in &pairs[i + 1..] {
            if let Some(exact) = sphere::collision_t::<Rational64>(k, p, k2, p2) {
                let t = *exact.numer() as f64 / *exact.denom() as f64;
                let (a, b) = (sphere::f0(k, p, t), sphere::f0(k2, p2, t));
                if (a - b).abs() > 1e-10 * (1.0 + a.abs()) {
                    bad.push(format!("({k},{p}) vs ({k2},{p2}) at t={t}"));
                }
                rows.push(CollisionOut {
                    first: [k, p],
                    second: [k2, p2],
                    t,
                    t_exact: exact.to_string(),
                    f0: a,
                });
            }
        }
    }
    match fmt {
        Output::Json => print_json(out, &rows)?,
        _ => {
            writeln!(out, "k,p,k2,p2,t,t_exact,f0")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.first[0], r.first[1], r.second[0], r.second[1], r.t, r.t_exact, r.f0
                )?;
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(bad.join(", ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut buf = Vec::new();
        run_from(
            std::iter::once("magdirac").chain(args.iter().copied()),
            &mut buf,
        )
        .unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("-2:2:9").unwrap(), (-2.0, 2.0, 9));
        assert!(parse_range("1:2").is_err());
        assert_eq!(grid(-1.0, 1.0, 3).unwrap(), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn sphere_json_contains_ground_state() {
        let s = run_ok(&["sphere", "--t", "0", "--cutoff", "5", "--json"]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let e = v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["value"] == 1.5)
            .unwrap();
        assert_eq!(e["multiplicity"], 2);
    }

    #[test]
    fn torus_min_positive_is_pi() {
        let s = run_ok(&[
            "torus",
            "--basis",
            "[[1,0],[0,1]]",
            "--delta",
            "1,0",
            "--theta",
            "0,0",
            "--A",
            "0,0",
            "--cutoff",
            "10",
            "--json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let min = v["eigenvalues"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e["value"].as_f64().unwrap())
            .filter(|x| *x > 0.0)
            .fold(f64::INFINITY, f64::min);
        assert!((min - std::f64::consts::PI).abs() < 1e-12);
        assert!(v["zero_mode"].is_null());
    }

    #[test]
    fn usage_errors_exit_one() {
        let mut buf = Vec::new();
        let e = run_from(
            ["magdirac", "torus", "--basis", "[[1,0],", "--cutoff", "3"],
            &mut buf,
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = run_from(["magdirac", "frobnicate"], &mut buf).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }
}
