//! The `fracorder` command line: `tabulate` a kernel to CSV, `verify` the
//! governing equations and identities, or run the `identities` study.
//!
//! Exit status: 0 when every check passes, 1 when a check fails or a
//! kernel evaluation fails, 2 on an invalid invocation. Flags may also be
//! read from a `key = value` file given with `--config`; flags on the
//! command line take precedence.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::kernels::KernelSpec;
use crate::verify::{
    default_equations, failure_report, laplace_identity_suite, lemma0_check, lemma0_lattice, lemma0_tolerance,
    lemma1_check, residual_or_failure, u3_constant_study, EquationId, EquationSpec, ResidualReport, TimeForm,
    DEFAULT_TOLERANCE,
};

/// All checks passed.
pub const EXIT_PASS: i32 = 0;
/// A check failed or a computation failed.
pub const EXIT_FAIL: i32 = 1;
/// The invocation was invalid.
pub const EXIT_USAGE: i32 = 2;

/// Largest number of rows a `tabulate` range may produce.
const MAX_RANGE_POINTS: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "fracorder",
    version,
    about = "Stable-subordinator kernels and residual checks for fractional and higher-order heat equations",
    args_override_self = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a kernel on a lattice as CSV `x,t,value` (rows ordered by t, then x).
    Tabulate(TabulateArgs),
    /// Run verification suites; prints `<id> <max> <rms> <ratio> PASS|FAIL` per check.
    Verify(VerifyArgs),
    /// Laplace identities, the subordination identity and the u3 constant study.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelKind {
    /// Stable subordinator density h_nu(x,t); needs --nu.
    H,
    /// Inverse subordinator density l_nu(x,t); needs --nu.
    L,
    /// Lamperti density (t ignored); needs --nu.
    Lamperti,
    /// Composition of h_nu2 and l_nu1; needs --nu1, --nu2.
    Compose,
    /// Composition u_{m,n}; needs --m, --n.
    Umn,
    /// Pseudo-process kernel v_n; needs --n, --kappa.
    Pseudo,
    U1,
    U2,
    U3,
    /// Folded symmetric stable density; needs --alpha.
    FoldedStable,
}

#[derive(Debug, Args)]
struct TabulateArgs {
    /// Kernel to tabulate.
    #[arg(long, value_enum)]
    kernel: KernelKind,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    nu1: Option<f64>,
    #[arg(long)]
    nu2: Option<f64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Sign of the pseudo-process equation, +1 or -1.
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<i32>,
    #[arg(long)]
    alpha: Option<f64>,
    /// x values: a single number or an inclusive range `a:b:step`.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// t values: a single number or an inclusive range `a:b:step`.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// File of `key = value` lines supplying defaults for these flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Every equation, identity and lemma check.
    All,
    /// Every governing-equation residual.
    Equations,
    PdeH,
    PdeL,
    PdeCompose,
    ThmL,
    ThmH,
    CoroL,
    CoroH,
    Pseudo,
    Umn,
    /// Subordination identity h_nu = nu (t/x) l_nu(t,x) against Bromwich inversion.
    Lemma0,
    /// Self-similar solutions of the pseudo-process equations.
    Lemma1,
    /// Laplace-transform identities.
    Laplace,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite to run; without parameters a family runs its default cases.
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    nu1: Option<f64>,
    #[arg(long)]
    nu2: Option<f64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Sign of the pseudo-process equation, +1 or -1.
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<i32>,
    /// Pass tolerance (default 1e-3 for residuals; checks keep their own otherwise).
    #[arg(long)]
    tol: Option<f64>,
    /// Base-grid nodes per axis (default 64).
    #[arg(long)]
    nodes: Option<usize>,
    /// Use the Caputo time derivative (pde-l and pde-compose).
    #[arg(long)]
    caputo: bool,
    /// File of `key = value` lines supplying defaults for these flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IdentitiesArgs {
    /// Also write the u3 constant study to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// File of `key = value` lines supplying defaults for these flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match with_config(args) {
        Ok(a) => a,
        Err(Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_PASS {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Tabulate(a) => tabulate(&a, out, err),
        Command::Verify(a) => verify(&a, out),
        Command::Identities(a) => identities(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
    }
}

/// Splices the flags of a `--config` file in right after the subcommand,
/// so that later command-line flags override them.
fn with_config(args: Vec<String>) -> Result<Vec<String>, Usage> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = args.get(i + 1).cloned();
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Usage(format!("cannot read config {path}: {e}")))?;
    let mut flags = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Usage(format!("{path}:{}: expected key = value", k + 1)));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key == "config" || key.starts_with('-') {
            return Err(Usage(format!("{path}:{}: invalid key `{key}`", k + 1)));
        }
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => flags.push(format!("--{key}={value}")),
        }
    }
    let at = if args.len() > 1 && !args[1].starts_with('-') { 2 } else { 1 };
    let mut v = args[..at.min(args.len())].to_vec();
    v.extend(flags);
    v.extend(args.into_iter().skip(at));
    Ok(v)
}

/// Parses `a` or the inclusive range `a:b:step` (endpoint kept within half
/// a step).
fn parse_range(s: &str) -> Result<Vec<f64>, Usage> {
    let num = |p: &str| -> Result<f64, Usage> {
        let v: f64 = p.trim().parse().map_err(|_| Usage(format!("`{p}` is not a number")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Usage(format!("`{p}` is not finite")))
        }
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a] => Ok(vec![num(a)?]),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if !(step > 0.0) || b < a {
                return Err(Usage(format!("range `{s}` needs a <= b and step > 0")));
            }
            let count = ((b - a) / step + 0.5).floor() + 1.0;
            if !(count <= MAX_RANGE_POINTS as f64) {
                return Err(Usage(format!("range `{s}` has more than {MAX_RANGE_POINTS} points")));
            }
            Ok((0..count as usize).map(|i| tidy(a + i as f64 * step)).collect())
        }
        _ => Err(Usage(format!("range `{s}` must be `a` or `a:b:step`"))),
    }
}

/// Rounds to 12 significant digits, so that `0.1·3` prints as `0.3`.
fn tidy(v: f64) -> f64 {
    format!("{v:.11e}").parse().unwrap_or(v)
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T, Usage> {
    v.ok_or_else(|| Usage(format!("{what} requires --{flag}")))
}

fn kernel_spec(a: &TabulateArgs) -> Result<KernelSpec, Usage> {
    let what = format!("--kernel {}", a.kernel.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default());
    let spec = match a.kernel {
        KernelKind::H => KernelSpec::H { nu: need(a.nu, "nu", &what)? },
        KernelKind::L => KernelSpec::L { nu: need(a.nu, "nu", &what)? },
        KernelKind::Lamperti => KernelSpec::Lamperti { nu: need(a.nu, "nu", &what)? },
        KernelKind::Compose => KernelSpec::Compose {
            nu1: need(a.nu1, "nu1", &what)?,
            nu2: need(a.nu2, "nu2", &what)?,
        },
        KernelKind::Umn => KernelSpec::Umn {
            m: need(a.m, "m", &what)?,
            n: need(a.n, "n", &what)?,
        },
        KernelKind::Pseudo => KernelSpec::Pseudo {
            n: need(a.n, "n", &what)?,
            kappa: need(a.kappa, "kappa", &what)?,
        },
        KernelKind::U1 => KernelSpec::U1,
        KernelKind::U2 => KernelSpec::U2,
        KernelKind::U3 => KernelSpec::U3,
        KernelKind::FoldedStable => KernelSpec::FoldedStable {
            alpha: need(a.alpha, "alpha", &what)?,
        },
    };
    spec.validate()?;
    Ok(spec)
}

fn tabulate(a: &TabulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Usage> {
    let spec = kernel_spec(a)?;
    let xs = parse_range(&a.x)?;
    let ts = parse_range(&a.t)?;
    if let Some(t) = ts.iter().find(|t| !(**t > 0.0)) {
        if !matches!(spec, KernelSpec::Lamperti { .. }) {
            return Err(Usage(format!("t = {t} must be positive")));
        }
    }
    let mut csv = String::from("x,t,value\n");
    for &t in &ts {
        for &x in &xs {
            match spec.evaluate(x, t) {
                Ok(v) if v.value.is_finite() => {
                    let _ = writeln!(csv, "{x},{t},{:.14e}", v.value);
                }
                Ok(_) => {
                    let _ = writeln!(err, "error: non-finite kernel value at x = {x}, t = {t}");
                    return Ok(EXIT_FAIL);
                }
                Err(e) => {
                    let _ = writeln!(err, "error: at x = {x}, t = {t}: {e}");
                    return Ok(EXIT_FAIL);
                }
            }
        }
    }
    let written = match &a.out {
        Some(p) => std::fs::write(p, csv).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => out.write_all(csv.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => Ok(EXIT_PASS),
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            Ok(EXIT_FAIL)
        }
    }
}

/// One planned check.
enum Check {
    Equation(EquationSpec),
    Lemma0 { nu: f64, tol: f64 },
    Lemma1 { n: u32, kappa: i32, tol: f64, nodes: Option<usize> },
    Laplace { tol: Option<f64> },
}

fn family(suite: Suite, id: &EquationId) -> bool {
    matches!(
        (suite, id),
        (Suite::PdeH, EquationId::PdeH { .. })
            | (Suite::PdeL, EquationId::PdeL { .. })
            | (Suite::PdeCompose, EquationId::PdeCompose { .. })
            | (Suite::ThmL, EquationId::ThmL { .. })
            | (Suite::ThmH, EquationId::ThmH { .. })
            | (Suite::CoroL, EquationId::CoroL { .. })
            | (Suite::CoroH, EquationId::CoroH { .. })
            | (Suite::Pseudo, EquationId::PdePseudo { .. })
            | (Suite::Umn, EquationId::PdeUmn { .. })
            | (Suite::Equations | Suite::All, _)
    )
}

/// The equation named by explicit parameters, if any were given.
fn explicit_equation(a: &VerifyArgs) -> Result<Option<EquationId>, Usage> {
    let any = a.nu.is_some() || a.nu1.is_some() || a.nu2.is_some() || a.m.is_some() || a.n.is_some() || a.kappa.is_some();
    if !any {
        return Ok(None);
    }
    let w = "this suite";
    let id = match a.suite {
        Suite::PdeH => EquationId::PdeH { nu: need(a.nu, "nu", w)? },
        Suite::PdeL => EquationId::PdeL { nu: need(a.nu, "nu", w)? },
        Suite::PdeCompose => EquationId::PdeCompose {
            nu1: need(a.nu1, "nu1", w)?,
            nu2: need(a.nu2, "nu2", w)?,
        },
        Suite::ThmL => EquationId::ThmL {
            nu: need(a.nu, "nu", w)?,
            n: need(a.n, "n", w)?,
        },
        Suite::ThmH => EquationId::ThmH {
            nu: need(a.nu, "nu", w)?,
            n: need(a.n, "n", w)?,
        },
        Suite::CoroL => EquationId::CoroL { n: need(a.n, "n", w)? },
        Suite::CoroH => EquationId::CoroH { n: need(a.n, "n", w)? },
        Suite::Pseudo => EquationId::PdePseudo {
            n: need(a.n, "n", w)?,
            kappa: need(a.kappa, "kappa", w)?,
        },
        Suite::Umn => EquationId::PdeUmn {
            m: need(a.m, "m", w)?,
            n: need(a.n, "n", w)?,
        },
        _ => return Ok(None),
    };
    Ok(Some(id))
}

fn plan(a: &VerifyArgs) -> Result<Vec<Check>, Usage> {
    if let Some(t) = a.tol {
        if !(t > 0.0) {
            return Err(Usage("--tol must be positive".into()));
        }
    }
    if let Some(n) = a.nodes {
        if n < 4 {
            return Err(Usage("--nodes must be at least 4".into()));
        }
    }
    let form = if a.caputo { TimeForm::Caputo } else { TimeForm::RiemannLiouville };
    let adjust = |mut s: EquationSpec| {
        if let Some(t) = a.tol {
            s.tolerance = t;
        }
        if let Some(n) = a.nodes {
            s.grid.nx = n;
            s.grid.nt = n;
        }
        s
    };
    let mut checks = Vec::new();
    match a.suite {
        Suite::Lemma0 => {
            let nus = match a.nu {
                Some(nu) => vec![nu],
                None => vec![0.3, 0.5, 0.7],
            };
            for nu in nus {
                if !(nu > 0.0 && nu < 1.0) {
                    return Err(Usage(format!("lemma0: nu = {nu} must lie in (0,1)")));
                }
                checks.push(Check::Lemma0 { nu, tol: a.tol.unwrap_or(lemma0_tolerance(nu)) });
            }
        }
        Suite::Lemma1 => {
            let cases = match (a.n, a.kappa) {
                (None, None) => vec![(2, 1), (3, 1), (3, -1)],
                (Some(n), k) => vec![(n, k.unwrap_or(1))],
                (None, Some(_)) => return Err(Usage("lemma1 with --kappa requires --n".into())),
            };
            for (n, kappa) in cases {
                if !matches!((n, kappa), (2, 1) | (3, 1) | (3, -1)) {
                    return Err(Usage("lemma1 needs (n, kappa) in {(2,+1), (3,+1), (3,-1)}".into()));
                }
                checks.push(Check::Lemma1 { n, kappa, tol: a.tol.unwrap_or(DEFAULT_TOLERANCE), nodes: a.nodes });
            }
        }
        Suite::Laplace => checks.push(Check::Laplace { tol: a.tol }),
        suite => {
            if a.caputo && !matches!(suite, Suite::PdeL | Suite::PdeCompose) {
                return Err(Usage("--caputo applies to the pde-l and pde-compose suites".into()));
            }
            match explicit_equation(a)? {
                Some(id) => checks.push(Check::Equation(adjust(EquationSpec::new(id).with_form(form)))),
                None => {
                    for s in default_equations() {
                        if family(suite, &s.id) && (!a.caputo || s.form == TimeForm::Caputo) {
                            checks.push(Check::Equation(adjust(s)));
                        }
                    }
                }
            }
            if suite == Suite::All {
                for nu in [0.3, 0.5, 0.7] {
                    checks.push(Check::Lemma0 { nu, tol: lemma0_tolerance(nu) });
                }
                for (n, kappa) in [(2, 1), (3, 1), (3, -1)] {
                    checks.push(Check::Lemma1 { n, kappa, tol: a.tol.unwrap_or(DEFAULT_TOLERANCE), nodes: a.nodes });
                }
                checks.push(Check::Laplace { tol: None });
            }
        }
    }
    for c in &checks {
        if let Check::Equation(s) = c {
            s.validate()?;
        }
    }
    Ok(checks)
}

fn with_tolerance(r: ResidualReport, tol: f64) -> ResidualReport {
    ResidualReport::new(r.id, r.max_abs_residual, r.rms_residual, r.boundary_checks, r.refinement_ratio, tol)
}

fn run_check(c: &Check) -> Vec<ResidualReport> {
    match *c {
        Check::Equation(ref s) => vec![residual_or_failure(s)],
        Check::Lemma0 { nu, tol } => {
            let id = format!("LEMMA0({})", crate::verify::fmt_num(nu));
            vec![lemma0_check(nu, &lemma0_lattice(), tol).unwrap_or_else(|e| failure_report(id, tol, &e))]
        }
        Check::Lemma1 { n, kappa, tol, nodes } => {
            let mut grid = EquationSpec::new(EquationId::PdePseudo { n, kappa }).grid;
            if let Some(k) = nodes {
                grid.nx = k;
                grid.nt = k;
            }
            lemma1_check(n, kappa, &grid, tol)
                .unwrap_or_else(|e| vec![failure_report(format!("LEMMA1({n},{kappa:+})"), tol, &e)])
        }
        Check::Laplace { tol } => laplace_identity_suite()
            .into_iter()
            .map(|r| match tol {
                Some(t) => with_tolerance(r, t),
                None => r,
            })
            .collect(),
    }
}

fn print_reports(reports: &[ResidualReport], out: &mut dyn Write) -> bool {
    let mut all = true;
    for r in reports {
        let _ = writeln!(out, "{r}");
        for b in r.boundary_checks.iter().filter(|b| !b.passed()) {
            if b.name.starts_with("error:") {
                let _ = writeln!(out, "  {}", b.name);
            } else {
                let _ = writeln!(out, "  boundary {}: deviation {:.3e} >= {:.1e}", b.name, b.deviation, b.tolerance);
            }
        }
        all &= r.passed;
    }
    all
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let checks = plan(a)?;
    let mut all = true;
    for c in &checks {
        all &= print_reports(&run_check(c), out);
    }
    Ok(if all { EXIT_PASS } else { EXIT_FAIL })
}

fn identities(a: &IdentitiesArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let mut reports = laplace_identity_suite();
    for nu in [0.3, 0.5, 0.7] {
        reports.extend(run_check(&Check::Lemma0 { nu, tol: lemma0_tolerance(nu) }));
    }
    let mut all = print_reports(&reports, out);
    match u3_constant_study() {
        Ok(s) => {
            let best = s
                .candidates
                .iter()
                .min_by(|p, q| p.2.total_cmp(&q.2))
                .cloned()
                .unwrap_or_default();
            let ok = best.2 < 0.01;
            let _ = writeln!(
                out,
                "U3_CONSTANT {:.12e} nearest {} deviation {:.3e} {}",
                s.measured,
                best.0,
                best.2,
                if ok { "PASS" } else { "FAIL" }
            );
            all &= ok;
            if let Some(p) = &a.out {
                if let Err(e) = std::fs::write(p, s.report()) {
                    return Err(Usage(format!("cannot write {}: {e}", p.display())));
                }
            }
        }
        Err(e) => {
            let _ = writeln!(out, "U3_CONSTANT error: {e} FAIL");
            all = false;
        }
    }
    Ok(if all { EXIT_PASS } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut v = vec!["fracorder"];
        v.extend_from_slice(args);
        let code = run(v, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges_include_endpoint_within_half_step() {
        assert_eq!(parse_range("0:5:0.5").ok().unwrap().len(), 11);
        assert_eq!(parse_range("-3:3:0.1").ok().unwrap().len(), 61);
        assert_eq!(parse_range("0:1:0.3").ok().unwrap(), vec![0.0, 0.3, 0.6, 0.9]);
        assert_eq!(parse_range("2").ok().unwrap(), vec![2.0]);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("nan").is_err());
    }

    #[test]
    fn tabulate_l_at_origin_is_phi() {
        let (code, out, _) = call(&["tabulate", "--kernel", "l", "--nu", "0.5", "--x", "0:5:0.5", "--t", "1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "x,t,value");
        assert_eq!(lines.len(), 12);
        let v: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
        assert!((v - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bad_invocations_exit_two() {
        for args in [
            &["tabulate", "--kernel", "l", "--x", "1", "--t", "1"][..],
            &["tabulate", "--kernel", "l", "--nu", "1.5", "--x", "1", "--t", "1"],
            &["tabulate", "--kernel", "pseudo", "--n", "2", "--kappa", "-1", "--x", "1", "--t", "1"],
            &["tabulate", "--kernel", "nope", "--x", "1", "--t", "1"],
            &["tabulate", "--kernel", "h", "--nu", "0.5", "--x", "1", "--t", "0"],
            &["verify", "--suite", "thm-h", "--nu", "1"],
            &["verify", "--suite", "pde-h", "--nu", "2"],
            &["verify", "--suite", "thm-h", "--caputo"],
            &["verify", "--tol", "-1"],
            &["frobnicate"],
            &[],
        ] {
            let (code, _, err) = call(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
        }
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("tabulate"));
    }

    #[test]
    fn config_file_supplies_defaults() {
        let dir = std::env::temp_dir().join(format!("fracorder-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("tab.cfg");
        std::fs::write(&p, "# defaults\nkernel = h\nnu = 0.5\nx = 1\nt = 1\n").unwrap();
        let cfg = p.to_str().unwrap();
        let (code, out, err) = call(&["tabulate", "--config", cfg]);
        assert_eq!(code, 0, "{err}");
        let (_, out2, _) = call(&["tabulate", "--config", cfg, "--t", "2"]);
        assert!(out.contains("1,1,") && out2.contains("1,2,"), "{out} {out2}");
        std::fs::write(&p, "kernel h\n").unwrap();
        assert_eq!(call(&["tabulate", "--config", cfg]).0, EXIT_USAGE);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
