//! Acceptance criteria, one `PASS`/`FAIL` line each.
//!
//! Runs without the libtest harness so that every criterion is reported
//! even when an earlier one is red. Criteria in [`KNOWN_RED`] fail because
//! the statement they check is false; they still print `FAIL`, with the
//! analysis, and the run exits nonzero only if a criterion outside that
//! list fails or a listed one unexpectedly passes.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use fracorder::fracops::{caputo, rl_plus, FracOrder, GridFunction};
use fracorder::kernels::{
    folded_stable, h_density, l_density, pseudo_kernel, subordinate, u_closed, u_mn, ClosedForm,
};
use fracorder::specfun::{airy_ai, gamma};
use fracorder::transforms::{bromwich_invert_log, ContourSpec};
use fracorder::verify::{
    boundary_check, default_equations, laplace_identity_suite, lemma0_check, lemma0_lattice, lemma0_tolerance,
    lemma1_check, residual_or_failure, u3_constant_study, EquationId, EquationSpec,
};
use num_complex::Complex64;

/// Criteria that are red because the claim under test is false.
const KNOWN_RED: &[(u32, &str)] = &[
    (
        7,
        "(x/t)^2 v_n does not solve the pseudo-process equation: for n = 2 the residual is exactly \
         -2 v_2/t^2, and the measured residual does not shrink under refinement (ratio ~ 1)",
    ),
    (
        10,
        "`verify --suite all` includes the three (x/t)^2 checks of criterion 7, so it exits 1; \
         every other line is PASS",
    ),
];

const LEMMA0_TOL_RELAXED: f64 = 1e-5;
const CLOSED_FORM_TOL: f64 = 1e-10;
const U1_TOL: f64 = 1e-8;
const V3_TOL: f64 = 1e-6;
const COMPOSITION_TOL: f64 = 1e-6;
const U2_TOL: f64 = 1e-5;
const MIN_ORDER_RATIO: f64 = 1.8;
const CONSTANT_MATCH: f64 = 0.01;
const ITEM_BUDGET: Duration = Duration::from_secs(60);
const UMN_BUDGET: Duration = Duration::from_secs(300);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn nine_points() -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for &t in &[0.5, 1.0, 2.0] {
        for &x in &[0.5, 1.0, 2.0] {
            v.push((x, t));
        }
    }
    v
}

fn lattice_points() -> Vec<(f64, f64)> {
    let l = lemma0_lattice();
    l.ts.iter().flat_map(|&t| l.xs.iter().map(move |&x| (x, t))).collect()
}

fn criterion_1() -> Outcome {
    let lattice = lemma0_lattice();
    let mut ok = true;
    let mut parts = Vec::new();
    for nu in [0.3, 0.5, 0.7] {
        let tol = lemma0_tolerance(nu);
        assert!(tol <= LEMMA0_TOL_RELAXED);
        match lemma0_check(nu, &lattice, tol) {
            Ok(r) => {
                ok &= r.passed;
                parts.push(format!("nu={nu}: max rel dev {:.2e} (tol {tol:.0e})", r.max_abs_residual));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("nu={nu}: {e}"));
            }
        }
    }
    // the identity without the factor ν is off by exactly 1/ν
    let c = ContourSpec::default();
    let mut worst = 0.0_f64;
    for nu in [0.3, 0.5, 0.7] {
        for &(x, t) in &[(0.5, 1.0), (1.0, 1.0), (2.0, 0.7)] {
            let printed = (t / x) * l_density(nu, t, x).unwrap().value;
            let oracle = bromwich_invert_log(|l: Complex64| -t * l.powf(nu), x, &c).unwrap();
            worst = worst.max(rel(printed / oracle, 1.0 / nu));
        }
    }
    ok &= worst < 1e-8;
    parts.push(format!("(t/x) l_nu(t,x) / oracle = 1/nu to {worst:.1e}"));
    Outcome::new(ok, parts.join("; "))
}

fn criterion_2() -> Outcome {
    let mut dev_l = 0.0_f64;
    let mut dev_h = 0.0_f64;
    for (x, t) in lattice_points() {
        let gauss = (-x * x / (4.0 * t)).exp() / (PI * t).sqrt();
        dev_l = dev_l.max(rel(l_density(0.5, x, t).unwrap().value, gauss));
        let levy = t / (2.0 * PI.sqrt() * x.powf(1.5)) * (-t * t / (4.0 * x)).exp();
        dev_h = dev_h.max(rel(h_density(0.5, x, t).unwrap().value, levy));
    }
    let mut dev_u1 = 0.0_f64;
    for (x, t) in lattice_points() {
        let a = u_closed(ClosedForm::U1, x, t).unwrap().value;
        let b = l_density(1.0 / 3.0, x, t).unwrap().value;
        dev_u1 = dev_u1.max(rel(a, b));
    }
    let mut dev_v3 = 0.0_f64;
    for &t in &[0.5, 1.0, 2.0] {
        let c = (3.0_f64 * t).cbrt();
        for k in -6..=6 {
            let x = 0.5 * k as f64;
            for kappa in [1, -1] {
                let v = pseudo_kernel(3, kappa, x, t).unwrap().value;
                let airy = airy_ai(-(kappa as f64) * x / c).unwrap().value / c;
                dev_v3 = dev_v3.max((v - airy).abs());
            }
        }
    }
    let ok = dev_l < CLOSED_FORM_TOL && dev_h < CLOSED_FORM_TOL && dev_u1 < U1_TOL && dev_v3 < V3_TOL;
    Outcome::new(
        ok,
        format!(
            "l_1/2 vs Gaussian {dev_l:.1e}, h_1/2 vs Levy {dev_h:.1e} (rel, 100-point lattice); \
             u1 vs l_1/3 {dev_u1:.1e} rel; v3 Fourier vs Airy {dev_v3:.1e} abs"
        ),
    )
}

fn criterion_3() -> Outcome {
    let reports = laplace_identity_suite();
    let ok = reports.iter().all(|r| r.passed);
    let detail = reports
        .iter()
        .map(|r| format!("{} {:.1e}/{:.0e}", r.id, r.max_abs_residual, r.tolerance))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome::new(ok, detail)
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for eq in default_equations() {
        if matches!(eq.id, EquationId::CoroL { .. } | EquationId::CoroH { .. }) {
            continue;
        }
        assert_eq!((eq.grid.nx, eq.grid.nt), (64, 64));
        let start = Instant::now();
        let r = residual_or_failure(&eq);
        let took = start.elapsed();
        let budget = if matches!(eq.id, EquationId::PdeUmn { .. }) {
            UMN_BUDGET
        } else {
            ITEM_BUDGET
        };
        let item_ok = r.passed && r.max_abs_residual < 1e-3 && r.refinement_ratio > 1.5 && took <= budget;
        ok &= item_ok;
        lines.push(format!("    {} [{:.1}s]", r.line(), took.as_secs_f64()));
    }
    Outcome::new(ok, format!("64^2 grids, one halving\n{}", lines.join("\n")))
}

fn criterion_5() -> Outcome {
    use EquationId::*;
    let ids = [
        PdeL { nu: 0.5 },
        ThmL { nu: 1.0, n: 2 },
        ThmL { nu: 1.0, n: 3 },
        ThmH { nu: 1.0, n: 2 },
        ThmH { nu: 1.0, n: 3 },
        CoroL { n: 2 },
        PdeH { nu: 0.5 },
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for id in ids {
        match boundary_check(&EquationSpec::new(id)) {
            Ok(checks) => {
                for c in checks {
                    ok &= c.passed();
                    lines.push(format!("    {id}: {} dev {:.2e} < {:.0e}", c.name, c.deviation, c.tolerance));
                }
            }
            Err(e) => {
                ok = false;
                lines.push(format!("    {id}: {e}"));
            }
        }
    }
    Outcome::new(ok, format!("limits by Neville extrapolation\n{}", lines.join("\n")))
}

fn criterion_6() -> Outcome {
    let mut d_umn = 0.0_f64;
    let mut d_l14 = 0.0_f64;
    let mut d_fold = 0.0_f64;
    let mut d_u2 = 0.0_f64;
    for (x, t) in nine_points() {
        let cauchy = 2.0 / PI * t / (t * t + x * x);
        let umn = u_mn(2, 2, x, t).unwrap().value;
        d_umn = d_umn.max(rel(umn, cauchy));
        d_fold = d_fold.max(rel(folded_stable(1.0, x, t).unwrap().value, umn));
        let l14 = subordinate(
            |s| Ok(l_density(0.5, x, s)?.value * l_density(0.5, s, t)?.value),
            t.sqrt(),
            1e-10,
        )
        .unwrap()
        .value;
        d_l14 = d_l14.max(rel(l_density(0.25, x, t).unwrap().value, l14));
        let comp = subordinate(
            |s| Ok(u_closed(ClosedForm::U1, x, s)?.value * h_density(0.5, s, t)?.value),
            t * t,
            1e-10,
        )
        .unwrap()
        .value;
        d_u2 = d_u2.max(rel(u_closed(ClosedForm::U2, x, t).unwrap().value, comp));
    }
    let ok = d_umn < COMPOSITION_TOL && d_l14 < COMPOSITION_TOL && d_fold < COMPOSITION_TOL && d_u2 < U2_TOL;
    Outcome::new(
        ok,
        format!(
            "u_2,2 vs folded Cauchy {d_umn:.1e}; u2 vs int u1 h_1/2 {d_u2:.1e}; \
             l_1/4 vs l_1/2 o l_1/2 {d_l14:.1e}; folded_stable(1) vs u_2,2 {d_fold:.1e} (rel, 9 points)"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for (n, kappa) in [(2, 1), (3, 1), (3, -1)] {
        let grid = EquationSpec::new(EquationId::PdePseudo { n, kappa }).grid;
        match lemma1_check(n, kappa, &grid, 1e-3) {
            Ok(reports) => {
                for r in reports {
                    ok &= r.passed;
                    lines.push(format!("    {}", r.line()));
                }
            }
            Err(e) => {
                ok = false;
                lines.push(format!("    LEMMA1({n},{kappa:+}): {e}"));
            }
        }
    }
    Outcome::new(ok, format!("64^2 grids, one halving\n{}", lines.join("\n")))
}

/// Maximum error over `t ∈ [0.25, 1]` of an operator on `t^p` at step `h`.
fn order_error(h: f64, p: f64, alpha: f64, l1: bool) -> f64 {
    let n = (1.0 / h).round() as usize + 1;
    let g = GridFunction::from_fn(h, n, |t| t.powf(p)).unwrap();
    let d = if l1 {
        caputo(&g, alpha).unwrap()
    } else {
        rl_plus(&g, FracOrder::new(alpha).unwrap()).unwrap()
    };
    let c = gamma(p + 1.0) / gamma(p + 1.0 - alpha);
    (0..n)
        .filter(|&i| d.x(i) >= 0.25 - 1e-12)
        .map(|i| (d.samples()[i] - c * d.x(i).powf(p - alpha)).abs())
        .fold(0.0, f64::max)
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, l1) in [("GL", false), ("L1", true)] {
        for alpha in [0.3, 0.5, 0.7] {
            let errs: Vec<f64> = (5..=8).map(|k| order_error(0.5f64.powi(k), 2.0, alpha, l1)).collect();
            let ratios: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
            ok &= ratios.iter().all(|&r| r >= MIN_ORDER_RATIO);
            parts.push(format!(
                "{name}(alpha={alpha}) ratios {}",
                ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>().join("/")
            ));
        }
    }
    Outcome::new(ok, format!("t^2, h = 1/32..1/256, t >= 0.25: {}", parts.join(", ")))
}

fn criterion_9() -> Outcome {
    let study = match u3_constant_study() {
        Ok(s) => s,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("u3_constant_report.txt");
    let written = std::fs::write(&path, study.report()).is_ok();
    let best = study
        .candidates
        .iter()
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .expect("two candidates");
    let ok = written && best.2 < CONSTANT_MATCH && study.spread < CONSTANT_MATCH;
    Outcome::new(
        ok,
        format!(
            "measured C = {:.12e} = {} to {:.1e} (spread {:.1e}); report {}",
            study.measured,
            best.0,
            best.2,
            study.spread,
            path.display()
        ),
    )
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fracorder"))
        .args(args)
        .output()
        .expect("the fracorder binary runs")
}

fn criterion_10() -> Outcome {
    let mut parts = Vec::new();
    let mut same = true;
    for args in [
        &["tabulate", "--kernel", "l", "--nu", "0.5", "--x", "0:5:0.5", "--t", "1"][..],
        &["tabulate", "--kernel", "u3", "--x", "1", "--t", "1"],
        &["tabulate", "--kernel", "pseudo", "--n", "3", "--kappa", "+1", "--x", "-3:3:0.1", "--t", "1"],
    ] {
        let a = run_cli(args);
        let b = run_cli(args);
        same &= a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    }
    parts.push(format!("tabulate byte-identical across runs: {same}"));
    let all = run_cli(&["verify", "--suite", "all"]);
    let stdout = String::from_utf8_lossy(&all.stdout);
    let failing: Vec<&str> = stdout
        .lines()
        .filter(|l| l.ends_with(" FAIL"))
        .map(|l| l.split(' ').next().unwrap_or(""))
        .collect();
    let code = all.status.code();
    parts.push(format!(
        "`verify --suite all` exit {code:?}, {} lines, failing: {}",
        stdout.lines().count(),
        if failing.is_empty() { "none".to_string() } else { failing.join(" ") }
    ));
    Outcome::new(same && code == Some(0), parts.join("; "))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Lemma 0 subordination identity vs Bromwich oracle", criterion_1),
        (2, "closed-form equivalences", criterion_2),
        (3, "Laplace-transform identities", criterion_3),
        (4, "governing-equation residuals", criterion_4),
        (5, "boundary conditions", criterion_5),
        (6, "compositions", criterion_6),
        (7, "Lemma 1 self-similar solutions", criterion_7),
        (8, "fracops convergence order", criterion_8),
        (9, "u3 constant study", criterion_9),
        (10, "CLI contract", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let known = KNOWN_RED.iter().find(|k| k.0 == id);
        println!(
            "criterion {id:>2} {} {name} [{:.1}s]: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
        match (outcome.passed, known) {
            (false, Some((_, why))) => println!("    known red: {why}"),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {id} is listed as known red but passed")),
            (true, None) => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected ({} known red)", KNOWN_RED.len());
    } else {
        println!("acceptance: {}", unexpected.join("; "));
        std::process::exit(1);
    }
}
