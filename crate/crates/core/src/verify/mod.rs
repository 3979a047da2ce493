//! Verification: grid residuals of the governing equations, boundary
//! limits, the subordination identities and the transform identities.
//!
//! Every check produces a [`ResidualReport`], serialized as one line
//! `<check-id> <max_abs_residual> <rms> <refinement_ratio> <PASS|FAIL>`.
//!
//! Grid residuals are computed on the base grid and on one halving
//! (`2n − 1` nodes per axis, so the base nodes are shared). Operators are
//! applied along lines that extend past the rectangle — down to 0 for the
//! left fractional derivatives, a few stencil widths beyond both ends for
//! derivatives — so every node carries a full-accuracy value and no
//! boundary rows need to be discarded.

mod boundary;
mod identities;
mod lines;
mod residual;

use std::fmt;

use crate::error::{invalid, Result};
use crate::kernels::admissible_kappa;

pub use boundary::boundary_check;
pub use identities::{
    laplace_identity_suite, lemma0_check, lemma0_lattice, lemma0_tolerance, lemma1_check, u3_constant_study, ConstantStudy, Lattice,
};
pub use residual::residual;

/// Governing equation identifiers with their parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EquationId {
    /// `∂_t h_ν + D^ν_{0+,x} h_ν = 0`.
    PdeH { nu: f64 },
    /// `D^ν_{0+,t} l_ν + ∂_x l_ν = 0` for `x > 0`.
    PdeL { nu: f64 },
    /// `(D^{ν1}_{0+,t} + D^{ν2}_{0+,x}) 𝔣_{ν1,ν2} = 0` for `x > 0`.
    PdeCompose { nu1: f64, nu2: f64 },
    /// `(D^n_{0−,x} − D^ν_{0+,t}) l_{ν/n} = 0`.
    ThmL { nu: f64, n: u32 },
    /// `(D^n_{0−,t} − D^ν_{0+,x}) h_{ν/n} = 0`.
    ThmH { nu: f64, n: u32 },
    /// `ThmL` with `ν = 1`.
    CoroL { n: u32 },
    /// `ThmH` with `ν = 1`.
    CoroH { n: u32 },
    /// `∂_t v_n = κ ∂^n_x v_n`.
    PdePseudo { n: u32, kappa: i32 },
    /// `(D^n_{0−,t} + D^m_{0−,x}) 𝔲_{m,n} = 0`.
    PdeUmn { m: u32, n: u32 },
}

pub(crate) fn fmt_num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EquationId::PdeH { nu } => write!(f, "PDE_H({})", fmt_num(nu)),
            EquationId::PdeL { nu } => write!(f, "PDE_L({})", fmt_num(nu)),
            EquationId::PdeCompose { nu1, nu2 } => {
                write!(f, "PDE_COMPOSE({},{})", fmt_num(nu1), fmt_num(nu2))
            }
            EquationId::ThmL { nu, n } => write!(f, "THM_L({},{n})", fmt_num(nu)),
            EquationId::ThmH { nu, n } => write!(f, "THM_H({},{n})", fmt_num(nu)),
            EquationId::CoroL { n } => write!(f, "CORO_L({n})"),
            EquationId::CoroH { n } => write!(f, "CORO_H({n})"),
            EquationId::PdePseudo { n, kappa } => write!(f, "PDE_PSEUDO({n},{kappa:+})"),
            EquationId::PdeUmn { m, n } => write!(f, "PDE_UMN({m},{n})"),
        }
    }
}

impl EquationId {
    fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(invalid(format!("{self}: {name} = {v} must lie in (0,1)")))
            }
        };
        let thm = |nu: f64, n: u32| {
            if n < 2 {
                return Err(invalid(format!("{self}: n must be at least 2")));
            }
            if !(nu > 0.0 && nu <= 1.0) {
                return Err(invalid(format!("{self}: nu must lie in (0,1]")));
            }
            Ok(())
        };
        match *self {
            EquationId::PdeH { nu } | EquationId::PdeL { nu } => unit("nu", nu),
            EquationId::PdeCompose { nu1, nu2 } => {
                unit("nu1", nu1)?;
                unit("nu2", nu2)
            }
            EquationId::ThmL { nu, n } | EquationId::ThmH { nu, n } => thm(nu, n),
            EquationId::CoroL { n } | EquationId::CoroH { n } => thm(1.0, n),
            EquationId::PdePseudo { n, kappa } => {
                if n < 2 || (kappa != 1 && kappa != -1) {
                    return Err(invalid(format!("{self}: needs n ≥ 2 and kappa = ±1")));
                }
                match admissible_kappa(n) {
                    Some(k) if k != kappa => Err(invalid(format!("{self}: n = {n} requires kappa = {k:+}"))),
                    _ => Ok(()),
                }
            }
            EquationId::PdeUmn { m, n } => {
                if m < 2 || n < 2 {
                    Err(invalid(format!("{self}: m and n must be at least 2")))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Whether the equation contains a fractional-order operator.
    fn is_fractional(&self) -> bool {
        match *self {
            EquationId::PdeH { .. } | EquationId::PdeL { .. } | EquationId::PdeCompose { .. } => true,
            EquationId::ThmL { nu, .. } | EquationId::ThmH { nu, .. } => nu != 1.0,
            _ => false,
        }
    }

    /// Highest derivative order in each variable `(x, t)`.
    fn orders(&self) -> (usize, usize) {
        match *self {
            EquationId::PdeH { .. } => (1, 1),
            EquationId::PdeL { .. } | EquationId::PdeCompose { .. } => (1, 1),
            EquationId::ThmL { n, .. } | EquationId::CoroL { n } => (n as usize, 1),
            EquationId::ThmH { n, .. } | EquationId::CoroH { n } => (1, n as usize),
            EquationId::PdePseudo { n, .. } => (n as usize, 1),
            EquationId::PdeUmn { m, n } => (m as usize, n as usize),
        }
    }

    fn default_grid(&self) -> GridRect {
        match *self {
            EquationId::PdeCompose { .. } | EquationId::PdeUmn { .. } => GridRect::square(0.5, 3.0, 64),
            EquationId::PdePseudo { .. } => GridRect::new(-3.0, 3.0, 0.5, 2.0, 64, 64),
            // h_{ν/n}(·, t) concentrates at x ~ t^{n/ν}; from t = 1 on the
            // peak has unit scale
            EquationId::ThmH { nu, .. } if nu != 1.0 => GridRect::new(0.2, 3.0, 1.0, 3.0, 64, 64),
            _ => GridRect::square(0.2, 3.0, 64),
        }
    }
}

/// Rectangle `[x0,x1]×[t0,t1]` with `nx × nt` nodes (base level).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRect {
    pub x0: f64,
    pub x1: f64,
    pub t0: f64,
    pub t1: f64,
    pub nx: usize,
    pub nt: usize,
}

impl GridRect {
    pub fn new(x0: f64, x1: f64, t0: f64, t1: f64, nx: usize, nt: usize) -> Self {
        Self { x0, x1, t0, t1, nx, nt }
    }

    pub fn square(a: f64, b: f64, n: usize) -> Self {
        Self::new(a, b, a, b, n, n)
    }

    pub fn hx(&self) -> f64 {
        (self.x1 - self.x0) / (self.nx - 1) as f64
    }

    pub fn ht(&self) -> f64 {
        (self.t1 - self.t0) / (self.nt - 1) as f64
    }

    /// The grid after `level` halvings of both steps.
    pub fn refined(&self, level: u32) -> Self {
        let f = 1usize << level;
        Self {
            nx: (self.nx - 1) * f + 1,
            nt: (self.nt - 1) * f + 1,
            ..*self
        }
    }

    pub(crate) fn xs(&self) -> Vec<f64> {
        let h = self.hx();
        (0..self.nx).map(|i| self.x0 + i as f64 * h).collect()
    }

    pub(crate) fn ts(&self) -> Vec<f64> {
        let h = self.ht();
        (0..self.nt).map(|j| self.t0 + j as f64 * h).collect()
    }

    fn validate(&self) -> Result<()> {
        let ok = [self.x0, self.x1, self.t0, self.t1].iter().all(|v| v.is_finite());
        if !ok || !(self.x1 > self.x0) || !(self.t1 > self.t0) {
            return Err(invalid("grid: need finite x0 < x1 and t0 < t1"));
        }
        if self.nx < 2 || self.nt < 2 {
            return Err(invalid("grid: need at least two nodes per axis"));
        }
        Ok(())
    }
}

/// Time-derivative form used for `PDE_L` and `PDE_COMPOSE`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeForm {
    RiemannLiouville,
    Caputo,
}

/// An equation, the grid it is checked on and the pass tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquationSpec {
    pub id: EquationId,
    pub grid: GridRect,
    pub tolerance: f64,
    pub form: TimeForm,
}

/// Default residual tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

impl EquationSpec {
    /// The equation on its default grid (64² nodes) with tolerance 10⁻³.
    pub fn new(id: EquationId) -> Self {
        Self {
            id,
            grid: id.default_grid(),
            tolerance: DEFAULT_TOLERANCE,
            form: TimeForm::RiemannLiouville,
        }
    }

    pub fn with_grid(mut self, grid: GridRect) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_form(mut self, form: TimeForm) -> Self {
        self.form = form;
        self
    }

    /// Report identifier, e.g. `PDE_L(0.5)` or `PDE_L(0.5)[caputo]`.
    pub fn label(&self) -> String {
        match self.form {
            TimeForm::RiemannLiouville => self.id.to_string(),
            TimeForm::Caputo => format!("{}[caputo]", self.id),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.id.validate()?;
        self.grid.validate()?;
        if !(self.tolerance > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        if self.form == TimeForm::Caputo
            && !matches!(self.id, EquationId::PdeL { .. } | EquationId::PdeCompose { .. })
        {
            return Err(invalid(format!("{}: the Caputo form applies to PDE_L and PDE_COMPOSE", self.id)));
        }
        if self.id.is_fractional() && !(self.grid.x0 > 0.0 && self.grid.t0 > 0.0) {
            return Err(invalid(format!("{}: fractional equations need x0 > 0 and t0 > 0", self.id)));
        }
        let (ox, ot) = self.id.orders();
        if self.grid.nx < ox + 2 || self.grid.nt < ot + 2 {
            return Err(crate::error::Error::GridTooShort {
                needed: ox.max(ot) + 2,
                have: self.grid.nx.min(self.grid.nt),
            });
        }
        Ok(())
    }
}

/// A boundary or limit check: the deviation from the expected value and
/// the tolerance it must stay under.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCheck {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl BoundaryCheck {
    pub fn passed(&self) -> bool {
        self.deviation < self.tolerance
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub id: String,
    /// Largest residual on the refined grid (for lattice checks: the
    /// largest deviation).
    pub max_abs_residual: f64,
    pub rms_residual: f64,
    pub boundary_checks: Vec<BoundaryCheck>,
    /// `max|R|` on the base grid over `max|R|` at the same nodes after
    /// one halving; infinite for checks without a grid.
    pub refinement_ratio: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Minimum residual decay factor under one halving.
pub const MIN_REFINEMENT_RATIO: f64 = 1.5;

impl ResidualReport {
    pub(crate) fn new(
        id: String,
        max_abs_residual: f64,
        rms_residual: f64,
        boundary_checks: Vec<BoundaryCheck>,
        refinement_ratio: f64,
        tolerance: f64,
    ) -> Self {
        let passed = max_abs_residual < tolerance
            && refinement_ratio > MIN_REFINEMENT_RATIO
            && boundary_checks.iter().all(BoundaryCheck::passed);
        Self {
            id,
            max_abs_residual,
            rms_residual,
            boundary_checks,
            refinement_ratio,
            tolerance,
            passed,
        }
    }

    /// The report line.
    pub fn line(&self) -> String {
        format!(
            "{} {:.5e} {:.5e} {:.5e} {}",
            self.id,
            self.max_abs_residual,
            self.rms_residual,
            self.refinement_ratio,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

/// Every governing equation with the parameter sets checked by default,
/// in a fixed order. `PDE_L` and `PDE_COMPOSE` appear in both time forms.
pub fn default_equations() -> Vec<EquationSpec> {
    use EquationId::*;
    let mut v = Vec::new();
    v.push(EquationSpec::new(PdeH { nu: 0.5 }));
    for form in [TimeForm::RiemannLiouville, TimeForm::Caputo] {
        v.push(EquationSpec::new(PdeL { nu: 0.5 }).with_form(form));
    }
    for form in [TimeForm::RiemannLiouville, TimeForm::Caputo] {
        v.push(EquationSpec::new(PdeCompose { nu1: 0.5, nu2: 1.0 / 3.0 }).with_form(form));
    }
    for &(nu, n) in &[(1.0, 2), (1.0, 3), (0.5, 2)] {
        v.push(EquationSpec::new(ThmL { nu, n }));
    }
    for &(nu, n) in &[(1.0, 2), (1.0, 3), (0.5, 2)] {
        v.push(EquationSpec::new(ThmH { nu, n }));
    }
    for n in [2, 3] {
        v.push(EquationSpec::new(CoroL { n }));
    }
    for n in [2, 3] {
        v.push(EquationSpec::new(CoroH { n }));
    }
    v.push(EquationSpec::new(PdePseudo { n: 2, kappa: 1 }));
    v.push(EquationSpec::new(PdePseudo { n: 3, kappa: 1 }));
    v.push(EquationSpec::new(PdePseudo { n: 3, kappa: -1 }));
    v.push(EquationSpec::new(PdeUmn { m: 2, n: 2 }));
    v
}

/// Runs one check; a computation failure becomes a failed report with
/// infinite residual, so suites always produce one line per check.
pub fn residual_or_failure(eq: &EquationSpec) -> ResidualReport {
    match residual(eq) {
        Ok(r) => r,
        Err(e) => failure_report(eq.label(), eq.tolerance, &e),
    }
}

pub(crate) fn failure_report(id: String, tolerance: f64, e: &crate::error::Error) -> ResidualReport {
    ResidualReport::new(
        id,
        f64::INFINITY,
        f64::INFINITY,
        vec![BoundaryCheck {
            name: format!("error: {e}"),
            deviation: f64::INFINITY,
            tolerance,
        }],
        0.0,
        tolerance,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_line_format() {
        let s = EquationSpec::new(EquationId::PdeCompose { nu1: 0.5, nu2: 1.0 / 3.0 });
        assert_eq!(s.label(), "PDE_COMPOSE(0.5,0.333333)");
        assert_eq!(s.with_form(TimeForm::Caputo).label(), "PDE_COMPOSE(0.5,0.333333)[caputo]");
        assert_eq!(EquationId::PdePseudo { n: 3, kappa: -1 }.to_string(), "PDE_PSEUDO(3,-1)");
        let r = ResidualReport::new("X".into(), 1.5e-5, 2e-6, vec![], 3.9, 1e-3);
        assert_eq!(r.line(), "X 1.50000e-5 2.00000e-6 3.90000e0 PASS");
        let r = ResidualReport::new("X".into(), 1.5e-5, 2e-6, vec![], 1.2, 1e-3);
        assert!(!r.passed);
    }

    #[test]
    fn spec_validation() {
        assert!(EquationSpec::new(EquationId::PdeH { nu: 1.2 }).validate().is_err());
        assert!(EquationSpec::new(EquationId::PdePseudo { n: 2, kappa: -1 }).validate().is_err());
        assert!(EquationSpec::new(EquationId::PdeH { nu: 0.5 })
            .with_form(TimeForm::Caputo)
            .validate()
            .is_err());
        let g = GridRect::square(0.2, 3.0, 3);
        assert!(EquationSpec::new(EquationId::CoroL { n: 3 }).with_grid(g).validate().is_err());
        let g = GridRect::square(0.0, 3.0, 64);
        assert!(EquationSpec::new(EquationId::PdeH { nu: 0.5 }).with_grid(g).validate().is_err());
        for s in default_equations() {
            s.validate().unwrap();
        }
    }

    #[test]
    fn refined_grid_shares_nodes() {
        let g = GridRect::square(0.2, 3.0, 64);
        let r = g.refined(1);
        assert_eq!(r.nx, 127);
        assert!((r.xs()[2 * 10] - g.xs()[10]).abs() < 1e-15);
    }
}
