//! Command implementations behind the `weil-jacobi` binary. Each command
//! returns an [`Outcome`] so the binary, the C interface and tests share one
//! code path.

use serde::Serialize;

use crate::batteries::{check_function_laws, check_operator_bracket};
use crate::error::{Error, Result};
use crate::jacobi::{
    check_jacobi_axioms, check_lcs_identities, check_pointwise, check_prolongation_coincidence,
    check_prolonged_homomorphism, lcs_bracket, prolong_jacobi, ABracket, JacobiData, LcsData, AXIOM_SUITE,
    PROLONGATION_SUITE,
};
use crate::poly::Poly;
use crate::problem::{Problem, StructureSection, Suite, STRUCTURE_SUITE};
use crate::report::{IdentityCheck, Report, Status};
use crate::sampling::Samples;
use crate::smooth::APoly;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_IDENTITY_FAILURE: u8 = 1;
pub const EXIT_STRUCTURAL: u8 = 2;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SAMPLES: usize = 100;

/// Exit code for an error that stops a command before any report exists.
pub fn error_code(_: &Error) -> u8 {
    EXIT_STRUCTURAL
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<Suite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub exit_code: u8,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<IdentityCheck>,
}

impl Outcome {
    fn new(command: &'static str, report: Report, structural: bool) -> Self {
        let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
        let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
        let exit_code = if structural {
            EXIT_STRUCTURAL
        } else if failed > 0 {
            EXIT_IDENTITY_FAILURE
        } else {
            EXIT_PASS
        };
        Outcome { command, suites: Vec::new(), seed: None, samples: None, exit_code, passed, failed, skipped, checks: report.checks }
    }

    pub fn report(&self) -> Report {
        Report { checks: self.checks.clone() }
    }

    /// Pretty JSON; identical inputs give byte-identical output.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outcome serializes");
        s.push('\n');
        s
    }

    /// Human-readable report with a closing summary line.
    pub fn to_text(&self) -> String {
        let mut s = self.report().to_string();
        let verdict = match self.exit_code {
            EXIT_PASS => "ok",
            EXIT_IDENTITY_FAILURE => "FAILED",
            _ => "STRUCTURAL ERROR",
        };
        s.push_str(&format!(
            "{}: {verdict} ({} passed, {} failed, {} skipped)\n",
            self.command, self.passed, self.failed, self.skipped
        ));
        s
    }
}

/// Algebra locality plus the invariants of the structure section. A form
/// that is degenerate or lives in odd dimension is a structural error.
pub fn validate(problem: &Problem) -> Outcome {
    let report = problem.validate();
    let structural = report.find("lcs-nondegenerate").is_some_and(|c| !c.passed());
    Outcome::new("validate", report, structural)
}

enum Structure {
    Lcs(Box<LcsData>),
    Jacobi(JacobiData),
}

fn build_structure(problem: &Problem) -> Result<Option<Structure>> {
    Ok(match &problem.structure {
        None => None,
        Some(StructureSection::Lcs { alpha, omega }) => {
            Some(Structure::Lcs(Box::new(LcsData::new_unchecked(&problem.algebra, alpha.clone(), omega.clone())?)))
        }
        Some(StructureSection::Jacobi { lambda, e }) => {
            JacobiData::new(lambda.clone(), e.clone()).ok().map(Structure::Jacobi)
        }
    })
}

/// Suites to run: the command line wins, then the file's `checks`, then all.
pub fn resolve_suites(problem: &Problem, requested: Option<&[Suite]>) -> Vec<Suite> {
    let mut suites = match requested {
        Some(s) if !s.is_empty() => s.to_vec(),
        _ if !problem.checks.is_empty() => problem.checks.clone(),
        _ => Suite::ALL.to_vec(),
    };
    suites.sort();
    suites.dedup();
    suites
}

fn skip(suite: &str, note: &str) -> IdentityCheck {
    IdentityCheck::skipped(suite, "*", note)
}

fn run_suite(problem: &Problem, structure: Option<&Structure>, suite: Suite, samples: &Samples) -> Result<Report> {
    let (alg, n) = (&problem.algebra, problem.dim);
    let mut report = Report::default();
    match suite {
        Suite::Prop1 => report.extend(check_function_laws(alg, n, &problem.diffops, samples)?),
        Suite::LieRinehart => report.extend(check_operator_bracket(alg, n, samples)?),
        Suite::JacobiAxioms => match structure {
            None if problem.structure.is_some() => report.push(skip(AXIOM_SUITE, "structure failed validation")),
            None => report.push(skip(AXIOM_SUITE, "no structure section")),
            Some(Structure::Lcs(lcs)) if lcs.is_symbolic() => {
                report.extend(check_jacobi_axioms(&lcs_bracket(lcs), samples)?);
                report.extend(check_lcs_identities(lcs, samples)?);
            }
            Some(Structure::Lcs(lcs)) => report.extend(check_pointwise(lcs, samples)?),
            Some(Structure::Jacobi(data)) => report.extend(check_jacobi_axioms(&prolong_jacobi(data, alg), samples)?),
        },
        Suite::Prolongation => match structure {
            None if problem.structure.is_some() => report.push(skip(PROLONGATION_SUITE, "structure failed validation")),
            None => report.push(skip(PROLONGATION_SUITE, "no structure section")),
            Some(Structure::Lcs(lcs)) if lcs.is_symbolic() => {
                report.extend(check_prolongation_coincidence(lcs, samples)?)
            }
            Some(Structure::Lcs(_)) => {
                report.push(skip(PROLONGATION_SUITE, "omega has no polynomial inverse; symbolic brackets unavailable"))
            }
            Some(Structure::Jacobi(data)) => report.extend(check_prolonged_homomorphism(&prolong_jacobi(data, alg), samples)?),
        },
    }
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub suites: Option<Vec<Suite>>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

/// Validation followed by the selected identity suites. Errors are
/// structural: an empty sample set, a degenerate or odd-dimensional form, or
/// a solve that meets a degenerate point.
pub fn check(problem: &Problem, options: &CheckOptions) -> Result<Outcome> {
    let seed = options.seed.or(problem.seed).unwrap_or(DEFAULT_SEED);
    let count = options.samples.or(problem.samples).unwrap_or(DEFAULT_SAMPLES);
    let samples = Samples::new(seed, count)?;
    let suites = resolve_suites(problem, options.suites.as_deref());

    let mut report = problem.validate();
    if report.find("lcs-nondegenerate").is_some_and(|c| !c.passed()) {
        build_structure(problem)?;
    }
    if problem.algebra_is_local() {
        let structure = build_structure(problem)?;
        for &suite in &suites {
            report.extend(run_suite(problem, structure.as_ref(), suite, &samples)?);
        }
    } else {
        for suite in &suites {
            report.push(skip(suite.name(), "algebra is not local"));
        }
    }
    let mut outcome = Outcome::new("check", report, false);
    outcome.suites = suites;
    outcome.seed = Some(seed);
    outcome.samples = Some(count);
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketOutcome {
    pub value: APoly,
    /// `{f, g}` on the base when both arguments are prolongations.
    pub base: Option<Poly>,
}

impl BracketOutcome {
    pub fn to_text(&self) -> String {
        match &self.base {
            Some(b) => format!("{}\nbase: {b}\n", self.value),
            None => format!("{}\n", self.value),
        }
    }
}

/// Evaluates `{F, G}` for two expressions over the problem's names.
pub fn bracket(problem: &Problem, f: &str, g: &str) -> Result<BracketOutcome> {
    problem.algebra.validate_local()?;
    let (phi, psi) = (problem.apoly_expr(f)?, problem.apoly_expr(g)?);
    let base_args = problem.base_poly_expr(f).zip(problem.base_poly_expr(g));
    match &problem.structure {
        None => Err(Error::Semantic(format!("{STRUCTURE_SUITE}: the problem has no structure section"))),
        Some(StructureSection::Lcs { alpha, omega }) => {
            let lcs = LcsData::new_unchecked(&problem.algebra, alpha.clone(), omega.clone())?;
            let value = lcs_bracket(&lcs).bracket(&phi, &psi)?;
            let base = base_args.map(|(a, b)| lcs.base_bracket(&a, &b)).transpose()?;
            Ok(BracketOutcome { value, base })
        }
        Some(StructureSection::Jacobi { lambda, e }) => {
            let data = JacobiData::new(lambda.clone(), e.clone())?;
            let value = prolong_jacobi(&data, &problem.algebra).bracket(&phi, &psi)?;
            let base = base_args.map(|(a, b)| data.bracket(&a, &b)).transpose()?;
            Ok(BracketOutcome { value, base })
        }
    }
}
