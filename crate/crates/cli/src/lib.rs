//! Metric ingestion, suite orchestration and report emission behind the `kappa` binary.

use kappa_core::calculus::calculus_consistency_suite;
use kappa_core::expr::{parse_element, render};
use kappa_core::hopf::{hopf_axiom_suite, ideal_theorem_suite};
use kappa_core::ncalg::confluence::{confluence_dual, confluence_group};
use kappa_core::qlie::{casimir_checks, verify_brackets_suite};
use kappa_core::report::SCHEMA;
use kappa_core::{Dual, Group, Metric, Report, Variant};
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

pub const DEFAULT_DEGREE_BOUND: usize = 4;
/// Random elements per Hopf axiom run.
pub const HOPF_SAMPLES: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: metric file, variant, suite list, expression or report document.
    #[error("ConfigError: {0}")]
    Config(String),
    #[error("engine error: {0}")]
    Engine(kappa_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Engine(_) => 1,
        }
    }
}

impl From<kappa_core::Error> for CliError {
    fn from(e: kappa_core::Error) -> Self {
        use kappa_core::Error as E;
        match e {
            E::Metric(_)
            | E::MetricVariantMismatch { .. }
            | E::UnknownVariant(_)
            | E::SyntaxError { .. }
            | E::UnknownSymbol(_)
            | E::Config(_) => CliError::Config(e.to_string()),
            other => CliError::Engine(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Confluence,
    Hopf,
    Ideal,
    Calculus,
    Qlie,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Confluence, Suite::Hopf, Suite::Ideal, Suite::Calculus, Suite::Qlie];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Confluence => "confluence",
            Suite::Hopf => "hopf",
            Suite::Ideal => "ideal",
            Suite::Calculus => "calculus",
            Suite::Qlie => "qlie",
        }
    }

    /// Comma-separated names, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, CliError> {
        if s.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let suite = Suite::ALL
                .into_iter()
                .find(|x| x.name() == part)
                .ok_or_else(|| CliError::Config(format!("unknown suite {part:?}")))?;
            if !out.contains(&suite) {
                out.push(suite);
            }
        }
        if out.is_empty() {
            return Err(CliError::Config("empty suite list".into()));
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Format, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "machine" => Ok(Format::Machine),
            _ => Err(CliError::Config(format!("unknown format {s:?}"))),
        }
    }
}

pub fn parse_variant(s: &str) -> Result<Variant, CliError> {
    Ok(Variant::parse(s)?)
}

pub fn load_metric(path: &Path) -> Result<Metric, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Metric::from_json(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Runs the selected suites and aggregates them into one report. Suites that do not
/// apply to the variant are skipped with a note.
pub fn run_verification(
    variant: Variant,
    metric: &Metric,
    suites: &[Suite],
    degree_bound: usize,
    seed: u64,
) -> Result<Report, CliError> {
    if degree_bound == 0 {
        return Err(CliError::Config("degree bound must be positive".into()));
    }
    variant.check_metric(metric)?;
    let mut out = Report::new("verify", variant.name(), &metric.name, degree_bound);
    out.note(format!("seed {seed}"));
    let group = if variant.is_group() {
        Some(Group::for_variant(variant, metric)?)
    } else {
        None
    };
    for &suite in suites {
        let Some(g) = &group else {
            if suite == Suite::Confluence {
                out.absorb(confluence_dual(&Dual::for_variant(variant, metric)?, degree_bound, seed)?);
            } else {
                out.note(format!("suite {} needs a group variant; skipped", suite.name()));
            }
            continue;
        };
        match suite {
            Suite::Confluence => {
                let mut r = confluence_group(g, false, degree_bound, seed)?;
                r.suite = "confluence-group".into();
                out.absorb(r);
                let mut r = confluence_dual(&Dual::for_variant(variant.dual(), metric)?, degree_bound, seed)?;
                r.suite = "confluence-dual".into();
                out.absorb(r);
            }
            Suite::Hopf => out.absorb(hopf_axiom_suite(g, HOPF_SAMPLES, seed)?),
            Suite::Ideal => out.absorb(ideal_theorem_suite(g, variant, degree_bound)?),
            Suite::Calculus => out.absorb(calculus_consistency_suite(g, variant, seed)?),
            Suite::Qlie => {
                out.absorb(verify_brackets_suite(variant, metric)?);
                out.absorb(casimir_checks(variant, metric)?);
            }
        }
    }
    Ok(out)
}

/// The canonical normal form of an expression in the algebra of `variant`.
pub fn normal_form(variant: Variant, metric: &Metric, expr: &str) -> Result<String, CliError> {
    variant.check_metric(metric)?;
    let e = if variant.is_group() {
        let g = Group::for_variant(variant, metric)?;
        render(&g.alg, &parse_element(expr, &g)?)
    } else {
        let d = Dual::for_variant(variant, metric)?;
        render(&d.alg, &parse_element(expr, &d)?)
    };
    Ok(e)
}

pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Text => r.to_text(),
        Format::Machine => r.to_machine(),
    }
}

/// Re-ingests a machine report, rejecting other schema versions.
pub fn ingest(text: &str) -> Result<Report, CliError> {
    let r = Report::from_machine(text).map_err(|e| CliError::Config(format!("malformed report: {e}")))?;
    if r.schema != SCHEMA {
        return Err(CliError::Config(format!("unsupported schema {:?}", r.schema)));
    }
    Ok(r)
}

/// `0` when nothing failed, `1` otherwise.
pub fn report_exit_code(r: &Report) -> i32 {
    if r.all_pass() {
        0
    } else {
        1
    }
}
