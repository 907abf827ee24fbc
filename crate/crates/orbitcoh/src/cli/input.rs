//! The published input schema and its validation.
//!
//! Input documents are JSON with a versioned `schema_version` field. Parsing
//! reports every validation problem it can find, not just the first.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohomology::{BundleSpec, TableMode};
use crate::error::{Error, Result};
use crate::parabolic::CrossedDiagram;
use crate::realform::{
    involution_from_rows, named_form, satake_from_parts, sigma_from_satake, NamedForm,
    RootInvolution,
};
use crate::rootsys::{build_root_system, DynkinDiagram, DynkinEdge, RootSystem, Weight};

pub const SCHEMA_VERSION: u32 = 1;

/// A validated problem description, mirroring the input document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema_version: u32,
    pub diagram: DiagramSpec,
    pub real_form: RealFormSpec,
    pub crossed: Vec<String>,
    #[serde(default = "default_bundle")]
    pub bundle: BundleInput,
    pub p_max: usize,
    pub q_max: usize,
    #[serde(default = "default_mode")]
    pub mode: TableMode,
}

fn default_bundle() -> BundleInput {
    BundleInput::Keyword("trivial".into())
}

fn default_mode() -> TableMode {
    TableMode::Fiber
}

/// Either a type string such as `"A3"` / `"A1xA1"`, or an explicit node-edge
/// list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagramSpec {
    Named(String),
    Explicit(ExplicitDiagram),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitDiagram {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    #[serde(default = "default_multiplicity")]
    pub multiplicity: u8,
    /// Short-root endpoint for bonds of multiplicity 2 or 3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub short: Option<String>,
}

fn default_multiplicity() -> u8 {
    1
}

/// Named catalog form, raw Satake data, or an explicit conjugation matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealFormSpec {
    Named(NamedFormSpec),
    Satake(SatakeInput),
    Sigma(SigmaInput),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedFormSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatakeInput {
    pub satake: SatakeParts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatakeParts {
    #[serde(default)]
    pub black: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaInput {
    pub sigma: Vec<Vec<i64>>,
}

/// `"trivial"`, a line-bundle weight in fiber coordinates, or a user-supplied
/// fiber cohomology table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BundleInput {
    Keyword(String),
    Line(LineBundleInput),
    Table(FiberTableInput),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineBundleInput {
    pub line_weight: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberTableInput {
    pub fiber_table: Vec<FiberTableEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberTableEntry {
    pub p: usize,
    pub q: usize,
    pub dim: u64,
}

/// Everything the pipeline needs, resolved and validated.
#[derive(Debug)]
pub struct ResolvedProblem {
    pub system: Arc<RootSystem>,
    pub sigma: RootInvolution,
    pub q: CrossedDiagram,
    pub bundle: BundleSpec,
    pub p_max: usize,
    pub q_max: usize,
    pub mode: TableMode,
    /// Validation notes about how the conjugation was obtained.
    pub notes: Vec<String>,
}

/// Parses and fully validates an input document, returning either the spec or
/// the complete list of validation errors.
pub fn parse_input(document: &str) -> Result<ProblemSpec> {
    let spec: ProblemSpec = serde_json::from_str(document)
        .map_err(|e| Error::InvalidInput(vec![format!("document does not match the schema: {e}")]))?;
    resolve(&spec)?;
    Ok(spec)
}

fn push_error(errors: &mut Vec<String>, err: Error) {
    match err {
        Error::InvalidInput(list) => errors.extend(list),
        other => errors.push(other.to_string()),
    }
}

/// Resolves a spec into computation-ready objects, aggregating every problem.
pub fn resolve(spec: &ProblemSpec) -> Result<ResolvedProblem> {
    let mut errors = Vec::new();
    if spec.schema_version != SCHEMA_VERSION {
        errors.push(format!(
            "unsupported schema_version {} (supported: {SCHEMA_VERSION})",
            spec.schema_version
        ));
    }

    let diagram = match build_diagram(&spec.diagram) {
        Ok(d) => Some(d),
        Err(e) => {
            push_error(&mut errors, e);
            None
        }
    };

    // Checks independent of the diagram.
    if let RealFormSpec::Named(named) = &spec.real_form {
        if let Err(e) = named_form_of(named) {
            push_error(&mut errors, e);
        }
    }
    let bundle = match build_bundle(&spec.bundle) {
        Ok(b) => Some(b),
        Err(e) => {
            push_error(&mut errors, e);
            None
        }
    };

    let Some(diagram) = diagram else {
        return Err(Error::InvalidInput(errors));
    };
    let system = match build_root_system(&diagram) {
        Ok(s) => s,
        Err(e) => {
            push_error(&mut errors, e);
            return Err(Error::InvalidInput(errors));
        }
    };

    let mut notes = Vec::new();
    let sigma = match resolve_real_form(&spec.real_form, &diagram, &system, &mut notes) {
        Ok(s) => Some(s),
        Err(e) => {
            push_error(&mut errors, e);
            None
        }
    };

    let q = match CrossedDiagram::from_names(Arc::clone(&system), &spec.crossed) {
        Ok(q) => Some(q),
        Err(e) => {
            push_error(&mut errors, e);
            None
        }
    };

    match (sigma, q, bundle) {
        (Some(sigma), Some(q), Some(bundle)) if errors.is_empty() => Ok(ResolvedProblem {
            system,
            sigma,
            q,
            bundle,
            p_max: spec.p_max,
            q_max: spec.q_max,
            mode: spec.mode,
            notes,
        }),
        _ => Err(Error::InvalidInput(errors)),
    }
}

fn build_diagram(spec: &DiagramSpec) -> Result<DynkinDiagram> {
    match spec {
        DiagramSpec::Named(name) => DynkinDiagram::of_type(name),
        DiagramSpec::Explicit(ex) => {
            let index = |name: &str| -> Result<usize> {
                ex.nodes
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::InvalidInput(vec![format!("unknown node `{name}` in edge list")]))
            };
            let mut edges = Vec::new();
            let mut errors = Vec::new();
            for e in &ex.edges {
                let resolved = (|| -> Result<DynkinEdge> {
                    Ok(DynkinEdge {
                        a: index(&e.from)?,
                        b: index(&e.to)?,
                        multiplicity: e.multiplicity,
                        short: e.short.as_deref().map(index).transpose()?,
                    })
                })();
                match resolved {
                    Ok(edge) => edges.push(edge),
                    Err(err) => push_error(&mut errors, err),
                }
            }
            if !errors.is_empty() {
                return Err(Error::InvalidInput(errors));
            }
            DynkinDiagram::new(ex.nodes.clone(), edges)
        }
    }
}

fn named_form_of(named: &NamedFormSpec) -> Result<NamedForm> {
    match named.family.as_str() {
        "split" => Ok(NamedForm::Split),
        "compact" => Ok(NamedForm::Compact),
        "su" => match (named.p, named.q) {
            (Some(p), Some(q)) => Ok(NamedForm::SuPQ { p, q }),
            _ => Err(Error::InvalidInput(vec![
                "real_form family `su` requires integer parameters `p` and `q`".into(),
            ])),
        },
        "sl_real" => match named.n {
            Some(n) => Ok(NamedForm::SlReal { n }),
            None => Err(Error::InvalidInput(vec![
                "real_form family `sl_real` requires the integer parameter `n`".into(),
            ])),
        },
        other => Err(Error::InvalidInput(vec![format!(
            "unknown real_form family `{other}` (supported: split, compact, su, sl_real)"
        )])),
    }
}

fn resolve_real_form(
    spec: &RealFormSpec,
    diagram: &DynkinDiagram,
    system: &Arc<RootSystem>,
    notes: &mut Vec<String>,
) -> Result<RootInvolution> {
    match spec {
        RealFormSpec::Named(named) => {
            let form = named_form_of(named)?;
            let satake = named_form(diagram, &form).map_err(|e| match e {
                // Parameter/diagram inconsistencies are input errors naming
                // both fields.
                Error::InvalidDiagram(msg) => Error::InvalidInput(vec![format!(
                    "real_form {form} is inconsistent with the diagram: {msg}"
                )]),
                other => other,
            })?;
            let sigma = sigma_from_satake(&satake, system)?;
            notes.push(format!(
                "conjugation constructed from the {form} Satake diagram; \
                 validation passed (involutive, permutes roots, preserves the \
                 form; fixed-sublattice rank {} matches the catalog signature)",
                sigma.fixed_rank()
            ));
            Ok(sigma)
        }
        RealFormSpec::Satake(input) => {
            let satake = satake_from_parts(diagram, &input.satake.black, &input.satake.arrows)?;
            let sigma = sigma_from_satake(&satake, system)?;
            notes.push(format!(
                "conjugation constructed from user Satake data ({satake}); \
                 validation passed (involutive, permutes roots, preserves the \
                 form)"
            ));
            Ok(sigma)
        }
        RealFormSpec::Sigma(input) => {
            let sigma = involution_from_rows(input.sigma.clone(), system)?;
            notes.push(
                "user-supplied conjugation matrix validated (involutive, \
                 permutes roots, preserves the form)"
                    .into(),
            );
            Ok(sigma)
        }
    }
}

fn build_bundle(input: &BundleInput) -> Result<BundleSpec> {
    match input {
        BundleInput::Keyword(word) if word == "trivial" => Ok(BundleSpec::Trivial),
        BundleInput::Keyword(word) => Err(Error::InvalidInput(vec![format!(
            "unknown bundle keyword `{word}` (expected \"trivial\", a \
             line_weight, or a fiber_table)"
        )])),
        BundleInput::Line(line) => Ok(BundleSpec::Line(Weight::new(line.line_weight.clone()))),
        BundleInput::Table(table) => {
            let mut map = BTreeMap::new();
            let mut errors = Vec::new();
            for entry in &table.fiber_table {
                if map.insert((entry.p, entry.q), entry.dim).is_some() {
                    errors.push(format!(
                        "fiber_table repeats the position (p,q) = ({},{})",
                        entry.p, entry.q
                    ));
                }
            }
            if errors.is_empty() {
                Ok(BundleSpec::FiberTable(map))
            } else {
                Err(Error::InvalidInput(errors))
            }
        }
    }
}
