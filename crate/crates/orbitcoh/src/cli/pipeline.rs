//! Orchestration: from a validated spec to a full report.

use serde::{Deserialize, Serialize};

use super::input::{resolve, ProblemSpec};
use crate::cohomology::{
    minimal_orbit_table, open_orbit_table, restriction_report, CohomologyTable,
    RestrictionReport,
};
use crate::error::Result;
use crate::parabolic::{
    classify_orbit, effectiveness_check, fundamental_reduction, OrbitKind,
};

/// Names of the built-in example configurations.
pub const EXAMPLE_NAMES: [&str; 3] = ["su13-flag", "split-borel", "compact-borel"];

/// Returns the input document of a built-in example.
pub fn example_document(name: &str) -> Option<&'static str> {
    match name {
        "su13-flag" => Some(include_str!("../../data/su13-flag.json")),
        "split-borel" => Some(include_str!("../../data/split-borel.json")),
        "compact-borel" => Some(include_str!("../../data/compact-borel.json")),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Root coordinates of the closure-violating pair.
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub a_name: String,
    pub b_name: String,
    pub sum_name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// `totally_real`, `levi_flat`, or `generic`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub q_prime_crossed: Vec<String>,
    pub base_dim: usize,
    pub fiber_type: String,
    pub fiber_nodes: Vec<String>,
    pub fiber_crossed: Vec<String>,
    pub fiber_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TablesReport {
    pub minimal_orbit: CohomologyTable,
    pub open_orbit: CohomologyTable,
}

/// The full machine-readable result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine: EngineInfo,
    pub input: ProblemSpec,
    pub warnings: Vec<String>,
    pub classification: ClassificationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibration: Option<FibrationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<TablesReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<RestrictionReport>,
}

impl Report {
    pub fn is_generic(&self) -> bool {
        self.classification.kind == "generic"
    }
}

fn engine_info() -> EngineInfo {
    EngineInfo {
        name: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
    }
}

/// Runs the full pipeline: classification always; reduction, tables, and the
/// restriction report exactly when the orbit is totally real or Levi-flat.
pub fn run_pipeline(spec: &ProblemSpec) -> Result<Report> {
    run(spec, true)
}

/// Classification (and warnings) only.
pub fn run_classification(spec: &ProblemSpec) -> Result<Report> {
    run(spec, false)
}

fn run(spec: &ProblemSpec, with_tables: bool) -> Result<Report> {
    let resolved = resolve(spec)?;
    let system = &resolved.system;

    let mut warnings = effectiveness_check(&resolved.q);
    warnings.extend(resolved.notes.iter().cloned());

    let classification = classify_orbit(&resolved.q, &resolved.sigma)?;
    let classification_report = ClassificationReport {
        kind: classification.kind.to_string(),
        witness: classification.witness.as_ref().map(|(a, b)| WitnessReport {
            a: a.coords().to_vec(),
            b: b.coords().to_vec(),
            a_name: system.root_name(a),
            b_name: system.root_name(b),
            sum_name: system.root_name(&a.plus(b)),
        }),
    };

    let mut report = Report {
        schema_version: spec.schema_version,
        engine: engine_info(),
        input: spec.clone(),
        warnings,
        classification: classification_report,
        fibration: None,
        tables: None,
        restriction: None,
    };

    if classification.kind == OrbitKind::Generic || !with_tables {
        return Ok(report);
    }

    let fib = fundamental_reduction(&resolved.q, &resolved.sigma)?;
    let fiber_diagram = fib.fiber().diagram();
    report.fibration = Some(FibrationReport {
        q_prime_crossed: fib.q_prime().crossed_names(),
        base_dim: fib.base_dim(),
        fiber_type: fiber_diagram.type_name(),
        fiber_nodes: fiber_diagram.nodes().to_vec(),
        fiber_crossed: fib
            .fiber()
            .crossed()
            .iter()
            .map(|&i| fiber_diagram.nodes()[i].clone())
            .collect(),
        fiber_dim: fib.fiber_dim(),
    });

    let minimal = minimal_orbit_table(
        &fib,
        &resolved.bundle,
        resolved.p_max,
        resolved.q_max,
        resolved.mode,
    )?;
    let open = open_orbit_table(
        &fib,
        &resolved.bundle,
        resolved.p_max,
        resolved.q_max,
        resolved.mode,
    )?;
    report.restriction = Some(restriction_report(&minimal, &open)?);
    report.tables = Some(TablesReport {
        minimal_orbit: minimal,
        open_orbit: open,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::input::parse_input;
    use crate::cohomology::{DENSITY_ANNOTATION, TENSOR_IDENTITY_ANNOTATION};
    use crate::error::Error;

    #[test]
    fn su13_flag_pipeline() {
        let spec = parse_input(example_document("su13-flag").unwrap()).unwrap();
        let report = run_pipeline(&spec).unwrap();
        assert_eq!(report.classification.kind, "levi_flat");
        let fib = report.fibration.as_ref().unwrap();
        assert_eq!(fib.q_prime_crossed, vec!["a1", "a3"]);
        assert_eq!(fib.base_dim, 5);
        assert_eq!(fib.fiber_type, "A1");
        assert_eq!(fib.fiber_dim, 1);
        let tables = report.tables.as_ref().unwrap();
        for p in 0..=3 {
            for q in 0..=3 {
                let expected = u64::from(p == q && p <= 1);
                assert_eq!(tables.minimal_orbit.rank_at(p, q), expected);
                assert_eq!(tables.open_orbit.rank_at(p, q), expected);
            }
        }
        assert!(tables
            .minimal_orbit
            .annotations
            .iter()
            .any(|a| a == TENSOR_IDENTITY_ANNOTATION));
        assert!(report.restriction.is_some());
    }

    #[test]
    fn split_borel_pipeline_is_totally_real() {
        let spec = parse_input(example_document("split-borel").unwrap()).unwrap();
        let report = run_pipeline(&spec).unwrap();
        assert_eq!(report.classification.kind, "totally_real");
        let tables = report.tables.as_ref().unwrap();
        assert_eq!(tables.minimal_orbit.rank_at(0, 0), 1);
        let nonzero: u64 = tables
            .minimal_orbit
            .entries
            .iter()
            .map(|e| e.rank)
            .sum();
        assert_eq!(nonzero, 1);
        assert!(tables
            .minimal_orbit
            .annotations
            .iter()
            .any(|a| a == DENSITY_ANNOTATION));
    }

    #[test]
    fn generic_input_reports_without_tables() {
        let doc = r#"{
            "schema_version": 1,
            "diagram": "A3",
            "real_form": {"family": "su", "p": 2, "q": 2},
            "crossed": ["a1"],
            "p_max": 3, "q_max": 3
        }"#;
        let spec = parse_input(doc).unwrap();
        let report = run_pipeline(&spec).unwrap();
        assert!(report.is_generic());
        assert!(report.tables.is_none());
        assert!(report.fibration.is_none());
        let witness = report.classification.witness.as_ref().unwrap();
        assert_eq!(witness.a, vec![-1, -1, 0]);
        assert_eq!(witness.b, vec![0, 0, -1]);
        assert_eq!(witness.sum_name, "-a1-a2-a3");
    }

    #[test]
    fn classification_only_run_omits_tables() {
        let spec = parse_input(example_document("su13-flag").unwrap()).unwrap();
        let report = run_classification(&spec).unwrap();
        assert_eq!(report.classification.kind, "levi_flat");
        assert!(report.tables.is_none());
    }

    #[test]
    fn effectiveness_warning_propagates() {
        let doc = r#"{
            "schema_version": 1,
            "diagram": {
                "nodes": ["a1", "a2"],
                "edges": []
            },
            "real_form": {"family": "split"},
            "crossed": ["a1"],
            "p_max": 1, "q_max": 1
        }"#;
        let spec = parse_input(doc).unwrap();
        let report = run_pipeline(&spec).unwrap();
        assert!(report
            .warnings
            .iter()
            .any(|w| w.contains("a2") && w.contains("no crossed node")));
    }

    #[test]
    fn unknown_example_name() {
        assert!(example_document("su99").is_none());
    }

    #[test]
    fn line_bundle_with_positive_pmax_is_unsupported() {
        let doc = r#"{
            "schema_version": 1,
            "diagram": "A3",
            "real_form": {"family": "su", "p": 1, "q": 3},
            "crossed": ["a1", "a2", "a3"],
            "bundle": {"line_weight": [2]},
            "p_max": 2, "q_max": 1
        }"#;
        let spec = parse_input(doc).unwrap();
        match run_pipeline(&spec) {
            Err(e @ Error::Unsupported(_)) => assert_eq!(e.exit_code(), 3),
            other => panic!("expected unsupported, got {other:?}"),
        }
    }
}
