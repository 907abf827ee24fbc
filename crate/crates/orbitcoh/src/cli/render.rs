//! Report rendering: an aligned human-readable grid or a machine-readable
//! JSON document that round-trips the full report.

use serde::{Deserialize, Serialize};

use super::pipeline::Report;
use crate::cohomology::CohomologyTable;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// Aligned text grid.
    Table,
    /// JSON mirroring the full report.
    Machine,
}

/// Renders a report; output is deterministic for a fixed report.
pub fn render_report(report: &Report, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Machine => {
            let mut out = serde_json::to_string_pretty(report)?;
            out.push('\n');
            Ok(out)
        }
        OutputFormat::Table => Ok(render_human(report)),
    }
}

/// Parses a machine-format document back into a report.
pub fn parse_report(document: &str) -> Result<Report> {
    Ok(serde_json::from_str(document)?)
}

fn render_human(report: &Report) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: &str| {
        out.push_str(line);
        out.push('\n');
    };

    push(
        &mut out,
        &format!("{} {}", report.engine.name, report.engine.version),
    );
    push(
        &mut out,
        &format!("classification: {}", report.classification.kind),
    );
    if let Some(w) = &report.classification.witness {
        push(
            &mut out,
            &format!(
                "  closure fails: ({}) + ({}) = {} lies outside the root set \
                 of q + conj(q)",
                w.a_name, w.b_name, w.sum_name
            ),
        );
    }
    for warning in &report.warnings {
        push(&mut out, &format!("note: {warning}"));
    }
    if let Some(fib) = &report.fibration {
        push(
            &mut out,
            &format!(
                "reduction: q' crossed {{{}}}; base dimension {}; fiber {} \
                 crossed {{{}}} (dimension {})",
                fib.q_prime_crossed.join(", "),
                fib.base_dim,
                fib.fiber_type,
                fib.fiber_crossed.join(", "),
                fib.fiber_dim
            ),
        );
    }
    if let Some(tables) = &report.tables {
        out.push('\n');
        out.push_str(&render_grid(
            "H^{p,q}(M, E|_M)  (minimal orbit)",
            &tables.minimal_orbit,
        ));
        out.push('\n');
        out.push_str(&render_grid(
            "H^{p,q}(X, E)  (open orbit)",
            &tables.open_orbit,
        ));
    }
    if let Some(restriction) = &report.restriction {
        out.push('\n');
        push(&mut out, "restriction report:");
        push(
            &mut out,
            &format!(
                "  ranks agree entrywise: {}",
                if restriction.ranks_agree { "yes" } else { "no" }
            ),
        );
        push(&mut out, &format!("  {}", restriction.dimension_identity));
        for line in &restriction.entry_identities {
            push(&mut out, &format!("  {line}"));
        }
        push(
            &mut out,
            &format!("  {}", restriction.restriction_statement),
        );
    }
    out
}

fn render_grid(title: &str, table: &CohomologyTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{title}  [mode: {}, bundle: {}]\n",
        table.mode, table.bundle
    ));
    let width = table
        .entries
        .iter()
        .map(|e| e.rank.to_string().len())
        .max()
        .unwrap_or(1)
        .max(table.p_max.to_string().len())
        .max(3);
    out.push_str(&format!("{:>width$}", "q\\p", width = width + 2));
    for p in 0..=table.p_max {
        out.push_str(&format!("{p:>width$}", width = width + 2));
    }
    out.push('\n');
    for q in (0..=table.q_max).rev() {
        out.push_str(&format!("{q:>width$}", width = width + 2));
        for p in 0..=table.p_max {
            out.push_str(&format!(
                "{:>width$}",
                table.rank_at(p, q),
                width = width + 2
            ));
        }
        out.push('\n');
    }
    for annotation in &table.annotations {
        out.push_str(&format!("  - {annotation}\n"));
    }
    out
}
