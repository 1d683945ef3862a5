//! Serialization: DOT for digraphs, a JSON digraph dump, and the CSV record
//! table. All outputs are byte-stable for fixed inputs: arcs and vertex
//! lists are emitted sorted, JSON objects keep declared field order.

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::harness::InstanceRecord;

/// JSON digraph dump `{vertex_count, labels, arcs}` with arcs sorted
/// lexicographically. `labels` holds `[element, fiber]` pairs for Bi-Cayley
/// digraphs and is `null` for unlabeled ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphDump {
    pub vertex_count: usize,
    pub labels: Option<Vec<(usize, u8)>>,
    pub arcs: Vec<(usize, usize)>,
}

impl DigraphDump {
    pub fn of(x: &Digraph) -> Self {
        DigraphDump {
            vertex_count: x.vertex_count(),
            labels: x
                .labels()
                .map(|ls| ls.iter().map(|l| (l.element, l.fiber)).collect()),
            arcs: x.arcs(),
        }
    }
}

pub fn digraph_json(x: &Digraph) -> String {
    serde_json::to_string_pretty(&DigraphDump::of(x)).expect("dump serializes")
}

pub fn parse_digraph_json(text: &str) -> Result<DigraphDump> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad digraph JSON: {e}")))
}

/// DOT export. Bi-Cayley vertices are named `g0_<g>` / `g1_<g>` with the
/// fiber encoded as the node shape (circle for fiber 0, box for fiber 1);
/// unlabeled vertices fall back to `v<i>`.
pub fn digraph_dot(x: &Digraph) -> String {
    let name = |v: usize| match x.labels() {
        Some(labels) => format!("g{}_{}", labels[v].fiber, labels[v].element),
        None => format!("v{v}"),
    };
    let mut out = String::from("digraph bicayley {\n");
    for v in 0..x.vertex_count() {
        let shape = match x.labels() {
            Some(labels) if labels[v].fiber == 1 => "box",
            Some(_) => "circle",
            None => "circle",
        };
        out.push_str(&format!("  {} [shape={}];\n", name(v), shape));
    }
    for (u, v) in x.arcs() {
        out.push_str(&format!("  {} -> {};\n", name(u), name(v)));
    }
    out.push_str("}\n");
    out
}

/// Fixed CSV column order for instance records. Timings are deliberately
/// not part of the CSV so repeated seeded sweeps are byte-identical.
pub const CSV_COLUMNS: [&str; 18] = [
    "group",
    "t0",
    "t1",
    "strongly_connected",
    "shape_exclusion",
    "theorem_applicable",
    "delta_plus",
    "delta_minus",
    "delta",
    "predicted_kappa",
    "predicted_lambda",
    "predicted_delta",
    "kappa",
    "lambda",
    "algebraic_super_lambda",
    "oracle_super_lambda",
    "witness_condition",
    "falsification",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

fn ids_field(ids: &[usize]) -> String {
    ids.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt_field<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn record_csv_row(record: &InstanceRecord) -> String {
    let oracle = match (record.theorem_applicable(), record.oracle_super_lambda) {
        (_, Some(v)) => v.to_string(),
        (true, None) => "unconfirmed".to_string(),
        (false, None) => String::new(),
    };
    [
        record.group_label.clone(),
        ids_field(&record.t0),
        ids_field(&record.t1),
        record.applicability.strongly_connected.to_string(),
        record.applicability.shape_exclusion.to_string(),
        record.applicability.theorem_applicable.to_string(),
        opt_field(&record.delta_plus),
        opt_field(&record.delta_minus),
        opt_field(&record.delta),
        opt_field(&record.predicted_kappa),
        opt_field(&record.predicted_lambda),
        opt_field(&record.predicted_delta),
        opt_field(&record.computed_kappa),
        opt_field(&record.computed_lambda),
        opt_field(&record.algebraic_super_lambda),
        oracle,
        record
            .witness
            .as_ref()
            .map(|w| w.condition.tag().to_string())
            .unwrap_or_default(),
        (!record.falsifications.is_empty()).to_string(),
    ]
    .join(",")
}

pub fn records_csv(records: &[InstanceRecord]) -> String {
    let mut out = csv_header();
    out.push('\n');
    for record in records {
        out.push_str(&record_csv_row(record));
        out.push('\n');
    }
    out
}
