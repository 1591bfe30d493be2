//! Structured result documents and the CSV row schema shared by the CLI
//! commands. Rationals appear as `p/q` strings in lowest terms, never as
//! floats; every reported value carries its provenance, and no inequality
//! in the checklist is marked pass on the strength of an incomplete
//! bound.

use std::collections::BTreeMap;

use crate::digraph::{ArcId, Digraph, Triangle};
use serde::Serialize;

pub const RESULT_SCHEMA: &str = "tripack-result-v1";
pub const CSV_SCHEMA: &str = "tripack-csv-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Exact,
    IncompleteBound,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    /// A noteworthy observation that is not a failure (the 3/2 conjecture
    /// probe records hits this way).
    Logged,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }
}

/// A value with its provenance; incomplete values carry the open LP bound.
#[derive(Debug, Clone, Serialize)]
pub struct Quantity {
    pub value: String,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_bound: Option<String>,
}

impl Quantity {
    pub fn exact(value: impl ToString) -> Quantity {
        Quantity {
            value: value.to_string(),
            provenance: Provenance::Exact,
            lp_bound: None,
        }
    }

    pub fn incomplete(value: impl ToString, lp_bound: impl ToString) -> Quantity {
        Quantity {
            value: value.to_string(),
            provenance: Provenance::IncompleteBound,
            lp_bound: Some(lp_bound.to_string()),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.provenance == Provenance::Exact
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ArcRef {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
}

pub fn arc_ref(g: &Digraph, id: ArcId) -> ArcRef {
    let a = g.arc(id).expect("arc in digraph");
    ArcRef {
        id: id.0,
        tail: a.tail,
        head: a.head,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleRef {
    pub arcs: [usize; 3],
    pub vertices: [usize; 3],
}

pub fn triangle_ref(g: &Digraph, t: &Triangle) -> TriangleRef {
    TriangleRef {
        arcs: t.arcs().map(|a| a.0),
        vertices: t.vertices(g),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValuedArc {
    #[serde(flatten)]
    pub arc: ArcRef,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValuedTriangle {
    #[serde(flatten)]
    pub triangle: TriangleRef,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInfo {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    pub vertices: usize,
    pub arcs: usize,
    pub triangles: usize,
    pub tournament: bool,
}

impl InstanceInfo {
    pub fn describe(g: &Digraph, source: impl Into<String>) -> InstanceInfo {
        InstanceInfo {
            source: source.into(),
            sha256: None,
            vertices: g.vertex_count(),
            arcs: g.arc_count(),
            triangles: g.enumerate_triangles().len(),
            tournament: g.is_tournament(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundingReport {
    pub mode: String,
    pub peeled: Vec<ArcRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choice: Option<String>,
    pub cover: Vec<ArcRef>,
    pub weight: String,
    /// 9/5 times the fractional optimum of the whole instance.
    pub bound: String,
    pub within_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub schema: String,
    pub instance: InstanceInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_t: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_t: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_star: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_star: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_witness: Option<Vec<TriangleRef>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_witness: Option<Vec<ArcRef>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packing_support: Option<Vec<ValuedTriangle>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_support: Option<Vec<ValuedArc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounding: Option<RoundingReport>,
    pub checks: Vec<Check>,
    /// Wall-clock phase timings; omitted from file output unless
    /// explicitly requested, so identical runs write identical bytes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl ResultDocument {
    pub fn new(instance: InstanceInfo) -> ResultDocument {
        ResultDocument {
            schema: RESULT_SCHEMA.into(),
            instance,
            nu_t: None,
            tau_t: None,
            nu_star: None,
            tau_star: None,
            nu_witness: None,
            tau_witness: None,
            packing_support: None,
            cover_support: None,
            rounding: None,
            checks: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

/// One experiment row. Incomplete values keep their column but flip the
/// matching `*_exact` flag to false, and ratios derived from them stay
/// empty.
#[derive(Debug, Clone, Default)]
pub struct CsvRow {
    pub instance: String,
    pub n: usize,
    pub nu_t: Option<String>,
    pub nu_t_exact: bool,
    pub tau_t: Option<String>,
    pub tau_t_exact: bool,
    pub nu_star: Option<String>,
    pub rounded_weight: Option<String>,
    pub ratio_tau_nu: Option<String>,
    pub ratio_rounded_nu_star: Option<String>,
    pub status: String,
}

pub const CSV_HEADER: &str = "instance,n,nu_t,nu_t_exact,tau_t,tau_t_exact,nu_star,rounded_weight,ratio_tau_nu,ratio_rounded_nu_star,status,schema";

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl CsvRow {
    pub fn to_line(&self) -> String {
        let opt = |v: &Option<String>| v.as_deref().unwrap_or("").to_string();
        [
            csv_field(&self.instance),
            self.n.to_string(),
            opt(&self.nu_t),
            self.nu_t_exact.to_string(),
            opt(&self.tau_t),
            self.tau_t_exact.to_string(),
            opt(&self.nu_star),
            opt(&self.rounded_weight),
            opt(&self.ratio_tau_nu),
            opt(&self.ratio_rounded_nu_star),
            csv_field(&self.status),
            CSV_SCHEMA.to_string(),
        ]
        .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::GraphMode;

    #[test]
    fn quantity_provenance_round_trip() {
        let q = Quantity::exact(3);
        assert!(q.is_exact());
        let q = Quantity::incomplete("2", "5/2");
        assert!(!q.is_exact());
        assert_eq!(q.lp_bound.as_deref(), Some("5/2"));
    }

    #[test]
    fn csv_rows_escape_fields() {
        let row = CsvRow {
            instance: "file with, comma".into(),
            n: 5,
            status: "ok".into(),
            ..CsvRow::default()
        };
        let line = row.to_line();
        assert!(line.starts_with("\"file with, comma\",5,"));
        assert!(line.ends_with(&format!("ok,{CSV_SCHEMA}")));
        assert_eq!(
            line.split(',').count() - 1,
            CSV_HEADER.split(',').count(),
            "quoted comma adds one raw comma"
        );
    }

    #[test]
    fn document_failure_detection() {
        let g = crate::generators::gen_carousel5();
        let mut doc = ResultDocument::new(InstanceInfo::describe(&g, "carousel5"));
        doc.checks
            .push(Check::new("x", CheckStatus::Pass, "fine"));
        doc.checks
            .push(Check::new("y", CheckStatus::Logged, "noted"));
        assert!(!doc.any_failed());
        doc.checks.push(Check::new("z", CheckStatus::Fail, "bad"));
        assert!(doc.any_failed());
    }

    #[test]
    fn instance_info_counts() {
        let mut g = Digraph::new(2, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 0).unwrap();
        let info = InstanceInfo::describe(&g, "bigon");
        assert_eq!(
            (info.vertices, info.arcs, info.triangles, info.tournament),
            (2, 2, 0, false)
        );
    }
}
