//! Rendering of result documents in the three output formats.

use std::path::Path;

use crate::{CliError, Format};
use tripack::rat::{approx, parse_rat};
use tripack::report::{CheckStatus, CsvRow, ResultDocument, CSV_HEADER};

/// A rational string annotated with a 6-decimal approximation for humans.
fn with_approx(s: &str) -> String {
    match parse_rat(s) {
        Ok(r) if s.contains('/') => format!("{s} (~{:.6})", approx(&r)),
        _ => s.to_string(),
    }
}

pub fn render(doc: &ResultDocument, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => serde_json::to_string_pretty(doc)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Internal(format!("json encoding failed: {e}"))),
        Format::Csv => {
            let row = document_row(doc);
            Ok(format!("{CSV_HEADER}\n{}\n", row.to_line()))
        }
        Format::Text => Ok(render_text(doc)),
    }
}

pub fn document_row(doc: &ResultDocument) -> CsvRow {
    let status = if doc.any_failed() { "failed" } else { "ok" };
    let ratio = |num: &Option<String>, den: &Option<String>| -> Option<String> {
        let n = parse_rat(num.as_deref()?).ok()?;
        let d = parse_rat(den.as_deref()?).ok()?;
        if d == tripack::rat::rat_int(0) {
            return None;
        }
        Some(tripack::rat::format_rat(&(n / d)))
    };
    let nu = doc.nu_t.as_ref();
    let tau = doc.tau_t.as_ref();
    let nu_val = nu.map(|q| q.value.clone());
    let tau_val = tau.map(|q| q.value.clone());
    let rounded = doc.rounding.as_ref().map(|r| r.weight.clone());
    let nu_exact = nu.map(|q| q.is_exact()).unwrap_or(false);
    let tau_exact = tau.map(|q| q.is_exact()).unwrap_or(false);
    CsvRow {
        instance: doc.instance.source.clone(),
        n: doc.instance.vertices,
        nu_t: nu_val.clone(),
        nu_t_exact: nu_exact,
        tau_t: tau_val.clone(),
        tau_t_exact: tau_exact,
        nu_star: doc.nu_star.clone(),
        rounded_weight: rounded.clone(),
        // ratios only from exact values; incomplete bounds never feed them
        ratio_tau_nu: if nu_exact && tau_exact {
            ratio(&tau_val, &nu_val)
        } else {
            None
        },
        ratio_rounded_nu_star: ratio(&rounded, &doc.nu_star),
        status: status.to_string(),
    }
}

fn render_text(doc: &ResultDocument) -> String {
    let mut out = String::new();
    let i = &doc.instance;
    out.push_str(&format!(
        "instance: {} (n={}, arcs={}, triangles={}{})\n",
        i.source,
        i.vertices,
        i.arcs,
        i.triangles,
        if i.tournament { ", tournament" } else { "" }
    ));
    if let Some(q) = &doc.nu_t {
        let note = match &q.lp_bound {
            Some(b) => format!("incomplete, lp bound {}", with_approx(b)),
            None => "exact".to_string(),
        };
        out.push_str(&format!("nu_t        = {} ({note})\n", q.value));
    }
    if let Some(q) = &doc.tau_t {
        let note = match &q.lp_bound {
            Some(b) => format!("incomplete, lp bound {}", with_approx(b)),
            None => "exact".to_string(),
        };
        out.push_str(&format!("tau_t       = {} ({note})\n", with_approx(&q.value)));
    }
    if let Some(v) = &doc.nu_star {
        out.push_str(&format!("nu_star     = {}\n", with_approx(v)));
    }
    if let Some(r) = &doc.rounding {
        out.push_str(&format!(
            "rounding    = {} mode, cover of {} arcs, weight {} vs bound {}{}\n",
            r.mode,
            r.cover.len(),
            with_approx(&r.weight),
            with_approx(&r.bound),
            match r.samples {
                Some(k) => format!(", best of {k} samples"),
                None => String::new(),
            }
        ));
        if let Some(p) = &r.partition {
            out.push_str(&format!(
                "              partition {p}, choice {}\n",
                r.choice.as_deref().unwrap_or("-")
            ));
        }
        if !r.peeled.is_empty() {
            let arcs: Vec<String> = r
                .peeled
                .iter()
                .map(|a| format!("{}->{}", a.tail, a.head))
                .collect();
            out.push_str(&format!("              peeled: {}\n", arcs.join(" ")));
        }
    }
    if !doc.checks.is_empty() {
        out.push_str("checks:\n");
        for c in &doc.checks {
            let tag = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
                CheckStatus::Logged => "note",
            };
            out.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.detail));
        }
    }
    if let Some(t) = &doc.timings_ms {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
        out.push_str(&format!("timings: {}\n", parts.join(" ")));
    }
    out
}

/// Writes to the path when given, otherwise to stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
