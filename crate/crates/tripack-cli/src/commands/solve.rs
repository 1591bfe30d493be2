use std::path::Path;

use crate::commands::{load_instance, Phases};
use crate::{output, CliError, Format, SolveMode};
use num_traits::One;
use tripack::exact::{solve_nu_t, solve_tau_t, Solved};
use tripack::lpcore::{certify_duality, check_complementary_slackness, LpCertificate};
use tripack::rat::{format_rat, rat, rat_usize, Rat};
use tripack::report::{
    arc_ref, triangle_ref, Check, CheckStatus, InstanceInfo, Quantity, ResultDocument, ValuedArc,
    ValuedTriangle,
};
use tripack::Digraph;

pub fn run(
    input: &Path,
    mode: SolveMode,
    budget: u64,
    format: Format,
    out: Option<&Path>,
    timings: bool,
) -> Result<i32, CliError> {
    let mut phases = Phases::new();
    let (g, sha) = load_instance(input)?;
    phases.mark("parse");
    let mut doc = build_document(
        &g,
        input.display().to_string(),
        mode,
        budget,
        Some(&mut phases),
    )?;
    doc.instance.sha256 = Some(sha);
    if timings {
        doc.timings_ms = Some(phases.into_map());
    }
    let code = if doc.any_failed() { 1 } else { 0 };
    let rendered = output::render(&doc, format)?;
    output::emit(&rendered, out)?;
    Ok(code)
}

/// Solves according to `mode` and assembles the document with the
/// inequality checklist. Checks that would need an incomplete value are
/// marked skipped, never passed.
pub fn build_document(
    g: &Digraph,
    source: String,
    mode: SolveMode,
    budget: u64,
    mut phases: Option<&mut Phases>,
) -> Result<ResultDocument, CliError> {
    let mut doc = ResultDocument::new(InstanceInfo::describe(g, source));

    let cert: Option<LpCertificate> = if mode != SolveMode::Exact {
        let cert = certify_duality(g).map_err(|e| CliError::Internal(e.to_string()))?;
        let cs = check_complementary_slackness(g, &cert.packing, &cert.cover)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        if !cs.is_empty() {
            return Err(CliError::Internal(
                "optimal LP pair violates complementary slackness".into(),
            ));
        }
        doc.nu_star = Some(format_rat(&cert.value));
        doc.tau_star = Some(format_rat(&cert.value));
        doc.packing_support = Some(
            cert.packing
                .support()
                .map(|(t, v)| ValuedTriangle {
                    triangle: triangle_ref(g, t),
                    value: format_rat(v),
                })
                .collect(),
        );
        doc.cover_support = Some(
            cert.cover
                .support()
                .map(|(a, v)| ValuedArc {
                    arc: arc_ref(g, *a),
                    value: format_rat(v),
                })
                .collect(),
        );
        doc.checks.push(Check::new(
            "duality_nu_star_eq_tau_star",
            CheckStatus::Pass,
            format!("both optima equal {}", format_rat(&cert.value)),
        ));
        doc.checks.push(Check::new(
            "complementary_slackness",
            CheckStatus::Pass,
            "optimal pair certified",
        ));
        if let Some(p) = phases.as_deref_mut() {
            p.mark("lp");
        }
        Some(cert)
    } else {
        None
    };

    let exact: Option<(Solved<_>, Solved<_>)> = if mode != SolveMode::Lp {
        let nu = solve_nu_t(g, Some(budget));
        let tau = solve_tau_t(g, Some(budget));
        doc.nu_t = Some(match &nu {
            Solved::Optimal(p) => Quantity::exact(p.len()),
            Solved::Incomplete { best, lp_bound } => {
                Quantity::incomplete(best.len(), format_rat(lp_bound))
            }
        });
        doc.tau_t = Some(match &tau {
            Solved::Optimal(c) => Quantity::exact(format_rat(c.weight())),
            Solved::Incomplete { best, lp_bound } => {
                Quantity::incomplete(format_rat(best.weight()), format_rat(lp_bound))
            }
        });
        doc.nu_witness = Some(
            nu.best()
                .triangles()
                .map(|t| triangle_ref(g, t))
                .collect(),
        );
        doc.tau_witness = Some(nu_tau_witness(g, tau.best()));
        if let Some(p) = phases.as_deref_mut() {
            p.mark("exact");
        }
        Some((nu, tau))
    } else {
        None
    };

    push_inequality_checks(&mut doc, cert.as_ref(), exact.as_ref());
    Ok(doc)
}

fn nu_tau_witness(g: &Digraph, cover: &tripack::CoverSet) -> Vec<tripack::report::ArcRef> {
    cover.arcs().iter().map(|a| arc_ref(g, *a)).collect()
}

fn push_inequality_checks(
    doc: &mut ResultDocument,
    cert: Option<&LpCertificate>,
    exact: Option<&(
        Solved<tripack::exact::IntegralPacking>,
        Solved<tripack::CoverSet>,
    )>,
) {
    let skip = |reason: &str| (CheckStatus::Skipped, reason.to_string());

    let nu: Option<usize> = exact.and_then(|(nu, _)| match nu {
        Solved::Optimal(p) => Some(p.len()),
        Solved::Incomplete { .. } => None,
    });
    let tau: Option<Rat> = exact.and_then(|(_, tau)| match tau {
        Solved::Optimal(c) => Some(c.weight().clone()),
        Solved::Incomplete { .. } => None,
    });

    let (status, detail) = match (cert, exact) {
        (Some(cert), Some(_)) => match nu {
            Some(nu) => {
                if rat_usize(nu) <= cert.value {
                    (
                        CheckStatus::Pass,
                        format!("{} <= {}", nu, format_rat(&cert.value)),
                    )
                } else {
                    (
                        CheckStatus::Fail,
                        format!("{} > {}", nu, format_rat(&cert.value)),
                    )
                }
            }
            None => skip("nu_t incomplete at budget"),
        },
        _ => skip("needs both exact and lp modes"),
    };
    doc.checks
        .push(Check::new("nu_le_nu_star", status, detail));

    let (status, detail) = match (cert, exact) {
        (Some(cert), Some(_)) => match &tau {
            Some(tau) => {
                if cert.value <= *tau {
                    (
                        CheckStatus::Pass,
                        format!("{} <= {}", format_rat(&cert.value), format_rat(tau)),
                    )
                } else {
                    (
                        CheckStatus::Fail,
                        format!("{} > {}", format_rat(&cert.value), format_rat(tau)),
                    )
                }
            }
            None => skip("tau_t incomplete at budget"),
        },
        _ => skip("needs both exact and lp modes"),
    };
    doc.checks
        .push(Check::new("nu_star_le_tau", status, detail));

    // tau <= 2 nu - 1, proven for nu >= 1
    let (status, detail) = match (&nu, &tau) {
        (Some(nu), Some(tau)) if *nu >= 1 => {
            let bound = rat(2, 1) * rat_usize(*nu) - Rat::one();
            if *tau <= bound {
                (
                    CheckStatus::Pass,
                    format!("{} <= 2*{} - 1", format_rat(tau), nu),
                )
            } else {
                (
                    CheckStatus::Fail,
                    format!("{} > 2*{} - 1", format_rat(tau), nu),
                )
            }
        }
        (Some(0), Some(_)) => skip("vacuous at nu_t = 0"),
        _ => skip("needs complete exact values"),
    };
    doc.checks
        .push(Check::new("tau_le_2nu_minus_1", status, detail));

    // the open 3/2 conjecture: a hit is logged, never failed
    let (status, detail) = match (&nu, &tau) {
        (Some(nu), Some(tau)) if *nu >= 1 => {
            let ratio = tau / rat_usize(*nu);
            if ratio <= rat(3, 2) {
                (
                    CheckStatus::Pass,
                    format!("ratio {} <= 3/2", format_rat(&ratio)),
                )
            } else {
                (
                    CheckStatus::Logged,
                    format!("ratio {} exceeds 3/2", format_rat(&ratio)),
                )
            }
        }
        (Some(0), Some(_)) => skip("vacuous at nu_t = 0"),
        _ => skip("needs complete exact values"),
    };
    doc.checks
        .push(Check::new("conjecture_tau_le_3_2_nu", status, detail));
}
