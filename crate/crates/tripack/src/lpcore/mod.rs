//! Exact fractional triangle packing and covering.
//!
//! Both linear programs are solved explicitly by the in-house rational
//! simplex; agreement of the two optima is the duality self-check, and
//! complementary slackness of a primal/dual pair is verified rather than
//! assumed. Feasibility of every packing and cover is enforced at
//! construction, so a solver bug cannot leak an invalid witness.

mod simplex;

use std::collections::{BTreeMap, BTreeSet};

use crate::digraph::{ArcId, Digraph, Triangle};
use crate::rat::{format_rat, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use simplex::{Constraint, LinearProgram, Relation, Sense};

#[derive(Debug, Error)]
pub enum LpError {
    #[error("negative packing value on triangle {0}")]
    NegativePackingValue(Triangle),
    #[error("packing uses triangle {0} which is not in the digraph")]
    UnknownTriangle(Triangle),
    #[error("packing overloads arc {arc}: load {load} exceeds weight {weight}")]
    ArcOverloaded {
        arc: ArcId,
        load: String,
        weight: String,
    },
    #[error("cover value {value} for arc {arc} lies outside [0, 1]")]
    CoverValueOutOfRange { arc: ArcId, value: String },
    #[error("cover leaves triangle {triangle} below 1: sum {sum}")]
    TriangleUncovered { triangle: Triangle, sum: String },
    #[error("unknown arc id {0}")]
    UnknownArc(ArcId),
    #[error("solver disagreement: packing weight {packing} vs cover weight {cover}")]
    DualityMismatch { packing: String, cover: String },
}

fn validate_packing(
    g: &Digraph,
    values: &BTreeMap<Triangle, Rat>,
) -> Result<Rat, LpError> {
    let known: BTreeSet<Triangle> = g.enumerate_triangles().into_iter().collect();
    let mut weight = Rat::zero();
    let mut loads: BTreeMap<ArcId, Rat> = BTreeMap::new();
    for (t, v) in values {
        if v.is_negative() {
            return Err(LpError::NegativePackingValue(*t));
        }
        if !known.contains(t) {
            return Err(LpError::UnknownTriangle(*t));
        }
        weight += v;
        for arc in t.arcs() {
            *loads.entry(arc).or_insert_with(Rat::zero) += v;
        }
    }
    for (arc, load) in &loads {
        let w = g.arc(*arc).map(|a| &a.weight).ok_or(LpError::UnknownArc(*arc))?;
        if load > w {
            return Err(LpError::ArcOverloaded {
                arc: *arc,
                load: format_rat(load),
                weight: format_rat(w),
            });
        }
    }
    Ok(weight)
}

fn validate_cover(g: &Digraph, values: &BTreeMap<ArcId, Rat>) -> Result<Rat, LpError> {
    let mut weight = Rat::zero();
    for (arc, v) in values {
        let a = g.arc(*arc).ok_or(LpError::UnknownArc(*arc))?;
        if v.is_negative() || *v > Rat::one() {
            return Err(LpError::CoverValueOutOfRange {
                arc: *arc,
                value: format_rat(v),
            });
        }
        weight += &a.weight * v;
    }
    let zero = Rat::zero();
    for t in g.enumerate_triangles() {
        let sum: Rat = t
            .arcs()
            .iter()
            .map(|a| values.get(a).unwrap_or(&zero))
            .sum();
        if sum < Rat::one() {
            return Err(LpError::TriangleUncovered {
                triangle: t,
                sum: format_rat(&sum),
            });
        }
    }
    Ok(weight)
}

/// A feasible fractional triangle packing: one nonnegative value per
/// triangle, loading no arc beyond its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalPacking {
    values: BTreeMap<Triangle, Rat>,
    weight: Rat,
}

impl FractionalPacking {
    /// Validates feasibility against `g`; zero entries are dropped.
    pub fn new(g: &Digraph, mut values: BTreeMap<Triangle, Rat>) -> Result<Self, LpError> {
        values.retain(|_, v| !v.is_zero());
        let weight = validate_packing(g, &values)?;
        Ok(FractionalPacking { values, weight })
    }

    pub fn zero() -> Self {
        FractionalPacking {
            values: BTreeMap::new(),
            weight: Rat::zero(),
        }
    }

    pub fn weight(&self) -> &Rat {
        &self.weight
    }

    pub fn value(&self, t: &Triangle) -> Rat {
        self.values.get(t).cloned().unwrap_or_else(Rat::zero)
    }

    /// Triangles with strictly positive value.
    pub fn support(&self) -> impl Iterator<Item = (&Triangle, &Rat)> {
        self.values.iter()
    }

    /// Total packing value routed through an arc.
    pub fn arc_load(&self, arc: ArcId) -> Rat {
        self.values
            .iter()
            .filter(|(t, _)| t.contains_arc(arc))
            .map(|(_, v)| v)
            .sum()
    }
}

/// A feasible fractional triangle cover: arc values in [0, 1] summing to
/// at least 1 around every triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCover {
    values: BTreeMap<ArcId, Rat>,
    weight: Rat,
}

impl FractionalCover {
    /// Validates feasibility against `g`; zero entries are dropped.
    pub fn new(g: &Digraph, mut values: BTreeMap<ArcId, Rat>) -> Result<Self, LpError> {
        values.retain(|_, v| !v.is_zero());
        let weight = validate_cover(g, &values)?;
        Ok(FractionalCover { values, weight })
    }

    pub fn zero() -> Self {
        FractionalCover {
            values: BTreeMap::new(),
            weight: Rat::zero(),
        }
    }

    pub fn weight(&self) -> &Rat {
        &self.weight
    }

    pub fn value(&self, arc: ArcId) -> Rat {
        self.values.get(&arc).cloned().unwrap_or_else(Rat::zero)
    }

    /// Arcs with strictly positive value.
    pub fn support(&self) -> impl Iterator<Item = (&ArcId, &Rat)> {
        self.values.iter()
    }

    /// Cover value summed over a triangle's arcs.
    pub fn triangle_sum(&self, t: &Triangle) -> Rat {
        t.arcs().iter().map(|a| self.value(*a)).sum()
    }
}

/// Optimal primal/dual pair with exactly equal weights. Weak duality makes
/// the equality a certificate of optimality for both sides.
#[derive(Debug, Clone)]
pub struct LpCertificate {
    pub packing: FractionalPacking,
    pub cover: FractionalCover,
    pub value: Rat,
}

/// Maximum-weight fractional triangle packing, exact.
pub fn solve_packing_lp(g: &Digraph) -> FractionalPacking {
    let triangles = g.enumerate_triangles();
    if triangles.is_empty() {
        return FractionalPacking::zero();
    }
    let mut arc_rows: BTreeMap<ArcId, Vec<usize>> = BTreeMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for arc in t.arcs() {
            arc_rows.entry(arc).or_default().push(i);
        }
    }
    let constraints = arc_rows
        .iter()
        .map(|(arc, cols)| Constraint {
            coeffs: cols.iter().map(|&c| (c, Rat::one())).collect(),
            relation: Relation::Le,
            rhs: g.arc(*arc).expect("arc from enumeration").weight.clone(),
        })
        .collect();
    let lp = LinearProgram {
        sense: Sense::Maximize,
        objective: vec![Rat::one(); triangles.len()],
        constraints,
    };
    let sol = simplex::solve(&lp).expect("packing LP is feasible (zero) and bounded (capacities)");
    let values: BTreeMap<Triangle, Rat> = triangles
        .iter()
        .zip(sol.variables.iter())
        .filter(|(_, v)| !v.is_zero())
        .map(|(t, v)| (*t, v.clone()))
        .collect();
    let packing =
        FractionalPacking::new(g, values).expect("simplex returned an infeasible packing");
    assert_eq!(
        packing.weight(),
        &sol.value,
        "packing weight disagrees with LP objective"
    );
    packing
}

/// Minimum-weight fractional triangle cover, exact.
pub fn solve_cover_lp(g: &Digraph) -> FractionalCover {
    let triangles = g.enumerate_triangles();
    if triangles.is_empty() {
        return FractionalCover::zero();
    }
    let mut cols: BTreeMap<ArcId, usize> = BTreeMap::new();
    for t in &triangles {
        for arc in t.arcs() {
            let next = cols.len();
            cols.entry(arc).or_insert(next);
        }
    }
    let arcs: Vec<ArcId> = {
        let mut v = vec![ArcId(0); cols.len()];
        for (arc, &i) in &cols {
            v[i] = *arc;
        }
        v
    };
    let constraints = triangles
        .iter()
        .map(|t| Constraint {
            coeffs: t.arcs().iter().map(|a| (cols[a], Rat::one())).collect(),
            relation: Relation::Ge,
            rhs: Rat::one(),
        })
        .collect();
    let lp = LinearProgram {
        sense: Sense::Minimize,
        objective: arcs
            .iter()
            .map(|a| g.arc(*a).expect("arc from enumeration").weight.clone())
            .collect(),
        constraints,
    };
    let sol = simplex::solve(&lp).expect("cover LP is feasible (all ones) and bounded below");
    let mut values: BTreeMap<ArcId, Rat> = BTreeMap::new();
    for (arc, v) in arcs.iter().zip(sol.variables.iter()) {
        if v.is_zero() {
            continue;
        }
        // The LP omits the redundant c(e) <= 1 rows: any optimum exceeding 1
        // does so only on weight-zero arcs, where clamping changes nothing.
        let v = if *v > Rat::one() {
            assert!(
                g.arc(*arc).expect("arc from enumeration").weight.is_zero(),
                "cover value above 1 on an arc of positive weight"
            );
            Rat::one()
        } else {
            v.clone()
        };
        values.insert(*arc, v);
    }
    let cover = FractionalCover::new(g, values).expect("simplex returned an infeasible cover");
    assert_eq!(
        cover.weight(),
        &sol.value,
        "cover weight disagrees with LP objective"
    );
    cover
}

/// Solves both LPs independently and certifies their weights equal.
/// A mismatch signals a solver bug, never a valid outcome.
pub fn certify_duality(g: &Digraph) -> Result<LpCertificate, LpError> {
    let packing = solve_packing_lp(g);
    let cover = solve_cover_lp(g);
    if packing.weight() != cover.weight() {
        return Err(LpError::DualityMismatch {
            packing: format_rat(packing.weight()),
            cover: format_rat(cover.weight()),
        });
    }
    let value = packing.weight().clone();
    Ok(LpCertificate {
        packing,
        cover,
        value,
    })
}

/// Complementary slackness violations of a feasible packing/cover pair.
/// An empty report certifies joint optimality.
#[derive(Debug, Clone, Default)]
pub struct CsReport {
    /// Arcs with positive cover value whose packing load stays below the
    /// arc weight: (arc, load, weight).
    pub unsaturated_arcs: Vec<(ArcId, Rat, Rat)>,
    /// Positively packed triangles whose cover sum differs from 1:
    /// (triangle, sum).
    pub nonunit_triangles: Vec<(Triangle, Rat)>,
}

impl CsReport {
    pub fn is_empty(&self) -> bool {
        self.unsaturated_arcs.is_empty() && self.nonunit_triangles.is_empty()
    }
}

/// Checks both slackness conditions; rejects infeasible inputs.
pub fn check_complementary_slackness(
    g: &Digraph,
    packing: &FractionalPacking,
    cover: &FractionalCover,
) -> Result<CsReport, LpError> {
    validate_packing(g, &packing.values)?;
    validate_cover(g, &cover.values)?;
    let mut report = CsReport::default();
    for (arc, value) in cover.support() {
        debug_assert!(value.is_positive());
        let load = packing.arc_load(*arc);
        let weight = &g.arc(*arc).ok_or(LpError::UnknownArc(*arc))?.weight;
        if &load < weight {
            report
                .unsaturated_arcs
                .push((*arc, load, weight.clone()));
        }
    }
    for (t, v) in packing.support() {
        debug_assert!(v.is_positive());
        let sum = cover.triangle_sum(t);
        if !sum.is_one() {
            report.nonunit_triangles.push((*t, sum));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::GraphMode;
    use crate::rat::{rat, rat_int};

    fn directed_c3() -> Digraph {
        let mut g = Digraph::new(3, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 2).unwrap();
        g.add_unit_arc(2, 0).unwrap();
        g
    }

    fn carousel() -> Digraph {
        let mut g = Digraph::new(5, GraphMode::Simple);
        for i in 0..5 {
            g.add_unit_arc(i, (i + 1) % 5).unwrap();
            g.add_unit_arc(i, (i + 2) % 5).unwrap();
        }
        g
    }

    fn bidirected_triple() -> Digraph {
        let mut g = Digraph::new(3, GraphMode::Simple);
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    g.add_unit_arc(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn c3_packs_its_single_triangle() {
        let p = solve_packing_lp(&directed_c3());
        assert_eq!(p.weight(), &Rat::one());
        assert_eq!(p.support().count(), 1);
    }

    #[test]
    fn c3_cover_weighs_one() {
        let c = solve_cover_lp(&directed_c3());
        assert_eq!(c.weight(), &Rat::one());
    }

    #[test]
    fn triangle_free_short_circuits_to_zero() {
        let mut g = Digraph::new(2, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 0).unwrap();
        assert_eq!(solve_packing_lp(&g).weight(), &Rat::zero());
        assert_eq!(solve_cover_lp(&g).weight(), &Rat::zero());
        let cert = certify_duality(&g).unwrap();
        assert_eq!(cert.value, Rat::zero());
    }

    #[test]
    fn carousel_fractional_optimum_is_five_halves() {
        // Certificate: the uniform 1/2 packing is feasible (each distance-2
        // arc lies in exactly two triangles) and the cover putting 1/2 on
        // the five distance-2 arcs has the same weight 5/2, so both are
        // optimal by weak duality.
        let g = carousel();
        let p = solve_packing_lp(&g);
        let c = solve_cover_lp(&g);
        assert_eq!(p.weight(), &rat(5, 2));
        assert_eq!(c.weight(), &rat(5, 2));
        let cert = certify_duality(&g).unwrap();
        assert_eq!(cert.value, rat(5, 2));
    }

    #[test]
    fn bidirected_triple_certifies_at_two() {
        let cert = certify_duality(&bidirected_triple()).unwrap();
        assert_eq!(cert.value, rat_int(2));
    }

    #[test]
    fn optimal_pair_has_empty_cs_report() {
        let g = carousel();
        let cert = certify_duality(&g).unwrap();
        let report = check_complementary_slackness(&g, &cert.packing, &cert.cover).unwrap();
        assert!(report.is_empty());
    }

    #[test]
    fn hand_built_carousel_certificate_is_cs_clean() {
        let g = carousel();
        let triangles = g.enumerate_triangles();
        assert_eq!(triangles.len(), 5);
        let packing = FractionalPacking::new(
            &g,
            triangles.iter().map(|t| (*t, rat(1, 2))).collect(),
        )
        .unwrap();
        // distance-2 arcs are those added second for each i, ids 1, 3, 5, 7, 9
        let cover = FractionalCover::new(
            &g,
            (0..5).map(|i| (ArcId(2 * i + 1), rat(1, 2))).collect(),
        )
        .unwrap();
        assert_eq!(packing.weight(), &rat(5, 2));
        assert_eq!(cover.weight(), &rat(5, 2));
        let report = check_complementary_slackness(&g, &packing, &cover).unwrap();
        assert!(report.is_empty());
    }

    #[test]
    fn unsaturated_covered_arc_is_reported() {
        let g = directed_c3();
        let t = g.enumerate_triangles()[0];
        let packing = FractionalPacking::new(&g, [(t, rat(1, 2))].into_iter().collect()).unwrap();
        let cover =
            FractionalCover::new(&g, [(ArcId(0), Rat::one())].into_iter().collect()).unwrap();
        let report = check_complementary_slackness(&g, &packing, &cover).unwrap();
        assert_eq!(report.unsaturated_arcs.len(), 1);
        assert_eq!(report.unsaturated_arcs[0].0, ArcId(0));
        // the packed triangle has cover sum exactly 1, so no second entry
        assert!(report.nonunit_triangles.is_empty());
    }

    #[test]
    fn full_packing_with_unit_cover_is_cs_clean() {
        let g = directed_c3();
        let t = g.enumerate_triangles()[0];
        let packing = FractionalPacking::new(&g, [(t, Rat::one())].into_iter().collect()).unwrap();
        let cover =
            FractionalCover::new(&g, [(ArcId(0), Rat::one())].into_iter().collect()).unwrap();
        let report = check_complementary_slackness(&g, &packing, &cover).unwrap();
        assert!(report.is_empty());
    }

    #[test]
    fn infeasible_inputs_are_rejected() {
        let g = directed_c3();
        let t = g.enumerate_triangles()[0];
        assert!(FractionalPacking::new(&g, [(t, rat_int(2))].into_iter().collect()).is_err());
        assert!(FractionalCover::new(&g, [(ArcId(0), rat(1, 2))].into_iter().collect()).is_err());
        assert!(
            FractionalCover::new(&g, [(ArcId(0), rat(3, 2))].into_iter().collect()).is_err()
        );
    }

    #[test]
    fn zero_weight_arcs_pin_their_triangles() {
        let mut g = Digraph::new(3, GraphMode::Simple);
        g.add_arc(0, 1, Rat::zero()).unwrap();
        g.add_unit_arc(1, 2).unwrap();
        g.add_unit_arc(2, 0).unwrap();
        let p = solve_packing_lp(&g);
        assert_eq!(p.weight(), &Rat::zero());
        let c = solve_cover_lp(&g);
        assert_eq!(c.weight(), &Rat::zero());
        let cert = certify_duality(&g).unwrap();
        assert_eq!(cert.value, Rat::zero());
    }
}
