//! From an optimal fractional cover to an integral one within factor 9/5.
//!
//! The pipeline has two phases. Peeling repeatedly deletes an arc whose
//! optimal cover value reaches 5/9, re-solving the LP each time, so that
//! rounding always starts from an optimal cover with every value below
//! 5/9; the deleted arcs join the final cover and their cost is absorbed
//! by the drop in the fractional optimum. Rounding then splits the
//! vertices into two sides and keeps an arc out of the cover only when
//! its value clears a threshold that depends on where its endpoints
//! landed; for any split and any valid threshold triple the result hits
//! every triangle. Choosing the split by fair coins and the thresholds
//! with probabilities 3/5, 3/10, 1/10 makes the expected cover weight at
//! most 9/5 of the fractional optimum, and the derandomized walk over
//! conditional expectations turns that into a deterministic guarantee.

use std::collections::BTreeSet;
use std::fmt;

use crate::digraph::{ArcId, CoverSet, Digraph, VertexId};
use crate::lpcore::{
    check_complementary_slackness, solve_cover_lp, solve_packing_lp, FractionalCover, LpError,
};
use crate::rat::{format_rat, rat, Rat};
use crate::rng::SplitMix64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RoundingError {
    #[error("thresholds must satisfy alpha >= beta >= gamma >= 0 and alpha + beta + gamma = 1")]
    BadThresholds,
    #[error("arc {0} has cover value {1} >= 5/9; peel before rounding")]
    HeavyArc(ArcId, String),
    #[error("cover value {0} is not below 5/9")]
    HeavyValue(String),
    #[error("partition covers {got} vertices, digraph has {expected}")]
    PartitionMismatch { got: usize, expected: usize },
    #[error("exhaustive search accepts at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("cover is not optimal for the residual: weight {cover} vs packing {packing}")]
    NotOptimal { cover: String, packing: String },
    #[error("complementary slackness certification failed: {0} violations")]
    NotCertified(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Heavy-arc threshold: peeling removes arcs at or above it, rounding
/// requires every remaining value strictly below it.
pub fn heavy_threshold() -> Rat {
    rat(5, 9)
}

/// A valid threshold triple alpha >= beta >= gamma >= 0 summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds {
    alpha: Rat,
    beta: Rat,
    gamma: Rat,
}

impl Thresholds {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat) -> Result<Thresholds, RoundingError> {
        let valid = alpha >= beta
            && beta >= gamma
            && !gamma.is_negative()
            && (&alpha + &beta + &gamma) == Rat::one();
        if !valid {
            return Err(RoundingError::BadThresholds);
        }
        Ok(Thresholds { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    pub fn gamma(&self) -> &Rat {
        &self.gamma
    }
}

/// The three threshold choices drawn with probabilities 3/5, 3/10, 1/10.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdChoice {
    I,
    II,
    III,
}

impl ThresholdChoice {
    pub const ALL: [ThresholdChoice; 3] =
        [ThresholdChoice::I, ThresholdChoice::II, ThresholdChoice::III];

    pub fn thresholds(self) -> Thresholds {
        let (beta, gamma) = match self {
            ThresholdChoice::I => (rat(4, 9), rat(0, 1)),
            ThresholdChoice::II => (rat(3, 9), rat(1, 9)),
            ThresholdChoice::III => (rat(2, 9), rat(2, 9)),
        };
        Thresholds::new(heavy_threshold(), beta, gamma).expect("named choices are valid")
    }

    /// Selection probability as an exact rational.
    pub fn probability(self) -> Rat {
        match self {
            ThresholdChoice::I => rat(3, 5),
            ThresholdChoice::II => rat(3, 10),
            ThresholdChoice::III => rat(1, 10),
        }
    }
}

impl fmt::Display for ThresholdChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdChoice::I => write!(f, "I"),
            ThresholdChoice::II => write!(f, "II"),
            ThresholdChoice::III => write!(f, "III"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A total two-coloring of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn new(side: Vec<Side>) -> Bipartition {
        Bipartition { side }
    }

    /// Bit `v` of `mask` set puts vertex `v` in B.
    pub fn from_mask(n: usize, mask: u64) -> Bipartition {
        Bipartition {
            side: (0..n)
                .map(|v| if mask >> v & 1 == 1 { Side::B } else { Side::A })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.side[v]
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.side {
            write!(f, "{}", if *s == Side::A { 'A' } else { 'B' })?;
        }
        Ok(())
    }
}

/// One heavy-arc deletion with the LP values around it.
#[derive(Debug, Clone)]
pub struct PeelStep {
    pub arc: ArcId,
    pub cover_value: Rat,
    pub arc_weight: Rat,
    pub tau_star_before: Rat,
    pub tau_star_after: Rat,
}

/// Result of the peeling phase: the arcs moved into the cover, the
/// residual digraph, and an optimal fractional cover of the residual with
/// every value strictly below 5/9.
#[derive(Debug, Clone)]
pub struct Peeling {
    pub peeled: Vec<ArcId>,
    pub residual: Digraph,
    pub cover: FractionalCover,
    pub steps: Vec<PeelStep>,
}

impl Peeling {
    pub fn peeled_set(&self) -> BTreeSet<ArcId> {
        self.peeled.iter().copied().collect()
    }

    /// Fractional cover optimum of the digraph peeling started from.
    pub fn original_tau_star(&self) -> Rat {
        self.steps
            .first()
            .map(|s| s.tau_star_before.clone())
            .unwrap_or_else(|| self.cover.weight().clone())
    }
}

/// Repeatedly deletes the arc with the largest cover value at or above
/// 5/9 (ties to the smallest arc id) and re-solves the LP. Re-solving is
/// essential: the peeling guarantee needs an optimal cover of each
/// residual, not a restriction of the original one. Each step is checked
/// against the accounting inequality tau*(D \ e) <= tau*(D) - 5/9 w(e).
pub fn peel_heavy_arcs(g: &Digraph) -> Peeling {
    let mut residual = g.clone();
    let mut cover = solve_cover_lp(&residual);
    let mut peeled = Vec::new();
    let mut steps = Vec::new();
    let threshold = heavy_threshold();
    loop {
        let heavy = cover
            .support()
            .filter(|(_, v)| **v >= threshold)
            .max_by(|(a, va), (b, vb)| va.cmp(vb).then(b.cmp(a)))
            .map(|(arc, v)| (*arc, v.clone()));
        let Some((arc, value)) = heavy else {
            return Peeling {
                peeled,
                residual,
                cover,
                steps,
            };
        };
        let weight = residual
            .arc(arc)
            .expect("cover support lies in the residual")
            .weight
            .clone();
        let before = cover.weight().clone();
        residual = residual
            .remove_arcs(&[arc].into_iter().collect())
            .expect("arc exists");
        cover = solve_cover_lp(&residual);
        let after = cover.weight().clone();
        assert!(
            after <= &before - &(&threshold * &weight),
            "peeling accounting violated: tau* {after} after removing {arc} from tau* {before}"
        );
        steps.push(PeelStep {
            arc,
            cover_value: value,
            arc_weight: weight,
            tau_star_before: before,
            tau_star_after: after,
        });
        peeled.push(arc);
    }
}

/// Threshold rounding of a fractional cover: keep the arcs from A to B
/// with value above beta and the arcs inside either side with value above
/// gamma (strict comparisons, exact arithmetic). Arcs from B to A are
/// never selected. Requires every cover value strictly below alpha.
///
/// Weight-zero arcs are dropped from the selection afterwards when every
/// triangle through them stays covered; they cost nothing but bloat the
/// output.
pub fn round_cover(
    g: &Digraph,
    cover: &FractionalCover,
    partition: &Bipartition,
    thresholds: &Thresholds,
) -> Result<CoverSet, RoundingError> {
    if partition.len() != g.vertex_count() {
        return Err(RoundingError::PartitionMismatch {
            got: partition.len(),
            expected: g.vertex_count(),
        });
    }
    let mut selected: BTreeSet<ArcId> = BTreeSet::new();
    let mut has_zero_weight = false;
    for arc in g.arcs() {
        let value = cover.value(arc.id);
        if value >= *thresholds.alpha() {
            return Err(RoundingError::HeavyArc(arc.id, format_rat(&value)));
        }
        let keep = match (partition.side(arc.tail), partition.side(arc.head)) {
            (Side::A, Side::B) => value > *thresholds.beta(),
            (Side::B, Side::A) => false,
            _ => value > *thresholds.gamma(),
        };
        if keep {
            has_zero_weight |= arc.weight.is_zero();
            selected.insert(arc.id);
        }
    }
    if has_zero_weight {
        drop_redundant_zero_weight(g, &mut selected);
    }
    Ok(CoverSet::new(g, selected).expect("selection lies in g"))
}

fn drop_redundant_zero_weight(g: &Digraph, selected: &mut BTreeSet<ArcId>) {
    let triangles = g.enumerate_triangles();
    let zero_arcs: Vec<ArcId> = selected
        .iter()
        .filter(|id| g.arc(**id).map(|a| a.weight.is_zero()).unwrap_or(false))
        .copied()
        .collect();
    for arc in zero_arcs {
        let still_covered = triangles
            .iter()
            .filter(|t| t.contains_arc(arc))
            .all(|t| t.arcs().iter().any(|a| *a != arc && selected.contains(a)));
        if still_covered {
            selected.remove(&arc);
        }
    }
}

/// Inclusion probability of an arc under the random partition and random
/// threshold choice, as a function of its cover value alone. Buckets are
/// half-open with the printed right endpoints included.
pub fn inclusion_probability(value: &Rat) -> Result<Rat, RoundingError> {
    if value >= &heavy_threshold() {
        return Err(RoundingError::HeavyValue(format_rat(value)));
    }
    assert!(!value.is_negative(), "cover values are nonnegative");
    let p = if value.is_zero() {
        Rat::zero()
    } else if *value <= rat(1, 9) {
        rat(3, 10)
    } else if *value <= rat(2, 9) {
        rat(9, 20)
    } else if *value <= rat(3, 9) {
        rat(21, 40)
    } else if *value <= rat(4, 9) {
        rat(3, 5)
    } else {
        rat(3, 4)
    };
    Ok(p)
}

/// Exact expected weight of the rounded cover: sum of w(e) p(c(e)) over
/// the residual arcs.
pub fn expected_cover_weight(
    residual: &Digraph,
    cover: &FractionalCover,
) -> Result<Rat, RoundingError> {
    let mut sum = Rat::zero();
    for arc in residual.arcs() {
        sum += &arc.weight * &inclusion_probability(&cover.value(arc.id))?;
    }
    Ok(sum)
}

/// A complete rounding artifact: the peeled arcs, the split and threshold
/// choice that produced the rounded part, and the union cover on the
/// original digraph.
#[derive(Debug, Clone)]
pub struct RoundingOutcome {
    pub peeled: BTreeSet<ArcId>,
    pub partition: Bipartition,
    pub choice: ThresholdChoice,
    pub cover: CoverSet,
}

impl RoundingOutcome {
    fn assemble(
        g: &Digraph,
        peeling: &Peeling,
        partition: Bipartition,
        choice: ThresholdChoice,
        rounded: CoverSet,
    ) -> RoundingOutcome {
        let mut arcs = peeling.peeled_set();
        arcs.extend(rounded.arcs().iter().copied());
        let cover = CoverSet::new(g, arcs).expect("arcs lie in g");
        assert!(
            cover.verify(g).expect("arcs lie in g"),
            "rounding produced a non-cover"
        );
        RoundingOutcome {
            peeled: peeling.peeled_set(),
            partition,
            choice,
            cover,
        }
    }

    pub fn weight(&self) -> &Rat {
        self.cover.weight()
    }
}

/// Draw order for one sample: one coin per vertex in index order for the
/// partition (heads = A), then one draw below(10) for the choice
/// (0..=5 -> I, 6..=8 -> II, 9 -> III).
pub fn sample_cover(g: &Digraph, peeling: &Peeling, seed: u64) -> RoundingOutcome {
    let mut rng = SplitMix64::new(seed);
    let side: Vec<Side> = (0..g.vertex_count())
        .map(|_| if rng.coin() { Side::A } else { Side::B })
        .collect();
    let partition = Bipartition::new(side);
    let choice = match rng.below(10) {
        0..=5 => ThresholdChoice::I,
        6..=8 => ThresholdChoice::II,
        _ => ThresholdChoice::III,
    };
    let rounded = round_cover(
        &peeling.residual,
        &peeling.cover,
        &partition,
        &choice.thresholds(),
    )
    .expect("peeling leaves all values below 5/9");
    RoundingOutcome::assemble(g, peeling, partition, choice, rounded)
}

/// Per-choice inclusion probability before any vertex is placed:
/// same-side with probability 1/2 (needs value > gamma), A-to-B with
/// probability 1/4 (needs value > beta).
fn choice_probability(value: &Rat, t: &Thresholds) -> Rat {
    let mut p = Rat::zero();
    if value > t.gamma() {
        p += rat(1, 2);
    }
    if value > t.beta() {
        p += rat(1, 4);
    }
    p
}

/// Conditional inclusion probability of an arc given the sides fixed so
/// far (tail side, head side; `None` = still random).
fn conditional_probability(
    tail: Option<Side>,
    head: Option<Side>,
    over_beta: bool,
    over_gamma: bool,
) -> Rat {
    let beta_hit = if over_beta { Rat::one() } else { Rat::zero() };
    let gamma_hit = if over_gamma { Rat::one() } else { Rat::zero() };
    match (tail, head) {
        (Some(a), Some(b)) => {
            if a == b {
                gamma_hit
            } else if a == Side::A {
                beta_hit
            } else {
                Rat::zero()
            }
        }
        // tail in A or head in B: the undecided endpoint picks between
        // same-side and A-to-B
        (Some(Side::A), None) | (None, Some(Side::B)) => (beta_hit + gamma_hit) / rat(2, 1),
        // tail in B or head in A: between same-side and the never-selected
        // B-to-A orientation
        (Some(Side::B), None) | (None, Some(Side::A)) => gamma_hit / rat(2, 1),
        (None, None) => gamma_hit / rat(2, 1) + beta_hit / rat(4, 1),
    }
}

/// Certifies the (cover, packing) pair on the residual by complementary
/// slackness; rounding's expectation bound is only valid for certified
/// pairs.
fn certify_residual(peeling: &Peeling) -> Result<crate::lpcore::FractionalPacking, RoundingError> {
    let packing = solve_packing_lp(&peeling.residual);
    if packing.weight() != peeling.cover.weight() {
        return Err(RoundingError::NotOptimal {
            cover: format_rat(peeling.cover.weight()),
            packing: format_rat(packing.weight()),
        });
    }
    let report = check_complementary_slackness(&peeling.residual, &packing, &peeling.cover)?;
    if !report.is_empty() {
        return Err(RoundingError::NotCertified(
            report.unsaturated_arcs.len() + report.nonunit_triangles.len(),
        ));
    }
    Ok(packing)
}

/// Derandomized rounding by the method of conditional expectations: fix
/// the threshold choice minimizing the exact expected weight (ties toward
/// Choice I), then place vertices in index order, each on the side that
/// minimizes the conditional expectation (ties toward A). The final
/// weight never exceeds the initial expectation, hence never exceeds
/// 9/5 of the residual fractional optimum.
pub fn derandomized_cover(g: &Digraph, peeling: &Peeling) -> Result<RoundingOutcome, RoundingError> {
    certify_residual(peeling)?;
    let residual = &peeling.residual;
    let cover = &peeling.cover;

    let mut best_choice = ThresholdChoice::I;
    let mut best_expectation: Option<Rat> = None;
    for choice in ThresholdChoice::ALL {
        let t = choice.thresholds();
        let e: Rat = residual
            .arcs()
            .map(|arc| &arc.weight * &choice_probability(&cover.value(arc.id), &t))
            .sum();
        if best_expectation.as_ref().map(|b| e < *b).unwrap_or(true) {
            best_expectation = Some(e);
            best_choice = choice;
        }
    }
    let thresholds = best_choice.thresholds();

    // cache per-arc threshold tests and weights
    struct ArcInfo {
        tail: VertexId,
        head: VertexId,
        weight: Rat,
        over_beta: bool,
        over_gamma: bool,
    }
    let arcs: Vec<ArcInfo> = residual
        .arcs()
        .map(|arc| {
            let v = cover.value(arc.id);
            ArcInfo {
                tail: arc.tail,
                head: arc.head,
                weight: arc.weight.clone(),
                over_beta: v > *thresholds.beta(),
                over_gamma: v > *thresholds.gamma(),
            }
        })
        .collect();

    let n = residual.vertex_count();
    let mut placed: Vec<Option<Side>> = vec![None; n];
    let expectation = |placed: &[Option<Side>]| -> Rat {
        arcs.iter()
            .map(|a| {
                &a.weight
                    * &conditional_probability(
                        placed[a.tail],
                        placed[a.head],
                        a.over_beta,
                        a.over_gamma,
                    )
            })
            .sum()
    };
    for v in 0..n {
        placed[v] = Some(Side::A);
        let with_a = expectation(&placed);
        placed[v] = Some(Side::B);
        let with_b = expectation(&placed);
        placed[v] = Some(if with_b < with_a { Side::B } else { Side::A });
    }
    let partition = Bipartition::new(placed.into_iter().map(|s| s.expect("all placed")).collect());

    let rounded = round_cover(residual, cover, &partition, &thresholds)?;
    // the greedy walk never increases the expectation, so the realized
    // weight is bounded by the initial one
    let initial = best_expectation.expect("three choices were scored");
    assert!(
        rounded.weight() <= &initial,
        "conditional expectation walk increased the weight"
    );
    assert!(
        rounded.weight() <= &(&rat(9, 5) * cover.weight()),
        "derandomized cover exceeded 9/5 of the residual optimum"
    );
    Ok(RoundingOutcome::assemble(
        g, peeling, partition, best_choice, rounded,
    ))
}

const EXHAUSTIVE_MAX_VERTICES: usize = 16;

/// Minimum-weight outcome over all 2^n partitions and all three choices.
/// First minimum in scan order (mask ascending, choices I, II, III) wins.
pub fn exhaustive_best_cover(
    g: &Digraph,
    peeling: &Peeling,
) -> Result<RoundingOutcome, RoundingError> {
    let n = peeling.residual.vertex_count();
    if n > EXHAUSTIVE_MAX_VERTICES {
        return Err(RoundingError::TooLarge {
            n,
            max: EXHAUSTIVE_MAX_VERTICES,
        });
    }
    let mut best: Option<(Rat, Bipartition, ThresholdChoice, CoverSet)> = None;
    for mask in 0u64..(1u64 << n) {
        let partition = Bipartition::from_mask(n, mask);
        for choice in ThresholdChoice::ALL {
            let rounded = round_cover(
                &peeling.residual,
                &peeling.cover,
                &partition,
                &choice.thresholds(),
            )?;
            let weight = rounded.weight().clone();
            if best.as_ref().map(|(w, ..)| weight < *w).unwrap_or(true) {
                best = Some((weight, partition.clone(), choice, rounded));
            }
        }
    }
    let (_, partition, choice, rounded) = best.expect("at least one outcome exists");
    Ok(RoundingOutcome::assemble(g, peeling, partition, choice, rounded))
}

/// Verifies the rounded-weight certificate triangle by triangle: every
/// positively packed triangle must have inclusion probabilities summing
/// to at most 9/5. Returns the offending triangles, if any.
pub fn triangle_probability_violations(
    cover: &FractionalCover,
    packing: &crate::lpcore::FractionalPacking,
) -> Result<Vec<(crate::digraph::Triangle, Rat)>, RoundingError> {
    let bound = rat(9, 5);
    let mut violations = Vec::new();
    for (t, _) in packing.support() {
        let mut sum = Rat::zero();
        for a in t.arcs() {
            sum += inclusion_probability(&cover.value(a))?;
        }
        if sum > bound {
            violations.push((*t, sum));
        }
    }
    Ok(violations)
}

/// Fixed residual whose optimal-cover stand-in has arcs engineered into
/// every probability bucket: five disjoint triangles with values
/// (1/2, 1/2, 0), (7/20, 7/20, 3/10), (1/3, 1/3, 1/3), (4/9, 4/9, 1/9)
/// and (1/2, 2/9, 5/18). Used by the frequency calibration suite.
pub fn bucket_calibration_instance() -> (Digraph, FractionalCover) {
    let mut g = Digraph::new(15, crate::digraph::GraphMode::Simple);
    let mut values = std::collections::BTreeMap::new();
    let triangles: [[(i64, i64); 3]; 5] = [
        [(1, 2), (1, 2), (0, 1)],
        [(7, 20), (7, 20), (3, 10)],
        [(1, 3), (1, 3), (1, 3)],
        [(4, 9), (4, 9), (1, 9)],
        [(1, 2), (2, 9), (5, 18)],
    ];
    for (i, tri) in triangles.iter().enumerate() {
        let base = 3 * i;
        for (j, (p, q)) in tri.iter().enumerate() {
            let id = g
                .add_unit_arc(base + j, base + (j + 1) % 3)
                .expect("disjoint triangles are valid");
            let v = rat(*p, *q);
            if !v.is_zero() {
                values.insert(id, v);
            }
        }
    }
    let cover = FractionalCover::new(&g, values).expect("engineered cover is feasible");
    (g, cover)
}
