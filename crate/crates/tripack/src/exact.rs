//! Exact integral solvers: maximum arc-disjoint triangle packing and
//! minimum-weight triangle-hitting arc set.
//!
//! Both run branch-and-bound with bounds from the fractional LP optimum.
//! A search that exhausts its node budget returns an explicit incomplete
//! result carrying the best incumbent and the LP bound; it never reports
//! an unlabeled value. Each parallel arc is its own unit-capacity
//! resource, so packing semantics are per arc id.

use std::collections::BTreeSet;

use crate::digraph::{ArcId, CoverSet, Digraph, Triangle};
use crate::lpcore::{solve_cover_lp, solve_packing_lp};
use crate::rat::{rat_usize, Rat};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("brute force accepts at most {max_triangles} triangles and {max_arcs} arcs; instance has {triangles} and {arcs}")]
    OracleGuard {
        triangles: usize,
        arcs: usize,
        max_triangles: usize,
        max_arcs: usize,
    },
    #[error("exhaustive digraph search accepts n <= {max}, got {n}")]
    SizeGuard { n: usize, max: usize },
    #[error("triangles are not pairwise arc-disjoint")]
    OverlappingTriangles,
    #[error("unknown triangle in packing")]
    UnknownTriangle,
}

/// A set of pairwise arc-disjoint triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralPacking {
    triangles: BTreeSet<Triangle>,
}

impl IntegralPacking {
    pub fn new(g: &Digraph, triangles: BTreeSet<Triangle>) -> Result<Self, ExactError> {
        let known: BTreeSet<Triangle> = g.enumerate_triangles().into_iter().collect();
        let mut used = BTreeSet::new();
        for t in &triangles {
            if !known.contains(t) {
                return Err(ExactError::UnknownTriangle);
            }
            for arc in t.arcs() {
                if !used.insert(arc) {
                    return Err(ExactError::OverlappingTriangles);
                }
            }
        }
        Ok(IntegralPacking { triangles })
    }

    pub fn empty() -> Self {
        IntegralPacking {
            triangles: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Triangle> {
        self.triangles.iter()
    }
}

/// Outcome of a budgeted exact solve. `Incomplete` carries the best
/// incumbent found and the fractional bound that was not closed.
#[derive(Debug, Clone)]
pub enum Solved<T> {
    Optimal(T),
    Incomplete { best: T, lp_bound: Rat },
}

impl<T> Solved<T> {
    pub fn is_optimal(&self) -> bool {
        matches!(self, Solved::Optimal(_))
    }

    pub fn best(&self) -> &T {
        match self {
            Solved::Optimal(t) => t,
            Solved::Incomplete { best, .. } => best,
        }
    }

    pub fn into_optimal(self) -> Option<T> {
        match self {
            Solved::Optimal(t) => Some(t),
            Solved::Incomplete { .. } => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn subtract(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

struct Budget {
    nodes: u64,
    limit: Option<u64>,
    exhausted: bool,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget {
            nodes: 0,
            limit,
            exhausted: false,
        }
    }

    /// Charges one node; false once the limit is hit.
    fn step(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                self.exhausted = true;
                return false;
            }
        }
        true
    }
}

struct PackingSearch {
    conflicts: Vec<Bits>,
    arc_masks: Vec<Bits>,
    arc_count: usize,
    best: Vec<usize>,
    target: usize,
    budget: Budget,
}

impl PackingSearch {
    /// Union of arcs over available triangles, divided by three, rounded
    /// down: no packing can beat it.
    fn arc_bound(&self, avail: &Bits) -> usize {
        let mut used = Bits::new(self.arc_count);
        for i in avail.ones() {
            used.union_with(&self.arc_masks[i]);
        }
        used.count() / 3
    }

    fn pick_branch(&self, avail: &Bits) -> usize {
        // most-conflicted available triangle first (fewest compatible)
        avail
            .ones()
            .max_by(|&a, &b| {
                let ca = avail.and_count(&self.conflicts[a]);
                let cb = avail.and_count(&self.conflicts[b]);
                ca.cmp(&cb).then(b.cmp(&a))
            })
            .expect("avail is nonempty")
    }

    fn dfs(&mut self, avail: Bits, chosen: &mut Vec<usize>) {
        if !self.budget.step() {
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if self.best.len() == self.target || self.budget.exhausted {
            return;
        }
        let avail_count = avail.count();
        if avail_count == 0 {
            return;
        }
        let bound = avail_count.min(self.arc_bound(&avail));
        if chosen.len() + bound <= self.best.len() {
            return;
        }
        let pivot = self.pick_branch(&avail);

        let mut with = avail.clone();
        with.clear(pivot);
        with.subtract(&self.conflicts[pivot]);
        chosen.push(pivot);
        self.dfs(with, chosen);
        chosen.pop();

        if self.best.len() == self.target || self.budget.exhausted {
            return;
        }
        let mut without = avail;
        without.clear(pivot);
        self.dfs(without, chosen);
    }
}

/// Maximum number of arc-disjoint triangles, by branch-and-bound under the
/// fractional upper bound.
pub fn solve_nu_t(g: &Digraph, budget: Option<u64>) -> Solved<IntegralPacking> {
    let triangles = g.enumerate_triangles();
    if triangles.is_empty() {
        return Solved::Optimal(IntegralPacking::empty());
    }
    let nu_star = solve_packing_lp(g).weight().clone();
    let target = nu_star.floor().to_integer().to_usize().unwrap_or(usize::MAX);

    let arc_ids: Vec<ArcId> = g.arc_ids().collect();
    let arc_index = |id: ArcId| arc_ids.binary_search(&id).expect("arc exists");
    let arc_masks: Vec<Bits> = triangles
        .iter()
        .map(|t| {
            let mut b = Bits::new(arc_ids.len());
            for a in t.arcs() {
                b.set(arc_index(a));
            }
            b
        })
        .collect();
    let conflicts: Vec<Bits> = (0..triangles.len())
        .map(|i| {
            let mut b = Bits::new(triangles.len());
            for j in 0..triangles.len() {
                if i != j && arc_masks[i].and_count(&arc_masks[j]) > 0 {
                    b.set(j);
                }
            }
            b
        })
        .collect();

    let mut search = PackingSearch {
        conflicts,
        arc_masks,
        arc_count: arc_ids.len(),
        best: Vec::new(),
        target,
        budget: Budget::new(budget),
    };

    // greedy incumbent in branching order
    let mut avail = Bits::full(triangles.len());
    let mut greedy = Vec::new();
    while avail.count() > 0 {
        let pick = search.pick_branch(&avail);
        greedy.push(pick);
        avail.clear(pick);
        avail.subtract(&search.conflicts[pick]);
    }
    search.best = greedy;

    search.dfs(Bits::full(triangles.len()), &mut Vec::new());

    let packing = IntegralPacking::new(g, search.best.iter().map(|&i| triangles[i]).collect())
        .expect("search maintains arc-disjointness");
    if search.budget.exhausted && search.best.len() < target {
        Solved::Incomplete {
            best: packing,
            lp_bound: nu_star,
        }
    } else {
        Solved::Optimal(packing)
    }
}

struct CoverSearch<'a> {
    g: &'a Digraph,
    triangle_count: usize,
    /// triangles hit by each arc, indexed like `arc_ids`
    arc_hits: Vec<Bits>,
    arc_ids: Vec<ArcId>,
    /// per-triangle branching priority: sum of root LP cover values
    priority: Vec<Rat>,
    /// per-triangle arc indices in branching order
    branch_arcs: Vec<Vec<usize>>,
    best: Option<(Vec<usize>, Rat)>,
    global_lb: Rat,
    budget: Budget,
}

impl CoverSearch<'_> {
    fn weight_of(&self, arc: usize) -> &Rat {
        &self.g.arc(self.arc_ids[arc]).expect("arc exists").weight
    }

    /// Greedy arc-disjoint uncovered triangles; each needs an arc of its
    /// own, costing at least its cheapest unbanned arc. `None` signals an
    /// uncoverable triangle.
    fn lower_bound(&self, covered: &Bits, banned: &Bits) -> Option<Rat> {
        let mut used = Bits::new(self.arc_ids.len());
        let mut bound = Rat::zero();
        for i in 0..self.triangle_count {
            if covered.get(i) {
                continue;
            }
            if self.branch_arcs[i].iter().any(|&a| used.get(a)) {
                continue;
            }
            let mut cheapest: Option<&Rat> = None;
            for &a in &self.branch_arcs[i] {
                used.set(a);
                if banned.get(a) {
                    continue;
                }
                let w = self.weight_of(a);
                if cheapest.map(|c| w < c).unwrap_or(true) {
                    cheapest = Some(w);
                }
            }
            match cheapest {
                Some(w) => bound += w,
                None => return None,
            }
        }
        Some(bound)
    }

    fn pick_branch(&self, covered: &Bits) -> Option<usize> {
        let mut pick: Option<usize> = None;
        for i in 0..self.triangle_count {
            if covered.get(i) {
                continue;
            }
            match pick {
                None => pick = Some(i),
                Some(p) => {
                    if self.priority[i] > self.priority[p] {
                        pick = Some(i);
                    }
                }
            }
        }
        pick
    }

    fn beats_best(&self, weight: &Rat) -> bool {
        match &self.best {
            None => true,
            Some((_, w)) => weight < w,
        }
    }

    fn done(&self) -> bool {
        self.budget.exhausted || matches!(&self.best, Some((_, w)) if *w == self.global_lb)
    }

    fn dfs(&mut self, covered: Bits, banned: Bits, chosen: &mut Vec<usize>, weight: Rat) {
        if !self.budget.step() {
            return;
        }
        let pivot = match self.pick_branch(&covered) {
            None => {
                if self.beats_best(&weight) {
                    self.best = Some((chosen.clone(), weight));
                }
                return;
            }
            Some(p) => p,
        };
        match self.lower_bound(&covered, &banned) {
            None => return,
            Some(lb) => {
                if !self.beats_best(&(&weight + &lb)) {
                    return;
                }
            }
        }
        // one of the pivot triangle's arcs must enter the cover; banning
        // the arcs already tried partitions the subtree
        let mut banned = banned;
        for k in 0..self.branch_arcs[pivot].len() {
            let arc = self.branch_arcs[pivot][k];
            if banned.get(arc) {
                continue;
            }
            let mut covered_next = covered.clone();
            covered_next.union_with(&self.arc_hits[arc]);
            chosen.push(arc);
            let w = &weight + self.weight_of(arc);
            self.dfs(covered_next, banned.clone(), chosen, w);
            chosen.pop();
            if self.done() {
                return;
            }
            banned.set(arc);
        }
    }
}

/// Minimum-weight arc set meeting all triangles, by branch-and-bound over
/// the arcs of uncovered triangles.
pub fn solve_tau_t(g: &Digraph, budget: Option<u64>) -> Solved<CoverSet> {
    let triangles = g.enumerate_triangles();
    if triangles.is_empty() {
        return Solved::Optimal(CoverSet::empty());
    }
    let root_cover = solve_cover_lp(g);
    let tau_star = root_cover.weight().clone();
    let global_lb = if g.all_unit_weights() {
        Rat::from_integer(tau_star.ceil().to_integer())
    } else {
        tau_star.clone()
    };

    let arc_ids: Vec<ArcId> = g.arc_ids().collect();
    let arc_index = |id: ArcId| arc_ids.binary_search(&id).expect("arc exists");
    let mut arc_hits: Vec<Bits> = vec![Bits::new(triangles.len()); arc_ids.len()];
    for (i, t) in triangles.iter().enumerate() {
        for a in t.arcs() {
            arc_hits[arc_index(a)].set(i);
        }
    }
    let priority: Vec<Rat> = triangles
        .iter()
        .map(|t| t.arcs().iter().map(|&a| root_cover.value(a)).sum())
        .collect();
    let branch_arcs: Vec<Vec<usize>> = triangles
        .iter()
        .map(|t| {
            let mut arcs: Vec<usize> = t.arcs().iter().map(|&a| arc_index(a)).collect();
            // try arcs the fractional cover leans on first
            arcs.sort_by(|&x, &y| {
                let cx = root_cover.value(arc_ids[x]);
                let cy = root_cover.value(arc_ids[y]);
                cy.cmp(&cx).then(x.cmp(&y))
            });
            arcs
        })
        .collect();

    let mut search = CoverSearch {
        g,
        triangle_count: triangles.len(),
        arc_hits,
        arc_ids,
        priority,
        branch_arcs,
        best: None,
        global_lb,
        budget: Budget::new(budget),
    };

    // greedy incumbent: repeatedly take the arc hitting most uncovered
    // triangles (smallest index on ties)
    {
        let mut covered = Bits::new(triangles.len());
        let mut picked = Vec::new();
        let mut weight = Rat::zero();
        while covered.count() < triangles.len() {
            let arc = (0..search.arc_ids.len())
                .max_by(|&a, &b| {
                    let ha = search.arc_hits[a].count() - covered.and_count(&search.arc_hits[a]);
                    let hb = search.arc_hits[b].count() - covered.and_count(&search.arc_hits[b]);
                    ha.cmp(&hb).then(b.cmp(&a))
                })
                .expect("arcs exist while triangles are uncovered");
            weight += search.weight_of(arc);
            covered.union_with(&search.arc_hits[arc]);
            picked.push(arc);
        }
        search.best = Some((picked, weight));
    }

    search.dfs(
        Bits::new(triangles.len()),
        Bits::new(search.arc_ids.len()),
        &mut Vec::new(),
        Rat::zero(),
    );

    let (picked, weight) = search.best.clone().expect("greedy set an incumbent");
    let cover = CoverSet::new(g, picked.iter().map(|&i| search.arc_ids[i]).collect())
        .expect("cover arcs come from the digraph");
    debug_assert_eq!(cover.weight(), &weight);
    debug_assert!(cover.verify(g).unwrap());
    if search.budget.exhausted && weight != search.global_lb {
        Solved::Incomplete {
            best: cover,
            lp_bound: tau_star,
        }
    } else {
        Solved::Optimal(cover)
    }
}

const ORACLE_MAX_TRIANGLES: usize = 20;
const ORACLE_MAX_ARCS: usize = 20;

/// Exhaustive (nu_t, tau_t) oracle for tiny instances. The packing side
/// scans all triangle subsets; the cover side scans arc subsets by
/// cardinality for unit weights, or all subsets when weighted.
pub fn brute_force_nu_tau(g: &Digraph) -> Result<(usize, Rat), ExactError> {
    let triangles = g.enumerate_triangles();
    let arcs: Vec<ArcId> = g.arc_ids().collect();
    if triangles.len() > ORACLE_MAX_TRIANGLES || arcs.len() > ORACLE_MAX_ARCS {
        return Err(ExactError::OracleGuard {
            triangles: triangles.len(),
            arcs: arcs.len(),
            max_triangles: ORACLE_MAX_TRIANGLES,
            max_arcs: ORACLE_MAX_ARCS,
        });
    }

    let arc_index = |id: ArcId| arcs.binary_search(&id).expect("arc exists");
    let tri_masks: Vec<u32> = triangles
        .iter()
        .map(|t| t.arcs().iter().fold(0u32, |m, &a| m | 1 << arc_index(a)))
        .collect();

    let mut nu = 0usize;
    for subset in 0u32..(1u32 << triangles.len()) {
        let mut used = 0u32;
        let mut ok = true;
        let mut count = 0usize;
        let mut rest = subset;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if used & tri_masks[i] != 0 {
                ok = false;
                break;
            }
            used |= tri_masks[i];
            count += 1;
        }
        if ok && count > nu {
            nu = count;
        }
    }

    // per-arc hit masks over triangles
    let mut arc_hits = vec![0u32; arcs.len()];
    for (i, mask) in tri_masks.iter().enumerate() {
        let mut rest = *mask;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            arc_hits[a] |= 1 << i;
        }
    }
    let all: u32 = if triangles.is_empty() {
        0
    } else {
        (1u32 << triangles.len()) - 1
    };
    let covers = |subset: u32| -> bool {
        let mut hit = 0u32;
        let mut rest = subset;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            hit |= arc_hits[a];
        }
        hit == all
    };

    let tau: Rat = if triangles.is_empty() {
        Rat::zero()
    } else if g.all_unit_weights() {
        // smallest cardinality first
        let mut found = None;
        'sizes: for k in 0..=arcs.len() {
            for subset in 0u32..(1u32 << arcs.len()) {
                if subset.count_ones() as usize == k && covers(subset) {
                    found = Some(k);
                    break 'sizes;
                }
            }
        }
        rat_usize(found.expect("the full arc set always covers"))
    } else {
        let mut best: Option<Rat> = None;
        for subset in 0u32..(1u32 << arcs.len()) {
            if !covers(subset) {
                continue;
            }
            let mut w = Rat::zero();
            let mut rest = subset;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                w += &g.arc(arcs[a]).expect("arc exists").weight;
            }
            if best.as_ref().map(|b| &w < b).unwrap_or(true) {
                best = Some(w);
            }
        }
        best.expect("the full arc set always covers")
    };

    Ok((nu, tau))
}

const LEMMA51_MAX_N: usize = 4;

/// Maximum arc count over all triangle-free digraphs on `n` vertices
/// (no parallel arcs, bigons allowed), by exhausting all 2^(n(n-1))
/// digraphs. The result never exceeds n^2/2.
pub fn max_triangle_free_arcs(n: usize) -> Result<usize, ExactError> {
    if n > LEMMA51_MAX_N {
        return Err(ExactError::SizeGuard {
            n,
            max: LEMMA51_MAX_N,
        });
    }
    if n <= 1 {
        return Ok(0);
    }
    // one slot per ordered pair
    let mut slots = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v {
                slots.push((u, v));
            }
        }
    }
    let slot = |u: usize, v: usize| slots.iter().position(|&p| p == (u, v)).unwrap();
    // all directed 3-cycles as slot masks
    let mut cycles: Vec<u16> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            for w in (v + 1)..n {
                for (x, y) in [(v, w), (w, v)] {
                    cycles.push((1 << slot(u, x)) | (1 << slot(x, y)) | (1 << slot(y, u)));
                }
            }
        }
    }
    let mut max_arcs = 0usize;
    for graph in 0u16..(1u16 << slots.len()) {
        if cycles.iter().any(|&c| graph & c == c) {
            continue;
        }
        max_arcs = max_arcs.max(graph.count_ones() as usize);
    }
    assert!(
        max_arcs <= n * n / 2,
        "triangle-free digraph exceeding the n^2/2 arc bound"
    );
    Ok(max_arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::GraphMode;
    use crate::generators::{gen_carousel5, gen_planted_carousels};
    use crate::rat::{rat, rat_int};
    use num_traits::One;

    fn directed_c3() -> Digraph {
        let mut g = Digraph::new(3, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 2).unwrap();
        g.add_unit_arc(2, 0).unwrap();
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
    fn c3_nu_and_tau_are_one() {
        let g = directed_c3();
        let nu = solve_nu_t(&g, None);
        assert!(nu.is_optimal());
        assert_eq!(nu.best().len(), 1);
        let tau = solve_tau_t(&g, None);
        assert!(tau.is_optimal());
        assert_eq!(tau.best().weight(), &Rat::one());
    }

    #[test]
    fn carousel_nu_two_tau_three() {
        let g = gen_carousel5();
        let nu = solve_nu_t(&g, None);
        assert!(nu.is_optimal());
        assert_eq!(nu.best().len(), 2);
        let tau = solve_tau_t(&g, None);
        assert!(tau.is_optimal());
        assert_eq!(tau.best().weight(), &rat_int(3));
        assert!(tau.best().verify(&g).unwrap());
    }

    #[test]
    fn bidirected_triple_packs_both_triangles() {
        let g = bidirected_triple();
        let nu = solve_nu_t(&g, None);
        assert_eq!(nu.best().len(), 2);
        let tau = solve_tau_t(&g, None);
        assert_eq!(tau.best().weight(), &rat_int(2));
    }

    #[test]
    fn empty_and_tiny_graphs_are_zero() {
        for g in [
            Digraph::new(0, GraphMode::Multi),
            Digraph::new(1, GraphMode::Multi),
        ] {
            assert_eq!(solve_nu_t(&g, None).best().len(), 0);
            assert_eq!(solve_tau_t(&g, None).best().weight(), &Rat::zero());
            assert_eq!(brute_force_nu_tau(&g).unwrap(), (0, Rat::zero()));
        }
    }

    #[test]
    fn brute_force_matches_known_instances() {
        assert_eq!(
            brute_force_nu_tau(&gen_carousel5()).unwrap(),
            (2, rat_int(3))
        );
        let mut bigon = Digraph::new(2, GraphMode::Simple);
        bigon.add_unit_arc(0, 1).unwrap();
        bigon.add_unit_arc(1, 0).unwrap();
        assert_eq!(brute_force_nu_tau(&bigon).unwrap(), (0, Rat::zero()));
        // two vertex-disjoint C3s: additive
        let mut two = Digraph::new(6, GraphMode::Simple);
        for base in [0, 3] {
            two.add_unit_arc(base, base + 1).unwrap();
            two.add_unit_arc(base + 1, base + 2).unwrap();
            two.add_unit_arc(base + 2, base).unwrap();
        }
        assert_eq!(brute_force_nu_tau(&two).unwrap(), (2, rat_int(2)));
    }

    #[test]
    fn brute_force_guards_size() {
        let mut g = Digraph::new(8, GraphMode::Simple);
        for u in 0..8 {
            for v in 0..8 {
                if u != v {
                    g.add_unit_arc(u, v).unwrap();
                }
            }
        }
        assert!(matches!(
            brute_force_nu_tau(&g),
            Err(ExactError::OracleGuard { .. })
        ));
    }

    #[test]
    fn weighted_cover_prefers_cheap_arcs() {
        let mut g = Digraph::new(3, GraphMode::Simple);
        g.add_arc(0, 1, rat_int(5)).unwrap();
        g.add_arc(1, 2, rat_int(5)).unwrap();
        g.add_arc(2, 0, rat(1, 2)).unwrap();
        let tau = solve_tau_t(&g, None);
        assert!(tau.is_optimal());
        assert_eq!(tau.best().weight(), &rat(1, 2));
        assert_eq!(brute_force_nu_tau(&g).unwrap().1, rat(1, 2));
    }

    #[test]
    fn budget_exhaustion_is_labeled() {
        // planted k=2 has tau = 6 against ceil(tau*) = 5, so no incumbent
        // can be certified by the LP bound and a one-node budget must
        // return an incomplete result
        let g = gen_planted_carousels(2).unwrap();
        match solve_tau_t(&g, Some(1)) {
            Solved::Incomplete { best, lp_bound } => {
                assert!(best.verify(&g).unwrap());
                assert_eq!(lp_bound, rat_int(5));
            }
            Solved::Optimal(_) => panic!("expected incomplete result under a one-node budget"),
        }
        match solve_nu_t(&g, Some(1)) {
            Solved::Incomplete { best, lp_bound } => {
                assert!(best.len() <= 4);
                assert_eq!(lp_bound, rat_int(5));
            }
            Solved::Optimal(_) => panic!("expected incomplete result under a one-node budget"),
        }
    }

    #[test]
    fn planted_two_blocks_solve_exactly() {
        let g = gen_planted_carousels(2).unwrap();
        let nu = solve_nu_t(&g, None);
        assert!(nu.is_optimal());
        assert_eq!(nu.best().len(), 4);
        let tau = solve_tau_t(&g, None);
        assert!(tau.is_optimal());
        assert_eq!(tau.best().weight(), &rat_int(6));
    }

    #[test]
    fn lemma51_exhaustive_small_n() {
        assert_eq!(max_triangle_free_arcs(1).unwrap(), 0);
        // the bigon attains the n^2/2 bound at n = 2
        assert_eq!(max_triangle_free_arcs(2).unwrap(), 2);
        assert_eq!(max_triangle_free_arcs(3).unwrap(), 4);
        assert!(matches!(
            max_triangle_free_arcs(5),
            Err(ExactError::SizeGuard { .. })
        ));
    }

    #[test]
    fn multigraph_parallel_arcs_pack_independently() {
        // doubled C3: every combination of parallel arcs is a triangle,
        // and two arc-disjoint ones fit
        let mut g = Digraph::new(3, GraphMode::Multi);
        for _ in 0..2 {
            g.add_unit_arc(0, 1).unwrap();
            g.add_unit_arc(1, 2).unwrap();
            g.add_unit_arc(2, 0).unwrap();
        }
        assert_eq!(g.enumerate_triangles().len(), 8);
        let nu = solve_nu_t(&g, None);
        assert_eq!(nu.best().len(), 2);
        let (bf_nu, bf_tau) = brute_force_nu_tau(&g).unwrap();
        assert_eq!(bf_nu, 2);
        assert_eq!(solve_tau_t(&g, None).best().weight(), &bf_tau);
    }
}
