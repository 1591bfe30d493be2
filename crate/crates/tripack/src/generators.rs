//! Instance families: the carousel tournament, planted-carousel
//! tournaments attaining ratio 3/2, random tournaments, the sparse
//! forward/backward model, and the explicit cover heuristics that go with
//! the random families.
//!
//! Every generator is a pure function of its parameters and seed, with
//! draw order pinned, so serialized instances are byte-identical across
//! runs and platforms.

use std::collections::BTreeSet;

use crate::digraph::{ArcId, ArcLabel, CoverSet, Digraph, GraphMode, VertexId};
use crate::rat::Rat;
use crate::rng::SplitMix64;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("digraph lacks forward/backward labels or the short-cycle vertex set")]
    MissingLabels,
    #[error("bipartition cover failed verification: residual digraph still has a triangle")]
    CoverInvalid,
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

/// Instance descriptor accepted by the CLI `generate` command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Carousel5,
    Planted { k: usize },
    RandomTournament { n: usize, seed: u64 },
    Sparse { n: usize, seed: u64 },
    Transitive { n: usize },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Digraph, GenError> {
        match *self {
            GeneratorSpec::Carousel5 => Ok(gen_carousel5()),
            GeneratorSpec::Planted { k } => gen_planted_carousels(k),
            GeneratorSpec::RandomTournament { n, seed } => gen_random_tournament(n, seed),
            GeneratorSpec::Sparse { n, seed } => gen_sparse(n, seed),
            GeneratorSpec::Transitive { n } => gen_transitive(n),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            GeneratorSpec::Carousel5 => "carousel5".into(),
            GeneratorSpec::Planted { k } => format!("planted k={k}"),
            GeneratorSpec::RandomTournament { n, seed } => {
                format!("random_tournament n={n} seed={seed}")
            }
            GeneratorSpec::Sparse { n, seed } => format!("sparse n={n} seed={seed}"),
            GeneratorSpec::Transitive { n } => format!("transitive n={n}"),
        }
    }
}

/// The 5-vertex rotational tournament: every vertex beats the next two
/// (mod 5). The smallest tournament with tau_t / nu_t = 3/2.
pub fn gen_carousel5() -> Digraph {
    let mut g = Digraph::new(5, GraphMode::Simple);
    for i in 0..5 {
        g.add_unit_arc(i, (i + 1) % 5).expect("carousel arcs are valid");
        g.add_unit_arc(i, (i + 2) % 5).expect("carousel arcs are valid");
    }
    g
}

/// `k` disjoint carousel blocks of five vertices, all cross-block arcs
/// pointing from the lower block to the higher one. Cross-block arcs are
/// acyclic, so every triangle lives inside a block and the 3/2 ratio adds
/// up over blocks.
pub fn gen_planted_carousels(k: usize) -> Result<Digraph, GenError> {
    if k == 0 {
        return Err(GenError::BadParameter("planted blocks k must be >= 1".into()));
    }
    let n = 5 * k;
    let mut g = Digraph::new(n, GraphMode::Simple);
    for b in 0..k {
        let base = 5 * b;
        for i in 0..5 {
            g.add_unit_arc(base + i, base + (i + 1) % 5).expect("valid");
            g.add_unit_arc(base + i, base + (i + 2) % 5).expect("valid");
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u / 5 < v / 5 {
                g.add_unit_arc(u, v).expect("valid");
            }
        }
    }
    Ok(g)
}

/// Transitive tournament: i -> j for i < j. Triangle-free.
pub fn gen_transitive(n: usize) -> Result<Digraph, GenError> {
    if n == 0 {
        return Err(GenError::BadParameter("transitive order n must be >= 1".into()));
    }
    let mut g = Digraph::new(n, GraphMode::Simple);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_unit_arc(u, v).expect("valid");
        }
    }
    Ok(g)
}

/// Random tournament: each pair {u, v} with u < v (in that order) gets one
/// arc, oriented by a fair coin.
pub fn gen_random_tournament(n: usize, seed: u64) -> Result<Digraph, GenError> {
    if n == 0 {
        return Err(GenError::BadParameter("tournament order n must be >= 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut g = Digraph::new(n, GraphMode::Simple);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.coin() {
                g.add_unit_arc(u, v).expect("valid");
            } else {
                g.add_unit_arc(v, u).expect("valid");
            }
        }
    }
    Ok(g)
}

/// Random simple digraph with bigons: every ordered pair (u, v), u != v,
/// carries an arc independently with probability 1/2. Test fodder for the
/// rounding and verification suites rather than a file-format kind.
pub fn gen_random_digraph(n: usize, seed: u64) -> Digraph {
    let mut rng = SplitMix64::new(seed);
    let mut g = Digraph::new(n, GraphMode::Simple);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.coin() {
                g.add_unit_arc(u, v).expect("valid");
            }
        }
    }
    g
}

/// Sparse forward/backward construction: forward arcs appear on each
/// ordered pair independently with probability `p = n^(-11/12)`; every
/// forward 2-path u -> v -> w then forces the backward arc w -> u. Arcs
/// are deduplicated (simple-digraph mode) and a forward label wins when a
/// backward insertion collides with an existing forward arc. The vertex
/// set A of short forward cycles (length at most 6, orientation-blind) is
/// computed here because the bipartition cover needs it. The probability
/// `p` is the only floating-point quantity in the crate and is used for
/// sampling alone.
pub fn gen_sparse(n: usize, seed: u64) -> Result<Digraph, GenError> {
    if n < 2 {
        return Err(GenError::BadParameter("sparse order n must be >= 2".into()));
    }
    let p = (n as f64).powf(-11.0 / 12.0);
    let mut rng = SplitMix64::new(seed);
    let mut g = Digraph::new(n, GraphMode::Simple);
    let mut forward = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.bernoulli(p) {
                forward[u][v] = true;
                g.add_arc_labeled(u, v, Rat::one(), Some(ArcLabel::Forward))
                    .expect("valid");
            }
        }
    }
    // close every forward 2-path with a backward arc, skipping collisions
    // with forward arcs and 2-cycles that would need a self-loop
    for u in 0..n {
        for v in 0..n {
            if !forward[u][v] {
                continue;
            }
            for w in 0..n {
                if w == u || !forward[v][w] || forward[w][u] {
                    continue;
                }
                if g.arc_between(w, u).is_none() {
                    g.add_arc_labeled(w, u, Rat::one(), Some(ArcLabel::Backward))
                        .expect("valid");
                }
            }
        }
    }
    g.set_short_cycle_vertices(short_forward_cycles(n, &forward));
    Ok(g)
}

/// Vertices lying on a cycle of length 2..=6 in the underlying undirected
/// multigraph of forward arcs ("regardless of orientation"; two opposite
/// forward arcs between the same pair count as a 2-cycle).
fn short_forward_cycles(n: usize, forward: &[Vec<bool>]) -> BTreeSet<VertexId> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (u, row) in forward.iter().enumerate() {
        for (v, &present) in row.iter().enumerate() {
            if present {
                edges.push((u, v));
            }
        }
    }
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, &(u, v)) in edges.iter().enumerate() {
        incident[u].push((v, idx));
        incident[v].push((u, idx));
    }

    let mut in_cycle = BTreeSet::new();
    for start in 0..n {
        if find_cycle_through(
            start,
            start,
            0,
            &incident,
            &mut vec![false; edges.len()],
            &mut vec![false; n],
        ) {
            in_cycle.insert(start);
        }
    }
    in_cycle
}

/// Depth-first search for a closed walk from `start` back to `start` of
/// length 2..=6 using distinct edges and distinct intermediate vertices.
fn find_cycle_through(
    start: usize,
    at: usize,
    depth: usize,
    incident: &[Vec<(usize, usize)>],
    used_edge: &mut Vec<bool>,
    on_path: &mut Vec<bool>,
) -> bool {
    if depth >= 6 {
        return false;
    }
    for &(next, edge) in &incident[at] {
        if used_edge[edge] {
            continue;
        }
        if next == start {
            if depth + 1 >= 2 {
                return true;
            }
            continue;
        }
        if on_path[next] {
            continue;
        }
        used_edge[edge] = true;
        on_path[next] = true;
        let found = find_cycle_through(start, next, depth + 1, incident, used_edge, on_path);
        used_edge[edge] = false;
        on_path[next] = false;
        if found {
            return true;
        }
    }
    false
}

/// Cover from a linear order: delete all arcs going backward in the
/// order, or all arcs going forward if those are fewer. The survivor set
/// is consistently oriented along the order, hence acyclic and
/// triangle-free, for any multigraph.
pub fn ordering_cover(g: &Digraph, order: &[VertexId]) -> Result<CoverSet, GenError> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(GenError::InvalidPermutation(n));
    }
    let mut position = vec![usize::MAX; n];
    for (pos, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(GenError::InvalidPermutation(n));
        }
        position[v] = pos;
    }
    let mut backward = BTreeSet::new();
    let mut forward = BTreeSet::new();
    for arc in g.arcs() {
        if position[arc.tail] > position[arc.head] {
            backward.insert(arc.id);
        } else {
            forward.insert(arc.id);
        }
    }
    let chosen = if backward.len() <= forward.len() {
        backward
    } else {
        forward
    };
    Ok(CoverSet::new(g, chosen).expect("arcs come from g"))
}

/// Cover for sparse instances: split vertices into X and Y by fair coins
/// (in vertex order), delete every forward arc except those from Y to X,
/// and delete all arcs incident to the short-cycle set A. Validity is
/// verified, not assumed.
pub fn bipartition_cover(g: &Digraph, seed: u64) -> Result<CoverSet, GenError> {
    let a_set = g.short_cycle_vertices().ok_or(GenError::MissingLabels)?;
    if g.arcs().any(|arc| arc.label.is_none()) {
        return Err(GenError::MissingLabels);
    }
    let n = g.vertex_count();
    let mut rng = SplitMix64::new(seed);
    // true = X, false = Y
    let in_x: Vec<bool> = (0..n).map(|_| rng.coin()).collect();
    let mut arcs: BTreeSet<ArcId> = BTreeSet::new();
    for arc in g.arcs() {
        if a_set.contains(&arc.tail) || a_set.contains(&arc.head) {
            arcs.insert(arc.id);
            continue;
        }
        if arc.label == Some(ArcLabel::Forward) && !(in_x[arc.head] && !in_x[arc.tail]) {
            // forward arcs survive only when oriented Y -> X
            arcs.insert(arc.id);
        }
    }
    let cover = CoverSet::new(g, arcs).expect("arcs come from g");
    if !cover.verify(g).expect("arcs come from g") {
        return Err(GenError::CoverInvalid);
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::serialize_digraph;

    #[test]
    fn carousel_is_a_regular_tournament() {
        let g = gen_carousel5();
        assert_eq!(g.arc_count(), 10);
        assert!(g.is_tournament());
        for v in 0..5 {
            let out = g.arcs().filter(|a| a.tail == v).count();
            let into = g.arcs().filter(|a| a.head == v).count();
            assert_eq!((out, into), (2, 2));
        }
    }

    #[test]
    fn carousel_has_exactly_the_five_rotational_triangles() {
        let g = gen_carousel5();
        let ts = g.enumerate_triangles();
        assert_eq!(ts.len(), 5);
        let mut vertex_sets: Vec<BTreeSet<usize>> = ts
            .iter()
            .map(|t| t.vertices(&g).into_iter().collect())
            .collect();
        vertex_sets.sort();
        let mut expected: Vec<BTreeSet<usize>> = (0..5)
            .map(|i| [i, (i + 1) % 5, (i + 3) % 5].into_iter().collect())
            .collect();
        expected.sort();
        assert_eq!(vertex_sets, expected);
    }

    #[test]
    fn planted_triangles_stay_inside_blocks() {
        let g = gen_planted_carousels(3).unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert!(g.is_tournament());
        for t in g.enumerate_triangles() {
            let blocks: BTreeSet<usize> = t.vertices(&g).iter().map(|v| v / 5).collect();
            assert_eq!(blocks.len(), 1, "triangle crosses blocks");
        }
        assert_eq!(g.enumerate_triangles().len(), 15);
    }

    #[test]
    fn planted_k1_matches_carousel_up_to_ids() {
        let a = serialize_digraph(&gen_planted_carousels(1).unwrap(), &[]);
        let b = serialize_digraph(&gen_carousel5(), &[]);
        assert_eq!(a, b);
        assert!(gen_planted_carousels(0).is_err());
    }

    #[test]
    fn random_tournament_is_deterministic_per_seed() {
        let a = gen_random_tournament(10, 7).unwrap();
        let b = gen_random_tournament(10, 7).unwrap();
        let c = gen_random_tournament(10, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.arc_count(), 45);
        assert!(a.is_tournament());
    }

    #[test]
    fn random_tournament_triangle_count_near_expectation() {
        // each unordered triple is cyclic with probability 1/4, so the
        // expected count is n(n-1)(n-2)/24; the mean over 20 seeds must
        // stay within three standard errors
        let n = 15usize;
        let seeds = 20u64;
        let expected = (n * (n - 1) * (n - 2)) as f64 / 24.0;
        let triples = (n * (n - 1) * (n - 2) / 6) as f64;
        let sd_single = (triples * 0.25 * 0.75).sqrt();
        let se = sd_single / (seeds as f64).sqrt();
        let mean: f64 = (0..seeds)
            .map(|s| {
                gen_random_tournament(n, 1000 + s)
                    .unwrap()
                    .enumerate_triangles()
                    .len() as f64
            })
            .sum::<f64>()
            / seeds as f64;
        assert!(
            (mean - expected).abs() <= 3.0 * se,
            "mean {mean} vs expected {expected} (se {se})"
        );
    }

    #[test]
    fn sparse_backward_arcs_close_forward_2_paths() {
        for seed in [1, 2, 3] {
            let g = gen_sparse(50, seed).unwrap();
            for arc in g.arcs() {
                if arc.label == Some(ArcLabel::Backward) {
                    let (w, u) = (arc.tail, arc.head);
                    let witness = (0..50).any(|v| {
                        v != u
                            && v != w
                            && forward_arc(&g, u, v).is_some()
                            && forward_arc(&g, v, w).is_some()
                    });
                    assert!(witness, "backward arc {w}->{u} lacks a forward 2-path");
                }
            }
            assert!(g.short_cycle_vertices().is_some());
        }
    }

    fn forward_arc(g: &Digraph, u: usize, v: usize) -> Option<ArcId> {
        g.arc_between(u, v)
            .filter(|&id| g.arc(id).and_then(|a| a.label) == Some(ArcLabel::Forward))
    }

    #[test]
    fn sparse_is_deterministic_per_seed() {
        let a = serialize_digraph(&gen_sparse(30, 5).unwrap(), &[]);
        let b = serialize_digraph(&gen_sparse(30, 5).unwrap(), &[]);
        assert_eq!(a, b);
    }

    #[test]
    fn short_cycle_set_catches_forward_bigons_and_triangles() {
        // hand-built forward structure: bigon {0,1}, triangle {2,3,4},
        // 7-cycle 5..11 (too long), isolated chain 12->13
        let n = 14;
        let mut forward = vec![vec![false; n]; n];
        forward[0][1] = true;
        forward[1][0] = true;
        forward[2][3] = true;
        forward[3][4] = true;
        forward[4][2] = true;
        for i in 5..12 {
            let j = if i == 11 { 5 } else { i + 1 };
            forward[i][j] = true;
        }
        forward[12][13] = true;
        let a = short_forward_cycles(n, &forward);
        let expected: BTreeSet<usize> = [0, 1, 2, 3, 4].into_iter().collect();
        assert_eq!(a, expected);
    }

    #[test]
    fn ordering_cover_on_transitive_is_empty() {
        let g = gen_transitive(6).unwrap();
        let order: Vec<usize> = (0..6).collect();
        let cover = ordering_cover(&g, &order).unwrap();
        assert!(cover.is_empty());
        assert!(cover.verify(&g).unwrap());
    }

    #[test]
    fn ordering_cover_on_c3_deletes_one_arc() {
        let mut g = Digraph::new(3, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 2).unwrap();
        g.add_unit_arc(2, 0).unwrap();
        let cover = ordering_cover(&g, &[0, 1, 2]).unwrap();
        assert_eq!(cover.len(), 1);
        assert!(cover.verify(&g).unwrap());
    }

    #[test]
    fn ordering_cover_respects_the_reversal_rule() {
        for seed in 0..5 {
            let g = gen_random_tournament(9, seed).unwrap();
            let order: Vec<usize> = (0..9).collect();
            let cover = ordering_cover(&g, &order).unwrap();
            assert!(cover.len() <= 9 * 8 / 4);
            assert!(cover.verify(&g).unwrap());
        }
    }

    #[test]
    fn ordering_cover_rejects_non_permutations() {
        let g = gen_carousel5();
        assert_eq!(
            ordering_cover(&g, &[0, 1, 2, 3]).unwrap_err(),
            GenError::InvalidPermutation(5)
        );
        assert_eq!(
            ordering_cover(&g, &[0, 1, 2, 3, 3]).unwrap_err(),
            GenError::InvalidPermutation(5)
        );
    }

    #[test]
    fn bipartition_cover_is_always_a_cover() {
        for seed in [10, 11, 12] {
            let g = gen_sparse(40, seed).unwrap();
            for split_seed in 0..3 {
                let cover = bipartition_cover(&g, split_seed).unwrap();
                assert!(cover.verify(&g).unwrap());
            }
        }
    }

    #[test]
    fn bipartition_cover_requires_labels() {
        let g = gen_carousel5();
        assert_eq!(
            bipartition_cover(&g, 0).unwrap_err(),
            GenError::MissingLabels
        );
    }
}
