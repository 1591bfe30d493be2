//! Directed weighted multigraphs, triangle enumeration and the text format.
//!
//! Arcs carry a stable identity that survives arc removal: covers and
//! packings key on arc ids, never on vertex pairs, because parallel arcs
//! in multigraph mode carry independent values. Weights are exact
//! rationals. A `Digraph` is immutable once built; `remove_arcs` returns a
//! new value and leaves the original untouched.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rat::{format_rat, is_nonnegative, parse_rat, Rat};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Stable arc identifier, unique within its digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArcId(pub usize);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Role of an arc in the sparse forward/backward construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArcLabel {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Rat,
    pub label: Option<ArcLabel>,
}

/// Simple digraphs forbid parallel arcs (bigons stay legal); multigraphs
/// allow arbitrary multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    Simple,
    Multi,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop {0} -> {0} rejected")]
    SelfLoop(VertexId),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(VertexId, usize),
    #[error("duplicate arc {0} -> {1} in simple-digraph mode")]
    DuplicateArc(VertexId, VertexId),
    #[error("negative weight rejected")]
    NegativeWeight,
    #[error("unknown arc id {0}")]
    UnknownArc(ArcId),
    #[error("arcs do not form a directed triangle on three distinct vertices")]
    NotATriangle,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    mode: GraphMode,
    arcs: BTreeMap<ArcId, Arc>,
    next_id: usize,
    /// One arc per ordered pair in simple mode.
    pairs: BTreeSet<(VertexId, VertexId)>,
    /// Vertices on short cycles of forward arcs, attached by the sparse
    /// generator and needed by its bipartition cover.
    short_cycle_vertices: Option<BTreeSet<VertexId>>,
}

impl Digraph {
    pub fn new(n: usize, mode: GraphMode) -> Self {
        Digraph {
            n,
            mode,
            arcs: BTreeMap::new(),
            next_id: 0,
            pairs: BTreeSet::new(),
            short_cycle_vertices: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn add_arc(
        &mut self,
        tail: VertexId,
        head: VertexId,
        weight: Rat,
    ) -> Result<ArcId, GraphError> {
        self.add_arc_labeled(tail, head, weight, None)
    }

    pub fn add_unit_arc(&mut self, tail: VertexId, head: VertexId) -> Result<ArcId, GraphError> {
        self.add_arc(tail, head, Rat::one())
    }

    pub fn add_arc_labeled(
        &mut self,
        tail: VertexId,
        head: VertexId,
        weight: Rat,
        label: Option<ArcLabel>,
    ) -> Result<ArcId, GraphError> {
        if tail >= self.n {
            return Err(GraphError::VertexOutOfRange(tail, self.n));
        }
        if head >= self.n {
            return Err(GraphError::VertexOutOfRange(head, self.n));
        }
        if tail == head {
            return Err(GraphError::SelfLoop(tail));
        }
        if !is_nonnegative(&weight) {
            return Err(GraphError::NegativeWeight);
        }
        if self.mode == GraphMode::Simple && !self.pairs.insert((tail, head)) {
            return Err(GraphError::DuplicateArc(tail, head));
        }
        let id = ArcId(self.next_id);
        self.next_id += 1;
        self.arcs.insert(
            id,
            Arc {
                id,
                tail,
                head,
                weight,
                label,
            },
        );
        Ok(id)
    }

    pub fn arc(&self, id: ArcId) -> Option<&Arc> {
        self.arcs.get(&id)
    }

    /// Arcs in ascending id order.
    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.values()
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.arcs.keys().copied()
    }

    /// All arcs tail -> head, ascending id.
    pub fn arcs_between(&self, tail: VertexId, head: VertexId) -> Vec<ArcId> {
        self.arcs
            .values()
            .filter(|a| a.tail == tail && a.head == head)
            .map(|a| a.id)
            .collect()
    }

    /// First arc tail -> head, if any. Convenient in simple mode.
    pub fn arc_between(&self, tail: VertexId, head: VertexId) -> Option<ArcId> {
        self.arcs
            .values()
            .find(|a| a.tail == tail && a.head == head)
            .map(|a| a.id)
    }

    pub fn weight_of(&self, id: ArcId) -> Result<&Rat, GraphError> {
        self.arc(id)
            .map(|a| &a.weight)
            .ok_or(GraphError::UnknownArc(id))
    }

    pub fn total_weight<'a>(
        &self,
        ids: impl IntoIterator<Item = &'a ArcId>,
    ) -> Result<Rat, GraphError> {
        let mut sum = Rat::zero();
        for id in ids {
            sum += self.weight_of(*id)?;
        }
        Ok(sum)
    }

    pub fn all_unit_weights(&self) -> bool {
        self.arcs.values().all(|a| a.weight.is_one())
    }

    /// Exactly one arc between every unordered pair of vertices.
    pub fn is_tournament(&self) -> bool {
        if self.arc_count() * 2 != self.n * self.n.saturating_sub(1) {
            return false;
        }
        let mut seen = BTreeSet::new();
        for a in self.arcs.values() {
            let key = (a.tail.min(a.head), a.tail.max(a.head));
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    pub fn short_cycle_vertices(&self) -> Option<&BTreeSet<VertexId>> {
        self.short_cycle_vertices.as_ref()
    }

    pub fn set_short_cycle_vertices(&mut self, vertices: BTreeSet<VertexId>) {
        self.short_cycle_vertices = Some(vertices);
    }

    /// D \ F with value semantics: arc ids of surviving arcs are unchanged.
    pub fn remove_arcs(&self, ids: &BTreeSet<ArcId>) -> Result<Digraph, GraphError> {
        for id in ids {
            if !self.arcs.contains_key(id) {
                return Err(GraphError::UnknownArc(*id));
            }
        }
        let mut out = self.clone();
        for id in ids {
            let arc = out.arcs.remove(id).expect("presence checked above");
            out.pairs.remove(&(arc.tail, arc.head));
        }
        Ok(out)
    }

    fn pair_arc_table(&self) -> Vec<Vec<Vec<ArcId>>> {
        let mut table = vec![vec![Vec::new(); self.n]; self.n];
        for arc in self.arcs.values() {
            table[arc.tail][arc.head].push(arc.id);
        }
        table
    }

    /// Every directed 3-cycle exactly once, in canonical form, sorted by
    /// the canonical arc-id triple. Parallel arcs multiply triangles: one
    /// triangle per combination of arcs closing the same vertex cycle.
    pub fn enumerate_triangles(&self) -> Vec<Triangle> {
        let table = self.pair_arc_table();
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                for w in (v + 1)..self.n {
                    // two cyclic orientations of {u, v, w}, each anchored at u
                    for (x, y) in [(v, w), (w, v)] {
                        for &a in &table[u][x] {
                            for &b in &table[x][y] {
                                for &c in &table[y][u] {
                                    out.push(Triangle { arcs: [a, b, c] });
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// True iff the digraph has no directed triangle; stops at the first.
    pub fn is_triangle_free(&self) -> bool {
        let table = self.pair_arc_table();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                for w in (v + 1)..self.n {
                    for (x, y) in [(v, w), (w, v)] {
                        if !table[u][x].is_empty()
                            && !table[x][y].is_empty()
                            && !table[y][u].is_empty()
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// A directed 3-cycle identified by its three arcs, stored in cycle order
/// and rotated so the arc leaving the smallest vertex comes first. Two
/// triangles are equal iff their canonical arc-id triples are equal, so
/// parallel arcs yield distinct triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triangle {
    arcs: [ArcId; 3],
}

impl Triangle {
    /// Builds a triangle from three arcs that must close a directed cycle
    /// on three distinct vertices, in any order.
    pub fn new(g: &Digraph, ids: [ArcId; 3]) -> Result<Triangle, GraphError> {
        let arcs: Vec<&Arc> = ids
            .iter()
            .map(|&id| g.arc(id).ok_or(GraphError::UnknownArc(id)))
            .collect::<Result<_, _>>()?;
        // find the cycle order starting from ids[0]
        let first = arcs[0];
        for (i, j) in [(1, 2), (2, 1)] {
            let second = arcs[i];
            let third = arcs[j];
            if first.head == second.tail
                && second.head == third.tail
                && third.head == first.tail
            {
                let verts = [first.tail, second.tail, third.tail];
                if verts[0] == verts[1] || verts[1] == verts[2] || verts[0] == verts[2] {
                    return Err(GraphError::NotATriangle);
                }
                return Ok(Triangle::canonical([first.id, second.id, third.id], verts));
            }
        }
        Err(GraphError::NotATriangle)
    }

    fn canonical(cycle: [ArcId; 3], tails: [VertexId; 3]) -> Triangle {
        let start = (0..3).min_by_key(|&i| tails[i]).unwrap();
        Triangle {
            arcs: [
                cycle[start],
                cycle[(start + 1) % 3],
                cycle[(start + 2) % 3],
            ],
        }
    }

    pub fn arcs(&self) -> [ArcId; 3] {
        self.arcs
    }

    pub fn contains_arc(&self, id: ArcId) -> bool {
        self.arcs.contains(&id)
    }

    /// Vertices in cycle order, smallest first.
    pub fn vertices(&self, g: &Digraph) -> [VertexId; 3] {
        let t = |i: usize| g.arc(self.arcs[i]).expect("triangle arc exists").tail;
        [t(0), t(1), t(2)]
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.arcs[0], self.arcs[1], self.arcs[2])
    }
}

/// An arc set whose removal leaves the digraph triangle-free, together
/// with its total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSet {
    arcs: BTreeSet<ArcId>,
    weight: Rat,
}

impl CoverSet {
    /// Weight is computed from `g`; membership of unknown arcs is an error.
    /// Whether the set actually covers all triangles is checked separately
    /// by [`CoverSet::verify`].
    pub fn new(g: &Digraph, arcs: BTreeSet<ArcId>) -> Result<CoverSet, GraphError> {
        let weight = g.total_weight(arcs.iter())?;
        Ok(CoverSet { arcs, weight })
    }

    pub fn empty() -> CoverSet {
        CoverSet {
            arcs: BTreeSet::new(),
            weight: Rat::zero(),
        }
    }

    pub fn arcs(&self) -> &BTreeSet<ArcId> {
        &self.arcs
    }

    pub fn weight(&self) -> &Rat {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// True iff removing the set makes `g` triangle-free.
    pub fn verify(&self, g: &Digraph) -> Result<bool, GraphError> {
        Ok(g.remove_arcs(&self.arcs)?.is_triangle_free())
    }
}

// ---------------------------------------------------------------------------
// Text format
//
//   line 1: `n m`
//   next m lines: `tail head [weight]`, weight an integer or `p/q`, default 1
//   `#` starts a comment; blank lines are ignored
//
// Directive comments survive round trips: `# mode: simple`, `# A: v1 v2 ...`
// (the short-cycle vertex set), and per-arc `# forward` / `# backward`
// labels. Serialization is canonical: arcs sorted by (tail, head, id),
// weights in lowest terms, weight 1 omitted.
// ---------------------------------------------------------------------------

pub fn parse_digraph(text: &str) -> Result<Digraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut mode = GraphMode::Multi;
    let mut short_cycles: Option<(usize, Vec<VertexId>)> = None;
    let mut arc_rows: Vec<(usize, VertexId, VertexId, Rat, Option<ArcLabel>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix('#') {
            let directive = directive.trim();
            if let Some(rest) = directive.strip_prefix("mode:") {
                mode = match rest.trim() {
                    "simple" => GraphMode::Simple,
                    "multi" => GraphMode::Multi,
                    other => return Err(parse_err(lineno, format!("unknown mode `{other}`"))),
                };
            } else if let Some(rest) = directive.strip_prefix("A:") {
                let verts = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| parse_err(lineno, format!("bad vertex id `{t}` in A set")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                short_cycles = Some((lineno, verts));
            }
            continue;
        }
        let (data, comment) = match line.split_once('#') {
            Some((d, c)) => (d.trim(), Some(c.trim())),
            None => (line, None),
        };
        if data.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = data.split_whitespace().collect();
        if header.is_none() {
            if tokens.len() != 2 {
                return Err(parse_err(lineno, "expected header line `n m`"));
            }
            let n = tokens[0]
                .parse::<usize>()
                .map_err(|_| parse_err(lineno, "bad vertex count"))?;
            let m = tokens[1]
                .parse::<usize>()
                .map_err(|_| parse_err(lineno, "bad arc count"))?;
            header = Some((n, m));
            continue;
        }
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(parse_err(lineno, "expected `tail head [weight]`"));
        }
        let tail = tokens[0]
            .parse::<usize>()
            .map_err(|_| parse_err(lineno, format!("bad tail `{}`", tokens[0])))?;
        let head = tokens[1]
            .parse::<usize>()
            .map_err(|_| parse_err(lineno, format!("bad head `{}`", tokens[1])))?;
        let weight = match tokens.get(2) {
            Some(t) => parse_rat(t).map_err(|e| parse_err(lineno, e))?,
            None => Rat::one(),
        };
        let label = match comment {
            Some("forward") => Some(ArcLabel::Forward),
            Some("backward") => Some(ArcLabel::Backward),
            _ => None,
        };
        arc_rows.push((lineno, tail, head, weight, label));
    }

    let (n, m) = header.ok_or_else(|| parse_err(0, "empty input: missing `n m` header"))?;
    if arc_rows.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} arcs but {} were given", arc_rows.len()),
        ));
    }
    let mut g = Digraph::new(n, mode);
    for (lineno, tail, head, weight, label) in arc_rows {
        g.add_arc_labeled(tail, head, weight, label)
            .map_err(|e| parse_err(lineno, e.to_string()))?;
    }
    if let Some((lineno, verts)) = short_cycles {
        for &v in &verts {
            if v >= n {
                return Err(parse_err(lineno, format!("A-set vertex {v} out of range")));
            }
        }
        g.set_short_cycle_vertices(verts.into_iter().collect());
    }
    Ok(g)
}

/// Canonical serialization, with optional extra leading comment lines
/// (each emitted as `# <line>`).
pub fn serialize_digraph(g: &Digraph, extra_comments: &[String]) -> String {
    let mut out = String::new();
    for c in extra_comments {
        out.push_str(&format!("# {c}\n"));
    }
    if g.mode() == GraphMode::Simple {
        out.push_str("# mode: simple\n");
    }
    if let Some(a) = g.short_cycle_vertices() {
        let list: Vec<String> = a.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("# A: {}\n", list.join(" ")));
    }
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.arc_count()));
    let mut arcs: Vec<&Arc> = g.arcs().collect();
    arcs.sort_by_key(|a| (a.tail, a.head, a.id));
    for a in arcs {
        let mut line = format!("{} {}", a.tail, a.head);
        if !a.weight.is_one() {
            line.push_str(&format!(" {}", format_rat(&a.weight)));
        }
        match a.label {
            Some(ArcLabel::Forward) => line.push_str(" # forward"),
            Some(ArcLabel::Backward) => line.push_str(" # backward"),
            None => {}
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    pub(crate) fn directed_c3() -> Digraph {
        let mut g = Digraph::new(3, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 2).unwrap();
        g.add_unit_arc(2, 0).unwrap();
        g
    }

    #[test]
    fn bigon_is_allowed_and_triangle_free() {
        let mut g = Digraph::new(2, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 0).unwrap();
        assert_eq!(g.arc_count(), 2);
        assert!(g.enumerate_triangles().is_empty());
        assert!(g.is_triangle_free());
    }

    #[test]
    fn simple_mode_rejects_duplicate_pair() {
        let mut g = Digraph::new(2, GraphMode::Simple);
        g.add_unit_arc(0, 1).unwrap();
        assert_eq!(
            g.add_unit_arc(0, 1).unwrap_err(),
            GraphError::DuplicateArc(0, 1)
        );
    }

    #[test]
    fn multi_mode_keeps_parallel_arcs_distinct() {
        let mut g = Digraph::new(2, GraphMode::Multi);
        let a = g.add_unit_arc(0, 1).unwrap();
        let b = g.add_unit_arc(0, 1).unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_ne!(a, b);
    }

    #[test]
    fn rejects_self_loops_and_negative_weights() {
        let mut g = Digraph::new(3, GraphMode::Multi);
        assert_eq!(g.add_unit_arc(1, 1).unwrap_err(), GraphError::SelfLoop(1));
        assert_eq!(
            g.add_arc(0, 1, rat(-1, 2)).unwrap_err(),
            GraphError::NegativeWeight
        );
        assert!(matches!(
            g.add_unit_arc(0, 5).unwrap_err(),
            GraphError::VertexOutOfRange(5, 3)
        ));
    }

    #[test]
    fn remove_arc_from_c3_leaves_triangle_free() {
        let g = directed_c3();
        let removed = g
            .remove_arcs(&[ArcId(0)].into_iter().collect())
            .unwrap();
        assert_eq!(removed.arc_count(), 2);
        assert!(removed.is_triangle_free());
        // value semantics: original unchanged
        assert_eq!(g.arc_count(), 3);
        assert!(!g.is_triangle_free());
    }

    #[test]
    fn remove_empty_set_is_identity() {
        let g = directed_c3();
        assert_eq!(g.remove_arcs(&BTreeSet::new()).unwrap(), g);
    }

    #[test]
    fn remove_unknown_arc_fails() {
        let g = directed_c3();
        assert_eq!(
            g.remove_arcs(&[ArcId(99)].into_iter().collect())
                .unwrap_err(),
            GraphError::UnknownArc(ArcId(99))
        );
    }

    #[test]
    fn complete_bidirected_triple_has_two_triangles() {
        let mut g = Digraph::new(3, GraphMode::Simple);
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    g.add_unit_arc(u, v).unwrap();
                }
            }
        }
        let ts = g.enumerate_triangles();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0].vertices(&g), [0, 1, 2]);
        assert_eq!(ts[1].vertices(&g), [0, 2, 1]);
    }

    #[test]
    fn parallel_arcs_multiply_triangles() {
        let mut g = Digraph::new(3, GraphMode::Multi);
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(0, 1).unwrap();
        g.add_unit_arc(1, 2).unwrap();
        g.add_unit_arc(2, 0).unwrap();
        assert_eq!(g.enumerate_triangles().len(), 2);
    }

    #[test]
    fn transitive_tournament_is_triangle_free() {
        let mut g = Digraph::new(4, GraphMode::Simple);
        for u in 0..4 {
            for v in (u + 1)..4 {
                g.add_unit_arc(u, v).unwrap();
            }
        }
        assert!(g.is_triangle_free());
        assert!(g.is_tournament());
    }

    #[test]
    fn triangle_canonical_form_is_rotation_invariant() {
        let g = directed_c3();
        let t1 = Triangle::new(&g, [ArcId(0), ArcId(1), ArcId(2)]).unwrap();
        let t2 = Triangle::new(&g, [ArcId(2), ArcId(0), ArcId(1)]).unwrap();
        let t3 = Triangle::new(&g, [ArcId(1), ArcId(2), ArcId(0)]).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t2, t3);
        assert_eq!(t1.arcs(), [ArcId(0), ArcId(1), ArcId(2)]);
    }

    #[test]
    fn triangle_rejects_non_cycles() {
        let mut g = Digraph::new(4, GraphMode::Simple);
        let a = g.add_unit_arc(0, 1).unwrap();
        let b = g.add_unit_arc(1, 2).unwrap();
        let c = g.add_unit_arc(2, 3).unwrap();
        assert!(Triangle::new(&g, [a, b, c]).is_err());
    }

    #[test]
    fn parse_default_weights() {
        let g = parse_digraph("3 3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.arc_count(), 3);
        assert!(g.arcs().all(|a| a.weight.is_one()));
        assert_eq!(g.enumerate_triangles().len(), 1);
    }

    #[test]
    fn parse_rational_weights() {
        let g = parse_digraph("2 2\n0 1 1/2\n1 0 3").unwrap();
        let w: Vec<Rat> = g.arcs().map(|a| a.weight.clone()).collect();
        assert_eq!(w, vec![rat(1, 2), rat_int(3)]);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_digraph("3 2\n0 1\n0 x").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err}");
        let err = parse_digraph("2 1\n0 5").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }), "{err}");
        let err = parse_digraph("2 1\n0 1 -2").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn parse_rejects_arc_count_mismatch() {
        assert!(parse_digraph("3 3\n0 1\n1 2").is_err());
        assert!(parse_digraph("3 1\n0 1\n1 2").is_err());
    }

    #[test]
    fn serialize_parse_round_trip_with_labels_and_a_set() {
        let mut g = Digraph::new(4, GraphMode::Simple);
        g.add_arc_labeled(2, 1, Rat::one(), Some(ArcLabel::Backward))
            .unwrap();
        g.add_arc_labeled(0, 1, rat(1, 2), Some(ArcLabel::Forward))
            .unwrap();
        g.add_arc_labeled(1, 3, Rat::one(), Some(ArcLabel::Forward))
            .unwrap();
        g.set_short_cycle_vertices([1, 3].into_iter().collect());
        let text = serialize_digraph(&g, &[]);
        let back = parse_digraph(&text).unwrap();
        assert_eq!(back.mode(), GraphMode::Simple);
        assert_eq!(
            back.short_cycle_vertices().cloned().unwrap(),
            [1, 3].into_iter().collect()
        );
        // canonical text is a fixed point of parse . serialize
        assert_eq!(serialize_digraph(&back, &[]), text);
        let labels: Vec<_> = back.arcs().map(|a| (a.tail, a.head, a.label)).collect();
        assert_eq!(
            labels,
            vec![
                (0, 1, Some(ArcLabel::Forward)),
                (1, 3, Some(ArcLabel::Forward)),
                (2, 1, Some(ArcLabel::Backward)),
            ]
        );
    }

    #[test]
    fn cover_set_weight_and_verify() {
        let g = directed_c3();
        let cover = CoverSet::new(&g, [ArcId(1)].into_iter().collect()).unwrap();
        assert_eq!(cover.weight(), &Rat::one());
        assert!(cover.verify(&g).unwrap());
        let non_cover = CoverSet::empty();
        assert!(!non_cover.verify(&g).unwrap());
    }
}
