//! Simple graphs, line graphs and Krausz partitions.
//!
//! Vertices are dense indices `0..n`. Edges are stored in canonical
//! `(min, max)` form inside a `BTreeSet`, so iteration order (and every
//! labelling derived from it) is lexicographic and reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Result, SqwError};

/// Simple undirected graph with indexed vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges are canonicalized to
    /// `(min, max)` and deduplicated; self-loops and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a == b {
                return Err(SqwError::SelfLoop(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(SqwError::VertexOutOfRange { vertex: v, n });
                }
            }
            let e = (a.min(b), a.max(b));
            set.insert(e);
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Graph { n, edges: set, adj })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges).expect("complete graph is always valid")
    }

    /// Cycle 0 - 1 - ... - (n-1) - 0.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle is always valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// True iff `set` induces a complete subgraph. Singletons count.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        for (i, &a) in set.iter().enumerate() {
            if a >= self.n {
                return false;
            }
            for &b in &set[i + 1..] {
                if a == b || !self.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Line graph: one vertex per edge, adjacency iff the source edges
    /// share an endpoint. The returned bijection records which edge each
    /// line-graph vertex stands for, in lexicographic edge order.
    pub fn line_graph(&self) -> Result<(Graph, EdgeBijection)> {
        if self.edges.is_empty() {
            return Err(SqwError::EmptyEdgeSet);
        }
        let bij = EdgeBijection::from_pairs(self.edges.iter().copied());
        let m = bij.len();
        let mut edges = Vec::new();
        for i in 0..m {
            let (a1, b1) = bij.pair_at(i);
            for j in i + 1..m {
                let (a2, b2) = bij.pair_at(j);
                if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                    edges.push((i, j));
                }
            }
        }
        let lg = Graph::new(m, &edges)?;
        Ok((lg, bij))
    }

    /// Searches for an induced claw (K_{1,3}): a center plus three
    /// pairwise non-adjacent neighbors. Exhaustive over all centers and
    /// neighbor triples; fine at desk scale.
    pub fn find_claw(&self) -> Option<[usize; 4]> {
        for c in 0..self.n {
            let nb: Vec<usize> = self.neighbors(c).collect();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    if self.has_edge(nb[i], nb[j]) {
                        continue;
                    }
                    for k in j + 1..nb.len() {
                        if !self.has_edge(nb[i], nb[k]) && !self.has_edge(nb[j], nb[k]) {
                            return Some([c, nb[i], nb[j], nb[k]]);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Bipartite graph with parts X and Y; edges are `(x, y)` index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    x_count: usize,
    y_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(x_count: usize, y_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if x_count == 0 || y_count == 0 {
            return Err(SqwError::EmptyPart);
        }
        let mut set = BTreeSet::new();
        for &(x, y) in edges {
            if x >= x_count {
                return Err(SqwError::VertexOutOfRange { vertex: x, n: x_count });
            }
            if y >= y_count {
                return Err(SqwError::VertexOutOfRange { vertex: y, n: y_count });
            }
            set.insert((x, y));
        }
        Ok(BipartiteGraph { x_count, y_count, edges: set })
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic `(x, y)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y))
    }

    /// Flattens into a simple graph: X keeps its indices, Y is shifted by
    /// `x_count`.
    pub fn to_graph(&self) -> Graph {
        let edges: Vec<_> = self.edges.iter().map(|&(x, y)| (x, self.x_count + y)).collect();
        Graph::new(self.x_count + self.y_count, &edges).expect("bipartite edges are in range")
    }

    pub fn is_connected(&self) -> bool {
        let n = self.x_count + self.y_count;
        if self.edges.is_empty() {
            return n == 1;
        }
        let g = self.to_graph();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Line graph over the bipartite edges, labelled lexicographically by
    /// `(x, y)`. Two edge-vertices are adjacent iff they share an
    /// endpoint in either part.
    pub fn line_graph(&self) -> Result<(Graph, EdgeBijection)> {
        if self.edges.is_empty() {
            return Err(SqwError::EmptyEdgeSet);
        }
        let bij = EdgeBijection::from_pairs(self.edges.iter().copied());
        let m = bij.len();
        let mut edges = Vec::new();
        for i in 0..m {
            let (x1, y1) = bij.pair_at(i);
            for j in i + 1..m {
                let (x2, y2) = bij.pair_at(j);
                if x1 == x2 || y1 == y2 {
                    edges.push((i, j));
                }
            }
        }
        let lg = Graph::new(m, &edges)?;
        Ok((lg, bij))
    }
}

/// Bijection between a set of index pairs (edges) and dense labels
/// `0..len`. Pairs are enumerated in the order they were supplied, which
/// for graphs built here is always lexicographic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBijection {
    forward: BTreeMap<(usize, usize), usize>,
    backward: Vec<(usize, usize)>,
}

impl EdgeBijection {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let backward: Vec<_> = pairs.into_iter().collect();
        let forward = backward.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        EdgeBijection { forward, backward }
    }

    pub fn len(&self) -> usize {
        self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backward.is_empty()
    }

    /// Label of an edge, if the edge is in the domain.
    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.forward.get(&pair).copied()
    }

    /// Edge carried by a label. Panics on an out-of-range label.
    pub fn pair_at(&self, index: usize) -> (usize, usize) {
        self.backward[index]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.backward.iter().copied()
    }
}

/// A list of cliques used as a candidate Krausz partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartition {
    pub cliques: Vec<Vec<usize>>,
}

impl CliquePartition {
    pub fn new(cliques: Vec<Vec<usize>>) -> Self {
        let cliques = cliques
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        CliquePartition { cliques }
    }
}

/// One defect found while validating a Krausz partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KrauszViolation {
    NotAClique { clique: usize },
    VertexOutOfRange { clique: usize, vertex: usize },
    EdgeUncovered { edge: (usize, usize) },
    EdgeMultiplyCovered { edge: (usize, usize), cliques: Vec<usize> },
    VertexInTooManyCliques { vertex: usize, cliques: Vec<usize> },
}

/// Outcome of [`validate_krausz_partition`]. An empty violation list
/// means the partition certifies that the graph is a line graph; if in
/// addition the partition is two-colorable, it is the line graph of a
/// bipartite graph.
#[derive(Debug, Clone)]
pub struct KrauszReport {
    pub violations: Vec<KrauszViolation>,
    /// Two-colorability of the clique intersection structure (cliques as
    /// nodes, adjacency = shared vertex).
    pub two_colorable: bool,
}

impl KrauszReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `p` partitions the edges of `g` into cliques with every
/// vertex in at most two cliques, and reports whether the partition's
/// intersection structure is two-colorable.
pub fn validate_krausz_partition(g: &Graph, p: &CliquePartition) -> KrauszReport {
    let mut violations = Vec::new();

    for (ci, clique) in p.cliques.iter().enumerate() {
        if let Some(&v) = clique.iter().find(|&&v| v >= g.n_vertices()) {
            violations.push(KrauszViolation::VertexOutOfRange { clique: ci, vertex: v });
            continue;
        }
        if !g.is_clique(clique) {
            violations.push(KrauszViolation::NotAClique { clique: ci });
        }
    }

    // Edge coverage: every edge of g in exactly one clique.
    let mut cover: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ci, clique) in p.cliques.iter().enumerate() {
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                cover.entry((a.min(b), a.max(b))).or_default().push(ci);
            }
        }
    }
    for e in g.edges() {
        match cover.get(&e) {
            None => violations.push(KrauszViolation::EdgeUncovered { edge: e }),
            Some(cs) if cs.len() > 1 => violations.push(KrauszViolation::EdgeMultiplyCovered {
                edge: e,
                cliques: cs.clone(),
            }),
            _ => {}
        }
    }

    // Vertex budget: at most two cliques per vertex.
    let mut membership: Vec<Vec<usize>> = vec![Vec::new(); g.n_vertices()];
    for (ci, clique) in p.cliques.iter().enumerate() {
        for &v in clique {
            if v < g.n_vertices() {
                membership[v].push(ci);
            }
        }
    }
    for (v, cs) in membership.iter().enumerate() {
        if cs.len() > 2 {
            violations.push(KrauszViolation::VertexInTooManyCliques { vertex: v, cliques: cs.clone() });
        }
    }

    KrauszReport {
        violations,
        two_colorable: partition_is_two_colorable(&p.cliques, &membership),
    }
}

/// BFS 2-coloring of the clique intersection graph.
fn partition_is_two_colorable(cliques: &[Vec<usize>], membership: &[Vec<usize>]) -> bool {
    let k = cliques.len();
    let mut adj = vec![BTreeSet::new(); k];
    for cs in membership {
        for (i, &a) in cs.iter().enumerate() {
            for &b in &cs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let mut color = vec![None; k];
    for start in 0..k {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let my = color[c].unwrap();
            for &d in &adj[c] {
                match color[d] {
                    None => {
                        color[d] = Some(!my);
                        queue.push_back(d);
                    }
                    Some(other) if other == my => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Rebuilds the bipartite root graph from a two-colorable Krausz
/// partition given as its two colour classes. Each `part_a` clique
/// becomes an X vertex, each `part_b` clique a Y vertex, and each graph
/// vertex the edge joining its pair of cliques. The returned bijection
/// maps bipartite edges to the graph vertices they label.
pub fn root_graph_from_two_colorable_partition(
    g: &Graph,
    part_a: &CliquePartition,
    part_b: &CliquePartition,
) -> Result<(BipartiteGraph, EdgeBijection)> {
    let n = g.n_vertices();
    let locate = |part: &CliquePartition, v: usize| -> Vec<usize> {
        part.cliques
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&v))
            .map(|(i, _)| i)
            .collect()
    };

    // Ambiguity first: a cross-class clique pair sharing two vertices is
    // exactly the obstruction of the Szegedy conversion, and the most
    // useful thing to name.
    for (ai, ca) in part_a.cliques.iter().enumerate() {
        for (bi, cb) in part_b.cliques.iter().enumerate() {
            let shared: Vec<usize> = ca.iter().filter(|v| cb.contains(v)).copied().collect();
            if shared.len() >= 2 {
                return Err(SqwError::AmbiguousLabelling { a: ai, b: bi, shared });
            }
        }
    }

    let mut pair_of = Vec::with_capacity(n);
    for v in 0..n {
        let la = locate(part_a, v);
        let lb = locate(part_b, v);
        if la.len() != 1 || lb.len() != 1 {
            return Err(SqwError::VertexNotBicovered { vertex: v });
        }
        pair_of.push((la[0], lb[0]));
    }

    // The combined classes must be a genuine Krausz partition.
    let combined = CliquePartition::new(
        part_a.cliques.iter().chain(part_b.cliques.iter()).cloned().collect(),
    );
    let report = validate_krausz_partition(g, &combined);
    if !report.is_valid() {
        return Err(SqwError::InvalidPartition(format!("{:?}", report.violations[0])));
    }

    // Edges sorted lexicographically; the bijection still maps each edge
    // to the graph vertex that carries it.
    let mut labelled: Vec<((usize, usize), usize)> =
        pair_of.iter().copied().zip(0..n).collect();
    labelled.sort_unstable();
    let bip = BipartiteGraph::new(
        part_a.cliques.len(),
        part_b.cliques.len(),
        &labelled.iter().map(|&(e, _)| e).collect::<Vec<_>>(),
    )?;
    let mut backward = vec![(0, 0); n];
    let mut forward = BTreeMap::new();
    for (e, v) in labelled {
        forward.insert(e, v);
        backward[v] = e;
    }
    Ok((bip, EdgeBijection { forward, backward }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Line graph of the appendix bipartite graph: X = {a0..a3},
    /// Y = {b0..b2}, a0 adjacent to every b, and a_{i} - b_{i-1} for
    /// i = 1..3. Edge labels 0..5 in lexicographic order match the
    /// worked example's 1..6.
    pub(crate) fn appendix_bipartite() -> BipartiteGraph {
        BipartiteGraph::new(4, 3, &[(0, 0), (0, 1), (0, 2), (1, 0), (2, 1), (3, 2)]).unwrap()
    }

    /// Two K4's glued on the edge {2,3}: six vertices, eleven edges.
    pub(crate) fn glued_k4() -> Graph {
        Graph::new(
            6,
            &[
                (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                (2, 4), (2, 5), (3, 4), (3, 5), (4, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn build_canonicalizes_and_dedups() {
        let g = Graph::new(3, &[(1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn build_smallest_connected() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(g.n_edges(), 1);
    }

    #[test]
    fn build_ten_cycle() {
        let g = Graph::cycle(10);
        assert_eq!(g.n_edges(), 10);
        assert!(g.has_edge(9, 0));
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(Graph::new(3, &[(0, 0)]), Err(SqwError::SelfLoop(0))));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            Graph::new(2, &[(0, 2)]),
            Err(SqwError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn line_graph_of_path() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (lg, bij) = g.line_graph().unwrap();
        assert_eq!(lg.n_vertices(), 2);
        assert_eq!(lg.n_edges(), 1);
        assert_eq!(bij.pair_at(0), (0, 1));
        assert_eq!(bij.pair_at(1), (1, 2));
    }

    #[test]
    fn line_graph_of_triangle_is_triangle() {
        // Brute-force oracle over the three edge pairs: every pair of
        // triangle edges shares a vertex, so L(K3) = K3.
        let g = Graph::complete(3);
        let (lg, _) = g.line_graph().unwrap();
        assert_eq!(lg.n_vertices(), 3);
        assert_eq!(lg.n_edges(), 3);
    }

    #[test]
    fn line_graph_empty_edges_errors() {
        let g = Graph::new(4, &[]).unwrap();
        assert!(matches!(g.line_graph(), Err(SqwError::EmptyEdgeSet)));
    }

    #[test]
    fn appendix_line_graph_structure() {
        let (lg, bij) = appendix_bipartite().line_graph().unwrap();
        assert_eq!(lg.n_vertices(), 6);
        // Edge-vertex correspondence of the worked example (shifted to
        // zero-based labels).
        assert_eq!(bij.index_of((0, 0)), Some(0));
        assert_eq!(bij.index_of((0, 1)), Some(1));
        assert_eq!(bij.index_of((0, 2)), Some(2));
        assert_eq!(bij.index_of((1, 0)), Some(3));
        assert_eq!(bij.index_of((2, 1)), Some(4));
        assert_eq!(bij.index_of((3, 2)), Some(5));
        // {0,1,2} is the clique labelled by a0; the remaining edges pair
        // each a_i-edge with the b-edge it shares an endpoint with.
        let expect = Graph::new(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(lg, expect);
    }

    #[test]
    fn claw_found_on_star() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let claw = star.find_claw().expect("K_{1,3} is its own claw");
        assert_eq!(claw[0], 0);
    }

    #[test]
    fn no_claw_in_triangle() {
        assert!(Graph::complete(3).find_claw().is_none());
    }

    #[test]
    fn line_graphs_are_claw_free() {
        for g in [Graph::cycle(7), Graph::complete(5), glued_k4()] {
            let (lg, _) = g.line_graph().unwrap();
            assert!(lg.find_claw().is_none(), "line graphs contain no induced claw");
        }
    }

    #[test]
    fn claw_in_non_line_graph() {
        // A claw plus an extra triangle hanging off one leaf.
        let g = Graph::new(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
        let [c, l1, l2, l3] = g.find_claw().unwrap();
        for (a, b) in [(l1, l2), (l1, l3), (l2, l3)] {
            assert!(!g.has_edge(a, b));
        }
        for l in [l1, l2, l3] {
            assert!(g.has_edge(c, l));
        }
    }

    #[test]
    fn krausz_partition_of_appendix_line_graph() {
        let (lg, _) = appendix_bipartite().line_graph().unwrap();
        let part = CliquePartition::new(vec![
            vec![0, 1, 2],
            vec![3],
            vec![4],
            vec![5],
            vec![0, 3],
            vec![1, 4],
            vec![2, 5],
        ]);
        let report = validate_krausz_partition(&lg, &part);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(report.two_colorable);
    }

    #[test]
    fn krausz_partition_of_glued_k4_graph() {
        // K4 on {0,1,2,3} plus a vertex adjacent to 2 and 3; its Krausz
        // partition is valid but its intersection structure is an odd
        // cycle, so the root graph is not bipartite.
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
            .unwrap();
        let part = CliquePartition::new(vec![vec![0, 1, 2, 3], vec![2, 4], vec![3, 4]]);
        let report = validate_krausz_partition(&g, &part);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(!report.two_colorable);
    }

    #[test]
    fn krausz_missing_edge_reported() {
        let (lg, _) = appendix_bipartite().line_graph().unwrap();
        let part = CliquePartition::new(vec![
            vec![0, 1, 2],
            vec![3],
            vec![4],
            vec![5],
            vec![0, 3],
            vec![1, 4],
            // {2,5} omitted
        ]);
        let report = validate_krausz_partition(&lg, &part);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, KrauszViolation::EdgeUncovered { edge: (2, 5) })));
    }

    #[test]
    fn krausz_vertex_budget_enforced() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let part = CliquePartition::new(vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        let report = validate_krausz_partition(&g, &part);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, KrauszViolation::VertexInTooManyCliques { vertex: 0, .. })));
    }

    #[test]
    fn root_graph_of_appendix_line_graph() {
        let bip = appendix_bipartite();
        let (lg, _) = bip.line_graph().unwrap();
        let part_a = CliquePartition::new(vec![vec![0, 1, 2], vec![3], vec![4], vec![5]]);
        let part_b = CliquePartition::new(vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let (root, bij) = root_graph_from_two_colorable_partition(&lg, &part_a, &part_b).unwrap();
        assert_eq!(root, bip);
        // a0b0 <-> 0, a0b1 <-> 1, ..., a3b2 <-> 5
        assert_eq!(bij.index_of((0, 0)), Some(0));
        assert_eq!(bij.index_of((3, 2)), Some(5));
    }

    #[test]
    fn root_graph_single_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let part_a = CliquePartition::new(vec![vec![0, 1]]);
        let part_b = CliquePartition::new(vec![vec![0], vec![1]]);
        let (root, _) = root_graph_from_two_colorable_partition(&g, &part_a, &part_b).unwrap();
        assert_eq!(root.x_count(), 1);
        assert_eq!(root.y_count(), 2);
        assert_eq!(root.n_edges(), 2);
    }

    #[test]
    fn root_graph_ambiguous_on_glued_k4() {
        // The blue/red tessellation supports of the glued-K4 example
        // share the pair {0,1}: labelling cannot be a bijection.
        let g = glued_k4();
        let part_a = CliquePartition::new(vec![vec![0, 1, 2, 3], vec![4, 5]]);
        let part_b = CliquePartition::new(vec![vec![0, 1], vec![2, 3, 4, 5]]);
        match root_graph_from_two_colorable_partition(&g, &part_a, &part_b) {
            Err(SqwError::AmbiguousLabelling { a: 0, b: 0, shared }) => {
                assert_eq!(shared, vec![0, 1]);
            }
            other => panic!("expected ambiguous labelling, got {other:?}"),
        }
    }

    #[test]
    fn claw_has_no_krausz_partition() {
        // Every clique of the claw is an edge or a vertex, so covering
        // its three edges puts the center in three cliques.
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let part = CliquePartition::new(vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        assert!(!validate_krausz_partition(&star, &part).is_valid());
        let res = root_graph_from_two_colorable_partition(
            &star,
            &CliquePartition::new(vec![vec![0, 1], vec![0, 2]]),
            &CliquePartition::new(vec![vec![0, 3], vec![1], vec![2], vec![3]]),
        );
        assert!(res.is_err());
    }

    #[test]
    fn bipartite_connectivity() {
        let b = BipartiteGraph::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert!(!b.is_connected());
        let c = BipartiteGraph::new(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        assert!(c.is_connected());
    }

    #[test]
    fn line_graph_roundtrip_small_bipartite() {
        // Brute force over all bipartite graphs with |X| = |Y| = 2 and
        // every vertex covered: line graph -> induced edge-bundle
        // partition -> root graph must reproduce the original.
        let all_pairs = [(0, 0), (0, 1), (1, 0), (1, 1)];
        for mask in 1u8..16 {
            let edges: Vec<_> = all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let bip = BipartiteGraph::new(2, 2, &edges).unwrap();
            let mut deg_x = [0usize; 2];
            let mut deg_y = [0usize; 2];
            for &(x, y) in &edges {
                deg_x[x] += 1;
                deg_y[y] += 1;
            }
            if deg_x.contains(&0) || deg_y.contains(&0) {
                continue;
            }
            let (lg, bij) = bip.line_graph().unwrap();
            let bundle = |count: usize, pick: &dyn Fn((usize, usize)) -> usize| {
                CliquePartition::new(
                    (0..count)
                        .map(|v| {
                            bij.pairs()
                                .enumerate()
                                .filter(|(_, e)| pick(*e) == v)
                                .map(|(i, _)| i)
                                .collect()
                        })
                        .collect(),
                )
            };
            let part_a = bundle(2, &|(x, _)| x);
            let part_b = bundle(2, &|(_, y)| y);
            let report = validate_krausz_partition(&lg, &CliquePartition::new(
                part_a.cliques.iter().chain(part_b.cliques.iter()).cloned().collect(),
            ));
            assert!(report.is_valid());
            let (root, _) = root_graph_from_two_colorable_partition(&lg, &part_a, &part_b).unwrap();
            assert_eq!(root, bip, "mask {mask}");
        }
    }
}
