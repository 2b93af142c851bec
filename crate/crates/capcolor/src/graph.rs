//! Immutable simple undirected graphs with dense integer vertex ids,
//! induced subgraphs, connected components, and DIMACS `.col` I/O.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid edge ({0}, {1}): self-loops are not allowed")]
    InvalidEdge(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("parse error on line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("edge count mismatch: header declares {declared}, found {found}")]
    CountMismatch { declared: usize, found: usize },
}

/// A set of vertex ids with deterministic ascending iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn empty() -> Self {
        VertexSet { members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        VertexSet { members: (0..n).collect() }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        self.members.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet { members: self.iter().filter(|&v| !other.contains(v)).collect() }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet { members: self.iter().filter(|&v| other.contains(v)).collect() }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Partition of the vertices into connected components.
///
/// Component ids are assigned by smallest member vertex.
#[derive(Debug, Clone)]
pub struct ComponentPartition {
    pub component_of: Vec<usize>,
    pub components: Vec<VertexSet>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

const WORD_BITS: usize = 64;

fn bitset_words(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// An immutable simple undirected graph.
///
/// Vertices are exactly `0..n`. Adjacency is stored both as sorted neighbor
/// lists (iteration) and per-vertex bitsets (O(1) adjacency tests).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    bits: Vec<Vec<u64>>,
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    ///
    /// Self-loops, duplicate edges, and out-of-range endpoints are hard errors.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let words = bitset_words(n);
        let mut adj = vec![Vec::new(); n];
        let mut bits = vec![vec![0u64; words]; n];
        for &(u, v) in pairs {
            if u >= n {
                return Err(GraphError::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::InvalidEdge(u, v));
            }
            if bits[u][v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1 {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            bits[u][v / WORD_BITS] |= 1 << (v % WORD_BITS);
            bits[v][u / WORD_BITS] |= 1 << (u % WORD_BITS);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, m: pairs.len(), adj, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u][v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Sorted list of all edges as `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Parses the DIMACS `.col` format (`p edge n m`, 1-indexed `e u v` lines).
    pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(GraphError::ParseError {
                            line: line_no,
                            message: "duplicate problem line".into(),
                        });
                    }
                    if fields.len() != 4 || fields[1] != "edge" {
                        return Err(GraphError::ParseError {
                            line: line_no,
                            message: format!("expected 'p edge n m', got '{line}'"),
                        });
                    }
                    let n = fields[2].parse().map_err(|_| GraphError::ParseError {
                        line: line_no,
                        message: format!("bad vertex count '{}'", fields[2]),
                    })?;
                    let m = fields[3].parse().map_err(|_| GraphError::ParseError {
                        line: line_no,
                        message: format!("bad edge count '{}'", fields[3]),
                    })?;
                    header = Some((n, m));
                }
                "e" => {
                    let (n, _) = header.ok_or(GraphError::ParseError {
                        line: line_no,
                        message: "edge line before problem line".into(),
                    })?;
                    if fields.len() != 3 {
                        return Err(GraphError::ParseError {
                            line: line_no,
                            message: format!("expected 'e u v', got '{line}'"),
                        });
                    }
                    let mut ends = [0usize; 2];
                    for (slot, f) in ends.iter_mut().zip(&fields[1..]) {
                        let val: usize = f.parse().map_err(|_| GraphError::ParseError {
                            line: line_no,
                            message: format!("bad vertex '{f}'"),
                        })?;
                        if val == 0 || val > n {
                            return Err(GraphError::ParseError {
                                line: line_no,
                                message: format!("vertex {val} outside 1..={n}"),
                            });
                        }
                        *slot = val - 1;
                    }
                    pairs.push((ends[0], ends[1]));
                }
                _ => {
                    return Err(GraphError::ParseError {
                        line: line_no,
                        message: format!("unrecognized line '{line}'"),
                    });
                }
            }
        }
        let (n, declared_m) = header.ok_or(GraphError::ParseError {
            line: text.lines().count().max(1),
            message: "missing problem line".into(),
        })?;
        if pairs.len() != declared_m {
            return Err(GraphError::CountMismatch { declared: declared_m, found: pairs.len() });
        }
        Graph::from_edge_list(n, &pairs)
    }

    /// Canonical DIMACS output: LF line endings, edges sorted by `(min, max)`,
    /// 1-indexed. `parse_dimacs(write_dimacs(g))` reproduces `g` exactly.
    pub fn write_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Induced subgraph on `s` together with the order-preserving id mapping.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::InvalidVertex { vertex: v, n: self.n });
        }
        let old_of_new: Vec<usize> = s.iter().collect();
        let mut pairs = Vec::new();
        for (new_u, &old_u) in old_of_new.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                if old_v > old_u {
                    if let Ok(new_v) = old_of_new.binary_search(&old_v) {
                        pairs.push((new_u, new_v));
                    }
                }
            }
        }
        let graph = Graph::from_edge_list(old_of_new.len(), &pairs)?;
        Ok(InducedSubgraph { graph, old_of_new })
    }

    pub fn connected_components(&self) -> ComponentPartition {
        const UNSEEN: usize = usize::MAX;
        let mut component_of = vec![UNSEEN; self.n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if component_of[start] != UNSEEN {
                continue;
            }
            let id = components.len();
            let mut block = Vec::new();
            component_of[start] = id;
            stack.push(start);
            while let Some(v) = stack.pop() {
                block.push(v);
                for &w in &self.adj[v] {
                    if component_of[w] == UNSEEN {
                        component_of[w] = id;
                        stack.push(w);
                    }
                }
            }
            block.sort_unstable();
            components.push(VertexSet { members: block });
        }
        ComponentPartition { component_of, components }
    }

    /// True iff every pair in `s` is adjacent. Empty sets and singletons
    /// are cliques.
    pub fn is_clique_set(&self, s: &VertexSet) -> bool {
        let members = s.as_slice();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if v >= self.n || u >= self.n || !self.adjacent(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of [`Graph::induced_subgraph`]: the subgraph plus both directions
/// of the vertex id mapping.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `old_of_new[new_id] = old_id`, ascending.
    pub old_of_new: Vec<usize>,
}

impl InducedSubgraph {
    pub fn new_of_old(&self, old: usize) -> Option<usize> {
        self.old_of_new.binary_search(&old).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cycle(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    #[test]
    fn from_edge_list_path() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && !g.adjacent(0, 2));
    }

    #[test]
    fn from_edge_list_c5() {
        let g = cycle(5);
        assert_eq!(g.m(), 5);
        assert_eq!(g.neighbors(0), &[1, 4]);
    }

    #[test]
    fn from_edge_list_rejects_self_loop() {
        assert_eq!(Graph::from_edge_list(2, &[(0, 0)]), Err(GraphError::InvalidEdge(0, 0)));
    }

    #[test]
    fn from_edge_list_rejects_duplicates_and_range() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(GraphError::InvalidVertex { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn parse_dimacs_path() {
        let g = Graph::parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_dimacs_c5_with_comments() {
        let g = Graph::parse_dimacs("c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
            .unwrap();
        assert_eq!(g, cycle(5));
    }

    #[test]
    fn parse_dimacs_duplicate_edge() {
        assert_eq!(
            Graph::parse_dimacs("p edge 2 2\ne 1 2\ne 1 2\n"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn parse_dimacs_count_mismatch() {
        assert_eq!(
            Graph::parse_dimacs("p edge 3 2\ne 1 2\n"),
            Err(GraphError::CountMismatch { declared: 2, found: 1 })
        );
    }

    #[test]
    fn parse_dimacs_malformed_line_number() {
        match Graph::parse_dimacs("p edge 3 1\nx 1 2\n") {
            Err(GraphError::ParseError { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn write_dimacs_canonical() {
        let g = cycle(5);
        let text = g.write_dimacs();
        assert!(text.starts_with("p edge 5 5\n"));
        assert_eq!(text.lines().count(), 6);
        let reparsed = Graph::parse_dimacs(&text).unwrap();
        assert_eq!(reparsed, g);
        assert_eq!(reparsed.write_dimacs(), text);
    }

    #[test]
    fn write_dimacs_empty() {
        let g = Graph::from_edge_list(0, &[]).unwrap();
        assert_eq!(g.write_dimacs(), "p edge 0 0\n");
    }

    #[test]
    fn induced_subgraph_of_c5_prefix_is_path() {
        let g = cycle(5);
        let sub = g.induced_subgraph(&VertexSet::new([0, 1, 2])).unwrap();
        assert_eq!(sub.graph.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(sub.old_of_new, vec![0, 1, 2]);
    }

    #[test]
    fn induced_subgraph_identity() {
        let g = cycle(5);
        let sub = g.induced_subgraph(&VertexSet::full(5)).unwrap();
        assert_eq!(sub.graph, g);
        assert_eq!(sub.old_of_new, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn induced_subgraph_k4_pair_is_edge() {
        let g = complete(4);
        let sub = g.induced_subgraph(&VertexSet::new([0, 1])).unwrap();
        assert_eq!(sub.graph.edges(), vec![(0, 1)]);
    }

    #[test]
    fn induced_subgraph_out_of_range() {
        let g = cycle(5);
        assert!(matches!(
            g.induced_subgraph(&VertexSet::new([0, 7])),
            Err(GraphError::InvalidVertex { vertex: 7, n: 5 })
        ));
    }

    #[test]
    fn components() {
        assert_eq!(cycle(5).connected_components().count(), 1);
        let two_edges = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let cp = two_edges.connected_components();
        assert_eq!(cp.count(), 2);
        assert_eq!(cp.components[0], VertexSet::new([0, 1]));
        let edgeless = Graph::from_edge_list(3, &[]).unwrap();
        assert_eq!(edgeless.connected_components().count(), 3);
    }

    #[test]
    fn clique_checks() {
        assert!(complete(4).is_clique_set(&VertexSet::full(4)));
        assert!(!cycle(5).is_clique_set(&VertexSet::new([0, 1, 2])));
        assert!(cycle(5).is_clique_set(&VertexSet::empty()));
        assert!(cycle(5).is_clique_set(&VertexSet::new([3])));
    }
}
