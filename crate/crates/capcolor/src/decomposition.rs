//! Structural preprocessing for the coloring driver: minimal elimination
//! orderings (LEX-M), clique-cutset decomposition into atoms, twin-class
//! partitioning, and universal-vertex stripping.

use std::collections::HashMap;

use crate::graph::{Graph, VertexSet};
use crate::oracles::is_chordal;

/// A minimal elimination ordering together with its fill-in.
///
/// The graph plus `fill` is chordal with `order` as a perfect elimination
/// ordering, and the fill is inclusion-minimal.
#[derive(Debug, Clone)]
pub struct EliminationOrdering {
    pub order: Vec<usize>,
    /// Fill edges as `(min, max)` pairs, sorted.
    pub fill: Vec<(usize, usize)>,
}

/// Computes a minimal elimination ordering with its fill set via LEX-M.
///
/// Chordal inputs short-circuit through maximum cardinality search, which
/// yields a zero-fill ordering in O(n + m); the general path is the O(nm)
/// LEX-M label search with ties broken on smallest vertex id.
pub fn lexm_minimal_ordering(g: &Graph) -> EliminationOrdering {
    if let Some(order) = is_chordal(g) {
        return EliminationOrdering { order, fill: Vec::new() };
    }
    lexm(g)
}

fn lexm(g: &Graph) -> EliminationOrdering {
    let n = g.n();
    let mut rank = vec![0usize; n]; // compressed label ranks
    let mut numbered = vec![false; n];
    let mut order = vec![0usize; n];
    let mut fill = Vec::new();

    let mut reached = vec![false; n];
    let mut in_s = vec![false; n];

    for i in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (rank[v], std::cmp::Reverse(v)))
            .unwrap();
        numbered[v] = true;
        order[i] = v;

        // layered search: u joins S iff some path v..u runs through
        // unnumbered vertices of rank strictly below rank(u)
        let max_rank = rank.iter().copied().max().unwrap_or(0);
        let mut queues: Vec<Vec<usize>> = vec![Vec::new(); max_rank + 1];
        for u in 0..n {
            reached[u] = numbered[u];
            in_s[u] = false;
        }
        reached[v] = true;
        for &u in g.neighbors(v) {
            if !numbered[u] {
                reached[u] = true;
                in_s[u] = true;
                queues[rank[u]].push(u);
            }
        }
        for level in 0..=max_rank {
            while let Some(w) = queues[level].pop() {
                for &z in g.neighbors(w) {
                    if reached[z] {
                        continue;
                    }
                    reached[z] = true;
                    if rank[z] > level {
                        in_s[z] = true;
                        queues[rank[z]].push(z);
                    } else {
                        queues[level].push(z);
                    }
                }
            }
        }

        for u in 0..n {
            if in_s[u] && !g.adjacent(u, v) {
                fill.push((u.min(v), u.max(v)));
            }
        }

        // every member of S appends the same value, so re-ranking is a
        // stable sort by (old rank, membership)
        let mut unnumbered: Vec<usize> = (0..n).filter(|&u| !numbered[u]).collect();
        unnumbered.sort_by_key(|&u| (rank[u], in_s[u]));
        let mut next = 0usize;
        let mut prev_key: Option<(usize, bool)> = None;
        for &u in &unnumbered {
            let key = (rank[u], in_s[u]);
            if prev_key.is_some() && prev_key != Some(key) {
                next += 1;
            }
            prev_key = Some(key);
            rank[u] = next;
        }
    }
    fill.sort_unstable();
    fill.dedup();
    EliminationOrdering { order, fill }
}

/// Binary tree produced by clique-cutset decomposition: internal nodes
/// carry clique separators, leaves carry atoms.
#[derive(Debug, Clone)]
pub enum DecompositionTree {
    Leaf {
        atom: VertexSet,
    },
    Node {
        separator: VertexSet,
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
    },
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<&VertexSet> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                DecompositionTree::Leaf { atom } => out.push(atom),
                DecompositionTree::Node { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }

    /// All vertices covered by this subtree.
    pub fn vertex_set(&self) -> VertexSet {
        let mut vs: Vec<usize> = Vec::new();
        for atom in self.leaves() {
            vs.extend(atom.iter());
        }
        VertexSet::new(vs)
    }

    /// Internal nodes as `(separator, left vertex set, right vertex set)`.
    pub fn internal_nodes(&self) -> Vec<(&VertexSet, VertexSet, VertexSet)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if let DecompositionTree::Node { separator, left, right } = node {
                out.push((separator, left.vertex_set(), right.vertex_set()));
                stack.push(right);
                stack.push(left);
            }
        }
        out
    }

    fn remap(&self, old_of_new: &[usize]) -> DecompositionTree {
        match self {
            DecompositionTree::Leaf { atom } => DecompositionTree::Leaf {
                atom: atom.iter().map(|v| old_of_new[v]).collect(),
            },
            DecompositionTree::Node { separator, left, right } => DecompositionTree::Node {
                separator: separator.iter().map(|v| old_of_new[v]).collect(),
                left: Box::new(left.remap(old_of_new)),
                right: Box::new(right.remap(old_of_new)),
            },
        }
    }
}

// The right spine can be as long as the number of atoms; recursive drop
// would overflow the stack on large instances.
impl Drop for DecompositionTree {
    fn drop(&mut self) {
        let mut pending: Vec<DecompositionTree> = Vec::new();
        if let DecompositionTree::Node { left, right, .. } = self {
            pending.push(std::mem::replace(left.as_mut(), DecompositionTree::Leaf {
                atom: VertexSet::empty(),
            }));
            pending.push(std::mem::replace(right.as_mut(), DecompositionTree::Leaf {
                atom: VertexSet::empty(),
            }));
        }
        while let Some(mut node) = pending.pop() {
            if let DecompositionTree::Node { left, right, .. } = &mut node {
                pending.push(std::mem::replace(left.as_mut(), DecompositionTree::Leaf {
                    atom: VertexSet::empty(),
                }));
                pending.push(std::mem::replace(right.as_mut(), DecompositionTree::Leaf {
                    atom: VertexSet::empty(),
                }));
            }
        }
    }
}

/// Clique-cutset decomposition following Tarjan's scheme: scan the minimal
/// elimination ordering left to right, split at the first eligible separator,
/// and recurse on the remainder. Disconnected inputs split first on empty
/// separators, components ordered by smallest member.
pub fn clique_cutset_decompose(g: &Graph) -> DecompositionTree {
    let comps = g.connected_components();
    if comps.count() <= 1 {
        return decompose_connected(g);
    }
    let mut trees: Vec<DecompositionTree> = comps
        .components
        .iter()
        .map(|c| {
            let sub = g.induced_subgraph(c).expect("component vertices in range");
            decompose_connected(&sub.graph).remap(&sub.old_of_new)
        })
        .collect();
    let mut tree = trees.pop().unwrap();
    while let Some(left) = trees.pop() {
        tree = DecompositionTree::Node {
            separator: VertexSet::empty(),
            left: Box::new(left),
            right: Box::new(tree),
        };
    }
    tree
}

fn decompose_connected(g: &Graph) -> DecompositionTree {
    let n = g.n();
    if n == 0 {
        return DecompositionTree::Leaf { atom: VertexSet::empty() };
    }
    let eo = lexm_minimal_ordering(g);

    // filled adjacency = graph edges plus fill edges
    let mut filled: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    for &(u, v) in &eo.fill {
        filled[u].push(v);
        filled[v].push(u);
    }

    let mut pos = vec![0usize; n];
    for (i, &v) in eo.order.iter().enumerate() {
        pos[v] = i;
    }

    let mut removed = vec![false; n];
    let mut remaining = n;
    let mut splits: Vec<(VertexSet, VertexSet)> = Vec::new(); // (separator, atom)
    // stamped scratch space so each candidate pays only for what it touches
    let mut mark = vec![0u32; n];
    let mut stamp = 0u32;

    for (i, &x) in eo.order.iter().enumerate() {
        if removed[x] {
            continue;
        }
        let sep: VertexSet =
            filled[x].iter().copied().filter(|&u| !removed[u] && pos[u] > i).collect();
        if sep.is_empty() || !g.is_clique_set(&sep) {
            continue;
        }
        // component of x in the remaining graph minus the separator
        stamp += 1;
        let mut comp = Vec::new();
        let mut stack = vec![x];
        mark[x] = stamp;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !removed[w] && mark[w] != stamp && !sep.contains(w) {
                    mark[w] = stamp;
                    stack.push(w);
                }
            }
        }
        if comp.len() + sep.len() == remaining {
            continue; // separator does not split the current graph
        }
        // only split on a minimal separator: x's component and at least one
        // other must see all of it, else the atom would be a leftover
        // fragment of an earlier, larger one
        let comp_stamp = stamp;
        let comp_full =
            sep.iter().all(|s| g.neighbors(s).iter().any(|&w| mark[w] == comp_stamp));
        if !comp_full
            || !has_full_component(g, &sep, &removed, &mut mark, &mut stamp, comp_stamp)
        {
            continue;
        }
        let atom: VertexSet = comp.iter().copied().chain(sep.iter()).collect();
        for &v in &comp {
            removed[v] = true;
        }
        remaining -= comp.len();
        splits.push((sep, atom));
    }

    let final_atom: VertexSet = (0..n).filter(|&v| !removed[v]).collect();
    let mut tree = DecompositionTree::Leaf { atom: final_atom };
    for (sep, atom) in splits.into_iter().rev() {
        tree = DecompositionTree::Node {
            separator: sep,
            left: Box::new(DecompositionTree::Leaf { atom }),
            right: Box::new(tree),
        };
    }
    tree
}

/// True iff some component of the remaining graph minus `sep`, other than the
/// one marked with `comp_stamp`, has all of `sep` in its neighborhood.
fn has_full_component(
    g: &Graph,
    sep: &VertexSet,
    removed: &[bool],
    mark: &mut [u32],
    stamp: &mut u32,
    comp_stamp: u32,
) -> bool {
    for start in 0..g.n() {
        if removed[start] || mark[start] == comp_stamp || sep.contains(start) {
            continue;
        }
        if (*stamp > comp_stamp) && mark[start] > comp_stamp {
            continue; // already explored for this separator
        }
        *stamp += 1;
        let this = *stamp;
        let mut stack = vec![start];
        mark[start] = this;
        let mut seen_sep = 0usize;
        let mut sep_mark = vec![false; sep.len()];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if removed[w] {
                    continue;
                }
                if let Ok(idx) = sep.as_slice().binary_search(&w) {
                    if !sep_mark[idx] {
                        sep_mark[idx] = true;
                        seen_sep += 1;
                    }
                    continue;
                }
                if mark[w] != this && mark[w] != comp_stamp {
                    mark[w] = this;
                    stack.push(w);
                }
            }
        }
        if seen_sep == sep.len() {
            return true;
        }
    }
    false
}

/// Partition into twin classes (equal closed neighborhoods) plus the
/// quotient class-graph.
#[derive(Debug, Clone)]
pub struct TwinPartition {
    /// Classes ordered by smallest member.
    pub classes: Vec<VertexSet>,
    pub class_of: Vec<usize>,
    /// One vertex per class; classes adjacent iff they are complete to
    /// each other.
    pub quotient: Graph,
}

/// Groups vertices by closed neighborhood. Twin classes are cliques and any
/// two classes are complete or anti-complete, so the quotient is well defined.
pub fn twin_partition(g: &Graph) -> TwinPartition {
    let n = g.n();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for v in 0..n {
        let mut key = g.neighbors(v).to_vec();
        key.push(v);
        key.sort_unstable();
        buckets.entry(key).or_default().push(v);
    }
    let mut classes: Vec<VertexSet> = buckets.into_values().map(VertexSet::new).collect();
    classes.sort_by_key(|c| c.min());
    let mut class_of = vec![0usize; n];
    for (i, c) in classes.iter().enumerate() {
        for v in c.iter() {
            class_of[v] = i;
        }
    }
    let mut quotient_edges = Vec::new();
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate().skip(i + 1) {
            let (u, v) = (ci.min().unwrap(), cj.min().unwrap());
            if g.adjacent(u, v) {
                quotient_edges.push((i, j));
            }
        }
    }
    let quotient = Graph::from_edge_list(classes.len(), &quotient_edges)
        .expect("quotient edges are valid by construction");
    TwinPartition { classes, class_of, quotient }
}

/// Removes every vertex that is universal in `g` itself (not in the shrinking
/// remainder). The remaining induced subgraph is guaranteed to have no
/// universal vertex.
pub fn strip_universal_vertices(g: &Graph) -> (VertexSet, Vec<usize>) {
    let n = g.n();
    let removed: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 1).collect();
    let removed_set = VertexSet::new(removed.iter().copied());
    let remaining = VertexSet::full(n).difference(&removed_set);
    (remaining, removed)
}
