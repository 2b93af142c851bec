//! Desk-scale brute-force recognizers and exact invariants.
//!
//! Everything here is an independent oracle: exhaustive or branch-and-bound
//! searches on small graphs, used to validate inputs and to cross-check the
//! polynomial-time machinery elsewhere in the crate. None of it shares code
//! with the algorithms it certifies.

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Graph, VertexSet};

/// Vertex limit for [`exact_chromatic_number`].
pub const CHI_ORACLE_LIMIT: usize = 20;
/// Vertex limit for [`exact_clique_number`] and [`exact_independence_number`].
pub const CLIQUE_ORACLE_LIMIT: usize = 64;
/// Vertex limit for [`find_clique_cutset_bruteforce`].
pub const CUTSET_ORACLE_LIMIT: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("graph too large for this oracle: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("coloring does not cover all {n} vertices")]
    PartialColoring { n: usize },
}

/// A chordless cycle of length at least four, listed in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleWitness {
    pub cycle: Vec<usize>,
}

impl HoleWitness {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Re-validates the witness against its host graph: consecutive vertices
    /// adjacent cyclically, all other pairs non-adjacent, length at least 4.
    pub fn validate(&self, g: &Graph) -> bool {
        let k = self.cycle.len();
        if k < 4 {
            return false;
        }
        let seen = VertexSet::new(self.cycle.iter().copied());
        if seen.len() != k {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if g.adjacent(self.cycle[i], self.cycle[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

/// A hole plus an apex adjacent to exactly two adjacent hole vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapWitness {
    pub hole: HoleWitness,
    pub apex: usize,
}

impl CapWitness {
    pub fn validate(&self, g: &Graph) -> bool {
        if !self.hole.validate(g) {
            return false;
        }
        if self.hole.cycle.contains(&self.apex) {
            return false;
        }
        let on_hole: Vec<usize> =
            self.hole.cycle.iter().copied().filter(|&v| g.adjacent(self.apex, v)).collect();
        on_hole.len() == 2 && g.adjacent(on_hole[0], on_hole[1])
    }
}

/// Outcome of the (even-hole, cap) membership check.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub even_hole: Option<HoleWitness>,
    pub cap: Option<CapWitness>,
    pub in_class: bool,
    pub search_exhausted: bool,
}

/// Finds the canonically smallest even hole by exhaustive induced-cycle
/// enumeration, or `Ok(None)` once the search completes.
///
/// The search is canonical DFS: the cycle's minimum vertex is the root and
/// the second vertex is smaller than the last, so each hole is visited once
/// and the first hit is the lexicographically smallest encoding. `budget`
/// counts node expansions; exceeding it is an error distinct from absence.
pub fn find_even_hole(g: &Graph, budget: u64) -> Result<Option<HoleWitness>, OracleError> {
    let mut remaining = budget;
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; g.n()];
    for root in 0..g.n() {
        path.clear();
        path.push(root);
        on_path[root] = true;
        let found = extend_even_hole(g, root, &mut path, &mut on_path, &mut remaining)?;
        on_path[root] = false;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn extend_even_hole(
    g: &Graph,
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    budget: &mut u64,
) -> Result<Option<HoleWitness>, OracleError> {
    if *budget == 0 {
        return Err(OracleError::BudgetExceeded);
    }
    *budget -= 1;
    let last = *path.last().unwrap();
    for &u in g.neighbors(last) {
        if u <= root || on_path[u] {
            continue;
        }
        // chord with any interior vertex kills both closing and extending
        if path.len() > 2 && path[1..path.len() - 1].iter().any(|&w| g.adjacent(u, w)) {
            continue;
        }
        // adjacency to the root is the tree edge at depth 1; afterwards it
        // either closes the cycle or is a chord, so u cannot be passed through
        if path.len() >= 2 && g.adjacent(u, root) {
            let len = path.len() + 1;
            if len >= 4 && len % 2 == 0 && u > path[1] {
                let mut cycle = path.clone();
                cycle.push(u);
                return Ok(Some(HoleWitness { cycle }));
            }
            continue;
        }
        path.push(u);
        on_path[u] = true;
        let found = extend_even_hole(g, root, path, on_path, budget)?;
        on_path[u] = false;
        path.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Finds a cap: for each triangle `(apex, u, v)` it searches for an induced
/// `u`–`v` path of length at least 3 whose interior avoids `N[apex]`.
pub fn find_cap(g: &Graph, budget: u64) -> Result<Option<CapWitness>, OracleError> {
    let mut remaining = budget;
    for apex in 0..g.n() {
        let nbrs = g.neighbors(apex);
        for (i, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[i + 1..] {
                if !g.adjacent(u, v) {
                    continue;
                }
                let mut path = vec![u];
                let mut on_path = vec![false; g.n()];
                on_path[u] = true;
                if let Some(hole) =
                    extend_cap_path(g, apex, u, v, &mut path, &mut on_path, &mut remaining)?
                {
                    return Ok(Some(CapWitness { hole, apex }));
                }
            }
        }
    }
    Ok(None)
}

fn extend_cap_path(
    g: &Graph,
    apex: usize,
    u: usize,
    v: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    budget: &mut u64,
) -> Result<Option<HoleWitness>, OracleError> {
    if *budget == 0 {
        return Err(OracleError::BudgetExceeded);
    }
    *budget -= 1;
    let last = *path.last().unwrap();
    for &x in g.neighbors(last) {
        if on_path[x] || x == apex || g.adjacent(x, apex) {
            continue;
        }
        // x must be non-adjacent to every earlier path vertex (including u
        // once the path has interior vertices)
        if path[..path.len() - 1].iter().any(|&w| g.adjacent(x, w)) {
            continue;
        }
        if g.adjacent(x, v) {
            // closing: u .. x, v, back to u; needs >= 2 interior vertices
            if path.len() >= 2 {
                let mut cycle = path.clone();
                cycle.push(x);
                cycle.push(v);
                return Ok(Some(HoleWitness { cycle }));
            }
            continue;
        }
        path.push(x);
        on_path[x] = true;
        let found = extend_cap_path(g, apex, u, v, path, on_path, budget)?;
        on_path[x] = false;
        path.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Runs both finders and combines them into a [`ClassReport`]. Budget
/// exhaustion is recorded in the flags rather than raised.
pub fn classify_membership(g: &Graph, budget: u64) -> ClassReport {
    let (even_hole, eh_exhausted) = match find_even_hole(g, budget) {
        Ok(w) => (w, true),
        Err(OracleError::BudgetExceeded) => (None, false),
        Err(_) => unreachable!(),
    };
    let (cap, cap_exhausted) = match find_cap(g, budget) {
        Ok(w) => (w, true),
        Err(OracleError::BudgetExceeded) => (None, false),
        Err(_) => unreachable!(),
    };
    let search_exhausted = eh_exhausted && cap_exhausted;
    let in_class = even_hole.is_none() && cap.is_none() && search_exhausted;
    ClassReport { even_hole, cap, in_class, search_exhausted }
}

/// Maximum cardinality search followed by zero-fill verification. Returns a
/// perfect elimination ordering iff the graph is chordal.
pub fn is_chordal(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    // MCS: number vertices n-1 down to 0 by maximum weight, ties by smallest id
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = vec![0usize; n];
    for i in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        numbered[v] = true;
        order[i] = v;
        for &w in g.neighbors(v) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    // PEO check along the elimination order: for each vertex the higher
    // neighbor closest in the order must dominate the rest.
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &v) in order.iter().enumerate() {
        let higher: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&w| pos[w] > i).collect();
        if let Some(&parent) = higher.iter().min_by_key(|&&w| pos[w]) {
            for &w in &higher {
                if w != parent && !g.adjacent(parent, w) {
                    return None;
                }
            }
        }
    }
    Some(order)
}

/// Exact chromatic number by iterative deepening on `k`, starting at the
/// clique number, with vertex-order symmetry breaking. Guarded to `n <= 20`.
pub fn exact_chromatic_number(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > CHI_ORACLE_LIMIT {
        return Err(OracleError::TooLarge { n, limit: CHI_ORACLE_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    if g.m() == 0 {
        return Ok(1);
    }
    let lower = exact_clique_number(g)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for k in lower..=n {
        let mut colors = vec![usize::MAX; n];
        if try_color(g, &order, 0, k, 0, &mut colors) {
            return Ok(k);
        }
    }
    unreachable!("every graph is n-colorable")
}

fn try_color(
    g: &Graph,
    order: &[usize],
    idx: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    // allowing at most one brand-new color breaks color symmetry
    let limit = k.min(used + 1);
    for c in 0..limit {
        if g.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if try_color(g, order, idx + 1, k, used.max(c + 1), colors) {
            return true;
        }
        colors[v] = usize::MAX;
    }
    false
}

fn adjacency_u64(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn max_clique_u64(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
    if size + (cand.count_ones() as usize) <= *best {
        return;
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let mut p = cand;
    while p != 0 {
        if size + (p.count_ones() as usize) <= *best {
            return;
        }
        let v = p.trailing_zeros() as usize;
        p &= !(1u64 << v);
        max_clique_u64(adj, p & adj[v], size + 1, best);
    }
}

/// Exact clique number by bitset branch-and-bound. Guarded to `n <= 64`.
pub fn exact_clique_number(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > CLIQUE_ORACLE_LIMIT {
        return Err(OracleError::TooLarge { n, limit: CLIQUE_ORACLE_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_u64(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0usize;
    max_clique_u64(&adj, all, 0, &mut best);
    Ok(best)
}

/// Exact independence number: the clique number of the complement.
pub fn exact_independence_number(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > CLIQUE_ORACLE_LIMIT {
        return Err(OracleError::TooLarge { n, limit: CLIQUE_ORACLE_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_u64(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let co_adj: Vec<u64> =
        (0..n).map(|v| all & !adj[v] & !(1u64 << v)).collect();
    let mut best = 0usize;
    max_clique_u64(&co_adj, all, 0, &mut best);
    Ok(best)
}

/// True iff no edge is monochromatic. The coloring must be total on the graph.
pub fn check_coloring(g: &Graph, c: &Coloring) -> Result<bool, OracleError> {
    if c.color_of.len() != g.n() {
        return Err(OracleError::PartialColoring { n: g.n() });
    }
    Ok(g.edges().iter().all(|&(u, v)| c.color_of[u] != c.color_of[v]))
}

/// Enumerates candidate cliques and returns the first whose removal
/// disconnects the graph. A disconnected graph reports the empty clique as
/// its cutset; atoms therefore are always connected. Guarded to `n <= 14`.
pub fn find_clique_cutset_bruteforce(g: &Graph) -> Result<Option<VertexSet>, OracleError> {
    let n = g.n();
    if n > CUTSET_ORACLE_LIMIT {
        return Err(OracleError::TooLarge { n, limit: CUTSET_ORACLE_LIMIT });
    }
    if n == 0 {
        return Ok(None);
    }
    if g.connected_components().count() > 1 {
        return Ok(Some(VertexSet::empty()));
    }
    let adj = adjacency_u64(g);
    for mask in 1u64..(1u64 << n) {
        // clique test on the mask
        let mut rest = mask;
        let mut is_clique = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= !(1u64 << v);
            if mask & !(1u64 << v) & !adj[v] != 0 {
                is_clique = false;
                break;
            }
        }
        if !is_clique {
            continue;
        }
        let remaining: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        if remaining.is_empty() {
            continue;
        }
        if !connected_within(&adj, &remaining) {
            return Ok(Some(VertexSet::new(
                (0..n).filter(|&v| mask >> v & 1 == 1),
            )));
        }
    }
    Ok(None)
}

fn connected_within(adj: &[u64], vertices: &[usize]) -> bool {
    let allowed: u64 = vertices.iter().map(|&v| 1u64 << v).sum();
    let mut seen = 1u64 << vertices[0];
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= !(1u64 << v);
            next |= adj[v] & allowed & !seen;
        }
        seen |= next;
        frontier = next;
    }
    seen == allowed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{c5_clique_blowup, complete, cycle, hajos};

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn even_hole_in_c6() {
        let w = find_even_hole(&cycle(6).unwrap(), BUDGET).unwrap().unwrap();
        assert_eq!(w.cycle.len(), 6);
        assert!(w.validate(&cycle(6).unwrap()));
    }

    #[test]
    fn no_even_hole_in_c5() {
        assert_eq!(find_even_hole(&cycle(5).unwrap(), BUDGET).unwrap(), None);
    }

    #[test]
    fn no_even_hole_in_g1() {
        // exhaustive enumeration on the 10-vertex C5 clique blow-up
        let g = c5_clique_blowup(1).unwrap();
        assert_eq!(find_even_hole(&g, BUDGET).unwrap(), None);
    }

    #[test]
    fn even_hole_budget_exceeded() {
        assert_eq!(find_even_hole(&cycle(6).unwrap(), 0), Err(OracleError::BudgetExceeded));
    }

    #[test]
    fn cap_found_on_capped_c5() {
        // C5 plus a vertex adjacent to two adjacent cycle vertices
        let g = Graph::from_edge_list(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1)],
        )
        .unwrap();
        let w = find_cap(&g, BUDGET).unwrap().unwrap();
        assert!(w.validate(&g));
    }

    #[test]
    fn chordal_graphs_are_cap_free() {
        let tree = Graph::from_edge_list(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
            .unwrap();
        assert_eq!(find_cap(&tree, BUDGET).unwrap(), None);
        assert_eq!(find_cap(&complete(5), BUDGET).unwrap(), None);
    }

    #[test]
    fn hajos_graph_is_cap_free() {
        assert_eq!(find_cap(&hajos(), BUDGET).unwrap(), None);
    }

    #[test]
    fn classify_c7_in_class() {
        let r = classify_membership(&cycle(7).unwrap(), BUDGET);
        assert!(r.in_class && r.search_exhausted);
    }

    #[test]
    fn classify_c4_has_even_hole() {
        let r = classify_membership(&cycle(4).unwrap(), BUDGET);
        assert!(!r.in_class);
        assert_eq!(r.even_hole.as_ref().unwrap().cycle.len(), 4);
    }

    #[test]
    fn classify_k5_in_class() {
        assert!(classify_membership(&complete(5), BUDGET).in_class);
    }

    #[test]
    fn odd_and_even_cycles_classified() {
        for k in 2..=6usize {
            assert!(classify_membership(&cycle(2 * k).unwrap(), BUDGET).even_hole.is_some());
            assert!(classify_membership(&cycle(2 * k + 1).unwrap(), BUDGET).in_class);
        }
    }

    #[test]
    fn chordality() {
        assert!(is_chordal(&complete(4)).is_some());
        assert!(is_chordal(&cycle(4).unwrap()).is_none());
        let tree = Graph::from_edge_list(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
            .unwrap();
        assert!(is_chordal(&tree).is_some());
    }

    #[test]
    fn chi_oracle() {
        assert_eq!(exact_chromatic_number(&cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(exact_chromatic_number(&complete(4)).unwrap(), 4);
        assert_eq!(exact_chromatic_number(&hajos()).unwrap(), 4);
    }

    #[test]
    fn chi_oracle_guard() {
        let big = Graph::from_edge_list(21, &[]).unwrap();
        assert!(matches!(exact_chromatic_number(&big), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn omega_oracle() {
        assert_eq!(exact_clique_number(&cycle(5).unwrap()).unwrap(), 2);
        assert_eq!(exact_clique_number(&c5_clique_blowup(1).unwrap()).unwrap(), 4);
        assert_eq!(exact_clique_number(&complete(7)).unwrap(), 7);
    }

    #[test]
    fn alpha_oracle() {
        assert_eq!(exact_independence_number(&c5_clique_blowup(1).unwrap()).unwrap(), 2);
        assert_eq!(exact_independence_number(&cycle(5).unwrap()).unwrap(), 2);
        let edgeless = Graph::from_edge_list(6, &[]).unwrap();
        assert_eq!(exact_independence_number(&edgeless).unwrap(), 6);
    }

    #[test]
    fn coloring_check() {
        let c5 = cycle(5).unwrap();
        let good = Coloring { color_of: vec![0, 1, 0, 1, 2], palette_size: 3 };
        assert!(check_coloring(&c5, &good).unwrap());
        let k2 = complete(2);
        let bad = Coloring { color_of: vec![0, 0], palette_size: 1 };
        assert!(!check_coloring(&k2, &bad).unwrap());
        let edgeless = Graph::from_edge_list(4, &[]).unwrap();
        let mono = Coloring { color_of: vec![0; 4], palette_size: 1 };
        assert!(check_coloring(&edgeless, &mono).unwrap());
        let partial = Coloring { color_of: vec![0, 1], palette_size: 2 };
        assert!(matches!(
            check_coloring(&c5, &partial),
            Err(OracleError::PartialColoring { .. })
        ));
    }

    #[test]
    fn cutset_bruteforce() {
        // bowtie: two triangles sharing vertex 2
        let bowtie =
            Graph::from_edge_list(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(find_clique_cutset_bruteforce(&bowtie).unwrap(), Some(VertexSet::new([2])));
        assert_eq!(find_clique_cutset_bruteforce(&cycle(5).unwrap()).unwrap(), None);
        let disconnected = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            find_clique_cutset_bruteforce(&disconnected).unwrap(),
            Some(VertexSet::empty())
        );
    }
}
