//! Deterministic constructions of the extremal families and seeded random
//! instances used for testing and benchmarking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::oracles::classify_membership;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// The cycle C_n with edges `(i, i+1 mod n)`.
pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edge_list(n, &pairs).expect("cycle edges are valid"))
}

/// The complete graph K_n.
pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    Graph::from_edge_list(n, &pairs).expect("complete-graph edges are valid")
}

/// The 7-vertex Hajós construction on two copies of K4 sharing a vertex:
/// vertices `{x=0, y1=1, a=2, b=3, y2=4, c=5, d=6}`, all pairs within
/// `{x,a,b,y1}` except x–y1, all pairs within `{x,c,d,y2}` except x–y2,
/// plus y1–y2. 11 edges; ω = 3, χ = 4, and the graph is in class — all
/// verified by the oracles in the test suite rather than assumed.
pub fn hajos() -> Graph {
    let (x, y1, a, b, y2, c, d) = (0, 1, 2, 3, 4, 5, 6);
    let pairs = [
        (x, a),
        (x, b),
        (a, b),
        (a, y1),
        (b, y1),
        (x, c),
        (x, d),
        (c, d),
        (c, y2),
        (d, y2),
        (y1, y2),
    ];
    Graph::from_edge_list(7, &pairs).expect("Hajos edges are valid")
}

/// Substitutes a clique of size `sizes[v]` for each vertex `v`, making two
/// cliques complete iff the original vertices are adjacent.
pub fn blowup(g: &Graph, sizes: &[usize]) -> Result<Graph, GenError> {
    if sizes.len() != g.n() {
        return Err(GenError::InvalidParameter(format!(
            "expected {} sizes, got {}",
            g.n(),
            sizes.len()
        )));
    }
    if let Some(pos) = sizes.iter().position(|&s| s == 0) {
        return Err(GenError::InvalidParameter(format!("size 0 for vertex {pos}")));
    }
    let mut offset = vec![0usize; g.n() + 1];
    for v in 0..g.n() {
        offset[v + 1] = offset[v] + sizes[v];
    }
    let mut pairs = Vec::new();
    for v in 0..g.n() {
        for i in offset[v]..offset[v + 1] {
            for j in i + 1..offset[v + 1] {
                pairs.push((i, j));
            }
        }
    }
    for (u, v) in g.edges() {
        for i in offset[u]..offset[u + 1] {
            for j in offset[v]..offset[v + 1] {
                pairs.push((i, j));
            }
        }
    }
    Ok(Graph::from_edge_list(offset[g.n()], &pairs).expect("blow-up edges are valid"))
}

/// G_k: each vertex of a 5-cycle replaced by a clique of size 2k, so that
/// n = 10k, ω = 4k, α = 2, and χ = 5k.
pub fn c5_clique_blowup(k: usize) -> Result<Graph, GenError> {
    if k < 1 {
        return Err(GenError::InvalidParameter("blow-up factor k must be >= 1".into()));
    }
    blowup(&cycle(5).expect("C5"), &[2 * k; 5])
}

/// Seeded random chordal graph: each new vertex attaches to a random clique
/// of the current graph, so the reverse insertion order is a perfect
/// elimination ordering.
pub fn random_chordal(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "random_chordal needs n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pairs = Vec::new();
    for v in 1..n {
        let target = rng.random_range(1..=v.min(20));
        let anchor = rng.random_range(0..v);
        let mut clique = vec![anchor];
        let mut candidates: Vec<usize> = adj[anchor].clone();
        while clique.len() < target && !candidates.is_empty() {
            let pick = candidates.swap_remove(rng.random_range(0..candidates.len()));
            candidates.retain(|&w| adj[pick].contains(&w));
            clique.push(pick);
        }
        for &u in &clique {
            adj[u].push(v);
            adj[v].push(u);
            pairs.push((u, v));
        }
    }
    Graph::from_edge_list(n, &pairs).expect("chordal construction edges are valid")
}

/// Rejection-samples an Erdős–Rényi draw until one passes the membership
/// oracle with an exhausted search. Deterministic in `(n, p, seed,
/// max_tries)`; `None` after `max_tries` failures is a valid result.
pub fn random_in_class(
    n: usize,
    edge_prob: f64,
    seed: u64,
    max_tries: usize,
) -> Option<Graph> {
    assert!(n <= 14, "random_in_class is oracle-verified and needs n <= 14");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_tries {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < edge_prob {
                    pairs.push((u, v));
                }
            }
        }
        let g = Graph::from_edge_list(n, &pairs).expect("sampled edges are valid");
        let report = classify_membership(&g, 5_000_000);
        if report.in_class {
            return Some(g);
        }
    }
    None
}
