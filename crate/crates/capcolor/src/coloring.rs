//! The coloring pipeline: β-perfect greedy coloring, twin-class peeling,
//! atom coloring, separator-merge recombination, the top-level driver, and
//! the clique-number subroutine for C4-free graphs.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{
    clique_cutset_decompose, strip_universal_vertices, twin_partition, DecompositionTree,
    TwinPartition,
};
use crate::graph::{Graph, VertexSet};
use crate::oracles::classify_membership;

/// Vertex limit for strict-mode membership verification.
pub const STRICT_LIMIT: usize = 16;
/// Default node-expansion budget for the membership oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("class violation: {0}")]
    ClassViolation(String),
    #[error("separator mismatch: {0}")]
    SeparatorMismatch(String),
    #[error("input is not (even-hole, cap)-free: {0}")]
    NotInClass(String),
    #[error("strict mode refused: {0}")]
    TooLargeForStrict(String),
}

/// Min-degree-last vertex ordering with its β value.
///
/// `order[i]` has minimum degree in the subgraph induced by `order[..=i]`,
/// and `beta_value` is the maximum over prefixes of that minimum degree
/// plus one.
#[derive(Debug, Clone)]
pub struct Ordering {
    pub order: Vec<usize>,
    pub beta_value: usize,
}

/// Builds the min-degree-last ordering in O(n^2): repeatedly extract a
/// minimum-degree vertex (ties by smallest id) and place it after all the
/// vertices not yet removed.
pub fn min_degree_last_ordering(g: &Graph) -> Ordering {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut order = vec![0usize; n];
    let mut beta_value = 0usize;
    for i in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], v))
            .unwrap();
        beta_value = beta_value.max(degree[v] + 1);
        order[i] = v;
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
    }
    Ordering { order, beta_value }
}

/// A proper coloring with normalized palette `{0..k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub color_of: Vec<usize>,
    pub palette_size: usize,
}

impl Coloring {
    pub fn colors_used(&self) -> usize {
        self.palette_size
    }
}

/// Greedy smallest-available-color along the min-degree-last ordering.
///
/// Uses at most β colors; on (even-hole, diamond)-free graphs the result is
/// optimal.
pub fn beta_greedy_color(g: &Graph) -> Coloring {
    let ordering = min_degree_last_ordering(g);
    let n = g.n();
    let mut color_of = vec![usize::MAX; n];
    let mut palette_size = 0usize;
    for &v in &ordering.order {
        let mut taken: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter_map(|&w| (color_of[w] != usize::MAX).then_some(color_of[w]))
            .collect();
        taken.sort_unstable();
        taken.dedup();
        let mut c = 0usize;
        for t in taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        color_of[v] = c;
        palette_size = palette_size.max(c + 1);
    }
    Coloring { color_of, palette_size }
}

/// Clique number via maximal clique enumeration with pivoting, for graphs
/// expected to be C4-free (which have O(n^2) maximal cliques). If the
/// enumeration exceeds the quadratic clique budget the search aborts and the
/// best size found is returned with `exact = false`.
pub fn clique_number_c4free(g: &Graph) -> (usize, bool) {
    let n = g.n();
    if n == 0 {
        return (0, true);
    }
    let budget = 4 * n * n + 100;
    let order = degeneracy_order(g);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut state = CliqueSearch { g, best: 0, count: 0, budget, exceeded: false };
    for &v in &order {
        let p: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        let x: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        state.expand(1, p, x);
        if state.exceeded {
            return (state.best, false);
        }
    }
    (state.best, true)
}

fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut floor = 0usize;
    while order.len() < n {
        while floor < buckets.len() && buckets[floor].is_empty() {
            floor += 1;
        }
        let v = buckets[floor].pop().unwrap();
        if !alive[v] || degree[v] != floor {
            continue; // stale bucket entry
        }
        alive[v] = false;
        order.push(v);
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                floor = floor.min(degree[w]);
            }
        }
    }
    order
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: usize,
    count: usize,
    budget: usize,
    exceeded: bool,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r_len: usize, p: Vec<usize>, x: Vec<usize>) {
        if self.exceeded {
            return;
        }
        if p.is_empty() && x.is_empty() {
            self.count += 1;
            self.best = self.best.max(r_len);
            if self.count > self.budget {
                self.exceeded = true;
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| self.g.adjacent(u, w)).count())
            .unwrap();
        let candidates: Vec<usize> =
            p.iter().copied().filter(|&v| !self.g.adjacent(pivot, v)).collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let np: Vec<usize> = p.iter().copied().filter(|&w| self.g.adjacent(v, w)).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&w| self.g.adjacent(v, w)).collect();
            self.expand(r_len + 1, np, nx);
            if self.exceeded {
                return;
            }
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}

/// One step of the peeling schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelStep {
    /// A layer with one representative per surviving twin class (two for a
    /// class that forms an entire component by itself), colored greedily
    /// with fresh colors.
    Layer(VertexSet),
    /// The remainder became edgeless; it takes a single fresh color.
    IndependentRest(VertexSet),
}

impl PeelStep {
    pub fn vertices(&self) -> &VertexSet {
        match self {
            PeelStep::Layer(s) | PeelStep::IndependentRest(s) => s,
        }
    }
}

/// Computes the peeling schedule for `g` under the fixed twin partition
/// `tp`. Classes only shrink; the partition is never recomputed.
pub fn peel_schedule(g: &Graph, tp: &TwinPartition) -> Vec<PeelStep> {
    let n = g.n();
    let mut remaining = vec![true; n];
    let mut remaining_count = n;
    let mut class_members: Vec<Vec<usize>> =
        tp.classes.iter().map(|c| c.as_slice().to_vec()).collect();
    let mut steps = Vec::new();

    while remaining_count > 0 {
        let edgeless =
            g.edges().iter().all(|&(u, v)| !(remaining[u] && remaining[v]));
        if edgeless {
            steps.push(PeelStep::IndependentRest(
                (0..n).filter(|&v| remaining[v]).collect(),
            ));
            break;
        }

        // connected components of the current remainder
        let mut comp_of = vec![usize::MAX; n];
        let mut comp_sizes = Vec::new();
        for start in 0..n {
            if !remaining[start] || comp_of[start] != usize::MAX {
                continue;
            }
            let id = comp_sizes.len();
            let mut size = 0usize;
            let mut stack = vec![start];
            comp_of[start] = id;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in g.neighbors(v) {
                    if remaining[w] && comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        stack.push(w);
                    }
                }
            }
            comp_sizes.push(size);
        }

        let mut layer = Vec::new();
        for members in class_members.iter() {
            if members.is_empty() {
                continue;
            }
            let rep = members[0];
            // a class that is an entire component by itself with >= 2
            // vertices left contributes two representatives
            let isolated = comp_sizes[comp_of[rep]] == members.len()
                && members.iter().all(|&v| comp_of[v] == comp_of[rep]);
            layer.push(rep);
            if isolated && members.len() >= 2 {
                layer.push(members[1]);
            }
        }
        for &v in &layer {
            remaining[v] = false;
        }
        remaining_count -= layer.len();
        for members in class_members.iter_mut() {
            members.retain(|&v| remaining[v]);
        }
        steps.push(PeelStep::Layer(VertexSet::new(layer)));
    }
    steps
}

fn layer_has_triangle(layer: &Graph) -> bool {
    layer.edges().iter().any(|&(u, v)| {
        layer
            .neighbors(u)
            .iter()
            .any(|&w| w != v && layer.adjacent(w, v))
    })
}

fn peel_color(g: &Graph, tp: &TwinPartition, permissive: bool) -> Result<(Coloring, Option<String>), ColoringError> {
    let n = g.n();
    let mut color_of = vec![usize::MAX; n];
    let mut base = 0usize;
    let mut violation: Option<String> = None;
    for step in peel_schedule(g, tp) {
        match step {
            PeelStep::Layer(set) => {
                let sub = g.induced_subgraph(&set).expect("layer within range");
                let local = beta_greedy_color(&sub.graph);
                if local.palette_size > 3 || layer_has_triangle(&sub.graph) {
                    let message = format!(
                        "peeled layer {set} needed {} colors or contains a triangle",
                        local.palette_size
                    );
                    if !permissive {
                        return Err(ColoringError::ClassViolation(message));
                    }
                    violation.get_or_insert(message);
                }
                for (new_id, &old) in sub.old_of_new.iter().enumerate() {
                    color_of[old] = base + local.color_of[new_id];
                }
                base += local.palette_size;
            }
            PeelStep::IndependentRest(set) => {
                for v in set.iter() {
                    color_of[v] = base;
                }
                base += 1;
            }
        }
    }
    Ok((Coloring { color_of, palette_size: base }, violation))
}

/// Colors a graph with no universal vertex and no clique cutset by peeling
/// layers of twin-class representatives, each layer triangle-free and taking
/// at most 3 fresh colors. The palette stays within ⌊3/2·ω⌋ for in-class
/// inputs; a layer that breaks the guarantee raises [`ColoringError::ClassViolation`].
pub fn peel_color_core(g: &Graph, tp: &TwinPartition) -> Result<Coloring, ColoringError> {
    peel_color(g, tp, false).map(|(c, _)| c)
}

/// Colors an atom: strip universal vertices, peel the core, then give each
/// stripped vertex its own fresh color after the core palette.
pub fn color_atom(a: &Graph) -> Result<Coloring, ColoringError> {
    color_atom_inner(a, false).map(|(c, _)| c)
}

fn color_atom_inner(a: &Graph, permissive: bool) -> Result<(Coloring, Option<String>), ColoringError> {
    let (remaining, removed) = strip_universal_vertices(a);
    let mut color_of = vec![usize::MAX; a.n()];
    let (core_palette, violation) = if remaining.is_empty() {
        (0, None)
    } else {
        let sub = a.induced_subgraph(&remaining).expect("remaining within range");
        let tp = twin_partition(&sub.graph);
        let (core, violation) = peel_color(&sub.graph, &tp, permissive)?;
        for (new_id, &old) in sub.old_of_new.iter().enumerate() {
            color_of[old] = core.color_of[new_id];
        }
        (core.palette_size, violation)
    };
    for (i, &v) in removed.iter().enumerate() {
        color_of[v] = core_palette + i;
    }
    Ok((Coloring { color_of, palette_size: core_palette + removed.len() }, violation))
}

/// A coloring of part of a host graph, keyed by original vertex ids.
#[derive(Debug, Clone)]
pub struct PartialColoring {
    colors: Vec<Option<usize>>,
    pub palette_size: usize,
}

impl PartialColoring {
    pub fn new(host_n: usize) -> Self {
        PartialColoring { colors: vec![None; host_n], palette_size: 0 }
    }

    pub fn assign(&mut self, v: usize, color: usize) {
        self.colors[v] = Some(color);
        self.palette_size = self.palette_size.max(color + 1);
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.colors[v]
    }

    fn from_atom(host_n: usize, atom: &[usize], c: &Coloring) -> Self {
        let mut pc = PartialColoring::new(host_n);
        for (new_id, &old) in atom.iter().enumerate() {
            pc.colors[old] = Some(c.color_of[new_id]);
        }
        pc.palette_size = c.palette_size;
        pc
    }
}

/// Merges two part colorings that share the clique separator `sep`: the
/// colors of `c2` are permuted by an injection into `{0..max(k1,k2)-1}` that
/// matches `c1` on the separator, so the merged map restricted to part 1
/// equals `c1`.
pub fn merge_on_separator(
    c1: &PartialColoring,
    c2: &PartialColoring,
    sep: &VertexSet,
) -> Result<PartialColoring, ColoringError> {
    let palette = c1.palette_size.max(c2.palette_size);
    let mut pi: Vec<Option<usize>> = vec![None; c2.palette_size.max(1)];
    let mut target_used = vec![false; palette.max(1)];
    let mut seen_c1 = vec![false; palette.max(1)];
    for v in sep.iter() {
        let (a, b) = match (c1.get(v), c2.get(v)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(ColoringError::SeparatorMismatch(format!(
                    "separator vertex {v} is uncolored in one part"
                )))
            }
        };
        if seen_c1[a] {
            return Err(ColoringError::SeparatorMismatch(format!(
                "part 1 repeats color {a} on the separator"
            )));
        }
        seen_c1[a] = true;
        match pi[b] {
            None => {
                pi[b] = Some(a);
                target_used[a] = true;
            }
            Some(prev) if prev == a => {
                return Err(ColoringError::SeparatorMismatch(format!(
                    "part 2 repeats color {b} on the separator"
                )))
            }
            Some(_) => {
                return Err(ColoringError::SeparatorMismatch(format!(
                    "inconsistent separator color for vertex {v}"
                )))
            }
        }
    }
    // extend the injection over the remaining colors of c2
    let mut next_free = 0usize;
    let mut merged = c1.clone();
    merged.palette_size = palette;
    for v in 0..c2.colors.len() {
        let Some(b) = c2.colors[v] else { continue };
        let a = match pi[b] {
            Some(a) => a,
            None => {
                while target_used[next_free] {
                    next_free += 1;
                }
                pi[b] = Some(next_free);
                target_used[next_free] = true;
                next_free
            }
        };
        debug_assert!(a < palette);
        if merged.colors[v].is_none() {
            merged.colors[v] = Some(a);
        }
    }
    Ok(merged)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Permissive,
}

/// Per-phase wall-clock durations in milliseconds.
#[derive(Debug, Clone, Serialize, Default)]
pub struct PhaseTimings {
    pub decompose: f64,
    pub color_atoms: f64,
    pub merge: f64,
    pub omega: f64,
    pub total: f64,
}

fn serialize_coloring<S: serde::Serializer>(c: &Coloring, s: S) -> Result<S::Ok, S::Error> {
    c.color_of.serialize(s)
}

/// Full result of the coloring driver.
#[derive(Debug, Clone, Serialize)]
pub struct ColoringReport {
    pub colors_used: usize,
    pub omega: usize,
    pub omega_exact: bool,
    pub bound: usize,
    pub ratio: Option<String>,
    pub class_violation: Option<String>,
    pub atoms: usize,
    pub timings_ms: PhaseTimings,
    #[serde(serialize_with = "serialize_coloring")]
    pub coloring: Coloring,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Colors `g` along its clique-cutset decomposition.
///
/// The output coloring is always proper. In permissive mode a layer that
/// breaks the in-class guarantee is still colored greedily and only flagged;
/// strict mode first verifies membership with the brute-force oracle and
/// refuses out-of-class inputs with a witness.
pub fn color(g: &Graph, mode: Mode) -> Result<ColoringReport, ColoringError> {
    color_with_budget(g, mode, DEFAULT_ORACLE_BUDGET)
}

pub fn color_with_budget(
    g: &Graph,
    mode: Mode,
    oracle_budget: u64,
) -> Result<ColoringReport, ColoringError> {
    let start = Instant::now();
    if mode == Mode::Strict {
        if g.n() > STRICT_LIMIT {
            return Err(ColoringError::TooLargeForStrict(format!(
                "n = {} exceeds the oracle-verifiable limit {STRICT_LIMIT}",
                g.n()
            )));
        }
        let report = classify_membership(g, oracle_budget);
        if let Some(h) = &report.even_hole {
            return Err(ColoringError::NotInClass(format!("even hole {:?}", h.cycle)));
        }
        if let Some(c) = &report.cap {
            return Err(ColoringError::NotInClass(format!(
                "cap with apex {} on hole {:?}",
                c.apex, c.hole.cycle
            )));
        }
        if !report.search_exhausted {
            return Err(ColoringError::TooLargeForStrict(
                "membership oracle budget exhausted".into(),
            ));
        }
    }

    let mut timings = PhaseTimings::default();
    let t = Instant::now();
    let tree = clique_cutset_decompose(g);
    timings.decompose = t.elapsed().as_secs_f64() * 1e3;

    let t = Instant::now();
    let mut violation: Option<String> = None;
    let mut atom_count = 0usize;
    let mut color_time = 0.0f64;
    let merged = fold_tree(g, &tree, &mut violation, &mut atom_count, &mut color_time)?;
    timings.color_atoms = color_time;
    timings.merge = t.elapsed().as_secs_f64() * 1e3 - color_time;

    // normalize the palette: compact used colors, order-preserving
    let mut used: Vec<usize> = (0..g.n()).filter_map(|v| merged.get(v)).collect();
    used.sort_unstable();
    used.dedup();
    let mut remap = vec![usize::MAX; merged.palette_size.max(1)];
    for (i, &c) in used.iter().enumerate() {
        remap[c] = i;
    }
    let color_of: Vec<usize> = (0..g.n())
        .map(|v| remap[merged.get(v).expect("atoms cover every vertex")])
        .collect();
    let coloring = Coloring { color_of, palette_size: used.len() };

    let t = Instant::now();
    let (omega, omega_exact) = clique_number_c4free(g);
    timings.omega = t.elapsed().as_secs_f64() * 1e3;
    timings.total = start.elapsed().as_secs_f64() * 1e3;

    let bound = 3 * omega / 2;
    let ratio = if omega_exact && omega > 0 {
        let d = gcd(coloring.palette_size, omega);
        Some(format!("{}/{}", coloring.palette_size / d, omega / d))
    } else {
        None
    };
    Ok(ColoringReport {
        colors_used: coloring.palette_size,
        omega,
        omega_exact,
        bound,
        ratio,
        class_violation: violation,
        atoms: atom_count,
        timings_ms: timings,
        coloring,
    })
}

/// Folds atom colorings along the tree bottom-up without recursing (the
/// right spine is as long as the number of atoms).
fn fold_tree(
    g: &Graph,
    tree: &DecompositionTree,
    violation: &mut Option<String>,
    atom_count: &mut usize,
    color_time: &mut f64,
) -> Result<PartialColoring, ColoringError> {
    enum Task<'a> {
        Visit(&'a DecompositionTree),
        Merge(&'a VertexSet),
    }
    let mut tasks = vec![Task::Visit(tree)];
    let mut results: Vec<PartialColoring> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Visit(DecompositionTree::Leaf { atom }) => {
                let t = Instant::now();
                let sub = g.induced_subgraph(atom).expect("atom within range");
                let (c, v) = color_atom_inner(&sub.graph, true)?;
                if let Some(v) = v {
                    violation.get_or_insert(v);
                }
                *atom_count += 1;
                *color_time += t.elapsed().as_secs_f64() * 1e3;
                results.push(PartialColoring::from_atom(g.n(), &sub.old_of_new, &c));
            }
            Task::Visit(DecompositionTree::Node { separator, left, right }) => {
                tasks.push(Task::Merge(separator));
                tasks.push(Task::Visit(right));
                tasks.push(Task::Visit(left));
            }
            Task::Merge(separator) => {
                let c2 = results.pop().expect("right result");
                let c1 = results.pop().expect("left result");
                results.push(merge_on_separator(&c1, &c2, separator)?);
            }
        }
    }
    debug_assert_eq!(results.len(), 1);
    Ok(results.pop().unwrap())
}
