//! Coloring (even-hole, cap)-free graphs with at most ⌊3/2·ω⌋ colors.
//!
//! The pipeline decomposes the input along clique cutsets, strips universal
//! vertices from each atom, peels twin-class layers that are triangle-free
//! and take at most three fresh colors each, and recombines the atom
//! colorings along the decomposition tree. Desk-scale brute-force oracles
//! (`oracles`) provide independent verification for every step, and
//! `generators` builds the extremal families the bound is tight on.

pub mod coloring;
pub mod decomposition;
pub mod generators;
pub mod graph;
pub mod oracles;

pub use coloring::{
    beta_greedy_color, clique_number_c4free, color, color_atom, color_with_budget,
    merge_on_separator, min_degree_last_ordering, peel_color_core, Coloring, ColoringError,
    ColoringReport, Mode, PartialColoring,
};
pub use decomposition::{
    clique_cutset_decompose, lexm_minimal_ordering, strip_universal_vertices, twin_partition,
    DecompositionTree, TwinPartition,
};
pub use graph::{ComponentPartition, Graph, GraphError, VertexSet};
pub use oracles::{
    check_coloring, classify_membership, exact_chromatic_number, exact_clique_number,
    exact_independence_number, find_cap, find_clique_cutset_bruteforce, find_even_hole,
    is_chordal, CapWitness, ClassReport, HoleWitness, OracleError,
};
