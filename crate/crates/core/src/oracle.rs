//! Brute-force ground truth: direct colouring counts and exhaustive
//! independent-/dominating-set enumeration.
//!
//! Deliberately shares nothing with the inclusion-exclusion path beyond the
//! `Hypergraph` type itself — no masks, no union-find, no term functions —
//! so agreement between the two is meaningful evidence.

use crate::error::{Error, Result};
use crate::graph::Hypergraph;

/// Colouring enumeration visits `k^n` assignments; keep `n` small.
pub const MAX_COLORING_VERTICES: usize = 10;

/// Subset enumeration visits `2^n` vertex sets.
pub const MAX_SUBSET_VERTICES: usize = 20;

/// Number of vertex colourings with `colors` colours in which every edge has
/// two vertices of distinct colours.
pub fn count_proper_colorings(h: &Hypergraph, colors: u64) -> Result<u64> {
    let n = h.vertex_count();
    if n > MAX_COLORING_VERTICES {
        return Err(Error::UniverseTooLarge { size: n, limit: MAX_COLORING_VERTICES });
    }
    if n == 0 {
        return Ok(1);
    }
    if colors == 0 {
        return Ok(0);
    }
    colors.checked_pow(n as u32).ok_or(Error::Overflow)?;

    let edges: Vec<Vec<usize>> = (0..h.edge_count()).map(|e| h.edge_vertex_indices(e)).collect();
    let mut assignment = vec![0u64; n];
    let mut count = 0u64;
    loop {
        let proper = edges
            .iter()
            .all(|edge| edge.iter().any(|&v| assignment[v] != assignment[edge[0]]));
        if proper {
            count += 1;
        }
        let mut position = 0;
        loop {
            if position == n {
                return Ok(count);
            }
            assignment[position] += 1;
            if assignment[position] < colors {
                break;
            }
            assignment[position] = 0;
            position += 1;
        }
    }
}

/// `counts[k]` = number of independent vertex sets of size `k` (the empty
/// set counts at `k = 0`). Graphs only.
pub fn independent_set_counts(g: &Hypergraph) -> Result<Vec<u64>> {
    let edges = graph_edge_list(g)?;
    let n = check_subset_size(g)?;
    let mut counts = vec![0u64; n + 1];
    for subset in 0u64..(1u64 << n) {
        let independent = edges
            .iter()
            .all(|&(a, b)| subset & (1 << a) == 0 || subset & (1 << b) == 0);
        if independent {
            counts[subset.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

/// `counts[k]` = number of dominating vertex sets of size `k` (sets `W` with
/// `N[W] = V`). Graphs only.
pub fn dominating_set_counts(g: &Hypergraph) -> Result<Vec<u64>> {
    let edges = graph_edge_list(g)?;
    let n = check_subset_size(g)?;
    let mut closed: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    for (a, b) in edges {
        closed[a] |= 1 << b;
        closed[b] |= 1 << a;
    }
    let everyone = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut counts = vec![0u64; n + 1];
    for subset in 0u64..(1u64 << n) {
        let mut reached = 0u64;
        for (v, mask) in closed.iter().enumerate() {
            if subset & (1 << v) != 0 {
                reached |= mask;
            }
        }
        if reached == everyone {
            counts[subset.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

fn graph_edge_list(g: &Hypergraph) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let vertices = g.edge_vertex_indices(e);
        if vertices.len() != 2 {
            return Err(Error::NotAGraph {
                label: g.edge_universe().label(e).to_string(),
                cardinality: vertices.len(),
            });
        }
        edges.push((vertices[0], vertices[1]));
    }
    Ok(edges)
}

fn check_subset_size(g: &Hypergraph) -> Result<usize> {
    let n = g.vertex_count();
    if n > MAX_SUBSET_VERTICES {
        return Err(Error::UniverseTooLarge { size: n, limit: MAX_SUBSET_VERTICES });
    }
    Ok(n)
}
