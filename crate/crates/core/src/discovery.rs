//! Structural discovery of valid broken pairs for the three graph
//! polynomials, plus the ordering-based families they generalize
//! (broken cycles from δ-cycles, broken neighbourhoods).
//!
//! Each `*_broken_pairs` function emits every pair `(B, {b})` whose term
//! absorption holds by graph structure — so the pairs satisfy the engine's
//! absorption contract by construction — with `B` minimal for its `b`.
//! Output order is deterministic: ascending `(|B|, labels of B, label of b)`.

use crate::engine::{permutation_ranks, BrokenPair, CancellationFamily, Engine, OrderedFamily};
use crate::error::{Error, Result};
use crate::graph::Hypergraph;
use crate::polys::PolyKind;
use crate::subsets::{IndexUniverse, SubsetMask};

/// Which structural condition produced a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Chromatic,
    Independence,
    Domination,
    BrokenCycle,
    BrokenNeighbourhood,
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            FamilyKind::Chromatic => "chromatic",
            FamilyKind::Independence => "independence",
            FamilyKind::Domination => "domination",
            FamilyKind::BrokenCycle => "broken_cycle",
            FamilyKind::BrokenNeighbourhood => "broken_neighbourhood",
        };
        write!(f, "{tag}")
    }
}

/// A discovered family together with how much it excludes.
#[derive(Clone, Debug)]
pub struct DiscoveryReport {
    pub kind: FamilyKind,
    pub family: CancellationFamily,
    /// Subsets excluded by each pair, in family order.
    pub per_pair_excluded: Vec<u128>,
    /// Total excluded, `|𝓑|`.
    pub excluded_total: u128,
}

impl DiscoveryReport {
    /// Tallies, by exhaustive classification, how many subsets each pair
    /// excludes.
    pub fn compute(
        engine: &Engine,
        universe: &IndexUniverse,
        kind: FamilyKind,
        family: CancellationFamily,
    ) -> Result<Self> {
        let per_pair_excluded = family.excluded_counts(universe, engine.max_universe())?;
        let excluded_total = per_pair_excluded.iter().sum();
        Ok(DiscoveryReport { kind, family, per_pair_excluded, excluded_total })
    }
}

/// Broken pairs for the chromatic polynomial: `(B, {b})` with
/// `c(B) = c(B ∪ {b})`, `B` minimal for that `b`. Holds hereditarily because
/// adding edges only coarsens components.
pub fn chromatic_broken_pairs(engine: &Engine, h: &Hypergraph) -> Result<Vec<BrokenPair>> {
    let m = h.edge_count();
    if m > engine.max_universe() {
        return Err(Error::UniverseTooLarge { size: m, limit: engine.max_universe() });
    }
    let mut pairs = Vec::new();
    for b in 0..m {
        let b_mask = SubsetMask::empty(m).with(b);
        let holds = |bits: u64| {
            let without = SubsetMask::from_bits(bits, m).unwrap();
            let with = without.union(b_mask).unwrap();
            h.component_count(without) == h.component_count(with)
        };
        for b_set_bits in minimal_absorbing_sets(m, b, &holds) {
            pairs.push(BrokenPair::new(SubsetMask::from_bits(b_set_bits, m)?, b_mask)?);
        }
    }
    sort_pairs(&mut pairs, h.edge_universe());
    Ok(pairs)
}

/// Broken pairs for the independence polynomial: `({e1, e2}, {b})` where the
/// endpoints of `b` are covered by those of `e1 ∪ e2` (so `e1 b e2` is a path
/// or a triangle). No single edge can cover another, so every covering pair
/// is automatically minimal.
pub fn independence_broken_pairs(g: &Hypergraph) -> Result<Vec<BrokenPair>> {
    g.require_graph()?;
    let m = g.edge_count();
    let mut pairs = Vec::new();
    for b in 0..m {
        let target = g.edge_vertices(b).bits();
        for e1 in 0..m {
            if e1 == b {
                continue;
            }
            for e2 in e1 + 1..m {
                if e2 == b {
                    continue;
                }
                let cover = g.edge_vertices(e1).bits() | g.edge_vertices(e2).bits();
                if target & !cover == 0 {
                    let b_set = SubsetMask::empty(m).with(e1).with(e2);
                    pairs.push(BrokenPair::new(b_set, SubsetMask::empty(m).with(b))?);
                }
            }
        }
    }
    sort_pairs(&mut pairs, g.edge_universe());
    Ok(pairs)
}

/// Broken pairs for the domination polynomial, over the vertex universe:
/// `(B, {b})` with `N[b] ⊆ N[B]`, `B` minimal for that `b`. Holds
/// hereditarily because closed neighbourhoods grow with the set.
pub fn domination_broken_pairs(engine: &Engine, g: &Hypergraph) -> Result<Vec<BrokenPair>> {
    g.require_graph()?;
    let n = g.vertex_count();
    if n > engine.max_universe() {
        return Err(Error::UniverseTooLarge { size: n, limit: engine.max_universe() });
    }
    let adjacency = g.adjacency_bits()?;
    let closed: Vec<u64> = (0..n).map(|v| adjacency[v] | (1u64 << v)).collect();
    let mut pairs = Vec::new();
    for b in 0..n {
        let target = closed[b];
        let holds = |bits: u64| {
            let mut reach = 0u64;
            let mut rest = bits;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                reach |= closed[v];
            }
            target & !reach == 0
        };
        for b_set_bits in minimal_absorbing_sets(n, b, &holds) {
            pairs.push(BrokenPair::new(
                SubsetMask::from_bits(b_set_bits, n)?,
                SubsetMask::empty(n).with(b),
            )?);
        }
    }
    sort_pairs(&mut pairs, g.vertex_universe());
    Ok(pairs)
}

/// Dispatches to the structural discovery matching the polynomial.
pub fn broken_pairs_for(engine: &Engine, h: &Hypergraph, kind: PolyKind) -> Result<Vec<BrokenPair>> {
    match kind {
        PolyKind::Chromatic => chromatic_broken_pairs(engine, h),
        PolyKind::Independence => independence_broken_pairs(h),
        PolyKind::Domination => domination_broken_pairs(engine, h),
    }
}

/// Bundles discovered pairs into a family over the right universe.
pub fn discovered_family(
    engine: &Engine,
    h: &Hypergraph,
    kind: PolyKind,
) -> Result<CancellationFamily> {
    let pairs = broken_pairs_for(engine, h, kind)?;
    let universe_size = match kind {
        PolyKind::Domination => h.vertex_count(),
        _ => h.edge_count(),
    };
    CancellationFamily::new(universe_size, pairs)
}

/// All minimal nonempty edge sets `F` with `c(F ∖ {f}) = c(F)` for every
/// `f ∈ F` (δ-cycles): every edge of `F` is redundant for connectivity.
pub fn delta_cycles(engine: &Engine, h: &Hypergraph) -> Result<Vec<SubsetMask>> {
    let m = h.edge_count();
    if m > engine.max_universe() {
        return Err(Error::UniverseTooLarge { size: m, limit: engine.max_universe() });
    }
    let mut satisfying: Vec<SubsetMask> = Vec::new();
    for f in h.edge_universe().all_subsets(engine.max_universe())? {
        if f.is_empty() {
            continue;
        }
        let c = h.component_count(f);
        if f.indices().all(|e| h.component_count(f.without(e)) == c) {
            satisfying.push(f);
        }
    }
    let mut minimal: Vec<SubsetMask> = satisfying
        .iter()
        .copied()
        .filter(|&f| !satisfying.iter().any(|&g| g != f && f.is_superset(g).unwrap()))
        .collect();
    minimal.sort_by_cached_key(|f| (f.cardinality(), h.edge_universe().mask_labels(*f)));
    Ok(minimal)
}

/// The broken cycles of a hypergraph under an edge order: each δ-cycle minus
/// its maximum edge, as an ordered family ready for the ideal-based sum.
pub fn broken_cycles(engine: &Engine, h: &Hypergraph, order: &[usize]) -> Result<OrderedFamily> {
    let rank = permutation_ranks(order)?;
    if order.len() != h.edge_count() {
        return Err(Error::UniverseMismatch { left: h.edge_count(), right: order.len() });
    }
    let mut x_class: Vec<SubsetMask> = Vec::new();
    for cycle in delta_cycles(engine, h)? {
        let max_edge = cycle.indices().max_by_key(|&e| rank[e]).expect("δ-cycles are nonempty");
        let broken = cycle.without(max_edge);
        if !x_class.contains(&broken) {
            x_class.push(broken);
        }
    }
    OrderedFamily::new(order.to_vec(), x_class)
}

/// The broken neighbourhoods of a graph under a vertex order: `N(v)` for
/// every vertex that is the maximum of its own closed neighbourhood.
///
/// An isolated vertex that happens to be such a maximum contributes the
/// empty set; callers that feed the family into an ideal-based sum should
/// drop it (an empty member excludes every subset).
pub fn broken_neighbourhoods(g: &Hypergraph, order: &[usize]) -> Result<OrderedFamily> {
    g.require_graph()?;
    let rank = permutation_ranks(order)?;
    let n = g.vertex_count();
    if order.len() != n {
        return Err(Error::UniverseMismatch { left: n, right: order.len() });
    }
    let mut x_class: Vec<SubsetMask> = Vec::new();
    for v in 0..n {
        let closed = g.closed_neighborhood(SubsetMask::empty(n).with(v))?;
        let max_vertex = closed.indices().max_by_key(|&u| rank[u]).expect("closed contains v");
        if max_vertex == v {
            let open = closed.without(v);
            if !x_class.contains(&open) {
                x_class.push(open);
            }
        }
    }
    OrderedFamily::new(order.to_vec(), x_class)
}

/// Restricts pairs to those usable under a linear order — every absorber
/// element strictly above all of `B` — and collects the distinct `B` into an
/// ordered family. Such a family's ideal-based reduction is valid whenever
/// the pairs themselves are.
pub fn ordered_family_from_pairs(order: &[usize], pairs: &[BrokenPair]) -> Result<OrderedFamily> {
    let rank = permutation_ranks(order)?;
    let n = order.len();
    let mut x_class: Vec<SubsetMask> = Vec::new();
    for pair in pairs {
        if pair.universe_size() != n {
            return Err(Error::UniverseMismatch { left: n, right: pair.universe_size() });
        }
        let max_b = pair.b_set().indices().map(|e| rank[e]).max();
        let above = pair
            .b_star()
            .indices()
            .all(|s| max_b.map_or(true, |max_rank| rank[s] > max_rank));
        if above && !x_class.contains(&pair.b_set()) {
            x_class.push(pair.b_set());
        }
    }
    OrderedFamily::new(order.to_vec(), x_class)
}

/// Deterministic emission order: `(|B|, labels of B, labels of B*)`.
fn sort_pairs(pairs: &mut [BrokenPair], universe: &IndexUniverse) {
    pairs.sort_by_cached_key(|pair| {
        (
            pair.b_set().cardinality(),
            universe.mask_labels(pair.b_set()),
            universe.mask_labels(pair.b_star()),
        )
    });
}

/// Candidates `B ⊆ universe ∖ {absorbee}` satisfying `holds`, minimal under
/// inclusion. `holds` must be monotone (upward closed), which makes
/// increasing-cardinality search with superset pruning exact.
fn minimal_absorbing_sets(
    universe_size: usize,
    absorbee: usize,
    holds: &impl Fn(u64) -> bool,
) -> Vec<u64> {
    let width = universe_size - 1;
    let positions: Vec<u64> =
        (0..universe_size).filter(|&i| i != absorbee).map(|i| 1u64 << i).collect();
    let expand = |compact: u64| {
        let mut bits = 0u64;
        let mut rest = compact;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            bits |= positions[i];
        }
        bits
    };

    let mut found: Vec<u64> = Vec::new();
    for size in 0..=width {
        let mut combo: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
        loop {
            if size > 0 && combo >= (1u64 << width) {
                break;
            }
            let bits = expand(combo);
            if !found.iter().any(|&f| bits & f == f) && holds(bits) {
                found.push(bits);
            }
            if size == 0 {
                break;
            }
            // Gosper's hack: next mask with the same popcount.
            let carry = combo & combo.wrapping_neg();
            let ripple = combo + carry;
            combo = (((ripple ^ combo) >> 2) / carry) | ripple;
        }
    }
    found
}
