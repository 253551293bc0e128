//! Hypergraphs and the structural quantities term functions need:
//! component counts, induced vertex counts, closed neighbourhoods.

use crate::error::{Error, Result};
use crate::subsets::{IndexUniverse, SubsetMask};

/// A simple hypergraph: labelled vertices plus labelled edges, each edge a
/// vertex set of cardinality at least two. Ordinary graphs are the 2-uniform
/// case. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_universe: IndexUniverse,
    edge_universe: IndexUniverse,
    edge_masks: Vec<SubsetMask>,
    /// Open-neighbourhood bit masks per vertex; present iff 2-uniform.
    adjacency: Option<Vec<u64>>,
}

impl Hypergraph {
    /// Builds a hypergraph from vertex labels and `(label, vertex indices)`
    /// edges. Rejects edges smaller than two vertices, repeated vertex sets,
    /// and out-of-range indices.
    pub fn new(vertex_labels: Vec<String>, edges: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let vertex_universe = IndexUniverse::new(vertex_labels)?;
        let n = vertex_universe.size();

        let mut edge_labels: Vec<String> = Vec::with_capacity(edges.len());
        let mut edge_masks: Vec<SubsetMask> = Vec::with_capacity(edges.len());
        for (label, vertices) in edges {
            let mut mask = SubsetMask::empty(n);
            for v in vertices {
                if v >= n {
                    return Err(Error::UnknownLabel(format!("vertex #{v}")));
                }
                mask = mask.with(v);
            }
            if mask.cardinality() < 2 {
                return Err(Error::EdgeTooSmall { label });
            }
            if let Some(i) = edge_masks.iter().position(|&m| m == mask) {
                return Err(Error::DuplicateEdge {
                    first: edge_labels[i].clone(),
                    second: label,
                });
            }
            edge_labels.push(label);
            edge_masks.push(mask);
        }
        let edge_universe = IndexUniverse::new(edge_labels)?;

        let adjacency = if edge_masks.iter().all(|m| m.cardinality() == 2) {
            let mut adj = vec![0u64; n];
            for mask in &edge_masks {
                let mut it = mask.indices();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                adj[a] |= 1u64 << b;
                adj[b] |= 1u64 << a;
            }
            Some(adj)
        } else {
            None
        };

        Ok(Hypergraph { vertex_universe, edge_universe, edge_masks, adjacency })
    }

    /// Path on `n` vertices: `v1..vn` joined by edges `e1..e(n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(
            default_vertex_labels(n),
            (1..n).map(|i| (format!("e{i}"), vec![i - 1, i])).collect(),
        )
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(
            default_vertex_labels(n),
            (0..n).map(|i| (format!("e{}", i + 1), vec![i, (i + 1) % n])).collect(),
        )
    }

    /// Star with centre `v1` and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        Self::new(
            default_vertex_labels(leaves + 1),
            (1..=leaves).map(|i| (format!("e{i}"), vec![0, i])).collect(),
        )
    }

    /// `n` isolated vertices, no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(default_vertex_labels(n), Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_universe.size()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_universe.size()
    }

    pub fn vertex_universe(&self) -> &IndexUniverse {
        &self.vertex_universe
    }

    pub fn edge_universe(&self) -> &IndexUniverse {
        &self.edge_universe
    }

    /// The vertex set of edge `e`, as a mask over the vertex universe.
    pub fn edge_vertices(&self, e: usize) -> SubsetMask {
        self.edge_masks[e]
    }

    /// The vertex indices of edge `e`, ascending.
    pub fn edge_vertex_indices(&self, e: usize) -> Vec<usize> {
        self.edge_masks[e].indices().collect()
    }

    pub fn is_graph(&self) -> bool {
        self.adjacency.is_some()
    }

    /// Errors unless every edge has exactly two vertices.
    pub fn require_graph(&self) -> Result<()> {
        if self.adjacency.is_some() {
            return Ok(());
        }
        let offender = self
            .edge_masks
            .iter()
            .position(|m| m.cardinality() != 2)
            .expect("some edge must be non-binary");
        Err(Error::NotAGraph {
            label: self.edge_universe.label(offender).to_string(),
            cardinality: self.edge_masks[offender].cardinality() as usize,
        })
    }

    /// Number of connected components of the spanning subgraph `(V, F)`,
    /// isolated vertices included.
    pub fn component_count(&self, edges: SubsetMask) -> usize {
        assert_eq!(edges.universe_size(), self.edge_count(), "edge mask universe mismatch");
        let mut uf = UnionFind::new(self.vertex_count());
        for e in edges.indices() {
            let mut vertices = self.edge_masks[e].indices();
            let first = vertices.next().expect("edges have at least two vertices");
            for v in vertices {
                uf.union(first, v);
            }
        }
        uf.component_count()
    }

    /// Number of vertices incident to at least one edge of `F`.
    pub fn induced_vertex_count(&self, edges: SubsetMask) -> usize {
        assert_eq!(edges.universe_size(), self.edge_count(), "edge mask universe mismatch");
        let mut bits = 0u64;
        for e in edges.indices() {
            bits |= self.edge_masks[e].bits();
        }
        bits.count_ones() as usize
    }

    /// Closed neighbourhood `N[W] = W ∪ {v : v adjacent to some w ∈ W}`.
    /// Graphs only.
    pub fn closed_neighborhood(&self, vertices: SubsetMask) -> Result<SubsetMask> {
        self.require_graph()?;
        assert_eq!(vertices.universe_size(), self.vertex_count(), "vertex mask universe mismatch");
        let adjacency = self.adjacency.as_ref().unwrap();
        let mut bits = vertices.bits();
        for v in vertices.indices() {
            bits |= adjacency[v];
        }
        SubsetMask::from_bits(bits, self.vertex_count())
    }

    /// Open neighbourhood `N(v)`. Graphs only.
    pub fn open_neighborhood(&self, v: usize) -> Result<SubsetMask> {
        self.require_graph()?;
        SubsetMask::from_bits(self.adjacency.as_ref().unwrap()[v], self.vertex_count())
    }

    /// Open-neighbourhood bit masks, one per vertex. Graphs only.
    pub(crate) fn adjacency_bits(&self) -> Result<&[u64]> {
        self.require_graph()?;
        Ok(self.adjacency.as_ref().unwrap())
    }
}

fn default_vertex_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// Disjoint-set forest with path compression and union by size.
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    merges: usize,
}

impl UnionFind {
    pub fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
            merges: 0,
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            self.parent[root] = self.parent[self.parent[root]];
            root = self.parent[root];
        }
        root
    }

    /// Merges the sets of `x` and `y`; true iff they were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.merges += 1;
        true
    }

    /// Successful merges so far.
    pub fn merges(&self) -> usize {
        self.merges
    }

    pub fn component_count(&self) -> usize {
        self.parent.len() - self.merges
    }
}
