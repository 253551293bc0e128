//! Inclusion-exclusion sums with predicted cancellation.
//!
//! A signed sum over all subsets of an index universe,
//! `Σ_{I ⊆ P} (-1)^{|I|} t(I)`, can be restricted to far fewer subsets when
//! groups of terms are known to cancel. This crate implements two such
//! reductions — broken-pair families, which need no ordering of the
//! universe, and the classical ideal-based reduction over a linear order —
//! and instantiates them for three graph polynomials:
//!
//! * the chromatic polynomial of a hypergraph,
//! * the independence polynomial of a graph,
//! * the domination polynomial of a graph.
//!
//! [`discovery`] finds valid broken pairs from graph structure,
//! [`engine`] performs the sums and validates families, and [`oracle`]
//! provides independent brute-force ground truth for certification.
//!
//! Core arithmetic is generic over the coefficient scalar (any primitive
//! signed integer via [`polynomial::Coeff`]); the aliases below fix the
//! common widths.

pub mod discovery;
pub mod engine;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod polynomial;
pub mod polys;
pub mod subsets;

pub use engine::{BrokenPair, CancellationFamily, Engine, OrderedFamily, SumOutcome, TermFn};
pub use error::{Error, Result};
pub use graph::Hypergraph;
pub use polynomial::{Coeff, Polynomial, Sign};
pub use polys::{ComputationResult, Method, MethodKind, PolyKind};
pub use subsets::{IndexUniverse, SubsetMask, DEFAULT_ENUM_LIMIT, MAX_UNIVERSE};

/// Exact integer polynomial with 64-bit coefficients, the default value
/// domain for desk-scale instances.
pub type IntPolynomial = Polynomial<i64>;

/// Polynomial with 128-bit coefficients, for sums that outgrow 64 bits.
pub type WidePolynomial = Polynomial<i128>;

/// Computation outcome over the default coefficient width.
pub type IntComputation = ComputationResult<i64>;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::engine::{BrokenPair, CancellationFamily};
    use crate::graph::Hypergraph;

    /// Six vertices, four 3-vertex edges; the running worked example.
    pub fn hyper6() -> Hypergraph {
        Hypergraph::new(
            (1..=6).map(|i| i.to_string()).collect(),
            vec![
                ("123".into(), vec![0, 1, 2]),
                ("345".into(), vec![2, 3, 4]),
                ("234".into(), vec![1, 2, 3]),
                ("126".into(), vec![0, 1, 5]),
            ],
        )
        .unwrap()
    }

    /// The two chromatic broken pairs of `hyper6`, in discovery order.
    pub fn hyper6_pairs(h: &Hypergraph) -> CancellationFamily {
        let u = h.edge_universe();
        CancellationFamily::new(
            4,
            vec![
                BrokenPair::new(
                    u.mask_from_labels(&["123", "345"]).unwrap(),
                    u.mask_from_labels(&["234"]).unwrap(),
                )
                .unwrap(),
                BrokenPair::new(
                    u.mask_from_labels(&["234", "126"]).unwrap(),
                    u.mask_from_labels(&["123"]).unwrap(),
                )
                .unwrap(),
            ],
        )
        .unwrap()
    }

    /// The three-pair domination family on the 4-path: ({v1,v3},{v2}),
    /// ({v1,v4},{v2}), ({v2,v4},{v3}).
    pub fn domination_pairs_p4(g: &Hypergraph) -> CancellationFamily {
        let u = g.vertex_universe();
        let pair = |b: &[&str], b_star: &[&str]| {
            BrokenPair::new(
                u.mask_from_labels(b).unwrap(),
                u.mask_from_labels(b_star).unwrap(),
            )
            .unwrap()
        };
        CancellationFamily::new(
            4,
            vec![
                pair(&["v1", "v3"], &["v2"]),
                pair(&["v1", "v4"], &["v2"]),
                pair(&["v2", "v4"], &["v3"]),
            ],
        )
        .unwrap()
    }
}
