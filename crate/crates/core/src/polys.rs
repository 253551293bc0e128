//! The three graph polynomials, each computable by full enumeration, by a
//! broken-pair family, or by an ordered family, with term-count accounting.
//!
//! All three are signed sums over an index universe:
//!
//! * chromatic (hypergraphs, universe = edges): term `x^{c(F)}`;
//! * independence (graphs, universe = edges): term
//!   `x^{|G[F]|} (1+x)^{n-|G[F]|}`;
//! * domination (graphs, universe = vertices): term `(1+x)^{n-|N[W]|}`.

use crate::engine::{CancellationFamily, Engine, OrderedFamily, SumOutcome, TermFn};
use crate::error::Result;
use crate::graph::Hypergraph;
use crate::polynomial::{Coeff, Polynomial};
use crate::subsets::{IndexUniverse, SubsetMask};

/// Which graph polynomial to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyKind {
    Chromatic,
    Independence,
    Domination,
}

impl std::fmt::Display for PolyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            PolyKind::Chromatic => "chromatic",
            PolyKind::Independence => "independence",
            PolyKind::Domination => "domination",
        };
        write!(f, "{tag}")
    }
}

/// How a sum was reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodKind {
    Full,
    Pairs,
    Ordered,
}

impl std::fmt::Display for MethodKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            MethodKind::Full => "full",
            MethodKind::Pairs => "pairs",
            MethodKind::Ordered => "ordered",
        };
        write!(f, "{tag}")
    }
}

/// Method selector carrying the family it needs.
#[derive(Clone, Copy, Debug)]
pub enum Method<'a> {
    Full,
    Pairs(&'a CancellationFamily),
    Ordered(&'a OrderedFamily),
}

/// A computed polynomial plus its term accounting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputationResult<C> {
    pub polynomial: Polynomial<C>,
    pub method: MethodKind,
    /// Terms actually evaluated (`= terms_total` for the full method).
    pub terms_evaluated: u128,
    /// `2^|P|` for the instance's universe.
    pub terms_total: u128,
    /// Number of pairs, or `|𝔛|` for the ordered method.
    pub family_size: usize,
}

/// Chromatic polynomial of a hypergraph: counts vertex colourings in which
/// no edge is monochromatic. Monic of degree `n`.
pub fn chromatic_polynomial<C: Coeff>(
    engine: &Engine,
    h: &Hypergraph,
    method: Method<'_>,
) -> Result<ComputationResult<C>> {
    run(engine, h.edge_universe(), &chromatic_term(h), method)
}

/// Independence polynomial of a graph: the coefficient of `x^k` counts the
/// independent sets of size `k` (constant term 1 for the empty set).
pub fn independence_polynomial<C: Coeff>(
    engine: &Engine,
    g: &Hypergraph,
    method: Method<'_>,
) -> Result<ComputationResult<C>> {
    let term = independence_term(g)?;
    run(engine, g.edge_universe(), &term, method)
}

/// Domination polynomial of a graph: the coefficient of `x^k` counts the
/// dominating sets of size `k`. The index universe is the vertex set.
pub fn domination_polynomial<C: Coeff>(
    engine: &Engine,
    g: &Hypergraph,
    method: Method<'_>,
) -> Result<ComputationResult<C>> {
    let term = domination_term(g)?;
    run(engine, g.vertex_universe(), &term, method)
}

/// Term function `F ↦ x^{c(F)}`.
pub fn chromatic_term<C: Coeff>(h: &Hypergraph) -> impl TermFn<C> + '_ {
    move |edges: SubsetMask| Ok(Polynomial::monomial(h.component_count(edges)))
}

/// Term function `F ↦ x^{|G[F]|} (1+x)^{n-|G[F]|}`.
pub fn independence_term<C: Coeff>(g: &Hypergraph) -> Result<impl TermFn<C> + '_> {
    g.require_graph()?;
    let n = g.vertex_count();
    let rows = binomial_rows::<C>(n)?;
    Ok(move |edges: SubsetMask| {
        let covered = g.induced_vertex_count(edges);
        Ok(rows[n - covered].shifted(covered))
    })
}

/// Term function `W ↦ (1+x)^{n-|N[W]|}` over the vertex universe.
pub fn domination_term<C: Coeff>(g: &Hypergraph) -> Result<impl TermFn<C> + '_> {
    g.require_graph()?;
    let n = g.vertex_count();
    let rows = binomial_rows::<C>(n)?;
    Ok(move |vertices: SubsetMask| {
        let covered = g.closed_neighborhood(vertices)?.cardinality() as usize;
        Ok(rows[n - covered].clone())
    })
}

/// Term function for the polynomial over the universe it sums on.
pub fn term_for<C: Coeff>(h: &Hypergraph, kind: PolyKind) -> Result<Box<dyn TermFn<C> + '_>> {
    match kind {
        PolyKind::Chromatic => Ok(Box::new(chromatic_term(h))),
        PolyKind::Independence => Ok(Box::new(independence_term(h)?)),
        PolyKind::Domination => Ok(Box::new(domination_term(h)?)),
    }
}

/// The index universe the polynomial sums over.
pub fn universe_for(h: &Hypergraph, kind: PolyKind) -> &IndexUniverse {
    match kind {
        PolyKind::Domination => h.vertex_universe(),
        _ => h.edge_universe(),
    }
}

/// `(1+x)^j` for `j = 0..=n`, computed once per term function.
fn binomial_rows<C: Coeff>(n: usize) -> Result<Vec<Polynomial<C>>> {
    (0..=n).map(|j| Polynomial::monomial_times_binomial(0, j)).collect()
}

fn run<C: Coeff>(
    engine: &Engine,
    universe: &IndexUniverse,
    term: &impl TermFn<C>,
    method: Method<'_>,
) -> Result<ComputationResult<C>> {
    let (outcome, kind, family_size): (SumOutcome<C>, MethodKind, usize) = match method {
        Method::Full => (engine.full_sum(universe, term)?, MethodKind::Full, 0),
        Method::Pairs(family) => (
            engine.reduced_sum(universe, term, family)?,
            MethodKind::Pairs,
            family.len(),
        ),
        Method::Ordered(family) => (
            engine.ordered_reduced_sum(universe, term, family)?,
            MethodKind::Ordered,
            family.x_class().len(),
        ),
    };
    Ok(ComputationResult {
        polynomial: outcome.polynomial,
        method: kind,
        terms_evaluated: outcome.terms_evaluated,
        terms_total: outcome.terms_total,
        family_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discovery::discovered_family;
    use crate::oracle;
    use crate::testutil::{domination_pairs_p4, hyper6, hyper6_pairs};
    use crate::IntPolynomial;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn chromatic_on_hyper6_by_every_method() {
        let engine = Engine::new();
        let h = hyper6();
        let expected = p(&[0, -1, 1, 3, -4, 0, 1]);

        let full = chromatic_polynomial::<i64>(&engine, &h, Method::Full).unwrap();
        assert_eq!(full.polynomial, expected);
        assert_eq!((full.terms_evaluated, full.terms_total), (16, 16));

        let family = hyper6_pairs(&h);
        let pairs = chromatic_polynomial::<i64>(&engine, &h, Method::Pairs(&family)).unwrap();
        assert_eq!(pairs.polynomial, expected);
        assert_eq!((pairs.terms_evaluated, pairs.family_size), (10, 2));

        let eu = h.edge_universe();
        let ordered = OrderedFamily::new(
            vec![0, 1, 2, 3],
            vec![eu.mask_from_labels(&["123", "345"]).unwrap()],
        )
        .unwrap();
        let by_order = chromatic_polynomial::<i64>(&engine, &h, Method::Ordered(&ordered)).unwrap();
        assert_eq!(by_order.polynomial, expected);
        assert_eq!((by_order.terms_evaluated, by_order.family_size), (12, 1));
    }

    #[test]
    fn chromatic_on_edgeless_is_a_single_monomial() {
        let engine = Engine::new();
        let h = Hypergraph::edgeless(5).unwrap();
        let out = chromatic_polynomial::<i64>(&engine, &h, Method::Full).unwrap();
        assert_eq!(out.polynomial, IntPolynomial::monomial(5));
        assert_eq!(out.terms_total, 1);
    }

    #[test]
    fn chromatic_value_matches_the_colouring_count() {
        let engine = Engine::new();
        let h = hyper6();
        let chi = chromatic_polynomial::<i64>(&engine, &h, Method::Full).unwrap().polynomial;
        let at2 = chi.eval_at(2).unwrap();
        assert_eq!(at2 as u64, oracle::count_proper_colorings(&h, 2).unwrap());
        // Frozen from the exhaustive 2^6 scan.
        assert_eq!(at2, 26);
    }

    #[test]
    fn independence_on_the_5_path() {
        let engine = Engine::new();
        let g = Hypergraph::path(5).unwrap();
        let expected = p(&[1, 5, 6, 1]);

        let full = independence_polynomial::<i64>(&engine, &g, Method::Full).unwrap();
        assert_eq!(full.polynomial, expected);

        let family = discovered_family(&engine, &g, PolyKind::Independence).unwrap();
        let pairs = independence_polynomial::<i64>(&engine, &g, Method::Pairs(&family)).unwrap();
        assert_eq!(pairs.polynomial, expected);
        // |𝓑_1| = 4 and |𝓑_2| = 2, so 10 of 16 terms survive.
        assert_eq!((pairs.terms_evaluated, pairs.terms_total), (10, 16));
    }

    #[test]
    fn independence_on_edgeless_is_the_full_binomial() {
        let engine = Engine::new();
        let g = Hypergraph::edgeless(4).unwrap();
        let out = independence_polynomial::<i64>(&engine, &g, Method::Full).unwrap();
        assert_eq!(out.polynomial, IntPolynomial::monomial_times_binomial(0, 4).unwrap());
    }

    #[test]
    fn domination_on_a_single_vertex() {
        let engine = Engine::new();
        let g = Hypergraph::edgeless(1).unwrap();
        let out = domination_polynomial::<i64>(&engine, &g, Method::Full).unwrap();
        assert_eq!(out.polynomial, p(&[0, 1]));
    }

    #[test]
    fn domination_on_path4_by_every_method() {
        let engine = Engine::new();
        let g = Hypergraph::path(4).unwrap();
        let full = domination_polynomial::<i64>(&engine, &g, Method::Full).unwrap();

        let counts = oracle::dominating_set_counts(&g).unwrap();
        let coeffs: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
        assert_eq!(full.polynomial, IntPolynomial::from_coeffs(coeffs));

        let family = domination_pairs_p4(&g);
        let pairs = domination_polynomial::<i64>(&engine, &g, Method::Pairs(&family)).unwrap();
        assert_eq!(pairs.polynomial, full.polynomial);
        assert_eq!((pairs.terms_evaluated, pairs.terms_total), (8, 16));
    }

    #[test]
    fn graph_only_polynomials_reject_hypergraphs() {
        let engine = Engine::new();
        let h = hyper6();
        assert!(independence_polynomial::<i64>(&engine, &h, Method::Full).is_err());
        assert!(domination_polynomial::<i64>(&engine, &h, Method::Full).is_err());
    }

    #[test]
    fn chromatic_is_monic_of_degree_n() {
        let engine = Engine::new();
        for h in [hyper6(), Hypergraph::path(6).unwrap(), Hypergraph::cycle(5).unwrap()] {
            let out = chromatic_polynomial::<i64>(&engine, &h, Method::Full).unwrap();
            assert_eq!(out.polynomial.degree(), Some(h.vertex_count()));
            assert_eq!(out.polynomial.coeff(h.vertex_count()), 1);
        }
    }
}
