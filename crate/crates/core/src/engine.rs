//! The cancellation engine.
//!
//! A signed sum `Σ_{I ⊆ P} (-1)^{|I|} t(I)` over all subsets of an index
//! universe can often be restricted to far fewer subsets without changing
//! its value, because groups of terms cancel in a predictable way. Two
//! reduction mechanisms live here:
//!
//! * **Broken-pair families** ([`CancellationFamily`]): a list of disjoint
//!   pairs `(B_i, B*_i)`. Pair `i` excludes every `I ⊇ B_i` that avoids the
//!   remnants `B_j ∖ B*_i` of earlier pairs. No ordering of the universe is
//!   involved, and the excluded subsets partition into classes
//!   `⟨I⟩ = {(I ∖ B*_i) ∪ D* : D* ⊆ B*_i}` whose signed terms sum to zero
//!   whenever each pair passes [`Engine::validate_pair`].
//! * **Ordered families** ([`OrderedFamily`]): a linear order on the
//!   universe plus a class `𝔛` of generating sets; excluded is the
//!   up-closure `𝕴` of `𝔛`. [`OrderedFamily::to_pairs`] converts such a
//!   family into broken pairs that exclude exactly the same subsets, so the
//!   ordering-based reduction is a special case of the pair-based one.

use std::thread;

use crate::error::{Error, Result};
use crate::polynomial::{Coeff, Polynomial, Sign};
use crate::subsets::{IndexUniverse, SubsetMask, DEFAULT_ENUM_LIMIT};

/// A pure term function `I ↦ μ(I)`: the same mask must always produce the
/// same polynomial. Purity plus `Sync` is what lets the engine split the
/// subset stream across worker threads.
pub trait TermFn<C: Coeff>: Fn(SubsetMask) -> Result<Polynomial<C>> + Sync {}

impl<C: Coeff, F> TermFn<C> for F where F: Fn(SubsetMask) -> Result<Polynomial<C>> + Sync {}

/// A disjoint pair `(B, B*)` with nonempty `B*`.
///
/// The pair licenses cancellation when the term function absorbs `B*` above
/// `B`: for every `I* ⊇ B` disjoint from `B*`, the signed terms over
/// `I* ∪ D*`, `D* ⊆ B*`, sum to zero ([`Engine::validate_pair`]). With a
/// singleton `B* = {b}` this is the familiar absorption `t(I*) = t(I* ∪ {b})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrokenPair {
    b_set: SubsetMask,
    b_star: SubsetMask,
}

impl BrokenPair {
    pub fn new(b_set: SubsetMask, b_star: SubsetMask) -> Result<Self> {
        if !b_set.is_disjoint(b_star)? {
            return Err(Error::OverlappingPair);
        }
        if b_star.is_empty() {
            return Err(Error::EmptyAbsorber);
        }
        Ok(BrokenPair { b_set, b_star })
    }

    pub fn b_set(&self) -> SubsetMask {
        self.b_set
    }

    pub fn b_star(&self) -> SubsetMask {
        self.b_star
    }

    pub fn universe_size(&self) -> usize {
        self.b_set.universe_size()
    }
}

/// An ordered list of broken pairs sharing one universe. The order matters
/// for which subsets each pair excludes, but not for the reduced sum's value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationFamily {
    universe_size: usize,
    pairs: Vec<BrokenPair>,
}

impl CancellationFamily {
    pub fn new(universe_size: usize, pairs: Vec<BrokenPair>) -> Result<Self> {
        for pair in &pairs {
            if pair.universe_size() != universe_size {
                return Err(Error::UniverseMismatch {
                    left: universe_size,
                    right: pair.universe_size(),
                });
            }
        }
        Ok(CancellationFamily { universe_size, pairs })
    }

    pub fn empty(universe_size: usize) -> Self {
        CancellationFamily { universe_size, pairs: Vec::new() }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn pairs(&self) -> &[BrokenPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The unique index `i` with `I ∈ 𝓑_i` — that is, `I ⊇ B_i` and
    /// `I ⊉ B_j ∖ B*_i` for every `j < i` — or `None` if no pair excludes
    /// `I`. At most one index can qualify.
    pub fn classify(&self, subset: SubsetMask) -> Result<Option<usize>> {
        self.check_universe(subset)?;
        Ok(self.classify_bits(subset.bits()))
    }

    pub(crate) fn classify_bits(&self, bits: u64) -> Option<usize> {
        'pairs: for (i, pair) in self.pairs.iter().enumerate() {
            let b = pair.b_set.bits();
            if bits & b != b {
                continue;
            }
            let star = pair.b_star.bits();
            for earlier in &self.pairs[..i] {
                let remnant = earlier.b_set.bits() & !star;
                if bits & remnant == remnant {
                    continue 'pairs;
                }
            }
            return Some(i);
        }
        None
    }

    /// The cancellation class `⟨I⟩ = {(I ∖ B*_i) ∪ D* : D* ⊆ B*_i}` of an
    /// excluded subset, sorted in mask order. Every member classifies to the
    /// same pair, and for a valid family the signed terms over the class sum
    /// to zero. Errors if `I` is not excluded.
    pub fn equivalence_class(&self, subset: SubsetMask) -> Result<Vec<SubsetMask>> {
        let i = self.classify(subset)?.ok_or_else(|| Error::NotInFamily {
            subset: format!("{subset:?}"),
        })?;
        let pair = &self.pairs[i];
        let stripped = subset.difference(pair.b_star)?;
        let mut class = Vec::with_capacity(1 << pair.b_star.cardinality());
        for d_star in pair.b_star.subsets_of() {
            class.push(stripped.union(d_star)?);
        }
        class.sort();
        Ok(class)
    }

    /// How many subsets each pair excludes, by exhaustive classification.
    pub fn excluded_counts(&self, universe: &IndexUniverse, limit: usize) -> Result<Vec<u128>> {
        self.check_size(universe.size())?;
        let mut counts = vec![0u128; self.pairs.len()];
        for subset in universe.all_subsets(limit)? {
            if let Some(i) = self.classify_bits(subset.bits()) {
                counts[i] += 1;
            }
        }
        Ok(counts)
    }

    fn check_universe(&self, subset: SubsetMask) -> Result<()> {
        self.check_size(subset.universe_size())
    }

    fn check_size(&self, size: usize) -> Result<()> {
        if size != self.universe_size {
            return Err(Error::UniverseMismatch { left: self.universe_size, right: size });
        }
        Ok(())
    }
}

/// A linear order on the universe together with a class `𝔛` of generating
/// subsets. Excludes the up-closure `𝕴 = {I : I ⊇ B for some B ∈ 𝔛}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedFamily {
    /// Elements from smallest to largest: `order[0]` is the minimum.
    order: Vec<usize>,
    /// `rank[element]` = position of the element in `order`.
    rank: Vec<usize>,
    x_class: Vec<SubsetMask>,
}

impl OrderedFamily {
    pub fn new(order: Vec<usize>, x_class: Vec<SubsetMask>) -> Result<Self> {
        let rank = permutation_ranks(&order)?;
        for member in &x_class {
            if member.universe_size() != order.len() {
                return Err(Error::UniverseMismatch {
                    left: order.len(),
                    right: member.universe_size(),
                });
            }
        }
        Ok(OrderedFamily { order, rank, x_class })
    }

    pub fn universe_size(&self) -> usize {
        self.order.len()
    }

    /// Elements from smallest to largest.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn x_class(&self) -> &[SubsetMask] {
        &self.x_class
    }

    /// True iff `I` contains some member of the class.
    pub fn ideal_contains(&self, subset: SubsetMask) -> Result<bool> {
        if subset.universe_size() != self.universe_size() {
            return Err(Error::UniverseMismatch {
                left: self.universe_size(),
                right: subset.universe_size(),
            });
        }
        Ok(self.ideal_contains_bits(subset.bits()))
    }

    pub(crate) fn ideal_contains_bits(&self, bits: u64) -> bool {
        self.x_class.iter().any(|b| bits & b.bits() == b.bits())
    }

    /// Strict upper bounds of `b_set`: every element ranked above all of it.
    /// The empty set's upper bounds are the whole universe.
    pub fn upper_bounds(&self, b_set: SubsetMask) -> Result<SubsetMask> {
        if b_set.universe_size() != self.universe_size() {
            return Err(Error::UniverseMismatch {
                left: self.universe_size(),
                right: b_set.universe_size(),
            });
        }
        let n = self.universe_size();
        let mut bounds = SubsetMask::empty(n);
        match b_set.indices().map(|e| self.rank[e]).max() {
            None => Ok(SubsetMask::full(n)),
            Some(max_rank) => {
                for &element in &self.order[max_rank + 1..] {
                    bounds = bounds.with(element);
                }
                Ok(bounds)
            }
        }
    }

    /// Converts the ordered family into broken pairs `(B, B')`, where `B'`
    /// is the strict upper bounds of `B`, sorted by ascending minimum of
    /// `B'` (ties keep class order). The pair family excludes exactly the
    /// up-closure `𝕴`. Errors if some member has no upper bounds.
    pub fn to_pairs(&self) -> Result<CancellationFamily> {
        let mut keyed: Vec<(usize, usize, BrokenPair)> = Vec::with_capacity(self.x_class.len());
        for (position, &b_set) in self.x_class.iter().enumerate() {
            let bounds = self.upper_bounds(b_set)?;
            if bounds.is_empty() {
                return Err(Error::NoUpperBounds { b_set: format!("{b_set:?}") });
            }
            let min_rank = bounds.indices().map(|e| self.rank[e]).min().unwrap();
            keyed.push((min_rank, position, BrokenPair::new(b_set, bounds)?));
        }
        keyed.sort_by_key(|&(min_rank, position, _)| (min_rank, position));
        CancellationFamily::new(self.universe_size(), keyed.into_iter().map(|(_, _, p)| p).collect())
    }
}

/// `rank[element] = position` for a permutation of `0..n`.
pub(crate) fn permutation_ranks(order: &[usize]) -> Result<Vec<usize>> {
    let n = order.len();
    let mut rank = vec![usize::MAX; n];
    for (position, &element) in order.iter().enumerate() {
        if element >= n {
            return Err(Error::InvalidOrder {
                detail: format!("element #{element} is outside a universe of {n}"),
            });
        }
        if rank[element] != usize::MAX {
            return Err(Error::InvalidOrder {
                detail: format!("element #{element} appears more than once"),
            });
        }
        rank[element] = position;
    }
    Ok(rank)
}

/// Outcome of a signed subset sum: the polynomial, how many terms were
/// actually evaluated, and how many a full enumeration would visit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumOutcome<C> {
    pub polynomial: Polynomial<C>,
    pub terms_evaluated: u128,
    pub terms_total: u128,
}

/// Summation engine: carries the enumeration cap and the worker count.
///
/// All computations are pure; with more than one worker the subset stream is
/// split into disjoint contiguous ranges whose partial sums are combined, so
/// the result is identical to the sequential one.
#[derive(Clone, Debug)]
pub struct Engine {
    max_universe: usize,
    threads: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { max_universe: DEFAULT_ENUM_LIMIT, threads: 1 }
    }
}

/// Below this many subsets a parallel split is not worth the thread setup.
const PARALLEL_THRESHOLD: u128 = 1 << 12;

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_max_universe(mut self, limit: usize) -> Self {
        self.max_universe = limit;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn max_universe(&self) -> usize {
        self.max_universe
    }

    /// Full inclusion-exclusion sum `Σ_{I ⊆ P} (-1)^{|I|} t(I)`.
    pub fn full_sum<C: Coeff>(
        &self,
        universe: &IndexUniverse,
        term: &impl TermFn<C>,
    ) -> Result<SumOutcome<C>> {
        self.signed_sum(universe, term, |_| true)
    }

    /// Reduced sum over the subsets the family does _not_ exclude. When every
    /// pair satisfies the absorption contract (see [`Engine::validate_pair`];
    /// discovery constructs such pairs structurally), the result equals
    /// [`Engine::full_sum`].
    pub fn reduced_sum<C: Coeff>(
        &self,
        universe: &IndexUniverse,
        term: &impl TermFn<C>,
        family: &CancellationFamily,
    ) -> Result<SumOutcome<C>> {
        family.check_size(universe.size())?;
        self.signed_sum(universe, term, |bits| family.classify_bits(bits).is_none())
    }

    /// Reduced sum over the subsets outside the up-closure `𝕴`. The caller
    /// guarantees each class member's terms are absorbed by its upper bounds
    /// (true for families built by discovery).
    pub fn ordered_reduced_sum<C: Coeff>(
        &self,
        universe: &IndexUniverse,
        term: &impl TermFn<C>,
        family: &OrderedFamily,
    ) -> Result<SumOutcome<C>> {
        if family.universe_size() != universe.size() {
            return Err(Error::UniverseMismatch {
                left: universe.size(),
                right: family.universe_size(),
            });
        }
        self.signed_sum(universe, term, |bits| !family.ideal_contains_bits(bits))
    }

    /// Checks one pair's absorption contract against a term function:
    /// for every `I* ⊇ B` with `I* ∩ B* = ∅`,
    /// `Σ_{D* ⊆ B*} (-1)^{|D*|} t(I* ∪ D*) = 0`.
    ///
    /// For a singleton `B* = {b}` this says `t(I*) = t(I* ∪ {b})` for all
    /// `I* ⊇ B`. Exponential in the free positions, so it shares the
    /// engine's enumeration cap; production paths rely on discovery, which
    /// guarantees the contract structurally.
    pub fn validate_pair<C: Coeff>(
        &self,
        universe: &IndexUniverse,
        term: &impl TermFn<C>,
        pair: &BrokenPair,
    ) -> Result<bool> {
        let size = universe.size();
        if pair.universe_size() != size {
            return Err(Error::UniverseMismatch { left: size, right: pair.universe_size() });
        }
        if size > self.max_universe {
            return Err(Error::UniverseTooLarge { size, limit: self.max_universe });
        }
        let free = universe.full_mask().difference(pair.b_set.union(pair.b_star)?)?;
        for extra in free.subsets_of() {
            let i_star = pair.b_set.union(extra)?;
            let mut alternating = Polynomial::<C>::zero();
            for d_star in pair.b_star.subsets_of() {
                let value = term(i_star.union(d_star)?)?;
                alternating.add_signed_assign(&value, d_star.sign())?;
            }
            if !alternating.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Validates every pair of a family; the error names the first offender.
    pub fn validate_family<C: Coeff>(
        &self,
        universe: &IndexUniverse,
        term: &impl TermFn<C>,
        family: &CancellationFamily,
    ) -> Result<()> {
        for pair in family.pairs() {
            if !self.validate_pair(universe, term, pair)? {
                return Err(Error::InvalidPair {
                    pair: format!(
                        "B={}, B*={}",
                        universe.render_mask(pair.b_set),
                        universe.render_mask(pair.b_star)
                    ),
                });
            }
        }
        Ok(())
    }

    fn signed_sum<C: Coeff>(
        &self,
        universe: &IndexUniverse,
        term: &impl TermFn<C>,
        keep: impl Fn(u64) -> bool + Sync,
    ) -> Result<SumOutcome<C>> {
        let size = universe.size();
        if size > self.max_universe {
            return Err(Error::UniverseTooLarge { size, limit: self.max_universe });
        }
        let total: u128 = 1u128 << size;
        let workers = self.threads.min(64);
        if workers <= 1 || total <= PARALLEL_THRESHOLD {
            let (polynomial, terms_evaluated) = sum_range(size, 0, total, term, &keep)?;
            return Ok(SumOutcome { polynomial, terms_evaluated, terms_total: total });
        }

        let per = total / workers as u128;
        let extra = total % workers as u128;
        let partials: Vec<Result<(Polynomial<C>, u128)>> = thread::scope(|scope| {
            let mut handles = Vec::with_capacity(workers);
            let mut lo = 0u128;
            for w in 0..workers as u128 {
                let hi = lo + per + if w < extra { 1 } else { 0 };
                let keep = &keep;
                handles.push(scope.spawn(move || sum_range(size, lo, hi, term, keep)));
                lo = hi;
            }
            handles.into_iter().map(|h| h.join().expect("summation worker panicked")).collect()
        });

        let mut polynomial = Polynomial::zero();
        let mut terms_evaluated = 0u128;
        for partial in partials {
            let (part_poly, part_count) = partial?;
            polynomial.add_signed_assign(&part_poly, Sign::Plus)?;
            terms_evaluated += part_count;
        }
        Ok(SumOutcome { polynomial, terms_evaluated, terms_total: total })
    }
}

fn sum_range<C: Coeff>(
    universe_size: usize,
    lo: u128,
    hi: u128,
    term: &impl TermFn<C>,
    keep: &(impl Fn(u64) -> bool + Sync),
) -> Result<(Polynomial<C>, u128)> {
    let mut acc = Polynomial::zero();
    let mut evaluated = 0u128;
    let mut value = lo;
    while value < hi {
        let bits = value as u64;
        if keep(bits) {
            let mask = SubsetMask::from_bits_unchecked(bits, universe_size);
            let polynomial = term(mask)?;
            acc.add_signed_assign(&polynomial, mask.sign())?;
            evaluated += 1;
        }
        value += 1;
    }
    Ok((acc, evaluated))
}
