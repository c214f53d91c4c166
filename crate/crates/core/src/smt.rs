//! Standard monomial theory on a multiset of shape-labelled generators.
//!
//! A datum bundles finitely many generators, each carrying a shape label, the
//! comparability relation `⟵`, the swap maps between weakly standard pairs, a
//! monomial order and a valuation. Everything here is generic over the datum;
//! the concrete data live in [`crate::typea`] and [`crate::wonderful`].

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::{self, Debug};
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact coefficient type used throughout the engine.
pub type Coeff = BigRational;

/// Position of a shape in the datum's fixed total order of shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShapeLabel(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmtError {
    #[error("generator {0} does not belong to the datum")]
    DatumMismatch(String),
    #[error("no straightening rule covers the minimally non-standard monomial {0}")]
    MissingRule(String),
    #[error("rewriting exceeded the cap of {0} substitutions")]
    CapExceeded(usize),
    #[error("invalid straightening rule for {lhs}: {reason}")]
    InvalidRule { lhs: String, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, SmtError>;

/// The data of a standard monomial theory on a multiset.
///
/// `Gen`'s `Ord` must sort by shape label first; the canonical form of a
/// commutative monomial is its factor list sorted by that order.
pub trait SmtDatum {
    type Gen: Clone + Eq + Ord + Hash + Debug;

    /// Shape of `g`, or `None` if `g` is not one of the datum's generators.
    fn shape_of(&self, g: &Self::Gen) -> Option<ShapeLabel>;

    /// The relation `a ⟵ b`.
    fn comparable(&self, a: &Self::Gen, b: &Self::Gen) -> bool;

    /// Swap map applied to a weakly standard pair. Only called when
    /// `comparable(a, b)` holds.
    fn swap(&self, a: &Self::Gen, b: &Self::Gen) -> (Self::Gen, Self::Gen);

    /// The monomial order `m ≤ n`.
    fn monomial_leq(&self, m: &Monomial<Self::Gen>, n: &Monomial<Self::Gen>) -> bool;

    fn valuation(&self, _g: &Self::Gen) -> u64 {
        0
    }

    /// Every generator, sorted.
    fn generators(&self) -> Vec<Self::Gen>;

    /// Optional closed-form standardness test for formal monomials with
    /// non-decreasing shape. `None` means "no fast path, use the search".
    fn fast_standard(&self, _formal: &[Self::Gen]) -> Option<bool> {
        None
    }
}

/// Commutative monomial: a multiset of generators kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<G> {
    factors: Vec<G>,
}

impl<G: Clone + Ord> Monomial<G> {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn new(mut factors: Vec<G>) -> Self {
        factors.sort();
        Monomial { factors }
    }

    pub fn factors(&self) -> &[G] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Monomial<G>) -> Monomial<G> {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            if self.factors[i] <= other.factors[j] {
                out.push(self.factors[i].clone());
                i += 1;
            } else {
                out.push(other.factors[j].clone());
                j += 1;
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// `self / divisor`, or `None` if `divisor` does not divide `self`.
    pub fn div(&self, divisor: &Monomial<G>) -> Option<Monomial<G>> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for f in &self.factors {
            if j < divisor.factors.len() && divisor.factors[j] == *f {
                j += 1;
            } else {
                if j < divisor.factors.len() && divisor.factors[j] < *f {
                    return None;
                }
                out.push(f.clone());
            }
        }
        (j == divisor.factors.len()).then_some(Monomial { factors: out })
    }

    pub fn divides(&self, other: &Monomial<G>) -> bool {
        other.div(self).is_some()
    }

    /// All distinct sub-multisets of the given size, in sorted order.
    pub fn divisors_of_degree(&self, size: usize) -> Vec<Monomial<G>> {
        let mut distinct: Vec<(G, usize)> = Vec::new();
        for f in &self.factors {
            match distinct.last_mut() {
                Some((g, c)) if g == f => *c += 1,
                _ => distinct.push((f.clone(), 1)),
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec<G: Clone + Ord>(
            distinct: &[(G, usize)],
            left: usize,
            current: &mut Vec<G>,
            out: &mut Vec<Monomial<G>>,
        ) {
            if left == 0 {
                out.push(Monomial { factors: current.clone() });
                return;
            }
            let Some(((g, c), rest)) = distinct.split_first() else {
                return;
            };
            let remaining: usize = rest.iter().map(|(_, c)| *c).sum();
            for take in (0..=(*c).min(left)).rev() {
                if left - take > remaining {
                    continue;
                }
                for _ in 0..take {
                    current.push(g.clone());
                }
                rec(rest, left - take, current, out);
                current.truncate(current.len() - take);
            }
        }
        rec(&distinct, size, &mut current, &mut out);
        out.sort();
        out
    }
}

impl<G: Debug> Debug for Monomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g:?}")?;
        }
        write!(f, "}}")
    }
}

/// Finite linear combination of monomials with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCombination<G> {
    terms: BTreeMap<Monomial<G>, Coeff>,
}

impl<G: Clone + Ord> Default for LinearCombination<G> {
    fn default() -> Self {
        LinearCombination { terms: BTreeMap::new() }
    }
}

impl<G: Clone + Ord> LinearCombination<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial<G>) -> Self {
        let mut lc = Self::zero();
        lc.add_term(m, Coeff::one());
        lc
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<G>, Coeff)>) -> Self {
        let mut lc = Self::zero();
        for (m, c) in terms {
            lc.add_term(m, c);
        }
        lc
    }

    pub fn add_term(&mut self, m: Monomial<G>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinearCombination<G>, scale: &Coeff) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn sub(&self, other: &LinearCombination<G>) -> LinearCombination<G> {
        let mut out = self.clone();
        out.add_scaled(other, &-Coeff::one());
        out
    }

    pub fn mul_monomial(&self, m: &Monomial<G>) -> LinearCombination<G> {
        LinearCombination {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial<G>) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial<G>, &Coeff)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial<G>> {
        self.terms.keys()
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial<G>) -> bool) -> LinearCombination<G> {
        LinearCombination {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Apply `f` to every monomial, merging coefficients of coinciding images.
    pub fn map_monomials<H: Clone + Ord>(
        &self,
        mut f: impl FnMut(&Monomial<G>) -> Monomial<H>,
    ) -> LinearCombination<H> {
        LinearCombination::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    fn pop_first(&mut self) -> Option<(Monomial<G>, Coeff)> {
        self.terms.pop_first()
    }
}

impl<G: Debug> Debug for LinearCombination<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{m:?}")?;
        }
        Ok(())
    }
}

/// `lhs = rhs`, with `lhs` non-standard and every `rhs` monomial standard and
/// strictly above `lhs`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StraighteningRule<G> {
    lhs: Monomial<G>,
    rhs: LinearCombination<G>,
}

impl<G: Clone + Ord + Debug> Debug for StraighteningRule<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.lhs, self.rhs)
    }
}

impl<G: Clone + Eq + Ord + Hash + Debug> StraighteningRule<G> {
    /// Register a rule, checking both rule invariants against `d`.
    pub fn new<D: SmtDatum<Gen = G>>(
        lhs: Monomial<G>,
        rhs: LinearCombination<G>,
        d: &D,
    ) -> Result<Self> {
        let invalid = |reason: String| SmtError::InvalidRule { lhs: format!("{lhs:?}"), reason };
        if monomial_is_standard(&lhs, d)? {
            return Err(invalid("left-hand side is standard".into()));
        }
        for m in rhs.monomials() {
            if !monomial_is_standard(m, d)? {
                return Err(invalid(format!("right-hand term {m:?} is not standard")));
            }
            if m == &lhs || !d.monomial_leq(&lhs, m) {
                return Err(invalid(format!("right-hand term {m:?} is not strictly above")));
            }
        }
        Ok(StraighteningRule { lhs, rhs })
    }

    /// Build without invariant checks. Used for presentations whose right-hand
    /// sides are not (yet) straightened, such as special-fiber relations.
    pub fn unchecked(lhs: Monomial<G>, rhs: LinearCombination<G>) -> Self {
        StraighteningRule { lhs, rhs }
    }

    pub fn lhs(&self) -> &Monomial<G> {
        &self.lhs
    }

    pub fn rhs(&self) -> &LinearCombination<G> {
        &self.rhs
    }

    /// `lhs - rhs` as a single linear combination.
    pub fn relation(&self) -> LinearCombination<G> {
        LinearCombination::monomial(self.lhs.clone()).sub(&self.rhs)
    }
}

/// Where straightening rules come from.
pub trait RuleSource<G> {
    fn rule_for(&self, lhs: &Monomial<G>) -> Result<Option<StraighteningRule<G>>>;
}

/// A finite, explicitly listed set of rules keyed by left-hand side.
#[derive(Debug, Clone)]
pub struct RuleSet<G: Clone + Eq + Ord + Hash + Debug> {
    rules: BTreeMap<Monomial<G>, StraighteningRule<G>>,
}

impl<G: Clone + Eq + Ord + Hash + Debug> Default for RuleSet<G> {
    fn default() -> Self {
        RuleSet { rules: BTreeMap::new() }
    }
}

impl<G: Clone + Eq + Ord + Hash + Debug> RuleSet<G> {
    pub fn new(rules: impl IntoIterator<Item = StraighteningRule<G>>) -> Self {
        RuleSet { rules: rules.into_iter().map(|r| (r.lhs.clone(), r)).collect() }
    }

    pub fn rules(&self) -> impl Iterator<Item = &StraighteningRule<G>> {
        self.rules.values()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

impl<G: Clone + Eq + Ord + Hash + Debug> RuleSource<G> for RuleSet<G> {
    fn rule_for(&self, lhs: &Monomial<G>) -> Result<Option<StraighteningRule<G>>> {
        Ok(self.rules.get(lhs).cloned())
    }
}

fn check_members<D: SmtDatum>(formal: &[D::Gen], d: &D) -> Result<()> {
    match formal.iter().find(|g| d.shape_of(g).is_none()) {
        Some(g) => Err(SmtError::DatumMismatch(format!("{g:?}"))),
        None => Ok(()),
    }
}

fn shape_sequence<D: SmtDatum>(formal: &[D::Gen], d: &D) -> Result<Vec<ShapeLabel>> {
    formal
        .iter()
        .map(|g| d.shape_of(g).ok_or_else(|| SmtError::DatumMismatch(format!("{g:?}"))))
        .collect()
}

fn first_incomparable<D: SmtDatum>(formal: &[D::Gen], d: &D) -> Option<usize> {
    formal.windows(2).position(|w| !d.comparable(&w[0], &w[1]))
}

/// `a₁ ⟵ a₂ ⟵ ⋯ ⟵ a_N`.
pub fn is_weakly_standard<D: SmtDatum>(formal: &[D::Gen], d: &D) -> Result<bool> {
    check_members(formal, d)?;
    Ok(first_incomparable(formal, d).is_none())
}

/// A sequence of adjacent swaps leading to a monomial that is not weakly
/// standard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapWitness<G> {
    /// Positions `j` of the swaps applied, each exchanging factors `j, j+1`.
    pub swaps: Vec<usize>,
    /// The formal monomial reached after the swaps.
    pub reached: Vec<G>,
    /// Index `j` of the first pair `reached[j], reached[j+1]` that is not comparable.
    pub failing_pair: usize,
}

type Trail<G> = HashMap<Vec<G>, (Vec<G>, usize)>;

/// Breadth-first exploration of every formal monomial reachable from
/// `formal` by swaps of adjacent pairs. Returns a witness as soon as a
/// reachable monomial is not weakly standard; `None` if none is.
///
/// The shape sequence is not constrained, so this is also the membership
/// test for the swap-closed sets on which the symmetric group acts.
pub fn explore_swaps<D: SmtDatum>(
    formal: &[D::Gen],
    d: &D,
) -> Result<Option<SwapWitness<D::Gen>>> {
    let shapes = shape_sequence(formal, d)?;
    if let Some(j) = first_incomparable(formal, d) {
        return Ok(Some(SwapWitness { swaps: vec![], reached: formal.to_vec(), failing_pair: j }));
    }
    let start = formal.to_vec();
    // each reached arrangement maps to its predecessor and the swap position
    let mut parent: Trail<D::Gen> = HashMap::new();
    let mut seen: HashSet<Vec<D::Gen>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back((start.clone(), shapes));
    while let Some((state, shapes)) = queue.pop_front() {
        for j in 0..state.len().saturating_sub(1) {
            if shapes[j] == shapes[j + 1] {
                continue;
            }
            let (a, b) = d.swap(&state[j], &state[j + 1]);
            let mut next = state.clone();
            next[j] = a;
            next[j + 1] = b;
            if seen.contains(&next) {
                continue;
            }
            parent.insert(next.clone(), (state.clone(), j));
            if let Some(bad) = first_incomparable(&next, d) {
                let mut swaps = vec![];
                let mut cur = next.clone();
                while let Some((prev, j)) = parent.get(&cur) {
                    swaps.push(*j);
                    cur = prev.clone();
                }
                swaps.reverse();
                return Ok(Some(SwapWitness { swaps, reached: next, failing_pair: bad }));
            }
            let mut next_shapes = shapes.clone();
            next_shapes.swap(j, j + 1);
            seen.insert(next.clone());
            queue.push_back((next, next_shapes));
        }
    }
    Ok(None)
}

/// Outcome of the definitional standardness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Standardness<G> {
    Standard,
    /// Shape sequence decreases at this index.
    ShapeOrder(usize),
    NonStandard(SwapWitness<G>),
}

impl<G> Standardness<G> {
    pub fn is_standard(&self) -> bool {
        matches!(self, Standardness::Standard)
    }
}

/// Definitional standardness with a witness on failure. Never uses a fast path.
pub fn standardness<D: SmtDatum>(formal: &[D::Gen], d: &D) -> Result<Standardness<D::Gen>> {
    let shapes = shape_sequence(formal, d)?;
    if let Some(j) = shapes.windows(2).position(|w| w[0] > w[1]) {
        return Ok(Standardness::ShapeOrder(j));
    }
    Ok(match explore_swaps(formal, d)? {
        None => Standardness::Standard,
        Some(w) => Standardness::NonStandard(w),
    })
}

/// Standardness of a formal monomial, through the datum's fast path when it
/// has one.
pub fn is_standard<D: SmtDatum>(formal: &[D::Gen], d: &D) -> Result<bool> {
    let shapes = shape_sequence(formal, d)?;
    if shapes.windows(2).any(|w| w[0] > w[1]) {
        return Ok(false);
    }
    if let Some(v) = d.fast_standard(formal) {
        return Ok(v);
    }
    Ok(explore_swaps(formal, d)?.is_none())
}

/// Non-standard, with every proper subsequence standard.
pub fn is_minimally_nonstandard<D: SmtDatum>(formal: &[D::Gen], d: &D) -> Result<bool> {
    if is_standard(formal, d)? {
        return Ok(false);
    }
    let n = formal.len();
    if n >= usize::BITS as usize {
        return Err(SmtError::Precondition("monomial too long for subsequence enumeration".into()));
    }
    for mask in 1..(1usize << n) - 1 {
        let sub: Vec<D::Gen> =
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| formal[i].clone()).collect();
        if !is_standard(&sub, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Arrange a commutative monomial as a formal one with non-decreasing shape
/// and each same-shape block a `⟵`-chain. `None` if some block is not a chain.
pub fn canonical_arrangement<D: SmtDatum>(m: &Monomial<D::Gen>, d: &D) -> Result<Option<Vec<D::Gen>>> {
    let mut blocks: BTreeMap<ShapeLabel, Vec<D::Gen>> = BTreeMap::new();
    for g in m.factors() {
        let s = d.shape_of(g).ok_or_else(|| SmtError::DatumMismatch(format!("{g:?}")))?;
        blocks.entry(s).or_default().push(g.clone());
    }
    let mut out = Vec::with_capacity(m.degree());
    for (_, mut block) in blocks {
        while !block.is_empty() {
            let pos = (0..block.len())
                .find(|&i| block.iter().all(|b| d.comparable(&block[i], b)));
            match pos {
                Some(i) => out.push(block.remove(i)),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(out))
}

/// A commutative monomial is standard iff it is the image of a standard
/// formal monomial.
pub fn monomial_is_standard<D: SmtDatum>(m: &Monomial<D::Gen>, d: &D) -> Result<bool> {
    match canonical_arrangement(m, d)? {
        Some(formal) => is_standard(&formal, d),
        None => Ok(false),
    }
}

/// Memoised standardness of commutative monomials, local to one computation.
pub struct StandardnessCache<'a, D: SmtDatum> {
    datum: &'a D,
    memo: HashMap<Monomial<D::Gen>, bool>,
}

impl<'a, D: SmtDatum> StandardnessCache<'a, D> {
    pub fn new(datum: &'a D) -> Self {
        StandardnessCache { datum, memo: HashMap::new() }
    }

    pub fn is_standard(&mut self, m: &Monomial<D::Gen>) -> Result<bool> {
        if let Some(v) = self.memo.get(m) {
            return Ok(*v);
        }
        let v = monomial_is_standard(m, self.datum)?;
        self.memo.insert(m.clone(), v);
        Ok(v)
    }

    /// Non-standard with all proper divisors standard.
    pub fn is_minimally_nonstandard(&mut self, m: &Monomial<D::Gen>) -> Result<bool> {
        if self.is_standard(m)? {
            return Ok(false);
        }
        for size in 1..m.degree() {
            for sub in m.divisors_of_degree(size) {
                if !self.is_standard(&sub)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All minimally non-standard divisors of `m`, sorted by canonical encoding.
    pub fn minimal_nonstandard_divisors(&mut self, m: &Monomial<D::Gen>) -> Result<Vec<Monomial<D::Gen>>> {
        let mut found = BTreeSet::new();
        for size in 2..=m.degree() {
            for sub in m.divisors_of_degree(size) {
                if found.iter().any(|f: &Monomial<D::Gen>| f.divides(&sub)) {
                    continue;
                }
                if self.is_minimally_nonstandard(&sub)? {
                    found.insert(sub);
                }
            }
        }
        Ok(found.into_iter().collect())
    }
}

/// Commutative counterpart of [`is_minimally_nonstandard`].
pub fn monomial_is_minimally_nonstandard<D: SmtDatum>(m: &Monomial<D::Gen>, d: &D) -> Result<bool> {
    StandardnessCache::new(d).is_minimally_nonstandard(m)
}

/// Default substitution cap for [`normal_form`].
pub const DEFAULT_REWRITE_CAP: usize = 1_000_000;

/// Rewrite `input` into a combination of standard monomials.
///
/// Each step takes the smallest (by canonical encoding) non-standard term,
/// picks its lexicographically first minimally non-standard divisor and
/// substitutes that divisor's rule.
pub fn normal_form_lc<D, R>(
    input: &LinearCombination<D::Gen>,
    rules: &R,
    d: &D,
    cap: usize,
) -> Result<LinearCombination<D::Gen>>
where
    D: SmtDatum,
    R: RuleSource<D::Gen> + ?Sized,
{
    let mut cache = StandardnessCache::new(d);
    let mut fetched: HashMap<Monomial<D::Gen>, StraighteningRule<D::Gen>> = HashMap::new();
    let mut work = input.clone();
    let mut done = LinearCombination::zero();
    let mut steps = 0usize;
    while let Some((m, c)) = work.pop_first() {
        if cache.is_standard(&m)? {
            done.add_term(m, c);
            continue;
        }
        steps += 1;
        if steps > cap {
            return Err(SmtError::CapExceeded(cap));
        }
        let divisor = cache
            .minimal_nonstandard_divisors(&m)?
            .into_iter()
            .next()
            .ok_or_else(|| SmtError::Precondition(format!("{m:?} has no minimal divisor")))?;
        if !fetched.contains_key(&divisor) {
            let rule = rules
                .rule_for(&divisor)?
                .ok_or_else(|| SmtError::MissingRule(format!("{divisor:?}")))?;
            fetched.insert(divisor.clone(), rule);
        }
        let rule = &fetched[&divisor];
        let rest = m.div(&divisor).expect("divisor divides its monomial");
        work.add_scaled(&rule.rhs.mul_monomial(&rest), &c);
    }
    Ok(done)
}

pub fn normal_form<D, R>(
    m: &Monomial<D::Gen>,
    rules: &R,
    d: &D,
    cap: usize,
) -> Result<LinearCombination<D::Gen>>
where
    D: SmtDatum,
    R: RuleSource<D::Gen> + ?Sized,
{
    normal_form_lc(&LinearCombination::monomial(m.clone()), rules, d, cap)
}

/// Valuation of a monomial, extended additively.
pub fn monomial_valuation<D: SmtDatum>(m: &Monomial<D::Gen>, d: &D) -> u64 {
    m.factors().iter().map(|g| d.valuation(g)).sum()
}

/// Special-fiber presentation: every rule keeps only the right-hand terms
/// with the same valuation as its left-hand side.
pub fn rees_degenerate<D: SmtDatum>(
    rules: &[StraighteningRule<D::Gen>],
    d: &D,
) -> Vec<StraighteningRule<D::Gen>> {
    rules
        .iter()
        .map(|r| {
            let v = monomial_valuation(&r.lhs, d);
            StraighteningRule {
                lhs: r.lhs.clone(),
                rhs: r.rhs.filter(|m| monomial_valuation(m, d) == v),
            }
        })
        .collect()
}

/// Every weakly standard formal monomial with non-decreasing shape, up to
/// length `max_len`.
pub fn weakly_standard_formal<D: SmtDatum>(d: &D, max_len: usize) -> Vec<Vec<D::Gen>> {
    let gens = d.generators();
    let mut out = Vec::new();
    let mut cur: Vec<D::Gen> = Vec::new();
    fn rec<D: SmtDatum>(
        d: &D,
        gens: &[D::Gen],
        max_len: usize,
        cur: &mut Vec<D::Gen>,
        out: &mut Vec<Vec<D::Gen>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for g in gens {
            if let Some(last) = cur.last() {
                if d.shape_of(g) < d.shape_of(last) || !d.comparable(last, g) {
                    continue;
                }
            }
            cur.push(g.clone());
            rec(d, gens, max_len, cur, out);
            cur.pop();
        }
    }
    rec(d, &gens, max_len, &mut cur, &mut out);
    out
}

/// A weakly standard formal monomial of length ≤ `degree` that is not
/// standard, if one exists.
pub fn weakly_standard_counterexample<D: SmtDatum>(
    d: &D,
    degree: usize,
) -> Result<Option<Vec<D::Gen>>> {
    for formal in weakly_standard_formal(d, degree) {
        if explore_swaps(&formal, d)?.is_some() {
            return Ok(Some(formal));
        }
    }
    Ok(None)
}

/// True iff every weakly standard formal monomial of length ≤ `degree` is standard.
pub fn weakly_equals_standard_upto<D: SmtDatum>(d: &D, degree: usize) -> Result<bool> {
    Ok(weakly_standard_counterexample(d, degree)?.is_none())
}

/// Check the swap-map axioms and the per-shape order axioms on every pair
/// (and triple, for transitivity) of generators. Returns the first violation.
pub fn check_datum_axioms<D: SmtDatum>(d: &D) -> std::result::Result<(), String> {
    let gens = d.generators();
    for g in &gens {
        if d.shape_of(g).is_none() {
            return Err(format!("{g:?} listed but has no shape"));
        }
    }
    if gens.windows(2).any(|w| d.shape_of(&w[0]) > d.shape_of(&w[1])) {
        return Err("generator order does not sort by shape first".into());
    }
    for a in &gens {
        for b in &gens {
            let (sa, sb) = (d.shape_of(a), d.shape_of(b));
            if sa == sb && a != b && d.comparable(a, b) && d.comparable(b, a) {
                return Err(format!("⟵ not antisymmetric on {a:?}, {b:?}"));
            }
            if !d.comparable(a, b) {
                continue;
            }
            let (a2, b2) = d.swap(a, b);
            if d.shape_of(&a2) != sb || d.shape_of(&b2) != sa {
                return Err(format!("swap of {a:?}, {b:?} does not exchange shapes"));
            }
            if !d.comparable(&a2, &b2) {
                return Err(format!("swap of {a:?}, {b:?} is not weakly standard"));
            }
            if sa == sb && (&a2, &b2) != (a, b) {
                return Err(format!("swap on equal shapes moves {a:?}, {b:?}"));
            }
            if d.swap(&a2, &b2) != (a.clone(), b.clone()) {
                return Err(format!("swap is not an involution on {a:?}, {b:?}"));
            }
        }
    }
    for a in &gens {
        for b in &gens {
            if d.shape_of(a) != d.shape_of(b) || !d.comparable(a, b) {
                continue;
            }
            for c in &gens {
                if d.shape_of(c) == d.shape_of(a) && d.comparable(b, c) && !d.comparable(a, c) {
                    return Err(format!("⟵ not transitive on {a:?}, {b:?}, {c:?}"));
                }
            }
        }
    }
    Ok(())
}

/// Strict version of the datum's order.
pub fn monomial_lt<D: SmtDatum>(m: &Monomial<D::Gen>, n: &Monomial<D::Gen>, d: &D) -> bool {
    m != n && d.monomial_leq(m, n)
}

/// Integer coefficient.
pub fn coeff(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}
