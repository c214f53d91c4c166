//! Brackets, shuffling relations and straightening of type-A tableaux, with
//! exact evaluation of Plücker coordinates as an independent check.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg;
use crate::smt::{
    self, coeff, Coeff, LinearCombination, Monomial, RuleSource, SmtError, StraighteningRule,
};
use crate::typea::{
    enumerate_standard, Multidegree, ReferenceShape, Row, SlottedRow, Tableau, TableauError,
    TypeADatum,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StraightenError {
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Smt(#[from] SmtError),
    #[error("bracket entry {entry} outside 1..={max}")]
    BracketEntry { entry: u32, max: u32 },
    #[error("pair {0} is standard; it has no index of violation")]
    StandardPair(String),
    #[error("expected a two-row tableau, got {0}")]
    NotTwoRows(String),
    #[error("matrix must be square of size {expected}, got {got}")]
    MatrixShape { expected: usize, got: usize },
    #[error("straightening failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, StraightenError>;

/// Cap on shuffling substitutions inside [`straighten_pair`].
const PAIR_CAP: usize = 100_000;

/// `[R]` for an arbitrary sequence: zero on repeats, else a signed row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedRow {
    Zero,
    Signed { negative: bool, row: Row },
}

impl SignedRow {
    pub fn sign(&self) -> i64 {
        match self {
            SignedRow::Zero => 0,
            SignedRow::Signed { negative: true, .. } => -1,
            SignedRow::Signed { negative: false, .. } => 1,
        }
    }

    pub fn row(&self) -> Option<&Row> {
        match self {
            SignedRow::Zero => None,
            SignedRow::Signed { row, .. } => Some(row),
        }
    }
}

pub fn normalize_bracket(entries: &[u32], ell: u32) -> Result<SignedRow> {
    if let Some(&entry) = entries.iter().find(|&&e| e == 0 || e > ell + 1) {
        return Err(StraightenError::BracketEntry { entry, max: ell + 1 });
    }
    let mut sorted = entries.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(SignedRow::Zero);
    }
    let inversions = (0..entries.len())
        .flat_map(|i| (i + 1..entries.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| entries[i] > entries[j])
        .count();
    Ok(SignedRow::Signed { negative: inversions % 2 == 1, row: Row::new(&sorted, ell)? })
}

/// Finite combination of tableaux with exact coefficients. Tableaux are
/// stored as given; products are commutative, so two arrangements of the
/// same rows are different keys here.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TableauPolynomial {
    terms: BTreeMap<Tableau, Coeff>,
}

impl TableauPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(t: Tableau) -> Self {
        let mut p = Self::zero();
        p.add_term(t, Coeff::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Tableau, Coeff)>) -> Self {
        let mut p = Self::zero();
        for (t, c) in terms {
            p.add_term(t, c);
        }
        p
    }

    pub fn add_term(&mut self, t: Tableau, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &TableauPolynomial, scale: &Coeff) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * scale);
        }
    }

    pub fn sub(&self, other: &TableauPolynomial) -> TableauPolynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-Coeff::one());
        out
    }

    pub fn coefficient(&self, t: &Tableau) -> Coeff {
        self.terms.get(t).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tableau, &Coeff)> {
        self.terms.iter()
    }

    pub fn tableaux(&self) -> impl Iterator<Item = &Tableau> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rank of the rows, if any term has a row.
    pub fn ell(&self) -> Option<u32> {
        self.terms.keys().flat_map(|t| t.rows().first()).map(Row::ell).next()
    }

    /// Convert a combination of datum monomials, each written as its
    /// canonical adapted tableau.
    pub fn from_lc(d: &TypeADatum, lc: &LinearCombination<SlottedRow>) -> Self {
        Self::from_terms(lc.iter().map(|(m, c)| (d.tableau(m), c.clone())))
    }

    pub fn to_lc(&self, d: &TypeADatum) -> Result<LinearCombination<SlottedRow>> {
        let mut lc = LinearCombination::zero();
        for (t, c) in &self.terms {
            lc.add_term(d.monomial(t)?, c.clone());
        }
        Ok(lc)
    }
}

impl fmt::Display for TableauPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c < &Coeff::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            for r in t.rows() {
                write!(f, "[{r}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TableauPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reverse the alphabet: `i ↦ ℓ+2−i`. Turns right alignment into left
/// alignment and reverses `⟵`.
fn mirror(r: &Row) -> Row {
    let n = r.ell() as u8 + 1;
    let mut e: Vec<u8> = r.entries().iter().map(|&x| n + 1 - x).collect();
    e.reverse();
    Row::from_sorted(e, r.ell() as u8)
}

fn pair(a: Row, b: Row) -> Tableau {
    Tableau::from_rows_unchecked(vec![a, b])
}

/// Index of violation of the two-row tableau `R, S` (1-based), or `None`
/// when `R ⟵ S`.
///
/// For `|R| ≥ |S|` this is the first column `t` with `R_t > S_t`. For
/// `|R| < |S|` the index is computed on the mirrored pair `S*, R*`.
pub fn index_of_violation(r: &Row, s: &Row) -> Result<Option<usize>> {
    if r.ell() != s.ell() {
        return Err(TableauError::RankMismatch(r.ell() as u8, s.ell() as u8).into());
    }
    if r.len() < s.len() {
        return index_of_violation(&mirror(s), &mirror(r));
    }
    Ok(r.entries().iter().zip(s.entries()).position(|(a, b)| a > b).map(|p| p + 1))
}

/// Subsets of `0..n` of size `t`, in lexicographic order.
fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (t - cur.len()) {
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    rec(0, n, t, &mut cur, &mut out);
    out
}

/// The shuffling relation of a non-standard pair `R, S`, as a polynomial
/// whose terms are two-row tableaux with the shapes of `R` and `S` in that
/// order. The coefficient of `R, S` itself is `+1`.
///
/// With `t` the index of violation, write `R = i₁…i_{t−1} u_{t+1}…u_{k+1}` and
/// `S = u₁…u_t j₁…j_{h−t}`. The relation is the signed sum over the choices
/// of `t` of the `u`'s to go into the second bracket, both groups kept in
/// their original order, the sign being that of the resulting shuffle.
/// When `|R| < |S|` the relation of the mirrored pair `S*, R*` is mirrored
/// back.
pub fn shuffling_relation(r: &Row, s: &Row) -> Result<TableauPolynomial> {
    let t = index_of_violation(r, s)?
        .ok_or_else(|| StraightenError::StandardPair(pair(r.clone(), s.clone()).to_string()))?;
    if r.len() < s.len() {
        let rel = shuffling_relation(&mirror(s), &mirror(r))?;
        return Ok(TableauPolynomial::from_terms(rel.iter().map(|(tab, c)| {
            let rows = tab.rows();
            (pair(mirror(&rows[1]), mirror(&rows[0])), c.clone())
        })));
    }
    let ell = r.ell();
    let (re, se) = (r.entries_u32(), s.entries_u32());
    let k = re.len();
    let fixed_r = &re[..t - 1];
    let fixed_s = &se[t..];
    let u: Vec<u32> = se[..t].iter().chain(&re[t - 1..]).copied().collect();
    let mut out = TableauPolynomial::zero();
    for chosen in subsets(k + 1, t) {
        let rest: Vec<usize> = (0..=k).filter(|i| !chosen.contains(i)).collect();
        // sign of the permutation listing `chosen` then `rest`
        let inversions: usize =
            chosen.iter().map(|&c| rest.iter().filter(|&&x| x < c).count()).sum();
        let first: Vec<u32> = fixed_r.iter().copied().chain(rest.iter().map(|&i| u[i])).collect();
        let second: Vec<u32> = chosen.iter().map(|&i| u[i]).chain(fixed_s.iter().copied()).collect();
        let (a, b) = (normalize_bracket(&first, ell)?, normalize_bracket(&second, ell)?);
        let sign = a.sign() * b.sign() * if inversions.is_multiple_of(2) { 1 } else { -1 };
        if sign != 0 {
            out.add_term(pair(a.row().unwrap().clone(), b.row().unwrap().clone()), coeff(sign));
        }
    }
    Ok(out)
}

/// Equal-length pairs are kept with the lexicographically smaller row first.
fn canonical_pair(t: &Tableau) -> Tableau {
    let rows = t.rows();
    if rows[0].len() == rows[1].len() && rows[0] > rows[1] {
        pair(rows[1].clone(), rows[0].clone())
    } else {
        t.clone()
    }
}

/// Expand the two-row tableau `R, S` in standard two-row tableaux of the
/// same shape sequence by repeated shuffling relations. A standard pair is
/// returned unchanged.
pub fn straighten_pair(r: &Row, s: &Row) -> Result<TableauPolynomial> {
    let start = canonical_pair(&pair(r.clone(), s.clone()));
    let mut work = TableauPolynomial::single(start);
    let mut done = TableauPolynomial::zero();
    let mut steps = 0;
    while let Some((t, c)) = work.terms.pop_first() {
        let (a, b) = (&t.rows()[0], &t.rows()[1]);
        if a.precedes(b) {
            done.add_term(t, c);
            continue;
        }
        steps += 1;
        if steps > PAIR_CAP {
            return Err(SmtError::CapExceeded(PAIR_CAP).into());
        }
        let rel = shuffling_relation(a, b)?;
        let rel = TableauPolynomial::from_terms(rel.iter().map(|(x, c)| (canonical_pair(x), c.clone())));
        let own = rel.coefficient(&t);
        if own.is_zero() {
            return Err(StraightenError::Internal(format!("shuffling relation of {t} lost its own term")));
        }
        let scale = -c / own;
        for (x, d) in rel.iter().filter(|(x, _)| *x != &t) {
            work.add_term(x.clone(), d * &scale);
        }
    }
    Ok(done)
}

fn convert(m: &Monomial<SlottedRow>, to: &TypeADatum) -> Result<Monomial<SlottedRow>> {
    Ok(Monomial::new(
        m.factors().iter().map(|g| to.generator(g.row.clone())).collect::<std::result::Result<Vec<_>, _>>()?,
    ))
}

/// Rules for one type-A datum, produced on demand.
///
/// Degree-two rules come from [`straighten_pair`]. For a higher-degree
/// minimally non-standard monomial, the monomial and every standard
/// monomial of its multidegree are first expanded in the standard basis of
/// the decreasing rearrangement of the reference shape (where only degree-two
/// rules occur); the rule is the unique solution of the resulting exact
/// linear system.
pub struct TypeARules {
    datum: TypeADatum,
    decreasing: TypeADatum,
    basis: RefCell<HashMap<Multidegree, BasisChange>>,
    rules: RefCell<HashMap<Monomial<SlottedRow>, StraighteningRule<SlottedRow>>>,
}

struct BasisChange {
    standard: Vec<Monomial<SlottedRow>>,
    /// Decreasing-basis expansion of each standard monomial, in the
    /// decreasing datum's generators.
    images: Vec<LinearCombination<SlottedRow>>,
}

/// Degree-two rules only, for data in which every weakly standard monomial is
/// standard.
struct PairRules<'a> {
    datum: &'a TypeADatum,
}

fn pair_rule(lhs: &Monomial<SlottedRow>, d: &TypeADatum) -> Result<StraighteningRule<SlottedRow>> {
    let rows: Vec<Row> = lhs.factors().iter().map(|g| g.row.clone()).collect();
    let expansion = straighten_pair(&rows[0], &rows[1])?;
    Ok(StraighteningRule::new(lhs.clone(), expansion.to_lc(d)?, d)?)
}

impl RuleSource<SlottedRow> for PairRules<'_> {
    fn rule_for(&self, lhs: &Monomial<SlottedRow>) -> smt::Result<Option<StraighteningRule<SlottedRow>>> {
        if lhs.degree() != 2 {
            return Ok(None);
        }
        pair_rule(lhs, self.datum).map(Some).map_err(into_smt)
    }
}

fn into_smt(e: StraightenError) -> SmtError {
    match e {
        StraightenError::Smt(e) => e,
        other => SmtError::Precondition(other.to_string()),
    }
}

impl TypeARules {
    pub fn new(reference: ReferenceShape) -> Self {
        let mut shapes = reference.shapes();
        shapes.sort_unstable_by(|a, b| b.cmp(a));
        let shapes: Vec<u32> = shapes.iter().map(|&k| k as u32).collect();
        let decreasing = ReferenceShape::new(&shapes, reference.ell()).expect("rearranged reference");
        TypeARules {
            datum: TypeADatum::new(reference),
            decreasing: TypeADatum::new(decreasing),
            basis: RefCell::new(HashMap::new()),
            rules: RefCell::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &TypeADatum {
        &self.datum
    }

    /// Expansion of `m` (a monomial of the decreasing datum) in its
    /// standard basis.
    fn decreasing_expansion(&self, m: &Monomial<SlottedRow>) -> Result<LinearCombination<SlottedRow>> {
        let source = PairRules { datum: &self.decreasing };
        Ok(smt::normal_form(m, &source, &self.decreasing, smt::DEFAULT_REWRITE_CAP)?)
    }

    fn basis_change(&self, md: &Multidegree) -> Result<()> {
        if self.basis.borrow().contains_key(md) {
            return Ok(());
        }
        let reference = self.datum.reference();
        let mut standard = Vec::new();
        let mut images = Vec::new();
        for t in enumerate_standard(md, reference)? {
            let m = self.datum.monomial(&t)?;
            images.push(self.decreasing_expansion(&convert(&m, &self.decreasing)?)?);
            standard.push(m);
        }
        self.basis.borrow_mut().insert(md.clone(), BasisChange { standard, images });
        Ok(())
    }

    /// Expansion of any monomial of the datum in its standard basis, by
    /// solving in the decreasing basis.
    pub fn expand_by_basis_change(&self, m: &Monomial<SlottedRow>) -> Result<LinearCombination<SlottedRow>> {
        let md = self.datum.multidegree(m);
        self.basis_change(&md)?;
        let target = self.decreasing_expansion(&convert(m, &self.decreasing)?)?;
        let basis = self.basis.borrow();
        let change = &basis[&md];
        let mut keys: Vec<&Monomial<SlottedRow>> = target.monomials().collect();
        for img in &change.images {
            keys.extend(img.monomials());
        }
        keys.sort();
        keys.dedup();
        let a: Vec<Vec<Coeff>> = keys
            .iter()
            .map(|k| change.images.iter().map(|img| img.coefficient(k)).collect())
            .collect();
        let b: Vec<Coeff> = keys.iter().map(|k| target.coefficient(k)).collect();
        let x = linalg::solve_unique(&a, &b).ok_or_else(|| {
            StraightenError::Internal(format!("standard monomials of {md:?} do not span {m:?}"))
        })?;
        Ok(LinearCombination::from_terms(change.standard.iter().cloned().zip(x)))
    }

    fn build_rule(&self, lhs: &Monomial<SlottedRow>) -> Result<StraighteningRule<SlottedRow>> {
        if lhs.degree() == 2 {
            pair_rule(lhs, &self.datum)
        } else {
            let rhs = self.expand_by_basis_change(lhs)?;
            Ok(StraighteningRule::new(lhs.clone(), rhs, &self.datum)?)
        }
    }

    /// Every rule produced so far.
    pub fn generated_rules(&self) -> Vec<StraighteningRule<SlottedRow>> {
        let mut v: Vec<_> = self.rules.borrow().values().cloned().collect();
        v.sort_by(|a, b| a.lhs().cmp(b.lhs()));
        v
    }
}

impl RuleSource<SlottedRow> for TypeARules {
    fn rule_for(&self, lhs: &Monomial<SlottedRow>) -> smt::Result<Option<StraighteningRule<SlottedRow>>> {
        if let Some(r) = self.rules.borrow().get(lhs) {
            return Ok(Some(r.clone()));
        }
        let rule = self.build_rule(lhs).map_err(into_smt)?;
        self.rules.borrow_mut().insert(lhs.clone(), rule.clone());
        Ok(Some(rule))
    }
}

/// Straighten an adapted tableau with rules generated on demand.
pub fn straighten_tableau(t: &Tableau, reference: &ReferenceShape) -> Result<TableauPolynomial> {
    straighten_with(t, &TypeARules::new(reference.clone()))
}

/// As [`straighten_tableau`], reusing a rule source across calls.
pub fn straighten_with(t: &Tableau, rules: &TypeARules) -> Result<TableauPolynomial> {
    let d = rules.datum();
    if !d.reference().is_adapted(t) {
        return Err(TableauError::NotAdapted(t.to_string(), d.reference().shapes().iter().map(|&k| k as u8).collect()).into());
    }
    let m = d.monomial(t)?;
    let nf = smt::normal_form(&m, rules, d, smt::DEFAULT_REWRITE_CAP)?;
    Ok(TableauPolynomial::from_lc(d, &nf))
}

/// Square matrix of size `ℓ+1` with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    entries: Vec<Vec<Coeff>>,
}

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<Coeff>>) -> Result<Self> {
        let n = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(StraightenError::MatrixShape { expected: n, got: row.len() });
        }
        Ok(RationalMatrix { entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| coeff(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Coeff::one() } else { Coeff::zero() }).collect())
                .collect(),
        }
    }

    /// Entries uniform in `-9..=9`, redrawn until the matrix is invertible.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = RationalMatrix {
                entries: (0..n).map(|_| (0..n).map(|_| coeff(rng.gen_range(-9..=9))).collect()).collect(),
            };
            if !linalg::determinant(m.entries.clone()).is_zero() {
                return m;
            }
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i][j]
    }
}

/// Seeded list of random invertible matrices of the given size.
pub fn random_matrices(size: usize, count: usize, seed: u64) -> Vec<RationalMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| RationalMatrix::random(size, &mut rng)).collect()
}

/// Minor of `m` on rows `R` and columns `1..|R|`.
pub fn plucker_evaluate(r: &Row, m: &RationalMatrix) -> Result<Coeff> {
    let n = r.ell() as usize + 1;
    if m.size() != n {
        return Err(StraightenError::MatrixShape { expected: n, got: m.size() });
    }
    let k = r.len();
    let sub = r.entries().iter().map(|&i| m.entries[i as usize - 1][..k].to_vec()).collect();
    Ok(linalg::determinant(sub))
}

/// Plücker coordinates of one matrix, computed once per row.
pub struct MinorCache<'a> {
    matrix: &'a RationalMatrix,
    minors: HashMap<Row, Coeff>,
}

impl<'a> MinorCache<'a> {
    pub fn new(matrix: &'a RationalMatrix) -> Self {
        MinorCache { matrix, minors: HashMap::new() }
    }

    pub fn minor(&mut self, r: &Row) -> Result<Coeff> {
        if let Some(v) = self.minors.get(r) {
            return Ok(v.clone());
        }
        let v = plucker_evaluate(r, self.matrix)?;
        self.minors.insert(r.clone(), v.clone());
        Ok(v)
    }

    pub fn product<'r>(&mut self, rows: impl IntoIterator<Item = &'r Row>) -> Result<Coeff> {
        let mut acc = Coeff::one();
        for r in rows {
            acc *= self.minor(r)?;
        }
        Ok(acc)
    }

    pub fn polynomial(&mut self, p: &TableauPolynomial) -> Result<Coeff> {
        let mut acc = Coeff::zero();
        for (t, c) in p.iter() {
            acc += c * self.product(t.rows())?;
        }
        Ok(acc)
    }
}

/// Evaluate `p` at `trials` seeded random matrices; true iff every value is
/// exactly zero.
pub fn verify_polynomial_identity(p: &TableauPolynomial, trials: usize, seed: u64) -> Result<bool> {
    let Some(ell) = p.ell() else {
        // only empty tableaux: the polynomial is the constant sum of coefficients
        return Ok(p.iter().map(|(_, c)| c.clone()).sum::<Coeff>().is_zero());
    };
    for m in random_matrices(ell as usize + 1, trials, seed) {
        if !MinorCache::new(&m).polynomial(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
