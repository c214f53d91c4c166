//! Rows and tableaux for `SL_{ℓ+1}`: the column order `⟵`, swap maps, the
//! `τᵢ` action, adapted shapes, standardness and enumeration.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::smt::{self, Monomial, ShapeLabel, SmtDatum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("invalid row {entries:?} for ℓ = {ell}: {reason}")]
    InvalidRow { entries: Vec<u32>, ell: u32, reason: &'static str },
    #[error("rows live in different ranks (ℓ = {0} and ℓ = {1})")]
    RankMismatch(u8, u8),
    #[error("rows {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("tableau {0} is not adapted to the reference shape {1:?}")]
    NotAdapted(String, Vec<u8>),
    #[error("invalid reference shape {0:?}: {1}")]
    InvalidReference(Vec<u32>, &'static str),
    #[error("multidegree {0:?} does not match a reference shape of length {1}")]
    MultidegreeLength(Vec<u32>, usize),
    #[error("swap index {0} out of range for a tableau with {1} rows")]
    IndexOutOfRange(usize, usize),
}

pub type Result<T> = std::result::Result<T, TableauError>;

/// A strictly increasing sequence `1 ≤ i₁ < ⋯ < i_k ≤ ℓ+1` with `1 ≤ k ≤ ℓ`.
///
/// Ordered lexicographically by entries, which is a linear extension of `⟵`
/// on rows of equal length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    entries: Vec<u8>,
    ell: u8,
}

impl Row {
    pub fn new(entries: &[u32], ell: u32) -> Result<Row> {
        let invalid = |reason| TableauError::InvalidRow { entries: entries.to_vec(), ell, reason };
        if ell == 0 || ell > 254 {
            return Err(invalid("rank out of supported range 1..=254"));
        }
        if entries.is_empty() || entries.len() > ell as usize {
            return Err(invalid("length must lie in 1..=ℓ"));
        }
        if entries.iter().any(|&e| e == 0 || e > ell + 1) {
            return Err(invalid("entries must lie in 1..=ℓ+1"));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("entries must be strictly increasing"));
        }
        Ok(Row { entries: entries.iter().map(|&e| e as u8).collect(), ell: ell as u8 })
    }

    pub(crate) fn from_sorted(entries: Vec<u8>, ell: u8) -> Row {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        Row { entries, ell }
    }

    /// Parse a row from concatenated digits, e.g. `"134"`.
    pub fn parse_digits(s: &str, ell: u32) -> Result<Row> {
        let entries: Option<Vec<u32>> = s.trim().chars().map(|c| c.to_digit(10)).collect();
        match entries {
            Some(e) => Row::new(&e, ell),
            None => Err(TableauError::InvalidRow { entries: vec![], ell, reason: "not a digit string" }),
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn entries_u32(&self) -> Vec<u32> {
        self.entries.iter().map(|&e| e as u32).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ell(&self) -> u32 {
        self.ell as u32
    }

    /// `self ⟵ other`, assuming equal rank.
    pub(crate) fn precedes(&self, other: &Row) -> bool {
        let (k, h) = (self.len(), other.len());
        if k >= h {
            self.entries[..h].iter().zip(&other.entries).all(|(a, b)| a <= b)
        } else {
            self.entries.iter().zip(&other.entries[h - k..]).all(|(a, b)| a <= b)
        }
    }

    /// All rows of length `k` for rank `ell`, in lexicographic order.
    pub fn all_of_length(k: usize, ell: u32) -> Vec<Row> {
        let n = ell as u8 + 1;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: u8, n: u8, k: usize, ell: u8, cur: &mut Vec<u8>, out: &mut Vec<Row>) {
            if cur.len() == k {
                out.push(Row { entries: cur.clone(), ell });
                return;
            }
            let need = (k - cur.len()) as u8;
            for v in start..=n + 1 - need {
                cur.push(v);
                rec(v + 1, n, k, ell, cur, out);
                cur.pop();
            }
        }
        if k >= 1 && k <= ell as usize {
            rec(1, n, k, ell as u8, &mut cur, &mut out);
        }
        out
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.iter().all(|&e| e < 10) {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Debug for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn same_rank(r: &Row, s: &Row) -> Result<()> {
    if r.ell == s.ell {
        Ok(())
    } else {
        Err(TableauError::RankMismatch(r.ell, s.ell))
    }
}

/// `R ⟵ S`: align left if `R` is at least as long as `S`, right otherwise,
/// and require the columns to be non-decreasing.
pub fn row_leq(r: &Row, s: &Row) -> Result<bool> {
    same_rank(r, s)?;
    Ok(r.precedes(s))
}

/// Lexicographically least strictly increasing sequence of length `len`
/// drawn from `pool`, containing every element of `must`, with
/// `seq[p] ≥ lower[p]`. When a componentwise minimum exists this is it.
fn least_chain(pool: &[u8], must: &[u8], len: usize, lower: &[u8]) -> Option<Vec<u8>> {
    fn rec(
        pool: &[u8],
        must: &[u8],
        len: usize,
        lower: &[u8],
        prev: u8,
        placed_must: usize,
        cur: &mut Vec<u8>,
    ) -> bool {
        let p = cur.len();
        if p == len {
            return placed_must == must.len();
        }
        if must.len() - placed_must > len - p {
            return false;
        }
        for &c in pool.iter().filter(|&&c| c > prev && c >= lower[p]) {
            // a must element strictly between prev and c would be skipped for good
            if placed_must < must.len() && must[placed_must] < c {
                break;
            }
            let hit = usize::from(placed_must < must.len() && must[placed_must] == c);
            cur.push(c);
            if rec(pool, must, len, lower, c, placed_must + hit, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(len);
    rec(pool, must, len, lower, 0, 0, &mut cur).then_some(cur)
}

/// Mirror of [`least_chain`]: built right to left, picking the largest
/// candidate first, with `seq[p] ≤ upper[p]`.
fn greatest_chain(pool: &[u8], must: &[u8], len: usize, upper: &[u8]) -> Option<Vec<u8>> {
    fn rec(
        pool: &[u8],
        must: &[u8],
        len: usize,
        upper: &[u8],
        next: u8,
        placed_must: usize,
        cur: &mut Vec<u8>,
    ) -> bool {
        let filled = cur.len();
        if filled == len {
            return placed_must == must.len();
        }
        if must.len() - placed_must > len - filled {
            return false;
        }
        let p = len - 1 - filled;
        let pending = must.len() - placed_must;
        for &c in pool.iter().rev().filter(|&&c| c < next && c <= upper[p]) {
            if pending > 0 && must[pending - 1] > c {
                break;
            }
            let hit = usize::from(pending > 0 && must[pending - 1] == c);
            cur.push(c);
            if rec(pool, must, len, upper, c, placed_must + hit, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(len);
    if rec(pool, must, len, upper, u8::MAX, 0, &mut cur) {
        cur.reverse();
        Some(cur)
    } else {
        None
    }
}

/// The swap map `φ_{k,h}(R, S) = (R⁰, S⁰)` on a comparable pair.
pub fn swap_pair(r: &Row, s: &Row) -> Result<(Row, Row)> {
    same_rank(r, s)?;
    if !r.precedes(s) {
        return Err(TableauError::NotComparable(r.to_string(), s.to_string()));
    }
    let (k, h) = (r.len(), s.len());
    if k == h {
        return Ok((r.clone(), s.clone()));
    }
    let ell = r.ell;
    let all: Vec<u8> = (1..=ell + 1).collect();
    let (r0, s0) = if k < h {
        // S⁰: least subrow of S of length k above R; R⁰: greatest row of
        // length h containing R below S.
        let s0 = least_chain(&s.entries, &[], k, &r.entries);
        let r0 = greatest_chain(&all, &r.entries, h, &s.entries);
        (r0, s0)
    } else {
        // R⁰: greatest subrow of R of length h below S; S⁰: least row of
        // length k containing S above R.
        let r0 = greatest_chain(&r.entries, &[], h, &s.entries);
        let s0 = least_chain(&all, &s.entries, k, &r.entries);
        (r0, s0)
    };
    let (r0, s0) = (r0.expect("swap target exists"), s0.expect("swap target exists"));
    Ok((Row::from_sorted(r0, ell), Row::from_sorted(s0, ell)))
}

/// A sequence of rows; shapes need not be adapted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    rows: Vec<Row>,
}

impl Tableau {
    pub fn new(rows: Vec<Row>) -> Result<Tableau> {
        if let Some(w) = rows.windows(2).find(|w| w[0].ell != w[1].ell) {
            return Err(TableauError::RankMismatch(w[0].ell, w[1].ell));
        }
        Ok(Tableau { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Row>) -> Tableau {
        Tableau { rows }
    }

    /// Parse `"24;134;2"`.
    pub fn parse(s: &str, ell: u32) -> Result<Tableau> {
        let rows = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| Row::parse_digits(p, ell))
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(rows)
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Row> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Row::len).collect()
    }

    pub fn is_weakly_standard(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].precedes(&w[1]))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// `τᵢ`: swap rows `i` and `i + 1` (0-based) through [`swap_pair`].
pub fn tau(t: &Tableau, i: usize) -> Result<Tableau> {
    if i + 1 >= t.rows.len() {
        return Err(TableauError::IndexOutOfRange(i, t.rows.len()));
    }
    let (a, b) = swap_pair(&t.rows[i], &t.rows[i + 1])?;
    let mut rows = t.rows.clone();
    rows[i] = a;
    rows[i + 1] = b;
    Ok(Tableau { rows })
}

/// The reference shape `(k̄₁, …, k̄ₙ)`, entries distinct and in `1..=ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReferenceShape {
    shapes: Vec<u8>,
    ell: u8,
}

impl ReferenceShape {
    pub fn new(shapes: &[u32], ell: u32) -> Result<ReferenceShape> {
        let invalid = |why| TableauError::InvalidReference(shapes.to_vec(), why);
        if shapes.is_empty() {
            return Err(invalid("must be non-empty"));
        }
        if ell == 0 || ell > 254 {
            return Err(invalid("rank out of supported range 1..=254"));
        }
        if shapes.iter().any(|&k| k == 0 || k > ell) {
            return Err(invalid("entries must lie in 1..=ℓ"));
        }
        let mut sorted = shapes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != shapes.len() {
            return Err(invalid("entries must be distinct"));
        }
        Ok(ReferenceShape { shapes: shapes.iter().map(|&k| k as u8).collect(), ell: ell as u8 })
    }

    pub fn shapes(&self) -> Vec<usize> {
        self.shapes.iter().map(|&k| k as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn ell(&self) -> u32 {
        self.ell as u32
    }

    /// Index of the slot holding row length `k`.
    pub fn slot_of(&self, k: usize) -> Option<usize> {
        self.shapes.iter().position(|&s| s as usize == k)
    }

    pub fn is_adapted(&self, t: &Tableau) -> bool {
        let mut last = 0;
        for r in &t.rows {
            if r.ell != self.ell {
                return false;
            }
            match self.slot_of(r.len()) {
                Some(s) if s >= last => last = s,
                _ => return false,
            }
        }
        true
    }

    fn ensure_adapted(&self, t: &Tableau) -> Result<()> {
        if self.is_adapted(t) {
            Ok(())
        } else {
            Err(TableauError::NotAdapted(t.to_string(), self.shapes.clone()))
        }
    }

    /// `m₁` copies of `k̄₁`, then `m₂` copies of `k̄₂`, …
    pub fn adapted_shape(&self, md: &Multidegree) -> Result<Vec<usize>> {
        self.check_multidegree(md)?;
        Ok(self
            .shapes
            .iter()
            .zip(&md.0)
            .flat_map(|(&k, &m)| std::iter::repeat_n(k as usize, m as usize))
            .collect())
    }

    pub fn check_multidegree(&self, md: &Multidegree) -> Result<()> {
        if md.0.len() == self.shapes.len() {
            Ok(())
        } else {
            Err(TableauError::MultidegreeLength(md.0.clone(), self.shapes.len()))
        }
    }

    pub fn multidegree_of(&self, t: &Tableau) -> Result<Multidegree> {
        let mut counts = vec![0u32; self.shapes.len()];
        for r in &t.rows {
            match self.slot_of(r.len()) {
                Some(s) if r.ell == self.ell => counts[s] += 1,
                _ => return Err(TableauError::NotAdapted(t.to_string(), self.shapes.clone())),
            }
        }
        Ok(Multidegree(counts))
    }

    /// Rows reordered into adapted shape, same-length rows sorted
    /// lexicographically: the canonical tableau of a commutative monomial.
    pub fn canonical(&self, rows: Vec<Row>) -> Result<Tableau> {
        let mut keyed = Vec::with_capacity(rows.len());
        for r in rows {
            let slot = self
                .slot_of(r.len())
                .filter(|_| r.ell == self.ell)
                .ok_or_else(|| TableauError::NotAdapted(r.to_string(), self.shapes.clone()))?;
            keyed.push((slot, r));
        }
        keyed.sort();
        Ok(Tableau { rows: keyed.into_iter().map(|(_, r)| r).collect() })
    }

    /// Is the shape sequence non-increasing in row length?
    pub fn is_decreasing(&self) -> bool {
        self.shapes.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_increasing(&self) -> bool {
        self.shapes.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Multidegree `(m₁, …, mₙ)`, one count per reference slot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All multidegrees with `n` slots and total at most `max_total`.
    pub fn all_up_to(n: usize, max_total: u32) -> Vec<Multidegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
            if i == cur.len() {
                out.push(Multidegree(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, max_total, &mut cur, &mut out);
        out
    }
}

/// Every tableau reachable from `t` by `τ` swaps is weakly standard. No
/// condition on the shape order: this is membership in `ST{k₁,…,k_N}`.
pub fn is_swap_closed(t: &Tableau) -> bool {
    let d = FreeRowDatum { ell: t.rows.first().map_or(1, |r| r.ell) };
    smt::explore_swaps(&t.rows, &d).expect("rows of one rank").is_none()
}

/// Standardness by sorting the shape into non-increasing length with `τ`
/// swaps and then checking weak standardness.
pub fn is_standard_fast(t: &Tableau) -> bool {
    if !t.is_weakly_standard() {
        return false;
    }
    let mut rows = t.rows.clone();
    let n = rows.len();
    for pass in 0..n {
        let mut moved = false;
        for j in 0..n.saturating_sub(1 + pass) {
            if rows[j].len() < rows[j + 1].len() {
                if !rows[j].precedes(&rows[j + 1]) {
                    return false;
                }
                let (a, b) = swap_pair(&rows[j], &rows[j + 1]).expect("comparable pair");
                rows[j] = a;
                rows[j + 1] = b;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    rows.windows(2).all(|w| w[0].precedes(&w[1]))
}

/// Standardness of an adapted tableau, via the fast path.
pub fn is_standard_tableau(t: &Tableau, reference: &ReferenceShape) -> Result<bool> {
    reference.ensure_adapted(t)?;
    Ok(is_standard_fast(t))
}

/// Standardness of an adapted tableau by the definitional swap search.
pub fn is_standard_tableau_bfs(t: &Tableau, reference: &ReferenceShape) -> Result<bool> {
    reference.ensure_adapted(t)?;
    let d = TypeADatum::new(reference.clone());
    let formal = d.formal(t)?;
    Ok(smt::standardness(&formal, &d).expect("generators of the datum").is_standard())
}

/// Every standard tableau of the adapted shape of `md`, in lexicographic
/// order of the row sequence.
pub fn enumerate_standard(md: &Multidegree, reference: &ReferenceShape) -> Result<Vec<Tableau>> {
    let shape = reference.adapted_shape(md)?;
    let ell = reference.ell();
    let mut by_len: BTreeMap<usize, Vec<Row>> = BTreeMap::new();
    for &k in &shape {
        by_len.entry(k).or_insert_with(|| Row::all_of_length(k, ell));
    }
    let mut out = Vec::new();
    let mut cur: Vec<Row> = Vec::with_capacity(shape.len());
    fn rec(
        shape: &[usize],
        by_len: &BTreeMap<usize, Vec<Row>>,
        cur: &mut Vec<Row>,
        out: &mut Vec<Tableau>,
    ) {
        if cur.len() == shape.len() {
            let t = Tableau { rows: cur.clone() };
            if is_standard_fast(&t) {
                out.push(t);
            }
            return;
        }
        for r in &by_len[&shape[cur.len()]] {
            if cur.last().is_some_and(|last| !last.precedes(r)) {
                continue;
            }
            cur.push(r.clone());
            rec(shape, by_len, cur, out);
            cur.pop();
        }
    }
    rec(&shape, &by_len, &mut cur, &mut out);
    Ok(out)
}

/// Order on adapted tableaux of equal shape: `T ≤ T'` iff they agree, or at
/// the first differing row `R_j ≠ R'_j` we have `R'_j ⟵ R_j`. Straightening
/// moves a tableau upwards in this order. Different shapes are incomparable.
pub fn tableau_leq(t: &Tableau, t2: &Tableau) -> bool {
    if t.shape() != t2.shape() {
        return false;
    }
    match t.rows.iter().zip(&t2.rows).find(|(a, b)| a != b) {
        None => true,
        Some((a, b)) => b.precedes(a),
    }
}

/// A type-A generator: a row tagged with its reference slot, so that the
/// derived order sorts by shape first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlottedRow {
    pub slot: usize,
    pub row: Row,
}

impl fmt::Debug for SlottedRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.row)
    }
}

/// The type-A multicone datum for a reference shape.
///
/// The monomial order is the total refinement of the tableau order obtained
/// by comparing canonical tableaux row by row lexicographically: `m ≤ n`
/// iff the multidegrees agree and `n`'s canonical row sequence is
/// lexicographically at most `m`'s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeADatum {
    reference: ReferenceShape,
    use_fast_path: bool,
}

impl TypeADatum {
    pub fn new(reference: ReferenceShape) -> Self {
        TypeADatum { reference, use_fast_path: true }
    }

    /// Same datum with the fast path disabled, so that every standardness
    /// query runs the swap search.
    pub fn definitional(reference: ReferenceShape) -> Self {
        TypeADatum { reference, use_fast_path: false }
    }

    pub fn reference(&self) -> &ReferenceShape {
        &self.reference
    }

    pub fn ell(&self) -> u32 {
        self.reference.ell()
    }

    pub fn generator(&self, row: Row) -> Result<SlottedRow> {
        let slot = self
            .reference
            .slot_of(row.len())
            .filter(|_| row.ell == self.reference.ell)
            .ok_or_else(|| TableauError::NotAdapted(row.to_string(), self.reference.shapes.clone()))?;
        Ok(SlottedRow { slot, row })
    }

    /// The formal monomial of a tableau, factors in row order.
    pub fn formal(&self, t: &Tableau) -> Result<Vec<SlottedRow>> {
        t.rows.iter().map(|r| self.generator(r.clone())).collect()
    }

    pub fn monomial(&self, t: &Tableau) -> Result<Monomial<SlottedRow>> {
        Ok(Monomial::new(self.formal(t)?))
    }

    /// The canonical adapted tableau of a monomial.
    pub fn tableau(&self, m: &Monomial<SlottedRow>) -> Tableau {
        Tableau { rows: m.factors().iter().map(|g| g.row.clone()).collect() }
    }

    pub fn multidegree(&self, m: &Monomial<SlottedRow>) -> Multidegree {
        let mut counts = vec![0u32; self.reference.len()];
        for g in m.factors() {
            counts[g.slot] += 1;
        }
        Multidegree(counts)
    }
}

impl SmtDatum for TypeADatum {
    type Gen = SlottedRow;

    fn shape_of(&self, g: &SlottedRow) -> Option<ShapeLabel> {
        (g.row.ell == self.reference.ell && self.reference.slot_of(g.row.len()) == Some(g.slot))
            .then_some(ShapeLabel(g.slot))
    }

    fn comparable(&self, a: &SlottedRow, b: &SlottedRow) -> bool {
        a.row.precedes(&b.row)
    }

    fn swap(&self, a: &SlottedRow, b: &SlottedRow) -> (SlottedRow, SlottedRow) {
        let (ra, rb) = swap_pair(&a.row, &b.row).expect("swap on a comparable pair");
        (SlottedRow { slot: b.slot, row: ra }, SlottedRow { slot: a.slot, row: rb })
    }

    fn monomial_leq(&self, m: &Monomial<SlottedRow>, n: &Monomial<SlottedRow>) -> bool {
        self.multidegree(m) == self.multidegree(n) && n.factors() <= m.factors()
    }

    fn generators(&self) -> Vec<SlottedRow> {
        let mut out = Vec::new();
        for (slot, &k) in self.reference.shapes.iter().enumerate() {
            for row in Row::all_of_length(k as usize, self.reference.ell()) {
                out.push(SlottedRow { slot, row });
            }
        }
        out
    }

    fn fast_standard(&self, formal: &[SlottedRow]) -> Option<bool> {
        self.use_fast_path.then(|| {
            is_standard_fast(&Tableau { rows: formal.iter().map(|g| g.row.clone()).collect() })
        })
    }
}

/// Rows of every length for one rank, each length its own shape. Used to run
/// the swap search on tableaux whose shape order is arbitrary.
struct FreeRowDatum {
    ell: u8,
}

impl SmtDatum for FreeRowDatum {
    type Gen = Row;

    fn shape_of(&self, g: &Row) -> Option<ShapeLabel> {
        (g.ell == self.ell).then_some(ShapeLabel(g.len()))
    }

    fn comparable(&self, a: &Row, b: &Row) -> bool {
        a.precedes(b)
    }

    fn swap(&self, a: &Row, b: &Row) -> (Row, Row) {
        swap_pair(a, b).expect("swap on a comparable pair")
    }

    fn monomial_leq(&self, m: &Monomial<Row>, n: &Monomial<Row>) -> bool {
        m == n
    }

    fn generators(&self) -> Vec<Row> {
        (1..=self.ell as usize).flat_map(|k| Row::all_of_length(k, self.ell as u32)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: &str, ell: u32) -> Row {
        Row::parse_digits(s, ell).unwrap()
    }

    fn tab(s: &str, ell: u32) -> Tableau {
        Tableau::parse(s, ell).unwrap()
    }

    fn reference(shapes: &[u32], ell: u32) -> ReferenceShape {
        ReferenceShape::new(shapes, ell).unwrap()
    }

    #[test]
    fn row_validation() {
        assert!(Row::new(&[1, 3, 2], 3).is_err());
        assert!(Row::new(&[0, 1], 3).is_err());
        assert!(Row::new(&[1, 5], 3).is_err());
        assert!(Row::new(&[1, 2, 3, 4], 3).is_err());
        assert!(Row::new(&[], 3).is_err());
        assert_eq!(row("134", 3).entries(), &[1, 3, 4]);
    }

    #[test]
    fn row_order_examples() {
        assert!(row_leq(&row("135", 4), &row("14", 4)).unwrap());
        assert!(!row_leq(&row("45", 4), &row("135", 4)).unwrap());
        let r = row("24", 3);
        assert!(row_leq(&r, &r).unwrap());
        assert_eq!(
            row_leq(&row("1", 2), &row("1", 3)),
            Err(TableauError::RankMismatch(2, 3))
        );
    }

    #[test]
    fn swap_examples() {
        assert_eq!(
            swap_pair(&row("25", 5), &row("1346", 5)).unwrap(),
            (row("1245", 5), row("36", 5))
        );
        assert_eq!(swap_pair(&row("24", 3), &row("134", 3)).unwrap(), (row("124", 3), row("34", 3)));
        let (a, b) = (row("13", 3), row("24", 3));
        assert_eq!(swap_pair(&a, &b).unwrap(), (a.clone(), b.clone()));
        assert!(matches!(
            swap_pair(&row("45", 4), &row("135", 4)),
            Err(TableauError::NotComparable(..))
        ));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&tab("24;134;2", 3), 0).unwrap(), tab("124;34;2", 3));
        assert_eq!(tau(&tab("25;1346", 5), 0).unwrap(), tab("1245;36", 5));
        assert!(matches!(tau(&tab("124;34;2", 3), 1), Err(TableauError::NotComparable(..))));
        assert!(matches!(tau(&tab("24", 3), 0), Err(TableauError::IndexOutOfRange(0, 1))));
    }

    #[test]
    fn standardness_examples() {
        let k = reference(&[2, 3, 1], 3);
        assert!(is_standard_tableau(&tab("24;134;3", 3), &k).unwrap());
        assert!(!is_standard_tableau(&tab("24;134;2", 3), &k).unwrap());
        assert!(is_standard_tableau_bfs(&tab("24;134;3", 3), &k).unwrap());
        assert!(!is_standard_tableau_bfs(&tab("24;134;2", 3), &k).unwrap());
        assert!(tab("24;134;2", 3).is_weakly_standard());
        for r in Row::all_of_length(2, 3) {
            assert!(is_standard_tableau(&Tableau::new(vec![r]).unwrap(), &k).unwrap());
        }
        assert!(matches!(
            is_standard_tableau(&tab("134;24", 3), &k),
            Err(TableauError::NotAdapted(..))
        ));
    }

    #[test]
    fn witness_for_nonstandard_example() {
        let k = reference(&[2, 3, 1], 3);
        let d = TypeADatum::definitional(k);
        let formal = d.formal(&tab("24;134;2", 3)).unwrap();
        match smt::standardness(&formal, &d).unwrap() {
            smt::Standardness::NonStandard(w) => {
                assert_eq!(w.swaps, vec![0]);
                let reached: Vec<Row> = w.reached.into_iter().map(|g| g.row).collect();
                assert_eq!(reached, tab("124;34;2", 3).into_rows());
                assert_eq!(w.failing_pair, 1);
            }
            other => panic!("expected a swap witness, got {other:?}"),
        }
    }

    #[test]
    fn reference_validation() {
        assert!(ReferenceShape::new(&[], 3).is_err());
        assert!(ReferenceShape::new(&[4], 3).is_err());
        assert!(ReferenceShape::new(&[2, 2], 3).is_err());
        let k = reference(&[2, 3, 1], 3);
        assert_eq!(k.adapted_shape(&Multidegree(vec![2, 0, 1])).unwrap(), vec![2, 2, 1]);
        assert!(k.adapted_shape(&Multidegree(vec![1])).is_err());
        assert!(k.is_adapted(&tab("24;134;2", 3)));
        assert!(!k.is_adapted(&tab("134;24", 3)));
    }

    #[test]
    fn enumeration_small_counts() {
        let k = reference(&[2, 3, 1], 3);
        assert_eq!(enumerate_standard(&Multidegree(vec![1, 0, 0]), &k).unwrap().len(), 6);
        assert_eq!(enumerate_standard(&Multidegree(vec![0, 0, 0]), &k).unwrap().len(), 1);
        let k1 = reference(&[1], 1);
        assert_eq!(enumerate_standard(&Multidegree(vec![2]), &k1).unwrap().len(), 3);
    }

    #[test]
    fn tableau_order_examples() {
        let t = tab("24;134;2", 3);
        assert!(tableau_leq(&t, &t));
        assert!(tableau_leq(&t, &tab("14;234;2", 3)));
        assert!(!tableau_leq(&tab("14;234;2", 3), &t));
        assert!(!tableau_leq(&t, &tab("24;134", 3)));
    }

    #[test]
    fn type_a_datum_axioms() {
        for ell in 1..=4 {
            let k = ReferenceShape::new(&(1..=ell).collect::<Vec<_>>(), ell).unwrap();
            smt::check_datum_axioms(&TypeADatum::new(k)).unwrap();
        }
    }

    #[test]
    fn degree_three_counterexample_exists() {
        let d = TypeADatum::new(reference(&[2, 3, 1], 3));
        assert!(smt::weakly_equals_standard_upto(&d, 2).unwrap());
        assert!(!smt::weakly_equals_standard_upto(&d, 3).unwrap());
        let formal = d.formal(&tab("24;134;2", 3)).unwrap();
        assert!(smt::is_weakly_standard(&formal, &d).unwrap());
        assert!(smt::is_minimally_nonstandard(&formal, &d).unwrap());
        assert!(smt::weakly_equals_standard_upto(&d, 1).unwrap());
    }
}
