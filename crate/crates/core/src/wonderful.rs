//! The `A₁×A₁` multicone `C(Y) = ⊕ Γ(P¹×P¹, …)` written with two-box rows, and
//! the Cox ring `C(X)` of the wonderful variety
//! `{([φ],[A],[v]) : φ(Av) = 0} ⊂ P(V*)×P(End V)×P(V)`, `V = C²`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::smt::{
    self, Coeff, LinearCombination, Monomial, RuleSet, ShapeLabel, SmtDatum, SmtError,
    StandardnessCache, StraighteningRule,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoxError {
    #[error("a row cannot have two empty boxes")]
    EmptyRow,
    #[error("box entry {0} must be 0 (empty), 1 or 2")]
    Entry(u32),
    #[error("rows {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("cannot parse box row {0:?}")]
    Parse(String),
}

/// A box: empty, or filled with 1 or 2.
pub type Cell = Option<u8>;

/// `i ≤ j` on boxes: everything except `2 ≤ 1`; an empty box is comparable
/// with anything.
pub fn box_leq(a: Cell, b: Cell) -> bool {
    !matches!((a, b), (Some(2), Some(1)))
}

/// A row of two boxes, not both empty. Ordered by `(left, right)` with the
/// empty box first, which extends `⟵` on each shape.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxRow {
    left: Cell,
    right: Cell,
}

impl BoxRow {
    pub fn new(left: Cell, right: Cell) -> Result<BoxRow, BoxError> {
        for v in [left, right].into_iter().flatten() {
            if v != 1 && v != 2 {
                return Err(BoxError::Entry(v as u32));
            }
        }
        if left.is_none() && right.is_none() {
            return Err(BoxError::EmptyRow);
        }
        Ok(BoxRow { left, right })
    }

    /// From the integer encoding with 0 for an empty box.
    pub fn from_codes(left: u32, right: u32) -> Result<BoxRow, BoxError> {
        let cell = |v: u32| match v {
            0 => Ok(None),
            1 | 2 => Ok(Some(v as u8)),
            _ => Err(BoxError::Entry(v)),
        };
        BoxRow::new(cell(left)?, cell(right)?)
    }

    /// Parse `"21"`, `"2."` or `".1"`.
    pub fn parse(s: &str) -> Result<BoxRow, BoxError> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 2 {
            return Err(BoxError::Parse(s.into()));
        }
        let cell = |c: char| match c {
            '.' | '0' | '_' => Ok(0),
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(BoxError::Parse(s.into())),
        };
        BoxRow::from_codes(cell(chars[0])?, cell(chars[1])?)
    }

    pub fn left(&self) -> Cell {
        self.left
    }

    pub fn right(&self) -> Cell {
        self.right
    }

    pub fn codes(&self) -> [u32; 2] {
        [self.left.unwrap_or(0) as u32, self.right.unwrap_or(0) as u32]
    }

    /// 0 for `[i·]` (shape `λ₁ = ω`), 1 for `[ij]` (`λ₂ = ω+ω'`), 2 for `[·j]` (`λ₃ = ω'`).
    pub fn shape(&self) -> usize {
        match (self.left, self.right) {
            (Some(_), None) => 0,
            (Some(_), Some(_)) => 1,
            _ => 2,
        }
    }

    pub fn all() -> Vec<BoxRow> {
        let mut v: Vec<BoxRow> = [None, Some(1), Some(2)]
            .into_iter()
            .flat_map(|l| [None, Some(1), Some(2)].into_iter().map(move |r| (l, r)))
            .filter_map(|(l, r)| BoxRow::new(l, r).ok())
            .collect();
        v.sort_by_key(|r| (r.shape(), *r));
        v
    }
}

impl fmt::Display for BoxRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |x: Cell| x.map_or('.', |v| (b'0' + v) as char);
        write!(f, "{}{}", c(self.left), c(self.right))
    }
}

impl fmt::Debug for BoxRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// `r ⟵ s`: columnwise [`box_leq`].
pub fn box_row_leq(r: &BoxRow, s: &BoxRow) -> bool {
    box_leq(r.left, s.left) && box_leq(r.right, s.right)
}

/// Swap map: in each column where exactly one box is filled, move the
/// filled box to the other row.
pub fn box_swap(r: &BoxRow, s: &BoxRow) -> Result<(BoxRow, BoxRow), BoxError> {
    if !box_row_leq(r, s) {
        return Err(BoxError::NotComparable(r.to_string(), s.to_string()));
    }
    let exchange = |a: Cell, b: Cell| if a.is_some() != b.is_some() { (b, a) } else { (a, b) };
    let (l1, l2) = exchange(r.left, s.left);
    let (r1, r2) = exchange(r.right, s.right);
    Ok((BoxRow { left: l1, right: r1 }, BoxRow { left: l2, right: r2 }))
}

/// Closed-form standardness of a box tableau: in each column the filled
/// entries, read top to bottom, never decrease.
pub fn box_tableau_is_standard(rows: &[BoxRow]) -> bool {
    let column_ok = |pick: fn(&BoxRow) -> Cell| {
        let filled: Vec<u8> = rows.iter().filter_map(pick).collect();
        filled.windows(2).all(|w| w[0] <= w[1])
    };
    let shapes_ok = rows.windows(2).all(|w| w[0].shape() <= w[1].shape());
    shapes_ok && column_ok(|r| r.left) && column_ok(|r| r.right)
}

/// The `A₁×A₁` datum, optionally restricted to a subset of the three shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDatum {
    shapes: BTreeSet<usize>,
}

impl Default for BoxDatum {
    fn default() -> Self {
        BoxDatum { shapes: [0, 1, 2].into() }
    }
}

impl BoxDatum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn restricted(shapes: &[usize]) -> Self {
        BoxDatum { shapes: shapes.iter().copied().filter(|&s| s < 3).collect() }
    }
}

/// Orders monomials of equal shape content: `m ≤ n` iff `n`'s sorted row
/// list is lexicographically at most `m`'s.
fn restriction_leq(m: &[BoxGen], n: &[BoxGen]) -> bool {
    let count = |x: &[BoxGen]| {
        let mut c = [0usize; 3];
        for r in x {
            c[r.0.shape()] += 1;
        }
        c
    };
    count(m) == count(n) && n <= m
}

impl SmtDatum for BoxDatum {
    type Gen = BoxGen;

    fn shape_of(&self, g: &BoxGen) -> Option<ShapeLabel> {
        let s = g.0.shape();
        self.shapes.contains(&s).then_some(ShapeLabel(s))
    }

    fn comparable(&self, a: &BoxGen, b: &BoxGen) -> bool {
        box_row_leq(&a.0, &b.0)
    }

    fn swap(&self, a: &BoxGen, b: &BoxGen) -> (BoxGen, BoxGen) {
        let (x, y) = box_swap(&a.0, &b.0).expect("swap on a comparable pair");
        (BoxGen(x), BoxGen(y))
    }

    fn monomial_leq(&self, m: &Monomial<BoxGen>, n: &Monomial<BoxGen>) -> bool {
        restriction_leq(m.factors(), n.factors())
    }

    fn generators(&self) -> Vec<BoxGen> {
        BoxRow::all().into_iter().filter(|r| self.shapes.contains(&r.shape())).map(BoxGen).collect()
    }
}

/// A box row as a generator; sorted by shape first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxGen(pub BoxRow);

impl PartialOrd for BoxGen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BoxGen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.shape(), self.0).cmp(&(other.0.shape(), other.0))
    }
}

impl fmt::Debug for BoxGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn rows(literal: &[&str]) -> Vec<BoxRow> {
    literal.iter().map(|s| BoxRow::parse(s).expect("literal box row")).collect()
}

fn box_monomial(literal: &[&str]) -> Monomial<BoxGen> {
    Monomial::new(rows(literal).into_iter().map(BoxGen).collect())
}

/// The relation families of `C(Y)`, for `i ∈ {1, 2}`:
/// `[2·][1i] = [1·][2i]`, `[21][12] = [11][22]`, `[i2][·1] = [i1][·2]`.
pub fn coxy_relations() -> Vec<StraighteningRule<BoxGen>> {
    let d = BoxDatum::new();
    let mut out = Vec::new();
    let mut add = |lhs: &[&str], rhs: &[&str]| {
        let rule = StraighteningRule::new(box_monomial(lhs), LinearCombination::monomial(box_monomial(rhs)), &d)
            .expect("relations of C(Y) are straightening rules");
        out.push(rule);
    };
    for i in ["1", "2"] {
        add(&["2.", &format!("1{i}")], &["1.", &format!("2{i}")]);
    }
    add(&["21", "12"], &["11", "22"]);
    for i in ["1", "2"] {
        add(&[&format!("{i}2"), ".1"], &[&format!("{i}1"), ".2"]);
    }
    out
}

/// Evaluation of `C(Y)` on `P¹×P¹`: `[ij] ↦ xᵢyⱼ`, `[i·] ↦ xᵢ`, `[·j] ↦ yⱼ`.
pub fn evaluate_box_monomial(m: &Monomial<BoxGen>, x: [&Coeff; 2], y: [&Coeff; 2]) -> Coeff {
    let mut acc = Coeff::one();
    for g in m.factors() {
        if let Some(i) = g.0.left {
            acc *= x[i as usize - 1];
        }
        if let Some(j) = g.0.right {
            acc *= y[j as usize - 1];
        }
    }
    acc
}

pub fn evaluate_box_combination(lc: &LinearCombination<BoxGen>, x: [&Coeff; 2], y: [&Coeff; 2]) -> Coeff {
    lc.iter().map(|(m, c)| c * evaluate_box_monomial(m, x, y)).sum()
}

/// Standard monomials of `C(Y)` with `n[k]` rows of shape `k`, as sorted
/// row lists.
pub fn box_standard_monomials(n: [u32; 3]) -> Vec<Vec<BoxRow>> {
    let by_shape: Vec<Vec<BoxRow>> =
        (0..3).map(|s| BoxRow::all().into_iter().filter(|r| r.shape() == s).collect()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(by_shape: &[Vec<BoxRow>], n: [u32; 3], shape: usize, left: u32, cur: &mut Vec<BoxRow>, out: &mut Vec<Vec<BoxRow>>) {
        if shape == 3 {
            if box_tableau_is_standard(cur) {
                out.push(cur.clone());
            }
            return;
        }
        if left == 0 {
            let next_left = if shape + 1 < 3 { n[shape + 1] } else { 0 };
            rec(by_shape, n, shape + 1, next_left, cur, out);
            return;
        }
        for r in &by_shape[shape] {
            if let Some(last) = cur.last() {
                if !box_row_leq(last, r) || (last.shape() == r.shape() && last > r) {
                    continue;
                }
            }
            cur.push(*r);
            rec(by_shape, n, shape, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(&by_shape, n, 0, n[0], &mut cur, &mut out);
    out
}

/// `dim V_{aω+bω'} = (a+1)(b+1)` for the weight of `n[0]` rows `[i·]`,
/// `n[1]` rows `[ij]` and `n[2]` rows `[·j]`.
pub fn coxy_dimension(n: [u32; 3]) -> u64 {
    (n[0] as u64 + n[1] as u64 + 1) * (n[1] as u64 + n[2] as u64 + 1)
}

/// Picard degree `e₁D₁ + e₂D₂ + e₃D₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PicardDegree(pub [i64; 3]);

/// Spherical degree `a₁σ₁ + a₂σ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct SphericalDegree(pub [u32; 2]);

/// `σ₁ = D₁+D₂−D₃`, `σ₂ = −D₁+D₂+D₃`.
pub const SPHERICAL_ROOTS: [[i64; 3]; 2] = [[1, 1, -1], [-1, 1, 1]];

impl SphericalDegree {
    pub fn picard(&self) -> PicardDegree {
        let [a, b] = self.0;
        let mut e = [0i64; 3];
        for (k, ek) in e.iter_mut().enumerate() {
            *ek = a as i64 * SPHERICAL_ROOTS[0][k] + b as i64 * SPHERICAL_ROOTS[1][k];
        }
        PicardDegree(e)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0]
    }

    /// `self <_Σ other`.
    pub fn lt(&self, other: &SphericalDegree) -> bool {
        self != other && self.0[0] <= other.0[0] && self.0[1] <= other.0[1]
    }
}

impl PicardDegree {
    pub fn sub(&self, other: &PicardDegree) -> PicardDegree {
        PicardDegree([self.0[0] - other.0[0], self.0[1] - other.0[1], self.0[2] - other.0[2]])
    }

    pub fn effective(&self) -> Option<[u32; 3]> {
        self.0.iter().all(|&x| x >= 0).then(|| self.0.map(|x| x as u32))
    }

    /// Every `(γ, F)` with `F ∈ ℕΔ` and `self − F = γ ∈ ℕΣ`. Since the
    /// `D₂`-coordinate of `γ` is `a₁ + a₂`, only `a₁ + a₂ ≤ e₂` can occur.
    pub fn decompositions(&self) -> Vec<(SphericalDegree, [u32; 3])> {
        let bound = self.0[1].max(0) as u32;
        let mut out = Vec::new();
        for a in 0..=bound {
            for b in 0..=bound - a {
                let g = SphericalDegree([a, b]);
                if let Some(f) = self.sub(&g.picard()).effective() {
                    out.push((g, f));
                }
            }
        }
        out
    }
}

/// Σ over `F ∈ ℕΔ` with `E − F ∈ ℕΣ` of `dim V_F`.
pub fn brion_dimension(e: &PicardDegree) -> u64 {
    e.decompositions().iter().map(|(_, f)| coxy_dimension(*f)).sum()
}

/// A subset `I ⊆ Σ = {σ₁, σ₂}` indexing a `G`-orbit closure `X_I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSubset(pub [bool; 2]);

impl RootSubset {
    pub const ALL: RootSubset = RootSubset([true, true]);
    pub const NONE: RootSubset = RootSubset([false, false]);

    /// Does `γ` lie in `ℕI`?
    pub fn allows(&self, g: &SphericalDegree) -> bool {
        (self.0[0] || g.0[0] == 0) && (self.0[1] || g.0[1] == 0)
    }

    pub fn all_subsets() -> [RootSubset; 4] {
        [RootSubset::NONE, RootSubset([true, false]), RootSubset([false, true]), RootSubset::ALL]
    }
}

impl fmt::Display for RootSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> =
            [(self.0[0], "s1"), (self.0[1], "s2")].iter().filter(|(b, _)| *b).map(|(_, n)| *n).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Σ over `F ∈ ℕΔ` with `E − F ∈ ℕI` of `dim V_F`.
pub fn orbit_dimension(e: &PicardDegree, subset: RootSubset) -> u64 {
    e.decompositions().iter().filter(|(g, _)| subset.allows(g)).map(|(_, f)| coxy_dimension(*f)).sum()
}

/// Generator of the Cox ring: a boundary section `s₁`, `s₂` or a box row.
/// Boundary sections sort first, matching the shape order `Σ < D₁ < D₂ < D₃`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoxGen {
    S(u8),
    X(BoxGen),
}

impl fmt::Debug for CoxGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxGen::S(i) => write!(f, "s{}", i + 1),
            CoxGen::X(g) => write!(f, "{g:?}"),
        }
    }
}

pub fn vanishing(m: &Monomial<CoxGen>) -> SphericalDegree {
    let mut a = [0u32; 2];
    for g in m.factors() {
        if let CoxGen::S(i) = g {
            a[*i as usize] += 1;
        }
    }
    SphericalDegree(a)
}

pub fn picard_weight(m: &Monomial<CoxGen>) -> PicardDegree {
    let mut e = vanishing(m).picard().0;
    for g in m.factors() {
        if let CoxGen::X(b) = g {
            e[b.0.shape()] += 1;
        }
    }
    PicardDegree(e)
}

/// Box rows of a Cox monomial, sorted.
pub fn restriction(m: &Monomial<CoxGen>) -> Vec<BoxGen> {
    m.factors()
        .iter()
        .filter_map(|g| match g {
            CoxGen::X(b) => Some(*b),
            CoxGen::S(_) => None,
        })
        .collect()
}

/// The Cox-ring datum: `s₁ ⟵ s₂`, boundary sections comparable with every
/// box row and swapped past them freely, valuation `δ(sᵢ) = 1`, `δ(box) = 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoxDatum;

impl SmtDatum for CoxDatum {
    type Gen = CoxGen;

    fn shape_of(&self, g: &CoxGen) -> Option<ShapeLabel> {
        match g {
            CoxGen::S(i) if *i < 2 => Some(ShapeLabel(0)),
            CoxGen::S(_) => None,
            CoxGen::X(b) => Some(ShapeLabel(b.0.shape() + 1)),
        }
    }

    fn comparable(&self, a: &CoxGen, b: &CoxGen) -> bool {
        match (a, b) {
            (CoxGen::S(i), CoxGen::S(j)) => i <= j,
            (CoxGen::X(x), CoxGen::X(y)) => box_row_leq(&x.0, &y.0),
            _ => true,
        }
    }

    fn swap(&self, a: &CoxGen, b: &CoxGen) -> (CoxGen, CoxGen) {
        match (a, b) {
            (CoxGen::X(x), CoxGen::X(y)) => {
                let (p, q) = box_swap(&x.0, &y.0).expect("swap on a comparable pair");
                (CoxGen::X(BoxGen(p)), CoxGen::X(BoxGen(q)))
            }
            (CoxGen::S(_), CoxGen::S(_)) => (*a, *b),
            _ => (*b, *a),
        }
    }

    /// Equal Picard weight, and either the vanishing increases strictly in
    /// `ℕΣ`, or it is equal and the box parts compare in `C(Y)`.
    fn monomial_leq(&self, m: &Monomial<CoxGen>, n: &Monomial<CoxGen>) -> bool {
        if picard_weight(m) != picard_weight(n) {
            return false;
        }
        let (gm, gn) = (vanishing(m), vanishing(n));
        gm.lt(&gn) || (gm == gn && restriction_leq(&restriction(m), &restriction(n)))
    }

    fn valuation(&self, g: &CoxGen) -> u64 {
        matches!(g, CoxGen::S(_)) as u64
    }

    fn generators(&self) -> Vec<CoxGen> {
        let mut v = vec![CoxGen::S(0), CoxGen::S(1)];
        v.extend(BoxRow::all().into_iter().map(|r| CoxGen::X(BoxGen(r))));
        v
    }
}

fn cox_monomial(s: &[u8], boxes: &[&str]) -> Monomial<CoxGen> {
    let mut f: Vec<CoxGen> = s.iter().map(|&i| CoxGen::S(i)).collect();
    f.extend(rows(boxes).into_iter().map(|r| CoxGen::X(BoxGen(r))));
    Monomial::new(f)
}

/// Lift a `C(Y)` monomial into the Cox ring with zero vanishing.
pub fn lift(m: &Monomial<BoxGen>) -> Monomial<CoxGen> {
    Monomial::new(m.factors().iter().map(|&g| CoxGen::X(g)).collect())
}

pub fn lift_combination(lc: &LinearCombination<BoxGen>) -> LinearCombination<CoxGen> {
    lc.map_monomials(lift)
}

/// Signs `(a, b, c)` of the boundary terms in
/// `[2·][1i] = [1·][2i] + a·s₁[·i]`, `[21][12] = [11][22] + b·s₁s₂`,
/// `[i2][·1] = [i1][·2] + c·s₂[i·]`.
pub type BoundarySigns = [i64; 3];

/// All boundary terms with `+`. Rewriting `[12][21][·1]` through either
/// overlapping head then gives results differing by `(ac + b)·s₁s₂[·1]`, and
/// rescaling generators cannot make `ac + b` vanish.
pub const ALL_PLUS_SIGNS: BoundarySigns = [1, 1, 1];

/// Signs with `ac + b = 0`; every other solution differs by `s₁ ↦ −s₁` or `s₂ ↦ −s₂`.
pub const CONFLUENT_SIGNS: BoundarySigns = [1, -1, 1];

/// Straightening relations of `C(X)` with [`CONFLUENT_SIGNS`], for `i ∈ {1, 2}`:
/// `[2·][1i] = [1·][2i] + s₁[·i]`, `[21][12] = [11][22] − s₁s₂`,
/// `[i2][·1] = [i1][·2] + s₂[i·]`.
pub fn cox_relations() -> Vec<StraighteningRule<CoxGen>> {
    cox_relations_signed(CONFLUENT_SIGNS)
}

pub fn cox_relations_signed(signs: BoundarySigns) -> Vec<StraighteningRule<CoxGen>> {
    let d = CoxDatum;
    let mut out = Vec::new();
    let mut add = |lhs: Monomial<CoxGen>, rhs: [Monomial<CoxGen>; 2], sign: i64| {
        let [m, boundary] = rhs;
        let rhs = LinearCombination::from_terms([(m, Coeff::one()), (boundary, Coeff::from_integer(sign.into()))]);
        out.push(StraighteningRule::new(lhs, rhs, &d).expect("relations of C(X) are straightening rules"));
    };
    for i in ["1", "2"] {
        add(
            cox_monomial(&[], &["2.", &format!("1{i}")]),
            [cox_monomial(&[], &["1.", &format!("2{i}")]), cox_monomial(&[0], &[&format!(".{i}")])],
            signs[0],
        );
    }
    add(
        cox_monomial(&[], &["21", "12"]),
        [cox_monomial(&[], &["11", "22"]), cox_monomial(&[0, 1], &[])],
        signs[1],
    );
    for i in ["1", "2"] {
        add(
            cox_monomial(&[], &[&format!("{i}2"), ".1"]),
            [cox_monomial(&[], &[&format!("{i}1"), ".2"]), cox_monomial(&[1], &[&format!("{i}.")])],
            signs[2],
        );
    }
    out
}

/// `s₁^{a₁} s₂^{a₂}` as a factor list.
fn boundary_factors(g: SphericalDegree) -> Vec<CoxGen> {
    let [a, b] = g.0;
    std::iter::repeat_n(CoxGen::S(0), a as usize).chain(std::iter::repeat_n(CoxGen::S(1), b as usize)).collect()
}

/// Standard monomials of `C(X)` of Picard weight `E`: `s^γ` times a
/// standard monomial of `C(Y)` of weight `E − γ`.
pub fn cox_standard_monomials(e: &PicardDegree) -> Vec<Monomial<CoxGen>> {
    let mut out = Vec::new();
    for (g, f) in e.decompositions() {
        for rows in box_standard_monomials(f) {
            let mut factors = boundary_factors(g);
            factors.extend(rows.into_iter().map(|r| CoxGen::X(BoxGen(r))));
            out.push(Monomial::new(factors));
        }
    }
    out.sort();
    out
}

/// Number of standard monomials of Picard weight `E`.
pub fn cox_hilbert(e: &PicardDegree) -> usize {
    cox_standard_monomials(e).len()
}

/// Number of standard monomials of Picard weight `E` whose vanishing lies in `ℕI`.
pub fn cox_orbit_hilbert(e: &PicardDegree, subset: RootSubset) -> usize {
    cox_standard_monomials(e).iter().filter(|m| subset.allows(&vanishing(m))).count()
}

/// Every monomial of `C(X)` of Picard weight `E`.
pub fn cox_monomials_of_weight(e: &PicardDegree) -> Vec<Monomial<CoxGen>> {
    let by_shape: Vec<Vec<BoxRow>> =
        (0..3).map(|s| BoxRow::all().into_iter().filter(|r| r.shape() == s).collect()).collect();
    let mut out = Vec::new();
    for (g, f) in e.decompositions() {
        let mut partial = vec![boundary_factors(g)];
        for shape in 0..3 {
            let choices = multisets(&by_shape[shape], f[shape] as usize);
            let mut next = Vec::new();
            for p in &partial {
                for c in &choices {
                    let mut v = p.clone();
                    v.extend(c.iter().map(|&r| CoxGen::X(BoxGen(r))));
                    next.push(v);
                }
            }
            partial = next;
        }
        out.extend(partial.into_iter().map(Monomial::new));
    }
    out.sort();
    out
}

fn multisets<T: Clone>(items: &[T], m: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    fn rec<T: Clone>(items: &[T], start: usize, m: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, i, m, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, m, &mut Vec::new(), &mut out);
    out
}

/// One Picard degree of the degeneration report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxDegreeRow {
    pub picard: [i64; 3],
    /// Standard monomials of `C(X)`.
    pub generic: usize,
    /// Monomials not divisible by any left-hand side of the special-fiber rules.
    pub special: usize,
    /// The graded dimension from the decomposition of section spaces.
    pub formula: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxDegenerationReport {
    pub max_coeff: u32,
    /// Do the special-fiber rules coincide with the `C(Y)` relations with
    /// free boundary sections?
    pub special_rules_match: bool,
    pub rows: Vec<CoxDegreeRow>,
    pub mismatches: Vec<[i64; 3]>,
}

/// Degenerate the Cox relations with `δ(sᵢ) = 1`, compare the result with
/// the `C(Y)` relations, and compare graded dimensions of both fibers on
/// every `E` with `0 ≤ eᵢ ≤ max_coeff`.
pub fn cox_degenerate_and_compare(max_coeff: u32) -> CoxDegenerationReport {
    let rules = cox_relations();
    let special = smt::rees_degenerate(&rules, &CoxDatum);
    let lifted: Vec<(Monomial<CoxGen>, LinearCombination<CoxGen>)> =
        coxy_relations().iter().map(|r| (lift(r.lhs()), lift_combination(r.rhs()))).collect();
    let mut got: Vec<(Monomial<CoxGen>, LinearCombination<CoxGen>)> =
        special.iter().map(|r| (r.lhs().clone(), r.rhs().clone())).collect();
    let mut want = lifted;
    got.sort_by(|a, b| a.0.cmp(&b.0));
    want.sort_by(|a, b| a.0.cmp(&b.0));
    let special_rules_match = got == want;
    let leading: Vec<Monomial<CoxGen>> = special.iter().map(|r| r.lhs().clone()).collect();
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    let m = max_coeff as i64;
    for e1 in 0..=m {
        for e2 in 0..=m {
            for e3 in 0..=m {
                let e = PicardDegree([e1, e2, e3]);
                let special_count = cox_monomials_of_weight(&e)
                    .iter()
                    .filter(|x| !leading.iter().any(|l| l.divides(x)))
                    .count();
                let row = CoxDegreeRow {
                    picard: e.0,
                    generic: cox_hilbert(&e),
                    special: special_count,
                    formula: brion_dimension(&e),
                };
                if row.generic != row.special || row.generic as u64 != row.formula {
                    mismatches.push(e.0);
                }
                rows.push(row);
            }
        }
    }
    CoxDegenerationReport { max_coeff, special_rules_match, rows, mismatches }
}

/// A monomial whose one-step rewrites reach different normal forms.
#[derive(Debug, Clone)]
pub struct Divergence {
    pub monomial: Monomial<CoxGen>,
    pub results: Vec<LinearCombination<CoxGen>>,
}

/// Every one-step rewrite of every monomial of Picard weight `E` with
/// `|eᵢ| ≤ bound` must reach the same normal form. Since the order is
/// well founded, this makes normal forms independent of the rewriting order.
pub fn cox_confluence_check(bound: i64) -> Result<(usize, Vec<Divergence>), SmtError> {
    cox_confluence_check_with(&cox_relations(), bound)
}

/// As [`cox_confluence_check`] for an arbitrary rule list.
pub fn cox_confluence_check_with(
    rules: &[StraighteningRule<CoxGen>],
    bound: i64,
) -> Result<(usize, Vec<Divergence>), SmtError> {
    let d = CoxDatum;
    let rules = rules.to_vec();
    let set = RuleSet::new(rules.clone());
    let mut memo: BTreeMap<Monomial<CoxGen>, LinearCombination<CoxGen>> = BTreeMap::new();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut cache = StandardnessCache::new(&d);
    for e1 in -bound..=bound {
        for e2 in -bound..=bound {
            for e3 in -bound..=bound {
                for m in cox_monomials_of_weight(&PicardDegree([e1, e2, e3])) {
                    checked += 1;
                    let mut results: Vec<LinearCombination<CoxGen>> = Vec::new();
                    if cache.is_standard(&m)? {
                        continue;
                    }
                    for r in &rules {
                        let Some(rest) = m.div(r.lhs()) else { continue };
                        let step = r.rhs().mul_monomial(&rest);
                        let mut total = LinearCombination::zero();
                        for (t, c) in step.iter() {
                            let nf = match memo.get(t) {
                                Some(v) => v.clone(),
                                None => {
                                    let v = smt::normal_form(t, &set, &d, smt::DEFAULT_REWRITE_CAP)?;
                                    memo.insert(t.clone(), v.clone());
                                    v
                                }
                            };
                            total.add_scaled(&nf, c);
                        }
                        if !results.contains(&total) {
                            results.push(total);
                        }
                    }
                    if results.len() != 1 {
                        bad.push(Divergence { monomial: m, results });
                    }
                }
            }
        }
    }
    Ok((checked, bad))
}

/// Sanity check of a relation under the `P¹×P¹` evaluation at a point.
pub fn coxy_relation_vanishes(rule: &StraighteningRule<BoxGen>, x: [&Coeff; 2], y: [&Coeff; 2]) -> bool {
    evaluate_box_combination(&rule.relation(), x, y).is_zero()
}
