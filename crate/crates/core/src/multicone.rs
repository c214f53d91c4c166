//! The multicone algebra: dimension oracles, Hilbert functions from standard
//! tableaux, the discrete algebra and a flatness check between the two.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::smt::{Monomial, SmtError, StandardnessCache};
use crate::straighten::{random_matrices, MinorCache};
use crate::typea::{
    enumerate_standard, Multidegree, ReferenceShape, Row, SlottedRow, Tableau, TableauError,
    TypeADatum,
};

/// `λ = Σ cᵢ ωᵢ` for `SL_{ℓ+1}`; `coefficients[i]` is the coefficient of `ω_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    pub coefficients: Vec<u32>,
}

impl HighestWeight {
    pub fn new(coefficients: Vec<u32>) -> Self {
        HighestWeight { coefficients }
    }

    pub fn fundamental(k: usize, ell: u32) -> Self {
        let mut c = vec![0; ell as usize];
        c[k - 1] = 1;
        HighestWeight { coefficients: c }
    }

    /// The weight `Σ mᵢ ω_{k̄ᵢ}` of a multidegree.
    pub fn of_multidegree(md: &Multidegree, reference: &ReferenceShape) -> Self {
        let mut c = vec![0; reference.ell() as usize];
        for (&k, &m) in reference.shapes().iter().zip(&md.0) {
            c[k - 1] += m;
        }
        HighestWeight { coefficients: c }
    }

    /// Partition with `cᵢ` columns of height `i`, padded to `ℓ+1` parts.
    pub fn partition(&self, ell: u32) -> Vec<u32> {
        let n = ell as usize + 1;
        (0..n).map(|i| self.coefficients.iter().skip(i).sum()).collect()
    }

    pub fn size(&self) -> u32 {
        self.coefficients.iter().enumerate().map(|(i, c)| (i as u32 + 1) * c).sum()
    }
}

/// Weyl's product formula over the positive roots of `SL_{ℓ+1}`.
pub fn weyl_dim(lambda: &HighestWeight, ell: u32) -> BigUint {
    let p = lambda.partition(ell);
    let n = ell as usize + 1;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigUint::from(p[i] - p[j] + (j - i) as u32);
            den *= BigUint::from((j - i) as u32);
        }
    }
    num / den
}

/// Semistandard Young tableaux of the partition of `λ` with entries in
/// `1..=ℓ+1`, counted by filling cells one at a time.
pub fn ssyt_count(lambda: &HighestWeight, ell: u32) -> u64 {
    let shape: Vec<usize> = lambda.partition(ell).into_iter().filter(|&x| x > 0).map(|x| x as usize).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
    fn rec(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, max: u32) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let lo = lo_row.max(lo_col);
        let mut total = 0;
        for v in lo..=max {
            grid[r][c] = v;
            total += rec(idx + 1, cells, grid, max);
        }
        grid[r][c] = 0;
        total
    }
    rec(0, &cells, &mut grid, ell + 1)
}

/// Number of standard tableaux of multidegree `md`.
pub fn hilbert(md: &Multidegree, reference: &ReferenceShape) -> Result<usize, TableauError> {
    Ok(enumerate_standard(md, reference)?.len())
}

/// Hilbert function on every multidegree of total at most `max_total`.
pub fn hilbert_table(
    reference: &ReferenceShape,
    max_total: u32,
) -> Result<BTreeMap<Multidegree, usize>, TableauError> {
    Multidegree::all_up_to(reference.len(), max_total)
        .into_iter()
        .map(|md| hilbert(&md, reference).map(|h| (md, h)))
        .collect()
}

/// Rank of the matrix of values of the given tableaux (as products of
/// Plücker coordinates) at `count + extra` seeded random integer matrices.
pub fn evaluation_rank(tableaux: &[Tableau], ell: u32, extra: usize, seed: u64) -> usize {
    let mats = random_matrices(ell as usize + 1, tableaux.len() + extra, seed);
    let rows: Vec<Vec<BigInt>> = mats
        .iter()
        .map(|m| {
            let mut cache = MinorCache::new(m);
            tableaux
                .iter()
                .map(|t| {
                    let v = cache.product(t.rows()).expect("rows of the matrix rank");
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    linalg::rank_bigint(rows)
}

/// Minimal monomial generators of the ideal of non-standard monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdealBasis {
    /// Degree ↦ generators, each written as its canonical adapted tableau.
    pub by_degree: BTreeMap<usize, Vec<Vec<Vec<u32>>>>,
}

impl MonomialIdealBasis {
    pub fn max_generator_degree(&self) -> Option<usize> {
        self.by_degree.iter().filter(|(_, g)| !g.is_empty()).map(|(&d, _)| d).max()
    }

    pub fn count(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }
}

/// Every monomial of the datum with the given multidegree.
pub fn monomials_of_multidegree(d: &TypeADatum, md: &Multidegree) -> Vec<Monomial<SlottedRow>> {
    let reference = d.reference();
    let mut blocks: Vec<Vec<Vec<Row>>> = Vec::new();
    for (&k, &m) in reference.shapes().iter().zip(&md.0) {
        blocks.push(multisets(&Row::all_of_length(k, reference.ell()), m as usize));
    }
    let mut out = vec![Vec::new()];
    for block in blocks {
        let mut next = Vec::with_capacity(out.len() * block.len());
        for prefix in &out {
            for choice in &block {
                let mut v: Vec<Row> = prefix.clone();
                v.extend(choice.iter().cloned());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|rows| Monomial::new(rows.into_iter().map(|r| d.generator(r).expect("row of the reference")).collect()))
        .collect()
}

/// Multisets of size `m` from `items`, as sorted vectors.
fn multisets<T: Clone>(items: &[T], m: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
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
    rec(items, 0, m, &mut cur, &mut out);
    out
}

/// Minimal generators of the monomial ideal spanned by non-standard
/// monomials, in degrees `2..=max_degree`. A monomial is a generator iff it
/// is non-standard and every proper divisor is standard.
pub fn discrete_ideal_generators(
    reference: &ReferenceShape,
    max_degree: u32,
) -> Result<MonomialIdealBasis, SmtError> {
    let d = TypeADatum::new(reference.clone());
    let mut cache = StandardnessCache::new(&d);
    let mut by_degree = BTreeMap::new();
    let mut found: Vec<Monomial<SlottedRow>> = Vec::new();
    for degree in 2..=max_degree {
        let mut gens = Vec::new();
        for md in Multidegree::all_up_to(reference.len(), degree) {
            if md.total() != degree {
                continue;
            }
            for m in monomials_of_multidegree(&d, &md) {
                if found.iter().any(|g| g.divides(&m)) {
                    continue;
                }
                if cache.is_minimally_nonstandard(&m)? {
                    gens.push(m);
                }
            }
        }
        gens.sort();
        by_degree.insert(
            degree as usize,
            gens.iter().map(|m| d.tableau(m).rows().iter().map(Row::entries_u32).collect()).collect(),
        );
        found.extend(gens);
    }
    Ok(MonomialIdealBasis { by_degree })
}

/// One multidegree of a flatness report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessRow {
    pub multidegree: Vec<u32>,
    /// Standard tableaux: the generic fiber.
    pub generic: usize,
    /// Rank of their evaluation matrix.
    pub evaluation_rank: usize,
    /// Monomials outside the discrete ideal: the special fiber.
    pub special: usize,
    /// Weyl dimension of the corresponding weight.
    pub weyl: u64,
}

impl FlatnessRow {
    pub fn agrees(&self) -> bool {
        self.generic == self.evaluation_rank && self.generic == self.special && self.generic as u64 == self.weyl
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub ell: u32,
    pub reference_shape: Vec<u32>,
    pub max_total: u32,
    pub rows: Vec<FlatnessRow>,
    pub mismatches: Vec<Vec<u32>>,
}

/// Compare the generic fiber (standard tableaux, confirmed independent by
/// evaluation rank) with the special fiber (monomials avoiding the discrete
/// ideal) on every multidegree of total at most `max_total`.
pub fn degeneration_flatness_check(
    reference: &ReferenceShape,
    max_total: u32,
    seed: u64,
) -> Result<FlatnessReport, SmtError> {
    let ell = reference.ell();
    let d = TypeADatum::new(reference.clone());
    let ideal = discrete_ideal_generators(reference, max_total.max(2))?;
    let gens: Vec<Monomial<SlottedRow>> = ideal
        .by_degree
        .values()
        .flatten()
        .map(|rows| {
            let rows: Vec<Row> = rows.iter().map(|r| Row::new(r, ell).expect("stored row")).collect();
            d.monomial(&Tableau::new(rows).expect("one rank")).expect("adapted")
        })
        .collect();
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for md in Multidegree::all_up_to(reference.len(), max_total) {
        let standard = enumerate_standard(&md, reference).map_err(|e| SmtError::Precondition(e.to_string()))?;
        let special = monomials_of_multidegree(&d, &md)
            .iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count();
        let row = FlatnessRow {
            multidegree: md.0.clone(),
            generic: standard.len(),
            evaluation_rank: evaluation_rank(&standard, ell, 5, seed),
            special,
            weyl: weyl_dim(&HighestWeight::of_multidegree(&md, reference), ell).to_u64().unwrap_or(u64::MAX),
        };
        if !row.agrees() {
            mismatches.push(md.0.clone());
        }
        rows.push(row);
    }
    Ok(FlatnessReport {
        ell,
        reference_shape: reference.shapes().iter().map(|&k| k as u32).collect(),
        max_total,
        rows,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[u32]) -> HighestWeight {
        HighestWeight::new(c.to_vec())
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(weyl_dim(&w(&[1, 0, 0]), 3), BigUint::from(4u32));
        assert_eq!(weyl_dim(&w(&[1, 1, 1]), 3), BigUint::from(64u32));
        assert_eq!(weyl_dim(&w(&[2]), 1), BigUint::from(3u32));
        assert_eq!(ssyt_count(&w(&[1, 1, 1]), 3), 64);
        assert_eq!(ssyt_count(&w(&[0, 0, 0]), 3), 1);
        for k in 1..=4 {
            let binom = [1u64, 5, 10, 10, 5, 1][k];
            assert_eq!(ssyt_count(&HighestWeight::fundamental(k, 4), 4), binom);
        }
    }

    #[test]
    fn hilbert_examples() {
        let k = ReferenceShape::new(&[2, 3, 1], 3).unwrap();
        assert_eq!(hilbert(&Multidegree(vec![1, 1, 1]), &k).unwrap(), 64);
        assert_eq!(hilbert(&Multidegree(vec![1, 0, 0]), &k).unwrap(), 6);
        assert_eq!(hilbert(&Multidegree(vec![0, 0, 0]), &k).unwrap(), 1);
    }

    #[test]
    fn discrete_ideal_examples() {
        let k = ReferenceShape::new(&[2, 3, 1], 3).unwrap();
        let basis = discrete_ideal_generators(&k, 3).unwrap();
        assert!(basis.by_degree[&3].contains(&vec![vec![2, 4], vec![1, 3, 4], vec![2]]));
        let dec = ReferenceShape::new(&[3, 2], 3).unwrap();
        assert_eq!(discrete_ideal_generators(&dec, 3).unwrap().max_generator_degree(), Some(2));
    }

    #[test]
    fn flatness_on_the_projective_line() {
        let k = ReferenceShape::new(&[1], 1).unwrap();
        let report = degeneration_flatness_check(&k, 4, 3).unwrap();
        assert!(report.mismatches.is_empty());
        let values: Vec<usize> = report.rows.iter().map(|r| r.generic).collect();
        assert_eq!(values, vec![1, 2, 3, 4, 5]);
    }
}
