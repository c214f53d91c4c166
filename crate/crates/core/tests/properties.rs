use proptest::prelude::*;

use multiset_smt::cli::all_references;
use multiset_smt::linalg::determinant;
use multiset_smt::multicone::{ssyt_count, weyl_dim, HighestWeight};
use multiset_smt::smt::{coeff, SmtDatum};
use multiset_smt::straighten::{normalize_bracket, random_matrices, straighten_with, MinorCache, SignedRow, TypeARules};
use multiset_smt::typea::{
    is_standard_tableau, is_standard_tableau_bfs, row_leq, swap_pair, ReferenceShape, Row, Tableau, TypeADatum,
};

fn all_rows(ell: u32) -> Vec<Row> {
    (1..=ell as usize).flat_map(|k| Row::all_of_length(k, ell)).collect()
}

fn merged(rows: &[&Row]) -> Vec<u8> {
    let mut v: Vec<u8> = rows.iter().flat_map(|r| r.entries().iter().copied()).collect();
    v.sort_unstable();
    v
}

#[test]
fn swap_exhaustive_up_to_five() {
    for ell in 1..=5 {
        let rows = all_rows(ell);
        for r in &rows {
            for s in &rows {
                if !row_leq(r, s).unwrap() {
                    assert!(swap_pair(r, s).is_err());
                    continue;
                }
                let (a, b) = swap_pair(r, s).unwrap();
                assert_eq!((a.len(), b.len()), (s.len(), r.len()), "{r},{s}");
                assert_eq!(merged(&[&a, &b]), merged(&[r, s]), "{r},{s}");
                assert!(row_leq(&a, &b).unwrap(), "{r},{s} -> {a},{b}");
                assert_eq!(swap_pair(&a, &b).unwrap(), (r.clone(), s.clone()));
                if r.len() == s.len() {
                    assert_eq!((&a, &b), (r, s));
                }
            }
        }
    }
}

/// Rows of a tableau adapted to `reference`, with lengths in reference order.
fn adapted(reference: &ReferenceShape, counts: &[usize], picks: &[usize]) -> Tableau {
    let ell = reference.ell();
    let mut rows = Vec::new();
    let mut p = picks.iter().cycle();
    for (&k, &n) in reference.shapes().iter().zip(counts) {
        let pool = Row::all_of_length(k, ell);
        let mut chosen: Vec<Row> = (0..n).map(|_| pool[p.next().unwrap() % pool.len()].clone()).collect();
        chosen.sort();
        rows.extend(chosen);
    }
    Tableau::new(rows).unwrap()
}

fn reference_strategy() -> impl Strategy<Value = ReferenceShape> {
    (1u32..=4).prop_flat_map(|ell| {
        let refs = all_references(ell);
        (0..refs.len()).prop_map(move |i| refs[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fast_path_agrees_with_search(
        reference in reference_strategy(),
        counts in prop::collection::vec(0usize..3, 4),
        picks in prop::collection::vec(0usize..64, 4),
    ) {
        let counts: Vec<usize> = counts.into_iter().take(reference.len()).collect();
        prop_assume!(counts.iter().sum::<usize>() <= 4);
        let t = adapted(&reference, &counts, &picks);
        prop_assert_eq!(
            is_standard_tableau(&t, &reference).unwrap(),
            is_standard_tableau_bfs(&t, &reference).unwrap(),
            "{}", t
        );
    }

    #[test]
    fn bracket_sign_is_the_determinant_sign(
        ell in 1u32..=5,
        len in 1usize..=5,
        perm_seed in 0u64..1000,
        mat_seed in 0u64..1000,
    ) {
        let len = len.min(ell as usize);
        let mut entries: Vec<u32> = (1..=ell + 1).collect();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(perm_seed);
        rand::seq::SliceRandom::shuffle(entries.as_mut_slice(), &mut rng);
        entries.truncate(len);
        let m = &random_matrices(ell as usize + 1, 1, mat_seed)[0];
        let direct = determinant(
            entries.iter().map(|&i| (0..len).map(|j| m.entry(i as usize - 1, j).clone()).collect()).collect(),
        );
        match normalize_bracket(&entries, ell).unwrap() {
            SignedRow::Zero => prop_assert!(false, "distinct entries gave zero"),
            SignedRow::Signed { negative, row } => {
                let v = MinorCache::new(m).minor(&row).unwrap();
                prop_assert_eq!(if negative { -v } else { v }, direct);
            }
        }
        let mut repeated = entries.clone();
        repeated.push(entries[0]);
        if repeated.len() <= ell as usize {
            prop_assert_eq!(normalize_bracket(&repeated, ell).unwrap(), SignedRow::Zero);
        }
    }

    #[test]
    fn weyl_matches_ssyt(ell in 1u32..=4, c in prop::collection::vec(0u32..3, 4)) {
        let lambda = HighestWeight::new(c.into_iter().take(ell as usize).collect());
        prop_assert_eq!(weyl_dim(&lambda, ell), ssyt_count(&lambda, ell).into());
    }

    #[test]
    fn straightening_is_idempotent_and_moves_up(
        reference in reference_strategy(),
        counts in prop::collection::vec(0usize..3, 4),
        picks in prop::collection::vec(0usize..64, 4),
    ) {
        prop_assume!(reference.ell() <= 3);
        let counts: Vec<usize> = counts.into_iter().take(reference.len()).collect();
        prop_assume!(counts.iter().sum::<usize>() <= 4);
        let t = adapted(&reference, &counts, &picks);
        let rules = TypeARules::new(reference.clone());
        let p = straighten_with(&t, &rules).unwrap();
        let d = TypeADatum::new(reference.clone());
        let head = d.monomial(&t).unwrap();
        let standard = is_standard_tableau(&t, &reference).unwrap();
        for (s, c) in p.iter() {
            prop_assert!(is_standard_tableau(s, &reference).unwrap());
            prop_assert_eq!(straighten_with(s, &rules).unwrap().coefficient(s), coeff(1));
            prop_assert!(d.monomial_leq(&head, &d.monomial(s).unwrap()), "{} below {}", s, t);
            if standard {
                prop_assert_eq!((s, c), (&t, &coeff(1)));
            }
        }
    }
}
