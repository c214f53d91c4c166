//! End-to-end acceptance suite: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use multiset_smt::cli::all_references;
use multiset_smt::multicone::{
    degeneration_flatness_check, discrete_ideal_generators, evaluation_rank, monomials_of_multidegree, ssyt_count,
    weyl_dim, HighestWeight,
};
use multiset_smt::smt::{self, coeff, Monomial, RuleSource, SmtDatum, Standardness, StraighteningRule};
use multiset_smt::straighten::{
    random_matrices, shuffling_relation, straighten_tableau, verify_polynomial_identity, MinorCache,
    TableauPolynomial, TypeARules,
};
use multiset_smt::typea::{
    enumerate_standard, is_swap_closed, swap_pair, tau, Multidegree, ReferenceShape, Row, Tableau, TypeADatum,
};
use multiset_smt::wonderful::{
    brion_dimension, cox_confluence_check, cox_confluence_check_with, cox_relations_signed, ALL_PLUS_SIGNS, cox_degenerate_and_compare, cox_hilbert,
    cox_monomials_of_weight, cox_relations, coxy_relations, BoxDatum, BoxGen, CoxDatum, PicardDegree,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn row(s: &str, ell: u32) -> Row {
    Row::parse_digits(s, ell).unwrap()
}

fn tab(s: &str, ell: u32) -> Tableau {
    Tableau::parse(s, ell).unwrap()
}

fn poly(terms: &[(&str, i64)], ell: u32) -> TableauPolynomial {
    TableauPolynomial::from_terms(terms.iter().map(|&(t, c)| (tab(t, ell), coeff(c))))
}

fn all_rows(ell: u32) -> Vec<Row> {
    (1..=ell as usize).flat_map(|k| Row::all_of_length(k, ell)).collect()
}

fn timed(f: impl FnOnce() -> Result<(), String>) -> Result<u128, String> {
    let start = Instant::now();
    f()?;
    let ms = start.elapsed().as_millis();
    ensure(ms < 1000, || format!("took {ms} ms"))?;
    Ok(ms)
}

fn golden_examples() -> Outcome {
    let mut times = Vec::new();
    times.push(timed(|| {
        let got = swap_pair(&row("25", 5), &row("1346", 5)).map_err(|e| e.to_string())?;
        ensure(got == (row("1245", 5), row("36", 5)), || format!("swap gave {got:?}"))
    })?);
    times.push(timed(|| {
        let d = TypeADatum::definitional(ReferenceShape::new(&[2, 3, 1], 3).unwrap());
        let good = smt::standardness(&d.formal(&tab("24;134;3", 3)).unwrap(), &d).unwrap();
        ensure(good.is_standard(), || "24,134,3 should be standard".into())?;
        match smt::standardness(&d.formal(&tab("24;134;2", 3)).unwrap(), &d).unwrap() {
            Standardness::NonStandard(w) => {
                let reached: Vec<Row> = w.reached.iter().map(|g| g.row.clone()).collect();
                ensure(reached == tab("124;34;2", 3).rows(), || format!("witness reached {reached:?}"))
            }
            other => Err(format!("24,134,2 judged {other:?}")),
        }
    })?);
    times.push(timed(|| {
        let a = shuffling_relation(&row("234", 3), &row("14", 3)).map_err(|e| e.to_string())?;
        let b = shuffling_relation(&row("34", 3), &row("2", 3)).map_err(|e| e.to_string())?;
        ensure(a == poly(&[("234;14", 1), ("134;24", -1), ("124;34", 1)], 3), || format!("got {a}"))?;
        ensure(b == poly(&[("34;2", 1), ("24;3", -1), ("23;4", 1)], 3), || format!("got {b}"))?;
        for rel in [&a, &b] {
            ensure(verify_polynomial_identity(rel, 100, 1).unwrap(), || format!("{rel} is not zero"))?;
        }
        Ok(())
    })?);
    times.push(timed(|| {
        let reference = ReferenceShape::new(&[2, 3, 1], 3).unwrap();
        let p = straighten_tableau(&tab("24;134;2", 3), &reference).map_err(|e| e.to_string())?;
        let want = poly(&[("14;234;2", 1), ("24;124;3", 1), ("23;124;4", -1)], 3);
        ensure(p == want, || format!("got {p}"))
    })?);
    Ok(format!("4 examples, slowest {} ms", times.iter().max().unwrap()))
}

fn oracle_identities() -> Outcome {
    let mut count = 0;
    for ell in 1..=4 {
        let mats = random_matrices(ell as usize + 1, 10, 2);
        let rows = all_rows(ell);
        for r in &rows {
            for s in &rows {
                let Ok(rel) = shuffling_relation(r, s) else { continue };
                count += 1;
                for m in &mats {
                    let v = MinorCache::new(m).polynomial(&rel).map_err(|e| e.to_string())?;
                    ensure(v == coeff(0), || format!("relation of {r},{s} evaluates to {v}"))?;
                }
            }
        }
    }
    Ok(format!("{count} shuffling relations, 10 matrices each"))
}

fn basis_counts() -> Outcome {
    let mut checked = 0;
    for ell in 1..=3 {
        for reference in all_references(ell) {
            for md in Multidegree::all_up_to(reference.len(), 4) {
                let n = enumerate_standard(&md, &reference).unwrap().len() as u64;
                let lambda = HighestWeight::of_multidegree(&md, &reference);
                let w = weyl_dim(&lambda, ell);
                let s = ssyt_count(&lambda, ell);
                ensure(w == n.into() && s == n, || {
                    format!("ref {:?} md {:?}: {n} standard, weyl {w}, ssyt {s}", reference.shapes(), md.0)
                })?;
                checked += 1;
            }
        }
    }
    let reference = ReferenceShape::new(&[2, 3, 1], 3).unwrap();
    let n = enumerate_standard(&Multidegree(vec![1, 1, 1]), &reference).unwrap().len();
    ensure(n == 64, || format!("md (1,1,1) gave {n}"))?;
    Ok(format!("{checked} multidegrees, md (1,1,1) on (2,3,1) gives 64"))
}

fn evaluation_independence() -> Outcome {
    let mut checked = 0;
    for ell in 1..=3 {
        for reference in all_references(ell) {
            for md in Multidegree::all_up_to(reference.len(), 3) {
                let ts = enumerate_standard(&md, &reference).unwrap();
                let rank = evaluation_rank(&ts, ell, 5, 3);
                ensure(rank == ts.len(), || {
                    format!("ref {:?} md {:?}: rank {rank} of {}", reference.shapes(), md.0, ts.len())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} multidegrees"))
}

fn tau_laws() -> Outcome {
    let mut tableaux = std::collections::BTreeSet::new();
    for ell in 1..=3 {
        for reference in all_references(ell) {
            for md in Multidegree::all_up_to(reference.len(), 4) {
                tableaux.extend(enumerate_standard(&md, &reference).unwrap());
            }
        }
    }
    let t_ = |t: &Tableau, i: usize| tau(t, i).map_err(|e| format!("τ{i} on {t}: {e}"));
    for t in &tableaux {
        ensure(is_swap_closed(t), || format!("{t} is not swap-closed"))?;
        let n = t.len();
        for i in 0..n.saturating_sub(1) {
            ensure(&t_(&t_(t, i)?, i)? == t, || format!("τ{i} is not an involution on {t}"))?;
            for j in i + 2..n.saturating_sub(1) {
                ensure(t_(&t_(t, i)?, j)? == t_(&t_(t, j)?, i)?, || format!("τ{i}, τ{j} do not commute on {t}"))?;
            }
            if i + 2 < n {
                let a = t_(&t_(&t_(t, i)?, i + 1)?, i)?;
                let b = t_(&t_(&t_(t, i + 1)?, i)?, i + 1)?;
                ensure(a == b, || format!("braid relation fails at {i} on {t}"))?;
            }
        }
    }
    Ok(format!("{} standard tableaux", tableaux.len()))
}

fn discrete_algebra() -> Outcome {
    let reference = ReferenceShape::new(&[2, 3, 1], 3).unwrap();
    let basis = discrete_ideal_generators(&reference, 3).map_err(|e| e.to_string())?;
    let target = vec![vec![2, 4], vec![1, 3, 4], vec![2]];
    ensure(basis.by_degree.get(&3).is_some_and(|g| g.contains(&target)), || {
        format!("degree-3 generators {:?}", basis.by_degree.get(&3))
    })?;
    let mut monotone = 0;
    for ell in 1..=3 {
        for reference in all_references(ell) {
            if !(reference.is_increasing() || reference.is_decreasing()) {
                continue;
            }
            monotone += 1;
            let basis = discrete_ideal_generators(&reference, 4).map_err(|e| e.to_string())?;
            let max = basis.max_generator_degree().unwrap_or(0);
            ensure(max <= 2, || format!("monotone ref {:?} has a generator of degree {max}", reference.shapes()))?;
        }
    }
    Ok(format!("24,134,2 is a cubic generator; {monotone} monotone shapes generated in degree 2"))
}

fn cox_counts() -> Outcome {
    for (e, want) in [([0, 1, 0], 4), ([0, 2, 0], 10), ([1, 0, 1], 4)] {
        let got = cox_hilbert(&PicardDegree(e));
        ensure(got == want, || format!("cox_hilbert{e:?} = {got}, expected {want}"))?;
    }
    let mut n = 0;
    for e1 in -3..=3 {
        for e2 in -3..=3 {
            for e3 in -3..=3 {
                let e = PicardDegree([e1, e2, e3]);
                let (h, b) = (cox_hilbert(&e), brion_dimension(&e));
                ensure(h as u64 == b, || format!("{e:?}: {h} standard monomials, formula {b}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} Picard degrees"))
}

fn flatness() -> Outcome {
    let report = cox_degenerate_and_compare(2);
    ensure(report.special_rules_match, || "special-fiber rules differ from the lifted C(Y) relations".into())?;
    ensure(report.mismatches.is_empty(), || format!("Cox mismatches at {:?}", report.mismatches))?;
    let mut refs = 0;
    for ell in 1..=3 {
        for reference in all_references(ell) {
            let r = degeneration_flatness_check(&reference, 3, 4).map_err(|e| e.to_string())?;
            ensure(r.mismatches.is_empty(), || format!("ref {:?}: mismatches {:?}", reference.shapes(), r.mismatches))?;
            refs += 1;
        }
    }
    Ok(format!("Cox degrees {}; {refs} reference shapes", report.rows.len()))
}

fn confluence() -> Outcome {
    let (checked, bad) = cox_confluence_check(2).map_err(|e| e.to_string())?;
    ensure(bad.is_empty(), || format!("{} divergent monomials, first {:?}", bad.len(), bad[0]))?;
    let (_, plus) = cox_confluence_check_with(&cox_relations_signed(ALL_PLUS_SIGNS), 2).map_err(|e| e.to_string())?;
    Ok(format!("{checked} monomials; with every boundary sign + there would be {} divergences", plus.len()))
}

fn check_rule<D: SmtDatum>(rule: &StraighteningRule<D::Gen>, d: &D) -> Result<(), String> {
    ensure(smt::monomial_is_minimally_nonstandard(rule.lhs(), d).unwrap(), || {
        format!("{:?} is not minimally non-standard", rule.lhs())
    })?;
    for m in rule.rhs().monomials() {
        ensure(smt::monomial_is_standard(m, d).unwrap(), || format!("{m:?} in {rule:?} is not standard"))?;
        ensure(smt::monomial_lt(rule.lhs(), m, d), || format!("{m:?} is not above the head of {rule:?}"))?;
    }
    Ok(())
}

fn check_multiplicative<D: SmtDatum>(
    d: &D,
    classes: &[Vec<Monomial<D::Gen>>],
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> Result<usize, String> {
    let mut tested = 0;
    let nonempty: Vec<&Vec<Monomial<D::Gen>>> = classes.iter().filter(|c| !c.is_empty()).collect();
    for _ in 0..samples {
        let class = nonempty.choose(rng).unwrap();
        let (m, n) = (class.choose(rng).unwrap(), class.choose(rng).unwrap());
        let p = nonempty.choose(rng).unwrap().choose(rng).unwrap();
        if d.monomial_leq(m, n) {
            tested += 1;
            ensure(d.monomial_leq(&m.mul(p), &n.mul(p)), || format!("{m:?} ≤ {n:?} but not after {p:?}"))?;
        }
    }
    Ok(tested)
}

fn axiom_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut rules = 0;
    let mut tested = 0;
    for ell in 1..=3 {
        for reference in all_references(ell) {
            let d = TypeADatum::new(reference.clone());
            smt::check_datum_axioms(&d).map_err(|e| format!("ref {:?}: {e}", reference.shapes()))?;
            let classes: Vec<_> = Multidegree::all_up_to(reference.len(), 2)
                .iter()
                .map(|md| monomials_of_multidegree(&d, md))
                .collect();
            tested += check_multiplicative(&d, &classes, &mut rng, 200)?;
            let source = TypeARules::new(reference.clone());
            let basis = discrete_ideal_generators(&reference, 3).map_err(|e| e.to_string())?;
            for rows in basis.by_degree.values().flatten() {
                let t = Tableau::new(rows.iter().map(|r| Row::new(r, ell).unwrap()).collect()).unwrap();
                source.rule_for(&d.monomial(&t).unwrap()).map_err(|e| e.to_string())?;
            }
            for rule in source.generated_rules() {
                check_rule(&rule, &d)?;
                rules += 1;
            }
        }
    }
    let boxes = BoxDatum::new();
    smt::check_datum_axioms(&boxes)?;
    smt::check_datum_axioms(&CoxDatum)?;
    let mut box_classes = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut all = Vec::new();
                for _ in 0..20 {
                    let pick = |s: usize, k: u32, rng: &mut ChaCha8Rng| -> Vec<BoxGen> {
                        let pool: Vec<BoxGen> = boxes.generators().into_iter().filter(|g| g.0.shape() == s).collect();
                        (0..k).map(|_| *pool.choose(rng).unwrap()).collect()
                    };
                    let mut f = pick(0, a, &mut rng);
                    f.extend(pick(1, b, &mut rng));
                    f.extend(pick(2, c, &mut rng));
                    all.push(Monomial::new(f));
                }
                box_classes.push(all);
            }
        }
    }
    tested += check_multiplicative(&boxes, &box_classes, &mut rng, 500)?;
    let cox_classes: Vec<_> = (0..27)
        .map(|i| cox_monomials_of_weight(&PicardDegree([i % 3, (i / 3) % 3, i / 9])))
        .collect();
    tested += check_multiplicative(&CoxDatum, &cox_classes, &mut rng, 500)?;
    for r in coxy_relations() {
        check_rule(&r, &boxes)?;
        rules += 1;
    }
    for r in cox_relations() {
        check_rule(&r, &CoxDatum)?;
        rules += 1;
    }
    Ok(format!("{rules} rules, {tested} order-comparable samples"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("golden examples", golden_examples),
        ("shuffling relations vanish at random matrices", oracle_identities),
        ("standard counts match Weyl and SSYT counts", basis_counts),
        ("standard monomials are linearly independent", evaluation_independence),
        ("τ involution, commutation and braid laws", tau_laws),
        ("discrete algebra generators", discrete_algebra),
        ("Cox counts match the section-space formula", cox_counts),
        ("degeneration flatness", flatness),
        ("Cox normal forms are confluent", confluence),
        ("datum axioms, order multiplicativity and rule invariants", axiom_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
