//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use artinloc::checks::{
    ass_identities, completely_localizable_bundle, first_disagreement, idempotent_vs_oracle, monoid_vs_oracle,
    powers_vs_oracle, twosided_powers_vs_oracle,
};
use artinloc::localization::{
    annihilator_ideal, duality_report, localization_report, powers_denominator_criterion, two_sided_report,
    CoreDescription, LocalizationReport,
};
use artinloc::oracle::{brute_denominator_check, brute_idempotents, brute_radical, monoid_closure};
use artinloc::structure::{block_decomposition, radical, BlockSet};
use artinloc::algebra::{ideal_combine, IdealOp};
use artinloc::{fixtures, Algebra, Element, Mat, Options, Side};

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fx(name: &str) -> Algebra {
    fixtures::by_name(name).expect("fixture")
}

fn err(e: artinloc::Error) -> String {
    e.to_string()
}

/// The matrix unit `E_ij` (1-based) as an element of a matrix-constructed algebra.
fn unit(a: &Algebra, n: usize, i: usize, j: usize) -> Element {
    let mut rows = vec![vec![0i64; n]; n];
    rows[i - 1][j - 1] = 1;
    a.element_from_matrix(&Mat::from_rows(a.prime(), &rows).unwrap()).unwrap()
}

fn matrix(a: &Algebra, rows: &[Vec<i64>]) -> Element {
    a.element_from_matrix(&Mat::from_rows(a.prime(), rows).unwrap()).unwrap()
}

fn within(limit: Duration, started: Instant) -> Outcome {
    let t = started.elapsed();
    check(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

/// Triangular shape on `L_n` (minimum `E_11`) and `U_n` (minimum `E_nn`).
fn triangular_case(a: &Algebra, n: usize, corner: usize, opts: &Options) -> Outcome {
    let started = Instant::now();
    let r = localization_report(a, Side::Left, opts).map_err(err)?;
    let e = unit(a, n, corner, corner);
    check(r.tri.entries().len() == n, || format!("{}: |I'_l| = {}", a.label(), r.tri.entries().len()))?;
    let mins: Vec<&Element> = r.tri.minima().map(|m| &m.idempotent).collect();
    check(mins == [&e], || format!("{}: minima {mins:?}", a.label()))?;
    check(r.loc_count() == n, || format!("{}: |Loc_l| = {}", a.label(), r.loc_count()))?;
    check(r.max_den.len() == 1, || format!("{}: |max.Den_l| = {}", a.label(), r.max_den.len()))?;
    let q = r.max_den[0].descriptor.quotient.algebra();
    check(q.dim() == 1, || format!("{}: quotient dim {}", a.label(), q.dim()))?;
    let expected = annihilator_ideal(a, &e).map_err(err)?;
    check(r.l_rad == expected, || format!("{}: l-radical is not (1-E)R", a.label()))?;
    check(r.l_rad.space() == &a.principal(&a.complement(&e), Side::Right), || "closed form mismatch".into())?;
    let d = duality_report(a, opts).map_err(err)?;
    check(d.left.l_rad.space() != d.right.l_rad.space(), || format!("{}: l = r as subspaces", a.label()))?;
    within(Duration::from_secs(1), started)
}

fn criterion_1(opts: &Options) -> Outcome {
    for n in [2, 3] {
        let p = artinloc::Prime::new(7).unwrap();
        triangular_case(&Algebra::lower_triangular(p, n).map_err(err)?, n, 1, opts)?;
        triangular_case(&Algebra::upper_triangular(p, n).map_err(err)?, n, n, opts)?;
    }
    Ok(())
}

fn criterion_2(opts: &Options) -> Outcome {
    let started = Instant::now();
    let p1 = fx("P1");
    let r = localization_report(&p1, Side::Left, opts).map_err(err)?;
    check(r.s() == 2 && r.max_den.len() == 2, || format!("P1: s = {}, |max.Den_l| = {}", r.s(), r.max_den.len()))?;
    check(r.flags.semisimple, || "P1 not reported semisimple".into())?;
    check(radical(&p1).map_err(err)?.is_zero(), || "P1 has nonzero radical".into())?;
    let t = two_sided_report(&p1, opts).map_err(err)?;
    check(t.factors() == 2 && t.loc_count == 3, || format!("P1: t = {}, loc_count = {}", t.factors(), t.loc_count))?;
    let m2 = fx("M2_7");
    let r = localization_report(&m2, Side::Left, opts).map_err(err)?;
    let sets: Vec<BlockSet> = r.tri.entries().iter().map(|e| e.set).collect();
    check(sets == [BlockSet::full(1)] && r.tri.entries()[0].idempotent == m2.one(), || format!("M2: I'_l = {sets:?}"))?;
    check(r.flags.localization_maximal, || "M2 not localization maximal".into())?;
    within(Duration::from_secs(1), started)
}

fn criterion_3(opts: &Options) -> Outcome {
    let started = Instant::now();
    let a = fx("L2_7");
    let s = matrix(&a, &[vec![2, 0], vec![1, 0]]);
    let e11 = unit(&a, 2, 1, 1);
    let v = powers_denominator_criterion(&a, &s).map_err(err)?;
    check(v.is_den, || "powers criterion rejects s".into())?;
    let d = v.descriptor.ok_or("no descriptor")?;
    let ass = annihilator_ideal(&a, &e11).map_err(err)?;
    check(d.ass == ass, || "ass != (1-E11)R".into())?;
    let members: Vec<Element> =
        ass.space().elements().map(|c| a.element_from_residues(c).unwrap()).collect();
    check(members.iter().all(|x| a.mul(&s, x).is_zero()), || "s·a ≠ 0".into())?;
    check(members.iter().any(|x| !a.mul(x, &s).is_zero()), || "a·s = 0".into())?;
    check(d.core == CoreDescription::MinExponent(1), || format!("core {:?}", d.core))?;
    let closure = monoid_closure(&a, std::slice::from_ref(&s), opts.guard).map_err(err)?;
    let brute = brute_denominator_check(&a, &closure, Side::Left, opts).map_err(err)?;
    let mut powers = Vec::new();
    let mut x = s.clone();
    for _ in 0..closure.len() {
        powers.push(x.clone());
        x = a.mul(&x, &s);
    }
    powers.sort();
    powers.dedup();
    check(brute.is_den && brute.core == powers, || format!("core {:?} vs powers {powers:?}", brute.core))?;
    let r = localization_report(&a, Side::Left, opts).map_err(err)?;
    let loc = r.loc_entries.iter().find(|l| l.set == BlockSet::singleton(0)).ok_or("no S_E11 entry")?;
    check(loc.idempotent == e11 && loc.ass == ass && loc.quotient_dim == 1, || "S_E11 localization differs".into())?;
    let m = &r.max_den[0];
    check(m.descriptor.ass == ass && m.descriptor.quotient.algebra().dim() == 1, || "T_E11 differs".into())?;
    check(d.quotient.algebra().dim() == 1, || "powers quotient not 1-dimensional".into())?;
    within(Duration::from_secs(1), started)
}

fn criterion_4(opts: &Options) -> Outcome {
    let started = Instant::now();
    for name in ["L2_5", "U2_5", "T5", "F5F5"] {
        let a = fx(name);
        let all: Vec<Element> = (0..a.element_count() as u64).map(|i| a.element_at(i)).collect();
        let powers = all.iter().map(|s| powers_vs_oracle(&a, s, opts)).collect();
        if let Some(msg) = first_disagreement(powers).map_err(err)? {
            return Err(format!("{name}: {msg}"));
        }
        let ids = brute_idempotents(&a, opts).map_err(err)?;
        let idem = ids.members.iter().filter(|e| !e.is_zero()).map(|e| idempotent_vs_oracle(&a, e, opts)).collect();
        if let Some(msg) = first_disagreement(idem).map_err(err)? {
            return Err(format!("{name}: {msg}"));
        }
    }
    within(Duration::from_secs(60), started)
}

fn criterion_5(opts: &Options) -> Outcome {
    for a in fixtures::all() {
        if a.element_count() > opts.guard as u128 {
            continue;
        }
        let rad = radical(&a).map_err(err)?;
        check(brute_radical(&a, opts).map_err(err)? == rad, || format!("{}: radical mismatch", a.label()))?;
        let fam = block_decomposition(&a).map_err(err)?;
        let q = fam.quotient().algebra();
        check(radical(q).map_err(err)?.is_zero(), || format!("{}: quotient not semisimple", a.label()))?;
    }
    Ok(())
}

fn l_three_ways(a: &Algebra, r: &LocalizationReport) -> Outcome {
    let minima: Vec<_> = r
        .tri
        .minimal_sets()
        .into_iter()
        .map(|set| r.loc_entries.iter().find(|l| l.set == set).map(|l| l.ass.clone()).ok_or("minimum without entry"))
        .collect::<Result<_, _>>()?;
    let mut meet = artinloc::Ideal::whole(a, Side::TwoSided);
    let mut prod = artinloc::Ideal::whole(a, Side::TwoSided);
    for m in &minima {
        meet = ideal_combine(a, &meet, m, IdealOp::Intersection).map_err(err)?;
        prod = ideal_combine(a, &prod, m, IdealOp::Product).map_err(err)?;
    }
    let closed = annihilator_ideal(a, &r.minima_sum()).map_err(err)?;
    check(meet == r.l_rad && prod == r.l_rad && closed == r.l_rad, || format!("{}: l computed three ways differs", a.label()))
}

fn criterion_6(opts: &Options) -> Outcome {
    for a in fixtures::all() {
        let r = localization_report(&a, Side::Left, opts).map_err(err)?;
        if let Some(msg) = ass_identities(&a, &r).map_err(err)? {
            return Err(format!("{}: {msg}", a.label()));
        }
        l_three_ways(&a, &r)?;
        let in_rad = r.family.rad().space().contains(r.l_rad.space()).map_err(err)?;
        check(in_rad == r.l_rad.is_zero(), || format!("{}: l ⊆ rad but l ≠ 0", a.label()))?;
        let sub = r.l_rad.space().contains(r.little_rad.space()).map_err(err)?;
        check(sub, || format!("{}: l' not inside l", a.label()))?;
    }
    let r = localization_report(&fx("L3_7"), Side::Left, opts).map_err(err)?;
    check(r.little_rad.dim() == 3 && r.l_rad.dim() == 5, || {
        format!("L3_7: dim l' = {}, dim l = {}", r.little_rad.dim(), r.l_rad.dim())
    })
}

fn criterion_7(opts: &Options) -> Outcome {
    for a in fixtures::all() {
        let d = duality_report(&a, opts).map_err(err)?;
        let name = a.label();
        check(d.left.loc_count() == d.right.loc_count(), || format!("{name}: |Loc_l| ≠ |Loc_r|"))?;
        let s = d.left.s();
        let lsets = d.left.tri.proper_sets();
        let mut image: Vec<BlockSet> = lsets.iter().map(|i| i.complement(s)).collect();
        image.sort();
        let mut rsets = d.right.tri.proper_sets();
        rsets.sort();
        check(image == rsets, || format!("{name}: complement is not a bijection onto I''_r"))?;
        for i in &lsets {
            for j in &lsets {
                check(i.is_subset(*j) == j.complement(s).is_subset(i.complement(s)), || {
                    format!("{name}: pairing not order reversing on {i}, {j}")
                })?;
            }
        }
        check(d.left.l_rad.is_zero() == d.right.l_rad.is_zero(), || format!("{name}: l = 0 but r ≠ 0 or vice versa"))?;
    }
    Ok(())
}

fn criterion_8(opts: &Options) -> Outcome {
    let started = Instant::now();
    for a in fixtures::all() {
        let r = localization_report(&a, Side::Left, opts).map_err(err)?;
        let c = completely_localizable_bundle(&a, &r, opts).map_err(err)?;
        check(c.iter().all(|&x| x == c[0]), || format!("{}: completely-localizable conditions {c:?}", a.label()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for name in ["L2_5", "U2_5", "T5", "F5F5", "L2_7", "U2_7", "T7", "F7F7"] {
        let a = fx(name);
        let mut dens = 0;
        for k in 0..200 {
            let gens: Vec<Element> = (0..1 + k % 2).map(|_| a.random_element(&mut rng)).collect();
            if let Some(msg) = monoid_vs_oracle(&a, &gens, opts).map_err(err)? {
                return Err(format!("{name}: {msg}"));
            }
            dens += usize::from(artinloc::localization::monoid_denominator_decision(&a, &gens, opts).map_err(err)?.is_den);
        }
        check(dens > 0, || format!("{name}: no random monoid was a denominator set"))?;
    }
    for name in ["P1", "T7xF7"] {
        let a = fx(name);
        let t = two_sided_report(&a, opts).map_err(err)?;
        let cs = t.central_idempotents.clone();
        for k in 0..100 {
            let x = a.random_element(&mut rng);
            // Mix components so that non-units and non-nilpotents show up in single factors.
            let c = &cs[k % cs.len()];
            let y = a.add(&a.mul(c, &x), &a.mul(&a.complement(c), &a.random_element(&mut rng)));
            for r in [x, y] {
                if let Some(msg) = twosided_powers_vs_oracle(&a, &t, &r, opts).map_err(err)? {
                    return Err(format!("{name}: {msg}"));
                }
            }
        }
    }
    let p1 = fx("P1");
    let t = two_sided_report(&p1, opts).map_err(err)?;
    let e11 = p1.element(&[1, 0, 0, 0, 1]).map_err(err)?;
    check(!t.powers_criterion(&p1, &e11), || "P1: (E11, 1) accepted".into())?;
    let t7 = fx("T7xF7");
    let tt = two_sided_report(&t7, opts).map_err(err)?;
    let r = t7.element(&[0, 1, 3]).map_err(err)?;
    check(tt.powers_criterion(&t7, &r), || "T7xF7: (x, 3) rejected".into())?;
    within(Duration::from_secs(120), started)
}

fn main() -> ExitCode {
    let opts = Options::default();
    type Criterion = (&'static str, fn(&Options) -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 triangular rings L_n, U_n", criterion_1),
        ("2 counting on P1 and M2", criterion_2),
        ("3 powers example in L2_7", criterion_3),
        ("4 oracle equivalence sweep", criterion_4),
        ("5 radical cross-check", criterion_5),
        ("6 radical and ideal identities", criterion_6),
        ("7 left/right duality", criterion_7),
        ("8 equivalence bundles", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let started = Instant::now();
        let result = f(&opts);
        let t = started.elapsed();
        match result {
            Ok(()) => println!("PASS  criterion {name} ({t:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name} ({t:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
