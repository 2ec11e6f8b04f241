//! The invariant suite: theorem-level identities checked on one algebra,
//! with brute-force cross-checks where the algebra is small enough.

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ideal_combine, subalgebra, Algebra, Element, IdealOp, Side};
use crate::error::{Error, Result};
use crate::localization::{
    annihilator_ideal, duality_report, idempotent_denominator_check, is_left_triangular, localization_report,
    monoid_denominator_decision, nl_ideal_test, powers_denominator_criterion, two_sided_report, CoreDescription,
    LocalizationReport, TwoSidedReport,
};
use crate::options::Options;
use crate::oracle::{brute_denominator_check, brute_idempotents, brute_radical, explicit_max_den, monoid_closure};
use crate::par;
use crate::structure::{block_decomposition, central_idempotents, radical, BlockSet};

/// Full element sweeps run up to this many elements; larger algebras are sampled.
pub const EXHAUSTIVE_SWEEP: u128 = 4096;
pub const SAMPLED_SWEEP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

/// `Ok(None)` agrees, `Ok(Some(msg))` disagrees.
pub type Agreement = Result<Option<String>>;

fn outcome(name: &'static str, r: Agreement, pass_detail: impl FnOnce() -> String) -> CheckOutcome {
    match r {
        Ok(None) => CheckOutcome { name, status: Status::Pass, detail: pass_detail() },
        Ok(Some(msg)) => CheckOutcome { name, status: Status::Fail, detail: msg },
        Err(Error::GuardExceeded { what, needed, guard }) => CheckOutcome {
            name,
            status: Status::Skipped,
            detail: format!("{what} needs {needed} > guard {guard}"),
        },
        Err(e) => CheckOutcome { name, status: Status::Fail, detail: e.to_string() },
    }
}

fn disagree(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!cond).then(msg)
}

/// Every element when `p^dim ≤ EXHAUSTIVE_SWEEP`, else a seeded sample.
pub fn sweep_elements(a: &Algebra, opts: &Options) -> Vec<Element> {
    if a.element_count() <= EXHAUSTIVE_SWEEP {
        (0..a.element_count() as u64).map(|i| a.element_at(i)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..SAMPLED_SWEEP).map(|_| a.random_element(&mut rng)).collect()
    }
}

/// Powers criterion against the definitional check on the monoid `{s^i}`.
pub fn powers_vs_oracle(a: &Algebra, s: &Element, opts: &Options) -> Agreement {
    let verdict = powers_denominator_criterion(a, s)?;
    let closure = monoid_closure(a, std::slice::from_ref(s), opts.guard)?;
    if closure.contains_zero {
        return Ok(disagree(!verdict.is_den, || format!("{s:?}: criterion accepts a set containing 0")));
    }
    let brute = brute_denominator_check(a, &closure, Side::Left, opts)?;
    if verdict.is_den != brute.is_den {
        return Ok(Some(format!("{s:?}: criterion {} but oracle {}", verdict.is_den, brute.is_den)));
    }
    let (Some(d), Some(ass)) = (verdict.descriptor, brute.ass) else {
        return Ok(None);
    };
    if ass != d.ass {
        return Ok(Some(format!("{s:?}: ass differs from the oracle")));
    }
    let CoreDescription::MinExponent(k) = d.core else {
        return Ok(Some("powers descriptor without an exponent core".into()));
    };
    let mut core = BTreeSet::new();
    let mut power = a.pow(s, k);
    for _ in 0..=closure.len() {
        core.insert(power.clone());
        power = a.mul(&power, s);
    }
    let brute_core: BTreeSet<Element> = brute.core.into_iter().collect();
    Ok(disagree(core == brute_core, || format!("{s:?}: core differs from the oracle")))
}

/// `{1, e}` by definition against `eR(1-e) = 0`, and the two-sided version against centrality.
pub fn idempotent_vs_oracle(a: &Algebra, e: &Element, opts: &Options) -> Agreement {
    let v = idempotent_denominator_check(a, e)?;
    let set = crate::oracle::FiniteSet::new(vec![a.one(), e.clone()]);
    let left = brute_denominator_check(a, &set, Side::Left, opts)?;
    let two = brute_denominator_check(a, &set, Side::TwoSided, opts)?;
    Ok(disagree(left.is_den == v.left && two.is_den == v.central, || {
        format!("{e:?}: left {} vs oracle {}, central {} vs oracle {}", v.left, left.is_den, v.central, two.is_den)
    }))
}

/// Each `T_e`, listed explicitly, is a left denominator set with the predicted ass, core and size.
pub fn max_den_vs_oracle(a: &Algebra, report: &LocalizationReport, opts: &Options) -> Agreement {
    for m in &report.max_den {
        let t = explicit_max_den(a, m, opts)?;
        if m.size.is_some_and(|n| n != t.len() as u128) {
            return Ok(Some(format!("|T_e| for {} is {} not {:?}", m.set, t.len(), m.size)));
        }
        let brute = brute_denominator_check(a, &t, Side::Left, opts)?;
        if !brute.is_den {
            return Ok(Some(format!("T_e for {} fails the oracle: {:?}", m.set, brute.counterexample)));
        }
        if brute.ass.as_ref() != Some(&m.descriptor.ass) {
            return Ok(Some(format!("ass(T_e) for {} differs from (1-e)R", m.set)));
        }
        let core: Vec<Element> = t.members.iter().filter(|x| m.descriptor.in_core_predicate(a, x)).cloned().collect();
        if core != brute.core {
            return Ok(Some(format!("core of T_e for {} differs from the oracle", m.set)));
        }
    }
    Ok(None)
}

/// Monoid decision against the definitional check on the generated monoid.
pub fn monoid_vs_oracle(a: &Algebra, gens: &[Element], opts: &Options) -> Agreement {
    let v = monoid_denominator_decision(a, gens, opts)?;
    let closure = monoid_closure(a, gens, opts.guard)?;
    if closure.contains_zero {
        return Ok(disagree(!v.is_den, || "decision accepts a monoid containing 0".into()));
    }
    let brute = brute_denominator_check(a, &closure, Side::Left, opts)?;
    if v.is_den != brute.is_den {
        return Ok(Some(format!("{gens:?}: decision {} but oracle {}", v.is_den, brute.is_den)));
    }
    let (Some(d), Some(ass)) = (v.descriptor, brute.ass) else {
        return Ok(None);
    };
    if ass != d.ass {
        return Ok(Some(format!("{gens:?}: ass differs from the oracle")));
    }
    let core: Vec<Element> = closure.members.iter().filter(|t| d.in_core_predicate(a, t)).cloned().collect();
    Ok(disagree(core == brute.core, || format!("{gens:?}: core differs from the oracle")))
}

/// Two-sided powers criterion against the two-sided definitional check.
pub fn twosided_powers_vs_oracle(a: &Algebra, report: &TwoSidedReport, r: &Element, opts: &Options) -> Agreement {
    let verdict = report.powers_criterion(a, r);
    let closure = monoid_closure(a, std::slice::from_ref(r), opts.guard)?;
    if closure.contains_zero {
        return Ok(disagree(!verdict, || format!("{r:?}: two-sided criterion accepts a nilpotent")));
    }
    let brute = brute_denominator_check(a, &closure, Side::TwoSided, opts)?;
    if verdict != brute.is_den {
        return Ok(Some(format!("{r:?}: two-sided criterion {verdict} but oracle {}", brute.is_den)));
    }
    if let Some(ass) = &brute.ass {
        let e = powers_denominator_criterion(a, r)?.associated.e;
        let core: Vec<Element> =
            closure.members.iter().filter(|s| TwoSidedReport::in_core(a, &e, s)).cloned().collect();
        if core != brute.core || ass != &annihilator_ideal(a, &e)? {
            return Ok(Some(format!("{r:?}: two-sided ass or core differs from the oracle")));
        }
    }
    Ok(None)
}

/// The five equivalent conditions for "completely localizable = units".
pub fn completely_localizable_bundle(a: &Algebra, report: &LocalizationReport, opts: &Options) -> Result<[bool; 5]> {
    let tri = &report.tri;
    let sum = report.minima_sum();
    let completely = |r: &Element| report.max_den.iter().all(|m| m.contains(r));
    let c1 = if a.element_count() <= opts.guard as u128 {
        par::find_map_first(opts.exec, 0..a.element_count() as u64, |i| {
            let r = a.element_at(i);
            (completely(&r) && !a.is_unit(&r)).then_some(())
        })
        .is_none()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut samples: Vec<Element> = (0..SAMPLED_SWEEP).map(|_| a.random_element(&mut rng)).collect();
        samples.push(sum.clone());
        samples.iter().all(|r| !completely(r) || a.is_unit(r))
    };
    let c2 = tri.minimal_sets().iter().fold(BlockSet::empty(), |acc, &b| acc.union(b)) == BlockSet::full(tri.s());
    let c3 = sum == a.one() && tri.minima().all(|m| a.is_central(&m.idempotent));
    let mut c4 = true;
    for c in central_idempotents(a)? {
        let space = a.principal(&c, Side::Right);
        let (corner, _) = subalgebra(a, &space, &c, "factor")?;
        c4 &= localization_report(&corner, Side::Left, opts)?.loc_count() == 1;
    }
    let c5 = report.l_rad.is_zero();
    Ok([c1, c2, c3, c4, c5])
}

/// Identities among the ass ideals and the localization radicals.
pub fn ass_identities(a: &Algebra, report: &LocalizationReport) -> Agreement {
    for x in &report.loc_entries {
        let ax = &x.ass;
        if &ideal_combine(a, ax, ax, IdealOp::Product)? != ax {
            return Ok(Some(format!("ass for {} is not idempotent", x.set)));
        }
        let er = a.principal(&x.idempotent, Side::Right);
        if er.dim() + ax.dim() != a.dim() || !er.intersection(ax.space())?.is_zero() {
            return Ok(Some(format!("ass ⊕ eR ≠ R for {}", x.set)));
        }
        for y in &report.loc_entries {
            let ay = &y.ass;
            let xy = ideal_combine(a, ax, ay, IdealOp::Product)?;
            let yx = ideal_combine(a, ay, ax, IdealOp::Product)?;
            let meet = ideal_combine(a, ax, ay, IdealOp::Intersection)?;
            if xy != meet || yx != meet {
                return Ok(Some(format!("ass products for {} and {} differ from the intersection", x.set, y.set)));
            }
        }
    }
    let l = &report.l_rad;
    let in_rad = report.family.rad().space().contains(l.space())?;
    if in_rad != l.is_zero() {
        return Ok(Some("localization radical inside rad but nonzero".into()));
    }
    if !l.space().contains(report.little_rad.space())? {
        return Ok(Some("little radical not inside the localization radical".into()));
    }
    Ok(None)
}

/// The sum of the minima is a triangular idempotent whose ass is the
/// localization radical, and the least triangular upper bound of the minima.
pub fn minima_sum_properties(a: &Algebra, report: &LocalizationReport) -> Agreement {
    let e = report.minima_sum();
    if !is_left_triangular(a, &e) {
        return Ok(Some("sum of minima is not left triangular".into()));
    }
    if annihilator_ideal(a, &e)? != report.l_rad {
        return Ok(Some("(1 - Σ minima)R differs from the localization radical".into()));
    }
    let union = report.tri.minimal_sets().iter().fold(BlockSet::empty(), |acc, &b| acc.union(b));
    for m in report.tri.minima() {
        if a.mul(&e, &m.idempotent) != m.idempotent || a.mul(&m.idempotent, &e) != m.idempotent {
            return Ok(Some(format!("sum of minima is not above {}", m.set)));
        }
    }
    for t in report.tri.entries() {
        if union.is_subset(t.set) && !(a.mul(&e, &t.idempotent) == e && a.mul(&t.idempotent, &e) == e) {
            return Ok(Some(format!("sum of minima is not below the upper bound {}", t.set)));
        }
    }
    Ok(None)
}

/// The block-triangular shape determined by the minima.
pub fn triangular_shape(a: &Algebra, report: &LocalizationReport, opts: &Options) -> Agreement {
    let mins: Vec<Element> = report.tri.minima().map(|m| m.idempotent.clone()).collect();
    let rest = a.complement(&report.minima_sum());
    let zero_block = |x: &Element, y: &Element| (0..a.dim()).all(|k| a.mul3(x, &a.basis(k), y).is_zero());
    for (i, x) in mins.iter().enumerate() {
        for (j, y) in mins.iter().enumerate() {
            if i != j && !zero_block(x, y) {
                return Ok(Some(format!("off-diagonal block ({}, {}) is nonzero", i + 1, j + 1)));
            }
        }
        if !zero_block(x, &rest) {
            return Ok(Some(format!("block ({}, t+1) is nonzero", i + 1)));
        }
        let (corner, _) = subalgebra(a, &a.principal(x, Side::Right).intersection(&a.principal(x, Side::Left))?, x, "corner")?;
        if localization_report(&corner, Side::Left, opts)?.loc_count() != 1 {
            return Ok(Some(format!("diagonal block {} is left triangular", i + 1)));
        }
    }
    let outside = report.tri.minimal_sets().iter().fold(BlockSet::empty(), |acc, &b| acc.union(b)).complement(report.s());
    for t in report.tri.entries() {
        if !t.set.is_empty() && t.set.is_subset(outside) {
            return Ok(Some(format!("{} lies outside the minima yet is triangular", t.set)));
        }
    }
    Ok(None)
}

/// Every idempotent is a left denominator idempotent iff every idempotent
/// is central iff every indecomposable factor is local.
pub fn all_idempotents_bundle(a: &Algebra, opts: &Options) -> Agreement {
    let ids = brute_idempotents(a, opts)?;
    let mut all_left = true;
    let mut all_central = true;
    for e in ids.members.iter().filter(|e| !e.is_zero()) {
        let v = idempotent_denominator_check(a, e)?;
        all_left &= v.left;
        all_central &= v.central;
    }
    let mut all_local = true;
    for c in central_idempotents(a)? {
        let (corner, _) = subalgebra(a, &a.principal(&c, Side::Right), &c, "factor")?;
        let fam = block_decomposition(&corner)?;
        all_local &= fam.s() == 1 && fam.block_commutative()[0];
    }
    Ok(disagree(all_left == all_central && all_central == all_local, || {
        format!("all left {all_left}, all central {all_central}, all factors local {all_local}")
    }))
}

/// `fR = f'R` forces `R(1-f) = R(1-f')`, on the conjugates `f' = e + e r (1-e)`.
pub fn same_image_idempotents(a: &Algebra, report: &LocalizationReport, opts: &Options) -> Agreement {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x61);
    let ids: Vec<Element> = report.tri.entries().iter().map(|t| t.idempotent.clone()).collect();
    for e in ids {
        for _ in 0..8 {
            let r = a.random_element(&mut rng);
            let f = a.add(&e, &a.mul3(&e, &r, &a.complement(&e)));
            if !a.is_idempotent(&f) || a.principal(&f, Side::Right) != a.principal(&e, Side::Right) {
                return Ok(Some("perturbed idempotent changed its right ideal".into()));
            }
            if a.principal(&a.complement(&f), Side::Left) != a.principal(&a.complement(&e), Side::Left) {
                return Ok(Some("equal right ideals with different left complements".into()));
            }
        }
    }
    Ok(None)
}

fn basic_element_laws(a: &Algebra, opts: &Options) -> Agreement {
    let elements: Vec<Element> = if a.element_count() <= opts.guard as u128 {
        (0..a.element_count() as u64).map(|i| a.element_at(i)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..10_000).map(|_| a.random_element(&mut rng)).collect()
    };
    let bad = par::find_map_first_slice(opts.exec, &elements, |x| {
        if a.is_left_regular(x) && !a.is_unit(x) {
            return Some(format!("{x:?} is left regular but not a unit"));
        }
        let rs = a.principal(x, Side::Left);
        let ker = a.regular_matrix(x, Side::Right).kernel();
        if rs.dim() + ker.dim() != a.dim() {
            return Some(format!("{x:?}: dim Rs + dim ker(·s) ≠ dim R"));
        }
        let meet_zero = rs.intersection(&ker).map(|m| m.is_zero()).unwrap_or(false);
        let spans = rs.sum(&ker).map(|m| m.is_full()).unwrap_or(false);
        (meet_zero != spans).then(|| format!("{x:?}: Rs ∩ ker(·s) = 0 without Rs + ker(·s) = R"))
    });
    Ok(bad)
}

fn quotient_laws(a: &Algebra, opts: &Options) -> Agreement {
    let fam = block_decomposition(a)?;
    let q = fam.quotient();
    let qa = q.algebra();
    for i in 0..qa.dim() {
        let b = qa.basis(i);
        if q.project(&q.lift(&b)) != b {
            return Ok(Some("projection ∘ section is not the identity".into()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x71);
    for _ in 0..64 {
        let x = a.random_element(&mut rng);
        let y = a.random_element(&mut rng);
        if q.project(&a.mul(&x, &y)) != qa.mul(&q.project(&x), &q.project(&y)) {
            return Ok(Some("projection is not multiplicative".into()));
        }
    }
    if !radical(qa)?.is_zero() {
        return Ok(Some("R/rad has nonzero radical".into()));
    }
    let again = block_decomposition(a)?;
    Ok(disagree(again.idempotents() == fam.idempotents(), || "block decomposition is not deterministic".into()))
}

fn radical_vs_oracle(a: &Algebra, opts: &Options) -> Agreement {
    let brute = brute_radical(a, opts)?;
    Ok(disagree(brute == radical(a)?, || "trace-form radical differs from the quasi-regular oracle".into()))
}

/// Runs the whole suite. Never returns early: each failure is one outcome.
pub fn run_all(a: &Algebra, opts: &Options) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(outcome("element_laws", basic_element_laws(a, opts), || "left regular ⇒ unit; Rs ⊕ ker(·s)".into()));
    out.push(outcome("quotient_laws", quotient_laws(a, opts), || "section, multiplicativity, determinism".into()));
    out.push(outcome("radical_oracle", radical_vs_oracle(a, opts), || "trace form = quasi-regular set".into()));

    let report = match localization_report(a, Side::Left, opts) {
        Ok(r) => r,
        Err(e) => {
            out.push(CheckOutcome { name: "left_report", status: Status::Fail, detail: e.to_string() });
            return out;
        }
    };
    out.push(CheckOutcome {
        name: "left_report",
        status: Status::Pass,
        detail: format!("{} localizations, minima {:?}", report.loc_count(), report.tri.minimal_sets().iter().map(|b| b.to_string()).collect::<Vec<_>>()),
    });
    out.push(outcome("ass_identities", ass_identities(a, &report), String::new));
    out.push(outcome("minima_sum", minima_sum_properties(a, &report), String::new));
    out.push(outcome("triangular_shape", triangular_shape(a, &report, opts), String::new));
    out.push(outcome("same_image_idempotents", same_image_idempotents(a, &report, opts), String::new));
    out.push(outcome(
        "completely_localizable_bundle",
        completely_localizable_bundle(a, &report, opts).map(|c| disagree(c.iter().all(|&x| x == c[0]), || format!("conditions {c:?}"))),
        String::new,
    ));
    out.push(outcome("nl_ideal", nl_ideal_test(a, &report, opts).map(|_| None), String::new));
    out.push(outcome("duality", duality_report(a, opts).map(|_| None), String::new));
    out.push(outcome("two_sided", two_sided_report(a, opts).map(|_| None), String::new));

    let sweep = sweep_elements(a, opts);
    let n = sweep.len();
    let powers = par::map_slice(opts.exec, &sweep, |s| powers_vs_oracle(a, s, opts));
    out.push(outcome("powers_oracle", first_disagreement(powers), || format!("{n} elements")));
    let ids = brute_idempotents(a, opts).map(|f| f.members);
    let idem = ids.and_then(|ids| {
        let nonzero: Vec<Element> = ids.into_iter().filter(|e| !e.is_zero()).collect();
        first_disagreement(par::map_slice(opts.exec, &nonzero, |e| idempotent_vs_oracle(a, e, opts)))
    });
    out.push(outcome("idempotent_oracle", idem, String::new));
    out.push(outcome("max_den_oracle", max_den_vs_oracle(a, &report, opts), String::new));
    out.push(outcome("all_idempotents_bundle", all_idempotents_bundle(a, opts), String::new));
    let ts = two_sided_report(a, opts);
    let tsr = ts.and_then(|r| {
        first_disagreement(par::map_slice(opts.exec, &sweep, |x| twosided_powers_vs_oracle(a, &r, x, opts)))
    });
    out.push(outcome("two_sided_powers_oracle", tsr, || format!("{n} elements")));
    out
}

pub fn first_disagreement(results: Vec<Agreement>) -> Agreement {
    for r in results {
        if let Some(msg) = r? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}
