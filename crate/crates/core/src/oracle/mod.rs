//! Brute-force checks straight from the definitions, independent of the
//! structure theory. Used as ground truth in tests and `--oracle` runs.

use std::collections::HashSet;

use crate::algebra::{opposite_algebra, Algebra, Element, Ideal, Side};
use crate::error::{ensure_invariant, Error, Result};
use crate::exact::{Mat, Subspace};
use crate::localization::MaxDen;
use crate::options::Options;
use crate::par;

/// Deduplicated elements in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSet {
    pub members: Vec<Element>,
    pub contains_zero: bool,
}

impl FiniteSet {
    pub fn new(mut members: Vec<Element>) -> Self {
        members.sort();
        members.dedup();
        let contains_zero = members.iter().any(Element::is_zero);
        FiniteSet { members, contains_zero }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

/// The monoid generated by `gens`, failing once it outgrows `guard`.
pub fn monoid_closure(a: &Algebra, gens: &[Element], guard: u64) -> Result<FiniteSet> {
    if guard == 0 {
        return Err(Error::InvalidInput("guard must be at least 1".into()));
    }
    for g in gens {
        if g.coeffs().len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), got: g.coeffs().len() });
        }
    }
    let mut seen: HashSet<Element> = HashSet::new();
    let mut frontier = vec![a.one()];
    seen.insert(a.one());
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = a.mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > guard {
                    return Err(Error::GuardExceeded {
                        what: "monoid closure",
                        needed: seen.len() as u128,
                        guard,
                    });
                }
                frontier.push(y);
            }
        }
    }
    Ok(FiniteSet::new(seen.into_iter().collect()))
}

#[derive(Debug, Clone)]
pub struct BruteVerdict {
    pub is_ore: bool,
    pub is_reversible: bool,
    pub is_den: bool,
    /// `ass(S)` when it is a two-sided ideal.
    pub ass: Option<Ideal>,
    /// `{s ∈ S : ker(s·) = ass(S)}`
    pub core: Vec<Element>,
    /// First failing `(s, r)` in canonical order, when one could be located.
    pub counterexample: Option<(Element, Element)>,
}

/// Checks the Ore and reversibility conditions for `S` by definition.
///
/// For a fixed `s`, the `r` with `s'r ∈ Rs` form a subspace `V_{s'}`, and Ore
/// at `s` says these cover `R`. A space over GF(p) is never the union of at
/// most `p` proper subspaces, so element enumeration is only needed when
/// more distinct proper `V_{s'}` occur.
pub fn brute_denominator_check(a: &Algebra, set: &FiniteSet, side: Side, opts: &Options) -> Result<BruteVerdict> {
    if set.contains_zero {
        return Err(Error::InvalidInput("a multiplicative set cannot contain 0".into()));
    }
    match side {
        Side::Left => left_check(a, set, opts),
        Side::Right => left_check(&opposite_algebra(a)?, set, opts),
        Side::TwoSided => {
            let l = left_check(a, set, opts)?;
            let r = left_check(&opposite_algebra(a)?, set, opts)?;
            if l.is_den && r.is_den {
                ensure_invariant!(
                    l.ass.as_ref().map(Ideal::space) == r.ass.as_ref().map(Ideal::space),
                    "left and right ass differ for a two-sided denominator set"
                );
            }
            let core = l.core.iter().filter(|x| r.core.contains(x)).cloned().collect();
            Ok(BruteVerdict {
                is_ore: l.is_ore && r.is_ore,
                is_reversible: l.is_reversible && r.is_reversible,
                is_den: l.is_den && r.is_den,
                ass: if l.is_den && r.is_den { l.ass.clone() } else { None },
                core,
                counterexample: l.counterexample.or(r.counterexample),
            })
        }
    }
}

/// Matrix `Q` with `x·Q = 0` exactly when `x ∈ w`.
fn quotient_map(w: &Subspace) -> Mat {
    let d = w.ambient_dim();
    let np = w.non_pivots();
    let rows = (0..d).map(|j| {
        let mut e = vec![0u32; d];
        e[j] = 1;
        let r = w.reduce(&e);
        np.iter().map(|&c| r[c]).collect::<Vec<u32>>()
    });
    Mat::from_residue_rows(w.prime(), np.len(), rows)
}

fn left_check(a: &Algebra, set: &FiniteSet, opts: &Options) -> Result<BruteVerdict> {
    let p = a.prime().get() as usize;
    let members = &set.members;
    let mut ordered: Vec<&Element> = members.iter().filter(|x| a.is_idempotent(x)).collect();
    ordered.extend(members.iter().filter(|x| !a.is_idempotent(x)));
    let left_mats: Vec<Mat> = ordered.iter().map(|t| a.regular_matrix(t, Side::Left)).collect();

    let mut is_ore = true;
    let mut counterexample = None;
    for s in members {
        let rs = a.principal(s, Side::Left);
        if rs.is_full() {
            continue;
        }
        let q = quotient_map(&rs);
        let mut proper: Vec<Subspace> = Vec::new();
        let mut covered = false;
        for l in &left_mats {
            let v = l.mul(&q)?.kernel();
            if v.is_full() {
                covered = true;
                break;
            }
            if !proper.contains(&v) {
                proper.push(v);
            }
        }
        if covered {
            continue;
        }
        let uncovered = |idx: u64| {
            let r = a.element_at(idx);
            (!proper.iter().any(|v| v.contains_vec(r.coeffs()))).then_some(r)
        };
        let within_guard = opts.check_guard("Ore enumeration", a.element_count()).is_ok();
        if proper.len() <= p {
            is_ore = false;
            if within_guard {
                let r = par::find_map_first(opts.exec, 0..a.element_count() as u64, uncovered);
                counterexample = r.map(|r| (s.clone(), r));
            }
            break;
        }
        opts.check_guard("Ore enumeration", a.element_count())?;
        if let Some(r) = par::find_map_first(opts.exec, 0..a.element_count() as u64, uncovered) {
            is_ore = false;
            counterexample = Some((s.clone(), r));
            break;
        }
    }

    // ass(S) = ∪ ker(t·)
    let mut kernels: Vec<Subspace> = Vec::new();
    for t in members {
        let k = a.regular_matrix(t, Side::Left).kernel();
        if !kernels.contains(&k) {
            kernels.push(k);
        }
    }
    let largest = kernels
        .iter()
        .find(|k| kernels.iter().all(|o| k.contains(o).unwrap_or(false)))
        .cloned();
    let ass_space = match largest {
        Some(k) => Some(k),
        None if kernels.len() <= p => None,
        None => {
            opts.check_guard("ass enumeration", a.element_count())?;
            let union = par::filter_range(opts.exec, 0..a.element_count() as u64, |idx| {
                let r = a.element_at(idx);
                kernels.iter().any(|k| k.contains_vec(r.coeffs()))
            });
            let span = Subspace::from_rows(a.prime(), a.dim(), union.iter().map(|&i| a.element_at(i).into_coeffs()));
            (span.cardinality() == union.len() as u128).then_some(span)
        }
    };
    let in_ass = |r: &[u32]| match &ass_space {
        Some(w) => w.contains_vec(r),
        None => kernels.iter().any(|k| k.contains_vec(r)),
    };

    let mut is_reversible = true;
    for s in members {
        let ker = a.regular_matrix(s, Side::Right).kernel();
        let bad = if ass_space.is_some() {
            ker.basis().row_iter().find(|r| !in_ass(r)).map(|r| r.to_vec())
        } else {
            opts.check_guard("reversibility enumeration", ker.cardinality())?;
            let mut found: Vec<Vec<u32>> = ker.elements().filter(|r| !in_ass(r)).collect();
            found.sort();
            found.into_iter().next()
        };
        if let Some(r) = bad {
            is_reversible = false;
            if counterexample.is_none() {
                counterexample = Some((s.clone(), a.element_from_residues(r)?));
            }
            break;
        }
    }

    let ass = match &ass_space {
        Some(w) if Ideal::is_closed(a, w, Side::TwoSided) => Some(Ideal::new(a, w.clone(), Side::TwoSided)?),
        _ => None,
    };
    let is_den = is_ore && is_reversible;
    ensure_invariant!(!is_den || ass.is_some(), "denominator set with ass not a two-sided ideal");
    let core = match &ass {
        Some(ideal) => members
            .iter()
            .filter(|t| &a.regular_matrix(t, Side::Left).kernel() == ideal.space())
            .cloned()
            .collect(),
        None => Vec::new(),
    };
    Ok(BruteVerdict { is_ore, is_reversible, is_den, ass: if is_den { ass } else { None }, core, counterexample })
}

/// Radical as the set of `x` with `1 - y` a unit for every `y ∈ Rx`.
pub fn brute_radical(a: &Algebra, opts: &Options) -> Result<Ideal> {
    opts.check_guard("radical enumeration", a.element_count())?;
    let one = a.one();
    let quasi_regular = |idx: u64| {
        let x = a.element_at(idx);
        let multiples_ok = (1..a.prime().get()).all(|l| a.is_unit(&a.sub(&one, &a.scale(l, &x))));
        multiples_ok && a.principal(&x, Side::Left).elements().all(|y| {
            a.is_unit(&a.sub(&one, &Element::from_residues(y)))
        })
    };
    let hits = par::filter_range(opts.exec, 0..a.element_count() as u64, quasi_regular);
    let span = Subspace::from_rows(a.prime(), a.dim(), hits.iter().map(|&i| a.element_at(i).into_coeffs()));
    ensure_invariant!(span.cardinality() == hits.len() as u128, "quasi-regular elements do not form a subspace");
    let ideal = Ideal::new(a, span, Side::TwoSided)?;
    ensure_invariant!(ideal.is_nilpotent(a)?, "quasi-regular ideal is not nilpotent");
    Ok(ideal)
}

pub fn brute_idempotents(a: &Algebra, opts: &Options) -> Result<FiniteSet> {
    opts.check_guard("idempotent enumeration", a.element_count())?;
    let hits = par::filter_range(opts.exec, 0..a.element_count() as u64, |i| {
        let x = a.element_at(i);
        a.is_idempotent(&x)
    });
    Ok(FiniteSet::new(hits.into_iter().map(|i| a.element_at(i)).collect()))
}

/// `T_e` listed explicitly: the preimages of the units of `R/(1-e)R`.
pub fn explicit_max_den(a: &Algebra, max_den: &MaxDen, opts: &Options) -> Result<FiniteSet> {
    opts.check_guard("T_e enumeration", a.element_count())?;
    let hits = par::filter_range(opts.exec, 0..a.element_count() as u64, |i| max_den.contains(&a.element_at(i)));
    Ok(FiniteSet::new(hits.into_iter().map(|i| a.element_at(i)).collect()))
}

/// `R*` listed explicitly.
pub fn units(a: &Algebra, opts: &Options) -> Result<FiniteSet> {
    opts.check_guard("unit enumeration", a.element_count())?;
    let hits = par::filter_range(opts.exec, 0..a.element_count() as u64, |i| a.is_unit(&a.element_at(i)));
    Ok(FiniteSet::new(hits.into_iter().map(|i| a.element_at(i)).collect()))
}
