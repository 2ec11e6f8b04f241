//! Denominator sets, localizations and localization radicals of a
//! finite-dimensional algebra.
//!
//! Every left localization of an Artinian ring is `R/(1-e)R` for a block-sum
//! idempotent `e` with `eR(1-e) = 0`; right-side results are computed on the
//! opposite algebra, in the same coordinates.

mod dual;
mod elements;
mod twosided;

use std::borrow::Cow;

pub use dual::{duality_report, DualityReport};
pub use elements::{
    associated_idempotent, classify_element, idempotent_denominator_check, monoid_denominator_decision,
    nl_ideal_test, powers_denominator_criterion, AssociatedIdempotent, ElementVerdict, IdempotentVerdict,
    MonoidVerdict, PowersVerdict,
};
pub use twosided::{two_sided_report, TwoSidedFactor, TwoSidedReport};

use crate::algebra::{
    ideal_combine, ideal_generated, opposite_algebra, quotient_algebra, Algebra, Element, Ideal, IdealOp, Quotient,
    Side,
};
use crate::error::{ensure_invariant, Error, Result};
use crate::options::Options;
use crate::par;
use crate::structure::{block_decomposition, unit_count, BlockSet, IdempotentFamily};

/// `a` for the left side, `a^op` for the right side.
pub fn working_algebra(a: &Algebra, side: Side) -> Result<Cow<'_, Algebra>> {
    match side {
        Side::Left => Ok(Cow::Borrowed(a)),
        Side::Right => Ok(Cow::Owned(opposite_algebra(a)?)),
        Side::TwoSided => Err(Error::InvalidInput("expected a one-sided computation".into())),
    }
}

/// `e·b_k·(1-e) = 0` for every basis element.
pub fn is_left_triangular(a: &Algebra, e: &Element) -> bool {
    let c = a.complement(e);
    (0..a.dim()).all(|k| a.mul3(e, &a.basis(k), &c).is_zero())
}

/// `(1-e)R` as a two-sided ideal.
pub fn annihilator_ideal(a: &Algebra, e: &Element) -> Result<Ideal> {
    let right = ideal_generated(a, &[a.complement(e)], Side::Right);
    Ideal::new(a, right.space().clone(), Side::TwoSided)
        .map_err(|_| Error::Invariant("(1-e)R is not two-sided for a triangular e".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularEntry {
    pub set: BlockSet,
    pub idempotent: Element,
}

/// The block-sum idempotents `e_I` with `e_I R (1-e_I) = 0`, in canonical
/// subset order, with the minimal ones under inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularIdempotentSet {
    s: usize,
    entries: Vec<TriangularEntry>,
    minima: Vec<usize>,
}

impl TriangularIdempotentSet {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn entries(&self) -> &[TriangularEntry] {
        &self.entries
    }

    pub fn minima(&self) -> impl Iterator<Item = &TriangularEntry> + '_ {
        self.minima.iter().map(|&i| &self.entries[i])
    }

    pub fn minimal_sets(&self) -> Vec<BlockSet> {
        self.minima().map(|e| e.set).collect()
    }

    pub fn find(&self, set: BlockSet) -> Option<&TriangularEntry> {
        self.entries.iter().find(|e| e.set == set)
    }

    /// Entries with a proper index set.
    pub fn proper_sets(&self) -> Vec<BlockSet> {
        let full = BlockSet::full(self.s);
        self.entries.iter().map(|e| e.set).filter(|&b| b != full).collect()
    }
}

pub fn left_triangular_idempotents(
    a: &Algebra,
    fam: &IdempotentFamily,
    opts: &Options,
) -> Result<TriangularIdempotentSet> {
    let s = fam.s();
    let subsets = BlockSet::all_nonempty(s);
    let flags = par::map_slice(opts.exec, &subsets, |&set| {
        let e = fam.subset_sum(a, set);
        is_left_triangular(a, &e).then_some(TriangularEntry { set, idempotent: e })
    });
    let entries: Vec<TriangularEntry> = flags.into_iter().flatten().collect();
    let minima: Vec<usize> = (0..entries.len())
        .filter(|&i| {
            !entries
                .iter()
                .any(|o| o.set != entries[i].set && o.set.is_subset(entries[i].set))
        })
        .collect();
    let tri = TriangularIdempotentSet { s, entries, minima };
    verify_triangular_set(a, &tri)?;
    Ok(tri)
}

fn verify_triangular_set(a: &Algebra, tri: &TriangularIdempotentSet) -> Result<()> {
    ensure_invariant!(tri.find(BlockSet::full(tri.s)).is_some(), "e = 1 missing from the triangular set");
    let sets: Vec<BlockSet> = tri.entries.iter().map(|e| e.set).collect();
    for x in &tri.entries {
        for y in &tri.entries {
            let prod = a.mul(&x.idempotent, &y.idempotent);
            if !prod.is_zero() {
                let meet = x.set.intersection(y.set);
                ensure_invariant!(
                    sets.contains(&meet) && prod == a.mul(&y.idempotent, &x.idempotent),
                    "e_I e_J is not e_(I∩J) in the triangular set for {} and {}",
                    x.set,
                    y.set
                );
            }
            if x.set.intersection(y.set).is_empty() {
                ensure_invariant!(
                    sets.contains(&x.set.union(y.set)),
                    "disjoint sum {} + {} left the triangular set",
                    x.set,
                    y.set
                );
            }
        }
    }
    let minima: Vec<&TriangularEntry> = tri.minima().collect();
    for (i, x) in minima.iter().enumerate() {
        for y in &minima[i + 1..] {
            ensure_invariant!(x.set.intersection(y.set).is_empty(), "minima {} and {} overlap", x.set, y.set);
            ensure_invariant!(
                (0..a.dim()).all(|k| a.mul3(&x.idempotent, &a.basis(k), &y.idempotent).is_zero()),
                "e_I R e_J is nonzero for minima {} and {}",
                x.set,
                y.set
            );
        }
    }
    Ok(())
}

/// One element of `Loc`: the localization at `S_e`.
#[derive(Debug, Clone)]
pub struct LocEntry {
    pub set: BlockSet,
    pub idempotent: Element,
    /// `ass(S_e) = (1-e)R`
    pub ass: Ideal,
    pub quotient_dim: usize,
}

/// How the core of a denominator set is represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreDescription {
    /// `{s^i : i ≥ k}` for the powers of one element.
    MinExponent(u64),
    /// `{t ∈ S : (1-e)t(1-e) = 0}` for the witness idempotent `e`.
    Predicate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenKind {
    Idempotent,
    Powers,
    Monoid,
    /// The maximal set `T_e` of elements that become units in `R/(1-e)R`.
    Maximal,
}

/// A denominator set `S` described through its witness idempotent.
#[derive(Debug, Clone)]
pub struct DenSetDescriptor {
    pub kind: DenKind,
    pub witness_idempotent: Element,
    pub ass: Ideal,
    pub core: CoreDescription,
    /// `S^{-1}R ≅ R/ass`
    pub quotient: Quotient,
}

impl DenSetDescriptor {
    pub(crate) fn new(a: &Algebra, kind: DenKind, e: &Element, core: CoreDescription) -> Result<Self> {
        let ass = annihilator_ideal(a, e)?;
        let quotient = quotient_algebra(a, &ass)?;
        ensure_invariant!(
            ideal_combine(a, &ass, &ass, IdealOp::Product)? == ass,
            "ass of a denominator set is not idempotent"
        );
        Ok(DenSetDescriptor { kind, witness_idempotent: e.clone(), ass, core, quotient })
    }

    /// Membership in the core by the predicate `(1-e)t(1-e) = 0`.
    pub fn in_core_predicate(&self, a: &Algebra, t: &Element) -> bool {
        let c = a.complement(&self.witness_idempotent);
        a.mul3(&c, t, &c).is_zero()
    }

    /// Whether `t` maps to a unit of `S^{-1}R`.
    pub fn becomes_unit(&self, t: &Element) -> bool {
        self.quotient.algebra().is_unit(&self.quotient.project(t))
    }
}

/// A maximal denominator set `T_e` for a minimal `e`.
#[derive(Debug, Clone)]
pub struct MaxDen {
    pub set: BlockSet,
    pub descriptor: DenSetDescriptor,
    /// `|T_e| = |(R/(1-e)R)*| · p^dim ass`, when it fits in 128 bits.
    pub size: Option<u128>,
}

impl MaxDen {
    pub fn contains(&self, t: &Element) -> bool {
        self.descriptor.becomes_unit(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportFlags {
    pub localization_maximal: bool,
    pub semisimple: bool,
    pub is_direct_product_of_loc_max: bool,
    pub completely_loc_equals_units: bool,
}

#[derive(Debug, Clone)]
pub struct LocalizationReport {
    pub side: Side,
    /// The algebra the report was computed in: `a` or `a^op`.
    pub algebra: Algebra,
    pub family: IdempotentFamily,
    pub tri: TriangularIdempotentSet,
    pub loc_entries: Vec<LocEntry>,
    pub max_den: Vec<MaxDen>,
    /// Localization radical: the intersection of `ass(T_e)` over minimal `e`.
    pub l_rad: Ideal,
    /// Little localization radical: the intersection of the nonzero `ass` ideals.
    pub little_rad: Ideal,
    pub flags: ReportFlags,
}

impl LocalizationReport {
    pub fn s(&self) -> usize {
        self.family.s()
    }

    pub fn loc_count(&self) -> usize {
        self.loc_entries.len()
    }

    pub fn minima_sum(&self) -> Element {
        let a = &self.algebra;
        self.tri.minima().fold(a.zero(), |acc, e| a.add(&acc, &e.idempotent))
    }
}

pub fn localization_report(a: &Algebra, side: Side, opts: &Options) -> Result<LocalizationReport> {
    let work = working_algebra(a, side)?.into_owned();
    let a = &work;
    let family = block_decomposition(a)?;
    let tri = left_triangular_idempotents(a, &family, opts)?;

    let loc_entries = tri
        .entries()
        .iter()
        .map(|t| {
            let ass = annihilator_ideal(a, &t.idempotent)?;
            let quotient_dim = a.dim() - ass.dim();
            Ok(LocEntry { set: t.set, idempotent: t.idempotent.clone(), ass, quotient_dim })
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, x) in loc_entries.iter().enumerate() {
        for y in &loc_entries[i + 1..] {
            ensure_invariant!(x.ass != y.ass, "{} and {} give the same ass ideal", x.set, y.set);
        }
    }

    let max_den = tri
        .minima()
        .map(|m| {
            let descriptor = DenSetDescriptor::new(a, DenKind::Maximal, &m.idempotent, CoreDescription::Predicate)?;
            let size = unit_count(descriptor.quotient.algebra())?
                .and_then(|u| u.checked_mul((a.prime().get() as u128).checked_pow(descriptor.ass.dim() as u32)?));
            Ok(MaxDen { set: m.set, descriptor, size })
        })
        .collect::<Result<Vec<_>>>()?;
    let rad_zero = family.rad().is_zero();
    ensure_invariant!(max_den.len() <= family.s(), "more maximal denominator sets than blocks");
    // Only this direction holds in general: a local ring with nonzero
    // radical also has exactly s = 1 maximal denominator set.
    ensure_invariant!(
        !rad_zero || max_den.len() == family.s(),
        "semisimple algebra with fewer maximal denominator sets than blocks"
    );

    let l_rad = localization_radical(a, &tri, &max_den)?;
    let little_rad = little_radical(a, &loc_entries)?;
    ensure_invariant!(little_rad.space().is_zero() || l_rad.space().contains(little_rad.space())?, "little radical not inside the radical");

    let l_zero = l_rad.is_zero();
    let in_rad = family.rad().space().contains(l_rad.space())?;
    ensure_invariant!(in_rad == l_zero, "localization radical inside rad but nonzero");
    let minima_sets = tri.minimal_sets();
    let covers = minima_sets.iter().fold(BlockSet::empty(), |acc, &b| acc.union(b)) == BlockSet::full(family.s());
    let sum = tri.minima().fold(a.zero(), |acc, e| a.add(&acc, &e.idempotent));
    let split = sum == a.one() && tri.minima().all(|m| a.is_central(&m.idempotent));
    ensure_invariant!(
        covers == l_zero && split == l_zero,
        "completely-localizable criteria disagree (cover {covers}, split {split}, radical zero {l_zero})"
    );

    let flags = ReportFlags {
        localization_maximal: tri.entries().len() == 1,
        semisimple: rad_zero,
        is_direct_product_of_loc_max: l_zero,
        completely_loc_equals_units: l_zero,
    };
    Ok(LocalizationReport { side, algebra: work, family, tri, loc_entries, max_den, l_rad, little_rad, flags })
}

/// Intersection over minima, the product of the same ideals, and
/// `(1 - Σ e)R`, which must coincide.
fn localization_radical(a: &Algebra, tri: &TriangularIdempotentSet, max_den: &[MaxDen]) -> Result<Ideal> {
    let mut meet = Ideal::whole(a, Side::TwoSided);
    let mut prod = Ideal::whole(a, Side::TwoSided);
    for m in max_den {
        meet = ideal_combine(a, &meet, &m.descriptor.ass, IdealOp::Intersection)?;
        prod = ideal_combine(a, &prod, &m.descriptor.ass, IdealOp::Product)?;
    }
    let sum = tri.minima().fold(a.zero(), |acc, e| a.add(&acc, &e.idempotent));
    let closed = annihilator_ideal(a, &sum)?;
    ensure_invariant!(meet == prod && prod == closed, "the three forms of the localization radical disagree");
    ensure_invariant!(
        ideal_combine(a, &meet, &meet, IdealOp::Product)? == meet,
        "localization radical is not idempotent"
    );
    Ok(meet)
}

fn little_radical(a: &Algebra, entries: &[LocEntry]) -> Result<Ideal> {
    let nonzero: Vec<&Ideal> = entries.iter().map(|e| &e.ass).filter(|i| !i.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Ideal::zero(a, Side::TwoSided));
    }
    let mut meet = Ideal::whole(a, Side::TwoSided);
    let mut prod = Ideal::whole(a, Side::TwoSided);
    for i in &nonzero {
        meet = ideal_combine(a, &meet, i, IdealOp::Intersection)?;
        prod = ideal_combine(a, &prod, i, IdealOp::Product)?;
    }
    let mut minimal_meet = Ideal::whole(a, Side::TwoSided);
    for i in &nonzero {
        let is_min = !nonzero
            .iter()
            .any(|j| j.space() != i.space() && i.space().contains(j.space()).unwrap_or(false));
        if is_min {
            minimal_meet = ideal_combine(a, &minimal_meet, i, IdealOp::Intersection)?;
        }
    }
    ensure_invariant!(meet == prod && meet == minimal_meet, "little radical forms disagree");
    Ok(meet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::exact::Prime;

    fn p7() -> Prime {
        Prime::new(7).unwrap()
    }

    fn left(a: &Algebra) -> LocalizationReport {
        localization_report(a, Side::Left, &Options::default()).unwrap()
    }

    #[test]
    fn lower_triangular_2() {
        let a = Algebra::lower_triangular(p7(), 2).unwrap();
        let r = left(&a);
        let sets: Vec<String> = r.tri.entries().iter().map(|e| e.set.to_string()).collect();
        assert_eq!(sets, ["{1}", "{1,2}"]);
        assert_eq!(r.tri.entries()[0].idempotent, a.basis(0));
        assert_eq!(r.tri.minimal_sets(), [BlockSet::singleton(0)]);
        assert_eq!(r.max_den.len(), 1);
        assert_eq!(r.max_den[0].size, Some(294));
        assert_eq!(r.max_den[0].descriptor.quotient.algebra().dim(), 1);
    }

    #[test]
    fn lower_triangular_3() {
        let a = Algebra::lower_triangular(p7(), 3).unwrap();
        let r = left(&a);
        assert_eq!(r.loc_count(), 3);
        let sets: Vec<String> = r.tri.entries().iter().map(|e| e.set.to_string()).collect();
        assert_eq!(sets, ["{1}", "{1,2}", "{1,2,3}"]);
        assert_eq!(r.l_rad.dim(), 5);
        assert_eq!(r.little_rad.dim(), 3);
        assert!(!r.flags.localization_maximal && !r.flags.semisimple);
        assert!(!r.flags.is_direct_product_of_loc_max && !r.flags.completely_loc_equals_units);
    }

    #[test]
    fn matrix_ring_is_localization_maximal() {
        let a = Algebra::full_matrix(p7(), 2).unwrap();
        let r = left(&a);
        assert_eq!(r.loc_count(), 1);
        assert_eq!(r.tri.entries()[0].idempotent, a.one());
        assert!(r.flags.localization_maximal && r.flags.semisimple);
        assert!(r.l_rad.is_zero());
    }

    #[test]
    fn semisimple_product() {
        let m2 = Algebra::full_matrix(p7(), 2).unwrap();
        let f = Algebra::full_matrix(p7(), 1).unwrap();
        let (p1, _) = direct_product(&[m2, f]).unwrap();
        let r = left(&p1);
        assert!(r.flags.semisimple);
        assert_eq!(r.max_den.len(), 2);
        assert!(r.l_rad.is_zero());
        assert_eq!(r.loc_count(), 3);
    }

    #[test]
    fn local_ring_has_one_maximal_set_and_nonzero_radical() {
        let a = Algebra::truncated_poly(p7(), 2).unwrap();
        let r = left(&a);
        assert_eq!(r.max_den.len(), r.s());
        assert!(!r.flags.semisimple);
        assert_eq!(r.max_den[0].size, Some(42));
    }

    #[test]
    fn right_report_of_lower_triangular() {
        let a = Algebra::lower_triangular(p7(), 2).unwrap();
        let r = localization_report(&a, Side::Right, &Options::default()).unwrap();
        assert_eq!(r.tri.minimal_sets(), [BlockSet::singleton(1)]);
        assert_eq!(r.tri.minima().next().unwrap().idempotent, a.basis(2));
    }
}
