use crate::algebra::{ideal_combine, Algebra, Element, Ideal, IdealOp, Side};
use crate::error::{ensure_invariant, Result};
use crate::options::Options;
use crate::structure::{block_decomposition, central_idempotents, BlockSet};

use super::annihilator_ideal;

/// The maximal two-sided denominator set for factor `index`: elements whose
/// component in that factor is a unit, anything in the other factors.
#[derive(Debug, Clone)]
pub struct TwoSidedFactor {
    pub index: usize,
    pub idempotent: Element,
    pub factor_dim: usize,
    /// `(1 - c_i)R`
    pub ass: Ideal,
}

#[derive(Debug, Clone)]
pub struct TwoSidedReport {
    pub central_idempotents: Vec<Element>,
    /// `2^t - 1`
    pub loc_count: u128,
    pub max_den: Vec<TwoSidedFactor>,
    pub localization_radical: Ideal,
}

impl TwoSidedReport {
    /// Number of indecomposable factors `t`.
    pub fn factors(&self) -> usize {
        self.central_idempotents.len()
    }

    pub fn component(&self, a: &Algebra, r: &Element, i: usize) -> Element {
        a.mul(&self.central_idempotents[i], r)
    }

    /// Whether `{r^i}` is a two-sided denominator set: `r` is not nilpotent
    /// and every factor component is a unit or nilpotent.
    pub fn powers_criterion(&self, a: &Algebra, r: &Element) -> bool {
        if a.is_nilpotent(r) {
            return false;
        }
        self.central_idempotents.iter().all(|c| {
            let ri = a.mul(c, r);
            a.is_nilpotent(&ri) || a.is_unit(&a.add(&ri, &a.complement(c)))
        })
    }

    /// Core membership for a two-sided denominator set with witness `e`: `(1-e)s = 0`.
    pub fn in_core(a: &Algebra, e: &Element, s: &Element) -> bool {
        a.mul(&a.complement(e), s).is_zero()
    }

    /// Completely localizable elements are exactly the units.
    pub fn is_completely_localizable(a: &Algebra, r: &Element) -> bool {
        a.is_unit(r)
    }
}

pub fn two_sided_report(a: &Algebra, opts: &Options) -> Result<TwoSidedReport> {
    let central = central_idempotents(a)?;
    let t = central.len();
    let sum = central.iter().fold(a.zero(), |acc, e| a.add(&acc, e));
    ensure_invariant!(sum == a.one(), "central idempotents do not sum to one");
    for (i, x) in central.iter().enumerate() {
        for y in &central[i + 1..] {
            ensure_invariant!(a.mul(x, y).is_zero(), "central idempotents are not orthogonal");
        }
    }
    let loc_count = (1u128 << t) - 1;

    let fam = block_decomposition(a)?;
    if (1u128 << fam.s()) <= opts.guard as u128 {
        let count = BlockSet::all_nonempty(fam.s())
            .into_iter()
            .filter(|&set| a.is_central(&fam.subset_sum(a, set)))
            .count() as u128;
        ensure_invariant!(count == loc_count, "{count} central block sums, expected 2^{t} - 1");
    }

    let mut max_den = Vec::with_capacity(t);
    let mut meet = Ideal::whole(a, Side::TwoSided);
    for (index, c) in central.iter().enumerate() {
        let ass = annihilator_ideal(a, c)?;
        meet = ideal_combine(a, &meet, &ass, IdealOp::Intersection)?;
        max_den.push(TwoSidedFactor { index, idempotent: c.clone(), factor_dim: a.dim() - ass.dim(), ass });
    }
    ensure_invariant!(meet.is_zero(), "two-sided localization radical is nonzero");
    Ok(TwoSidedReport { central_idempotents: central, loc_count, max_den, localization_radical: meet })
}
