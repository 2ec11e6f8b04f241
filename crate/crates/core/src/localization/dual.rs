use super::{localization_report, LocalizationReport};
use crate::algebra::{Algebra, Side};
use crate::error::{ensure_invariant, Result};
use crate::options::Options;
use crate::structure::BlockSet;

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub left: LocalizationReport,
    pub right: LocalizationReport,
    /// `(I, CI)` for each proper left-triangular `I`.
    pub pairing: Vec<(BlockSet, BlockSet)>,
    pub counts_equal: bool,
    pub l_zero_iff_r_zero: bool,
    /// The left and right localization radicals coincide as subspaces.
    pub l_equals_r: bool,
}

pub fn duality_report(a: &Algebra, opts: &Options) -> Result<DualityReport> {
    let left = localization_report(a, Side::Left, opts)?;
    let right = localization_report(a, Side::Right, opts)?;
    ensure_invariant!(
        left.family.idempotents() == right.family.idempotents(),
        "opposite algebra produced a different block family"
    );
    let s = left.s();
    let lsets = left.tri.proper_sets();
    let rsets = right.tri.proper_sets();
    let pairing: Vec<(BlockSet, BlockSet)> = lsets.iter().map(|&i| (i, i.complement(s))).collect();
    for (i, ci) in &pairing {
        ensure_invariant!(rsets.contains(ci), "complement of {i} is not right triangular");
    }
    ensure_invariant!(lsets.len() == rsets.len(), "complement map is not onto the right-triangular sets");
    for (i, ci) in &pairing {
        for (j, cj) in &pairing {
            ensure_invariant!(i.is_subset(*j) == cj.is_subset(*ci), "complement pairing does not reverse order");
        }
    }
    let counts_equal = left.loc_count() == right.loc_count();
    let l_zero_iff_r_zero = left.l_rad.is_zero() == right.l_rad.is_zero();
    ensure_invariant!(counts_equal, "left and right localization counts differ");
    ensure_invariant!(l_zero_iff_r_zero, "exactly one of the localization radicals is zero");
    ensure_invariant!(
        left.flags.localization_maximal == right.flags.localization_maximal,
        "left and right localization maximality differ"
    );
    let l_equals_r = left.l_rad.space() == right.l_rad.space();
    Ok(DualityReport { left, right, pairing, counts_equal, l_zero_iff_r_zero, l_equals_r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::exact::Prime;

    fn p7() -> Prime {
        Prime::new(7).unwrap()
    }

    #[test]
    fn lower_triangular_duality() {
        let a = Algebra::lower_triangular(p7(), 2).unwrap();
        let d = duality_report(&a, &Options::default()).unwrap();
        assert_eq!(d.left.tri.proper_sets(), [BlockSet::singleton(0)]);
        assert_eq!(d.right.tri.proper_sets(), [BlockSet::singleton(1)]);
        assert_eq!(d.pairing, [(BlockSet::singleton(0), BlockSet::singleton(1))]);
        assert!(d.counts_equal && d.l_zero_iff_r_zero && !d.l_equals_r);
        assert_eq!(d.left.loc_count(), 2);
    }

    #[test]
    fn trivial_and_split_duality() {
        let m2 = Algebra::full_matrix(p7(), 2).unwrap();
        let d = duality_report(&m2, &Options::default()).unwrap();
        assert!(d.pairing.is_empty() && d.left.loc_count() == 1);
        let f = Algebra::full_matrix(p7(), 1).unwrap();
        let (ff, _) = direct_product(&[f.clone(), f]).unwrap();
        let d = duality_report(&ff, &Options::default()).unwrap();
        assert_eq!(d.pairing.len(), 2);
        assert!(d.l_equals_r);
    }
}
