use super::mat::{Mat, Rref};
use super::scalar::Prime;
use crate::error::{Error, Result};

/// A linear subspace of GF(p)^n held as a canonical RREF basis.
///
/// Two subspaces are equal iff their basis matrices are identical, so the
/// derived `PartialEq` is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

/// Sum, intersection and the two containment relations of a pair of subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePair {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub first_contains_second: bool,
    pub equal: bool,
}

impl Subspace {
    pub fn from_rows<I>(p: Prime, ambient: usize, rows: I) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[u32]>,
    {
        Self::from_mat(&Mat::from_residue_rows(p, ambient, rows))
    }

    pub fn from_mat(m: &Mat) -> Self {
        let Rref { matrix, pivots, .. } = m.rref();
        Subspace { ambient: m.cols(), basis: matrix, pivots }
    }

    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(p, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(p: Prime, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; a canonical complement basis.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length must equal ambient dimension");
        let p = self.prime();
        let mut r = v.to_vec();
        for (k, &c) in self.pivots.iter().enumerate() {
            let f = r[c];
            if f == 0 {
                continue;
            }
            for (x, &b) in r.iter_mut().zip(self.basis.row(k)) {
                *x = p.sub(*x, p.mul(f, b));
            }
        }
        r
    }

    pub fn contains_vec(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coefficients of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains_vec(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// The vector with the given coordinates in the RREF basis.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let p = self.prime();
        let mut v = vec![0u32; self.ambient];
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(self.basis.row(k)) {
                *x = p.mul_add(*x, c, b);
            }
        }
        v
    }

    /// Number of vectors, `p^dim`, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        (self.prime().get() as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.prime() != other.prime() {
            return Err(Error::ModulusMismatch(self.prime().get(), other.prime().get()));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::from_mat(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.prime(), self.ambient));
        }
        // (y, z) with y·A + z·B = 0 gives y·A in both spaces.
        let stacked = self.basis.vstack(&other.basis)?;
        let relations = stacked.kernel();
        let k = self.dim();
        let rows: Vec<Vec<u32>> = relations
            .basis
            .row_iter()
            .map(|rel| self.basis.vec_mul(&rel[..k]))
            .collect();
        Ok(Subspace::from_rows(self.prime(), self.ambient, rows))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis.row_iter().all(|r| self.contains_vec(r)))
    }

    pub fn pair(&self, other: &Subspace) -> Result<SubspacePair> {
        Ok(SubspacePair {
            sum: self.sum(other)?,
            intersection: self.intersection(other)?,
            first_contains_second: self.contains(other)?,
            equal: self == other,
        })
    }

    /// Every vector of the subspace, ordered by coordinate tuple.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let p = self.prime().get() as u64;
        let d = self.dim();
        let count = p.checked_pow(d as u32).expect("subspace too large to enumerate");
        (0..count).map(move |mut idx| {
            let mut coords = vec![0u32; d];
            for slot in coords.iter_mut().rev() {
                *slot = (idx % p) as u32;
                idx /= p;
            }
            self.combine(&coords)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p7() -> Prime {
        Prime::new(7).unwrap()
    }

    fn span(rows: &[&[u32]]) -> Subspace {
        Subspace::from_rows(p7(), rows[0].len(), rows.iter().copied())
    }

    #[test]
    fn coordinate_axes() {
        let a = span(&[&[1, 0, 0]]);
        let b = span(&[&[0, 1, 0]]);
        let pair = a.pair(&b).unwrap();
        assert_eq!(pair.sum.dim(), 2);
        assert_eq!(pair.intersection.dim(), 0);
        assert!(!pair.first_contains_second);
        let same = a.pair(&a).unwrap();
        assert_eq!(same.sum, a);
        assert_eq!(same.intersection, a);
        assert!(same.equal);
    }

    #[test]
    fn containment_matches_enumeration() {
        let a = span(&[&[1, 1, 0]]);
        let b = span(&[&[1, 1, 0], &[0, 0, 1]]);
        // Oracle: every GF(7)-combination of a's generator lies among b's combinations.
        let b_elems: Vec<_> = b.elements().collect();
        assert!(a.elements().all(|v| b_elems.contains(&v)));
        assert!(b.contains(&a).unwrap());
        assert_eq!(b.intersection(&a).unwrap(), a);
    }

    #[test]
    fn canonical_equality() {
        let a = span(&[&[1, 2, 3], &[0, 1, 1]]);
        let b = span(&[&[1, 3, 4], &[2, 5, 0]]);
        // 1*(1,2,3)+1*(0,1,1) = (1,3,4); 2*(1,2,3)+1*(0,1,1) = (2,5,0)
        assert_eq!(a, b);
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::full(p7(), 2);
        let b = Subspace::full(p7(), 3);
        assert!(a.sum(&b).is_err());
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0i64..7, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                Mat::from_rows(Prime::new(7).unwrap(), &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_mat()) {
            let r = m.rref();
            prop_assert_eq!(r.rank + m.kernel().dim(), m.rows());
            prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
            for k in m.kernel().basis().row_iter() {
                prop_assert!(m.vec_mul(k).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn dimension_formula(a in proptest::collection::vec(0u32..7, 8), b in proptest::collection::vec(0u32..7, 8)) {
            let sa = Subspace::from_rows(p7(), 4, a.chunks(4));
            let sb = Subspace::from_rows(p7(), 4, b.chunks(4));
            let sum = sa.sum(&sb).unwrap();
            let int = sa.intersection(&sb).unwrap();
            prop_assert_eq!(sa.dim() + sb.dim(), sum.dim() + int.dim());
            prop_assert!(sa.contains(&int).unwrap() && sb.contains(&int).unwrap());
            prop_assert!(sum.contains(&sa).unwrap() && sum.contains(&sb).unwrap());
        }
    }
}
