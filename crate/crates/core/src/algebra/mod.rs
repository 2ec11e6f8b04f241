//! Finite-dimensional associative unital algebras over GF(p).
//!
//! An [`Algebra`] is held as structure constants in a fixed basis. Elements
//! are coefficient vectors in that basis, and all arithmetic goes through
//! the owning algebra.

mod build;
mod ideal;
mod quotient;

use std::fmt;

use rand::Rng;

pub use build::{build_algebra, direct_product, opposite_algebra, subalgebra, AlgebraDesc, MatrixModel, MAX_GENERATED_DIM};
pub use ideal::{ideal_combine, ideal_generated, Ideal, IdealOp};
pub use quotient::{quotient_algebra, Quotient};

use crate::error::{ensure_invariant, Error, Result};
use crate::exact::{Mat, Prime, Subspace};

/// Which multiplication an operation or ideal refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "twosided",
        })
    }
}

/// Coefficient vector of an algebra element. Ordered lexicographically,
/// which is the canonical order used for enumerations and counterexamples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<u32>);

impl Element {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub(crate) fn from_residues(v: Vec<u32>) -> Self {
        Element(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    p: Prime,
    dim: usize,
    /// `table[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `b_i b_j`.
    table: Vec<u32>,
    one: Element,
    label: String,
    basis_names: Vec<String>,
    matrix_model: Option<MatrixModel>,
}

/// Basic multiplicative classification of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClass {
    pub is_unit: bool,
    pub inverse: Option<Element>,
    pub is_nilpotent: bool,
    pub is_idempotent: bool,
    pub is_left_regular: bool,
}

impl Algebra {
    /// Validates structure constants: `p > dim`, associativity on basis
    /// triples, and `one` a two-sided identity.
    pub fn from_structure_constants(
        p: Prime,
        dim: usize,
        table: Vec<u32>,
        one: Vec<u32>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("algebra dimension must be positive".into()));
        }
        if p.get() as usize <= dim {
            return Err(Error::PrimeTooSmall { p: p.get(), dim });
        }
        if table.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: table.len() });
        }
        if one.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: one.len() });
        }
        let basis_names = (0..dim).map(|i| format!("b{i}")).collect();
        let a = Algebra {
            p,
            dim,
            table,
            one: Element(one),
            label: label.into(),
            basis_names,
            matrix_model: None,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let bij = Element(self.product_coeffs(i, j).to_vec());
                for k in 0..d {
                    let bk = self.basis(k);
                    let lhs = self.mul(&bij, &bk);
                    let bjk = Element(self.product_coeffs(j, k).to_vec());
                    let rhs = self.mul(&self.basis(i), &bjk);
                    if lhs != rhs {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..d {
            let bi = self.basis(i);
            if self.mul(&self.one, &bi) != bi || self.mul(&bi, &self.one) != bi {
                return Err(Error::MissingIdentity);
            }
        }
        Ok(())
    }

    pub(crate) fn with_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.dim);
        self.basis_names = names;
        self
    }

    pub(crate) fn with_matrix_model(mut self, model: Option<MatrixModel>) -> Self {
        self.matrix_model = model;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn matrix_model(&self) -> Option<&MatrixModel> {
        self.matrix_model.as_ref()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Same prime, dimension, structure constants and identity.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.p == other.p && self.dim == other.dim && self.table == other.table && self.one == other.one
    }

    /// Coefficients of `b_i b_j`.
    pub fn product_coeffs(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    pub fn one(&self) -> Element {
        self.one.clone()
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.dim])
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        Element(v)
    }

    /// Validates a coefficient vector and reduces it mod p.
    pub fn element(&self, coeffs: &[i64]) -> Result<Element> {
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coeffs.len() });
        }
        Ok(Element(coeffs.iter().map(|&c| self.p.reduce(c)).collect()))
    }

    pub fn element_from_residues(&self, coeffs: Vec<u32>) -> Result<Element> {
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coeffs.len() });
        }
        if coeffs.iter().any(|&c| c >= self.p.get()) {
            return Err(Error::InvalidInput("coefficient is not a reduced residue".into()));
        }
        Ok(Element(coeffs))
    }

    /// Element with the given matrix image, for algebras built from matrices.
    pub fn element_from_matrix(&self, m: &Mat) -> Result<Element> {
        let model = self
            .matrix_model
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("{} has no matrix basis", self.label)))?;
        model.coordinates(m).map(Element)
    }

    pub fn element_to_matrix(&self, x: &Element) -> Option<Mat> {
        self.matrix_model.as_ref().map(|m| m.image(x.coeffs()))
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let d = self.dim;
        debug_assert!(x.0.len() == d && y.0.len() == d);
        let p = self.p;
        let q = p.get() as u64;
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.0.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = p.mul(xi, yj) as u64;
                for (slot, &t) in acc.iter_mut().zip(self.product_coeffs(i, j)) {
                    *slot += c * t as u64;
                }
            }
            // Keep the accumulator far from overflow for large dimensions.
            if d > 32 {
                acc.iter_mut().for_each(|s| *s %= q);
            }
        }
        Element(acc.into_iter().map(|s| (s % q) as u32).collect())
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        Element(x.0.iter().zip(&y.0).map(|(&a, &b)| self.p.add(a, b)).collect())
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        Element(x.0.iter().zip(&y.0).map(|(&a, &b)| self.p.sub(a, b)).collect())
    }

    pub fn neg(&self, x: &Element) -> Element {
        Element(x.0.iter().map(|&a| self.p.neg(a)).collect())
    }

    pub fn scale(&self, c: u32, x: &Element) -> Element {
        Element(x.0.iter().map(|&a| self.p.mul(a, c)).collect())
    }

    /// `1 - x`
    pub fn complement(&self, x: &Element) -> Element {
        self.sub(&self.one, x)
    }

    pub fn pow(&self, x: &Element, mut exp: u64) -> Element {
        let mut acc = self.one();
        let mut base = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn mul3(&self, x: &Element, y: &Element, z: &Element) -> Element {
        self.mul(&self.mul(x, y), z)
    }

    /// Matrix of `y ↦ x·y` (`Side::Left`) or `y ↦ y·x` (`Side::Right`) acting on
    /// row vectors, so `coeffs(y)·M = coeffs(xy)` for the left map.
    ///
    /// With rows as inputs, `L(xy) = L(y)·L(x)` and `R(xy) = R(x)·R(y)`.
    ///
    /// # Panics
    /// On `Side::TwoSided`, which has no single multiplication map.
    pub fn regular_matrix(&self, x: &Element, side: Side) -> Mat {
        let d = self.dim;
        let rows: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                let bi = self.basis(i);
                match side {
                    Side::Left => self.mul(x, &bi).0,
                    Side::Right => self.mul(&bi, x).0,
                    Side::TwoSided => panic!("regular_matrix needs a one-sided multiplication"),
                }
            })
            .collect();
        Mat::from_residue_rows(self.p, d, rows)
    }

    pub fn is_unit(&self, x: &Element) -> bool {
        self.regular_matrix(x, Side::Left).is_invertible()
    }

    /// Two-sided inverse, solved from `x·y = 1`.
    pub fn inverse(&self, x: &Element) -> Option<Element> {
        let y = Element(self.regular_matrix(x, Side::Left).solve_left(self.one.coeffs())?);
        if self.mul(x, &y) == self.one && self.mul(&y, x) == self.one {
            Some(y)
        } else {
            None
        }
    }

    pub fn is_nilpotent(&self, x: &Element) -> bool {
        self.regular_matrix(x, Side::Left)
            .pow(self.dim as u64)
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }

    pub fn is_idempotent(&self, x: &Element) -> bool {
        &self.mul(x, x) == x
    }

    /// `r·x = 0` forces `r = 0`.
    pub fn is_left_regular(&self, x: &Element) -> bool {
        self.regular_matrix(x, Side::Right).kernel().is_zero()
    }

    pub fn is_central(&self, x: &Element) -> bool {
        (0..self.dim).all(|k| {
            let b = self.basis(k);
            self.mul(x, &b) == self.mul(&b, x)
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.product_coeffs(i, j) == self.product_coeffs(j, i)))
    }

    pub fn classify_element_basic(&self, x: &Element) -> Result<ElementClass> {
        let inverse = self.inverse(x);
        let is_unit = self.is_unit(x);
        ensure_invariant!(is_unit == inverse.is_some(), "unit test and inverse disagree for {x:?}");
        let is_left_regular = self.is_left_regular(x);
        ensure_invariant!(!is_left_regular || is_unit, "left regular non-unit {x:?}");
        Ok(ElementClass {
            is_unit,
            inverse,
            is_nilpotent: self.is_nilpotent(x),
            is_idempotent: self.is_idempotent(x),
            is_left_regular,
        })
    }

    /// `R·x` (`Side::Left`) or `x·R` (`Side::Right`) as a subspace.
    pub fn principal(&self, x: &Element, side: Side) -> Subspace {
        let m = match side {
            Side::Left => self.regular_matrix(x, Side::Right),
            Side::Right => self.regular_matrix(x, Side::Left),
            Side::TwoSided => return ideal_generated(self, std::slice::from_ref(x), Side::TwoSided).space().clone(),
        };
        Subspace::from_mat(&m)
    }

    /// The center as a subspace.
    pub fn center(&self) -> Subspace {
        // z ↦ (z b_k − b_k z)_k, one block of columns per k.
        let d = self.dim;
        let mut m = Mat::zeros(self.p, d, d * d);
        for k in 0..d {
            let bk = self.basis(k);
            for i in 0..d {
                let bi = self.basis(i);
                let c = self.sub(&self.mul(&bi, &bk), &self.mul(&bk, &bi));
                for (l, &v) in c.0.iter().enumerate() {
                    m.set(i, k * d + l, v);
                }
            }
        }
        m.kernel()
    }

    /// `p^dim`, saturating.
    pub fn element_count(&self) -> u128 {
        (self.p.get() as u128).checked_pow(self.dim as u32).unwrap_or(u128::MAX)
    }

    /// The `idx`-th element in canonical (lexicographic) order.
    pub fn element_at(&self, mut idx: u64) -> Element {
        let p = self.p.get() as u64;
        let mut v = vec![0u32; self.dim];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        Element(v)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        Element((0..self.dim).map(|_| rng.gen_range(0..self.p.get())).collect())
    }

    /// Human-readable linear combination of basis names.
    pub fn format_element(&self, x: &Element) -> String {
        let terms: Vec<String> = x
            .0
            .iter()
            .zip(&self.basis_names)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, n)| if c == 1 { n.clone() } else { format!("{c}*{n}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p7() -> Prime {
        Prime::new(7).unwrap()
    }

    fn l2() -> Algebra {
        Algebra::lower_triangular(p7(), 2).unwrap()
    }

    fn mat(a: &Algebra, rows: &[&[i64]]) -> Element {
        let m = Mat::from_rows(a.prime(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        a.element_from_matrix(&m).unwrap()
    }

    #[test]
    fn regular_matrix_of_one_is_identity() {
        let a = l2();
        assert_eq!(a.regular_matrix(&a.one(), Side::Left), Mat::identity(p7(), 3));
        assert_eq!(a.regular_matrix(&a.one(), Side::Right), Mat::identity(p7(), 3));
    }

    #[test]
    fn left_regular_matrix_of_e21() {
        // Basis (E11, E21, E22): E21·E11 = E21, E21·E21 = 0, E21·E22 = 0.
        let a = l2();
        let m = a.regular_matrix(&a.basis(1), Side::Left);
        let expected = Mat::from_rows(p7(), &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn regular_matrix_defining_property() {
        let a = Algebra::full_matrix(p7(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = a.random_element(&mut rng);
            let y = a.random_element(&mut rng);
            let xy = a.mul(&x, &y);
            assert_eq!(a.regular_matrix(&x, Side::Left).vec_mul(y.coeffs()), xy.coeffs());
            assert_eq!(a.regular_matrix(&y, Side::Right).vec_mul(x.coeffs()), xy.coeffs());
            let lx = a.regular_matrix(&x, Side::Left);
            let ly = a.regular_matrix(&y, Side::Left);
            assert_eq!(ly.mul(&lx).unwrap(), a.regular_matrix(&xy, Side::Left));
        }
    }

    #[test]
    fn classify_basic_examples() {
        let m2 = Algebra::full_matrix(p7(), 2).unwrap();
        let c = m2.classify_element_basic(&m2.basis(0)).unwrap();
        assert!(!c.is_unit && !c.is_nilpotent && c.is_idempotent);

        let t7 = Algebra::truncated_poly(p7(), 2).unwrap();
        let c = t7.classify_element_basic(&t7.basis(1)).unwrap();
        assert!(c.is_nilpotent && !c.is_unit);

        let a = l2();
        let x = mat(&a, &[&[2, 0], &[1, 1]]);
        let c = a.classify_element_basic(&x).unwrap();
        assert!(c.is_unit && c.is_left_regular);
        let inv = c.inverse.unwrap();
        assert_eq!(a.mul(&x, &inv), a.one());
        // [[2,0],[1,1]]^{-1} = [[4,0],[-4,1]] over GF(7).
        assert_eq!(inv, mat(&a, &[&[4, 0], &[3, 1]]));
    }

    #[test]
    fn left_regular_implies_unit_exhaustive_l2_5() {
        let a = Algebra::lower_triangular(Prime::new(5).unwrap(), 2).unwrap();
        for idx in 0..a.element_count() as u64 {
            let x = a.element_at(idx);
            let c = a.classify_element_basic(&x).unwrap();
            assert_eq!(c.is_left_regular, c.is_unit);
        }
    }

    #[test]
    fn element_validation() {
        let a = l2();
        assert!(matches!(a.element(&[1, 2]), Err(Error::DimensionMismatch { .. })));
        assert_eq!(a.element(&[-1, 8, 0]).unwrap().coeffs(), &[6, 1, 0]);
    }

    #[test]
    fn center_of_matrix_ring_is_scalars() {
        let m2 = Algebra::full_matrix(p7(), 2).unwrap();
        let z = m2.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains_vec(m2.one().coeffs()));
    }
}
