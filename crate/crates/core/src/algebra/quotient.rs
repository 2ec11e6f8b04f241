use super::{Algebra, Element, Ideal, Side};
use crate::error::{ensure_invariant, Error, Result};
use crate::exact::Mat;

/// `A/I` with the coordinate projection and a linear section.
///
/// The quotient basis is the images of the basis vectors at the non-pivot
/// columns of the ideal's canonical basis.
#[derive(Debug, Clone)]
pub struct Quotient {
    algebra: Algebra,
    ideal: Ideal,
    complement: Vec<usize>,
    projection: Mat,
    section: Mat,
}

impl Quotient {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `dim A × dim A/I`
    pub fn projection(&self) -> &Mat {
        &self.projection
    }

    /// `dim A/I × dim A`
    pub fn section(&self) -> &Mat {
        &self.section
    }

    pub fn project(&self, x: &Element) -> Element {
        let r = self.ideal.space().reduce(x.coeffs());
        Element(self.complement.iter().map(|&c| r[c]).collect())
    }

    pub fn lift(&self, y: &Element) -> Element {
        Element(self.section.vec_mul(y.coeffs()))
    }
}

pub fn quotient_algebra(a: &Algebra, ideal: &Ideal) -> Result<Quotient> {
    if ideal.side() != Side::TwoSided {
        return Err(Error::NotTwoSided);
    }
    if ideal.space().is_full() {
        return Err(Error::WholeAlgebra);
    }
    let p = a.prime();
    let d = a.dim();
    let complement = ideal.space().non_pivots();
    let q = complement.len();
    let project = |v: &[u32]| -> Vec<u32> {
        let r = ideal.space().reduce(v);
        complement.iter().map(|&c| r[c]).collect()
    };
    let projection = Mat::from_residue_rows(p, q, (0..d).map(|i| project(a.basis(i).coeffs())));
    let section = Mat::from_residue_rows(
        p,
        d,
        complement.iter().map(|&c| a.basis(c).into_coeffs()),
    );
    let mut table = Vec::with_capacity(q * q * q);
    for &i in &complement {
        for &j in &complement {
            table.extend(project(a.product_coeffs(i, j)));
        }
    }
    let one = project(a.one().coeffs());
    let names = complement.iter().map(|&c| a.basis_names()[c].clone()).collect();
    let qa = Algebra::from_structure_constants(p, q, table, one, format!("{}/I", a.label()))?.with_names(names);
    ensure_invariant!(
        section.mul(&projection)? == Mat::identity(p, q),
        "quotient section is not a right inverse of the projection"
    );
    Ok(Quotient { algebra: qa, ideal: ideal.clone(), complement, projection, section })
}
