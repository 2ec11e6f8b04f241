use super::{Algebra, Element, Side};
use crate::error::{ensure_invariant, Error, Result};
use crate::exact::{Mat, Subspace};

/// A one- or two-sided ideal, stored as a canonical subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
    side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Intersection,
    Product,
}

impl Ideal {
    /// Checks that `space` is closed under multiplication by `a` on `side`.
    pub fn new(a: &Algebra, space: Subspace, side: Side) -> Result<Self> {
        if space.ambient_dim() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), got: space.ambient_dim() });
        }
        if !Self::is_closed(a, &space, side) {
            return Err(match side {
                Side::Left => Error::NotClosed("left ideal"),
                Side::Right => Error::NotClosed("right ideal"),
                Side::TwoSided => Error::NotTwoSided,
            });
        }
        Ok(Ideal { space, side })
    }

    pub fn zero(a: &Algebra, side: Side) -> Self {
        Ideal { space: Subspace::zero(a.prime(), a.dim()), side }
    }

    pub fn whole(a: &Algebra, side: Side) -> Self {
        Ideal { space: Subspace::full(a.prime(), a.dim()), side }
    }

    pub fn is_closed(a: &Algebra, space: &Subspace, side: Side) -> bool {
        let check = |s: Side| {
            space.basis().row_iter().all(|v| {
                let v = Element(v.to_vec());
                (0..a.dim()).all(|k| {
                    let b = a.basis(k);
                    let w = match s {
                        Side::Left => a.mul(&b, &v),
                        _ => a.mul(&v, &b),
                    };
                    space.contains_vec(w.coeffs())
                })
            })
        };
        match side {
            Side::Left => check(Side::Left),
            Side::Right => check(Side::Right),
            Side::TwoSided => check(Side::Left) && check(Side::Right),
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains_vec(x.coeffs())
    }

    pub fn elements_basis(&self) -> Vec<Element> {
        self.space.basis().row_iter().map(|r| Element(r.to_vec())).collect()
    }

    /// `I^k` for a two-sided ideal (`I^0 = R`).
    pub fn power(&self, a: &Algebra, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::whole(a, Side::TwoSided);
        for _ in 0..k {
            acc = ideal_combine(a, &acc, self, IdealOp::Product)?;
        }
        Ok(acc)
    }

    /// `I^dim = 0`.
    pub fn is_nilpotent(&self, a: &Algebra) -> Result<bool> {
        Ok(self.power(a, a.dim() as u32)?.is_zero())
    }
}

/// Smallest ideal on `side` containing `gens`.
pub fn ideal_generated(a: &Algebra, gens: &[Element], side: Side) -> Ideal {
    let p = a.prime();
    let d = a.dim();
    let mut space = Subspace::from_rows(p, d, gens.iter().map(|g| g.coeffs().to_vec()));
    loop {
        let mut rows: Vec<Vec<u32>> = space.basis().row_iter().map(|r| r.to_vec()).collect();
        for v in space.basis().row_iter() {
            let v = Element(v.to_vec());
            for k in 0..d {
                let b = a.basis(k);
                if matches!(side, Side::Left | Side::TwoSided) {
                    rows.push(a.mul(&b, &v).0);
                }
                if matches!(side, Side::Right | Side::TwoSided) {
                    rows.push(a.mul(&v, &b).0);
                }
            }
        }
        let next = Subspace::from_rows(p, d, rows);
        if next.dim() == space.dim() {
            return Ideal { space, side };
        }
        space = next;
    }
}

fn meet_side(x: Side, y: Side) -> Result<Side> {
    match (x, y) {
        (s, t) if s == t => Ok(s),
        (Side::TwoSided, s) | (s, Side::TwoSided) => Ok(s),
        _ => Err(Error::SideMismatch),
    }
}

/// Sum, intersection or product of ideals. Products need two-sided inputs
/// and are closed again to a two-sided ideal.
pub fn ideal_combine(a: &Algebra, x: &Ideal, y: &Ideal, op: IdealOp) -> Result<Ideal> {
    match op {
        IdealOp::Sum | IdealOp::Intersection => {
            let side = meet_side(x.side, y.side)?;
            let space = if op == IdealOp::Sum {
                x.space.sum(&y.space)?
            } else {
                x.space.intersection(&y.space)?
            };
            ensure_invariant!(Ideal::is_closed(a, &space, side), "combined ideal is not closed");
            Ok(Ideal { space, side })
        }
        IdealOp::Product => {
            if x.side != Side::TwoSided || y.side != Side::TwoSided {
                return Err(Error::SideMismatch);
            }
            let mut rows = Vec::new();
            for u in x.elements_basis() {
                for v in y.elements_basis() {
                    rows.push(a.mul(&u, &v).0);
                }
            }
            let gens: Vec<Element> = Subspace::from_rows(a.prime(), a.dim(), rows)
                .basis()
                .row_iter()
                .map(|r| Element(r.to_vec()))
                .collect();
            let closed = ideal_generated(a, &gens, Side::TwoSided);
            ensure_invariant!(
                closed.space.contains(&Subspace::from_mat(&stack(a, &gens)))?,
                "product closure lost generators"
            );
            Ok(closed)
        }
    }
}

fn stack(a: &Algebra, xs: &[Element]) -> Mat {
    Mat::from_residue_rows(a.prime(), a.dim(), xs.iter().map(|x| x.coeffs().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Prime;

    fn l2() -> Algebra {
        Algebra::lower_triangular(Prime::new(7).unwrap(), 2).unwrap()
    }

    #[test]
    fn generated_ideals_in_l2() {
        let a = l2();
        let e21 = a.basis(1);
        let j = ideal_generated(&a, std::slice::from_ref(&e21), Side::TwoSided);
        assert_eq!(j.dim(), 1);
        assert!(j.is_nilpotent(&a).unwrap());
        let e11 = a.basis(0);
        // R·E11 = span{E11, E21}; E11·R = span{E11}.
        assert_eq!(ideal_generated(&a, std::slice::from_ref(&e11), Side::Left).dim(), 2);
        assert_eq!(ideal_generated(&a, std::slice::from_ref(&e11), Side::Right).dim(), 1);
        assert_eq!(ideal_generated(&a, &[e11], Side::TwoSided).dim(), 2);
    }

    #[test]
    fn combine_rules() {
        let a = l2();
        let left = ideal_generated(&a, &[a.basis(0)], Side::Left);
        let right = ideal_generated(&a, &[a.basis(2)], Side::Right);
        assert_eq!(ideal_combine(&a, &left, &right, IdealOp::Sum), Err(Error::SideMismatch));
        let j = ideal_generated(&a, &[a.basis(1)], Side::TwoSided);
        let jj = ideal_combine(&a, &j, &j, IdealOp::Product).unwrap();
        assert!(jj.is_zero());
        let meet = ideal_combine(&a, &left, &j, IdealOp::Intersection).unwrap();
        assert_eq!(meet.side(), Side::Left);
        assert_eq!(meet.dim(), 1);
        assert_eq!(ideal_combine(&a, &left, &j, IdealOp::Product), Err(Error::SideMismatch));
    }

    #[test]
    fn closure_is_checked() {
        let a = l2();
        let s = Subspace::from_rows(a.prime(), 3, [vec![0, 0, 1]]);
        assert!(Ideal::new(&a, s.clone(), Side::Left).is_ok());
        assert!(Ideal::new(&a, s.clone(), Side::Right).is_err());
        assert_eq!(Ideal::new(&a, s, Side::TwoSided), Err(Error::NotTwoSided));
    }
}
