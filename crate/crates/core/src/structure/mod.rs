//! Jacobson radical, block decomposition of the semisimple quotient, and
//! lifted orthogonal idempotents.

mod blockset;

pub use blockset::{BlockSet, MAX_BLOCKS};

use crate::algebra::{quotient_algebra, subalgebra, Algebra, Element, Ideal, Quotient, Side};
use crate::error::{ensure_invariant, Error, Result};
use crate::exact::{Mat, Prime, Subspace};

/// Radical as the kernel of the trace form `(x, y) ↦ tr L(xy)`.
///
/// Correct because the characteristic exceeds the dimension.
pub fn radical(a: &Algebra) -> Result<Ideal> {
    let rad = trace_form(a).kernel();
    let ideal = Ideal::new(a, rad, Side::TwoSided)
        .map_err(|_| Error::Invariant("trace radical is not a two-sided ideal".into()))?;
    ensure_invariant!(ideal.is_nilpotent(a)?, "trace radical of {} is not nilpotent", a.label());
    Ok(ideal)
}

fn trace_form(a: &Algebra) -> Mat {
    let d = a.dim();
    let p = a.prime();
    // tr L(b_k) = Σ_i c[k][i][i]
    let traces: Vec<u32> = (0..d)
        .map(|k| (0..d).fold(0, |acc, i| p.add(acc, a.product_coeffs(k, i)[i])))
        .collect();
    let mut g = Mat::zeros(p, d, d);
    for i in 0..d {
        for j in 0..d {
            let v = a
                .product_coeffs(i, j)
                .iter()
                .zip(&traces)
                .fold(0, |acc, (&c, &t)| p.mul_add(acc, c, t));
            g.set(i, j, v);
        }
    }
    g
}

/// Orthogonal idempotents `1_1, …, 1_s` summing to one whose images are
/// the central block identities of `R/rad`.
#[derive(Debug, Clone)]
pub struct IdempotentFamily {
    idempotents: Vec<Element>,
    block_dims: Vec<usize>,
    block_commutative: Vec<bool>,
    block_center_dims: Vec<usize>,
    rad: Ideal,
    quotient: Quotient,
    central_images: Vec<Element>,
}

impl IdempotentFamily {
    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn s(&self) -> usize {
        self.idempotents.len()
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn block_commutative(&self) -> &[bool] {
        &self.block_commutative
    }

    /// `dim Z(R̄_i)`: block `i` is `M_n(GF(p^k))` with `k` this value.
    pub fn block_center_dims(&self) -> &[usize] {
        &self.block_center_dims
    }

    pub fn rad(&self) -> &Ideal {
        &self.rad
    }

    /// `R/rad` with its projection and section.
    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// Block identities in `R/rad`.
    pub fn central_images(&self) -> &[Element] {
        &self.central_images
    }

    /// `e_I = Σ_{i∈I} 1_i`
    pub fn subset_sum(&self, a: &Algebra, set: BlockSet) -> Element {
        set.indices().fold(a.zero(), |acc, i| a.add(&acc, &self.idempotents[i]))
    }
}

pub fn block_decomposition(a: &Algebra) -> Result<IdempotentFamily> {
    let rad = radical(a)?;
    let quotient = quotient_algebra(a, &rad)?;
    let qa = quotient.algebra();
    ensure_invariant!(trace_form(qa).is_invertible(), "semisimple quotient has a degenerate trace form");

    let central_images = primitive_central_idempotents(qa)?;
    let s = central_images.len();
    ensure_invariant!(s <= MAX_BLOCKS, "too many blocks ({s})");

    let iterations = ceil_log2(a.dim()) + 1;
    let mut idempotents = Vec::with_capacity(s);
    let mut f = a.zero();
    for (k, ebar) in central_images.iter().enumerate() {
        let e = if k + 1 == s {
            a.complement(&f)
        } else {
            let c = a.complement(&f);
            let x = quotient.lift(ebar);
            let mut y = a.mul3(&c, &x, &c);
            for _ in 0..iterations {
                let y2 = a.mul(&y, &y);
                let y3 = a.mul(&y2, &y);
                y = a.sub(&a.scale(3, &y2), &a.scale(2, &y3));
            }
            y
        };
        ensure_invariant!(a.is_idempotent(&e), "lifted block idempotent {k} is not idempotent");
        ensure_invariant!(
            a.mul(&e, &f).is_zero() && a.mul(&f, &e).is_zero(),
            "lifted block idempotent {k} is not orthogonal to the earlier ones"
        );
        ensure_invariant!(&quotient.project(&e) == ebar, "lifted block idempotent {k} has the wrong image");
        f = a.add(&f, &e);
        idempotents.push(e);
    }
    ensure_invariant!(f == a.one(), "block idempotents do not sum to one");

    let mut block_dims = Vec::with_capacity(s);
    let mut block_commutative = Vec::with_capacity(s);
    let mut block_center_dims = Vec::with_capacity(s);
    let zq = qa.center();
    for ebar in &central_images {
        let zrows = zq.basis().row_iter().map(|r| qa.mul(ebar, &Element::from_residues(r.to_vec())).into_coeffs());
        block_center_dims.push(Subspace::from_rows(qa.prime(), qa.dim(), zrows).dim());
        let block = qa.principal(ebar, Side::Right);
        block_dims.push(block.dim());
        let basis: Vec<Element> = block.basis().row_iter().map(|r| Element::from_residues(r.to_vec())).collect();
        let comm = basis
            .iter()
            .all(|x| basis.iter().all(|y| qa.mul(x, y) == qa.mul(y, x)));
        block_commutative.push(comm);
    }

    Ok(IdempotentFamily { idempotents, block_dims, block_commutative, block_center_dims, rad, quotient, central_images })
}

fn ceil_log2(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// Primitive central idempotents of a semisimple algebra, in canonical order
/// (leading nonzero coordinate, then lexicographic).
fn primitive_central_idempotents(a: &Algebra) -> Result<Vec<Element>> {
    let p = a.prime();
    let z = a.center();
    let zb: Vec<Element> = z.basis().row_iter().map(|r| Element::from_residues(r.to_vec())).collect();
    // F = {z : z^p = z} is the left kernel of the rows z_j^p − z_j.
    let frob = Mat::from_residue_rows(
        p,
        a.dim(),
        zb.iter().map(|zj| a.sub(&a.pow(zj, p.get() as u64), zj).into_coeffs()),
    );
    let coeffs = frob.kernel();
    let fixed: Vec<Element> = coeffs
        .basis()
        .row_iter()
        .map(|c| Element::from_residues(z.basis().vec_mul(c)))
        .collect();

    let mut blocks = vec![a.one()];
    for f in &fixed {
        let mut next = Vec::with_capacity(blocks.len());
        for c in blocks {
            next.extend(split_block(a, &c, &a.mul(&c, f))?);
        }
        blocks = next;
    }
    ensure_invariant!(blocks.len() == fixed.len(), "split into {} blocks, expected {}", blocks.len(), fixed.len());
    blocks.sort_by(|x, y| leading_index(x).cmp(&leading_index(y)).then_with(|| x.cmp(y)));
    Ok(blocks)
}

fn leading_index(x: &Element) -> usize {
    x.coeffs().iter().position(|&c| c != 0).unwrap_or(usize::MAX)
}

/// Splits the central idempotent `c` along the eigenvalues of `y ∈ cF`.
fn split_block(a: &Algebra, c: &Element, y: &Element) -> Result<Vec<Element>> {
    let p = a.prime();
    let poly = minimal_polynomial(a, c, y);
    let roots: Vec<u32> = (0..p.get()).filter(|&t| eval_poly(p, &poly, t) == 0).collect();
    ensure_invariant!(
        roots.len() + 1 == poly.len(),
        "minimal polynomial of a Frobenius-fixed element does not split into distinct roots"
    );
    if roots.len() == 1 {
        return Ok(vec![c.clone()]);
    }
    let mut out = Vec::with_capacity(roots.len());
    for &alpha in &roots {
        let mut e = c.clone();
        for &beta in roots.iter().filter(|&&b| b != alpha) {
            let factor = a.sub(y, &a.scale(beta, c));
            let denom = p.inv(p.sub(alpha, beta))?;
            e = a.scale(denom, &a.mul(&e, &factor));
        }
        ensure_invariant!(a.is_idempotent(&e) && !e.is_zero(), "Lagrange idempotent is not a nonzero idempotent");
        out.push(e);
    }
    Ok(out)
}

/// Monic minimal polynomial of `y` in the unital algebra `cA`, low degree first.
fn minimal_polynomial(a: &Algebra, c: &Element, y: &Element) -> Vec<u32> {
    let p = a.prime();
    let mut powers = vec![c.clone()];
    loop {
        let next = a.mul(powers.last().expect("nonempty"), y);
        let m = Mat::from_residue_rows(p, a.dim(), powers.iter().map(|v| v.coeffs().to_vec()));
        if let Some(coef) = m.solve_left(next.coeffs()) {
            let mut poly: Vec<u32> = coef.iter().map(|&v| p.neg(v)).collect();
            poly.push(1);
            return poly;
        }
        powers.push(next);
    }
}

fn eval_poly(p: Prime, poly: &[u32], t: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| p.add(p.mul(acc, t), c))
}

/// `|R*|`, from the block structure: `p^dim rad · Π |GL_n(p^k)|`.
/// `None` when the count does not fit in 128 bits.
pub fn unit_count(a: &Algebra) -> Result<Option<u128>> {
    let fam = block_decomposition(a)?;
    Ok(unit_count_of(&fam, a.prime()))
}

pub(crate) fn unit_count_of(fam: &IdempotentFamily, p: Prime) -> Option<u128> {
    let p = p.get() as u128;
    let mut total = p.checked_pow(fam.rad().dim() as u32)?;
    for (&d, &k) in fam.block_dims().iter().zip(fam.block_center_dims()) {
        let n2 = d / k;
        let n = (1..=n2).find(|n| n * n == n2)?;
        let q = p.checked_pow(k as u32)?;
        let qn = q.checked_pow(n as u32)?;
        for i in 0..n {
            total = total.checked_mul(qn - q.checked_pow(i as u32)?)?;
        }
    }
    Some(total)
}

/// Blocks met by `(𝔞 + rad)/rad`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSupport {
    pub blocks: BlockSet,
    pub in_radical: bool,
}

pub fn ideal_block_support(fam: &IdempotentFamily, ideal: &Ideal) -> Result<BlockSupport> {
    if ideal.side() != Side::TwoSided {
        return Err(Error::NotTwoSided);
    }
    let q = fam.quotient();
    let images: Vec<Element> = ideal.elements_basis().iter().map(|x| q.project(x)).collect();
    let blocks = BlockSet::from_indices(
        fam.central_images()
            .iter()
            .enumerate()
            .filter(|(_, e)| images.iter().any(|x| !q.algebra().mul(e, x).is_zero()))
            .map(|(j, _)| j),
    );
    Ok(BlockSupport { blocks, in_radical: blocks.is_empty() })
}

/// Primitive central idempotents of `a` itself, lifted through the center.
pub fn central_idempotents(a: &Algebra) -> Result<Vec<Element>> {
    let z = a.center();
    let (za, emb) = subalgebra(a, &z, &a.one(), format!("Z({})", a.label()))?;
    let fam = block_decomposition(&za)?;
    let mut out: Vec<Element> = fam
        .idempotents()
        .iter()
        .map(|e| Element::from_residues(emb.vec_mul(e.coeffs())))
        .collect();
    for e in &out {
        ensure_invariant!(a.is_idempotent(e) && a.is_central(e), "center idempotent is not a central idempotent");
    }
    out.sort_by(|x, y| leading_index(x).cmp(&leading_index(y)).then_with(|| x.cmp(y)));
    Ok(out)
}
