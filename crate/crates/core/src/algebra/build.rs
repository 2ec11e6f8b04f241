//! Algebra constructors: matrix families, truncated polynomials, products,
//! opposites and subalgebras.

use std::ops::Range;

use super::{Algebra, Element};
use crate::error::{ensure_invariant, Error, Result};
use crate::exact::{Mat, Prime, Subspace};

/// Upper bound on the dimension of a generated matrix subalgebra.
pub const MAX_GENERATED_DIM: usize = 64;

/// Description of an algebra, as accepted by [`build_algebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraDesc {
    /// `mul_table[i][j]` holds the coefficients of `b_i b_j`.
    StructureConstants { dim: usize, one: Vec<i64>, mul_table: Vec<Vec<Vec<i64>>> },
    LowerTriangular(usize),
    UpperTriangular(usize),
    FullMatrix(usize),
    /// `GF(p)[x]/(x^n)`
    TruncatedPoly(usize),
    Product(Vec<AlgebraDesc>),
    Opposite(Box<AlgebraDesc>),
    /// Unital subalgebra of `M_n` generated by the given matrices.
    MatrixSubalgebra { ambient_n: usize, generators: Vec<Vec<Vec<i64>>> },
}

/// Faithful representation by `n × n` matrices: basis element `b_i` maps to `images[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModel {
    n: usize,
    images: Vec<Mat>,
    stacked: Mat,
}

impl MatrixModel {
    pub fn new(n: usize, images: Vec<Mat>) -> Result<Self> {
        let p = images
            .first()
            .map(|m| m.prime())
            .ok_or_else(|| Error::InvalidInput("empty matrix basis".into()))?;
        let rows: Vec<Vec<u32>> = images.iter().map(|m| m.data().to_vec()).collect();
        let stacked = Mat::from_residue_rows(p, n * n, rows);
        ensure_invariant!(stacked.rank() == images.len(), "matrix images are linearly dependent");
        Ok(MatrixModel { n, images, stacked })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn image(&self, coeffs: &[u32]) -> Mat {
        let flat = self.stacked.vec_mul(coeffs);
        let p = self.stacked.prime();
        Mat::from_residue_rows(p, self.n, flat.chunks(self.n).map(|r| r.to_vec()))
    }

    pub fn coordinates(&self, m: &Mat) -> Result<Vec<u32>> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n * self.n, got: m.rows() * m.cols() });
        }
        if m.prime() != self.stacked.prime() {
            return Err(Error::ModulusMismatch(m.prime().get(), self.stacked.prime().get()));
        }
        self.stacked
            .solve_left(m.data())
            .ok_or_else(|| Error::InvalidInput("matrix is not in the algebra".into()))
    }

    fn transposed(&self) -> Result<Self> {
        MatrixModel::new(self.n, self.images.iter().map(Mat::transpose).collect())
    }
}

pub fn build_algebra(p: Prime, desc: &AlgebraDesc) -> Result<Algebra> {
    match desc {
        AlgebraDesc::StructureConstants { dim, one, mul_table } => {
            let dim = *dim;
            if mul_table.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: mul_table.len() });
            }
            let mut table = Vec::with_capacity(dim * dim * dim);
            for row in mul_table {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
                }
                for prod in row {
                    if prod.len() != dim {
                        return Err(Error::DimensionMismatch { expected: dim, got: prod.len() });
                    }
                    table.extend(prod.iter().map(|&c| p.reduce(c)));
                }
            }
            let one = one.iter().map(|&c| p.reduce(c)).collect();
            Algebra::from_structure_constants(p, dim, table, one, "custom")
        }
        AlgebraDesc::LowerTriangular(n) => Algebra::lower_triangular(p, *n),
        AlgebraDesc::UpperTriangular(n) => Algebra::upper_triangular(p, *n),
        AlgebraDesc::FullMatrix(n) => Algebra::full_matrix(p, *n),
        AlgebraDesc::TruncatedPoly(n) => Algebra::truncated_poly(p, *n),
        AlgebraDesc::Product(parts) => {
            let factors = parts.iter().map(|d| build_algebra(p, d)).collect::<Result<Vec<_>>>()?;
            direct_product(&factors).map(|(a, _)| a)
        }
        AlgebraDesc::Opposite(inner) => opposite_algebra(&build_algebra(p, inner)?),
        AlgebraDesc::MatrixSubalgebra { ambient_n, generators } => {
            let gens = generators
                .iter()
                .map(|g| Mat::from_rows(p, g))
                .collect::<Result<Vec<_>>>()?;
            Algebra::matrix_subalgebra(p, *ambient_n, &gens)
        }
    }
}

fn matrix_unit_name(n: usize, flat: &[u32]) -> Option<String> {
    let mut nz = flat.iter().enumerate().filter(|(_, &v)| v != 0);
    let (idx, &v) = nz.next()?;
    if v != 1 || nz.next().is_some() {
        return None;
    }
    Some(if n < 10 {
        format!("E_{}{}", idx / n + 1, idx % n + 1)
    } else {
        format!("E_{},{}", idx / n + 1, idx % n + 1)
    })
}

fn flat_mat(m: &Mat) -> Vec<u32> {
    m.data().to_vec()
}

impl Algebra {
    /// The algebra whose basis is the canonical basis of a multiplicatively
    /// closed span of `n × n` matrices containing the identity.
    pub fn from_matrix_space(p: Prime, n: usize, space: &Subspace, label: impl Into<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix size must be positive".into()));
        }
        let dim = space.dim();
        if dim == 0 {
            return Err(Error::InvalidInput("empty matrix span".into()));
        }
        if p.get() as usize <= dim {
            return Err(Error::PrimeTooSmall { p: p.get(), dim });
        }
        let images: Vec<Mat> = space
            .basis()
            .row_iter()
            .map(|r| Mat::from_residue_rows(p, n, r.chunks(n).map(|c| c.to_vec())))
            .collect();
        let mut table = Vec::with_capacity(dim * dim * dim);
        for x in &images {
            for y in &images {
                let prod = x.mul(y)?;
                let c = space.coordinates(prod.data()).ok_or(Error::NotClosed("matrix span"))?;
                table.extend(c);
            }
        }
        let one = space
            .coordinates(&flat_mat(&Mat::identity(p, n)))
            .ok_or(Error::MissingIdentity)?;
        let names = images
            .iter()
            .enumerate()
            .map(|(k, m)| matrix_unit_name(n, m.data()).unwrap_or_else(|| format!("b{k}")))
            .collect();
        let model = MatrixModel::new(n, images)?;
        Ok(Algebra::from_structure_constants(p, dim, table, one, label)?
            .with_names(names)
            .with_matrix_model(Some(model)))
    }

    fn matrix_units(p: Prime, n: usize, keep: impl Fn(usize, usize) -> bool) -> Subspace {
        let rows = (0..n * n).filter(|&f| keep(f / n, f % n)).map(|f| {
            let mut v = vec![0u32; n * n];
            v[f] = 1;
            v
        });
        Subspace::from_rows(p, n * n, rows)
    }

    /// Lower triangular `n × n` matrices, basis `E_ij` (`i ≥ j`) in row-major order.
    pub fn lower_triangular(p: Prime, n: usize) -> Result<Self> {
        let s = Self::matrix_units(p, n, |i, j| i >= j);
        Self::from_matrix_space(p, n, &s, format!("L{n}_{}", p.get()))
    }

    pub fn upper_triangular(p: Prime, n: usize) -> Result<Self> {
        let s = Self::matrix_units(p, n, |i, j| i <= j);
        Self::from_matrix_space(p, n, &s, format!("U{n}_{}", p.get()))
    }

    pub fn full_matrix(p: Prime, n: usize) -> Result<Self> {
        let s = Self::matrix_units(p, n, |_, _| true);
        let label = if n == 1 { format!("GF{}", p.get()) } else { format!("M{n}_{}", p.get()) };
        Self::from_matrix_space(p, n, &s, label)
    }

    /// `GF(p)[x]/(x^n)` with basis `1, x, …, x^(n-1)`.
    pub fn truncated_poly(p: Prime, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("truncation degree must be positive".into()));
        }
        let mut table = vec![0u32; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    table[(i * n + j) * n + i + j] = 1;
                }
            }
        }
        let mut one = vec![0u32; n];
        one[0] = 1;
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            })
            .collect();
        Ok(Algebra::from_structure_constants(p, n, table, one, format!("T{n}_{}", p.get()))?.with_names(names))
    }

    /// Unital subalgebra of `M_n` generated by `gens`.
    pub fn matrix_subalgebra(p: Prime, n: usize, gens: &[Mat]) -> Result<Self> {
        for g in gens {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch { expected: n * n, got: g.rows() * g.cols() });
            }
            if g.prime() != p {
                return Err(Error::ModulusMismatch(g.prime().get(), p.get()));
            }
        }
        let mut space = Subspace::from_rows(p, n * n, [flat_mat(&Mat::identity(p, n))]);
        loop {
            if space.dim() > MAX_GENERATED_DIM {
                return Err(Error::ClosureTooLarge(MAX_GENERATED_DIM));
            }
            let mut rows: Vec<Vec<u32>> = space.basis().row_iter().map(|r| r.to_vec()).collect();
            for v in space.basis().row_iter() {
                let vm = Mat::from_residue_rows(p, n, v.chunks(n).map(|c| c.to_vec()));
                for g in gens {
                    rows.push(flat_mat(&g.mul(&vm)?));
                }
            }
            let next = Subspace::from_rows(p, n * n, rows);
            if next.dim() == space.dim() {
                break;
            }
            space = next;
        }
        Self::from_matrix_space(p, n, &space, format!("Sub{n}_{}", p.get()))
    }
}

/// `A^op`: same basis, `b_i ∘ b_j = b_j b_i`. A matrix model becomes the transposes.
pub fn opposite_algebra(a: &Algebra) -> Result<Algebra> {
    let d = a.dim();
    let mut table = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            table.extend_from_slice(a.product_coeffs(j, i));
        }
    }
    let model = a.matrix_model().map(MatrixModel::transposed).transpose()?;
    Ok(Algebra::from_structure_constants(a.prime(), d, table, a.one().into_coeffs(), format!("{}^op", a.label()))?
        .with_names(a.basis_names().to_vec())
        .with_matrix_model(model))
}

/// Direct product, with the coordinate range each factor occupies.
pub fn direct_product(factors: &[Algebra]) -> Result<(Algebra, Vec<Range<usize>>)> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidInput("product of no algebras".into()))?;
    let p = first.prime();
    for f in factors {
        if f.prime() != p {
            return Err(Error::ModulusMismatch(f.prime().get(), p.get()));
        }
    }
    let dim: usize = factors.iter().map(Algebra::dim).sum();
    let mut ranges = Vec::with_capacity(factors.len());
    let mut off = 0;
    for f in factors {
        ranges.push(off..off + f.dim());
        off += f.dim();
    }
    let mut table = vec![0u32; dim * dim * dim];
    let mut one = vec![0u32; dim];
    let mut names = Vec::with_capacity(dim);
    for (f, r) in factors.iter().zip(&ranges) {
        let fd = f.dim();
        for i in 0..fd {
            for j in 0..fd {
                let dst = ((r.start + i) * dim + r.start + j) * dim + r.start;
                table[dst..dst + fd].copy_from_slice(f.product_coeffs(i, j));
            }
        }
        one[r.clone()].copy_from_slice(f.one().coeffs());
    }
    for (k, f) in factors.iter().enumerate() {
        names.extend(f.basis_names().iter().map(|n| format!("{n}[{}]", k + 1)));
    }
    let model = block_diagonal_model(p, factors, &ranges, dim)?;
    let label = factors.iter().map(Algebra::label).collect::<Vec<_>>().join("x");
    Ok((
        Algebra::from_structure_constants(p, dim, table, one, label)?
            .with_names(names)
            .with_matrix_model(model),
        ranges,
    ))
}

fn block_diagonal_model(p: Prime, factors: &[Algebra], ranges: &[Range<usize>], dim: usize) -> Result<Option<MatrixModel>> {
    let Some(models) = factors.iter().map(Algebra::matrix_model).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    let n: usize = models.iter().map(|m| m.size()).sum();
    let mut images = vec![Mat::zeros(p, n, n); dim];
    let mut off = 0;
    for (m, r) in models.iter().zip(ranges) {
        for (k, img) in m.images().iter().enumerate() {
            let target = &mut images[r.start + k];
            for i in 0..m.size() {
                for j in 0..m.size() {
                    target.set(off + i, off + j, img.get(i, j));
                }
            }
        }
        off += m.size();
    }
    MatrixModel::new(n, images).map(Some)
}

/// Subalgebra on `space` with its own identity `identity` (e.g. a corner `eAe`).
/// Returns the algebra and the embedding matrix whose rows are the new basis
/// in coordinates of `a`.
pub fn subalgebra(a: &Algebra, space: &Subspace, identity: &Element, label: impl Into<String>) -> Result<(Algebra, Mat)> {
    let p = a.prime();
    if space.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: space.ambient_dim() });
    }
    let d = space.dim();
    if d == 0 {
        return Err(Error::ZeroIdempotent);
    }
    let basis: Vec<Element> = space.basis().row_iter().map(|r| Element(r.to_vec())).collect();
    let mut table = Vec::with_capacity(d * d * d);
    for x in &basis {
        for y in &basis {
            let c = space
                .coordinates(a.mul(x, y).coeffs())
                .ok_or(Error::NotClosed("subalgebra"))?;
            table.extend(c);
        }
    }
    let one = space.coordinates(identity.coeffs()).ok_or(Error::MissingIdentity)?;
    let model = match a.matrix_model() {
        Some(m) => Some(MatrixModel::new(m.size(), basis.iter().map(|b| m.image(b.coeffs())).collect())?),
        None => None,
    };
    let names = basis.iter().map(|b| a.format_element(b)).collect();
    let sub = Algebra::from_structure_constants(p, d, table, one, label)?
        .with_names(names)
        .with_matrix_model(model);
    Ok((sub, space.basis().clone()))
}
