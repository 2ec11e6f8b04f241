//! JSON algebra descriptions and element payloads.

use std::fmt;

use serde::Deserialize;
use serde_json::Value;

use artinloc::{algebra::build_algebra, Algebra, AlgebraDesc, Element, Mat, Prime};

#[derive(Debug)]
pub enum InputError {
    Json(serde_json::Error),
    Algebra(artinloc::Error),
    Schema(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Json(e) => write!(f, "schema error: {e}"),
            InputError::Algebra(e) => write!(f, "{e}"),
            InputError::Schema(msg) => write!(f, "schema error: {msg}"),
        }
    }
}

impl std::error::Error for InputError {}

impl From<artinloc::Error> for InputError {
    fn from(e: artinloc::Error) -> Self {
        InputError::Algebra(e)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarSpec {
    pub prime: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    StructureConstants,
    Constructor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Name {
    LowerTriangular,
    UpperTriangular,
    FullMatrix,
    TruncatedPoly,
    Product,
    Opposite,
    MatrixSubalgebra,
}

/// One algebra description, as written. Kept flat and untagged so that
/// serde_json can anchor type errors to a line and column. Nested
/// descriptions may omit `scalar`; when present it must agree with the
/// enclosing document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Description {
    pub scalar: Option<ScalarSpec>,
    pub kind: Kind,
    pub name: Option<Name>,
    pub n: Option<usize>,
    pub dim: Option<usize>,
    pub one: Option<Vec<i64>>,
    pub mul_table: Option<Vec<Vec<Vec<i64>>>>,
    pub factors: Option<Vec<Description>>,
    pub inner: Option<Box<Description>>,
    pub ambient_n: Option<usize>,
    pub generators: Option<Vec<Vec<Vec<i64>>>>,
}

fn need<T: Clone>(v: &Option<T>, field: &str, at: &str) -> Result<T, InputError> {
    v.clone().ok_or_else(|| InputError::Schema(format!("{at}: missing field `{field}`")))
}

impl Description {
    fn to_desc(&self, p: u64, at: &str) -> Result<AlgebraDesc, InputError> {
        if let Some(s) = self.scalar {
            if s.prime != p {
                return Err(InputError::Schema(format!("{at}: prime {} differs from the document prime {p}", s.prime)));
            }
        }
        let name = match self.kind {
            Kind::StructureConstants => {
                return Ok(AlgebraDesc::StructureConstants {
                    dim: need(&self.dim, "dim", at)?,
                    one: need(&self.one, "one", at)?,
                    mul_table: need(&self.mul_table, "mul_table", at)?,
                })
            }
            Kind::Constructor => need(&self.name, "name", at)?,
        };
        Ok(match name {
            Name::LowerTriangular => AlgebraDesc::LowerTriangular(need(&self.n, "n", at)?),
            Name::UpperTriangular => AlgebraDesc::UpperTriangular(need(&self.n, "n", at)?),
            Name::FullMatrix => AlgebraDesc::FullMatrix(need(&self.n, "n", at)?),
            Name::TruncatedPoly => AlgebraDesc::TruncatedPoly(need(&self.n, "n", at)?),
            Name::Product => {
                let factors = self.factors.as_ref().ok_or_else(|| InputError::Schema(format!("{at}: missing field `factors`")))?;
                AlgebraDesc::Product(
                    factors.iter().enumerate().map(|(i, f)| f.to_desc(p, &format!("{at}.factors[{i}]"))).collect::<Result<_, _>>()?,
                )
            }
            Name::Opposite => {
                let inner = self.inner.as_ref().ok_or_else(|| InputError::Schema(format!("{at}: missing field `inner`")))?;
                AlgebraDesc::Opposite(Box::new(inner.to_desc(p, &format!("{at}.inner"))?))
            }
            Name::MatrixSubalgebra => AlgebraDesc::MatrixSubalgebra {
                ambient_n: need(&self.ambient_n, "ambient_n", at)?,
                generators: need(&self.generators, "generators", at)?,
            },
        })
    }
}

/// Parses and validates a whole input document.
pub fn parse_algebra(doc: &str) -> Result<Algebra, InputError> {
    let desc: Description = serde_json::from_str(doc).map_err(InputError::Json)?;
    let p = desc.scalar.ok_or_else(|| InputError::Schema("document: missing field `scalar`".into()))?.prime;
    let prime = Prime::new(p)?;
    Ok(build_algebra(prime, &desc.to_desc(p, "document")?)?)
}

/// A coefficient vector, or a matrix literal for matrix-constructed algebras.
pub fn parse_element(a: &Algebra, v: &Value) -> Result<Element, InputError> {
    let rows = v.as_array().ok_or_else(|| InputError::Schema("element must be a JSON array".into()))?;
    if rows.iter().all(Value::is_array) && !rows.is_empty() {
        if a.matrix_model().is_none() {
            return Err(InputError::Schema(format!("{} has no matrix model; give a coefficient vector", a.label())));
        }
        let m: Vec<Vec<i64>> = serde_json::from_value(v.clone()).map_err(InputError::Json)?;
        return Ok(a.element_from_matrix(&Mat::from_rows(a.prime(), &m)?)?);
    }
    let coeffs: Vec<i64> = serde_json::from_value(v.clone()).map_err(InputError::Json)?;
    Ok(a.element(&coeffs)?)
}

pub fn parse_element_str(a: &Algebra, s: &str) -> Result<Element, InputError> {
    let v: Value = serde_json::from_str(s).map_err(InputError::Json)?;
    parse_element(a, &v)
}

/// A JSON array of elements.
pub fn parse_generators(a: &Algebra, doc: &str) -> Result<Vec<Element>, InputError> {
    let v: Value = serde_json::from_str(doc).map_err(InputError::Json)?;
    let list = v.as_array().ok_or_else(|| InputError::Schema("generators must be a JSON array of elements".into()))?;
    if list.is_empty() {
        return Err(InputError::Schema("generator list is empty".into()));
    }
    list.iter().map(|g| parse_element(a, g)).collect()
}
