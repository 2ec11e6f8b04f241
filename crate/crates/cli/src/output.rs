//! Serializable views of the library's reports. All JSON is emitted with
//! sorted keys so that identical inputs give byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use artinloc::localization::{
    CoreDescription, DenSetDescriptor, DualityReport, LocalizationReport, TwoSidedReport,
};
use artinloc::{Algebra, Element, Ideal, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub label: String,
    pub prime: u64,
    pub dim: usize,
    pub basis: Vec<String>,
}

impl AlgebraJson {
    pub fn new(a: &Algebra) -> Self {
        AlgebraJson { label: a.label().to_string(), prime: a.prime().get() as u64, dim: a.dim(), basis: a.basis_names().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
}

impl SubspaceJson {
    pub fn new(s: &Subspace) -> Self {
        SubspaceJson { dim: s.dim(), basis: s.basis().row_iter().map(<[u32]>::to_vec).collect() }
    }

    pub fn ideal(i: &Ideal) -> Self {
        Self::new(i.space())
    }
}

fn coeffs(x: &Element) -> Vec<u32> {
    x.coeffs().to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularJson {
    pub set: String,
    pub idempotent: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationJson {
    pub set: String,
    pub idempotent: Vec<u32>,
    pub ass: SubspaceJson,
    pub quotient_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDenJson {
    pub set: String,
    pub idempotent: Vec<u32>,
    pub ass_dim: usize,
    pub quotient_dim: usize,
    /// Number of elements, when it fits in 128 bits.
    pub size: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsJson {
    pub localization_maximal: bool,
    pub semisimple: bool,
    pub direct_product_of_localization_maximal: bool,
    pub completely_localizable_equals_units: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub algebra: AlgebraJson,
    pub side: String,
    pub s: usize,
    pub block_dims: Vec<usize>,
    pub block_idempotents: Vec<Vec<u32>>,
    pub rad_dim: usize,
    pub triangular: Vec<TriangularJson>,
    pub minima: Vec<String>,
    pub minima_sum: Vec<u32>,
    pub loc_count: usize,
    pub localizations: Vec<LocalizationJson>,
    pub max_den: Vec<MaxDenJson>,
    pub l_rad: SubspaceJson,
    pub l_rad_dim: usize,
    pub little_rad: SubspaceJson,
    pub little_rad_dim: usize,
    pub flags: FlagsJson,
}

impl ReportJson {
    /// `a` is the algebra the report was requested for; a right report is
    /// computed in the opposite algebra but shares its coordinates.
    pub fn new(a: &Algebra, r: &LocalizationReport) -> Self {
        ReportJson {
            algebra: AlgebraJson::new(a),
            side: r.side.to_string(),
            s: r.s(),
            block_dims: r.family.block_dims().to_vec(),
            block_idempotents: r.family.idempotents().iter().map(coeffs).collect(),
            rad_dim: r.family.rad().dim(),
            triangular: r
                .tri
                .entries()
                .iter()
                .map(|t| TriangularJson { set: t.set.to_string(), idempotent: coeffs(&t.idempotent) })
                .collect(),
            minima: r.tri.minimal_sets().iter().map(ToString::to_string).collect(),
            minima_sum: coeffs(&r.minima_sum()),
            loc_count: r.loc_count(),
            localizations: r
                .loc_entries
                .iter()
                .map(|l| LocalizationJson {
                    set: l.set.to_string(),
                    idempotent: coeffs(&l.idempotent),
                    ass: SubspaceJson::ideal(&l.ass),
                    quotient_dim: l.quotient_dim,
                })
                .collect(),
            max_den: r
                .max_den
                .iter()
                .map(|m| MaxDenJson {
                    set: m.set.to_string(),
                    idempotent: coeffs(&m.descriptor.witness_idempotent),
                    ass_dim: m.descriptor.ass.dim(),
                    quotient_dim: m.descriptor.quotient.algebra().dim(),
                    size: m.size.map(|n| n.to_string()),
                })
                .collect(),
            l_rad: SubspaceJson::ideal(&r.l_rad),
            l_rad_dim: r.l_rad.dim(),
            little_rad: SubspaceJson::ideal(&r.little_rad),
            little_rad_dim: r.little_rad.dim(),
            flags: FlagsJson {
                localization_maximal: r.flags.localization_maximal,
                semisimple: r.flags.semisimple,
                direct_product_of_localization_maximal: r.flags.is_direct_product_of_loc_max,
                completely_localizable_equals_units: r.flags.completely_loc_equals_units,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub kind: String,
    pub associated_idempotent: Vec<u32>,
    pub ass: SubspaceJson,
    pub ass_dim: usize,
    pub quotient_dim: usize,
    /// `{s^i : i ≥ k}` for powers; absent when the core is the predicate `(1-e)t(1-e) = 0`.
    pub core_min_exponent: Option<u64>,
}

impl DescriptorJson {
    pub fn new(d: &DenSetDescriptor) -> Self {
        DescriptorJson {
            kind: format!("{:?}", d.kind).to_lowercase(),
            associated_idempotent: coeffs(&d.witness_idempotent),
            ass: SubspaceJson::ideal(&d.ass),
            ass_dim: d.ass.dim(),
            quotient_dim: d.quotient.algebra().dim(),
            core_min_exponent: match d.core {
                CoreDescription::MinExponent(k) => Some(k),
                CoreDescription::Predicate => None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualJson {
    pub algebra: AlgebraJson,
    pub left_loc_count: usize,
    pub right_loc_count: usize,
    pub left_minima: Vec<String>,
    pub right_minima: Vec<String>,
    pub pairing: Vec<(String, String)>,
    pub counts_equal: bool,
    pub l_zero_iff_r_zero: bool,
    pub l_neq_r: bool,
    pub l_rad: SubspaceJson,
    pub r_rad: SubspaceJson,
}

impl DualJson {
    pub fn new(a: &Algebra, d: &DualityReport) -> Self {
        DualJson {
            algebra: AlgebraJson::new(a),
            left_loc_count: d.left.loc_count(),
            right_loc_count: d.right.loc_count(),
            left_minima: d.left.tri.minimal_sets().iter().map(ToString::to_string).collect(),
            right_minima: d.right.tri.minimal_sets().iter().map(ToString::to_string).collect(),
            pairing: d.pairing.iter().map(|(i, j)| (i.to_string(), j.to_string())).collect(),
            counts_equal: d.counts_equal,
            l_zero_iff_r_zero: d.l_zero_iff_r_zero,
            l_neq_r: !d.l_equals_r,
            l_rad: SubspaceJson::ideal(&d.left.l_rad),
            r_rad: SubspaceJson::ideal(&d.right.l_rad),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSidedFactorJson {
    pub index: usize,
    pub central_idempotent: Vec<u32>,
    pub factor_dim: usize,
    pub ass_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSidedJson {
    pub algebra: AlgebraJson,
    pub factors: usize,
    pub central_idempotents: Vec<Vec<u32>>,
    pub loc_count: String,
    pub max_den: Vec<TwoSidedFactorJson>,
    pub localization_radical_dim: usize,
}

impl TwoSidedJson {
    pub fn new(a: &Algebra, t: &TwoSidedReport) -> Self {
        TwoSidedJson {
            algebra: AlgebraJson::new(a),
            factors: t.factors(),
            central_idempotents: t.central_idempotents.iter().map(coeffs).collect(),
            loc_count: t.loc_count.to_string(),
            max_den: t
                .max_den
                .iter()
                .map(|f| TwoSidedFactorJson {
                    index: f.index + 1,
                    central_idempotent: coeffs(&f.idempotent),
                    factor_dim: f.factor_dim,
                    ass_dim: f.ass.dim(),
                })
                .collect(),
            localization_radical_dim: t.localization_radical.dim(),
        }
    }
}

/// Rebuilds every object with keys in sorted order, whatever map type serde_json was built with.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical(v));
            }
            Value::Object(out)
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn to_json<T: Serialize>(x: &T) -> Value {
    canonical(serde_json::to_value(x).expect("report types serialize"))
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Indented `key: value` lines for people.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, v, 0);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().map(|x| scalar_text(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(_) | Value::Object(_) => None,
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        other => Some(other.to_string()),
    }
}

fn text_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_into(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text_into(out, x, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap_or_default())),
    }
}
