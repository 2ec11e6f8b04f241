//! Named algebras used throughout tests, benches and the CLI.

use crate::algebra::{direct_product, Algebra};
use crate::error::Result;
use crate::exact::{Mat, Prime};

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("fixture primes are prime")
}

fn field(p: u64) -> Algebra {
    Algebra::full_matrix(prime(p), 1).expect("GF(p) builds")
}

fn product(parts: &[Algebra], name: &str) -> Algebra {
    direct_product(parts).expect("fixture product builds").0.with_label(name)
}

/// Every fixture name, in a stable order.
pub const NAMES: &[&str] = &[
    "L2_7", "L3_7", "U2_7", "U3_7", "M2_7", "T7", "F7F7", "P1", "L2_5", "U2_5", "T5", "F5F5", "T7xF7", "SUB7",
];

pub fn by_name(name: &str) -> Option<Algebra> {
    let a = match name {
        "L2_7" => Algebra::lower_triangular(prime(7), 2),
        "L3_7" => Algebra::lower_triangular(prime(7), 3),
        "U2_7" => Algebra::upper_triangular(prime(7), 2),
        "U3_7" => Algebra::upper_triangular(prime(7), 3),
        "M2_7" => Algebra::full_matrix(prime(7), 2),
        "T7" => Algebra::truncated_poly(prime(7), 2).map(|a| a.with_label("T7")),
        "F7F7" => Ok(product(&[field(7), field(7)], "F7F7")),
        "P1" => Ok(product(&[Algebra::full_matrix(prime(7), 2).ok()?, field(7)], "P1")),
        "L2_5" => Algebra::lower_triangular(prime(5), 2),
        "U2_5" => Algebra::upper_triangular(prime(5), 2),
        "T5" => Algebra::truncated_poly(prime(5), 2).map(|a| a.with_label("T5")),
        "F5F5" => Ok(product(&[field(5), field(5)], "F5F5")),
        "T7xF7" => Ok(product(&[Algebra::truncated_poly(prime(7), 2).ok()?, field(7)], "T7xF7")),
        "SUB7" => sub7(),
        _ => return None,
    };
    Some(a.expect("fixture builds"))
}

/// Unital subalgebra of `M_3(GF(7))` generated by `E_11 + E_21` and `E_32`.
fn sub7() -> Result<Algebra> {
    let p = prime(7);
    let g1 = Mat::from_rows(p, &[vec![1, 0, 0], vec![1, 0, 0], vec![0, 0, 0]])?;
    let g2 = Mat::from_rows(p, &[vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 0]])?;
    Ok(Algebra::matrix_subalgebra(p, 3, &[g1, g2])?.with_label("SUB7"))
}

pub fn all() -> Vec<Algebra> {
    NAMES.iter().map(|n| by_name(n).expect("listed fixture")).collect()
}
