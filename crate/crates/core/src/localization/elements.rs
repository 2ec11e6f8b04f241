use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{is_left_triangular, CoreDescription, DenKind, DenSetDescriptor, LocalizationReport};
use crate::algebra::{Algebra, Element, Side};
use crate::error::{ensure_invariant, Error, Result};
use crate::exact::Subspace;
use crate::options::Options;
use crate::oracle::monoid_closure;
use crate::par;
use crate::structure::BlockSet;

/// The idempotent `e(s)` from the splitting `R = Rs^n ⊕ ker(·s^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedIdempotent {
    pub n: usize,
    pub e: Element,
    pub e_prime: Element,
    /// `s` is nilpotent, so `e = 0`.
    pub nilpotent: bool,
}

pub fn associated_idempotent(a: &Algebra, s: &Element) -> Result<AssociatedIdempotent> {
    let image = |x: &Element| Subspace::from_mat(&a.regular_matrix(x, Side::Right));
    let mut n = 0;
    let mut power = a.one();
    let mut current = Subspace::full(a.prime(), a.dim());
    loop {
        let next_power = a.mul(&power, s);
        let next = image(&next_power);
        if next == current {
            break;
        }
        ensure_invariant!(n <= a.dim(), "Rs^n did not stabilize");
        n += 1;
        power = next_power;
        current = next;
    }
    let kernel = a.regular_matrix(&power, Side::Right).kernel();
    ensure_invariant!(
        current.dim() + kernel.dim() == a.dim() && current.intersection(&kernel)?.is_zero(),
        "R is not Rs^n ⊕ ker(·s^n)"
    );
    if current.is_zero() {
        return Ok(AssociatedIdempotent { n, e: a.zero(), e_prime: a.one(), nilpotent: true });
    }
    let stacked = current.basis().vstack(kernel.basis())?;
    let coords = stacked
        .solve_left(a.one().coeffs())
        .ok_or_else(|| Error::Invariant("1 is not in Rs^n ⊕ ker(·s^n)".into()))?;
    let k = current.dim();
    let e = a.element_from_residues(current.basis().vec_mul(&coords[..k]))?;
    let e_prime = a.element_from_residues(if kernel.is_zero() {
        vec![0; a.dim()]
    } else {
        kernel.basis().vec_mul(&coords[k..])
    })?;
    ensure_invariant!(
        a.is_idempotent(&e) && a.is_idempotent(&e_prime),
        "associated decomposition of 1 is not into idempotents"
    );
    ensure_invariant!(
        a.mul(&e, &e_prime).is_zero() && a.mul(&e_prime, &e).is_zero(),
        "associated idempotents are not orthogonal"
    );
    Ok(AssociatedIdempotent { n, e, e_prime, nilpotent: false })
}

#[derive(Debug, Clone)]
pub struct PowersVerdict {
    pub is_den: bool,
    pub associated: AssociatedIdempotent,
    /// `eR(1-e) = 0`
    pub triangular: bool,
    /// `(1-e)s(1-e)` is nilpotent.
    pub corner_nilpotent: bool,
    pub descriptor: Option<DenSetDescriptor>,
}

/// Whether `{s^i}` is a left denominator set: `s` not nilpotent,
/// `eR(1-e) = 0` and `(1-e)s(1-e)` nilpotent for `e = e(s)`.
pub fn powers_denominator_criterion(a: &Algebra, s: &Element) -> Result<PowersVerdict> {
    let associated = associated_idempotent(a, s)?;
    if associated.nilpotent {
        return Ok(PowersVerdict {
            is_den: false,
            associated,
            triangular: false,
            corner_nilpotent: false,
            descriptor: None,
        });
    }
    let e = &associated.e;
    let c = a.complement(e);
    let triangular = is_left_triangular(a, e);
    let corner_nilpotent = a.is_nilpotent(&a.mul3(&c, s, &c));
    let descriptor = if triangular && corner_nilpotent {
        let mut power = s.clone();
        let mut exp = 1u64;
        while !a.mul3(&c, &power, &c).is_zero() {
            ensure_invariant!(exp <= a.dim() as u64, "corner of s^i never vanished");
            power = a.mul(&power, s);
            exp += 1;
        }
        Some(DenSetDescriptor::new(a, DenKind::Powers, e, CoreDescription::MinExponent(exp))?)
    } else {
        None
    };
    Ok(PowersVerdict { is_den: descriptor.is_some(), associated, triangular, corner_nilpotent, descriptor })
}

#[derive(Debug, Clone)]
pub struct MonoidVerdict {
    pub is_den: bool,
    pub closure_size: usize,
    pub contains_zero: bool,
    /// The chosen `s` with `{s^i}` a denominator set and every generator
    /// invertible in `S_s^{-1}R`.
    pub witness: Option<Element>,
    pub witness_count: usize,
    pub descriptor: Option<DenSetDescriptor>,
}

/// Decides whether the monoid generated by `gens` is a left denominator set,
/// by searching the monoid for a witness `s`.
pub fn monoid_denominator_decision(a: &Algebra, gens: &[Element], opts: &Options) -> Result<MonoidVerdict> {
    let closure = monoid_closure(a, gens, opts.guard)?;
    let closure_size = closure.members.len();
    if closure.contains_zero {
        return Ok(MonoidVerdict {
            is_den: false,
            closure_size,
            contains_zero: true,
            witness: None,
            witness_count: 0,
            descriptor: None,
        });
    }
    let candidates = par::map_slice(opts.exec, &closure.members, |t| -> Result<Option<(Element, DenSetDescriptor)>> {
        let v = powers_denominator_criterion(a, t)?;
        Ok(match v.descriptor {
            Some(d) if gens.iter().all(|g| d.becomes_unit(g)) => Some((t.clone(), d)),
            _ => None,
        })
    });
    let witnesses: Vec<(Element, DenSetDescriptor)> =
        candidates.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    let witness_count = witnesses.len();
    let Some(first) = witnesses.first() else {
        return Ok(MonoidVerdict {
            is_den: false,
            closure_size,
            contains_zero: false,
            witness: None,
            witness_count: 0,
            descriptor: None,
        });
    };
    for (t, d) in &witnesses {
        ensure_invariant!(d.ass == first.1.ass, "witnesses {t:?} and {:?} give different ass", first.0);
    }
    let kernel_dim = |t: &Element| a.regular_matrix(t, Side::Left).kernel().dim();
    let (t, d) = witnesses
        .iter()
        .enumerate()
        .max_by_key(|(i, (t, _))| (kernel_dim(t), std::cmp::Reverse(*i)))
        .map(|(_, w)| w.clone())
        .expect("nonempty");
    let ker = a.regular_matrix(&t, Side::Left).kernel();
    ensure_invariant!(&ker == d.ass.space(), "ker(s·) differs from ass for the chosen witness");
    let descriptor = DenSetDescriptor { kind: DenKind::Monoid, core: CoreDescription::Predicate, ..d };
    Ok(MonoidVerdict {
        is_den: true,
        closure_size,
        contains_zero: false,
        witness: Some(t),
        witness_count,
        descriptor: Some(descriptor),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdempotentVerdict {
    pub left: bool,
    pub right: bool,
    pub twosided: bool,
    pub central: bool,
}

/// Whether `{1, e}` is a left, right or two-sided denominator set.
pub fn idempotent_denominator_check(a: &Algebra, e: &Element) -> Result<IdempotentVerdict> {
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    if e.is_zero() {
        return Err(Error::ZeroIdempotent);
    }
    let c = a.complement(e);
    let left = is_left_triangular(a, e);
    let right = (0..a.dim()).all(|k| a.mul3(&c, &a.basis(k), e).is_zero());
    let central = a.is_central(e);
    ensure_invariant!((left && right) == central, "two-sided idempotent test disagrees with centrality");
    Ok(IdempotentVerdict { left, right, twosided: left && right, central })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementVerdict {
    pub left_localizable: bool,
    pub completely: bool,
    /// Minimal index sets `I` with `r` a unit modulo `(1-e_I)R`.
    pub witnesses: Vec<BlockSet>,
}

pub fn classify_element(a: &Algebra, r: &Element, report: &LocalizationReport) -> Result<ElementVerdict> {
    ensure_invariant!(
        a.dim() == report.algebra.dim() && a.prime() == report.algebra.prime(),
        "report belongs to a different algebra"
    );
    let witnesses: Vec<BlockSet> = report.max_den.iter().filter(|m| m.contains(r)).map(|m| m.set).collect();
    let completely = witnesses.len() == report.max_den.len();
    ensure_invariant!(!a.is_unit(r) || completely, "a unit is not completely localizable");
    Ok(ElementVerdict { left_localizable: !witnesses.is_empty(), completely, witnesses })
}

/// Whether the non-localizable elements form an ideal: every `R/(1-e)R`
/// for minimal `e` is a division ring.
pub fn nl_ideal_test(a: &Algebra, report: &LocalizationReport, opts: &Options) -> Result<bool> {
    ensure_invariant!(a.dim() == report.algebra.dim(), "report belongs to a different algebra");
    let mut all_division = true;
    for m in &report.max_den {
        let q = m.descriptor.quotient.algebra();
        let fam = crate::structure::block_decomposition(q)?;
        all_division &= fam.rad().is_zero() && fam.s() == 1 && fam.block_commutative()[0];
    }
    let work = &report.algebra;
    let non_localizable = |x: &Element| report.max_den.iter().all(|m| !m.contains(x));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found = Vec::new();
    for _ in 0..512 {
        let x = work.random_element(&mut rng);
        if non_localizable(&x) {
            found.push(x);
        }
        if found.len() == 32 {
            break;
        }
    }
    found.push(work.zero());
    for x in &found {
        let l = work.random_element(&mut rng);
        let r = work.random_element(&mut rng);
        ensure_invariant!(non_localizable(&work.mul3(&l, x, &r)), "R·NL·R left the non-localizable set");
        if all_division {
            for y in &found {
                ensure_invariant!(non_localizable(&work.add(x, y)), "non-localizable set of a division quotient is not additive");
            }
        }
    }
    Ok(all_division)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::exact::{Mat, Prime};
    use crate::localization::localization_report;

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
    fn associated_idempotent_examples() {
        let a = l2();
        let s = mat(&a, &[&[2, 0], &[1, 0]]);
        let ai = associated_idempotent(&a, &s).unwrap();
        assert_eq!(ai.n, 1);
        assert_eq!(ai.e, mat(&a, &[&[1, 0], &[4, 0]]));
        assert_eq!(ai.e_prime, mat(&a, &[&[0, 0], &[3, 1]]));

        let u = Algebra::upper_triangular(p7(), 2).unwrap();
        let ai = associated_idempotent(&u, &u.basis(0)).unwrap();
        assert_eq!(ai.e, u.basis(0));
        assert_eq!(ai.e_prime, u.basis(2));

        let unit = mat(&a, &[&[3, 0], &[5, 2]]);
        let ai = associated_idempotent(&a, &unit).unwrap();
        assert_eq!((ai.n, ai.e.clone()), (0, a.one()));

        let ai = associated_idempotent(&a, &a.basis(1)).unwrap();
        assert!(ai.nilpotent && ai.e.is_zero());
    }

    #[test]
    fn powers_criterion_examples() {
        let a = l2();
        let s = mat(&a, &[&[2, 0], &[1, 0]]);
        let v = powers_denominator_criterion(&a, &s).unwrap();
        assert!(v.is_den);
        let d = v.descriptor.unwrap();
        assert_eq!(d.ass.dim(), 2);
        assert!(d.ass.contains(&a.basis(1)) && d.ass.contains(&a.basis(2)));
        assert_eq!(d.quotient.algebra().dim(), 1);
        assert_eq!(d.core, CoreDescription::MinExponent(1));

        let u = Algebra::upper_triangular(p7(), 2).unwrap();
        let v = powers_denominator_criterion(&u, &u.basis(0)).unwrap();
        assert!(!v.is_den && !v.triangular);

        let unit = mat(&a, &[&[3, 0], &[5, 2]]);
        let d = powers_denominator_criterion(&a, &unit).unwrap().descriptor.unwrap();
        assert!(d.ass.is_zero());
        assert_eq!(d.quotient.algebra().dim(), 3);

        assert!(!powers_denominator_criterion(&a, &a.basis(1)).unwrap().is_den);
    }

    #[test]
    fn monoid_decision_examples() {
        let a = l2();
        let opts = Options::default();
        let g1 = mat(&a, &[&[2, 0], &[1, 0]]);
        let g2 = mat(&a, &[&[3, 0], &[0, 1]]);
        let v = monoid_denominator_decision(&a, &[g1, g2], &opts).unwrap();
        assert!(v.is_den);
        assert_eq!(v.descriptor.unwrap().ass.dim(), 2);

        let v = monoid_denominator_decision(&a, &[a.basis(0)], &opts).unwrap();
        assert!(v.is_den);

        let u = Algebra::upper_triangular(p7(), 2).unwrap();
        assert!(!monoid_denominator_decision(&u, &[u.basis(0)], &opts).unwrap().is_den);
        assert!(monoid_denominator_decision(&u, &[u.basis(1)], &opts).unwrap().contains_zero);
    }

    #[test]
    fn idempotent_check_examples() {
        let a = l2();
        let v = idempotent_denominator_check(&a, &a.basis(0)).unwrap();
        assert!(v.left && !v.right && !v.twosided && !v.central);
        for t in 1..7 {
            let e = mat(&a, &[&[1, 0], &[t, 0]]);
            assert!(idempotent_denominator_check(&a, &e).unwrap().left);
        }
        let f = Algebra::full_matrix(p7(), 1).unwrap();
        let (ff, _) = direct_product(&[f.clone(), f]).unwrap();
        let v = idempotent_denominator_check(&ff, &ff.basis(0)).unwrap();
        assert!(v.left && v.right && v.twosided && v.central);
        assert_eq!(idempotent_denominator_check(&a, &a.basis(1)), Err(Error::NotIdempotent));
        assert_eq!(idempotent_denominator_check(&a, &a.zero()), Err(Error::ZeroIdempotent));
    }

    #[test]
    fn classify_examples() {
        let a = l2();
        let report = localization_report(&a, Side::Left, &Options::default()).unwrap();
        let r = mat(&a, &[&[2, 0], &[5, 0]]);
        let v = classify_element(&a, &r, &report).unwrap();
        assert!(v.left_localizable && !a.is_unit(&r));
        let v = classify_element(&a, &a.basis(1), &report).unwrap();
        assert!(!v.left_localizable);
        let v = classify_element(&a, &a.one(), &report).unwrap();
        assert!(v.completely);
    }

    #[test]
    fn nl_ideal_examples() {
        let opts = Options::default();
        let a = l2();
        let rep = localization_report(&a, Side::Left, &opts).unwrap();
        assert!(nl_ideal_test(&a, &rep, &opts).unwrap());
        let m2 = Algebra::full_matrix(p7(), 2).unwrap();
        let f = Algebra::full_matrix(p7(), 1).unwrap();
        let (p1, _) = direct_product(&[m2, f.clone()]).unwrap();
        let rep = localization_report(&p1, Side::Left, &opts).unwrap();
        assert!(!nl_ideal_test(&p1, &rep, &opts).unwrap());
        let (ff, _) = direct_product(&[f.clone(), f]).unwrap();
        let rep = localization_report(&ff, Side::Left, &opts).unwrap();
        assert!(nl_ideal_test(&ff, &rep, &opts).unwrap());
    }
}
