//! Restriction, induction and the index-two correspondence for
//! `N ⋊ ⟨α⟩` with `α(n) = τ(n⁻¹)`.

use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use super::functionals::{inner_product, round_integer};
use super::{compute_character_table, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::group::{construct_semidirect_with_involution, ElementId, GroupTable, Subgroup};
use crate::morphisms::GroupMap;
use crate::scalar::Scalar;

fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn check_embedding<T: Scalar>(table_g: &CharacterTable<T>, sub: &Subgroup, table_k: &CharacterTable<T>) -> Result<()> {
    if sub.embedding.last().is_none_or(|g| g.index() >= table_g.group().order())
        || table_k.group().order() != sub.order()
    {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// Restriction of a class function on `G` to `K`.
pub fn restrict<T: Scalar>(
    table_g: &CharacterTable<T>,
    sub: &Subgroup,
    table_k: &CharacterTable<T>,
    f: &ClassFunction<T>,
) -> Result<ClassFunction<T>> {
    check_embedding(table_g, sub, table_k)?;
    if !Arc::ptr_eq(f.classes(), table_g.classes()) {
        return Err(Error::GroupMismatch);
    }
    let kc = table_k.classes();
    let values = (0..kc.class_count())
        .map(|c| f.at(sub.embedding[kc.representative(c).index()]))
        .collect();
    ClassFunction::new(kc.clone(), values)
}

#[derive(Clone, Debug)]
pub struct InducedCharacter<T: Scalar> {
    pub character: ClassFunction<T>,
    /// `max_χ |⟨Ind f, χ⟩_G − ⟨f, Res χ⟩_K|` over the rows of `G`.
    pub reciprocity_residual: f64,
}

/// `Ind_K^G f (g) = (1/|K|) Σ_{x ∈ G} f°(x⁻¹gx)`, evaluated class by class as
/// `|G| / (|K| |C|) Σ_{y ∈ C ∩ K} f(y)`, with Frobenius reciprocity checked
/// against every row of `G`.
pub fn induced_character<T: Scalar>(
    table_g: &CharacterTable<T>,
    sub: &Subgroup,
    table_k: &CharacterTable<T>,
    f: &ClassFunction<T>,
) -> Result<InducedCharacter<T>> {
    check_embedding(table_g, sub, table_k)?;
    if !Arc::ptr_eq(f.classes(), table_k.classes()) {
        return Err(Error::GroupMismatch);
    }
    let gc = table_g.classes();
    let mut sums = vec![Complex::new(T::zero(), T::zero()); gc.class_count()];
    for (local, &y) in sub.embedding.iter().enumerate() {
        sums[gc.class_of(y)] = sums[gc.class_of(y)] + f.at(ElementId::new(local));
    }
    let index = T::from_count(gc.group_order()) / T::from_count(sub.order());
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(c, s)| s * index / T::from_count(gc.class_size(c)))
        .collect();
    let character = ClassFunction::new(gc.clone(), values)?;
    let mut residual = 0f64;
    for chi in table_g.rows() {
        let lhs = inner_product(&character, chi)?;
        let rhs = inner_product(f, &restrict(table_g, sub, table_k, chi)?)?;
        residual = residual.max(to_f64((lhs - rhs).norm()));
    }
    if residual > to_f64(T::tolerances().integrality) {
        return Err(Error::CrossCheckFailed(format!("Frobenius reciprocity residual {residual:e}")));
    }
    Ok(InducedCharacter {
        character,
        reciprocity_residual: residual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordCase {
    /// Row of `N`.
    pub row: usize,
    pub degree: u64,
    /// 1: `Ind σ` irreducible and `σ ≁ ʰσ`; 2: `Ind σ = θ ⊕ θε` and `Res θ = σ`.
    pub case: u8,
    /// Rows of `G` making up `Ind σ`.
    pub induced_rows: Vec<usize>,
    /// Row of `N` equal to `ʰσ`.
    pub conjugate_row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordTheoryReport {
    pub base_order: usize,
    pub group_order: usize,
    pub group_is_abelian: bool,
    pub cases: Vec<CliffordCase>,
    pub case_one: usize,
    pub case_two: usize,
}

/// Builds `G = N ⋊ ⟨α⟩` and classifies every irreducible character of `N`
/// into exactly one of the two index-two cases.
pub fn clifford_theory_check<T: Scalar>(base: &GroupTable, tau: &GroupMap) -> Result<CliffordTheoryReport> {
    let g = construct_semidirect_with_involution(base, tau)?;
    let n_order = base.order();
    let members: Vec<ElementId> = (0..n_order).map(ElementId::new).collect();
    let sub = Subgroup::from_elements(&g, &members)?;
    let table_g: CharacterTable<T> = compute_character_table(&g)?;
    let table_n: CharacterTable<T> = compute_character_table(&sub.table)?;
    let tol = T::tolerances().integrality;
    let h = ElementId::new(n_order);
    let h_inv = g.inv(h);

    let gc = table_g.classes();
    let eps_values: Vec<T> = (0..gc.class_count())
        .map(|c| if gc.representative(c).index() < n_order { T::one() } else { -T::one() })
        .collect();
    let epsilon = ClassFunction::from_real(gc.clone(), &eps_values)?;

    let nc = table_n.classes();
    // class permutation of N induced by n ↦ h⁻¹ n h
    let conj_perm: Vec<usize> = (0..nc.class_count())
        .map(|c| {
            let n = nc.representative(c);
            let image = g.mul(g.mul(h_inv, sub.embedding[n.index()]), h);
            nc.class_of(sub.local(image).expect("N is normal"))
        })
        .collect();

    let mut cases = Vec::with_capacity(table_n.len());
    for (i, sigma) in table_n.rows().iter().enumerate() {
        let h_sigma = sigma.permute_classes(&conj_perm);
        let conjugate_row = table_n.find_row(&h_sigma, tol).ok_or(Error::NoMatchingRow(i))?;
        let induced = induced_character(&table_g, &sub, &table_n, sigma)?.character;
        let norm = round_integer(inner_product(&induced, &induced)?, "induced norm")?;
        let constituents: Vec<usize> = table_g
            .rows()
            .iter()
            .enumerate()
            .filter_map(|(j, chi)| match inner_product(&induced, chi).map(|z| round_integer(z, "multiplicity")) {
                Ok(Ok(0)) => None,
                _ => Some(j),
            })
            .collect();

        let case_one = norm == 1 && conjugate_row != i && {
            let res = restrict(&table_g, &sub, &table_n, &induced)?;
            let expected = (sigma + &h_sigma)?;
            res.max_distance(&expected) < tol
        };
        let case_two = norm == 2 && constituents.len() == 2 && {
            let theta = table_g.row(constituents[0]);
            let twisted = (theta * &epsilon)?;
            let sum = (theta + &twisted)?;
            twisted.max_distance(theta) > tol
                && table_g.row(constituents[1]).max_distance(&twisted) < tol
                && sum.max_distance(&induced) < tol
                && restrict(&table_g, &sub, &table_n, theta)?.max_distance(sigma) < tol
        };
        let case = match (case_one, case_two) {
            (true, false) => 1,
            (false, true) => 2,
            _ => return Err(Error::CaseClassificationFailed(i)),
        };
        cases.push(CliffordCase {
            row: i,
            degree: table_n.degrees()[i],
            case,
            induced_rows: constituents,
            conjugate_row,
        });
    }
    let case_one = cases.iter().filter(|c| c.case == 1).count();
    Ok(CliffordTheoryReport {
        base_order: n_order,
        group_order: g.order(),
        group_is_abelian: g.is_abelian(),
        case_two: cases.len() - case_one,
        case_one,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_family, direct_product, FamilySpec, DEFAULT_CAP};
    use crate::morphisms::{tau_identity, tau_inverse};

    fn family(spec: FamilySpec) -> GroupTable {
        construct_family(&spec, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn induction_from_a3_to_s3() {
        let s3 = family(FamilySpec::Symmetric(3));
        let c = s3.element_by_label("(1 2 3)").unwrap();
        let a3 = Subgroup::generated(&s3, &[c]).unwrap();
        let tg: CharacterTable<f64> = compute_character_table(&s3).unwrap();
        let tk: CharacterTable<f64> = compute_character_table(&a3.table).unwrap();
        let ind = induced_character(&tg, &a3, &tk, tk.row(1)).unwrap();
        assert!(ind.character.max_distance(tg.row(2)) < 1e-9);
        // trivial character induces the permutation character on two cosets
        let perm = induced_character(&tg, &a3, &tk, tk.row(0)).unwrap().character;
        let expected = [2.0, 0.0, 2.0];
        assert!(perm.values().iter().zip(expected).all(|(z, e)| (z.re - e).abs() < 1e-9));
    }

    #[test]
    fn induction_from_the_whole_group() {
        let g = family(FamilySpec::Dihedral(5));
        let all: Vec<_> = g.elements().collect();
        let sub = Subgroup::from_elements(&g, &all).unwrap();
        let tg: CharacterTable<f64> = compute_character_table(&g).unwrap();
        let tk: CharacterTable<f64> = compute_character_table(&sub.table).unwrap();
        for (a, b) in tk.rows().iter().zip(tg.rows()) {
            let ind = induced_character(&tg, &sub, &tk, a).unwrap().character;
            assert!(ind.max_distance(b) < 1e-9);
        }
    }

    #[test]
    fn z3_with_inversion_is_cyclic_of_order_six() {
        let z3 = family(FamilySpec::Cyclic(3));
        let r = clifford_theory_check::<f64>(&z3, &tau_inverse(&z3)).unwrap();
        assert!(r.group_is_abelian);
        assert_eq!((r.case_one, r.case_two), (0, 3));
    }

    #[test]
    fn z3_with_identity_is_s3() {
        let z3 = family(FamilySpec::Cyclic(3));
        let r = clifford_theory_check::<f64>(&z3, &tau_identity(&z3).unwrap()).unwrap();
        assert!(!r.group_is_abelian);
        assert_eq!(r.cases[0].case, 2);
        assert_eq!((r.cases[1].case, r.cases[2].case), (1, 1));
        assert_eq!(r.cases[1].induced_rows, r.cases[2].induced_rows);
    }

    #[test]
    fn trivial_and_klein_bases() {
        let one = family(FamilySpec::Cyclic(1));
        let r = clifford_theory_check::<f64>(&one, &tau_inverse(&one)).unwrap();
        assert_eq!((r.cases.len(), r.case_two), (1, 1));
        let z2 = family(FamilySpec::Cyclic(2));
        let v4 = direct_product(&z2, &z2, DEFAULT_CAP).unwrap();
        let r = clifford_theory_check::<f64>(&v4, &tau_identity(&v4).unwrap()).unwrap();
        assert_eq!(r.case_two, 4);
    }
}
