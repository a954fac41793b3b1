//! τ-simple reducibility decided three ways (tensor multiplicities plus
//! self-conjugacy, orbits on `G²`, and the power-sum equality), plus the
//! class-invariance and abelian characterizations.

use num_bigint::BigUint;
use serde::Serialize;

use crate::characters::{compute_character_table, tau_conjugate_rows, tensor_multiplicities, CharacterTable};
use crate::conjugacy::{conjugacy_classes, decimal, gamma_orbit_scan, zeta_tau, PowerSums};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::morphisms::GroupMap;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TensorWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub multiplicity: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RowWitness {
    pub row: usize,
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefinitionCheck {
    /// Every `ρ₁ ⊗ ρ₂` is multiplicity free.
    pub multiplicity_free: bool,
    /// Every `ρ^τ ∼ ρ`.
    pub self_conjugate: bool,
    pub tensor_witness: Option<TensorWitness>,
    pub row_witness: Option<RowWitness>,
}

pub fn check_definition<T: Scalar>(table: &CharacterTable<T>, tau: &GroupMap) -> Result<DefinitionCheck> {
    let m = tensor_multiplicities(table)?;
    let k = table.len();
    let tensor_witness = (0..k)
        .flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l))))
        .find(|&(i, j, l)| m[i][j][l] > 1)
        .map(|(i, j, l)| TensorWitness {
            i,
            j,
            k: l,
            multiplicity: m[i][j][l],
        });
    let perm = tau_conjugate_rows(table, tau)?;
    let row_witness = perm
        .iter()
        .enumerate()
        .find(|(i, j)| i != *j)
        .map(|(row, &image)| RowWitness { row, image });
    Ok(DefinitionCheck {
        multiplicity_free: tensor_witness.is_none(),
        self_conjugate: row_witness.is_none(),
        tensor_witness,
        row_witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MackeyCosets {
    pub holds: bool,
    pub orbit_count: usize,
    pub invariant_orbit_count: usize,
}

/// Every simultaneous-conjugation orbit on `G²` is fixed by `τ × τ`.
pub fn check_mackey_cosets(group: &GroupTable, tau: &GroupMap, pair_budget: usize) -> Result<MackeyCosets> {
    let scan = gamma_orbit_scan(group, 2, tau, pair_budget)?;
    Ok(MackeyCosets {
        holds: scan.orbit_count == scan.tau_invariant_orbit_count,
        orbit_count: scan.orbit_count,
        invariant_orbit_count: scan.tau_invariant_orbit_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MackeyWigner {
    pub holds: bool,
    #[serde(serialize_with = "decimal")]
    pub sum_zeta_cubed: BigUint,
    #[serde(serialize_with = "decimal")]
    pub sum_v_squared: BigUint,
}

/// `Σ ζ_τ(g)³ = Σ v(g)²`, compared exactly.
pub fn check_mackey_wigner(group: &GroupTable, tau: &GroupMap) -> Result<MackeyWigner> {
    let sums = PowerSums::new(&conjugacy_classes(group), &zeta_tau(group, tau)?);
    let report = sums.report(2)?;
    Ok(MackeyWigner {
        holds: report.equal,
        sum_zeta_cubed: report.sum_zeta_n1,
        sum_v_squared: report.sum_v_n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SRVerdict {
    pub definition_mf: bool,
    pub definition_selfconj: bool,
    /// `None` when the pair scan did not fit in the budget.
    pub mackey_cosets: Option<bool>,
    pub mackey_wigner: bool,
    pub witnesses: Vec<String>,
    #[serde(serialize_with = "decimal")]
    pub sum_zeta_cubed: BigUint,
    #[serde(serialize_with = "decimal")]
    pub sum_v_squared: BigUint,
    pub partially_verified: bool,
}

impl SRVerdict {
    pub fn by_definition(&self) -> bool {
        self.definition_mf && self.definition_selfconj
    }

    /// Whether every route that ran gave the same answer.
    pub fn agree(&self) -> bool {
        let d = self.by_definition();
        d == self.mackey_wigner && self.mackey_cosets.is_none_or(|c| c == d)
    }

    /// The common verdict, or `None` if the routes disagree.
    pub fn simply_reducible(&self) -> Option<bool> {
        self.agree().then_some(self.mackey_wigner)
    }
}

/// Runs all three routes. Disagreement is reported in the verdict, never
/// reconciled.
pub fn simple_reducibility<T: Scalar>(
    group: &GroupTable,
    tau: &GroupMap,
    table: &CharacterTable<T>,
    pair_budget: usize,
) -> Result<SRVerdict> {
    let def = check_definition(table, tau)?;
    let mw = check_mackey_wigner(group, tau)?;
    let (cosets, partial) = match check_mackey_cosets(group, tau, pair_budget) {
        Ok(c) => (Some(c), false),
        Err(Error::BudgetExceeded { .. }) => (None, true),
        Err(e) => return Err(e),
    };
    let mut witnesses = Vec::new();
    if let Some(w) = def.tensor_witness {
        witnesses.push(format!(
            "row {} ⊗ row {} contains row {} with multiplicity {}",
            w.i, w.j, w.k, w.multiplicity
        ));
    }
    if let Some(w) = def.row_witness {
        witnesses.push(format!("τ sends row {} to row {}", w.row, w.image));
    }
    if let Some(c) = cosets.filter(|c| !c.holds) {
        witnesses.push(format!(
            "{} of {} pair orbits are not τ-invariant",
            c.orbit_count - c.invariant_orbit_count,
            c.orbit_count
        ));
    }
    if !mw.holds {
        witnesses.push(format!("Σζ³ = {} < Σv² = {}", mw.sum_zeta_cubed, mw.sum_v_squared));
    }
    Ok(SRVerdict {
        definition_mf: def.multiplicity_free,
        definition_selfconj: def.self_conjugate,
        mackey_cosets: cosets.map(|c| c.holds),
        mackey_wigner: mw.holds,
        witnesses,
        sum_zeta_cubed: mw.sum_zeta_cubed,
        sum_v_squared: mw.sum_v_squared,
        partially_verified: partial,
    })
}

/// Convenience wrapper computing the table with `f64`.
pub fn simple_reducibility_f64(group: &GroupTable, tau: &GroupMap, pair_budget: usize) -> Result<SRVerdict> {
    let table = compute_character_table::<f64>(group)?;
    simple_reducibility(group, tau, &table, pair_budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassInvarianceCheck {
    /// `Σ ζ_τ² = Σ v`
    pub sum_equality: bool,
    pub classes_invariant: bool,
    pub all_rows_tau_selfconj: bool,
    pub all_equal: bool,
}

/// The three equivalent forms of "τ fixes every class".
pub fn class_invariance_check<T: Scalar>(table: &CharacterTable<T>, tau: &GroupMap) -> Result<ClassInvarianceCheck> {
    let group = table.group();
    let sums = PowerSums::new(table.classes(), &zeta_tau(group, tau)?);
    let sum_equality = sums.report(1)?.equal;
    let classes_invariant = table.classes().invariant_flags(tau).into_iter().all(|f| f);
    let all_rows_tau_selfconj = tau_conjugate_rows(table, tau)?
        .into_iter()
        .enumerate()
        .all(|(i, j)| i == j);
    let all_equal = sum_equality == classes_invariant && classes_invariant == all_rows_tau_selfconj;
    let check = ClassInvarianceCheck {
        sum_equality,
        classes_invariant,
        all_rows_tau_selfconj,
        all_equal,
    };
    if !all_equal {
        return Err(Error::CrossCheckFailed(format!("class invariance forms disagree: {check:?}")));
    }
    Ok(check)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianCharacterization {
    /// `Σ ζ_τ⁴ = Σ v³`
    pub equality_at_3: bool,
    pub is_abelian_and_tau_identity: bool,
}

pub fn abelian_characterization(group: &GroupTable, tau: &GroupMap) -> Result<AbelianCharacterization> {
    let sums = PowerSums::new(&conjugacy_classes(group), &zeta_tau(group, tau)?);
    let result = AbelianCharacterization {
        equality_at_3: sums.report(3)?.equal,
        is_abelian_and_tau_identity: group.is_abelian() && tau.is_identity(),
    };
    if result.equality_at_3 != result.is_abelian_and_tau_identity {
        return Err(Error::CrossCheckFailed(format!("abelian characterization fails: {result:?}")));
    }
    Ok(result)
}

/// Equality flags of `Σ ζ_τ^{n+1} = Σ v^n` for `n = 1..=max_n`, checked to be
/// downward closed.
pub fn equality_chain(group: &GroupTable, tau: &GroupMap, max_n: u32) -> Result<Vec<bool>> {
    let sums = PowerSums::new(&conjugacy_classes(group), &zeta_tau(group, tau)?);
    let flags = (1..=max_n).map(|n| sums.report(n).map(|r| r.equal)).collect::<Result<Vec<_>>>()?;
    if let Some(top) = flags.iter().rposition(|&f| f) {
        if flags[..top].iter().any(|&f| !f) {
            return Err(Error::CrossCheckFailed(format!("equality is not downward closed: {flags:?}")));
        }
    }
    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::DEFAULT_PAIR_BUDGET;
    use crate::group::{construct_family, direct_product, FamilySpec, DEFAULT_CAP};
    use crate::morphisms::{tau_clifford, tau_identity, tau_inverse};

    fn family(spec: FamilySpec) -> GroupTable {
        construct_family(&spec, DEFAULT_CAP).unwrap()
    }

    fn table(g: &GroupTable) -> CharacterTable<f64> {
        compute_character_table(g).unwrap()
    }

    #[test]
    fn definition_examples() {
        let s3 = family(FamilySpec::Symmetric(3));
        let d = check_definition(&table(&s3), &tau_inverse(&s3)).unwrap();
        assert!(d.multiplicity_free && d.self_conjugate);
        let z3 = family(FamilySpec::Cyclic(3));
        let d = check_definition(&table(&z3), &tau_inverse(&z3)).unwrap();
        assert!(d.multiplicity_free && !d.self_conjugate);
        assert_eq!(d.row_witness, Some(RowWitness { row: 1, image: 2 }));
    }

    #[test]
    fn icosahedral_group_has_real_characters_but_is_not_simply_reducible() {
        let a5 = family(FamilySpec::Alternating(5));
        let z2 = family(FamilySpec::Cyclic(2));
        let g = direct_product(&a5, &z2, DEFAULT_CAP).unwrap();
        let d = check_definition(&table(&g), &tau_inverse(&g)).unwrap();
        assert!(!d.multiplicity_free && d.self_conjugate);
        assert!(d.tensor_witness.unwrap().multiplicity >= 2);
    }

    #[test]
    fn coset_examples() {
        let q8 = family(FamilySpec::Quaternion8);
        assert!(check_mackey_cosets(&q8, &tau_inverse(&q8), DEFAULT_PAIR_BUDGET).unwrap().holds);
        let z3 = family(FamilySpec::Cyclic(3));
        assert!(!check_mackey_cosets(&z3, &tau_inverse(&z3), DEFAULT_PAIR_BUDGET).unwrap().holds);
        let cl3 = family(FamilySpec::Clifford(3));
        let t = tau_clifford(&cl3).unwrap();
        assert!(check_mackey_cosets(&cl3, &t, DEFAULT_PAIR_BUDGET).unwrap().holds);
    }

    #[test]
    fn wigner_examples() {
        let s4 = family(FamilySpec::Symmetric(4));
        assert!(check_mackey_wigner(&s4, &tau_inverse(&s4)).unwrap().holds);
        let s3 = family(FamilySpec::Symmetric(3));
        let mw = check_mackey_wigner(&s3, &tau_inverse(&s3)).unwrap();
        assert_eq!(mw.sum_v_squared, BigUint::from(66u32));
        let a5 = family(FamilySpec::Alternating(5));
        let mw = check_mackey_wigner(&a5, &tau_inverse(&a5)).unwrap();
        assert!(mw.sum_zeta_cubed < mw.sum_v_squared);
    }

    #[test]
    fn verdicts_agree() {
        for spec in [
            FamilySpec::Symmetric(3),
            FamilySpec::Symmetric(4),
            FamilySpec::Quaternion8,
            FamilySpec::Alternating(4),
            FamilySpec::Cyclic(5),
            FamilySpec::Dihedral(6),
        ] {
            let g = family(spec.clone());
            let v = simple_reducibility_f64(&g, &tau_inverse(&g), DEFAULT_PAIR_BUDGET).unwrap();
            assert!(v.agree(), "{spec:?}: {v:?}");
            assert!(!v.partially_verified);
        }
        let s4 = family(FamilySpec::Symmetric(4));
        let v = simple_reducibility_f64(&s4, &tau_inverse(&s4), 10).unwrap();
        assert!(v.partially_verified && v.mackey_cosets.is_none());
    }

    #[test]
    fn class_invariance_examples() {
        let q8 = family(FamilySpec::Quaternion8);
        let c = class_invariance_check(&table(&q8), &tau_inverse(&q8)).unwrap();
        assert!(c.sum_equality && c.classes_invariant && c.all_rows_tau_selfconj);
        let z3 = family(FamilySpec::Cyclic(3));
        let c = class_invariance_check(&table(&z3), &tau_inverse(&z3)).unwrap();
        assert!(!c.sum_equality && !c.classes_invariant && !c.all_rows_tau_selfconj);
        let c = class_invariance_check(&table(&z3), &tau_identity(&z3).unwrap()).unwrap();
        assert!(c.all_equal && c.classes_invariant);
    }

    #[test]
    fn abelian_examples() {
        let z5 = family(FamilySpec::Cyclic(5));
        let a = abelian_characterization(&z5, &tau_identity(&z5).unwrap()).unwrap();
        assert!(a.equality_at_3 && a.is_abelian_and_tau_identity);
        let a = abelian_characterization(&z5, &tau_inverse(&z5)).unwrap();
        assert!(!a.equality_at_3 && !a.is_abelian_and_tau_identity);
        let s3 = family(FamilySpec::Symmetric(3));
        assert!(!abelian_characterization(&s3, &tau_inverse(&s3)).unwrap().equality_at_3);
    }

    #[test]
    fn chains_are_downward_closed() {
        let s4 = family(FamilySpec::Symmetric(4));
        assert_eq!(equality_chain(&s4, &tau_inverse(&s4), 3).unwrap(), vec![true, true, false]);
        let z4 = family(FamilySpec::Cyclic(4));
        assert_eq!(equality_chain(&z4, &tau_identity(&z4).unwrap(), 4).unwrap(), vec![true; 4]);
    }
}
