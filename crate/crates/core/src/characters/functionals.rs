//! Inner products, tensor multiplicities and (twisted) Frobenius–Schur
//! indicators.

use num_complex::Complex;
use serde::Serialize;

use super::{CharacterTable, ClassFunction};
use crate::conjugacy::{require_involutory_anti, zeta_tau};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::morphisms::GroupMap;
use crate::scalar::Scalar;

fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rounds a quantity that must be an integer, rejecting it when the
/// residual (including any imaginary part) exceeds the scalar's tolerance.
pub fn round_integer<T: Scalar>(z: Complex<T>, what: &'static str) -> Result<i64> {
    let r = z.re.round();
    let residual = (z.re - r).abs().max(z.im.abs());
    if residual > T::tolerances().integrality || !residual.is_finite() {
        return Err(Error::NonIntegral {
            what,
            value: to_f64(z.re),
            residual: to_f64(residual),
        });
    }
    Ok(r.to_i64().expect("rounded value fits in i64"))
}

/// `(1/|G|) Σ_C |C| f₁(C) conj(f₂(C))`
pub fn inner_product<T: Scalar>(f1: &ClassFunction<T>, f2: &ClassFunction<T>) -> Result<Complex<T>> {
    if !f1.same_group(f2) {
        return Err(Error::GroupMismatch);
    }
    let classes = f1.classes();
    let sum = (0..classes.class_count()).fold(Complex::new(T::zero(), T::zero()), |acc, c| {
        acc + f1.at_class(c) * f2.at_class(c).conj() * T::from_count(classes.class_size(c))
    });
    Ok(sum / T::from_count(classes.group_order()))
}

/// `m[i][j][k] = ⟨χ_i χ_j, χ_k⟩`
pub fn tensor_multiplicities<T: Scalar>(table: &CharacterTable<T>) -> Result<Vec<Vec<Vec<u32>>>> {
    let k = table.len();
    let mut m = vec![vec![vec![0u32; k]; k]; k];
    for i in 0..k {
        for j in i..k {
            let product = (table.row(i) * table.row(j))?;
            for l in 0..k {
                let v = round_integer(inner_product(&product, table.row(l))?, "tensor multiplicity")?;
                let v = u32::try_from(v).map_err(|_| Error::CrossCheckFailed(format!("negative multiplicity {v}")))?;
                m[i][j][l] = v;
                m[j][i][l] = v;
            }
        }
    }
    Ok(m)
}

/// `n_C = |{g : τ(g)⁻¹g ∈ C}|` for every class `C`.
pub fn twisted_square_counts(group: &GroupTable, table_classes: &crate::conjugacy::ConjugacyData, tau: &GroupMap) -> Vec<u64> {
    let mut counts = vec![0u64; table_classes.class_count()];
    for g in group.elements() {
        let t = group.mul(group.inv(tau.apply(g)), g);
        counts[table_classes.class_of(t)] += 1;
    }
    counts
}

/// `(1/|G|) Σ_g f(τ(g)⁻¹g)` for an arbitrary class function.
pub fn twisted_trace<T: Scalar>(table: &CharacterTable<T>, f: &ClassFunction<T>, tau: &GroupMap) -> Result<Complex<T>> {
    require_involutory_anti(tau, table.group().order())?;
    if !std::sync::Arc::ptr_eq(f.classes(), table.classes()) {
        return Err(Error::GroupMismatch);
    }
    let counts = twisted_square_counts(table.group(), table.classes(), tau);
    Ok(trace_with_counts(f, &counts))
}

fn trace_with_counts<T: Scalar>(f: &ClassFunction<T>, counts: &[u64]) -> Complex<T> {
    let order: u64 = counts.iter().sum();
    counts
        .iter()
        .enumerate()
        .fold(Complex::new(T::zero(), T::zero()), |acc, (c, &n)| {
            acc + f.at_class(c) * T::from_count(n as usize)
        })
        / T::from_count(order as usize)
}

fn checked_indicator<T: Scalar>(row: usize, z: Complex<T>) -> Result<i8> {
    let v = round_integer(z, "indicator")?;
    if !(-1..=1).contains(&v) {
        return Err(Error::ValueOutOfRange { row, value: v });
    }
    Ok(v as i8)
}

/// Frobenius–Schur indicators `(1/|G|) Σ_g χ(g²)` of every row.
pub fn fs_indicators<T: Scalar>(table: &CharacterTable<T>) -> Result<Vec<i8>> {
    let group = table.group();
    let mut counts = vec![0u64; table.classes().class_count()];
    for g in group.elements() {
        counts[table.classes().class_of(group.mul(g, g))] += 1;
    }
    table
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| checked_indicator(i, trace_with_counts(r, &counts)))
        .collect()
}

pub fn fs_indicator<T: Scalar>(table: &CharacterTable<T>, row: usize) -> Result<i8> {
    Ok(fs_indicators(table)?[row])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistedIndicators {
    pub values: Vec<i8>,
    /// Largest gap between the trace formula and the `ζ_τ` formula.
    pub formula_gap: f64,
}

/// `C_τ(ρ) = (1/|G|) Σ_g χ(τ(g)⁻¹g)` for every row, checked against
/// `(1/|G|) Σ_g ζ_τ(g) conj(χ(g))`.
pub fn twisted_fs_indicators<T: Scalar>(table: &CharacterTable<T>, tau: &GroupMap) -> Result<TwistedIndicators> {
    let group = table.group();
    require_involutory_anti(tau, group.order())?;
    let counts = twisted_square_counts(group, table.classes(), tau);
    let zeta = zeta_tau(group, tau)?;
    let order = T::from_count(group.order());
    let mut values = Vec::with_capacity(table.len());
    let mut gap = 0f64;
    for (i, row) in table.rows().iter().enumerate() {
        let trace = trace_with_counts(row, &counts);
        let via_zeta = group
            .elements()
            .fold(Complex::new(T::zero(), T::zero()), |acc, g| {
                acc + row.at(g).conj() * T::from_count(zeta.get(g) as usize)
            })
            / order;
        let diff = to_f64((trace - via_zeta).norm());
        gap = gap.max(diff);
        if diff > to_f64(T::tolerances().integrality) {
            return Err(Error::CrossCheckFailed(format!(
                "twisted indicator of row {i}: trace formula and ζ formula differ by {diff:e}"
            )));
        }
        values.push(checked_indicator(i, trace)?);
    }
    Ok(TwistedIndicators { values, formula_gap: gap })
}

pub fn twisted_fs_indicator<T: Scalar>(table: &CharacterTable<T>, row: usize, tau: &GroupMap) -> Result<i8> {
    Ok(twisted_fs_indicators(table, tau)?.values[row])
}

/// For every row `i`, the row `j` with `χ_j(g) = χ_i(τ(g))`. Works for any
/// automorphism or anti-automorphism.
pub fn tau_conjugate_rows<T: Scalar>(table: &CharacterTable<T>, tau: &GroupMap) -> Result<Vec<usize>> {
    if tau.len() != table.group().order() {
        return Err(Error::InvalidMap("map and table belong to different groups".into()));
    }
    let perm = table.classes().class_permutation(tau);
    let tolerance = T::tolerances().integrality;
    table
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| table.find_row(&r.permute_classes(&perm), tolerance).ok_or(Error::NoMatchingRow(i)))
        .collect()
}

pub fn tau_conjugate_row<T: Scalar>(table: &CharacterTable<T>, row: usize, tau: &GroupMap) -> Result<usize> {
    Ok(tau_conjugate_rows(table, tau)?[row])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfConjugateCensus {
    pub count: usize,
    pub flags: Vec<bool>,
    /// `(1/|G|) Σ ζ_τ(g)²`
    pub from_zeta: u64,
    pub invariant_classes: usize,
}

/// Rows with `χ∘τ = χ`, counted three ways.
pub fn self_conjugate_census<T: Scalar>(table: &CharacterTable<T>, tau: &GroupMap) -> Result<SelfConjugateCensus> {
    let group = table.group();
    let perm = tau_conjugate_rows(table, tau)?;
    let flags: Vec<bool> = perm.iter().enumerate().map(|(i, &j)| i == j).collect();
    let count = flags.iter().filter(|&&f| f).count();
    let zeta = zeta_tau(group, tau)?;
    let sum_sq: u128 = zeta.values().iter().map(|&z| (z as u128) * (z as u128)).sum();
    let order = group.order() as u128;
    if sum_sq % order != 0 {
        return Err(Error::NotInteger {
            numerator: sum_sq,
            denominator: order,
        });
    }
    let census = SelfConjugateCensus {
        count,
        flags,
        from_zeta: (sum_sq / order) as u64,
        invariant_classes: table.classes().invariant_class_count(tau),
    };
    if census.count as u64 != census.from_zeta || census.count != census.invariant_classes {
        return Err(Error::CrossCheckFailed(format!(
            "self-conjugate rows {}, Σζ²/|G| = {}, invariant classes {}",
            census.count, census.from_zeta, census.invariant_classes
        )));
    }
    Ok(census)
}

/// `max_g |ζ_τ(g) − Σ_σ C_τ(σ) χ_σ(g)|`
pub fn zeta_expansion_residual<T: Scalar>(table: &CharacterTable<T>, tau: &GroupMap) -> Result<f64> {
    let indicators = twisted_fs_indicators(table, tau)?;
    let zeta = zeta_tau(table.group(), tau)?;
    let classes = table.classes();
    let mut worst = 0f64;
    for c in 0..classes.class_count() {
        let rhs = table
            .rows()
            .iter()
            .zip(&indicators.values)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (r, &v)| {
                acc + r.at_class(c) * T::from_f64_lossy(v as f64)
            });
        let lhs = T::from_count(zeta.get(classes.representative(c)) as usize);
        worst = worst.max(to_f64((rhs - Complex::new(lhs, T::zero())).norm()));
    }
    Ok(worst)
}

/// As [`zeta_expansion_residual`], failing when the residual is above the
/// integrality tolerance.
pub fn zeta_expansion_check<T: Scalar>(table: &CharacterTable<T>, tau: &GroupMap) -> Result<f64> {
    let residual = zeta_expansion_residual(table, tau)?;
    if residual > to_f64(T::tolerances().integrality) {
        return Err(Error::CrossCheckFailed(format!("ζ expansion residual {residual:e}")));
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::super::compute_character_table;
    use super::*;
    use crate::group::{construct_family, ElementId, FamilySpec, DEFAULT_CAP};
    use crate::morphisms::{identity_automorphism, tau_identity, tau_inner, tau_inverse};

    fn setup(spec: FamilySpec) -> (GroupTable, CharacterTable<f64>) {
        let g = construct_family(&spec, DEFAULT_CAP).unwrap();
        let t = compute_character_table(&g).unwrap();
        (g, t)
    }

    #[test]
    fn inner_products() {
        let (_, t) = setup(FamilySpec::Symmetric(4));
        for i in 0..t.len() {
            for j in 0..t.len() {
                let ip = inner_product(t.row(i), t.row(j)).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip.re - expected).abs() < 1e-9 && ip.im.abs() < 1e-9);
            }
            let reg = ClassFunction::regular(t.classes().clone());
            let ip = inner_product(&reg, t.row(i)).unwrap();
            assert_eq!(round_integer(ip, "degree").unwrap(), t.degrees()[i] as i64);
        }
    }

    #[test]
    fn s3_tensor_squares() {
        let (_, t) = setup(FamilySpec::Symmetric(3));
        let m = tensor_multiplicities(&t).unwrap();
        assert_eq!(m[2][2], vec![1, 1, 1]);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(m[0][j][k], u32::from(j == k));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let dim: u64 = (0..3).map(|k| m[i][j][k] as u64 * t.degrees()[k]).sum();
                assert_eq!(dim, t.degrees()[i] * t.degrees()[j]);
            }
        }
    }

    #[test]
    fn classical_indicators() {
        let (_, t) = setup(FamilySpec::Quaternion8);
        assert_eq!(fs_indicators(&t).unwrap(), vec![1, 1, 1, 1, -1]);
        let (_, t) = setup(FamilySpec::Cyclic(3));
        assert_eq!(fs_indicators(&t).unwrap(), vec![1, 0, 0]);
        assert_eq!(fs_indicator(&t, 0).unwrap(), 1);
    }

    #[test]
    fn twisted_indicators_match_classical_for_inversion() {
        for spec in [FamilySpec::Quaternion8, FamilySpec::Symmetric(4), FamilySpec::Cyclic(5)] {
            let (g, t) = setup(spec);
            let tw = twisted_fs_indicators(&t, &tau_inverse(&g)).unwrap();
            assert_eq!(tw.values, fs_indicators(&t).unwrap());
            assert!(tw.formula_gap < 1e-9);
        }
    }

    #[test]
    fn q8_inner_twisted_indicators() {
        let (g, t) = setup(FamilySpec::Quaternion8);
        let i = g.element_by_label("i").unwrap();
        let tau = tau_inner(&g, i).unwrap();
        let tw = twisted_fs_indicators(&t, &tau).unwrap();
        assert_eq!(tw.values[0], 1);
        assert!(tw.values.iter().all(|v| (-1..=1).contains(v)));
    }

    #[test]
    fn conjugate_rows() {
        let (g, t) = setup(FamilySpec::Cyclic(3));
        assert_eq!(tau_conjugate_rows(&t, &tau_inverse(&g)).unwrap(), vec![0, 2, 1]);
        assert_eq!(tau_conjugate_rows(&t, &tau_identity(&g).unwrap()).unwrap(), vec![0, 1, 2]);
        let (g, t) = setup(FamilySpec::Symmetric(4));
        assert_eq!(tau_conjugate_rows(&t, &identity_automorphism(&g)).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(tau_conjugate_row(&t, 3, &tau_inverse(&g)).unwrap(), 3);
    }

    #[test]
    fn census_examples() {
        let (g, t) = setup(FamilySpec::Quaternion8);
        let c = self_conjugate_census(&t, &tau_inverse(&g)).unwrap();
        assert_eq!((c.count, c.from_zeta, c.invariant_classes), (5, 5, 5));
        let (g, t) = setup(FamilySpec::Cyclic(3));
        assert_eq!(self_conjugate_census(&t, &tau_inverse(&g)).unwrap().count, 1);
        let (g, t) = setup(FamilySpec::Cyclic(6));
        assert_eq!(self_conjugate_census(&t, &tau_identity(&g).unwrap()).unwrap().count, 6);
    }

    #[test]
    fn zeta_expansions() {
        let (g, t) = setup(FamilySpec::Symmetric(3));
        assert!(zeta_expansion_check(&t, &tau_inverse(&g)).unwrap() < 1e-9);
        let (g, t) = setup(FamilySpec::Quaternion8);
        assert!(zeta_expansion_check(&t, &tau_inverse(&g)).unwrap() < 1e-9);
        let one: f64 = t
            .rows()
            .iter()
            .zip(fs_indicators(&t).unwrap())
            .map(|(r, v)| v as f64 * r.at(ElementId::IDENTITY).re)
            .sum();
        assert!((one - 2.0).abs() < 1e-9);
        let (g, t) = setup(FamilySpec::Cyclic(4));
        assert!(zeta_expansion_check(&t, &tau_identity(&g).unwrap()).unwrap() < 1e-9);
    }

    #[test]
    fn twisted_trace_is_additive() {
        let (g, t) = setup(FamilySpec::Dihedral(4));
        let tau = tau_inverse(&g);
        let tw = twisted_fs_indicators(&t, &tau).unwrap();
        for i in 0..t.len() {
            for j in 0..t.len() {
                let sum = (t.row(i) + t.row(j)).unwrap();
                let v = twisted_trace(&t, &sum, &tau).unwrap();
                assert_eq!(round_integer(v, "sum").unwrap(), (tw.values[i] + tw.values[j]) as i64);
            }
        }
    }
}
