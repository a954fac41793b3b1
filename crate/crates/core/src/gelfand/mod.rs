//! Homogeneous spaces `X = G/K`, the (π^τ × π)-orbit analysis, the
//! Gelfand-pair criteria, spherical functions and Condition (★).

mod spherical;
mod star;

use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use crate::characters::{fs_indicators, inner_product, round_integer, twisted_fs_indicators, CharacterTable, ClassFunction};
use crate::conjugacy::require_involutory_anti;
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable, Subgroup};
use crate::morphisms::{tau_inverse, GroupMap};
use crate::scalar::Scalar;

pub use spherical::{spherical_functions, twisted_fs_gelfand, SphericalFunctions, TwistedGelfandReport};
pub use star::{condition_star, fixed_subgroup, ConditionStar};

/// Default budget on `|X|²` for the orbit analysis.
pub const DEFAULT_POINT_PAIR_BUDGET: usize = 4_000_000;

/// Left cosets `gK`, numbered by their minimal element; point 0 is `K`.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    group: Arc<GroupTable>,
    subgroup: Subgroup,
    point_of: Vec<u32>,
    representatives: Vec<ElementId>,
    generator_action: Vec<Vec<u32>>,
}

pub fn build_coset_space(group: &GroupTable, subgroup: &Subgroup) -> Result<CosetSpace> {
    if subgroup.embedding.last().is_none_or(|g| g.index() >= group.order()) {
        return Err(Error::NotASubgroup("embedding does not fit the group".into()));
    }
    // re-validate against this group
    Subgroup::from_elements(group, &subgroup.embedding)?;
    let n = group.order();
    let mut point_of = vec![u32::MAX; n];
    let mut representatives = Vec::with_capacity(n / subgroup.order());
    for g in group.elements() {
        if point_of[g.index()] != u32::MAX {
            continue;
        }
        let p = representatives.len() as u32;
        representatives.push(g);
        for &k in &subgroup.embedding {
            point_of[group.mul(g, k).index()] = p;
        }
    }
    let generator_action = group
        .generators()
        .iter()
        .map(|&s| {
            representatives
                .iter()
                .map(|&r| point_of[group.mul(s, r).index()])
                .collect()
        })
        .collect();
    Ok(CosetSpace {
        group: Arc::new(group.clone()),
        subgroup: subgroup.clone(),
        point_of,
        representatives,
        generator_action,
    })
}

impl CosetSpace {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// `|X|`
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    /// The point `gK`.
    #[inline]
    pub fn point_of(&self, g: ElementId) -> usize {
        self.point_of[g.index()] as usize
    }

    /// Minimal element of the coset `x`.
    pub fn representative(&self, x: usize) -> ElementId {
        self.representatives[x]
    }

    /// `π(g)x`
    #[inline]
    pub fn act(&self, g: ElementId, x: usize) -> usize {
        self.point_of(self.group.mul(g, self.representatives[x]))
    }

    /// Number of points fixed by `g`.
    pub fn fixed_points(&self, g: ElementId) -> usize {
        (0..self.size()).filter(|&x| self.act(g, x) == x).count()
    }

    /// The permutation character `g ↦ |Fix(g)|`.
    pub fn permutation_character<T: Scalar>(&self, table: &CharacterTable<T>) -> Result<ClassFunction<T>> {
        if table.group().order() != self.group.order() {
            return Err(Error::GroupMismatch);
        }
        let classes = table.classes();
        let values: Vec<T> = classes
            .representatives()
            .iter()
            .map(|&g| T::from_count(self.fixed_points(g)))
            .collect();
        ClassFunction::from_real(classes.clone(), &values)
    }

    /// Orbits of `K` on `X` (the rank of the action), via its generators.
    pub fn k_orbits(&self) -> Vec<u32> {
        let gens: Vec<ElementId> = self
            .subgroup
            .table
            .generators()
            .iter()
            .map(|&k| self.subgroup.embedding[k.index()])
            .collect();
        let mut orbit = vec![u32::MAX; self.size()];
        let mut next = 0;
        for start in 0..self.size() {
            if orbit[start] != u32::MAX {
                continue;
            }
            orbit[start] = next;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &k in &gens {
                    let y = self.act(k, x);
                    if orbit[y] == u32::MAX {
                        orbit[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        orbit
    }

    pub fn rank(&self) -> usize {
        self.k_orbits().iter().map(|&o| o as usize + 1).max().unwrap_or(0)
    }

    fn subgroup_contains(&self, g: ElementId) -> bool {
        self.subgroup.contains(g)
    }
}

/// Partition of `G` into double cosets `A g B` given the members of `A` and
/// `B`; each coset is numbered in order of its minimal element.
pub fn double_cosets(group: &GroupTable, left: &[ElementId], right: &[ElementId]) -> (Vec<u32>, Vec<ElementId>) {
    let mut of = vec![u32::MAX; group.order()];
    let mut reps = Vec::new();
    for g in group.elements() {
        if of[g.index()] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(g);
        for &a in left {
            let ag = group.mul(a, g);
            for &b in right {
                of[group.mul(ag, b).index()] = id;
            }
        }
    }
    (of, reps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitAnalysis {
    /// Flip-symmetric (π^τ × π)-orbits.
    pub m1: usize,
    /// Flip-asymmetric orbits.
    pub m2: usize,
    /// Minimal element of each double coset `τ(K) s K`.
    pub coset_reps: Vec<ElementId>,
    /// Per representative: `τ(s) ∈ τ(K) s K`.
    pub coset_tau_invariant: Vec<bool>,
    pub hom_sym_dim: usize,
    pub hom_skew_dim: usize,
}

/// Orbits of `g ↦ (π(τ(g⁻¹)), π(g))` on `X × X`, classified by the flip,
/// and matched one to one with the double cosets `τ(K)\G/K` through
/// `s ↦ orbit of (x₀, s x₀)`.
pub fn orbit_analysis(space: &CosetSpace, tau: &GroupMap, pair_budget: usize) -> Result<OrbitAnalysis> {
    let group = &space.group;
    require_involutory_anti(tau, group.order())?;
    let n = space.size();
    let needed = n.saturating_mul(n);
    if needed > pair_budget || needed > u32::MAX as usize {
        return Err(Error::BudgetExceeded {
            what: "point pair orbit scan",
            needed,
            budget: pair_budget,
        });
    }
    let moves: Vec<(Vec<u32>, &Vec<u32>)> = group
        .generators()
        .iter()
        .zip(&space.generator_action)
        .map(|(&s, pi_s)| {
            let twisted = tau.apply(group.inv(s));
            let first = (0..n).map(|x| space.act(twisted, x) as u32).collect();
            (first, pi_s)
        })
        .collect();
    let mut orbit = vec![u32::MAX; needed];
    let mut seeds = Vec::new();
    let mut stack = Vec::new();
    for start in 0..needed {
        if orbit[start] != u32::MAX {
            continue;
        }
        let id = seeds.len() as u32;
        seeds.push(start);
        orbit[start] = id;
        stack.push(start);
        while let Some(p) = stack.pop() {
            let (x1, x2) = (p / n, p % n);
            for (first, second) in &moves {
                let q = first[x1] as usize * n + second[x2] as usize;
                if orbit[q] == u32::MAX {
                    orbit[q] = id;
                    stack.push(q);
                }
            }
        }
    }
    let symmetric: Vec<bool> = seeds
        .iter()
        .enumerate()
        .map(|(id, &p)| orbit[(p % n) * n + p / n] as usize == id)
        .collect();
    let m1 = symmetric.iter().filter(|&&s| s).count();
    let m2 = symmetric.len() - m1;
    if m2 % 2 != 0 {
        return Err(Error::CrossCheckFailed(format!("odd number {m2} of asymmetric orbits")));
    }

    let k = &space.subgroup.embedding;
    let tau_k: Vec<ElementId> = k.iter().map(|&x| tau.apply(x)).collect();
    let (dc_of, coset_reps) = double_cosets(group, &tau_k, k);
    if coset_reps.len() != seeds.len() {
        return Err(Error::CrossCheckFailed(format!(
            "{} double cosets but {} orbits",
            coset_reps.len(),
            seeds.len()
        )));
    }
    let mut hit = vec![false; seeds.len()];
    let mut coset_tau_invariant = Vec::with_capacity(coset_reps.len());
    for &s in &coset_reps {
        let o = orbit[space.point_of(s)] as usize;
        if std::mem::replace(&mut hit[o], true) {
            return Err(Error::CrossCheckFailed("two double cosets share an orbit".into()));
        }
        let invariant = dc_of[tau.apply(s).index()] == dc_of[s.index()];
        if invariant != symmetric[o] {
            return Err(Error::CrossCheckFailed(format!(
                "double coset of {} and its orbit disagree on τ-invariance",
                group.label(s)
            )));
        }
        coset_tau_invariant.push(invariant);
    }
    Ok(OrbitAnalysis {
        m1,
        m2,
        coset_reps,
        coset_tau_invariant,
        hom_sym_dim: m1 + m2 / 2,
        hom_skew_dim: m2 / 2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GelfandReport {
    /// `χ_λ∘τ = χ_λ` for the permutation character.
    pub hypothesis: bool,
    /// Skew intertwiners vanish.
    pub condition_a: bool,
    /// Every orbit on `X × X` is flip-symmetric.
    pub condition_b: bool,
    /// Every `τ(K) s K` is τ-invariant, tested directly on representatives.
    pub condition_c: bool,
    /// Multiplicity free and `C_τ(σ) = 1` on every constituent.
    pub condition_d: bool,
    pub gelfand: bool,
    pub weakly_symmetric: bool,
    pub k_tau_invariant: bool,
    pub rank: usize,
    /// `(row, multiplicity)` for the constituents of the permutation character.
    pub constituents: Vec<(usize, u32)>,
    pub constituent_indicators: Vec<i8>,
    pub orbits: OrbitAnalysis,
    /// `None` if the equivalences were asserted, otherwise why not.
    pub skipped: Option<String>,
}

impl GelfandReport {
    pub fn all_conditions(&self) -> bool {
        self.condition_a && self.condition_b && self.condition_c && self.condition_d
    }
}

/// Decomposes the permutation character; returns `(row, multiplicity)`
/// pairs and checks `Σ m² = rank`.
pub fn permutation_constituents<T: Scalar>(space: &CosetSpace, table: &CharacterTable<T>) -> Result<Vec<(usize, u32)>> {
    let lambda = space.permutation_character(table)?;
    let mut out = Vec::new();
    let mut sum_sq = 0u64;
    for (i, chi) in table.rows().iter().enumerate() {
        let m = round_integer(inner_product(&lambda, chi)?, "permutation multiplicity")?;
        if m > 0 {
            out.push((i, m as u32));
            sum_sq += (m * m) as u64;
        }
    }
    let rank = space.rank();
    if sum_sq != rank as u64 {
        return Err(Error::CrossCheckFailed(format!("Σ m² = {sum_sq} but the rank is {rank}")));
    }
    Ok(out)
}

pub fn gelfand_criteria_report<T: Scalar>(
    space: &CosetSpace,
    tau: &GroupMap,
    table: &CharacterTable<T>,
    pair_budget: usize,
) -> Result<GelfandReport> {
    let group = &space.group;
    let orbits = orbit_analysis(space, tau, pair_budget)?;
    let hypothesis = group
        .elements()
        .all(|g| space.fixed_points(tau.apply(g)) == space.fixed_points(g));

    let k = &space.subgroup.embedding;
    let condition_c = orbits.coset_reps.iter().all(|&s| {
        // τ(s) = τ(k₁) s k₂ for some k₁, k₂ ⟺ s⁻¹ τ(k₁)⁻¹ τ(s) ∈ K for some k₁
        let s_inv = group.inv(s);
        let ts = tau.apply(s);
        k.iter()
            .any(|&k1| space.subgroup_contains(group.mul(group.mul(s_inv, group.inv(tau.apply(k1))), ts)))
    });

    let constituents = permutation_constituents(space, table)?;
    let gelfand = constituents.iter().all(|&(_, m)| m == 1);
    let indicators = twisted_fs_indicators(table, tau)?.values;
    let constituent_indicators: Vec<i8> = constituents.iter().map(|&(i, _)| indicators[i]).collect();
    let condition_d = gelfand && constituent_indicators.iter().all(|&c| c == 1);

    let (kk_of, _) = double_cosets(group, k, k);
    let weakly_symmetric = group.elements().all(|g| kk_of[tau.apply(g).index()] == kk_of[g.index()]);
    let k_tau_invariant = k.iter().all(|&x| space.subgroup_contains(tau.apply(x)));

    let report = GelfandReport {
        hypothesis,
        condition_a: orbits.hom_skew_dim == 0,
        condition_b: orbits.m2 == 0,
        condition_c,
        condition_d,
        gelfand,
        weakly_symmetric,
        k_tau_invariant,
        rank: space.rank(),
        constituents,
        constituent_indicators,
        orbits,
        skipped: (!hypothesis).then(|| "skipped: λ^τ ≁ λ, equivalences not asserted".to_string()),
    };
    if hypothesis {
        let c = [report.condition_a, report.condition_b, report.condition_c, report.condition_d];
        if c.iter().any(|&x| x != c[0]) {
            return Err(Error::CrossCheckFailed(format!("conditions (a)-(d) disagree: {c:?}")));
        }
    }
    if k_tau_invariant && !hypothesis {
        return Err(Error::CrossCheckFailed("τ(K) = K but λ^τ ≁ λ".into()));
    }
    if weakly_symmetric && !(k_tau_invariant && hypothesis && report.all_conditions()) {
        return Err(Error::CrossCheckFailed("weakly symmetric pair fails a consequence".into()));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GarsiaCheck {
    pub symmetric_orbits: bool,
    pub double_cosets_inverse_invariant: bool,
    /// Gelfand with every constituent of Frobenius-Schur indicator 1.
    pub gelfand_and_real: bool,
}

impl GarsiaCheck {
    pub fn holds(&self) -> bool {
        self.symmetric_orbits && self.double_cosets_inverse_invariant && self.gelfand_and_real
    }
}

/// Symmetric Gelfand pairs for inversion: orbit symmetry, `KsK = Ks⁻¹K`
/// and "Gelfand with real constituents" must agree.
pub fn garsia_criterion<T: Scalar>(space: &CosetSpace, table: &CharacterTable<T>, pair_budget: usize) -> Result<GarsiaCheck> {
    let report = gelfand_criteria_report(space, &tau_inverse(&space.group), table, pair_budget)?;
    let fs = fs_indicators(table)?;
    let check = GarsiaCheck {
        symmetric_orbits: report.condition_b,
        double_cosets_inverse_invariant: report.condition_c,
        gelfand_and_real: report.gelfand && report.constituents.iter().all(|&(i, _)| fs[i] == 1),
    };
    if check.symmetric_orbits != check.double_cosets_inverse_invariant || check.symmetric_orbits != check.gelfand_and_real {
        return Err(Error::CrossCheckFailed(format!("symmetric Gelfand pair criteria disagree: {check:?}")));
    }
    Ok(check)
}

pub(crate) fn zero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::compute_character_table;
    use crate::group::{construct_family, FamilySpec, DEFAULT_CAP};
    use crate::morphisms::extend_to_power;

    fn family(spec: FamilySpec) -> GroupTable {
        construct_family(&spec, DEFAULT_CAP).unwrap()
    }

    fn space(g: &GroupTable, gens: &[&str]) -> CosetSpace {
        let ids: Vec<_> = gens.iter().map(|s| g.element_by_label(s).unwrap()).collect();
        build_coset_space(g, &Subgroup::generated(g, &ids).unwrap()).unwrap()
    }

    #[test]
    fn coset_space_sizes() {
        let s3 = family(FamilySpec::Symmetric(3));
        assert_eq!(space(&s3, &["(1 2)"]).size(), 3);
        assert_eq!(space(&s3, &[]).size(), 6);
        assert_eq!(space(&s3, &["(1 2)", "(1 2 3)"]).size(), 1);
        let x = space(&s3, &["(1 2)"]);
        assert_eq!(x.point_of(ElementId::IDENTITY), 0);
        for g in s3.elements() {
            assert_eq!(x.act(g, 0), x.point_of(g));
        }
    }

    #[test]
    fn s3_mod_transposition_orbits() {
        let s3 = family(FamilySpec::Symmetric(3));
        let x = space(&s3, &["(1 2)"]);
        let a = orbit_analysis(&x, &tau_inverse(&s3), DEFAULT_POINT_PAIR_BUDGET).unwrap();
        assert_eq!((a.m1, a.m2, a.hom_sym_dim, a.hom_skew_dim), (2, 0, 2, 0));
        let whole = space(&s3, &["(1 2)", "(1 2 3)"]);
        let a = orbit_analysis(&whole, &tau_inverse(&s3), DEFAULT_POINT_PAIR_BUDGET).unwrap();
        assert_eq!((a.m1, a.m2), (1, 0));
    }

    #[test]
    fn regular_z3_has_asymmetric_orbits() {
        let z3 = family(FamilySpec::Cyclic(3));
        let x = space(&z3, &[]);
        let a = orbit_analysis(&x, &tau_inverse(&z3), DEFAULT_POINT_PAIR_BUDGET).unwrap();
        assert_eq!((a.m1, a.m2), (1, 2));
    }

    #[test]
    fn symmetric_pair_s4_s3() {
        let s4 = family(FamilySpec::Symmetric(4));
        let x = space(&s4, &["(1 2)", "(1 2 3)"]);
        let t: CharacterTable<f64> = compute_character_table(&s4).unwrap();
        let r = gelfand_criteria_report(&x, &tau_inverse(&s4), &t, DEFAULT_POINT_PAIR_BUDGET).unwrap();
        assert!(r.hypothesis && r.all_conditions() && r.gelfand && r.weakly_symmetric);
        assert_eq!(r.rank, 2);
        assert!(garsia_criterion(&x, &t, DEFAULT_POINT_PAIR_BUDGET).unwrap().holds());
    }

    #[test]
    fn garsia_fails_on_regular_z3() {
        let z3 = family(FamilySpec::Cyclic(3));
        let x = space(&z3, &[]);
        let t: CharacterTable<f64> = compute_character_table(&z3).unwrap();
        let g = garsia_criterion(&x, &t, DEFAULT_POINT_PAIR_BUDGET).unwrap();
        assert!(!g.holds() && !g.gelfand_and_real);
    }

    #[test]
    fn abelian_regular_pair_is_gelfand_but_not_symmetric() {
        let z4 = family(FamilySpec::Cyclic(4));
        let x = space(&z4, &[]);
        let t: CharacterTable<f64> = compute_character_table(&z4).unwrap();
        let r = gelfand_criteria_report(&x, &tau_inverse(&z4), &t, DEFAULT_POINT_PAIR_BUDGET).unwrap();
        assert!(r.gelfand && r.hypothesis);
        assert!(!r.condition_a && !r.condition_b && !r.condition_c && !r.condition_d);
    }

    #[test]
    fn diagonal_in_square_is_gelfand() {
        let s3 = family(FamilySpec::Symmetric(3));
        let (g, tau2) = extend_to_power(&s3, &tau_inverse(&s3), 2, DEFAULT_CAP).unwrap();
        let diag: Vec<_> = s3.elements().map(|x| ElementId::new(x.index() * 6 + x.index())).collect();
        let k = Subgroup::from_elements(&g, &diag).unwrap();
        let x = build_coset_space(&g, &k).unwrap();
        let t: CharacterTable<f64> = compute_character_table(&g).unwrap();
        let r = gelfand_criteria_report(&x, &tau2, &t, DEFAULT_POINT_PAIR_BUDGET).unwrap();
        assert!(r.gelfand && r.all_conditions());
    }

    #[test]
    fn orbit_budget() {
        let s4 = family(FamilySpec::Symmetric(4));
        let x = space(&s4, &[]);
        assert!(matches!(
            orbit_analysis(&x, &tau_inverse(&s4), 100),
            Err(Error::BudgetExceeded { needed: 576, .. })
        ));
    }
}
