use serde::Serialize;

use super::{build_coset_space, gelfand_criteria_report, DEFAULT_POINT_PAIR_BUDGET};
use crate::characters::compute_character_table;
use crate::conjugacy::conjugacy_classes;
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable, Subgroup};
use crate::morphisms::{tau_inverse, GroupMap, MapKind};

/// `{g : σ(g) = g}`
pub fn fixed_subgroup(group: &GroupTable, sigma: &GroupMap) -> Result<Subgroup> {
    if sigma.kind() != MapKind::Automorphism {
        return Err(Error::WrongKind {
            expected: MapKind::Automorphism.name(),
            found: sigma.kind().name(),
        });
    }
    if sigma.len() != group.order() {
        return Err(Error::InvalidMap(format!(
            "map has {} images for a group of order {}",
            sigma.len(),
            group.order()
        )));
    }
    Subgroup::from_elements(group, &sigma.fixed_points())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionStar {
    pub holds: bool,
    /// `|Ω|` for `Ω = {x σ(x⁻¹)}`.
    pub omega_size: usize,
    pub omega_classes_in_g: usize,
    pub omega_classes_in_k: usize,
    pub k_order: usize,
    pub involution: bool,
    /// Gelfand verdict for `(G, K)`, computed when σ is an involution.
    pub gelfand_pair: Option<bool>,
    pub rank: usize,
}

/// Compares `Ω` up to `G`-conjugacy with `Ω` up to conjugacy by the fixed
/// subgroup `K`. When σ is an involution and the counts agree, `(G, K)`
/// must be a Gelfand pair; that is checked against the character table.
pub fn condition_star(group: &GroupTable, sigma: &GroupMap) -> Result<ConditionStar> {
    let k = fixed_subgroup(group, sigma)?;
    let n = group.order();
    let mut in_omega = vec![false; n];
    for x in group.elements() {
        in_omega[group.mul(x, sigma.apply(group.inv(x))).index()] = true;
    }
    let omega: Vec<ElementId> = group.elements().filter(|g| in_omega[g.index()]).collect();

    let classes = conjugacy_classes(group);
    let mut g_classes: Vec<u32> = omega.iter().map(|&w| classes.class_of(w) as u32).collect();
    g_classes.sort_unstable();
    g_classes.dedup();

    // K-orbits on Ω: Ω is stable under K-conjugation since σ fixes K
    let k_gens = k.table.generators().iter().map(|&s| k.embedding[s.index()]).collect::<Vec<_>>();
    let mut seen = vec![false; n];
    let mut k_orbits = 0;
    for &w in &omega {
        if seen[w.index()] {
            continue;
        }
        k_orbits += 1;
        seen[w.index()] = true;
        let mut stack = vec![w];
        while let Some(y) = stack.pop() {
            for &s in &k_gens {
                let z = group.conjugate(s, y);
                if !in_omega[z.index()] {
                    return Err(Error::CrossCheckFailed("Ω is not stable under K-conjugation".into()));
                }
                if !std::mem::replace(&mut seen[z.index()], true) {
                    stack.push(z);
                }
            }
        }
    }

    let holds = g_classes.len() == k_orbits;
    let involution = sigma.is_involutory();
    let space = build_coset_space(group, &k)?;
    let rank = space.rank();
    let gelfand_pair = if involution {
        let table = compute_character_table::<f64>(group)?;
        let report = gelfand_criteria_report(&space, &tau_inverse(group), &table, DEFAULT_POINT_PAIR_BUDGET.max(space.size().pow(2)))?;
        if holds && !report.gelfand {
            return Err(Error::CrossCheckFailed("condition (★) holds for an involution but the pair is not Gelfand".into()));
        }
        Some(report.gelfand)
    } else {
        None
    };
    Ok(ConditionStar {
        holds,
        omega_size: omega.len(),
        omega_classes_in_g: g_classes.len(),
        omega_classes_in_k: k_orbits,
        k_order: k.order(),
        involution,
        gelfand_pair,
        rank,
    })
}
