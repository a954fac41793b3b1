use super::{ElementId, GroupTable, Provenance};
use crate::error::{Error, Result};
use crate::morphisms::{GroupMap, MapKind};

/// `N ⋊ ⟨α⟩` with `α(n) = τ(n^{-1})`.
///
/// Element `(n, e)` has id `e·|N| + n`; `(n, 0)` carries the label of `n` and
/// `h = (1_N, 1)` is labelled `h` (so `(n, 1) = n·h` reads `n*h`). In the
/// result `h² = 1` and `h n h = τ(n)^{-1}`.
pub fn construct_semidirect_with_involution(base: &GroupTable, tau: &GroupMap) -> Result<GroupTable> {
    if tau.kind() != MapKind::AntiAutomorphism || !tau.is_involutory() || tau.len() != base.order() {
        return Err(Error::InvalidMap(
            "semidirect product needs an involutory anti-automorphism of the base".into(),
        ));
    }
    let n = base.order() as u32;
    let alpha: Vec<u32> = base
        .elements()
        .map(|x| tau.apply(base.inv(x)).index() as u32)
        .collect();
    let elements: Vec<(u32, u32)> = (0..2).flat_map(|e| (0..n).map(move |x| (x, e))).collect();
    let labels = elements
        .iter()
        .map(|&(x, e)| {
            let l = base.label(ElementId(x));
            match (e, x) {
                (0, _) => l.to_string(),
                (_, 0) => "h".to_string(),
                _ => format!("{l}*h"),
            }
        })
        .collect();
    let mut gens: Vec<usize> = base
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| g.index())
        .collect();
    gens.push(n as usize);
    let table = base.clone();
    GroupTable::from_closed_elements(
        elements,
        gens,
        labels,
        move |&(x, e): &(u32, u32), &(y, f): &(u32, u32)| {
            let twisted = if e == 1 { alpha[y as usize] } else { y };
            (table.mul(ElementId(x), ElementId(twisted)).0, e ^ f)
        },
        format!("{} x| <alpha>", base.family_tag()),
        Provenance::Semidirect {
            base_order: base.order(),
        },
    )
}
