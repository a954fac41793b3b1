use super::{ElementId, GroupTable, Provenance};
use crate::error::{Error, Result};

/// A subgroup `K ≤ G` as its own table plus the embedding into `G`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub table: GroupTable,
    /// `embedding[k]` is the id in `G` of subgroup element `k` (ascending).
    pub embedding: Vec<ElementId>,
    position: Vec<Option<u32>>,
}

impl Subgroup {
    /// Checks that `elements` contains the identity and is closed under
    /// multiplication and inversion.
    pub fn from_elements(group: &GroupTable, elements: &[ElementId]) -> Result<Self> {
        let mut members = elements.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&ElementId::IDENTITY) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let mut position = vec![None; group.order()];
        for (i, g) in members.iter().enumerate() {
            if g.index() >= group.order() {
                return Err(Error::NotASubgroup(format!("{g} is not an element")));
            }
            position[g.index()] = Some(i as u32);
        }
        for &a in &members {
            if position[group.inv(a).index()].is_none() {
                return Err(Error::NotASubgroup(format!("inverse of {} missing", group.label(a))));
            }
            for &b in &members {
                if position[group.mul(a, b).index()].is_none() {
                    return Err(Error::NotASubgroup(format!(
                        "{} * {} leaves the subset",
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        Self::build(group, members, position)
    }

    /// The subgroup generated by `generators`.
    pub fn generated(group: &GroupTable, generators: &[ElementId]) -> Result<Self> {
        let mut position = vec![None; group.order()];
        let mut members = vec![ElementId::IDENTITY];
        position[0] = Some(0);
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in generators {
                let y = group.mul(x, s);
                if position[y.index()].is_none() {
                    position[y.index()] = Some(0);
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        for (i, g) in members.iter().enumerate() {
            position[g.index()] = Some(i as u32);
        }
        Self::build(group, members, position)
    }

    fn build(group: &GroupTable, members: Vec<ElementId>, position: Vec<Option<u32>>) -> Result<Self> {
        let labels = members.iter().map(|&g| group.label(g).to_string()).collect();
        let gens = small_generating_set(group, &members, &position);
        let parent = group.clone();
        let table = GroupTable::from_closed_elements(
            members.clone(),
            gens,
            labels,
            move |&a: &ElementId, &b: &ElementId| parent.mul(a, b),
            format!("subgroup of {}", group.family_tag()),
            Provenance::Subgroup,
        )?;
        Ok(Subgroup {
            table,
            embedding: members,
            position,
        })
    }

    pub fn order(&self) -> usize {
        self.embedding.len()
    }

    pub fn contains(&self, g: ElementId) -> bool {
        self.position[g.index()].is_some()
    }

    /// Subgroup-local id of a parent element, if it lies in the subgroup.
    pub fn local(&self, g: ElementId) -> Option<ElementId> {
        self.position[g.index()].map(|i| ElementId::new(i as usize))
    }

    pub fn members(&self) -> &[ElementId] {
        &self.embedding
    }
}

/// Greedy generating set: add the smallest element not yet in the span.
fn small_generating_set(group: &GroupTable, members: &[ElementId], position: &[Option<u32>]) -> Vec<usize> {
    let mut in_span = vec![false; group.order()];
    let mut gens: Vec<ElementId> = Vec::new();
    for &m in members {
        if m.is_identity() || in_span[m.index()] {
            continue;
        }
        gens.push(m);
        in_span.iter_mut().for_each(|x| *x = false);
        in_span[0] = true;
        let mut span = vec![ElementId::IDENTITY];
        let mut head = 0;
        while head < span.len() {
            let x = span[head];
            head += 1;
            for &s in &gens {
                let y = group.mul(x, s);
                if !in_span[y.index()] {
                    in_span[y.index()] = true;
                    span.push(y);
                }
            }
        }
    }
    let mut out: Vec<usize> = gens
        .iter()
        .map(|g| position[g.index()].expect("generator is a member") as usize)
        .collect();
    if out.is_empty() {
        out.push(0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_family, FamilySpec, DEFAULT_CAP};

    #[test]
    fn generated_subgroups() {
        let s4 = construct_family(&FamilySpec::Symmetric(4), DEFAULT_CAP).unwrap();
        let t = s4.element_by_label("(1 2)").unwrap();
        let c = s4.element_by_label("(1 2 3)").unwrap();
        let k = Subgroup::generated(&s4, &[t, c]).unwrap();
        assert_eq!(k.order(), 6);
        assert!(k.table.verify_axioms(0, 0).unwrap());
        assert!(k.contains(t) && k.contains(c));
        assert!(!k.contains(s4.element_by_label("(1 4)").unwrap()));
        assert_eq!(k.embedding[k.local(c).unwrap().index()], c);
    }

    #[test]
    fn rejects_non_subgroups() {
        let s3 = construct_family(&FamilySpec::Symmetric(3), DEFAULT_CAP).unwrap();
        let t = s3.element_by_label("(1 2)").unwrap();
        let u = s3.element_by_label("(1 3)").unwrap();
        assert!(matches!(
            Subgroup::from_elements(&s3, &[ElementId::IDENTITY, t, u]),
            Err(Error::NotASubgroup(_))
        ));
        assert!(matches!(Subgroup::from_elements(&s3, &[t]), Err(Error::NotASubgroup(_))));
        let k = Subgroup::from_elements(&s3, &[ElementId::IDENTITY, t]).unwrap();
        assert_eq!(k.order(), 2);
    }

    #[test]
    fn whole_group_and_trivial() {
        let q = construct_family(&FamilySpec::Quaternion8, DEFAULT_CAP).unwrap();
        assert_eq!(Subgroup::generated(&q, q.generators()).unwrap().order(), 8);
        assert_eq!(Subgroup::generated(&q, &[]).unwrap().order(), 1);
    }
}
