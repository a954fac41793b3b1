//! Fully enumerated finite groups.
//!
//! Every group is materialized as a [`GroupTable`]: dense ids `0..|G|` with id
//! 0 the identity, a tabulated inverse, and a multiplication that is either a
//! dense `|G|×|G|` table or, for large orders, evaluated on demand from the
//! concrete elements the table was built from.

mod clifford;
mod families;
mod perm;
mod semidirect;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use clifford::{xi, CliffordElement};
pub use families::{construct_family, direct_product, permutation_group, FamilySpec};
pub use perm::{parse_cycles, Permutation};
pub use semidirect::construct_semidirect_with_involution;
pub use subgroup::Subgroup;

/// Largest order for which the full multiplication table is stored.
pub const DENSE_TABLE_LIMIT: usize = 4096;
/// Default cap on closure size.
pub const DEFAULT_CAP: usize = 20_000;
/// Above this order the axiom checks sample random triples instead of enumerating.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Where a table came from. Some operations (the Clifford anti-automorphism,
/// label parsing for permutation groups) depend on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    /// Elements are `±γ_A`; id `2·mask + sign_bit`.
    Clifford(usize),
    /// Closure of permutation generators on `1..=degree`.
    Permutations { degree: usize },
    /// Ids are `a·|right| + b`.
    DirectProduct { left_order: usize, right_order: usize },
    /// Ids are `e·|N| + n`.
    Semidirect { base_order: usize },
    Subgroup,
    Generic,
}

type MulFn = dyn Fn(u32, u32) -> u32 + Send + Sync;

#[derive(Clone)]
enum Multiplication {
    Dense(Arc<Vec<u32>>),
    OnDemand(Arc<MulFn>),
}

#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    mul: Multiplication,
    inv: Vec<ElementId>,
    labels: Vec<String>,
    label_index: HashMap<String, ElementId>,
    generators: Vec<ElementId>,
    family_tag: String,
    provenance: Provenance,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .field("family_tag", &self.family_tag)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Builds a table from a complete, closed element list whose first entry
    /// is the identity. `generators` index into `elements`.
    pub fn from_closed_elements<E, F>(
        elements: Vec<E>,
        generators: Vec<usize>,
        labels: Vec<String>,
        compose: F,
        family_tag: impl Into<String>,
        provenance: Provenance,
    ) -> Result<Self>
    where
        E: Clone + Eq + Hash + Send + Sync + 'static,
        F: Fn(&E, &E) -> E + Send + Sync + 'static,
    {
        let order = elements.len();
        if order == 0 {
            return Err(Error::NonGroup("empty element list".into()));
        }
        if labels.len() != order {
            return Err(Error::InvalidParameter("one label per element required".into()));
        }
        let index: HashMap<E, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        if index.len() != order {
            return Err(Error::NonGroup("duplicate elements".into()));
        }
        let lookup = |e: &E| -> Result<u32> {
            index
                .get(e)
                .copied()
                .ok_or_else(|| Error::NonGroup("element list is not closed".into()))
        };
        for &g in &generators {
            if g >= order {
                return Err(Error::InvalidParameter(format!("generator index {g} out of range")));
            }
            if compose(&elements[0], &elements[g]) != elements[g]
                || compose(&elements[g], &elements[0]) != elements[g]
            {
                return Err(Error::NonGroup("first element is not the identity".into()));
            }
        }

        // right multiplication by generators, then a BFS tree from the identity
        let gens: Vec<u32> = generators.iter().map(|&g| g as u32).collect();
        let mut right = vec![0u32; order * gens.len()];
        for (x, ex) in elements.iter().enumerate() {
            for (j, &s) in gens.iter().enumerate() {
                right[x * gens.len() + j] = lookup(&compose(ex, &elements[s as usize]))?;
            }
        }
        let ng = gens.len();
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; order];
        let mut seen = vec![false; order];
        let mut bfs = Vec::with_capacity(order);
        seen[0] = true;
        bfs.push(0u32);
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head] as usize;
            head += 1;
            for j in 0..ng {
                let y = right[x * ng + j] as usize;
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x as u32, j));
                    bfs.push(y as u32);
                }
            }
        }
        if bfs.len() != order {
            return Err(Error::NonGroup(format!(
                "generators reach {} of {} elements",
                bfs.len(),
                order
            )));
        }

        // inverses along the tree: (p·s)^{-1} = s^{-1}·p^{-1}
        let mut gen_inv = Vec::with_capacity(ng);
        for &s in &gens {
            let mut x = s as usize;
            let mut prev = 0usize;
            let mut steps = 0;
            while x != 0 {
                prev = x;
                x = lookup(&compose(&elements[x], &elements[s as usize]))? as usize;
                steps += 1;
                if steps > order {
                    return Err(Error::NonGroup("generator of infinite order".into()));
                }
            }
            gen_inv.push(prev as u32);
        }

        let mul = if order <= DENSE_TABLE_LIMIT {
            let mut table = vec![0u32; order * order];
            for x in 0..order {
                let row = &mut table[x * order..(x + 1) * order];
                row[0] = x as u32;
                for &y in &bfs[1..] {
                    let (p, j) = parent[y as usize].expect("tree covers all elements");
                    let xp = row[p as usize] as usize;
                    row[y as usize] = right[xp * ng + j];
                }
            }
            Multiplication::Dense(Arc::new(table))
        } else {
            let elements = Arc::new(elements.clone());
            let index = Arc::new(index.clone());
            Multiplication::OnDemand(Arc::new(move |a, b| {
                let c = compose(&elements[a as usize], &elements[b as usize]);
                index[&c]
            }))
        };

        let mut table = GroupTable {
            order,
            mul,
            inv: vec![ElementId::IDENTITY; order],
            labels: Vec::new(),
            label_index: HashMap::new(),
            generators: gens.iter().map(|&g| ElementId(g)).collect(),
            family_tag: family_tag.into(),
            provenance,
        };
        for &y in &bfs[1..] {
            let (p, j) = parent[y as usize].expect("tree covers all elements");
            let inv_y = table.mul(ElementId(gen_inv[j]), table.inv[p as usize]);
            table.inv[y as usize] = inv_y;
        }
        table.set_labels(labels)?;
        for g in 0..order {
            if table.mul(ElementId::new(g), table.inv[g]) != ElementId::IDENTITY {
                return Err(Error::NonGroup(format!("missing inverse for element {g}")));
            }
        }
        Ok(table)
    }

    /// Cayley closure of `generators` under `compose`. The identity is
    /// discovered (as the element fixing one probe generator, then verified
    /// on all of them) and receives id 0; remaining ids follow discovery order.
    pub fn enumerate_from_generators<E, F, L>(
        generators: &[E],
        compose: F,
        label: L,
        cap: usize,
        family_tag: impl Into<String>,
        provenance: Provenance,
    ) -> Result<Self>
    where
        E: Clone + Eq + Hash + Send + Sync + 'static,
        F: Fn(&E, &E) -> E + Send + Sync + 'static,
        L: Fn(&E) -> String,
    {
        if generators.is_empty() {
            return Err(Error::InvalidParameter("generator list is empty".into()));
        }
        let mut elements: Vec<E> = Vec::new();
        let mut index: HashMap<E, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for g in generators {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                elements.push(g.clone());
                queue.push_back(elements.len() - 1);
            }
        }
        let distinct_gens: Vec<E> = elements.clone();
        while let Some(x) = queue.pop_front() {
            for s in &distinct_gens {
                let y = compose(&elements[x], s);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let probe = &distinct_gens[0];
        let identity = elements
            .iter()
            .position(|e| compose(e, probe) == *probe)
            .ok_or_else(|| Error::NonGroup("no identity in the closure".into()))?;
        let e = elements[identity].clone();
        for s in &distinct_gens {
            if compose(&e, s) != *s || compose(s, &e) != *s {
                return Err(Error::NonGroup("identity candidate fails on a generator".into()));
            }
        }
        let e = elements.remove(identity);
        elements.insert(0, e);
        let new_index: HashMap<&E, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let gen_ids: Vec<usize> = generators.iter().map(|g| new_index[g]).collect();
        let mut dedup = Vec::new();
        for g in gen_ids {
            if !dedup.contains(&g) {
                dedup.push(g);
            }
        }
        let labels = elements.iter().map(label).collect();
        Self::from_closed_elements(elements, dedup, labels, compose, family_tag, provenance)
    }

    fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), ElementId::new(i)).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate label `{l}`")));
            }
        }
        self.labels = labels;
        self.label_index = index;
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.mul {
            Multiplication::Dense(t) => ElementId(t[a.index() * self.order + b.index()]),
            Multiplication::OnDemand(f) => ElementId(f(a.0, b.0)),
        }
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inv[a.index()]
    }

    /// `g x g^{-1}`
    #[inline]
    pub fn conjugate(&self, g: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, g: ElementId, mut e: u64) -> ElementId {
        let mut base = g;
        let mut acc = ElementId::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: ElementId) -> usize {
        let mut x = g;
        let mut k = 1;
        while !x.is_identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElementId> + Clone {
        (0..self.order as u32).map(ElementId)
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn label(&self, g: ElementId) -> &str {
        &self.labels[g.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks up an element by label. Permutation groups also accept any
    /// cycle-notation spelling of the element.
    pub fn element_by_label(&self, label: &str) -> Result<ElementId> {
        if let Some(&g) = self.label_index.get(label.trim()) {
            return Ok(g);
        }
        let degree = match self.provenance {
            Provenance::Symmetric(n) | Provenance::Alternating(n) => Some(n),
            Provenance::Permutations { degree } => Some(degree),
            _ => None,
        };
        if let Some(degree) = degree {
            if let Ok(p) = parse_cycles(label, degree) {
                if let Some(&g) = self.label_index.get(&p.to_string()) {
                    return Ok(g);
                }
            }
        }
        Err(Error::UnknownElement(label.to_string()))
    }

    pub fn family_tag(&self) -> &str {
        &self.family_tag
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.mul, Multiplication::Dense(_))
    }

    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, &a)| self.generators[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    pub fn center(&self) -> Vec<ElementId> {
        self.elements()
            .filter(|&z| self.generators.iter().all(|&s| self.commutes(z, s)))
            .collect()
    }

    /// Checks identity, inverse and associativity axioms: all triples up to
    /// [`EXHAUSTIVE_AXIOM_LIMIT`], otherwise `samples` random triples.
    /// Returns whether the check was exhaustive.
    pub fn verify_axioms(&self, samples: usize, seed: u64) -> Result<bool> {
        for g in self.elements() {
            if self.mul(ElementId::IDENTITY, g) != g || self.mul(g, ElementId::IDENTITY) != g {
                return Err(Error::NonGroup(format!("identity axiom fails at {g}")));
            }
            if self.mul(g, self.inv(g)) != ElementId::IDENTITY
                || self.mul(self.inv(g), g) != ElementId::IDENTITY
            {
                return Err(Error::NonGroup(format!("inverse axiom fails at {g}")));
            }
        }
        let assoc = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if self.order <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in self.elements() {
                for b in self.elements() {
                    let ab = self.mul(a, b);
                    for c in self.elements() {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::NonGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
            Ok(true)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let a = ElementId::new(rng.gen_range(0..self.order));
                let b = ElementId::new(rng.gen_range(0..self.order));
                let c = ElementId::new(rng.gen_range(0..self.order));
                if !assoc(a, b, c) {
                    return Err(Error::NonGroup(format!("associativity fails at ({a}, {b}, {c})")));
                }
            }
            Ok(false)
        }
    }

    /// Every element reachable from the generators by right multiplication.
    pub fn generators_span(&self) -> bool {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![ElementId::IDENTITY];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &s in &self.generators {
                let y = self.mul(x, s);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupTable {
        let gens = vec![parse_cycles("(1 2)", 3).unwrap(), parse_cycles("(1 2 3)", 3).unwrap()];
        GroupTable::enumerate_from_generators(
            &gens,
            |a: &Permutation, b: &Permutation| a.compose(b),
            |p| p.to_string(),
            DEFAULT_CAP,
            "perm",
            Provenance::Permutations { degree: 3 },
        )
        .unwrap()
    }

    #[test]
    fn s3_from_generators() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(g.verify_axioms(0, 0).unwrap());
        assert!(!g.is_abelian());
        assert_eq!(g.label(ElementId::IDENTITY), "()");
        assert_eq!(g.label(ElementId::new(1)), "(1 2)");
        assert_eq!(g.label(ElementId::new(2)), "(1 2 3)");
        assert!(g.generators_span());
    }

    #[test]
    fn trivial_group_from_identity_generator() {
        let id = Permutation::identity(4);
        let g = GroupTable::enumerate_from_generators(
            &[id],
            |a: &Permutation, b: &Permutation| a.compose(b),
            |p| p.to_string(),
            DEFAULT_CAP,
            "perm",
            Provenance::Permutations { degree: 4 },
        )
        .unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(ElementId::IDENTITY), ElementId::IDENTITY);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![
            parse_cycles("(1 2)", 5).unwrap(),
            parse_cycles("(1 2 3 4 5)", 5).unwrap(),
        ];
        let err = GroupTable::enumerate_from_generators(
            &gens,
            |a: &Permutation, b: &Permutation| a.compose(b),
            |p| p.to_string(),
            50,
            "perm",
            Provenance::Permutations { degree: 5 },
        )
        .unwrap_err();
        assert_eq!(err, Error::ClosureCapExceeded { cap: 50 });
    }

    #[test]
    fn empty_generators_rejected() {
        let err = GroupTable::enumerate_from_generators(
            &Vec::<Permutation>::new(),
            |a: &Permutation, b: &Permutation| a.compose(b),
            |p| p.to_string(),
            DEFAULT_CAP,
            "perm",
            Provenance::Generic,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn monoid_without_inverses_is_not_a_group() {
        // multiplication mod 4 on {0,1,2,3} closes but 0 and 2 have no inverse
        let err = GroupTable::enumerate_from_generators(
            &[2u32, 3u32],
            |a: &u32, b: &u32| (a * b) % 4,
            |x| x.to_string(),
            DEFAULT_CAP,
            "monoid",
            Provenance::Generic,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonGroup(_)), "{err:?}");
    }

    #[test]
    fn label_lookup_accepts_other_cycle_spellings() {
        let g = s3();
        let a = g.element_by_label("(1 2 3)").unwrap();
        assert_eq!(g.element_by_label("(2,3,1)").unwrap(), a);
        assert_eq!(g.element_by_label("(3 1 2)").unwrap(), a);
        assert!(g.element_by_label("(1 4)").is_err());
    }

    #[test]
    fn on_demand_multiplication_above_dense_limit() {
        // S7 has 5040 elements, above the dense limit
        let gens = vec![
            parse_cycles("(1 2)", 7).unwrap(),
            parse_cycles("(1 2 3 4 5 6 7)", 7).unwrap(),
        ];
        let g = GroupTable::enumerate_from_generators(
            &gens,
            |a: &Permutation, b: &Permutation| a.compose(b),
            |p| p.to_string(),
            DEFAULT_CAP,
            "perm",
            Provenance::Permutations { degree: 7 },
        )
        .unwrap();
        assert_eq!(g.order(), 5040);
        assert!(!g.is_dense());
        assert!(!g.verify_axioms(20_000, 7).unwrap());
    }
}
