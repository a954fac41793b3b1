//! Automorphisms and involutory anti-automorphisms as element-id permutations.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{direct_product, CliffordElement, ElementId, GroupTable, Provenance};

/// Up to this order every pair is checked during validation.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 1024;
/// Random pairs checked on top of the generator pairs above the limit.
pub const SAMPLED_PAIRS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Automorphism,
    AntiAutomorphism,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Automorphism => "automorphism",
            MapKind::AntiAutomorphism => "anti-automorphism",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated automorphism or anti-automorphism of a particular group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    images: Vec<ElementId>,
    kind: MapKind,
    involutory: bool,
    exhaustive: bool,
}

impl GroupMap {
    #[inline]
    pub fn apply(&self, g: ElementId) -> ElementId {
        self.images[g.index()]
    }

    pub fn images(&self) -> &[ElementId] {
        &self.images
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_involutory(&self) -> bool {
        self.involutory
    }

    /// Whether validation checked every pair rather than a sample.
    pub fn was_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, g)| g.index() == i)
    }

    /// Ids fixed by the map.
    pub fn fixed_points(&self) -> Vec<ElementId> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, g)| g.index() == *i)
            .map(|(i, _)| ElementId::new(i))
            .collect()
    }

    /// `self ∘ other` as a raw id permutation (apply `other` first).
    pub fn compose_images(&self, other: &GroupMap) -> Vec<ElementId> {
        other.images.iter().map(|&g| self.apply(g)).collect()
    }

    /// The kind of `self ∘ other`.
    pub fn composed_kind(&self, other: &GroupMap) -> MapKind {
        if self.kind == other.kind {
            MapKind::Automorphism
        } else {
            MapKind::AntiAutomorphism
        }
    }
}

pub fn validate(group: &GroupTable, images: Vec<ElementId>, claimed: MapKind) -> Result<GroupMap> {
    validate_seeded(group, images, claimed, 0x7a75_6d61)
}

/// Validates `images` as a map of the claimed kind. All pairs are checked up
/// to [`EXHAUSTIVE_PAIR_LIMIT`]; above it every (element, generator) pair is
/// checked, which is sufficient, plus [`SAMPLED_PAIRS`] random pairs.
pub fn validate_seeded(group: &GroupTable, images: Vec<ElementId>, claimed: MapKind, seed: u64) -> Result<GroupMap> {
    let n = group.order();
    if images.len() != n {
        return Err(Error::InvalidMap(format!(
            "{} images for a group of order {n}",
            images.len()
        )));
    }
    let mut seen = vec![false; n];
    for &g in &images {
        if g.index() >= n || seen[g.index()] {
            return Err(Error::NotBijective);
        }
        seen[g.index()] = true;
    }
    if !images[0].is_identity() {
        return Err(Error::NotBijective);
    }
    let check = |a: ElementId, b: ElementId| -> Result<()> {
        let lhs = images[group.mul(a, b).index()];
        let (fa, fb) = (images[a.index()], images[b.index()]);
        let rhs = match claimed {
            MapKind::Automorphism => group.mul(fa, fb),
            MapKind::AntiAutomorphism => group.mul(fb, fa),
        };
        if lhs == rhs {
            Ok(())
        } else {
            Err(Error::HomomorphismViolation {
                kind: claimed.name(),
                a,
                b,
                expected: rhs,
                found: lhs,
            })
        }
    };
    let exhaustive = n <= EXHAUSTIVE_PAIR_LIMIT;
    if exhaustive {
        for a in group.elements() {
            for b in group.elements() {
                check(a, b)?;
            }
        }
    } else {
        for a in group.elements() {
            for &s in group.generators() {
                check(a, s)?;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_PAIRS {
            let a = ElementId::new(rng.gen_range(0..n));
            let b = ElementId::new(rng.gen_range(0..n));
            check(a, b)?;
        }
    }
    let involutory = images.iter().enumerate().all(|(i, g)| images[g.index()].index() == i);
    Ok(GroupMap {
        images,
        kind: claimed,
        involutory,
        exhaustive,
    })
}

/// `τ_inv(g) = g^{-1}`
pub fn tau_inverse(group: &GroupTable) -> GroupMap {
    GroupMap {
        images: group.elements().map(|g| group.inv(g)).collect(),
        kind: MapKind::AntiAutomorphism,
        involutory: true,
        exhaustive: true,
    }
}

/// The identity as an automorphism.
pub fn identity_automorphism(group: &GroupTable) -> GroupMap {
    GroupMap {
        images: group.elements().collect(),
        kind: MapKind::Automorphism,
        involutory: true,
        exhaustive: true,
    }
}

/// The identity as an anti-automorphism; valid exactly for abelian groups.
pub fn tau_identity(group: &GroupTable) -> Result<GroupMap> {
    validate(group, group.elements().collect(), MapKind::AntiAutomorphism)
}

/// `τ_{g₀}(g) = g₀ g^{-1} g₀^{-1}`, rejected unless involutory (which holds
/// exactly when `g₀²` is central).
pub fn tau_inner(group: &GroupTable, g0: ElementId) -> Result<GroupMap> {
    let images = group
        .elements()
        .map(|g| group.conjugate(g0, group.inv(g)))
        .collect();
    let map = validate(group, images, MapKind::AntiAutomorphism)?;
    if !map.involutory {
        let witness = group
            .elements()
            .find(|&g| map.apply(map.apply(g)) != g)
            .expect("non-involutory map moves some element");
        return Err(Error::NotInvolutory(witness));
    }
    Ok(map)
}

/// Conjugation `x ↦ g x g^{-1}` as an automorphism.
pub fn conjugation(group: &GroupTable, g: ElementId) -> GroupMap {
    let images = group.elements().map(|x| group.conjugate(g, x)).collect::<Vec<_>>();
    let involutory = images.iter().enumerate().all(|(i, y)| images[y.index()].index() == i);
    GroupMap {
        images,
        kind: MapKind::Automorphism,
        involutory,
        exhaustive: true,
    }
}

/// The anti-automorphism used for `CL(n)`: `τ'(εγ_A) = ε(−1)^{|A|(|A|+1)/2}γ_A`
/// when `n ≡ 3 (mod 4)`, inversion otherwise.
pub fn tau_clifford(group: &GroupTable) -> Result<GroupMap> {
    let n = match group.provenance() {
        Provenance::Clifford(n) => *n,
        _ => return Err(Error::NotCliffordGroup),
    };
    if n % 4 != 3 {
        return Ok(tau_inverse(group));
    }
    let images = group
        .elements()
        .map(|g| {
            let x = CliffordElement::from_id(g.index());
            let k = x.subset.count_ones();
            let flip = (k * (k + 1) / 2) % 2 == 1;
            ElementId::new(
                CliffordElement {
                    negative: x.negative ^ flip,
                    subset: x.subset,
                }
                .id(),
            )
        })
        .collect();
    validate(group, images, MapKind::AntiAutomorphism)
}

/// Componentwise extension `τ_n(g₁, …, g_n) = (τ(g₁), …, τ(g_n))` to the
/// direct power `G^n` (ids in mixed radix, first factor most significant).
pub fn extend_to_power(
    group: &GroupTable,
    tau: &GroupMap,
    n: usize,
    cap: usize,
) -> Result<(GroupTable, GroupMap)> {
    if n == 0 {
        return Err(Error::InvalidParameter("power must be positive".into()));
    }
    let mut power = group.clone();
    for _ in 1..n {
        power = direct_product(&power, group, cap)?;
    }
    let base = group.order();
    let images = power
        .elements()
        .map(|x| {
            let mut rest = x.index();
            let mut digits = Vec::with_capacity(n);
            for _ in 0..n {
                digits.push(rest % base);
                rest /= base;
            }
            let id = digits
                .iter()
                .rev()
                .fold(0usize, |acc, &d| acc * base + tau.apply(ElementId::new(d)).index());
            ElementId::new(id)
        })
        .collect();
    let map = validate(&power, images, tau.kind)?;
    Ok((power, map))
}

/// Extends generator images along the Cayley graph of the given domain
/// elements: `f(w·s) = f(s)·f(w)` for anti-automorphisms, `f(w)·f(s)` for
/// automorphisms. Every edge is checked, so a consistent extension is a
/// (anti-)homomorphism; bijectivity is then validated.
pub fn map_from_generator_images(
    group: &GroupTable,
    pairs: &[(ElementId, ElementId)],
    kind: MapKind,
    require_involutory: bool,
) -> Result<GroupMap> {
    let n = group.order();
    let mut image: Vec<Option<ElementId>> = vec![None; n];
    image[0] = Some(ElementId::IDENTITY);
    let mut queue = vec![ElementId::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let w = queue[head];
        head += 1;
        let fw = image[w.index()].expect("queued elements have images");
        for &(s, fs) in pairs {
            let ws = group.mul(w, s);
            let value = match kind {
                MapKind::Automorphism => group.mul(fw, fs),
                MapKind::AntiAutomorphism => group.mul(fs, fw),
            };
            match image[ws.index()] {
                Some(existing) if existing != value => return Err(Error::InconsistentImages(ws)),
                Some(_) => {}
                None => {
                    image[ws.index()] = Some(value);
                    queue.push(ws);
                }
            }
        }
    }
    if queue.len() != n {
        return Err(Error::InvalidParameter(format!(
            "the given elements generate {} of {} elements",
            queue.len(),
            n
        )));
    }
    let images = image.into_iter().map(|x| x.expect("all reached")).collect();
    let map = validate(group, images, kind)?;
    if require_involutory && !map.involutory {
        let witness = group
            .elements()
            .find(|&g| map.apply(map.apply(g)) != g)
            .expect("non-involutory map moves some element");
        return Err(Error::NotInvolutory(witness));
    }
    Ok(map)
}

/// `(x, y) ↦ (y, x)` on `H × H`.
pub fn swap_factors(group: &GroupTable) -> Result<GroupMap> {
    match *group.provenance() {
        Provenance::DirectProduct { left_order, right_order } if left_order == right_order => {
            let m = left_order;
            let images = group
                .elements()
                .map(|x| ElementId::new((x.index() % m) * m + x.index() / m))
                .collect();
            validate(group, images, MapKind::Automorphism)
        }
        _ => Err(Error::InvalidMap("swap needs a direct product of equal-order factors".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_family, FamilySpec, DEFAULT_CAP};

    fn family(spec: FamilySpec) -> GroupTable {
        construct_family(&spec, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn identity_is_an_involutory_automorphism() {
        let s3 = family(FamilySpec::Symmetric(3));
        let m = validate(&s3, s3.elements().collect(), MapKind::Automorphism).unwrap();
        assert!(m.is_involutory());
        assert!(m.was_exhaustive());
    }

    #[test]
    fn inversion_kinds_on_s3() {
        let s3 = family(FamilySpec::Symmetric(3));
        let inv: Vec<_> = s3.elements().map(|g| s3.inv(g)).collect();
        let m = validate(&s3, inv.clone(), MapKind::AntiAutomorphism).unwrap();
        assert!(m.is_involutory());
        match validate(&s3, inv, MapKind::Automorphism).unwrap_err() {
            Error::HomomorphismViolation { a, b, expected, found, .. } => {
                // the witness really breaks the rule
                assert_eq!(found, s3.inv(s3.mul(a, b)));
                assert_eq!(expected, s3.mul(s3.inv(a), s3.inv(b)));
                assert_ne!(expected, found);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_bijective_maps_rejected() {
        let z3 = family(FamilySpec::Cyclic(3));
        let e = ElementId::IDENTITY;
        assert_eq!(
            validate(&z3, vec![e, e, e], MapKind::Automorphism).unwrap_err(),
            Error::NotBijective
        );
        let moved = vec![ElementId::new(1), ElementId::new(0), ElementId::new(2)];
        assert_eq!(validate(&z3, moved, MapKind::Automorphism).unwrap_err(), Error::NotBijective);
        assert!(matches!(
            validate(&z3, vec![e], MapKind::Automorphism),
            Err(Error::InvalidMap(_))
        ));
    }

    #[test]
    fn tau_inverse_on_z3_in_power_order() {
        let z3 = family(FamilySpec::Cyclic(3));
        let t = tau_inverse(&z3);
        let ids: Vec<usize> = t.images().iter().map(|g| g.index()).collect();
        assert_eq!(ids, vec![0, 2, 1]);
    }

    #[test]
    fn tau_inverse_fixes_exactly_the_square_roots_of_one() {
        for spec in [FamilySpec::Symmetric(4), FamilySpec::Dihedral(5), FamilySpec::Quaternion8] {
            let g = family(spec);
            let t = tau_inverse(&g);
            let expected: Vec<_> = g.elements().filter(|&x| g.mul(x, x).is_identity()).collect();
            assert_eq!(t.fixed_points(), expected);
        }
        let q = family(FamilySpec::Quaternion8);
        let fixed: Vec<&str> = tau_inverse(&q).fixed_points().iter().map(|&x| q.label(x)).collect();
        assert_eq!(fixed, vec!["1", "-1"]);
    }

    #[test]
    fn tau_inner_examples() {
        let s3 = family(FamilySpec::Symmetric(3));
        assert_eq!(tau_inner(&s3, ElementId::IDENTITY).unwrap(), tau_inverse(&s3));
        let t = s3.element_by_label("(1 2)").unwrap();
        let m = tau_inner(&s3, t).unwrap();
        let c = s3.element_by_label("(1 2 3)").unwrap();
        assert_eq!(s3.label(m.apply(c)), "(1 2 3)");
        let z6 = family(FamilySpec::Cyclic(6));
        for g0 in z6.elements() {
            assert_eq!(tau_inner(&z6, g0).unwrap(), tau_inverse(&z6));
        }
    }

    #[test]
    fn tau_inner_with_non_central_square_is_rejected() {
        // in S3 a 3-cycle squares to a non-central element
        let s3 = family(FamilySpec::Symmetric(3));
        let c = s3.element_by_label("(1 2 3)").unwrap();
        assert!(matches!(tau_inner(&s3, c), Err(Error::NotInvolutory(_))));
    }

    #[test]
    fn tau_clifford_examples() {
        let g3 = family(FamilySpec::Clifford(3));
        let t = tau_clifford(&g3).unwrap();
        assert!(t.is_involutory());
        let g1 = g3.element_by_label("g{1}").unwrap();
        assert_eq!(g3.label(t.apply(g1)), "-g{1}");
        assert_eq!(t.apply(ElementId::IDENTITY), ElementId::IDENTITY);
        assert!(t.compose_images(&t).iter().enumerate().all(|(i, g)| g.index() == i));

        let g2 = family(FamilySpec::Clifford(2));
        let t2 = tau_clifford(&g2).unwrap();
        assert_eq!(t2, tau_inverse(&g2));
        let g12 = g2.element_by_label("g{1,2}").unwrap();
        assert_eq!(g2.label(t2.apply(g12)), "-g{1,2}");

        let s3 = family(FamilySpec::Symmetric(3));
        assert_eq!(tau_clifford(&s3).unwrap_err(), Error::NotCliffordGroup);
    }

    #[test]
    fn extension_to_powers() {
        let s3 = family(FamilySpec::Symmetric(3));
        let t = tau_inverse(&s3);
        let (p1, t1) = extend_to_power(&s3, &t, 1, DEFAULT_CAP).unwrap();
        assert_eq!(p1.order(), 6);
        assert_eq!(t1, t);
        let (p2, t2) = extend_to_power(&s3, &t, 2, DEFAULT_CAP).unwrap();
        assert_eq!(p2.order(), 36);
        assert_eq!(t2.images(), tau_inverse(&p2).images());
        assert!(t2.is_involutory());
    }

    #[test]
    fn generator_images_reproduce_inversion() {
        let s3 = family(FamilySpec::Symmetric(3));
        let l = |s: &str| s3.element_by_label(s).unwrap();
        let m = map_from_generator_images(
            &s3,
            &[(l("(1 2)"), l("(1 2)")), (l("(1 2 3)"), l("(1 3 2)"))],
            MapKind::AntiAutomorphism,
            true,
        )
        .unwrap();
        assert_eq!(m, tau_inverse(&s3));
    }

    #[test]
    fn generator_images_identity_on_abelian() {
        let z4 = family(FamilySpec::Cyclic(4));
        let a = z4.generators()[0];
        let m = map_from_generator_images(&z4, &[(a, a)], MapKind::AntiAutomorphism, true).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn generator_images_error_paths() {
        let s3 = family(FamilySpec::Symmetric(3));
        let l = |s: &str| s3.element_by_label(s).unwrap();
        // a valid anti-automorphism whose square is conjugation by a 3-cycle
        let pairs = [(l("(1 2)"), l("(1 3)")), (l("(1 2 3)"), l("(1 3 2)"))];
        let m = map_from_generator_images(&s3, &pairs, MapKind::AntiAutomorphism, false).unwrap();
        assert!(!m.is_involutory());
        assert!(matches!(
            map_from_generator_images(&s3, &pairs, MapKind::AntiAutomorphism, true),
            Err(Error::NotInvolutory(_))
        ));
        // a transposition cannot go to a 3-cycle
        let bad = [(l("(1 2)"), l("(1 2 3)")), (l("(1 2 3)"), l("(1 2 3)"))];
        assert!(matches!(
            map_from_generator_images(&s3, &bad, MapKind::AntiAutomorphism, false),
            Err(Error::InconsistentImages(_))
        ));
    }

    #[test]
    fn commuting_anti_automorphisms_compose_to_an_automorphism() {
        let q = family(FamilySpec::Quaternion8);
        let tau = tau_inverse(&q);
        let i = q.element_by_label("i").unwrap();
        let omega = tau_inner(&q, i).unwrap();
        assert_eq!(omega.compose_images(&tau), tau.compose_images(&omega));
        let composed = validate(&q, omega.compose_images(&tau), omega.composed_kind(&tau)).unwrap();
        assert_eq!(composed.kind(), MapKind::Automorphism);
        assert!(composed.is_involutory());
    }

    #[test]
    fn sampled_validation_above_the_limit() {
        let s7 = family(FamilySpec::Symmetric(7));
        let m = validate(&s7, tau_inverse(&s7).images().to_vec(), MapKind::AntiAutomorphism).unwrap();
        assert!(!m.was_exhaustive());
    }

    #[test]
    fn swap_on_square() {
        let s3 = family(FamilySpec::Symmetric(3));
        let p = direct_product(&s3, &s3, DEFAULT_CAP).unwrap();
        let sw = swap_factors(&p).unwrap();
        assert!(sw.is_involutory());
        assert_eq!(sw.fixed_points().len(), 6);
    }
}
