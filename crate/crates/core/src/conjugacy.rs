//! Conjugacy classes, twisted square-root counts and the orbit identities
//! relating them.

use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};
use crate::morphisms::{GroupMap, MapKind};

/// Default budget for the number of pairs stored by [`gamma_orbit_scan`].
pub const DEFAULT_PAIR_BUDGET: usize = 4_000_000;

pub(crate) fn decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

#[derive(Clone, Debug)]
pub struct ConjugacyData {
    group_order: usize,
    class_of: Vec<u32>,
    classes: Vec<Vec<ElementId>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyData {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn class_of(&self, g: ElementId) -> usize {
        self.class_of[g.index()] as usize
    }

    pub fn classes(&self) -> &[Vec<ElementId>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[ElementId] {
        &self.classes[i]
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// The minimal id in class `i`.
    pub fn representative(&self, i: usize) -> ElementId {
        self.classes[i][0]
    }

    pub fn representatives(&self) -> Vec<ElementId> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// `v(g)`, the order of the centralizer of `g`.
    pub fn centralizer_order(&self, g: ElementId) -> usize {
        self.group_order / self.class_size(self.class_of(g))
    }

    pub fn class_centralizer_order(&self, i: usize) -> usize {
        self.group_order / self.class_size(i)
    }

    /// Index of the class of inverses of class `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Whether class `i` is closed under inversion (ambivalent).
    pub fn is_real(&self, i: usize) -> bool {
        self.inverse_class[i] == i
    }

    /// The permutation of classes induced by an (anti-)automorphism.
    pub fn class_permutation(&self, map: &GroupMap) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.class_of(map.apply(c[0])))
            .collect()
    }

    /// Flags for classes mapped to themselves by `map`.
    pub fn invariant_flags(&self, map: &GroupMap) -> Vec<bool> {
        self.class_permutation(map)
            .into_iter()
            .enumerate()
            .map(|(i, j)| i == j)
            .collect()
    }

    pub fn invariant_class_count(&self, map: &GroupMap) -> usize {
        self.invariant_flags(map).into_iter().filter(|&f| f).count()
    }
}

/// Classes by flood fill under conjugation by the generators; classes are
/// numbered by their minimal element.
pub fn conjugacy_classes(group: &GroupTable) -> ConjugacyData {
    let n = group.order();
    let conj: Vec<Vec<u32>> = group
        .generators()
        .iter()
        .map(|&s| group.elements().map(|x| group.conjugate(s, x).index() as u32).collect())
        .collect();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut members = vec![ElementId::new(start)];
        class_of[start] = id;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for table in &conj {
                let y = table[x] as usize;
                if class_of[y] == u32::MAX {
                    class_of[y] = id;
                    members.push(ElementId::new(y));
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let inverse_class = classes
        .iter()
        .map(|c| class_of[group.inv(c[0]).index()] as usize)
        .collect();
    ConjugacyData {
        group_order: n,
        class_of,
        classes,
        inverse_class,
    }
}

pub(crate) fn require_involutory_anti(tau: &GroupMap, order: usize) -> Result<()> {
    if tau.len() != order {
        return Err(Error::InvalidMap(format!(
            "map has {} images, group has order {order}",
            tau.len()
        )));
    }
    if tau.kind() != MapKind::AntiAutomorphism {
        return Err(Error::InvalidMap("an anti-automorphism is required".into()));
    }
    if !tau.is_involutory() {
        return Err(Error::InvalidMap("an involutory map is required".into()));
    }
    Ok(())
}

/// `ζ_τ(g) = |{h : τ(h⁻¹)h = g}|` for every element.
#[derive(Clone, Debug)]
pub struct TwistedCounts {
    zeta: Vec<u64>,
    tau: Arc<GroupMap>,
}

impl TwistedCounts {
    #[inline]
    pub fn get(&self, g: ElementId) -> u64 {
        self.zeta[g.index()]
    }

    pub fn values(&self) -> &[u64] {
        &self.zeta
    }

    pub fn tau(&self) -> &GroupMap {
        &self.tau
    }

    pub fn total(&self) -> u64 {
        self.zeta.iter().sum()
    }

    /// One value per class, or `None` if some class is not constant.
    pub fn per_class(&self, classes: &ConjugacyData) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(classes.class_count());
        for c in classes.classes() {
            let v = self.get(c[0]);
            if c.iter().any(|&g| self.get(g) != v) {
                return None;
            }
            out.push(v);
        }
        Some(out)
    }
}

pub fn zeta_tau(group: &GroupTable, tau: &GroupMap) -> Result<TwistedCounts> {
    require_involutory_anti(tau, group.order())?;
    let mut zeta = vec![0u64; group.order()];
    for h in group.elements() {
        let g = group.mul(tau.apply(group.inv(h)), h);
        zeta[g.index()] += 1;
    }
    Ok(TwistedCounts {
        zeta,
        tau: Arc::new(tau.clone()),
    })
}

/// A left action of a group on `{0, …, points-1}`, stored for every element.
#[derive(Clone, Debug)]
pub struct PermutationAction {
    points: usize,
    generator_images: Vec<Vec<usize>>,
    images: Vec<Vec<u32>>,
}

impl PermutationAction {
    /// Extends generator images to the whole group by `π(ws) = π(w)π(s)` and
    /// checks that the extension is well defined.
    pub fn from_generators(group: &GroupTable, generators: &[(ElementId, Vec<usize>)], points: usize) -> Result<Self> {
        for (_, img) in generators {
            let mut seen = vec![false; points];
            if img.len() != points || img.iter().any(|&p| p >= points || std::mem::replace(&mut seen[p], true)) {
                return Err(Error::InvalidParameter("generator image is not a permutation of the points".into()));
            }
        }
        let n = group.order();
        let mut images: Vec<Option<Vec<u32>>> = vec![None; n];
        images[0] = Some((0..points as u32).collect());
        let mut queue = VecDeque::from([ElementId::IDENTITY]);
        let mut reached = 1;
        while let Some(w) = queue.pop_front() {
            let pw = images[w.index()].clone().expect("queued");
            for (s, ps) in generators {
                let ws = group.mul(w, *s);
                let composed: Vec<u32> = ps.iter().map(|&x| pw[x]).collect();
                match &images[ws.index()] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::InvalidParameter(format!(
                            "action is not a homomorphism at element {ws}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        images[ws.index()] = Some(composed);
                        reached += 1;
                        queue.push_back(ws);
                    }
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidParameter("action generators do not generate the group".into()));
        }
        Ok(PermutationAction {
            points,
            generator_images: generators.iter().map(|(_, p)| p.clone()).collect(),
            images: images.into_iter().map(|x| x.expect("reached")).collect(),
        })
    }

    /// The action of `group` on itself by conjugation.
    pub fn conjugation(group: &GroupTable) -> Self {
        let images: Vec<Vec<u32>> = group
            .elements()
            .map(|g| group.elements().map(|x| group.conjugate(g, x).index() as u32).collect())
            .collect();
        let generator_images = group
            .generators()
            .iter()
            .map(|s| images[s.index()].iter().map(|&x| x as usize).collect())
            .collect();
        PermutationAction {
            points: group.order(),
            generator_images,
            images,
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn apply(&self, g: ElementId, x: usize) -> usize {
        self.images[g.index()][x] as usize
    }

    fn group_order(&self) -> usize {
        self.images.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedOrbitCount {
    pub by_average: u64,
    pub by_enumeration: u64,
}

/// Number of orbits fixed by `alpha`, once as `(1/|G|) Σ_g |{x : π(g)x = αx}|`
/// and once by enumerating orbits; the two must agree.
pub fn twisted_orbit_count(action: &PermutationAction, alpha: &[usize]) -> Result<TwistedOrbitCount> {
    let points = action.points;
    if alpha.len() != points {
        return Err(Error::InvalidParameter("alpha has the wrong number of points".into()));
    }
    for (i, ps) in action.generator_images.iter().enumerate() {
        if (0..points).any(|x| alpha[ps[x]] != ps[alpha[x]]) {
            return Err(Error::NotCommuting { generator: i });
        }
    }
    let total: u128 = action
        .images
        .iter()
        .map(|img| (0..points).filter(|&x| img[x] as usize == alpha[x]).count() as u128)
        .sum();
    let order = action.group_order() as u128;
    if total % order != 0 {
        return Err(Error::NotInteger {
            numerator: total,
            denominator: order,
        });
    }
    let mut orbit = vec![u32::MAX; points];
    let mut next = 0u32;
    let mut fixed = 0u64;
    let mut queue = VecDeque::new();
    for start in 0..points {
        if orbit[start] != u32::MAX {
            continue;
        }
        orbit[start] = next;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for ps in &action.generator_images {
                let y = ps[x];
                if orbit[y] == u32::MAX {
                    orbit[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    let mut first = vec![usize::MAX; next as usize];
    for x in 0..points {
        let o = orbit[x] as usize;
        if first[o] == usize::MAX {
            first[o] = x;
        }
    }
    for (o, &x) in first.iter().enumerate() {
        if orbit[alpha[x]] as usize == o {
            fixed += 1;
        }
    }
    let count = TwistedOrbitCount {
        by_average: (total / order) as u64,
        by_enumeration: fixed,
    };
    if count.by_average != count.by_enumeration {
        return Err(Error::CrossCheckFailed(format!(
            "twisted orbit count: average {} vs enumeration {}",
            count.by_average, count.by_enumeration
        )));
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaScan {
    pub n: usize,
    pub orbit_count: usize,
    pub tau_invariant_orbit_count: usize,
}

/// Orbits of simultaneous conjugation on `G^n` for `n ∈ {1, 2}` and the
/// number of them fixed by the componentwise extension of `tau`.
pub fn gamma_orbit_scan(group: &GroupTable, n: usize, tau: &GroupMap, pair_budget: usize) -> Result<GammaScan> {
    require_involutory_anti(tau, group.order())?;
    match n {
        1 => {
            let classes = conjugacy_classes(group);
            Ok(GammaScan {
                n,
                orbit_count: classes.class_count(),
                tau_invariant_orbit_count: classes.invariant_class_count(tau),
            })
        }
        2 => scan_pairs(group, tau, pair_budget),
        _ => Err(Error::InvalidParameter(format!("orbit scans are limited to n = 1, 2, got {n}"))),
    }
}

fn scan_pairs(group: &GroupTable, tau: &GroupMap, budget: usize) -> Result<GammaScan> {
    let order = group.order();
    let needed = order.saturating_mul(order);
    if needed > budget || needed > u32::MAX as usize {
        return Err(Error::BudgetExceeded {
            what: "pair orbit scan",
            needed,
            budget,
        });
    }
    let conj: Vec<Vec<u32>> = group
        .generators()
        .iter()
        .map(|&s| group.elements().map(|x| group.conjugate(s, x).index() as u32).collect())
        .collect();
    let mut orbit = vec![u32::MAX; needed];
    // the minimal pair of each orbit, which is its seed in ascending order
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
            let (a, b) = (p / order, p % order);
            for table in &conj {
                let q = table[a] as usize * order + table[b] as usize;
                if orbit[q] == u32::MAX {
                    orbit[q] = id;
                    stack.push(q);
                }
            }
        }
    }
    let invariant = seeds
        .iter()
        .enumerate()
        .filter(|&(id, &p)| {
            let a = tau.apply(ElementId::new(p / order)).index();
            let b = tau.apply(ElementId::new(p % order)).index();
            orbit[a * order + b] as usize == id
        })
        .count();
    Ok(GammaScan {
        n: 2,
        orbit_count: seeds.len(),
        tau_invariant_orbit_count: invariant,
    })
}

/// Exact sums of centralizer orders and twisted square-root counts.
#[derive(Clone, Debug)]
pub struct PowerSums {
    group_order: usize,
    v: Vec<u64>,
    zeta: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSumReport {
    pub n: u32,
    #[serde(serialize_with = "decimal")]
    pub sum_v_n: BigUint,
    #[serde(serialize_with = "decimal")]
    pub sum_zeta_n1: BigUint,
    pub equal: bool,
    pub verified_against_orbits: Option<bool>,
}

impl PowerSums {
    pub fn new(classes: &ConjugacyData, zeta: &TwistedCounts) -> Self {
        let n = classes.group_order();
        PowerSums {
            group_order: n,
            v: (0..n).map(|g| classes.centralizer_order(ElementId::new(g)) as u64).collect(),
            zeta: zeta.values().to_vec(),
        }
    }

    /// `Σ_g v(g)^n`
    pub fn sum_v(&self, n: u32) -> BigUint {
        self.v.iter().map(|&v| BigUint::from(v).pow(n)).sum()
    }

    /// `Σ_g ζ_τ(g)^m`
    pub fn sum_zeta(&self, m: u32) -> BigUint {
        self.zeta
            .iter()
            .filter(|&&z| z > 0)
            .map(|&z| BigUint::from(z).pow(m))
            .sum()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Compares `Σ ζ_τ^{n+1}` with `Σ v^n`; the former can never exceed the latter.
    pub fn report(&self, n: u32) -> Result<PowerSumReport> {
        if n == 0 {
            return Err(Error::InvalidParameter("power sums need n ≥ 1".into()));
        }
        let sum_v_n = self.sum_v(n);
        let sum_zeta_n1 = self.sum_zeta(n + 1);
        if sum_zeta_n1 > sum_v_n {
            return Err(Error::CrossCheckFailed(format!(
                "Σζ^{} = {sum_zeta_n1} exceeds Σv^{n} = {sum_v_n}",
                n + 1
            )));
        }
        Ok(PowerSumReport {
            n,
            equal: sum_v_n == sum_zeta_n1,
            sum_v_n,
            sum_zeta_n1,
            verified_against_orbits: None,
        })
    }

    /// Checks `Σ v^n = |G|·#orbits` and `Σ ζ^{n+1} = |G|·#invariant orbits`.
    pub fn matches_scan(&self, scan: &GammaScan) -> bool {
        let order = BigUint::from(self.group_order);
        let n = scan.n as u32;
        self.sum_v(n) == &order * BigUint::from(scan.orbit_count)
            && self.sum_zeta(n + 1) == &order * BigUint::from(scan.tau_invariant_orbit_count)
    }
}

/// Power sums at exponent `n`, cross-checked against an orbit scan when
/// `n ≤ 2` and the scan fits in `pair_budget`.
pub fn power_sum_report(group: &GroupTable, tau: &GroupMap, n: u32, pair_budget: Option<usize>) -> Result<PowerSumReport> {
    let classes = conjugacy_classes(group);
    let zeta = zeta_tau(group, tau)?;
    let sums = PowerSums::new(&classes, &zeta);
    let mut report = sums.report(n)?;
    if let Some(budget) = pair_budget {
        if n <= 2 && (n == 1 || group.order().saturating_mul(group.order()) <= budget) {
            let scan = gamma_orbit_scan(group, n as usize, tau, budget)?;
            let ok = sums.matches_scan(&scan);
            if !ok {
                return Err(Error::CrossCheckFailed(format!(
                    "power sums at n = {n} disagree with the orbit scan {scan:?}"
                )));
            }
            report.verified_against_orbits = Some(ok);
        }
    }
    Ok(report)
}

/// Orbit count `(1/|G|) Σ v^n` as an exact integer.
pub fn orbit_count_from_sums(sums: &PowerSums, n: u32) -> Result<BigUint> {
    let order = BigUint::from(sums.group_order);
    let total = sums.sum_v(n);
    if !(&total % &order).is_zero() {
        return Err(Error::CrossCheckFailed("Σ v^n is not divisible by |G|".into()));
    }
    Ok(total / order)
}
