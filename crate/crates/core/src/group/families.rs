use super::{CliffordElement, GroupTable, Permutation, Provenance};
use crate::error::{Error, Result};
use crate::group::parse_cycles;

/// Builtin group families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    /// `CL(n) = {±γ_A}` of order `2^{n+1}`.
    Clifford(usize),
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn expected_order(&self) -> Option<u128> {
        Some(match self {
            FamilySpec::Cyclic(n) => *n as u128,
            FamilySpec::Dihedral(n) => 2 * *n as u128,
            FamilySpec::Symmetric(n) => factorial(*n)?,
            FamilySpec::Alternating(n) => (factorial(*n)? / 2).max(1),
            FamilySpec::Quaternion8 => 8,
            FamilySpec::Clifford(n) => 1u128.checked_shl(*n as u32 + 1)?,
            FamilySpec::DirectProduct(a, b) => a.expected_order()?.checked_mul(b.expected_order()?)?,
        })
    }
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

pub fn construct_family(spec: &FamilySpec, cap: usize) -> Result<GroupTable> {
    match spec.expected_order() {
        Some(order) if order <= cap as u128 => {}
        _ => return Err(Error::ClosureCapExceeded { cap }),
    }
    match spec {
        FamilySpec::Cyclic(n) => cyclic(*n),
        FamilySpec::Dihedral(n) => dihedral(*n),
        FamilySpec::Symmetric(n) => symmetric(*n, cap),
        FamilySpec::Alternating(n) => alternating(*n, cap),
        FamilySpec::Quaternion8 => quaternion8(),
        FamilySpec::Clifford(n) => clifford(*n),
        FamilySpec::DirectProduct(a, b) => {
            let left = construct_family(a, cap)?;
            let right = construct_family(b, cap)?;
            direct_product(&left, &right, cap)
        }
    }
}

fn positive(n: usize, family: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{family} needs n >= 1")));
    }
    Ok(())
}

fn cyclic(n: usize) -> Result<GroupTable> {
    positive(n, "cyclic")?;
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    let gens = vec![if n == 1 { 0 } else { 1 }];
    GroupTable::from_closed_elements(
        (0..n as u32).collect(),
        gens,
        labels,
        move |a: &u32, b: &u32| (a + b) % n as u32,
        format!("cyclic({n})"),
        Provenance::Cyclic(n),
    )
}

fn dihedral(n: usize) -> Result<GroupTable> {
    positive(n, "dihedral")?;
    let m = n as u32;
    // (k, f) is r^k s^f
    let elements: Vec<(u32, u32)> = (0..2).flat_map(|f| (0..m).map(move |k| (k, f))).collect();
    let labels = elements
        .iter()
        .map(|&(k, f)| {
            let r = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            match (r.is_empty(), f) {
                (true, 0) => "e".to_string(),
                (true, _) => "s".to_string(),
                (false, 0) => r,
                (false, _) => format!("{r} s"),
            }
        })
        .collect();
    let gens = if n == 1 { vec![1] } else { vec![1, n] };
    GroupTable::from_closed_elements(
        elements,
        gens,
        labels,
        move |&(a, f): &(u32, u32), &(b, g): &(u32, u32)| {
            let k = if f == 0 { (a + b) % m } else { (a + m - b) % m };
            (k, f ^ g)
        },
        format!("dihedral({n})"),
        Provenance::Dihedral(n),
    )
}

/// The closure of cycle-notation generators on points `1..=degree`.
pub fn permutation_group<S: AsRef<str>>(generators: &[S], degree: usize, cap: usize) -> Result<GroupTable> {
    if degree == 0 || degree > 255 {
        return Err(Error::InvalidParameter(format!("degree {degree} outside 1..=255")));
    }
    let mut gens = generators
        .iter()
        .map(|g| parse_cycles(g.as_ref(), degree))
        .collect::<Result<Vec<_>>>()?;
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    permutation_closure(gens, cap, format!("permutations({degree})"), Provenance::Permutations { degree })
}

fn permutation_closure(
    gens: Vec<Permutation>,
    cap: usize,
    tag: String,
    provenance: Provenance,
) -> Result<GroupTable> {
    GroupTable::enumerate_from_generators(
        &gens,
        |a: &Permutation, b: &Permutation| a.compose(b),
        |p| p.to_string(),
        cap,
        tag,
        provenance,
    )
}

fn symmetric(n: usize, cap: usize) -> Result<GroupTable> {
    positive(n, "symmetric")?;
    let gens = match n {
        1 => vec![Permutation::identity(1)],
        2 => vec![parse_cycles("(1 2)", 2)?],
        _ => {
            let long: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            vec![
                parse_cycles("(1 2)", n)?,
                parse_cycles(&format!("({})", long.join(" ")), n)?,
            ]
        }
    };
    permutation_closure(gens, cap, format!("symmetric({n})"), Provenance::Symmetric(n))
}

fn alternating(n: usize, cap: usize) -> Result<GroupTable> {
    positive(n, "alternating")?;
    let gens = if n < 3 {
        vec![Permutation::identity(n)]
    } else {
        (3..=n)
            .map(|k| parse_cycles(&format!("(1 2 {k})"), n))
            .collect::<Result<_>>()?
    };
    permutation_closure(gens, cap, format!("alternating({n})"), Provenance::Alternating(n))
}

/// Unit quaternions `±1, ±i, ±j, ±k` as (negative, axis) with axis 0 = real.
fn quaternion_mul(&(na, a): &(bool, u8), &(nb, b): &(bool, u8)) -> (bool, u8) {
    let (neg, axis) = match (a, b) {
        (0, x) | (x, 0) => (false, x),
        (x, y) if x == y => (true, 0),
        // i j = k, j k = i, k i = j; reversed order flips the sign
        (x, y) => {
            let z = 6 - x - y;
            let cyclic = (y + 3 - x) % 3 == 1;
            (!cyclic, z)
        }
    };
    (neg ^ na ^ nb, axis)
}

fn quaternion8() -> Result<GroupTable> {
    let elements: Vec<(bool, u8)> = (0..4u8).flat_map(|a| [(false, a), (true, a)]).collect();
    let names = ["1", "i", "j", "k"];
    let labels = elements
        .iter()
        .map(|&(neg, a)| format!("{}{}", if neg { "-" } else { "" }, names[a as usize]))
        .collect();
    GroupTable::from_closed_elements(
        elements,
        vec![2, 4],
        labels,
        quaternion_mul,
        "quaternion8",
        Provenance::Quaternion8,
    )
}

fn clifford(n: usize) -> Result<GroupTable> {
    positive(n, "clifford")?;
    if n > 30 {
        return Err(Error::InvalidParameter("clifford(n) needs n <= 30".into()));
    }
    let count = 1usize << (n + 1);
    let elements: Vec<CliffordElement> = (0..count).map(CliffordElement::from_id).collect();
    let labels = elements.iter().map(|e| e.to_string()).collect();
    let mut gens: Vec<usize> = (0..n).map(|i| CliffordElement::new(1, 1 << i).id()).collect();
    gens.push(CliffordElement::new(-1, 0).id());
    GroupTable::from_closed_elements(
        elements,
        gens,
        labels,
        |a: &CliffordElement, b: &CliffordElement| a.mul(*b),
        format!("clifford({n})"),
        Provenance::Clifford(n),
    )
}

/// `G₁ × G₂` with id `a·|G₂| + b` and componentwise operations.
pub fn direct_product(left: &GroupTable, right: &GroupTable, cap: usize) -> Result<GroupTable> {
    let order = left
        .order()
        .checked_mul(right.order())
        .filter(|&o| o <= cap)
        .ok_or(Error::ClosureCapExceeded { cap })?;
    let (nl, nr) = (left.order() as u32, right.order() as u32);
    let elements: Vec<(u32, u32)> = (0..nl).flat_map(|a| (0..nr).map(move |b| (a, b))).collect();
    debug_assert_eq!(elements.len(), order);
    let labels = elements
        .iter()
        .map(|&(a, b)| {
            format!(
                "({}, {})",
                left.label(super::ElementId(a)),
                right.label(super::ElementId(b))
            )
        })
        .collect();
    let mut gens: Vec<usize> = left
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| g.index() * nr as usize)
        .collect();
    gens.extend(right.generators().iter().filter(|g| !g.is_identity()).map(|g| g.index()));
    if gens.is_empty() {
        gens.push(0);
    }
    let (l, r) = (left.clone(), right.clone());
    GroupTable::from_closed_elements(
        elements,
        gens,
        labels,
        move |&(a1, b1): &(u32, u32), &(a2, b2): &(u32, u32)| {
            (
                l.mul(super::ElementId(a1), super::ElementId(a2)).0,
                r.mul(super::ElementId(b1), super::ElementId(b2)).0,
            )
        },
        format!("{} x {}", left.family_tag(), right.family_tag()),
        Provenance::DirectProduct {
            left_order: left.order(),
            right_order: right.order(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ElementId, DEFAULT_CAP};

    fn build(spec: FamilySpec) -> GroupTable {
        construct_family(&spec, DEFAULT_CAP).unwrap()
    }

    fn involution_count(g: &GroupTable) -> usize {
        g.elements().filter(|&x| !x.is_identity() && g.mul(x, x).is_identity()).count()
    }

    #[test]
    fn orders() {
        assert_eq!(build(FamilySpec::Cyclic(1)).order(), 1);
        assert_eq!(build(FamilySpec::Cyclic(7)).order(), 7);
        assert_eq!(build(FamilySpec::Dihedral(1)).order(), 2);
        assert_eq!(build(FamilySpec::Dihedral(5)).order(), 10);
        assert_eq!(build(FamilySpec::Symmetric(4)).order(), 24);
        assert_eq!(build(FamilySpec::Alternating(5)).order(), 60);
        assert_eq!(build(FamilySpec::Alternating(2)).order(), 1);
        assert_eq!(build(FamilySpec::Clifford(4)).order(), 32);
    }

    #[test]
    fn every_family_satisfies_the_axioms() {
        for spec in [
            FamilySpec::Cyclic(6),
            FamilySpec::Dihedral(4),
            FamilySpec::Symmetric(4),
            FamilySpec::Alternating(4),
            FamilySpec::Quaternion8,
            FamilySpec::Clifford(3),
            FamilySpec::DirectProduct(Box::new(FamilySpec::Cyclic(2)), Box::new(FamilySpec::Symmetric(3))),
        ] {
            let g = build(spec.clone());
            assert!(g.verify_axioms(0, 1).unwrap(), "{spec:?}");
            assert!(g.generators_span(), "{spec:?}");
            assert_eq!(Some(g.order() as u128), spec.expected_order());
        }
    }

    #[test]
    fn quaternion_group_has_one_involution() {
        let q = build(FamilySpec::Quaternion8);
        assert_eq!(q.order(), 8);
        assert_eq!(involution_count(&q), 1);
        let i = q.element_by_label("i").unwrap();
        let j = q.element_by_label("j").unwrap();
        assert_eq!(q.label(q.mul(i, j)), "k");
        assert_eq!(q.label(q.mul(j, i)), "-k");
    }

    #[test]
    fn clifford_two_products() {
        let g = build(FamilySpec::Clifford(2));
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        let g1 = g.element_by_label("g{1}").unwrap();
        let g2 = g.element_by_label("g{2}").unwrap();
        assert_eq!(g.label(g.mul(g1, g2)), "g{1,2}");
        assert_eq!(g.label(g.mul(g2, g1)), "-g{1,2}");
    }

    #[test]
    fn clifford_one_is_abelian_of_order_four() {
        let g = build(FamilySpec::Clifford(1));
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn clifford_center_for_even_n() {
        for n in [2, 4] {
            let g = build(FamilySpec::Clifford(n));
            let center: Vec<&str> = g.center().iter().map(|&z| g.label(z)).collect();
            assert_eq!(center, vec!["1", "-1"], "n = {n}");
        }
    }

    #[test]
    fn direct_product_is_componentwise() {
        let a = build(FamilySpec::Symmetric(3));
        let b = build(FamilySpec::Cyclic(4));
        let p = direct_product(&a, &b, DEFAULT_CAP).unwrap();
        assert_eq!(p.order(), 24);
        for x in p.elements() {
            let (xa, xb) = (x.index() / 4, x.index() % 4);
            let inv = p.inv(x);
            assert_eq!(inv.index() / 4, a.inv(ElementId::new(xa)).index());
            assert_eq!(inv.index() % 4, b.inv(ElementId::new(xb)).index());
        }
        assert!(p.verify_axioms(0, 0).unwrap());
    }

    #[test]
    fn cap_and_parameter_errors() {
        assert_eq!(
            construct_family(&FamilySpec::Symmetric(9), DEFAULT_CAP).unwrap_err(),
            Error::ClosureCapExceeded { cap: DEFAULT_CAP }
        );
        assert!(matches!(
            construct_family(&FamilySpec::Cyclic(0), DEFAULT_CAP),
            Err(Error::InvalidParameter(_))
        ));
    }
}
