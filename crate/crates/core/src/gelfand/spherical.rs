use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::{double_cosets, permutation_constituents, zero, CosetSpace};
use crate::characters::{tau_conjugate_rows, twisted_fs_indicators, CharacterTable};
use crate::conjugacy::require_involutory_anti;
use crate::error::{Error, Result};
use crate::group::ElementId;
use crate::morphisms::GroupMap;
use crate::scalar::Scalar;

fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn rational<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Spherical functions of a Gelfand pair, stored per double coset `KgK`.
#[derive(Clone, Debug)]
pub struct SphericalFunctions<T: Scalar> {
    /// Table rows of the constituents.
    pub rows: Vec<usize>,
    pub degrees: Vec<u64>,
    double_coset_of: Vec<u32>,
    pub representatives: Vec<ElementId>,
    /// `values[ρ][j]` is `φ_ρ` on the `j`-th double coset.
    pub values: Vec<Vec<Complex<T>>>,
    /// Spread of `φ_ρ` within a double coset.
    pub invariance_residual: f64,
    /// `|φ_ρ(1) − 1|`
    pub normalization_residual: f64,
    /// `χ_ρ(g)` recovered as `(d_ρ/|G|) Σ_h conj φ_ρ(h⁻¹gh)`.
    pub inversion_residual: f64,
    /// `(1/|G|) Σ_g φ_ρ(g) conj φ_σ(g)` against `δ_ρσ / d_ρ`.
    pub orthogonality_residual: f64,
}

impl<T: Scalar> SphericalFunctions<T> {
    #[inline]
    pub fn value(&self, rho: usize, g: ElementId) -> Complex<T> {
        self.values[rho][self.double_coset_of[g.index()] as usize]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// `φ_ρ(g) = (1/|K|) Σ_k conj χ_ρ(gk)` for every constituent of a
/// multiplicity-free permutation character.
pub fn spherical_functions<T: Scalar>(space: &CosetSpace, table: &CharacterTable<T>) -> Result<SphericalFunctions<T>> {
    let constituents = permutation_constituents(space, table)?;
    if constituents.iter().any(|&(_, m)| m != 1) {
        return Err(Error::NotGelfand);
    }
    let group = space.group();
    let k = &space.subgroup().embedding;
    let order = group.order();
    let k_order = T::from_count(k.len());
    let rows: Vec<usize> = constituents.iter().map(|&(i, _)| i).collect();
    let degrees: Vec<u64> = rows.iter().map(|&i| table.degrees()[i]).collect();

    let full: Vec<Vec<Complex<T>>> = rows
        .iter()
        .map(|&i| {
            let chi = table.row(i);
            group
                .elements()
                .map(|g| k.iter().fold(zero(), |acc, &x| acc + chi.at(group.mul(g, x)).conj()) / k_order)
                .collect()
        })
        .collect();

    let (double_coset_of, representatives) = double_cosets(group, k, k);
    let mut invariance = 0f64;
    let values: Vec<Vec<Complex<T>>> = full
        .iter()
        .map(|phi| {
            let vals: Vec<Complex<T>> = representatives.iter().map(|r| phi[r.index()]).collect();
            for g in group.elements() {
                let d = (phi[g.index()] - vals[double_coset_of[g.index()] as usize]).norm();
                invariance = invariance.max(to_f64(d));
            }
            vals
        })
        .collect();

    let one = Complex::new(T::one(), T::zero());
    let normalization = values.iter().fold(0f64, |acc, v| acc.max(to_f64((v[0] - one).norm())));

    let classes = table.classes();
    let mut inversion = 0f64;
    for (r, &i) in rows.iter().enumerate() {
        let d = T::from_count(degrees[r] as usize);
        for c in 0..classes.class_count() {
            let g = classes.representative(c);
            let sum = group.elements().fold(zero(), |acc, h| {
                acc + full[r][group.mul(group.mul(group.inv(h), g), h).index()].conj()
            });
            let recovered = sum * d / T::from_count(order);
            inversion = inversion.max(to_f64((recovered - table.row(i).at_class(c)).norm()));
        }
    }

    let mut orthogonality = 0f64;
    for a in 0..rows.len() {
        for b in 0..rows.len() {
            let ip = group
                .elements()
                .fold(zero(), |acc, g| acc + full[a][g.index()] * full[b][g.index()].conj())
                / T::from_count(order);
            let target = if a == b {
                T::one() / T::from_count(degrees[a] as usize)
            } else {
                T::zero()
            };
            orthogonality = orthogonality.max(to_f64((ip - Complex::new(target, T::zero())).norm()));
        }
    }

    let tol = to_f64(T::tolerances().integrality);
    for (what, r) in [
        ("bi-invariance", invariance),
        ("normalization", normalization),
        ("inversion", inversion),
        ("orthogonality", orthogonality),
    ] {
        if r > tol {
            return Err(Error::CrossCheckFailed(format!("spherical function {what} residual {r:e}")));
        }
    }
    Ok(SphericalFunctions {
        rows,
        degrees,
        double_coset_of,
        representatives,
        values,
        invariance_residual: invariance,
        normalization_residual: normalization,
        inversion_residual: inversion,
        orthogonality_residual: orthogonality,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistedGelfandReport {
    /// `C_τ(ρ)` per constituent, as computed from the character table.
    pub indicators: Vec<i8>,
    /// `|(d_ρ/|G|) Σ_g φ_ρ(τ(g)⁻¹g) − C_τ(ρ)|` per constituent.
    pub per_rho_identity_residuals: Vec<f64>,
    /// `(1/|G|) Σ_x ζ_τ(x)²`
    #[serde(serialize_with = "rational")]
    pub zeta_x_square_sum: BigRational,
    /// `|K| Σ 1/d_ρ` over the τ-self-conjugate constituents.
    #[serde(serialize_with = "rational")]
    pub self_conjugate_degree_sum: BigRational,
    pub zeta_x_identity_holds: bool,
    /// `max_x |ζ_τ(x) − |K| Σ_ρ φ_ρ(x) C_τ(ρ)|`
    pub zeta_x_inversion_residual: f64,
    pub self_conjugate_constituents: usize,
    /// τ-invariant `K`-orbits on `X`, when `τ(K) = K`.
    pub tau_invariant_k_orbits: Option<usize>,
    pub k_orbit_count_match: Option<bool>,
    /// `C_τ(ρ) = 1` on every self-τ-conjugate constituent, when `τ(K) = K`.
    pub self_conjugate_indicators_one: Option<bool>,
    pub skipped: Option<String>,
}

pub fn twisted_fs_gelfand<T: Scalar>(
    space: &CosetSpace,
    tau: &GroupMap,
    table: &CharacterTable<T>,
) -> Result<TwistedGelfandReport> {
    let group = space.group();
    require_involutory_anti(tau, group.order())?;
    let sph = spherical_functions(space, table)?;
    let all_indicators = twisted_fs_indicators(table, tau)?.values;
    let indicators: Vec<i8> = sph.rows.iter().map(|&i| all_indicators[i]).collect();
    let order = group.order();
    let twisted: Vec<ElementId> = group
        .elements()
        .map(|g| group.mul(group.inv(tau.apply(g)), g))
        .collect();

    let per_rho_identity_residuals: Vec<f64> = (0..sph.len())
        .map(|r| {
            let sum = twisted.iter().fold(zero(), |acc, &t| acc + sph.value(r, t));
            let lhs = sum * T::from_count(sph.degrees[r] as usize) / T::from_count(order);
            to_f64((lhs - Complex::new(T::from_f64_lossy(indicators[r] as f64), T::zero())).norm())
        })
        .collect();

    let mut zeta_x = vec![0u64; space.size()];
    for &t in &twisted {
        zeta_x[space.point_of(t)] += 1;
    }
    let sum_sq: BigInt = zeta_x.iter().map(|&z| BigInt::from(z) * BigInt::from(z)).sum();
    let zeta_x_square_sum = BigRational::new(sum_sq, BigInt::from(order));

    let conj_rows = tau_conjugate_rows(table, tau)?;
    let self_conj: Vec<bool> = sph.rows.iter().map(|&i| conj_rows[i] == i).collect();
    let k_order = space.subgroup().order();
    let self_conjugate_degree_sum = sph
        .degrees
        .iter()
        .zip(&self_conj)
        .filter(|(_, &s)| s)
        .fold(BigRational::from_integer(BigInt::from(0)), |acc, (&d, _)| {
            acc + BigRational::new(BigInt::from(k_order), BigInt::from(d))
        });

    let mut inversion = 0f64;
    for x in 0..space.size() {
        let g = space.representative(x);
        let rhs = (0..sph.len()).fold(zero(), |acc, r| {
            acc + sph.value(r, g) * T::from_f64_lossy(indicators[r] as f64)
        }) * T::from_count(k_order);
        inversion = inversion.max(to_f64((rhs - Complex::new(T::from_count(zeta_x[x] as usize), T::zero())).norm()));
    }

    let k = &space.subgroup().embedding;
    let k_invariant = k.iter().all(|&x| space.subgroup().contains(tau.apply(x)));
    let self_conjugate_constituents = self_conj.iter().filter(|&&s| s).count();
    let (tau_invariant_k_orbits, k_orbit_count_match, ones, skipped) = if k_invariant {
        let orbits = space.k_orbits();
        let count = {
            let mut seen = vec![false; space.size()];
            let mut n = 0;
            for x in 0..space.size() {
                let o = orbits[x] as usize;
                if std::mem::replace(&mut seen[o], true) {
                    continue;
                }
                let image = space.point_of(tau.apply(space.representative(x)));
                if orbits[image] as usize == o {
                    n += 1;
                }
            }
            n
        };
        let ones = indicators.iter().zip(&self_conj).all(|(&c, &s)| !s || c == 1);
        (Some(count), Some(count == self_conjugate_constituents), Some(ones), None)
    } else {
        (None, None, None, Some("skipped: τ(K) ≠ K".to_string()))
    };

    Ok(TwistedGelfandReport {
        indicators,
        per_rho_identity_residuals,
        zeta_x_identity_holds: zeta_x_square_sum == self_conjugate_degree_sum,
        zeta_x_square_sum,
        self_conjugate_degree_sum,
        zeta_x_inversion_residual: inversion,
        self_conjugate_constituents,
        tau_invariant_k_orbits,
        k_orbit_count_match,
        self_conjugate_indicators_one: ones,
        skipped,
    })
}
