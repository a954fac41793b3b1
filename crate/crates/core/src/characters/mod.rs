//! Complex character tables by Burnside's class-algebra method, and the
//! character-level functionals built on them.

mod eigen;
mod functionals;
mod induction;

use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugacy::{conjugacy_classes, ConjugacyData};
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};
use crate::scalar::Scalar;

pub use eigen::{hermitian_eigen, symmetric_eigen};
pub use functionals::{
    fs_indicator, fs_indicators, inner_product, round_integer, self_conjugate_census, tau_conjugate_row,
    tau_conjugate_rows, tensor_multiplicities, twisted_square_counts, twisted_trace, twisted_fs_indicator, twisted_fs_indicators, zeta_expansion_check,
    zeta_expansion_residual, SelfConjugateCensus, TwistedIndicators,
};
pub use induction::{
    clifford_theory_check, induced_character, restrict, CliffordCase, CliffordTheoryReport, InducedCharacter,
};

pub const DEFAULT_TABLE_SEED: u64 = 0x5eed_c1a5;
pub const CLASS_BUDGET: usize = 200;
pub const MAX_EIGEN_ATTEMPTS: usize = 20;

/// A complex function on conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassFunction<T: Scalar> {
    values: Vec<Complex<T>>,
    classes: Arc<ConjugacyData>,
}

impl<T: Scalar> ClassFunction<T> {
    pub fn new(classes: Arc<ConjugacyData>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != classes.class_count() {
            return Err(Error::InvalidParameter(format!(
                "{} values for {} classes",
                values.len(),
                classes.class_count()
            )));
        }
        Ok(ClassFunction { values, classes })
    }

    pub fn from_real(classes: Arc<ConjugacyData>, values: &[T]) -> Result<Self> {
        Self::new(classes, values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn constant(classes: Arc<ConjugacyData>, value: T) -> Self {
        let values = vec![Complex::new(value, T::zero()); classes.class_count()];
        ClassFunction { values, classes }
    }

    /// The character of the regular representation.
    pub fn regular(classes: Arc<ConjugacyData>) -> Self {
        let mut values = vec![Complex::new(T::zero(), T::zero()); classes.class_count()];
        values[0] = Complex::new(T::from_count(classes.group_order()), T::zero());
        ClassFunction { values, classes }
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn classes(&self) -> &Arc<ConjugacyData> {
        &self.classes
    }

    #[inline]
    pub fn at_class(&self, c: usize) -> Complex<T> {
        self.values[c]
    }

    #[inline]
    pub fn at(&self, g: ElementId) -> Complex<T> {
        self.values[self.classes.class_of(g)]
    }

    pub fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.classes, &other.classes)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, t: T) -> Self {
        self.map(|z| z * t)
    }

    fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        ClassFunction {
            values: self.values.iter().map(|&z| f(z)).collect(),
            classes: self.classes.clone(),
        }
    }

    /// `g ↦ f(π(g))` for a permutation of classes.
    pub fn permute_classes(&self, perm: &[usize]) -> Self {
        ClassFunction {
            values: perm.iter().map(|&c| self.values[c]).collect(),
            classes: self.classes.clone(),
        }
    }

    pub fn max_distance(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    fn zip(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
            classes: self.classes.clone(),
        })
    }
}

impl<T: Scalar> Add for &ClassFunction<T> {
    type Output = Result<ClassFunction<T>>;
    fn add(self, rhs: Self) -> Self::Output {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &ClassFunction<T> {
    type Output = Result<ClassFunction<T>>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.zip(rhs, |a, b| a - b)
    }
}

/// Pointwise product, the character of the tensor product.
impl<T: Scalar> Mul for &ClassFunction<T> {
    type Output = Result<ClassFunction<T>>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.zip(rhs, |a, b| a * b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct TableQuality {
    pub orthogonality_residual: f64,
    pub integrality_residual: f64,
    pub attempts: usize,
}

#[derive(Clone, Debug)]
pub struct CharacterTable<T: Scalar> {
    group: Arc<GroupTable>,
    classes: Arc<ConjugacyData>,
    rows: Vec<ClassFunction<T>>,
    degrees: Vec<u64>,
    quality: TableQuality,
}

impl<T: Scalar> CharacterTable<T> {
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ConjugacyData> {
        &self.classes
    }

    pub fn rows(&self) -> &[ClassFunction<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction<T> {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.class_sizes()
    }

    pub fn quality(&self) -> TableQuality {
        self.quality
    }

    pub fn trivial(&self) -> &ClassFunction<T> {
        &self.rows[0]
    }

    /// Index of the row equal to `f` within `tolerance`, if any.
    pub fn find_row(&self, f: &ClassFunction<T>, tolerance: T) -> Option<usize> {
        self.rows.iter().position(|r| r.max_distance(f) < tolerance)
    }
}

/// Character table with the default seed for the random combination.
pub fn compute_character_table<T: Scalar>(group: &GroupTable) -> Result<CharacterTable<T>> {
    compute_character_table_seeded(group, DEFAULT_TABLE_SEED)
}

pub fn compute_character_table_seeded<T: Scalar>(group: &GroupTable, seed: u64) -> Result<CharacterTable<T>> {
    let classes = Arc::new(conjugacy_classes(group));
    table_from_classes(Arc::new(group.clone()), classes, seed)
}

/// `c[j][m][l]`: number of pairs `(x, y) ∈ C_j × C_m` with `xy = g_l` for the
/// representative `g_l`, so that `C_j C_m = Σ_l c[j][m][l] C_l`.
pub fn class_coefficients(group: &GroupTable, classes: &ConjugacyData) -> Vec<u64> {
    let k = classes.class_count();
    let mut c = vec![0u64; k * k * k];
    let reps = classes.representatives();
    for j in 0..k {
        for &x in classes.class(j) {
            let xi = group.inv(x);
            for (l, &r) in reps.iter().enumerate() {
                let m = classes.class_of(group.mul(xi, r));
                c[(j * k + m) * k + l] += 1;
            }
        }
    }
    c
}

pub fn table_from_classes<T: Scalar>(
    group: Arc<GroupTable>,
    classes: Arc<ConjugacyData>,
    seed: u64,
) -> Result<CharacterTable<T>> {
    let k = classes.class_count();
    if k > CLASS_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "character table classes",
            needed: k,
            budget: CLASS_BUDGET,
        });
    }
    let coeff = class_coefficients(&group, &classes);
    let sizes: Vec<T> = classes.class_sizes().into_iter().map(T::from_count).collect();
    // M_j[l][m] = c[j][m][l] sqrt(|C_l| / |C_m|) is normal, with adjoint M_{j*}
    let normal: Vec<Vec<T>> = (0..k)
        .map(|j| {
            let mut m = vec![T::zero(); k * k];
            for l in 0..k {
                for col in 0..k {
                    let c = coeff[(j * k + col) * k + l];
                    if c != 0 {
                        m[l * k + col] = T::from_count(c as usize) * (sizes[l] / sizes[col]).sqrt();
                    }
                }
            }
            m
        })
        .collect();
    let tol = T::tolerances();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_error = None;
    for attempt in 1..=MAX_EIGEN_ATTEMPTS {
        let mut h = vec![Complex::new(T::zero(), T::zero()); k * k];
        for m in &normal {
            let a = T::from_f64_lossy(rng.gen_range(-1.0..1.0));
            let b = T::from_f64_lossy(rng.gen_range(-1.0..1.0));
            for p in 0..k {
                for q in 0..k {
                    let mpq = m[p * k + q];
                    let mqp = m[q * k + p];
                    // a (M + Mᵀ) + i b (M − Mᵀ) with real M
                    h[p * k + q] = h[p * k + q] + Complex::new(a * (mpq + mqp), b * (mpq - mqp));
                }
            }
        }
        let Some((_, vectors)) = hermitian_eigen(&h, k, tol.eigen_separation) else {
            continue;
        };
        match rows_from_eigenvectors(&group, &sizes, vectors) {
            Ok((rows, degrees, integrality)) => {
                let table = finish(group, classes, rows, degrees, integrality, attempt)?;
                return Ok(table);
            }
            Err(e) => last_error = Some(e),
        }
    }
    Err(last_error.unwrap_or(Error::DegenerateEigenspaces {
        attempts: MAX_EIGEN_ATTEMPTS,
    }))
}

type Rows<T> = (Vec<Vec<Complex<T>>>, Vec<u64>, f64);

fn rows_from_eigenvectors<T: Scalar>(
    group: &GroupTable,
    sizes: &[T],
    vectors: Vec<Vec<Complex<T>>>,
) -> Result<Rows<T>> {
    let order = group.order();
    let tol = T::tolerances();
    let mut rows = Vec::with_capacity(vectors.len());
    let mut degrees = Vec::with_capacity(vectors.len());
    let mut integrality = 0f64;
    for v in vectors {
        // the eigenvector is proportional to the idempotent Σ conj(χ(C)) C / sqrt|C|
        let u0 = v[0].conj();
        if u0.norm() <= T::epsilon() {
            return Err(Error::CrossCheckFailed("eigenvector vanishes on the identity class".into()));
        }
        let u: Vec<Complex<T>> = v.iter().zip(sizes).map(|(z, &s)| z.conj() / s.sqrt() / u0).collect();
        let norm: T = u.iter().zip(sizes).fold(T::zero(), |acc, (z, &s)| acc + s * z.norm_sqr());
        let d = (T::from_count(order) / norm).sqrt();
        let rounded = d.round();
        let residual = (d - rounded).abs();
        integrality = integrality.max(residual.to_f64().unwrap_or(f64::INFINITY));
        if residual > tol.integrality || rounded < T::one() {
            return Err(Error::NonIntegral {
                what: "character degree",
                value: d.to_f64().unwrap_or(f64::NAN),
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }
        let degree = rounded.to_u64().expect("degree fits in u64");
        if order as u64 % degree != 0 {
            return Err(Error::CrossCheckFailed(format!("degree {degree} does not divide {order}")));
        }
        degrees.push(degree);
        rows.push(u.into_iter().map(|z| z * rounded).collect());
    }
    Ok((rows, degrees, integrality))
}

fn compare_rows<T: Scalar>(a: &(u64, Vec<Complex<T>>), b: &(u64, Vec<Complex<T>>)) -> Ordering {
    let grid = T::one() / (T::tolerances().integrality * T::from_count(10));
    let key = |z: &Complex<T>| {
        (
            (z.re * grid).round().to_i64().unwrap_or(0),
            (z.im * grid).round().to_i64().unwrap_or(0),
        )
    };
    a.0.cmp(&b.0).then_with(|| {
        // larger values first, so the trivial row leads
        let ka: Vec<_> = a.1.iter().map(key).collect();
        let kb: Vec<_> = b.1.iter().map(key).collect();
        kb.cmp(&ka)
    })
}

fn finish<T: Scalar>(
    group: Arc<GroupTable>,
    classes: Arc<ConjugacyData>,
    rows: Vec<Vec<Complex<T>>>,
    degrees: Vec<u64>,
    integrality: f64,
    attempts: usize,
) -> Result<CharacterTable<T>> {
    let order = group.order();
    let k = classes.class_count();
    let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
    if sum_sq != order as u64 {
        return Err(Error::CrossCheckFailed(format!("Σ d² = {sum_sq}, |G| = {order}")));
    }
    let mut paired: Vec<(u64, Vec<Complex<T>>)> = degrees.into_iter().zip(rows).collect();
    paired.sort_by(compare_rows);
    let sizes: Vec<T> = classes.class_sizes().into_iter().map(T::from_count).collect();
    let g = T::from_count(order);
    let mut orth = T::zero();
    for i in 0..k {
        for j in 0..k {
            let ip = (0..k).fold(Complex::new(T::zero(), T::zero()), |acc, c| {
                acc + paired[i].1[c] * paired[j].1[c].conj() * sizes[c]
            }) / g;
            let target = if i == j { T::one() } else { T::zero() };
            orth = orth.max((ip - Complex::new(target, T::zero())).norm());
        }
    }
    let orth_f = orth.to_f64().unwrap_or(f64::INFINITY);
    if orth > T::tolerances().orthogonality * T::from_count(k.max(1)) {
        return Err(Error::CrossCheckFailed(format!("orthogonality residual {orth_f:e}")));
    }
    let degrees = paired.iter().map(|p| p.0).collect();
    let rows = paired
        .into_iter()
        .map(|(_, values)| ClassFunction {
            values,
            classes: classes.clone(),
        })
        .collect();
    Ok(CharacterTable {
        group,
        classes,
        rows,
        degrees,
        quality: TableQuality {
            orthogonality_residual: orth_f,
            integrality_residual: integrality,
            attempts,
        },
    })
}
