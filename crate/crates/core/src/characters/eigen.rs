//! Cyclic Jacobi eigensolver for real symmetric matrices, and the complex
//! Hermitian case through its real symmetric embedding.

use num_complex::Complex;

use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a symmetric `n × n` row-major matrix. Returns the
/// eigenvalues in ascending order and the matching eigenvectors (as rows).
pub fn symmetric_eigen<T: Scalar>(mut a: Vec<T>, n: usize) -> (Vec<T>, Vec<Vec<T>>) {
    assert_eq!(a.len(), n * n);
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let frob = a.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    let threshold = T::epsilon() * frob;
    let two = T::one() + T::one();
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = if (theta * theta).is_infinite() {
                    T::one() / (two * theta)
                } else {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&j| (0..n).map(|k| v[k * n + j]).collect())
        .collect();
    (values, vectors)
}

/// Eigen-decomposition of a Hermitian matrix `H = A + iB` via the real
/// symmetric matrix `[[A, −B], [B, A]]`, whose spectrum is that of `H` with
/// every eigenvalue doubled. Each returned vector is an eigenvector of `H`
/// for the matching eigenvalue. Fails (returns `None`) when two eigenvalues
/// of `H` are closer than `separation`.
pub fn hermitian_eigen<T: Scalar>(h: &[Complex<T>], n: usize, separation: T) -> Option<(Vec<T>, Vec<Vec<Complex<T>>>)> {
    let m = 2 * n;
    let mut real = vec![T::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            real[i * m + j] = z.re;
            real[(i + n) * m + j + n] = z.re;
            real[i * m + j + n] = -z.im;
            real[(i + n) * m + j] = z.im;
        }
    }
    let (values, vectors) = symmetric_eigen(real, m);
    let scale = values.iter().fold(T::one(), |acc, x| acc.max(x.abs()));
    let mut out_values = Vec::with_capacity(n);
    let mut out_vectors = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = (values[2 * i], values[2 * i + 1]);
        if hi - lo > separation * scale {
            return None;
        }
        if i + 1 < n && values[2 * i + 2] - hi <= separation * scale {
            return None;
        }
        // (x, y) in the doubled space gives x + iy; both members of a pair
        // give the same complex line, so take the first.
        let v = &vectors[2 * i];
        out_values.push(lo);
        out_vectors.push((0..n).map(|k| Complex::new(v[k], v[k + n])).collect());
    }
    Some((out_values, out_vectors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_by_three() {
        let a = vec![2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0];
        let (values, vectors) = symmetric_eigen(a.clone(), 3);
        let expected = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (x, y) in values.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
        for (lambda, v) in values.iter().zip(&vectors) {
            for i in 0..3 {
                let av: f64 = (0..3).map(|j| a[i * 3 + j] * v[j]).sum();
                assert!((av - lambda * v[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_two_by_two() {
        // [[0, -i], [i, 0]] has eigenvalues ±1
        let z = Complex::new(0.0, 0.0);
        let h: Vec<Complex<f64>> = vec![z, Complex::new(0.0, -1.0), Complex::new(0.0, 1.0), z];
        let (values, vectors) = hermitian_eigen(&h, 2, 1e-8).unwrap();
        assert!((values[0] + 1.0).abs() < 1e-12 && (values[1] - 1.0).abs() < 1e-12);
        for (lambda, v) in values.iter().zip(&vectors) {
            for i in 0..2 {
                let hv: Complex<f64> = (0..2).map(|j| h[i * 2 + j] * v[j]).sum();
                assert!((hv - v[i] * lambda).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn clustered_spectrum_is_reported() {
        let one = Complex::new(1.0f32, 0.0);
        let z = Complex::new(0.0, 0.0);
        assert!(hermitian_eigen(&[one, z, z, one], 2, 1e-4).is_none());
    }
}
