#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rfpk::packed::{spd_generate, SpdSpec};
use rfpk::{c64, DenseMatrix, Scalar, Uplo};

pub const EPS: f64 = f64::EPSILON;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_scalar<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    let re = rng.gen_range(-1.0..1.0);
    let im = rng.gen_range(-1.0..1.0);
    T::from_parts(re, im)
}

pub fn random<T: Scalar>(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DenseMatrix<T> {
    DenseMatrix::from_fn(rows, cols, |_, _| rand_scalar(rng))
}

/// Random triangular matrix with a dominant diagonal, zero elsewhere.
pub fn random_triangular<T: Scalar>(n: usize, uplo: Uplo, rng: &mut ChaCha8Rng) -> DenseMatrix<T> {
    let mut a = DenseMatrix::from_fn(n, n, |i, j| if uplo.contains(i, j) { rand_scalar(rng) } else { T::zero() });
    for k in 0..n {
        a[(k, k)] = T::from_real(2.0 + rng.gen_range(0.0..1.0));
    }
    a
}

pub fn spd<T: Scalar>(n: usize, seed: u64, kappa: f64) -> DenseMatrix<T> {
    spd_generate(&SpdSpec::new(n, seed, kappa)).unwrap()
}

pub fn matmul<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> DenseMatrix<T> {
    assert_eq!(a.cols(), b.rows());
    let mut c = DenseMatrix::zeros(a.rows(), b.cols());
    for j in 0..b.cols() {
        for p in 0..a.cols() {
            let t = b[(p, j)];
            if t == T::zero() {
                continue;
            }
            for i in 0..a.rows() {
                c[(i, j)] += a[(i, p)] * t;
            }
        }
    }
    c
}

pub fn sub<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> DenseMatrix<T> {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] - b[(i, j)])
}

pub fn fro<T: Scalar>(a: &DenseMatrix<T>) -> f64 {
    let mut s = 0.0;
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            s += a[(i, j)].abs2();
        }
    }
    s.sqrt()
}

pub fn max_abs<T: Scalar>(a: &DenseMatrix<T>) -> f64 {
    let mut m = 0.0f64;
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            m = m.max(a[(i, j)].abs());
        }
    }
    m
}

pub fn max_diff<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> f64 {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    max_abs(&sub(a, b))
}

pub fn one_norm<T: Scalar>(a: &DenseMatrix<T>) -> f64 {
    (0..a.cols()).map(|j| (0..a.rows()).map(|i| a[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Keeps only the `uplo` triangle.
pub fn triangle<T: Scalar>(a: &DenseMatrix<T>, uplo: Uplo) -> DenseMatrix<T> {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| if uplo.contains(i, j) { a[(i, j)] } else { T::zero() })
}

/// Hermitian matrix from the `uplo` triangle.
pub fn hermitian_from<T: Scalar>(a: &DenseMatrix<T>, uplo: Uplo) -> DenseMatrix<T> {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i == j {
            a[(i, i)].real_part()
        } else if uplo.contains(i, j) {
            a[(i, j)]
        } else {
            a[(j, i)].conj()
        }
    })
}

/// Textbook column Cholesky, lower factor.
pub fn cholesky_lower<T: Scalar>(a: &DenseMatrix<T>) -> Option<DenseMatrix<T>> {
    let n = a.rows();
    let mut l: DenseMatrix<T> = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re();
        for k in 0..j {
            d -= l[(j, k)].abs2();
        }
        if d <= 0.0 {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = T::from_real(d);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s.scale(1.0 / d);
        }
    }
    Some(l)
}

/// Solves `T x = b` column by column for a triangular `T` by substitution.
pub fn tri_solve<T: Scalar>(t: &DenseMatrix<T>, uplo: Uplo, b: &DenseMatrix<T>) -> DenseMatrix<T> {
    let n = t.rows();
    let mut x = b.clone();
    for c in 0..b.cols() {
        match uplo {
            Uplo::Lower => {
                for i in 0..n {
                    let mut s = x[(i, c)];
                    for k in 0..i {
                        s -= t[(i, k)] * x[(k, c)];
                    }
                    x[(i, c)] = s / t[(i, i)];
                }
            }
            Uplo::Upper => {
                for i in (0..n).rev() {
                    let mut s = x[(i, c)];
                    for k in i + 1..n {
                        s -= t[(i, k)] * x[(k, c)];
                    }
                    x[(i, c)] = s / t[(i, i)];
                }
            }
        }
    }
    x
}

pub fn identity_residual<T: Scalar>(p: &DenseMatrix<T>) -> f64 {
    fro(&sub(p, &DenseMatrix::identity(p.rows())))
}

pub fn scalar_name<T: Scalar>() -> &'static str {
    T::DOMAIN.name()
}

pub type Z = c64;
