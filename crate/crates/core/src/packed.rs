//! Level-2 packed Cholesky baseline and the SPD test-matrix generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convert::PackedTriangle;
use crate::error::{Error, Result};
use crate::kernels::{syrk_herk, Op};
use crate::layout::{packed_index, Uplo};
use crate::matrix::{DenseMatrix, MatMut};
use crate::scalar::Scalar;

/// Unblocked column-by-column Cholesky factorization of a packed triangle.
///
/// The lower variant scales column `j` and applies a packed rank-1 update
/// to the trailing triangle; the upper variant solves with the leading
/// factor to form column `j`.
pub fn pptrf_ref<T: Scalar>(p: &mut PackedTriangle<T>) -> Result<()> {
    let (n, uplo) = (p.n(), p.uplo());
    let ap = p.as_mut_slice();
    match uplo {
        Uplo::Lower => {
            for j in 0..n {
                let jj = packed_index(n, uplo, j, j);
                let ajj = ap[jj].re();
                if ajj <= 0.0 || ajj.is_nan() {
                    ap[jj] = T::from_real(ajj);
                    return Err(Error::NotPositiveDefinite { index: j + 1 });
                }
                let ajj = ajj.sqrt();
                ap[jj] = T::from_real(ajj);
                let inv = 1.0 / ajj;
                for v in &mut ap[jj + 1..jj + n - j] {
                    *v = v.scale(inv);
                }
                // A22 <- A22 - x x^H, column by column of the packed trailing triangle
                for c in j + 1..n {
                    let xc = ap[jj + (c - j)].conj();
                    let cc = packed_index(n, uplo, c, c);
                    for r in c..n {
                        let xr = ap[jj + (r - j)];
                        ap[cc + (r - c)] -= xr * xc;
                    }
                    ap[cc] = ap[cc].real_part();
                }
            }
        }
        Uplo::Upper => {
            for j in 0..n {
                let jc = packed_index(n, uplo, 0, j);
                // Solve U11^H x = a(0..j, j) in place.
                for i in 0..j {
                    let ic = packed_index(n, uplo, 0, i);
                    let mut s = ap[jc + i];
                    for k in 0..i {
                        s -= ap[ic + k].conj() * ap[jc + k];
                    }
                    ap[jc + i] = s / ap[ic + i].conj();
                }
                let mut ajj = ap[jc + j].re();
                for k in 0..j {
                    ajj -= ap[jc + k].abs2();
                }
                if ajj <= 0.0 || ajj.is_nan() {
                    ap[jc + j] = T::from_real(ajj);
                    return Err(Error::NotPositiveDefinite { index: j + 1 });
                }
                ap[jc + j] = T::from_real(ajj.sqrt());
            }
        }
    }
    Ok(())
}

/// Solves `A X = B` with a factor from [`pptrf_ref`], one column of `B` at a
/// time with packed triangular substitutions.
pub fn pptrs_ref<T: Scalar>(p: &PackedTriangle<T>, mut b: MatMut<'_, T>) -> Result<()> {
    let (n, uplo) = (p.n(), p.uplo());
    if b.rows() != n {
        return Err(Error::Shape(format!("pptrs: B has {} rows, factor has order {n}", b.rows())));
    }
    let ap = p.as_slice();
    let mut x = vec![T::zero(); n];
    for col in 0..b.cols() {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = b.get(i, col);
        }
        match uplo {
            Uplo::Lower => {
                // L y = b
                for j in 0..n {
                    let jj = packed_index(n, uplo, j, j);
                    let xj = x[j] / ap[jj];
                    x[j] = xj;
                    for i in j + 1..n {
                        x[i] -= xj * ap[jj + (i - j)];
                    }
                }
                // L^H x = y
                for j in (0..n).rev() {
                    let jj = packed_index(n, uplo, j, j);
                    let mut s = x[j];
                    for i in j + 1..n {
                        s -= ap[jj + (i - j)].conj() * x[i];
                    }
                    x[j] = s / ap[jj].conj();
                }
            }
            Uplo::Upper => {
                // U^H y = b
                for j in 0..n {
                    let jc = packed_index(n, uplo, 0, j);
                    let mut s = x[j];
                    for i in 0..j {
                        s -= ap[jc + i].conj() * x[i];
                    }
                    x[j] = s / ap[jc + j].conj();
                }
                // U x = y
                for j in (0..n).rev() {
                    let jc = packed_index(n, uplo, 0, j);
                    let xj = x[j] / ap[jc + j];
                    x[j] = xj;
                    for i in 0..j {
                        x[i] -= xj * ap[jc + i];
                    }
                }
            }
        }
        for (i, xi) in x.iter().enumerate() {
            b.set(i, col, *xi);
        }
    }
    Ok(())
}

/// Parameters of a generated positive definite test matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdSpec {
    pub n: usize,
    pub seed: u64,
    /// 2-norm condition number, at least 1.
    pub target_kappa: f64,
}

impl SpdSpec {
    pub fn new(n: usize, seed: u64, target_kappa: f64) -> Self {
        SpdSpec { n, seed, target_kappa }
    }
}

/// Seeded Hermitian positive definite matrix `Q diag(lambda) Q^H` with both
/// triangles filled and exact symmetry.
///
/// `lambda` is log-spaced in `[1, target_kappa]` in random order. `Q` is a
/// random diagonal unitary (signs, or phases for complex data) times a
/// random Householder reflector times the orthonormal DCT-II matrix.
pub fn spd_generate<T: Scalar>(spec: &SpdSpec) -> Result<DenseMatrix<T>> {
    let kappa = spec.target_kappa;
    if kappa.is_nan() || kappa < 1.0 || kappa.is_infinite() {
        return Err(Error::InvalidArgument(format!("target condition number must be finite and >= 1, got {kappa}")));
    }
    let n = spec.n;
    if n == 0 {
        return Ok(DenseMatrix::zeros(0, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut lambda: Vec<f64> = (0..n).map(|k| if n == 1 { 1.0 } else { kappa.powf(k as f64 / (n - 1) as f64) }).collect();
    for k in (1..n).rev() {
        lambda.swap(k, rng.gen_range(0..=k));
    }
    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let phase: Vec<T> = (0..n)
        .map(|_| {
            if T::is_complex() {
                let t = rng.gen_range(0.0..std::f64::consts::TAU);
                T::from_parts(t.cos(), t.sin())
            } else if rng.gen::<bool>() {
                T::one()
            } else {
                -T::one()
            }
        })
        .collect();

    // C(i, k) = sqrt(2/n) c_k cos(pi (2i + 1) k / 2n)
    let nf = n as f64;
    let mut q = DenseMatrix::<f64>::from_fn(n, n, |i, k| {
        let ck = if k == 0 { std::f64::consts::FRAC_1_SQRT_2 } else { 1.0 };
        (2.0 / nf).sqrt() * ck * (std::f64::consts::PI * (2 * i + 1) as f64 * k as f64 / (2.0 * nf)).cos()
    });
    if vv > 0.0 {
        for k in 0..n {
            let dot: f64 = (0..n).map(|i| v[i] * q[(i, k)]).sum();
            let f = 2.0 * dot / vv;
            for i in 0..n {
                q[(i, k)] -= f * v[i];
            }
        }
    }
    // G = S Q diag(sqrt(lambda)), A = G G^H
    let g = DenseMatrix::<T>::from_fn(n, n, |i, k| phase[i] * T::from_real(q[(i, k)] * lambda[k].sqrt()));
    let mut a = DenseMatrix::<T>::zeros(n, n);
    syrk_herk(Uplo::Lower, Op::NoTrans, 1.0, g.as_ref(), 0.0, a.as_mut())?;
    for j in 0..n {
        for i in j + 1..n {
            a[(j, i)] = a[(i, j)].conj();
        }
    }
    Ok(a)
}
