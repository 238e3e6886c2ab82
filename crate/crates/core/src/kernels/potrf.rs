use crate::error::{Error, Result};
use crate::layout::Uplo;
use crate::matrix::MatMut;
use crate::scalar::Scalar;

use super::{block_size, dot, syrk_herk, trsm, Diag, Op, Side};

/// Blocked right-looking Cholesky factorization of a full-format matrix.
///
/// On success the `uplo` triangle holds `L` (`A = L L^H`) or `U`
/// (`A = U^H U`). A matrix that is not positive definite yields
/// [`Error::NotPositiveDefinite`] carrying the 1-based order of the first
/// failing leading minor.
pub fn potrf_ref<T: Scalar>(uplo: Uplo, a: MatMut<'_, T>) -> Result<()> {
    potrf_ref_nb(uplo, a, block_size())
}

pub fn potrf_ref_nb<T: Scalar>(uplo: Uplo, a: MatMut<'_, T>, nb: usize) -> Result<()> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape(format!("potrf: A is {}x{}", a.rows(), a.cols())));
    }
    let nb = nb.max(1);
    if nb >= n {
        return unblocked(uplo, a);
    }
    for k0 in (0..n).step_by(nb) {
        let kb = nb.min(n - k0);
        let k1 = k0 + kb;
        let rest = n - k1;
        unsafe {
            unblocked(uplo, a.alias_mut(k0, k0, kb, kb)).map_err(|e| shift(e, k0))?;
            if rest == 0 {
                break;
            }
            let akk = a.alias_ref(k0, k0, kb, kb);
            match uplo {
                Uplo::Lower => {
                    trsm(Side::Right, Uplo::Lower, Op::ConjTrans, Diag::NonUnit, T::one(), akk, a.alias_mut(k1, k0, rest, kb))?;
                    syrk_herk(Uplo::Lower, Op::NoTrans, -1.0, a.alias_ref(k1, k0, rest, kb), 1.0, a.alias_mut(k1, k1, rest, rest))?;
                }
                Uplo::Upper => {
                    trsm(Side::Left, Uplo::Upper, Op::ConjTrans, Diag::NonUnit, T::one(), akk, a.alias_mut(k0, k1, kb, rest))?;
                    syrk_herk(Uplo::Upper, Op::ConjTrans, -1.0, a.alias_ref(k0, k1, kb, rest), 1.0, a.alias_mut(k1, k1, rest, rest))?;
                }
            }
        }
    }
    Ok(())
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::NotPositiveDefinite { index } => Error::NotPositiveDefinite { index: index + by },
        other => other,
    }
}

/// Level-2 Cholesky on one block.
fn unblocked<T: Scalar>(uplo: Uplo, mut a: MatMut<'_, T>) -> Result<()> {
    let n = a.rows();
    unsafe {
        for j in 0..n {
            let mut ajj = a.at(j, j).re();
            match uplo {
                Uplo::Lower => {
                    for k in 0..j {
                        ajj -= a.at(j, k).abs2();
                    }
                }
                Uplo::Upper => {
                    for k in 0..j {
                        ajj -= a.at(k, j).abs2();
                    }
                }
            }
            if ajj <= 0.0 || ajj.is_nan() {
                a.put(j, j, T::from_real(ajj));
                return Err(Error::NotPositiveDefinite { index: j + 1 });
            }
            let ajj = ajj.sqrt();
            a.put(j, j, T::from_real(ajj));
            let inv = 1.0 / ajj;
            match uplo {
                Uplo::Lower => {
                    for k in 0..j {
                        let t = a.at(j, k).conj();
                        for i in j + 1..n {
                            *a.slot(i, j) -= a.at(i, k) * t;
                        }
                    }
                    for i in j + 1..n {
                        *a.slot(i, j) = a.at(i, j).scale(inv);
                    }
                }
                Uplo::Upper => {
                    for c in j + 1..n {
                        let s = a.at(j, c) - dot(j, |k| a.at(k, j).conj(), |k| a.at(k, c));
                        a.put(j, c, s.scale(inv));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Solves `A X = B` given the full-format Cholesky factor from [`potrf_ref`].
pub fn potrs_ref<T: Scalar>(uplo: Uplo, factor: crate::matrix::MatRef<'_, T>, mut b: MatMut<'_, T>) -> Result<()> {
    let (first, second) = match uplo {
        Uplo::Lower => (Op::NoTrans, Op::ConjTrans),
        Uplo::Upper => (Op::ConjTrans, Op::NoTrans),
    };
    trsm(Side::Left, uplo, first, Diag::NonUnit, T::one(), factor, b.rb_mut())?;
    trsm(Side::Left, uplo, second, Diag::NonUnit, T::one(), factor, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DenseMatrix;

    #[test]
    fn identity_factor() {
        let mut a = DenseMatrix::<f64>::identity(4);
        potrf_ref(Uplo::Lower, a.as_mut()).unwrap();
        assert_eq!(a, DenseMatrix::identity(4));
    }

    #[test]
    fn two_by_two_lower() {
        let mut a = DenseMatrix::from_rows(&[[4.0, f64::NAN], [2.0, 5.0]]);
        potrf_ref(Uplo::Lower, a.as_mut()).unwrap();
        assert_eq!((a[(0, 0)], a[(1, 0)], a[(1, 1)]), (2.0, 1.0, 2.0));
        assert!(a[(0, 1)].is_nan());
    }

    #[test]
    fn two_by_two_upper() {
        let mut a = DenseMatrix::from_rows(&[[4.0, 2.0], [f64::NAN, 5.0]]);
        potrf_ref(Uplo::Upper, a.as_mut()).unwrap();
        assert_eq!((a[(0, 0)], a[(0, 1)], a[(1, 1)]), (2.0, 1.0, 2.0));
    }

    #[test]
    fn indefinite_reports_minor() {
        let mut a = DenseMatrix::from_rows(&[[1.0, 0.0], [2.0, 1.0]]);
        assert_eq!(potrf_ref(Uplo::Lower, a.as_mut()), Err(Error::NotPositiveDefinite { index: 2 }));
    }

    #[test]
    fn blocked_failure_index_is_global() {
        // diag(1, ..., 1, -1 at position 7), block size 3
        let mut a = DenseMatrix::<f64>::identity(9);
        a[(6, 6)] = -1.0;
        assert_eq!(potrf_ref_nb(Uplo::Upper, a.as_mut(), 3), Err(Error::NotPositiveDefinite { index: 7 }));
    }
}
