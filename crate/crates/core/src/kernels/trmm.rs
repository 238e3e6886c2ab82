use crate::error::{Error, Result};
use crate::layout::Uplo;
use crate::matrix::{MatMut, MatRef};
use crate::scalar::Scalar;

use super::{dot, gemm, scale, Diag, Op, Side};

const NB: usize = 64;

/// `B <- alpha * op(A) * B` (left) or `B <- alpha * B * op(A)` (right) with
/// `A` triangular. Only the `uplo` triangle of `A` is read.
pub fn trmm<T: Scalar>(side: Side, uplo: Uplo, trans: Op, diag: Diag, alpha: T, a: MatRef<'_, T>, mut b: MatMut<'_, T>) -> Result<()> {
    let order = match side {
        Side::Left => b.rows(),
        Side::Right => b.cols(),
    };
    if a.rows() != a.cols() || a.rows() != order {
        return Err(Error::Shape(format!("trmm: A is {}x{}, B is {}x{} ({side:?})", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    if b.is_empty() {
        return Ok(());
    }
    scale(alpha, &mut b);
    if alpha == T::zero() {
        return Ok(());
    }

    let op_lower = (uplo == Uplo::Lower) != trans.is_trans();
    let op_block = |r0: usize, c0: usize, rows: usize, cols: usize| {
        if trans.is_trans() {
            a.submatrix(c0, r0, cols, rows)
        } else {
            a.submatrix(r0, c0, rows, cols)
        }
    };
    // Each block row/column is finished using only blocks not yet modified.
    let forward = match side {
        Side::Left => !op_lower,
        Side::Right => op_lower,
    };
    let nblocks = order.div_ceil(NB);
    for step in 0..nblocks {
        let k0 = if forward { step } else { nblocks - 1 - step } * NB;
        let kb = NB.min(order - k0);
        let k1 = k0 + kb;
        let akk = a.submatrix(k0, k0, kb, kb);
        match side {
            Side::Left => {
                unblocked(side, uplo, trans, diag, akk, unsafe { b.alias_mut(k0, 0, kb, b.cols()) });
                let out = unsafe { b.alias_mut(k0, 0, kb, b.cols()) };
                if forward && k1 < order {
                    let rest = unsafe { b.alias_ref(k1, 0, order - k1, b.cols()) };
                    gemm(trans, Op::NoTrans, T::one(), op_block(k0, k1, kb, order - k1), rest, T::one(), out)?;
                } else if !forward && k0 > 0 {
                    let rest = unsafe { b.alias_ref(0, 0, k0, b.cols()) };
                    gemm(trans, Op::NoTrans, T::one(), op_block(k0, 0, kb, k0), rest, T::one(), out)?;
                }
            }
            Side::Right => {
                unblocked(side, uplo, trans, diag, akk, unsafe { b.alias_mut(0, k0, b.rows(), kb) });
                let out = unsafe { b.alias_mut(0, k0, b.rows(), kb) };
                if forward && k1 < order {
                    let rest = unsafe { b.alias_ref(0, k1, b.rows(), order - k1) };
                    gemm(Op::NoTrans, trans, T::one(), rest, op_block(k1, k0, order - k1, kb), T::one(), out)?;
                } else if !forward && k0 > 0 {
                    let rest = unsafe { b.alias_ref(0, 0, b.rows(), k0) };
                    gemm(Op::NoTrans, trans, T::one(), rest, op_block(0, k0, k0, kb), T::one(), out)?;
                }
            }
        }
    }
    Ok(())
}

/// Reference triangular multiply on a diagonal block, `alpha = 1`.
fn unblocked<T: Scalar>(side: Side, uplo: Uplo, trans: Op, diag: Diag, a: MatRef<'_, T>, mut b: MatMut<'_, T>) {
    let (m, n) = (b.rows(), b.cols());
    let nonunit = diag == Diag::NonUnit;
    let ca = |i: usize, j: usize| trans.apply(unsafe { a.at(i, j) });
    unsafe {
        match (side, uplo, trans.is_trans()) {
            (Side::Left, Uplo::Upper, false) => {
                for j in 0..n {
                    for k in 0..m {
                        let t = b.at(k, j);
                        for i in 0..k {
                            *b.slot(i, j) += t * a.at(i, k);
                        }
                        if nonunit {
                            b.put(k, j, t * a.at(k, k));
                        }
                    }
                }
            }
            (Side::Left, Uplo::Lower, false) => {
                for j in 0..n {
                    for k in (0..m).rev() {
                        let t = b.at(k, j);
                        if nonunit {
                            b.put(k, j, t * a.at(k, k));
                        }
                        for i in k + 1..m {
                            *b.slot(i, j) += t * a.at(i, k);
                        }
                    }
                }
            }
            (Side::Left, Uplo::Upper, true) => {
                for j in 0..n {
                    for i in (0..m).rev() {
                        let mut t = b.at(i, j);
                        if nonunit {
                            t *= ca(i, i);
                        }
                        t += dot(i, |k| ca(k, i), |k| b.at(k, j));
                        b.put(i, j, t);
                    }
                }
            }
            (Side::Left, Uplo::Lower, true) => {
                for j in 0..n {
                    for i in 0..m {
                        let mut t = b.at(i, j);
                        if nonunit {
                            t *= ca(i, i);
                        }
                        t += dot(m - i - 1, |k| ca(i + 1 + k, i), |k| b.at(i + 1 + k, j));
                        b.put(i, j, t);
                    }
                }
            }
            (Side::Right, Uplo::Upper, false) => {
                for j in (0..n).rev() {
                    if nonunit {
                        let d = a.at(j, j);
                        for i in 0..m {
                            *b.slot(i, j) = b.at(i, j) * d;
                        }
                    }
                    for k in 0..j {
                        let t = a.at(k, j);
                        for i in 0..m {
                            *b.slot(i, j) += t * b.at(i, k);
                        }
                    }
                }
            }
            (Side::Right, Uplo::Lower, false) => {
                for j in 0..n {
                    if nonunit {
                        let d = a.at(j, j);
                        for i in 0..m {
                            *b.slot(i, j) = b.at(i, j) * d;
                        }
                    }
                    for k in j + 1..n {
                        let t = a.at(k, j);
                        for i in 0..m {
                            *b.slot(i, j) += t * b.at(i, k);
                        }
                    }
                }
            }
            (Side::Right, Uplo::Upper, true) => {
                for k in 0..n {
                    for j in 0..k {
                        let t = ca(j, k);
                        for i in 0..m {
                            *b.slot(i, j) += t * b.at(i, k);
                        }
                    }
                    if nonunit {
                        let d = ca(k, k);
                        for i in 0..m {
                            *b.slot(i, k) = b.at(i, k) * d;
                        }
                    }
                }
            }
            (Side::Right, Uplo::Lower, true) => {
                for k in (0..n).rev() {
                    for j in k + 1..n {
                        let t = ca(j, k);
                        for i in 0..m {
                            *b.slot(i, j) += t * b.at(i, k);
                        }
                    }
                    if nonunit {
                        let d = ca(k, k);
                        for i in 0..m {
                            *b.slot(i, k) = b.at(i, k) * d;
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DenseMatrix;

    #[test]
    fn lower_times_vector() {
        let a = DenseMatrix::from_rows(&[[2.0, 0.0], [1.0, 1.0]]);
        let mut b = DenseMatrix::from_rows(&[[1.0], [1.0]]);
        trmm(Side::Left, Uplo::Lower, Op::NoTrans, Diag::NonUnit, 1.0, a.as_ref(), b.as_mut()).unwrap();
        assert_eq!(b, DenseMatrix::from_rows(&[[2.0], [2.0]]));
    }

    #[test]
    fn identity_scales_by_alpha() {
        let mut b = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        trmm(Side::Right, Uplo::Upper, Op::NoTrans, Diag::NonUnit, 2.0, DenseMatrix::identity(2).as_ref(), b.as_mut()).unwrap();
        assert_eq!(b, DenseMatrix::from_rows(&[[2.0, 4.0], [6.0, 8.0]]));
    }

    #[test]
    fn empty_rhs_is_noop() {
        let a = DenseMatrix::from_rows(&[[f64::NAN]]);
        let mut b = DenseMatrix::<f64>::zeros(1, 0);
        assert!(trmm(Side::Left, Uplo::Lower, Op::Trans, Diag::NonUnit, 3.0, a.as_ref(), b.as_mut()).is_ok());
    }
}
