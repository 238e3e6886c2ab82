use crate::error::{Error, Result};
use crate::layout::Uplo;
use crate::matrix::{MatMut, MatRef};
use crate::scalar::Scalar;

use super::{dot, gemm, scale, zero_diagonal, Diag, Op, Side};

const NB: usize = 64;

/// Solves `op(A) X = alpha B` (left) or `X op(A) = alpha B` (right),
/// overwriting `B` with `X`. Only the `uplo` triangle of `A` is read.
pub fn trsm<T: Scalar>(side: Side, uplo: Uplo, trans: Op, diag: Diag, alpha: T, a: MatRef<'_, T>, mut b: MatMut<'_, T>) -> Result<()> {
    let order = match side {
        Side::Left => b.rows(),
        Side::Right => b.cols(),
    };
    if a.rows() != a.cols() || a.rows() != order {
        return Err(Error::Shape(format!("trsm: A is {}x{}, B is {}x{} ({side:?})", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    if b.is_empty() {
        return Ok(());
    }
    if alpha == T::zero() {
        b.fill(T::zero());
        return Ok(());
    }
    if diag == Diag::NonUnit {
        if let Some(index) = zero_diagonal(&a) {
            return Err(Error::Singular { index });
        }
    }
    scale(alpha, &mut b);

    // op(A) is lower triangular when exactly one of these holds.
    let op_lower = (uplo == Uplo::Lower) != trans.is_trans();
    // A[r, c] of op(A) as a gemm operand.
    let op_block = |r0: usize, c0: usize, rows: usize, cols: usize| {
        if trans.is_trans() {
            a.submatrix(c0, r0, cols, rows)
        } else {
            a.submatrix(r0, c0, rows, cols)
        }
    };

    let forward = match side {
        Side::Left => op_lower,
        Side::Right => !op_lower,
    };
    let nblocks = order.div_ceil(NB);
    for step in 0..nblocks {
        let k0 = if forward { step } else { nblocks - 1 - step } * NB;
        let kb = NB.min(order - k0);
        let k1 = k0 + kb;
        let akk = a.submatrix(k0, k0, kb, kb);
        match side {
            Side::Left => {
                let bk = unsafe { b.alias_mut(k0, 0, kb, b.cols()) };
                unblocked(side, uplo, trans, diag, akk, bk);
                let solved = unsafe { b.alias_ref(k0, 0, kb, b.cols()) };
                if forward && k1 < order {
                    let rest = unsafe { b.alias_mut(k1, 0, order - k1, b.cols()) };
                    gemm(trans, Op::NoTrans, -T::one(), op_block(k1, k0, order - k1, kb), solved, T::one(), rest)?;
                } else if !forward && k0 > 0 {
                    let rest = unsafe { b.alias_mut(0, 0, k0, b.cols()) };
                    gemm(trans, Op::NoTrans, -T::one(), op_block(0, k0, k0, kb), solved, T::one(), rest)?;
                }
            }
            Side::Right => {
                let bk = unsafe { b.alias_mut(0, k0, b.rows(), kb) };
                unblocked(side, uplo, trans, diag, akk, bk);
                let solved = unsafe { b.alias_ref(0, k0, b.rows(), kb) };
                if forward && k1 < order {
                    let rest = unsafe { b.alias_mut(0, k1, b.rows(), order - k1) };
                    gemm(Op::NoTrans, trans, -T::one(), solved, op_block(k0, k1, kb, order - k1), T::one(), rest)?;
                } else if !forward && k0 > 0 {
                    let rest = unsafe { b.alias_mut(0, 0, b.rows(), k0) };
                    gemm(Op::NoTrans, trans, -T::one(), solved, op_block(k0, 0, kb, k0), T::one(), rest)?;
                }
            }
        }
    }
    Ok(())
}

/// Column-oriented substitution on a diagonal block, `alpha = 1`.
fn unblocked<T: Scalar>(side: Side, uplo: Uplo, trans: Op, diag: Diag, a: MatRef<'_, T>, mut b: MatMut<'_, T>) {
    let (m, n) = (b.rows(), b.cols());
    let nonunit = diag == Diag::NonUnit;
    let ca = |i: usize, j: usize| trans.apply(unsafe { a.at(i, j) });
    unsafe {
        match (side, uplo, trans.is_trans()) {
            (Side::Left, Uplo::Upper, false) => {
                for j in 0..n {
                    for k in (0..m).rev() {
                        if nonunit {
                            *b.slot(k, j) = b.at(k, j) / a.at(k, k);
                        }
                        let bkj = b.at(k, j);
                        for i in 0..k {
                            *b.slot(i, j) -= bkj * a.at(i, k);
                        }
                    }
                }
            }
            (Side::Left, Uplo::Lower, false) => {
                for j in 0..n {
                    for k in 0..m {
                        if nonunit {
                            *b.slot(k, j) = b.at(k, j) / a.at(k, k);
                        }
                        let bkj = b.at(k, j);
                        for i in k + 1..m {
                            *b.slot(i, j) -= bkj * a.at(i, k);
                        }
                    }
                }
            }
            (Side::Left, Uplo::Upper, true) => {
                for j in 0..n {
                    for i in 0..m {
                        let mut t = b.at(i, j) - dot(i, |k| ca(k, i), |k| b.at(k, j));
                        if nonunit {
                            t = t / ca(i, i);
                        }
                        b.put(i, j, t);
                    }
                }
            }
            (Side::Left, Uplo::Lower, true) => {
                for j in 0..n {
                    for i in (0..m).rev() {
                        let mut t = b.at(i, j) - dot(m - i - 1, |k| ca(i + 1 + k, i), |k| b.at(i + 1 + k, j));
                        if nonunit {
                            t = t / ca(i, i);
                        }
                        b.put(i, j, t);
                    }
                }
            }
            (Side::Right, Uplo::Upper, false) => {
                for j in 0..n {
                    for k in 0..j {
                        let akj = a.at(k, j);
                        for i in 0..m {
                            *b.slot(i, j) -= akj * b.at(i, k);
                        }
                    }
                    if nonunit {
                        let d = a.at(j, j);
                        for i in 0..m {
                            *b.slot(i, j) = b.at(i, j) / d;
                        }
                    }
                }
            }
            (Side::Right, Uplo::Lower, false) => {
                for j in (0..n).rev() {
                    for k in j + 1..n {
                        let akj = a.at(k, j);
                        for i in 0..m {
                            *b.slot(i, j) -= akj * b.at(i, k);
                        }
                    }
                    if nonunit {
                        let d = a.at(j, j);
                        for i in 0..m {
                            *b.slot(i, j) = b.at(i, j) / d;
                        }
                    }
                }
            }
            (Side::Right, Uplo::Upper, true) => {
                for k in (0..n).rev() {
                    if nonunit {
                        let d = ca(k, k);
                        for i in 0..m {
                            *b.slot(i, k) = b.at(i, k) / d;
                        }
                    }
                    for j in 0..k {
                        let t = ca(j, k);
                        for i in 0..m {
                            *b.slot(i, j) -= t * b.at(i, k);
                        }
                    }
                }
            }
            (Side::Right, Uplo::Lower, true) => {
                for k in 0..n {
                    if nonunit {
                        let d = ca(k, k);
                        for i in 0..m {
                            *b.slot(i, k) = b.at(i, k) / d;
                        }
                    }
                    for j in k + 1..n {
                        let t = ca(j, k);
                        for i in 0..m {
                            *b.slot(i, j) -= t * b.at(i, k);
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
    fn lower_forward_substitution() {
        let a = DenseMatrix::from_rows(&[[2.0, 0.0], [1.0, 2.0]]);
        let mut b = DenseMatrix::from_rows(&[[2.0], [3.0]]);
        trsm(Side::Left, Uplo::Lower, Op::NoTrans, Diag::NonUnit, 1.0, a.as_ref(), b.as_mut()).unwrap();
        assert_eq!(b, DenseMatrix::from_rows(&[[1.0], [1.0]]));
    }

    #[test]
    fn identity_and_zero_alpha() {
        let b0 = DenseMatrix::from_rows(&[[1.5, -2.0, 3.0], [4.0, 0.25, -6.0]]);
        let mut b = b0.clone();
        trsm(Side::Right, Uplo::Upper, Op::Trans, Diag::NonUnit, 1.0, DenseMatrix::identity(3).as_ref(), b.as_mut()).unwrap();
        assert_eq!(b, b0);
        trsm(Side::Left, Uplo::Lower, Op::NoTrans, Diag::NonUnit, 0.0, DenseMatrix::identity(2).as_ref(), b.as_mut()).unwrap();
        assert_eq!(b, DenseMatrix::zeros(2, 3));
    }

    #[test]
    fn zero_diagonal_reports_index() {
        let a = DenseMatrix::from_rows(&[[1.0, 0.0, 0.0], [1.0, 2.0, 0.0], [1.0, 1.0, 0.0]]);
        let mut b = DenseMatrix::<f64>::zeros(3, 1);
        let r = trsm(Side::Left, Uplo::Lower, Op::NoTrans, Diag::NonUnit, 1.0, a.as_ref(), b.as_mut());
        assert_eq!(r, Err(Error::Singular { index: 3 }));
        // unit diagonal never reads it
        assert!(trsm(Side::Left, Uplo::Lower, Op::NoTrans, Diag::Unit, 1.0, a.as_ref(), b.as_mut()).is_ok());
    }
}
