use crate::error::{Error, Result};
use crate::layout::Uplo;
use crate::matrix::MatMut;
use crate::scalar::Scalar;

use super::{block_size, trmm, trsm, zero_diagonal, Diag, Op, Side};

/// In-place inverse of a triangular matrix.
///
/// With `Diag::NonUnit` the diagonal is checked first; an exactly zero entry
/// returns [`Error::Singular`] and leaves `A` untouched.
pub fn trtri_ref<T: Scalar>(uplo: Uplo, diag: Diag, a: MatMut<'_, T>) -> Result<()> {
    trtri_ref_nb(uplo, diag, a, block_size())
}

pub fn trtri_ref_nb<T: Scalar>(uplo: Uplo, diag: Diag, a: MatMut<'_, T>, nb: usize) -> Result<()> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape(format!("trtri: A is {}x{}", a.rows(), a.cols())));
    }
    if diag == Diag::NonUnit {
        if let Some(index) = zero_diagonal(&a.rb()) {
            return Err(Error::Singular { index });
        }
    }
    let nb = nb.max(1);
    if nb >= n {
        unblocked(uplo, diag, a)?;
        return Ok(());
    }
    unsafe {
        match uplo {
            Uplo::Upper => {
                for j0 in (0..n).step_by(nb) {
                    let jb = nb.min(n - j0);
                    if j0 > 0 {
                        trmm(Side::Left, Uplo::Upper, Op::NoTrans, diag, T::one(), a.alias_ref(0, 0, j0, j0), a.alias_mut(0, j0, j0, jb))?;
                        trsm(
                            Side::Right,
                            Uplo::Upper,
                            Op::NoTrans,
                            diag,
                            -T::one(),
                            a.alias_ref(j0, j0, jb, jb),
                            a.alias_mut(0, j0, j0, jb),
                        )?;
                    }
                    unblocked(uplo, diag, a.alias_mut(j0, j0, jb, jb))?;
                }
            }
            Uplo::Lower => {
                for j0 in (0..n).step_by(nb).rev() {
                    let jb = nb.min(n - j0);
                    let j1 = j0 + jb;
                    if j1 < n {
                        let rest = n - j1;
                        trmm(
                            Side::Left,
                            Uplo::Lower,
                            Op::NoTrans,
                            diag,
                            T::one(),
                            a.alias_ref(j1, j1, rest, rest),
                            a.alias_mut(j1, j0, rest, jb),
                        )?;
                        trsm(
                            Side::Right,
                            Uplo::Lower,
                            Op::NoTrans,
                            diag,
                            -T::one(),
                            a.alias_ref(j0, j0, jb, jb),
                            a.alias_mut(j1, j0, rest, jb),
                        )?;
                    }
                    unblocked(uplo, diag, a.alias_mut(j0, j0, jb, jb))?;
                }
            }
        }
    }
    Ok(())
}

fn unblocked<T: Scalar>(uplo: Uplo, diag: Diag, a: MatMut<'_, T>) -> Result<()> {
    let n = a.rows();
    let nonunit = diag == Diag::NonUnit;
    unsafe {
        match uplo {
            Uplo::Upper => {
                for j in 0..n {
                    let ajj = if nonunit {
                        let inv = T::one() / a.at(j, j);
                        a.alias_mut(j, j, 1, 1).put(0, 0, inv);
                        -inv
                    } else {
                        -T::one()
                    };
                    if j > 0 {
                        let col = a.alias_mut(0, j, j, 1);
                        trmm(Side::Left, Uplo::Upper, Op::NoTrans, diag, ajj, a.alias_ref(0, 0, j, j), col)?;
                    }
                }
            }
            Uplo::Lower => {
                for j in (0..n).rev() {
                    let ajj = if nonunit {
                        let inv = T::one() / a.at(j, j);
                        a.alias_mut(j, j, 1, 1).put(0, 0, inv);
                        -inv
                    } else {
                        -T::one()
                    };
                    if j + 1 < n {
                        let m = n - j - 1;
                        let col = a.alias_mut(j + 1, j, m, 1);
                        trmm(Side::Left, Uplo::Lower, Op::NoTrans, diag, ajj, a.alias_ref(j + 1, j + 1, m, m), col)?;
                    }
                }
            }
        }
    }
    Ok(())
}
