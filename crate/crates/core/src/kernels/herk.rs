use crate::error::{Error, Result};
use crate::layout::Uplo;
use crate::matrix::{MatMut, MatRef};
use crate::scalar::Scalar;

use super::{dot, gemm, Op};

const NB: usize = 64;

/// Symmetric (real) or Hermitian (complex) rank-k update of one triangle:
/// `C <- alpha * A A^H + beta * C` for `trans = NoTrans`, or
/// `C <- alpha * A^H A + beta * C` otherwise.
///
/// `alpha` and `beta` are real. The other triangle of `C` is never touched,
/// and diagonal imaginary parts are set to zero.
pub fn syrk_herk<T: Scalar>(uplo: Uplo, trans: Op, alpha: f64, a: MatRef<'_, T>, beta: f64, mut c: MatMut<'_, T>) -> Result<()> {
    let (n, k) = if trans.is_trans() { (a.cols(), a.rows()) } else { (a.rows(), a.cols()) };
    if c.rows() != c.cols() || c.rows() != n {
        return Err(Error::Shape(format!("syrk_herk: C is {}x{}, op(A) is {n}x{k}", c.rows(), c.cols())));
    }
    if n == 0 || ((alpha == 0.0 || k == 0) && beta == 1.0) {
        return Ok(());
    }
    let opa = if trans.is_trans() { Op::ConjTrans } else { Op::NoTrans };
    // Rows r0..r0+rows of op(A), as a gemm operand under `opa`.
    let rows_of = |r0: usize, rows: usize| {
        if trans.is_trans() {
            a.submatrix(0, r0, k, rows)
        } else {
            a.submatrix(r0, 0, rows, k)
        }
    };
    let adjoint = opa.toggle();
    let (alpha_s, beta_s) = (T::from_real(alpha), T::from_real(beta));

    for j0 in (0..n).step_by(NB) {
        let jb = NB.min(n - j0);
        diagonal_block(uplo, trans, alpha, beta, &a, &mut c, j0, jb, k);
        let (r0, rows) = match uplo {
            Uplo::Lower => (j0 + jb, n - j0 - jb),
            Uplo::Upper => (0, j0),
        };
        if rows > 0 {
            let out = unsafe { c.alias_mut(r0, j0, rows, jb) };
            gemm(opa, adjoint, alpha_s, rows_of(r0, rows), rows_of(j0, jb), beta_s, out)?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn diagonal_block<T: Scalar>(
    uplo: Uplo,
    trans: Op,
    alpha: f64,
    beta: f64,
    a: &MatRef<'_, T>,
    c: &mut MatMut<'_, T>,
    j0: usize,
    jb: usize,
    k: usize,
) {
    unsafe {
        for j in j0..j0 + jb {
            let rows = match uplo {
                Uplo::Lower => j..j0 + jb,
                Uplo::Upper => j0..j + 1,
            };
            for i in rows.clone() {
                let p = c.slot(i, j);
                *p = if beta == 0.0 { T::zero() } else { (*p).scale(beta) };
            }
            if alpha != 0.0 {
                if trans.is_trans() {
                    for i in rows.clone() {
                        let s = dot(k, |p| a.at(p, i).conj(), |p| a.at(p, j));
                        *c.slot(i, j) += s.scale(alpha);
                    }
                } else {
                    for p in 0..k {
                        let t = a.at(j, p).conj().scale(alpha);
                        for i in rows.clone() {
                            *c.slot(i, j) += a.at(i, p) * t;
                        }
                    }
                }
            }
            let d = c.slot(j, j);
            *d = (*d).real_part();
        }
    }
}
