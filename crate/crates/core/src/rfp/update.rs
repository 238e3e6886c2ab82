use crate::convert::RfpTriangle;
use crate::error::{Error, Result};
use crate::kernels::Op;
use crate::matrix::MatRef;
use crate::scalar::Scalar;

use super::trace::call;
use super::Blocks;

/// Rank-k update of an RFP symmetric or Hermitian matrix:
/// `C <- alpha A A^H + beta C` (`trans = NoTrans`, `A` is `n x k`) or
/// `C <- alpha A^H A + beta C` (otherwise, `A` is `k x n`).
///
/// For complex data `Trans` is read as `ConjTrans`, as in the full-format
/// Hermitian update.
pub fn sfrk<T: Scalar>(trans: Op, alpha: f64, a: MatRef<'_, T>, beta: f64, c: &mut RfpTriangle<T>) -> Result<()> {
    let n = c.n();
    let (an, k) = if trans.is_trans() { (a.cols(), a.rows()) } else { (a.rows(), a.cols()) };
    if an != n {
        return Err(Error::Shape(format!("sfrk: op(A) has {an} rows, C has order {n}")));
    }
    if n == 0 || ((alpha == 0.0 || k == 0) && beta == 1.0) {
        return Ok(());
    }
    let desc = *c.desc();
    let b = Blocks::new(c.as_mut_slice(), &desc);
    let (p, q) = (b.p, b.q);
    // Rows of op(A) belonging to the leading and trailing blocks.
    let (a1, a2, opa) = if trans.is_trans() {
        (a.submatrix(0, 0, k, p), a.submatrix(0, p, k, q), Op::ConjTrans)
    } else {
        (a.submatrix(0, 0, p, k), a.submatrix(p, 0, q, k), Op::NoTrans)
    };
    if p > 0 {
        call::herk(b.tri1, trans, alpha, a1, beta, b.d1())?;
    }
    if q > 0 {
        call::herk(b.tri2, trans, alpha, a2, beta, b.d2())?;
    }
    if p > 0 && q > 0 {
        let (x, y) = if b.s1_direct { (a2, a1) } else { (a1, a2) };
        call::gemm(opa, opa.toggle(), T::from_real(alpha), x, y, T::from_real(beta), b.s1())?;
    }
    Ok(())
}

/// Alias of [`sfrk`] under its Hermitian name.
pub fn hfrk<T: Scalar>(trans: Op, alpha: f64, a: MatRef<'_, T>, beta: f64, c: &mut RfpTriangle<T>) -> Result<()> {
    sfrk(trans, alpha, a, beta, c)
}
