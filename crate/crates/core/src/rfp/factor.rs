use crate::convert::RfpTriangle;
use crate::error::{Error, Result};
use crate::kernels::{Diag, Op, Side};
use crate::layout::Uplo;
use crate::matrix::MatMut;
use crate::scalar::Scalar;

use super::trace::call;
use super::{eff, require_state, Blocks, FactorState};

/// Cholesky factorization in RFP format.
///
/// On success the buffer holds `L` (`uplo = Lower`, `A = L L^H`) or `U`
/// (`uplo = Upper`, `A = U^H U`) in the same layout. A failure reports the
/// same 1-based minor order as a full-format factorization would.
pub fn pftrf<T: Scalar>(r: &mut RfpTriangle<T>) -> Result<()> {
    require_state(r, FactorState::Unfactored)?;
    let desc = *r.desc();
    if desc.n > 0 {
        let b = Blocks::new(r.as_mut_slice(), &desc);
        let (p, q) = (b.p, b.q);
        if p > 0 {
            call::potrf(b.tri1, b.d1())?;
        }
        if p > 0 && q > 0 {
            let d1 = b.d1_ref();
            if b.s1_direct {
                // M21 M11^H = A21
                call::trsm(Side::Right, b.tri1, eff(Op::ConjTrans, b.adj1()), Diag::NonUnit, T::one(), d1, b.s1())?;
                call::herk(b.tri2, Op::NoTrans, -1.0, b.s1_ref(), 1.0, b.d2())?;
            } else {
                // M11 M21^H = A12
                call::trsm(Side::Left, b.tri1, eff(Op::NoTrans, b.adj1()), Diag::NonUnit, T::one(), d1, b.s1())?;
                call::herk(b.tri2, Op::ConjTrans, -1.0, b.s1_ref(), 1.0, b.d2())?;
            }
        }
        if q > 0 {
            call::potrf(b.tri2, b.d2()).map_err(|e| match e {
                Error::NotPositiveDefinite { index } => Error::NotPositiveDefinite { index: index + p },
                other => other,
            })?;
        }
    }
    r.set_state(FactorState::CholeskyFactor);
    Ok(())
}

/// Solves `A X = B` with the factor from [`pftrf`]; `B` is overwritten.
pub fn pftrs<T: Scalar>(r: &RfpTriangle<T>, mut b: MatMut<'_, T>) -> Result<()> {
    require_state(r, FactorState::CholeskyFactor)?;
    check_order(r.n(), b.rows())?;
    if r.n() == 0 || b.cols() == 0 {
        return Ok(());
    }
    let blocks = Blocks::shared(r.as_slice(), r.desc());
    solve_m(&blocks, Side::Left, Op::NoTrans, Diag::NonUnit, T::one(), b.rb_mut())?;
    solve_m(&blocks, Side::Left, Op::ConjTrans, Diag::NonUnit, T::one(), b)
}

fn check_order(n: usize, got: usize) -> Result<()> {
    if got != n {
        return Err(Error::Shape(format!("right-hand side does not conform to order {n} (got {got})")));
    }
    Ok(())
}

/// Triangular solve with an RFP triangular matrix `A`:
/// `B <- alpha op(A)^{-1} B` (left) or `B <- alpha B op(A)^{-1}` (right).
///
/// `trans` is `NoTrans` or `ConjTrans`; `Trans` is accepted for real data
/// only, where it means the same as `ConjTrans`.
pub fn tfsm<T: Scalar>(side: Side, trans: Op, diag: Diag, alpha: T, a: &RfpTriangle<T>, mut b: MatMut<'_, T>) -> Result<()> {
    if trans == Op::Trans && T::is_complex() {
        return Err(Error::InvalidArgument("tfsm: complex data needs NoTrans or ConjTrans".into()));
    }
    let n = a.n();
    match side {
        Side::Left => check_order(n, b.rows())?,
        Side::Right => check_order(n, b.cols())?,
    }
    if n == 0 || b.is_empty() {
        return Ok(());
    }
    if alpha == T::zero() {
        b.fill(T::zero());
        return Ok(());
    }
    let blocks = Blocks::shared(a.as_slice(), a.desc());
    if diag == Diag::NonUnit {
        if let Some(index) = blocks.zero_diagonal() {
            return Err(Error::Singular { index });
        }
    }
    let op_t = if trans.is_trans() { Op::ConjTrans } else { Op::NoTrans };
    let op_m = match a.uplo() {
        Uplo::Lower => op_t,
        Uplo::Upper => op_t.toggle(),
    };
    solve_m(&blocks, side, op_m, diag, alpha, b)
}

/// `B <- alpha op(M)^{-1} B` or `alpha B op(M)^{-1}` with `op` in
/// `{NoTrans, ConjTrans}`, as trsm, gemm, trsm on the blocks.
pub(crate) fn solve_m<T: Scalar>(bl: &Blocks<'_, T>, side: Side, op: Op, diag: Diag, alpha: T, b: MatMut<'_, T>) -> Result<()> {
    let (p, q) = (bl.p, bl.q);
    let (d1, d2, s1) = (bl.d1_ref(), bl.d2_ref(), bl.s1_ref());
    let op1 = eff(op, bl.adj1());
    let op2 = eff(op, bl.adj2());
    let ops = eff(op, !bl.s1_direct);
    let (m, nc) = (b.rows(), b.cols());
    // Blocks of B that correspond to M11 and M22.
    let (b1, b2) = unsafe {
        match side {
            Side::Left => (b.alias_mut(0, 0, p, nc), b.alias_mut(p, 0, q, nc)),
            Side::Right => (b.alias_mut(0, 0, m, p), b.alias_mut(0, p, m, q)),
        }
    };
    // Lower-triangular forward order solves the M11 block first.
    let m11_first = (side == Side::Left) == (op == Op::NoTrans);
    let (first, second) = if m11_first { (b1, b2) } else { (b2, b1) };
    let (tri_f, op_f, d_f, tri_s, op_s, d_s) =
        if m11_first { (bl.tri1, op1, d1, bl.tri2, op2, d2) } else { (bl.tri2, op2, d2, bl.tri1, op1, d1) };
    let first_nonempty = if m11_first { p > 0 } else { q > 0 };
    let second_nonempty = if m11_first { q > 0 } else { p > 0 };

    if first_nonempty {
        call::trsm(side, tri_f, op_f, diag, alpha, d_f, unsafe { first.alias_mut(0, 0, first.rows(), first.cols()) })?;
    }
    if first_nonempty && second_nonempty {
        let solved = first.rb();
        let out = unsafe { second.alias_mut(0, 0, second.rows(), second.cols()) };
        match side {
            Side::Left => call::gemm(ops, Op::NoTrans, -T::one(), s1, solved, alpha, out)?,
            Side::Right => call::gemm(Op::NoTrans, ops, -T::one(), solved, s1, alpha, out)?,
        }
    }
    if second_nonempty {
        let scale = if first_nonempty { T::one() } else { alpha };
        call::trsm(side, tri_s, op_s, diag, scale, d_s, second)?;
    }
    Ok(())
}
