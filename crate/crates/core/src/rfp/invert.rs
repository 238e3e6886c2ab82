use crate::convert::RfpTriangle;
use crate::error::{Error, Result};
use crate::kernels::{Diag, Op, Side};
use crate::scalar::Scalar;

use super::trace::call;
use super::{eff, require_state, Blocks, FactorState};

/// Inverts an RFP triangular matrix in place.
///
/// A Cholesky factor becomes its inverse; any other content is treated as a
/// plain triangular matrix and keeps its state. A zero diagonal entry (with
/// `Diag::NonUnit`) returns [`Error::Singular`] before anything is written.
pub fn tftri<T: Scalar>(r: &mut RfpTriangle<T>, diag: Diag) -> Result<()> {
    let desc = *r.desc();
    if desc.n > 0 {
        let b = Blocks::new(r.as_mut_slice(), &desc);
        if diag == Diag::NonUnit {
            if let Some(index) = b.zero_diagonal() {
                return Err(Error::Singular { index });
            }
        }
        invert_m(&b, diag)?;
    }
    if r.state() == FactorState::CholeskyFactor {
        r.set_state(FactorState::TriangularInverse);
    }
    Ok(())
}

/// `M <- M^{-1}` for the lower triangular `M` behind the blocks.
fn invert_m<T: Scalar>(b: &Blocks<'_, T>, diag: Diag) -> Result<()> {
    let (p, q) = (b.p, b.q);
    if p > 0 {
        call::trtri(b.tri1, diag, b.d1())?;
    }
    if p > 0 && q > 0 {
        // M21 <- -M21 W11
        if b.s1_direct {
            call::trmm(Side::Right, b.tri1, eff(Op::NoTrans, b.adj1()), diag, -T::one(), b.d1_ref(), b.s1())?;
        } else {
            call::trmm(Side::Left, b.tri1, eff(Op::ConjTrans, b.adj1()), diag, -T::one(), b.d1_ref(), b.s1())?;
        }
    }
    if q > 0 {
        call::trtri(b.tri2, diag, b.d2())?;
    }
    if p > 0 && q > 0 {
        // M21 <- W22 M21
        if b.s1_direct {
            call::trmm(Side::Left, b.tri2, eff(Op::NoTrans, b.adj2()), diag, T::one(), b.d2_ref(), b.s1())?;
        } else {
            call::trmm(Side::Right, b.tri2, eff(Op::ConjTrans, b.adj2()), diag, T::one(), b.d2_ref(), b.s1())?;
        }
    }
    Ok(())
}

/// Inverse of a positive definite matrix from its [`pftrf`] factor.
///
/// The factor is inverted and then multiplied by its conjugate transpose,
/// leaving the stored triangle of `A^{-1}`.
///
/// [`pftrf`]: super::pftrf
pub fn pftri<T: Scalar>(r: &mut RfpTriangle<T>) -> Result<()> {
    require_state(r, FactorState::CholeskyFactor)?;
    tftri(r, Diag::NonUnit)?;
    let desc = *r.desc();
    if desc.n > 0 {
        let b = Blocks::new(r.as_mut_slice(), &desc);
        let (p, q) = (b.p, b.q);
        // A^{-1} = W^H W with W = M^{-1}
        if p > 0 {
            call::lauum(b.tri1, b.d1())?;
        }
        if p > 0 && q > 0 {
            if b.s1_direct {
                call::herk(b.tri1, Op::ConjTrans, 1.0, b.s1_ref(), 1.0, b.d1())?;
                call::trmm(Side::Left, b.tri2, eff(Op::ConjTrans, b.adj2()), Diag::NonUnit, T::one(), b.d2_ref(), b.s1())?;
            } else {
                call::herk(b.tri1, Op::NoTrans, 1.0, b.s1_ref(), 1.0, b.d1())?;
                call::trmm(Side::Right, b.tri2, eff(Op::NoTrans, b.adj2()), Diag::NonUnit, T::one(), b.d2_ref(), b.s1())?;
            }
        }
        if q > 0 {
            call::lauum(b.tri2, b.d2())?;
        }
    }
    r.set_state(FactorState::FullInverse);
    Ok(())
}
