use crate::error::{Error, Result};
use crate::layout::Uplo;
use crate::matrix::MatMut;
use crate::scalar::Scalar;

use super::{block_size, gemm, syrk_herk, trmm, Diag, Op, Side};

/// Triangular product in place: `U U^H` (upper) or `L^H L` (lower), written
/// over the same triangle.
pub fn lauum_ref<T: Scalar>(uplo: Uplo, a: MatMut<'_, T>) -> Result<()> {
    lauum_ref_nb(uplo, a, block_size())
}

pub fn lauum_ref_nb<T: Scalar>(uplo: Uplo, a: MatMut<'_, T>, nb: usize) -> Result<()> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape(format!("lauum: A is {}x{}", a.rows(), a.cols())));
    }
    let nb = nb.max(1);
    if nb >= n {
        unblocked(uplo, a);
        return Ok(());
    }
    unsafe {
        for i in (0..n).step_by(nb) {
            let ib = nb.min(n - i);
            let i1 = i + ib;
            let rest = n - i1;
            let aii = a.alias_ref(i, i, ib, ib);
            match uplo {
                Uplo::Upper => {
                    trmm(Side::Right, Uplo::Upper, Op::ConjTrans, Diag::NonUnit, T::one(), aii, a.alias_mut(0, i, i, ib))?;
                    unblocked(uplo, a.alias_mut(i, i, ib, ib));
                    if rest > 0 {
                        gemm(
                            Op::NoTrans,
                            Op::ConjTrans,
                            T::one(),
                            a.alias_ref(0, i1, i, rest),
                            a.alias_ref(i, i1, ib, rest),
                            T::one(),
                            a.alias_mut(0, i, i, ib),
                        )?;
                        syrk_herk(Uplo::Upper, Op::NoTrans, 1.0, a.alias_ref(i, i1, ib, rest), 1.0, a.alias_mut(i, i, ib, ib))?;
                    }
                }
                Uplo::Lower => {
                    trmm(Side::Left, Uplo::Lower, Op::ConjTrans, Diag::NonUnit, T::one(), aii, a.alias_mut(i, 0, ib, i))?;
                    unblocked(uplo, a.alias_mut(i, i, ib, ib));
                    if rest > 0 {
                        gemm(
                            Op::ConjTrans,
                            Op::NoTrans,
                            T::one(),
                            a.alias_ref(i1, i, rest, ib),
                            a.alias_ref(i1, 0, rest, i),
                            T::one(),
                            a.alias_mut(i, 0, ib, i),
                        )?;
                        syrk_herk(Uplo::Lower, Op::ConjTrans, 1.0, a.alias_ref(i1, i, rest, ib), 1.0, a.alias_mut(i, i, ib, ib))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn unblocked<T: Scalar>(uplo: Uplo, mut a: MatMut<'_, T>) {
    let n = a.rows();
    unsafe {
        for i in 0..n {
            let aii = a.at(i, i).re();
            match uplo {
                Uplo::Upper => {
                    // (U U^H)(r, i) = U(r, i) U(i, i) + sum_{k > i} U(r, k) conj(U(i, k))
                    for r in 0..i {
                        let mut s = a.at(r, i).scale(aii);
                        for k in i + 1..n {
                            s += a.at(r, k) * a.at(i, k).conj();
                        }
                        a.put(r, i, s);
                    }
                    let mut d = aii * aii;
                    for k in i + 1..n {
                        d += a.at(i, k).abs2();
                    }
                    a.put(i, i, T::from_real(d));
                }
                Uplo::Lower => {
                    // (L^H L)(i, c) = L(i, i) L(i, c) + sum_{k > i} conj(L(k, i)) L(k, c)
                    for c in 0..i {
                        let mut s = a.at(i, c).scale(aii);
                        for k in i + 1..n {
                            s += a.at(k, i).conj() * a.at(k, c);
                        }
                        a.put(i, c, s);
                    }
                    let mut d = aii * aii;
                    for k in i + 1..n {
                        d += a.at(k, i).abs2();
                    }
                    a.put(i, i, T::from_real(d));
                }
            }
        }
    }
}
