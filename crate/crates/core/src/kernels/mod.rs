//! Reference full-format Level-3 BLAS and LAPACK-style kernels.
//!
//! All kernels work on column-major [`MatRef`]/[`MatMut`] views, run on the
//! calling thread and use fixed loop orders, so repeated calls on the same
//! data give bit-identical results. Triangular and Hermitian kernels read and
//! write only the triangle named by their `uplo` argument.
//!
//! [`MatRef`]: crate::matrix::MatRef
//! [`MatMut`]: crate::matrix::MatMut

mod gemm;
mod herk;
mod lauum;
mod potrf;
mod trmm;
mod trsm;
mod trtri;

use std::sync::OnceLock;

pub use gemm::{gemm, GEMM_WORKSPACE};
pub use herk::syrk_herk;
pub use lauum::{lauum_ref, lauum_ref_nb};
pub use potrf::{potrf_ref, potrf_ref_nb, potrs_ref};
pub use trmm::trmm;
pub use trsm::trsm;
pub use trtri::{trtri_ref, trtri_ref_nb};

use crate::scalar::Scalar;

/// Operation applied to a matrix operand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    NoTrans,
    Trans,
    /// Conjugate transpose; identical to `Trans` for real scalars.
    ConjTrans,
}

impl Op {
    #[inline]
    pub fn is_trans(self) -> bool {
        self != Op::NoTrans
    }

    /// `Trans` and `ConjTrans` toggle to `NoTrans`; `NoTrans` toggles to
    /// `ConjTrans`.
    pub fn toggle(self) -> Op {
        match self {
            Op::NoTrans => Op::ConjTrans,
            Op::Trans | Op::ConjTrans => Op::NoTrans,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Op::NoTrans => 'N',
            Op::Trans => 'T',
            Op::ConjTrans => 'C',
        }
    }

    #[inline(always)]
    pub(crate) fn apply<T: Scalar>(self, v: T) -> T {
        if self == Op::ConjTrans {
            v.conj()
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diag {
    Unit,
    NonUnit,
}

pub const DEFAULT_BLOCK_SIZE: usize = 64;

/// Block size used by the blocked factor/invert kernels.
///
/// Read once from `RFPK_NB`; falls back to 64 when unset or invalid.
pub fn block_size() -> usize {
    static NB: OnceLock<usize> = OnceLock::new();
    *NB.get_or_init(|| {
        std::env::var("RFPK_NB").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&nb| nb > 0).unwrap_or(DEFAULT_BLOCK_SIZE)
    })
}

/// `sum x(k) y(k)` over `k < len`, with four partial sums.
#[inline(always)]
pub(crate) fn dot<T: Scalar>(len: usize, x: impl Fn(usize) -> T, y: impl Fn(usize) -> T) -> T {
    let mut s = [T::zero(); 4];
    let mut k = 0;
    while k + 4 <= len {
        s[0] += x(k) * y(k);
        s[1] += x(k + 1) * y(k + 1);
        s[2] += x(k + 2) * y(k + 2);
        s[3] += x(k + 3) * y(k + 3);
        k += 4;
    }
    while k < len {
        s[0] += x(k) * y(k);
        k += 1;
    }
    (s[0] + s[1]) + (s[2] + s[3])
}

/// Scales every element of `b` by `alpha`; `alpha == 0` stores exact zeros.
pub(crate) fn scale<T: Scalar>(alpha: T, b: &mut crate::matrix::MatMut<'_, T>) {
    if alpha == T::one() {
        return;
    }
    let zero = alpha == T::zero();
    for j in 0..b.cols() {
        for i in 0..b.rows() {
            unsafe {
                let p = b.slot(i, j);
                *p = if zero { T::zero() } else { alpha * *p };
            }
        }
    }
}

/// First exactly-zero diagonal entry of a square view, 1-based.
pub(crate) fn zero_diagonal<T: Scalar>(a: &crate::matrix::MatRef<'_, T>) -> Option<usize> {
    (0..a.rows()).find(|&i| unsafe { a.at(i, i) } == T::zero()).map(|i| i + 1)
}
