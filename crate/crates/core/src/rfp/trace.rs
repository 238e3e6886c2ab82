use std::cell::RefCell;

/// A full-format kernel invoked directly by an RFP routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelCall {
    Potrf,
    Trtri,
    Lauum,
    Trsm,
    Trmm,
    Gemm,
    Herk,
}

impl KernelCall {
    /// Factor/invert kernels as opposed to Level-3 BLAS kernels.
    pub fn is_lapack(self) -> bool {
        matches!(self, KernelCall::Potrf | KernelCall::Trtri | KernelCall::Lauum)
    }
}

thread_local! {
    static CALLS: RefCell<Option<Vec<KernelCall>>> = const { RefCell::new(None) };
}

/// Runs `f` and returns the kernels the RFP routines called on this thread,
/// in order. Kernels called from inside other kernels are not listed.
pub fn trace_kernel_calls<R>(f: impl FnOnce() -> R) -> (R, Vec<KernelCall>) {
    let previous = CALLS.with(|c| c.borrow_mut().replace(Vec::new()));
    let out = f();
    let calls = CALLS.with(|c| std::mem::replace(&mut *c.borrow_mut(), previous)).unwrap_or_default();
    (out, calls)
}

#[inline]
pub(crate) fn record(call: KernelCall) {
    CALLS.with(|c| {
        if let Some(v) = c.borrow_mut().as_mut() {
            v.push(call);
        }
    });
}

/// Recording wrappers around the kernels.
pub(crate) mod call {
    use super::{record, KernelCall};
    use crate::error::Result;
    use crate::kernels::{self, Diag, Op, Side};
    use crate::layout::Uplo;
    use crate::matrix::{MatMut, MatRef};
    use crate::scalar::Scalar;

    pub fn potrf<T: Scalar>(uplo: Uplo, a: MatMut<'_, T>) -> Result<()> {
        record(KernelCall::Potrf);
        kernels::potrf_ref(uplo, a)
    }

    pub fn trtri<T: Scalar>(uplo: Uplo, diag: Diag, a: MatMut<'_, T>) -> Result<()> {
        record(KernelCall::Trtri);
        kernels::trtri_ref(uplo, diag, a)
    }

    pub fn lauum<T: Scalar>(uplo: Uplo, a: MatMut<'_, T>) -> Result<()> {
        record(KernelCall::Lauum);
        kernels::lauum_ref(uplo, a)
    }

    pub fn trsm<T: Scalar>(side: Side, uplo: Uplo, trans: Op, diag: Diag, alpha: T, a: MatRef<'_, T>, b: MatMut<'_, T>) -> Result<()> {
        record(KernelCall::Trsm);
        kernels::trsm(side, uplo, trans, diag, alpha, a, b)
    }

    pub fn trmm<T: Scalar>(side: Side, uplo: Uplo, trans: Op, diag: Diag, alpha: T, a: MatRef<'_, T>, b: MatMut<'_, T>) -> Result<()> {
        record(KernelCall::Trmm);
        kernels::trmm(side, uplo, trans, diag, alpha, a, b)
    }

    pub fn gemm<T: Scalar>(ta: Op, tb: Op, alpha: T, a: MatRef<'_, T>, b: MatRef<'_, T>, beta: T, c: MatMut<'_, T>) -> Result<()> {
        record(KernelCall::Gemm);
        kernels::gemm(ta, tb, alpha, a, b, beta, c)
    }

    pub fn herk<T: Scalar>(uplo: Uplo, trans: Op, alpha: f64, a: MatRef<'_, T>, beta: f64, c: MatMut<'_, T>) -> Result<()> {
        record(KernelCall::Herk);
        kernels::syrk_herk(uplo, trans, alpha, a, beta, c)
    }
}
