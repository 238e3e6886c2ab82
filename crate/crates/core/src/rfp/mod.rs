//! RFP algorithms built from full-format kernels on the `T1`, `T2`, `S1`
//! blocks.
//!
//! Every routine is phrased in terms of a lower triangular matrix `M` split
//! as `[M11 0; M21 M22]` with `M11` of order `p` (the leading block) and
//! `M22` of order `q = n - p`. For `uplo = Lower` the stored triangle is `M`
//! itself; for `uplo = Upper` it is `M^H`. Either way a block whose stored
//! triangle is physically lower holds `M11` or `M22` as is, a physically
//! upper one holds its conjugate transpose, and `S1` holds `M21` (`q x p`)
//! or `M21^H` (`p x q`).

mod factor;
mod invert;
mod norm;
mod trace;
mod update;

pub use factor::{pftrf, pftrs, tfsm};
pub use invert::{pftri, tftri};
pub use norm::{lansf, Norm};
pub use trace::{trace_kernel_calls, KernelCall};
pub use update::{hfrk, sfrk};

use crate::convert::RfpTriangle;
use crate::error::{Error, Result};
use crate::kernels::Op;
use crate::layout::{BlockView, LayoutDescriptor, Transr, Uplo};
use crate::matrix::{MatMut, MatRef};
use crate::scalar::Scalar;

/// What an [`RfpTriangle`] currently holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FactorState {
    /// Matrix data as supplied.
    #[default]
    Unfactored,
    /// Cholesky factor `L` or `U`.
    CholeskyFactor,
    /// Inverse of the Cholesky factor.
    TriangularInverse,
    /// The stored triangle of `A^{-1}`.
    FullInverse,
}

impl FactorState {
    pub fn name(self) -> &'static str {
        match self {
            FactorState::Unfactored => "unfactored",
            FactorState::CholeskyFactor => "Cholesky factor",
            FactorState::TriangularInverse => "triangular inverse",
            FactorState::FullInverse => "full inverse",
        }
    }
}

pub(crate) fn require_state<T>(r: &RfpTriangle<T>, expected: FactorState) -> Result<()>
where
    T: Scalar,
{
    if r.state() != expected {
        return Err(Error::State { expected: expected.name(), found: r.state().name() });
    }
    Ok(())
}

/// Op to pass for a stored block when the logical operation on the
/// corresponding block of `M` is `op` (`NoTrans` or `ConjTrans`).
#[inline]
pub(crate) fn eff(op: Op, stored_adjoint: bool) -> Op {
    if stored_adjoint {
        op.toggle()
    } else {
        op
    }
}

/// Raw views of the three blocks of one RFP buffer.
pub(crate) struct Blocks<'a, T> {
    base: MatMut<'a, T>,
    t1: BlockView,
    t2: BlockView,
    s1: BlockView,
    /// Order of `M11`.
    pub p: usize,
    /// Order of `M22`.
    pub q: usize,
    /// Physical triangle of the `M11` block.
    pub tri1: Uplo,
    /// Physical triangle of the `M22` block.
    pub tri2: Uplo,
    /// `S1` holds `M21` (`q x p`) rather than `M21^H`.
    pub s1_direct: bool,
}

impl<'a, T: Scalar> Blocks<'a, T> {
    /// `n` must be at least 1.
    pub fn new(buffer: &'a mut [T], desc: &LayoutDescriptor) -> Self {
        assert_eq!(buffer.len(), desc.nt);
        unsafe { Self::from_raw(buffer.as_mut_ptr(), desc) }
    }

    /// Read-only blocks of a shared buffer. Only the `*_ref` accessors may
    /// be used on the result.
    pub fn shared(buffer: &'a [T], desc: &LayoutDescriptor) -> Self {
        assert_eq!(buffer.len(), desc.nt);
        unsafe { Self::from_raw(buffer.as_ptr() as *mut T, desc) }
    }

    unsafe fn from_raw(ptr: *mut T, desc: &LayoutDescriptor) -> Self {
        debug_assert!(desc.n >= 1);
        let base = MatMut::from_raw_parts(ptr, desc.rect_rows(), desc.rect_cols(), desc.ld());
        let (t1, t2, s1) = desc.block_views();
        let p = desc.lead_order();
        Blocks {
            base,
            t1,
            t2,
            s1,
            p,
            q: desc.n - p,
            tri1: t1.triangle.uplo().expect("T1 is triangular"),
            tri2: t2.triangle.uplo().expect("T2 is triangular"),
            s1_direct: (desc.uplo == Uplo::Lower) == (desc.transr == Transr::Normal),
        }
    }

    fn view_mut(&self, v: &BlockView) -> MatMut<'a, T> {
        unsafe { self.base.alias_mut(v.row_offset, v.col_offset, v.rows, v.cols) }
    }

    fn view_ref(&self, v: &BlockView) -> MatRef<'a, T> {
        unsafe { self.base.alias_ref(v.row_offset, v.col_offset, v.rows, v.cols) }
    }

    pub fn d1(&self) -> MatMut<'a, T> {
        self.view_mut(&self.t1)
    }

    pub fn d2(&self) -> MatMut<'a, T> {
        self.view_mut(&self.t2)
    }

    pub fn s1(&self) -> MatMut<'a, T> {
        self.view_mut(&self.s1)
    }

    pub fn d1_ref(&self) -> MatRef<'a, T> {
        self.view_ref(&self.t1)
    }

    pub fn d2_ref(&self) -> MatRef<'a, T> {
        self.view_ref(&self.t2)
    }

    pub fn s1_ref(&self) -> MatRef<'a, T> {
        self.view_ref(&self.s1)
    }

    /// Whether the diagonal blocks hold conjugate transposes.
    pub fn adj1(&self) -> bool {
        self.tri1 == Uplo::Upper
    }

    pub fn adj2(&self) -> bool {
        self.tri2 == Uplo::Upper
    }

    /// 1-based global index of the first exactly zero diagonal entry.
    pub fn zero_diagonal(&self) -> Option<usize> {
        let d1 = self.d1_ref();
        let d2 = self.d2_ref();
        (0..self.p)
            .find(|&k| d1.get(k, k) == T::zero())
            .map(|k| k + 1)
            .or_else(|| (0..self.q).find(|&k| d2.get(k, k) == T::zero()).map(|k| self.p + k + 1))
    }
}
