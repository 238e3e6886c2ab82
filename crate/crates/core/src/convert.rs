//! Storage containers and conversions between full, packed and RFP formats.
//!
//! Every conversion moves scalars without arithmetic. Cells of the RFP
//! rectangle that hold a transposed copy of a logical block store the
//! conjugate of the logical value, so complex Hermitian data keeps the
//! orientation the RFP routines expect; for real data this is a plain copy.

use crate::error::{Error, Result};
use crate::layout::{packed_index, LayoutDescriptor, Transr, Uplo};
use crate::matrix::{DenseMatrix, MatRef};
use crate::rfp::FactorState;
use crate::scalar::Scalar;

/// One triangle in LAPACK column-packed storage.
#[derive(Debug, Clone, PartialEq)]
pub struct PackedTriangle<T> {
    buffer: Vec<T>,
    n: usize,
    uplo: Uplo,
}

impl<T: Scalar> PackedTriangle<T> {
    pub fn zeros(n: usize, uplo: Uplo) -> Self {
        PackedTriangle { buffer: vec![T::zero(); n * (n + 1) / 2], n, uplo }
    }

    pub fn from_buffer(buffer: Vec<T>, n: usize, uplo: Uplo) -> Result<Self> {
        if buffer.len() != n * (n + 1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "packed buffer of order {n} needs {} elements, got {}",
                n * (n + 1) / 2,
                buffer.len()
            )));
        }
        Ok(PackedTriangle { buffer, n, uplo })
    }

    /// Packs the `uplo` triangle of a square matrix (TRTTP).
    pub fn from_dense(a: MatRef<'_, T>, uplo: Uplo) -> Result<Self> {
        let n = square_order(&a)?;
        let mut p = Self::zeros(n, uplo);
        for j in 0..n {
            for i in triangle_rows(uplo, n, j) {
                p.buffer[packed_index(n, uplo, i, j)] = a.get(i, j);
            }
        }
        Ok(p)
    }

    /// Unpacks into an `n x n` matrix with leading dimension `ld` (TPTTR).
    /// The other triangle is zero.
    pub fn to_dense(&self, ld: usize) -> Result<DenseMatrix<T>> {
        let n = self.n;
        let mut a = DenseMatrix::zeros_with_ld(n, n, ld)?;
        for j in 0..n {
            for i in triangle_rows(self.uplo, n, j) {
                a[(i, j)] = self.buffer[packed_index(n, self.uplo, i, j)];
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn uplo(&self) -> Uplo {
        self.uplo
    }

    pub fn as_slice(&self) -> &[T] {
        &self.buffer
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.buffer
    }

    pub fn into_vec(self) -> Vec<T> {
        self.buffer
    }

    /// Element `(i, j)` (0-based) of the stored triangle.
    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.n && j < self.n && self.uplo.contains(i, j), "({i}, {j}) not in triangle");
        self.buffer[packed_index(self.n, self.uplo, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.n && j < self.n && self.uplo.contains(i, j), "({i}, {j}) not in triangle");
        self.buffer[packed_index(self.n, self.uplo, i, j)] = v;
    }
}

/// A triangle of order `n` in rectangular full packed format.
#[derive(Debug, Clone, PartialEq)]
pub struct RfpTriangle<T> {
    buffer: Vec<T>,
    desc: LayoutDescriptor,
    state: FactorState,
}

impl<T: Scalar> RfpTriangle<T> {
    pub fn zeros(n: usize, uplo: Uplo, transr: Transr) -> Self {
        let desc = LayoutDescriptor::new(n, uplo, transr);
        RfpTriangle { buffer: vec![T::zero(); desc.nt], desc, state: FactorState::Unfactored }
    }

    /// Wraps an existing RFP buffer. Its length must be exactly `n(n+1)/2`.
    pub fn from_buffer(buffer: Vec<T>, desc: LayoutDescriptor) -> Result<Self> {
        if buffer.len() != desc.nt {
            return Err(Error::InvalidArgument(format!("RFP buffer of order {} needs {} elements, got {}", desc.n, desc.nt, buffer.len())));
        }
        Ok(RfpTriangle { buffer, desc, state: FactorState::Unfactored })
    }

    pub fn desc(&self) -> &LayoutDescriptor {
        &self.desc
    }

    pub fn n(&self) -> usize {
        self.desc.n
    }

    pub fn uplo(&self) -> Uplo {
        self.desc.uplo
    }

    pub fn transr(&self) -> Transr {
        self.desc.transr
    }

    pub fn state(&self) -> FactorState {
        self.state
    }

    /// Declares what the buffer currently holds, e.g. after filling it
    /// with a factor computed elsewhere.
    pub fn set_state(&mut self, state: FactorState) {
        self.state = state;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.buffer
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.buffer
    }

    pub fn into_vec(self) -> Vec<T> {
        self.buffer
    }

    /// Logical element `(i, j)` (0-based) of the stored triangle.
    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.n() && j < self.n() && self.uplo().contains(i, j), "({i}, {j}) not in triangle");
        let (off, conj) = self.desc.locate(i, j);
        let v = self.buffer[off];
        if conj {
            v.conj()
        } else {
            v
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.n() && j < self.n() && self.uplo().contains(i, j), "({i}, {j}) not in triangle");
        let (off, conj) = self.desc.locate(i, j);
        self.buffer[off] = if conj { v.conj() } else { v };
    }

    /// The full Hermitian (or symmetric) matrix implied by the triangle.
    pub fn to_full_hermitian(&self) -> DenseMatrix<T> {
        let n = self.n();
        let mut a = DenseMatrix::zeros(n, n);
        for j in 0..n {
            for i in triangle_rows(self.uplo(), n, j) {
                let v = self.get(i, j);
                a[(i, j)] = v;
                a[(j, i)] = v.conj();
            }
        }
        a
    }

    /// The triangle as a full `n x n` triangular matrix, zero elsewhere.
    pub fn to_full_triangular(&self) -> DenseMatrix<T> {
        tfttr(self, self.n().max(1)).expect("ld >= n")
    }
}

fn square_order<T: Scalar>(a: &MatRef<'_, T>) -> Result<usize> {
    if a.rows() != a.cols() {
        return Err(Error::Shape(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    Ok(a.rows())
}

#[inline]
fn triangle_rows(uplo: Uplo, n: usize, j: usize) -> std::ops::Range<usize> {
    match uplo {
        Uplo::Lower => j..n,
        Uplo::Upper => 0..j + 1,
    }
}

/// Full triangle to RFP (TRTTF). The other triangle of `a` is never read.
pub fn trttf<T: Scalar>(a: MatRef<'_, T>, uplo: Uplo, transr: Transr) -> Result<RfpTriangle<T>> {
    let n = square_order(&a)?;
    let mut r = RfpTriangle::zeros(n, uplo, transr);
    for j in 0..n {
        for i in triangle_rows(uplo, n, j) {
            r.set(i, j, a.get(i, j));
        }
    }
    Ok(r)
}

/// RFP to a full `n x n` matrix with leading dimension `ld` (TFTTR).
/// Elements outside the triangle are zero.
pub fn tfttr<T: Scalar>(r: &RfpTriangle<T>, ld: usize) -> Result<DenseMatrix<T>> {
    let n = r.n();
    let mut a = DenseMatrix::zeros_with_ld(n, n, ld)?;
    for j in 0..n {
        for i in triangle_rows(r.uplo(), n, j) {
            a[(i, j)] = r.get(i, j);
        }
    }
    Ok(a)
}

/// Packed to RFP (TPTTF), keeping `uplo`.
pub fn tpttf<T: Scalar>(p: &PackedTriangle<T>, transr: Transr) -> RfpTriangle<T> {
    let (n, uplo) = (p.n(), p.uplo());
    let mut r = RfpTriangle::zeros(n, uplo, transr);
    for j in 0..n {
        for i in triangle_rows(uplo, n, j) {
            r.set(i, j, p.buffer[packed_index(n, uplo, i, j)]);
        }
    }
    r
}

/// RFP to packed (TFTTP), keeping `uplo`.
pub fn tfttp<T: Scalar>(r: &RfpTriangle<T>) -> PackedTriangle<T> {
    let (n, uplo) = (r.n(), r.uplo());
    let mut p = PackedTriangle::zeros(n, uplo);
    for j in 0..n {
        for i in triangle_rows(uplo, n, j) {
            p.buffer[packed_index(n, uplo, i, j)] = r.get(i, j);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::ALL_CASES;
    use crate::scalar::c64;

    fn numbered(n: usize) -> DenseMatrix<f64> {
        DenseMatrix::from_fn(n, n, |i, j| (1 + i + j * n) as f64)
    }

    #[test]
    fn element_lands_at_figure_position() {
        let a = numbered(7);
        let r = trttf(a.as_ref(), Uplo::Lower, Transr::Normal).unwrap();
        assert_eq!(r.as_slice()[8 - 1], a[(4, 4)]);

        let r = RfpTriangle::from_buffer((1..=21).map(f64::from).collect(), LayoutDescriptor::new(6, Uplo::Upper, Transr::Normal)).unwrap();
        let full = tfttr(&r, 6).unwrap();
        assert_eq!(full[(3, 4)], 11.0);
    }

    #[test]
    fn single_element_and_empty() {
        let a = DenseMatrix::from_rows(&[[3.5]]);
        assert_eq!(trttf(a.as_ref(), Uplo::Upper, Transr::Transposed).unwrap().as_slice(), &[3.5]);
        let r = RfpTriangle::<f64>::zeros(0, Uplo::Lower, Transr::Normal);
        assert_eq!(tfttr(&r, 1).unwrap().rows(), 0);
    }

    #[test]
    fn packed_first_element() {
        let p = PackedTriangle::from_buffer((1..=28).map(f64::from).collect(), 7, Uplo::Lower).unwrap();
        assert_eq!(tpttf(&p, Transr::Normal).as_slice()[0], 1.0);
    }

    #[test]
    fn unread_triangle_may_hold_nan() {
        for (uplo, transr) in ALL_CASES {
            let a = DenseMatrix::from_fn(5, 5, |i, j| if uplo.contains(i, j) { (i * 5 + j) as f64 } else { f64::NAN });
            let r = trttf(a.as_ref(), uplo, transr).unwrap();
            assert!(r.as_slice().iter().all(|v| !v.is_nan()));
        }
    }

    #[test]
    fn complex_transposed_cells_hold_conjugates() {
        let a = DenseMatrix::from_fn(4, 4, |i, j| c64::new(i as f64, j as f64 + 1.0));
        let r = trttf(a.as_ref(), Uplo::Lower, Transr::Normal).unwrap();
        let (off, conj) = r.desc().locate(3, 3);
        assert!(conj);
        assert_eq!(r.as_slice()[off], a[(3, 3)].conj());
        assert_eq!(tfttr(&r, 4).unwrap()[(3, 3)], a[(3, 3)]);
    }

    #[test]
    fn wrong_buffer_length_is_rejected() {
        let desc = LayoutDescriptor::new(3, Uplo::Lower, Transr::Normal);
        assert!(RfpTriangle::<f64>::from_buffer(vec![0.0; 5], desc).is_err());
        assert!(PackedTriangle::<f64>::from_buffer(vec![0.0; 7], 3, Uplo::Upper).is_err());
        assert!(tfttr(&RfpTriangle::<f64>::zeros(3, Uplo::Upper, Transr::Normal), 2).is_err());
    }
}
