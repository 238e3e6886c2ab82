//! Column-major dense matrices and strided sub-views.
//!
//! `MatRef` and `MatMut` are thin `(ptr, rows, cols, ld)` views. Element
//! `(i, j)` of a view lives at `ptr + i + j * ld`. Views are built either
//! from slices (checked) or, inside the crate, from raw parts so that the
//! two triangles and the rectangle of an RFP buffer can be handed to
//! kernels at the same time. Kernels only ever touch the triangle they are
//! told to use, which keeps those raw views disjoint at the element level.

use std::fmt;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest buffer length that holds a `rows x cols` view with stride `ld`.
#[inline]
pub fn required_len(rows: usize, cols: usize, ld: usize) -> usize {
    if rows == 0 || cols == 0 {
        0
    } else {
        (cols - 1) * ld + rows
    }
}

fn check_view(len: usize, rows: usize, cols: usize, ld: usize) -> Result<()> {
    if ld < rows.max(1) {
        return Err(Error::LeadingDimension { ld, rows });
    }
    if required_len(rows, cols, ld) > len {
        return Err(Error::BufferTooSmall { len, rows, cols, ld });
    }
    Ok(())
}

/// Read-only column-major view.
#[derive(Clone, Copy)]
pub struct MatRef<'a, T> {
    ptr: *const T,
    rows: usize,
    cols: usize,
    ld: usize,
    _marker: PhantomData<&'a T>,
}

/// Mutable column-major view.
pub struct MatMut<'a, T> {
    ptr: *mut T,
    rows: usize,
    cols: usize,
    ld: usize,
    _marker: PhantomData<&'a mut T>,
}

unsafe impl<T: Sync> Send for MatRef<'_, T> {}
unsafe impl<T: Sync> Sync for MatRef<'_, T> {}
unsafe impl<T: Send> Send for MatMut<'_, T> {}

impl<'a, T: Scalar> MatRef<'a, T> {
    pub fn from_slice(data: &'a [T], rows: usize, cols: usize, ld: usize) -> Result<Self> {
        check_view(data.len(), rows, cols, ld)?;
        Ok(MatRef { ptr: data.as_ptr(), rows, cols, ld: ld.max(1), _marker: PhantomData })
    }

    /// # Safety
    /// `ptr` must be valid for reads of every element of the view for `'a`,
    /// and no element read through the view may be written concurrently.
    pub(crate) unsafe fn from_raw_parts(ptr: *const T, rows: usize, cols: usize, ld: usize) -> Self {
        MatRef { ptr, rows, cols, ld: ld.max(1), _marker: PhantomData }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn ld(&self) -> usize {
        self.ld
    }
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        unsafe { self.at(i, j) }
    }

    /// # Safety
    /// `i < rows` and `j < cols`.
    #[inline(always)]
    pub(crate) unsafe fn at(&self, i: usize, j: usize) -> T {
        *self.ptr.add(i + j * self.ld)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatRef<'a, T> {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of bounds");
        let ptr = if rows == 0 || cols == 0 { self.ptr } else { unsafe { self.ptr.add(r0 + c0 * self.ld) } };
        MatRef { ptr, rows, cols, ld: self.ld, _marker: PhantomData }
    }

    pub fn to_owned(&self) -> DenseMatrix<T> {
        DenseMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }
}

impl<'a, T: Scalar> MatMut<'a, T> {
    pub fn from_slice(data: &'a mut [T], rows: usize, cols: usize, ld: usize) -> Result<Self> {
        check_view(data.len(), rows, cols, ld)?;
        Ok(MatMut { ptr: data.as_mut_ptr(), rows, cols, ld: ld.max(1), _marker: PhantomData })
    }

    /// # Safety
    /// `ptr` must be valid for reads and writes of every element of the view
    /// for `'a`, and no other live view may access the elements this view
    /// touches.
    pub(crate) unsafe fn from_raw_parts(ptr: *mut T, rows: usize, cols: usize, ld: usize) -> Self {
        MatMut { ptr, rows, cols, ld: ld.max(1), _marker: PhantomData }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn ld(&self) -> usize {
        self.ld
    }
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        unsafe { self.at(i, j) }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        unsafe { self.put(i, j, v) }
    }

    /// # Safety
    /// `i < rows` and `j < cols`.
    #[inline(always)]
    pub(crate) unsafe fn at(&self, i: usize, j: usize) -> T {
        *self.ptr.add(i + j * self.ld)
    }

    /// # Safety
    /// `i < rows` and `j < cols`.
    #[inline(always)]
    pub(crate) unsafe fn put(&mut self, i: usize, j: usize, v: T) {
        *self.ptr.add(i + j * self.ld) = v;
    }

    /// # Safety
    /// `i < rows` and `j < cols`.
    #[inline(always)]
    pub(crate) unsafe fn slot(&mut self, i: usize, j: usize) -> *mut T {
        self.ptr.add(i + j * self.ld)
    }

    /// Read-only alias of a sub-block.
    ///
    /// # Safety
    /// No element read through the returned view may be written through
    /// any other view while it is alive.
    pub(crate) unsafe fn alias_ref(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatRef<'a, T> {
        debug_assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let ptr = if rows == 0 || cols == 0 { self.ptr } else { self.ptr.add(r0 + c0 * self.ld) };
        MatRef::from_raw_parts(ptr, rows, cols, self.ld)
    }

    /// Mutable alias of a sub-block.
    ///
    /// # Safety
    /// The elements touched through the returned view must not be accessed
    /// through any other view while it is alive.
    pub(crate) unsafe fn alias_mut(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatMut<'a, T> {
        debug_assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let ptr = if rows == 0 || cols == 0 { self.ptr } else { self.ptr.add(r0 + c0 * self.ld) };
        MatMut::from_raw_parts(ptr, rows, cols, self.ld)
    }

    pub fn rb(&self) -> MatRef<'_, T> {
        MatRef { ptr: self.ptr, rows: self.rows, cols: self.cols, ld: self.ld, _marker: PhantomData }
    }

    pub fn rb_mut(&mut self) -> MatMut<'_, T> {
        MatMut { ptr: self.ptr, rows: self.rows, cols: self.cols, ld: self.ld, _marker: PhantomData }
    }

    pub fn submatrix_mut(self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatMut<'a, T> {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of bounds");
        let ptr = if rows == 0 || cols == 0 { self.ptr } else { unsafe { self.ptr.add(r0 + c0 * self.ld) } };
        MatMut { ptr, rows, cols, ld: self.ld, _marker: PhantomData }
    }

    /// Splits into rows `[0, r)` and `[r, rows)`.
    pub fn split_rows(self, r: usize) -> (MatMut<'a, T>, MatMut<'a, T>) {
        assert!(r <= self.rows);
        let top = MatMut { ptr: self.ptr, rows: r, cols: self.cols, ld: self.ld, _marker: PhantomData };
        let ptr = if r == self.rows || self.cols == 0 { self.ptr } else { unsafe { self.ptr.add(r) } };
        let bottom = MatMut { ptr, rows: self.rows - r, cols: self.cols, ld: self.ld, _marker: PhantomData };
        (top, bottom)
    }

    /// Splits into columns `[0, c)` and `[c, cols)`.
    pub fn split_cols(self, c: usize) -> (MatMut<'a, T>, MatMut<'a, T>) {
        assert!(c <= self.cols);
        let left = MatMut { ptr: self.ptr, rows: self.rows, cols: c, ld: self.ld, _marker: PhantomData };
        let ptr = if c == self.cols || self.rows == 0 { self.ptr } else { unsafe { self.ptr.add(c * self.ld) } };
        let right = MatMut { ptr, rows: self.rows, cols: self.cols - c, ld: self.ld, _marker: PhantomData };
        (left, right)
    }

    pub fn fill(&mut self, v: T) {
        for j in 0..self.cols {
            for i in 0..self.rows {
                unsafe { self.put(i, j, v) };
            }
        }
    }
}

/// Owned column-major matrix with an explicit leading dimension.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    data: Vec<T>,
    rows: usize,
    cols: usize,
    ld: usize,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::zeros_with_ld(rows, cols, rows.max(1)).expect("ld = rows is always valid")
    }

    pub fn zeros_with_ld(rows: usize, cols: usize, ld: usize) -> Result<Self> {
        if ld < rows.max(1) {
            return Err(Error::LeadingDimension { ld, rows });
        }
        Ok(DenseMatrix { data: vec![T::zero(); ld * cols], rows, cols, ld })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Wraps a column-major buffer.
    pub fn from_col_major(rows: usize, cols: usize, ld: usize, data: Vec<T>) -> Result<Self> {
        check_view(data.len(), rows, cols, ld)?;
        Ok(DenseMatrix { data, rows, cols, ld: ld.max(1) })
    }

    /// Builds from row-major nested arrays; convenient in tests.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_fn(m, n, |i, j| rows[i].as_ref()[j])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn ld(&self) -> usize {
        self.ld
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn as_ref(&self) -> MatRef<'_, T> {
        unsafe { MatRef::from_raw_parts(self.data.as_ptr(), self.rows, self.cols, self.ld) }
    }

    pub fn as_mut(&mut self) -> MatMut<'_, T> {
        unsafe { MatMut::from_raw_parts(self.data.as_mut_ptr(), self.rows, self.cols, self.ld) }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for j in 0..self.cols {
            for i in 0..self.rows {
                s += self[(i, j)].abs2();
            }
        }
        s.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 0..self.cols {
            for i in 0..self.rows {
                m = m.max(self[(i, j)].abs());
            }
        }
        m
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i + j * self.ld]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i + j * self.ld]
    }
}

impl<T: Scalar> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} (ld {})", self.rows, self.cols, self.ld)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn view_indexing_uses_leading_dimension() {
        let data: Vec<f64> = (0..12).map(f64::from).collect();
        let v = MatRef::from_slice(&data, 3, 3, 4).unwrap();
        assert_eq!(v.get(2, 1), 6.0);
        let s = v.submatrix(1, 1, 2, 2);
        assert_eq!(s.get(0, 0), 5.0);
        assert_eq!(s.get(1, 1), 10.0);
    }

    #[test]
    fn rejects_short_buffers_and_small_ld() {
        let data = [0.0f64; 5];
        assert!(matches!(MatRef::from_slice(&data, 3, 2, 3), Err(Error::BufferTooSmall { .. })));
        assert!(matches!(MatRef::from_slice(&data, 3, 1, 2), Err(Error::LeadingDimension { .. })));
        assert!(MatRef::from_slice(&data, 2, 2, 3).is_ok());
    }

    #[test]
    fn splits_are_disjoint() {
        let mut m = DenseMatrix::<f64>::zeros(4, 3);
        let (mut top, mut bottom) = m.as_mut().split_rows(1);
        top.fill(1.0);
        bottom.fill(2.0);
        assert_eq!(m[(0, 2)], 1.0);
        assert_eq!(m[(1, 0)], 2.0);
        let (_, mut right) = m.as_mut().split_cols(2);
        right.fill(3.0);
        assert_eq!(m[(3, 2)], 3.0);
        assert_eq!(m[(3, 1)], 2.0);
    }
}
