//! Geometry of the rectangular full packed format.
//!
//! A triangle of order `n` is split as `n1 = ceil(n/2)`, `n2 = n - n1` and
//! stored in an `ldar x n1` rectangle `A_R` (`ldar = n` for odd `n`,
//! `n + 1` for even `n`), or in its `n1 x ldar` (conjugate) transpose. The
//! rectangle is made of two triangles `T1`, `T2` glued along their
//! diagonals plus the off-diagonal block `S1`:
//!
//! ```text
//!   lower, n = 7            upper, n = 6
//!   T1 \ T2 T2 T2           S1 S1 S1
//!   T1 T1 \ T2 T2           S1 S1 S1
//!   T1 T1 T1 \ T2           S1 S1 S1
//!   T1 T1 T1 T1             T2 T2 T2
//!   S1 S1 S1 S1             T1 T2 T2
//!   S1 S1 S1 S1             T1 T1 T2
//!   S1 S1 S1 S1             T1 T1 T1
//! ```
//!
//! `T1` always holds the leading diagonal block `A11` and `T2` the trailing
//! block `A22`; one of them is kept as a (conjugate) transpose so that the
//! two fit together.

use crate::error::{Error, Result};

/// Which triangle of a symmetric, Hermitian or triangular matrix is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Uplo {
    Lower,
    Upper,
}

impl Uplo {
    pub fn flip(self) -> Uplo {
        match self {
            Uplo::Lower => Uplo::Upper,
            Uplo::Upper => Uplo::Lower,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Uplo::Lower => 'L',
            Uplo::Upper => 'U',
        }
    }

    /// Whether 0-based `(i, j)` lies in this triangle (diagonal included).
    #[inline]
    pub fn contains(self, i: usize, j: usize) -> bool {
        match self {
            Uplo::Lower => i >= j,
            Uplo::Upper => i <= j,
        }
    }
}

/// Whether the RFP buffer stores `A_R` or its (conjugate) transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transr {
    Normal,
    /// `A_R^T` for real data, `A_R^H` for complex data.
    Transposed,
}

impl Transr {
    pub fn as_char(self) -> char {
        match self {
            Transr::Normal => 'N',
            Transr::Transposed => 'T',
        }
    }
}

/// The four storage cases, in a fixed order.
pub const ALL_CASES: [(Uplo, Transr); 4] =
    [(Uplo::Lower, Transr::Normal), (Uplo::Lower, Transr::Transposed), (Uplo::Upper, Transr::Normal), (Uplo::Upper, Transr::Transposed)];

/// Derived geometry of one RFP instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LayoutDescriptor {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub nt: usize,
    pub ldar: usize,
    pub uplo: Uplo,
    pub transr: Transr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    T1,
    T2,
    S1,
}

/// Which part of a block view is referenced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StoredTriangle {
    LowerStored,
    UpperStored,
    FullRect,
}

impl StoredTriangle {
    pub fn uplo(self) -> Option<Uplo> {
        match self {
            StoredTriangle::LowerStored => Some(Uplo::Lower),
            StoredTriangle::UpperStored => Some(Uplo::Upper),
            StoredTriangle::FullRect => None,
        }
    }
}

/// A block of the RFP rectangle, as a column-major sub-matrix of the buffer.
///
/// Offsets are 0-based and refer to the physical rectangle (`ldar x n1`, or
/// `n1 x ldar` when transposed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockView {
    pub kind: BlockKind,
    pub row_offset: usize,
    pub col_offset: usize,
    pub rows: usize,
    pub cols: usize,
    pub triangle: StoredTriangle,
    /// The block holds the (conjugate) transpose of the logical block
    /// `A11`, `A22`, `A21` (lower) or `A12` (upper).
    pub conjugated: bool,
}

impl BlockView {
    /// 0-based buffer offset of the block's `(0, 0)` element.
    #[inline]
    pub fn origin(&self, ld: usize) -> usize {
        self.row_offset + self.col_offset * ld
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }
}

impl LayoutDescriptor {
    pub fn new(n: usize, uplo: Uplo, transr: Transr) -> Self {
        let n1 = n.div_ceil(2);
        let ldar = if n % 2 == 1 { n } else { n + 1 };
        LayoutDescriptor { n, n1, n2: n - n1, nt: n * (n + 1) / 2, ldar, uplo, transr }
    }

    #[inline]
    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// Rows of the physical rectangle.
    #[inline]
    pub fn rect_rows(&self) -> usize {
        match self.transr {
            Transr::Normal => self.ldar,
            Transr::Transposed => self.n1,
        }
    }

    /// Columns of the physical rectangle.
    #[inline]
    pub fn rect_cols(&self) -> usize {
        match self.transr {
            Transr::Normal => self.n1,
            Transr::Transposed => self.ldar,
        }
    }

    /// Leading dimension of the physical buffer.
    #[inline]
    pub fn ld(&self) -> usize {
        self.rect_rows().max(1)
    }

    /// Order of the leading diagonal block `A11` (`n1` lower, `n2` upper).
    #[inline]
    pub fn lead_order(&self) -> usize {
        match self.uplo {
            Uplo::Lower => self.n1,
            Uplo::Upper => self.n2,
        }
    }

    /// Locates 0-based `(i, j)` of the stored triangle in `A_R` (0-based row
    /// and column), and whether the cell holds the conjugate of `a(i, j)`.
    #[inline]
    fn locate_normal(&self, i: usize, j: usize) -> (usize, usize, bool) {
        let delta = usize::from(self.is_even());
        match self.uplo {
            Uplo::Lower => {
                if j < self.n1 {
                    (i + delta, j, false)
                } else {
                    (j - self.n1, i + 1 - self.n1 - delta, true)
                }
            }
            Uplo::Upper => {
                if j >= self.n2 {
                    (i, j - self.n2, false)
                } else {
                    (j + self.n2 + 1, i, true)
                }
            }
        }
    }

    /// 0-based buffer offset of 0-based `(i, j)` in the stored triangle and
    /// whether the stored value is the conjugate of the logical one.
    ///
    /// The caller must ensure `(i, j)` is in the triangle.
    #[inline]
    pub fn locate(&self, i: usize, j: usize) -> (usize, bool) {
        debug_assert!(i < self.n && j < self.n && self.uplo.contains(i, j));
        let (r, c, conj) = self.locate_normal(i, j);
        match self.transr {
            Transr::Normal => (r + c * self.ldar, conj),
            Transr::Transposed => (c + r * self.n1, !conj),
        }
    }

    /// 1-based position of `a(i, j)` (1-based) in the length-`nt` buffer.
    pub fn map_index(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || j == 0 || i > self.n || j > self.n || !self.uplo.contains(i - 1, j - 1) {
            return Err(Error::OutOfTriangle { i, j, n: self.n });
        }
        Ok(self.locate(i - 1, j - 1).0 + 1)
    }

    /// The three blocks `T1`, `T2` and `S1` of the rectangle.
    pub fn block_views(&self) -> (BlockView, BlockView, BlockView) {
        let (n1, n2) = (self.n1, self.n2);
        let delta = usize::from(self.is_even());
        let view = |kind, r, c, rows, cols, triangle, conjugated| BlockView {
            kind,
            row_offset: r,
            col_offset: c,
            rows,
            cols,
            triangle,
            conjugated,
        };
        use BlockKind::*;
        use StoredTriangle::*;
        let (t1, t2, s1) = match self.uplo {
            Uplo::Lower => (
                view(T1, delta, 0, n1, n1, LowerStored, false),
                view(T2, 0, 1 - delta, n2, n2, UpperStored, true),
                view(S1, n1 + delta, 0, n2, n1, FullRect, false),
            ),
            Uplo::Upper => (
                view(T1, n2 + 1, 0, n2, n2, LowerStored, true),
                view(T2, n2, 0, n1, n1, UpperStored, false),
                view(S1, 0, 0, n2, n1, FullRect, false),
            ),
        };
        match self.transr {
            Transr::Normal => (t1, t2, s1),
            Transr::Transposed => (t1.transposed(), t2.transposed(), s1.transposed()),
        }
    }
}

impl BlockView {
    fn transposed(self) -> BlockView {
        BlockView {
            kind: self.kind,
            row_offset: self.col_offset,
            col_offset: self.row_offset,
            rows: self.cols,
            cols: self.rows,
            triangle: match self.triangle {
                StoredTriangle::LowerStored => StoredTriangle::UpperStored,
                StoredTriangle::UpperStored => StoredTriangle::LowerStored,
                StoredTriangle::FullRect => StoredTriangle::FullRect,
            },
            conjugated: !self.conjugated,
        }
    }
}

/// Shorthand for [`LayoutDescriptor::new`].
pub fn make_descriptor(n: usize, uplo: Uplo, transr: Transr) -> LayoutDescriptor {
    LayoutDescriptor::new(n, uplo, transr)
}

/// 0-based offset of 0-based `(i, j)` in LAPACK column-packed storage.
#[inline]
pub fn packed_index(n: usize, uplo: Uplo, i: usize, j: usize) -> usize {
    match uplo {
        Uplo::Upper => i + j * (j + 1) / 2,
        Uplo::Lower => i + j * (2 * n - j - 1) / 2,
    }
}
