//! Rectangular full packed (RFP) storage for triangular and symmetric or
//! Hermitian positive definite matrices.
//!
//! A triangle of order `n` is rearranged into a dense `ldar x n1` rectangle
//! holding exactly `n(n+1)/2` scalars. Because the three pieces of that
//! rectangle (two triangles and one near-square block) are ordinary
//! column-major matrices, Cholesky factorization, solution and inversion
//! reduce to a handful of full-format Level-3 kernel calls.
//!
//! - [`layout`]: geometry of the eight RFP cases and the element map.
//! - [`kernels`]: reference GEMM/TRSM/HERK/TRMM and POTRF/TRTRI/LAUUM.
//! - [`convert`]: full, packed and RFP containers and conversions between them.
//! - [`rfp`]: the RFP routines (PFTRF, PFTRS, PFTRI, TFTRI, TFSM, SFRK, LANSF).
//! - [`packed`]: Level-2 packed baseline and SPD test matrix generation.
//!
//! ```
//! use rfpk::convert::trttf;
//! use rfpk::packed::{spd_generate, SpdSpec};
//! use rfpk::rfp::{pftrf, pftrs};
//! use rfpk::{DenseMatrix, Transr, Uplo};
//!
//! let a: DenseMatrix<f64> = spd_generate(&SpdSpec::new(50, 7, 100.0))?;
//! let mut r = trttf(a.as_ref(), Uplo::Lower, Transr::Normal)?;
//! assert_eq!(r.as_slice().len(), 50 * 51 / 2);
//!
//! pftrf(&mut r)?;
//! let mut b = DenseMatrix::from_fn(50, 2, |i, j| (i + j) as f64);
//! pftrs(&r, b.as_mut())?;
//! # Ok::<(), rfpk::Error>(())
//! ```

pub mod convert;
pub mod error;
pub mod kernels;
pub mod layout;
pub mod matrix;
pub mod packed;
pub mod rfp;
pub mod scalar;

pub use convert::{PackedTriangle, RfpTriangle};
pub use error::{Error, Result};
pub use layout::{BlockKind, BlockView, LayoutDescriptor, StoredTriangle, Transr, Uplo};
pub use matrix::{DenseMatrix, MatMut, MatRef};
pub use rfp::FactorState;
pub use scalar::{c64, Domain, Scalar};
