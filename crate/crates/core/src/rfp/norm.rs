use crate::convert::RfpTriangle;
use crate::scalar::Scalar;

/// Matrix norms accepted by [`lansf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    /// Largest absolute entry (not a consistent norm).
    Max,
    /// Largest column sum.
    One,
    /// Largest row sum; equal to `One` for these matrices.
    Inf,
    /// Frobenius norm.
    Frobenius,
}

/// Norm of the symmetric or Hermitian matrix whose triangle `r` stores.
///
/// Complex diagonals are read as their real parts.
pub fn lansf<T: Scalar>(norm: Norm, r: &RfpTriangle<T>) -> f64 {
    let n = r.n();
    let uplo = r.uplo();
    let entry = |i: usize, j: usize| -> f64 {
        if i == j {
            r.get(i, i).re().abs()
        } else if uplo.contains(i, j) {
            r.get(i, j).abs()
        } else {
            r.get(j, i).abs()
        }
    };
    match norm {
        Norm::Max => {
            let mut m = 0.0f64;
            for j in 0..n {
                for i in 0..n {
                    let v = entry(i, j);
                    if v > m || v.is_nan() {
                        m = v;
                    }
                }
            }
            m
        }
        Norm::One | Norm::Inf => {
            let mut m = 0.0f64;
            for j in 0..n {
                let mut s = 0.0;
                for i in 0..n {
                    s += entry(i, j);
                }
                if s > m || s.is_nan() {
                    m = s;
                }
            }
            m
        }
        Norm::Frobenius => {
            let mut s = 0.0;
            for j in 0..n {
                for i in 0..n {
                    let v = entry(i, j);
                    s += v * v;
                }
            }
            s.sqrt()
        }
    }
}
