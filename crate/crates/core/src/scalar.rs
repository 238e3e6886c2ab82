//! Double precision real and complex scalars.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub use num_complex::Complex64 as c64;

/// Scalar domain of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Real64,
    Complex128,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Real64 => "real",
            Domain::Complex128 => "complex",
        }
    }
}

/// Element type accepted by every kernel and RFP routine.
///
/// Real scalars treat `conj` as the identity, so the transpose and
/// conjugate-transpose code paths coincide for `f64`.
pub trait Scalar:
    Copy
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    const DOMAIN: Domain;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(re: f64) -> Self;
    fn from_parts(re: f64, im: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    /// Modulus.
    fn abs(self) -> f64;
    /// Squared modulus.
    fn abs2(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn is_nan(self) -> bool;

    #[inline]
    fn is_complex() -> bool {
        Self::DOMAIN == Domain::Complex128
    }

    /// Drops the imaginary part; used on Hermitian diagonals.
    #[inline]
    fn real_part(self) -> Self {
        Self::from_real(self.re())
    }
}

impl Scalar for f64 {
    const DOMAIN: Domain = Domain::Real64;

    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_real(re: f64) -> Self {
        re
    }
    #[inline]
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn im(self) -> f64 {
        0.0
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    #[inline]
    fn abs2(self) -> f64 {
        self * self
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    #[inline]
    fn is_nan(self) -> bool {
        f64::is_nan(self)
    }
}

impl Scalar for c64 {
    const DOMAIN: Domain = Domain::Complex128;

    #[inline]
    fn zero() -> Self {
        c64::new(0.0, 0.0)
    }
    #[inline]
    fn one() -> Self {
        c64::new(1.0, 0.0)
    }
    #[inline]
    fn from_real(re: f64) -> Self {
        c64::new(re, 0.0)
    }
    #[inline]
    fn from_parts(re: f64, im: f64) -> Self {
        c64::new(re, im)
    }
    #[inline]
    fn conj(self) -> Self {
        c64::new(self.re, -self.im)
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn im(self) -> f64 {
        self.im
    }
    #[inline]
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    #[inline]
    fn abs2(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        c64::new(self.re * s, self.im * s)
    }
    #[inline]
    fn is_nan(self) -> bool {
        self.re.is_nan() || self.im.is_nan()
    }
}
