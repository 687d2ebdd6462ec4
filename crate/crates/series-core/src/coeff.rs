//! Coefficient rings: the common trait and the exact Gaussian-rational base ring.
//!
//! Every series in this crate is generic over a [`Coeff`] implementation.
//! Three rings are provided:
//!
//! * [`GRat`] — Gaussian rationals `a + b·i` with arbitrary-precision
//!   rational `a`, `b`.  This is the numeric workhorse.
//! * [`crate::dual::Dual`] — first-order perturbations over [`GRat`],
//!   used to linearize polynomial systems at a point.
//! * [`crate::symfrac::SymFrac`] — reduced fractions of multivariate
//!   polynomials over [`GRat`] in a declared set of named unknowns.
//!
//! No floating point appears anywhere; every `is_zero` answer is exact.

use crate::error::{Result, SeriesError};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;

/// The ring interface the series kernel needs.
///
/// Implementations must satisfy the ring axioms exactly and provide an
/// involutive conjugation that is a ring morphism.  `inv` is partial:
/// it succeeds exactly on units and reports [`SeriesError::NonUnitCoefficient`]
/// otherwise.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Complex conjugation, extended to an involutive ring morphism
    /// (symbolic rings also swap each unknown with its conjugate partner).
    fn conj(&self) -> Self;
    /// Exact multiplicative inverse. Errors on non-units.
    fn inv(&self) -> Result<Self>;
    /// Embed an exact Gaussian rational into the ring.
    fn from_grat(c: &GRat) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Convenience: embed a small integer.
    fn from_int(v: i64) -> Self {
        Self::from_grat(&GRat::from_int(v))
    }
}

/// An exact Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GRat { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GRat {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    /// The exact rational `num/den` (den must be nonzero).
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// The exact Gaussian rational `(a + b·i)/c` (c must be nonzero).
    pub fn gaussian(a: i64, b: i64, c: i64) -> Self {
        assert!(c != 0, "zero denominator");
        GRat {
            re: BigRational::new(BigInt::from(a), BigInt::from(c)),
            im: BigRational::new(BigInt::from(b), BigInt::from(c)),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|self|² = re² + im²` as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Coeff for GRat {
    fn zero() -> Self {
        GRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn one() -> Self {
        GRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        GRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        GRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        GRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn neg(&self) -> Self {
        GRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn conj(&self) -> Self {
        GRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(SeriesError::NonUnitCoefficient);
        }
        Ok(GRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    fn from_grat(c: &GRat) -> Self {
        c.clone()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im_part}")
        } else if self.im.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.re), im_part)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), im_part)
        }
    }
}

use num::Signed;

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_gaussian_unit() {
        let c = GRat::gaussian(3, 4, 5); // (3+4i)/5, unit modulus
        let inv = c.inv().unwrap();
        assert!(c.mul(&inv).is_one());
        assert_eq!(inv, c.conj(), "unit-modulus inverse is the conjugate");
    }

    #[test]
    fn conjugation_is_involutive_morphism() {
        let a = GRat::gaussian(1, -2, 3);
        let b = GRat::gaussian(-5, 7, 2);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
    }

    #[test]
    fn zero_is_not_a_unit() {
        assert_eq!(GRat::zero().inv(), Err(SeriesError::NonUnitCoefficient));
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(GRat::from_int(2).to_string(), "2");
        assert_eq!(GRat::i().neg().to_string(), "-i");
        assert_eq!(GRat::gaussian(1, 3, 2).to_string(), "1/2+3/2i");
    }
}
