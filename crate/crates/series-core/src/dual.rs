//! First-order perturbation coefficients over the Gaussian rationals.
//!
//! A [`Dual`] value is `v + Σ_s e_s·ε_s` where the `ε_s` are nilpotent
//! perturbation slots (`ε_s·ε_t = 0`).  Arithmetic keeps the value part
//! exact and propagates the first-order part linearly, which turns any
//! exact computation into its own derivative at the evaluation point —
//! the mechanism behind the rank computations on linearized equation
//! systems.
//!
//! Slots are indexed by `u16` and are understood as *real* directions:
//! conjugation conjugates value and slope parts but never touches slot
//! identity.  A complex unknown `λ` perturbed in its real and imaginary
//! parts is therefore written `λ + ε_r + i·ε_m`, and its conjugate
//! `conj(λ) + ε_r − i·ε_m` falls out of [`Coeff::conj`] automatically.

use crate::coeff::{Coeff, GRat};
use crate::error::{Result, SeriesError};
use std::fmt;

/// `v + Σ (slot, slope)·ε_slot`, slopes sorted by slot with no zeros stored.
#[derive(Clone, PartialEq)]
pub struct Dual {
    pub v: GRat,
    pub e: Vec<(u16, GRat)>,
}

impl Dual {
    pub fn constant(v: GRat) -> Self {
        Dual { v, e: Vec::new() }
    }

    /// `v + ε_re_slot + i·ε_im_slot` — a complex unknown perturbed in
    /// independent real and imaginary directions.
    pub fn perturbed(v: GRat, re_slot: u16, im_slot: u16) -> Self {
        assert!(re_slot != im_slot, "perturbation slots must differ");
        let mut e = vec![(re_slot, GRat::one()), (im_slot, GRat::i())];
        e.sort_by_key(|(s, _)| *s);
        Dual { v, e }
    }

    pub fn slope(&self, slot: u16) -> GRat {
        match self.e.binary_search_by_key(&slot, |(s, _)| *s) {
            Ok(k) => self.e[k].1.clone(),
            Err(_) => GRat::zero(),
        }
    }

    fn merge(a: &[(u16, GRat)], b: &[(u16, GRat)], f: impl Fn(&GRat, &GRat) -> GRat) -> Vec<(u16, GRat)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let zero = GRat::zero();
        while i < a.len() || j < b.len() {
            let (slot, val) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                let r = (a[i].0, f(&a[i].1, &zero));
                i += 1;
                r
            } else if i >= a.len() || b[j].0 < a[i].0 {
                let r = (b[j].0, f(&zero, &b[j].1));
                j += 1;
                r
            } else {
                let r = (a[i].0, f(&a[i].1, &b[j].1));
                i += 1;
                j += 1;
                r
            };
            if !val.is_zero() {
                out.push((slot, val));
            }
        }
        out
    }

    fn scaled(e: &[(u16, GRat)], c: &GRat) -> Vec<(u16, GRat)> {
        if c.is_zero() {
            return Vec::new();
        }
        e.iter().map(|(s, g)| (*s, g.mul(c))).collect()
    }
}

impl Coeff for Dual {
    fn zero() -> Self {
        Dual::constant(GRat::zero())
    }

    fn one() -> Self {
        Dual::constant(GRat::one())
    }

    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.e.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        Dual {
            v: self.v.add(&rhs.v),
            e: Self::merge(&self.e, &rhs.e, |a, b| a.add(b)),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Dual {
            v: self.v.sub(&rhs.v),
            e: Self::merge(&self.e, &rhs.e, |a, b| a.sub(b)),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (v₁ + e₁)(v₂ + e₂) = v₁v₂ + v₁e₂ + v₂e₁ ; the e₁e₂ term is second order.
        Dual {
            v: self.v.mul(&rhs.v),
            e: Self::merge(
                &Self::scaled(&rhs.e, &self.v),
                &Self::scaled(&self.e, &rhs.v),
                |a, b| a.add(b),
            ),
        }
    }

    fn neg(&self) -> Self {
        Dual {
            v: self.v.neg(),
            e: self.e.iter().map(|(s, g)| (*s, g.neg())).collect(),
        }
    }

    fn conj(&self) -> Self {
        Dual {
            v: self.v.conj(),
            e: self.e.iter().map(|(s, g)| (*s, g.conj())).collect(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.v.is_zero() {
            return Err(SeriesError::NonUnitCoefficient);
        }
        // 1/(v + e) = 1/v − e/v².
        let vi = self.v.inv()?;
        let m = vi.mul(&vi).neg();
        Ok(Dual {
            v: vi,
            e: Self::scaled(&self.e, &m),
        })
    }

    fn from_grat(c: &GRat) -> Self {
        Dual::constant(c.clone())
    }
}

impl fmt::Debug for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)?;
        for (s, g) in &self.e {
            write!(f, " + ({g})·ε{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        // (2 + ε₀)(3 + ε₀ + iε₁) = 6 + 5ε₀ + 2iε₁
        let a = Dual {
            v: GRat::from_int(2),
            e: vec![(0, GRat::one())],
        };
        let b = Dual {
            v: GRat::from_int(3),
            e: vec![(0, GRat::one()), (1, GRat::i())],
        };
        let p = a.mul(&b);
        assert_eq!(p.v, GRat::from_int(6));
        assert_eq!(p.slope(0), GRat::from_int(5));
        assert_eq!(p.slope(1), GRat::i().mul(&GRat::from_int(2)));
    }

    #[test]
    fn inverse_cancels_to_first_order() {
        let a = Dual::perturbed(GRat::gaussian(1, 1, 2), 0, 1);
        let p = a.mul(&a.inv().unwrap());
        assert!(p.is_one());
    }

    #[test]
    fn conjugate_of_perturbed_unknown() {
        // conj(λ + ε_r + iε_m) = conj(λ) + ε_r − iε_m.
        let a = Dual::perturbed(GRat::gaussian(2, 3, 1), 4, 5);
        let c = a.conj();
        assert_eq!(c.v, GRat::gaussian(2, -3, 1));
        assert_eq!(c.slope(4), GRat::one());
        assert_eq!(c.slope(5), GRat::i().neg());
    }
}
