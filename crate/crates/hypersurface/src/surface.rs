//! Validated defining functions.
//!
//! A [`DefiningFunction`] holds the complexified defining polynomial
//! `ρ(z, w, χ, τ)` of a real hypersurface through the origin, stored
//! exactly (its truncation degree is at least its total degree).  The
//! constructor enforces the two structural facts everything downstream
//! relies on: `ρ(0) = 0` and the reality condition
//! `ρ(z, w, χ, τ) = conj ρ(χ, τ, z, w)` (conjugate coefficients with the
//! two variable blocks exchanged).

use crate::dsl::parse_equation;
use crate::error::{Result, SurfaceError};
use crate::universe::full;
use series_core::{Coeff, GRat, Series};

#[derive(Debug, Clone, PartialEq)]
pub struct DefiningFunction {
    rho: Series<GRat>,
    n: usize,
}

impl DefiningFunction {
    /// Wrap an already-complexified defining polynomial.
    ///
    /// `rho` must live in the full universe for `n` and must be stored
    /// at a degree at least its total degree, so that membership tests
    /// and recentering are exact.
    pub fn new(rho: Series<GRat>, n: usize) -> Result<Self> {
        if rho.vars().len() != 2 * n + 2 {
            return Err(SurfaceError::PointShape {
                expected: 2 * n + 2,
                got: rho.vars().len(),
            });
        }
        if !rho.const_term().is_zero() {
            return Err(SurfaceError::NotThroughOrigin);
        }
        let sigma = rho.conjugate(&full::conj_perm(n), None)?;
        if sigma != rho {
            return Err(SurfaceError::NotReal);
        }
        Ok(DefiningFunction { rho, n })
    }

    /// Parse a textual equation (`Im w = …` or `rho = …`) and validate it.
    ///
    /// The stored polynomial keeps whatever degree is needed to hold it
    /// exactly, never less than `min_degree`.
    pub fn parse(text: &str, min_degree: u32) -> Result<Self> {
        let parsed = parse_equation(text, min_degree)?;
        DefiningFunction::new(parsed.rho, parsed.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The stored defining polynomial, exact at its own degree.
    pub fn rho(&self) -> &Series<GRat> {
        &self.rho
    }

    /// The defining polynomial at truncation `degree`.  Raising the
    /// degree is exact (the data is a polynomial); lowering it discards
    /// the tail, which is the right thing for order-`degree` work.
    pub fn rho_at(&self, degree: u32) -> Series<GRat> {
        if degree >= self.rho.degree() {
            self.rho.polynomial_extended(degree)
        } else {
            self.rho.truncated(degree)
        }
    }

    /// The full evaluation vector `(p, p̄)` for a point `p = (z, w)`.
    fn point_vector(&self, p: &[GRat]) -> Result<Vec<GRat>> {
        if p.len() != self.n + 1 {
            return Err(SurfaceError::PointShape {
                expected: self.n + 1,
                got: p.len(),
            });
        }
        let mut vals = Vec::with_capacity(2 * self.n + 2);
        vals.extend(p.iter().cloned());
        vals.extend(p.iter().map(Coeff::conj));
        Ok(vals)
    }

    /// Exact membership test: `ρ(p, p̄) = 0`.
    pub fn contains(&self, p: &[GRat]) -> Result<bool> {
        Ok(self.rho.eval_at(&self.point_vector(p)?).is_zero())
    }

    /// Translate the origin to `p ∈ M`.  Exact: the defining polynomial
    /// is shifted by substituting `x ↦ x + p` in every slot.
    pub fn recenter(&self, p: &[GRat]) -> Result<DefiningFunction> {
        let vals = self.point_vector(p)?;
        if !self.rho.eval_at(&vals).is_zero() {
            return Err(SurfaceError::NotOnSurface);
        }
        let vars = self.rho.vars();
        let deg = self.rho.degree();
        let images: Vec<Series<GRat>> = (0..vars.len())
            .map(|v| Ok(Series::var(vars, deg, v)?.add_constant(&vals[v])))
            .collect::<Result<_>>()?;
        let shifted = self.rho.substitute_total(&images)?;
        debug_assert!(shifted.const_term().is_zero());
        DefiningFunction::new(shifted, self.n)
    }
}
