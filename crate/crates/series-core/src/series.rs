//! Truncated multivariate power series and tuples thereof.

use crate::coeff::{Coeff, GRat};
use crate::error::{Result, SeriesError};
use crate::multi_index::MultiIndex;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Highest truncation degree the kernel supports (exponents are `u8`).
pub const MAX_DEGREE: u32 = 250;

/// An ordered list of named formal variables.
///
/// Two series are combinable exactly when their variable lists agree by
/// name (pointer equality is the fast path); everything else requires an
/// explicit rebase or substitution.
#[derive(PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(","))
    }
}

/// A power series truncated at a fixed total degree.
///
/// Terms of total degree greater than the truncation degree are never
/// stored; all arithmetic re-truncates.  The term map is canonical (no
/// zero coefficients), so equality of series is equality of maps.
#[derive(Clone)]
pub struct Series<C: Coeff> {
    vars: Arc<VarSet>,
    degree: u32,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Coeff> Series<C> {
    pub fn zero(vars: &Arc<VarSet>, degree: u32) -> Self {
        debug_assert!(degree <= MAX_DEGREE);
        Series {
            vars: Arc::clone(vars),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, degree: u32, c: C) -> Self {
        let mut s = Series::zero(vars, degree);
        if !c.is_zero() {
            s.terms.insert(MultiIndex::zero(vars.len()), c);
        }
        s
    }

    pub fn one(vars: &Arc<VarSet>, degree: u32) -> Self {
        Series::constant(vars, degree, C::one())
    }

    /// The coordinate series of variable `v`.
    pub fn var(vars: &Arc<VarSet>, degree: u32, v: usize) -> Result<Self> {
        if v >= vars.len() {
            return Err(SeriesError::UnknownVariable {
                index: v,
                count: vars.len(),
            });
        }
        if degree == 0 {
            return Ok(Series::zero(vars, 0));
        }
        let mut s = Series::zero(vars, degree);
        s.terms.insert(MultiIndex::unit(vars.len(), v), C::one());
        Ok(s)
    }

    pub fn monomial(vars: &Arc<VarSet>, degree: u32, exp: MultiIndex, c: C) -> Self {
        debug_assert_eq!(exp.len(), vars.len());
        let mut s = Series::zero(vars, degree);
        if !c.is_zero() && exp.degree() <= degree {
            s.terms.insert(exp, c);
        }
        s
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &MultiIndex) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn const_term(&self) -> C {
        self.coeff(&MultiIndex::zero(self.vars.len()))
    }

    /// Lowest total degree carrying a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.degree())
    }

    pub fn compat(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(SeriesError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if !Arc::ptr_eq(&self.vars, &other.vars) && self.vars.names() != other.vars.names() {
            return Err(SeriesError::VariableMismatch);
        }
        Ok(())
    }

    fn insert(&mut self, exp: MultiIndex, c: C) {
        if c.is_zero() || exp.degree() > self.degree {
            return;
        }
        self.terms.insert(exp, c);
    }

    fn accumulate(&mut self, exp: MultiIndex, c: &C) {
        if c.is_zero() || exp.degree() > self.degree {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Series::zero(&self.vars, self.degree);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = Series::zero(&self.vars, self.degree);
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            for (eb, cb) in &other.terms {
                if da + eb.degree() > self.degree {
                    continue;
                }
                out.accumulate(ea.add(eb), &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Series::zero(&self.vars, self.degree);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            let v = a.mul(c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn scale_grat(&self, c: &GRat) -> Self {
        self.scale(&C::from_grat(c))
    }

    pub fn add_constant(&self, c: &C) -> Self {
        let mut out = self.clone();
        out.accumulate(MultiIndex::zero(self.vars.len()), c);
        out
    }

    /// Multiply by the monomial `exp` (result re-truncated).
    pub fn mul_monomial(&self, exp: &MultiIndex, c: &C) -> Self {
        let mut out = Series::zero(&self.vars, self.degree);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.insert(e.add(exp), a.mul(c));
        }
        out
    }

    /// Lower the truncation degree to `degree`, dropping higher terms.
    pub fn truncated(&self, degree: u32) -> Self {
        debug_assert!(degree <= self.degree, "truncated only lowers the degree");
        let mut out = Series::zero(&self.vars, degree);
        for (e, c) in &self.terms {
            if e.degree() <= degree {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Re-declare the truncation degree of an *exact polynomial* value.
    ///
    /// This is only sound when the caller knows every omitted term of the
    /// underlying germ is genuinely zero (the series is a polynomial held
    /// exactly); it is how finite input data enters high-degree pipelines.
    pub fn polynomial_extended(&self, degree: u32) -> Self {
        debug_assert!(degree >= self.degree);
        let mut out = Series::zero(&self.vars, degree);
        out.terms = self.terms.clone();
        out
    }

    /// Same names, different `Arc` identity — unify on one universe.
    pub fn rebased(&self, vars: &Arc<VarSet>) -> Result<Self> {
        if self.vars.names() != vars.names() {
            return Err(SeriesError::VariableMismatch);
        }
        let mut out = Series::zero(vars, self.degree);
        out.terms = self.terms.clone();
        Ok(out)
    }

    /// Formal partial derivative; the result is recorded at degree − 1.
    pub fn differentiate(&self, v: usize) -> Result<Self> {
        if v >= self.vars.len() {
            return Err(SeriesError::UnknownVariable {
                index: v,
                count: self.vars.len(),
            });
        }
        if self.degree == 0 {
            return Err(SeriesError::DegreeUnderflow);
        }
        let mut out = Series::zero(&self.vars, self.degree - 1);
        for (e, c) in &self.terms {
            let k = e.get(v);
            if k == 0 {
                continue;
            }
            let factor = C::from_int(k as i64);
            out.insert(e.dec(v), c.mul(&factor));
        }
        Ok(out)
    }

    /// Map coefficients through a ring morphism (e.g. lift rationals into
    /// a symbolic or perturbation ring).
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(&self.vars, self.degree);
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// Conjugate coefficients and permute variables (`perm[i]` = new index
    /// of old variable `i`), optionally landing in a different universe of
    /// the same size.
    pub fn conjugate(&self, perm: &[usize], target: Option<&Arc<VarSet>>) -> Result<Self> {
        if perm.len() != self.vars.len() {
            return Err(SeriesError::IncompleteSubstitution {
                expected: self.vars.len(),
                got: perm.len(),
            });
        }
        let tv = target.unwrap_or(&self.vars);
        if tv.len() != self.vars.len() {
            return Err(SeriesError::VariableMismatch);
        }
        let mut out = Series::zero(tv, self.degree);
        for (e, c) in &self.terms {
            out.terms.insert(e.permuted(perm), c.conj());
        }
        Ok(out)
    }

    /// Move the series into a larger universe: `map[i]` is the new index
    /// of old variable `i`.
    pub fn embedded(&self, target: &Arc<VarSet>, map: &[usize]) -> Result<Self> {
        if map.len() != self.vars.len() {
            return Err(SeriesError::IncompleteSubstitution {
                expected: self.vars.len(),
                got: map.len(),
            });
        }
        let mut out = Series::zero(target, self.degree);
        for (e, c) in &self.terms {
            out.terms.insert(e.embedded(target.len(), map), c.clone());
        }
        Ok(out)
    }

    fn substitute_impl(&self, images: &[Series<C>], allow_constants: bool) -> Result<Series<C>> {
        if images.len() != self.vars.len() {
            return Err(SeriesError::IncompleteSubstitution {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let template = &images[0];
        let out_vars = template.vars();
        let out_deg = template.degree();
        for (i, img) in images.iter().enumerate() {
            template.compat(img)?;
            if !allow_constants && !img.const_term().is_zero() {
                // Only reject when the variable actually occurs.
                if self.terms.keys().any(|e| e.get(i) > 0) {
                    return Err(SeriesError::NonzeroConstantTerm { index: i });
                }
            }
        }
        // Power tables per variable, built lazily up to the needed exponent.
        let mut powers: Vec<Vec<Series<C>>> = images
            .iter()
            .map(|img| vec![Series::one(out_vars, out_deg), img.clone()])
            .collect();
        let mut out = Series::zero(out_vars, out_deg);
        for (e, c) in &self.terms {
            let mut term = Series::constant(out_vars, out_deg, c.clone());
            for v in 0..self.vars.len() {
                let k = e.get(v) as usize;
                if k == 0 {
                    continue;
                }
                while powers[v].len() <= k {
                    let last = powers[v].last().unwrap();
                    let next = last.mul(&images[v])?;
                    powers[v].push(next);
                }
                term = term.mul(&powers[v][k])?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Exact composition: substitute `images[i]` for variable `i`.
    ///
    /// Every image must share one universe and degree; images with a
    /// nonzero constant term are rejected for variables that actually
    /// occur, because the composite would depend on terms beyond the
    /// truncation.
    pub fn substitute(&self, images: &[Series<C>]) -> Result<Series<C>> {
        self.substitute_impl(images, false)
    }

    /// Formal evaluation at truncation: like [`Series::substitute`] but
    /// images may carry constant terms.
    ///
    /// The result is the literal evaluation of the stored polynomial, which
    /// agrees with the analytic composite exactly when `self` is an exact
    /// polynomial below its truncation degree *or* the constant parts
    /// vanish at the evaluation of interest.  Callers own that argument;
    /// the equation pipelines use it where on-shell data makes the
    /// constants vanish identically.
    pub fn substitute_total(&self, images: &[Series<C>]) -> Result<Series<C>> {
        self.substitute_impl(images, true)
    }

    /// Multiplicative inverse of a unit series (unit constant term).
    pub fn invert_unit(&self) -> Result<Series<C>> {
        let c0 = self.const_term();
        let c0i = c0.inv().map_err(|_| SeriesError::NonUnitConstant)?;
        // f = c₀(1 − g) with g = 1 − f/c₀; 1/f = c₀⁻¹ Σ gᵏ.
        let one = Series::one(&self.vars, self.degree);
        let g = one.sub(&self.scale(&c0i))?;
        let mut acc = one.clone();
        let mut p = g.clone();
        for _ in 0..self.degree {
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p)?;
            p = p.mul(&g)?;
        }
        Ok(acc.scale(&c0i))
    }

    /// The terms with `w`-exponent exactly `j` (variable `split`), with the
    /// exponent removed — `self = Σ_j slice_j · w^j` at truncation.
    pub fn slice_var(&self, split: usize, j: u8) -> Self {
        let mut out = Series::zero(&self.vars, self.degree);
        for (e, c) in &self.terms {
            if e.get(split) == j {
                let mut r = e.clone();
                r.set(split, 0);
                out.terms.insert(r, c.clone());
            }
        }
        out
    }

    /// Largest exponent of variable `v` appearing in any stored term.
    pub fn max_exp(&self, v: usize) -> u8 {
        self.terms.keys().map(|e| e.get(v)).max().unwrap_or(0)
    }

    /// Exact evaluation of the stored polynomial at a point (one value
    /// per variable).  This reads the truncated data literally, so it is
    /// the series' value only when the series is an exact polynomial.
    pub fn eval_at(&self, vals: &[C]) -> C {
        debug_assert_eq!(vals.len(), self.vars.len());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, val) in vals.iter().enumerate() {
                for _ in 0..e.get(v) {
                    t = t.mul(val);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Render with coefficient debug formatting (tests, diagnostics).
    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut mono = String::new();
            for v in 0..self.vars.len() {
                let k = e.get(v);
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('·');
                }
                mono.push_str(self.vars.name(v));
                if k > 1 {
                    mono.push_str(&format!("^{k}"));
                }
            }
            if mono.is_empty() {
                parts.push(format!("({c:?})"));
            } else {
                parts.push(format!("({c:?})·{mono}"));
            }
        }
        parts.join(" + ")
    }
}

impl<C: Coeff> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars.names() == other.vars.names())
            && self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{:?}; D={}]({})", self.vars, self.degree, self.display())
    }
}

/// An ordered tuple of series sharing one universe and degree.
#[derive(Clone, PartialEq)]
pub struct SeriesTuple<C: Coeff> {
    pub components: Vec<Series<C>>,
}

impl<C: Coeff> SeriesTuple<C> {
    pub fn new(components: Vec<Series<C>>) -> Result<Self> {
        if let Some((first, rest)) = components.split_first() {
            for s in rest {
                first.compat(s)?;
            }
        }
        Ok(SeriesTuple { components })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.components[0].vars()
    }

    pub fn substitute(&self, images: &[Series<C>]) -> Result<SeriesTuple<C>> {
        let components = self
            .components
            .iter()
            .map(|s| s.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesTuple { components })
    }

    pub fn substitute_total(&self, images: &[Series<C>]) -> Result<SeriesTuple<C>> {
        let components = self
            .components
            .iter()
            .map(|s| s.substitute_total(images))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesTuple { components })
    }

    pub fn truncated(&self, degree: u32) -> SeriesTuple<C> {
        SeriesTuple {
            components: self.components.iter().map(|s| s.truncated(degree)).collect(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&Series<C>) -> Series<D>) -> SeriesTuple<D> {
        SeriesTuple {
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<SeriesTuple<C>> {
        if self.len() != other.len() {
            return Err(SeriesError::ComponentMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesTuple { components })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|s| s.is_zero())
    }
}

impl<C: Coeff> fmt::Debug for SeriesTuple<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", s.display())?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv() -> Arc<VarSet> {
        VarSet::new(vec!["z", "w"])
    }

    fn z(d: u32) -> Series<GRat> {
        Series::var(&uv(), d, 0).unwrap()
    }

    fn w(d: u32) -> Series<GRat> {
        Series::var(&uv(), d, 1).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let d = 4;
        let p = z(d).add(&w(d)).unwrap().mul(&z(d).sub(&w(d)).unwrap()).unwrap();
        let expect = z(d).mul(&z(d)).unwrap().sub(&w(d).mul(&w(d)).unwrap()).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn truncation_caps_products() {
        let d = 3;
        let z2 = z(d).mul(&z(d)).unwrap();
        assert!(z2.mul(&z2).unwrap().is_zero(), "z⁴ vanishes at D=3");
    }

    #[test]
    fn mixed_degree_is_an_error() {
        assert_eq!(
            z(3).add(&z(4)),
            Err(SeriesError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn derivative_of_monomial() {
        // ∂_z(z²w) = 2zw
        let d = 4;
        let s = z(d).mul(&z(d)).unwrap().mul(&w(d)).unwrap();
        let ds = s.differentiate(0).unwrap();
        let expect = z(3).mul(&w(3)).unwrap().scale(&GRat::from_int(2));
        assert_eq!(ds, expect);
    }

    #[test]
    fn substitution_kills_a_variable() {
        // f(z,w) = w + z², w ↦ 0 gives z².
        let d = 4;
        let f = w(d).add(&z(d).mul(&z(d)).unwrap()).unwrap();
        let got = f.substitute(&[z(d), Series::zero(&uv(), d)]).unwrap();
        assert_eq!(got, z(d).mul(&z(d)).unwrap());
    }

    #[test]
    fn substitution_rejects_constants_on_used_variables() {
        let d = 4;
        let f = w(d);
        let err = f.substitute(&[z(d), Series::one(&uv(), d)]);
        assert_eq!(err, Err(SeriesError::NonzeroConstantTerm { index: 1 }));
        // …but tolerates them on variables that never occur.
        let g = z(d);
        assert!(g.substitute(&[z(d), Series::one(&uv(), d)]).is_ok());
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1−z) = 1 + z + z² + … to the truncation degree.
        let d = 5;
        let f = Series::one(&uv(), d).sub(&z(d)).unwrap();
        let inv = f.invert_unit().unwrap();
        let mut expect = Series::zero(&uv(), d);
        let mut p = Series::one(&uv(), d);
        for _ in 0..=d {
            expect = expect.add(&p).unwrap();
            p = p.mul(&z(d)).unwrap();
        }
        assert_eq!(inv, expect);
        assert_eq!(f.mul(&inv).unwrap(), Series::one(&uv(), d));
    }

    #[test]
    fn shifted_inverse_example() {
        // 1/(2+z) at D=2 → 1/2 − z/4 + z²/8; multiplying back gives 1 mod z³.
        let d = 2;
        let f = z(d).add_constant(&GRat::from_int(2));
        let inv = f.invert_unit().unwrap();
        let mut expect = Series::constant(&uv(), d, GRat::rational(1, 2));
        expect = expect.add(&z(d).scale(&GRat::rational(-1, 4))).unwrap();
        let z2 = z(d).mul(&z(d)).unwrap();
        expect = expect.add(&z2.scale(&GRat::rational(1, 8))).unwrap();
        assert_eq!(inv, expect);
        assert_eq!(f.mul(&inv).unwrap(), Series::one(&uv(), d));
    }

    #[test]
    fn conjugation_with_relabel() {
        // conj(i·z·w) under z↔w is −i·z·w.
        let d = 3;
        let s = z(d).mul(&w(d)).unwrap().scale(&GRat::i());
        let c = s.conjugate(&[1, 0], None).unwrap();
        assert_eq!(c, z(d).mul(&w(d)).unwrap().scale(&GRat::i().neg()));
        assert_eq!(c.conjugate(&[1, 0], None).unwrap(), s);
    }
}
