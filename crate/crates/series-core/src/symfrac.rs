//! Reduced fractions of multivariate polynomials in declared unknowns.
//!
//! [`SymFrac`] is the symbolic coefficient ring: values are
//! `num / Π aₖ^{eₖ}` where the `aₖ` are *atoms* — monic polynomials
//! interned in a shared [`SymRegistry`].  Denominators only ever arise
//! from explicit inversions (Cramer-style solves and unit inversions),
//! so keeping them as a multiset of interned atoms makes cancellation a
//! cheap exact-division check against each atom rather than a general
//! multivariate gcd.  Equality is decided by cross-multiplication, so
//! representation differences can never be observed.
//!
//! The registry also owns the unknowns' names and the conjugation
//! pairing (each unknown ↔ its conjugate partner), making
//! [`Coeff::conj`] a true involutive ring morphism.

use crate::coeff::{Coeff, GRat};
use crate::error::{Result, SeriesError};
use crate::poly::Poly;
use smallvec::SmallVec;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

struct RegistryInner {
    atoms: Vec<Poly>,
    index: HashMap<Poly, u32>,
}

/// Shared table of unknowns and interned denominator atoms.
pub struct SymRegistry {
    names: Vec<String>,
    conj_perm: Vec<u16>,
    inner: Mutex<RegistryInner>,
}

impl SymRegistry {
    /// Declare unknowns by name together with the conjugation pairing
    /// (`conj_pairs` lists `(v, v̄)` index pairs; unlisted variables are
    /// self-conjugate).
    pub fn new(names: Vec<String>, conj_pairs: &[(u16, u16)]) -> Arc<SymRegistry> {
        let mut conj_perm: Vec<u16> = (0..names.len() as u16).collect();
        for &(a, b) in conj_pairs {
            conj_perm[a as usize] = b;
            conj_perm[b as usize] = a;
        }
        Arc::new(SymRegistry {
            names,
            conj_perm,
            inner: Mutex::new(RegistryInner {
                atoms: Vec::new(),
                index: HashMap::new(),
            }),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn conj_perm(&self) -> &[u16] {
        &self.conj_perm
    }

    fn intern(&self, p: Poly) -> u32 {
        let mut g = self.inner.lock().expect("registry poisoned");
        if let Some(&id) = g.index.get(&p) {
            return id;
        }
        let id = g.atoms.len() as u32;
        g.atoms.push(p.clone());
        g.index.insert(p, id);
        id
    }

    fn atom(&self, id: u32) -> Poly {
        self.inner.lock().expect("registry poisoned").atoms[id as usize].clone()
    }
}

impl fmt::Debug for SymRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymRegistry({} unknowns)", self.names.len())
    }
}

type DenKey = SmallVec<[(u32, u16); 2]>;

/// A reduced polynomial fraction over a [`SymRegistry`].
///
/// Ring constants (`zero`, `one`, embedded rationals) carry no registry
/// and unify with any registry on first contact; mixing values from two
/// different registries is a caller error and panics.
#[derive(Clone)]
pub struct SymFrac {
    num: Poly,
    den: DenKey,
    reg: Option<Arc<SymRegistry>>,
}

impl SymFrac {
    pub fn constant(c: GRat) -> Self {
        SymFrac {
            num: Poly::constant(c),
            den: SmallVec::new(),
            reg: None,
        }
    }

    /// The unknown with index `v`.
    pub fn var(reg: &Arc<SymRegistry>, v: u16) -> Self {
        assert!((v as usize) < reg.var_count(), "unknown index out of range");
        SymFrac {
            num: Poly::var(v),
            den: SmallVec::new(),
            reg: Some(Arc::clone(reg)),
        }
    }

    /// A polynomial in the unknowns.
    pub fn from_poly(reg: &Arc<SymRegistry>, p: Poly) -> Self {
        SymFrac {
            num: p,
            den: SmallVec::new(),
            reg: Some(Arc::clone(reg)),
        }
    }

    pub fn registry(&self) -> Option<&Arc<SymRegistry>> {
        self.reg.as_ref()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// The denominator expanded to a single polynomial.
    pub fn denominator_poly(&self) -> Poly {
        let Some(reg) = &self.reg else {
            return Poly::constant(GRat::one());
        };
        let mut d = Poly::constant(GRat::one());
        for &(id, e) in &self.den {
            let a = reg.atom(id);
            for _ in 0..e {
                d = d.mul(&a);
            }
        }
        d
    }

    /// `true` when the value is a polynomial (empty denominator).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn unified_reg(&self, other: &Self) -> Option<Arc<SymRegistry>> {
        match (&self.reg, &other.reg) {
            (Some(a), Some(b)) => {
                assert!(Arc::ptr_eq(a, b), "symbolic values from different registries");
                Some(Arc::clone(a))
            }
            (Some(a), None) => Some(Arc::clone(a)),
            (None, Some(b)) => Some(Arc::clone(b)),
            (None, None) => None,
        }
    }

    /// Cancel denominator atoms that divide the numerator exactly.
    fn reduced(num: Poly, den: DenKey, reg: Option<Arc<SymRegistry>>) -> Self {
        if num.is_zero() {
            return SymFrac {
                num,
                den: SmallVec::new(),
                reg,
            };
        }
        let Some(r) = &reg else {
            debug_assert!(den.is_empty());
            return SymFrac { num, den, reg };
        };
        let mut num = num;
        let mut out: DenKey = SmallVec::new();
        for (id, mut e) in den {
            let a = r.atom(id);
            while e > 0 {
                match num.divide_exact(&a) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out.push((id, e));
            }
        }
        SymFrac { num, den: out, reg }
    }

    fn den_union(a: &DenKey, b: &DenKey, f: impl Fn(u16, u16) -> u16) -> DenKey {
        let mut out: DenKey = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                let e = f(a[i].1, 0);
                if e > 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                let e = f(0, b[j].1);
                if e > 0 {
                    out.push((b[j].0, e));
                }
                j += 1;
            } else {
                let e = f(a[i].1, b[j].1);
                if e > 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Numerator scaled up by the atoms `target ∖ self.den`.
    fn scaled_num(&self, target: &DenKey, reg: &Arc<SymRegistry>) -> Poly {
        let mut num = self.num.clone();
        let extra = Self::den_union(target, &self.den, |t, s| t.saturating_sub(s));
        for (id, e) in extra {
            let a = reg.atom(id);
            for _ in 0..e {
                num = num.mul(&a);
            }
        }
        num
    }

    /// Exact evaluation at a rational point; errors when a denominator
    /// atom vanishes there.
    pub fn eval(&self, vals: &[GRat]) -> Result<GRat> {
        let mut acc = self.num.eval(vals);
        if let Some(reg) = &self.reg {
            for &(id, e) in &self.den {
                let a = reg.atom(id).eval(vals);
                if a.is_zero() {
                    return Err(SeriesError::DenominatorVanishes);
                }
                let ai = a.inv()?;
                for _ in 0..e {
                    acc = acc.mul(&ai);
                }
            }
        }
        Ok(acc)
    }
}

impl PartialEq for SymFrac {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        // Cross-multiply so representation differences cannot leak.
        self.num.mul(&other.denominator_poly()) == other.num.mul(&self.denominator_poly())
    }
}

impl Coeff for SymFrac {
    fn zero() -> Self {
        SymFrac::constant(GRat::zero())
    }

    fn one() -> Self {
        SymFrac::constant(GRat::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let reg = self.unified_reg(rhs);
        if self.den == rhs.den {
            return SymFrac::reduced(self.num.add(&rhs.num), self.den.clone(), reg);
        }
        let r = reg.as_ref().expect("denominators require a registry");
        let common = Self::den_union(&self.den, &rhs.den, u16::max);
        let num = self.scaled_num(&common, r).add(&rhs.scaled_num(&common, r));
        SymFrac::reduced(num, common, reg)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let reg = self.unified_reg(rhs);
        let den = Self::den_union(&self.den, &rhs.den, |a, b| {
            a.checked_add(b).expect("denominator exponent overflow")
        });
        SymFrac::reduced(self.num.mul(&rhs.num), den, reg)
    }

    fn neg(&self) -> Self {
        SymFrac {
            num: self.num.neg(),
            den: self.den.clone(),
            reg: self.reg.clone(),
        }
    }

    fn conj(&self) -> Self {
        let Some(reg) = &self.reg else {
            return SymFrac {
                num: self.num.conj(&[]),
                den: SmallVec::new(),
                reg: None,
            };
        };
        let perm = reg.conj_perm();
        let mut num = self.num.conj(perm);
        let mut den: DenKey = SmallVec::new();
        for &(id, e) in &self.den {
            // Conjugated atoms are re-normalized to monic form; the
            // scalar factor moves into the numerator.
            let (a, c) = reg.atom(id).conj(perm).monic();
            let ci = c.inv().expect("atom leading coefficient");
            for _ in 0..e {
                num = num.scale(&ci);
            }
            den.push((reg.intern(a), e));
        }
        den.sort_unstable_by_key(|&(id, _)| id);
        // Conjugation can make two atoms collide; merge exponents.
        let mut merged: DenKey = SmallVec::new();
        for (id, e) in den {
            match merged.last_mut() {
                Some((lid, le)) if *lid == id => *le += e,
                _ => merged.push((id, e)),
            }
        }
        SymFrac::reduced(num, merged, Some(Arc::clone(reg)))
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(SeriesError::NonUnitCoefficient);
        }
        if let Some(c) = self.num.as_constant() {
            // 1/(c/Πa) = Πa/c — stays atom-free in the denominator.
            let d = self.denominator_poly();
            return Ok(SymFrac {
                num: d.scale(&c.inv()?),
                den: SmallVec::new(),
                reg: self.reg.clone(),
            });
        }
        let reg = self.reg.as_ref().expect("non-constant numerator has a registry");
        let (atom, lead) = self.num.monic();
        let id = reg.intern(atom);
        let num = self.denominator_poly().scale(&lead.inv()?);
        Ok(SymFrac::reduced(
            num,
            SmallVec::from_slice(&[(id, 1)]),
            self.reg.clone(),
        ))
    }

    fn from_grat(c: &GRat) -> Self {
        SymFrac::constant(c.clone())
    }
}

impl fmt::Debug for SymFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reg {
            Some(reg) => {
                write!(f, "{}", self.num.display_with(reg.names()))?;
                if !self.den.is_empty() {
                    write!(f, " / [{}]", self.denominator_poly().display_with(reg.names()))?;
                }
                Ok(())
            }
            None => write!(f, "{:?}", self.num),
        }
    }
}
