//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! These polynomials carry the *unknowns* of symbolic computations
//! (jet coordinates and their conjugates); they are the numerators and
//! denominators of [`crate::symfrac::SymFrac`] and the payload of the
//! emitted equation systems.  Variables are plain `u16` indices; name
//! resolution lives with the registry that allocated them.

use crate::coeff::{Coeff, GRat};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial: sorted `(variable, exponent)` pairs, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub SmallVec<[(u16, u8); 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: u16) -> Self {
        Mono(SmallVec::from_slice(&[(v, 1)]))
    }

    pub fn power(v: u16, e: u8) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(SmallVec::from_slice(&[(v, e)]))
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out: SmallVec<[(u16, u8); 4]> = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1.checked_add(b[j].1).expect("exponent overflow")));
                i += 1;
                j += 1;
            }
        }
        Mono(out)
    }

    /// Exact quotient `self / other`, or `None` when not divisible.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out: SmallVec<[(u16, u8); 4]> = SmallVec::new();
        let mut i = 0;
        for &(v, e) in &other.0 {
            loop {
                if i >= self.0.len() {
                    return None;
                }
                let (sv, se) = self.0[i];
                if sv < v {
                    out.push((sv, se));
                    i += 1;
                } else if sv == v {
                    if se < e {
                        return None;
                    }
                    if se > e {
                        out.push((sv, se - e));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Mono(out))
    }

    /// Rename variables through `perm` (old id → new id) and re-sort.
    pub fn permuted(&self, perm: &[u16]) -> Mono {
        let mut out: SmallVec<[(u16, u8); 4]> =
            self.0.iter().map(|&(v, e)| (perm[v as usize], e)).collect();
        out.sort_unstable_by_key(|&(v, _)| v);
        Mono(out)
    }

    /// Graded-lexicographic comparison: total degree first, then the
    /// earliest variable with differing exponent decides (larger wins).
    pub fn glex_cmp(&self, other: &Mono) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                // A variable present on one side only: the side carrying
                // the earlier variable has the larger monomial.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a[i].1.cmp(&b[j].1) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        match (i < a.len(), j < b.len()) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            if *e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: terms sorted glex-ascending, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Mono, GRat)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: GRat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::one(), c)],
            }
        }
    }

    pub fn var(v: u16) -> Self {
        Poly {
            terms: vec![(Mono::var(v), GRat::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (possibly zero).
    pub fn as_constant(&self) -> Option<GRat> {
        match self.terms.len() {
            0 => Some(GRat::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn from_map(map: BTreeMap<Vec<(u16, u8)>, GRat>) -> Poly {
        let mut terms: Vec<(Mono, GRat)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (Mono(SmallVec::from_vec(m)), c))
            .collect();
        terms.sort_by(|a, b| a.0.glex_cmp(&b.0));
        Poly { terms }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut map: BTreeMap<Vec<(u16, u8)>, GRat> = BTreeMap::new();
        for (m, c) in self.terms.iter().chain(&other.terms) {
            let key = m.0.to_vec();
            let entry = map.entry(key).or_insert_with(GRat::zero);
            *entry = entry.add(c);
        }
        Poly::from_map(map)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut map: BTreeMap<Vec<(u16, u8)>, GRat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = map.entry(m.0.to_vec()).or_insert_with(GRat::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        Poly::from_map(map)
    }

    pub fn scale(&self, c: &GRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Leading term in glex order.
    pub fn leading(&self) -> Option<&(Mono, GRat)> {
        self.terms.last()
    }

    /// Exact multivariate division: `Some(q)` with `self = q·d` or `None`.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(dm)?;
            let qc = rc.mul(&dc_inv);
            let qt = Poly {
                terms: vec![(qm, qc)],
            };
            rem = rem.sub(&qt.mul(d));
            q = q.add(&qt);
        }
        Some(q)
    }

    /// Conjugate coefficients and swap each variable with its partner.
    pub fn conj(&self, perm: &[u16]) -> Poly {
        let mut terms: Vec<(Mono, GRat)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.permuted(perm), c.conj()))
            .collect();
        terms.sort_by(|a, b| a.0.glex_cmp(&b.0));
        Poly { terms }
    }

    /// Exact evaluation at a point (one value per variable id).
    pub fn eval(&self, vals: &[GRat]) -> GRat {
        let mut acc = GRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let base = &vals[v as usize];
                for _ in 0..e {
                    t = t.mul(base);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Evaluation into an arbitrary coefficient ring.
    pub fn eval_in<C: Coeff>(&self, vals: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = C::from_grat(c);
            for &(v, e) in &m.0 {
                let base = &vals[v as usize];
                for _ in 0..e {
                    t = t.mul(base);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Scale so the glex-leading coefficient becomes 1; returns the
    /// removed factor.  Zero polynomials are returned unchanged.
    pub fn monic(&self) -> (Poly, GRat) {
        match self.leading() {
            None => (Poly::zero(), GRat::one()),
            Some((_, c)) => {
                let c = c.clone();
                let ci = c.inv().expect("leading coefficient of nonzero poly");
                (self.scale(&ci), c)
            }
        }
    }

    /// Render with the supplied variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            out.push('(');
            out.push_str(&c.to_string());
            out.push(')');
            for &(v, e) in &m.0 {
                out.push('·');
                out.push_str(&names[v as usize]);
                if e > 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{m:?}")?;
        }
        Ok(())
    }
}
