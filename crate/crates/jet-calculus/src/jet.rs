//! The group of invertible jets fixing the origin.
//!
//! A jet of order `k` is stored as its polynomial representative: an
//! `(n+1)`-tuple over the map universe `[z…, w]`, truncated at total
//! degree `k`, with zero constant term and invertible linear part.
//! Composition drops all terms of degree above `k`; the coordinates
//! `λ`/`μ` are the scaled Taylor coefficients of the `z`-components and
//! the `w`-component respectively.

use crate::error::{JetError, Result};
use hypersurface::{map, map_universe};
use num::BigRational;
use series_core::{Coeff, GRat, Mat, MultiIndex, Series, SeriesTuple, VarSet};
use serde_json::{json, Map, Value};
use std::sync::Arc;

/// Scaled-coefficient normalization factor `α!·j!`.
fn factorial_weight(alpha: &MultiIndex, j: u8) -> GRat {
    let mut f = BigRational::from_integer(1.into());
    for v in 0..alpha.len() {
        for t in 1..=alpha.get(v) as u64 {
            f *= BigRational::from_integer(t.into());
        }
    }
    for t in 1..=j as u64 {
        f *= BigRational::from_integer(t.into());
    }
    GRat {
        re: f,
        im: BigRational::from_integer(0.into()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JetGroupElement {
    n: usize,
    order: u32,
    map: SeriesTuple<GRat>,
}

impl JetGroupElement {
    /// Wrap a polynomial tuple as a jet, validating the group conditions.
    pub fn new(map_tuple: SeriesTuple<GRat>, n: usize) -> Result<Self> {
        if map_tuple.len() != n + 1 {
            return Err(JetError::ComponentCount {
                expected: n + 1,
                got: map_tuple.len(),
            });
        }
        let order = map_tuple.degree();
        for c in &map_tuple.components {
            if !c.const_term().is_zero() {
                return Err(JetError::NotPointed);
            }
        }
        // Invertible linear part.
        let nv = n + 1;
        let mut lin = Mat::zero(nv, nv);
        for (i, c) in map_tuple.components.iter().enumerate() {
            for v in 0..nv {
                lin.set(i, v, c.coeff(&MultiIndex::unit(nv, v)));
            }
        }
        if lin.inverse().is_err() {
            return Err(JetError::SingularLinearPart);
        }
        Ok(JetGroupElement {
            n,
            order,
            map: map_tuple,
        })
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let vars = map_universe(n);
        let comps = (0..=n)
            .map(|v| Series::var(&vars, order, v).expect("valid index"))
            .collect();
        JetGroupElement {
            n,
            order,
            map: SeriesTuple { components: comps },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The polynomial representative (degree = order, zero constants).
    pub fn map(&self) -> &SeriesTuple<GRat> {
        &self.map
    }

    /// Jet of a polynomial map: truncate (or extend, exactly, for a
    /// polynomial of lower degree) to order `k`, then validate.
    pub fn eta(h: &SeriesTuple<GRat>, n: usize, k: u32) -> Result<Self> {
        let comps: Vec<Series<GRat>> = h
            .components
            .iter()
            .map(|c| {
                if k <= c.degree() {
                    c.truncated(k)
                } else {
                    c.polynomial_extended(k)
                }
            })
            .collect();
        JetGroupElement::new(SeriesTuple { components: comps }, n)
    }

    /// Forget structure down to order `k ≤ order`.
    pub fn truncate(&self, k: u32) -> Result<Self> {
        if k > self.order || k == 0 {
            return Err(JetError::OrderMismatch {
                left: self.order,
                right: k,
            });
        }
        Ok(JetGroupElement {
            n: self.n,
            order: k,
            map: self.map.truncated(k),
        })
    }

    /// Group law: `self · other` is the jet of `self ∘ other`.
    pub fn compose(&self, other: &JetGroupElement) -> Result<Self> {
        if self.order != other.order {
            return Err(JetError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let map = self.map.substitute(&other.map.components)?;
        Ok(JetGroupElement {
            n: self.n,
            order: self.order,
            map,
        })
    }

    /// Group inverse mod the order.
    pub fn invert(&self) -> Result<Self> {
        let n = self.n;
        let nv = n + 1;
        let mvars = map_universe(n);
        let mut names: Vec<String> = mvars.names().to_vec();
        for i in 1..=nv {
            names.push(format!("u{i}"));
        }
        let big = VarSet::new(names);
        let emb: Vec<usize> = (nv..2 * nv).collect();
        let comps: Vec<Series<GRat>> = self
            .map
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let lifted = c.embedded(&big, &emb)?;
                let xi = Series::var(&big, self.order, i)?;
                lifted.sub(&xi)
            })
            .collect::<series_core::Result<_>>()?;
        let solved = series_core::solve_implicit(&SeriesTuple::new(comps)?, nv)?;
        let components: Vec<Series<GRat>> = solved
            .components
            .into_iter()
            .map(|c| c.rebased(&mvars))
            .collect::<series_core::Result<_>>()?;
        JetGroupElement::new(SeriesTuple { components }, n)
    }

    /// Coefficient-wise conjugate jet `Λ̄`.
    pub fn conj(&self) -> Self {
        JetGroupElement {
            n: self.n,
            order: self.order,
            map: self.map.map(|s| s.map_coeffs(Coeff::conj)),
        }
    }

    fn exp_of(&self, alpha: &MultiIndex, j: u8) -> MultiIndex {
        let mut e = MultiIndex::zero(self.n + 1);
        for v in 0..self.n {
            e.set(v, alpha.get(v));
        }
        e.set(map::w(self.n), j);
        e
    }

    /// `λ`-coordinate of `z`-component `i`: `α!·j!` times the Taylor
    /// coefficient of `z^α w^j`.
    pub fn lambda(&self, i: usize, alpha: &MultiIndex, j: u8) -> GRat {
        let e = self.exp_of(alpha, j);
        self.map.components[i]
            .coeff(&e)
            .mul(&factorial_weight(alpha, j))
    }

    /// `μ`-coordinate of the `w`-component.
    pub fn mu(&self, alpha: &MultiIndex, j: u8) -> GRat {
        let e = self.exp_of(alpha, j);
        self.map.components[self.n]
            .coeff(&e)
            .mul(&factorial_weight(alpha, j))
    }

    /// `μ_{z^α} = 0` for all `0 < |α|`: the `w`-component has no pure-`z`
    /// terms.
    pub fn in_g0(&self) -> bool {
        let w = map::w(self.n);
        self.map.components[self.n]
            .terms()
            .all(|(e, _)| e.get(w) > 0)
    }

    /// Canonical monomial key such as `"z^2 w^1"`.
    pub fn monomial_key(n: usize, alpha: &MultiIndex, j: u8) -> String {
        let vars = map_universe(n);
        let mut parts = Vec::new();
        for v in 0..n {
            if alpha.get(v) > 0 {
                parts.push(format!("{}^{}", vars.name(v), alpha.get(v)));
            }
        }
        if j > 0 {
            parts.push(format!("w^{j}"));
        }
        parts.join(" ")
    }

    fn parse_key(key: &str, n: usize) -> Result<(MultiIndex, u8)> {
        let vars = map_universe(n);
        let mut alpha = MultiIndex::zero(n);
        let mut j = 0u8;
        for part in key.split_whitespace() {
            let (name, exp) = match part.split_once('^') {
                Some((a, b)) => (
                    a,
                    b.parse::<u8>()
                        .map_err(|_| JetError::Decode(format!("bad exponent in {part:?}")))?,
                ),
                None => (part, 1),
            };
            let Some(v) = vars.index_of(name) else {
                return Err(JetError::Decode(format!("unknown variable {name:?}")));
            };
            if v == map::w(n) {
                j = j
                    .checked_add(exp)
                    .ok_or_else(|| JetError::Decode("exponent overflow".into()))?;
            } else {
                alpha.set(v, alpha.get(v) + exp);
            }
        }
        Ok((alpha, j))
    }

    /// `{"order": k, "lambda": {...}, "mu": {...}}` with monomial-string
    /// keys; `lambda` values are per-component arrays, `mu` values are
    /// single complex numbers.  Zero coordinates are omitted.
    pub fn to_json(&self) -> Value {
        let mut lambda = Map::new();
        let mut mu = Map::new();
        for alpha in MultiIndex::all_up_to(self.n, self.order) {
            for j in 0..=(self.order - alpha.degree()) as u8 {
                if alpha.degree() + j as u32 == 0 {
                    continue;
                }
                let key = Self::monomial_key(self.n, &alpha, j);
                let lam: Vec<GRat> = (0..self.n).map(|i| self.lambda(i, &alpha, j)).collect();
                if lam.iter().any(|c| !c.is_zero()) {
                    let vals: Vec<Value> = lam
                        .iter()
                        .map(|c| {
                            let (re, im) = series_core::json::grat_to_json(c);
                            json!({"re": re, "im": im})
                        })
                        .collect();
                    lambda.insert(key.clone(), Value::Array(vals));
                }
                let m = self.mu(&alpha, j);
                if !m.is_zero() {
                    let (re, im) = series_core::json::grat_to_json(&m);
                    mu.insert(key, json!({"re": re, "im": im}));
                }
            }
        }
        json!({
            "order": self.order,
            "lambda": Value::Object(lambda),
            "mu": Value::Object(mu),
        })
    }

    pub fn from_json(v: &Value, n: usize) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| JetError::Decode("jet must be an object".into()))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| JetError::Decode("missing order".into()))? as u32;
        if order == 0 || order > series_core::MAX_DEGREE {
            return Err(JetError::Decode(format!("order {order} out of range")));
        }
        let vars = map_universe(n);
        let mut comps: Vec<Series<GRat>> =
            (0..=n).map(|_| Series::zero(&vars, order)).collect();
        let complex_of = |v: &Value| -> Result<GRat> {
            let o = v
                .as_object()
                .ok_or_else(|| JetError::Decode("coordinate must be {re, im}".into()))?;
            let re = o
                .get("re")
                .ok_or_else(|| JetError::Decode("missing re".into()))?;
            let im = o
                .get("im")
                .ok_or_else(|| JetError::Decode("missing im".into()))?;
            Ok(series_core::json::grat_from_json(re, im)?)
        };
        if let Some(lam) = obj.get("lambda") {
            let lam = lam
                .as_object()
                .ok_or_else(|| JetError::Decode("lambda must be an object".into()))?;
            for (key, val) in lam {
                let (alpha, j) = Self::parse_key(key, n)?;
                if alpha.degree() + j as u32 > order {
                    return Err(JetError::Decode(format!("{key:?} exceeds the order")));
                }
                let arr = val
                    .as_array()
                    .filter(|a| a.len() == n)
                    .ok_or_else(|| {
                        JetError::Decode(format!("lambda[{key:?}] must have {n} entries"))
                    })?;
                let weight = factorial_weight(&alpha, j)
                    .inv()
                    .expect("factorials are nonzero");
                for (i, cv) in arr.iter().enumerate() {
                    let c = complex_of(cv)?.mul(&weight);
                    let mut e = MultiIndex::zero(n + 1);
                    for t in 0..n {
                        e.set(t, alpha.get(t));
                    }
                    e.set(n, j);
                    comps[i] = comps[i].add(&Series::monomial(&vars, order, e, c))?;
                }
            }
        }
        if let Some(mu) = obj.get("mu") {
            let mu = mu
                .as_object()
                .ok_or_else(|| JetError::Decode("mu must be an object".into()))?;
            for (key, val) in mu {
                let (alpha, j) = Self::parse_key(key, n)?;
                if alpha.degree() + j as u32 > order {
                    return Err(JetError::Decode(format!("{key:?} exceeds the order")));
                }
                let weight = factorial_weight(&alpha, j)
                    .inv()
                    .expect("factorials are nonzero");
                let c = complex_of(val)?.mul(&weight);
                let mut e = MultiIndex::zero(n + 1);
                for t in 0..n {
                    e.set(t, alpha.get(t));
                }
                e.set(n, j);
                comps[n] = comps[n].add(&Series::monomial(&vars, order, e, c))?;
            }
        }
        JetGroupElement::new(SeriesTuple::new(comps)?, n)
    }
}

/// Universe shared by jets of dimension `n` (re-exported convenience).
pub fn jet_universe(n: usize) -> Arc<VarSet> {
    map_universe(n)
}
