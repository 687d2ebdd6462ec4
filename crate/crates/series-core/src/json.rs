//! Deterministic JSON encodings for series, polynomials, and fractions.
//!
//! Rational parts are emitted as `[numerator, denominator]` pairs of
//! decimal strings so arbitrary-precision values survive the trip; term
//! lists are emitted in ascending graded-lexicographic order, which makes
//! the encoding byte-stable for equal values.

use crate::coeff::GRat;
use crate::error::{Result, SeriesError};
use crate::multi_index::MultiIndex;
use crate::poly::{Mono, Poly};
use crate::series::{Series, VarSet};
use crate::symfrac::SymFrac;
use num::rational::BigRational;
use num::BigInt;
use num::Zero;
use serde_json::{json, Map, Value};
use std::str::FromStr;

fn rat_pair(r: &BigRational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

fn rat_from_pair(v: &Value) -> Result<BigRational> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| SeriesError::Deserialize("expected [num, den] pair".into()))?;
    let parse = |x: &Value| -> Result<BigInt> {
        let s = x
            .as_str()
            .ok_or_else(|| SeriesError::Deserialize("rational parts must be strings".into()))?;
        BigInt::from_str(s)
            .map_err(|e| SeriesError::Deserialize(format!("bad integer {s:?}: {e}")))
    };
    let num = parse(&arr[0])?;
    let den = parse(&arr[1])?;
    if den.is_zero() {
        return Err(SeriesError::Deserialize("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

pub fn grat_to_json(c: &GRat) -> (Value, Value) {
    (rat_pair(&c.re), rat_pair(&c.im))
}

pub fn grat_from_json(re: &Value, im: &Value) -> Result<GRat> {
    Ok(GRat {
        re: rat_from_pair(re)?,
        im: rat_from_pair(im)?,
    })
}

pub fn series_to_json(s: &Series<GRat>) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| {
            let (re, im) = grat_to_json(c);
            json!({
                "exp": e.exps().iter().map(|&k| k as u64).collect::<Vec<_>>(),
                "re": re,
                "im": im,
            })
        })
        .collect();
    json!({
        "vars": s.vars().names(),
        "degree": s.degree(),
        "terms": terms,
    })
}

pub fn series_from_json(v: &Value) -> Result<Series<GRat>> {
    let obj = v
        .as_object()
        .ok_or_else(|| SeriesError::Deserialize("series must be an object".into()))?;
    let names: Vec<String> = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| SeriesError::Deserialize("missing vars".into()))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| SeriesError::Deserialize("vars must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| SeriesError::Deserialize("missing degree".into()))? as u32;
    let vars = VarSet::new(names);
    let mut out = Series::zero(&vars, degree);
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| SeriesError::Deserialize("missing terms".into()))?;
    for t in terms {
        let exp = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| SeriesError::Deserialize("term missing exp".into()))?;
        if exp.len() != vars.len() {
            return Err(SeriesError::Deserialize("exp length != vars".into()));
        }
        let mut mi = MultiIndex::zero(vars.len());
        for (i, x) in exp.iter().enumerate() {
            let k = x
                .as_u64()
                .filter(|&k| k <= u8::MAX as u64)
                .ok_or_else(|| SeriesError::Deserialize("bad exponent".into()))?;
            mi.set(i, k as u8);
        }
        let c = grat_from_json(
            t.get("re")
                .ok_or_else(|| SeriesError::Deserialize("term missing re".into()))?,
            t.get("im")
                .ok_or_else(|| SeriesError::Deserialize("term missing im".into()))?,
        )?;
        if mi.degree() as u32 > degree {
            return Err(SeriesError::Deserialize("term above truncation degree".into()));
        }
        out = out.add(&Series::monomial(&vars, degree, mi, c))?;
    }
    Ok(out)
}

pub fn poly_to_json(p: &Poly, names: &[String]) -> Value {
    let nvars = names.len();
    let terms: Vec<Value> = p
        .terms
        .iter()
        .map(|(m, c)| {
            let mut exp = vec![0u64; nvars];
            for &(v, k) in &m.0 {
                exp[v as usize] = k as u64;
            }
            let (re, im) = grat_to_json(c);
            json!({"exp": exp, "re": re, "im": im})
        })
        .collect();
    json!({"vars": names, "terms": terms})
}

pub fn poly_from_json(v: &Value, name_index: &dyn Fn(&str) -> Option<u16>) -> Result<Poly> {
    let obj = v
        .as_object()
        .ok_or_else(|| SeriesError::Deserialize("poly must be an object".into()))?;
    let names: Vec<&str> = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| SeriesError::Deserialize("poly missing vars".into()))?
        .iter()
        .map(|x| {
            x.as_str()
                .ok_or_else(|| SeriesError::Deserialize("vars must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let ids: Vec<u16> = names
        .iter()
        .map(|n| {
            name_index(n).ok_or_else(|| SeriesError::Deserialize(format!("unknown symbol {n:?}")))
        })
        .collect::<Result<_>>()?;
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| SeriesError::Deserialize("poly missing terms".into()))?;
    let mut out = Poly::zero();
    for t in terms {
        let exp = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| SeriesError::Deserialize("term missing exp".into()))?;
        if exp.len() != ids.len() {
            return Err(SeriesError::Deserialize("exp length != vars".into()));
        }
        let mut mono = Mono::one();
        for (slot, x) in exp.iter().enumerate() {
            let k = x
                .as_u64()
                .filter(|&k| k <= u8::MAX as u64)
                .ok_or_else(|| SeriesError::Deserialize("bad exponent".into()))?;
            if k > 0 {
                mono = mono.mul(&Mono::power(ids[slot], k as u8));
            }
        }
        let c = grat_from_json(
            t.get("re")
                .ok_or_else(|| SeriesError::Deserialize("term missing re".into()))?,
            t.get("im")
                .ok_or_else(|| SeriesError::Deserialize("term missing im".into()))?,
        )?;
        out = out.add(&Poly { terms: vec![(mono, c)] });
    }
    Ok(out)
}

/// Encode a symbolic-coefficient series; each coefficient carries its
/// numerator and fully expanded denominator as polynomials over the
/// registry's symbol names.
pub fn symfrac_series_to_json(s: &Series<SymFrac>, names: &[String]) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| {
            json!({
                "exp": e.exps().iter().map(|&k| k as u64).collect::<Vec<_>>(),
                "num": poly_to_json(c.numerator(), names),
                "den": poly_to_json(&c.denominator_poly(), names),
            })
        })
        .collect();
    json!({
        "vars": s.vars().names(),
        "degree": s.degree(),
        "terms": terms,
    })
}

/// Canonical compact rendering used everywhere output must be
/// byte-stable: objects come from `serde_json`'s sorted map, so equal
/// values always serialize identically.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

pub fn to_canonical_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Helper for building deterministic objects field by field.
pub fn sorted_object(fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
