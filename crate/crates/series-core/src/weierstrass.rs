//! Division with remainder against a distinguished-variable-regular
//! divisor, plus the linear change that restores regularity.

use crate::coeff::Coeff;
use crate::error::{Result, SeriesError};
use crate::multi_index::MultiIndex;
use crate::series::{Series, VarSet};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Order of vanishing of `f` restricted to the `z1` axis (all other
/// variables set to zero); errors when the restriction vanishes at the
/// truncation, i.e. `f` is not `z1`-regular as far as can be seen.
pub fn axis_order<C: Coeff>(f: &Series<C>, z1: usize) -> Result<u32> {
    f.terms()
        .filter(|(e, _)| {
            (0..e.len()).all(|v| v == z1 || e.get(v) == 0)
        })
        .map(|(e, _)| e.get(z1) as u32)
        .min()
        .ok_or(SeriesError::NotRegular)
}

fn profile_key(e: &MultiIndex, z1: usize) -> MultiIndex {
    let mut k = e.clone();
    k.set(z1, 0);
    k
}

/// Group a series into per-monomial `z1` profiles: key = exponent with
/// the `z1` slot zeroed, value\[p\] = coefficient of key·z1^p.
fn profiles<C: Coeff>(f: &Series<C>, z1: usize) -> BTreeMap<MultiIndex, Vec<C>> {
    let d = f.degree() as usize;
    let mut out: BTreeMap<MultiIndex, Vec<C>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let key = profile_key(e, z1);
        let p = e.get(z1) as usize;
        let row = out.entry(key).or_insert_with(|| vec![C::zero(); d + 1]);
        row[p] = c.clone();
    }
    out
}

/// Invert a univariate unit profile to `len` coefficients.
fn invert_profile<C: Coeff>(u: &[C], len: usize) -> Result<Vec<C>> {
    let u0 = u[0].inv().map_err(|_| SeriesError::NonUnitConstant)?;
    let mut inv = vec![C::zero(); len];
    inv[0] = u0.clone();
    for t in 1..len {
        let mut acc = C::zero();
        for s in 1..=t {
            let us = u.get(s).cloned().unwrap_or_else(C::zero);
            acc = acc.add(&us.mul(&inv[t - s]));
        }
        inv[t] = u0.neg().mul(&acc);
    }
    Ok(inv)
}

/// Quotient and remainder of `f` against `b^j`, dividing along `z1`.
///
/// `b` must be `z1`-regular; with `κ` its axis order, `K = j·κ`.  The
/// result satisfies `f = Q·b^j + r` with every remainder term of
/// `z1`-degree below `K`.  The quotient's part of outer degree `m` is
/// determined up to `z1`-degree `D − m − K`; whenever the exact quotient
/// is a polynomial within those bounds — the regime the callers arrange —
/// the identity is exact at the full truncation.
pub fn weierstrass_divide<C: Coeff>(
    f: &Series<C>,
    b: &Series<C>,
    j: u32,
    z1: usize,
) -> Result<(Series<C>, Series<C>)> {
    f.compat(b)?;
    let vars = f.vars().clone();
    let d = f.degree();
    if j == 0 {
        return Ok((f.clone(), Series::zero(&vars, d)));
    }
    let kappa = axis_order(b, z1)?;
    let k = (j * kappa) as usize;
    if k > d as usize {
        return Err(SeriesError::DegreeUnderflow);
    }
    // p = b^j at the working truncation.
    let mut p = b.clone();
    for _ in 1..j {
        p = p.mul(b)?;
    }
    let p_groups = profiles(&p, z1);
    let axis_key = MultiIndex::zero(vars.len());
    let axis = p_groups
        .get(&axis_key)
        .ok_or(SeriesError::NotRegular)?;
    // axis = z1^K·u with u a unit.
    let unit: Vec<C> = axis[k..].to_vec();
    let uinv = invert_profile(&unit, d as usize + 1)?;

    let f_groups = profiles(f, z1);
    // Every outer monomial that can carry quotient or remainder data.
    let keys = MultiIndex::all_up_to(vars.len(), d)
        .into_iter()
        .filter(|e| e.get(z1) == 0)
        .collect::<Vec<_>>();
    let mut q_groups: BTreeMap<MultiIndex, Vec<C>> = BTreeMap::new();
    let mut quotient = Series::zero(&vars, d);
    let mut remainder = Series::zero(&vars, d);
    // Ascending outer degree: corrections only ever flow upward.
    let mut ordered = keys;
    ordered.sort_by_key(|e| e.degree());
    for gamma in ordered {
        let gdeg = gamma.degree() as usize;
        let width = d as usize + 1 - gdeg;
        let mut g: Vec<C> = vec![C::zero(); width];
        if let Some(row) = f_groups.get(&gamma) {
            for (t, c) in row.iter().enumerate().take(width) {
                g[t] = c.clone();
            }
        }
        // Subtract the contributions Q_α·P_β with α+β = γ, β ≠ 0.
        for (beta, prow) in &p_groups {
            if beta.is_zero() {
                continue;
            }
            let Some(alpha) = gamma.checked_sub(beta) else {
                continue;
            };
            let Some(qrow) = q_groups.get(&alpha) else {
                continue;
            };
            for (t1, qc) in qrow.iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                for (t2, pc) in prow.iter().enumerate() {
                    let t = t1 + t2;
                    if t >= width {
                        break;
                    }
                    if pc.is_zero() {
                        continue;
                    }
                    g[t] = g[t].sub(&qc.mul(pc));
                }
            }
        }
        // Remainder: the profile below z1^K.
        for (t, c) in g.iter().enumerate().take(k.min(width)) {
            if !c.is_zero() {
                let mut e = gamma.clone();
                e.set(z1, t as u8);
                remainder = remainder.add(&Series::monomial(&vars, d, e, c.clone()))?;
            }
        }
        if width <= k {
            continue;
        }
        // Quotient profile: (g div z1^K)·u⁻¹, kept where determined.
        let high = &g[k..];
        let qlen = width - k;
        let mut qrow = vec![C::zero(); qlen];
        for t in 0..qlen {
            let mut acc = C::zero();
            for s in 0..=t {
                if high[s].is_zero() {
                    continue;
                }
                acc = acc.add(&high[s].mul(&uinv[t - s]));
            }
            if !acc.is_zero() {
                let mut e = gamma.clone();
                e.set(z1, t as u8);
                quotient = quotient.add(&Series::monomial(&vars, d, e, acc.clone()))?;
            }
            qrow[t] = acc;
        }
        q_groups.insert(gamma, qrow);
    }
    Ok((quotient, remainder))
}

/// A linear shear `z_j ↦ z_j + c_j·z1` (identity on `z1`) that makes a
/// series `z1`-regular, together with its inverse.
pub struct RegularChange<C: Coeff> {
    pub forward: Vec<Series<C>>,
    pub inverse: Vec<Series<C>>,
    pub transformed: Series<C>,
}

/// Find an integer shear making `f` regular in variable `z1`.
///
/// The lowest homogeneous part of a nonzero series cannot vanish on the
/// whole integer grid `{0..d0}^(n−1)` along the sheared axis, so a small
/// search always succeeds.
pub fn regularize<C: Coeff>(f: &Series<C>, z1: usize) -> Result<RegularChange<C>> {
    let vars: Arc<VarSet> = f.vars().clone();
    let n = vars.len();
    let d = f.degree();
    let identity: Vec<Series<C>> = (0..n)
        .map(|v| Series::var(&vars, d, v))
        .collect::<Result<Vec<_>>>()?;
    if f.is_zero() {
        return Err(SeriesError::ZeroSeries);
    }
    if axis_order(f, z1).is_ok() {
        return Ok(RegularChange {
            forward: identity.clone(),
            inverse: identity,
            transformed: f.clone(),
        });
    }
    let d0 = f.order().expect("nonzero series has an order");
    let others: Vec<usize> = (0..n).filter(|&v| v != z1).collect();
    // Lowest homogeneous part, evaluated on the sheared axis
    // z1 = 1, z_j = c_j: a nonzero polynomial of degree ≤ d0 per c_j.
    let lowest: Vec<(MultiIndex, C)> = f
        .terms()
        .filter(|(e, _)| e.degree() == d0)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    let grid = (d0 + 1) as i64;
    let mut choices = vec![0i64; others.len()];
    loop {
        let mut value = C::zero();
        for (e, c) in &lowest {
            let mut term = c.clone();
            for (slot, &v) in others.iter().enumerate() {
                for _ in 0..e.get(v) {
                    term = term.mul(&C::from_int(choices[slot]));
                }
            }
            value = value.add(&term);
        }
        if !value.is_zero() {
            break;
        }
        // Advance the mixed-radix counter.
        let mut slot = 0;
        loop {
            if slot == choices.len() {
                return Err(SeriesError::NotRegular);
            }
            choices[slot] += 1;
            if choices[slot] < grid {
                break;
            }
            choices[slot] = 0;
            slot += 1;
        }
    }
    let z1_series = Series::var(&vars, d, z1)?;
    let mut forward = identity.clone();
    let mut inverse = identity;
    for (slot, &v) in others.iter().enumerate() {
        let shift = z1_series.scale(&C::from_int(choices[slot]));
        forward[v] = forward[v].add(&shift)?;
        inverse[v] = inverse[v].sub(&shift)?;
    }
    let transformed = f.substitute(&forward)?;
    debug_assert!(axis_order(&transformed, z1).is_ok());
    Ok(RegularChange {
        forward,
        inverse,
        transformed,
    })
}

/// A formal quotient `num / den^pole` against a distinguished non-unit
/// denominator, compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct MeromorphicElement<C: Coeff> {
    pub num: Series<C>,
    pub pole: u32,
}

impl<C: Coeff> MeromorphicElement<C> {
    pub fn from_series(num: Series<C>) -> Self {
        MeromorphicElement { num, pole: 0 }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(MeromorphicElement {
            num: self.num.mul(&other.num)?,
            pole: self.pole + other.pole,
        })
    }

    pub fn add(&self, other: &Self, den: &Series<C>) -> Result<Self> {
        let pole = self.pole.max(other.pole);
        let lift = |e: &Self| -> Result<Series<C>> {
            let mut v = e.num.clone();
            for _ in e.pole..pole {
                v = v.mul(den)?;
            }
            Ok(v)
        };
        Ok(MeromorphicElement {
            num: lift(self)?.add(&lift(other)?)?,
            pole,
        })
    }

    pub fn equals(&self, other: &Self, den: &Series<C>) -> Result<bool> {
        let pole = self.pole.max(other.pole);
        let lift = |e: &Self| -> Result<Series<C>> {
            let mut v = e.num.clone();
            for _ in e.pole..pole {
                v = v.mul(den)?;
            }
            Ok(v)
        };
        Ok(lift(self)? == lift(other)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GRat;

    fn zvars() -> Arc<VarSet> {
        VarSet::new(vec!["z1", "z2"])
    }

    fn sv(v: &Arc<VarSet>, d: u32, i: usize) -> Series<GRat> {
        Series::var(v, d, i).unwrap()
    }

    #[test]
    fn axis_order_reads_the_axis_only() {
        let v = zvars();
        let d = 6;
        let z1 = sv(&v, d, 0);
        let z2 = sv(&v, d, 1);
        // z1³ + z2: axis order 3.
        let f = z1
            .mul(&z1)
            .unwrap()
            .mul(&z1)
            .unwrap()
            .add(&z2)
            .unwrap();
        assert_eq!(axis_order(&f, 0).unwrap(), 3);
        assert_eq!(axis_order(&z2, 0), Err(SeriesError::NotRegular));
    }

    #[test]
    fn division_recovers_engineered_quotient() {
        // b = z1² + z2³ (axis order 2); f = q·b + r with
        // q = 1 + z1·z2 and r = z2·z1 + z2².
        let v = zvars();
        let d = 8;
        let z1 = sv(&v, d, 0);
        let z2 = sv(&v, d, 1);
        let b = z1
            .mul(&z1)
            .unwrap()
            .add(&z2.mul(&z2).unwrap().mul(&z2).unwrap())
            .unwrap();
        let q0 = Series::one(&v, d).add(&z1.mul(&z2).unwrap()).unwrap();
        let r0 = z2.mul(&z1).unwrap().add(&z2.mul(&z2).unwrap()).unwrap();
        let f = q0.mul(&b).unwrap().add(&r0).unwrap();
        let (q, r) = weierstrass_divide(&f, &b, 1, 0).unwrap();
        assert_eq!(r, r0);
        // The true quotient is a polynomial well inside the determined
        // region, so it is recovered on the nose.
        assert_eq!(q.truncated(d - 2), q0.truncated(d - 2));
        let recon = q.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(recon.truncated(d - 2), f.truncated(d - 2));
    }

    #[test]
    fn pure_power_divisor() {
        // b with axis order 1, j = 2 ⇒ K = 2; f = z1³ gives Q = z1, r = 0
        // when b = z1.
        let v = zvars();
        let d = 6;
        let z1 = sv(&v, d, 0);
        let f = z1.mul(&z1).unwrap().mul(&z1).unwrap();
        let (q, r) = weierstrass_divide(&f, &z1, 2, 0).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.truncated(d - 2), z1.truncated(d - 2));
    }

    #[test]
    fn remainder_stays_below_the_bar() {
        let v = zvars();
        let d = 7;
        let z1 = sv(&v, d, 0);
        let z2 = sv(&v, d, 1);
        let b = z1.mul(&z1).unwrap().add(&z2).unwrap();
        let f = z1
            .mul(&z1)
            .unwrap()
            .mul(&z2)
            .unwrap()
            .add(&z1.mul(&z2).unwrap())
            .unwrap();
        let (q, r) = weierstrass_divide(&f, &b, 1, 0).unwrap();
        assert!(r.max_exp(0) < 2, "remainder r = {} has z1-degree ≥ K", r.display());
        let recon = q.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(recon.truncated(d - 2), f.truncated(d - 2));
    }

    #[test]
    fn shear_regularizes_a_mixed_term() {
        // z1·z2 is not z1-regular; the shear z2 ↦ z2 + c·z1 fixes it.
        let v = zvars();
        let d = 5;
        let z1 = sv(&v, d, 0);
        let z2 = sv(&v, d, 1);
        let f = z1.mul(&z2).unwrap();
        let ch = regularize::<GRat>(&f, 0).unwrap();
        assert_eq!(axis_order(&ch.transformed, 0).unwrap(), 2);
        // Forward then inverse is the identity substitution.
        let round = ch.transformed.substitute(&ch.inverse).unwrap();
        assert_eq!(round, f);
    }

    #[test]
    fn meromorphic_cross_equality() {
        // z1/den == z1·den/den² for any den.
        let v = zvars();
        let d = 6;
        let z1 = sv(&v, d, 0);
        let den = z1.add(&sv(&v, d, 1)).unwrap();
        let a = MeromorphicElement { num: z1.clone(), pole: 1 };
        let b = MeromorphicElement {
            num: z1.mul(&den).unwrap(),
            pole: 2,
        };
        assert!(a.equals(&b, &den).unwrap());
    }
}
