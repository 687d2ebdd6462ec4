//! Normal coordinates at a base point.
//!
//! Given a defining function and a point `p ∈ M`, produce holomorphic
//! coordinates centred at `p` in which the complexified surface is the
//! graph `w = Q(z, χ, τ)` with
//!
//! ```text
//! Q(z, 0, τ) ≡ τ   and   Q(0, χ, τ) ≡ τ,
//! ```
//!
//! together with the change of coordinates back to the original chart.
//! The construction is in three moves: solve `ρ = 0` for `w`; straighten
//! the axis curve `q(s) = Q(0, 0, s)` to the identity; then straighten
//! the `χ = 0` slice with a substitution `w = G(z, w′)`.  All three
//! normalization identities are asserted exactly at the working degree —
//! a failure is a bug, not a data condition.

use crate::error::{Result, SurfaceError};
use crate::surface::DefiningFunction;
use crate::universe::{
    full, graph, graph_universe, map, map_universe, restricted, restricted_universe,
};
use series_core::{solve_implicit, Coeff, GRat, MultiIndex, Series, SeriesTuple, VarSet};
use std::sync::Arc;

/// A normalized local description of the surface at a base point.
#[derive(Debug, Clone)]
pub struct NormalForm {
    /// `Q` in the graph universe `[z…, χ…, τ]`: on the complexified
    /// surface, `w = Q(z, χ, τ)` with both normality identities exact.
    pub q: Series<GRat>,
    /// Complex dimension `n` (the surface lives in `ℂ^{n+1}`).
    pub n: usize,
    /// Truncation degree of `q` and of the change of coordinates.
    pub degree: u32,
    /// The original coordinates expressed in the normalized ones, as a
    /// tuple `(z…, w)` over the map universe.  Constant terms carry the
    /// translation by the base point.
    pub change: SeriesTuple<GRat>,
    /// The base point in the original chart, as `(z…, w)`.
    pub base_point: Vec<GRat>,
}

/// Extract the univariate slice of `f` along variable `keep` (all other
/// exponents zero), as a series in the one-variable universe `uni`.
fn axis_slice(f: &Series<GRat>, keep: usize, uni: &Arc<VarSet>) -> Series<GRat> {
    let nvars = f.vars().len();
    let mut out = Series::zero(uni, f.degree());
    for (e, c) in f.terms() {
        if (0..nvars).all(|v| v == keep || e.get(v) == 0) {
            let exp = MultiIndex::from_slice(&[e.get(keep)]);
            out = out
                .add(&Series::monomial(uni, f.degree(), exp, c.clone()))
                .expect("same universe");
        }
    }
    out
}

/// Solve `γ = q ∘ γ̄` for an invertible univariate `γ` with `γ(0) = 0`.
///
/// The order-one equation `γ₁ = q₁·conj(γ₁)` with `|q₁| = 1` has the
/// canonical solution `γ₁ = (1+q₁)/2` (or `i` when `q₁ = −1`).  At each
/// higher order the real-linear map `x ↦ x − q₁·conj(x)` is represented
/// by a symmetric rank-one matrix `M` with `M² = 2M`, so `x = r/2`
/// solves `Lx = r` exactly when a solution exists; consistency is
/// checked and reported per order.
fn straightening_gamma(
    q_uni: &Series<GRat>,
    uni: &Arc<VarSet>,
    degree: u32,
) -> Result<Series<GRat>> {
    let q1 = q_uni.coeff(&MultiIndex::unit(1, 0));
    let one_plus = q1.add(&GRat::one());
    let gamma1 = if one_plus.is_zero() {
        GRat::i()
    } else {
        one_plus.mul(&GRat::rational(1, 2))
    };
    let mut gamma = Series::monomial(uni, degree, MultiIndex::unit(1, 0), gamma1);
    for order in 2..=degree {
        let gamma_bar = gamma.conjugate(&[0], None)?;
        let rhs = q_uni.substitute(&[gamma_bar])?;
        let exp = MultiIndex::from_slice(&[order as u8]);
        let r = rhs.coeff(&exp);
        let x = r.mul(&GRat::rational(1, 2));
        if x.sub(&q1.mul(&x.conj())) != r {
            return Err(SurfaceError::NormalizationInconsistent { order });
        }
        if !x.is_zero() {
            gamma = gamma.add(&Series::monomial(uni, degree, exp, x))?;
        }
    }
    let gamma_bar = gamma.conjugate(&[0], None)?;
    assert_eq!(
        q_uni.substitute(&[gamma_bar])?,
        gamma,
        "axis straightening must satisfy its functional equation exactly"
    );
    Ok(gamma)
}

/// Normal coordinates for `m` at the point `p` (given in the chart `m`
/// was defined in), at truncation `degree`.
pub fn normal_coordinates(
    m: &DefiningFunction,
    p: &[GRat],
    degree: u32,
) -> Result<NormalForm> {
    if degree < 2 {
        return Err(SurfaceError::DegreeTooSmall { degree });
    }
    let n = m.n();
    let recentered = m.recenter(p)?;
    let mut rho = recentered.rho_at(degree);
    let fvars = rho.vars().clone();
    let nv = fvars.len();

    // Make sure ρ solves for w: if ∂ρ/∂w(0) = 0, exchange w with some z_j
    // whose linear coefficient survives (χ_j and τ ride along so the
    // reality structure is preserved).
    let lin = |s: &Series<GRat>, v: usize| s.coeff(&MultiIndex::unit(nv, v));
    let mut swapped: Option<usize> = None;
    if lin(&rho, full::w(n)).is_zero() {
        let j = (0..n)
            .find(|&j| !lin(&rho, full::z(n, j)).is_zero())
            .ok_or(SurfaceError::DegenerateGradient)?;
        let images: Vec<Series<GRat>> = (0..nv)
            .map(|v| {
                let tgt = if v == full::z(n, j) {
                    full::w(n)
                } else if v == full::w(n) {
                    full::z(n, j)
                } else if v == full::chi(n, j) {
                    full::tau(n)
                } else if v == full::tau(n) {
                    full::chi(n, j)
                } else {
                    v
                };
                Series::var(&fvars, degree, tgt)
            })
            .collect::<series_core::Result<_>>()?;
        rho = rho.substitute(&images)?;
        swapped = Some(j);
    }

    // Solve ρ(z, w, χ, τ) = 0 for w.  Reorder to [z…, χ…, τ | w].
    let gvars = graph_universe(n);
    let mut perm = vec![0usize; nv];
    for k in 0..n {
        perm[full::z(n, k)] = graph::z(n, k);
        perm[full::chi(n, k)] = graph::chi(n, k);
    }
    perm[full::tau(n)] = graph::tau(n);
    perm[full::w(n)] = 2 * n + 1;
    let mut solve_names: Vec<String> = vec![String::new(); nv];
    for v in 0..nv {
        solve_names[perm[v]] = fvars.name(v).to_string();
    }
    let solve_vars = VarSet::new(solve_names);
    let reordered = rho.embedded(&solve_vars, &perm)?;
    let solved = solve_implicit(&SeriesTuple::new(vec![reordered])?, 2 * n + 1)?;
    let mut q = solved.components.into_iter().next().unwrap().rebased(&gvars)?;

    // Straighten the axis curve q(s) = Q(0, 0, s) to the identity.
    let uni = VarSet::new(vec!["s"]);
    let s_var = Series::var(&uni, degree, 0)?;
    let q_axis = axis_slice(&q, graph::tau(n), &uni);
    let gamma = if q_axis == s_var {
        None
    } else {
        let q_axis_bar = q_axis.conjugate(&[0], None)?;
        assert_eq!(
            q_axis.substitute(&[q_axis_bar])?,
            s_var,
            "the axis curve must be an involution composed with conjugation"
        );
        let g = straightening_gamma(&q_axis, &uni, degree)?;

        // γ⁻¹ via the implicit function theorem on γ(u) − s = 0.
        let su = VarSet::new(vec!["s", "u"]);
        let eq = g
            .embedded(&su, &[1])?
            .sub(&Series::var(&su, degree, 0)?)?;
        let gamma_inv = solve_implicit(&SeriesTuple::new(vec![eq])?, 1)?
            .components
            .into_iter()
            .next()
            .unwrap()
            .rebased(&uni)?;

        // New graph: Q ← γ⁻¹(Q(z, χ, γ̄(τ))).
        let g_bar_tau = g
            .conjugate(&[0], None)?
            .embedded(&gvars, &[graph::tau(n)])?;
        let mut images: Vec<Series<GRat>> = (0..2 * n + 1)
            .map(|v| Series::var(&gvars, degree, v))
            .collect::<series_core::Result<_>>()?;
        images[graph::tau(n)] = g_bar_tau;
        q = gamma_inv.substitute(&[q.substitute(&images)?])?;
        Some(g)
    };

    // Straighten the χ = 0 slice: with G(z, s) = Q(z, 0, s), substitute
    // w = G(z, w′) and τ = Ḡ(χ, τ′), i.e. Q ← H(z, Q(z, χ, Ḡ(χ, τ)))
    // where H inverts G in its last slot.
    let zero_chi: Vec<Series<GRat>> = (0..2 * n + 1)
        .map(|v| {
            if (graph::chi(n, 0)..graph::chi(n, 0) + n).contains(&v) {
                Ok(Series::zero(&gvars, degree))
            } else {
                Series::var(&gvars, degree, v)
            }
        })
        .collect::<series_core::Result<_>>()?;
    let g_slice = q.substitute(&zero_chi)?; // G(z, τ): χ-free by construction

    // H: solve G(z, u) = τ for u over the parameters [z…, χ…, τ].
    let mut h_names: Vec<String> = gvars.names().to_vec();
    h_names.push("u".to_string());
    let h_vars = VarSet::new(h_names);
    let mut to_u: Vec<Series<GRat>> = (0..2 * n + 1)
        .map(|v| Series::var(&h_vars, degree, v))
        .collect::<series_core::Result<_>>()?;
    to_u[graph::tau(n)] = Series::var(&h_vars, degree, 2 * n + 1)?;
    let h_eq = g_slice
        .substitute(&to_u)?
        .sub(&Series::var(&h_vars, degree, graph::tau(n))?)?;
    let h = solve_implicit(&SeriesTuple::new(vec![h_eq])?, 2 * n + 1)?
        .components
        .into_iter()
        .next()
        .unwrap()
        .rebased(&gvars)?;

    let g_bar = g_slice.conjugate(&graph::conj_perm(n), None)?; // Ḡ(χ, τ)
    let mut inner_images: Vec<Series<GRat>> = (0..2 * n + 1)
        .map(|v| Series::var(&gvars, degree, v))
        .collect::<series_core::Result<_>>()?;
    inner_images[graph::tau(n)] = g_bar;
    let q_mid = q.substitute(&inner_images)?; // Q(z, χ, Ḡ(χ, τ))
    let mut outer_images: Vec<Series<GRat>> = (0..2 * n + 1)
        .map(|v| Series::var(&gvars, degree, v))
        .collect::<series_core::Result<_>>()?;
    outer_images[graph::tau(n)] = q_mid;
    let q_final = h.substitute(&outer_images)?;

    // Normality identities, asserted exactly.
    let tau_var = Series::var(&gvars, degree, graph::tau(n))?;
    let chi_to_zero: Vec<Series<GRat>> = (0..2 * n + 1)
        .map(|v| {
            if (n..2 * n).contains(&v) {
                Ok(Series::zero(&gvars, degree))
            } else {
                Series::var(&gvars, degree, v)
            }
        })
        .collect::<series_core::Result<_>>()?;
    assert_eq!(
        q_final.substitute(&chi_to_zero)?,
        tau_var,
        "Q(z, 0, τ) must be τ exactly"
    );
    let z_to_zero: Vec<Series<GRat>> = (0..2 * n + 1)
        .map(|v| {
            if v < n {
                Ok(Series::zero(&gvars, degree))
            } else {
                Series::var(&gvars, degree, v)
            }
        })
        .collect::<series_core::Result<_>>()?;
    assert_eq!(
        q_final.substitute(&z_to_zero)?,
        tau_var,
        "Q(0, χ, τ) must be τ exactly"
    );

    // Involution: w ≡ Q(z, χ, Q̄(χ, z, w)) over [z…, w, χ…].
    let rvars = restricted_universe(n);
    let q_conj = q_final.conjugate(&graph::conj_perm(n), None)?;
    let mut to_restricted: Vec<Series<GRat>> = Vec::with_capacity(2 * n + 1);
    for k in 0..n {
        to_restricted.push(Series::var(&rvars, degree, restricted::z(n, k))?);
    }
    for k in 0..n {
        to_restricted.push(Series::var(&rvars, degree, restricted::chi(n, k))?);
    }
    to_restricted.push(Series::var(&rvars, degree, restricted::w(n))?);
    let inner_r = q_conj.substitute(&to_restricted)?;
    let mut outer_r = to_restricted;
    outer_r[graph::tau(n)] = inner_r;
    assert_eq!(
        q_final.substitute(&outer_r)?,
        Series::var(&rvars, degree, restricted::w(n))?,
        "the graph substitution must be an involution"
    );

    // Assemble the change of coordinates: normalized → original.
    let mvars = map_universe(n);
    let mut g_map_images: Vec<Series<GRat>> = Vec::with_capacity(2 * n + 1);
    for k in 0..n {
        g_map_images.push(Series::var(&mvars, degree, map::z(n, k))?);
    }
    for _ in 0..n {
        g_map_images.push(Series::zero(&mvars, degree));
    }
    g_map_images.push(Series::var(&mvars, degree, map::w(n))?);
    let g_on_map = g_slice.substitute(&g_map_images)?; // w ↦ G(z, w)
    let mut comps: Vec<Series<GRat>> = (0..n)
        .map(|k| Series::var(&mvars, degree, map::z(n, k)))
        .collect::<series_core::Result<_>>()?;
    comps.push(g_on_map);
    if let Some(gamma) = &gamma {
        let gamma_w = gamma.embedded(&mvars, &[map::w(n)])?;
        let mut a_comps: Vec<Series<GRat>> = (0..n)
            .map(|k| Series::var(&mvars, degree, map::z(n, k)))
            .collect::<series_core::Result<_>>()?;
        a_comps.push(gamma_w);
        let b_tuple = comps.clone();
        comps = a_comps
            .into_iter()
            .map(|c| c.substitute(&b_tuple))
            .collect::<series_core::Result<_>>()?;
    }
    if let Some(j) = swapped {
        comps.swap(map::z(n, j), map::w(n));
    }
    for (k, c) in comps.iter_mut().enumerate() {
        *c = c.add_constant(&p[k]);
    }
    let change = SeriesTuple::new(comps)?;

    Ok(NormalForm {
        q: q_final,
        n,
        degree,
        change,
        base_point: p.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(eq: &str, d: u32) -> NormalForm {
        let m = DefiningFunction::parse(eq, d).unwrap();
        let p = vec![GRat::zero(); m.n() + 1];
        normal_coordinates(&m, &p, d).unwrap()
    }

    #[test]
    fn sphere_graph_is_the_model() {
        let f = nf("Im w = |z|^2", 6);
        // w = τ + 2izχ.
        let gvars = graph_universe(1);
        let tau = Series::var(&gvars, 6, 2).unwrap();
        let z = Series::var(&gvars, 6, 0).unwrap();
        let chi = Series::var(&gvars, 6, 1).unwrap();
        let two_i = GRat::i().add(&GRat::i());
        let expect = tau.add(&z.mul(&chi).unwrap().scale(&two_i)).unwrap();
        assert_eq!(f.q, expect);
    }

    #[test]
    fn already_normal_input_is_returned_unchanged() {
        // Im w = |z|² + Re(z²·conj(z)) gives Q = τ + 2izχ + i z²χ + i zχ².
        let f = nf("Im w = |z|^2 + Re(z^2*conj(z))", 6);
        let gvars = graph_universe(1);
        let d = 6;
        let tau = Series::var(&gvars, d, 2).unwrap();
        let z = Series::var(&gvars, d, 0).unwrap();
        let chi = Series::var(&gvars, d, 1).unwrap();
        let i = GRat::i();
        let zx = z.mul(&chi).unwrap();
        let expect = tau
            .add(&zx.scale(&i.add(&i)))
            .unwrap()
            .add(&z.mul(&zx).unwrap().scale(&i))
            .unwrap()
            .add(&chi.mul(&zx).unwrap().scale(&i))
            .unwrap();
        assert_eq!(f.q, expect);
    }

    #[test]
    fn degenerate_gradient_is_reported() {
        let m = DefiningFunction::parse("rho = z*conj(z)", 4).unwrap();
        let p = vec![GRat::zero(), GRat::zero()];
        assert_eq!(
            normal_coordinates(&m, &p, 4).unwrap_err(),
            SurfaceError::DegenerateGradient
        );
    }
}
