//! Functions on the complexified surface.
//!
//! The complexification is the graph `τ = Q̄(χ, z, w)`, so a function of
//! `(z, w, χ, τ)` restricts to one of `(z, w, χ)` by substituting the
//! graph.  In this representation the tangential antiholomorphic fields
//! reduce to the plain partials `∂/∂χ_j` — the whole point of
//! eliminating `τ`.

use crate::error::Result;
use hypersurface::universe::{graph, restricted, restricted_universe};
use series_core::{Coeff, GRat, Series, SeriesTuple};

/// `Q̄(χ, z, w)` as a series over the restricted universe `[z…, w, χ…]`:
/// conjugate the coefficients of the graph `Q(z, χ, τ)` and let the
/// `z`/`χ` exponent blocks trade places while `τ` becomes `w`.
pub fn qbar_restricted(q: &Series<GRat>, n: usize) -> Result<Series<GRat>> {
    let rvars = restricted_universe(n);
    let conj = q.conjugate(&graph::conj_perm(n), None)?;
    // conj holds: z-exponent block = Q̄'s second slot, χ block = first
    // slot, τ = third; embed into [z…, w, χ…].
    let mut map = vec![0usize; 2 * n + 1];
    for k in 0..n {
        map[graph::z(n, k)] = restricted::z(n, k);
        map[graph::chi(n, k)] = restricted::chi(n, k);
    }
    map[graph::tau(n)] = restricted::w(n);
    Ok(conj.embedded(&rvars, &map)?)
}

/// Restrict a function of `(z, w, χ, τ)` to the surface by substituting
/// `τ = Q̄(χ, z, w)`.
pub fn restrict_full<C: Coeff>(
    f: &Series<C>,
    qbar: &Series<C>,
    n: usize,
) -> Result<Series<C>> {
    let rvars = restricted_universe(n);
    let d = f.degree();
    let mut images: Vec<Series<C>> = Vec::with_capacity(2 * n + 2);
    for k in 0..n {
        images.push(Series::var(&rvars, d, restricted::z(n, k))?);
    }
    images.push(Series::var(&rvars, d, restricted::w(n))?);
    for k in 0..n {
        images.push(Series::var(&rvars, d, restricted::chi(n, k))?);
    }
    images.push(qbar.clone());
    debug_assert_eq!(images.len(), f.vars().len());
    Ok(f.substitute(&images)?)
}

/// The restriction `H̄^R = H̄(χ, Q̄(χ, z, w))` of a conjugated map: each
/// component of `bar_map` (map universe, conjugated coefficients) is
/// evaluated at `z ← χ`, `w ← Q̄(χ, z, w)`.
pub fn restrict_map<C: Coeff>(
    bar_map: &SeriesTuple<C>,
    qbar: &Series<C>,
    n: usize,
) -> Result<SeriesTuple<C>> {
    let rvars = restricted_universe(n);
    let d = qbar.degree();
    let mut images: Vec<Series<C>> = Vec::with_capacity(n + 1);
    for k in 0..n {
        images.push(Series::var(&rvars, d, restricted::chi(n, k))?);
    }
    images.push(qbar.clone());
    Ok(bar_map.substitute(&images)?)
}
