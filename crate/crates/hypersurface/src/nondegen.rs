//! Finite nondegeneracy of a normalized graph.
//!
//! From `w = Q(z, χ, τ)` form the conjugate graph function
//! `Q̄(χ, z, w)` (conjugate coefficients, blocks exchanged) and read off
//! the vectors
//!
//! ```text
//! c_α = ( ∂_{χ^α} ∂_{z_k} Q̄ |₀ )_{k=1..n} ∈ ℂⁿ,   1 ≤ |α|.
//! ```
//!
//! The surface is finitely nondegenerate at the base point when these
//! vectors span `ℂⁿ`; the smallest order that achieves the span is the
//! invariant `k₀`.  The witness is chosen canonically: multi-indices are
//! scanned in ascending graded-lexicographic order and kept greedily
//! whenever they enlarge the span, which makes the selected set the
//! glex-minimal basis (matroid greedy) and the report reproducible.

use num::BigRational;
use series_core::{Coeff, GRat, MultiIndex, Series};

/// A successful witness: the surface is `k0`-nondegenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct NondegeneracyReport {
    /// Smallest order at which the span fills out.
    pub k0: u32,
    /// The selected multi-indices `α¹, …, αⁿ` (over the `z`-block), in
    /// ascending graded-lex order; `k0 = max |αʲ|`.
    pub witness: Vec<MultiIndex>,
    /// Determinant of the `n×n` matrix with rows `c_{αʲ}` — nonzero by
    /// construction, and the denominator bound for everything downstream.
    pub minor: GRat,
}

/// Outcome of the span search up to a finite order.
#[derive(Debug, Clone, PartialEq)]
pub enum Nondegeneracy {
    Finite(NondegeneracyReport),
    /// The vectors up to order `k_max` span a proper subspace; the
    /// surface is degenerate to that order (it may or may not be
    /// finitely nondegenerate at higher truncation).
    DegenerateToOrder(u32),
}

/// `c_α` read straight off the graph coefficients:
/// `∂_{χ^α}∂_{z_k}Q̄|₀ = α! · conj(coefficient of z^α χ_k in Q)`.
fn vector_for(q: &Series<GRat>, n: usize, alpha: &MultiIndex) -> Vec<GRat> {
    let factorial: BigRational = {
        let mut f = BigRational::from_integer(1.into());
        for v in 0..n {
            for j in 1..=alpha.get(v) as u64 {
                f *= BigRational::from_integer(j.into());
            }
        }
        f
    };
    let fac = GRat {
        re: factorial,
        im: BigRational::from_integer(0.into()),
    };
    (0..n)
        .map(|k| {
            let mut exp = MultiIndex::zero(2 * n + 1);
            for v in 0..n {
                exp.set(v, alpha.get(v));
            }
            exp.set(n + k, 1);
            q.coeff(&exp).conj().mul(&fac)
        })
        .collect()
}

/// Reduce `v` against the echelon rows in `basis`; returns the residue.
fn reduce(v: &mut [GRat], basis: &[(usize, Vec<GRat>)]) {
    for (pivot, row) in basis {
        if v[*pivot].is_zero() {
            continue;
        }
        let factor = v[*pivot]
            .mul(&row[*pivot].inv().expect("pivot entries are nonzero"));
        for (x, r) in v.iter_mut().zip(row) {
            *x = x.sub(&factor.mul(r));
        }
    }
}

fn determinant(rows: &[Vec<GRat>]) -> GRat {
    let n = rows.len();
    let mut m: Vec<Vec<GRat>> = rows.to_vec();
    let mut det = GRat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return GRat::zero();
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let pivot = m[col][col].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..n {
                let sub = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&sub);
            }
        }
    }
    det
}

/// Span search on a normalized graph `q` (graph universe, dimension `n`),
/// scanning orders `1 ..= k_max`.
pub fn nondegeneracy(q: &Series<GRat>, n: usize, k_max: u32) -> Nondegeneracy {
    let mut alphas: Vec<MultiIndex> = MultiIndex::all_up_to(n, k_max)
        .into_iter()
        .filter(|a| a.degree() >= 1)
        .collect();
    alphas.sort();

    let mut selected: Vec<(MultiIndex, Vec<GRat>)> = Vec::new();
    let mut basis: Vec<(usize, Vec<GRat>)> = Vec::new();
    for alpha in alphas {
        let vector = vector_for(q, n, &alpha);
        let mut residue = vector.clone();
        reduce(&mut residue, &basis);
        if let Some(pivot) = residue.iter().position(|c| !c.is_zero()) {
            basis.push((pivot, residue));
            selected.push((alpha, vector));
            if selected.len() == n {
                break;
            }
        }
    }
    if selected.len() < n {
        return Nondegeneracy::DegenerateToOrder(k_max);
    }
    let k0 = selected.iter().map(|(a, _)| a.degree()).max().unwrap();
    let rows: Vec<Vec<GRat>> = selected.iter().map(|(_, v)| v.clone()).collect();
    let minor = determinant(&rows);
    debug_assert!(!minor.is_zero());
    Nondegeneracy::Finite(NondegeneracyReport {
        k0,
        witness: selected.into_iter().map(|(a, _)| a).collect(),
        minor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::normal_coordinates;
    use crate::surface::DefiningFunction;

    fn graph_of(eq: &str, d: u32) -> (Series<GRat>, usize) {
        let m = DefiningFunction::parse(eq, d).unwrap();
        let p = vec![GRat::zero(); m.n() + 1];
        let f = normal_coordinates(&m, &p, d).unwrap();
        (f.q, f.n)
    }

    #[test]
    fn sphere_is_one_nondegenerate() {
        let (q, n) = graph_of("Im w = |z|^2", 6);
        let r = match nondegeneracy(&q, n, 5) {
            Nondegeneracy::Finite(r) => r,
            other => panic!("expected finite nondegeneracy, got {other:?}"),
        };
        assert_eq!(r.k0, 1);
        assert_eq!(r.witness, vec![MultiIndex::from_slice(&[1])]);
        let minus_two_i = GRat::i().add(&GRat::i()).neg();
        assert_eq!(r.minor, minus_two_i);
    }

    #[test]
    fn hyperplane_is_degenerate() {
        let (q, n) = graph_of("Im w = 0", 4);
        assert_eq!(nondegeneracy(&q, n, 3), Nondegeneracy::DegenerateToOrder(3));
    }

    #[test]
    fn higher_order_witness_is_found() {
        // Q = τ + i z²χ + i zχ²: the order-one vector vanishes, the
        // order-two one does not.
        let (q, n) = graph_of("Im w = Re(z^2*conj(z))", 8);
        let r = match nondegeneracy(&q, n, 7) {
            Nondegeneracy::Finite(r) => r,
            other => panic!("expected finite nondegeneracy, got {other:?}"),
        };
        assert_eq!(r.k0, 2);
        assert_eq!(r.witness, vec![MultiIndex::from_slice(&[2])]);
        assert_eq!(r.minor, GRat::i().add(&GRat::i()).neg());
    }
}
