//! Canonical variable universes shared by every stage of the pipeline.
//!
//! One complex dimension `n` fixes four universes:
//!
//! * the full universe `[z₁..zₙ, w, χ₁..χₙ, τ]` of a defining function,
//! * the graph universe `[z₁..zₙ, χ₁..χₙ, τ]` of its solved form,
//! * the restricted universe `[z₁..zₙ, w, χ₁..χₙ]` of functions living on
//!   the complexified surface (τ eliminated through the graph), and
//! * the map universe `[z₁..zₙ, w]` of holomorphic self-maps.
//!
//! For `n = 1` the names are plain `z`, `w`, `chi`, `tau`; for `n ≥ 2`
//! the `z`/`chi` families are numbered.

use series_core::VarSet;
use std::sync::Arc;

pub fn z_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["z".to_string()]
    } else {
        (1..=n).map(|k| format!("z{k}")).collect()
    }
}

pub fn chi_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["chi".to_string()]
    } else {
        (1..=n).map(|k| format!("chi{k}")).collect()
    }
}

/// `[z₁..zₙ, w, χ₁..χₙ, τ]` — defining functions.
pub fn full_universe(n: usize) -> Arc<VarSet> {
    let mut names = z_names(n);
    names.push("w".to_string());
    names.extend(chi_names(n));
    names.push("tau".to_string());
    VarSet::new(names)
}

/// `[z₁..zₙ, χ₁..χₙ, τ]` — the solved graph `w = Q(z, χ, τ)`.
pub fn graph_universe(n: usize) -> Arc<VarSet> {
    let mut names = z_names(n);
    names.extend(chi_names(n));
    names.push("tau".to_string());
    VarSet::new(names)
}

/// `[z₁..zₙ, w, χ₁..χₙ]` — functions on the complexified surface.
pub fn restricted_universe(n: usize) -> Arc<VarSet> {
    let mut names = z_names(n);
    names.push("w".to_string());
    names.extend(chi_names(n));
    VarSet::new(names)
}

/// `[z₁..zₙ, w]` — holomorphic maps.
pub fn map_universe(n: usize) -> Arc<VarSet> {
    let mut names = z_names(n);
    names.push("w".to_string());
    VarSet::new(names)
}

/// Indices into the full universe.
pub mod full {
    pub fn z(n: usize, k: usize) -> usize {
        debug_assert!(k < n);
        k
    }
    pub fn w(n: usize) -> usize {
        n
    }
    pub fn chi(n: usize, k: usize) -> usize {
        debug_assert!(k < n);
        n + 1 + k
    }
    pub fn tau(n: usize) -> usize {
        2 * n + 1
    }
    /// Conjugation permutation `z↔χ, w↔τ` (old index → new index).
    pub fn conj_perm(n: usize) -> Vec<usize> {
        let mut p = vec![0usize; 2 * n + 2];
        for k in 0..n {
            p[z(n, k)] = chi(n, k);
            p[chi(n, k)] = z(n, k);
        }
        p[w(n)] = tau(n);
        p[tau(n)] = w(n);
        p
    }
}

/// Indices into the graph universe.
pub mod graph {
    pub fn z(n: usize, k: usize) -> usize {
        debug_assert!(k < n);
        k
    }
    pub fn chi(n: usize, k: usize) -> usize {
        debug_assert!(k < n);
        n + k
    }
    pub fn tau(n: usize) -> usize {
        2 * n
    }
    /// Conjugation permutation `z↔χ`, `τ` fixed.
    pub fn conj_perm(n: usize) -> Vec<usize> {
        let mut p = vec![0usize; 2 * n + 1];
        for k in 0..n {
            p[z(n, k)] = chi(n, k);
            p[chi(n, k)] = z(n, k);
        }
        p[tau(n)] = tau(n);
        p
    }
}

/// Indices into the restricted universe.
pub mod restricted {
    pub fn z(n: usize, k: usize) -> usize {
        debug_assert!(k < n);
        k
    }
    pub fn w(n: usize) -> usize {
        n
    }
    pub fn chi(n: usize, k: usize) -> usize {
        debug_assert!(k < n);
        n + 1 + k
    }
}

/// Indices into the map universe.
pub mod map {
    pub fn z(n: usize, k: usize) -> usize {
        debug_assert!(k < n);
        k
    }
    pub fn w(n: usize) -> usize {
        n
    }
}
