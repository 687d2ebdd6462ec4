//! Formal implicit function theorem at a truncation degree.

use crate::coeff::Coeff;
use crate::error::{Result, SeriesError};
use crate::matrix::Mat;
use crate::multi_index::MultiIndex;
use crate::series::{Series, SeriesTuple, VarSet};
use std::sync::Arc;

/// Solve `G(x, u) = 0` for `u = u(x)` with `u(0) = 0`.
///
/// The universe of `g` must list the parameters first (`n_x` of them) and
/// the unknowns after; the number of unknowns must equal the number of
/// components of `g`.  Requires `G(0,0) = 0` and an invertible unknown
/// Jacobian at the origin.  The solution is exact at the truncation
/// degree of `g` and lives in the parameter-only universe.
pub fn solve_implicit<C: Coeff>(g: &SeriesTuple<C>, n_x: usize) -> Result<SeriesTuple<C>> {
    let total = g.vars().len();
    let m = total - n_x;
    if g.len() != m {
        return Err(SeriesError::ComponentMismatch {
            expected: m,
            got: g.len(),
        });
    }
    let deg = g.degree();
    for s in &g.components {
        if !s.const_term().is_zero() {
            return Err(SeriesError::NonzeroOrigin);
        }
    }
    // Jacobian in the unknowns at the origin.
    let mut jac = Mat::zero(m, m);
    for (i, s) in g.components.iter().enumerate() {
        for j in 0..m {
            jac.set(i, j, s.coeff(&MultiIndex::unit(total, n_x + j)));
        }
    }
    let jinv = jac.inverse().map_err(|_| SeriesError::SingularJacobian)?;

    let x_vars = VarSet::new(g.vars().names()[..n_x].to_vec());
    let x_coords: Vec<Series<C>> = (0..n_x)
        .map(|v| Series::var(&x_vars, deg, v))
        .collect::<Result<Vec<_>>>()?;
    let mut u: Vec<Series<C>> = vec![Series::zero(&x_vars, deg); m];

    // Newton iteration with the frozen origin Jacobian gains at least one
    // correct degree per round, so `deg` rounds close the truncation.
    for _ in 0..deg {
        let mut images = x_coords.clone();
        images.extend(u.iter().cloned());
        let gval = g.substitute(&images)?;
        if gval.is_zero() {
            break;
        }
        for i in 0..m {
            let mut corr = Series::zero(&x_vars, deg);
            for j in 0..m {
                corr = corr.add(&gval.components[j].scale(jinv.get(i, j)))?;
            }
            u[i] = u[i].sub(&corr)?;
        }
    }
    // The contract is an identity, not an approximation: check it.
    let mut images = x_coords;
    images.extend(u.iter().cloned());
    let residual = g.substitute(&images)?;
    if !residual.is_zero() {
        return Err(SeriesError::SingularJacobian);
    }
    SeriesTuple::new(u)
}

/// Parameter-only universe used by [`solve_implicit`] results.
pub fn parameter_vars<C: Coeff>(g: &SeriesTuple<C>, n_x: usize) -> Arc<VarSet> {
    VarSet::new(g.vars().names()[..n_x].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GRat;

    #[test]
    fn linear_solve() {
        // G(x, u) = u − 3x  ⇒  u = 3x.
        let vars = VarSet::new(vec!["x", "u"]);
        let d = 6;
        let x = Series::var(&vars, d, 0).unwrap();
        let u = Series::var(&vars, d, 1).unwrap();
        let g = SeriesTuple::new(vec![u.sub(&x.scale(&GRat::from_int(3))).unwrap()]).unwrap();
        let sol = solve_implicit(&g, 1).unwrap();
        let xv = VarSet::new(vec!["x"]);
        let expect = Series::var(&xv, d, 0).unwrap().scale(&GRat::from_int(3));
        assert_eq!(sol.components[0], expect);
    }

    #[test]
    fn catalan_like_inversion() {
        // u + u² = t  ⇒  u = t − t² + 2t³ − 5t⁴ + … (signed Catalan numbers).
        let vars = VarSet::new(vec!["t", "u"]);
        let d = 4;
        let t = Series::var(&vars, d, 0).unwrap();
        let u = Series::var(&vars, d, 1).unwrap();
        let g = SeriesTuple::new(vec![u.add(&u.mul(&u).unwrap()).unwrap().sub(&t).unwrap()])
            .unwrap();
        let sol = solve_implicit(&g, 1).unwrap();
        let tv = VarSet::new(vec!["t"]);
        let tt = Series::var(&tv, d, 0).unwrap();
        let t2 = tt.mul(&tt).unwrap();
        let t3 = t2.mul(&tt).unwrap();
        let t4 = t3.mul(&tt).unwrap();
        let expect = tt
            .sub(&t2)
            .unwrap()
            .add(&t3.scale(&GRat::from_int(2)))
            .unwrap()
            .sub(&t4.scale(&GRat::from_int(5)))
            .unwrap();
        assert_eq!(sol.components[0], expect);
    }

    #[test]
    fn two_unknowns() {
        // u = x + v², v = x²  ⇒  v = x², u = x + x⁴.
        let vars = VarSet::new(vec!["x", "u", "v"]);
        let d = 5;
        let x: Series<GRat> = Series::var(&vars, d, 0).unwrap();
        let u = Series::var(&vars, d, 1).unwrap();
        let v = Series::var(&vars, d, 2).unwrap();
        let g = SeriesTuple::new(vec![
            u.sub(&x).unwrap().sub(&v.mul(&v).unwrap()).unwrap(),
            v.sub(&x.mul(&x).unwrap()).unwrap(),
        ])
        .unwrap();
        let sol = solve_implicit(&g, 1).unwrap();
        let xv = VarSet::new(vec!["x"]);
        let xx: Series<GRat> = Series::var(&xv, d, 0).unwrap();
        let x2 = xx.mul(&xx).unwrap();
        let x4 = x2.mul(&x2).unwrap();
        assert_eq!(sol.components[1], x2);
        assert_eq!(sol.components[0], xx.add(&x4).unwrap());
    }

    #[test]
    fn singular_jacobian_detected() {
        // G = u² − x has no formal solution with u(0)=0.
        let vars = VarSet::new(vec!["x", "u"]);
        let d = 4;
        let x: Series<GRat> = Series::var(&vars, d, 0).unwrap();
        let u = Series::var(&vars, d, 1).unwrap();
        let g = SeriesTuple::new(vec![u.mul(&u).unwrap().sub(&x).unwrap()]).unwrap();
        assert_eq!(solve_implicit(&g, 1), Err(SeriesError::SingularJacobian));
    }

    #[test]
    fn nonzero_origin_detected() {
        let vars = VarSet::new(vec!["x", "u"]);
        let d = 3;
        let u = Series::var(&vars, d, 1).unwrap();
        let g = SeriesTuple::new(vec![u.add_constant(&GRat::from_int(1))]).unwrap();
        assert_eq!(solve_implicit(&g, 1), Err(SeriesError::NonzeroOrigin));
    }
}
