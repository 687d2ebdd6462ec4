//! Small dense exact linear algebra over coefficient rings.

use crate::coeff::Coeff;
use crate::error::{Result, SeriesError};
use crate::series::Series;
use num::rational::BigRational;
use num::Zero;

/// Row-major dense matrix over an exact coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<C: Coeff> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Mat<C> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        debug_assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// Exact inverse by Gauss–Jordan elimination; pivots must be units.
    pub fn inverse(&self) -> Result<Mat<C>> {
        if self.rows != self.cols {
            return Err(SeriesError::SingularMatrix);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Mat<C> = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| a.get(r, col).inv().is_ok())
                .ok_or(SeriesError::SingularMatrix)?;
            if pivot_row != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot_row * n + j);
                    inv.data.swap(col * n + j, pivot_row * n + j);
                }
            }
            let p = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&p));
                inv.set(col, j, inv.get(col, j).mul(&p));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    a.set(r, j, a.get(r, j).sub(&f.mul(a.get(col, j))));
                    inv.set(r, j, inv.get(r, j).sub(&f.mul(inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    pub fn solve(&self, rhs: &[C]) -> Result<Vec<C>> {
        Ok(self.inverse()?.mul_vec(rhs))
    }
}

/// Exact rank of a rational matrix (destructive Gaussian elimination).
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for j in col..ncols {
            let v = &rows[rank][j] / &pivot;
            rows[rank][j] = v;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for j in col..ncols {
                let v = &rows[r][j] - &f * &rows[rank][j];
                rows[r][j] = v;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Invert a square matrix of truncated series by Gauss–Jordan; pivots are
/// unit series (nonzero constant term).  Exact at the shared truncation.
pub fn invert_series_matrix<C: Coeff>(m: &[Vec<Series<C>>]) -> Result<Vec<Vec<Series<C>>>> {
    let n = m.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let vars = m[0][0].vars().clone();
    let deg = m[0][0].degree();
    let mut a: Vec<Vec<Series<C>>> = m.to_vec();
    let mut inv: Vec<Vec<Series<C>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Series::one(&vars, deg)
                    } else {
                        Series::zero(&vars, deg)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| a[r][col].const_term().inv().is_ok())
            .ok_or(SeriesError::SingularMatrix)?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let p = a[col][col].invert_unit()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&p)?;
            inv[col][j] = inv[col][j].mul(&p)?;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].sub(&f.mul(&a[col][j])?)?;
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j])?)?;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GRat;
    use crate::series::VarSet;
    use num::FromPrimitive;

    #[test]
    fn two_by_two_inverse() {
        // [[1, i], [0, 2]]⁻¹ = [[1, −i/2], [0, 1/2]]
        let m = Mat::from_rows(vec![
            vec![GRat::from_int(1), GRat::i()],
            vec![GRat::from_int(0), GRat::from_int(2)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &GRat::from_int(1));
        assert_eq!(inv.get(0, 1), &GRat::i().mul(&GRat::rational(-1, 2)));
        assert_eq!(inv.get(1, 1), &GRat::rational(1, 2));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = Mat::from_rows(vec![
            vec![GRat::from_int(1), GRat::from_int(2)],
            vec![GRat::from_int(2), GRat::from_int(4)],
        ]);
        assert_eq!(m.inverse(), Err(SeriesError::SingularMatrix));
    }

    #[test]
    fn rank_counts_independent_rows() {
        let q = |v: i64| BigRational::from_i64(v).unwrap();
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(0)],
        ];
        assert_eq!(rational_rank(rows), 2);
    }

    #[test]
    fn series_matrix_inverse_round_trip() {
        let vars = VarSet::new(vec!["x"]);
        let d = 4;
        let x: Series<GRat> = Series::var(&vars, d, 0).unwrap();
        let one = Series::one(&vars, d);
        // [[1+x, x],[0, 1]]
        let m = vec![
            vec![one.add(&x).unwrap(), x.clone()],
            vec![Series::zero(&vars, d), one.clone()],
        ];
        let inv = invert_series_matrix(&m).unwrap();
        // product = identity
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Series::zero(&vars, d);
                for k in 0..2 {
                    acc = acc.add(&m[i][k].mul(&inv[k][j]).unwrap()).unwrap();
                }
                let expect = if i == j { one.clone() } else { Series::zero(&vars, d) };
                assert_eq!(acc, expect);
            }
        }
    }
}
