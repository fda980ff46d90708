//! Dense exact matrices over Q.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{rational_vec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(with = "rational_vec")]
    pub data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.data[i * d.len() + i] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = v.clone();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Row echelon form in place; returns the pivot columns and the sign of the
    /// row permutation.
    fn eliminate(&mut self) -> (Vec<usize>, i32) {
        let mut pivots = Vec::new();
        let mut sign = 1;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                sign = -sign;
            }
            let piv = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let f = self.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(r, j) * &f;
                    if !v.is_zero() {
                        self.data[i * self.cols + j] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, sign)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0.len()
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let (pivots, sign) = m.eliminate();
        if pivots.len() < self.rows {
            return Rational::zero();
        }
        let mut d = Rational::from_integer(sign.into());
        for i in 0..self.rows {
            d *= m.get(i, i);
        }
        d
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let lu = Lu::new(self)?;
        let cols: Vec<Vec<Rational>> = (0..self.rows)
            .map(|j| {
                let mut e = vec![Rational::zero(); self.rows];
                e[j] = Rational::one();
                lu.solve(&e)
            })
            .collect();
        Ok(Matrix::from_columns(&cols, self.rows))
    }
}

/// PA = LU with unit lower triangular L, stored together.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lu {
    n: usize,
    lu: Matrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn new(a: &Matrix) -> Result<Lu> {
        assert_eq!(a.rows, a.cols, "LU of a non-square matrix");
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !lu.get(i, c).is_zero()).ok_or(Error::SingularTransition)?;
            if p != c {
                for j in 0..n {
                    lu.data.swap(p * n + j, c * n + j);
                }
                perm.swap(p, c);
            }
            let piv = lu.get(c, c).clone();
            for i in c + 1..n {
                if lu.get(i, c).is_zero() {
                    continue;
                }
                let f = lu.get(i, c) / &piv;
                for j in c + 1..n {
                    let v = lu.get(c, j) * &f;
                    if !v.is_zero() {
                        lu.data[i * n + j] -= v;
                    }
                }
                lu.set(i, c, f);
            }
        }
        Ok(Lu { n, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        let mut y: Vec<Rational> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu.get(i, j);
                if !l.is_zero() && !y[j].is_zero() {
                    let v = l * &y[j];
                    y[i] -= v;
                }
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu.get(i, j);
                if !u.is_zero() && !y[j].is_zero() {
                    let v = u * &y[j];
                    y[i] -= v;
                }
            }
            y[i] = &y[i] / self.lu.get(i, i);
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        assert_eq!(a.det(), rat(-5));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert!(Lu::new(&m(&[&[1, 2], &[2, 4]])).is_err());
    }
}
