//! The Murphy-type cellular basis m_st, cellular expansion, Specht modules and
//! their Gram matrices.

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::combinatorics::{multipartitions, standard_tableaux, Multipartition, Tableau};
use crate::error::{Error, Result};
use crate::linalg::{Lu, Matrix};
use crate::perm::Permutation;
use crate::scalars::{rat, Rational};

/// Permutations fixing every row of t^λ setwise.
pub fn row_stabilizer(shape: &Multipartition) -> Vec<Permutation> {
    let t = Tableau::initial(shape);
    let row_of: Vec<(usize, usize)> = t.pos.iter().map(|x| (x.comp, x.row)).collect();
    Permutation::all(shape.n())
        .into_iter()
        .filter(|w| (0..shape.n()).all(|k| row_of[w.0[k]] == row_of[k]))
        .collect()
}

/// Σ_{w ∈ S_λ} sign(w)^{signed} w.
pub fn row_sum(alg: &Algebra, shape: &Multipartition, signed: bool) -> Element {
    let mut out = alg.zero();
    for w in row_stabilizer(shape) {
        let c = if signed { rat(w.sign()) } else { Rational::one() };
        out.add_assign_scaled(&alg.perm(&w), &c);
    }
    out
}

/// Π_{i=2}^m Π_{k=1}^{a_i} (x_k - q_{σ(i)}), with σ(i) = i or m-i+1.
pub fn u_product(alg: &Algebra, shape: &Multipartition, reversed: bool) -> Element {
    let m = shape.m();
    let mut out = alg.one();
    for i in 2..=m {
        let c = if reversed { m - i + 1 } else { i };
        let qc = alg.binding.q_value(c);
        for k in 1..=shape.a(i) {
            out = alg.mul(&out, &alg.x_minus(k, &qc));
        }
    }
    out
}

/// u⁺_λ.
pub fn u_plus(alg: &Algebra, shape: &Multipartition) -> Element {
    u_product(alg, shape, false)
}

/// m_λ = x_λ u⁺_λ.
pub fn m_lambda(alg: &Algebra, shape: &Multipartition) -> Element {
    alg.mul(&row_sum(alg, shape, false), &u_plus(alg, shape))
}

/// d(s)* h d(t).
pub fn twist(alg: &Algebra, h: &Element, s: &Tableau, t: &Tableau) -> Element {
    let left = alg.perm(&s.d_perm().inverse());
    let right = alg.perm(&t.d_perm());
    alg.mul(&alg.mul(&left, h), &right)
}

pub fn m_st(alg: &Algebra, s: &Tableau, t: &Tableau) -> Result<Element> {
    if s.shape != t.shape {
        return Err(Error::ShapeMismatch);
    }
    Ok(twist(alg, &m_lambda(alg, &s.shape), s, t))
}

pub fn to_dense(alg: &Algebra, h: &Element) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); alg.dim()];
    for (i, c) in h.iter() {
        v[i as usize] = c.clone();
    }
    v
}

pub fn from_dense(alg: &Algebra, v: &[Rational]) -> Element {
    let mut out = alg.zero();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out.add_assign_scaled(&alg.basis(i as u32), c);
        }
    }
    out
}

/// Position of m_st inside the cellular basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellularIndex {
    pub shape: usize,
    pub s: usize,
    pub t: usize,
}

/// The basis {m_st} of H together with a factorized transition matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellularBasis {
    pub shapes: Vec<Multipartition>,
    pub tableaux: Vec<Vec<Tableau>>,
    pub index: Vec<CellularIndex>,
    /// Offsets of each shape's block in `index`.
    pub offsets: Vec<usize>,
    lu: Lu,
}

impl CellularBasis {
    pub fn new(alg: &Algebra) -> Result<CellularBasis> {
        let shapes = multipartitions(alg.m, alg.n);
        let tableaux: Vec<Vec<Tableau>> = shapes.iter().map(standard_tableaux).collect();
        let mut index = Vec::new();
        let mut offsets = Vec::new();
        for (l, tabs) in tableaux.iter().enumerate() {
            offsets.push(index.len());
            for s in 0..tabs.len() {
                for t in 0..tabs.len() {
                    index.push(CellularIndex { shape: l, s, t });
                }
            }
        }
        if index.len() != alg.dim() {
            return Err(Error::SizeMismatch(index.len(), alg.dim()));
        }
        let mlams: Vec<Element> = shapes.par_iter().map(|l| m_lambda(alg, l)).collect();
        let columns: Vec<Vec<Rational>> = index
            .par_iter()
            .map(|ix| {
                let tabs = &tableaux[ix.shape];
                to_dense(alg, &twist(alg, &mlams[ix.shape], &tabs[ix.s], &tabs[ix.t]))
            })
            .collect();
        let lu = Lu::new(&Matrix::from_columns(&columns, alg.dim()))?;
        Ok(CellularBasis { shapes, tableaux, index, offsets, lu })
    }

    pub fn position(&self, ix: CellularIndex) -> usize {
        let d = self.tableaux[ix.shape].len();
        self.offsets[ix.shape] + ix.s * d + ix.t
    }

    pub fn shape_index(&self, shape: &Multipartition) -> Option<usize> {
        self.shapes.iter().position(|l| l == shape)
    }

    /// Coefficients of h in the basis {m_st}, ordered as `index`.
    pub fn expand(&self, alg: &Algebra, h: &Element) -> Vec<Rational> {
        self.lu.solve(&to_dense(alg, h))
    }

    /// Σ c_i m_{index[i]}.
    pub fn reassemble(&self, alg: &Algebra, coeffs: &[Rational]) -> Element {
        let mut out = alg.zero();
        for (ix, c) in self.index.iter().zip(coeffs) {
            if !c.is_zero() {
                let tabs = &self.tableaux[ix.shape];
                let m = m_st(alg, &tabs[ix.s], &tabs[ix.t]).expect("same shape");
                out.add_assign_scaled(&m, c);
            }
        }
        out
    }

    /// ⟨m_s, m_t⟩ for shape λ (by position in the shape list).
    pub fn bilinear_form(&self, alg: &Algebra, l: usize, s: usize, t: usize) -> Rational {
        let tabs = &self.tableaux[l];
        let top = &tabs[0];
        let mlam = m_lambda(alg, &self.shapes[l]);
        let left = twist(alg, &mlam, top, &tabs[s]);
        let right = twist(alg, &mlam, &tabs[t], top);
        let c = self.expand(alg, &alg.mul(&left, &right));
        c[self.position(CellularIndex { shape: l, s: 0, t: 0 })].clone()
    }

    pub fn gram(&self, alg: &Algebra, l: usize) -> Matrix {
        let d = self.tableaux[l].len();
        let mut g = Matrix::zeros(d, d);
        for s in 0..d {
            for t in s..d {
                let v = self.bilinear_form(alg, l, s, t);
                g.set(s, t, v.clone());
                g.set(t, s, v);
            }
        }
        g
    }

    /// Action of h on S^λ in the basis m_t = m_{t t^λ} + H^{⊳λ}; column t
    /// holds the image of m_t.
    pub fn action_matrix(&self, alg: &Algebra, l: usize, h: &Element) -> Matrix {
        let tabs = &self.tableaux[l];
        let d = tabs.len();
        let mlam = m_lambda(alg, &self.shapes[l]);
        let mut out = Matrix::zeros(d, d);
        for t in 0..d {
            let mt = twist(alg, &mlam, &tabs[t], &tabs[0]);
            let c = self.expand(alg, &alg.mul(h, &mt));
            for u in 0..d {
                out.set(u, t, c[self.position(CellularIndex { shape: l, s: u, t: 0 })].clone());
            }
        }
        out
    }

    pub fn specht_data(&self, alg: &Algebra, l: usize) -> SpechtData {
        let s = (1..alg.n).map(|i| self.action_matrix(alg, l, &alg.s(i))).collect();
        let x = (1..=alg.n).map(|k| self.action_matrix(alg, l, &alg.x(k))).collect();
        SpechtData {
            shape: self.shapes[l].clone(),
            tableaux: self.tableaux[l].clone(),
            s,
            x,
            gram: self.gram(alg, l),
        }
    }
}

/// The Specht module S^λ in the basis {m_t}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpechtData {
    pub shape: Multipartition,
    pub tableaux: Vec<Tableau>,
    /// Action of s_1..s_{n-1}.
    pub s: Vec<Matrix>,
    /// Action of x_1..x_n.
    pub x: Vec<Matrix>,
    pub gram: Matrix,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{default_binding, ParamBinding};

    #[test]
    fn m_lambda_small() {
        let alg = Algebra::new(&ParamBinding::from_ints(1, &[0, 7]));
        let l1 = Multipartition::parse("1|0").unwrap();
        assert_eq!(m_lambda(&alg, &l1), alg.x_minus(1, &rat(7)));
        assert_eq!(m_lambda(&alg, &Multipartition::parse("0|1").unwrap()), alg.one());
        let alg1 = Algebra::new(&default_binding(1, 3));
        let sum = Permutation::all(3).iter().fold(alg1.zero(), |a, w| a.add(&alg1.perm(w)));
        assert_eq!(m_lambda(&alg1, &Multipartition::parse("3").unwrap()), sum);
    }

    #[test]
    fn m_st_one_step() {
        let alg = Algebra::new(&default_binding(2, 2));
        let lam = Multipartition::parse("1|1").unwrap();
        let tabs = standard_tableaux(&lam);
        let m = m_st(&alg, &tabs[0], &tabs[1]).unwrap();
        let expect = alg.mul(&alg.x_minus(1, &rat(5)), &alg.s(1));
        assert_eq!(m, expect);
    }

    #[test]
    fn bilinear_form_one_box() {
        let alg = Algebra::new(&ParamBinding::from_ints(1, &[0, 7]));
        let cb = CellularBasis::new(&alg).unwrap();
        let l = cb.shape_index(&Multipartition::parse("1|0").unwrap()).unwrap();
        assert_eq!(cb.bilinear_form(&alg, l, 0, 0), rat(-7));
        // identity expands and reassembles
        let c = cb.expand(&alg, &alg.one());
        assert_eq!(cb.reassemble(&alg, &c), alg.one());
    }
}
