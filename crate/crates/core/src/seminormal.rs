//! Seminormal forms: the representation built from tableau combinatorics,
//! residue idempotents F_t, the orthogonal basis f_st, and γ_t by three routes.

use std::collections::BTreeSet;

use num::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{Algebra, Element};
use crate::cellular::{m_st, CellularBasis};
use crate::combinatorics::{
    multipartitions, residue_set, standard_tableaux, tableau_dominates, Multipartition, Tableau,
};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::perm::Permutation;
use crate::scalars::{FactoredScalar, ParamBinding, Rational, Residue};

/// res_a - res_b + shift.
fn gap(a: Residue, b: Residue, shift: i64) -> FactoredScalar {
    FactoredScalar::linear(a.d - b.d + shift, a.c, b.c)
}

/// γ_{t^λ} = λ! Π_{s<t} Π_{(i,j) ∈ [λ^s]} (j - i + q_s - q_t).
pub fn gamma_initial(shape: &Multipartition) -> FactoredScalar {
    let mut g = FactoredScalar::int(shape.factorial());
    for x in shape.nodes() {
        for t in x.comp + 1..=shape.m() {
            g.push(x.content(), x.comp, t, 1);
        }
    }
    g
}

/// γ_t from γ_{t^λ} along the given reduced word of d(t).
pub fn gamma_along(shape: &Multipartition, word: &[usize]) -> FactoredScalar {
    let mut cur = Tableau::initial(shape);
    let mut g = gamma_initial(shape);
    for &i in word {
        let next = cur.swap(i);
        let (a, b) = (next.pos[i - 1].residue(), cur.pos[i - 1].residue());
        g = g
            .mul(&gap(a, b, 1))
            .mul(&gap(a, b, -1))
            .div(&gap(a, b, 0).mul(&gap(a, b, 0)));
        cur = next;
    }
    g
}

/// γ_t for every standard tableau of λ, by the recursion.
pub fn gamma_seminormal(shape: &Multipartition) -> Vec<FactoredScalar> {
    standard_tableaux(shape)
        .iter()
        .map(|t| gamma_along(shape, &t.d_perm().reduced_word()))
        .collect()
}

/// The addable/removable product for γ_t.
pub fn gamma_closed(t: &Tableau) -> FactoredScalar {
    let mut g = FactoredScalar::one();
    for i in 1..=t.n() {
        let r = t.pos[i - 1].residue();
        let (a, rem) = t.addable_removable(i).expect("index in range");
        for x in a {
            g = g.mul(&gap(r, x.residue(), 0));
        }
        for y in rem {
            g = g.div(&gap(r, y.residue(), 0));
        }
    }
    g
}

/// The seminormal representation of one shape, in the basis {f_t}.
#[derive(Clone, Debug)]
pub struct SeminormalRep {
    pub shape: Multipartition,
    pub tableaux: Vec<Tableau>,
    /// ρ(s_i) for i = 1..n-1; column t is the image of f_t.
    pub s: Vec<Matrix>,
    /// Diagonal of ρ(x_k) for k = 1..n, indexed [k-1][t].
    pub x: Vec<Vec<Rational>>,
    /// ρ(w) for every w, in the order of `Permutation::all`.
    group: Vec<Matrix>,
}

impl SeminormalRep {
    pub fn new(shape: &Multipartition, b: &ParamBinding) -> Result<SeminormalRep> {
        b.require_generic()?;
        let n = shape.n();
        let tableaux = standard_tableaux(shape);
        let d = tableaux.len();
        let find = |u: &Tableau| tableaux.iter().position(|v| v == u);
        let mut s = Vec::new();
        for i in 1..n {
            let mut mat = Matrix::zeros(d, d);
            for (j, t) in tableaux.iter().enumerate() {
                match t.same_row_or_col(i) {
                    Some(true) => mat.set(j, j, Rational::one()),
                    Some(false) => mat.set(j, j, -Rational::one()),
                    None => {
                        let u = t.swap(i);
                        let k = find(&u).expect("swap of a standard tableau stays standard");
                        let r = b.residue_value(u.pos[i - 1].residue())
                            - b.residue_value(t.pos[i - 1].residue());
                        mat.set(j, j, r.recip());
                        if tableau_dominates(t, &u)? {
                            mat.set(k, j, Rational::one());
                        } else {
                            let one = Rational::one();
                            mat.set(k, j, (&r - &one) * (&r + &one) / (&r * &r));
                        }
                    }
                }
            }
            s.push(mat);
        }
        let x = (1..=n)
            .map(|k| tableaux.iter().map(|t| b.residue_value(t.pos[k - 1].residue())).collect())
            .collect();
        let perms = Permutation::all(n);
        let group = perms
            .iter()
            .map(|w| {
                w.reduced_word()
                    .iter()
                    .fold(Matrix::identity(d), |acc, &i| acc.mul(&s[i - 1]))
            })
            .collect();
        Ok(SeminormalRep { shape: shape.clone(), tableaux, s, x, group })
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn rho_perm(&self, alg: &Algebra, w: u32) -> &Matrix {
        // Algebra and Permutation::all share the lexicographic order.
        debug_assert_eq!(alg.group.order(), self.group.len());
        &self.group[w as usize]
    }

    /// ρ(h), evaluating h term by term.
    pub fn rho(&self, alg: &Algebra, h: &Element) -> Matrix {
        let d = self.dim();
        let g = alg.group.order() as u32;
        let mut out = Matrix::zeros(d, d);
        for (idx, c) in h.iter() {
            let (exps, _) = alg.basis_parts(idx);
            let w = self.rho_perm(alg, idx % g);
            for t in 0..d {
                let mut v = c.clone();
                for (k, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        v *= &self.x[k][t];
                    }
                }
                if v.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let a = w.get(t, j);
                    if !a.is_zero() {
                        out.data[t * d + j] += &v * a;
                    }
                }
            }
        }
        out
    }

    pub fn x_matrix(&self, k: usize) -> Matrix {
        Matrix::diagonal(&self.x[k - 1])
    }

    /// χ^λ(h).
    pub fn character(&self, alg: &Algebra, h: &Element) -> Rational {
        self.rho(alg, h).trace()
    }
}

/// ρ = ⊕_λ ρ^λ, a faithful representation in the semisimple case.
#[derive(Clone, Debug)]
pub struct FullRep {
    pub reps: Vec<SeminormalRep>,
}

impl FullRep {
    pub fn new(b: &ParamBinding) -> Result<FullRep> {
        let reps = multipartitions(b.m, b.n)
            .par_iter()
            .map(|l| SeminormalRep::new(l, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FullRep { reps })
    }

    pub fn rho(&self, alg: &Algebra, h: &Element) -> Vec<Matrix> {
        self.reps.iter().map(|r| r.rho(alg, h)).collect()
    }
}

/// Distinct evaluated values of R(k).
pub fn residue_values(b: &ParamBinding, k: usize) -> Result<Vec<Rational>> {
    let set: BTreeSet<Rational> =
        residue_set(b.m, b.n, k)?.into_iter().map(|r| b.residue_value(r)).collect();
    Ok(set.into_iter().collect())
}

/// F_t = Π_k Π_{c ∈ R(k), c ≠ res_t(k)} (x_k - c)/(res_t(k) - c).
pub fn f_t_element(alg: &Algebra, t: &Tableau) -> Result<Element> {
    alg.binding.require_generic()?;
    let mut out = alg.one();
    for k in 1..=t.n() {
        let r = alg.binding.residue_value(t.pos[k - 1].residue());
        for c in residue_values(&alg.binding, k)? {
            if c != r {
                let factor = alg.x_minus(k, &c).scale(&(&r - &c).recip());
                out = alg.mul(&factor, &out);
            }
        }
    }
    Ok(out)
}

/// f_st = F_s m_st F_t.
pub fn f_st(alg: &Algebra, s: &Tableau, t: &Tableau) -> Result<Element> {
    let fs = f_t_element(alg, s)?;
    let ft = if s == t { fs.clone() } else { f_t_element(alg, t)? };
    Ok(alg.mul(&alg.mul(&fs, &m_st(alg, s, t)?), &ft))
}

/// γ_t read off from f_tt² = γ_t f_tt.
pub fn gamma_direct(alg: &Algebra, t: &Tableau) -> Result<Rational> {
    let f = f_st(alg, t, t)?;
    Ok(alg.mul(&f, &f).ratio_to(&f).expect("f_tt squares to a multiple of itself"))
}

/// All F_t, grouped by shape in the canonical orders.
pub struct Idempotents {
    pub shapes: Vec<Multipartition>,
    pub tableaux: Vec<Vec<Tableau>>,
    pub f: Vec<Vec<Element>>,
}

impl Idempotents {
    pub fn new(alg: &Algebra) -> Result<Idempotents> {
        alg.binding.require_generic()?;
        let shapes = multipartitions(alg.m, alg.n);
        let tableaux: Vec<Vec<Tableau>> = shapes.iter().map(standard_tableaux).collect();
        let f = tableaux
            .par_iter()
            .map(|tabs| tabs.iter().map(|t| f_t_element(alg, t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Idempotents { shapes, tableaux, f })
    }

    /// F_λ = Σ_t F_t.
    pub fn central(&self, alg: &Algebra, l: usize) -> Element {
        self.f[l].iter().fold(alg.zero(), |acc, x| acc.add(x))
    }

    /// Σ_t res_t(k) F_t.
    pub fn spectral_sum(&self, alg: &Algebra, k: usize) -> Element {
        let mut out = alg.zero();
        for (tabs, fs) in self.tableaux.iter().zip(&self.f) {
            for (t, f) in tabs.iter().zip(fs) {
                out.add_assign_scaled(f, &alg.binding.residue_value(t.pos[k - 1].residue()));
            }
        }
        out
    }
}

/// Π_{c ∈ R(k), c ≠ skip} (x_k - c).
pub fn jm_polynomial(alg: &Algebra, k: usize, skip: Option<&Rational>) -> Result<Element> {
    let mut out = alg.one();
    for c in residue_values(&alg.binding, k)? {
        if Some(&c) != skip {
            out = alg.mul(&out, &alg.x_minus(k, &c));
        }
    }
    Ok(out)
}

/// Coefficients of f_st in the cellular basis, for unitriangularity checks.
pub fn f_st_expansion(
    alg: &Algebra,
    cb: &CellularBasis,
    s: &Tableau,
    t: &Tableau,
) -> Result<Vec<Rational>> {
    Ok(cb.expand(alg, &f_st(alg, s, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{default_binding, frac, rat};

    fn mp(s: &str) -> Multipartition {
        Multipartition::parse(s).unwrap()
    }

    #[test]
    fn worked_gamma_value() {
        let g = gamma_initial(&mp("3.1|1"));
        assert_eq!(g.to_string(), "6*(-1+q1-q2)*(q1-q2)*(1+q1-q2)*(2+q1-q2)");
        assert_eq!(gamma_closed(&Tableau::initial(&mp("3.1|1"))), g);
        assert_eq!(gamma_initial(&mp("4")), FactoredScalar::int(24));
    }

    #[test]
    fn one_step_gamma() {
        let lam = mp("1|1");
        let gs = gamma_seminormal(&lam);
        // ((q2-q1)^2 - 1)(q1-q2)/(q2-q1)^2
        let mut expect = FactoredScalar::linear(1, 2, 1);
        expect.push(-1, 2, 1, 1);
        expect.push(0, 1, 2, 1);
        expect.push(0, 2, 1, -2);
        assert_eq!(gs[1], expect);
    }

    #[test]
    fn seminormal_small_examples() {
        let b = default_binding(1, 2);
        assert_eq!(SeminormalRep::new(&mp("2"), &b).unwrap().s[0], Matrix::identity(1));
        assert_eq!(
            SeminormalRep::new(&mp("1.1"), &b).unwrap().s[0],
            Matrix::identity(1).scale(&rat(-1))
        );
        let b = ParamBinding::from_ints(2, &[0, 7]);
        let rep = SeminormalRep::new(&mp("1|1"), &b).unwrap();
        // basis (t^λ, t^λ(1,2)); columns are images
        let expect = Matrix::from_rows(vec![
            vec![frac(1, 7), frac(48, 49)],
            vec![rat(1), frac(-1, 7)],
        ]);
        assert_eq!(rep.s[0], expect);
    }

    #[test]
    fn f_one_box() {
        let alg = Algebra::new(&ParamBinding::from_ints(1, &[0, 7]));
        let t = Tableau::initial(&mp("1|0"));
        let f = f_t_element(&alg, &t).unwrap();
        assert_eq!(f, alg.x_minus(1, &rat(7)).scale(&frac(-1, 7)));
        assert_eq!(gamma_direct(&alg, &t).unwrap(), rat(-7));
    }
}
