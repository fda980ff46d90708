//! The dual basis n_st, g_st, z_λ, the Φ/Ψ elements and the sign identities
//! attached to τ(z_λ w_λ̄).

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::cellular::{m_lambda, row_sum, twist, u_product};
use crate::combinatorics::{special_tableaux, Multipartition, Tableau};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalars::{bar_scalar, rat, sign_pow, ParamBinding, Rational};
use crate::seminormal::{f_st, f_t_element, gamma_closed, gamma_initial};

/// y_λ = Σ_{w ∈ S_λ} (-1)^{ℓ(w)} w.
pub fn y_lambda(alg: &Algebra, shape: &Multipartition) -> Element {
    row_sum(alg, shape, true)
}

/// u⁻_λ = (-1)^{n(λ)} Π_{i=2}^m Π_{k=1}^{a_i} (x_k - q_{m-i+1}).
pub fn u_minus(alg: &Algebra, shape: &Multipartition) -> Element {
    u_product(alg, shape, true).scale(&rat(sign_pow(shape.n_stat())))
}

pub fn n_lambda(alg: &Algebra, shape: &Multipartition) -> Element {
    alg.mul(&y_lambda(alg, shape), &u_minus(alg, shape))
}

/// n_st = (-1)^{ℓ(d(s))+ℓ(d(t))} d(s)* n_λ d(t).
pub fn n_st(alg: &Algebra, s: &Tableau, t: &Tableau) -> Result<Element> {
    if s.shape != t.shape {
        return Err(Error::ShapeMismatch);
    }
    let sign = sign_pow(s.d_perm().length() + t.d_perm().length());
    Ok(twist(alg, &n_lambda(alg, &s.shape), s, t).scale(&rat(sign)))
}

/// g_st = F_{s̄} n_st F_{t̄}.
pub fn g_st(alg: &Algebra, s: &Tableau, t: &Tableau) -> Result<Element> {
    let fs = f_t_element(alg, &s.conjugate())?;
    let ft = f_t_element(alg, &t.conjugate())?;
    Ok(alg.mul(&alg.mul(&fs, &n_st(alg, s, t)?), &ft))
}

/// α_st with g_st = α_st f_{s̄ t̄}, if the two are proportional.
pub fn alpha_st(alg: &Algebra, s: &Tableau, t: &Tableau) -> Result<Option<Rational>> {
    let g = g_st(alg, s, t)?;
    let f = f_st(alg, &s.conjugate(), &t.conjugate())?;
    Ok(g.ratio_to(&f))
}

/// z_λ = m_λ w_λ n_λ̄.
pub fn z_lambda(alg: &Algebra, shape: &Multipartition) -> Element {
    let (_, (_, w)) = special_tableaux(shape);
    let left = alg.mul(&m_lambda(alg, shape), &alg.perm(&w));
    alg.mul(&left, &n_lambda(alg, &shape.conjugate()))
}

/// w_λ̄ = d(t_λ̄).
pub fn w_bar(shape: &Multipartition) -> Permutation {
    special_tableaux(&shape.conjugate()).1 .1
}

/// Φ_t and Ψ_t over the canonical reduced word of d(t).
pub fn phi_psi(alg: &Algebra, t: &Tableau) -> Result<(Element, Element)> {
    alg.binding.require_generic()?;
    let (word, chain) = t.chain();
    let mut phi = alg.one();
    let mut psi = alg.one();
    for (j, &i) in word.iter().enumerate() {
        let (prev, next) = (&chain[j], &chain[j + 1]);
        let gap = alg.binding.residue_value(next.pos[i - 1].residue())
            - alg.binding.residue_value(prev.pos[i - 1].residue());
        let alpha = gap.recip();
        phi = alg.mul(&phi, &alg.s(i).sub(&alg.scalar(alpha.clone())));
        psi = alg.mul(&psi, &alg.s(i).add(&alg.scalar(alpha)));
    }
    Ok((phi, psi))
}

/// Values and signs around τ(z_λ w_λ̄).
#[derive(Clone, Debug, Serialize)]
pub struct SignReport {
    pub lambda: String,
    pub n_lambda: usize,
    pub n_lambda_bar: usize,
    /// Sign of τ(z_λ w_λ̄).
    pub tau_z_sign: i64,
    /// ε in the top-degree term ε·x_1^{m-1}⋯x_n^{m-1}.
    pub leading_sign: i64,
    /// ε with (ε·z_λ w_λ̄/(γ_{t_λ} γ̄_{t^λ̄}))² equal to itself; absent at non-generic bindings.
    pub z_idempotent_sign: Option<i64>,
}

/// τ(z_λ w_λ̄). Valid for every binding.
pub fn tau_z(alg: &Algebra, shape: &Multipartition) -> Rational {
    let zw = alg.mul(&z_lambda(alg, shape), &alg.perm(&w_bar(shape)));
    alg.tau(&zw)
}

/// Commutative polynomial in x_1..x_n.
pub type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = out.entry(e).or_insert_with(Rational::zero);
            *c += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Π_{i=2}^m Π_{k=1}^{a_i} (x_k - q_{σ(i)}) as a commutative polynomial.
fn u_poly(shape: &Multipartition, b: &ParamBinding, reversed: bool, sign: i64) -> Poly {
    let n = shape.n();
    let m = shape.m();
    let mut out = Poly::from([(vec![0; n], rat(sign))]);
    for i in 2..=m {
        let c = if reversed { m - i + 1 } else { i };
        for k in 1..=shape.a(i) {
            let mut e = vec![0; n];
            e[k - 1] = 1;
            let lin = Poly::from([(e, Rational::one()), (vec![0; n], -b.q_value(c))]);
            out = poly_mul(&out, &lin);
        }
    }
    out
}

/// The substitution induced by w x_i ≡ x_{w^{-1}(i)} w in the algebra.
pub fn act_on_poly(w: &Permutation, f: &Poly) -> Poly {
    let inv = w.inverse();
    f.iter()
        .map(|(e, c)| {
            let mut e2 = vec![0; e.len()];
            for (i, &ei) in e.iter().enumerate() {
                e2[inv.0[i]] = ei;
            }
            (e2, c.clone())
        })
        .collect()
}

fn top_component(f: &Poly) -> Poly {
    let deg = f.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
    f.iter().filter(|(e, _)| e.iter().sum::<u32>() == deg).map(|(e, c)| (e.clone(), c.clone())).collect()
}

/// ε with top(u⁺_λ·(w_λ·u⁻_λ̄)) = ε·x_1^{m-1}⋯x_n^{m-1}, computed in both
/// association orders; None if the top term has a different shape or the
/// orders disagree.
pub fn leading_term_sign(shape: &Multipartition, b: &ParamBinding) -> Option<i64> {
    let n = shape.n();
    let bar = shape.conjugate();
    let (_, (_, w)) = special_tableaux(shape);
    let wbar = w_bar(shape);
    let up = u_poly(shape, b, false, 1);
    let um = u_poly(&bar, b, true, sign_pow(bar.n_stat()));
    let first = top_component(&poly_mul(&up, &act_on_poly(&w, &um)));
    let second = top_component(&poly_mul(&act_on_poly(&wbar, &up), &um));
    if first != second || first.len() != 1 {
        return None;
    }
    let (e, c) = first.iter().next()?;
    let target = vec![shape.m() as u32 - 1; n];
    if *e != target {
        return None;
    }
    if c.is_one() {
        Some(1)
    } else if *c == -Rational::one() {
        Some(-1)
    } else {
        None
    }
}

/// γ_{t_λ}·γ̄_{t^λ̄} evaluated at the binding.
pub fn z_normalizer(shape: &Multipartition, b: &ParamBinding) -> Result<Rational> {
    let (_, (last, _)) = special_tableaux(shape);
    let g = gamma_closed(&last).mul(&bar_scalar(&gamma_initial(&shape.conjugate()), shape.m()));
    g.evaluate(b)
}

/// E = z_λ w_λ̄/(γ_{t_λ} γ̄_{t^λ̄}).
pub fn z_element(alg: &Algebra, shape: &Multipartition) -> Result<Element> {
    let zw = alg.mul(&z_lambda(alg, shape), &alg.perm(&w_bar(shape)));
    Ok(zw.scale(&z_normalizer(shape, &alg.binding)?.recip()))
}

/// ε with (εE)² = εE, where E = z_element.
pub fn z_idempotent_sign(alg: &Algebra, shape: &Multipartition) -> Result<Option<i64>> {
    let e = z_element(alg, shape)?;
    Ok(match alg.mul(&e, &e).ratio_to(&e) {
        Some(c) if c.is_one() => Some(1),
        Some(c) if c == -Rational::one() => Some(-1),
        _ => None,
    })
}

/// ε with z_λ = ε·γ̄_{t^λ̄}·f_{t^λ t_λ}.
pub fn z_f_sign(alg: &Algebra, shape: &Multipartition) -> Result<Option<i64>> {
    let (first, (last, _)) = special_tableaux(shape);
    let gbar = bar_scalar(&gamma_initial(&shape.conjugate()), shape.m()).evaluate(&alg.binding)?;
    let f = f_st(alg, &first, &last)?.scale(&gbar);
    Ok(match z_lambda(alg, shape).ratio_to(&f) {
        Some(c) if c.is_one() => Some(1),
        Some(c) if c == -Rational::one() => Some(-1),
        _ => None,
    })
}

pub fn sign_report(alg: &Algebra, shape: &Multipartition) -> Result<SignReport> {
    let v = tau_z(alg, shape);
    let tau_z_sign = if v.is_one() {
        1
    } else if v == -Rational::one() {
        -1
    } else {
        0
    };
    let z_idempotent_sign =
        if alg.binding.generic { z_idempotent_sign(alg, shape)? } else { None };
    Ok(SignReport {
        lambda: shape.to_string(),
        n_lambda: shape.n_stat(),
        n_lambda_bar: shape.conjugate().n_stat(),
        tau_z_sign,
        leading_sign: leading_term_sign(shape, &alg.binding).unwrap_or(0),
        z_idempotent_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::default_binding;

    fn mp(s: &str) -> Multipartition {
        Multipartition::parse(s).unwrap()
    }

    #[test]
    fn one_box_elements() {
        let alg = Algebra::new(&ParamBinding::from_ints(1, &[0, 7]));
        assert_eq!(n_lambda(&alg, &mp("0|1")), alg.scalar(rat(-1)));
        assert_eq!(n_lambda(&alg, &mp("1|0")), alg.x_minus(1, &rat(0)));
        assert_eq!(z_lambda(&alg, &mp("1|0")), alg.x_minus(1, &rat(7)).neg());
        assert_eq!(z_lambda(&alg, &mp("0|1")), alg.x_minus(1, &rat(0)));
        assert_eq!(tau_z(&alg, &mp("1|0")), rat(-1));
    }

    #[test]
    fn n_lambda_m1() {
        let alg = Algebra::new(&default_binding(1, 2));
        assert_eq!(n_lambda(&alg, &mp("2")), alg.one().sub(&alg.s(1)));
        assert_eq!(n_lambda(&alg, &mp("1.1")), alg.one());
    }

    #[test]
    fn worked_leading_term() {
        let lam = mp("2.1.1|2.1|1");
        let b = default_binding(3, 8);
        assert_eq!(leading_term_sign(&lam, &b), Some(-1));
    }
}
