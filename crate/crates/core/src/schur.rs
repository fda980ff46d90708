//! Schur elements s_λ(Q) by three routes, the hook/X-factor product,
//! palindromy and the weight decomposition of τ.

use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::combinatorics::{multipartitions, special_tableaux, transpose, Multipartition, Tableau};
use crate::error::{Error, Result};
use crate::scalars::{bar_scalar, frac, rat, rational_str, sign_pow, FactoredScalar, Rational};
use crate::seminormal::{f_t_element, gamma_closed, gamma_initial, gamma_seminormal, SeminormalRep};

/// 1/τ(F_{t^λ}).
pub fn schur_via_tau(alg: &Algebra, shape: &Multipartition) -> Result<Rational> {
    let f = f_t_element(alg, &Tableau::initial(shape))?;
    let t = alg.tau(&f);
    if t.is_zero() {
        return Err(Error::ZeroTrace);
    }
    Ok(t.recip())
}

/// (-1)^{n(λ)} γ_{t_λ} bar(γ_{t^λ̄}).
pub fn schur_via_gamma(shape: &Multipartition) -> FactoredScalar {
    let (_, (last, _)) = special_tableaux(shape);
    let g = gamma_closed(&last).mul(&bar_scalar(&gamma_initial(&shape.conjugate()), shape.m()));
    g.scale(&rat(sign_pow(shape.n_stat())))
}

/// Cross-component tail for a node of content `content` in component s
/// against component t:
/// (z - λ^t_1) Π_{r=1}^{λ^t_1} (z - r + 1 + λ̄^t_r)/(z - r + λ̄^t_r),
/// z = content + q_s - q_t.
fn tail(shape: &Multipartition, content: i64, s: usize, t: usize) -> FactoredScalar {
    let p = &shape.components[t - 1];
    let first = p.first().copied().unwrap_or(0) as i64;
    let cols = transpose(p);
    let mut g = FactoredScalar::linear(content - first, s, t);
    for (r, &c) in cols.iter().enumerate() {
        let r = r as i64 + 1;
        let c = c as i64;
        g.push(content - r + 1 + c, s, t, 1);
        g.push(content - r + c, s, t, -1);
    }
    g
}

/// Π_{(i,j,s)} h/ℓ times the cross-component tails, for t > s.
pub fn gamma_tlam_closed(shape: &Multipartition) -> FactoredScalar {
    let mut ratio = rat(1);
    let mut g = FactoredScalar::one();
    for x in shape.nodes() {
        let (h, leg) = shape.hooks(&x).expect("node of the shape");
        ratio *= frac(h, leg);
        for t in x.comp + 1..=shape.m() {
            g = g.mul(&tail(shape, x.content(), x.comp, t));
        }
    }
    g.scale(&ratio)
}

/// Π hooks Π_{s<t} X_st with
/// X_st = Π_{(k,l) ∈ λ^t} (l - k + q_t - q_s) Π_{(i,j) ∈ λ^s} tail.
pub fn schur_closed(shape: &Multipartition) -> FactoredScalar {
    let mut hooks = 1i64;
    let mut g = FactoredScalar::one();
    for x in shape.nodes() {
        hooks *= shape.hooks(&x).expect("node of the shape").0;
        for t in x.comp + 1..=shape.m() {
            g = g.mul(&tail(shape, x.content(), x.comp, t));
        }
        for s in 1..x.comp {
            g.push(x.content(), x.comp, s, 1);
        }
    }
    g.scale(&rat(hooks))
}

/// η_i: the one-row partition (n) in component i.
pub fn eta(m: usize, n: usize, i: usize) -> Multipartition {
    let mut c = vec![vec![]; m];
    c[i - 1] = vec![n];
    Multipartition::new(c)
}

/// n! Π_{j≠i} Π_{k=0}^{n-1} (k + q_i - q_j).
pub fn eta_formula(m: usize, n: usize, i: usize) -> FactoredScalar {
    let mut g = FactoredScalar::int((1..=n as i64).product());
    for j in (1..=m).filter(|&j| j != i) {
        for k in 0..n as i64 {
            g.push(k, i, j, 1);
        }
    }
    g
}

/// G(λ) = Π_t γ_t.
pub fn gram_det_closed(shape: &Multipartition) -> FactoredScalar {
    gamma_seminormal(shape).iter().fold(FactoredScalar::one(), |acc, g| acc.mul(g))
}

/// ε with bar(s_λ) = ε·s_λ̄, if such a sign exists.
pub fn palindrome_sign(shape: &Multipartition) -> Option<i64> {
    let b = bar_scalar(&schur_via_gamma(shape), shape.m());
    let c = schur_via_gamma(&shape.conjugate());
    if b == c {
        Some(1)
    } else if b == c.neg() {
        Some(-1)
    } else {
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurRecord {
    pub lambda: String,
    pub schur_factored: FactoredScalar,
    #[serde(with = "rational_str")]
    pub schur_value: Rational,
    pub routes_agree: bool,
    /// bar(s_λ) = (-1)^{(m-1)n} s_λ̄.
    pub palindromic: bool,
}

pub fn schur_record(alg: &Algebra, shape: &Multipartition) -> Result<SchurRecord> {
    let via_tau = schur_via_tau(alg, shape)?;
    let via_gamma = schur_via_gamma(shape);
    let closed = schur_closed(shape);
    let routes_agree = via_gamma == closed
        && via_gamma.evaluate(&alg.binding)? == via_tau
        && closed.evaluate(&alg.binding)? == via_tau;
    let palindromic = palindrome_sign(shape) == Some(sign_pow((shape.m() - 1) * shape.n()));
    Ok(SchurRecord {
        lambda: shape.to_string(),
        schur_factored: closed,
        schur_value: via_tau,
        routes_agree,
        palindromic,
    })
}

pub fn consistency_report(alg: &Algebra) -> Result<Vec<SchurRecord>> {
    alg.binding.require_generic()?;
    multipartitions(alg.m, alg.n).par_iter().map(|l| schur_record(alg, l)).collect()
}

/// Seminormal representations with their evaluated Schur elements, for the
/// weight decomposition τ = Σ χ^λ/s_λ.
pub struct Weights {
    pub reps: Vec<SeminormalRep>,
    pub schur: Vec<Rational>,
}

impl Weights {
    pub fn new(alg: &Algebra) -> Result<Weights> {
        alg.binding.require_generic()?;
        let shapes = multipartitions(alg.m, alg.n);
        let reps = shapes
            .iter()
            .map(|l| SeminormalRep::new(l, &alg.binding))
            .collect::<Result<Vec<_>>>()?;
        let schur = shapes
            .iter()
            .map(|l| schur_closed(l).evaluate(&alg.binding))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weights { reps, schur })
    }

    /// Σ_λ χ^λ(h)/s_λ.
    pub fn weighted_trace(&self, alg: &Algebra, h: &Element) -> Rational {
        self.reps
            .iter()
            .zip(&self.schur)
            .fold(Rational::zero(), |acc, (r, s)| acc + r.character(alg, h) / s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{default_binding, ParamBinding};

    fn mp(s: &str) -> Multipartition {
        Multipartition::parse(s).unwrap()
    }

    #[test]
    fn one_box() {
        let alg = Algebra::new(&ParamBinding::from_ints(1, &[0, 7]));
        assert_eq!(schur_via_tau(&alg, &mp("1|0")).unwrap(), rat(-7));
        assert_eq!(schur_via_gamma(&mp("0|1")), FactoredScalar::linear(0, 2, 1));
        assert_eq!(schur_via_gamma(&mp("1|0")), FactoredScalar::linear(0, 1, 2));
        assert_eq!(schur_closed(&mp("1|0")), FactoredScalar::linear(0, 1, 2));
    }

    #[test]
    fn m1_hooks() {
        let alg = Algebra::new(&default_binding(1, 2));
        assert_eq!(schur_via_tau(&alg, &mp("2")).unwrap(), rat(2));
        assert_eq!(schur_closed(&mp("2.1")), FactoredScalar::int(3));
        assert_eq!(gamma_tlam_closed(&mp("3")), FactoredScalar::int(6));
    }

    #[test]
    fn eta_specialization() {
        for m in 1..=3 {
            for n in 1..=4 {
                for i in 1..=m {
                    assert_eq!(schur_closed(&eta(m, n, i)), eta_formula(m, n, i), "m={m} n={n} i={i}");
                }
            }
        }
    }
}
