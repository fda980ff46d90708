//! Normal forms in H_{m,n}(Q) on the basis x^a·w (0 <= a_k < m, w in S_n).
//!
//! The engine rests on three tables:
//! * `v·x^b` for every permutation v and reduced monomial b. Moving a simple
//!   reflection left past a polynomial uses s_i f = (s_i f) s_i + ∂_i f, where
//!   ∂_i f = (f - s_i f)/(x_{i+1} - x_i); no exponent ever grows, so the
//!   coefficients are integers and independent of Q.
//! * RED(j), the normal form of x_j^m, built from the cyclotomic relation and
//!   x_j^m = s x_{j-1}^m s + Σ_t x_{j-1}^t x_j^{m-1-t} s with s = s_{j-1}.
//! * normal forms of x^c for every c with entries below 2m-1. Reducing x_j^m
//!   by RED(j) strictly lowers the total degree, which bounds the recursion.
//!
//! A product (x^a v)(x^b w) is then x^a (v x^b) w, looked up as a cached
//! triple (a, v, b) and right-multiplied by w.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, SymmetricGroup};
use crate::scalars::{parse_rational, rat, ParamBinding, Rational};

type Term = (u32, u32, Rational);

/// Sparse combination of basis elements, keyed by `mono * n! + perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    key: u64,
    terms: BTreeMap<u32, Rational>,
}

impl Element {
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, idx: u32) -> Rational {
        self.terms.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    fn check(&self, other: &Element) {
        assert_eq!(self.key, other.key, "{}", Error::BindingMismatch);
    }

    pub fn add(&self, other: &Element) -> Element {
        self.check(other);
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.check(other);
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        out
    }

    pub fn add_assign_scaled(&mut self, other: &Element, c: &Rational) {
        self.check(other);
        if c.is_zero() {
            return;
        }
        for (&k, v) in &other.terms {
            let e = self.terms.entry(k).or_insert_with(Rational::zero);
            *e += v * c;
            if e.is_zero() {
                self.terms.remove(&k);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element { key: self.key, terms: BTreeMap::new() };
        }
        Element { key: self.key, terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Rational::one())
    }

    /// Some c with self = c·other, if one exists (zero counts as 0·other).
    pub fn ratio_to(&self, other: &Element) -> Option<Rational> {
        self.check(other);
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (&k, v) = other.terms.iter().next()?;
        let c = self.coeff(k) / v;
        if other.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }
}

/// Generators of H_{m,n}(Q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Identity,
    S0,
    /// s_i, 1 <= i < n.
    S(usize),
    /// Jucys–Murphy element x_k, 1 <= k <= n.
    X(usize),
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exps: Vec<u32>,
    perm: Vec<usize>,
    coeff: String,
}

pub struct Algebra {
    pub m: usize,
    pub n: usize,
    pub binding: ParamBinding,
    pub group: SymmetricGroup,
    key: u64,
    nmono: usize,
    /// v·x^b, indexed by v * nmono + b.
    perm_mono: Vec<Vec<(u32, u32, i64)>>,
    /// RED(j) for j = 1..n at index j-1.
    red: Vec<Vec<(Vec<u32>, u32, Rational)>>,
    /// Normal forms of x^c, 0 <= c_k <= 2m-2.
    box_nf: Vec<Vec<Term>>,
    /// Normal forms of x^a v x^b, filled on demand.
    triple: Vec<OnceLock<Vec<Term>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(m={}, n={}, q={:?})", self.m, self.n, self.binding.q)
    }
}

fn mono_index(exps: &[u32], base: usize) -> usize {
    exps.iter().rev().fold(0, |acc, &e| acc * base + e as usize)
}

fn mono_exps(mut idx: usize, base: usize, n: usize) -> Vec<u32> {
    let mut e = Vec::with_capacity(n);
    for _ in 0..n {
        e.push((idx % base) as u32);
        idx /= base;
    }
    e
}

impl Algebra {
    pub fn new(binding: &ParamBinding) -> Algebra {
        let (m, n) = (binding.m, binding.n);
        assert!(m >= 1 && n >= 1, "m and n must be positive");
        let group = SymmetricGroup::new(n);
        let nmono = m.pow(n as u32);
        let mut alg = Algebra {
            m,
            n,
            binding: binding.clone(),
            group,
            key: binding.key(),
            nmono,
            perm_mono: Vec::new(),
            red: Vec::new(),
            box_nf: Vec::new(),
            triple: Vec::new(),
        };
        alg.build_perm_mono();
        alg.build_red();
        alg.build_box();
        let g = alg.group.order();
        alg.triple = (0..nmono * g * nmono).map(|_| OnceLock::new()).collect();
        alg
    }

    pub fn dim(&self) -> usize {
        self.nmono * self.group.order()
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    /// s_i·x^e u as (exps, perm, integer coefficient) terms.
    fn lmul_simple(&self, i: usize, exps: &[u32], u: u32) -> Vec<(Vec<u32>, u32, i64)> {
        let mut out = Vec::new();
        let mut swapped = exps.to_vec();
        swapped.swap(i - 1, i);
        out.push((swapped, self.group.mul(self.group.simple(i), u), 1));
        let (p, q) = (exps[i - 1], exps[i]);
        if p > q {
            for t in 0..p - q {
                let mut e = exps.to_vec();
                e[i - 1] = q + t;
                e[i] = p - 1 - t;
                out.push((e, u, -1));
            }
        } else if p < q {
            for t in 0..q - p {
                let mut e = exps.to_vec();
                e[i - 1] = p + t;
                e[i] = q - 1 - t;
                out.push((e, u, 1));
            }
        }
        out
    }

    fn build_perm_mono(&mut self) {
        let g = self.group.order();
        let mut order: Vec<u32> = (0..g as u32).collect();
        order.sort_by_key(|&v| self.group.lengths[v as usize]);
        let mut table = vec![Vec::new(); g * self.nmono];
        for &v in &order {
            for b in 0..self.nmono {
                let word = &self.group.words[v as usize];
                let entry = if word.is_empty() {
                    vec![(b as u32, v, 1)]
                } else {
                    let i = word[0];
                    let rest = self.group.mul(self.group.simple(i), v);
                    let mut acc: HashMap<(u32, u32), i64> = HashMap::new();
                    for &(e, u, k) in &table[rest as usize * self.nmono + b] {
                        let exps = mono_exps(e as usize, self.m, self.n);
                        for (e2, u2, k2) in self.lmul_simple(i, &exps, u) {
                            *acc.entry((mono_index(&e2, self.m) as u32, u2)).or_insert(0) += k * k2;
                        }
                    }
                    let mut v: Vec<_> =
                        acc.into_iter().filter(|&(_, k)| k != 0).map(|((e, u), k)| (e, u, k)).collect();
                    v.sort_unstable();
                    v
                };
                table[v as usize * self.nmono + b] = entry;
            }
        }
        self.perm_mono = table;
    }

    fn build_red(&mut self) {
        let (m, n) = (self.m, self.n);
        let id = self.group.index_of(&Permutation::identity(n));
        // prod (x - q_i) = Σ c_k x^k
        let mut poly = vec![Rational::one()];
        for q in &self.binding.q {
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * q;
            }
            poly = next;
        }
        let mut red1 = Vec::new();
        for (k, c) in poly.iter().enumerate().take(m) {
            if !c.is_zero() {
                let mut e = vec![0u32; n];
                e[0] = k as u32;
                red1.push((e, id, -c.clone()));
            }
        }
        self.red.push(red1);
        for j in 2..=n {
            let s = self.group.simple(j - 1);
            let mut acc: HashMap<(Vec<u32>, u32), Rational> = HashMap::new();
            for (e, u, c) in &self.red[j - 2] {
                for (e2, u2, k) in self.lmul_simple(j - 1, e, *u) {
                    let u3 = self.group.mul(u2, s);
                    *acc.entry((e2, u3)).or_insert_with(Rational::zero) += c * rat(k);
                }
            }
            for t in 0..m as u32 {
                let mut e = vec![0u32; n];
                e[j - 2] = t;
                e[j - 1] = m as u32 - 1 - t;
                *acc.entry((e, s)).or_insert_with(Rational::zero) += Rational::one();
            }
            let mut red: Vec<_> = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((e, u), c)| (e, u, c))
                .collect();
            red.sort();
            self.red.push(red);
        }
    }

    /// Normal form of x^c for arbitrary exponents.
    fn monomial_nf(&self, c: &[u32], memo: &mut HashMap<Vec<u32>, Vec<Term>>) -> Vec<Term> {
        let m = self.m as u32;
        let Some(j) = (0..self.n).rev().find(|&k| c[k] >= m) else {
            let id = self.group.index_of(&Permutation::identity(self.n));
            return vec![(mono_index(c, self.m) as u32, id, Rational::one())];
        };
        if let Some(v) = memo.get(c) {
            return v.clone();
        }
        let mut acc: HashMap<(u32, u32), Rational> = HashMap::new();
        for (f, u, d) in &self.red[j] {
            let mut next = c.to_vec();
            next[j] -= m;
            for (k, fk) in f.iter().enumerate() {
                next[k] += fk;
            }
            for (g, p, d2) in self.monomial_nf(&next, memo) {
                *acc.entry((g, self.group.mul(p, *u))).or_insert_with(Rational::zero) += d * &d2;
            }
        }
        let mut out: Vec<Term> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((g, p), c)| (g, p, c)).collect();
        out.sort_unstable_by_key(|t| (t.0, t.1));
        memo.insert(c.to_vec(), out.clone());
        out
    }

    fn build_box(&mut self) {
        let base = 2 * self.m - 1;
        let size = base.pow(self.n as u32);
        let mut memo = HashMap::new();
        let table = (0..size)
            .map(|idx| self.monomial_nf(&mono_exps(idx, base, self.n), &mut memo))
            .collect();
        self.box_nf = table;
    }

    fn triple_nf(&self, a: u32, v: u32, b: u32) -> &[Term] {
        let g = self.group.order();
        let slot = (a as usize * g + v as usize) * self.nmono + b as usize;
        self.triple[slot].get_or_init(|| {
            let base = 2 * self.m - 1;
            let ea = mono_exps(a as usize, self.m, self.n);
            let mut acc: HashMap<(u32, u32), Rational> = HashMap::new();
            for &(e, u, k) in &self.perm_mono[v as usize * self.nmono + b as usize] {
                let ee = mono_exps(e as usize, self.m, self.n);
                let sum: Vec<u32> = ea.iter().zip(&ee).map(|(x, y)| x + y).collect();
                for (gm, p, d) in &self.box_nf[mono_index(&sum, base)] {
                    *acc.entry((*gm, self.group.mul(*p, u))).or_insert_with(Rational::zero) +=
                        d * rat(k);
                }
            }
            let mut out: Vec<Term> =
                acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((g, p), c)| (g, p, c)).collect();
            out.sort_unstable_by_key(|t| (t.0, t.1));
            out
        })
    }

    // ----- construction -----

    pub fn zero(&self) -> Element {
        Element { key: self.key, terms: BTreeMap::new() }
    }

    fn from_map(&self, terms: BTreeMap<u32, Rational>) -> Element {
        Element { key: self.key, terms }
    }

    pub fn basis_index(&self, exps: &[u32], perm: &Permutation) -> u32 {
        assert!(exps.iter().all(|&e| (e as usize) < self.m), "exponent out of range");
        (mono_index(exps, self.m) * self.group.order() + self.group.index_of(perm) as usize) as u32
    }

    /// (exponents, permutation) of a basis index.
    pub fn basis_parts(&self, idx: u32) -> (Vec<u32>, &Permutation) {
        let g = self.group.order();
        let (a, v) = (idx as usize / g, idx as usize % g);
        (mono_exps(a, self.m, self.n), &self.group.elements[v])
    }

    pub fn basis(&self, idx: u32) -> Element {
        self.from_map(BTreeMap::from([(idx, Rational::one())]))
    }

    pub fn one(&self) -> Element {
        self.perm(&Permutation::identity(self.n))
    }

    pub fn scalar(&self, c: Rational) -> Element {
        self.one().scale(&c)
    }

    pub fn perm(&self, w: &Permutation) -> Element {
        self.basis(self.basis_index(&vec![0; self.n], w))
    }

    /// x^c for any exponents, reduced.
    pub fn monomial(&self, c: &[u32]) -> Element {
        let mut memo = HashMap::new();
        let g = self.group.order() as u32;
        let terms = self
            .monomial_nf(c, &mut memo)
            .into_iter()
            .map(|(a, p, d)| (a * g + p, d))
            .collect();
        self.from_map(terms)
    }

    pub fn try_generator(&self, gen: Gen) -> Result<Element> {
        let n = self.n;
        match gen {
            Gen::Identity => Ok(self.one()),
            Gen::S0 => self.try_generator(Gen::X(1)),
            Gen::S(i) if i >= 1 && i < n => Ok(self.perm(&Permutation::simple(n, i))),
            Gen::X(k) if k >= 1 && k <= n => {
                let mut e = vec![0; n];
                e[k - 1] = 1;
                Ok(self.monomial(&e))
            }
            Gen::S(i) | Gen::X(i) => Err(Error::RangeError { k: i, n }),
        }
    }

    pub fn generator(&self, gen: Gen) -> Element {
        self.try_generator(gen).expect("generator index out of range")
    }

    pub fn s(&self, i: usize) -> Element {
        self.generator(Gen::S(i))
    }

    pub fn x(&self, k: usize) -> Element {
        self.generator(Gen::X(k))
    }

    /// x_k - c.
    pub fn x_minus(&self, k: usize, c: &Rational) -> Element {
        self.x(k).sub(&self.scalar(c.clone()))
    }

    // ----- arithmetic -----

    pub fn try_mul(&self, a: &Element, b: &Element) -> Result<Element> {
        if a.key != self.key || b.key != self.key {
            return Err(Error::BindingMismatch);
        }
        Ok(self.mul(a, b))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        assert!(a.key == self.key && b.key == self.key, "{}", Error::BindingMismatch);
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let g = self.group.order() as u32;
        let mut acc: Vec<Rational> = vec![Rational::zero(); self.dim()];
        let mut touched = vec![false; self.dim()];
        for (&ia, ca) in &a.terms {
            let (am, v) = (ia / g, ia % g);
            for (&ib, cb) in &b.terms {
                let (bm, w) = (ib / g, ib % g);
                let c = ca * cb;
                for (gm, p, d) in self.triple_nf(am, v, bm) {
                    let idx = (gm * g + self.group.mul(*p, w)) as usize;
                    touched[idx] = true;
                    if d.is_one() {
                        acc[idx] += &c;
                    } else {
                        acc[idx] += &c * d;
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(i, c)| touched[*i] && !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        self.from_map(terms)
    }

    /// Product of a sequence, left to right.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// The anti-automorphism fixing every x_k and s_j.
    pub fn star(&self, a: &Element) -> Element {
        let g = self.group.order() as u32;
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&ia, c) in &a.terms {
            let (am, w) = (ia / g, ia % g);
            let winv = self.group.inv(w);
            for &(e, u, k) in &self.perm_mono[winv as usize * self.nmono + am as usize] {
                let e2 = acc.entry(e * g + u).or_insert_with(Rational::zero);
                *e2 += c * rat(k);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        self.from_map(acc)
    }

    /// Coefficient of x_1^{m-1}⋯x_n^{m-1}·1.
    pub fn tau(&self, a: &Element) -> Rational {
        let top = vec![self.m as u32 - 1; self.n];
        a.coeff(self.basis_index(&top, &Permutation::identity(self.n)))
    }

    /// (a, b) = τ(a b*).
    pub fn inner(&self, a: &Element, b: &Element) -> Rational {
        self.tau(&self.mul(a, &self.star(b)))
    }

    /// Filtration degree: the largest Σ a_k over the support.
    pub fn degree(&self, a: &Element) -> Option<u32> {
        a.terms.keys().map(|&i| self.basis_parts(i).0.iter().sum()).max()
    }

    // ----- serialization -----

    pub fn to_json(&self, a: &Element) -> serde_json::Value {
        let terms: Vec<JsonTerm> = a
            .terms
            .iter()
            .map(|(&i, c)| {
                let (exps, w) = self.basis_parts(i);
                JsonTerm { exps, perm: w.images(), coeff: c.to_string() }
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<Element> {
        let terms: Vec<JsonTerm> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = self.zero();
        for t in terms {
            if t.exps.len() != self.n || t.perm.len() != self.n {
                return Err(Error::SizeMismatch(t.exps.len(), self.n));
            }
            let mut seen = vec![false; self.n];
            for &p in &t.perm {
                if p == 0 || p > self.n || seen[p - 1] {
                    return Err(Error::Parse(format!("not a permutation: {:?}", t.perm)));
                }
                seen[p - 1] = true;
            }
            let w = Permutation::from_images(&t.perm);
            let e = self.monomial(&t.exps);
            let term = self.mul(&e, &self.perm(&w)).scale(&parse_rational(&t.coeff)?);
            out = out.add(&term);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::default_binding;

    #[test]
    fn small_products() {
        let alg = Algebra::new(&default_binding(2, 3));
        assert_eq!(alg.mul(&alg.s(1), &alg.s(1)), alg.one());
        // s1 x1 = x2 s1 - 1
        let lhs = alg.mul(&alg.s(1), &alg.x(1));
        let rhs = alg.mul(&alg.x(2), &alg.s(1)).sub(&alg.one());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
        assert_eq!(alg.generator(Gen::S0), alg.x(1));
        assert!(alg.try_generator(Gen::S(3)).is_err());
    }

    #[test]
    fn cyclotomic_square() {
        let alg = Algebra::new(&ParamBinding::from_ints(1, &[0, 7]));
        let x = alg.x(1);
        assert_eq!(alg.mul(&x, &x), x.scale(&rat(7)));
        assert_eq!(alg.tau(&x), rat(1));
        assert_eq!(alg.tau(&alg.one()), rat(0));
        assert_eq!(alg.inner(&x, &alg.one()), rat(1));
    }

    #[test]
    fn tau_on_group_elements_m1() {
        let alg = Algebra::new(&default_binding(1, 3));
        for w in Permutation::all(3) {
            let v = if w.is_identity() { 1 } else { 0 };
            assert_eq!(alg.tau(&alg.perm(&w)), rat(v));
        }
    }

    #[test]
    fn json_round_trip() {
        let alg = Algebra::new(&default_binding(2, 2));
        let a = alg.mul(&alg.x(2), &alg.s(1)).add(&alg.scalar(crate::scalars::frac(3, 4)));
        let v = alg.to_json(&a);
        assert_eq!(alg.from_json(&v).unwrap(), a);
    }
}
