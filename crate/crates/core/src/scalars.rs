//! Exact rationals, parameter bindings and factored scalars over q_1..q_m.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p/q" or "p" (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Concrete values for q_1..q_m, together with the size n the genericity
/// certificate refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBinding {
    pub m: usize,
    pub n: usize,
    #[serde(with = "rational_vec")]
    pub q: Vec<Rational>,
    #[serde(skip_deserializing)]
    pub generic: bool,
}

impl ParamBinding {
    pub fn new(n: usize, q: Vec<Rational>) -> ParamBinding {
        let m = q.len();
        let mut b = ParamBinding { m, n, q, generic: false };
        b.generic = b.vanishing_factor().is_none();
        b
    }

    pub fn from_ints(n: usize, q: &[i64]) -> ParamBinding {
        ParamBinding::new(n, q.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_json(text: &str) -> Result<ParamBinding> {
        let raw: ParamBinding =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.q.len() != raw.m {
            return Err(Error::SizeMismatch(raw.q.len(), raw.m));
        }
        Ok(ParamBinding::new(raw.n, raw.q))
    }

    /// The first factor of P_H(Q) that vanishes here, if any.
    pub fn vanishing_factor(&self) -> Option<String> {
        let p = semisimplicity_poly(self.m, self.n);
        p.factors
            .keys()
            .find(|f| f.evaluate(&self.q).is_zero())
            .map(|f| f.to_string())
    }

    pub fn require_generic(&self) -> Result<()> {
        match self.vanishing_factor() {
            None => Ok(()),
            Some(factor) => Err(Error::NonGenericBinding { factor }),
        }
    }

    /// Value of q_c with the convention q_0 = 0.
    pub fn q_value(&self, c: usize) -> Rational {
        if c == 0 {
            Rational::zero()
        } else {
            self.q[c - 1].clone()
        }
    }

    pub fn residue_value(&self, r: Residue) -> Rational {
        rat(r.d) + self.q_value(r.c)
    }

    /// Stable 64-bit key identifying (m, n, q).
    pub fn key(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.m.hash(&mut h);
        self.n.hash(&mut h);
        for v in &self.q {
            v.to_string().hash(&mut h);
        }
        h.finish()
    }
}

/// q_i = (i-1)(2n+1).
pub fn default_binding(m: usize, n: usize) -> ParamBinding {
    let step = 2 * n as i64 + 1;
    ParamBinding::new(n, (0..m as i64).map(|i| rat(i * step)).collect())
}

/// A second generic binding with non-integral differences q_i - q_j.
pub fn alt_binding(m: usize, n: usize) -> ParamBinding {
    let step = frac(1, m as i64 + 1) - rat(2 * n as i64);
    ParamBinding::new(n, (0..m as i64).map(|i| rat(i) * &step).collect())
}

/// d + q_s - q_t with q_0 = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearFactor {
    pub s: usize,
    pub t: usize,
    pub d: i64,
}

enum Canon {
    Constant(i64),
    Factor(i64, LinearFactor),
}

impl LinearFactor {
    fn canon(d: i64, s: usize, t: usize) -> Canon {
        if s == t {
            Canon::Constant(d)
        } else if t == 0 {
            Canon::Factor(1, LinearFactor { s, t, d })
        } else if s == 0 {
            Canon::Factor(-1, LinearFactor { s: t, t: 0, d: -d })
        } else if s < t {
            Canon::Factor(1, LinearFactor { s, t, d })
        } else {
            Canon::Factor(-1, LinearFactor { s: t, t: s, d: -d })
        }
    }

    pub fn evaluate(&self, q: &[Rational]) -> Rational {
        let at = |c: usize| if c == 0 { Rational::zero() } else { q[c - 1].clone() };
        rat(self.d) + at(self.s) - at(self.t)
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d != 0 {
            write!(f, "{}+", self.d)?;
        }
        write!(f, "q{}", self.s)?;
        if self.t != 0 {
            write!(f, "-q{}", self.t)?;
        }
        Ok(())
    }
}

/// coeff * prod factor^exp, kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredScalar {
    pub coeff: Rational,
    pub factors: BTreeMap<LinearFactor, i32>,
}

impl FactoredScalar {
    pub fn from_rational(c: Rational) -> FactoredScalar {
        FactoredScalar { coeff: c, factors: BTreeMap::new() }
    }

    pub fn int(c: i64) -> FactoredScalar {
        FactoredScalar::from_rational(rat(c))
    }

    pub fn one() -> FactoredScalar {
        FactoredScalar::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// (d + q_s - q_t)^exp.
    pub fn linear_pow(d: i64, s: usize, t: usize, exp: i32) -> FactoredScalar {
        let mut out = FactoredScalar::one();
        out.push(d, s, t, exp);
        out
    }

    pub fn linear(d: i64, s: usize, t: usize) -> FactoredScalar {
        FactoredScalar::linear_pow(d, s, t, 1)
    }

    pub fn residue(r: Residue) -> FactoredScalar {
        FactoredScalar::linear(r.d, r.c, 0)
    }

    /// res_a - res_b as a scalar.
    pub fn residue_gap(a: Residue, b: Residue) -> FactoredScalar {
        FactoredScalar::linear(a.d - b.d, a.c, b.c)
    }

    /// Multiplies in (d + q_s - q_t)^exp.
    pub fn push(&mut self, d: i64, s: usize, t: usize, exp: i32) {
        if exp == 0 || self.coeff.is_zero() {
            return;
        }
        match LinearFactor::canon(d, s, t) {
            Canon::Constant(c) => {
                if c == 0 {
                    assert!(exp > 0, "zero constant raised to a negative power");
                    *self = FactoredScalar::int(0);
                } else {
                    self.coeff *= pow_rat(&rat(c), exp);
                }
            }
            Canon::Factor(sign, lf) => {
                if sign < 0 && exp % 2 != 0 {
                    self.coeff = -self.coeff.clone();
                }
                let e = self.factors.entry(lf).or_insert(0);
                *e += exp;
                if *e == 0 {
                    self.factors.remove(&lf);
                }
            }
        }
    }

    pub fn mul(&self, other: &FactoredScalar) -> FactoredScalar {
        if self.is_zero() || other.is_zero() {
            return FactoredScalar::int(0);
        }
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        for (lf, &e) in &other.factors {
            out.push(lf.d, lf.s, lf.t, e);
        }
        out
    }

    pub fn inv(&self) -> FactoredScalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        FactoredScalar {
            coeff: self.coeff.recip(),
            factors: self.factors.iter().map(|(k, &e)| (*k, -e)).collect(),
        }
    }

    pub fn div(&self, other: &FactoredScalar) -> FactoredScalar {
        self.mul(&other.inv())
    }

    pub fn neg(&self) -> FactoredScalar {
        FactoredScalar { coeff: -self.coeff.clone(), factors: self.factors.clone() }
    }

    pub fn scale(&self, c: &Rational) -> FactoredScalar {
        self.mul(&FactoredScalar::from_rational(c.clone()))
    }

    pub fn evaluate(&self, b: &ParamBinding) -> Result<Rational> {
        let mut v = self.coeff.clone();
        if v.is_zero() {
            return Ok(v);
        }
        for (lf, &e) in &self.factors {
            for c in [lf.s, lf.t] {
                if c > b.m {
                    return Err(Error::IndexError { index: c, m: b.m });
                }
            }
            let x = lf.evaluate(&b.q);
            if x.is_zero() {
                if e < 0 {
                    return Err(Error::DivisionByZero(lf.to_string()));
                }
                return Ok(Rational::zero());
            }
            v *= pow_rat(&x, e);
        }
        Ok(v)
    }

    /// Largest component index appearing.
    pub fn max_component(&self) -> usize {
        self.factors.keys().map(|f| f.s.max(f.t)).max().unwrap_or(0)
    }
}

fn pow_rat(x: &Rational, e: i32) -> Rational {
    let p = num::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// The ring map q_i -> -q_{m-i+1} applied factorwise.
pub fn bar_scalar(fs: &FactoredScalar, m: usize) -> FactoredScalar {
    let flip = |c: usize| if c == 0 { 0 } else { m + 1 - c };
    let mut out = FactoredScalar::from_rational(fs.coeff.clone());
    for (lf, &e) in &fs.factors {
        // d + q_s - q_t  ->  d - q_{s'} + q_{t'}
        out.push(lf.d, flip(lf.t), flip(lf.s), e);
    }
    out
}

/// P_H(Q) = n! prod_{i<j} prod_{|d|<n} (d + q_i - q_j).
pub fn semisimplicity_poly(m: usize, n: usize) -> FactoredScalar {
    let mut p = FactoredScalar::int((1..=n as i64).product());
    for i in 1..=m {
        for j in i + 1..=m {
            for d in -(n as i64 - 1)..=(n as i64 - 1) {
                p.push(d, i, j, 1);
            }
        }
    }
    p
}

impl fmt::Display for FactoredScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() || self.factors.is_empty() {
            return write!(f, "{}", self.coeff);
        }
        let mut parts = Vec::new();
        if self.coeff == -Rational::one() {
            write!(f, "-")?;
        } else if !self.coeff.is_one() {
            parts.push(self.coeff.to_string());
        }
        for (lf, &e) in &self.factors {
            if e == 1 {
                parts.push(format!("({lf})"));
            } else {
                parts.push(format!("({lf})^{e}"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for FactoredScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// d + q_c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Residue {
    pub d: i64,
    pub c: usize,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.c)
    }
}

/// Sign helper: (-1)^k.
pub fn sign_pow(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let mut fs = FactoredScalar::int(6);
        for d in -1..=2 {
            fs.push(d, 1, 2, 1);
        }
        let b = ParamBinding::from_ints(3, &[0, 7]);
        assert_eq!(fs.evaluate(&b).unwrap(), rat(10080));
        assert_eq!(FactoredScalar::one().evaluate(&b).unwrap(), rat(1));
        let inv = FactoredScalar::linear_pow(0, 1, 2, -1);
        let bad = ParamBinding::from_ints(2, &[3, 3]);
        assert!(matches!(inv.evaluate(&bad), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn bar_fixes_q1_minus_q2() {
        let f = FactoredScalar::linear(0, 1, 2);
        assert_eq!(bar_scalar(&f, 2), f);
    }

    #[test]
    fn semisimplicity_examples() {
        assert_eq!(semisimplicity_poly(1, 3), FactoredScalar::int(6));
        let p = semisimplicity_poly(2, 2);
        assert_eq!(p.to_string(), "2*(-1+q1-q2)*(q1-q2)*(1+q1-q2)");
        assert!(p.evaluate(&ParamBinding::from_ints(2, &[0, 1])).unwrap().is_zero());
        assert!(!ParamBinding::from_ints(2, &[0, 1]).generic);
    }

    #[test]
    fn default_bindings() {
        let b = default_binding(2, 3);
        assert_eq!(b.q, vec![rat(0), rat(7)]);
        assert!(b.generic);
        assert_eq!(default_binding(1, 5).q, vec![rat(0)]);
        assert_eq!(default_binding(3, 2).q, vec![rat(0), rat(5), rat(10)]);
        for m in 1..=4 {
            for n in 1..=5 {
                assert!(default_binding(m, n).generic);
                assert!(alt_binding(m, n).generic);
            }
        }
    }

    #[test]
    fn canonical_orientation() {
        // q2 - q1 = -(q1 - q2); (-3 + 0) folds; d - q_t flips to -( -d + q_t)
        let a = FactoredScalar::linear(0, 2, 1);
        assert_eq!(a, FactoredScalar::linear(0, 1, 2).neg());
        assert_eq!(FactoredScalar::linear(-3, 2, 2), FactoredScalar::int(-3));
        assert_eq!(FactoredScalar::linear(2, 0, 1), FactoredScalar::linear(-2, 1, 0).neg());
        let x = FactoredScalar::linear(1, 1, 2);
        assert_eq!(x.mul(&x.inv()), FactoredScalar::one());
    }

    #[test]
    fn binding_json_round_trip() {
        let b = ParamBinding::from_json(r#"{"m":2,"n":3,"q":["0","7/2"]}"#).unwrap();
        assert_eq!(b.q[1], frac(7, 2));
        assert!(b.generic);
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(ParamBinding::from_json(&text).unwrap(), b);
    }
}
