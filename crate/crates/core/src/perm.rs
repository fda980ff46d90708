//! Permutations of {1..n} and a tabulated symmetric group.
//!
//! Products compose left to right: `a * b` applies `a` first, then `b`.
//! This matches the right action of S_n on tableaux, so `t.act(a * b)` equals
//! `t.act(a).act(b)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// One-line notation, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    /// Simple transposition s_i = (i, i+1), 1 <= i < n.
    pub fn simple(n: usize, i: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Permutation {
        Permutation(images.iter().map(|&x| x - 1).collect())
    }

    /// From 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Permutation {
        let mut p = Permutation::identity(n);
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                p.0[a - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// 1-based image of the 1-based point x.
    pub fn image(&self, x: usize) -> usize {
        self.0[x - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Lexicographically first reduced word; `w == s_{i_1} * ... * s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..w.len().saturating_sub(1) {
                if w[i] > w[i + 1] {
                    word.push(i + 1);
                    w.swap(i, i + 1);
                    continue 'outer;
                }
            }
            return word;
        }
    }

    /// Bruhat order via the sorted-prefix criterion.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        let n = self.n();
        for k in 1..n {
            let mut a: Vec<usize> = self.0[..k].to_vec();
            let mut b: Vec<usize> = other.0[..k].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.0[x];
            }
            out.push(cyc);
        }
        out
    }

    /// All permutations of {1..n} in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| rhs.0[x]).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// S_n with every element indexed, plus multiplication and inverse tables.
#[derive(Debug)]
pub struct SymmetricGroup {
    pub n: usize,
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    pub words: Vec<Vec<usize>>,
    pub lengths: Vec<usize>,
    simple: Vec<u32>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> SymmetricGroup {
        let elements = Permutation::all(n);
        let index: HashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let size = elements.len();
        let mut mult = vec![0u32; size * size];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mult[i * size + j] = index[&(a * b)];
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        let words = elements.iter().map(|p| p.reduced_word()).collect();
        let lengths = elements.iter().map(|p| p.length()).collect();
        let simple = (1..n).map(|i| index[&Permutation::simple(n, i)]).collect();
        SymmetricGroup { n, elements, index, mult, inv, words, lengths, simple }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &Permutation) -> u32 {
        self.index[p]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Index of s_i, 1 <= i < n.
    pub fn simple(&self, i: usize) -> u32 {
        self.simple[i - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_multiplies_back() {
        for w in Permutation::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut p = Permutation::identity(4);
            for &i in &word {
                p = &p * &Permutation::simple(4, i);
            }
            assert_eq!(p, w);
        }
    }

    #[test]
    fn cycle_notation() {
        let w = Permutation::from_cycles(9, &[&[1, 2, 4, 3, 6, 7, 8, 9]]);
        assert_eq!(w.to_string(), "(1,2,4,3,6,7,8,9)");
        assert_eq!(w.image(1), 2);
        assert_eq!(w.image(9), 1);
    }

    #[test]
    fn bruhat_matches_subword_order_in_s3() {
        let all = Permutation::all(3);
        // in S_3 every pair with smaller length is comparable except the two length-1 / length-2 crossings
        let s1 = Permutation::simple(3, 1);
        let s2 = Permutation::simple(3, 2);
        let s1s2 = &s1 * &s2;
        assert!(s1.bruhat_le(&s1s2));
        assert!(s2.bruhat_le(&s1s2));
        assert!(!s1.bruhat_le(&s2));
        for w in &all {
            assert!(Permutation::identity(3).bruhat_le(w));
        }
    }
}
