//! Multipartitions, nodes, tableaux, residues and tableau statistics.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalars::Residue;

pub type Partition = Vec<usize>;

/// Partitions of k in decreasing lexicographic order.
pub fn partitions(k: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

pub fn transpose(p: &[usize]) -> Partition {
    let len = p.first().copied().unwrap_or(0);
    (1..=len).map(|j| p.iter().filter(|&&r| r >= j).count()).collect()
}

/// A node (row, col, comp), all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub fn new(row: usize, col: usize, comp: usize) -> Node {
        Node { row, col, comp }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    pub fn residue(&self) -> Residue {
        Residue { d: self.content(), c: self.comp }
    }

    /// `self ≺ other`: earlier component, or same component and further right.
    pub fn precedes(&self, other: &Node) -> bool {
        self.comp < other.comp || (self.comp == other.comp && self.col > other.col)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multipartition {
    pub components: Vec<Partition>,
}

/// Statistics of a multipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stats {
    pub n_lambda: usize,
    pub factorial: i64,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// Component holding k in t^λ, indexed by k-1.
    pub comp_initial: Vec<usize>,
    /// Component holding k in t_λ, indexed by k-1.
    pub comp_final: Vec<usize>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Multipartition {
        let components = components
            .into_iter()
            .map(|p| p.into_iter().filter(|&x| x > 0).collect::<Partition>())
            .collect::<Vec<_>>();
        for p in &components {
            assert!(p.windows(2).all(|w| w[0] >= w[1]), "component not weakly decreasing");
        }
        Multipartition { components }
    }

    /// Parses "3.1|1"; an empty component is written "0".
    pub fn parse(s: &str) -> Result<Multipartition> {
        let bad = || Error::Parse(format!("bad shape {s:?}"));
        let mut comps = Vec::new();
        for part in s.trim().split('|') {
            let part = part.trim();
            if part == "0" || part.is_empty() {
                comps.push(Vec::new());
                continue;
            }
            let p: Partition = part
                .split('.')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if p.contains(&0) || p.windows(2).any(|w| w[0] < w[1]) {
                return Err(bad());
            }
            comps.push(p);
        }
        Ok(Multipartition { components: comps })
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn n(&self) -> usize {
        self.components.iter().map(|p| p.iter().sum::<usize>()).sum()
    }

    pub fn comp_size(&self, c: usize) -> usize {
        self.components[c - 1].iter().sum()
    }

    /// Row length λ^c_r, zero outside the diagram.
    pub fn row_len(&self, c: usize, r: usize) -> usize {
        self.components[c - 1].get(r - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: &Node) -> bool {
        node.comp >= 1
            && node.comp <= self.m()
            && node.row >= 1
            && node.col >= 1
            && node.col <= self.row_len(node.comp, node.row)
    }

    /// Nodes in row-reading order: component 1 first, then rows top to bottom.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (ci, p) in self.components.iter().enumerate() {
            for (ri, &len) in p.iter().enumerate() {
                for col in 1..=len {
                    out.push(Node::new(ri + 1, col, ci + 1));
                }
            }
        }
        out
    }

    pub fn addable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (ci, p) in self.components.iter().enumerate() {
            for r in 0..=p.len() {
                let len = p.get(r).copied().unwrap_or(0);
                if r == 0 || p[r - 1] > len {
                    out.push(Node::new(r + 1, len + 1, ci + 1));
                }
            }
        }
        out
    }

    pub fn removable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (ci, p) in self.components.iter().enumerate() {
            for r in 0..p.len() {
                let below = p.get(r + 1).copied().unwrap_or(0);
                if p[r] > below {
                    out.push(Node::new(r + 1, p[r], ci + 1));
                }
            }
        }
        out
    }

    /// λ̄^i = transpose(λ^{m-i+1}).
    pub fn conjugate(&self) -> Multipartition {
        Multipartition { components: self.components.iter().rev().map(|p| transpose(p)).collect() }
    }

    /// a_i = Σ_{j<i} |λ^j|.
    pub fn a(&self, i: usize) -> usize {
        (1..i).map(|j| self.comp_size(j)).sum()
    }

    /// b_i = Σ_{j>i} |λ^j|.
    pub fn b(&self, i: usize) -> usize {
        (i + 1..=self.m()).map(|j| self.comp_size(j)).sum()
    }

    /// n(λ) = Σ (i-1)|λ^i|.
    pub fn n_stat(&self) -> usize {
        (1..=self.m()).map(|i| (i - 1) * self.comp_size(i)).sum()
    }

    /// λ! = Π λ^s_i!.
    pub fn factorial(&self) -> i64 {
        self.components
            .iter()
            .flatten()
            .map(|&r| (1..=r as i64).product::<i64>())
            .product()
    }

    pub fn stats(&self) -> Stats {
        let (initial, (last, _)) = special_tableaux(self);
        Stats {
            n_lambda: self.n_stat(),
            factorial: self.factorial(),
            a: (1..=self.m()).map(|i| self.a(i)).collect(),
            b: (1..=self.m()).map(|i| self.b(i)).collect(),
            comp_initial: initial.pos.iter().map(|x| x.comp).collect(),
            comp_final: last.pos.iter().map(|x| x.comp).collect(),
        }
    }

    /// (hook length, leg length) at a node. The leg counts the node itself and
    /// every node below it in its column.
    pub fn hooks(&self, node: &Node) -> Result<(i64, i64)> {
        if !self.contains(node) {
            return Err(Error::OutOfShape(node.to_string()));
        }
        let p = &self.components[node.comp - 1];
        let pt = transpose(p);
        let (i, j) = (node.row as i64, node.col as i64);
        let arm_row = p[node.row - 1] as i64;
        let col_len = pt[node.col - 1] as i64;
        Ok((arm_row + col_len - i - j + 1, col_len - i + 1))
    }

    /// The multipartition obtained by one node added or removed.
    pub fn with_node(&self, node: &Node) -> Multipartition {
        let mut c = self.components.clone();
        let p = &mut c[node.comp - 1];
        if p.len() < node.row {
            p.push(0);
        }
        p[node.row - 1] += 1;
        Multipartition { components: c }
    }

    fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.m() * n);
        for p in &self.components {
            for r in 0..n {
                v.push(p.get(r).copied().unwrap_or(0));
            }
        }
        v
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|p| {
                if p.is_empty() {
                    "0".to_string()
                } else {
                    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
                }
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// λ ⊵ μ.
pub fn dominates(lambda: &Multipartition, mu: &Multipartition) -> Result<bool> {
    if lambda.m() != mu.m() {
        return Err(Error::SizeMismatch(lambda.m(), mu.m()));
    }
    let n = lambda.n();
    if n != mu.n() {
        return Err(Error::SizeMismatch(n, mu.n()));
    }
    let (a, b) = (lambda.padded(n), mu.padded(n));
    let (mut sa, mut sb) = (0, 0);
    for (x, y) in a.iter().zip(&b) {
        sa += x;
        sb += y;
        if sa < sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All m-multipartitions of n, ordered so that λ ⊳ μ puts λ first.
pub fn multipartitions(m: usize, n: usize) -> Vec<Multipartition> {
    fn rec(m: usize, rest: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if cur.len() == m - 1 {
            for p in partitions(rest) {
                cur.push(p);
                out.push(Multipartition { components: cur.clone() });
                cur.pop();
            }
            return;
        }
        for k in 0..=rest {
            for p in partitions(k) {
                cur.push(p);
                rec(m, rest - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.padded(n).cmp(&a.padded(n)));
    out
}

/// A bijection from the nodes of a multipartition to {1..n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pub shape: Multipartition,
    /// entries[comp][row][col], 1-based values.
    pub entries: Vec<Vec<Vec<usize>>>,
    /// Node holding k, at index k-1.
    pub pos: Vec<Node>,
}

impl Tableau {
    pub fn from_entries(entries: Vec<Vec<Vec<usize>>>) -> Tableau {
        let shape = Multipartition::new(
            entries.iter().map(|c| c.iter().map(|r| r.len()).collect()).collect(),
        );
        let n = shape.n();
        let mut pos = vec![Node::new(0, 0, 0); n];
        for (ci, c) in entries.iter().enumerate() {
            for (ri, r) in c.iter().enumerate() {
                for (cj, &v) in r.iter().enumerate() {
                    pos[v - 1] = Node::new(ri + 1, cj + 1, ci + 1);
                }
            }
        }
        Tableau { shape, entries, pos }
    }

    fn from_positions(shape: &Multipartition, pos: Vec<Node>) -> Tableau {
        let mut entries: Vec<Vec<Vec<usize>>> = shape
            .components
            .iter()
            .map(|p| p.iter().map(|&len| vec![0; len]).collect())
            .collect();
        for (k, x) in pos.iter().enumerate() {
            entries[x.comp - 1][x.row - 1][x.col - 1] = k + 1;
        }
        Tableau { shape: shape.clone(), entries, pos }
    }

    /// t^λ: filled along rows, component 1 first.
    pub fn initial(shape: &Multipartition) -> Tableau {
        Tableau::from_positions(shape, shape.nodes())
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn entry(&self, node: &Node) -> usize {
        self.entries[node.comp - 1][node.row - 1][node.col - 1]
    }

    pub fn node_of(&self, k: usize) -> Result<Node> {
        if k == 0 || k > self.n() {
            return Err(Error::RangeError { k, n: self.n() });
        }
        Ok(self.pos[k - 1])
    }

    pub fn residue(&self, k: usize) -> Result<Residue> {
        Ok(self.node_of(k)?.residue())
    }

    pub fn residues(&self) -> Vec<Residue> {
        self.pos.iter().map(|x| x.residue()).collect()
    }

    pub fn is_standard(&self) -> bool {
        self.entries.iter().all(|c| {
            c.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
                && c.windows(2).all(|rows| rows[1].iter().zip(&rows[0]).all(|(lo, hi)| hi < lo))
        })
    }

    /// shape(t↓k).
    pub fn restrict_shape(&self, k: usize) -> Multipartition {
        let mut comps: Vec<Partition> = vec![Vec::new(); self.shape.m()];
        for x in &self.pos[..k] {
            let p = &mut comps[x.comp - 1];
            if p.len() < x.row {
                p.resize(x.row, 0);
            }
            p[x.row - 1] += 1;
        }
        Multipartition { components: comps }
    }

    /// t·w: every entry i replaced by w(i).
    pub fn act(&self, w: &Permutation) -> Tableau {
        let mut pos = vec![Node::new(0, 0, 0); self.n()];
        for (k, x) in self.pos.iter().enumerate() {
            pos[w.0[k]] = *x;
        }
        Tableau::from_positions(&self.shape, pos)
    }

    /// Swaps the entries i and i+1.
    pub fn swap(&self, i: usize) -> Tableau {
        self.act(&Permutation::simple(self.n(), i))
    }

    /// d(t): the permutation with t = t^λ·d(t).
    pub fn d_perm(&self) -> Permutation {
        let init = Tableau::initial(&self.shape);
        let mut w = vec![0; self.n()];
        for x in self.shape.nodes() {
            w[init.entry(&x) - 1] = self.entry(&x) - 1;
        }
        Permutation(w)
    }

    /// conj(t)^i is the transpose of t^{m-i+1}.
    pub fn conjugate(&self) -> Tableau {
        let m = self.shape.m();
        let pos = self
            .pos
            .iter()
            .map(|x| Node::new(x.col, x.row, m + 1 - x.comp))
            .collect();
        Tableau::from_positions(&self.shape.conjugate(), pos)
    }

    /// (A_t(i), R_t(i)).
    pub fn addable_removable(&self, i: usize) -> Result<(Vec<Node>, Vec<Node>)> {
        let x = self.node_of(i)?;
        let a = self
            .restrict_shape(i)
            .addable()
            .into_iter()
            .filter(|y| x.precedes(y))
            .collect();
        let r = self
            .restrict_shape(i - 1)
            .removable()
            .into_iter()
            .filter(|y| x.precedes(y))
            .collect();
        Ok((a, r))
    }

    /// Row (true) or column (false) adjacency of i and i+1, if any.
    pub fn same_row_or_col(&self, i: usize) -> Option<bool> {
        let (a, b) = (self.pos[i - 1], self.pos[i]);
        if a.comp != b.comp {
            return None;
        }
        if a.row == b.row {
            Some(true)
        } else if a.col == b.col {
            Some(false)
        } else {
            None
        }
    }

    /// Ordering key refining dominance: per entry (component, -content).
    pub fn order_key(&self) -> Vec<(usize, i64)> {
        self.pos.iter().map(|x| (x.comp, -x.content())).collect()
    }

    /// Chain t^λ = t_0, t_1, ..., t_l = t along the lexicographically first
    /// reduced word of d(t); returns (letters, tableaux).
    pub fn chain(&self) -> (Vec<usize>, Vec<Tableau>) {
        let word = self.d_perm().reduced_word();
        let mut cur = Tableau::initial(&self.shape);
        let mut seq = vec![cur.clone()];
        for &i in &word {
            cur = cur.swap(i);
            seq.push(cur.clone());
        }
        (word, seq)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .entries
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "-".to_string()
                } else {
                    c.iter()
                        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                        .collect::<Vec<_>>()
                        .join("/")
                }
            })
            .collect();
        write!(f, "({})", comps.join(";"))
    }
}

/// Standard λ-tableaux, t^λ first and t_λ last.
pub fn standard_tableaux(shape: &Multipartition) -> Vec<Tableau> {
    fn rec(
        shape: &Multipartition,
        cur: &Multipartition,
        pos: &mut Vec<Node>,
        out: &mut Vec<Tableau>,
    ) {
        if pos.len() == shape.n() {
            out.push(Tableau::from_positions(shape, pos.clone()));
            return;
        }
        for x in cur.addable() {
            if shape.contains(&x) {
                pos.push(x);
                rec(shape, &cur.with_node(&x), pos, out);
                pos.pop();
            }
        }
    }
    let empty = Multipartition { components: vec![Vec::new(); shape.m()] };
    let mut out = Vec::new();
    rec(shape, &empty, &mut Vec::new(), &mut out);
    out.sort_by_key(|t| t.order_key());
    out
}

/// (t^λ, (t_λ, w_λ)).
pub fn special_tableaux(shape: &Multipartition) -> (Tableau, (Tableau, Permutation)) {
    let initial = Tableau::initial(shape);
    let last = Tableau::initial(&shape.conjugate()).conjugate();
    let w = last.d_perm();
    (initial, (last, w))
}

/// s ⊵ t in the tableau dominance order.
pub fn tableau_dominates(s: &Tableau, t: &Tableau) -> Result<bool> {
    if s.shape != t.shape {
        return Err(Error::ShapeMismatch);
    }
    for k in 1..=s.n() {
        if !dominates(&s.restrict_shape(k), &t.restrict_shape(k))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// R(k): residues of k over all standard tableaux of all shapes in P(m,n).
/// Entry k sits at an addable node of some multipartition of k-1, and every
/// such configuration extends to size n.
pub fn residue_set(m: usize, n: usize, k: usize) -> Result<Vec<Residue>> {
    if k == 0 || k > n {
        return Err(Error::RangeError { k, n });
    }
    let mut set = BTreeSet::new();
    let shapes = if k == 1 {
        vec![Multipartition { components: vec![Vec::new(); m] }]
    } else {
        multipartitions(m, k - 1)
    };
    for nu in shapes {
        for x in nu.addable() {
            set.insert(x.residue());
        }
    }
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        Multipartition::parse(s).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(multipartitions(2, 2).len(), 5);
        assert_eq!(multipartitions(1, 5).len(), 7);
        assert_eq!(multipartitions(3, 1).len(), 3);
        assert_eq!(standard_tableaux(&mp("2|1")).len(), 3);
        assert_eq!(standard_tableaux(&mp("1|1")).len(), 2);
        assert_eq!(standard_tableaux(&mp("0|0|4")).len(), 1);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&mp("2|0"), &mp("1|1")).unwrap());
        assert!(dominates(&mp("1|1"), &mp("0|2")).unwrap());
        assert!(!dominates(&mp("0|2"), &mp("1|1")).unwrap());
        assert!(dominates(&mp("1|1"), &mp("1|1")).unwrap());
        assert!(dominates(&mp("1|1"), &mp("2")).is_err());
    }

    #[test]
    fn conjugation_example() {
        assert_eq!(mp("3.1|4.2").conjugate(), mp("2.2.1.1|2.1.1"));
        assert_eq!(mp("2.1").conjugate(), mp("2.1"));
    }

    #[test]
    fn d_perm_example() {
        let t = Tableau::from_entries(vec![
            vec![vec![2, 4, 6], vec![3, 5]],
            vec![vec![7, 8], vec![9]],
            vec![vec![1]],
        ]);
        assert!(t.is_standard());
        let d = t.d_perm();
        assert_eq!(d, Permutation::from_cycles(9, &[&[1, 2, 4, 3, 6, 7, 8, 9]]));
        assert_eq!(Tableau::initial(&t.shape).act(&d), t);
        assert_eq!(t.shape.addable().len(), 8);
        assert_eq!(t.shape.removable().len(), 5);
    }

    #[test]
    fn addable_removable_example() {
        let t = Tableau::initial(&mp("3.1|1"));
        let ar = |i| t.addable_removable(i).unwrap();
        assert_eq!(ar(1), (vec![Node::new(1, 1, 2)], vec![]));
        assert_eq!(ar(2), (vec![Node::new(2, 1, 1), Node::new(1, 1, 2)], vec![Node::new(1, 1, 1)]));
        assert_eq!(ar(3), (vec![Node::new(2, 1, 1), Node::new(1, 1, 2)], vec![Node::new(1, 2, 1)]));
        assert_eq!(ar(4), (vec![Node::new(1, 1, 2)], vec![]));
        assert_eq!(ar(5), (vec![], vec![]));
        assert_eq!(t.residue(4).unwrap(), Residue { d: -1, c: 1 });
        assert_eq!(t.residue(5).unwrap(), Residue { d: 0, c: 2 });
    }

    #[test]
    fn special_tableaux_example() {
        let lam = mp("2.1.1|2.1|1");
        let st = lam.stats();
        assert_eq!(st.n_lambda, 5);
        assert_eq!(st.a, vec![0, 4, 7]);
        assert_eq!(st.b, vec![4, 1, 0]);
        let (_, (_, w)) = special_tableaux(&lam);
        let (_, (_, wbar)) = special_tableaux(&lam.conjugate());
        // the left-to-right product convention labels these the other way round
        assert_eq!(w, Permutation::from_cycles(8, &[&[1, 5, 2, 8], &[3, 6, 4, 7]]));
        assert_eq!(wbar, Permutation::from_cycles(8, &[&[1, 8, 2, 5], &[3, 7, 4, 6]]));
        assert_eq!(wbar, w.inverse());
    }

    #[test]
    fn residue_sets() {
        assert_eq!(
            residue_set(3, 2, 1).unwrap(),
            (1..=3).map(|c| Residue { d: 0, c }).collect::<Vec<_>>()
        );
        assert_eq!(residue_set(1, 2, 2).unwrap(), vec![Residue { d: -1, c: 1 }, Residue { d: 1, c: 1 }]);
        assert_eq!(residue_set(2, 2, 2).unwrap().len(), 6);
    }

    #[test]
    fn hooks_examples() {
        assert_eq!(mp("2").hooks(&Node::new(1, 1, 1)).unwrap().0, 2);
        assert_eq!(mp("2.1").hooks(&Node::new(1, 1, 1)).unwrap(), (3, 2));
        assert_eq!(mp("2.1").hooks(&Node::new(2, 1, 1)).unwrap(), (1, 1));
        assert!(mp("2.1").hooks(&Node::new(2, 2, 1)).is_err());
    }

    #[test]
    fn shape_notation_round_trip() {
        for s in ["3.1|1", "0|2.2", "1|0|1"] {
            assert_eq!(mp(s).to_string(), s);
        }
        assert!(Multipartition::parse("1.2").is_err());
    }
}
