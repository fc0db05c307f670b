//! Planar binary trees and the Tamari order.
//!
//! A tree with `m` internal nodes is written as a balanced-parenthesis word of
//! length `2m`: `Node(L, R)` encodes to `"(" + enc(L) + ")" + enc(R)` and the
//! leaf to the empty word. The order is generated by right rotations
//! `((A, B), C) → (A, (B, C))`, so the left comb is the minimum and the right
//! comb the maximum.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::arith::catalan;
use crate::spectra::ExactMatrix;
use crate::Limits;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TamariError {
    #[error("{what} = {requested} exceeds the configured cap {cap}")]
    SizeLimit {
        what: &'static str,
        requested: u64,
        cap: u64,
    },
    #[error("invalid tree encoding {0:?}")]
    InvalidEncoding(String),
    #[error("a Tamari lattice needs at least 2 leaves, got {0}")]
    TooFewLeaves(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(left: Tree, right: Tree) -> Tree {
        Tree::Node(Box::new(left), Box::new(right))
    }

    /// `((… (leaf, leaf) …), leaf)` with `m` internal nodes.
    pub fn left_comb(m: usize) -> Tree {
        (0..m).fold(Tree::Leaf, |t, _| Tree::node(t, Tree::Leaf))
    }

    /// `(leaf, (leaf, … (leaf, leaf)))` with `m` internal nodes.
    pub fn right_comb(m: usize) -> Tree {
        (0..m).fold(Tree::Leaf, |t, _| Tree::node(Tree::Leaf, t))
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    pub fn leaves(&self) -> usize {
        self.internal_nodes() + 1
    }

    pub fn encode(&self) -> String {
        let mut s = String::with_capacity(2 * self.internal_nodes());
        self.encode_into(&mut s);
        s
    }

    fn encode_into(&self, s: &mut String) {
        if let Tree::Node(l, r) = self {
            s.push('(');
            l.encode_into(s);
            s.push(')');
            r.encode_into(s);
        }
    }

    pub fn decode(word: &str) -> Result<Tree, TamariError> {
        let bytes = word.as_bytes();
        let (tree, used) = Self::decode_at(bytes, 0)
            .ok_or_else(|| TamariError::InvalidEncoding(word.to_string()))?;
        if used != bytes.len() {
            return Err(TamariError::InvalidEncoding(word.to_string()));
        }
        Ok(tree)
    }

    /// Parses a maximal tree starting at `pos`; stops at an unmatched `)` or
    /// the end of input.
    fn decode_at(bytes: &[u8], pos: usize) -> Option<(Tree, usize)> {
        match bytes.get(pos) {
            None | Some(b')') => Some((Tree::Leaf, pos)),
            Some(b'(') => {
                let (left, after_left) = Self::decode_at(bytes, pos + 1)?;
                if bytes.get(after_left) != Some(&b')') {
                    return None;
                }
                let (right, end) = Self::decode_at(bytes, after_left + 1)?;
                Some((Tree::node(left, right), end))
            }
            Some(_) => None,
        }
    }

    /// Every tree reached by one right rotation at one internal node.
    pub fn covers(&self) -> Vec<Tree> {
        let mut out = Vec::new();
        if let Tree::Node(l, r) = self {
            if let Tree::Node(a, b) = l.as_ref() {
                out.push(Tree::node(
                    a.as_ref().clone(),
                    Tree::node(b.as_ref().clone(), r.as_ref().clone()),
                ));
            }
            for l2 in l.covers() {
                out.push(Tree::node(l2, r.as_ref().clone()));
            }
            for r2 in r.covers() {
                out.push(Tree::node(l.as_ref().clone(), r2));
            }
        }
        out
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// All trees with `m` internal nodes, sorted by encoding.
pub fn enumerate_trees(m: usize, limits: &Limits) -> Result<Vec<Tree>, TamariError> {
    if m > limits.max_internal_nodes {
        return Err(TamariError::SizeLimit {
            what: "internal nodes",
            requested: m as u64,
            cap: limits.max_internal_nodes as u64,
        });
    }
    let mut by_size: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
    for k in 1..=m {
        let mut level = Vec::new();
        for i in 0..k {
            for l in &by_size[i] {
                for r in &by_size[k - 1 - i] {
                    level.push(Tree::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    let mut keyed: Vec<(String, Tree)> = by_size
        .swap_remove(m)
        .into_iter()
        .map(|t| (t.encode(), t))
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// Dense bitset rows.
#[derive(Clone, Debug)]
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitRows {
            words,
            bits: vec![0; n * words],
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// `row[i] |= row[j]`.
    fn union_into(&mut self, i: usize, j: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.bits[j * w + k];
            self.bits[i * w + k] |= v;
        }
    }
}

/// The Tamari order on trees with `n_leaves` leaves, elements listed in a
/// linear extension of the order.
#[derive(Clone, Debug)]
pub struct TamariLattice {
    n_leaves: usize,
    elements: Vec<Tree>,
    covers: Vec<(usize, usize)>,
    up: BitRows,
}

impl TamariLattice {
    pub fn n_leaves(&self) -> usize {
        self.n_leaves
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Tree] {
        &self.elements
    }

    /// Covering pairs `(i, j)` with `elements[i] ⋖ elements[j]`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    /// Number of pairs `(i, j)` with `i ≤ j`.
    pub fn relation_size(&self) -> usize {
        self.up.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `C[i][j] = 1` iff `elements[i] ≤ elements[j]`; unit upper triangular.
    pub fn order_matrix(&self) -> ExactMatrix {
        let n = self.len();
        let v = (0..n * n)
            .map(|k| i128::from(self.leq(k / n, k % n)))
            .collect();
        ExactMatrix::from_small(n, n, v)
    }

    /// Indices of the unique minimal and maximal elements, if unique.
    pub fn bounds(&self) -> (Option<usize>, Option<usize>) {
        let n = self.len();
        let min = (0..n).filter(|&i| (0..n).all(|j| self.leq(i, j))).collect::<Vec<_>>();
        let max = (0..n).filter(|&i| (0..n).all(|j| self.leq(j, i))).collect::<Vec<_>>();
        let one = |v: Vec<usize>| (v.len() == 1).then(|| v[0]);
        (one(min), one(max))
    }

    /// Reflexive, antisymmetric and transitive, by brute force.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return false;
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return false;
                }
                if self.leq(i, j) && (0..n).any(|k| self.leq(j, k) && !self.leq(i, k)) {
                    return false;
                }
            }
        }
        true
    }

    /// Every pair has a join and a meet. Since the element order is a linear
    /// extension, the candidate join is the lowest-index common upper bound.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        let mut down = BitRows::new(n);
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) {
                    down.set(j, i);
                }
            }
        }
        let has_extreme = |rows: &BitRows, x: usize, y: usize, lowest: bool| {
            let common: Vec<u64> = rows.row(x).iter().zip(rows.row(y)).map(|(a, b)| a & b).collect();
            let members: Vec<usize> = (0..n).filter(|&k| common[k / 64] >> (k % 64) & 1 == 1).collect();
            let cand = if lowest { members.first() } else { members.last() };
            cand.is_some_and(|&c| {
                rows.row(c)
                    .iter()
                    .zip(&common)
                    .all(|(r, m)| r & m == *m)
            })
        };
        (0..n).all(|x| {
            (x + 1..n).all(|y| has_extreme(&self.up, x, y, true) && has_extreme(&down, x, y, false))
        })
    }
}

/// The Tamari lattice on trees with `n_leaves` leaves. The element order is
/// Kahn's topological sort of the cover graph, ties broken by the smallest
/// encoding.
pub fn build_lattice(n_leaves: usize, limits: &Limits) -> Result<TamariLattice, TamariError> {
    if n_leaves < 2 {
        return Err(TamariError::TooFewLeaves(n_leaves));
    }
    let size = catalan(n_leaves as u64 - 1);
    if size > limits.max_dim_traces.into() {
        return Err(TamariError::SizeLimit {
            what: "lattice size",
            requested: u64::try_from(&size).unwrap_or(u64::MAX),
            cap: limits.max_dim_traces as u64,
        });
    }
    let trees = enumerate_trees(n_leaves - 1, limits)?;
    let index: HashMap<String, usize> = trees
        .iter()
        .enumerate()
        .map(|(i, t)| (t.encode(), i))
        .collect();
    let succ: Vec<Vec<usize>> = trees
        .iter()
        .map(|t| {
            let mut v: Vec<usize> = t.covers().iter().map(|c| index[&c.encode()]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    let n = trees.len();
    let mut indegree = vec![0usize; n];
    for s in succ.iter().flatten() {
        indegree[*s] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for &s in &succ[i] {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                ready.push(Reverse(s));
            }
        }
    }
    assert_eq!(order.len(), n, "rotation graph must be acyclic");
    let mut rank = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }

    let mut covers: Vec<(usize, usize)> = succ
        .iter()
        .enumerate()
        .flat_map(|(i, ss)| ss.iter().map(move |&s| (i, s)))
        .map(|(i, s)| (rank[i], rank[s]))
        .collect();
    covers.sort_unstable();

    let mut up = BitRows::new(n);
    for r in (0..n).rev() {
        up.set(r, r);
        let i = order[r];
        for &s in &succ[i] {
            up.union_into(r, rank[s]);
        }
    }

    let mut slots: Vec<Option<Tree>> = trees.into_iter().map(Some).collect();
    let elements = order.iter().map(|&i| slots[i].take().expect("each index once")).collect();
    Ok(TamariLattice {
        n_leaves,
        elements,
        covers,
        up,
    })
}
