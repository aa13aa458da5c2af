//! Subset-enumeration independence oracle for set functions without a pebble game.

use crate::graph::{EdgeId, MultiGraph, VertexSet};
use crate::setfunc::SetFunc;

/// Sparsity bound for every subset mask of `0..n`.
pub fn bound_table(f: &SetFunc, n: usize) -> Vec<i64> {
    let singles = f.singles(n);
    let size = 1usize << n;
    let mut sums = vec![0i64; size];
    for a in 1..size {
        let low = a.trailing_zeros() as usize;
        sums[a] = sums[a & (a - 1)] + singles[low];
    }
    (0..size).map(|a| sums[a] - f.eval(VertexSet::from_mask(a as u64), n)).collect()
}

/// `e_G(A)` for every subset mask of `0..n`.
pub fn induced_table(g: &MultiGraph) -> Vec<i64> {
    let n = g.n();
    let mut mult = vec![vec![0i64; n]; n];
    for &(u, v) in g.edges() {
        mult[u][v] += 1;
        mult[v][u] += 1;
    }
    let size = 1usize << n;
    let mut e = vec![0i64; size];
    for a in 1..size {
        let low = a.trailing_zeros() as usize;
        let rest = a & (a - 1);
        let mut add = 0;
        let mut r = rest;
        while r != 0 {
            let w = r.trailing_zeros() as usize;
            add += mult[low][w];
            r &= r - 1;
        }
        e[a] = e[rest] + add;
    }
    e
}

/// Smallest-mask set violating sparsity, if any.
pub fn first_violation(g: &MultiGraph, f: &SetFunc) -> Option<VertexSet> {
    let bound = bound_table(f, g.n());
    let e = induced_table(g);
    (1..bound.len()).find(|&a| e[a] > bound[a]).map(|a| VertexSet::from_mask(a as u64))
}

/// Independent-set maintenance by explicit per-subset edge counts.
#[derive(Clone, Debug)]
pub struct ExhaustiveOracle {
    n: usize,
    edges: Vec<(usize, usize)>,
    bound: Vec<i64>,
    count: Vec<i64>,
    member: Vec<bool>,
    size: usize,
}

impl ExhaustiveOracle {
    pub fn new(g: &MultiGraph, f: &SetFunc) -> Self {
        let n = g.n();
        ExhaustiveOracle {
            n,
            edges: g.edges().to_vec(),
            bound: bound_table(f, n),
            count: vec![0; 1 << n],
            member: vec![false; g.m()],
            size: 0,
        }
    }

    fn supersets(&self, pair: usize) -> impl Iterator<Item = usize> {
        let rest = ((1usize << self.n) - 1) & !pair;
        let mut sub = rest;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = pair | sub;
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & rest;
            }
            Some(out)
        })
    }

    fn pair_mask(&self, e: EdgeId) -> usize {
        let (u, v) = self.edges[e];
        (1 << u) | (1 << v)
    }

    /// Minimum-size tight set containing the pair (lowest mask among ties).
    pub fn tight_span_of(&self, pair: usize) -> Option<usize> {
        self.supersets(pair)
            .filter(|&a| self.count[a] >= self.bound[a])
            .min_by_key(|&a| (a.count_ones(), a))
    }

    pub fn tight_span(&self, u: usize, v: usize) -> Option<VertexSet> {
        self.tight_span_of((1 << u) | (1 << v)).map(|a| VertexSet::from_mask(a as u64))
    }

    pub fn circuit(&self, e: EdgeId) -> Option<Vec<EdgeId>> {
        let q = self.tight_span_of(self.pair_mask(e))?;
        Some((0..self.edges.len()).filter(|&x| self.member[x] && self.pair_mask(x) & !q == 0).collect())
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        assert!(!self.member[e]);
        if self.circuit(e).is_some() {
            return false;
        }
        let pair = self.pair_mask(e);
        for a in self.supersets(pair).collect::<Vec<_>>() {
            self.count[a] += 1;
        }
        self.member[e] = true;
        self.size += 1;
        true
    }

    pub fn remove(&mut self, e: EdgeId) {
        assert!(self.member[e]);
        let pair = self.pair_mask(e);
        for a in self.supersets(pair).collect::<Vec<_>>() {
            self.count[a] -= 1;
        }
        self.member[e] = false;
        self.size -= 1;
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.member[e]
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// All maximal tight sets of the current member set.
    pub fn maximal_tight_sets(&self) -> Vec<VertexSet> {
        let size = 1usize << self.n;
        let tight: Vec<bool> = (0..size).map(|a| a != 0 && self.count[a] >= self.bound[a]).collect();
        // has[a]: some tight superset of a (including a itself).
        let mut has = tight.clone();
        for b in 0..self.n {
            for a in (0..size).rev() {
                if a & (1 << b) == 0 && has[a | (1 << b)] {
                    has[a] = true;
                }
            }
        }
        (1..size)
            .filter(|&a| tight[a] && (0..self.n).all(|b| a & (1 << b) != 0 || !has[a | (1 << b)]))
            .map(|a| VertexSet::from_mask(a as u64))
            .collect()
    }
}
