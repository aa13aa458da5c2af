//! Vertex-weighted pebble game for count matroids `e(A) <= sum_{v in A} c(v) - ell`.
//!
//! Every vertex `v` owns `c(v)` pebbles. An accepted edge is stored as an arc whose
//! tail has spent one pebble on it, so `pebbles(v) + outdeg(v) = c(v)` throughout.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::EdgeId;

#[derive(Clone, Debug)]
pub struct PebbleGame {
    caps: Vec<i64>,
    ell: i64,
    pebbles: Vec<i64>,
    /// Outgoing arcs `(head, edge)` per vertex; ordered so searches prefer low indices.
    out: Vec<BTreeSet<(usize, EdgeId)>>,
    /// Tail and head of every accepted edge, keyed by edge id.
    accepted: Vec<Option<(usize, usize)>>,
    accepted_count: usize,
    stamp: Vec<u32>,
    epoch: u32,
    parent: Vec<(usize, EdgeId)>,
}

/// Result of gathering pebbles onto a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gather {
    /// At least the requested number of pebbles now sit on the pair.
    Reached,
    /// The pair spans a tight set; these vertices are exactly the ones reachable from it.
    Blocked(Vec<usize>),
}

impl PebbleGame {
    /// A game with per-vertex capacities `caps` and global constant `ell`.
    /// `edge_capacity` is an upper bound on the edge ids that will be offered.
    pub fn new(caps: Vec<i64>, ell: i64, edge_capacity: usize) -> Self {
        let n = caps.len();
        PebbleGame {
            pebbles: caps.clone(),
            caps,
            ell,
            out: vec![BTreeSet::new(); n],
            accepted: vec![None; edge_capacity],
            accepted_count: 0,
            stamp: vec![0; n],
            epoch: 0,
            parent: vec![(usize::MAX, usize::MAX); n],
        }
    }

    pub fn uniform(n: usize, k: i64, ell: i64, edge_capacity: usize) -> Self {
        PebbleGame::new(vec![k; n], ell, edge_capacity)
    }

    pub fn n(&self) -> usize {
        self.caps.len()
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn caps(&self) -> &[i64] {
        &self.caps
    }

    pub fn pebbles(&self) -> &[i64] {
        &self.pebbles
    }

    pub fn is_accepted(&self, e: EdgeId) -> bool {
        self.accepted.get(e).is_some_and(|a| a.is_some())
    }

    pub fn accepted_count(&self) -> usize {
        self.accepted_count
    }

    /// Accepted edges in id order, each with its current `(tail, head)` direction.
    pub fn accepted_arcs(&self) -> Vec<(EdgeId, usize, usize)> {
        self.accepted.iter().enumerate().filter_map(|(e, a)| a.map(|(t, h)| (e, t, h))).collect()
    }

    pub fn outdeg(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// Accepted arcs leaving `v` as `(head, edge)`.
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.out[v].iter().copied()
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Breadth-first search from `start` for a vertex other than `start` holding a
    /// pebble, never entering `blocked`. On success the path is reversed, moving one
    /// pebble to `start`.
    fn fetch(&mut self, start: usize, blocked: &[usize]) -> bool {
        let epoch = self.next_epoch();
        self.stamp[start] = epoch;
        for &b in blocked {
            self.stamp[b] = epoch;
        }
        let mut queue = VecDeque::from([start]);
        let mut found = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.out[u] {
                if self.stamp[w] == epoch {
                    continue;
                }
                self.stamp[w] = epoch;
                self.parent[w] = (u, e);
                if self.pebbles[w] > 0 {
                    found = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        let Some(target) = found else { return false };
        self.pebbles[target] -= 1;
        let mut w = target;
        while w != start {
            let (u, e) = self.parent[w];
            self.out[u].remove(&(w, e));
            self.out[w].insert((u, e));
            self.accepted[e] = Some((w, u));
            w = u;
        }
        self.pebbles[start] += 1;
        true
    }

    /// Moves pebbles onto `u` and `v` until they hold `want` together or no more can be
    /// gathered.
    pub fn gather(&mut self, u: usize, v: usize, want: i64) -> Gather {
        debug_assert_ne!(u, v);
        loop {
            if self.pebbles[u] + self.pebbles[v] >= want {
                return Gather::Reached;
            }
            let moved = (self.pebbles[u] < self.caps[u] && self.fetch(u, &[v]))
                || (self.pebbles[v] < self.caps[v] && self.fetch(v, &[u]));
            if !moved {
                return Gather::Blocked(self.reach(&[u, v]));
            }
        }
    }

    /// Vertices reachable from `starts` along accepted arcs, sorted.
    pub fn reach(&mut self, starts: &[usize]) -> Vec<usize> {
        let epoch = self.next_epoch();
        let mut stack = Vec::new();
        for &s in starts {
            if self.stamp[s] != epoch {
                self.stamp[s] = epoch;
                stack.push(s);
            }
        }
        let mut seen = stack.clone();
        while let Some(u) = stack.pop() {
            for &(w, _) in &self.out[u] {
                if self.stamp[w] != epoch {
                    self.stamp[w] = epoch;
                    stack.push(w);
                    seen.push(w);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    /// Whether some vertex reachable from `w` (other than through the pinned pair) holds a
    /// pebble. Pebbles on `pinned` do not count.
    pub fn reaches_free_pebble(&mut self, w: usize, pinned: [usize; 2]) -> bool {
        let epoch = self.next_epoch();
        self.stamp[w] = epoch;
        let mut stack = vec![w];
        while let Some(u) = stack.pop() {
            if !pinned.contains(&u) && self.pebbles[u] > 0 {
                return true;
            }
            for &(x, _) in &self.out[u] {
                if self.stamp[x] != epoch {
                    self.stamp[x] = epoch;
                    stack.push(x);
                }
            }
        }
        false
    }

    /// Tries to accept edge `e = uv`; on rejection returns the vertex set of the minimal
    /// tight set spanned by the accepted edges that contains `u` and `v`.
    pub fn try_insert(&mut self, e: EdgeId, u: usize, v: usize) -> Result<(), Vec<usize>> {
        if e >= self.accepted.len() {
            self.accepted.resize(e + 1, None);
        }
        assert!(self.accepted[e].is_none(), "edge {e} offered twice");
        if u == v {
            return Err(vec![u]);
        }
        match self.gather(u, v, self.ell + 1) {
            Gather::Blocked(q) => Err(q),
            Gather::Reached => {
                let tail = if self.pebbles[u] > 0 { u } else { v };
                let head = if tail == u { v } else { u };
                self.pebbles[tail] -= 1;
                self.out[tail].insert((head, e));
                self.accepted[e] = Some((tail, head));
                self.accepted_count += 1;
                debug_assert!(self.accounting_holds());
                Ok(())
            }
        }
    }

    /// Circuit test without inserting: `None` if `uv` is independent of the accepted set,
    /// otherwise the minimal tight set containing `u` and `v`.
    pub fn tight_span(&mut self, u: usize, v: usize) -> Option<Vec<usize>> {
        if u == v {
            return Some(vec![u]);
        }
        match self.gather(u, v, self.ell + 1) {
            Gather::Reached => None,
            Gather::Blocked(q) => Some(q),
        }
    }

    pub fn remove(&mut self, e: EdgeId) {
        let (tail, head) = self.accepted[e].take().expect("removing an edge that is not accepted");
        self.out[tail].remove(&(head, e));
        self.pebbles[tail] += 1;
        self.accepted_count -= 1;
    }

    /// `pebbles(v) + outdeg(v) = c(v)` for every vertex.
    pub fn accounting_holds(&self) -> bool {
        (0..self.n()).all(|v| self.pebbles[v] + self.out[v].len() as i64 == self.caps[v] && self.pebbles[v] >= 0)
    }
}
