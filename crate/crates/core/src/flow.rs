//! Deterministic Dinic maximum flow with integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

pub const INF: i64 = i64::MAX / 4;

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), adj: vec![Vec::new(); n], level: vec![0; n], iter: vec![0; n] }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds an arc `u -> v` with capacity `cap` and a reverse arc with capacity `rev_cap`.
    /// Returns the id of the forward arc; its flow can be read with [`FlowNetwork::flow_on`].
    pub fn add_arc(&mut self, u: usize, v: usize, cap: i64, rev_cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap });
        self.arcs.push(Arc { to: u, cap: rev_cap });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        self.add_arc(u, v, cap, 0)
    }

    /// Residual capacity of an arc.
    pub fn residual(&self, arc: usize) -> i64 {
        self.arcs[arc].cap
    }

    /// Net flow pushed along a forward arc created with zero reverse capacity.
    pub fn flow_on(&self, arc: usize) -> i64 {
        self.arcs[arc ^ 1].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[u] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.adj[u].len() {
            let a = self.adj[u][self.iter[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Pushes flow from `s` to `t` until none remains or `limit` is reached.
    pub fn max_flow_limited(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        assert_ne!(s, t);
        let mut total = 0;
        while total < limit && self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let got = self.dfs(s, t, limit - total);
                if got == 0 {
                    break;
                }
                total += got;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        self.max_flow_limited(s, t, INF)
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}
