//! Edge, essential-edge, vertex and arc connectivity via repeated max-flow.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::graph::MultiGraph;

/// A connectivity value, or `Unbounded` when no cut of the requested kind exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Conn {
    Finite(usize),
    Unbounded,
}

impl Conn {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Conn::Finite(c) => c >= k,
            Conn::Unbounded => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Conn::Finite(c) => Some(c),
            Conn::Unbounded => None,
        }
    }
}

impl fmt::Display for Conn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conn::Finite(c) => write!(f, "{c}"),
            Conn::Unbounded => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnKind {
    Edge,
    EssentialEdge,
    LocalEdge(usize, usize),
}

pub fn connectivity(g: &MultiGraph, kind: ConnKind) -> Result<Conn> {
    match kind {
        ConnKind::Edge => Ok(edge_connectivity(g)),
        ConnKind::EssentialEdge => Ok(essential_edge_connectivity(g)),
        ConnKind::LocalEdge(s, t) => {
            for v in [s, t] {
                if v >= g.n() {
                    return Err(Error::VertexOutOfRange { index: 0, vertex: v, n: g.n() });
                }
            }
            if s == t {
                return Err(Error::SameEndpoints(s));
            }
            Ok(Conn::Finite(local_edge_connectivity(g, s, t, usize::MAX)))
        }
    }
}

fn undirected_network(g: &MultiGraph, extra: usize) -> FlowNetwork {
    let mut net = FlowNetwork::new(g.n() + extra);
    for &(u, v) in g.edges() {
        net.add_arc(u, v, 1, 1);
    }
    net
}

/// Maximum number of edge-disjoint `s`-`t` paths, capped at `limit`.
pub fn local_edge_connectivity(g: &MultiGraph, s: usize, t: usize, limit: usize) -> usize {
    let mut net = undirected_network(g, 0);
    net.max_flow_limited(s, t, limit.min(INF as usize) as i64) as usize
}

/// Global edge connectivity; `Unbounded` on a single vertex, 0 when disconnected.
pub fn edge_connectivity(g: &MultiGraph) -> Conn {
    if g.n() == 1 {
        return Conn::Unbounded;
    }
    let mut best = g.min_degree();
    for t in 1..g.n() {
        if best == 0 {
            break;
        }
        best = best.min(local_edge_connectivity(g, 0, t, best));
    }
    Conn::Finite(best)
}

/// Minimum `d_G(A)` over sets `A` such that both `A` and its complement induce an edge.
pub fn essential_edge_connectivity(g: &MultiGraph) -> Conn {
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut best: Option<usize> = None;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let limit = best.unwrap_or(g.m());
            if limit == 0 {
                return Conn::Finite(0);
            }
            let s = g.n();
            let t = g.n() + 1;
            let mut net = undirected_network(g, 2);
            net.add_edge(s, a, INF);
            net.add_edge(s, b, INF);
            net.add_edge(c, t, INF);
            net.add_edge(d, t, INF);
            let f = net.max_flow_limited(s, t, limit as i64) as usize;
            best = Some(best.map_or(f, |x| x.min(f)));
        }
    }
    best.map_or(Conn::Unbounded, Conn::Finite)
}

/// Vertex connectivity: `n - 1` for graphs where every pair is adjacent, otherwise the
/// minimum vertex separator size over nonadjacent pairs.
pub fn vertex_connectivity(g: &MultiGraph) -> usize {
    let n = g.n();
    let mut adjacent = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adjacent[u][v] = true;
        adjacent[v][u] = true;
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if adjacent[s][t] {
                continue;
            }
            // Vertex w splits into w_in = w and w_out = n + w.
            let mut net = FlowNetwork::new(2 * n);
            for w in 0..n {
                let cap = if w == s || w == t { INF } else { 1 };
                net.add_edge(w, n + w, cap);
            }
            for &(u, v) in g.edges() {
                net.add_edge(n + u, v, INF);
                net.add_edge(n + v, u, INF);
            }
            let f = net.max_flow_limited(n + s, t, best as i64) as usize;
            best = best.min(f);
        }
    }
    best
}

/// A vertex `v` such that `G - v` is not `k`-edge-connected, if any.
pub fn fragile_vertex(g: &MultiGraph, k: usize) -> Option<usize> {
    (0..g.n()).find(|&v| {
        let (h, _, _) = g.remove_vertex(v);
        g.n() > 1 && !edge_connectivity(&h).at_least(k)
    })
}

/// Arc-strong connectivity of a digraph on `0..n` given by `(tail, head)` arcs.
pub fn arc_strong_connectivity(n: usize, arcs: &[(usize, usize)]) -> Conn {
    if n <= 1 {
        return Conn::Unbounded;
    }
    let build = || {
        let mut net = FlowNetwork::new(n);
        for &(u, v) in arcs {
            net.add_edge(u, v, 1);
        }
        net
    };
    let mut best = arcs.len();
    for t in 1..n {
        if best == 0 {
            break;
        }
        best = best.min(build().max_flow_limited(0, t, best as i64) as usize);
        best = best.min(build().max_flow_limited(t, 0, best as i64) as usize);
    }
    Conn::Finite(best)
}
