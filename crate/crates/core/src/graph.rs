//! Loopless multigraphs and the counting primitives used throughout the crate.
//!
//! Vertices are dense indices `0..n`. Edge identities are the positions in the
//! edge list, so parallel edges stay distinguishable. Vertex sets are 64-bit
//! masks; operations that take or return a [`VertexSet`] therefore require
//! `n <= 64`, while the flow and pebble engines work at any size.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type EdgeId = usize;

/// Largest vertex count for which vertex sets can be represented.
pub const MAX_SET_VERTICES: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_SET_VERTICES, "vertex sets hold at most 64 vertices");
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_SET_VERTICES);
        VertexSet(1u64 << v)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_SET_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_SET_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_SET_VERTICES {
            self.0 &= !(1u64 << v);
        }
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = vs.iter().find(|&&v| v >= MAX_SET_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} does not fit in a vertex set")));
        }
        Ok(vs.into_iter().collect())
    }
}

/// A partition of `0..n` into disjoint nonempty parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self> {
        if n > MAX_SET_VERTICES {
            return Err(Error::TooLarge { what: "partition", n, limit: MAX_SET_VERTICES });
        }
        let mut seen = VertexSet::EMPTY;
        for &p in &parts {
            if p.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            if !p.is_disjoint(seen) {
                return Err(Error::InvalidPartition(format!("part {p} overlaps an earlier part")));
            }
            seen = seen.union(p);
        }
        if seen != VertexSet::full(n) {
            return Err(Error::InvalidPartition(format!("parts cover {seen}, not all of 0..{n}")));
        }
        Ok(Partition { parts })
    }

    /// Parts ordered by their smallest vertex.
    pub fn canonical(mut self) -> Self {
        self.parts.sort_by_key(|p| p.first());
        self
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// A counting query over a multigraph.
#[derive(Clone, Debug)]
pub enum CountQuery<'a> {
    /// Edges with both ends in the set.
    Induced(VertexSet),
    /// Edges with exactly one end in the set.
    Boundary(VertexSet),
    /// Edges with one end in `a` and the other outside `a ∪ b`.
    BoundaryMinus(VertexSet, VertexSet),
    PartitionCross(&'a Partition),
    /// Edges whose ends lie together in no member of the collection.
    CollectionCross(&'a [VertexSet]),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for MultiGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        MultiGraph::new(raw.n, &raw.edges)
    }
}

impl MultiGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        for (index, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { index, vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge { index, vertex: u });
            }
        }
        Ok(MultiGraph { n, edges: edges.to_vec() })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        MultiGraph { n: n.max(1), edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_mask(&self, e: EdgeId) -> u64 {
        let (u, v) = self.edges[e];
        (1u64 << u) | (1u64 << v)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Incidence lists: for each vertex, `(neighbour, edge id)` in edge order.
    pub fn incidence(&self) -> Vec<Vec<(usize, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        adj
    }

    /// Spanning subgraph on the given edges; edge `i` of the result is `ids[i]` here.
    pub fn edge_subgraph(&self, ids: &[EdgeId]) -> MultiGraph {
        MultiGraph { n: self.n, edges: ids.iter().map(|&e| self.edges[e]).collect() }
    }

    /// Spanning subgraph without the given edges, plus the id map back into `self`.
    pub fn without_edges(&self, removed: &[EdgeId]) -> (MultiGraph, Vec<EdgeId>) {
        let mut drop = vec![false; self.m()];
        for &e in removed {
            drop[e] = true;
        }
        let keep: Vec<EdgeId> = (0..self.m()).filter(|&e| !drop[e]).collect();
        (self.edge_subgraph(&keep), keep)
    }

    /// `G - v`, relabelling the remaining vertices in order. Returns the old-to-new map
    /// (`None` for the removed vertex) and, for each new edge, its id in `self`.
    pub fn remove_vertex(&self, v: usize) -> (MultiGraph, Vec<Option<usize>>, Vec<EdgeId>) {
        let map: Vec<Option<usize>> =
            (0..self.n).map(|w| (w != v).then(|| if w < v { w } else { w - 1 })).collect();
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if let (Some(x), Some(y)) = (map[a], map[b]) {
                edges.push((x, y));
                origin.push(e);
            }
        }
        (MultiGraph { n: (self.n - 1).max(1), edges }, map, origin)
    }

    /// Connected components as vertex lists, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.incidence();
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub(crate) fn require_sets(&self, what: &'static str) -> Result<()> {
        if self.n > MAX_SET_VERTICES {
            Err(Error::TooLarge { what, n: self.n, limit: MAX_SET_VERTICES })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, a: VertexSet) -> Result<()> {
        self.require_sets("vertex-set query")?;
        if a.is_subset(self.all_vertices()) {
            Ok(())
        } else {
            Err(Error::SetOutOfRange { set: a, n: self.n })
        }
    }

    /// `e_G(A)`.
    pub fn induced_count(&self, a: VertexSet) -> usize {
        let a = a.mask();
        (0..self.m()).filter(|&e| self.edge_mask(e) & !a == 0).count()
    }

    /// `d_G(A)`.
    pub fn boundary(&self, a: VertexSet) -> usize {
        self.edges.iter().filter(|&&(u, v)| a.contains(u) != a.contains(v)).count()
    }

    /// `d_{G-B}(A)`: edges from `A` to vertices outside `A ∪ B`.
    pub fn boundary_minus(&self, a: VertexSet, b: VertexSet) -> Result<usize> {
        if !a.is_disjoint(b) {
            return Err(Error::OverlappingSets { a, b });
        }
        let ab = a.union(b);
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| (a.contains(u) && !ab.contains(v)) || (a.contains(v) && !ab.contains(u)))
            .count())
    }

    /// `e_G(P)`.
    pub fn partition_cross(&self, p: &Partition) -> usize {
        let inside: usize = p.parts().iter().map(|&x| self.induced_count(x)).sum();
        self.m() - inside
    }

    /// `e_G(𝒫)` for an arbitrary collection of sets.
    pub fn collection_cross(&self, sets: &[VertexSet]) -> usize {
        (0..self.m())
            .filter(|&e| {
                let em = self.edge_mask(e);
                !sets.iter().any(|s| em & !s.mask() == 0)
            })
            .count()
    }

    pub fn count(&self, query: CountQuery<'_>) -> Result<usize> {
        self.require_sets("count")?;
        Ok(match query {
            CountQuery::Induced(a) => {
                self.check_set(a)?;
                self.induced_count(a)
            }
            CountQuery::Boundary(a) => {
                self.check_set(a)?;
                self.boundary(a)
            }
            CountQuery::BoundaryMinus(a, b) => {
                self.check_set(a)?;
                self.check_set(b)?;
                self.boundary_minus(a, b)?
            }
            CountQuery::PartitionCross(p) => {
                if p.parts().iter().fold(VertexSet::EMPTY, |s, &x| s.union(x)) != self.all_vertices() {
                    return Err(Error::InvalidPartition("partition does not cover the graph".into()));
                }
                self.partition_cross(p)
            }
            CountQuery::CollectionCross(sets) => {
                for &s in sets {
                    self.check_set(s)?;
                }
                self.collection_cross(sets)
            }
        })
    }

    /// Collapses `a` to a single vertex, dropping the edges inside `a`.
    ///
    /// Returns the quotient graph and the old-to-new vertex map. The merged vertex takes
    /// the position of the smallest member of `a`; other vertices keep their order.
    pub fn contract(&self, a: VertexSet) -> Result<(MultiGraph, Vec<usize>)> {
        self.check_set(a)?;
        let rep = a.first().ok_or(Error::EmptySet)?;
        let mut map = vec![0; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if a.contains(v) && v != rep {
                continue;
            }
            map[v] = next;
            next += 1;
        }
        for v in a.iter() {
            map[v] = map[rep];
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| !(a.contains(u) && a.contains(v)))
            .map(|&(u, v)| (map[u], map[v]))
            .collect();
        Ok((MultiGraph { n: next, edges }, map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn c4() -> MultiGraph {
        MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn build_rejects_loops_and_range() {
        let t = MultiGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(t.m(), 3);
        assert_eq!(MultiGraph::new(2, &[(0, 1), (0, 1)]).unwrap().m(), 2);
        assert_eq!(MultiGraph::new(3, &[(0, 0)]), Err(Error::LoopEdge { index: 0, vertex: 0 }));
        assert!(matches!(MultiGraph::new(3, &[(0, 1), (1, 5)]), Err(Error::VertexOutOfRange { index: 1, .. })));
        assert_eq!(MultiGraph::new(0, &[]), Err(Error::NoVertices));
    }

    #[test]
    fn counting_examples() {
        let k4 = MultiGraph::complete(4);
        assert_eq!(k4.count(CountQuery::Induced(set(&[0, 1, 2]))).unwrap(), 3);
        assert_eq!(k4.count(CountQuery::BoundaryMinus(set(&[0, 1]), set(&[3]))).unwrap(), 2);
        let p = Partition::new(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        assert_eq!(c4().count(CountQuery::PartitionCross(&p)).unwrap(), 2);
        assert!(matches!(
            k4.count(CountQuery::BoundaryMinus(set(&[0, 1]), set(&[1]))),
            Err(Error::OverlappingSets { .. })
        ));
    }

    #[test]
    fn collection_cross_counts_uncovered_edges() {
        let k4 = MultiGraph::complete(4);
        assert_eq!(k4.collection_cross(&[set(&[0, 1]), set(&[1, 2])]), 4);
    }

    #[test]
    fn contraction_examples() {
        let tri = MultiGraph::complete(3);
        let (q, _) = tri.contract(set(&[0, 1])).unwrap();
        assert_eq!((q.n(), q.m()), (2, 2));
        let (q, _) = c4().contract(set(&[0, 1, 2, 3])).unwrap();
        assert_eq!((q.n(), q.m()), (1, 0));
        let (q, map) = MultiGraph::complete(4).contract(set(&[0, 1])).unwrap();
        assert_eq!((q.n(), q.m()), (3, 5));
        assert_eq!(map, vec![0, 0, 1, 2]);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![set(&[0]), set(&[0, 1, 2])]).is_err());
        assert!(Partition::new(3, vec![set(&[0]), set(&[1])]).is_err());
        assert!(Partition::new(3, vec![set(&[0, 2]), set(&[1])]).is_ok());
    }

    #[test]
    fn counting_identities_exhaustive() {
        let graphs = [MultiGraph::complete(5), c4(), MultiGraph::new(5, &[(0, 1), (0, 1), (1, 2), (3, 4), (2, 4)]).unwrap()];
        for g in &graphs {
            let n = g.n();
            for mask in 0..1u64 << n {
                let a = VertexSet::from_mask(mask);
                let ac = a.complement(n);
                assert_eq!(g.induced_count(a) + g.induced_count(ac) + g.boundary(a), g.m());
                for bm in 0..1u64 << n {
                    let b = VertexSet::from_mask(bm);
                    if !a.is_disjoint(b) {
                        continue;
                    }
                    let between = g
                        .edges()
                        .iter()
                        .filter(|&&(u, v)| (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u)))
                        .count();
                    assert_eq!(g.boundary_minus(a, b).unwrap(), g.boundary(a) - between);
                }
                if !a.is_empty() {
                    let (q, _) = g.contract(a).unwrap();
                    assert_eq!(q.m(), g.m() - g.induced_count(a));
                }
            }
        }
    }
}
