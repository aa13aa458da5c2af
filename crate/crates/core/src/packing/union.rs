//! Matroid-union packing by breadth-first augmenting exchanges.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph};
use crate::setfunc::SetFunc;
use crate::sparsity::Independence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedPart {
    pub func: SetFunc,
    /// Sorted edge ids of the host.
    pub edges: Vec<EdgeId>,
    /// `sum_v f(v) - f(V)`, the size of a spanning tight part.
    pub required: i64,
}

impl PackedPart {
    pub fn is_full(&self) -> bool {
        self.edges.len() as i64 == self.required
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub host: MultiGraph,
    pub parts: Vec<PackedPart>,
    /// Edges in no part, forbidden ones included.
    pub uncovered: Vec<EdgeId>,
    pub forbidden: Vec<EdgeId>,
}

impl Packing {
    pub fn covered(&self) -> usize {
        self.parts.iter().map(|p| p.edges.len()).sum()
    }

    pub fn is_full(&self) -> bool {
        self.parts.iter().all(PackedPart::is_full)
    }

    /// Part index of every edge, `None` for uncovered edges.
    pub fn assignment(&self) -> Vec<Option<usize>> {
        let mut assign = vec![None; self.host.m()];
        for (i, p) in self.parts.iter().enumerate() {
            for &e in &p.edges {
                assign[e] = Some(i);
            }
        }
        assign
    }

    /// The subgraph of part `i`, keeping host vertex numbering; edge `j` of the result is
    /// host edge `parts[i].edges[j]`.
    pub fn part_graph(&self, i: usize) -> MultiGraph {
        self.host.edge_subgraph(&self.parts[i].edges)
    }

    /// Re-checks disjointness, coverage and the sparsity of every part.
    pub fn verify(&self) -> Result<()> {
        let mut seen = vec![0u32; self.host.m()];
        for p in &self.parts {
            for &e in &p.edges {
                if e >= seen.len() {
                    return Err(Error::Internal(format!("edge {e} is out of range")));
                }
                seen[e] += 1;
            }
        }
        for &e in &self.uncovered {
            seen[e] += 1;
        }
        if let Some(e) = seen.iter().position(|&c| c != 1) {
            return Err(Error::Internal(format!("edge {e} is assigned {} times", seen[e])));
        }
        for &e in &self.forbidden {
            if !self.uncovered.contains(&e) {
                return Err(Error::Internal(format!("forbidden edge {e} was packed")));
            }
        }
        for (i, p) in self.parts.iter().enumerate() {
            if let crate::sparsity::Sparsity::Violation { set } = crate::sparsity::is_sparse(&self.part_graph(i), &p.func)? {
                return Err(Error::Internal(format!("part {i} violates sparsity on {set}")));
            }
        }
        Ok(())
    }
}

/// Live packing state: one independence oracle per part plus the edge assignment.
pub(crate) struct UnionState {
    pub(crate) oracles: Vec<Independence>,
    pub(crate) assign: Vec<Option<usize>>,
}

pub(crate) enum Search {
    /// `end` enters `part`; `parent[g] = (f, i)` means `f` enters part `i` while `g` leaves it.
    Found { end: EdgeId, part: usize, parent: Vec<Option<(EdgeId, usize)>> },
    /// No augmenting chain; the visited edges form the exchange closure.
    Exhausted { visited: Vec<bool> },
}

impl UnionState {
    pub(crate) fn new(g: &MultiGraph, funcs: &[SetFunc]) -> Result<Self> {
        let oracles = funcs.iter().map(|f| Independence::new(g, f)).collect::<Result<Vec<_>>>()?;
        Ok(UnionState { oracles, assign: vec![None; g.m()] })
    }

    pub(crate) fn from_packing(pk: &Packing) -> Result<Self> {
        let funcs: Vec<SetFunc> = pk.parts.iter().map(|p| p.func.clone()).collect();
        let mut st = UnionState::new(&pk.host, &funcs)?;
        for (i, p) in pk.parts.iter().enumerate() {
            for &e in &p.edges {
                if !st.oracles[i].insert(e) {
                    return Err(Error::Internal(format!("edge {e} is dependent in part {i}")));
                }
                st.assign[e] = Some(i);
            }
        }
        Ok(st)
    }

    pub(crate) fn search(&mut self, starts: &[EdgeId]) -> Search {
        let m = self.assign.len();
        let mut visited = vec![false; m];
        let mut parent: Vec<Option<(EdgeId, usize)>> = vec![None; m];
        let mut queue = VecDeque::new();
        for &s in starts {
            if !visited[s] {
                visited[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(f) = queue.pop_front() {
            for i in 0..self.oracles.len() {
                if self.assign[f] == Some(i) {
                    continue;
                }
                match self.oracles[i].circuit(f) {
                    None => return Search::Found { end: f, part: i, parent },
                    Some(circuit) => {
                        for g in circuit {
                            if !visited[g] {
                                visited[g] = true;
                                parent[g] = Some((f, i));
                                queue.push_back(g);
                            }
                        }
                    }
                }
            }
        }
        Search::Exhausted { visited }
    }

    pub(crate) fn augment(&mut self, end: EdgeId, part: usize, parent: &[Option<(EdgeId, usize)>]) -> Result<()> {
        let mut inserts = vec![(end, part)];
        let mut removes = Vec::new();
        let mut g = end;
        while let Some((f, i)) = parent[g] {
            removes.push((g, i));
            inserts.push((f, i));
            g = f;
        }
        for &(g, i) in &removes {
            self.oracles[i].remove(g);
            self.assign[g] = None;
        }
        for &(f, i) in &inserts {
            if !self.oracles[i].insert(f) {
                return Err(Error::Internal(format!("augmenting chain failed to insert edge {f} into part {i}")));
            }
            self.assign[f] = Some(i);
        }
        Ok(())
    }
}

/// Edge-disjoint sparse parts, one per function, with maximum total size among packings
/// avoiding `forbidden`.
pub fn matroid_union_pack(g: &MultiGraph, funcs: &[SetFunc], forbidden: &[EdgeId]) -> Result<Packing> {
    let mut banned = vec![false; g.m()];
    for &e in forbidden {
        if e >= g.m() {
            return Err(Error::Precondition(format!("forbidden edge {e} is not an edge of the host")));
        }
        banned[e] = true;
    }
    let mut st = UnionState::new(g, funcs)?;
    for e in 0..g.m() {
        if banned[e] {
            continue;
        }
        if let Search::Found { end, part, parent } = st.search(&[e]) {
            st.augment(end, part, &parent)?;
        }
    }
    let n = g.n();
    let parts = funcs
        .iter()
        .enumerate()
        .map(|(i, f)| PackedPart {
            func: f.clone(),
            edges: (0..g.m()).filter(|&e| st.assign[e] == Some(i)).collect(),
            required: f.rigid_count(n),
        })
        .collect();
    let mut forbidden: Vec<EdgeId> = forbidden.to_vec();
    forbidden.sort_unstable();
    forbidden.dedup();
    let pk = Packing {
        host: g.clone(),
        parts,
        uncovered: (0..g.m()).filter(|&e| st.assign[e].is_none()).collect(),
        forbidden,
    };
    debug_assert!(pk.verify().is_ok());
    Ok(pk)
}
