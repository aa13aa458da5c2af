//! Structure partition of a maximum packing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Partition, VertexSet};
use crate::oracle;
use crate::setfunc::{property_report, SetFunc, MAX_TABLE_GROUND};

use super::union::{Packing, Search, UnionState};

/// The minimal rigid set of part `part` spanned by the ends of `edge`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidSpan {
    pub edge: EdgeId,
    pub part: usize,
    pub set: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCertificate {
    pub partition: Partition,
    /// Edges of the exchange closure `G_0`.
    pub closure: Vec<EdgeId>,
    /// Parts whose restriction to every member of the partition is tight.
    pub tight_parts: Vec<usize>,
    /// For every closure edge inside a member and every part not holding it, the spanned
    /// minimal rigid set, which lies inside that member.
    pub spans: Vec<RigidSpan>,
}

/// Whether `f(A) + f(B) <= f(A ∩ B) + f(A ∪ B)` for all intersecting `A`, `B`.
pub(crate) fn intersecting_supermodular(f: &SetFunc, n: usize) -> Result<bool> {
    if let Some((caps, ell)) = f.pebble_params(n) {
        if !matches!(f, SetFunc::Rooted { .. }) {
            return Ok(caps.iter().all(|&c| c >= ell));
        }
    }
    if n > MAX_TABLE_GROUND {
        return Err(Error::Unsupported { n, limit: MAX_TABLE_GROUND });
    }
    Ok(property_report(f, n)?.intersecting_supermodular.holds)
}

fn restrict(g: &MultiGraph, ids: &[EdgeId], a: VertexSet) -> Result<MultiGraph> {
    let index: Vec<Option<usize>> = {
        let mut idx = vec![None; g.n()];
        for (i, v) in a.iter().enumerate() {
            idx[v] = Some(i);
        }
        idx
    };
    let edges: Vec<(usize, usize)> = ids
        .iter()
        .filter_map(|&e| {
            let (u, v) = g.endpoints(e);
            Some((index[u]?, index[v]?))
        })
        .collect();
    MultiGraph::new(a.len(), &edges)
}

/// Partition of `V` into the components of the exchange closure of the uncovered edges,
/// with properties (1)-(3) verified before returning.
pub fn structure_partition(pk: &Packing) -> Result<StructureCertificate> {
    let g = &pk.host;
    let n = g.n();
    g.require_sets("structure partition")?;
    let mut st = UnionState::from_packing(pk)?;
    let starts: Vec<EdgeId> = pk.uncovered.iter().copied().filter(|e| !pk.forbidden.contains(e)).collect();
    let visited = match st.search(&starts) {
        Search::Found { end, .. } => {
            return Err(Error::Internal(format!("packing is not maximum: edge {end} still augments")))
        }
        Search::Exhausted { visited } => visited,
    };
    let closure: Vec<EdgeId> = (0..g.m()).filter(|&e| visited[e]).collect();
    let g0 = g.edge_subgraph(&closure);
    let parts: Vec<VertexSet> = g0.components().into_iter().map(|c| c.into_iter().collect()).collect();
    let partition = Partition::new(n, parts)?.canonical();
    let member = |v: usize| partition.parts().iter().position(|p| p.contains(v)).unwrap();
    let inside = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        member(u) == member(v)
    };

    // (2): no uncovered edge joins two members.
    if let Some(&e) = pk.uncovered.iter().find(|&&e| !pk.forbidden.contains(&e) && !inside(e)) {
        return Err(Error::Internal(format!("uncovered edge {e} crosses the structure partition")));
    }

    // (1): tight restriction for intersecting supermodular parts.
    let mut tight_parts = Vec::new();
    for (i, part) in pk.parts.iter().enumerate() {
        if !intersecting_supermodular(&part.func, n)? {
            continue;
        }
        for &a in partition.parts() {
            if a.len() < 2 {
                continue;
            }
            let sub = restrict(g, &part.edges, a)?;
            let bound = part.func.bound(a, n);
            if sub.m() as i64 != bound {
                return Err(Error::Internal(format!(
                    "part {i} has {} edges inside {a}, expected {bound}",
                    sub.m()
                )));
            }
            if a.len() <= oracle::OracleBudget::default().partitions && part.func.uniform_params(n).is_some() {
                if let Some(p) = oracle::bf_partition_violation(&sub, &part.func)? {
                    return Err(Error::Internal(format!("part {i} is not partition-connected on {a}: {p:?}")));
                }
            }
        }
        tight_parts.push(i);
    }

    // (3): spans of closure edges stay inside their member.
    let mut spans = Vec::new();
    for &e in &closure {
        if !inside(e) {
            return Err(Error::Internal(format!("closure edge {e} crosses the partition")));
        }
        let a = partition.parts()[member(g.endpoints(e).0)];
        let (x, y) = g.endpoints(e);
        for j in 0..pk.parts.len() {
            if st.assign[e] == Some(j) {
                continue;
            }
            let set: VertexSet = match st.oracles[j].tight_span(x, y) {
                None => return Err(Error::Internal(format!("closure edge {e} is free in part {j}"))),
                Some(q) => q.into_iter().collect(),
            };
            if !set.is_subset(a) {
                return Err(Error::Internal(format!("rigid set {set} of part {j} leaves member {a}")));
            }
            spans.push(RigidSpan { edge: e, part: j, set });
        }
    }

    Ok(StructureCertificate { partition, closure, tight_parts, spans })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::matroid_union_pack;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn examples() {
        let trees = [SetFunc::lmn(1, 1), SetFunc::lmn(1, 1)];
        let pk = matroid_union_pack(&MultiGraph::complete(4), &trees, &[]).unwrap();
        let cert = structure_partition(&pk).unwrap();
        assert!(cert.closure.is_empty());
        assert_eq!(cert.partition.len(), 4);

        let c4 = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pk = matroid_union_pack(&c4, &trees, &[]).unwrap();
        assert!(pk.uncovered.is_empty());
        let cert = structure_partition(&pk).unwrap();
        assert_eq!(cert.partition.len(), 4);
        assert!(2 * 3 > c4.partition_cross(&cert.partition));

        let two = MultiGraph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let pk = matroid_union_pack(&two, &[SetFunc::lmn(1, 1)], &[]).unwrap();
        let cert = structure_partition(&pk).unwrap();
        assert_eq!(cert.partition.parts(), &[set(&[0, 1, 2]), set(&[3, 4, 5])]);
    }

    #[test]
    fn tree_and_rigid_part() {
        for g in crate::oracle::random_multigraphs(60, 6, 14, 8) {
            let pk = matroid_union_pack(&g, &[SetFunc::lmn(1, 1), SetFunc::lmn(2, 3)], &[]).unwrap();
            let cert = structure_partition(&pk).unwrap();
            assert_eq!(cert.tight_parts, vec![0]);
        }
    }
}
