//! Decomposition of a `p * ell`-rigid graph into `p` spanning `ell`-rigid subgraphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexSet};
use crate::setfunc::{derived, Derived, SetFunc};
use crate::sparsity::rank_and_rigid;

use super::union::matroid_union_pack;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Host edge ids of each spanning rigid part.
    pub parts: Vec<Vec<EdgeId>>,
    /// Edges outside the minimally `p * ell`-rigid witness.
    pub leftover: Vec<EdgeId>,
}

/// Checks `ell(u) + ell(v) = ell({u, v}) + 1` on every edge.
pub fn check_adjacency_clause(g: &MultiGraph, ell: &SetFunc) -> Result<()> {
    let n = g.n();
    ell.check_ground(n)?;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let pair: VertexSet = [u, v].into_iter().collect();
        if ell.single(u, n) + ell.single(v, n) != ell.eval(pair, n) + 1 {
            return Err(Error::AdjacencyClause { edge: e });
        }
    }
    Ok(())
}

pub fn decompose_p_rigid(g: &MultiGraph, ell: &SetFunc, p: usize) -> Result<Decomposition> {
    if p == 0 {
        return Err(Error::Precondition("p must be positive".into()));
    }
    check_adjacency_clause(g, ell)?;
    let scaled = derived(g, Derived::Scaled { p: p as i64, f: ell })?;
    let report = rank_and_rigid(g, &scaled)?;
    if !report.rigid {
        return Err(Error::RankDeficit { rank: report.rank, required: report.required });
    }
    let witness = g.edge_subgraph(&report.basis);
    let funcs = vec![ell.clone(); p];
    let pk = matroid_union_pack(&witness, &funcs, &[])?;
    if let Some(i) = pk.parts.iter().position(|part| !part.is_full()) {
        return Err(Error::Internal(format!(
            "part {i} has {} edges, expected {}",
            pk.parts[i].edges.len(),
            pk.parts[i].required
        )));
    }
    let parts: Vec<Vec<EdgeId>> =
        pk.parts.iter().map(|part| part.edges.iter().map(|&j| report.basis[j]).collect()).collect();
    for (i, part) in parts.iter().enumerate() {
        let r = rank_and_rigid(&g.edge_subgraph(part), ell)?;
        if !r.rigid || r.rank != part.len() {
            return Err(Error::Internal(format!("part {i} is not minimally rigid")));
        }
    }
    let mut used = vec![false; g.m()];
    for &e in &report.basis {
        used[e] = true;
    }
    Ok(Decomposition { parts, leftover: (0..g.m()).filter(|&e| !used[e]).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = decompose_p_rigid(&MultiGraph::complete(4), &SetFunc::lmn(1, 1), 2).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert!(d.parts.iter().all(|p| p.len() == 3));
        assert!(d.leftover.is_empty());

        let c4 = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            decompose_p_rigid(&c4, &SetFunc::lmn(1, 1), 2).unwrap_err(),
            Error::RankDeficit { rank: 4, required: 6 }
        );

        let d = decompose_p_rigid(&c4, &SetFunc::lmn(1, 1), 1).unwrap();
        assert_eq!(d.parts[0].len(), 3);
        assert_eq!(d.leftover.len(), 1);
    }

    #[test]
    fn adjacency_clause_is_enforced() {
        let err = decompose_p_rigid(&MultiGraph::complete(4), &SetFunc::lmn(2, 2), 1).unwrap_err();
        assert_eq!(err, Error::AdjacencyClause { edge: 0 });
    }

    #[test]
    fn two_rigid_parts_of_k7() {
        let d = decompose_p_rigid(&MultiGraph::complete(7), &SetFunc::k_rigid(2), 1).unwrap();
        assert_eq!(d.parts[0].len(), 11);
        let k8 = MultiGraph::complete(8);
        let d = decompose_p_rigid(&k8, &SetFunc::k_rigid(2), 2).unwrap();
        assert!(d.parts.iter().all(|p| p.len() == 13));
    }
}
