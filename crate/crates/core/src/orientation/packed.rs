use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph};
use crate::oracle::Verdict;
use crate::packing::pipelines::gate;
use crate::packing::{matroid_union_pack, structure_partition, HypothesisReport, HypothesisSpec, PipelineOptions};
use crate::setfunc::{derived, Derived, SetFunc};

use super::euler::smooth_orient;
use super::hakimi::{hakimi_orient, HakimiOutcome};
use super::{verify_arc, Orientation, MAX_ARC_SWEEP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferredBound {
    pub vertex: usize,
    pub out_degree: usize,
    /// `floor(d(u)/2)`.
    pub bound: usize,
    pub achieved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedOrientation {
    pub orientation: Orientation,
    /// Edges of the degree absorber part.
    pub absorber: Vec<EdgeId>,
    /// The `r1`-rooted `l`-arc-connected part.
    pub h1: Vec<EdgeId>,
    /// The `r2`-rooted `ell`-arc-connected part.
    pub h2: Vec<EdgeId>,
    /// Edges in no part, oriented smoothly.
    pub remainder: Vec<EdgeId>,
    pub hypothesis: Option<HypothesisReport>,
    /// Rooted arc-connectivity verdicts of `h1` and `h2`, absent above the sweep limit.
    pub h1_arc: Option<Verdict>,
    pub h2_arc: Option<Verdict>,
    pub preferred: Option<PreferredBound>,
}

fn check_roots(name: &str, f: &SetFunc, r: &[i64], n: usize) -> Result<()> {
    if r.len() != n {
        return Err(Error::Precondition(format!("{name} has {} entries for {n} vertices", r.len())));
    }
    for (v, &x) in r.iter().enumerate() {
        if x < 0 || x > f.single(v, n) {
            return Err(Error::Precondition(format!("{name}({v}) = {x} must lie in [0, {}]", f.single(v, n))));
        }
    }
    let sum: i64 = r.iter().sum();
    if sum != f.full(n) {
        return Err(Error::Precondition(format!("{name} sums to {sum}, but the function is {} on V", f.full(n))));
    }
    Ok(())
}

fn orient_part(g: &MultiGraph, ids: &[EdgeId], f: &SetFunc, d: &mut Orientation) -> Result<()> {
    let n = g.n();
    let sub = g.edge_subgraph(ids);
    match hakimi_orient(&sub, &f.singles(n))? {
        HakimiOutcome::Oriented { orientation } => {
            for (j, &e) in ids.iter().enumerate() {
                d.arcs[e] = orientation.arc(j);
            }
            Ok(())
        }
        HakimiOutcome::Infeasible { set, .. } => {
            Err(Error::Internal(format!("part for {f} cannot meet its in-degrees: {set} is too dense")))
        }
    }
}

/// An orientation of `g` with an `r1`-rooted `l`-arc-connected part and an edge-disjoint
/// `r2`-rooted `ell`-arc-connected part, with in-degrees `l - r1` and `ell - r2` on them and
/// `d^+(v) <= ceil(d(v)/2)` overall.
pub fn packed_orientation(
    g: &MultiGraph,
    l: &SetFunc,
    ell: &SetFunc,
    r1: &[i64],
    r2: &[i64],
    preferred: Option<usize>,
    opts: PipelineOptions,
) -> Result<PackedOrientation> {
    let n = g.n();
    l.check_ground(n)?;
    ell.check_ground(n)?;
    check_roots("r1", l, r1, n)?;
    check_roots("r2", ell, r2, n)?;
    let hypothesis = gate(g, Some(HypothesisSpec::Pack61 { l: l.clone(), ell: ell.clone(), excluded: 0 }), opts)?;

    let rl = derived(g, Derived::RootedShift { f: l, r: r1 })?;
    let rell = derived(g, Derived::RootedShift { f: ell, r: r2 })?;
    let absorber = derived(g, Derived::HalvedAbsorber { l: &rl, ell: &rell })?;
    let funcs = [absorber, rl, rell];
    let pk = matroid_union_pack(g, &funcs, &[])?;
    pk.verify()?;
    if !pk.is_full() {
        let cert = structure_partition(&pk)?;
        let detail = format!("packing is deficient; structure partition {:?}", cert.partition.parts());
        return Err(match &hypothesis {
            Some(rep) if rep.holds => Error::Internal(detail),
            _ => Error::Hypothesis { theorem: "pack61".into(), detail },
        });
    }

    let mut d = Orientation::forward(g.clone());
    for (part, f) in pk.parts.iter().zip(&funcs) {
        orient_part(g, &part.edges, f, &mut d)?;
    }
    let remainder = pk.uncovered.clone();
    let rest = smooth_orient(&g.edge_subgraph(&remainder), preferred)?;
    for (j, &e) in remainder.iter().enumerate() {
        d.arcs[e] = rest.arc(j);
    }

    let [a, p1, p2] = [0, 1, 2].map(|i| pk.parts[i].edges.clone());
    let (o1, o2) = (d.restrict(&p1), d.restrict(&p2));
    for (o, f, r, name) in [(&o1, l, r1, "H1"), (&o2, ell, r2, "H2")] {
        let ins = o.in_degrees();
        if let Some(v) = (0..n).find(|&v| ins[v] as i64 != f.single(v, n) - r[v]) {
            return Err(Error::Internal(format!("{name} has in-degree {} at {v}", ins[v])));
        }
    }
    let deg = g.degrees();
    let outs = d.out_degrees();
    if let Some(v) = (0..n).find(|&v| outs[v] > deg[v].div_ceil(2)) {
        return Err(Error::Internal(format!("vertex {v} has out-degree {} of {}", outs[v], deg[v])));
    }
    let (h1_arc, h2_arc) = if n <= MAX_ARC_SWEEP {
        let v1 = verify_arc(&o1, l, Some(r1))?;
        let v2 = verify_arc(&o2, ell, Some(r2))?;
        if !v1.holds || !v2.holds {
            return Err(Error::Internal(format!("rooted arc-connectivity fails: {v1:?} {v2:?}")));
        }
        (Some(v1), Some(v2))
    } else {
        (None, None)
    };
    let preferred = preferred.map(|u| PreferredBound {
        vertex: u,
        out_degree: outs[u],
        bound: deg[u] / 2,
        achieved: outs[u] <= deg[u] / 2,
    });
    Ok(PackedOrientation { orientation: d, absorber: a, h1: p1, h2: p2, remainder, hypothesis, h1_arc, h2_arc, preferred })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k9_roots() -> (Vec<i64>, Vec<i64>) {
        let mut r1 = vec![0; 9];
        r1[0] = 1;
        let mut r2 = vec![0; 9];
        r2[0] = 2;
        r2[1] = 1;
        (r1, r2)
    }

    #[test]
    fn k9_rooted_parts() {
        let g = MultiGraph::complete(9);
        let (r1, r2) = k9_roots();
        let out = packed_orientation(&g, &SetFunc::lmn(1, 1), &SetFunc::k_rigid(2), &r1, &r2, Some(0), PipelineOptions::default())
            .unwrap();
        assert_eq!(out.h1.len(), 8);
        assert_eq!(out.h2.len(), 15);
        assert_eq!(out.absorber.len(), 13);
        assert!(out.remainder.is_empty());
        assert!(out.h1_arc.unwrap().holds && out.h2_arc.unwrap().holds);
        assert!(out.preferred.unwrap().achieved);
        assert!(out.orientation.out_degrees().iter().all(|&x| x <= 4));
    }

    #[test]
    fn zero_l_leaves_h1_empty() {
        let g = MultiGraph::complete(7);
        let mut r2 = vec![0; 7];
        r2[3] = 2;
        r2[4] = 1;
        let out =
            packed_orientation(&g, &SetFunc::zero(), &SetFunc::k_rigid(2), &[0; 7], &r2, None, PipelineOptions::forced()).unwrap();
        assert!(out.h1.is_empty());
        assert_eq!(out.h2.len(), 11);
        assert!(out.h2_arc.unwrap().holds);
    }

    #[test]
    fn rejects_large_roots() {
        let g = MultiGraph::complete(9);
        let mut r2 = vec![0; 9];
        r2[0] = 3;
        let (r1, _) = k9_roots();
        let err = packed_orientation(&g, &SetFunc::lmn(1, 1), &SetFunc::k_rigid(2), &r1, &r2, None, PipelineOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
