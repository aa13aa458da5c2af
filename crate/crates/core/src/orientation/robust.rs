use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::connectivity::edge_connectivity;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexSet};
use crate::packing::pipelines::{degrees_of, gate};
use crate::packing::{preset_pipeline, HypothesisReport, HypothesisSpec, PipelineOptions, Preset};
use crate::setfunc::SetFunc;

use super::euler::{random_eulerian_orient, smooth_orient};
use super::forest::parity_forest;
use super::{min_cut_witness, Orientation};

pub const DEFAULT_RETRY_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustOptions {
    pub seed: u64,
    /// Number of seeded Euler orientations tried before giving up.
    pub budget: usize,
    pub pipeline: PipelineOptions,
}

impl Default for RobustOptions {
    fn default() -> Self {
        RobustOptions { seed: 0, budget: DEFAULT_RETRY_BUDGET, pipeline: PipelineOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustOutcome {
    pub orientation: Orientation,
    /// The spanning tree split off by the packing.
    pub tree: Vec<EdgeId>,
    /// The subforest of `tree` that makes `H` Eulerian.
    pub forest: Vec<EdgeId>,
    /// Edges of the Eulerian subgraph `H`.
    pub eulerian: Vec<EdgeId>,
    pub attempts: usize,
    pub repairs: usize,
    pub arc_strong: usize,
    pub hypothesis: Option<HypothesisReport>,
}

/// `(v, A)` such that `D - v` has fewer than `k` arcs entering `A`, in original labels.
fn weak_cut(d: &Orientation, k: usize) -> Option<(usize, VertexSet)> {
    let n = d.host().n();
    (0..n).find_map(|v| {
        let (h, map, origin) = d.host().remove_vertex(v);
        let arcs = origin.iter().map(|&e| (map[d.arc(e).0].unwrap(), map[d.arc(e).1].unwrap())).collect();
        let sub = Orientation::new(h, arcs).expect("relabelled arcs match");
        let cut = min_cut_witness(&sub, k as i64)?;
        let back: VertexSet = (0..n).filter(|&w| w != v && map[w].is_some_and(|x| cut.contains(x))).collect();
        Some((v, back))
    })
}

/// Reverses a directed cycle `v -> a ~> w -> v` with `a` in `A` and `w` outside `A ∪ {v}`,
/// raising the arcs entering `A` in `D - v` by one.
fn repair(d: &mut Orientation, v: usize, a: VertexSet) -> bool {
    let n = d.host().n();
    let mut out: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
    let mut into_v = vec![None; n];
    for (e, &(t, h)) in d.arcs().iter().enumerate() {
        if t != v && h != v {
            out[t].push((h, e));
        } else if h == v && into_v[t].is_none() {
            into_v[t] = Some(e);
        }
    }
    let starts: Vec<(usize, EdgeId)> =
        d.arcs().iter().enumerate().filter(|&(_, &(t, h))| t == v && a.contains(h)).map(|(e, &(_, h))| (h, e)).collect();
    for (s, first) in starts {
        let mut prev: Vec<Option<(usize, EdgeId)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if !a.contains(u) {
                if let Some(last) = into_v[u] {
                    let mut cycle = vec![first, last];
                    let mut at = u;
                    while let Some((p, e)) = prev[at] {
                        cycle.push(e);
                        at = p;
                    }
                    for e in cycle {
                        d.reverse(e);
                    }
                    return true;
                }
            }
            for &(w, e) in &out[u] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
    }
    false
}

fn search(h: &MultiGraph, k: usize, opts: &RobustOptions) -> Result<(Orientation, usize, usize)> {
    let max_repairs = 4 * h.n() * k.max(1);
    let mut repairs = 0;
    let mut last = String::new();
    for attempt in 0..opts.budget {
        let mut d = random_eulerian_orient(h, opts.seed.wrapping_add(attempt as u64))?;
        let mut ok = false;
        for _ in 0..=max_repairs {
            match weak_cut(&d, k) {
                None => {
                    ok = true;
                    break;
                }
                Some((v, a)) => {
                    last = format!("H - {v} has fewer than {k} arcs entering {a}");
                    if !repair(&mut d, v, a) {
                        break;
                    }
                    repairs += 1;
                }
            }
        }
        if ok {
            return Ok((d, attempt + 1, repairs));
        }
    }
    Err(Error::BudgetExhausted { budget: opts.budget, detail: last })
}

/// A smooth `(2k+1)`-arc-strong orientation such that `D - v` is `k`-arc-strong for every `v`.
pub fn robust_arc_strong(g: &MultiGraph, k: usize, opts: RobustOptions) -> Result<RobustOutcome> {
    let n = g.n();
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if !g.is_simple() && !opts.pipeline.force {
        return Err(Error::Hypothesis { theorem: "robust".into(), detail: "graph is not simple".into() });
    }
    let (ki, kk) = (k as i64, 2 * k + 1);
    let spec = HypothesisSpec::WeaklyConnected { ell: SetFunc::constant(2 * ki + 1), l: SetFunc::constant(8 * ki + 4) };
    let hypothesis = gate(g, Some(spec), opts.pipeline)?;
    let guaranteed = hypothesis.as_ref().is_some_and(|r| r.holds);
    let fail = |detail: String| {
        if guaranteed {
            Error::Internal(detail)
        } else {
            Error::Hypothesis { theorem: "robust".into(), detail }
        }
    };

    let inner = PipelineOptions { force: true, ..opts.pipeline };
    let pre = preset_pipeline(g, &Preset::Thm10_2 { k: kk, p: 1, m: 1 }, inner).map_err(|e| fail(e.to_string()))?;
    let tree = pre.trees[0].clone();
    let (gp, gp_ids) = g.without_edges(&tree);
    let c = edge_connectivity(&gp);
    if !c.at_least(4 * k + 1) {
        return Err(fail(format!("the complement of the tree is only {c}-edge-connected")));
    }

    let dgp = gp.degrees();
    let odd: Vec<bool> = dgp.iter().map(|d| d % 2 == 1).collect();
    let forest = parity_forest(g, &tree, &odd)?;
    let mut eulerian: Vec<EdgeId> = gp_ids.iter().chain(&forest).copied().collect();
    eulerian.sort_unstable();
    let hg = g.edge_subgraph(&eulerian);
    if let Some(v) = (0..n).find(|&v| hg.degree(v) % 2 == 1) {
        return Err(Error::Internal(format!("H has odd degree at {v}")));
    }
    let c = edge_connectivity(&hg);
    if !c.at_least(4 * k + 2) {
        return Err(fail(format!("H is only {c}-edge-connected")));
    }

    let (dh, attempts, repairs) = search(&hg, k, &opts)?;
    let (_, rest_ids) = g.without_edges(&eulerian);
    let rest = smooth_orient(&g.edge_subgraph(&rest_ids), None)?;
    let mut d = Orientation::forward(g.clone());
    for (j, &e) in eulerian.iter().enumerate() {
        d.arcs[e] = dh.arc(j);
    }
    for (j, &e) in rest_ids.iter().enumerate() {
        d.arcs[e] = rest.arc(j);
    }

    if !d.is_smooth() {
        return Err(Error::Internal("final orientation is not smooth".into()));
    }
    let arc_strong = d.arc_strong_connectivity();
    if !arc_strong.at_least(kk) {
        return Err(Error::Internal(format!("final orientation is only {arc_strong}-arc-strong")));
    }
    if let Some(v) = d.fragile_vertex(k) {
        return Err(Error::Internal(format!("D - {v} is not {k}-arc-strong")));
    }
    debug_assert_eq!(degrees_of(g, &eulerian), hg.degrees());
    Ok(RobustOutcome {
        orientation: d,
        tree,
        forest,
        eulerian,
        attempts,
        repairs,
        arc_strong: arc_strong.finite().unwrap_or(usize::MAX),
        hypothesis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_fails_the_hypothesis() {
        let c4 = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(robust_arc_strong(&c4, 1, RobustOptions::default()), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn repair_raises_a_cut() {
        let k5 = MultiGraph::complete(5);
        let mut repaired = 0;
        for seed in 0..40 {
            let mut d = random_eulerian_orient(&k5, seed).unwrap();
            let (v, a) = weak_cut(&d, 2).expect("K5 - v has vertices of degree 3");
            let local: VertexSet = a.iter().map(|w| if w < v { w } else { w - 1 }).collect();
            let entering = |d: &Orientation| {
                let (_, arcs) = d.minus_vertex(v);
                Orientation::new(d.host().remove_vertex(v).0, arcs).unwrap().in_degree_of(local)
            };
            let old = entering(&d);
            if repair(&mut d, v, a) {
                assert!(d.is_balanced());
                assert_eq!(entering(&d), old + 1);
                repaired += 1;
            }
        }
        assert!(repaired > 0);
    }
}
