use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::graph::{MultiGraph, VertexSet};

use super::Orientation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HakimiOutcome {
    Oriented { orientation: Orientation },
    /// `e(set) = induced > capacity = sum_{v in set} targets(v)`.
    Infeasible { set: VertexSet, induced: usize, capacity: i64 },
}

impl HakimiOutcome {
    pub fn orientation(self) -> Option<Orientation> {
        match self {
            HakimiOutcome::Oriented { orientation } => Some(orientation),
            HakimiOutcome::Infeasible { .. } => None,
        }
    }
}

/// An orientation with `d^-(v) = targets(v)`, or a vertex set spanning more edges than its
/// targets allow.
pub fn hakimi_orient(g: &MultiGraph, targets: &[i64]) -> Result<HakimiOutcome> {
    let (n, m) = (g.n(), g.m());
    if targets.len() != n {
        return Err(Error::Precondition(format!("{} targets for {n} vertices", targets.len())));
    }
    if let Some(v) = targets.iter().position(|&t| t < 0) {
        return Err(Error::NegativeValue { vertex: v, value: targets[v] });
    }
    let sum: i64 = targets.iter().sum();
    if sum != m as i64 {
        return Err(Error::TargetSum { sum, m });
    }
    let (s, t) = (0, m + n + 1);
    let vertex = |v: usize| m + 1 + v;
    let mut net = FlowNetwork::new(m + n + 2);
    let mut into = Vec::with_capacity(m);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        net.add_edge(s, 1 + e, 1);
        let to_u = net.add_edge(1 + e, vertex(u), INF);
        net.add_edge(1 + e, vertex(v), INF);
        into.push(to_u);
    }
    for (v, &cap) in targets.iter().enumerate() {
        net.add_edge(vertex(v), t, cap);
    }
    let flow = net.max_flow(s, t);
    if flow < m as i64 {
        let side = net.source_side(s);
        let set: VertexSet = (0..n).filter(|&v| side[vertex(v)]).collect();
        g.require_sets("infeasibility witness")?;
        let induced = g.induced_count(set);
        let capacity = set.iter().map(|v| targets[v]).sum();
        if induced as i64 <= capacity {
            return Err(Error::Internal(format!("min cut side {set} does not violate the targets")));
        }
        return Ok(HakimiOutcome::Infeasible { set, induced, capacity });
    }
    let arcs = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| if net.flow_on(into[e]) > 0 { (v, u) } else { (u, v) })
        .collect();
    let d = Orientation::new(g.clone(), arcs)?;
    let got = d.in_degrees();
    if let Some(v) = (0..n).find(|&v| got[v] as i64 != targets[v]) {
        return Err(Error::Internal(format!("vertex {v} has in-degree {}, target {}", got[v], targets[v])));
    }
    Ok(HakimiOutcome::Oriented { orientation: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn triangle() -> MultiGraph {
        MultiGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn examples() {
        let d = hakimi_orient(&triangle(), &[1, 1, 1]).unwrap().orientation().unwrap();
        assert_eq!(d.in_degrees(), vec![1, 1, 1]);
        assert_eq!(d.arc_strong_connectivity().finite(), Some(1));

        let out = hakimi_orient(&triangle(), &[0, 0, 3]).unwrap();
        assert_eq!(out, HakimiOutcome::Infeasible { set: [0, 1].into_iter().collect(), induced: 1, capacity: 0 });

        let path = MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let d = hakimi_orient(&path, &[0, 1, 1]).unwrap().orientation().unwrap();
        assert_eq!(d.arcs(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_bad_targets() {
        assert_eq!(hakimi_orient(&triangle(), &[1, 1, 2]).unwrap_err(), Error::TargetSum { sum: 4, m: 3 });
        assert_eq!(hakimi_orient(&triangle(), &[2, 2, -1]).unwrap_err(), Error::NegativeValue { vertex: 2, value: -1 });
    }

    #[test]
    fn feasibility_matches_subset_condition() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for g in oracle::random_multigraphs(120, 7, 12, 4) {
            let n = g.n();
            let mut t = vec![0i64; n];
            for _ in 0..g.m() {
                t[rng.gen_range(0..n)] += 1;
            }
            let expect = oracle::bf_orientation_violation(&g, &t).unwrap();
            match hakimi_orient(&g, &t).unwrap() {
                HakimiOutcome::Oriented { orientation } => {
                    assert!(expect.is_none());
                    assert_eq!(orientation.in_degrees().iter().map(|&x| x as i64).collect::<Vec<_>>(), t);
                }
                HakimiOutcome::Infeasible { set, .. } => {
                    assert!(expect.is_some());
                    assert!(g.induced_count(set) as i64 > set.iter().map(|v| t[v]).sum::<i64>());
                }
            }
        }
    }
}
