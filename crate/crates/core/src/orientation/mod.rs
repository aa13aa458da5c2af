//! Orientations: in-degree prescriptions, Eulerian and smooth orientations, rooted
//! arc-connectivity, and the pipelines built on top of the packing engine.

mod euler;
mod forest;
mod hakimi;
mod packed;
mod rigid_equiv;
mod robust;

use serde::{Deserialize, Serialize};

use crate::connectivity::{arc_strong_connectivity, Conn};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{EdgeId, MultiGraph, VertexSet};
use crate::oracle::{Verdict, Witness};
use crate::setfunc::SetFunc;
use crate::sparsity::exhaustive::induced_table;

pub use euler::{euler_smooth_orient, eulerian_orient, random_eulerian_orient, smooth_orient, EulerMode};
pub use forest::{factor, odd_forest, parity_forest, FactorOutcome, OddForest};
pub use hakimi::{hakimi_orient, HakimiOutcome};
pub use packed::{packed_orientation, PackedOrientation};
pub use rigid_equiv::{rigid_orientation_equiv, Direction, EquivOutcome};
pub use robust::{robust_arc_strong, RobustOptions, RobustOutcome, DEFAULT_RETRY_BUDGET};

/// Largest `n` for the exhaustive subset sweep in [`verify_arc`].
pub const MAX_ARC_SWEEP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrientation")]
pub struct Orientation {
    host: MultiGraph,
    /// `(tail, head)` of every edge id.
    arcs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawOrientation {
    host: MultiGraph,
    arcs: Vec<(usize, usize)>,
}

impl TryFrom<RawOrientation> for Orientation {
    type Error = Error;

    fn try_from(raw: RawOrientation) -> Result<Self> {
        Orientation::new(raw.host, raw.arcs)
    }
}

impl Orientation {
    pub fn new(host: MultiGraph, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if arcs.len() != host.m() {
            return Err(Error::Precondition(format!("{} directions for {} edges", arcs.len(), host.m())));
        }
        for (e, &(t, h)) in arcs.iter().enumerate() {
            let (u, v) = host.endpoints(e);
            if (t, h) != (u, v) && (t, h) != (v, u) {
                return Err(Error::Precondition(format!("arc {t}->{h} does not match edge {e} = {u}{v}")));
            }
        }
        Ok(Orientation { host, arcs })
    }

    /// Every edge directed from its first endpoint to its second.
    pub fn forward(host: MultiGraph) -> Self {
        let arcs = host.edges().to_vec();
        Orientation { host, arcs }
    }

    pub fn host(&self) -> &MultiGraph {
        &self.host
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, e: EdgeId) -> (usize, usize) {
        self.arcs[e]
    }

    pub fn reverse(&mut self, e: EdgeId) {
        let (t, h) = self.arcs[e];
        self.arcs[e] = (h, t);
    }

    /// Points edge `e` into `head`.
    pub fn set_head(&mut self, e: EdgeId, head: usize) {
        let (u, v) = self.host.endpoints(e);
        self.arcs[e] = if v == head { (u, v) } else { (v, u) };
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.host.n()];
        for &(_, h) in &self.arcs {
            d[h] += 1;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.host.n()];
        for &(t, _) in &self.arcs {
            d[t] += 1;
        }
        d
    }

    /// `d^-(A)`, the number of arcs entering `A`.
    pub fn in_degree_of(&self, a: VertexSet) -> usize {
        self.arcs.iter().filter(|&&(t, h)| a.contains(h) && !a.contains(t)).count()
    }

    /// `d^+(A)`, the number of arcs leaving `A`.
    pub fn out_degree_of(&self, a: VertexSet) -> usize {
        self.arcs.iter().filter(|&&(t, h)| a.contains(t) && !a.contains(h)).count()
    }

    /// `|d^+(v) - d^-(v)| <= 1` at every vertex.
    pub fn is_smooth(&self) -> bool {
        let (i, o) = (self.in_degrees(), self.out_degrees());
        (0..self.host.n()).all(|v| i[v].abs_diff(o[v]) <= 1)
    }

    pub fn is_balanced(&self) -> bool {
        self.in_degrees() == self.out_degrees()
    }

    /// The orientation restricted to `ids`, keeping vertex numbering; edge `j` of the
    /// result is edge `ids[j]` here.
    pub fn restrict(&self, ids: &[EdgeId]) -> Orientation {
        Orientation { host: self.host.edge_subgraph(ids), arcs: ids.iter().map(|&e| self.arcs[e]).collect() }
    }

    pub fn arc_strong_connectivity(&self) -> Conn {
        arc_strong_connectivity(self.host.n(), &self.arcs)
    }

    /// Arcs of `D - v` with the remaining vertices relabelled in order.
    pub fn minus_vertex(&self, v: usize) -> (usize, Vec<(usize, usize)>) {
        let (h, map, origin) = self.host.remove_vertex(v);
        let arcs = origin.iter().map(|&e| (map[self.arcs[e].0].unwrap(), map[self.arcs[e].1].unwrap())).collect();
        (h.n(), arcs)
    }

    /// First vertex `v` such that `D - v` is not `k`-arc-strong.
    pub fn fragile_vertex(&self, k: usize) -> Option<usize> {
        (0..self.host.n()).find(|&v| {
            let (n, arcs) = self.minus_vertex(v);
            !arc_strong_connectivity(n, &arcs).at_least(k)
        })
    }
}

fn min_cut_witness(d: &Orientation, c: i64) -> Option<VertexSet> {
    let n = d.host.n();
    let build = || {
        let mut net = FlowNetwork::new(n);
        for &(t, h) in &d.arcs {
            net.add_edge(t, h, 1);
        }
        net
    };
    for t in 1..n {
        for (s, sink) in [(0, t), (t, 0)] {
            let mut net = build();
            if net.max_flow_limited(s, sink, c) < c {
                let side = net.source_side(s);
                return Some((0..n).filter(|&v| !side[v]).collect());
            }
        }
    }
    None
}

/// Checks `d^-(A) >= f(A) - sum_{v in A} r(v)` over every nonempty proper vertex set `A`.
///
/// Exhaustive for `n <= 20`, reporting the smallest-mask violation. Constant `f` with zero `r`
/// is decided by minimum cuts at any size.
pub fn verify_arc(d: &Orientation, f: &SetFunc, r: Option<&[i64]>) -> Result<Verdict> {
    let n = d.host.n();
    f.check_ground(n)?;
    if let Some(r) = r {
        if r.len() != n {
            return Err(Error::Precondition(format!("root vector has {} entries for {n} vertices", r.len())));
        }
    }
    let rooted = r.is_some_and(|r| r.iter().any(|&x| x != 0));
    if n > MAX_ARC_SWEEP {
        return match f {
            SetFunc::Constant { c } if !rooted => {
                Ok(match min_cut_witness(d, *c) {
                    Some(set) => Verdict { holds: false, witness: Some(Witness::Set { set }) },
                    None => Verdict::HOLDS,
                })
            }
            _ => Err(Error::TooLarge { what: "arc-connectivity sweep", n, limit: MAX_ARC_SWEEP }),
        };
    }
    if n < 2 {
        return Ok(Verdict::HOLDS);
    }
    let e = induced_table(&d.host);
    let indeg = d.in_degrees();
    let mut in_sum = vec![0i64; 1 << n];
    let mut r_sum = vec![0i64; 1 << n];
    for a in 1..in_sum.len() {
        let v = a.trailing_zeros() as usize;
        in_sum[a] = in_sum[a & (a - 1)] + indeg[v] as i64;
        r_sum[a] = r_sum[a & (a - 1)] + r.map_or(0, |r| r[v]);
    }
    for a in 1..(1usize << n) - 1 {
        let set = VertexSet::from_mask(a as u64);
        let entering = in_sum[a] - e[a];
        if entering < f.eval(set, n) - r_sum[a] {
            return Ok(Verdict { holds: false, witness: Some(Witness::Set { set }) });
        }
    }
    Ok(Verdict::HOLDS)
}
