use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph};
use crate::packing::pipelines::degrees_of;
use crate::packing::{pack_partition_rigid, DegreeMode, HypothesisReport, PipelineOptions};
use crate::setfunc::SetFunc;
use crate::sparsity::rank_and_rigid;

/// Breadth-first spanning forest: edge ids plus, for each vertex, its parent edge.
fn spanning_forest(g: &MultiGraph, allowed: &[EdgeId]) -> (Vec<usize>, Vec<Option<(usize, EdgeId)>>) {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for &e in allowed {
        let (u, v) = g.endpoints(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &(w, e) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
    }
    (order, parent)
}

/// A subforest `F` of the forest `tree` with `d_F(v)` odd exactly where `odd[v]` holds.
pub fn parity_forest(g: &MultiGraph, tree: &[EdgeId], odd: &[bool]) -> Result<Vec<EdgeId>> {
    let n = g.n();
    if odd.len() != n {
        return Err(Error::Precondition(format!("{} parities for {n} vertices", odd.len())));
    }
    let (order, parent) = spanning_forest(g, tree);
    let tree_size = parent.iter().filter(|p| p.is_some()).count();
    if tree_size != tree.len() {
        return Err(Error::Precondition("edges do not form a forest".into()));
    }
    let mut parity = vec![false; n];
    let mut keep = Vec::new();
    for &v in order.iter().rev() {
        match parent[v] {
            Some((p, e)) => {
                if parity[v] != odd[v] {
                    keep.push(e);
                    parity[v] = !parity[v];
                    parity[p] = !parity[p];
                }
            }
            None => {
                if parity[v] != odd[v] {
                    return Err(Error::OddComponent { vertex: v });
                }
            }
        }
    }
    keep.sort_unstable();
    Ok(keep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddForest {
    pub edges: Vec<EdgeId>,
    pub degrees: Vec<usize>,
    /// Degree targets `ceil(d_G(v)/m)`.
    pub bounds: Vec<usize>,
    pub achieved: bool,
}

fn is_forest(g: &MultiGraph, ids: &[EdgeId]) -> bool {
    let mut root: Vec<usize> = (0..g.n()).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    ids.iter().all(|&e| {
        let (u, v) = g.endpoints(e);
        let (a, b) = (find(&mut root, u), find(&mut root, v));
        root[a] = b;
        a != b
    })
}

fn excess(deg: &[usize], bounds: &[usize]) -> usize {
    deg.iter().zip(bounds).map(|(&d, &b)| d.saturating_sub(b)).sum()
}

/// Shortest path from `s` to `t` in `g - avoid`, as edge ids.
fn path_avoiding(g: &MultiGraph, adj: &[Vec<(usize, EdgeId)>], s: usize, t: usize, avoid: usize) -> Option<Vec<EdgeId>> {
    let mut prev: Vec<Option<(usize, EdgeId)>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    seen[avoid] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            let mut path = Vec::new();
            let mut at = t;
            while let Some((p, e)) = prev[at] {
                path.push(e);
                at = p;
            }
            return Some(path);
        }
        for &(w, e) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    None
}

/// Lowers degrees above `bounds` by exchanging `F` along cycles through an overloaded
/// vertex, keeping every parity and the forest property.
fn reduce_degrees(g: &MultiGraph, forest: Vec<EdgeId>, bounds: &[usize]) -> Vec<EdgeId> {
    let adj = g.incidence();
    let mut in_f = vec![false; g.m()];
    for &e in &forest {
        in_f[e] = true;
    }
    let collect = |in_f: &[bool]| (0..g.m()).filter(|&e| in_f[e]).collect::<Vec<_>>();
    for _ in 0..4 * g.m() + 4 {
        let cur = collect(&in_f);
        let deg = degrees_of(g, &cur);
        let before = excess(&deg, bounds);
        if before == 0 {
            break;
        }
        let mut improved = false;
        'search: for v in (0..g.n()).filter(|&v| deg[v] > bounds[v]) {
            let at_v: Vec<(usize, EdgeId)> = adj[v].iter().copied().filter(|&(_, e)| in_f[e]).collect();
            for (i, &(w1, e1)) in at_v.iter().enumerate() {
                for &(w2, e2) in &at_v[i + 1..] {
                    let Some(path) = path_avoiding(g, &adj, w1, w2, v) else { continue };
                    let mut next = in_f.clone();
                    for &e in path.iter().chain([&e1, &e2]) {
                        next[e] = !next[e];
                    }
                    let ids = collect(&next);
                    if is_forest(g, &ids) && excess(&degrees_of(g, &ids), bounds) < before {
                        in_f = next;
                        improved = true;
                        break 'search;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    collect(&in_f)
}

fn finish(g: &MultiGraph, edges: Vec<EdgeId>, bounds: Vec<usize>) -> Result<OddForest> {
    let degrees = degrees_of(g, &edges);
    if let Some(v) = (0..g.n()).find(|&v| degrees[v].is_multiple_of(2)) {
        return Err(Error::Internal(format!("forest degree at {v} is even")));
    }
    if !is_forest(g, &edges) {
        return Err(Error::Internal("odd forest contains a cycle".into()));
    }
    let achieved = (0..g.n()).all(|v| degrees[v] <= bounds[v]);
    Ok(OddForest { edges, degrees, bounds, achieved })
}

/// A spanning forest with every degree odd, with degrees pushed towards `ceil(d_G(v)/m)`.
pub fn odd_forest(g: &MultiGraph, m: usize) -> Result<OddForest> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let all: Vec<EdgeId> = (0..g.m()).collect();
    let (_, parent) = spanning_forest(g, &all);
    let tree: Vec<EdgeId> = parent.iter().flatten().map(|&(_, e)| e).collect();
    let f = parity_forest(g, &tree, &vec![true; g.n()])?;
    let bounds: Vec<usize> = g.degrees().iter().map(|&d| d.div_ceil(m)).collect();
    let f = reduce_degrees(g, f, &bounds);
    finish(g, f, bounds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOutcome {
    /// Edges of the factor `G - E(F)`.
    pub factor: Vec<EdgeId>,
    pub forest: OddForest,
    /// Host edge ids of the odd forest.
    pub forest_edges: Vec<EdgeId>,
    pub tree_part: Vec<EdgeId>,
    pub rigid_part: Vec<EdgeId>,
    pub m: usize,
    pub degrees_ok: bool,
    pub rigid: bool,
    pub hypothesis: Option<HypothesisReport>,
}

impl FactorOutcome {
    pub fn holds(&self) -> bool {
        self.degrees_ok && self.rigid
    }
}

/// A `k`-rigid spanning subgraph of an `r`-regular graph with every degree `r - 3` or `r - 1`.
pub fn factor(g: &MultiGraph, k: usize, r: usize, opts: PipelineOptions) -> Result<FactorOutcome> {
    let n = g.n();
    if k == 0 || r < 4 {
        return Err(Error::Precondition("factor needs k >= 1 and r >= 4".into()));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) != r) {
        return Err(Error::Precondition(format!("vertex {v} has degree {}, expected {r}", g.degree(v))));
    }
    if n % 2 == 1 {
        return Err(Error::OddComponent { vertex: 0 });
    }
    let m = r.div_ceil(6);
    let need = 2 * m + 4 * k - 2;
    let kappa = vertex_connectivity(g);
    if kappa < need && !opts.force {
        return Err(Error::Hypothesis { theorem: "factor".into(), detail: format!("vertex connectivity {kappa} is below {need}") });
    }
    let (mi, ki) = (m as i64, k as i64);
    let inner = PipelineOptions { force: true, ..opts };
    let out = pack_partition_rigid(g, &SetFunc::lmn(mi, mi), &SetFunc::k_rigid(ki), &[], &DegreeMode::Halved, inner)?;
    if let Some(cert) = &out.deficiency {
        let detail = format!("packing is deficient; structure partition {:?}", cert.partition.parts());
        return Err(if kappa >= need { Error::Internal(detail) } else { Error::Hypothesis { theorem: "factor".into(), detail } });
    }
    let tree_part = out.packing.parts[out.l_part].edges.clone();
    let rigid_part = out.packing.parts[out.ell_part].edges.clone();

    let l = g.edge_subgraph(&tree_part);
    let all: Vec<EdgeId> = (0..l.m()).collect();
    let (_, parent) = spanning_forest(&l, &all);
    let tree: Vec<EdgeId> = parent.iter().flatten().map(|&(_, e)| e).collect();
    let f = parity_forest(&l, &tree, &vec![true; n])?;
    let bounds: Vec<usize> = l.degrees().iter().map(|&d| d.div_ceil(m).min(3)).collect();
    let forest = finish(&l, reduce_degrees(&l, f, &bounds), bounds)?;
    let forest_edges: Vec<EdgeId> = forest.edges.iter().map(|&j| tree_part[j]).collect();

    let (_, factor) = g.without_edges(&forest_edges);
    let deg = degrees_of(g, &factor);
    let degrees_ok = deg.iter().all(|&d| d == r - 3 || d == r - 1);
    let rigid = rank_and_rigid(&g.edge_subgraph(&factor), &SetFunc::k_rigid(ki))?.rigid;
    Ok(FactorOutcome {
        factor,
        forest,
        forest_edges,
        tree_part,
        rigid_part,
        m,
        degrees_ok,
        rigid,
        hypothesis: out.hypothesis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn circulant(n: usize, jumps: &[usize]) -> MultiGraph {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|v| jumps.iter().map(move |&j| (v, (v + j) % n))).collect();
        MultiGraph::new(n, &edges).unwrap()
    }

    #[test]
    fn examples() {
        let f = odd_forest(&MultiGraph::complete(4), 2).unwrap();
        assert_eq!(f.edges.len(), 2);
        assert_eq!(f.degrees, vec![1; 4]);
        assert!(f.achieved);

        let p3 = MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(odd_forest(&p3, 1), Err(Error::OddComponent { .. })));
    }

    #[test]
    fn parity_forest_matches_targets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for g in oracle::random_multigraphs(100, 8, 16, 6) {
            let all: Vec<EdgeId> = (0..g.m()).collect();
            let (_, parent) = spanning_forest(&g, &all);
            let tree: Vec<EdgeId> = parent.iter().flatten().map(|&(_, e)| e).collect();
            let odd: Vec<bool> = (0..g.n()).map(|_| rng.gen_bool(0.5)).collect();
            let balanced = g.components().iter().all(|c| c.iter().filter(|&&v| odd[v]).count() % 2 == 0);
            match parity_forest(&g, &tree, &odd) {
                Ok(f) => {
                    assert!(balanced);
                    let d = degrees_of(&g, &f);
                    assert!((0..g.n()).all(|v| (d[v] % 2 == 1) == odd[v]));
                    assert!(f.iter().all(|e| tree.contains(e)));
                }
                Err(Error::OddComponent { .. }) => assert!(!balanced),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn circulant_factor() {
        let g = circulant(8, &[1, 2]);
        let out = factor(&g, 1, 4, PipelineOptions::default()).unwrap();
        assert!(out.holds(), "{out:?}");
        let d = degrees_of(&g, &out.factor);
        assert!(d.iter().all(|&x| x == 1 || x == 3));
    }
}
