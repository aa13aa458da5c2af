//! Exponential-time reference implementations of the sparsity, rigidity, connectivity
//! and orientation definitions. Every sweep runs inside an explicit budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Partition, VertexSet};
use crate::setfunc::SetFunc;
use crate::sparsity::exhaustive::{bound_table, induced_table};

pub const MAX_RANK_EDGES: usize = 20;
pub const MAX_AXIOM_EDGES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Largest `n` for sweeps over all vertex subsets.
    pub subsets: usize,
    /// Largest `n` for sweeps over all partitions.
    pub partitions: usize,
    /// Largest `n` for sweeps over all disjoint pairs `(A, B)`.
    pub pairs: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { subsets: 7, partitions: 9, pairs: 12 }
    }
}

impl OracleBudget {
    pub fn new(subsets: usize, partitions: usize, pairs: usize) -> Result<Self> {
        if subsets == 0 || partitions == 0 || pairs == 0 {
            return Err(Error::Precondition("oracle budgets must be positive".into()));
        }
        Ok(OracleBudget { subsets, partitions, pairs })
    }

    /// The same budget for every sweep kind.
    pub fn uniform(n: usize) -> Self {
        OracleBudget { subsets: n, partitions: n, pairs: n }
    }

    fn need(limit: usize, what: &'static str, n: usize) -> Result<()> {
        if n > limit {
            return Err(Error::TooLarge { what, n, limit });
        }
        Ok(())
    }

    pub fn check(&self, g: &MultiGraph, check: &Check<'_>) -> Result<Verdict> {
        let n = g.n();
        match check {
            Check::Sparse(f) => {
                Self::need(self.subsets, "subset sweep", n)?;
                Ok(Verdict::from_witness(bf_sparse(g, f)?.map(|set| Witness::Set { set })))
            }
            Check::PartitionConnected(f) => {
                Self::need(self.partitions, "partition sweep", n)?;
                Ok(Verdict::from_witness(bf_partition_violation(g, f)?.map(|partition| Witness::Partition { partition })))
            }
            Check::Rigid(f) => {
                Self::need(self.subsets, "subset sweep", n)?;
                let rank = bf_rank(g, f)?;
                let required = f.rigid_count(n);
                Ok(if rank as i64 == required {
                    Verdict::HOLDS
                } else {
                    Verdict::fails(Witness::Rank { rank, required })
                })
            }
            Check::ArcConnected { arcs, f, r } => {
                Self::need(self.subsets, "subset sweep", n)?;
                Ok(Verdict::from_witness(bf_arc_violation(n, arcs, f, r)?.map(|set| Witness::Set { set })))
            }
            Check::EdgeConnected(f) => {
                Self::need(self.subsets, "subset sweep", n)?;
                f.check_ground(n)?;
                let full = VertexSet::full(n);
                let w = (1..full.mask())
                    .map(VertexSet::from_mask)
                    .find(|&a| (g.boundary(a) as i64) < f.eval(a, n));
                Ok(Verdict::from_witness(w.map(|set| Witness::Set { set })))
            }
            Check::WeaklyConnected { ell, l } => {
                Self::need(self.pairs, "pair sweep", n)?;
                Ok(Verdict::from_witness(bf_weak_violation(g, ell, l)?.map(|(a, b)| Witness::Pair { a, b })))
            }
            Check::MatroidAxioms(f) => {
                Self::need(self.subsets, "subset sweep", n)?;
                Ok(Verdict::from_witness(bf_matroid_violation(g, f)?.map(|(independent, within)| Witness::Edges { independent, within })))
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Check<'a> {
    Sparse(&'a SetFunc),
    PartitionConnected(&'a SetFunc),
    Rigid(&'a SetFunc),
    /// `d^-(A) >= f(A) - sum_{v in A} r(v)` over nonempty proper `A` for the digraph `arcs`.
    ArcConnected { arcs: &'a [(usize, usize)], f: &'a SetFunc, r: &'a [i64] },
    /// `d_G(A) >= f(A)` over nonempty proper `A`.
    EdgeConnected(&'a SetFunc),
    /// `d_{G-B}(A) >= l(A ∪ B) - sum_{v in B} ell(v)` for disjoint `A ≠ ∅`, `A ∪ B ≠ V`.
    WeaklyConnected { ell: &'a SetFunc, l: &'a SetFunc },
    /// Equal-size maximal independent subsets inside every edge subset.
    MatroidAxioms(&'a SetFunc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Set { set: VertexSet },
    Pair { a: VertexSet, b: VertexSet },
    Partition { partition: Partition },
    Rank { rank: usize, required: i64 },
    /// An independent set that is maximal but not maximum inside `within`.
    Edges { independent: Vec<EdgeId>, within: Vec<EdgeId> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub const HOLDS: Verdict = Verdict { holds: true, witness: None };

    fn fails(w: Witness) -> Self {
        Verdict { holds: false, witness: Some(w) }
    }

    fn from_witness(w: Option<Witness>) -> Self {
        match w {
            Some(w) => Verdict::fails(w),
            None => Verdict::HOLDS,
        }
    }
}

pub fn bf_check(g: &MultiGraph, check: &Check<'_>) -> Result<Verdict> {
    OracleBudget::default().check(g, check)
}

fn subset_guard(n: usize) -> Result<()> {
    if n > 20 {
        return Err(Error::TooLarge { what: "subset table", n, limit: 20 });
    }
    Ok(())
}

/// Smallest-mask nonempty `A` with `e_G(A) > sum_{v in A} f(v) - f(A)`.
pub fn bf_sparse(g: &MultiGraph, f: &SetFunc) -> Result<Option<VertexSet>> {
    f.check_ground(g.n())?;
    subset_guard(g.n())?;
    let n = g.n();
    let singles = f.singles(n);
    for mask in 1..1u64 << n {
        let a = VertexSet::from_mask(mask);
        let bound: i64 = a.iter().map(|v| singles[v]).sum::<i64>() - f.eval(a, n);
        if g.induced_count(a) as i64 > bound {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Calls `visit` on every partition of `0..n` in restricted-growth order; stops early when
/// `visit` returns `true`.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[VertexSet]) -> bool) {
    let mut label = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        let blocks = label.iter().max().map_or(0, |m| m + 1);
        let mut parts = vec![VertexSet::EMPTY; blocks];
        for (v, &b) in label.iter().enumerate() {
            parts[b].insert(v);
        }
        if visit(&parts) {
            return;
        }
        // Advance the restricted growth string.
        let mut i = n;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            if label[i] <= maxes[i - 1] {
                label[i] += 1;
                maxes[i] = maxes[i - 1].max(label[i]);
                for j in i + 1..n {
                    label[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
        }
        if n > 0 {
            maxes[0] = 0;
        }
    }
}

/// First partition `P` in restricted-growth order with `e_G(P) < sum_{A in P} f(A) - f(V)`.
pub fn bf_partition_violation(g: &MultiGraph, f: &SetFunc) -> Result<Option<Partition>> {
    f.check_ground(g.n())?;
    subset_guard(g.n())?;
    let n = g.n();
    let full = f.full(n);
    let mut found = None;
    for_each_partition(n, |parts| {
        let need: i64 = parts.iter().map(|&a| f.eval(a, n)).sum::<i64>() - full;
        if (g.collection_cross(parts) as i64) < need {
            found = Some(parts.to_vec());
            true
        } else {
            false
        }
    });
    found.map(|p| Partition::new(n, p)).transpose()
}

/// A maximum `f`-sparse edge subset by branch and bound; correct for any `f`.
pub fn bf_rank_set(g: &MultiGraph, f: &SetFunc) -> Result<Vec<EdgeId>> {
    f.check_ground(g.n())?;
    subset_guard(g.n())?;
    if g.m() > MAX_RANK_EDGES {
        return Err(Error::TooLarge { what: "rank branch and bound", n: g.m(), limit: MAX_RANK_EDGES });
    }
    let n = g.n();
    let bound = bound_table(f, n);
    struct Search<'a> {
        edges: &'a [(usize, usize)],
        bound: Vec<i64>,
        count: Vec<i64>,
        full: usize,
        cap: i64,
        current: Vec<EdgeId>,
        best: Vec<EdgeId>,
    }
    impl Search<'_> {
        fn supersets(&self, pair: usize) -> Vec<usize> {
            let rest = self.full & !pair;
            let mut out = Vec::new();
            let mut sub = rest;
            loop {
                out.push(pair | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            out
        }

        fn run(&mut self, idx: usize) {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            if self.best.len() as i64 >= self.cap || self.current.len() + (self.edges.len() - idx) <= self.best.len() {
                return;
            }
            let (u, v) = self.edges[idx];
            let sets = self.supersets((1 << u) | (1 << v));
            if sets.iter().all(|&a| self.count[a] < self.bound[a]) {
                for &a in &sets {
                    self.count[a] += 1;
                }
                self.current.push(idx);
                self.run(idx + 1);
                self.current.pop();
                for &a in &sets {
                    self.count[a] -= 1;
                }
            }
            self.run(idx + 1);
        }
    }
    let full = (1usize << n) - 1;
    let cap = bound[full].max(0);
    let mut s = Search {
        edges: g.edges(),
        bound,
        count: vec![0; 1 << n],
        full,
        cap,
        current: Vec::new(),
        best: Vec::new(),
    };
    if g.m() > 0 {
        s.run(0);
    }
    Ok(s.best)
}

pub fn bf_rank(g: &MultiGraph, f: &SetFunc) -> Result<usize> {
    Ok(bf_rank_set(g, f)?.len())
}

/// Maximal vertex sets `X` such that `F[X]` is rigid, for a sparse `F`; sorted by smallest
/// vertex, then mask.
pub fn bf_rigid_components(fg: &MultiGraph, f: &SetFunc) -> Result<Vec<VertexSet>> {
    if let Some(a) = bf_sparse(fg, f)? {
        return Err(Error::NotSparse { violation: a });
    }
    let n = fg.n();
    let bound = bound_table(f, n);
    let count = induced_table(fg);
    let size = 1usize << n;
    let rigid: Vec<bool> = (0..size).map(|a| a != 0 && count[a] == bound[a]).collect();
    let mut out: Vec<VertexSet> = (1..size)
        .filter(|&a| rigid[a] && !(1..size).any(|b| b != a && b & a == a && rigid[b]))
        .map(|a| VertexSet::from_mask(a as u64))
        .collect();
    out.sort_by_key(|c| (c.first(), c.mask()));
    Ok(out)
}

/// Smallest-mask nonempty proper `A` with `d^-(A) < f(A) - sum_{v in A} r(v)`.
pub fn bf_arc_violation(n: usize, arcs: &[(usize, usize)], f: &SetFunc, r: &[i64]) -> Result<Option<VertexSet>> {
    f.check_ground(n)?;
    subset_guard(n)?;
    if r.len() != n {
        return Err(Error::Precondition(format!("root vector has {} entries for {n} vertices", r.len())));
    }
    for mask in 1..(1u64 << n) - 1 {
        let a = VertexSet::from_mask(mask);
        let entering = arcs.iter().filter(|&&(t, h)| a.contains(h) && !a.contains(t)).count() as i64;
        let need = f.eval(a, n) - a.iter().map(|v| r[v]).sum::<i64>();
        if entering < need {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// First disjoint pair `(A, B)` with `A ≠ ∅`, `A ∪ B ≠ V` and
/// `d_{G-B}(A) < l(A ∪ B) - sum_{v in B} ell(v)`.
pub fn bf_weak_violation(g: &MultiGraph, ell: &SetFunc, l: &SetFunc) -> Result<Option<(VertexSet, VertexSet)>> {
    let n = g.n();
    ell.check_ground(n)?;
    l.check_ground(n)?;
    subset_guard(n)?;
    let singles = ell.singles(n);
    let full = VertexSet::full(n);
    let mut found = None;
    for_each_pair(n, |a, b| {
        if a.is_empty() || a.union(b) == full {
            return false;
        }
        let d = g.boundary_minus(a, b).expect("disjoint pair");
        let need = l.eval(a.union(b), n) - b.iter().map(|v| singles[v]).sum::<i64>();
        if (d as i64) < need {
            found = Some((a, b));
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Visits all disjoint pairs `(A, B)` of subsets of `0..n` (including empty sets) in base-3
/// order; stops early when `visit` returns `true`.
pub fn for_each_pair(n: usize, mut visit: impl FnMut(VertexSet, VertexSet) -> bool) {
    let mut digits = vec![0u8; n];
    loop {
        let mut a = VertexSet::EMPTY;
        let mut b = VertexSet::EMPTY;
        for (v, &d) in digits.iter().enumerate() {
            match d {
                1 => a.insert(v),
                2 => b.insert(v),
                _ => {}
            }
        }
        if visit(a, b) {
            return;
        }
        let mut i = 0;
        while i < n && digits[i] == 2 {
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            return;
        }
        digits[i] += 1;
    }
}

/// An independent edge set `I` and a superset `X` in which `I` is maximal but smaller than
/// the largest independent subset of `X`, if the sparse edge sets of `g` fail the axioms.
pub fn bf_matroid_violation(g: &MultiGraph, f: &SetFunc) -> Result<Option<(Vec<EdgeId>, Vec<EdgeId>)>> {
    f.check_ground(g.n())?;
    subset_guard(g.n())?;
    let m = g.m();
    if m > MAX_AXIOM_EDGES {
        return Err(Error::TooLarge { what: "matroid axiom sweep", n: m, limit: MAX_AXIOM_EDGES });
    }
    let n = g.n();
    let bound = bound_table(f, n);
    let size = 1usize << m;
    let masks: Vec<usize> = g.edges().iter().map(|&(u, v)| (1 << u) | (1 << v)).collect();
    let indep: Vec<bool> = (0..size)
        .map(|s| {
            let mut count = vec![0i64; 1 << n];
            for (e, &pm) in masks.iter().enumerate() {
                if s >> e & 1 == 1 {
                    count[pm] += 1;
                }
            }
            for bit in 0..n {
                for a in 0..1usize << n {
                    if a >> bit & 1 == 1 {
                        count[a] += count[a ^ (1 << bit)];
                    }
                }
            }
            (1..1usize << n).all(|a| count[a] <= bound[a])
        })
        .collect();
    let mut best = vec![0u32; size];
    for x in 0..size {
        best[x] = if indep[x] {
            x.count_ones()
        } else {
            (0..m).filter(|&e| x >> e & 1 == 1).map(|e| best[x ^ (1 << e)]).max().unwrap_or(0)
        };
    }
    let ids = |s: usize| (0..m).filter(|&e| s >> e & 1 == 1).collect::<Vec<_>>();
    for i in 0..size {
        if !indep[i] {
            continue;
        }
        let rest = (size - 1) & !i;
        let mut sub = rest;
        loop {
            let x = i | sub;
            let maximal = (0..m).all(|e| x >> e & 1 == 0 || i >> e & 1 == 1 || !indep[i | (1 << e)]);
            if maximal && i.count_ones() < best[x] {
                return Ok(Some((ids(i), ids(x))));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(None)
}

/// Smallest-mask `A` with `e_G(A) > sum_{v in A} targets(v)`; `None` means an orientation with
/// in-degrees `targets` exists (given the totals agree).
pub fn bf_orientation_violation(g: &MultiGraph, targets: &[i64]) -> Result<Option<VertexSet>> {
    subset_guard(g.n())?;
    Ok((1..1u64 << g.n())
        .map(VertexSet::from_mask)
        .find(|&a| g.induced_count(a) as i64 > a.iter().map(|v| targets[v]).sum::<i64>()))
}

/// `min_H sum_i rank_i(H) + |E \ H|` over all edge subsets `H`.
pub fn bf_union_bound(g: &MultiGraph, funcs: &[SetFunc]) -> Result<usize> {
    let m = g.m();
    if m > MAX_AXIOM_EDGES {
        return Err(Error::TooLarge { what: "union bound sweep", n: m, limit: MAX_AXIOM_EDGES });
    }
    let mut best = usize::MAX;
    for h in 0..1usize << m {
        let ids: Vec<EdgeId> = (0..m).filter(|&e| h >> e & 1 == 1).collect();
        let sub = g.edge_subgraph(&ids);
        let mut total = m - ids.len();
        for f in funcs {
            total += bf_rank(&sub, f)?;
        }
        best = best.min(total);
    }
    Ok(best)
}

#[derive(Clone, Debug, Default)]
pub struct CensusFilter {
    pub connected: bool,
    pub max_edges: Option<usize>,
    /// Keep only graphs that are sparse with exactly `sum f(v) - f(V)` edges.
    pub tight: Option<SetFunc>,
}

impl CensusFilter {
    pub fn connected() -> Self {
        CensusFilter { connected: true, ..Default::default() }
    }

    pub fn tight(f: SetFunc) -> Self {
        CensusFilter { tight: Some(f), ..Default::default() }
    }
}

/// Every labelled simple graph on `n <= 6` vertices passing `filter`, ordered by the bitmask of
/// its pairs in lexicographic pair order.
pub fn census(n: usize, filter: CensusFilter) -> impl Iterator<Item = MultiGraph> {
    assert!(n <= 6, "full census is limited to 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).filter_map(move |mask| {
        if filter.max_edges.is_some_and(|k| mask.count_ones() as usize > k) {
            return None;
        }
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let g = MultiGraph::new(n, &edges).expect("census edges are valid");
        if filter.connected && !g.is_connected() {
            return None;
        }
        if let Some(f) = &filter.tight {
            if g.m() as i64 != f.rigid_count(n) || bf_sparse(&g, f).ok()?.is_some() {
                return None;
            }
        }
        Some(g)
    })
}

/// Seeded loopless multigraphs with `2..=max_n` vertices and `0..=max_m` edges.
pub fn random_multigraphs(count: usize, max_n: usize, max_m: usize, seed: u64) -> Vec<MultiGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let m = rng.gen_range(0..=max_m);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    let mut v = rng.gen_range(0..n - 1);
                    if v >= u {
                        v += 1;
                    }
                    (u, v)
                })
                .collect();
            MultiGraph::new(n, &edges).expect("valid random edges")
        })
        .collect()
}
