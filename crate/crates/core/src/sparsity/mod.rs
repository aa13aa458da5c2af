//! Sparsity, rank, rigidity, rigid components and edge exchange.

pub mod exhaustive;
pub mod pebble;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexSet, MAX_SET_VERTICES};
use crate::setfunc::{property_report, SetFunc, MAX_TABLE_GROUND};

pub use exhaustive::ExhaustiveOracle;
pub use pebble::{Gather, PebbleGame};

/// Incremental independence oracle for the sparse edge sets of one host graph.
#[derive(Clone, Debug)]
pub enum Independence {
    Pebble { game: PebbleGame, edges: Vec<(usize, usize)> },
    Exhaustive(ExhaustiveOracle),
}

impl Independence {
    /// Picks the pebble game when `f` has the matching shape, and otherwise subset
    /// enumeration after confirming that `f` induces a matroid.
    pub fn new(g: &MultiGraph, f: &SetFunc) -> Result<Self> {
        f.check_ground(g.n())?;
        if let Some((caps, ell)) = f.pebble_params(g.n()) {
            return Ok(Independence::Pebble { game: PebbleGame::new(caps, ell, g.m()), edges: g.edges().to_vec() });
        }
        if g.n() > MAX_TABLE_GROUND {
            return Err(Error::Unsupported { n: g.n(), limit: MAX_TABLE_GROUND });
        }
        let report = property_report(f, g.n())?;
        if !report.is_matroidal() {
            return Err(Error::NotMatroidal(format!(
                "{f} is not 2-intersecting supermodular and weakly subadditive on {} vertices",
                g.n()
            )));
        }
        Ok(Independence::Exhaustive(ExhaustiveOracle::new(g, f)))
    }

    /// `None` if `e` can join the current set; otherwise the current members spanned by
    /// the minimal tight set containing both ends of `e`, in id order.
    pub fn circuit(&mut self, e: EdgeId) -> Option<Vec<EdgeId>> {
        match self {
            Independence::Pebble { game, edges } => {
                let (u, v) = edges[e];
                let q = game.tight_span(u, v)?;
                let mut out: Vec<EdgeId> = q.iter().flat_map(|&x| game.out_arcs(x).map(|(_, id)| id)).collect();
                out.sort_unstable();
                Some(out)
            }
            Independence::Exhaustive(o) => o.circuit(e),
        }
    }

    /// Vertex set of the minimal tight set containing `u` and `v`, or `None` for a free pair.
    pub fn tight_span(&mut self, u: usize, v: usize) -> Option<Vec<usize>> {
        match self {
            Independence::Pebble { game, .. } => game.tight_span(u, v),
            Independence::Exhaustive(o) => o.tight_span(u, v).map(|s| s.to_vec()),
        }
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        match self {
            Independence::Pebble { game, edges } => {
                let (u, v) = edges[e];
                game.try_insert(e, u, v).is_ok()
            }
            Independence::Exhaustive(o) => o.insert(e),
        }
    }

    pub fn remove(&mut self, e: EdgeId) {
        match self {
            Independence::Pebble { game, .. } => game.remove(e),
            Independence::Exhaustive(o) => o.remove(e),
        }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        match self {
            Independence::Pebble { game, .. } => game.is_accepted(e),
            Independence::Exhaustive(o) => o.contains(e),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Independence::Pebble { game, .. } => game.accepted_count(),
            Independence::Exhaustive(o) => o.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Greedy maximum `(k, ell)`-sparse edge set in id order.
pub fn pebble_basis(g: &MultiGraph, k: i64, ell: i64) -> Result<(Vec<EdgeId>, PebbleGame)> {
    if k < 0 || ell < 0 || ell >= 2 * k {
        return Err(Error::OutsidePebbleRange { k, ell });
    }
    let mut game = PebbleGame::uniform(g.n(), k, ell, g.m());
    let mut basis = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if game.try_insert(e, u, v).is_ok() {
            basis.push(e);
        }
        debug_assert_eq!(
            game.pebbles().iter().sum::<i64>() + game.accepted_count() as i64,
            k * g.n() as i64
        );
    }
    Ok((basis, game))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Sparsity {
    Sparse,
    /// A set spanning more edges than the bound allows.
    Violation { set: VertexSet },
}

impl Sparsity {
    pub fn is_sparse(&self) -> bool {
        matches!(self, Sparsity::Sparse)
    }
}

fn set_of(vs: &[usize], n: usize) -> Result<VertexSet> {
    if n > MAX_SET_VERTICES {
        return Err(Error::TooLarge { what: "vertex-set witness", n, limit: MAX_SET_VERTICES });
    }
    Ok(vs.iter().copied().collect())
}

/// Decides `e_G(A) <= sum_{v in A} f(v) - f(A)` for every nonempty `A`.
pub fn is_sparse(g: &MultiGraph, f: &SetFunc) -> Result<Sparsity> {
    f.check_ground(g.n())?;
    if let Some((caps, ell)) = f.pebble_params(g.n()) {
        let mut game = PebbleGame::new(caps, ell, g.m());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if let Err(q) = game.try_insert(e, u, v) {
                return Ok(Sparsity::Violation { set: set_of(&q, g.n())? });
            }
        }
        return Ok(Sparsity::Sparse);
    }
    if g.n() > MAX_TABLE_GROUND {
        return Err(Error::Unsupported { n: g.n(), limit: MAX_TABLE_GROUND });
    }
    Ok(match exhaustive::first_violation(g, f) {
        Some(set) => Sparsity::Violation { set },
        None => Sparsity::Sparse,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    /// `sum_v f(v) - f(V)`.
    pub required: i64,
    pub rigid: bool,
    /// A maximum sparse edge set; spanning and tight when `rigid`.
    pub basis: Vec<EdgeId>,
}

/// Rank of the sparse edge sets of `g` and whether `g` is `f`-rigid.
pub fn rank_and_rigid(g: &MultiGraph, f: &SetFunc) -> Result<RankReport> {
    let basis = match Independence::new(g, f) {
        Ok(mut oracle) => (0..g.m()).filter(|&e| oracle.insert(e)).collect::<Vec<_>>(),
        Err(Error::NotMatroidal(_)) if g.m() <= crate::oracle::MAX_RANK_EDGES => crate::oracle::bf_rank_set(g, f)?,
        Err(err) => return Err(err),
    };
    let required = f.rigid_count(g.n());
    Ok(RankReport { rank: basis.len(), required, rigid: basis.len() as i64 == required, basis })
}

fn uses_pebbles_for_components(f: &SetFunc, n: usize) -> bool {
    match f.pebble_params(n) {
        Some((caps, ell)) => {
            let mut sorted = caps;
            sorted.sort_unstable();
            n < 2 || sorted[0] + sorted[1] > ell
        }
        None => false,
    }
}

/// Maximal vertex sets `X` with `F[X]` rigid. Vertices in no larger rigid set appear as
/// singletons. Sorted by smallest vertex, then by mask.
pub fn rigid_components(fg: &MultiGraph, f: &SetFunc) -> Result<Vec<VertexSet>> {
    fg.require_sets("rigid components")?;
    if let Sparsity::Violation { set } = is_sparse(fg, f)? {
        return Err(Error::NotSparse { violation: set });
    }
    let n = fg.n();
    let mut comps: Vec<VertexSet> = if uses_pebbles_for_components(f, n) {
        let (caps, ell) = f.pebble_params(n).unwrap();
        let mut game = PebbleGame::new(caps, ell, fg.m());
        for (e, &(u, v)) in fg.edges().iter().enumerate() {
            game.try_insert(e, u, v).expect("sparse graph rejected an edge");
        }
        let mut found: Vec<VertexSet> = Vec::new();
        for &(u, v) in fg.edges() {
            if found.iter().any(|c| c.contains(u) && c.contains(v)) {
                continue;
            }
            if game.gather(u, v, ell + 1) == Gather::Reached {
                continue;
            }
            let mut comp = VertexSet::EMPTY;
            comp.insert(u);
            comp.insert(v);
            for w in 0..n {
                if w != u && w != v && game.pebbles()[w] == 0 && !game.reaches_free_pebble(w, [u, v]) {
                    comp.insert(w);
                }
            }
            found.push(comp);
        }
        let covered = found.iter().fold(VertexSet::EMPTY, |acc, &c| acc.union(c));
        found.extend(covered.complement(n).iter().map(VertexSet::singleton));
        found
    } else {
        if n > MAX_TABLE_GROUND {
            return Err(Error::Unsupported { n, limit: MAX_TABLE_GROUND });
        }
        let report = property_report(f, n)?;
        if !report.is_matroidal() {
            return Err(Error::NotMatroidal(format!("{f} does not support rigid components")));
        }
        let mut o = ExhaustiveOracle::new(fg, f);
        for e in 0..fg.m() {
            assert!(o.insert(e));
        }
        o.maximal_tight_sets()
    };
    comps.sort_by_key(|c| (c.first(), c.mask()));
    comps.dedup();
    Ok(comps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum PairSpan {
    /// No rigid subgraph contains both vertices, so adding the pair keeps sparsity.
    Free,
    /// The unique minimal rigid vertex set containing both vertices.
    Rigid { set: VertexSet },
}

fn loaded(fg: &MultiGraph, f: &SetFunc) -> Result<Independence> {
    if let Sparsity::Violation { set } = is_sparse(fg, f)? {
        return Err(Error::NotSparse { violation: set });
    }
    let mut o = Independence::new(fg, f)?;
    for e in 0..fg.m() {
        if !o.insert(e) {
            return Err(Error::Internal(format!("sparse graph rejected edge {e}")));
        }
    }
    Ok(o)
}

pub fn minimal_rigid_between(fg: &MultiGraph, f: &SetFunc, x: usize, y: usize) -> Result<PairSpan> {
    fg.require_sets("minimal rigid set")?;
    for v in [x, y] {
        if v >= fg.n() {
            return Err(Error::VertexOutOfRange { index: 0, vertex: v, n: fg.n() });
        }
    }
    if x == y {
        return Err(Error::SameEndpoints(x));
    }
    let mut o = loaded(fg, f)?;
    Ok(match o.tight_span(x, y) {
        None => PairSpan::Free,
        Some(q) => PairSpan::Rigid { set: q.into_iter().collect() },
    })
}

/// `F - e + xy`, with the new edge taking the id of `e`. `e` must lie inside the minimal
/// rigid set spanned by `x` and `y`; the result is re-verified sparse.
pub fn exchange(fg: &MultiGraph, f: &SetFunc, xy: (usize, usize), e: EdgeId) -> Result<MultiGraph> {
    let (x, y) = xy;
    if e >= fg.m() {
        return Err(Error::Precondition(format!("edge {e} is not in F")));
    }
    let q = match minimal_rigid_between(fg, f, x, y)? {
        PairSpan::Free => return Err(Error::Precondition(format!("{x} and {y} form a free pair"))),
        PairSpan::Rigid { set } => set,
    };
    let (a, b) = fg.endpoints(e);
    if !q.contains(a) || !q.contains(b) {
        return Err(Error::Precondition(format!("edge {e} does not lie in the minimal rigid set {q}")));
    }
    let mut edges = fg.edges().to_vec();
    edges[e] = (x, y);
    let out = MultiGraph::new(fg.n(), &edges)?;
    match is_sparse(&out, f)? {
        Sparsity::Sparse => Ok(out),
        Sparsity::Violation { set } => Err(Error::Internal(format!("exchange broke sparsity on {set}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn g(n: usize, e: &[(usize, usize)]) -> MultiGraph {
        MultiGraph::new(n, e).unwrap()
    }

    fn c4() -> MultiGraph {
        g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn pebble_basis_examples() {
        assert_eq!(pebble_basis(&MultiGraph::complete(3), 2, 3).unwrap().0.len(), 3);
        assert_eq!(pebble_basis(&MultiGraph::complete(4), 2, 3).unwrap().0.len(), 5);
        assert_eq!(pebble_basis(&c4(), 1, 1).unwrap().0.len(), 3);
        assert_eq!(pebble_basis(&c4(), 2, 4).unwrap_err(), Error::OutsidePebbleRange { k: 2, ell: 4 });
    }

    #[test]
    fn is_sparse_examples() {
        let l23 = SetFunc::lmn(2, 3);
        assert_eq!(is_sparse(&MultiGraph::complete(3), &l23).unwrap(), Sparsity::Sparse);
        assert_eq!(is_sparse(&g(2, &[(0, 1), (0, 1)]), &l23).unwrap(), Sparsity::Violation { set: set(&[0, 1]) });
        assert_eq!(
            is_sparse(&MultiGraph::complete(4), &l23).unwrap(),
            Sparsity::Violation { set: set(&[0, 1, 2, 3]) }
        );
    }

    #[test]
    fn rank_examples() {
        let l23 = SetFunc::lmn(2, 3);
        let r = rank_and_rigid(&MultiGraph::complete(4), &l23).unwrap();
        assert_eq!((r.rank, r.rigid), (5, true));
        let r = rank_and_rigid(&c4(), &l23).unwrap();
        assert_eq!((r.rank, r.rigid), (4, false));
        let r = rank_and_rigid(&MultiGraph::complete(4), &SetFunc::lmn(1, 1)).unwrap();
        assert_eq!((r.rank, r.rigid), (3, true));
    }

    #[test]
    fn component_examples() {
        let l23 = SetFunc::lmn(2, 3);
        let bowtie = g(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(rigid_components(&bowtie, &l23).unwrap(), vec![set(&[0, 1, 2]), set(&[2, 3, 4])]);
        let k4e = g(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(rigid_components(&k4e, &l23).unwrap(), vec![set(&[0, 1, 2, 3])]);
        assert_eq!(rigid_components(&g(2, &[(0, 1)]), &l23).unwrap(), vec![set(&[0, 1])]);
    }

    #[test]
    fn minimal_rigid_examples() {
        let l23 = SetFunc::lmn(2, 3);
        let k4e = g(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(minimal_rigid_between(&k4e, &l23, 0, 1).unwrap(), PairSpan::Rigid { set: set(&[0, 1, 2, 3]) });
        for e in 0..5 {
            let out = exchange(&k4e, &l23, (0, 1), e).unwrap();
            assert!(oracle::bf_sparse(&out, &l23).unwrap().is_none());
        }
        let tree = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let l11 = SetFunc::lmn(1, 1);
        assert_eq!(minimal_rigid_between(&tree, &l11, 0, 3).unwrap(), PairSpan::Rigid { set: set(&[0, 1, 2, 3]) });
        assert_eq!(minimal_rigid_between(&tree, &l11, 0, 2).unwrap(), PairSpan::Rigid { set: set(&[0, 1, 2]) });
        let swapped = exchange(&tree, &l11, (0, 3), 1).unwrap();
        assert_eq!(swapped.edges(), &[(0, 1), (0, 3), (2, 3)]);
        let two = g(4, &[(0, 1), (2, 3)]);
        assert_eq!(minimal_rigid_between(&two, &l23, 0, 2).unwrap(), PairSpan::Free);
    }

    #[test]
    fn exhaustive_path_matches_pebbles() {
        // A table equal to l_{2,3} exercises the subset-enumeration oracle.
        let table = SetFunc::table_from(5, |a| if a.len() == 1 { 2 } else { 3 }).unwrap();
        let l23 = SetFunc::lmn(2, 3);
        let graphs = [
            MultiGraph::complete(5),
            g(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
            g(5, &[(0, 1), (0, 1), (1, 2), (3, 4)]),
        ];
        for gr in &graphs {
            assert_eq!(rank_and_rigid(gr, &table).unwrap().rank, rank_and_rigid(gr, &l23).unwrap().rank);
            assert_eq!(is_sparse(gr, &table).unwrap().is_sparse(), is_sparse(gr, &l23).unwrap().is_sparse());
            if is_sparse(gr, &l23).unwrap().is_sparse() {
                assert_eq!(rigid_components(gr, &table).unwrap(), rigid_components(gr, &l23).unwrap());
            }
        }
    }

    #[test]
    fn basis_size_is_order_independent() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for gr in oracle::random_multigraphs(40, 7, 12, 5) {
            for (k, ell) in [(1, 1), (2, 2), (2, 3), (3, 5)] {
                let base = pebble_basis(&gr, k, ell).unwrap().0.len();
                let mut edges = gr.edges().to_vec();
                edges.shuffle(&mut rng);
                let shuffled = MultiGraph::new(gr.n(), &edges).unwrap();
                assert_eq!(pebble_basis(&shuffled, k, ell).unwrap().0.len(), base);
                assert_eq!(oracle::bf_rank(&gr, &SetFunc::lmn(k, ell)).unwrap(), base);
            }
        }
    }

    #[test]
    fn components_match_oracle() {
        for gr in oracle::census(6, oracle::CensusFilter::default()).take(4000) {
            for f in [SetFunc::lmn(2, 3), SetFunc::lmn(1, 1), SetFunc::lmn(2, 2)] {
                if !is_sparse(&gr, &f).unwrap().is_sparse() {
                    continue;
                }
                let comps = rigid_components(&gr, &f).unwrap();
                let expected = oracle::bf_rigid_components(&gr, &f).unwrap();
                assert_eq!(comps, expected, "{:?} {f}", gr.edges());
            }
        }
    }

    #[test]
    fn minimal_sets_are_connected_through_the_pair() {
        // For subadditive f, every A with {x, y} ⊆ A ⊊ Q has an edge of F[Q] leaving it.
        let f = SetFunc::lmn(2, 3);
        for gr in oracle::census(6, oracle::CensusFilter::default()).step_by(7).take(2000) {
            if !is_sparse(&gr, &f).unwrap().is_sparse() {
                continue;
            }
            for x in 0..6 {
                for y in x + 1..6 {
                    if let PairSpan::Rigid { set: q } = minimal_rigid_between(&gr, &f, x, y).unwrap() {
                        let sub: Vec<usize> = (0..gr.m())
                            .filter(|&e| {
                                let (a, b) = gr.endpoints(e);
                                q.contains(a) && q.contains(b)
                            })
                            .collect();
                        let fq = gr.edge_subgraph(&sub);
                        let mut inner = q;
                        inner.remove(x);
                        inner.remove(y);
                        for m in 0..1u64 << 6 {
                            let extra = VertexSet::from_mask(m);
                            if !extra.is_subset(inner) || extra == inner {
                                continue;
                            }
                            let a = extra.union(set(&[x, y]));
                            assert!(fq.boundary(a) >= 1);
                        }
                    }
                }
            }
        }
    }
}
