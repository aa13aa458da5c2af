//! Exhaustive checks of the connectivity hypotheses behind the packing constructions.

use serde::{Deserialize, Serialize};

use crate::connectivity::{edge_connectivity, essential_edge_connectivity};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::setfunc::{Rational, SetFunc};
use crate::sparsity::exhaustive::{bound_table, induced_table};

/// Default largest `n` for the `3^n` sweep over disjoint pairs.
pub const DEFAULT_PAIR_BUDGET: usize = 14;

/// A nonincreasing weight with values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Phi {
    Constant { value: Rational },
    /// Values indexed by subset bitmask.
    Table { values: Vec<Rational> },
}

impl Phi {
    fn eval(&self, mask: usize) -> Rational {
        match self {
            Phi::Constant { value } => *value,
            Phi::Table { values } => values[mask],
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        let values: Vec<Rational> = match self {
            Phi::Constant { value } => vec![*value],
            Phi::Table { values } => {
                if values.len() != 1 << n {
                    return Err(Error::Precondition(format!("phi table needs {} entries", 1usize << n)));
                }
                for a in 0..values.len() {
                    for b in 0..n {
                        if a >> b & 1 == 0 && values[a | (1 << b)] > values[a] {
                            return Err(Error::Precondition("phi must be nonincreasing".into()));
                        }
                    }
                }
                values.clone()
            }
        };
        if values.iter().any(|&x| x < zero || x > one) {
            return Err(Error::Precondition("phi must take values in [0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum HypothesisSpec {
    /// Necessary pair condition for `ell`-rigidity.
    NecessaryRigid { ell: SetFunc },
    /// Edge connectivity consequences of `k`-rigidity.
    Cor32 { k: usize },
    /// Pair condition for a spanning `ell`-rigid subgraph avoiding `excluded` edges.
    SufficientRigid { ell: SetFunc, excluded: usize },
    /// Pair condition for packing an `l`-partition-connected and an `ell`-rigid subgraph.
    Pack61 { l: SetFunc, ell: SetFunc, excluded: usize },
    /// The refined pair condition with `lambda`, `epsilon` and a weight `phi`.
    Pack63 { l: SetFunc, ell: SetFunc, phi: Phi, excluded: usize },
    /// The degree-restricted conditions with real `k > 2` and weights `rho`.
    Pack81 { l: SetFunc, ell: SetFunc, k: Rational, rho: Vec<Rational> },
    /// `d_{G-B}(A) >= l(A ∪ B) - sum_{v in B} ell(v)`.
    WeaklyConnected { ell: SetFunc, l: SetFunc },
}

impl HypothesisSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            HypothesisSpec::NecessaryRigid { .. } => "necessary_rigid",
            HypothesisSpec::Cor32 { .. } => "cor32",
            HypothesisSpec::SufficientRigid { .. } => "sufficient_rigid",
            HypothesisSpec::Pack61 { .. } => "pack61",
            HypothesisSpec::Pack63 { .. } => "pack63",
            HypothesisSpec::Pack81 { .. } => "pack81",
            HypothesisSpec::WeaklyConnected { .. } => "weakly_connected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HypothesisWitness {
    Pair { a: VertexSet, b: VertexSet },
    Vertex { vertex: usize },
    Set { set: VertexSet },
    /// A connectivity requirement that fails, optionally after deleting `vertex`.
    Connectivity { property: String, value: String, required: usize, vertex: Option<usize> },
    /// The excluded edge set is larger than allowed.
    Excluded { size: usize, limit: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub theorem: String,
    pub holds: bool,
    pub witness: Option<HypothesisWitness>,
    /// Smallest size of a set spanning more than its `ell`-bound.
    pub lambda: Option<usize>,
    pub epsilon: Option<i64>,
}

impl HypothesisReport {
    fn new(spec: &HypothesisSpec, witness: Option<HypothesisWitness>) -> Self {
        HypothesisReport {
            theorem: spec.tag().into(),
            holds: witness.is_none(),
            witness,
            lambda: None,
            epsilon: None,
        }
    }

    /// Converts a failed report into an error.
    pub fn require(self) -> Result<Self> {
        if self.holds {
            Ok(self)
        } else {
            Err(Error::Hypothesis { theorem: self.theorem.clone(), detail: format!("{:?}", self.witness) })
        }
    }
}

struct Tables {
    n: usize,
    full: usize,
    e: Vec<i64>,
    deg: Vec<i64>,
}

impl Tables {
    fn new(g: &MultiGraph) -> Self {
        let n = g.n();
        Tables { n, full: (1 << n) - 1, e: induced_table(g), deg: g.degrees().into_iter().map(|d| d as i64).collect() }
    }

    /// `d_{G-B}(A)` for disjoint masks.
    fn d_minus(&self, a: usize, b: usize) -> i64 {
        let rest = self.full & !b;
        self.e[rest] - self.e[a] - self.e[rest & !a]
    }
}

fn values(f: &SetFunc, n: usize) -> Result<Vec<i64>> {
    f.check_ground(n)?;
    Ok((0..1usize << n).map(|a| f.eval(VertexSet::from_mask(a as u64), n)).collect())
}

fn single_sums(f: &SetFunc, n: usize) -> Vec<i64> {
    let singles = f.singles(n);
    let mut out = vec![0i64; 1 << n];
    for a in 1..out.len() {
        out[a] = out[a & (a - 1)] + singles[a.trailing_zeros() as usize];
    }
    out
}

/// First disjoint pair `(A, B)` in order of `A ∪ B`, then `A`, for which `ok` fails.
fn sweep(n: usize, mut unions: impl FnMut(usize) -> bool, mut ok: impl FnMut(usize, usize) -> bool) -> Option<(usize, usize)> {
    for u in 0..1usize << n {
        if !unions(u) {
            continue;
        }
        let mut a = 0usize;
        loop {
            if !ok(a, u & !a) {
                return Some((a, u & !a));
            }
            if a == u {
                break;
            }
            a = (a.wrapping_sub(u)) & u;
        }
    }
    None
}

fn pair(p: Option<(usize, usize)>) -> Option<HypothesisWitness> {
    p.map(|(a, b)| HypothesisWitness::Pair {
        a: VertexSet::from_mask(a as u64),
        b: VertexSet::from_mask(b as u64),
    })
}

fn degree_witness(t: &Tables, need: impl Fn(usize) -> Rational) -> Option<HypothesisWitness> {
    (0..t.n)
        .find(|&v| Rational::from_integer(t.deg[v]) < need(v))
        .map(|vertex| HypothesisWitness::Vertex { vertex })
}

/// Evaluates a hypothesis exhaustively; pair sweeps require `n <= budget`.
pub fn hypothesis_check(g: &MultiGraph, spec: &HypothesisSpec, budget: usize) -> Result<HypothesisReport> {
    let n = g.n();
    if !matches!(spec, HypothesisSpec::Cor32 { .. }) && n > budget {
        return Err(Error::TooLarge { what: "hypothesis pair sweep", n, limit: budget });
    }
    let r = Rational::from_integer;
    match spec {
        HypothesisSpec::Cor32 { k } => Ok(HypothesisReport::new(spec, cor32(g, *k)?)),
        HypothesisSpec::NecessaryRigid { ell } => {
            let t = Tables::new(g);
            let lv = values(ell, n)?;
            let ls = single_sums(ell, n);
            let w = sweep(n, |_| true, |a, b| {
                let u = a | b;
                t.d_minus(a, b) >= lv[u] - ls[b] + lv[t.full & !a] - lv[t.full]
            });
            Ok(HypothesisReport::new(spec, pair(w)))
        }
        HypothesisSpec::WeaklyConnected { ell, l } => {
            let t = Tables::new(g);
            let ls = single_sums(ell, n);
            let lv = values(l, n)?;
            let w = sweep(n, |u| u != t.full, |a, b| a == 0 || t.d_minus(a, b) >= lv[a | b] - ls[b]);
            Ok(HypothesisReport::new(spec, pair(w)))
        }
        HypothesisSpec::SufficientRigid { ell, excluded } => {
            let t = Tables::new(g);
            let ev = values(ell, n)?;
            if *excluded as i64 > ev[t.full] {
                return Ok(HypothesisReport::new(spec, Some(HypothesisWitness::Excluded { size: *excluded, limit: ev[t.full] })));
            }
            if let Some(w) = degree_witness(&t, |v| r(2 * ell.single(v, n))) {
                return Ok(HypothesisReport::new(spec, Some(w)));
            }
            let es = single_sums(ell, n);
            let bound = bound_table(ell, n);
            let w = sweep(n, |u| u != t.full && t.e[u] > bound[u], |a, b| t.d_minus(a, b) >= 2 * ev[a | b] - es[b]);
            Ok(HypothesisReport::new(spec, pair(w)))
        }
        HypothesisSpec::Pack61 { l, ell, excluded } => {
            let t = Tables::new(g);
            let ev = values(ell, n)?;
            let lv = values(l, n)?;
            let limit = ev[t.full] + lv[t.full];
            if *excluded as i64 > limit {
                return Ok(HypothesisReport::new(spec, Some(HypothesisWitness::Excluded { size: *excluded, limit })));
            }
            if let Some(w) = degree_witness(&t, |v| r(2 * ell.single(v, n) + 2 * l.single(v, n))) {
                return Ok(HypothesisReport::new(spec, Some(w)));
            }
            let es = single_sums(ell, n);
            let bound = bound_table(ell, n);
            let w = sweep(n, |u| u != t.full && t.e[u] > bound[u], |a, b| {
                let u = a | b;
                let extra = if a == 0 { 0 } else { 2 * lv[u] };
                t.d_minus(a, b) >= 2 * ev[u] - es[b] + extra
            });
            Ok(HypothesisReport::new(spec, pair(w)))
        }
        HypothesisSpec::Pack63 { l, ell, phi, excluded } => {
            phi.validate(n)?;
            let t = Tables::new(g);
            let ev = values(ell, n)?;
            let lv = values(l, n)?;
            let limit = ev[t.full] + lv[t.full];
            let epsilon = 2 * lv[t.full] + 2 * ev[t.full] - 2 * *excluded as i64;
            let bound = bound_table(ell, n);
            let lambda = (1..=t.full).filter(|&x| t.e[x] > bound[x]).map(|x| x.count_ones() as usize).min();
            let finish = |w: Option<HypothesisWitness>| {
                let mut rep = HypothesisReport::new(spec, w);
                rep.lambda = lambda;
                rep.epsilon = Some(epsilon);
                rep
            };
            if *excluded as i64 > limit {
                return Ok(finish(Some(HypothesisWitness::Excluded { size: *excluded, limit })));
            }
            if let Some(w) = degree_witness(&t, |v| r(2 * ell.single(v, n) + 2 * l.single(v, n))) {
                return Ok(finish(Some(w)));
            }
            let es = single_sums(ell, n);
            let w = sweep(n, |u| u != t.full && t.e[u] > bound[u], |a, b| {
                let u = a | b;
                let eps = if u.count_ones() as usize + 1 == n { epsilon } else { 0 };
                let factor = if b == 0 {
                    r(2)
                } else if a == 0 {
                    phi.eval(u) / r(lambda.expect("a dense set exists") as i64)
                } else {
                    r(2) - phi.eval(u)
                };
                r(t.d_minus(a, b) + eps) >= r(2 * ev[u] - es[b]) + r(lv[u]) * factor
            });
            Ok(finish(pair(w)))
        }
        HypothesisSpec::Pack81 { l, ell, k, rho } => {
            if *k <= r(2) {
                return Err(Error::Precondition("the degree-restricted conditions need k > 2".into()));
            }
            if rho.len() != n {
                return Err(Error::Precondition(format!("rho has {} entries for {n} vertices", rho.len())));
            }
            let t = Tables::new(g);
            if let Some(v) = (0..n).find(|&v| rho[v] < r(0) || rho[v] > r(t.deg[v])) {
                return Err(Error::Precondition(format!("rho at vertex {v} must lie in [0, d(v)]")));
            }
            let ev = values(ell, n)?;
            let lv = values(l, n)?;
            let slack = *k / (*k - r(2)) * r(lv[t.full] + ev[t.full]);
            let dense = (0..=t.full).find(|&s| {
                let sum: Rational = (0..n).filter(|&v| s >> v & 1 == 1).map(|v| rho[v]).sum();
                r(t.e[s]) > sum + slack
            });
            if let Some(s) = dense {
                return Ok(HypothesisReport::new(spec, Some(HypothesisWitness::Set { set: VertexSet::from_mask(s as u64) })));
            }
            if let Some(w) = degree_witness(&t, |v| *k * r(ell.single(v, n) + l.single(v, n))) {
                return Ok(HypothesisReport::new(spec, Some(w)));
            }
            let es = single_sums(ell, n);
            let bound = bound_table(ell, n);
            let w = sweep(n, |u| u != t.full && t.e[u] > bound[u], |a, b| {
                let u = a | b;
                let extra = if a == 0 { r(0) } else { *k * r(lv[u]) };
                r(t.d_minus(a, b)) >= *k * r(ev[u]) - *k / r(2) * r(es[b]) + extra
            });
            Ok(HypothesisReport::new(spec, pair(w)))
        }
    }
}

fn cor32(g: &MultiGraph, k: usize) -> Result<Option<HypothesisWitness>> {
    if k < 2 || g.n() < 3 {
        return Err(Error::Precondition("the k-rigid connectivity checks need k >= 2 and at least 3 vertices".into()));
    }
    let lambda = edge_connectivity(g);
    if !lambda.at_least(k) {
        return Ok(Some(HypothesisWitness::Connectivity {
            property: "edge_connectivity".into(),
            value: lambda.to_string(),
            required: k,
            vertex: None,
        }));
    }
    let essential = essential_edge_connectivity(g);
    if !essential.at_least(2 * k - 1) {
        return Ok(Some(HypothesisWitness::Connectivity {
            property: "essential_edge_connectivity".into(),
            value: essential.to_string(),
            required: 2 * k - 1,
            vertex: None,
        }));
    }
    for v in 0..g.n() {
        let (h, _, _) = g.remove_vertex(v);
        let c = edge_connectivity(&h);
        if !c.at_least(k - 1) {
            return Ok(Some(HypothesisWitness::Connectivity {
                property: "edge_connectivity_minus_vertex".into(),
                value: c.to_string(),
                required: k - 1,
                vertex: Some(v),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn cor32_on_k4_witness() {
        let report = crate::sparsity::rank_and_rigid(&MultiGraph::complete(4), &SetFunc::k_rigid(2)).unwrap();
        let w = MultiGraph::complete(4).edge_subgraph(&report.basis);
        assert_eq!(w.m(), 5);
        let rep = hypothesis_check(&w, &HypothesisSpec::Cor32 { k: 2 }, DEFAULT_PAIR_BUDGET).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn lambda_is_at_least_four_for_simple_graphs() {
        let spec = HypothesisSpec::Pack63 {
            l: SetFunc::lmn(1, 1),
            ell: SetFunc::k_rigid(2),
            phi: Phi::Constant { value: Rational::from_integer(1) },
            excluded: 0,
        };
        for g in oracle::census(6, oracle::CensusFilter::default()).step_by(97) {
            let rep = hypothesis_check(&g, &spec, DEFAULT_PAIR_BUDGET).unwrap();
            assert!(rep.lambda.is_none_or(|x| x >= 4));
        }
        let rep = hypothesis_check(&MultiGraph::complete(6), &spec, DEFAULT_PAIR_BUDGET).unwrap();
        assert_eq!(rep.lambda, Some(4));
    }

    #[test]
    fn pack61_holds_on_k9() {
        let spec = HypothesisSpec::Pack61 { l: SetFunc::lmn(1, 1), ell: SetFunc::k_rigid(2), excluded: 0 };
        assert!(hypothesis_check(&MultiGraph::complete(9), &spec, DEFAULT_PAIR_BUDGET).unwrap().holds);
        let c4 = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let rep = hypothesis_check(&c4, &spec, DEFAULT_PAIR_BUDGET).unwrap();
        assert_eq!(rep.witness, Some(HypothesisWitness::Vertex { vertex: 0 }));
    }

    #[test]
    fn necessary_condition_holds_on_rigid_graphs() {
        let ell = SetFunc::k_rigid(2);
        let spec = HypothesisSpec::NecessaryRigid { ell: ell.clone() };
        for g in oracle::census(5, oracle::CensusFilter::default()) {
            let rigid = crate::sparsity::rank_and_rigid(&g, &ell).unwrap().rigid;
            let holds = hypothesis_check(&g, &spec, DEFAULT_PAIR_BUDGET).unwrap().holds;
            assert!(!rigid || holds);
        }
    }

    #[test]
    fn weakly_connected_matches_oracle() {
        let ell = SetFunc::lmn(1, 1);
        let l = SetFunc::lmn(2, 2);
        for g in oracle::random_multigraphs(80, 6, 14, 4) {
            let spec = HypothesisSpec::WeaklyConnected { ell: ell.clone(), l: l.clone() };
            let rep = hypothesis_check(&g, &spec, DEFAULT_PAIR_BUDGET).unwrap();
            let bf = oracle::bf_weak_violation(&g, &ell, &l).unwrap();
            assert_eq!(rep.holds, bf.is_none());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let spec = HypothesisSpec::NecessaryRigid { ell: SetFunc::lmn(1, 1) };
        let err = hypothesis_check(&MultiGraph::complete(6), &spec, 5).unwrap_err();
        assert_eq!(err, Error::TooLarge { what: "hypothesis pair sweep", n: 6, limit: 5 });
    }
}
