//! Partition-connected plus rigid packings with degree control, and the preset pipelines
//! built from them.

use serde::{Deserialize, Serialize};

use crate::connectivity::{edge_connectivity, vertex_connectivity};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexSet};
use crate::setfunc::{derived, Derived, Rational, SetFunc};

use super::decompose::decompose_p_rigid;
use super::hypothesis::{hypothesis_check, HypothesisReport, HypothesisSpec, DEFAULT_PAIR_BUDGET};
use super::structure::{structure_partition, StructureCertificate};
use super::union::{matroid_union_pack, Packing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DegreeMode {
    None,
    /// `d_H(v) <= ceil(d(v)/2) + l(v) + ell(v)`.
    Halved,
    /// `d_H(v) <= ceil((d(v) - 2 rho(v)) / k) + rho(v) + l(v) + ell(v)`.
    Rho { k: Rational, rho: Vec<Rational> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Run constructions even when the hypothesis fails or cannot be checked.
    pub force: bool,
    /// Largest `n` for exhaustive hypothesis sweeps.
    pub budget: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { force: false, budget: DEFAULT_PAIR_BUDGET }
    }
}

impl PipelineOptions {
    pub fn forced() -> Self {
        PipelineOptions { force: true, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRigidOutcome {
    pub packing: Packing,
    /// Index of the degree absorber part, when a degree mode is active.
    pub absorber: Option<usize>,
    pub l_part: usize,
    pub ell_part: usize,
    /// Edges of the `l` part and the `ell` part together.
    pub h: Vec<EdgeId>,
    /// Per-vertex degree bound asserted on `h`.
    pub bounds: Option<Vec<i64>>,
    pub hypothesis: Option<HypothesisReport>,
    /// Present exactly when some part is not full.
    pub deficiency: Option<StructureCertificate>,
}

impl PartitionRigidOutcome {
    pub fn is_full(&self) -> bool {
        self.deficiency.is_none()
    }
}

pub(crate) fn gate(g: &MultiGraph, spec: Option<HypothesisSpec>, opts: PipelineOptions) -> Result<Option<HypothesisReport>> {
    let Some(spec) = spec else {
        return if opts.force {
            Ok(None)
        } else {
            Err(Error::Precondition("hypothesis cannot be checked for these parameters; use force".into()))
        };
    };
    match hypothesis_check(g, &spec, opts.budget) {
        Ok(rep) if rep.holds || opts.force => Ok(Some(rep)),
        Ok(rep) => rep.require().map(Some),
        Err(Error::TooLarge { .. }) if opts.force => Ok(None),
        Err(e) => Err(e),
    }
}

fn ceil_div(num: Rational, den: Rational) -> Rational {
    (num / den).ceil()
}

/// Degrees of the subgraph formed by `ids`.
pub fn degrees_of(g: &MultiGraph, ids: &[EdgeId]) -> Vec<usize> {
    let mut d = vec![0; g.n()];
    for &e in ids {
        let (u, v) = g.endpoints(e);
        d[u] += 1;
        d[v] += 1;
    }
    d
}

pub fn pack_partition_rigid(
    g: &MultiGraph,
    l: &SetFunc,
    ell: &SetFunc,
    forbidden: &[EdgeId],
    mode: &DegreeMode,
    opts: PipelineOptions,
) -> Result<PartitionRigidOutcome> {
    let n = g.n();
    l.check_ground(n)?;
    ell.check_ground(n)?;
    let spec = match mode {
        DegreeMode::None | DegreeMode::Halved => {
            Some(HypothesisSpec::Pack61 { l: l.clone(), ell: ell.clone(), excluded: forbidden.len() })
        }
        DegreeMode::Rho { k, rho } => (*k > Rational::from_integer(2)).then(|| HypothesisSpec::Pack81 {
            l: l.clone(),
            ell: ell.clone(),
            k: *k,
            rho: rho.clone(),
        }),
    };
    let hypothesis = gate(g, spec, opts)?;

    let absorber = match mode {
        DegreeMode::None => None,
        DegreeMode::Halved => Some(derived(g, Derived::HalvedAbsorber { l, ell })?),
        DegreeMode::Rho { k, rho } => Some(derived(g, Derived::RhoAbsorber { l, ell, k: *k, rho })?),
    };
    let mut funcs = Vec::new();
    if let Some(a) = &absorber {
        funcs.push(a.clone());
    }
    let l_part = funcs.len();
    funcs.push(l.clone());
    let ell_part = funcs.len();
    funcs.push(ell.clone());

    let packing = matroid_union_pack(g, &funcs, forbidden)?;
    packing.verify()?;
    let mut h: Vec<EdgeId> = packing.parts[l_part].edges.iter().chain(&packing.parts[ell_part].edges).copied().collect();
    h.sort_unstable();

    let deficiency = if packing.is_full() { None } else { Some(structure_partition(&packing)?) };
    let deg = g.degrees();
    let bounds: Option<Vec<i64>> = match mode {
        DegreeMode::None => None,
        DegreeMode::Halved => {
            Some((0..n).map(|v| deg[v].div_ceil(2) as i64 + l.single(v, n) + ell.single(v, n)).collect())
        }
        DegreeMode::Rho { k, rho } => Some(
            (0..n)
                .map(|v| {
                    let d = Rational::from_integer(deg[v] as i64);
                    let two = Rational::from_integer(2);
                    let extra = Rational::from_integer(l.single(v, n) + ell.single(v, n));
                    (ceil_div(d - two * rho[v], *k) + rho[v] + extra).floor().to_integer()
                })
                .collect(),
        ),
    };
    if deficiency.is_none() {
        if let Some(b) = &bounds {
            let dh = degrees_of(g, &h);
            if let Some(v) = (0..n).find(|&v| dh[v] as i64 > b[v]) {
                return Err(Error::Internal(format!("vertex {v} has degree {} in H, bound {}", dh[v], b[v])));
            }
        }
    }
    Ok(PartitionRigidOutcome {
        packing,
        absorber: absorber.map(|_| 0),
        l_part,
        ell_part,
        h,
        bounds,
        hypothesis,
        deficiency,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case")]
pub enum Preset {
    /// `m` spanning trees and `p` spanning `k`-rigid parts with halved degrees.
    Thm10_1 { k: usize, p: usize, m: usize },
    /// As above, with every rigid part paired with an `l_{k-1,0}` part into a
    /// `(2k-1)`-edge-connected subgraph.
    Thm10_2 { k: usize, p: usize, m: usize },
    /// A spanning 2-rigid subgraph with degrees about `d/k` on one side of a bipartite graph.
    Cor82 { k: Rational, side: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetOutcome {
    pub base: PartitionRigidOutcome,
    pub trees: Vec<Vec<EdgeId>>,
    /// The spanning `k`-rigid parts.
    pub rigid_parts: Vec<Vec<EdgeId>>,
    /// The `l_{k-1,0}` parts paired with `rigid_parts`, in the same order.
    pub companions: Vec<Vec<EdgeId>>,
    pub h: Vec<EdgeId>,
    /// Asserted per-vertex bound on the degrees of `h` (`None` off the constrained side).
    pub bounds: Vec<Option<i64>>,
}

fn split(g: &MultiGraph, ids: &[EdgeId], funcs: &[SetFunc]) -> Result<Vec<Vec<EdgeId>>> {
    if funcs.is_empty() {
        return Ok(Vec::new());
    }
    let sub = g.edge_subgraph(ids);
    let pk = matroid_union_pack(&sub, funcs, &[])?;
    if let Some(i) = pk.parts.iter().position(|p| !p.is_full()) {
        return Err(Error::Internal(format!(
            "splitting part into {}: piece {i} has {} of {} edges",
            funcs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" + "),
            pk.parts[i].edges.len(),
            pk.parts[i].required
        )));
    }
    Ok(pk.parts.iter().map(|p| p.edges.iter().map(|&j| ids[j]).collect()).collect())
}

fn assert_bounds(g: &MultiGraph, h: &[EdgeId], bounds: &[Option<i64>]) -> Result<()> {
    let dh = degrees_of(g, h);
    for (v, b) in bounds.iter().enumerate() {
        if let Some(b) = b {
            if dh[v] as i64 > *b {
                return Err(Error::Internal(format!("vertex {v} has degree {} in H, bound {b}", dh[v])));
            }
        }
    }
    Ok(())
}

fn require_full(out: PartitionRigidOutcome) -> Result<PartitionRigidOutcome> {
    if let Some(cert) = &out.deficiency {
        return Err(Error::Internal(format!(
            "packing is deficient; structure partition {:?}",
            cert.partition.parts()
        )));
    }
    Ok(out)
}

pub fn preset_pipeline(g: &MultiGraph, preset: &Preset, opts: PipelineOptions) -> Result<PresetOutcome> {
    let n = g.n();
    let deg = g.degrees();
    match preset {
        Preset::Thm10_1 { k, p, m } | Preset::Thm10_2 { k, p, m } => {
            let (k, p, m) = (*k as i64, *p as i64, *m as i64);
            if k < 2 || p < 1 {
                return Err(Error::Precondition("rigid presets need k >= 2 and p >= 1".into()));
            }
            let second = matches!(preset, Preset::Thm10_2 { .. });
            let l = if second { SetFunc::lmn(k * p - p + m, m) } else { SetFunc::lmn(m, m) };
            let ell = SetFunc::lmn(p * k, p * (2 * k - 1));
            let base = require_full(pack_partition_rigid(g, &l, &ell, &[], &DegreeMode::Halved, opts)?)?;
            let l_edges = &base.packing.parts[base.l_part].edges;
            let mut pieces_funcs = Vec::new();
            if second {
                pieces_funcs.extend(std::iter::repeat_n(SetFunc::lmn(k - 1, 0), p as usize));
            }
            pieces_funcs.extend(std::iter::repeat_n(SetFunc::lmn(1, 1), m as usize));
            let mut pieces = split(g, l_edges, &pieces_funcs)?;
            let trees = pieces.split_off(if second { p as usize } else { 0 });
            let companions = pieces;

            let ell_edges = base.packing.parts[base.ell_part].edges.clone();
            let sub = g.edge_subgraph(&ell_edges);
            let dec = decompose_p_rigid(&sub, &SetFunc::k_rigid(k), p as usize)?;
            if !dec.leftover.is_empty() {
                return Err(Error::Internal("rigid part has leftover edges".into()));
            }
            let rigid_parts: Vec<Vec<EdgeId>> =
                dec.parts.iter().map(|part| part.iter().map(|&j| ell_edges[j]).collect()).collect();

            for (i, (gi, gi2)) in rigid_parts.iter().zip(&companions).enumerate() {
                let hi: Vec<EdgeId> = gi.iter().chain(gi2).copied().collect();
                let hg = g.edge_subgraph(&hi);
                let c = edge_connectivity(&hg);
                if !c.at_least((2 * k - 1) as usize) {
                    return Err(Error::Internal(format!("H_{i} is only {c}-edge-connected")));
                }
                if let Some(v) = crate::connectivity::fragile_vertex(&hg, (k - 1) as usize) {
                    return Err(Error::Internal(format!("H_{i} - {v} is not {}-edge-connected", k - 1)));
                }
            }
            let extra = if second { 2 * k * p - p + m } else { k * p + m };
            let bounds: Vec<Option<i64>> = (0..n).map(|v| Some(deg[v].div_ceil(2) as i64 + extra)).collect();
            let h = base.h.clone();
            assert_bounds(g, &h, &bounds)?;
            Ok(PresetOutcome { base, trees, rigid_parts, companions, h, bounds })
        }
        Preset::Cor82 { k, side } => {
            let one = Rational::from_integer(1);
            if *k < one {
                return Err(Error::Precondition("k must be at least 1".into()));
            }
            g.check_set(*side)?;
            if let Some(e) = (0..g.m()).find(|&e| {
                let (u, v) = g.endpoints(e);
                side.contains(u) == side.contains(v)
            }) {
                return Err(Error::Hypothesis {
                    theorem: "cor82".into(),
                    detail: format!("edge {e} does not join the side to its complement"),
                });
            }
            let need = (Rational::from_integer(6) * k).ceil().to_integer() as usize;
            let kappa = vertex_connectivity(g);
            if kappa < need && !opts.force {
                return Err(Error::Hypothesis {
                    theorem: "cor82".into(),
                    detail: format!("vertex connectivity {kappa} is below {need}"),
                });
            }
            let two = Rational::from_integer(2);
            let big_k = if *k > two { *k } else { two };
            let rho: Vec<Rational> = (0..n)
                .map(|v| if side.contains(v) { Rational::from_integer(0) } else { Rational::from_integer(deg[v] as i64) })
                .collect();
            let mode = DegreeMode::Rho { k: big_k, rho };
            let inner = PipelineOptions { force: true, ..opts };
            let base = require_full(pack_partition_rigid(g, &SetFunc::zero(), &SetFunc::k_rigid(2), &[], &mode, inner)?)?;
            let h = base.h.clone();
            let bounds: Vec<Option<i64>> = (0..n)
                .map(|v| {
                    side.contains(v).then(|| {
                        (Rational::from_integer(deg[v] as i64) / k).ceil().to_integer() + 2
                    })
                })
                .collect();
            assert_bounds(g, &h, &bounds)?;
            let hg = g.edge_subgraph(&h);
            if n >= 3 && vertex_connectivity(&hg) < 2 {
                return Err(Error::Internal("H is not 2-connected".into()));
            }
            let rigid_parts = vec![base.packing.parts[base.ell_part].edges.clone()];
            Ok(PresetOutcome { base, trees: Vec::new(), rigid_parts, companions: Vec::new(), h, bounds })
        }
    }
}
