//! Re-derives the verdict and properties of a certificate from its contents alone.

use rigpack::connectivity::edge_connectivity;
use rigpack::oracle::{self, Check, OracleBudget, Verdict, MAX_RANK_EDGES};
use rigpack::orientation::{
    rigid_orientation_equiv, verify_arc, Direction, EquivOutcome, EulerMode, HakimiOutcome, Orientation, MAX_ARC_SWEEP,
};
use rigpack::packing::pipelines::degrees_of;
use rigpack::packing::{hypothesis_check, structure_partition, Packing, Preset};
use rigpack::sparsity::{is_sparse, rank_and_rigid, rigid_components, Sparsity};
use rigpack::{EdgeId, MultiGraph, SetFunc};

use crate::error::CliResult;
use crate::graphfile::GraphFile;
use crate::report::{Certificate, OracleSpec, Property, Status};

/// Largest `n` for subset-sweep cross-checks.
const SWEEP_N: usize = 14;
/// Largest `m` for the exhaustive union bound.
const UNION_EDGES: usize = 10;

fn sparse(g: &MultiGraph, f: &SetFunc) -> CliResult<bool> {
    if g.n() <= SWEEP_N {
        Ok(oracle::bf_sparse(g, f)?.is_none())
    } else {
        Ok(is_sparse(g, f)?.is_sparse())
    }
}

fn is_forest(g: &MultiGraph, ids: &[EdgeId]) -> CliResult<bool> {
    sparse(&g.edge_subgraph(ids), &SetFunc::lmn(1, 1))
}

/// Whether the id lists are pairwise disjoint and together cover `0..m` exactly once.
fn partitions_edges(m: usize, lists: &[&[EdgeId]]) -> bool {
    let mut seen = vec![0u32; m];
    for list in lists {
        for &e in *list {
            if e >= m {
                return false;
            }
            seen[e] += 1;
        }
    }
    seen.iter().all(|&c| c == 1)
}

fn packing_props(pk: &Packing, props: &mut Vec<Property>) -> CliResult<()> {
    props.push(Property::new("parts are disjoint and sparse", pk.verify().is_ok()));
    if pk.host.m() <= UNION_EDGES && pk.host.n() <= SWEEP_N {
        let funcs: Vec<SetFunc> = pk.parts.iter().map(|p| p.func.clone()).collect();
        let forbidden_free = pk.forbidden.is_empty();
        if forbidden_free {
            props.push(Property::new("covered size meets the exhaustive union bound", oracle::bf_union_bound(&pk.host, &funcs)? == pk.covered()));
        }
    }
    Ok(())
}

fn orientation_of(o: &Orientation, g: &MultiGraph) -> Property {
    Property::new("orientation matches the graph", o.host() == g)
}

fn arc_holds(d: &Orientation, f: &SetFunc, r: &[i64]) -> CliResult<bool> {
    Ok(verify_arc(d, f, Some(r))?.holds)
}

pub fn assess(cert: &Certificate) -> CliResult<(Status, Vec<Property>)> {
    let mut props = Vec::new();
    let status = match cert {
        Certificate::Sparse { graph, func, result } => {
            props.push(Property::new("engine verdict reproduces", is_sparse(graph, func)? == *result));
            if let Sparsity::Violation { set } = result {
                props.push(Property::new("witness spans more than its bound", graph.induced_count(*set) as i64 > func.bound(*set, graph.n())));
            } else if graph.n() <= SWEEP_N {
                props.push(Property::new("exhaustive sweep finds no dense set", oracle::bf_sparse(graph, func)?.is_none()));
            }
            Status::from_bool(result.is_sparse())
        }
        Certificate::Rigid { graph, func, report } => {
            let basis = graph.edge_subgraph(&report.basis);
            props.push(Property::new("basis is sparse", sparse(&basis, func)?));
            props.push(Property::new("basis size is the rank", report.basis.len() == report.rank));
            props.push(Property::new("required count is sum f(v) - f(V)", report.required == func.rigid_count(graph.n())));
            props.push(Property::new("rigid iff rank meets the required count", report.rigid == (report.rank as i64 == report.required)));
            let mut maximal = true;
            for e in (0..graph.m()).filter(|e| !report.basis.contains(e)) {
                let mut ids = report.basis.clone();
                ids.push(e);
                if sparse(&graph.edge_subgraph(&ids), func)? {
                    maximal = false;
                    break;
                }
            }
            props.push(Property::new("basis is maximal", maximal));
            if graph.m() <= MAX_RANK_EDGES && graph.n() <= SWEEP_N {
                props.push(Property::new("rank matches branch and bound", oracle::bf_rank(graph, func)? == report.rank));
            }
            Status::from_bool(report.rigid)
        }
        Certificate::Components { graph, func, components } => {
            props.push(Property::new("engine components reproduce", rigid_components(graph, func)? == *components));
            if graph.n() <= SWEEP_N {
                props.push(Property::new("components match the exhaustive sweep", oracle::bf_rigid_components(graph, func)? == *components));
            }
            Status::True
        }
        Certificate::Pack { packing, structure } => {
            packing_props(packing, &mut props)?;
            if packing.is_full() {
                props.push(Property::new("no structure partition for a full packing", structure.is_none()));
            } else {
                let again = structure_partition(packing)?;
                props.push(Property::new("structure partition reproduces", structure.as_ref() == Some(&again)));
            }
            Status::from_bool(packing.is_full())
        }
        Certificate::PartitionRigid { outcome, .. } => {
            let pk = &outcome.packing;
            packing_props(pk, &mut props)?;
            let dh = degrees_of(&pk.host, &outcome.h);
            if let Some(bounds) = &outcome.bounds {
                props.push(Property::new("degree bounds hold on H", dh.iter().zip(bounds).all(|(&d, &b)| d as i64 <= b)));
            }
            let mut h = [pk.parts[outcome.l_part].edges.clone(), pk.parts[outcome.ell_part].edges.clone()].concat();
            h.sort_unstable();
            let mut claimed = outcome.h.clone();
            claimed.sort_unstable();
            props.push(Property::new("H is the union of the l and ell parts", h == claimed));
            props.push(Property::new("deficiency certificate iff a part is short", outcome.deficiency.is_some() != pk.is_full()));
            Status::from_bool(pk.is_full())
        }
        Certificate::Preset { preset, outcome } => {
            let pk = &outcome.base.packing;
            let g = &pk.host;
            let n = g.n();
            props.push(Property::new("parts are disjoint and sparse", pk.verify().is_ok()));
            let mut trees = true;
            for t in &outcome.trees {
                trees &= t.len() + 1 == n && is_forest(g, t)?;
            }
            props.push(Property::new("trees are spanning trees", trees));
            let k = match preset {
                Preset::Thm10_1 { k, .. } | Preset::Thm10_2 { k, .. } => *k as i64,
                Preset::Cor82 { .. } => 2,
            };
            let mut rigid = true;
            for part in &outcome.rigid_parts {
                rigid &= rank_and_rigid(&g.edge_subgraph(part), &SetFunc::k_rigid(k))?.rigid;
            }
            props.push(Property::new(format!("rigid parts are spanning {k}-rigid"), rigid));
            if let Preset::Thm10_2 { .. } = preset {
                let mut connected = true;
                for (part, comp) in outcome.rigid_parts.iter().zip(&outcome.companions) {
                    let h1 = g.edge_subgraph(&[part.clone(), comp.clone()].concat());
                    connected &= edge_connectivity(&h1).at_least(2 * k as usize - 1);
                    for v in 0..n {
                        connected &= edge_connectivity(&h1.remove_vertex(v).0).at_least(k as usize - 1);
                    }
                }
                props.push(Property::new(format!("paired parts are {}-edge-connected and stay {}-edge-connected minus any vertex", 2 * k - 1, k - 1), connected));
            }
            let dh = degrees_of(g, &outcome.h);
            props.push(Property::new(
                "degree bounds hold on H",
                outcome.bounds.iter().enumerate().all(|(v, b)| b.is_none_or(|b| dh[v] as i64 <= b)),
            ));
            Status::True
        }
        Certificate::Decompose { graph, func, decomposition, p } => {
            let lists: Vec<&[EdgeId]> = decomposition.parts.iter().map(Vec::as_slice).chain([decomposition.leftover.as_slice()]).collect();
            props.push(Property::new("parts and leftover partition the edges", partitions_edges(graph.m(), &lists)));
            props.push(Property::new(format!("there are {p} parts"), decomposition.parts.len() == *p));
            let mut minimal = true;
            for part in &decomposition.parts {
                let r = rank_and_rigid(&graph.edge_subgraph(part), func)?;
                minimal &= r.rigid && r.rank == part.len();
            }
            props.push(Property::new("every part is minimally rigid and spanning", minimal));
            Status::True
        }
        Certificate::Hakimi { graph, targets, outcome } => match outcome {
            HakimiOutcome::Oriented { orientation } => {
                props.push(orientation_of(orientation, graph));
                let ins: Vec<i64> = orientation.in_degrees().iter().map(|&d| d as i64).collect();
                props.push(Property::new("in-degrees equal the targets", ins == *targets));
                Status::True
            }
            HakimiOutcome::Infeasible { set, induced, capacity } => {
                let cap: i64 = set.iter().map(|v| targets[v]).sum();
                props.push(Property::new("witness counts reproduce", graph.induced_count(*set) == *induced && cap == *capacity));
                props.push(Property::new("witness spans more edges than its targets allow", *induced as i64 > *capacity));
                Status::False
            }
        },
        Certificate::Euler { mode, preferred, orientation } => {
            match mode {
                EulerMode::Eulerian => props.push(Property::new("in-degree equals out-degree everywhere", orientation.is_balanced())),
                EulerMode::Smooth => props.push(Property::new("smooth", orientation.is_smooth())),
            }
            if let Some(u) = preferred {
                let g = orientation.host();
                props.push(Property::new(format!("out-degree of {u} is at most floor(d/2)"), orientation.out_degrees()[*u] <= g.degree(*u) / 2));
            }
            Status::True
        }
        Certificate::RigidOrientation { graph, func, outcome } => {
            let again = rigid_orientation_equiv(graph, func, Direction::ToOrientation)?;
            props.push(Property::new("engine outcome reproduces", again == *outcome));
            if let EquivOutcome { holds: true, orientation: Some(d), .. } = outcome {
                props.push(orientation_of(d, graph));
                props.push(Property::new("orientation re-certifies rigidity", rigid_orientation_equiv(graph, func, Direction::ToRigidity(d))?.holds));
            }
            Status::from_bool(outcome.holds)
        }
        Certificate::Packed { l, ell, r1, r2, outcome } => {
            let d = &outcome.orientation;
            let g = d.host();
            let n = g.n();
            let lists = [outcome.absorber.as_slice(), &outcome.h1, &outcome.h2, &outcome.remainder];
            props.push(Property::new("parts partition the edges", partitions_edges(g.m(), &lists)));
            let (o1, o2) = (d.restrict(&outcome.h1), d.restrict(&outcome.h2));
            let in_ok = |o: &Orientation, f: &SetFunc, r: &[i64]| {
                let ins = o.in_degrees();
                (0..n).all(|v| ins[v] as i64 == f.single(v, n) - r[v])
            };
            props.push(Property::new("H1 in-degrees are l - r1", in_ok(&o1, l, r1)));
            props.push(Property::new("H2 in-degrees are ell - r2", in_ok(&o2, ell, r2)));
            let deg = g.degrees();
            props.push(Property::new("out-degrees are at most ceil(d/2)", d.out_degrees().iter().zip(&deg).all(|(&o, &dv)| o <= dv.div_ceil(2))));
            if n <= MAX_ARC_SWEEP {
                props.push(Property::new("H1 is r1-rooted l-arc-connected", arc_holds(&o1, l, r1)?));
                props.push(Property::new("H2 is r2-rooted ell-arc-connected", arc_holds(&o2, ell, r2)?));
            }
            if let Some(p) = &outcome.preferred {
                props.push(Property::new(format!("out-degree of {} is at most floor(d/2)", p.vertex), d.out_degrees()[p.vertex] <= deg[p.vertex] / 2));
            }
            Status::True
        }
        Certificate::Robust { k, outcome } => {
            let d = &outcome.orientation;
            props.push(Property::new("smooth", d.is_smooth()));
            props.push(Property::new(format!("{}-arc-strong", 2 * k + 1), d.arc_strong_connectivity().at_least(2 * k + 1)));
            props.push(Property::new(format!("D - v is {k}-arc-strong for every v"), d.fragile_vertex(*k).is_none()));
            Status::True
        }
        Certificate::OddForest { graph, m, forest } => {
            let deg = degrees_of(graph, &forest.edges);
            props.push(Property::new("edges form a forest", is_forest(graph, &forest.edges)?));
            props.push(Property::new("every degree is odd", deg.iter().all(|d| d % 2 == 1)));
            props.push(Property::new("degrees reproduce", deg == forest.degrees));
            let bounds: Vec<usize> = graph.degrees().iter().map(|d| d.div_ceil(*m)).collect();
            props.push(Property::new("bounds are ceil(d/m)", bounds == forest.bounds));
            let achieved = deg.iter().zip(&bounds).all(|(d, b)| d <= b);
            props.push(Property::new("achieved flag reproduces", achieved == forest.achieved));
            Status::from_bool(achieved)
        }
        Certificate::Factor { graph, k, r, outcome } => {
            props.push(Property::new("factor and forest partition the edges", partitions_edges(graph.m(), &[&outcome.factor, &outcome.forest_edges])));
            let fdeg = degrees_of(graph, &outcome.forest_edges);
            props.push(Property::new("removed edges form a forest with odd degrees", is_forest(graph, &outcome.forest_edges)? && fdeg.iter().all(|d| d % 2 == 1)));
            let deg = degrees_of(graph, &outcome.factor);
            let degrees_ok = deg.iter().all(|&d| d + 3 == *r || d + 1 == *r);
            props.push(Property::new("degrees flag reproduces", degrees_ok == outcome.degrees_ok));
            let rigid = rank_and_rigid(&graph.edge_subgraph(&outcome.factor), &SetFunc::k_rigid(*k as i64))?.rigid;
            props.push(Property::new("rigidity flag reproduces", rigid == outcome.rigid));
            Status::from_bool(degrees_ok && rigid)
        }
        Certificate::Hypothesis { graph, spec, budget, report } => {
            props.push(Property::new("hypothesis check reproduces", hypothesis_check(graph, spec, *budget)? == *report));
            Status::from_bool(report.holds)
        }
        Certificate::Oracle { graph, check, budget, verdict } => {
            let again = run_oracle(graph, check, budget)?;
            props.push(Property::new("oracle verdict reproduces", again == *verdict));
            Status::from_bool(verdict.holds)
        }
        Certificate::Graph { file } => {
            let canon = file.canonical();
            props.push(Property::new("graph file round-trips", GraphFile::parse(&canon).map(|f| f == *file).unwrap_or(false)));
            Status::True
        }
        Certificate::Verify { checks, original, reproduced } => {
            props.extend(checks.iter().cloned());
            Status::from_bool(original == reproduced && checks.iter().all(|c| c.holds))
        }
    };
    Ok((status, props))
}

pub fn run_oracle(g: &MultiGraph, check: &OracleSpec, budget: &OracleBudget) -> CliResult<Verdict> {
    Ok(match check {
        OracleSpec::Sparse { func } => budget.check(g, &Check::Sparse(func))?,
        OracleSpec::PartitionConnected { func } => budget.check(g, &Check::PartitionConnected(func))?,
        OracleSpec::Rigid { func } => budget.check(g, &Check::Rigid(func))?,
        OracleSpec::ArcConnected { func, roots } => budget.check(g, &Check::ArcConnected { arcs: g.edges(), f: func, r: roots })?,
        OracleSpec::EdgeConnected { func } => budget.check(g, &Check::EdgeConnected(func))?,
        OracleSpec::WeaklyConnected { ell, l } => budget.check(g, &Check::WeaklyConnected { ell, l })?,
        OracleSpec::MatroidAxioms { func } => budget.check(g, &Check::MatroidAxioms(func))?,
    })
}
