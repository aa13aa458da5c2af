use std::fs;
use std::path::Path;

use rigpack::oracle::OracleBudget;
use rigpack::orientation::{
    eulerian_orient, factor, hakimi_orient, odd_forest, packed_orientation, rigid_orientation_equiv, robust_arc_strong,
    smooth_orient, Direction, EulerMode, HakimiOutcome, RobustOptions,
};
use rigpack::packing::hypothesis::DEFAULT_PAIR_BUDGET;
use rigpack::packing::{
    decompose_p_rigid, hypothesis_check, matroid_union_pack, pack_partition_rigid, preset_pipeline, structure_partition,
    DegreeMode, HypothesisSpec, Phi, PipelineOptions, Preset,
};
use rigpack::setfunc::Rational;
use rigpack::sparsity::{is_sparse, rank_and_rigid, rigid_components, Sparsity};
use rigpack::{MultiGraph, SetFunc, VertexSet};

use crate::args::*;
use crate::assess::{assess, run_oracle};
use crate::error::{CliError, CliResult};
use crate::funcspec::parse_func;
use crate::gen::{generate, Family};
use crate::graphfile::GraphFile;
use crate::report::{edge_list, Certificate, OracleSpec, Report};

pub struct Context {
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub force: bool,
}

impl Context {
    fn pipeline(&self) -> PipelineOptions {
        PipelineOptions { force: self.force, budget: self.budget.unwrap_or(DEFAULT_PAIR_BUDGET) }
    }

    fn oracle(&self) -> OracleBudget {
        self.budget.map(OracleBudget::uniform).unwrap_or_default()
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

/// A certificate plus human-readable notes.
pub struct Built {
    pub certificate: Certificate,
    pub summary: Vec<String>,
}

fn built(certificate: Certificate, summary: Vec<String>) -> CliResult<Built> {
    Ok(Built { certificate, summary })
}

fn func(s: &str) -> CliResult<SetFunc> {
    parse_func(s, Path::new(""))
}

fn need_func(flag: &str, s: &Option<String>) -> CliResult<SetFunc> {
    match s {
        Some(s) => func(s),
        None => Err(CliError::Usage(format!("--{flag} is required here"))),
    }
}

fn need<T: Copy>(flag: &str, x: Option<T>) -> CliResult<T> {
    x.ok_or_else(|| CliError::Usage(format!("--{flag} is required here")))
}

fn rational(flag: &str, s: &str) -> CliResult<Rational> {
    s.parse().map_err(|_| CliError::Parse { what: "rational", input: s.into(), position: 0, message: format!("--{flag} expects p or p/q") })
}

fn rationals(flag: &str, list: &[String]) -> CliResult<Vec<Rational>> {
    list.iter().map(|s| rational(flag, s)).collect()
}

fn load(path: &Path) -> CliResult<MultiGraph> {
    GraphFile::read(path)?.graph()
}

pub fn dispatch(cmd: &Command, ctx: &Context) -> CliResult<Built> {
    match cmd {
        Command::Sparse(a) => {
            let (g, f) = (load(&a.graph)?, func(&a.func)?);
            let result = is_sparse(&g, &f)?;
            let summary = match &result {
                Sparsity::Sparse => vec![format!("{} edges, sparse under {f}", g.m())],
                Sparsity::Violation { set } => vec![format!("{set} spans {} edges, bound {}", g.induced_count(*set), f.bound(*set, g.n()))],
            };
            built(Certificate::Sparse { graph: g, func: f, result }, summary)
        }
        Command::Rigid(a) => {
            let (g, f) = (load(&a.graph)?, func(&a.func)?);
            let report = rank_and_rigid(&g, &f)?;
            let summary = vec![format!("rank {} of required {}", report.rank, report.required), format!("basis {}", edge_list(&report.basis))];
            built(Certificate::Rigid { graph: g, func: f, report }, summary)
        }
        Command::Components(a) => {
            let (g, f) = (load(&a.graph)?, func(&a.func)?);
            let components = rigid_components(&g, &f)?;
            let summary = components.iter().map(|c| format!("component {c}")).collect();
            built(Certificate::Components { graph: g, func: f, components }, summary)
        }
        Command::Pack(a) => pack(a, ctx),
        Command::Decompose(a) => {
            let (g, f) = (load(&a.graph)?, func(&a.func)?);
            let decomposition = decompose_p_rigid(&g, &f, a.p)?;
            let mut summary: Vec<String> = decomposition.parts.iter().enumerate().map(|(i, p)| format!("part {i}: {}", edge_list(p))).collect();
            summary.push(format!("leftover {}", edge_list(&decomposition.leftover)));
            built(Certificate::Decompose { graph: g, func: f, p: a.p, decomposition }, summary)
        }
        Command::Orient(a) => orient(a, ctx),
        Command::Verify(_) => unreachable!("verify is handled by the caller"),
        Command::Hypothesis(a) => hypothesis(a, ctx),
        Command::Oracle(a) => oracle_cmd(a, ctx),
        Command::Gen(a) => gen(a, ctx),
    }
}

fn pack(a: &PackArgs, ctx: &Context) -> CliResult<Built> {
    let g = load(&a.graph)?;
    let opts = ctx.pipeline();
    if !a.funcs.is_empty() {
        let funcs = a.funcs.iter().map(|s| func(s)).collect::<CliResult<Vec<_>>>()?;
        let packing = matroid_union_pack(&g, &funcs, &a.forbid)?;
        let structure = if packing.is_full() { None } else { Some(structure_partition(&packing)?) };
        let mut summary: Vec<String> = packing
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| format!("part {i} ({}): {} of {} edges {}", p.func, p.edges.len(), p.required, edge_list(&p.edges)))
            .collect();
        if let Some(s) = &structure {
            let parts: Vec<String> = s.partition.parts().iter().map(|p| p.to_string()).collect();
            summary.push(format!("structure partition {}", parts.join(" ")));
        }
        return built(Certificate::Pack { packing, structure }, summary);
    }
    if let (Some(l), Some(ell)) = (&a.l, &a.ell) {
        let (l, ell) = (func(l)?, func(ell)?);
        let mode = match a.degree {
            DegreeArg::None => DegreeMode::None,
            DegreeArg::Halved => DegreeMode::Halved,
            DegreeArg::Rho => DegreeMode::Rho { k: rational("k", a.k.as_deref().unwrap_or("1"))?, rho: rationals("rho", &a.rho)? },
        };
        let outcome = pack_partition_rigid(&g, &l, &ell, &a.forbid, &mode, opts)?;
        let summary = vec![
            format!("l part {}", edge_list(&outcome.packing.parts[outcome.l_part].edges)),
            format!("ell part {}", edge_list(&outcome.packing.parts[outcome.ell_part].edges)),
        ];
        return built(Certificate::PartitionRigid { l, ell, mode, outcome }, summary);
    }
    let Some(preset) = a.preset else {
        return Err(CliError::Usage("pack needs --funcs, --l with --ell, or --preset".into()));
    };
    let int_k = || -> CliResult<usize> {
        let k = need("k", a.k.as_deref().map(Some).unwrap_or(None))?;
        k.parse().map_err(|_| CliError::Parse { what: "integer", input: k.into(), position: 0, message: "--k expects an integer".into() })
    };
    let preset = match preset {
        PresetArg::Thm10_1 => Preset::Thm10_1 { k: int_k()?, p: a.p, m: a.m },
        PresetArg::Thm10_2 => Preset::Thm10_2 { k: int_k()?, p: a.p, m: a.m },
        PresetArg::Cor82 => {
            let side: VertexSet = a.side.iter().copied().collect();
            if side.is_empty() {
                return Err(CliError::Usage("cor82 needs --side".into()));
            }
            Preset::Cor82 { k: rational("k", need("k", a.k.as_deref())?)?, side }
        }
    };
    let outcome = preset_pipeline(&g, &preset, opts)?;
    let mut summary: Vec<String> = outcome.trees.iter().map(|t| format!("tree {}", edge_list(t))).collect();
    summary.extend(outcome.rigid_parts.iter().map(|t| format!("rigid part {}", edge_list(t))));
    summary.push(format!("H {}", edge_list(&outcome.h)));
    built(Certificate::Preset { preset, outcome }, summary)
}

fn orient(a: &OrientArgs, ctx: &Context) -> CliResult<Built> {
    let g = load(&a.graph)?;
    let n = g.n();
    let arcs = |d: &rigpack::orientation::Orientation| {
        let list: Vec<String> = d.arcs().iter().map(|(t, h)| format!("{t}->{h}")).collect();
        format!("arcs {}", list.join(" "))
    };
    match a.mode {
        OrientMode::Hakimi => {
            if a.targets.len() != n {
                return Err(CliError::Usage(format!("--targets needs {n} values")));
            }
            let outcome = hakimi_orient(&g, &a.targets)?;
            let summary = match &outcome {
                HakimiOutcome::Oriented { orientation } => vec![arcs(orientation)],
                HakimiOutcome::Infeasible { set, induced, capacity } => {
                    vec![format!("{set} spans {induced} edges but its targets sum to {capacity}")]
                }
            };
            built(Certificate::Hakimi { graph: g, targets: a.targets.clone(), outcome }, summary)
        }
        OrientMode::Eulerian | OrientMode::Smooth => {
            let (mode, d) = if a.mode == OrientMode::Eulerian {
                (EulerMode::Eulerian, eulerian_orient(&g)?)
            } else {
                (EulerMode::Smooth, smooth_orient(&g, a.preferred)?)
            };
            let summary = vec![arcs(&d)];
            let preferred = if mode == EulerMode::Smooth { a.preferred } else { None };
            built(Certificate::Euler { mode, preferred, orientation: d }, summary)
        }
        OrientMode::Rigid => {
            let f = need_func("func", &a.func)?;
            let outcome = rigid_orientation_equiv(&g, &f, Direction::ToOrientation)?;
            let summary = match (&outcome.orientation, &outcome.witness) {
                (Some(d), _) => vec![arcs(d)],
                (None, Some(w)) => vec![format!("not minimally rigid: {w:?}")],
                (None, None) => Vec::new(),
            };
            built(Certificate::RigidOrientation { graph: g, func: f, outcome }, summary)
        }
        OrientMode::Packed => {
            let (l, ell) = (need_func("l", &a.l)?, need_func("ell", &a.ell)?);
            let outcome = packed_orientation(&g, &l, &ell, &a.r1, &a.r2, a.preferred, ctx.pipeline())?;
            let summary = vec![
                format!("H1 {}", edge_list(&outcome.h1)),
                format!("H2 {}", edge_list(&outcome.h2)),
                format!("absorber {}", edge_list(&outcome.absorber)),
                arcs(&outcome.orientation),
            ];
            built(Certificate::Packed { l, ell, r1: a.r1.clone(), r2: a.r2.clone(), outcome }, summary)
        }
        OrientMode::Robust => {
            let k = need("k", a.k)?;
            let opts = RobustOptions { seed: ctx.seed(), budget: a.retries, pipeline: ctx.pipeline() };
            let outcome = robust_arc_strong(&g, k, opts)?;
            let summary = vec![
                format!("tree {}", edge_list(&outcome.tree)),
                format!("{} attempts, {} repairs, arc-strong connectivity {}", outcome.attempts, outcome.repairs, outcome.arc_strong),
                arcs(&outcome.orientation),
            ];
            built(Certificate::Robust { k, outcome }, summary)
        }
        OrientMode::OddForest => {
            let m = need("m", a.m)?;
            let forest = odd_forest(&g, m)?;
            let summary = vec![format!("forest {}", edge_list(&forest.edges)), format!("degrees {:?}", forest.degrees)];
            built(Certificate::OddForest { graph: g, m, forest }, summary)
        }
        OrientMode::Factor => {
            let (k, r) = (need("k", a.k)?, need("r", a.r)?);
            let outcome = factor(&g, k, r, ctx.pipeline())?;
            let summary = vec![format!("removed forest {}", edge_list(&outcome.forest_edges)), format!("factor {}", edge_list(&outcome.factor))];
            built(Certificate::Factor { graph: g, k, r, outcome }, summary)
        }
    }
}

fn hypothesis(a: &HypothesisArgs, ctx: &Context) -> CliResult<Built> {
    let g = load(&a.graph)?;
    let l = || need_func("l", &a.l);
    let ell = || need_func("ell", &a.ell);
    let spec = match a.check {
        HypothesisArg::NecessaryRigid => HypothesisSpec::NecessaryRigid { ell: ell()? },
        HypothesisArg::Cor32 => {
            let k = need("k", a.k.as_deref())?;
            let k = k.parse().map_err(|_| CliError::Parse { what: "integer", input: k.into(), position: 0, message: "--k expects an integer".into() })?;
            HypothesisSpec::Cor32 { k }
        }
        HypothesisArg::SufficientRigid => HypothesisSpec::SufficientRigid { ell: ell()?, excluded: a.excluded },
        HypothesisArg::Pack61 => HypothesisSpec::Pack61 { l: l()?, ell: ell()?, excluded: a.excluded },
        HypothesisArg::Pack63 => HypothesisSpec::Pack63 {
            l: l()?,
            ell: ell()?,
            phi: Phi::Constant { value: rational("phi", need("phi", a.phi.as_deref())?)? },
            excluded: a.excluded,
        },
        HypothesisArg::Pack81 => {
            HypothesisSpec::Pack81 { l: l()?, ell: ell()?, k: rational("k", need("k", a.k.as_deref())?)?, rho: rationals("rho", &a.rho)? }
        }
        HypothesisArg::WeaklyConnected => HypothesisSpec::WeaklyConnected { ell: ell()?, l: l()? },
    };
    let budget = ctx.pipeline().budget;
    let report = hypothesis_check(&g, &spec, budget)?;
    let summary = match &report.witness {
        Some(w) => vec![format!("witness {w:?}")],
        None => vec![format!("{} holds", report.theorem)],
    };
    built(Certificate::Hypothesis { graph: g, spec, budget, report }, summary)
}

fn oracle_cmd(a: &OracleArgs, ctx: &Context) -> CliResult<Built> {
    let g = load(&a.graph)?;
    let f = || need_func("func", &a.func);
    let check = match a.check {
        OracleArg::Sparse => OracleSpec::Sparse { func: f()? },
        OracleArg::PartitionConnected => OracleSpec::PartitionConnected { func: f()? },
        OracleArg::Rigid => OracleSpec::Rigid { func: f()? },
        OracleArg::ArcConnected => {
            let roots = if a.roots.is_empty() { vec![0; g.n()] } else { a.roots.clone() };
            OracleSpec::ArcConnected { func: f()?, roots }
        }
        OracleArg::EdgeConnected => OracleSpec::EdgeConnected { func: f()? },
        OracleArg::WeaklyConnected => OracleSpec::WeaklyConnected { ell: need_func("ell", &a.ell)?, l: need_func("l", &a.l)? },
        OracleArg::MatroidAxioms => OracleSpec::MatroidAxioms { func: f()? },
    };
    let budget = ctx.oracle();
    let verdict = run_oracle(&g, &check, &budget)?;
    let summary = match &verdict.witness {
        Some(w) => vec![format!("witness {w:?}")],
        None => vec!["holds".into()],
    };
    built(Certificate::Oracle { graph: g, check, budget, verdict }, summary)
}

fn gen(a: &GenArgs, ctx: &Context) -> CliResult<Built> {
    let family = match a.family {
        FamilyArg::Complete => Family::Complete { n: need("n", a.n)? },
        FamilyArg::CompleteBipartite => Family::CompleteBipartite { a: need("a", a.a)?, b: need("b", a.b)? },
        FamilyArg::Circulant => Family::Circulant { n: need("n", a.n)?, offsets: a.offsets.clone() },
        FamilyArg::RandomSimple => Family::RandomSimple { n: need("n", a.n)?, m: need("m", a.m)? },
        FamilyArg::RandomRegular => Family::RandomRegular { n: need("n", a.n)?, r: need("r", a.r)? },
        FamilyArg::Doubled => {
            let Some(path) = &a.base else {
                return Err(CliError::Usage("--base is required here".into()));
            };
            Family::Doubled { base: GraphFile::read(path)?, multiplicity: a.multiplicity }
        }
    };
    let random = matches!(family, Family::RandomSimple { .. } | Family::RandomRegular { .. });
    if random && ctx.seed.is_none() {
        return Err(CliError::Usage("random families need an explicit --seed".into()));
    }
    let file = generate(&family, ctx.seed())?;
    if let Some(out) = &a.out {
        fs::write(out, file.canonical()).map_err(|e| CliError::File { path: out.clone(), message: e.to_string() })?;
    }
    let summary = vec![format!("{}: n = {}, m = {}", file.name, file.n, file.edges.len())];
    built(Certificate::Graph { file }, summary)
}

/// Re-derives a saved report's verdict from its certificate.
pub fn verify(a: &VerifyArgs) -> CliResult<Built> {
    let text = fs::read_to_string(&a.report).map_err(|e| CliError::File { path: a.report.clone(), message: e.to_string() })?;
    let report: Report = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        what: "report",
        input: a.report.display().to_string(),
        position: e.column(),
        message: e.to_string(),
    })?;
    let Some(cert) = &report.certificate else {
        return Err(CliError::Usage("report carries no certificate".into()));
    };
    let (reproduced, checks) = assess(cert)?;
    let summary = vec![format!("original verdict {}, reproduced {reproduced}", report.verdict)];
    built(Certificate::Verify { original: report.verdict, reproduced, checks }, summary)
}
