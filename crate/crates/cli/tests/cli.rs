use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use rigpack::oracle;
use rigpack::{MultiGraph, SetFunc};
use rigpack_cli::graphfile::GraphFile;
use rigpack_cli::report::{Certificate, Report, Status};
use rigpack_cli::{run, Outcome};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("rigpack").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> (Report, i32) {
    let out = cli(args);
    (out.report.expect("a report"), out.code)
}

fn write_graph(dir: &Path, name: &str, g: &MultiGraph) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, GraphFile::from_graph(name, g).canonical()).unwrap();
    path
}

fn c4() -> MultiGraph {
    MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}

#[test]
fn rigid_k4_has_a_five_edge_basis() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "k4", &MultiGraph::complete(4));
    let (rep, code) = report(&["rigid", "--graph", k4.to_str().unwrap(), "--func", "lmn:2,3"]);
    assert_eq!(code, 0);
    assert_eq!(rep.verdict, Status::True);
    let Some(Certificate::Rigid { report, .. }) = rep.certificate else { panic!() };
    assert_eq!(report.basis.len(), 5);
    assert_eq!(oracle::bf_rank(&MultiGraph::complete(4), &SetFunc::lmn(2, 3)).unwrap(), 5);
}

#[test]
fn pack_c4_is_deficient_with_a_structure_partition() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "c4", &c4());
    let (rep, code) = report(&["pack", "--graph", g.to_str().unwrap(), "--funcs", "lmn:1,1", "lmn:1,1"]);
    assert_eq!(code, 1);
    let Some(Certificate::Pack { packing, structure }) = rep.certificate else { panic!() };
    assert_eq!(packing.covered(), 4);
    let s = structure.expect("structure partition");
    assert_eq!(s.partition.len(), 4);
    assert_eq!(oracle::bf_union_bound(&c4(), &[SetFunc::lmn(1, 1), SetFunc::lmn(1, 1)]).unwrap(), 4);
}

#[test]
fn robust_orientation_of_k13_verifies_three_properties() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k13", &MultiGraph::complete(13));
    let (rep, code) = report(&["orient", "--graph", g.to_str().unwrap(), "--mode", "robust", "--k", "1"]);
    assert_eq!(code, 0, "{:?}", rep.error);
    assert_eq!(rep.properties.len(), 3);
    assert!(rep.properties.iter().all(|p| p.holds));
}

#[test]
fn generators_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = cli(&["gen", "--family", "random-regular", "--n", "10", "--r", "4", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert_eq!(out.code, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let g = GraphFile::read(&a).unwrap().graph().unwrap();
    assert!(g.is_simple() && g.degrees().iter().all(|&d| d == 4));

    assert_eq!(cli(&["gen", "--family", "random-regular", "--n", "10", "--r", "4"]).code, 2);
    assert_eq!(cli(&["gen", "--family", "random-regular", "--n", "5", "--r", "3", "--seed", "1"]).code, 2);

    let (rep, _) = report(&["gen", "--family", "circulant", "--n", "8", "--offsets", "1,2"]);
    let Some(Certificate::Graph { file }) = rep.certificate else { panic!() };
    let g = file.graph().unwrap();
    assert_eq!(g.m(), 16);
    assert!(g.degrees().iter().all(|&d| d == 4));
    let (rep, _) = report(&["gen", "--family", "complete", "--n", "4"]);
    let Some(Certificate::Graph { file }) = rep.certificate else { panic!() };
    assert_eq!(file.edges.len(), 6);
}

#[test]
fn canonical_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let base = write_graph(dir.path(), "k3", &MultiGraph::complete(3));
    let out = dir.path().join("k3x2.json");
    let r = cli(&["gen", "--family", "doubled", "--base", base.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(GraphFile::parse(&text).unwrap().canonical(), text);
    assert_eq!(GraphFile::read(&out).unwrap().edges.len(), 6);
}

#[test]
fn every_report_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let k4 = write_graph(d, "k4", &MultiGraph::complete(4));
    let k5 = write_graph(d, "k5", &MultiGraph::complete(5));
    let k6 = write_graph(d, "k6", &MultiGraph::complete(6));
    let k9 = write_graph(d, "k9", &MultiGraph::complete(9));
    let cyc = write_graph(d, "c4", &c4());
    let p3 = write_graph(d, "p3", &MultiGraph::new(3, &[(0, 1), (1, 2)]).unwrap());
    let circ = {
        let out = d.join("c8.json");
        cli(&["gen", "--family", "circulant", "--n", "8", "--offsets", "1,2", "--out", out.to_str().unwrap()]);
        out
    };
    let s = |p: &PathBuf| p.to_str().unwrap().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["sparse".into(), "--graph".into(), s(&k4), "--func".into(), "lmn:2,3".into()],
        vec!["sparse".into(), "--graph".into(), s(&k5), "--func".into(), "lmn:2,3".into()],
        vec!["rigid".into(), "--graph".into(), s(&cyc), "--func".into(), "lmn:2,3".into()],
        vec!["components".into(), "--graph".into(), s(&cyc), "--func".into(), "lmn:2,3".into()],
        vec!["pack".into(), "--graph".into(), s(&k4), "--funcs".into(), "lmn:1,1".into(), "lmn:1,1".into()],
        vec!["pack".into(), "--graph".into(), s(&cyc), "--funcs".into(), "lmn:1,1".into(), "lmn:1,1".into()],
        vec!["pack".into(), "--graph".into(), s(&k9), "--preset".into(), "thm10-1".into(), "--k".into(), "2".into()],
        vec!["pack".into(), "--graph".into(), s(&k6), "--l".into(), "lmn:1,1".into(), "--ell".into(), "lmn:2,3".into(), "--force".into()],
        vec!["decompose".into(), "--graph".into(), s(&k5), "--func".into(), "lmn:1,1".into(), "--p".into(), "2".into()],
        vec!["orient".into(), "--graph".into(), s(&k4), "--mode".into(), "hakimi".into(), "--targets".into(), "0,1,2,3".into()],
        vec!["orient".into(), "--graph".into(), s(&k4), "--mode".into(), "hakimi".into(), "--targets".into(), "0,0,3,3".into()],
        vec!["orient".into(), "--graph".into(), s(&k5), "--mode".into(), "eulerian".into()],
        vec!["orient".into(), "--graph".into(), s(&k4), "--mode".into(), "smooth".into(), "--preferred".into(), "2".into()],
        vec!["orient".into(), "--graph".into(), s(&cyc), "--mode".into(), "rigid".into(), "--func".into(), "mod:lmn:1,1:V=0".into()],
        vec!["orient".into(), "--graph".into(), s(&p3), "--mode".into(), "rigid".into(), "--func".into(), "mod:lmn:1,1:V=0".into()],
        vec![
            "orient".into(), "--graph".into(), s(&k9), "--mode".into(), "packed".into(), "--l".into(), "lmn:1,1".into(),
            "--ell".into(), "lmn:2,3".into(), "--r1".into(), "1,0,0,0,0,0,0,0,0".into(), "--r2".into(), "2,1,0,0,0,0,0,0,0".into(),
            "--preferred".into(), "0".into(),
        ],
        vec!["orient".into(), "--graph".into(), s(&k4), "--mode".into(), "odd-forest".into(), "--m".into(), "2".into()],
        vec!["orient".into(), "--graph".into(), s(&circ), "--mode".into(), "factor".into(), "--k".into(), "1".into(), "--r".into(), "4".into()],
        vec!["hypothesis".into(), "--graph".into(), s(&k6), "--check".into(), "cor32".into(), "--k".into(), "2".into()],
        vec!["hypothesis".into(), "--graph".into(), s(&cyc), "--check".into(), "pack61".into(), "--l".into(), "lmn:1,1".into(), "--ell".into(), "lmn:1,1".into()],
        vec!["oracle".into(), "--graph".into(), s(&k4), "--check".into(), "partition-connected".into(), "--func".into(), "lmn:1,1".into()],
        vec!["oracle".into(), "--graph".into(), s(&cyc), "--check".into(), "arc-connected".into(), "--func".into(), "const:1".into()],
        vec!["gen".into(), "--family".into(), "random-simple".into(), "--n".into(), "6".into(), "--m".into(), "8".into(), "--seed".into(), "3".into()],
    ];
    for (i, args) in runs.iter().enumerate() {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = cli(&argv);
        assert!(out.code < 2, "{argv:?}: {}", out.stdout);
        let path = d.join(format!("report{i}.json"));
        fs::write(&path, &out.stdout).unwrap();
        let (rep, code) = report(&["verify", "--report", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{argv:?}: {:?}", rep.properties);
        let Some(Certificate::Verify { original, reproduced, .. }) = rep.certificate else { panic!() };
        assert_eq!(original, reproduced);
        assert_eq!(original.exit_code(), out.code);
    }
}

#[test]
fn tampered_reports_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "k4", &MultiGraph::complete(4));
    let out = cli(&["orient", "--graph", k4.to_str().unwrap(), "--mode", "hakimi", "--targets", "0,1,2,3"]);
    let mut rep: Report = serde_json::from_str(&out.stdout).unwrap();
    let Some(Certificate::Hakimi { targets, .. }) = &mut rep.certificate else { panic!() };
    targets.swap(0, 3);
    let path = dir.path().join("bad.json");
    fs::write(&path, serde_json::to_string(&rep).unwrap()).unwrap();
    let (v, code) = report(&["verify", "--report", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v.properties.iter().any(|p| !p.holds));
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "k4", &MultiGraph::complete(4));
    let out = cli(&["rigid", "--graph", k4.to_str().unwrap(), "--func", "lmn:2;3"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("position 5"), "{}", out.stderr);
    assert_eq!(cli(&["rigid", "--graph", "missing.json", "--func", "lmn:2,3"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    let cyc = write_graph(dir.path(), "c4", &c4());
    let out = cli(&["orient", "--graph", cyc.to_str().unwrap(), "--mode", "robust", "--k", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("hypothesis"), "{}", out.stderr);
}

#[test]
fn human_format_prints_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "k4", &MultiGraph::complete(4));
    let out = cli(&["sparse", "--graph", k4.to_str().unwrap(), "--func", "lmn:2,3", "--format", "human"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("verdict    false"));
    assert!(out.stdout.contains("witness spans more than its bound  yes"));
}

#[test]
fn binary_honours_the_budget_variable() {
    let dir = tempfile::tempdir().unwrap();
    let k9 = write_graph(dir.path(), "k9", &MultiGraph::complete(9));
    let bin = env!("CARGO_BIN_EXE_rigpack");
    let args = ["oracle", "--graph", k9.to_str().unwrap(), "--check", "sparse", "--func", "lmn:2,3"];
    let small = Command::new(bin).args(args).env("RIGPACK_BUDGET", "8").output().unwrap();
    assert_eq!(small.status.code(), Some(2));
    let large = Command::new(bin).args(args).env("RIGPACK_BUDGET", "9").output().unwrap();
    assert_eq!(large.status.code(), Some(1));
    let rep: Report = serde_json::from_slice(&large.stdout).unwrap();
    assert_eq!(rep.verdict, Status::False);
}
