use std::fmt::{self, Write as _};

use rigpack::oracle::{OracleBudget, Verdict};
use rigpack::orientation::{EquivOutcome, EulerMode, FactorOutcome, HakimiOutcome, OddForest, Orientation, PackedOrientation, RobustOutcome};
use rigpack::packing::{
    Decomposition, DegreeMode, HypothesisReport, HypothesisSpec, PartitionRigidOutcome, Packing, Preset, PresetOutcome,
    StructureCertificate,
};
use rigpack::sparsity::{RankReport, Sparsity};
use rigpack::{EdgeId, MultiGraph, SetFunc, VertexSet};
use serde::{Deserialize, Serialize};

use crate::graphfile::GraphFile;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    True,
    False,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::True => "true",
            Status::False => "false",
            Status::Error => "error",
        })
    }
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::True => 0,
            Status::False => 1,
            Status::Error => 2,
        }
    }
}

/// A named fact re-derived from a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Property {
    pub name: String,
    pub holds: bool,
}

impl Property {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Property { name: name.into(), holds }
    }
}

/// Owned form of an oracle check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum OracleSpec {
    Sparse { func: SetFunc },
    PartitionConnected { func: SetFunc },
    Rigid { func: SetFunc },
    /// Graph edges read as arcs `u -> v`.
    ArcConnected { func: SetFunc, roots: Vec<i64> },
    EdgeConnected { func: SetFunc },
    WeaklyConnected { ell: SetFunc, l: SetFunc },
    MatroidAxioms { func: SetFunc },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Sparse { graph: MultiGraph, func: SetFunc, result: Sparsity },
    Rigid { graph: MultiGraph, func: SetFunc, report: RankReport },
    Components { graph: MultiGraph, func: SetFunc, components: Vec<VertexSet> },
    Pack { packing: Packing, structure: Option<StructureCertificate> },
    PartitionRigid { l: SetFunc, ell: SetFunc, mode: DegreeMode, outcome: PartitionRigidOutcome },
    Preset { preset: Preset, outcome: PresetOutcome },
    Decompose { graph: MultiGraph, func: SetFunc, p: usize, decomposition: Decomposition },
    Hakimi { graph: MultiGraph, targets: Vec<i64>, outcome: HakimiOutcome },
    Euler { mode: EulerMode, preferred: Option<usize>, orientation: Orientation },
    RigidOrientation { graph: MultiGraph, func: SetFunc, outcome: EquivOutcome },
    Packed { l: SetFunc, ell: SetFunc, r1: Vec<i64>, r2: Vec<i64>, outcome: PackedOrientation },
    Robust { k: usize, outcome: RobustOutcome },
    OddForest { graph: MultiGraph, m: usize, forest: OddForest },
    Factor { graph: MultiGraph, k: usize, r: usize, outcome: FactorOutcome },
    Hypothesis { graph: MultiGraph, spec: HypothesisSpec, budget: usize, report: HypothesisReport },
    Oracle { graph: MultiGraph, check: OracleSpec, budget: OracleBudget, verdict: Verdict },
    Graph { file: GraphFile },
    Verify { original: Status, reproduced: Status, checks: Vec<Property> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verdict: Status,
    pub summary: Vec<String>,
    pub properties: Vec<Property>,
    pub certificate: Option<Certificate>,
    pub error: Option<String>,
    pub version: String,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let verdict = self.verdict;
        let _ = writeln!(out, "{:<10} {}", "command", self.command.join(" "));
        let _ = writeln!(out, "{:<10} {verdict}", "verdict");
        if let Some(e) = &self.error {
            let _ = writeln!(out, "{:<10} {e}", "error");
        }
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        if !self.properties.is_empty() {
            let width = self.properties.iter().map(|p| p.name.len()).max().unwrap_or(0);
            let _ = writeln!(out, "{:<width$}  holds", "property");
            for p in &self.properties {
                let _ = writeln!(out, "{:<width$}  {}", p.name, if p.holds { "yes" } else { "NO" });
            }
        }
        let _ = writeln!(out, "{:<10} {} (seed {}, {} ms)", "version", self.version, self.seed, self.elapsed_ms);
        out
    }
}

pub fn edge_list(ids: &[EdgeId]) -> String {
    let parts: Vec<String> = ids.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(","))
}
