use std::fs;
use std::path::Path;

use rigpack::MultiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// On-disk graph document. Edge order fixes edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub name: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GraphFile {
    pub fn from_graph(name: impl Into<String>, g: &MultiGraph) -> Self {
        GraphFile { name: name.into(), n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(), names: None }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            what: "graph file",
            input: text.lines().next().unwrap_or_default().chars().take(40).collect(),
            position: offset(text, e.line(), e.column()),
            message: e.to_string(),
        })?;
        file.graph()?;
        if let Some(names) = &file.names {
            if names.len() != file.n {
                return Err(CliError::Usage(format!("graph file has {} vertex names for n = {}", names.len(), file.n)));
            }
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::File { path: path.into(), message: e.to_string() })?;
        GraphFile::parse(&text).map_err(|e| CliError::File { path: path.into(), message: e.to_string() })
    }

    pub fn graph(&self) -> CliResult<MultiGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Ok(MultiGraph::new(self.n, &edges)?)
    }

    /// Compact JSON with a trailing newline.
    pub fn canonical(&self) -> String {
        let mut s = serde_json::to_string(self).expect("graph files serialize");
        s.push('\n');
        s
    }

    pub fn label(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }
}

fn offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let before: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    before + column.saturating_sub(1)
}
