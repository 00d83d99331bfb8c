//! JSON file formats.
//!
//! ```text
//! graph:     { "left": [ids], "right": [ids], "edges": [[u, v], …] }
//! stable:    graph + "prefs": { id: [neighbour ids, best first], … }
//! weighted:  graph + "weights": [value per edge, in edge order]
//! family:    { "ground": [ids], "sets": [[ids], …] }
//! report:    { "kind": …, "family": family, "witnesses": { "{a,b}": [left ids] } }
//! ```
//!
//! Weights are JSON integers or strings holding an integer, a decimal or a
//! fraction. Edge order in the file fixes the edge indices.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::antimatroid::{SetFamily, SetMask};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::induced::{InducedFamilyReport, InstanceKind};
use crate::stable::StableMatchingInstance;
use crate::weighted::{Weight, WeightedInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphFile {
    pub fn from_graph(g: &BipartiteGraph) -> Self {
        GraphFile {
            left: g.left().to_vec(),
            right: g.right().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| (g.left()[e.left].clone(), g.right()[e.right].clone()))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        BipartiteGraph::new(self.left.clone(), self.right.clone(), self.edges.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableFile {
    #[serde(flatten)]
    pub graph: GraphFile,
    pub prefs: BTreeMap<String, Vec<String>>,
}

impl StableFile {
    pub fn from_instance(inst: &StableMatchingInstance) -> Self {
        StableFile {
            graph: GraphFile::from_graph(inst.graph()),
            prefs: inst.rankings(),
        }
    }

    pub fn to_instance(&self) -> Result<StableMatchingInstance> {
        StableMatchingInstance::new(self.graph.to_graph()?, &self.prefs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightValue {
    Integer(i64),
    Text(String),
}

impl WeightValue {
    pub fn from_weight(w: &Weight) -> Self {
        match w.to_integer().and_then(|i| i64::try_from(i).ok()) {
            Some(i) => WeightValue::Integer(i),
            None => WeightValue::Text(w.to_string()),
        }
    }

    pub fn to_weight(&self) -> Result<Weight> {
        match self {
            WeightValue::Integer(i) => Ok(Weight::from(*i)),
            WeightValue::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedFile {
    #[serde(flatten)]
    pub graph: GraphFile,
    pub weights: Vec<WeightValue>,
}

impl WeightedFile {
    pub fn from_instance(inst: &WeightedInstance) -> Self {
        WeightedFile {
            graph: GraphFile::from_graph(inst.graph()),
            weights: inst
                .weights()
                .values()
                .iter()
                .map(WeightValue::from_weight)
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<WeightedInstance> {
        let weights = self
            .weights
            .iter()
            .map(WeightValue::to_weight)
            .collect::<Result<Vec<_>>>()?;
        WeightedInstance::new(self.graph.to_graph()?, weights)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub ground: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

impl FamilyFile {
    pub fn from_family(f: &SetFamily) -> Self {
        FamilyFile {
            ground: f.ground().to_vec(),
            sets: f.sets(),
        }
    }

    pub fn to_family(&self) -> Result<SetFamily> {
        SetFamily::new(&self.ground, &self.sets)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportFile {
    pub kind: InstanceKind,
    pub family: FamilyFile,
    pub witnesses: BTreeMap<String, Vec<String>>,
}

/// `{a,b}` style key for a member.
pub fn member_key(family: &SetFamily, member: SetMask) -> String {
    format!("{{{}}}", family.names(member).join(","))
}

impl ReportFile {
    pub fn from_report(r: &InducedFamilyReport) -> Self {
        ReportFile {
            kind: r.kind,
            family: FamilyFile::from_family(&r.family),
            witnesses: r
                .witnesses
                .iter()
                .map(|(&m, set)| {
                    let names = set.iter().map(|u| r.left[u].clone()).collect();
                    (member_key(&r.family, m), names)
                })
                .collect(),
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    parse::<GraphFile>(text)?.to_graph()
}

pub fn parse_stable(text: &str) -> Result<StableMatchingInstance> {
    parse::<StableFile>(text)?.to_instance()
}

pub fn parse_weighted(text: &str) -> Result<WeightedInstance> {
    parse::<WeightedFile>(text)?.to_instance()
}

pub fn parse_family(text: &str) -> Result<SetFamily> {
    parse::<FamilyFile>(text)?.to_family()
}

/// Writes `value` as pretty JSON to `dir/name.json`, creating `dir`.
pub fn write_counterexample(
    dir: &Path,
    name: &str,
    value: &serde_json::Value,
) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.json"));
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}
