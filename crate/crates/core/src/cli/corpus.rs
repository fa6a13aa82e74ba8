use serde::{Deserialize, Serialize};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::jones::jones;
use crate::spantree::TreeModel;

const CORPUS: &str = include_str!("corpus.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub writhe: i64,
    pub k: i64,
    pub trees: usize,
    pub jones: String,
    /// `worked-example` or `oracle` (recomputed by `verify --regen`).
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    pub notes: String,
    pub alternating: bool,
    /// Number of crossing changes away from an alternating diagram.
    pub almost_alternating: Option<usize>,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        Ok(LinkDiagram::parse(&self.pd)?.with_label(self.name.clone()))
    }

    /// Expected data recomputed from the diagram, keeping the source tag.
    pub fn regenerate(&self) -> Result<CorpusEntry> {
        let d = self.diagram()?;
        let model = TreeModel::new(&d)?;
        let mut e = self.clone();
        e.expected = Expected {
            writhe: d.writhe(),
            k: model.k(),
            trees: model.len(),
            jones: jones(&d)?.to_string(),
            source: self.expected.source.clone(),
        };
        Ok(e)
    }
}

pub fn builtin() -> Vec<CorpusEntry> {
    serde_json::from_str(CORPUS).expect("embedded corpus is valid JSON")
}

pub fn find(name: &str) -> Result<CorpusEntry> {
    builtin()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownKnot(name.to_string()))
}

/// A corpus name or a PD code.
pub fn resolve(knot: &str) -> Result<LinkDiagram> {
    if knot.trim_start().starts_with("PD") {
        LinkDiagram::parse(knot)
    } else {
        find(knot)?.diagram()
    }
}
