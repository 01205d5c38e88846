//! JSON input and Graphviz output for frames and models.
//!
//! A model file looks like
//! `{"worlds": 3, "order": [[0,1],[1,2]], "valuation": {"p": [2]}}`.
//! The order is closed reflexively and transitively on load.

use super::{KripkeError, KripkeFrame, KripkeModel, RawModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: usize,
    #[serde(default)]
    pub order: Vec<[usize; 2]>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<usize>>,
}

impl ModelFile {
    /// The raw model after reflexive-transitive closure of the order.
    pub fn to_raw(&self) -> Result<RawModel, KripkeError> {
        let pairs: Vec<(usize, usize)> = self.order.iter().map(|p| (p[0], p[1])).collect();
        let frame = KripkeFrame::from_order(self.worlds, &pairs)?;
        Ok(RawModel {
            worlds: self.worlds,
            relation: frame.pairs(),
            valuation: self.valuation.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        })
    }

    pub fn to_model(&self) -> Result<KripkeModel, KripkeError> {
        self.to_raw()?.build()
    }

    pub fn from_model(m: &KripkeModel) -> Self {
        ModelFile {
            worlds: m.len(),
            order: m.frame().strict_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            valuation: m
                .signature()
                .atoms()
                .map(|a| (m.signature().name(a).to_string(), m.valuation(a).iter().collect()))
                .collect(),
        }
    }
}

pub fn parse_model_json(text: &str) -> Result<KripkeModel, KripkeError> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| KripkeError::Malformed(e.to_string()))?;
    file.to_model()
}

pub fn model_to_json(m: &KripkeModel) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("model serializes")
}

/// Hasse diagram of a frame, successors drawn above.
pub fn frame_to_dot(f: &KripkeFrame) -> String {
    dot(f, |w| format!("w{w}"))
}

/// Hasse diagram of a model, nodes labeled with their true atoms.
pub fn model_to_dot(m: &KripkeModel) -> String {
    dot(m.frame(), |w| {
        let atoms: Vec<&str> = m
            .signature()
            .atoms()
            .filter(|&a| m.valuation(a).contains(w))
            .map(|a| m.signature().name(a))
            .collect();
        format!("w{w}: {}", atoms.join(","))
    })
}

fn dot(f: &KripkeFrame, label: impl Fn(usize) -> String) -> String {
    let mut s = String::from("digraph frame {\n  rankdir=BT;\n");
    for w in 0..f.len() {
        let _ = writeln!(s, "  w{w} [label=\"{}\"];", label(w));
    }
    for w in 0..f.len() {
        for v in f.immediate_successors(w).iter() {
            let _ = writeln!(s, "  w{w} -> w{v} [arrowhead=none];");
        }
    }
    s.push_str("}\n");
    s
}
