//! JSON input for general models and Graphviz output for their
//! semilattices.
//!
//! A general model file is a model file with an optional `"join"` field:
//! `2^n` rows of team codes, row `t` column `s` holding `t ⋓ s`. Without
//! it the join is union.

use super::{GenFrameError, GeneralFrame, GeneralModel, JoinTable};
use crate::bits::WorldSet;
use crate::kripke::io::ModelFile;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralModelFile {
    #[serde(flatten)]
    pub model: ModelFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<usize>>>,
}

impl GeneralModelFile {
    pub fn to_model(&self) -> Result<GeneralModel, GenFrameError> {
        let m = self.model.to_model()?;
        let n = m.len();
        let table = match &self.join {
            None => JoinTable::union(n),
            Some(rows) => {
                let flat: Vec<u8> = rows
                    .iter()
                    .flatten()
                    .map(|&x| u8::try_from(x).map_err(|_| GenFrameError::OutOfRange(x)))
                    .collect::<Result<_, _>>()?;
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(GenFrameError::Malformed("join table is not square".into()));
                }
                JoinTable::new(n, flat)?
            }
        };
        let g = GeneralFrame::new(m.frame().clone(), table)?;
        GeneralModel::new(g, m.signature().clone(), m.valuations().to_vec())
    }

    pub fn from_model(m: &GeneralModel) -> Self {
        let j = m.frame().join_table();
        GeneralModelFile {
            model: ModelFile::from_model(m.kripke()),
            join: (!j.is_union()).then(|| j.rows()),
        }
    }
}

pub fn parse_general_model_json(text: &str) -> Result<GeneralModel, GenFrameError> {
    let file: GeneralModelFile = serde_json::from_str(text).map_err(|e| GenFrameError::Malformed(e.to_string()))?;
    file.to_model()
}

pub fn general_model_to_json(m: &GeneralModel) -> String {
    serde_json::to_string_pretty(&GeneralModelFile::from_model(m)).expect("model serializes")
}

/// The semilattice drawn with `∅` on top and `≼` growing downward, with
/// the non-reflexive pairs of `R°` as dashed arrows.
pub fn general_frame_to_dot(g: &GeneralFrame) -> String {
    let j = g.join_table();
    let mut s = String::from("digraph semilattice {\n  rankdir=TB;\n");
    for t in 0..g.n_teams() {
        let _ = writeln!(s, "  t{t} [label=\"{}\"];", WorldSet(t as u64));
    }
    for (a, b) in j.hasse() {
        let _ = writeln!(s, "  t{a} -> t{b} [dir=none];");
    }
    let lift = g.lifted();
    for t in 0..g.n_teams() {
        for u in lift.row(WorldSet(t as u64)).iter() {
            if u == t {
                continue;
            }
            let _ = writeln!(s, "  t{t} -> t{u} [style=dashed, constraint=false];");
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genframes::builtin;

    #[test]
    fn json_round_trip() {
        for name in ["example_frame", "ce_split_n5"] {
            let m = builtin(name).unwrap();
            let back = parse_general_model_json(&general_model_to_json(&m)).unwrap();
            assert_eq!(back.frame().join_table(), m.frame().join_table());
            assert_eq!(back.kripke().frame(), m.kripke().frame());
        }
    }

    #[test]
    fn join_defaults_to_union() {
        let m = parse_general_model_json(r#"{"worlds": 2, "order": [[0, 1]], "valuation": {"p": [1]}}"#).unwrap();
        assert!(m.frame().join_table().is_union());
    }

    #[test]
    fn invalid_tables_rejected() {
        let text = r#"{"worlds": 1, "join": [[0, 1], [1, 0]]}"#;
        assert!(matches!(parse_general_model_json(text), Err(GenFrameError::NotIdempotent(1))));
    }

    #[test]
    fn dot_shows_example_arrows() {
        let dot = general_frame_to_dot(builtin("example_frame").unwrap().frame());
        assert!(dot.contains("t1 -> t2 [style=dashed"));
        assert!(dot.contains("t0 -> t1 [dir=none]"));
    }
}
