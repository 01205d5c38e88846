//! Reading models, formulas and teams from the command line.

use std::fs;
use std::path::Path;
use teamkit::bits::WorldSet;
use teamkit::formula::{parse, parse_interning, Formula, Signature};
use teamkit::genframes::{builtin, GeneralFrame, GeneralModel, GeneralModelFile, JoinTable};
use teamkit::kripke::io::ModelFile;
use teamkit::kripke::KripkeModel;

pub type Usage = String;

pub fn read(path: &Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

pub fn model_file(path: &Path) -> Result<ModelFile, Usage> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn model(path: &Path, cap: usize) -> Result<KripkeModel, Usage> {
    let file = model_file(path)?;
    if file.worlds > cap {
        return Err(format!("model has {} worlds, above the cap {cap} (see --cap)", file.worlds));
    }
    file.to_model().map_err(|e| format!("{}: {e}", path.display()))
}

pub fn general_file(path: &Path) -> Result<GeneralModelFile, Usage> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// The frame and join table of a general model file, with the frame
/// conditions left unchecked. The inner error is a bad join table.
pub fn general_unchecked(path: &Path) -> Result<Result<GeneralFrame, String>, Usage> {
    let file = general_file(path)?;
    let m = file.model.to_model().map_err(|e| format!("{}: {e}", path.display()))?;
    let n = m.len();
    let table = match &file.join {
        None => Ok(JoinTable::union(n)),
        Some(rows) => rows
            .iter()
            .flatten()
            .map(|&x| u8::try_from(x).map_err(|_| format!("join entry {x} is not a team code")))
            .collect::<Result<Vec<u8>, _>>()
            .and_then(|flat| JoinTable::new(n, flat).map_err(|e| e.to_string())),
    };
    Ok(table.and_then(|t| GeneralFrame::unchecked(m.frame().clone(), t).map_err(|e| e.to_string())))
}

/// A general model from a file or a builtin name.
pub fn general_model(path: Option<&Path>, name: Option<&str>) -> Result<GeneralModel, Usage> {
    match (path, name) {
        (Some(p), None) => general_file(p)?.to_model().map_err(|e| format!("{}: {e}", p.display())),
        (None, Some(n)) => builtin(n).map_err(|e| e.to_string()),
        _ => Err("give exactly one of --model and --builtin".into()),
    }
}

pub fn formula_in(src: &str, sig: &Signature) -> Result<Formula, Usage> {
    parse(src, sig).map_err(|e| format!("formula: {e}"))
}

/// Parses a formula, collecting atom names in order of appearance.
pub fn formula(src: &str) -> Result<(Formula, Signature), Usage> {
    let mut sig = Signature::new(Vec::<String>::new());
    let f = parse_interning(src, &mut sig).map_err(|e| format!("formula: {e}"))?;
    Ok((f, sig))
}

/// A team as a binary literal (`0b101`, world 0 is the last digit) or a
/// list of worlds (`0,2`, `{0,2}`, `[0,2]`, `{}`).
pub fn team(src: &str, worlds: usize) -> Result<WorldSet, Usage> {
    let s = src.trim();
    let t = if let Some(bits) = s.strip_prefix("0b") {
        let digits: String = bits.chars().filter(|&c| c != '_').collect();
        if digits.is_empty() || digits.len() > 64 {
            return Err(format!("bad team literal {src:?}"));
        }
        WorldSet(u64::from_str_radix(&digits, 2).map_err(|_| format!("bad team literal {src:?}"))?)
    } else {
        let inner = s.trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
        let mut t = WorldSet::EMPTY;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let w: usize = part.parse().map_err(|_| format!("bad world {part:?} in team {src:?}"))?;
            if w >= 64 {
                return Err(format!("world {w} out of range"));
            }
            t.insert(w);
        }
        t
    };
    if !t.is_subset(WorldSet::full(worlds)) {
        return Err(format!("team {src} mentions a world outside 0..{worlds}"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn team_forms() {
        assert_eq!(team("0b011", 3).unwrap(), WorldSet(3));
        assert_eq!(team("{0,1}", 3).unwrap(), WorldSet(3));
        assert_eq!(team("[2]", 3).unwrap(), WorldSet(4));
        assert_eq!(team("0, 2", 3).unwrap(), WorldSet(5));
        assert_eq!(team("{}", 3).unwrap(), WorldSet::EMPTY);
        assert!(team("0b1000", 3).is_err());
        assert!(team("x", 3).is_err());
    }
}
