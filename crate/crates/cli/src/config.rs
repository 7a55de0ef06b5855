//! Model configuration files.

use std::sync::Arc;

use serde::Deserialize;

use equimirror_core::groups::{IntMatrix, MatrixGroup, DEFAULT_CAP};
use equimirror_core::polytope::{ConeComplex, LatticePolytope, DIM_CAP};

use crate::builtins::Builtin;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum GroupEntry {
    /// "central", or a permutation in cycle notation
    Word(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Builtin { kind: Builtin, d: usize },
    Inline { vertices: Vec<Vec<i64>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    pub group: usize,
    pub dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { group: DEFAULT_CAP, dim: DIM_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelConfig {
    pub name: String,
    pub source: Source,
    pub group: Vec<GroupEntry>,
    pub commands: Vec<String>,
    pub caps: Caps,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    name: Option<String>,
    builtin: Option<String>,
    d: Option<usize>,
    vertices: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    group: Vec<GroupEntry>,
    #[serde(default)]
    commands: Vec<String>,
    cap_group: Option<usize>,
    cap_dim: Option<usize>,
}

/// 1-based line of the first occurrence of `"key"`, for error messages.
fn line_of(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map_or(1, |i| i + 1)
}

pub fn parse_config(text: &str) -> Result<ModelConfig, CliError> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| CliError::Config(format!("line {}: {e}", e.line())))?;
    let err = |key: &str, msg: String| CliError::Config(format!("line {}: {msg}", line_of(text, key)));
    let source = match (&raw.builtin, &raw.vertices) {
        (Some(b), None) => {
            let kind = Builtin::parse(b).ok_or_else(|| err("builtin", format!("unknown builtin {b:?}; expected cube, cross, fermat or simplex")))?;
            let d = raw.d.ok_or_else(|| err("builtin", "builtin models need \"d\"".into()))?;
            let lo = if kind == Builtin::Fermat { 2 } else { 1 };
            if d < lo {
                return Err(err("d", format!("d = {d} is too small for {b}")));
            }
            Source::Builtin { kind, d }
        }
        (None, Some(v)) => {
            if raw.d.is_some() {
                return Err(err("d", "\"d\" is only used with builtins".into()));
            }
            if v.is_empty() {
                return Err(err("vertices", "empty vertex list".into()));
            }
            Source::Inline { vertices: v.clone() }
        }
        (Some(_), Some(_)) => return Err(err("vertices", "give either \"builtin\" or \"vertices\", not both".into())),
        (None, None) => return Err(CliError::Config("line 1: missing model source; give \"builtin\" or \"vertices\"".into())),
    };
    for c in &raw.commands {
        if !crate::commands::COMMANDS.contains(&c.as_str()) {
            return Err(err("commands", format!("unknown command {c:?}")));
        }
    }
    let caps = Caps {
        group: raw.cap_group.unwrap_or(DEFAULT_CAP),
        dim: raw.cap_dim.unwrap_or(DIM_CAP).min(DIM_CAP),
    };
    let name = raw.name.clone().unwrap_or_else(|| match &source {
        Source::Builtin { kind, d } => format!("{}{d}", kind.name()),
        Source::Inline { .. } => "inline".to_string(),
    });
    Ok(ModelConfig { name, source, group: raw.group, commands: raw.commands, caps })
}

impl ModelConfig {
    pub fn builtin(kind: Builtin, d: usize, group: &[&str]) -> ModelConfig {
        ModelConfig {
            name: format!("{}{d}", kind.name()),
            source: Source::Builtin { kind, d },
            group: group.iter().map(|s| GroupEntry::Word(s.to_string())).collect(),
            commands: Vec::new(),
            caps: Caps::default(),
        }
    }

    pub fn polytope(&self) -> Result<LatticePolytope, CliError> {
        let d = match &self.source {
            Source::Builtin { d, .. } => *d,
            Source::Inline { vertices } => vertices[0].len(),
        };
        if d > self.caps.dim {
            return Err(CliError::Cap(format!("dimension {d} exceeds the cap {}", self.caps.dim)));
        }
        let p = match &self.source {
            Source::Builtin { kind, d } => kind.polytope(*d),
            Source::Inline { vertices } => LatticePolytope::from_points(vertices),
        };
        p.map_err(CliError::from_model)
    }

    fn generator(&self, d: usize, entry: &GroupEntry) -> Result<IntMatrix, CliError> {
        match entry {
            GroupEntry::Word(w) if w == "central" => Ok(IntMatrix::identity(d).scaled(-1).extend_affine()),
            GroupEntry::Word(w) => {
                let r = match &self.source {
                    Source::Builtin { kind, d } => kind.permutation(*d, w),
                    Source::Inline { .. } => equimirror_core::groups::parse_cycles(w, d).map(|p| equimirror_core::groups::perm_matrix(&p).extend_affine()),
                };
                r.map_err(|e| CliError::Config(format!("group entry {w:?}: {e}")))
            }
            GroupEntry::Matrix(rows) => {
                let m = IntMatrix::try_from_rows(rows).ok_or_else(|| CliError::Config(format!("group matrix {rows:?} is not square")))?;
                if m.rank() == d {
                    Ok(m.extend_affine())
                } else if m.rank() == d + 1 {
                    Ok(m)
                } else {
                    Err(CliError::Config(format!("group matrix of size {} does not fit dimension {d}", m.rank())))
                }
            }
        }
    }

    /// Polytope, group and face lattice.
    pub fn build(&self) -> Result<ConeComplex, CliError> {
        let p = self.polytope()?;
        let d = p.dim();
        let gens = self.group.iter().map(|g| self.generator(d, g)).collect::<Result<Vec<_>, _>>()?;
        let group = MatrixGroup::generate(d + 1, &gens, self.caps.group).map_err(CliError::from_model)?;
        ConeComplex::build(p, Arc::new(group)).map_err(CliError::from_model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_with_central_group() {
        let c = parse_config(r#"{"builtin":"cube","d":4,"group":["central"]}"#).unwrap();
        assert_eq!(c.name, "cube4");
        let k = c.build().unwrap();
        assert_eq!(k.group().order(), 2);
    }

    #[test]
    fn quintic_with_a5() {
        let c = parse_config(r#"{"builtin":"fermat","d":4,"group":["(12)(34)","(12345)"]}"#).unwrap();
        let k = c.build().unwrap();
        assert_eq!(k.group().order(), 60);
        assert_eq!(k.group().num_classes(), 5);
    }

    #[test]
    fn inline_square() {
        let c = parse_config("{\"vertices\": [[-1,-1],[1,-1],[-1,1],[1,1]], \"group\": []}").unwrap();
        let k = c.build().unwrap();
        assert_eq!(k.group().order(), 1);
        assert_eq!(k.polytope().vertices().len(), 4);
    }

    #[test]
    fn errors_name_the_line() {
        let text = "{\n  \"builtin\": \"cube\",\n  \"d\": 3,\n  \"colour\": 1\n}";
        match parse_config(text) {
            Err(CliError::Config(m)) => assert!(m.starts_with("line 4"), "{m}"),
            other => panic!("{other:?}"),
        }
        let text = "{\n  \"builtin\": \"cube\",\n  \"d\": 3,\n  \"vertices\": [[0]]\n}";
        match parse_config(text) {
            Err(CliError::Config(m)) => assert!(m.starts_with("line 4"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cap_and_invariance_errors() {
        let c = parse_config(r#"{"builtin":"fermat","d":4,"group":["(12)","(12345)"],"cap_group":60}"#).unwrap();
        assert!(matches!(c.build(), Err(CliError::Cap(_))));
        let c = parse_config(r#"{"builtin":"fermat","d":3,"group":["central"]}"#).unwrap();
        assert!(matches!(c.build(), Err(CliError::Config(_))));
    }
}
