//! Versioned JSON encodings of codes and instances.
//!
//! Every document carries `"version": "gapforge-v1"`; anything else is
//! rejected before the rest is read.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{Code, CodeError, CodeKind, Symbol};
use crate::maxcover::{MaxCoverError, MaxCoverGraph, MaxCoverInstance};
use crate::setcover::{SetCoverError, SetCoverInstance};

pub const VERSION: &str = "gapforge-v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("expected version \"{VERSION}\", found {0}")]
    SchemaVersion(String),
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    MaxCover(#[from] MaxCoverError),
    #[error(transparent)]
    SetCover(#[from] SetCoverError),
}

fn versioned<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    match value.get("version") {
        Some(serde_json::Value::String(v)) if v == VERSION => {}
        Some(other) => return Err(FormatError::SchemaVersion(other.to_string())),
        None => return Err(FormatError::SchemaVersion("no version field".into())),
    }
    serde_json::from_value(value).map_err(|e| FormatError::Invalid(e.to_string()))
}

fn to_string<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeDoc {
    version: String,
    q: u32,
    r: usize,
    ell: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    table: Vec<Vec<Symbol>>,
}

/// Needs a materialized table.
pub fn code_to_json(code: &Code) -> Result<String, FormatError> {
    code.table()?;
    let seed = match *code.kind() {
        CodeKind::Random { seed } => Some(seed),
        _ => None,
    };
    Ok(to_string(&CodeDoc {
        version: VERSION.into(),
        q: code.q(),
        r: code.r(),
        ell: code.ell(),
        kind: code.kind().name().into(),
        seed,
        table: code.rows(),
    }))
}

pub fn code_from_json(text: &str) -> Result<Code, FormatError> {
    let doc: CodeDoc = versioned(text)?;
    let kind = match (doc.kind.as_str(), doc.seed) {
        ("reed_solomon", None) => CodeKind::ReedSolomon,
        ("random", Some(seed)) => CodeKind::Random { seed },
        ("random", None) => return Err(FormatError::Invalid("random code without seed".into())),
        ("phf", None) => CodeKind::Phf,
        ("explicit", None) => CodeKind::Explicit,
        (k, None) => return Err(FormatError::Invalid(format!("unknown kind `{k}`"))),
        (k, Some(_)) => return Err(FormatError::Invalid(format!("kind `{k}` takes no seed"))),
    };
    if doc.table.iter().any(|row| row.len() != doc.ell) {
        return Err(FormatError::Invalid(format!(
            "table rows must have length ell = {}",
            doc.ell
        )));
    }
    Ok(Code::from_table(doc.q, doc.r, kind, doc.table)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaxCoverDoc {
    version: String,
    k: usize,
    t: usize,
    v_parts: Vec<usize>,
    w_parts: Vec<usize>,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    provenance: String,
}

pub fn maxcover_to_json(g: &MaxCoverInstance) -> String {
    to_string(&MaxCoverDoc {
        version: VERSION.into(),
        k: g.k(),
        t: g.t(),
        v_parts: g.v_parts().to_vec(),
        w_parts: g.w_parts().to_vec(),
        edges: g.edges(),
        provenance: g.provenance(),
    })
}

pub fn maxcover_from_json(text: &str) -> Result<MaxCoverInstance, FormatError> {
    let doc: MaxCoverDoc = versioned(text)?;
    if doc.k != doc.v_parts.len() || doc.t != doc.w_parts.len() {
        return Err(FormatError::Invalid(
            "k and t must equal the numbers of parts".into(),
        ));
    }
    Ok(MaxCoverInstance::new(
        doc.v_parts,
        doc.w_parts,
        &doc.edges,
        doc.provenance,
    )?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetCoverDoc {
    version: String,
    universe: usize,
    collections: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    provenance: String,
}

pub fn setcover_to_json(s: &SetCoverInstance) -> String {
    to_string(&SetCoverDoc {
        version: VERSION.into(),
        universe: s.universe(),
        collections: s.collection_lists(),
        provenance: s.provenance().into(),
    })
}

pub fn setcover_from_json(text: &str) -> Result<SetCoverInstance, FormatError> {
    let doc: SetCoverDoc = versioned(text)?;
    Ok(SetCoverInstance::new(
        doc.universe,
        doc.collections,
        doc.provenance,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{random_code, reed_solomon};

    #[test]
    fn code_round_trip() {
        for code in [
            reed_solomon(3, 2).unwrap(),
            random_code(3, 1, 4, 7).unwrap(),
        ] {
            let text = code_to_json(&code).unwrap();
            let back = code_from_json(&text).unwrap();
            assert_eq!(back.kind(), code.kind());
            assert_eq!(back.rows(), code.rows());
        }
    }

    #[test]
    fn maxcover_round_trip() {
        let g =
            MaxCoverInstance::new(vec![1, 2], vec![2], &[[0, 3], [1, 4], [2, 3]], "demo").unwrap();
        let back = maxcover_from_json(&maxcover_to_json(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn setcover_round_trip() {
        let s =
            SetCoverInstance::new(3, vec![vec![vec![0, 2]], vec![vec![1], vec![]]], "x").unwrap();
        assert_eq!(setcover_from_json(&setcover_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn version_and_syntax() {
        let e = setcover_from_json(r#"{"version":"v0","universe":1,"collections":[[[0]]]}"#)
            .unwrap_err();
        assert_eq!(e, FormatError::SchemaVersion("\"v0\"".into()));
        assert!(matches!(
            setcover_from_json(r#"{"universe":1}"#),
            Err(FormatError::SchemaVersion(_))
        ));
        assert!(matches!(
            setcover_from_json("{"),
            Err(FormatError::Syntax(_))
        ));
        assert!(matches!(
            maxcover_from_json(
                r#"{"version":"gapforge-v1","k":2,"t":1,"v_parts":[1],"w_parts":[1],"edges":[]}"#
            ),
            Err(FormatError::Invalid(_))
        ));
    }

    #[test]
    fn tampered_rs_table_is_rejected() {
        let text = code_to_json(&reed_solomon(3, 1).unwrap()).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["table"][2][2] = 1.into();
        assert!(matches!(
            code_from_json(&doc.to_string()),
            Err(FormatError::Code(_))
        ));
    }
}
