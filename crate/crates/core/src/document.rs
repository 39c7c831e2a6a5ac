//! JSON interchange format for codes.
//!
//! Rendering goes through `serde_json::Value`, whose maps keep keys sorted,
//! and codewords are stored normalized and sorted, so equal codes render to
//! identical bytes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::code::{Cell, Code, CodeParams, Codeword};
use crate::construct::ConstructionResult;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub branch: Option<String>,
    pub claimed_size: Option<usize>,
    pub claimed_leave: Option<BTreeSet<u32>>,
    pub verified: bool,
    pub provenance: String,
}

impl Default for Metadata {
    fn default() -> Self {
        Metadata {
            branch: None,
            claimed_size: None,
            claimed_leave: None,
            verified: false,
            provenance: "user".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub schema_version: String,
    pub params: CodeParams,
    pub codewords: Vec<Vec<[u32; 2]>>,
    pub metadata: Metadata,
}

impl CodeDocument {
    pub fn from_code(code: &Code, metadata: Metadata) -> Self {
        let codewords = code
            .normalized()
            .codewords()
            .iter()
            .map(|cw| cw.cells().iter().map(|c| [c.row, c.slot]).collect())
            .collect();
        CodeDocument {
            schema_version: SCHEMA_VERSION.into(),
            params: *code.params(),
            codewords,
            metadata,
        }
    }

    pub fn from_construction(result: &ConstructionResult) -> Self {
        CodeDocument::from_code(
            &result.code,
            Metadata {
                branch: Some(result.branch.clone()),
                claimed_size: Some(result.claimed_size),
                claimed_leave: result.claimed_leave.clone(),
                verified: result.verified,
                provenance: "construction".into(),
            },
        )
    }

    /// Rebuild the code. Cells are range-checked against the parameters.
    pub fn to_code(&self) -> Result<Code> {
        let codewords = self
            .codewords
            .iter()
            .map(|cells| Codeword::new(cells.iter().map(|&[row, slot]| Cell::new(row, slot))))
            .collect::<Result<Vec<_>>>()?;
        Code::new(self.params, codewords)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("documents always serialize")
    }

    pub fn render(&self) -> String {
        render_value(&self.to_value())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: CodeDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {:?}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }
}

/// Pretty JSON with sorted keys.
pub fn render_value(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("values always serialize")
}
