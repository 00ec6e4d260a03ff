//! Lattice input files.
//!
//! Two forms are accepted. The first is a JSON object
//! `{"gram": [[2,-1],[-1,2]], "name": "A2", "scale": 3}` where `name` and
//! `scale` are optional and `scale` multiplies the Gram matrix. The second is
//! a bare block of whitespace-separated integers, one matrix row per line;
//! blank lines and lines starting with `#` are ignored.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<i64>,
}

impl LatticeFile {
    /// The validated lattice with the scale applied.
    pub fn lattice(&self) -> Result<Lattice> {
        let scale = self.scale.unwrap_or(1);
        if scale < 1 {
            return Err(Error::InvalidScale);
        }
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|v| v.checked_mul(scale).ok_or(Error::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Lattice::new(gram)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice files serialize")
    }
}

/// Reads either input form without validating the matrix.
pub fn parse_lattice_file(text: &str) -> Result<LatticeFile> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    } else {
        parse_block(text)
    }
}

fn parse_block(text: &str) -> Result<LatticeFile> {
    let mut gram = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let token_len = rest[start..].find(char::is_whitespace).unwrap_or(rest.len() - start);
            let token = &rest[start..start + token_len];
            let value = token.parse::<i64>().map_err(|e| Error::Parse {
                line: i + 1,
                column: offset + start + 1,
                message: format!("invalid integer {token:?}: {e}"),
            })?;
            row.push(value);
            offset += start + token_len;
            rest = &rest[start + token_len..];
        }
        gram.push(row);
    }
    if gram.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    Ok(LatticeFile {
        gram,
        name: None,
        scale: None,
    })
}

/// Parses and validates a lattice file.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    parse_lattice_file(text)?.lattice()
}
