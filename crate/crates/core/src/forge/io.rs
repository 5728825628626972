//! Code files: JSON, CSV and hexadecimal binary word lists.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{self, BinaryCode, SphericalCode};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CodeFile {
    pub name: String,
    pub dimension: usize,
    pub norm_squared: i64,
    pub vectors: Vec<Vec<i64>>,
    pub cosines: Vec<String>,
    pub construction: serde_json::Value,
}

impl CodeFile {
    pub fn from_code(name: &str, code: &SphericalCode, construction: serde_json::Value) -> Self {
        CodeFile {
            name: name.to_string(),
            dimension: code.dim(),
            norm_squared: code.norm_sq(),
            vectors: code.vectors().to_vec(),
            cosines: sphere::cosine_set(code).iter().map(sphere::format_cosine).collect(),
            construction,
        }
    }

    /// Rebuilds the code and checks the stored norm and cosines against it.
    pub fn to_code(&self) -> Result<SphericalCode> {
        let code = SphericalCode::new(self.vectors.clone())?;
        if code.norm_sq() != self.norm_squared || code.dim() != self.dimension {
            return Err(Error::InvalidCode("stored norm or dimension disagrees with the vectors".into()));
        }
        let stored = self
            .cosines
            .iter()
            .map(|s| sphere::parse_cosine(s))
            .collect::<Result<std::collections::BTreeSet<_>>>()?;
        if code.len() > 1 && stored != sphere::cosine_set(&code) {
            return Err(Error::InvalidCode("stored cosines disagree with the vectors".into()));
        }
        Ok(code)
    }
}

pub fn to_json(file: &CodeFile) -> Result<String> {
    Ok(serde_json::to_string_pretty(file)?)
}

pub fn to_csv(code: &SphericalCode) -> String {
    code.vectors()
        .iter()
        .map(|v| {
            let row: Vec<String> = v.iter().map(i64::to_string).collect();
            row.join(",") + "\n"
        })
        .collect()
}

pub fn parse_csv(text: &str) -> Result<SphericalCode> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidCode(format!("bad integer {x:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SphericalCode::new(rows)
}

/// Reads a JSON code file, or CSV when the extension is `.csv`.
pub fn read_code(path: &Path) -> Result<SphericalCode> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "csv") {
        parse_csv(&text)
    } else {
        serde_json::from_str::<CodeFile>(&text)?.to_code()
    }
}

pub fn parse_hex_words(text: &str, length: usize) -> Result<BinaryCode> {
    let words = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| u64::from_str_radix(l, 16).map_err(|_| Error::InvalidCode(format!("bad hex word {l:?}"))))
        .collect::<Result<Vec<_>>>()?;
    BinaryCode::new(length, words)
}
