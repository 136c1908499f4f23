//! JSON model files: a square integer matrix, a finite abelian group
//! given by prime-power factors, and an ambient dimension.

use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::fund_group::FiniteAbelianGroup;
use crate::reid_graph::Model;

/// Accepts bare JSON integers up to i64, or decimal strings beyond.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn to_bigint(&self, field: &str) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("{field}: not an integer: {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub matrix: Vec<Vec<JsonIntPublic>>,
    pub group: Vec<u64>,
    pub dimension: u32,
    #[serde(default)]
    pub label: Option<String>,
}

// serde needs the field type public; keep the enum private behind a
// transparent wrapper.
#[derive(Debug, Clone, Deserialize)]
#[serde(transparent)]
pub struct JsonIntPublic(JsonInt);

#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub warnings: Vec<String>,
}

pub fn model_from_json(text: &str) -> Result<(Model, ParseOutcome)> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("model JSON: {e}")))?;
    let r = file.matrix.len();
    let mut entries = Vec::with_capacity(r * r);
    for (i, row) in file.matrix.iter().enumerate() {
        if row.len() != r {
            return Err(Error::InvalidInput(format!(
                "matrix[{i}]: expected {r} entries for a square matrix, got {}",
                row.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            entries.push(e.0.to_bigint(&format!("matrix[{i}][{j}]"))?);
        }
    }
    let matrix = IntMatrix::new(r, entries)?;
    let group = FiniteAbelianGroup::new(file.group)?;
    let model = Model::new(matrix, group, file.dimension, file.label)?;
    let mut outcome = ParseOutcome::default();
    if (model.dimension as usize) < 3 * r {
        outcome.warnings.push(format!(
            "dimension {} < 3*{r}: a semi-simple model needs rank-many generator \
             degrees >= 3 summing to at most the dimension",
            model.dimension
        ));
    }
    Ok((model, outcome))
}

/// Reads from a file path, or stdin when the path is "-".
pub fn parse_model(path: &Path) -> Result<(Model, ParseOutcome)> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
    };
    model_from_json(&text)
}
