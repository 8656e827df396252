//! Seed files: JSON with coefficients as decimal strings, so fixtures
//! round-trip without binary-float ambiguity.
//!
//! Schema:
//!
//! ```json
//! {
//!   "n": 3,
//!   "label": "veronese-3",
//!   "components": [
//!     [{"re": "1", "im": "0"}],
//!     [{"re": "0", "im": "0"}, {"re": "1.4142135623730951", "im": "0"}]
//!   ]
//! }
//! ```
//!
//! Coefficients ascend in degree. Numbers are also accepted in place of
//! decimal strings on load.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use cpn_core::SeedVector;

use crate::error::CliError;
use crate::Result;

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Decimal {
    Text(String),
    Number(f64),
}

impl Decimal {
    fn value(&self, path: &Path, context: &str) -> Result<f64> {
        match self {
            Decimal::Number(v) => Ok(*v),
            Decimal::Text(s) => s.trim().parse::<f64>().map_err(|_| CliError::Parse {
                path: path.to_path_buf(),
                message: format!("{context}: '{s}' is not a decimal number"),
            }),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CoeffDto {
    re: Decimal,
    im: Decimal,
}

#[derive(Debug, Serialize, Deserialize)]
struct SeedDto {
    n: usize,
    label: String,
    components: Vec<Vec<CoeffDto>>,
}

/// Load a seed file.
pub fn load_seed(path: &Path) -> Result<SeedVector> {
    let text = std::fs::read_to_string(path)?;
    let dto: SeedDto = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    if dto.n < 2 {
        return Err(CliError::Core(cpn_core::Error::InvalidDimension(dto.n)));
    }
    if dto.components.len() != dto.n {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            message: format!(
                "field 'components' has {} entries but n = {}",
                dto.components.len(),
                dto.n
            ),
        });
    }
    let mut components = Vec::with_capacity(dto.n);
    for (j, comp) in dto.components.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(comp.len());
        for (d, c) in comp.iter().enumerate() {
            let context = format!("components[{j}][{d}]");
            coeffs.push(Complex64::new(
                c.re.value(path, &context)?,
                c.im.value(path, &context)?,
            ));
        }
        components.push(coeffs);
    }
    SeedVector::new(components, dto.label).map_err(CliError::Core)
}

/// Save a seed file; coefficients are written as decimal strings with a
/// shortest-roundtrip representation, so load ∘ save is the identity.
pub fn save_seed(seed: &SeedVector, path: &Path) -> Result<()> {
    let dto = SeedDto {
        n: seed.dim(),
        label: seed.label().to_string(),
        components: seed
            .components()
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|c| CoeffDto {
                        re: Decimal::Text(format!("{}", c.re)),
                        im: Decimal::Text(format!("{}", c.im)),
                    })
                    .collect()
            })
            .collect(),
    };
    let text = serde_json::to_string_pretty(&dto).expect("seed serialization cannot fail");
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seed.json");
        let seed = SeedVector::veronese(3).unwrap();
        save_seed(&seed, &path).unwrap();
        let loaded = load_seed(&path).unwrap();
        assert_eq!(seed, loaded);
    }

    #[test]
    fn decimal_strings_parse() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seed.json");
        std::fs::write(
            &path,
            r#"{"n": 2, "label": "t", "components": [[{"re": "0.5", "im": "-1"}], [{"re": 0, "im": 0}, {"re": "1", "im": "0"}]]}"#,
        )
        .unwrap();
        let seed = load_seed(&path).unwrap();
        assert_eq!(seed.components()[0][0], Complex64::new(0.5, -1.0));
    }

    #[test]
    fn dimension_one_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seed.json");
        std::fs::write(
            &path,
            r#"{"n": 1, "label": "t", "components": [[{"re": "1", "im": "0"}]]}"#,
        )
        .unwrap();
        assert!(matches!(
            load_seed(&path),
            Err(CliError::Core(cpn_core::Error::InvalidDimension(1)))
        ));
    }

    #[test]
    fn malformed_file_reports_diagnostics() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seed.json");
        std::fs::write(&path, "{\"n\": 2,\n  \"label\": oops}").unwrap();
        match load_seed(&path) {
            Err(CliError::Parse { message, .. }) => {
                assert!(message.contains("line"), "got: {message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
