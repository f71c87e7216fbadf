//! JSON coefficient documents.
//!
//! A document holds one vector:
//!
//! ```json
//! {
//!   "family": "z",
//!   "nu": 2,
//!   "genus": 1,
//!   "deriv_order": 0,
//!   "base_power": 2,
//!   "coeffs": ["2/3", "-4/3", "2/3"]
//! }
//! ```
//!
//! `coeffs[i]` multiplies `(ν − (ν−1)z₀)^−(base_power + i)`. Export always
//! writes the natural window, without band padding.

use std::fs;
use std::path::Path;

use mapcount_core::exact::{format_rational, parse_rational};
use mapcount_core::{Family, LaurentVector, ModelSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDocument {
    pub family: String,
    pub nu: u32,
    pub genus: u32,
    pub deriv_order: u32,
    pub base_power: i64,
    pub coeffs: Vec<String>,
}

impl CoeffDocument {
    pub fn from_vector(v: &LaurentVector) -> Self {
        let spec = v.spec();
        let d = v.deriv_order();
        CoeffDocument {
            family: spec.family.tag().to_string(),
            nu: spec.nu,
            genus: spec.genus,
            deriv_order: d,
            base_power: spec.natural_base(d),
            coeffs: v.natural_coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<LaurentVector> {
        let family: Family = self.family.parse()?;
        if self.nu < 2 {
            return Err(CliError::Usage(format!("nu must be at least 2, got {}", self.nu)));
        }
        let spec = ModelSpec::new(family, self.nu, self.genus)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<mapcount_core::Result<Vec<_>>>()?;
        let d = self.deriv_order;
        let v = if self.base_power == spec.natural_base(d) {
            LaurentVector::from_natural(spec, d, coeffs)?
        } else {
            LaurentVector::from_parts(spec, d, self.base_power, coeffs)?
        };
        Ok(v)
    }
}

pub fn import_vector(text: &str) -> Result<LaurentVector> {
    let doc: CoeffDocument = serde_json::from_str(text)?;
    doc.to_vector()
}

/// Pretty-printed document with a trailing newline.
pub fn export_vector(v: &LaurentVector) -> String {
    let mut text = serde_json::to_string_pretty(&CoeffDocument::from_vector(v))
        .expect("documents always serialise");
    text.push('\n');
    text
}

pub fn read_vector(path: &Path) -> Result<LaurentVector> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    import_vector(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mapcount_core::coefficients::builtin_genera;
    use mapcount_core::load_builtin;
    use mapcount_core::recurrence::invert_step;
    use proptest::prelude::*;

    #[test]
    fn builtins_round_trip() {
        for family in Family::ALL {
            for g in builtin_genera(family) {
                let v = load_builtin(family, g).unwrap();
                assert_eq!(import_vector(&export_vector(&v)).unwrap(), v, "{family}{g}");
            }
        }
        let plain = invert_step(&load_builtin(Family::Regular, 3).unwrap()).unwrap();
        assert_eq!(import_vector(&export_vector(&plain)).unwrap(), plain);
    }

    #[test]
    fn export_uses_canonical_rationals() {
        let text = export_vector(&load_builtin(Family::TwoLegged, 2).unwrap());
        assert!(text.contains("\"-910/9\""));
        assert!(text.contains("\"base_power\": 4"));
    }

    #[test]
    fn builtin_from_natural_document() {
        let doc = r#"{"family":"z","nu":2,"genus":1,"deriv_order":0,"base_power":2,
                      "coeffs":["2/3","-4/3","2/3"]}"#;
        assert_eq!(import_vector(doc).unwrap(), load_builtin(Family::TwoLegged, 1).unwrap());
    }

    #[test]
    fn rejects_bad_documents() {
        let base = |coeffs: &str, extra: &str| {
            format!(
                r#"{{"family":"z","nu":2,"genus":1,"deriv_order":0,"base_power":2,"coeffs":[{coeffs}]{extra}}}"#
            )
        };
        assert!(import_vector(&base(r#""7/0""#, "")).is_err());
        assert!(import_vector(&base("", "")).is_err());
        assert!(import_vector(&base(r#""1","2","3","4""#, "")).is_err());
        assert!(import_vector(&base(r#""1""#, r#","comment":"x""#)).is_err());
        assert!(import_vector(&base("1", "")).is_err());
        assert!(import_vector(&base(r#""1""#, "").replace("\"z\"", "\"q\"")).is_err());
        assert!(import_vector(&base(r#""1""#, "").replace("\"nu\":2", "\"nu\":1")).is_err());
    }

    proptest! {
        #[test]
        fn random_vectors_round_trip(
            nu in 2u32..5,
            nums in proptest::collection::vec(-1000i64..1000, 1..=3),
            den in 1i64..50,
        ) {
            let spec = ModelSpec::new(Family::TwoLegged, nu, 1).unwrap();
            let coeffs = nums
                .iter()
                .map(|&n| mapcount_core::BigRational::new(n.into(), den.into()))
                .collect();
            let v = LaurentVector::from_natural(spec, 0, coeffs).unwrap();
            prop_assert_eq!(import_vector(&export_vector(&v)).unwrap(), v);
        }
    }
}
