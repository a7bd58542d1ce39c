//! JSON documents shared by the library and the CLI.
//!
//! A matrix document looks like
//!
//! ```json
//! {
//!   "ring": "poly",
//!   "variables": ["x", "y"],
//!   "rows": [["x^2 - y", "1"], ["0", "y"]]
//! }
//! ```
//!
//! `ring` is `int`, `mod_p` (with a decimal `modulus`) or `poly` (with an
//! optional `variables` list; when absent the variables are taken in order
//! of first appearance). Writing a parsed document reproduces it byte for
//! byte as long as it was itself written by [`MatrixDocument::to_json`].

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::ring::{MultiPoly, PrimeField, Ring, RingValue, Variables};
use crate::vandermonde::MonomialBasis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let (modulus, variables) = match m.ring() {
            Ring::Integer => (None, None),
            Ring::PrimeField(f) => (Some(f.modulus().to_string()), None),
            Ring::Polynomial(v) => (None, Some(v.names().to_vec())),
        };
        MatrixDocument {
            ring: m.ring().tag().to_string(),
            modulus,
            variables,
            rows: m
                .row_iter()
                .map(|r| r.iter().map(RingValue::to_text).collect())
                .collect(),
        }
    }

    pub fn ring(&self) -> Result<Ring> {
        match self.ring.as_str() {
            "int" => {
                self.no_extra_fields()?;
                Ok(Ring::Integer)
            }
            "mod_p" => {
                if self.variables.is_some() {
                    return Err(Error::Parse("mod_p documents take no variables".into()));
                }
                let text = self
                    .modulus
                    .as_deref()
                    .ok_or_else(|| Error::Parse("mod_p documents need a modulus".into()))?;
                let p: BigUint = text.parse().map_err(|_| {
                    Error::Parse(format!("modulus {text:?} is not a decimal integer"))
                })?;
                Ok(Ring::PrimeField(PrimeField::new(p)?))
            }
            "poly" => {
                if self.modulus.is_some() {
                    return Err(Error::Parse("poly documents take no modulus".into()));
                }
                let names = match &self.variables {
                    Some(v) => v.clone(),
                    None => {
                        let mut names: Vec<String> = Vec::new();
                        for text in self.rows.iter().flatten() {
                            for name in MultiPoly::scan_variables(text)? {
                                if !names.contains(&name) {
                                    names.push(name);
                                }
                            }
                        }
                        names
                    }
                };
                Ok(Ring::Polynomial(Variables::new(names)?))
            }
            other => Err(Error::Parse(format!(
                "unknown ring {other:?} (expected int, mod_p or poly)"
            ))),
        }
    }

    fn no_extra_fields(&self) -> Result<()> {
        if self.modulus.is_some() || self.variables.is_some() {
            return Err(Error::Parse(
                "int documents take no modulus or variables".into(),
            ));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        let ring = self.ring()?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| ring.parse_value(t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_rows(ring, rows)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix document: {e}")))
    }
}

pub fn read_matrix(text: &str) -> Result<ExactMatrix> {
    MatrixDocument::from_json(text)?.to_matrix()
}

pub fn write_matrix(m: &ExactMatrix) -> String {
    MatrixDocument::from_matrix(m).to_json()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDocument {
    pub n: usize,
    pub d: usize,
    pub count: usize,
    pub exponents: Vec<Vec<u32>>,
}

impl BasisDocument {
    pub fn from_basis(b: &MonomialBasis) -> Self {
        BasisDocument {
            n: b.n(),
            d: b.d(),
            count: b.len(),
            exponents: b.exponents().to_vec(),
        }
    }
}

/// Pretty JSON followed by a newline, the layout of every document written.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_round_trip_is_byte_exact() {
        let m = ExactMatrix::from_ints(&[[1, -2], [30, 0]]);
        let text = write_matrix(&m);
        assert_eq!(read_matrix(&text).unwrap(), m);
        assert_eq!(write_matrix(&read_matrix(&text).unwrap()), text);
        assert!(!text.contains("modulus"));
    }

    #[test]
    fn mod_p_and_poly_documents() {
        let text = r#"{"ring": "mod_p", "modulus": "7", "rows": [["9", "-1"]]}"#;
        let m = read_matrix(text).unwrap();
        assert_eq!(m.get(0, 0).to_text(), "2");
        assert_eq!(m.get(0, 1).to_text(), "6");
        let out = write_matrix(&m);
        assert_eq!(write_matrix(&read_matrix(&out).unwrap()), out);

        let text = r#"{"ring": "poly", "rows": [["y*x + 1", "x"]]}"#;
        let m = read_matrix(text).unwrap();
        assert_eq!(m.ring().to_string(), "poly[y,x]");
        assert_eq!(m.get(0, 0).to_text(), "y*x + 1");
        let out = write_matrix(&m);
        assert!(out.contains("\"variables\""));
        assert_eq!(write_matrix(&read_matrix(&out).unwrap()), out);
    }

    #[test]
    fn malformed_documents() {
        for bad in [
            r#"{"ring": "real", "rows": []}"#,
            r#"{"ring": "mod_p", "rows": [["1"]]}"#,
            r#"{"ring": "mod_p", "modulus": "8", "rows": [["1"]]}"#,
            r#"{"ring": "int", "rows": [["1", "2"], ["3"]]}"#,
            r#"{"ring": "int", "rows": [["x"]]}"#,
            r#"{"ring": "int", "modulus": "7", "rows": [["1"]]}"#,
            r#"{"ring": "poly", "variables": ["x"], "rows": [["y"]]}"#,
            r#"{"ring": "int", "rows": [["1"]], "extra": 1}"#,
            "not json",
        ] {
            assert!(read_matrix(bad).is_err(), "{bad}");
        }
    }
}
