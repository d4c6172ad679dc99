//! JSON documents for lab experiments: symbol Fourier tables, homotopy
//! paths as coefficient interpolations, and heat-experiment inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::experiments::LabSymbol;
use super::heat::GradedOperator;
use super::mat::Mat;
use super::scalar::parse_complex_rational;
use super::symbol::LoopSymbol;
use crate::error::{Error, Result};

fn default_mode() -> String {
    "exact".into()
}

/// A symbol as a Fourier table: frequency -> row-major matrix of
/// complex-rational literals (decimals allowed; in numeric mode they are
/// read as doubles).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolDoc {
    pub size: usize,
    #[serde(default = "default_mode")]
    pub mode: String,
    pub coeffs: BTreeMap<String, Vec<Vec<String>>>,
}

impl SymbolDoc {
    pub fn to_symbol(&self) -> Result<LabSymbol> {
        let mut coeffs = BTreeMap::new();
        for (freq, rows) in &self.coeffs {
            let k: i64 = freq.trim().parse().map_err(|_| Error::BadSymbol {
                expr: freq.clone(),
                reason: "frequency must be an integer".into(),
            })?;
            if rows.len() != self.size || rows.iter().any(|r| r.len() != self.size) {
                return Err(Error::BadSymbol {
                    expr: freq.clone(),
                    reason: format!("coefficient matrix must be {0}x{0}", self.size),
                });
            }
            let mut m = Mat::zeros(self.size, self.size);
            for (i, row) in rows.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    m[(i, j)] = parse_complex_rational(entry)?;
                }
            }
            coeffs.insert(k, m);
        }
        let exact = LoopSymbol::new(self.size, coeffs);
        match self.mode.as_str() {
            "exact" => Ok(LabSymbol::Exact(exact)),
            "numeric" => Ok(LabSymbol::Numeric(exact.to_numeric())),
            other => Err(Error::BadSymbol {
                expr: other.to_string(),
                reason: "mode must be exact or numeric".into(),
            }),
        }
    }
}

/// A homotopy path: coefficientwise linear interpolation start -> end.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathDoc {
    pub start: SymbolDoc,
    pub end: SymbolDoc,
    #[serde(default = "default_steps")]
    pub steps: usize,
}

fn default_steps() -> usize {
    11
}

/// A heat (McKean-Singer) experiment: the matrix of D+ and a t grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeatDoc {
    pub d_plus: Vec<Vec<f64>>,
    #[serde(default = "default_t_grid")]
    pub t_grid: Vec<f64>,
}

fn default_t_grid() -> Vec<f64> {
    super::heat::DEFAULT_T_GRID.to_vec()
}

impl HeatDoc {
    pub fn to_operator(&self) -> Result<GradedOperator> {
        let cols = self.d_plus.first().map_or(0, |r| r.len());
        if self.d_plus.iter().any(|r| r.len() != cols) {
            return Err(Error::Schema("d_plus rows have unequal lengths".into()));
        }
        Ok(GradedOperator::from_rows(self.d_plus.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_doc_roundtrip() {
        let json = r#"{
            "size": 1,
            "mode": "exact",
            "coeffs": { "1": [["1"]], "0": [["2"]] }
        }"#;
        let doc: SymbolDoc = serde_json::from_str(json).unwrap();
        let sym = doc.to_symbol().unwrap();
        assert_eq!(sym.bandwidth(), 1);
        match sym {
            LabSymbol::Exact(s) => assert_eq!(s.coeffs().len(), 2),
            _ => panic!("expected exact mode"),
        }
    }

    #[test]
    fn symbol_doc_rejects_bad_shape() {
        let json = r#"{ "size": 2, "coeffs": { "0": [["1"]] } }"#;
        let doc: SymbolDoc = serde_json::from_str(json).unwrap();
        assert!(doc.to_symbol().is_err());
    }
}
