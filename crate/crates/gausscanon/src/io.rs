//! The shared JSON matrix format:
//!
//! ```json
//! { "n_modes": 2, "ordering": "mode", "entries": [ ...4n^2 reals, row-major ] }
//! ```
//!
//! Readers symmetrize covariance input and validate it as a state; symplectic
//! transforms are validated against the form-preservation defect.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{BasisOrdering, CovMatrix, SymplecticTransform};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n_modes: usize,
    pub ordering: BasisOrdering,
    pub entries: Vec<f64>,
}

impl MatrixJson {
    pub fn from_matrix(n_modes: usize, ordering: BasisOrdering, m: &DMatrix<f64>) -> Self {
        let dim = 2 * n_modes;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(m[(i, j)]);
            }
        }
        Self {
            n_modes,
            ordering,
            entries,
        }
    }

    pub fn to_dmatrix(&self) -> Result<DMatrix<f64>> {
        let dim = 2 * self.n_modes;
        if self.entries.len() != dim * dim {
            return Err(Error::Domain(format!(
                "expected {} entries for {} modes, got {}",
                dim * dim,
                self.n_modes,
                self.entries.len()
            )));
        }
        Ok(DMatrix::from_row_slice(dim, dim, &self.entries))
    }
}

pub fn cov_to_json(gamma: &CovMatrix) -> MatrixJson {
    MatrixJson::from_matrix(gamma.n_modes(), gamma.ordering(), gamma.matrix())
}

pub fn cov_from_json(json: &MatrixJson) -> Result<CovMatrix> {
    CovMatrix::new(json.to_dmatrix()?, json.ordering)
}

pub fn transform_to_json(s: &SymplecticTransform) -> MatrixJson {
    MatrixJson::from_matrix(s.n_modes(), s.ordering(), s.matrix())
}

pub fn transform_from_json(json: &MatrixJson) -> Result<SymplecticTransform> {
    SymplecticTransform::new(json.to_dmatrix()?, json.ordering)
}

pub fn read_cov(path: &Path) -> Result<CovMatrix> {
    let text = std::fs::read_to_string(path)?;
    let json: MatrixJson = serde_json::from_str(&text)?;
    cov_from_json(&json)
}

pub fn write_cov(path: &Path, gamma: &CovMatrix) -> Result<()> {
    let json = cov_to_json(gamma);
    std::fs::write(path, serde_json::to_string_pretty(&json)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::tms_cm;

    #[test]
    fn roundtrip_preserves_entries() {
        let g = tms_cm(0.8).unwrap();
        let json = cov_to_json(&g);
        assert_eq!(json.n_modes, 2);
        let back = cov_from_json(&json).unwrap();
        assert_eq!(back.matrix(), g.matrix());
        assert_eq!(back.ordering(), g.ordering());
    }

    #[test]
    fn ordering_tag_serializes_as_mode_or_xp() {
        let g = tms_cm(0.3).unwrap();
        let text = serde_json::to_string(&cov_to_json(&g)).unwrap();
        assert!(text.contains("\"ordering\":\"mode\""));
        let xp = cov_to_json(&g.reordered());
        let text = serde_json::to_string(&xp).unwrap();
        assert!(text.contains("\"ordering\":\"xp\""));
    }

    #[test]
    fn reader_rejects_bad_shapes() {
        let json = MatrixJson {
            n_modes: 2,
            ordering: BasisOrdering::ModeOrdered,
            entries: vec![1.0; 7],
        };
        assert!(cov_from_json(&json).is_err());
    }
}
