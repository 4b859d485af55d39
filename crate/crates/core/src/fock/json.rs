//! Versioned JSON form of states.
//!
//! ```json
//! {"schema_version":1,"num_modes":2,"cutoff":4,"kind":"pure",
//!  "entries":[{"occupations":[1,0],"re":0.7071067811865476,"im":0.0}, …]}
//! ```
//!
//! Density matrices use `"kind":"mixed"` and carry the column tuple in a
//! `bra` field. Entries with modulus below `1e-15` are omitted.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DensityMatrix, FockBasis, FockVector, State};
use crate::error::{FockError, Result};

pub const SCHEMA_VERSION: u32 = 1;
const OMIT_BELOW: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub occupations: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bra: Option<Vec<usize>>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub schema_version: u32,
    pub num_modes: usize,
    pub cutoff: usize,
    pub kind: StateKind,
    pub entries: Vec<Entry>,
}

impl StateDocument {
    pub fn from_state(state: &State) -> Self {
        let basis = state.basis();
        let mut entries = Vec::new();
        let kind = match state {
            State::Pure(v) => {
                for (i, a) in v.amplitudes().iter().enumerate() {
                    if a.norm() >= OMIT_BELOW {
                        entries.push(Entry { occupations: basis.occupation(i).to_vec(), bra: None, re: a.re, im: a.im });
                    }
                }
                StateKind::Pure
            }
            State::Mixed(d) => {
                let m = d.matrix();
                for r in 0..d.dim() {
                    for c in 0..d.dim() {
                        let z = m[(r, c)];
                        if z.norm() >= OMIT_BELOW {
                            entries.push(Entry {
                                occupations: basis.occupation(r).to_vec(),
                                bra: Some(basis.occupation(c).to_vec()),
                                re: z.re,
                                im: z.im,
                            });
                        }
                    }
                }
                StateKind::Mixed
            }
        };
        StateDocument { schema_version: SCHEMA_VERSION, num_modes: basis.num_modes(), cutoff: basis.cutoff(), kind, entries }
    }

    pub fn to_state(&self) -> Result<State> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(FockError::Serde(format!("unsupported schema version {}", self.schema_version)));
        }
        let basis = Arc::new(FockBasis::new(self.num_modes, self.cutoff)?);
        let locate = |occ: &[usize]| {
            basis.index_of(occ).ok_or_else(|| FockError::CutoffExceeded { occupations: occ.to_vec(), cutoff: self.cutoff })
        };
        match self.kind {
            StateKind::Pure => {
                let mut amps = vec![Complex64::new(0.0, 0.0); basis.dim()];
                for e in &self.entries {
                    amps[locate(&e.occupations)?] += Complex64::new(e.re, e.im);
                }
                Ok(State::Pure(FockVector::from_amplitudes(basis.clone(), amps)?))
            }
            StateKind::Mixed => {
                let dim = basis.dim();
                let mut m = DMatrix::zeros(dim, dim);
                for e in &self.entries {
                    let bra = e.bra.as_deref().ok_or_else(|| FockError::Serde("mixed entry without bra".into()))?;
                    m[(locate(&e.occupations)?, locate(bra)?)] += Complex64::new(e.re, e.im);
                }
                Ok(State::Mixed(DensityMatrix::from_matrix(basis.clone(), m)?))
            }
        }
    }
}

pub fn to_json(state: &State) -> Result<String> {
    Ok(serde_json::to_string(&StateDocument::from_state(state))?)
}

pub fn from_json(text: &str) -> Result<State> {
    serde_json::from_str::<StateDocument>(text)?.to_state()
}
