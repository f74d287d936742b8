//! State and operator files.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "kind": "density",
//!   "dims": [2, 2],
//!   "data": [[[0.25, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.25, 0.0]]]
//! }
//! ```
//!
//! `kind` is `pure`, `density` or `operator`. Complex entries are `[re, im]`
//! pairs. A pure state is a flat list of entries, matrices are lists of rows.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::numkernel::{ComplexMatrix, HermitianOperator};
use crate::states::{BipartiteDims, DensityState, DensityTolerances, PureState};

pub const STATE_FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pure,
    Density,
    Operator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Data {
    Vector(Vec<[f64; 2]>),
    Matrix(Vec<Vec<[f64; 2]>>),
}

/// On-disk representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub format_version: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    pub data: Data,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateFile {
    pub fn pure(psi: &PureState<f64>, dims: Option<BipartiteDims>) -> Self {
        Self {
            format_version: STATE_FORMAT_VERSION.into(),
            kind: Kind::Pure,
            dims: dims.map(|d| [d.n_a(), d.n_b()]),
            data: Data::Vector(psi.amplitudes().iter().copied().map(pair).collect()),
        }
    }

    pub fn matrix(kind: Kind, m: &ComplexMatrix<f64>, dims: Option<BipartiteDims>) -> Self {
        let rows = (0..m.rows()).map(|i| m.row(i).iter().copied().map(pair).collect()).collect();
        Self {
            format_version: STATE_FORMAT_VERSION.into(),
            kind,
            dims: dims.map(|d| [d.n_a(), d.n_b()]),
            data: Data::Matrix(rows),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let file: StateFile = serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let msg = full.strip_suffix(&suffix).unwrap_or(&full);
            CliError::parse(format!("{origin}:{}:{}: {msg}", e.line(), e.column()))
        })?;
        if file.format_version != STATE_FORMAT_VERSION {
            return Err(CliError::parse(format!(
                "{origin}: unsupported format_version {:?}, expected \"{STATE_FORMAT_VERSION}\"",
                file.format_version
            )));
        }
        match (&file.kind, &file.data) {
            (Kind::Pure, Data::Vector(_)) => {}
            (Kind::Density | Kind::Operator, Data::Matrix(rows)) => {
                let n = rows.len();
                if let Some(k) = rows.iter().position(|r| r.len() != n) {
                    return Err(CliError::parse(format!(
                        "{origin}: row {k} has {} entries, expected {n}",
                        rows[k].len()
                    )));
                }
            }
            (Kind::Pure, Data::Matrix(_)) => {
                return Err(CliError::parse(format!("{origin}: kind \"pure\" needs a flat list of entries")));
            }
            (_, Data::Vector(_)) => {
                return Err(CliError::parse(format!("{origin}: matrix kinds need a list of rows")));
            }
        }
        Ok(file)
    }

    pub fn dims(&self) -> Result<Option<BipartiteDims>, CliError> {
        self.dims
            .map(|[a, b]| BipartiteDims::new(a, b))
            .transpose()
            .map_err(CliError::from)
    }

    fn entries(&self) -> Vec<Complex64> {
        match &self.data {
            Data::Vector(v) => v.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
            Data::Matrix(rows) => rows.iter().flatten().map(|p| Complex64::new(p[0], p[1])).collect(),
        }
    }

    fn side(&self) -> usize {
        match &self.data {
            Data::Vector(v) => v.len(),
            Data::Matrix(rows) => rows.len(),
        }
    }

    fn to_matrix(&self) -> Result<ComplexMatrix<f64>, CliError> {
        let n = self.side();
        Ok(ComplexMatrix::from_vec(n, n, self.entries())?)
    }
}

/// A validated state with optional bipartition.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Pure(PureState<f64>, Option<BipartiteDims>),
    Density(DensityState<f64>, Option<BipartiteDims>),
}

impl LoadedState {
    pub fn dim(&self) -> usize {
        match self {
            LoadedState::Pure(p, _) => p.dim(),
            LoadedState::Density(r, _) => r.dim(),
        }
    }

    pub fn dims(&self) -> Option<BipartiteDims> {
        match self {
            LoadedState::Pure(_, d) | LoadedState::Density(_, d) => *d,
        }
    }
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn parse_bytes(bytes: &[u8], path: &Path) -> Result<StateFile, CliError> {
    let origin = path.display().to_string();
    let text = std::str::from_utf8(bytes).map_err(|e| CliError::parse(format!("{origin}: not UTF-8: {e}")))?;
    StateFile::parse(text, &origin)
}

pub fn load_state(bytes: &[u8], path: &Path, tolerances: DensityTolerances<f64>) -> Result<LoadedState, CliError> {
    let file = parse_bytes(bytes, path)?;
    let dims = file.dims()?;
    let state = match file.kind {
        Kind::Pure => LoadedState::Pure(PureState::new(file.entries())?, dims),
        Kind::Density => LoadedState::Density(DensityState::with_tolerances(file.to_matrix()?, tolerances)?, dims),
        Kind::Operator => {
            return Err(CliError::parse(format!(
                "{}: expected a pure or density state, found an operator",
                path.display()
            )))
        }
    };
    if let Some(d) = dims {
        if d.total() != state.dim() {
            return Err(CliError::validation(format!(
                "{}: dims {}x{} do not match dimension {}",
                path.display(),
                d.n_a(),
                d.n_b(),
                state.dim()
            )));
        }
    }
    Ok(state)
}

pub fn load_operator(bytes: &[u8], path: &Path, herm_tol: f64) -> Result<HermitianOperator<f64>, CliError> {
    let file = parse_bytes(bytes, path)?;
    if file.kind != Kind::Operator {
        return Err(CliError::parse(format!("{}: expected kind \"operator\"", path.display())));
    }
    Ok(HermitianOperator::with_tolerance(file.to_matrix()?, herm_tol)?)
}
