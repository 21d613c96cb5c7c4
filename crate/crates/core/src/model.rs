// Copyright 2026 The spinlat developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! JSON model files: the serialized form of a lattice model (statistics,
//! Hamiltonian terms, initial state, run parameters) consumed by the CLI.
//!
//! Complex numbers are written as two-element arrays `[re, im]`; all angles
//! and times are in radians / natural units with `hbar = 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mappings::{
    anyon_map, boson_map, jordan_wigner, BosonLayout, LadderFactor,
    SecondQuantizedOperator, Statistics,
};
use crate::measurement::Backend;
use crate::pauli::{PauliString, PauliSum, DEFAULT_ORACLE_LIMIT};
use crate::stateprep::{
    prepare_boson_product, prepare_linear_combination, prepare_slater, thouless_rotate,
    BosonProductSpec, LinearCombinationSpec, PostSelectedPrep, SlaterSpec, ThoulessSpec,
    DEFAULT_THOULESS_STEPS,
};
use crate::synthesis::Circuit;

/// Serialized statistics choice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StatisticsModel {
    Fermion,
    Anyon { theta: f64 },
    Boson { n_max: usize },
}

/// Serialized ladder factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorModel {
    Create { mode: usize },
    Annihilate { mode: usize },
    Number { mode: usize },
}

/// Serialized Hamiltonian term: coefficient times an ordered factor product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermModel {
    pub coefficient: [f64; 2],
    pub factors: Vec<FactorModel>,
}

/// Serialized initial state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateModel {
    Slater {
        occupied: Vec<usize>,
    },
    Thouless {
        occupied: Vec<usize>,
        /// Row-major Hermitian matrix, entries `[re, im]`.
        matrix: Vec<Vec<[f64; 2]>>,
        #[serde(default)]
        steps: Option<usize>,
    },
    LinearCombination {
        amplitudes: Vec<[f64; 2]>,
        /// Each branch is a Slater occupation list.
        branches: Vec<Vec<usize>>,
    },
    BosonProduct {
        occupations: Vec<usize>,
    },
}

/// Serialized run parameters. Unused fields may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct RunModel {
    /// Correlation time grid.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub times: Vec<f64>,
    /// Spectrum sampling interval.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Spectrum sample count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_samples: Option<usize>,
    /// Total evolution time for `compile`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_time: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trotter_steps: Option<usize>,
    /// "exact" or "trotter".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_limit: Option<usize>,
    /// Correlation operator `A` as a compact Pauli string, optionally signed
    /// (e.g. `"-Z0X1"`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    /// Correlation operator `B`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

/// Top-level model file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub statistics: StatisticsModel,
    pub num_modes: usize,
    #[serde(default)]
    pub hamiltonian: Vec<TermModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<StateModel>,
    #[serde(default)]
    pub run: RunModel,
}

fn cplx(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn statistics(&self) -> Statistics {
        match self.statistics {
            StatisticsModel::Fermion => Statistics::Fermion,
            StatisticsModel::Anyon { theta } => Statistics::Anyon { theta },
            StatisticsModel::Boson { n_max } => Statistics::Boson { n_max },
        }
    }

    /// Qubit count of the mapped register.
    pub fn num_qubits(&self) -> usize {
        match self.statistics {
            StatisticsModel::Boson { n_max } => self.num_modes * (n_max + 1),
            _ => self.num_modes,
        }
    }

    pub fn boson_layout(&self) -> Option<BosonLayout> {
        match self.statistics {
            StatisticsModel::Boson { n_max } => {
                Some(BosonLayout::new(self.num_modes, n_max))
            }
            _ => None,
        }
    }

    /// Build the second-quantized operator from the term list.
    pub fn operator(&self) -> Result<SecondQuantizedOperator> {
        let mut op = SecondQuantizedOperator::new(self.statistics(), self.num_modes);
        for term in &self.hamiltonian {
            let factors = term
                .factors
                .iter()
                .map(|f| match *f {
                    FactorModel::Create { mode } => LadderFactor::create(mode),
                    FactorModel::Annihilate { mode } => LadderFactor::annihilate(mode),
                    FactorModel::Number { mode } => LadderFactor::number(mode),
                })
                .collect();
            op.add_term(cplx(term.coefficient), factors)?;
        }
        Ok(op)
    }

    /// Map the Hamiltonian to its Pauli form and verify Hermiticity.
    pub fn pauli_hamiltonian(&self) -> Result<PauliSum> {
        let op = self.operator()?;
        let sum = match self.statistics() {
            Statistics::Fermion => jordan_wigner(&op)?,
            Statistics::Anyon { .. } => anyon_map(&op)?,
            Statistics::Boson { .. } => {
                boson_map(&op, &self.boson_layout().expect("boson layout"))?
            }
        };
        if !sum.is_hermitian(1e-10) {
            return Err(Error::NotHermitian(sum.max_imag()));
        }
        Ok(sum)
    }

    /// Build the initial-state circuit. Post-selected preparations come back
    /// with their ancilla bookkeeping; plain circuits have none.
    pub fn preparation(&self) -> Result<Preparation> {
        let state = match &self.initial_state {
            None => return Ok(Preparation::Plain(Circuit::new(self.num_qubits()))),
            Some(s) => s,
        };
        match (state, self.statistics()) {
            (StateModel::Slater { occupied }, Statistics::Fermion)
            | (StateModel::Slater { occupied }, Statistics::Anyon { .. }) => {
                let spec = SlaterSpec::new(self.num_modes, occupied.clone())?;
                Ok(Preparation::Plain(prepare_slater(&spec)?))
            }
            (StateModel::Thouless { occupied, matrix, steps }, Statistics::Fermion) => {
                let n = self.num_modes;
                if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                    return Err(Error::InvalidModel(
                        "thouless matrix must be num_modes x num_modes".into(),
                    ));
                }
                let m = DMatrix::from_fn(n, n, |i, j| cplx(matrix[i][j]));
                let spec = ThoulessSpec::new(SlaterSpec::new(n, occupied.clone())?, m)?;
                Ok(Preparation::Plain(thouless_rotate(
                    &spec,
                    steps.unwrap_or(DEFAULT_THOULESS_STEPS),
                )?))
            }
            (StateModel::LinearCombination { amplitudes, branches }, Statistics::Fermion) => {
                let branch_preps = branches
                    .iter()
                    .map(|occ| {
                        prepare_slater(&SlaterSpec::new(self.num_modes, occ.clone())?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let spec = LinearCombinationSpec {
                    amplitudes: amplitudes.iter().map(|&g| cplx(g)).collect(),
                    branch_preps,
                };
                Ok(Preparation::PostSelected(prepare_linear_combination(&spec)?))
            }
            (StateModel::BosonProduct { occupations }, Statistics::Boson { .. }) => {
                let spec = BosonProductSpec {
                    layout: self.boson_layout().expect("boson layout"),
                    occupations: occupations.clone(),
                };
                Ok(Preparation::Plain(prepare_boson_product(&spec)?))
            }
            (state, stats) => Err(Error::InvalidModel(format!(
                "initial state {state:?} is not supported for {stats} statistics"
            ))),
        }
    }

    pub fn backend(&self) -> Result<Backend> {
        match self.run.backend.as_deref() {
            None | Some("exact") => Ok(Backend::Exact),
            Some("trotter") => Ok(Backend::Trotter),
            Some(other) => Err(Error::InvalidModel(format!(
                "unknown backend {other:?} (expected \"exact\" or \"trotter\")"
            ))),
        }
    }

    pub fn oracle_limit(&self, cli_override: Option<usize>) -> usize {
        cli_override
            .or(self.run.oracle_limit)
            .unwrap_or(DEFAULT_ORACLE_LIMIT)
    }

    /// Parse a correlation operator string such as `"X0"` or `"-Z0X1"`.
    pub fn correlation_operator(&self, text: &str) -> Result<PauliString> {
        let trimmed = text.trim();
        let (sign, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (-1.0, rest),
            None => (1.0, trimmed.strip_prefix('+').unwrap_or(trimmed)),
        };
        let s = PauliString::parse(body, self.num_qubits())?;
        Ok(s.with_phase(Complex64::new(sign, 0.0)))
    }
}

/// A prepared initial state: either a plain circuit or a post-selected one.
#[derive(Debug, Clone)]
pub enum Preparation {
    Plain(Circuit),
    PostSelected(PostSelectedPrep),
}

impl Preparation {
    pub fn circuit(&self) -> &Circuit {
        match self {
            Preparation::Plain(c) => c,
            Preparation::PostSelected(p) => &p.circuit,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopping_model() -> ModelFile {
        ModelFile {
            statistics: StatisticsModel::Fermion,
            num_modes: 2,
            hamiltonian: vec![
                TermModel {
                    coefficient: [1.0, 0.0],
                    factors: vec![
                        FactorModel::Create { mode: 0 },
                        FactorModel::Annihilate { mode: 1 },
                    ],
                },
                TermModel {
                    coefficient: [1.0, 0.0],
                    factors: vec![
                        FactorModel::Create { mode: 1 },
                        FactorModel::Annihilate { mode: 0 },
                    ],
                },
            ],
            initial_state: Some(StateModel::Slater { occupied: vec![0] }),
            run: RunModel {
                times: vec![0.0, 0.5],
                trotter_steps: Some(32),
                backend: Some("exact".into()),
                a: Some("X0".into()),
                b: Some("X0".into()),
                ..RunModel::default()
            },
        }
    }

    #[test]
    fn round_trip_is_identical() {
        let model = hopping_model();
        let text = model.render();
        let back = ModelFile::parse(&text).unwrap();
        assert_eq!(model, back);
        assert_eq!(back.render(), text);
    }

    #[test]
    fn hamiltonian_maps_and_is_hermitian() {
        let model = hopping_model();
        let h = model.pauli_hamiltonian().unwrap();
        assert_eq!(h.num_qubits(), 2);
        assert_eq!(h.num_terms(), 2);
        assert!(h.is_hermitian(1e-12));
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut model = hopping_model();
        model.hamiltonian.pop();
        assert!(matches!(
            model.pauli_hamiltonian(),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn parse_error_reported() {
        assert!(matches!(ModelFile::parse("{not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn boson_model_layout() {
        let model = ModelFile {
            statistics: StatisticsModel::Boson { n_max: 2 },
            num_modes: 3,
            hamiltonian: vec![],
            initial_state: Some(StateModel::BosonProduct { occupations: vec![1, 0, 2] }),
            run: RunModel::default(),
        };
        assert_eq!(model.num_qubits(), 9);
        let prep = model.preparation().unwrap();
        assert_eq!(prep.circuit().num_qubits(), 9);
    }

    #[test]
    fn mismatched_state_and_statistics_rejected() {
        let mut model = hopping_model();
        model.initial_state = Some(StateModel::BosonProduct { occupations: vec![0, 0] });
        assert!(matches!(model.preparation(), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn correlation_operator_parses_sign() {
        let model = hopping_model();
        let s = model.correlation_operator("-Z0X1").unwrap();
        assert_eq!(s.phase(), Complex64::new(-1.0, 0.0));
        assert_eq!(s.weight(), 2);
    }
}
