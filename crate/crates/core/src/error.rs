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

use num_complex::Complex64;

/// Errors shared by all modules of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("operator acts on {required} qubits, above the dense-oracle limit of {limit}")]
    OracleLimit { required: usize, limit: usize },

    #[error("operation requires {expected} statistics, operator declares {got}")]
    WrongStatistics { expected: &'static str, got: String },

    #[error("mode {mode} out of range for {num_modes} modes")]
    ModeOutOfRange { mode: usize, num_modes: usize },

    #[error("occupation {occupation} exceeds the per-site cap {n_max}")]
    OccupationOutOfRange { occupation: usize, n_max: usize },

    #[error("operator is not hermitian (largest imaginary coefficient {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not hermitian to within {0:.3e}")]
    MatrixNotHermitian(f64),

    #[error("pauli exponential needs a real +/-1 string phase, got {0}")]
    NonRealPhase(Complex64),

    #[error("control qubit {0} overlaps the support of the controlled string")]
    ControlOverlap(usize),

    #[error("branch amplitudes are all zero and cannot be normalized")]
    ZeroAmplitudes(),

    #[error("linear-combination spec needs one prep circuit per amplitude ({amplitudes} vs {preps})")]
    BranchCountMismatch { amplitudes: usize, preps: usize },

    #[error("qubit index {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("time step dt = {dt} violates the anti-aliasing bound dt * {bound} < pi")]
    Aliasing { dt: f64, bound: f64 },

    #[error("spectrum extraction needs at least 8 samples, got {0}")]
    TooFewSamples(usize),

    #[error("cannot control a circuit that already contains controlled gates")]
    NestedControl,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
