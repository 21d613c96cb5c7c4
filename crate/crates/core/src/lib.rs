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

//! Compile second-quantized lattice Hamiltonians (fermions, hard-core anyons,
//! occupation-capped bosons) into spin-1/2 qubit operators and elementary gate
//! circuits, simulate them on an exact statevector engine, and run the
//! ancilla-based measurement networks for dynamical correlation functions and
//! energy spectra. Every stage can be checked against a dense-matrix oracle.

pub mod error;
pub mod mappings;
pub mod measurement;
pub mod model;
pub mod pauli;
pub mod simulator;
pub mod stateprep;
pub mod synthesis;

pub use error::{Error, Result};
