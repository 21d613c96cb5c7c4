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

//! Circuit builders for initial states: fermionic Slater determinants,
//! Thouless-rotated determinants, post-selected linear combinations, and
//! bosonic one-hot product states.
//!
//! Every builder starts from the all-down register `|vac> = |down...down>`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mappings::{
    jordan_wigner, BosonLayout, LadderFactor, SecondQuantizedOperator, Statistics,
};
use crate::pauli::{PauliLetter, PauliString};
use crate::synthesis::{
    control_circuit, synthesize_pauli_exponential, trotterize, Circuit, Gate, TrotterPlan,
};

use std::f64::consts::{FRAC_PI_2, PI};

/// Default Trotter step count for [`thouless_rotate`].
pub const DEFAULT_THOULESS_STEPS: usize = 64;

/// A Slater determinant `prod_j c†_j |vac>` over the listed occupied modes,
/// in the given order (order matters for the fermionic sign).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlaterSpec {
    pub num_modes: usize,
    pub occupied: Vec<usize>,
}

impl SlaterSpec {
    pub fn new(num_modes: usize, occupied: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; num_modes];
        for &m in &occupied {
            if m >= num_modes {
                return Err(Error::ModeOutOfRange { mode: m, num_modes });
            }
            if seen[m] {
                return Err(Error::InvalidModel(format!("mode {m} occupied twice")));
            }
            seen[m] = true;
        }
        Ok(SlaterSpec { num_modes, occupied })
    }
}

/// A determinant rotated by the quadratic exponential `exp(-i c† M c)`
/// (Thouless's theorem: the result is again a determinant).
#[derive(Debug, Clone, PartialEq)]
pub struct ThoulessSpec {
    pub base: SlaterSpec,
    pub m: DMatrix<Complex64>,
}

impl ThoulessSpec {
    pub fn new(base: SlaterSpec, m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != base.num_modes || m.ncols() != base.num_modes {
            return Err(Error::DimensionMismatch(m.nrows(), base.num_modes));
        }
        let gap = m
            .iter()
            .zip(m.adjoint().iter())
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).norm()));
        if gap > 1e-12 {
            return Err(Error::MatrixNotHermitian(gap));
        }
        Ok(ThoulessSpec { base, m })
    }
}

/// A normalized linear combination `sum_a g_a |phi_a>` of branch states,
/// each branch produced by its own system-register circuit.
#[derive(Debug, Clone)]
pub struct LinearCombinationSpec {
    pub amplitudes: Vec<Complex64>,
    pub branch_preps: Vec<Circuit>,
}

/// Result of [`prepare_linear_combination`]: run `circuit` from all-down,
/// then post-select the ancillas on `accept_pattern`.
#[derive(Debug, Clone)]
pub struct PostSelectedPrep {
    pub circuit: Circuit,
    pub ancilla_indices: Vec<usize>,
    /// Required measurement outcome per ancilla qubit (1 = down).
    pub accept_pattern: BTreeMap<usize, u8>,
    /// Success probability assuming mutually orthogonal branch states;
    /// equals `1/L`. For non-orthogonal branches the simulator reports the
    /// actual probability.
    pub predicted_success_probability: f64,
}

/// A bosonic product state `|n_0, ..., n_{N-1}>` in the one-hot encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BosonProductSpec {
    pub layout: BosonLayout,
    pub occupations: Vec<usize>,
}

/// Build the circuit preparing a Slater determinant from the vacuum.
///
/// Each occupied mode `m` contributes `U_m = exp(i (pi/2)(c_m + c†_m))`,
/// whose Jordan-Wigner image is a single Pauli exponential of
/// `(-1)^m Z_0...Z_{m-1} X_m`. Since `(c_m + c†_m)^2 = 1`, `U_m` equals
/// `i (c_m + c†_m)` exactly, so the product creates the determinant up to a
/// global phase. Factors are applied right-to-left: the last occupied mode's
/// gate comes first.
pub fn prepare_slater(spec: &SlaterSpec) -> Result<Circuit> {
    let n = spec.num_modes;
    let mut circuit = Circuit::new(n);
    for &m in spec.occupied.iter().rev() {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let string = PauliString::from_letters(
            n,
            (0..m).map(|l| (l, PauliLetter::Z)).chain([(m, PauliLetter::X)]),
        )?
        .with_phase(Complex64::new(sign, 0.0));
        circuit.append(&synthesize_pauli_exponential(&string, FRAC_PI_2)?)?;
    }
    Ok(circuit)
}

/// Jordan-Wigner image of the quadratic operator `c† M c`.
fn quadratic_operator(m: &DMatrix<Complex64>) -> Result<crate::pauli::PauliSum> {
    let n = m.nrows();
    let mut op = SecondQuantizedOperator::new(Statistics::Fermion, n);
    for i in 0..n {
        for j in 0..n {
            if m[(i, j)].norm() > 0.0 {
                op.add_term(
                    m[(i, j)],
                    vec![LadderFactor::create(i), LadderFactor::annihilate(j)],
                )?;
            }
        }
    }
    jordan_wigner(&op)
}

/// Build the circuit preparing the Thouless-rotated determinant
/// `exp(-i c† M c) prod c†_j |vac>`, with the quadratic exponential realized
/// as a Trotterized evolution of the Jordan-Wigner image.
pub fn thouless_rotate(spec: &ThoulessSpec, steps: usize) -> Result<Circuit> {
    let mut circuit = prepare_slater(&spec.base)?;
    let h = quadratic_operator(&spec.m)?;
    if !h.is_zero() {
        // exp(-i c† M c) = exp(i H t) at t = -1 for H = c† M c.
        let plan = TrotterPlan::new(h, -1.0, steps)?;
        circuit.append(&trotterize(&plan)?)?;
    }
    Ok(circuit)
}

/// Cascade preparing `sum_a g_a |up_a>` on the one-hot ancilla register:
/// an Rx(pi) excites the first ancilla, partial-swap transfers
/// `exp(-i b (XX+YY)/2)` push the excitation down the chain with the right
/// magnitudes, and per-ancilla Rz gates plus a global phase fix the `g_a`
/// phases. `amplitudes` must be normalized.
fn one_hot_cascade(
    num_qubits: usize,
    ancillas: &[usize],
    amplitudes: &[Complex64],
) -> Result<Circuit> {
    let l = ancillas.len();
    debug_assert_eq!(l, amplitudes.len());
    let mut circuit = Circuit::new(num_qubits);
    circuit.push(Gate::Rx { qubit: ancillas[0], angle: PI })?;
    // Residual magnitude still traveling after ancilla a: r_{a+1}.
    let mut residual2: Vec<f64> = vec![0.0; l + 1];
    for a in (0..l).rev() {
        residual2[a] = residual2[a + 1] + amplitudes[a].norm_sqr();
    }
    for a in 0..l.saturating_sub(1) {
        let r = residual2[a].sqrt();
        if r < 1e-300 {
            break;
        }
        // cos(beta) = |g_a| / r_a keeps |g_a| here, sin(beta) moves the rest.
        let beta = (amplitudes[a].norm() / r).clamp(0.0, 1.0).acos();
        if beta == 0.0 {
            continue;
        }
        for letter in [PauliLetter::X, PauliLetter::Y] {
            let pair = PauliString::from_letters(
                num_qubits,
                [(ancillas[a], letter), (ancillas[a + 1], letter)],
            )?;
            circuit.append(&synthesize_pauli_exponential(&pair, -beta / 2.0)?)?;
        }
    }
    // After the transfers the amplitude at ancilla a is (-i)^(a+1) |g_a|;
    // rotate each to arg(g_a). Rz(q, -d) scales the up component by
    // exp(i d/2) and every other branch by exp(-i d/2); the accumulated
    // cross terms are absorbed into the global phase.
    let mut phase_sum = 0.0;
    for (a, g) in amplitudes.iter().enumerate() {
        let delta = g.arg() + (a as f64 + 1.0) * FRAC_PI_2;
        if delta != 0.0 {
            circuit.push(Gate::Rz { qubit: ancillas[a], angle: -delta })?;
        }
        phase_sum += delta;
    }
    circuit.add_global_phase(phase_sum / 2.0);
    Ok(circuit)
}

/// Build the post-selected preparation of `sum_a g_a |phi_a>` with `L`
/// one-hot ancilla qubits appended after the system register.
///
/// The circuit (i) loads the amplitudes onto the one-hot ancilla register,
/// (ii) applies each branch prep controlled on its ancilla being up, and
/// (iii) applies the inverse of the uniform-amplitude cascade, after which
/// the accept outcome is every ancilla measured down.
pub fn prepare_linear_combination(spec: &LinearCombinationSpec) -> Result<PostSelectedPrep> {
    let l = spec.amplitudes.len();
    if l == 0 || spec.branch_preps.len() != l {
        return Err(Error::BranchCountMismatch {
            amplitudes: l,
            preps: spec.branch_preps.len(),
        });
    }
    let norm2: f64 = spec.amplitudes.iter().map(|g| g.norm_sqr()).sum();
    if norm2 < 1e-300 {
        return Err(Error::ZeroAmplitudes());
    }
    let scale = norm2.sqrt();
    let g: Vec<Complex64> = spec.amplitudes.iter().map(|a| a / scale).collect();
    let n_sys = spec.branch_preps[0].num_qubits();
    for prep in &spec.branch_preps {
        if prep.num_qubits() != n_sys {
            return Err(Error::DimensionMismatch(prep.num_qubits(), n_sys));
        }
    }
    let n = n_sys + l;
    let ancillas: Vec<usize> = (n_sys..n).collect();

    let mut circuit = one_hot_cascade(n, &ancillas, &g)?;
    for (a, prep) in spec.branch_preps.iter().enumerate() {
        // ancilla up = |0>, so the active control value is 0.
        circuit.append(&control_circuit(&prep.embed(n)?, ancillas[a], 0)?)?;
    }
    let uniform: Vec<Complex64> =
        vec![Complex64::new(1.0 / (l as f64).sqrt(), 0.0); l];
    circuit.append(&one_hot_cascade(n, &ancillas, &uniform)?.inverse())?;

    let accept_pattern: BTreeMap<usize, u8> = ancillas.iter().map(|&q| (q, 1u8)).collect();
    Ok(PostSelectedPrep {
        circuit,
        ancilla_indices: ancillas,
        accept_pattern,
        predicted_success_probability: 1.0 / l as f64,
    })
}

/// Build the circuit preparing the one-hot image of `|n_0, ..., n_{N-1}>`:
/// from all-down, flip exactly qubit `(n_i, i)` for every site.
pub fn prepare_boson_product(spec: &BosonProductSpec) -> Result<Circuit> {
    let layout = &spec.layout;
    if spec.occupations.len() != layout.num_sites {
        return Err(Error::DimensionMismatch(
            spec.occupations.len(),
            layout.num_sites,
        ));
    }
    let mut circuit = Circuit::new(layout.num_qubits());
    for (site, &occ) in spec.occupations.iter().enumerate() {
        if occ > layout.n_max {
            return Err(Error::OccupationOutOfRange {
                occupation: occ,
                n_max: layout.n_max,
            });
        }
        circuit.push(Gate::Rx { qubit: layout.qubit_index(site, occ), angle: PI })?;
    }
    // Each Rx(pi) contributes a factor -i on the flipped qubit.
    circuit.add_global_phase(layout.num_sites as f64 * FRAC_PI_2);
    Ok(circuit)
}
