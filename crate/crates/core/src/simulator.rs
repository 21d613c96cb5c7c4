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

//! Exact statevector execution of circuits, dense-matrix oracle evolution,
//! expectation values, post-selection, and shot sampling.
//!
//! Single-qubit and Ising gates update amplitudes in place without forming
//! full matrices; the dense oracle (`exact_evolution`, `evolution_matrix`)
//! diagonalizes the Hermitian matrix and is capped at a configurable qubit
//! count.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, PauliSum};
use crate::synthesis::{Circuit, Gate};

/// A normalized complex amplitude array over `2^n` basis states.
///
/// Basis index `b` carries qubit `q` in bit `n - 1 - q` (qubit 0 is the most
/// significant bit), matching the tensor convention of the Pauli algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state with index `index`.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let dim = 1usize << num_qubits;
        assert!(index < dim, "basis index out of range");
        let mut amps = vec![Complex64::default(); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { num_qubits, amps }
    }

    /// `|up up ... up>` = `|00...0>`.
    pub fn all_up(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    /// The fully polarized `|down down ... down>` state: the fermionic vacuum
    /// and the starting point of every preparation circuit.
    pub fn all_down(num_qubits: usize) -> Self {
        Self::basis(num_qubits, (1usize << num_qubits) - 1)
    }

    /// Build from raw amplitudes; the vector is normalized.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << num_qubits {
            return Err(Error::DimensionMismatch(amps.len(), 1usize << num_qubits));
        }
        let mut s = StateVector { num_qubits, amps };
        let n = s.norm();
        if n < 1e-300 {
            return Err(Error::ZeroAmplitudes());
        }
        for a in &mut s.amps {
            *a /= n;
        }
        Ok(s)
    }

    /// A Haar-ish random state for tests, deterministic in `seed`.
    pub fn random(num_qubits: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amps = (0..1usize << num_qubits)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Self::from_amplitudes(num_qubits, amps).expect("random amplitudes nonzero")
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`, the global-phase-insensitive overlap.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn scale(&mut self, factor: Complex64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    /// `P |self>` for a phased Pauli string.
    pub fn apply_string(&self, string: &PauliString) -> Result<StateVector> {
        if string.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch(string.num_qubits(), self.num_qubits));
        }
        let mut out = vec![Complex64::default(); self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            if a != Complex64::default() {
                let (b2, f) = string.apply_to_basis(b);
                out[b2] += f * a;
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps: out,
        })
    }

    /// `O |self>` for a Pauli sum (not normalized).
    pub fn apply_sum(&self, sum: &PauliSum) -> Result<StateVector> {
        if sum.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch(sum.num_qubits(), self.num_qubits));
        }
        let mut out = vec![Complex64::default(); self.amps.len()];
        for (s, c) in sum.terms() {
            for (b, &a) in self.amps.iter().enumerate() {
                if a != Complex64::default() {
                    let (b2, f) = s.apply_to_basis(b);
                    out[b2] += c * f * a;
                }
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps: out,
        })
    }

    fn bit_pos(&self, qubit: usize) -> usize {
        self.num_qubits - 1 - qubit
    }

    fn apply_single_qubit(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let pos = self.bit_pos(qubit);
        let stride = 1usize << pos;
        let dim = self.amps.len();
        let mut b = 0usize;
        while b < dim {
            if b & stride == 0 {
                let b1 = b | stride;
                let a0 = self.amps[b];
                let a1 = self.amps[b1];
                self.amps[b] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[b1] = m[1][0] * a0 + m[1][1] * a1;
            }
            b += 1;
        }
    }

    /// Apply one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let zero = Complex64::default();
        match gate {
            Gate::Rx { qubit, angle } => {
                let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                let (c, is) = (Complex64::new(c, 0.0), Complex64::new(0.0, -s));
                self.apply_single_qubit(*qubit, [[c, is], [is, c]]);
            }
            Gate::Ry { qubit, angle } => {
                let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                let (c, s) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
                self.apply_single_qubit(*qubit, [[c, -s], [s, c]]);
            }
            Gate::Rz { qubit, angle } => {
                let e0 = Complex64::from_polar(1.0, -angle / 2.0);
                let e1 = Complex64::from_polar(1.0, angle / 2.0);
                self.apply_single_qubit(*qubit, [[e0, zero], [zero, e1]]);
            }
            Gate::ZZ { a, b, angle } => {
                let (pa, pb) = (self.bit_pos(*a), self.bit_pos(*b));
                for (idx, amp) in self.amps.iter_mut().enumerate() {
                    let za = if (idx >> pa) & 1 == 0 { 1.0 } else { -1.0 };
                    let zb = if (idx >> pb) & 1 == 0 { 1.0 } else { -1.0 };
                    *amp *= Complex64::from_polar(1.0, angle * za * zb);
                }
            }
            Gate::CPauliExp {
                control,
                value,
                string,
                angle,
            } => {
                if string.num_qubits() != self.num_qubits {
                    return Err(Error::DimensionMismatch(string.num_qubits(), self.num_qubits));
                }
                if string.support().any(|q| q == *control) {
                    return Err(Error::ControlOverlap(*control));
                }
                // exp(i theta P) restricted to the matching control branch:
                // new = cos(theta) psi + i sin(theta) P psi on that branch.
                let pos = self.bit_pos(*control);
                let want = *value as usize;
                let (c, s) = (angle.cos(), angle.sin());
                let mut out = self.amps.clone();
                for b in 0..self.amps.len() {
                    if (b >> pos) & 1 != want {
                        continue;
                    }
                    let a = self.amps[b];
                    if a == zero {
                        continue;
                    }
                    let (b2, f) = string.apply_to_basis(b);
                    out[b] -= (1.0 - c) * a;
                    out[b2] += Complex64::new(0.0, s) * f * a;
                }
                self.amps = out;
            }
            Gate::PhaseOnControl {
                control,
                value,
                angle,
            } => {
                let pos = self.bit_pos(*control);
                let want = *value as usize;
                let factor = Complex64::from_polar(1.0, *angle);
                for (idx, amp) in self.amps.iter_mut().enumerate() {
                    if (idx >> pos) & 1 == want {
                        *amp *= factor;
                    }
                }
            }
        }
        Ok(())
    }
}

/// One measured (or exactly computed) observable value.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub observable: String,
    pub value: Complex64,
    /// `None` means exact-expectation mode.
    pub shots: Option<u64>,
}

/// Apply the circuit's gates in order, including its recorded global phase.
pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if circuit.num_qubits() != initial.num_qubits() {
        return Err(Error::DimensionMismatch(
            circuit.num_qubits(),
            initial.num_qubits(),
        ));
    }
    let mut state = initial.clone();
    for g in circuit.gates() {
        state.apply_gate(g)?;
    }
    if circuit.global_phase() != 0.0 {
        state.scale(Complex64::from_polar(1.0, circuit.global_phase()));
    }
    Ok(state)
}

/// Dense unitary of a circuit, column by column. Test/oracle utility.
pub fn circuit_unitary(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    let n = circuit.num_qubits();
    let dim = 1usize << n;
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = run(circuit, &StateVector::basis(n, col))?;
        for (row, &a) in out.amplitudes().iter().enumerate() {
            u[(row, col)] = a;
        }
    }
    Ok(u)
}

/// Full eigendecomposition of a dense complex Hermitian matrix: Householder
/// reduction to a real symmetric tridiagonal form (with a diagonal phase
/// scaling to make the subdiagonal real), then implicit-shift QL with
/// eigenvector accumulation. Returns eigenvalues in ascending order.
///
/// Hand-rolled because the generic QR iteration in the linear-algebra crate
/// loses eigenvector accuracy badly on the highly degenerate spectra that
/// Pauli-string operators produce; this classic tridiagonal path keeps
/// residuals at machine precision regardless of eigenvalue multiplicity.
pub fn hermitian_eigen_dense(a: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = a.nrows();
    let mut m = a.clone();
    let mut q = DMatrix::<Complex64>::identity(n, n);
    for k in 0..n.saturating_sub(2) {
        let mut xnorm2 = 0.0f64;
        for i in k + 1..n {
            xnorm2 += m[(i, k)].norm_sqr();
        }
        let xnorm = xnorm2.sqrt();
        if xnorm < 1e-300 {
            continue;
        }
        let x0 = m[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut w = DVector::<Complex64>::zeros(n);
        w[k + 1] = x0 + phase * xnorm;
        for i in k + 2..n {
            w[i] = m[(i, k)];
        }
        let wn = w.norm();
        if wn < 1e-300 {
            continue;
        }
        w /= Complex64::new(wn, 0.0);
        let wm = w.adjoint() * &m;
        m -= &w * wm * Complex64::new(2.0, 0.0);
        let mw = &m * &w;
        m -= mw * w.adjoint() * Complex64::new(2.0, 0.0);
        let qw = &q * &w;
        q -= qw * w.adjoint() * Complex64::new(2.0, 0.0);
    }
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    let mut ph = Complex64::new(1.0, 0.0);
    for i in 0..n {
        d[i] = m[(i, i)].re;
        if i + 1 < n {
            let beta = m[(i + 1, i)];
            let babs = beta.norm();
            e[i] = babs;
            let step = if babs > 0.0 {
                beta / babs
            } else {
                Complex64::new(1.0, 0.0)
            };
            ph *= step;
            for row in 0..n {
                q[(row, i + 1)] *= ph;
            }
        }
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut seg = l;
            while seg + 1 < n {
                let dd = d[seg].abs() + d[seg + 1].abs();
                if e[seg].abs() <= f64::EPSILON * dd {
                    break;
                }
                seg += 1;
            }
            if seg == l {
                break;
            }
            iter += 1;
            assert!(iter <= 64, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[seg] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut i = seg - 1;
            loop {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[seg] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in 0..n {
                    let f2 = q[(row, i + 1)];
                    q[(row, i + 1)] = q[(row, i)] * s + f2 * c;
                    q[(row, i)] = q[(row, i)] * c - f2 * s;
                }
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[seg] = 0.0;
                    break;
                }
                i -= 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, dst)] = q[(row, src)];
        }
    }
    (eigenvalues, vectors)
}

/// Eigendecomposition of a Hermitian Pauli sum, cached for repeated
/// evolutions over a time grid.
pub struct HermitianEigen {
    eigenvalues: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl HermitianEigen {
    pub fn new(h: &PauliSum, oracle_limit: usize) -> Result<Self> {
        if !h.is_hermitian(1e-10) {
            return Err(Error::NotHermitian(h.max_imag()));
        }
        let m = h.to_matrix(oracle_limit)?;
        let herm_gap = (&m - m.adjoint()).norm();
        if herm_gap > 1e-10 {
            return Err(Error::MatrixNotHermitian(herm_gap));
        }
        let (eigenvalues, vectors) = hermitian_eigen_dense(&m);
        Ok(HermitianEigen {
            eigenvalues,
            vectors,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Squared overlaps `|<psi_n|state>|^2` with each eigenvector.
    pub fn overlaps(&self, state: &StateVector) -> Vec<f64> {
        let v = DVector::from_column_slice(state.amplitudes());
        let c = self.vectors.adjoint() * v;
        c.iter().map(|x| x.norm_sqr()).collect()
    }

    /// Apply `exp(i H t)` to a state.
    pub fn evolve(&self, t: f64, initial: &StateVector) -> Result<StateVector> {
        let dim = self.eigenvalues.len();
        if initial.amplitudes().len() != dim {
            return Err(Error::DimensionMismatch(initial.amplitudes().len(), dim));
        }
        let v = DVector::from_column_slice(initial.amplitudes());
        let mut c = self.vectors.adjoint() * v;
        for (k, x) in c.iter_mut().enumerate() {
            *x *= Complex64::from_polar(1.0, self.eigenvalues[k] * t);
        }
        let out = &self.vectors * c;
        Ok(StateVector {
            num_qubits: initial.num_qubits(),
            amps: out.iter().copied().collect(),
        })
    }

    /// Dense `exp(i H t)`.
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues
                .iter()
                .map(|&l| Complex64::from_polar(1.0, l * t)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }
}

/// Apply the dense exponential `exp(i h t)` to a state. This is the oracle
/// every synthesized circuit is checked against.
pub fn exact_evolution(
    h: &PauliSum,
    t: f64,
    initial: &StateVector,
    oracle_limit: usize,
) -> Result<StateVector> {
    HermitianEigen::new(h, oracle_limit)?.evolve(t, initial)
}

/// Dense `exp(i h t)` matrix for oracle comparisons.
pub fn evolution_matrix(h: &PauliSum, t: f64, oracle_limit: usize) -> Result<DMatrix<Complex64>> {
    Ok(HermitianEigen::new(h, oracle_limit)?.unitary(t))
}

/// Exact `<s| obs |s>`.
pub fn expectation(obs: &PauliSum, s: &StateVector) -> Result<Complex64> {
    let os = s.apply_sum(obs)?;
    s.inner(&os)
}

/// Born probability of the outcome pattern and the renormalized conditional
/// state. Outcome value 0 selects `|0> = |up>` on that qubit. A zero
/// probability branch comes back as `(0.0, None)`.
pub fn post_select(
    s: &StateVector,
    qubit_outcomes: &BTreeMap<usize, u8>,
) -> Result<(f64, Option<StateVector>)> {
    let n = s.num_qubits();
    for (&q, &v) in qubit_outcomes {
        if q >= n {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: n,
            });
        }
        if v > 1 {
            return Err(Error::InvalidModel(format!("outcome {v} must be 0 or 1")));
        }
    }
    let matches = |b: usize| {
        qubit_outcomes
            .iter()
            .all(|(&q, &v)| ((b >> (n - 1 - q)) & 1) as u8 == v)
    };
    let prob: f64 = s
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(b, _)| matches(*b))
        .map(|(_, a)| a.norm_sqr())
        .sum();
    if prob < 1e-300 {
        return Ok((0.0, None));
    }
    let scale = prob.sqrt();
    let amps = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(b, &a)| if matches(b) { a / scale } else { Complex64::default() })
        .collect();
    Ok((
        prob,
        Some(StateVector {
            num_qubits: n,
            amps,
        }),
    ))
}

/// Empirical mean of +-1 outcomes of a single-qubit Pauli measurement.
/// Deterministic for a fixed seed.
pub fn sample(
    qubit: usize,
    letter: PauliLetter,
    s: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<MeasurementRecord> {
    if letter == PauliLetter::I {
        return Ok(MeasurementRecord {
            observable: format!("I{qubit}"),
            value: Complex64::new(1.0, 0.0),
            shots: Some(shots),
        });
    }
    let obs = PauliSum::from_string(&PauliString::single(s.num_qubits(), qubit, letter)?);
    let exact = expectation(&obs, s)?.re;
    let p_plus = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plus = 0u64;
    for _ in 0..shots {
        if rng.gen_bool(p_plus) {
            plus += 1;
        }
    }
    let mean = 2.0 * plus as f64 / shots as f64 - 1.0;
    Ok(MeasurementRecord {
        observable: format!("{}{qubit}", letter.as_char()),
        value: Complex64::new(mean, 0.0),
        shots: Some(shots),
    })
}

/// Operator-norm distance after optimal global-phase alignment
/// (the phase maximizing `|trace(U^dag V)|`).
pub fn phase_aligned_distance(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>) -> f64 {
    let tr: Complex64 = (u.adjoint() * v).trace();
    let phase = if tr.norm() < 1e-300 {
        Complex64::new(1.0, 0.0)
    } else {
        tr / tr.norm()
    };
    let diff = u - v.map(|x| x / phase);
    diff.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |m, &s| m.max(s))
}

/// State dump as CSV rows `index,re,im`, suppressing amplitudes below 1e-12.
pub fn dump_csv(s: &StateVector) -> String {
    let mut out = String::from("index,re,im\n");
    for (b, a) in s.amplitudes().iter().enumerate() {
        if a.norm() >= 1e-12 {
            out.push_str(&format!("{b},{:.16e},{:.16e}\n", a.re, a.im));
        }
    }
    out
}
