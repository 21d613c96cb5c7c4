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

//! Indirect-measurement protocols: dynamical correlation functions through
//! an ancilla interference network, and observable spectra through a
//! classical Fourier transform of an ancilla time series.
//!
//! The correlation network measures `G(t) = <psi| T† A† T B |psi>` with
//! `T = exp(-i H t)`: the ancilla starts in `|+>`, `B` is applied controlled
//! on the ancilla being `|1>`, the register evolves under `T`, `A` is applied
//! controlled on the ancilla being `|0>` (the adjoint arises from the bra
//! side of the interference term), and `G(t) = <sigma_x^a> + i <sigma_y^a>`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, PauliSum};
use crate::simulator::{expectation, run, HermitianEigen, StateVector};
use crate::synthesis::{trotter_circuit, Circuit, Gate};

use std::f64::consts::{FRAC_PI_2, PI};

/// How the Hamiltonian evolution inside a protocol is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Dense-matrix evolution (oracle; exact up to numerics).
    Exact,
    /// First-order Trotterized circuit (the hardware procedure).
    Trotter,
}

/// Inputs of the correlation-function protocol.
#[derive(Debug, Clone)]
pub struct CorrelationSpec {
    /// Unitary `A` (a Pauli string with unit-modulus phase).
    pub a: PauliString,
    /// Unitary `B`.
    pub b: PauliString,
    pub hamiltonian: PauliSum,
    /// System-register circuit preparing `|psi>` from all-down.
    pub prep: Circuit,
    pub times: Vec<f64>,
    pub backend: Backend,
    /// Trotter steps per unit of evolution time (Trotter backend).
    pub trotter_steps_per_unit: usize,
    pub oracle_limit: usize,
}

/// Inputs of the spectrum protocol.
#[derive(Debug, Clone)]
pub struct SpectrumSpec {
    /// Hermitian observable whose spectrum is sought.
    pub q: PauliSum,
    /// System-register circuit preparing `|phi>` from all-down.
    pub prep: Circuit,
    pub dt: f64,
    pub num_samples: usize,
    pub backend: Backend,
    pub trotter_steps_per_unit: usize,
    pub oracle_limit: usize,
}

/// One extracted eigenvalue with its spectral weight `|gamma_n|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    pub lambda: f64,
    pub weight: f64,
}

/// Relative floor below which Fourier maxima are not reported as peaks.
const PEAK_FLOOR: f64 = 1e-3;

fn check_unit_modulus(s: &PauliString) -> Result<()> {
    let phase = s.phase();
    if (phase.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::NonRealPhase(phase));
    }
    Ok(())
}

/// Gates applying the phased Pauli string `s` controlled on
/// `control = value`, using `P = exp(-i pi/2) exp(i (pi/2) P)`.
fn controlled_string(
    n: usize,
    control: usize,
    value: u8,
    s: &PauliString,
) -> Result<Vec<Gate>> {
    check_unit_modulus(s)?;
    let phase = s.phase().arg();
    let bare = s.clone().with_phase(Complex64::new(1.0, 0.0));
    let mut gates = Vec::new();
    if bare.is_identity() {
        if phase != 0.0 {
            gates.push(Gate::PhaseOnControl { control, value, angle: phase });
        }
        return Ok(gates);
    }
    gates.push(Gate::CPauliExp {
        control,
        value,
        string: bare.embed(n)?,
        angle: FRAC_PI_2,
    });
    gates.push(Gate::PhaseOnControl {
        control,
        value,
        angle: phase - FRAC_PI_2,
    });
    Ok(gates)
}

fn trotter_steps_for(t: f64, per_unit: usize) -> usize {
    ((t.abs() * per_unit as f64).ceil() as usize).max(1)
}

fn validate_correlation(spec: &CorrelationSpec) -> Result<usize> {
    if !spec.hamiltonian.is_hermitian(1e-10) {
        return Err(Error::NotHermitian(spec.hamiltonian.max_imag()));
    }
    check_unit_modulus(&spec.a)?;
    check_unit_modulus(&spec.b)?;
    let n_sys = spec.hamiltonian.num_qubits();
    if spec.prep.num_qubits() != n_sys
        || spec.a.num_qubits() != n_sys
        || spec.b.num_qubits() != n_sys
    {
        return Err(Error::DimensionMismatch(spec.prep.num_qubits(), n_sys));
    }
    Ok(n_sys)
}

/// Build the full interference network for one time point, with the
/// evolution Trotterized. The ancilla is the qubit after the system
/// register.
pub fn build_correlation_network(spec: &CorrelationSpec, t: f64) -> Result<Circuit> {
    let n_sys = validate_correlation(spec)?;
    let ancilla = n_sys;
    let n = n_sys + 1;
    let mut circuit = Circuit::new(n);
    // |down> -> |+>
    circuit.push(Gate::Ry { qubit: ancilla, angle: -FRAC_PI_2 })?;
    circuit.append(&spec.prep.embed(n)?)?;
    for g in controlled_string(n, ancilla, 1, &spec.b)? {
        circuit.push(g)?;
    }
    if t != 0.0 && !spec.hamiltonian.is_zero() {
        let steps = trotter_steps_for(t, spec.trotter_steps_per_unit);
        // T = exp(-i H t) = exp(i H (-t))
        circuit.append(&trotter_circuit(&spec.hamiltonian.embed(n)?, -t, steps)?)?;
    }
    for g in controlled_string(n, ancilla, 0, &spec.a)? {
        circuit.push(g)?;
    }
    Ok(circuit)
}

fn ancilla_correlator(state: &StateVector, ancilla: usize) -> Result<Complex64> {
    let n = state.num_qubits();
    let x = PauliSum::from_string(&PauliString::single(n, ancilla, PauliLetter::X)?);
    let y = PauliSum::from_string(&PauliString::single(n, ancilla, PauliLetter::Y)?);
    let gx = expectation(&x, state)?;
    let gy = expectation(&y, state)?;
    Ok(Complex64::new(gx.re, gy.re))
}

/// Run the protocol over the whole time grid and return `(t, G(t))` pairs.
pub fn measure_correlation(spec: &CorrelationSpec) -> Result<Vec<(f64, Complex64)>> {
    let n_sys = validate_correlation(spec)?;
    let ancilla = n_sys;
    let n = n_sys + 1;
    let mut out = Vec::with_capacity(spec.times.len());
    match spec.backend {
        Backend::Trotter => {
            for &t in &spec.times {
                let circuit = build_correlation_network(spec, t)?;
                let state = run(&circuit, &StateVector::all_down(n))?;
                out.push((t, ancilla_correlator(&state, ancilla)?));
            }
        }
        Backend::Exact => {
            // Shared front section, then dense evolution per time point.
            let mut front = Circuit::new(n);
            front.push(Gate::Ry { qubit: ancilla, angle: -FRAC_PI_2 })?;
            front.append(&spec.prep.embed(n)?)?;
            for g in controlled_string(n, ancilla, 1, &spec.b)? {
                front.push(g)?;
            }
            let before = run(&front, &StateVector::all_down(n))?;
            let eigen = if spec.hamiltonian.is_zero() {
                None
            } else {
                Some(HermitianEigen::new(
                    &spec.hamiltonian.embed(n)?,
                    spec.oracle_limit,
                )?)
            };
            let mut tail = Circuit::new(n);
            for g in controlled_string(n, ancilla, 0, &spec.a)? {
                tail.push(g)?;
            }
            for &t in &spec.times {
                let evolved = match &eigen {
                    Some(e) => e.evolve(-t, &before)?,
                    None => before.clone(),
                };
                let state = run(&tail, &evolved)?;
                out.push((t, ancilla_correlator(&state, ancilla)?));
            }
        }
    }
    Ok(out)
}

fn validate_spectrum(spec: &SpectrumSpec) -> Result<usize> {
    if !spec.q.is_hermitian(1e-10) {
        return Err(Error::NotHermitian(spec.q.max_imag()));
    }
    let n_sys = spec.q.num_qubits();
    if spec.prep.num_qubits() != n_sys {
        return Err(Error::DimensionMismatch(spec.prep.num_qubits(), n_sys));
    }
    if spec.num_samples < 8 {
        return Err(Error::TooFewSamples(spec.num_samples));
    }
    let bound = spec.q.coeff_norm_bound();
    if spec.dt * bound >= PI {
        return Err(Error::Aliasing { dt: spec.dt, bound });
    }
    Ok(n_sys)
}

/// `(1/2) Q sigma_z^ancilla` on the widened register: evolving it for time
/// `t` applies `exp(i Q t/2)` on the ancilla-up branch and `exp(-i Q t/2)`
/// on the ancilla-down branch.
fn ancilla_conditioned(q: &PauliSum, n: usize, ancilla: usize) -> Result<PauliSum> {
    let z = PauliString::single(n, ancilla, PauliLetter::Z)?;
    q.embed(n)?
        .multiply(&PauliSum::from_string(&z))
        .map(|s| s.scale(Complex64::new(0.5, 0.0)))
}

/// Sample `s_k = <2 sigma_+^a(t_k)> = <phi| exp(-i Q t_k) |phi>` on the grid
/// `t_k = k dt`, `k = 0..M-1`.
pub fn spectrum_time_series(spec: &SpectrumSpec) -> Result<Vec<Complex64>> {
    let n_sys = validate_spectrum(spec)?;
    let ancilla = n_sys;
    let n = n_sys + 1;
    let mut front = Circuit::new(n);
    front.push(Gate::Ry { qubit: ancilla, angle: -FRAC_PI_2 })?;
    front.append(&spec.prep.embed(n)?)?;
    let initial = run(&front, &StateVector::all_down(n))?;
    let h = ancilla_conditioned(&spec.q, n, ancilla)?;
    let mut out = Vec::with_capacity(spec.num_samples);
    match spec.backend {
        Backend::Exact => {
            let eigen = if h.is_zero() {
                None
            } else {
                Some(HermitianEigen::new(&h, spec.oracle_limit)?)
            };
            for k in 0..spec.num_samples {
                let t = k as f64 * spec.dt;
                let state = match &eigen {
                    Some(e) => e.evolve(t, &initial)?,
                    None => initial.clone(),
                };
                out.push(ancilla_correlator(&state, ancilla)?);
            }
        }
        Backend::Trotter => {
            // One step block reused cumulatively across the grid.
            let step = if h.is_zero() {
                Circuit::new(n)
            } else {
                let steps = trotter_steps_for(spec.dt, spec.trotter_steps_per_unit);
                trotter_circuit(&h, spec.dt, steps)?
            };
            let mut state = initial;
            for _ in 0..spec.num_samples {
                out.push(ancilla_correlator(&state, ancilla)?);
                state = run(&step, &state)?;
            }
        }
    }
    Ok(out)
}

/// Fold a DFT bin index to the principal frequency interval `(-M/2, M/2]`.
fn principal_bin(m: usize, num_samples: usize) -> f64 {
    let half = num_samples as f64 / 2.0;
    let mf = m as f64;
    if mf > half {
        mf - num_samples as f64
    } else {
        mf
    }
}

/// Extract eigenvalue peaks from a time series by discrete Fourier
/// transform, local-maximum detection with parabolic sub-bin interpolation,
/// and a least-squares fit of the model `s_k = sum_n w_n exp(-i lambda_n t_k)`
/// for the weights. Peaks are sorted by ascending `lambda`.
pub fn spectral_peaks(series: &[Complex64], dt: f64) -> Result<Vec<SpectralPeak>> {
    let m_total = series.len();
    if m_total < 8 {
        return Err(Error::TooFewSamples(m_total));
    }
    // F(lambda_m) = (1/M) sum_k s_k exp(i lambda_m t_k), lambda_m = 2 pi m/(M dt)
    let mut mags = vec![0.0f64; m_total];
    for (m, mag) in mags.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, s) in series.iter().enumerate() {
            let phase = 2.0 * PI * (m as f64) * (k as f64) / m_total as f64;
            acc += s * Complex64::from_polar(1.0, phase);
        }
        *mag = acc.norm() / m_total as f64;
    }
    let total: f64 = series[0].norm().max(1e-300);
    let floor = PEAK_FLOOR * total;
    let mut lambdas = Vec::new();
    for m in 0..m_total {
        let prev = mags[(m + m_total - 1) % m_total];
        let next = mags[(m + 1) % m_total];
        let here = mags[m];
        if here < floor || here < prev || next > here {
            continue;
        }
        if here == prev && m != 0 {
            // plateau: count only its first bin
            continue;
        }
        // refine within the neighboring bins by maximizing |F(lambda)|
        // continuously (golden-section search)
        let bin = principal_bin(m, m_total);
        let scale = 2.0 * PI / (m_total as f64 * dt);
        let eval = |lambda: f64| -> f64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, s) in series.iter().enumerate() {
                acc += s * Complex64::from_polar(1.0, lambda * k as f64 * dt);
            }
            acc.norm()
        };
        let (mut lo, mut hi) = ((bin - 1.0) * scale, (bin + 1.0) * scale);
        let inv_phi = 0.618_033_988_749_894_9_f64;
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let (mut f1, mut f2) = (eval(x1), eval(x2));
        for _ in 0..64 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = eval(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = eval(x1);
            }
        }
        lambdas.push(0.5 * (lo + hi));
    }
    if lambdas.is_empty() {
        lambdas.push(0.0);
    }
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // least-squares weights for the exponential model
    let p = lambdas.len();
    let mut design = nalgebra::DMatrix::<Complex64>::zeros(m_total, p);
    for k in 0..m_total {
        for (j, &lambda) in lambdas.iter().enumerate() {
            design[(k, j)] = Complex64::from_polar(1.0, -lambda * k as f64 * dt);
        }
    }
    let rhs = nalgebra::DVector::from_column_slice(series);
    let sol = design
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let peaks = lambdas
        .into_iter()
        .zip(sol.iter())
        .map(|(lambda, w)| SpectralPeak {
            lambda,
            weight: w.re.clamp(0.0, 1.0),
        })
        .collect();
    Ok(peaks)
}

/// CSV rendering `t,re,im` with lossless double precision.
pub fn correlation_csv(rows: &[(f64, Complex64)]) -> String {
    let mut out = String::from("t,re,im\n");
    for (t, g) in rows {
        out.push_str(&format!("{t:.16e},{:.16e},{:.16e}\n", g.re, g.im));
    }
    out
}

/// CSV rendering `lambda,weight`.
pub fn spectrum_csv(peaks: &[SpectralPeak]) -> String {
    let mut out = String::from("lambda,weight\n");
    for p in peaks {
        out.push_str(&format!("{:.16e},{:.16e}\n", p.lambda, p.weight));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mappings::{jordan_wigner, SecondQuantizedOperator, Statistics};
    use crate::pauli::DEFAULT_ORACLE_LIMIT;
    use crate::simulator::evolution_matrix;
    use crate::stateprep::{prepare_slater, SlaterSpec};
    use nalgebra::DVector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Circuit taking |down> to |up> on one qubit (for |0> inputs).
    fn flip_up(n: usize, q: usize) -> Circuit {
        let mut circ = Circuit::new(n);
        circ.push(Gate::Rx { qubit: q, angle: PI }).unwrap();
        circ.add_global_phase(FRAC_PI_2);
        circ
    }

    /// Circuit taking |down> to |+> on one qubit.
    fn plus_state(n: usize, q: usize) -> Circuit {
        let mut circ = Circuit::new(n);
        circ.push(Gate::Ry { qubit: q, angle: -FRAC_PI_2 }).unwrap();
        circ
    }

    fn base_spec(h: PauliSum, prep: Circuit, a: PauliString, b: PauliString) -> CorrelationSpec {
        CorrelationSpec {
            a,
            b,
            hamiltonian: h,
            prep,
            times: vec![],
            backend: Backend::Exact,
            trotter_steps_per_unit: 64,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }

    #[test]
    fn identity_operators_give_unity() {
        let mut spec = base_spec(
            PauliSum::from_string(&PauliString::single(1, 0, PauliLetter::Z).unwrap()),
            Circuit::new(1),
            PauliString::identity(1),
            PauliString::identity(1),
        );
        spec.times = vec![0.0, 0.4, 1.7];
        for (backend, tol) in [(Backend::Exact, 1e-10), (Backend::Trotter, 1e-10)] {
            spec.backend = backend;
            for (_, g) in measure_correlation(&spec).unwrap() {
                assert!((g - c(1.0, 0.0)).norm() < tol);
            }
        }
    }

    #[test]
    fn single_qubit_worked_case_is_exp_2it() {
        // H = Z0, psi = |0>, A = B = X0: G(t) = exp(2 i t)
        let x = PauliString::single(1, 0, PauliLetter::X).unwrap();
        let mut spec = base_spec(
            PauliSum::from_string(&PauliString::single(1, 0, PauliLetter::Z).unwrap()),
            flip_up(1, 0),
            x.clone(),
            x,
        );
        spec.times = vec![0.0, 0.3, 1.0];
        for (t, g) in measure_correlation(&spec).unwrap() {
            let expect = Complex64::from_polar(1.0, 2.0 * t);
            assert!((g - expect).norm() < 1e-10, "t={t}: {g} vs {expect}");
        }
    }

    /// Direct dense evaluation of <psi| T† A† T B |psi>.
    fn direct_correlator(spec: &CorrelationSpec, t: f64) -> Complex64 {
        let n = spec.hamiltonian.num_qubits();
        let psi = run(&spec.prep, &StateVector::all_down(n)).unwrap();
        let v = DVector::from_column_slice(psi.amplitudes());
        let tmat = evolution_matrix(&spec.hamiltonian, -t, n).unwrap();
        let amat = spec.a.to_matrix();
        let bmat = spec.b.to_matrix();
        let lhs = &tmat * (&bmat * &v);
        let rhs = &amat * (&tmat * &v);
        (rhs.adjoint() * lhs)[(0, 0)]
    }

    #[test]
    fn two_mode_fermion_case_matches_direct_oracle() {
        let mut op = SecondQuantizedOperator::new(Statistics::Fermion, 2);
        op.add_hopping(0, 1, 1.0).unwrap();
        let h = jordan_wigner(&op).unwrap();
        let prep = prepare_slater(&SlaterSpec::new(2, vec![0]).unwrap()).unwrap();
        // A = B = X0 Z-string (JW image component, a phased Pauli string)
        let a = PauliString::from_letters(2, [(0, PauliLetter::X)]).unwrap();
        let b = PauliString::from_letters(2, [(0, PauliLetter::Z), (1, PauliLetter::X)])
            .unwrap()
            .with_phase(c(-1.0, 0.0));
        let mut spec = base_spec(h, prep, a, b);
        spec.times = vec![0.0, 0.5, 1.3];
        let exact = measure_correlation(&spec).unwrap();
        for (t, g) in &exact {
            let direct = direct_correlator(&spec, *t);
            assert!((g - direct).norm() < 1e-10, "t={t}: {g} vs {direct}");
            assert!(g.norm() <= 1.0 + 1e-10);
        }
        // Trotter backend converges to the same values
        spec.backend = Backend::Trotter;
        spec.trotter_steps_per_unit = 256;
        for ((t, g_t), (_, g_e)) in measure_correlation(&spec).unwrap().iter().zip(&exact) {
            assert!((g_t - g_e).norm() < 1e-3, "t={t}: {g_t} vs {g_e}");
        }
    }

    #[test]
    fn network_circuit_matches_exact_backend() {
        let x = PauliString::single(1, 0, PauliLetter::X).unwrap();
        let mut spec = base_spec(
            PauliSum::from_string(&PauliString::single(1, 0, PauliLetter::Z).unwrap()),
            flip_up(1, 0),
            x.clone(),
            x,
        );
        spec.times = vec![0.7];
        spec.backend = Backend::Trotter;
        let circuit = build_correlation_network(&spec, 0.7).unwrap();
        let state = run(&circuit, &StateVector::all_down(2)).unwrap();
        let g = ancilla_correlator(&state, 1).unwrap();
        // single Pauli term: Trotter is exact
        assert!((g - Complex64::from_polar(1.0, 1.4)).norm() < 1e-10);
    }

    #[test]
    fn spectrum_series_of_z_on_plus_is_cosine() {
        let spec = SpectrumSpec {
            q: PauliSum::from_string(&PauliString::single(1, 0, PauliLetter::Z).unwrap()),
            prep: plus_state(1, 0),
            dt: 0.3,
            num_samples: 32,
            backend: Backend::Exact,
            trotter_steps_per_unit: 64,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        let series = spectrum_time_series(&spec).unwrap();
        for (k, s) in series.iter().enumerate() {
            let t = k as f64 * 0.3;
            assert!((s - c(t.cos(), 0.0)).norm() < 1e-10, "k={k}");
        }
        assert!(series[0].im.abs() < 1e-10);
    }

    #[test]
    fn spectrum_zero_observable_is_flat() {
        let spec = SpectrumSpec {
            q: PauliSum::zero(1),
            prep: plus_state(1, 0),
            dt: 0.5,
            num_samples: 16,
            backend: Backend::Exact,
            trotter_steps_per_unit: 64,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        let series = spectrum_time_series(&spec).unwrap();
        assert!(series.iter().all(|s| (s - c(1.0, 0.0)).norm() < 1e-10));
        let peaks = spectral_peaks(&series, 0.5).unwrap();
        assert_eq!(peaks.len(), 1);
        assert!(peaks[0].lambda.abs() < 1e-6);
        assert!((peaks[0].weight - 1.0).abs() < 1e-6);
    }

    #[test]
    fn spectrum_peaks_of_z_on_plus() {
        let m = 128;
        let dt = 0.4;
        let spec = SpectrumSpec {
            q: PauliSum::from_string(&PauliString::single(1, 0, PauliLetter::Z).unwrap()),
            prep: plus_state(1, 0),
            dt,
            num_samples: m,
            backend: Backend::Exact,
            trotter_steps_per_unit: 64,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        let series = spectrum_time_series(&spec).unwrap();
        let peaks = spectral_peaks(&series, dt).unwrap();
        assert_eq!(peaks.len(), 2, "{peaks:?}");
        let resolution = 2.0 * PI / (m as f64 * dt);
        assert!((peaks[0].lambda + 1.0).abs() < resolution);
        assert!((peaks[1].lambda - 1.0).abs() < resolution);
        for p in &peaks {
            assert!((p.weight - 0.5).abs() < 0.05 * 0.5 + 0.01, "{p:?}");
        }
    }

    #[test]
    fn eigenstate_gives_single_full_weight_peak() {
        // Q = Z0, phi = |0> (eigenvalue +1)
        let spec = SpectrumSpec {
            q: PauliSum::from_string(&PauliString::single(1, 0, PauliLetter::Z).unwrap()),
            prep: flip_up(1, 0),
            dt: 0.4,
            num_samples: 64,
            backend: Backend::Exact,
            trotter_steps_per_unit: 64,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        let series = spectrum_time_series(&spec).unwrap();
        let peaks = spectral_peaks(&series, 0.4).unwrap();
        assert_eq!(peaks.len(), 1, "{peaks:?}");
        let resolution = 2.0 * PI / (64.0 * 0.4);
        assert!((peaks[0].lambda - 1.0).abs() < resolution);
        assert!((peaks[0].weight - 1.0).abs() < 0.05);
    }

    #[test]
    fn aliasing_and_sample_count_rejected() {
        let q = PauliSum::from_string(&PauliString::single(1, 0, PauliLetter::Z).unwrap());
        let mut spec = SpectrumSpec {
            q,
            prep: plus_state(1, 0),
            dt: 4.0,
            num_samples: 32,
            backend: Backend::Exact,
            trotter_steps_per_unit: 64,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        assert!(matches!(
            spectrum_time_series(&spec),
            Err(Error::Aliasing { .. })
        ));
        spec.dt = 0.3;
        spec.num_samples = 4;
        assert!(matches!(
            spectrum_time_series(&spec),
            Err(Error::TooFewSamples(4))
        ));
    }

    #[test]
    fn trotter_backend_tracks_exact_series() {
        let mut op = SecondQuantizedOperator::new(Statistics::Fermion, 2);
        op.add_hopping(0, 1, 0.8).unwrap();
        let q = jordan_wigner(&op).unwrap();
        let prep = prepare_slater(&SlaterSpec::new(2, vec![0]).unwrap()).unwrap();
        let mut spec = SpectrumSpec {
            q,
            prep,
            dt: 0.25,
            num_samples: 16,
            backend: Backend::Exact,
            trotter_steps_per_unit: 128,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        let exact = spectrum_time_series(&spec).unwrap();
        spec.backend = Backend::Trotter;
        let trotter = spectrum_time_series(&spec).unwrap();
        for (k, (a, b)) in exact.iter().zip(&trotter).enumerate() {
            assert!((a - b).norm() < 1e-3, "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn csv_rendering() {
        let rows = vec![(0.0, c(1.0, 0.0)), (0.5, c(0.25, -0.5))];
        let text = correlation_csv(&rows);
        assert!(text.starts_with("t,re,im\n"));
        assert_eq!(text.lines().count(), 3);
        let peaks = vec![SpectralPeak { lambda: -1.0, weight: 0.5 }];
        let text = spectrum_csv(&peaks);
        assert!(text.contains("lambda,weight"));
    }
}
