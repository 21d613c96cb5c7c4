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

//! Compilation of Pauli-exponential evolutions into the elementary gate set:
//! single-qubit rotations `R_mu(theta) = exp(-i theta/2 sigma_mu)` and
//! two-qubit Ising gates `ZZ(a, b, omega) = exp(i omega sigma_z^a sigma_z^b)`.
//!
//! A weight-k exponential `exp(i theta P)` is compiled by conjugation: basis
//! rotations take every non-pivot X/Y letter to Z, then ZZ(pi/4) conjugations
//! against the pivot strip one Z at a time (the pivot letter alternating
//! between X and Y) until a bare Rz or ZZ core remains. Signs picked up along
//! the way are tracked symbolically and folded into the core angle.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, PauliSum};

/// An elementary (or compilable) gate.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `exp(-i angle/2 sigma_x)` on `qubit`.
    Rx { qubit: usize, angle: f64 },
    /// `exp(-i angle/2 sigma_y)` on `qubit`.
    Ry { qubit: usize, angle: f64 },
    /// `exp(-i angle/2 sigma_z)` on `qubit`.
    Rz { qubit: usize, angle: f64 },
    /// `exp(i angle sigma_z^a sigma_z^b)`.
    ZZ { a: usize, b: usize, angle: f64 },
    /// `exp(i angle P)` applied on the branch where `control` reads `value`.
    CPauliExp {
        control: usize,
        value: u8,
        string: PauliString,
        angle: f64,
    },
    /// Scalar phase `exp(i angle)` applied on the branch where `control`
    /// reads `value` (an Rz on the control up to global phase).
    PhaseOnControl {
        control: usize,
        value: u8,
        angle: f64,
    },
}

impl Gate {
    pub fn family(&self) -> GateFamily {
        match self {
            Gate::Rx { .. } => GateFamily::Rx,
            Gate::Ry { .. } => GateFamily::Ry,
            Gate::Rz { .. } => GateFamily::Rz,
            Gate::ZZ { .. } => GateFamily::ZZ,
            Gate::CPauliExp { .. } => GateFamily::CPauliExp,
            Gate::PhaseOnControl { .. } => GateFamily::PhaseOnControl,
        }
    }

    pub fn inverse(&self) -> Gate {
        match self.clone() {
            Gate::Rx { qubit, angle } => Gate::Rx { qubit, angle: -angle },
            Gate::Ry { qubit, angle } => Gate::Ry { qubit, angle: -angle },
            Gate::Rz { qubit, angle } => Gate::Rz { qubit, angle: -angle },
            Gate::ZZ { a, b, angle } => Gate::ZZ { a, b, angle: -angle },
            Gate::CPauliExp {
                control,
                value,
                string,
                angle,
            } => Gate::CPauliExp {
                control,
                value,
                string,
                angle: -angle,
            },
            Gate::PhaseOnControl {
                control,
                value,
                angle,
            } => Gate::PhaseOnControl {
                control,
                value,
                angle: -angle,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GateFamily {
    Rx,
    Ry,
    Rz,
    ZZ,
    CPauliExp,
    PhaseOnControl,
}

impl fmt::Display for GateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateFamily::Rx => "RX",
            GateFamily::Ry => "RY",
            GateFamily::Rz => "RZ",
            GateFamily::ZZ => "ZZ",
            GateFamily::CPauliExp => "CPEXP",
            GateFamily::PhaseOnControl => "CPHASE",
        };
        write!(f, "{s}")
    }
}

/// Exact per-family gate counts of a circuit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCensus {
    pub rx: usize,
    pub ry: usize,
    pub rz: usize,
    pub zz: usize,
    pub cpexp: usize,
    pub cphase: usize,
}

impl GateCensus {
    pub fn total(&self) -> usize {
        self.rx + self.ry + self.rz + self.zz + self.cpexp + self.cphase
    }
}

impl fmt::Display for GateCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RX:{} RY:{} RZ:{} ZZ:{} CPEXP:{} CPHASE:{} total:{}",
            self.rx, self.ry, self.rz, self.zz, self.cpexp, self.cphase,
            self.total()
        )
    }
}

/// An ordered gate list; time increases with list position. The first gate in
/// the list is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    /// Scalar phase `exp(i global_phase)` dropped by "up to global phase"
    /// compilations, recorded so callers can restore it when it matters.
    global_phase: f64,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn add_global_phase(&mut self, phase: f64) {
        self.global_phase += phase;
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let n = self.num_qubits;
        let check = |q: usize| -> Result<()> {
            if q >= n {
                Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: n,
                })
            } else {
                Ok(())
            }
        };
        match &gate {
            Gate::Rx { qubit, .. } | Gate::Ry { qubit, .. } | Gate::Rz { qubit, .. } => {
                check(*qubit)?
            }
            Gate::ZZ { a, b, .. } => {
                check(*a)?;
                check(*b)?;
                if a == b {
                    return Err(Error::ControlOverlap(*a));
                }
            }
            Gate::CPauliExp {
                control, string, ..
            } => {
                check(*control)?;
                if string.num_qubits() != n {
                    return Err(Error::DimensionMismatch(string.num_qubits(), n));
                }
                if string.support().any(|q| q == *control) {
                    return Err(Error::ControlOverlap(*control));
                }
            }
            Gate::PhaseOnControl { control, .. } => check(*control)?,
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch(other.num_qubits, self.num_qubits));
        }
        self.gates.extend(other.gates.iter().cloned());
        self.global_phase += other.global_phase;
        Ok(())
    }

    /// The same circuit viewed on a wider register (identity on new qubits).
    pub fn embed(&self, num_qubits: usize) -> Result<Circuit> {
        if num_qubits < self.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, num_qubits));
        }
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::CPauliExp {
                    control,
                    value,
                    string,
                    angle,
                } => Ok(Gate::CPauliExp {
                    control: *control,
                    value: *value,
                    string: string.embed(num_qubits)?,
                    angle: *angle,
                }),
                other => Ok(other.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit {
            num_qubits,
            gates,
            global_phase: self.global_phase,
        })
    }

    /// The inverse circuit: gates reversed with negated angles.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    pub fn census(&self) -> GateCensus {
        let mut c = GateCensus::default();
        for g in &self.gates {
            match g.family() {
                GateFamily::Rx => c.rx += 1,
                GateFamily::Ry => c.ry += 1,
                GateFamily::Rz => c.rz += 1,
                GateFamily::ZZ => c.zz += 1,
                GateFamily::CPauliExp => c.cpexp += 1,
                GateFamily::PhaseOnControl => c.cphase += 1,
            }
        }
        c
    }

    /// One gate per line; angles in radians at full double precision.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.global_phase != 0.0 {
            out.push_str(&format!("# global phase {}\n", self.global_phase));
        }
        for g in &self.gates {
            match g {
                Gate::Rx { qubit, angle } => out.push_str(&format!("RX q{qubit} {angle}\n")),
                Gate::Ry { qubit, angle } => out.push_str(&format!("RY q{qubit} {angle}\n")),
                Gate::Rz { qubit, angle } => out.push_str(&format!("RZ q{qubit} {angle}\n")),
                Gate::ZZ { a, b, angle } => out.push_str(&format!("ZZ q{a} q{b} {angle}\n")),
                Gate::CPauliExp {
                    control,
                    value,
                    string,
                    angle,
                } => out.push_str(&format!(
                    "CPEXP c:q{control} v:{value} P:{} theta:{angle}\n",
                    string.compact()
                )),
                Gate::PhaseOnControl {
                    control,
                    value,
                    angle,
                } => out.push_str(&format!("CPHASE c:q{control} v:{value} phi:{angle}\n")),
            }
        }
        out
    }
}

/// A first-order Trotter breakup of `exp(i H t)` into `steps` slices, each a
/// fixed-order product of single-term exponentials.
#[derive(Debug, Clone)]
pub struct TrotterPlan {
    hamiltonian: PauliSum,
    total_time: f64,
    steps: usize,
    term_order: Vec<(PauliString, f64)>,
    /// Reserved: only first-order breakups are produced.
    pub order: u8,
}

impl TrotterPlan {
    /// Canonical term order: the sum's canonical (support-then-letter sorted)
    /// ordering, stable across runs.
    pub fn new(hamiltonian: PauliSum, total_time: f64, steps: usize) -> Result<Self> {
        if !hamiltonian.is_hermitian(1e-10) {
            return Err(Error::NotHermitian(hamiltonian.max_imag()));
        }
        if steps == 0 {
            return Err(Error::InvalidModel("trotter steps must be >= 1".into()));
        }
        let term_order = hamiltonian.terms().map(|(s, c)| (s, c.re)).collect();
        Ok(TrotterPlan {
            hamiltonian,
            total_time,
            steps,
            term_order,
            order: 1,
        })
    }

    /// Same plan with a caller-chosen permutation of the terms.
    pub fn with_order(mut self, order: Vec<PauliString>) -> Result<Self> {
        if order.len() != self.term_order.len() {
            return Err(Error::InvalidModel(
                "term order must be a permutation of the hamiltonian terms".into(),
            ));
        }
        let mut reordered = Vec::with_capacity(order.len());
        let mut seen = BTreeSet::new();
        for s in order {
            let c = self.hamiltonian.coefficient(&s);
            if c.norm() == 0.0 || !seen.insert(s.canonical().0) {
                return Err(Error::InvalidModel(
                    "term order must be a permutation of the hamiltonian terms".into(),
                ));
            }
            reordered.push((s, c.re));
        }
        self.term_order = reordered;
        Ok(self)
    }

    pub fn hamiltonian(&self) -> &PauliSum {
        &self.hamiltonian
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn dt(&self) -> f64 {
        self.total_time / self.steps as f64
    }
}

/// Tracks a Pauli string through a sequence of Clifford conjugations, keeping
/// the gate list that realizes them.
struct Conjugator {
    gates: Vec<Gate>,
    current: PauliString,
    sign: f64,
}

impl Conjugator {
    fn new(string: PauliString, sign: f64) -> Self {
        Conjugator {
            gates: Vec::new(),
            current: string,
            sign,
        }
    }

    fn absorb_phase(&mut self) {
        let phase = self.current.phase();
        debug_assert!(phase.im.abs() < 1e-12, "conjugation left a complex phase");
        self.sign *= phase.re.signum();
        self.current = self.current.clone().with_phase(Complex64::new(1.0, 0.0));
    }

    /// Conjugate by `R_axis(theta)` on `qubit` (theta = +-pi/2):
    /// `P -> cos(theta) P - i sin(theta) (axis_q P)` for anticommuting pairs.
    fn rotate(&mut self, qubit: usize, axis: PauliLetter, theta: f64) {
        let n = self.current.num_qubits();
        let a = PauliString::single(n, qubit, axis).expect("axis qubit in range");
        let prod = a.multiply(&self.current).expect("same register");
        let factor = Complex64::new(0.0, -theta.signum());
        let phase = prod.phase() * factor;
        self.current = prod.with_phase(phase);
        self.absorb_phase();
        let gate = match axis {
            PauliLetter::X => Gate::Rx { qubit, angle: theta },
            PauliLetter::Y => Gate::Ry { qubit, angle: theta },
            PauliLetter::Z => Gate::Rz { qubit, angle: theta },
            PauliLetter::I => unreachable!(),
        };
        self.gates.push(gate);
    }

    /// Conjugate by `ZZ(a, b, omega)` (omega = +-pi/4):
    /// `P -> cos(2 omega) P + i sin(2 omega) (Z_a Z_b P)` for anticommuting pairs.
    fn ising(&mut self, a: usize, b: usize, omega: f64) {
        let n = self.current.num_qubits();
        let zz = PauliString::from_letters(n, [(a, PauliLetter::Z), (b, PauliLetter::Z)])
            .expect("qubits in range");
        let prod = zz.multiply(&self.current).expect("same register");
        let factor = Complex64::new(0.0, omega.signum());
        let phase = prod.phase() * factor;
        self.current = prod.with_phase(phase);
        self.absorb_phase();
        self.gates.push(Gate::ZZ { a, b, angle: omega });
    }
}

/// Compile `exp(i angle P)` into elementary gates.
///
/// The string phase must be real (+-1); it is folded into the angle. The
/// returned circuit equals the dense exponential up to the recorded global
/// phase, with at most `4k + 1` gates for support size `k`.
pub fn synthesize_pauli_exponential(string: &PauliString, angle: f64) -> Result<Circuit> {
    let phase = string.phase();
    if phase.im.abs() > 1e-12 || (phase.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::NonRealPhase(phase));
    }
    let theta = angle * phase.re.signum();
    let n = string.num_qubits();
    let mut circuit = Circuit::new(n);

    let support: Vec<usize> = string.support().collect();
    if support.is_empty() {
        // exp(i theta I): global phase only.
        circuit.add_global_phase(theta);
        return Ok(circuit);
    }
    if support.len() == 1 {
        let q = support[0];
        // exp(i theta sigma_mu) = R_mu(-2 theta)
        let gate = match string.letter(q) {
            PauliLetter::X => Gate::Rx { qubit: q, angle: -2.0 * theta },
            PauliLetter::Y => Gate::Ry { qubit: q, angle: -2.0 * theta },
            PauliLetter::Z => Gate::Rz { qubit: q, angle: -2.0 * theta },
            PauliLetter::I => unreachable!(),
        };
        circuit.push(gate)?;
        return Ok(circuit);
    }

    let pivot = support[0];
    let bare = string.clone().with_phase(Complex64::new(1.0, 0.0));
    let mut conj = Conjugator::new(bare, 1.0);

    // Basis-change every non-pivot X/Y letter to Z.
    for &q in &support[1..] {
        match string.letter(q) {
            PauliLetter::X => conj.rotate(q, PauliLetter::Y, -FRAC_PI_2),
            PauliLetter::Y => conj.rotate(q, PauliLetter::X, FRAC_PI_2),
            PauliLetter::Z => {}
            PauliLetter::I => unreachable!(),
        }
    }

    // Strip trailing Z letters onto the pivot until weight 2 remains. Each
    // ZZ(pi/4) conjugation removes one Z and toggles the pivot X <-> Y.
    while conj.current.weight() > 2 {
        if conj.current.letter(pivot) == PauliLetter::Z {
            conj.rotate(pivot, PauliLetter::Y, FRAC_PI_2);
        }
        let last = conj
            .current
            .support()
            .last()
            .expect("weight > 2 has a last qubit");
        conj.ising(pivot, last, FRAC_PI_2 / 2.0);
    }

    // Land the pivot on Z so the core is a single Ising gate.
    match conj.current.letter(pivot) {
        PauliLetter::X => conj.rotate(pivot, PauliLetter::Y, -FRAC_PI_2),
        PauliLetter::Y => conj.rotate(pivot, PauliLetter::X, FRAC_PI_2),
        PauliLetter::Z => {}
        PauliLetter::I => unreachable!(),
    }

    debug_assert_eq!(conj.current.weight(), 2);
    debug_assert!(conj
        .current
        .support()
        .all(|q| conj.current.letter(q) == PauliLetter::Z));

    let core_qubits: Vec<usize> = conj.current.support().collect();
    let core = Gate::ZZ {
        a: core_qubits[0],
        b: core_qubits[1],
        angle: theta * conj.sign,
    };

    for g in &conj.gates {
        circuit.push(g.clone())?;
    }
    circuit.push(core)?;
    for g in conj.gates.iter().rev() {
        circuit.push(g.inverse())?;
    }
    Ok(circuit)
}

/// Concatenate `steps` first-order Trotter slices of `exp(i H t)`.
///
/// Exact (up to synthesis tolerance) when all terms mutually commute.
pub fn trotterize(plan: &TrotterPlan) -> Result<Circuit> {
    let dt = plan.dt();
    let mut circuit = Circuit::new(plan.hamiltonian.num_qubits());
    let mut slice = Circuit::new(plan.hamiltonian.num_qubits());
    for (s, coeff) in &plan.term_order {
        slice.append(&synthesize_pauli_exponential(s, coeff * dt)?)?;
    }
    for _ in 0..plan.steps {
        circuit.append(&slice)?;
    }
    Ok(circuit)
}

/// Expand a controlled Pauli exponential into uncontrolled exponentials via
///
/// `C_v[exp(i theta P)] = exp(i theta/2 P) * exp(-+ i theta/2 Z_c P)`
///
/// with the sign chosen so the non-matching branch cancels (`-` for control
/// value 1, `+` for value 0, under `|0> = |up>`, `sigma_z |0> = +|0>`).
pub fn expand_controlled(
    control: usize,
    value: u8,
    string: &PauliString,
    angle: f64,
) -> Result<Circuit> {
    let n = string.num_qubits();
    if control >= n {
        return Err(Error::QubitOutOfRange {
            qubit: control,
            num_qubits: n,
        });
    }
    if string.support().any(|q| q == control) {
        return Err(Error::ControlOverlap(control));
    }
    let phase = string.phase();
    if phase.im.abs() > 1e-12 || (phase.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::NonRealPhase(phase));
    }
    let theta = angle * phase.re.signum();
    let bare = string.clone().with_phase(Complex64::new(1.0, 0.0));

    let mut circuit = Circuit::new(n);
    if bare.is_identity() {
        circuit.push(Gate::PhaseOnControl {
            control,
            value,
            angle: theta,
        })?;
        return Ok(circuit);
    }
    let sign = if value == 1 { -1.0 } else { 1.0 };
    let zc = PauliString::single(n, control, PauliLetter::Z)?;
    let zp = zc.multiply(&bare)?;
    circuit.append(&synthesize_pauli_exponential(&bare, theta / 2.0)?)?;
    circuit.append(&synthesize_pauli_exponential(&zp, sign * theta / 2.0)?)?;
    Ok(circuit)
}

/// Wrap every gate of `inner` as controlled on `control = value`. The inner
/// circuit must not itself contain controlled gates.
pub fn control_circuit(inner: &Circuit, control: usize, value: u8) -> Result<Circuit> {
    let n = inner.num_qubits();
    let mut out = Circuit::new(n);
    if control >= n {
        return Err(Error::QubitOutOfRange {
            qubit: control,
            num_qubits: n,
        });
    }
    if inner.global_phase() != 0.0 {
        out.push(Gate::PhaseOnControl {
            control,
            value,
            angle: inner.global_phase(),
        })?;
    }
    for g in inner.gates() {
        match g {
            // R_mu(theta) = exp(i (-theta/2) sigma_mu)
            Gate::Rx { qubit, angle } => out.push(Gate::CPauliExp {
                control,
                value,
                string: PauliString::single(n, *qubit, PauliLetter::X)?,
                angle: -angle / 2.0,
            })?,
            Gate::Ry { qubit, angle } => out.push(Gate::CPauliExp {
                control,
                value,
                string: PauliString::single(n, *qubit, PauliLetter::Y)?,
                angle: -angle / 2.0,
            })?,
            Gate::Rz { qubit, angle } => out.push(Gate::CPauliExp {
                control,
                value,
                string: PauliString::single(n, *qubit, PauliLetter::Z)?,
                angle: -angle / 2.0,
            })?,
            Gate::ZZ { a, b, angle } => out.push(Gate::CPauliExp {
                control,
                value,
                string: PauliString::from_letters(
                    n,
                    [(*a, PauliLetter::Z), (*b, PauliLetter::Z)],
                )?,
                angle: *angle,
            })?,
            Gate::CPauliExp { .. } | Gate::PhaseOnControl { .. } => {
                return Err(Error::NestedControl)
            }
        }
    }
    Ok(out)
}

/// Counts per gate family.
pub fn gate_census(circuit: &Circuit) -> GateCensus {
    circuit.census()
}

/// Trotterized evolution `exp(i H t)` in one call.
pub fn trotter_circuit(h: &PauliSum, t: f64, steps: usize) -> Result<Circuit> {
    trotterize(&TrotterPlan::new(h.clone(), t, steps)?)
}
