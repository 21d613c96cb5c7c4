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

//! Translation of second-quantized lattice operators into Pauli sums.
//!
//! Three statistics are supported: spinless fermions via the Jordan-Wigner
//! transformation, hard-core anyons with a statistical angle `theta` via the
//! deformed string operators, and occupation-capped bosons via a one-hot
//! (unary) encoding of each site's occupation number.
//!
//! Conventions: `|0> = |up>` with `sigma_z|0> = +|0>`, the fermionic/anyonic
//! vacuum is the all-down state, and `sigma_+ = (sigma_x + i sigma_y)/2`
//! raises `|down>` to `|up>`, so creation operators map to `sigma_+` images.
//! Modes are 0-based.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{sigma_pm, PauliLetter, PauliString, PauliSum};

/// Particle statistics of a second-quantized operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statistics {
    Fermion,
    /// Hard-core anyons with statistical angle `theta` in `[0, 2*pi)`.
    /// `theta = pi` is the fermion limit, `theta = 0` the hard-core boson
    /// limit.
    Anyon { theta: f64 },
    /// Bosons with at most `n_max` particles per site.
    Boson { n_max: usize },
}

impl Statistics {
    pub fn name(&self) -> &'static str {
        match self {
            Statistics::Fermion => "fermion",
            Statistics::Anyon { .. } => "anyon",
            Statistics::Boson { .. } => "boson",
        }
    }
}

impl std::fmt::Display for Statistics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Statistics::Fermion => write!(f, "fermion"),
            Statistics::Anyon { theta } => write!(f, "anyon(theta={theta})"),
            Statistics::Boson { n_max } => write!(f, "boson(n_max={n_max})"),
        }
    }
}

/// Which ladder operator a factor denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Create,
    Annihilate,
    Number,
}

/// One ladder-operator factor inside a product term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderFactor {
    pub mode: usize,
    pub kind: FactorKind,
}

impl LadderFactor {
    pub fn create(mode: usize) -> Self {
        LadderFactor { mode, kind: FactorKind::Create }
    }

    pub fn annihilate(mode: usize) -> Self {
        LadderFactor { mode, kind: FactorKind::Annihilate }
    }

    pub fn number(mode: usize) -> Self {
        LadderFactor { mode, kind: FactorKind::Number }
    }
}

/// A sum of coefficient-weighted ordered products of ladder factors.
///
/// Factor order within a term is significant: the factors are mapped one by
/// one and multiplied in the given order, so noncommuting monomials keep
/// their meaning.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondQuantizedOperator {
    statistics: Statistics,
    num_modes: usize,
    terms: Vec<(Complex64, Vec<LadderFactor>)>,
}

impl SecondQuantizedOperator {
    pub fn new(statistics: Statistics, num_modes: usize) -> Self {
        assert!(num_modes >= 1, "need at least one mode");
        SecondQuantizedOperator { statistics, num_modes, terms: Vec::new() }
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn terms(&self) -> &[(Complex64, Vec<LadderFactor>)] {
        &self.terms
    }

    pub fn add_term(
        &mut self,
        coefficient: Complex64,
        factors: Vec<LadderFactor>,
    ) -> Result<()> {
        for f in &factors {
            if f.mode >= self.num_modes {
                return Err(Error::ModeOutOfRange {
                    mode: f.mode,
                    num_modes: self.num_modes,
                });
            }
        }
        self.terms.push((coefficient, factors));
        Ok(())
    }

    /// Convenience: `coeff * (x†_i x_j + x†_j x_i)`.
    pub fn add_hopping(&mut self, i: usize, j: usize, coeff: f64) -> Result<()> {
        let c = Complex64::new(coeff, 0.0);
        self.add_term(c, vec![LadderFactor::create(i), LadderFactor::annihilate(j)])?;
        self.add_term(c, vec![LadderFactor::create(j), LadderFactor::annihilate(i)])
    }
}

/// Qubit layout of the one-hot boson encoding: site `i` owns the contiguous
/// block of `n_max + 1` qubits `[i*(n_max+1), (i+1)*(n_max+1))`, one per
/// occupation level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BosonLayout {
    pub num_sites: usize,
    pub n_max: usize,
}

impl BosonLayout {
    pub fn new(num_sites: usize, n_max: usize) -> Self {
        assert!(num_sites >= 1 && n_max >= 1);
        BosonLayout { num_sites, n_max }
    }

    pub fn qubit_index(&self, site: usize, level: usize) -> usize {
        debug_assert!(site < self.num_sites && level <= self.n_max);
        site * (self.n_max + 1) + level
    }

    pub fn num_qubits(&self) -> usize {
        self.num_sites * (self.n_max + 1)
    }

    /// Basis index of the one-hot product state `|n_0, ..., n_{N-1}>`:
    /// qubit `(n_i, i)` up, every other qubit down.
    pub fn basis_index(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.num_sites {
            return Err(Error::DimensionMismatch(occupations.len(), self.num_sites));
        }
        let n = self.num_qubits();
        let mut idx = (1usize << n) - 1;
        for (site, &occ) in occupations.iter().enumerate() {
            if occ > self.n_max {
                return Err(Error::OccupationOutOfRange {
                    occupation: occ,
                    n_max: self.n_max,
                });
            }
            let q = self.qubit_index(site, occ);
            idx &= !(1usize << (n - 1 - q));
        }
        Ok(idx)
    }

    /// All one-hot basis indices, ordered as mixed-radix occupation vectors
    /// `(n_0, ..., n_{N-1})` with the last site fastest.
    pub fn one_hot_indices(&self) -> Vec<usize> {
        let per_site = self.n_max + 1;
        let total = per_site.pow(self.num_sites as u32);
        let mut out = Vec::with_capacity(total);
        for code in 0..total {
            let mut occ = vec![0usize; self.num_sites];
            let mut rest = code;
            for site in (0..self.num_sites).rev() {
                occ[site] = rest % per_site;
                rest /= per_site;
            }
            out.push(self.basis_index(&occ).expect("valid occupations"));
        }
        out
    }
}

fn expect_statistics(
    op: &SecondQuantizedOperator,
    expected: &'static str,
) -> Result<()> {
    if op.statistics.name() != expected {
        return Err(Error::WrongStatistics {
            expected,
            got: op.statistics.to_string(),
        });
    }
    Ok(())
}

/// `(1 + sigma_z^q)/2`, the spin image of a hard-core number operator.
fn number_image(num_qubits: usize, qubit: usize) -> Result<PauliSum> {
    let half = Complex64::new(0.5, 0.0);
    let mut sum = PauliSum::scalar(num_qubits, half);
    sum.add_term(
        &PauliString::single(num_qubits, qubit, PauliLetter::Z)?,
        half,
    );
    Ok(sum)
}

fn jw_factor(num_qubits: usize, f: &LadderFactor) -> Result<PauliSum> {
    match f.kind {
        FactorKind::Number => number_image(num_qubits, f.mode),
        FactorKind::Create | FactorKind::Annihilate => {
            let raising = f.kind == FactorKind::Create;
            // (prod_{l<j} -sigma_z^l) sigma_pm^j: the string is one Pauli
            // term with phase (-1)^j.
            let sign = if f.mode % 2 == 0 { 1.0 } else { -1.0 };
            let string = PauliString::from_letters(
                num_qubits,
                (0..f.mode).map(|l| (l, PauliLetter::Z)),
            )?
            .with_phase(Complex64::new(sign, 0.0));
            PauliSum::from_string(&string).multiply(&sigma_pm(num_qubits, f.mode, raising)?)
        }
    }
}

/// Map a fermionic operator to Pauli strings via the Jordan-Wigner
/// transformation. Output acts on `num_modes` qubits.
pub fn jordan_wigner(op: &SecondQuantizedOperator) -> Result<PauliSum> {
    expect_statistics(op, "fermion")?;
    map_terms(op, op.num_modes, |n, f| jw_factor(n, f))
}

fn anyon_factor(num_qubits: usize, theta: f64, f: &LadderFactor) -> Result<PauliSum> {
    match f.kind {
        FactorKind::Number => number_image(num_qubits, f.mode),
        FactorKind::Create | FactorKind::Annihilate => {
            let raising = f.kind == FactorKind::Create;
            // Creation uses exp(-i theta) in the string factor, annihilation
            // its conjugate.
            let e = Complex64::from_polar(1.0, if raising { -theta } else { theta });
            let one = Complex64::new(1.0, 0.0);
            // Snap sub-epsilon components so the theta = pi and theta = 0
            // limits coincide exactly with the fermionic and hard-core forms.
            let snap = |z: Complex64| {
                let clean = |v: f64| if v.abs() < 1e-15 { 0.0 } else { v };
                Complex64::new(clean(z.re), clean(z.im))
            };
            let a = snap((e + one) / 2.0);
            let b = snap((e - one) / 2.0);
            let mut string = PauliSum::scalar(num_qubits, one);
            for i in 0..f.mode {
                let mut factor = PauliSum::scalar(num_qubits, a);
                factor.add_term(
                    &PauliString::single(num_qubits, i, PauliLetter::Z)?,
                    b,
                );
                string = string.multiply(&factor)?;
            }
            string.multiply(&sigma_pm(num_qubits, f.mode, raising)?)
        }
    }
}

/// Map a hard-core anyonic operator to Pauli strings. At `theta = pi` the
/// output is term-for-term identical to [`jordan_wigner`]; at `theta = 0`
/// the string factors disappear and creation maps to a bare `sigma_+`.
pub fn anyon_map(op: &SecondQuantizedOperator) -> Result<PauliSum> {
    let theta = match op.statistics {
        Statistics::Anyon { theta } => theta,
        _ => {
            return Err(Error::WrongStatistics {
                expected: "anyon",
                got: op.statistics.to_string(),
            })
        }
    };
    map_terms(op, op.num_modes, |n, f| anyon_factor(n, theta, f))
}

fn boson_factor(layout: &BosonLayout, f: &LadderFactor) -> Result<PauliSum> {
    let n = layout.num_qubits();
    match f.kind {
        FactorKind::Number => {
            // n_i = sum_level level * (1 + sigma_z^{(level,i)})/2
            let mut sum = PauliSum::zero(n);
            for level in 0..=layout.n_max {
                let w = Complex64::new(level as f64, 0.0);
                sum = sum.add(&number_image(n, layout.qubit_index(f.mode, level))?.scale(w))?;
            }
            Ok(sum)
        }
        FactorKind::Create | FactorKind::Annihilate => {
            // b†_i = sum_{m=0}^{n_max-1} sqrt(m+1) sigma_-^{(m,i)} sigma_+^{(m+1,i)}
            let raising = f.kind == FactorKind::Create;
            let mut sum = PauliSum::zero(n);
            for m in 0..layout.n_max {
                let low = layout.qubit_index(f.mode, m);
                let high = layout.qubit_index(f.mode, m + 1);
                let pair = sigma_pm(n, low, !raising)?
                    .multiply(&sigma_pm(n, high, raising)?)?
                    .scale(Complex64::new(((m + 1) as f64).sqrt(), 0.0));
                sum = sum.add(&pair)?;
            }
            Ok(sum)
        }
    }
}

/// Map an occupation-capped bosonic operator to its one-hot spin expansion.
/// Output acts on `layout.num_qubits()` qubits.
pub fn boson_map(op: &SecondQuantizedOperator, layout: &BosonLayout) -> Result<PauliSum> {
    let n_max = match op.statistics {
        Statistics::Boson { n_max } => n_max,
        _ => {
            return Err(Error::WrongStatistics {
                expected: "boson",
                got: op.statistics.to_string(),
            })
        }
    };
    if n_max != layout.n_max || op.num_modes > layout.num_sites {
        return Err(Error::InvalidModel(format!(
            "boson layout ({} sites, n_max {}) does not cover the operator \
             ({} modes, n_max {})",
            layout.num_sites, layout.n_max, op.num_modes, n_max
        )));
    }
    map_terms(op, layout.num_qubits(), |_, f| boson_factor(layout, f))
}

fn map_terms(
    op: &SecondQuantizedOperator,
    num_qubits: usize,
    factor_image: impl Fn(usize, &LadderFactor) -> Result<PauliSum>,
) -> Result<PauliSum> {
    let mut total = PauliSum::zero(num_qubits);
    for (coeff, factors) in &op.terms {
        let mut term = PauliSum::scalar(num_qubits, *coeff);
        for f in factors {
            term = term.multiply(&factor_image(num_qubits, f)?)?;
        }
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Map an operator according to its own statistics. Bosonic operators get
/// the minimal layout `BosonLayout::new(num_modes, n_max)`.
pub fn map_operator(op: &SecondQuantizedOperator) -> Result<PauliSum> {
    match op.statistics {
        Statistics::Fermion => jordan_wigner(op),
        Statistics::Anyon { .. } => anyon_map(op),
        Statistics::Boson { n_max } => {
            boson_map(op, &BosonLayout::new(op.num_modes, n_max))
        }
    }
}

/// Dense `(n_max+1) x (n_max+1)` truncated creation matrix with subdiagonal
/// `(sqrt(1), ..., sqrt(n_max))`.
pub fn truncated_creation_matrix(n_max: usize) -> DMatrix<Complex64> {
    let dim = n_max + 1;
    let mut m = DMatrix::zeros(dim, dim);
    for n in 0..n_max {
        m[(n + 1, n)] = Complex64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    m
}

/// One algebra-relation check inside a [`ValidationReport`].
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub violation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violation <= self.tolerance
    }
}

/// Outcome of a dense-matrix validation suite.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    fn push(&mut self, name: String, violation: f64, tolerance: f64) {
        self.checks.push(CheckResult { name, violation, tolerance });
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.norm()))
}

fn single_mode(
    statistics: Statistics,
    num_modes: usize,
    factor: LadderFactor,
) -> SecondQuantizedOperator {
    let mut op = SecondQuantizedOperator::new(statistics, num_modes);
    op.add_term(Complex64::new(1.0, 0.0), vec![factor]).expect("mode in range");
    op
}

/// Check the fermionic anticommutators `{c_i, c_j} = 0` and
/// `{c†_i, c_j} = delta_ij` on dense matrices for all `i <= j`.
pub fn validate_fermion_algebra(num_modes: usize, tolerance: f64) -> Result<ValidationReport> {
    let dim = 1usize << num_modes;
    let ident = DMatrix::<Complex64>::identity(dim, dim);
    let mat = |factor: LadderFactor| -> Result<DMatrix<Complex64>> {
        jordan_wigner(&single_mode(Statistics::Fermion, num_modes, factor))?
            .to_matrix(num_modes)
    };
    let mut report = ValidationReport::default();
    for i in 0..num_modes {
        let ci = mat(LadderFactor::annihilate(i))?;
        let cdi = mat(LadderFactor::create(i))?;
        for j in i..num_modes {
            let cj = mat(LadderFactor::annihilate(j))?;
            let anti = &ci * &cj + &cj * &ci;
            report.push(format!("{{c_{i}, c_{j}}} = 0"), max_abs(&anti), tolerance);
            let mut anti = &cdi * &cj + &cj * &cdi;
            if i == j {
                anti -= &ident;
            }
            report.push(
                format!("{{c†_{i}, c_{j}}} = delta_{{{i}{j}}}"),
                max_abs(&anti),
                tolerance,
            );
        }
    }
    Ok(report)
}

/// Check the theta-deformed anyonic relations on dense matrices for all
/// `i <= j` (the relations for `i > j` are not stated by the deformed
/// bracket convention and are not checked):
/// `[a_i, a_j]_theta = 0`, `[a†_i, a†_j]_theta = 0`,
/// `[a_i, a†_j]_{-theta} = delta_ij (1 - (e^{-i theta}+1) n_j)`, and
/// `[n_i, a†_j] = delta_ij a†_j`, with `[A,B]_theta = AB - e^{i theta} BA`.
pub fn validate_anyon_algebra(
    num_modes: usize,
    theta: f64,
    tolerance: f64,
) -> Result<ValidationReport> {
    let stats = Statistics::Anyon { theta };
    let mat = |factor: LadderFactor| -> Result<DMatrix<Complex64>> {
        anyon_map(&single_mode(stats, num_modes, factor))?.to_matrix(num_modes)
    };
    let bracket = |a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, angle: f64| {
        a * b - (b * a) * Complex64::from_polar(1.0, angle)
    };
    let mut report = ValidationReport::default();
    for i in 0..num_modes {
        let ai = mat(LadderFactor::annihilate(i))?;
        let adi = mat(LadderFactor::create(i))?;
        let ni = mat(LadderFactor::number(i))?;
        for j in i..num_modes {
            let aj = mat(LadderFactor::annihilate(j))?;
            let adj = mat(LadderFactor::create(j))?;
            report.push(
                format!("[a_{i}, a_{j}]_theta = 0"),
                max_abs(&bracket(&ai, &aj, theta)),
                tolerance,
            );
            report.push(
                format!("[a†_{i}, a†_{j}]_theta = 0"),
                max_abs(&bracket(&adi, &adj, theta)),
                tolerance,
            );
            let mut lhs = bracket(&ai, &adj, -theta);
            if i == j {
                let nj = mat(LadderFactor::number(j))?;
                let dim = lhs.nrows();
                let e = Complex64::from_polar(1.0, -theta) + Complex64::new(1.0, 0.0);
                lhs -= DMatrix::<Complex64>::identity(dim, dim) - nj * e;
            }
            report.push(
                format!("[a_{i}, a†_{j}]_(-theta) = delta_{{{i}{j}}}(1-(e^(-i theta)+1)n)"),
                max_abs(&lhs),
                tolerance,
            );
            let mut comm = &ni * &adj - &adj * &ni;
            if i == j {
                comm -= &adj;
            }
            report.push(
                format!("[n_{i}, a†_{j}] = delta_{{{i}{j}}} a†"),
                max_abs(&comm),
                tolerance,
            );
        }
    }
    Ok(report)
}

/// Check the modified commutators of the occupation-capped boson matrices on
/// two sites: `[b_i, b_j] = 0`,
/// `[b_i, b†_j] = delta_ij [1 - (n_max+1)/n_max! (b†_i)^n_max (b_i)^n_max]`,
/// and the nilpotency `(b†)^(n_max+1) = 0`.
pub fn validate_modified_commutators(n_max: usize, tolerance: f64) -> Result<ValidationReport> {
    let bdag = truncated_creation_matrix(n_max);
    let dim = n_max + 1;
    let ident = DMatrix::<Complex64>::identity(dim, dim);
    // Two-site tensor representation.
    let site = |m: &DMatrix<Complex64>, s: usize| -> DMatrix<Complex64> {
        if s == 0 {
            m.kronecker(&ident)
        } else {
            ident.kronecker(m)
        }
    };
    let factorial: f64 = (1..=n_max).map(|k| k as f64).product();
    let coeff = Complex64::new((n_max as f64 + 1.0) / factorial, 0.0);
    let id2 = DMatrix::<Complex64>::identity(dim * dim, dim * dim);
    let mut report = ValidationReport::default();
    for i in 0..2usize {
        let bi = site(&bdag.adjoint(), i);
        let bdi = site(&bdag, i);
        for j in i..2 {
            let bj = site(&bdag.adjoint(), j);
            let bdj = site(&bdag, j);
            report.push(
                format!("[b_{i}, b_{j}] = 0"),
                max_abs(&(&bi * &bj - &bj * &bi)),
                tolerance,
            );
            let mut comm = &bi * &bdj - &bdj * &bi;
            if i == j {
                let mut pow_d = id2.clone();
                let mut pow_a = id2.clone();
                for _ in 0..n_max {
                    pow_d = &pow_d * &bdi;
                    pow_a = &pow_a * &bi;
                }
                comm -= &id2 - (pow_d * pow_a) * coeff;
            }
            report.push(
                format!("[b_{i}, b†_{j}] = delta_{{{i}{j}}}[1-(n_max+1)/n_max! b†^n b^n]"),
                max_abs(&comm),
                tolerance,
            );
        }
    }
    let mut nil = ident.clone();
    for _ in 0..=n_max {
        nil = &nil * &bdag;
    }
    report.push(format!("(b†)^{} = 0", n_max + 1), max_abs(&nil), tolerance);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fermion_factor(num_modes: usize, f: LadderFactor) -> PauliSum {
        jordan_wigner(&single_mode(Statistics::Fermion, num_modes, f)).unwrap()
    }

    #[test]
    fn annihilation_mode_zero_is_sigma_minus() {
        let sum = fermion_factor(1, LadderFactor::annihilate(0));
        let x = PauliString::single(1, 0, PauliLetter::X).unwrap();
        let y = PauliString::single(1, 0, PauliLetter::Y).unwrap();
        assert!((sum.coefficient(&x) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((sum.coefficient(&y) - c(0.0, -0.5)).norm() < 1e-15);
        assert_eq!(sum.num_terms(), 2);
    }

    #[test]
    fn annihilation_mode_one_carries_z_string() {
        // c_1 = (-sigma_z^0) sigma_-^1 = -(Z0 X1)/2 + (i/2) Z0 Y1
        let sum = fermion_factor(2, LadderFactor::annihilate(1));
        let zx = PauliString::from_letters(
            2,
            [(0, PauliLetter::Z), (1, PauliLetter::X)],
        )
        .unwrap();
        let zy = PauliString::from_letters(
            2,
            [(0, PauliLetter::Z), (1, PauliLetter::Y)],
        )
        .unwrap();
        assert!((sum.coefficient(&zx) - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((sum.coefficient(&zy) - c(0.0, 0.5)).norm() < 1e-15);
        assert_eq!(sum.num_terms(), 2);
    }

    #[test]
    fn number_operator_is_half_one_plus_z() {
        let sum = fermion_factor(2, LadderFactor::number(1));
        let ident = PauliString::identity(2);
        let z1 = PauliString::single(2, 1, PauliLetter::Z).unwrap();
        assert!((sum.coefficient(&ident) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((sum.coefficient(&z1) - c(0.5, 0.0)).norm() < 1e-15);
        // matches c†_1 c_1 built from ladder factors
        let mut op = SecondQuantizedOperator::new(Statistics::Fermion, 2);
        op.add_term(c(1.0, 0.0), vec![LadderFactor::create(1), LadderFactor::annihilate(1)])
            .unwrap();
        assert!(jordan_wigner(&op).unwrap().approx_eq(&sum, 1e-14));
    }

    #[test]
    fn hopping_is_plus_half_xx_plus_yy() {
        // c†_0 c_1 + c†_1 c_0 = (X0 X1 + Y0 Y1)/2; the sign is fixed by the
        // dense oracle below.
        let mut op = SecondQuantizedOperator::new(Statistics::Fermion, 2);
        op.add_hopping(0, 1, 1.0).unwrap();
        let sum = jordan_wigner(&op).unwrap();
        let xx = PauliString::from_letters(2, [(0, PauliLetter::X), (1, PauliLetter::X)])
            .unwrap();
        let yy = PauliString::from_letters(2, [(0, PauliLetter::Y), (1, PauliLetter::Y)])
            .unwrap();
        assert!((sum.coefficient(&xx) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((sum.coefficient(&yy) - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(sum.num_terms(), 2);
        // oracle: acting on |vac> gives 0; acting on the one-particle states
        // hops the particle with amplitude +1.
        let m = sum.to_matrix(2).unwrap();
        // |10> = particle in mode 0 = up,down = basis index 0b01
        let b10 = 0b01usize;
        let b01 = 0b10usize;
        assert!((m[(b01, b10)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((m[(b10, b01)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(m.column(3).iter().all(|x| x.norm() < 1e-14), "vacuum annihilated");
    }

    #[test]
    fn fermion_algebra_holds() {
        let report = validate_fermion_algebra(5, 1e-12).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn wrong_statistics_rejected() {
        let op = single_mode(Statistics::Anyon { theta: 0.3 }, 2, LadderFactor::create(0));
        assert!(matches!(jordan_wigner(&op), Err(Error::WrongStatistics { .. })));
        let op = single_mode(Statistics::Fermion, 2, LadderFactor::create(0));
        assert!(matches!(anyon_map(&op), Err(Error::WrongStatistics { .. })));
        assert!(matches!(
            boson_map(&op, &BosonLayout::new(2, 1)),
            Err(Error::WrongStatistics { .. })
        ));
    }

    #[test]
    fn anyon_theta_pi_equals_jordan_wigner_term_for_term() {
        for mode in 0..4 {
            for kind in [FactorKind::Create, FactorKind::Annihilate, FactorKind::Number] {
                let f = LadderFactor { mode, kind };
                let fermi = fermion_factor(4, f);
                let any = anyon_map(&single_mode(Statistics::Anyon { theta: PI }, 4, f))
                    .unwrap();
                assert!(
                    any.approx_eq(&fermi, 1e-12),
                    "mode {mode} kind {kind:?} differ"
                );
            }
        }
    }

    #[test]
    fn anyon_theta_zero_is_bare_sigma_plus() {
        let sum = anyon_map(&single_mode(
            Statistics::Anyon { theta: 0.0 },
            2,
            LadderFactor::create(1),
        ))
        .unwrap();
        assert!(sum.approx_eq(&sigma_pm(2, 1, true).unwrap(), 1e-14));
    }

    #[test]
    fn anyon_deformed_commutator_mode_one() {
        // theta = pi/2: [a_1, a†_1]_{-theta} = 1 - (e^{-i theta}+1) n_1 on
        // the 4-dimensional representation.
        let report = validate_anyon_algebra(2, PI / 2.0, 1e-12).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn anyon_algebra_suite() {
        for theta in [0.0, PI / 3.0, PI / 2.0, PI, 3.0 * PI / 2.0] {
            let report = validate_anyon_algebra(4, theta, 1e-12).unwrap();
            assert!(report.passed(), "theta {theta}: {:?}", report.failures());
        }
    }

    #[test]
    fn boson_creation_hard_core_layout() {
        // n_max=1: b†_0 on one site = sigma_-^{(0,0)} sigma_+^{(1,0)},
        // 4 strings on qubits 0,1.
        let layout = BosonLayout::new(1, 1);
        let op = single_mode(Statistics::Boson { n_max: 1 }, 1, LadderFactor::create(0));
        let sum = boson_map(&op, &layout).unwrap();
        let expect = sigma_pm(2, 0, false)
            .unwrap()
            .multiply(&sigma_pm(2, 1, true).unwrap())
            .unwrap();
        assert!(sum.approx_eq(&expect, 1e-14));
        assert_eq!(sum.num_terms(), 4);
    }

    #[test]
    fn boson_matrix_on_one_hot_subspace() {
        // n_max=2, one site: restriction of the spin image of b† to the
        // one-hot subspace reproduces the 3x3 matrix with subdiagonal
        // (1, sqrt(2)).
        let layout = BosonLayout::new(1, 2);
        let op = single_mode(Statistics::Boson { n_max: 2 }, 1, LadderFactor::create(0));
        let m = boson_map(&op, &layout).unwrap().to_matrix(3).unwrap();
        let idx = layout.one_hot_indices();
        let truncated = truncated_creation_matrix(2);
        for (r, &br) in idx.iter().enumerate() {
            for (cc, &bc) in idx.iter().enumerate() {
                assert!(
                    (m[(br, bc)] - truncated[(r, cc)]).norm() < 1e-13,
                    "entry ({r},{cc})"
                );
            }
        }
    }

    #[test]
    fn boson_hopping_matches_truncated_oracle() {
        // Two sites, n_max=1: b†_0 b_1 + b†_1 b_0 restricted to the one-hot
        // subspace equals the dense truncated-matrix Hamiltonian.
        let layout = BosonLayout::new(2, 1);
        let mut op = SecondQuantizedOperator::new(Statistics::Boson { n_max: 1 }, 2);
        op.add_hopping(0, 1, 1.0).unwrap();
        let m = boson_map(&op, &layout).unwrap().to_matrix(4).unwrap();
        let bdag = truncated_creation_matrix(1);
        let ident = DMatrix::<Complex64>::identity(2, 2);
        let h = bdag.kronecker(&ident) * ident.kronecker(&bdag.adjoint())
            + ident.kronecker(&bdag) * bdag.adjoint().kronecker(&ident);
        let idx = layout.one_hot_indices();
        for (r, &br) in idx.iter().enumerate() {
            for (cc, &bc) in idx.iter().enumerate() {
                assert!((m[(br, bc)] - h[(r, cc)]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn boson_number_operator() {
        let layout = BosonLayout::new(1, 2);
        let op = single_mode(Statistics::Boson { n_max: 2 }, 1, LadderFactor::number(0));
        let m = boson_map(&op, &layout).unwrap().to_matrix(3).unwrap();
        let idx = layout.one_hot_indices();
        for (occ, &b) in idx.iter().enumerate() {
            assert!((m[(b, b)] - c(occ as f64, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn boson_one_hot_conservation() {
        // [b†_i, sum_n sigma_z^{(n,i)}] = 0
        let layout = BosonLayout::new(1, 2);
        let op = single_mode(Statistics::Boson { n_max: 2 }, 1, LadderFactor::create(0));
        let bd = boson_map(&op, &layout).unwrap().to_matrix(3).unwrap();
        let mut zsum = PauliSum::zero(3);
        for level in 0..=2 {
            zsum.add_term(
                &PauliString::single(3, layout.qubit_index(0, level), PauliLetter::Z).unwrap(),
                c(1.0, 0.0),
            );
        }
        let z = zsum.to_matrix(3).unwrap();
        assert!(max_abs(&(&bd * &z - &z * &bd)) < 1e-13);
    }

    #[test]
    fn modified_commutators_suite() {
        for n_max in 1..=3 {
            let report = validate_modified_commutators(n_max, 1e-12).unwrap();
            assert!(report.passed(), "n_max {n_max}: {:?}", report.failures());
        }
    }

    #[test]
    fn hard_core_commutator_is_one_minus_two_n() {
        // n_max=1: [b, b†] = 1 - 2 b† b on the 2x2 matrices.
        let bdag = truncated_creation_matrix(1);
        let b = bdag.adjoint();
        let comm = &b * &bdag - &bdag * &b;
        let expect = DMatrix::<Complex64>::identity(2, 2) - (&bdag * &b) * c(2.0, 0.0);
        assert!(max_abs(&(comm - expect)) < 1e-15);
    }

    #[test]
    fn hermitian_operator_maps_to_real_coefficients() {
        let mut op = SecondQuantizedOperator::new(Statistics::Fermion, 3);
        op.add_hopping(0, 2, 0.7).unwrap();
        op.add_term(c(0.25, 0.0), vec![LadderFactor::number(1)]).unwrap();
        let sum = jordan_wigner(&op).unwrap();
        assert!(sum.is_hermitian(1e-14));
    }

    #[test]
    fn mode_out_of_range_rejected() {
        let mut op = SecondQuantizedOperator::new(Statistics::Fermion, 2);
        assert!(matches!(
            op.add_term(c(1.0, 0.0), vec![LadderFactor::create(2)]),
            Err(Error::ModeOutOfRange { .. })
        ));
    }

    #[test]
    fn layout_basis_index() {
        let layout = BosonLayout::new(2, 1);
        // occupations (1, 0): qubits up at (1,0)->q1 and (0,1)->q2, i.e.
        // pattern down,up,up,down = bits 1001 = 9.
        assert_eq!(layout.basis_index(&[1, 0]).unwrap(), 0b1001);
        assert_eq!(layout.num_qubits(), 4);
        assert!(matches!(
            layout.basis_index(&[2, 0]),
            Err(Error::OccupationOutOfRange { .. })
        ));
    }
}
