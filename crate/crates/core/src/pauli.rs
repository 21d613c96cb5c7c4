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

//! Symbolic algebra of multi-qubit Pauli operators and their dense realization.
//!
//! Conventions, fixed here and inherited by every other module:
//! * qubit 0 is the most significant tensor factor, so a basis index `b`
//!   carries the state of qubit `q` in bit `n - 1 - q`;
//! * `|0> = |up>` with `sigma_z |0> = +|0>`;
//! * `sigma_+- = (sigma_x +- i sigma_y) / 2`, expanded into strings rather
//!   than kept as primitive letters.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients with modulus below this are dropped during normalization.
pub const PRUNE_EPS: f64 = 1e-15;

/// Default cap on dense-matrix construction (2^14 x 2^14 at most).
pub const DEFAULT_ORACLE_LIMIT: usize = 14;

/// A single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    /// Product `self * other` as `(letter, k)` with the phase `i^k`.
    pub fn mul(self, other: PauliLetter) -> (PauliLetter, u8) {
        use PauliLetter::*;
        match (self, other) {
            (I, p) | (p, I) => (p, 0),
            (X, X) | (Y, Y) | (Z, Z) => (I, 0),
            (X, Y) => (Z, 1),
            (Y, X) => (Z, 3),
            (Y, Z) => (X, 1),
            (Z, Y) => (X, 3),
            (Z, X) => (Y, 1),
            (X, Z) => (Y, 3),
        }
    }

    pub fn from_char(c: char) -> Option<PauliLetter> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The phase-free part of a Pauli string: qubit index -> non-identity letter.
pub type LetterMap = BTreeMap<usize, PauliLetter>;

/// A phased tensor product of single-qubit Pauli letters.
///
/// Identity is implied on absent indices. The phase is a unit complex number,
/// `+-1` or `+-i` for anything produced by string multiplication.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    num_qubits: usize,
    letters: LetterMap,
    phase: Complex64,
}

impl PauliString {
    /// The identity string on `num_qubits` qubits, phase +1.
    pub fn identity(num_qubits: usize) -> Self {
        PauliString {
            num_qubits,
            letters: LetterMap::new(),
            phase: Complex64::new(1.0, 0.0),
        }
    }

    /// Build a string from `(qubit, letter)` pairs; identities are dropped.
    pub fn from_letters(
        num_qubits: usize,
        letters: impl IntoIterator<Item = (usize, PauliLetter)>,
    ) -> Result<Self> {
        let mut s = PauliString::identity(num_qubits);
        for (q, l) in letters {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits,
                });
            }
            if l != PauliLetter::I {
                s.letters.insert(q, l);
            }
        }
        Ok(s)
    }

    /// Single-letter string `letter` on `qubit`.
    pub fn single(num_qubits: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        Self::from_letters(num_qubits, [(qubit, letter)])
    }

    pub fn with_phase(mut self, phase: Complex64) -> Self {
        self.phase = phase;
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    /// Letter at `qubit` (identity when absent).
    pub fn letter(&self, qubit: usize) -> PauliLetter {
        self.letters.get(&qubit).copied().unwrap_or(PauliLetter::I)
    }

    /// Qubits carrying a non-identity letter, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.keys().copied()
    }

    pub fn weight(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &LetterMap {
        &self.letters
    }

    /// The phase-free canonical key together with the split-off phase.
    pub fn canonical(&self) -> (LetterMap, Complex64) {
        (self.letters.clone(), self.phase)
    }

    /// Product `self * other` with accumulated phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        let mut letters = LetterMap::new();
        let mut phase = self.phase * other.phase;
        let mut qubits: Vec<usize> = self.letters.keys().copied().collect();
        qubits.extend(other.letters.keys().copied());
        qubits.sort_unstable();
        qubits.dedup();
        for q in qubits {
            let (l, k) = self.letter(q).mul(other.letter(q));
            phase *= i_pow(k);
            if l != PauliLetter::I {
                letters.insert(q, l);
            }
        }
        Ok(PauliString {
            num_qubits: self.num_qubits,
            letters,
            phase,
        })
    }

    /// True iff the strings commute: the number of positions with distinct
    /// non-identity letters is even.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        let mut clashes = 0usize;
        for (q, &l) in &self.letters {
            let m = other.letter(*q);
            if m != PauliLetter::I && m != l {
                clashes += 1;
            }
        }
        Ok(clashes % 2 == 0)
    }

    pub fn hermitian_conjugate(&self) -> PauliString {
        let mut s = self.clone();
        s.phase = s.phase.conj();
        s
    }

    /// The same string viewed on a wider register (identity on new qubits).
    pub fn embed(&self, num_qubits: usize) -> Result<PauliString> {
        if num_qubits < self.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, num_qubits));
        }
        let mut s = self.clone();
        s.num_qubits = num_qubits;
        Ok(s)
    }

    /// Action on the computational basis state `b`: `P |b> = factor |b'>`.
    ///
    /// Qubit `q` lives in bit `num_qubits - 1 - q`; bit value 0 is `|0> = |up>`.
    pub fn apply_to_basis(&self, b: usize) -> (usize, Complex64) {
        let (b2, f) = apply_letters_to_basis(&self.letters, self.num_qubits, b);
        (b2, f * self.phase)
    }

    /// Dense matrix of the string on `2^n` dimensions.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.num_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let (row, f) = self.apply_to_basis(col);
            m[(row, col)] = f;
        }
        m
    }

    /// Parse a compact rendering such as `X0Z1` or `X0 Z1 X2`.
    /// An empty body (or `I`) is the identity string.
    pub fn parse(text: &str, num_qubits: usize) -> Result<PauliString> {
        let mut letters = Vec::new();
        let body = text.trim();
        if body.is_empty() || body == "I" {
            return Ok(PauliString::identity(num_qubits));
        }
        let mut chars = body.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            let letter = PauliLetter::from_char(c)
                .ok_or_else(|| Error::Parse(format!("unexpected pauli letter '{c}' in '{text}'")))?;
            let mut digits = String::new();
            while let Some(d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(*d);
                    chars.next();
                } else {
                    break;
                }
            }
            if digits.is_empty() {
                return Err(Error::Parse(format!("missing qubit index after '{c}' in '{text}'")));
            }
            let q: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad qubit index in '{text}'")))?;
            letters.push((q, letter));
        }
        PauliString::from_letters(num_qubits, letters)
    }

    /// Compact body without phase, e.g. `X0Z1`.
    pub fn compact(&self) -> String {
        if self.letters.is_empty() {
            return "I".to_string();
        }
        self.letters
            .iter()
            .map(|(q, l)| format!("{}{}", l.as_char(), q))
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", format_complex(self.phase))?;
        if self.letters.is_empty() {
            return write!(f, "I");
        }
        let body = self
            .letters
            .iter()
            .map(|(q, l)| format!("{}{}", l.as_char(), q))
            .collect::<Vec<_>>()
            .join(" ");
        write!(f, "{body}")
    }
}

fn apply_letters_to_basis(letters: &LetterMap, num_qubits: usize, b: usize) -> (usize, Complex64) {
    let mut out = b;
    let mut factor = Complex64::new(1.0, 0.0);
    for (&q, &l) in letters {
        let bit_pos = num_qubits - 1 - q;
        let bit = (b >> bit_pos) & 1;
        match l {
            PauliLetter::I => {}
            PauliLetter::X => {
                out ^= 1 << bit_pos;
            }
            PauliLetter::Y => {
                out ^= 1 << bit_pos;
                // Y|0> = i|1>, Y|1> = -i|0>
                factor *= if bit == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                };
            }
            PauliLetter::Z => {
                if bit == 1 {
                    factor = -factor;
                }
            }
        }
    }
    (out, factor)
}

fn format_complex(c: Complex64) -> String {
    if c.im.abs() < 1e-14 {
        format!("{:+}", c.re)
    } else if c.re.abs() < 1e-14 {
        format!("{:+}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

/// A complex-weighted linear combination of canonical (phase-free) strings.
///
/// Phases of inserted strings are folded into the coefficients, duplicate
/// strings are merged, and vanishing coefficients are removed, so the term map
/// is a canonical form independent of insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: BTreeMap<LetterMap, Complex64>,
}

impl PauliSum {
    pub fn zero(num_qubits: usize) -> Self {
        PauliSum {
            num_qubits,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `c * Identity`.
    pub fn scalar(num_qubits: usize, c: Complex64) -> Self {
        let mut s = PauliSum::zero(num_qubits);
        s.add_term(&PauliString::identity(num_qubits), c);
        s
    }

    pub fn from_string(s: &PauliString) -> Self {
        let mut sum = PauliSum::zero(s.num_qubits());
        sum.add_term(s, Complex64::new(1.0, 0.0));
        sum
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff * string`; the string phase is folded into the coefficient.
    pub fn add_term(&mut self, string: &PauliString, coeff: Complex64) {
        assert_eq!(
            string.num_qubits(),
            self.num_qubits,
            "term qubit count must match the sum"
        );
        let (key, phase) = string.canonical();
        let c = self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0));
        *c += coeff * phase;
        if c.norm() < PRUNE_EPS {
            let (key, _) = string.canonical();
            self.terms.remove(&key);
        }
    }

    /// Terms as `(phase-free string, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (PauliString, Complex64)> + '_ {
        self.terms.iter().map(|(k, &c)| {
            (
                PauliString {
                    num_qubits: self.num_qubits,
                    letters: k.clone(),
                    phase: Complex64::new(1.0, 0.0),
                },
                c,
            )
        })
    }

    pub fn coefficient(&self, string: &PauliString) -> Complex64 {
        let (key, phase) = string.canonical();
        self.terms.get(&key).map(|&c| c * phase.conj()).unwrap_or_default()
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(&s, c);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> PauliSum {
        let mut out = PauliSum::zero(self.num_qubits);
        for (s, c) in self.terms() {
            out.add_term(&s, c * factor);
        }
        out
    }

    /// Operator product of two sums, expanded and merged.
    pub fn multiply(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        let mut out = PauliSum::zero(self.num_qubits);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let prod = a.multiply(&b)?;
                out.add_term(&prod, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn hermitian_conjugate(&self) -> PauliSum {
        let mut out = PauliSum::zero(self.num_qubits);
        for (s, c) in self.terms() {
            out.add_term(&s, c.conj());
        }
        out
    }

    /// True iff every coefficient is real within `tol` (strings are a
    /// Hermitian basis, so this is Hermiticity of the operator).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Largest |imaginary part| over the coefficients.
    pub fn max_imag(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.im.abs())
            .fold(0.0, f64::max)
    }

    /// Cheap upper bound on the operator norm: sum of coefficient moduli.
    pub fn coeff_norm_bound(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Embed into a register with more qubits (identity on the added ones).
    pub fn embed(&self, num_qubits: usize) -> Result<PauliSum> {
        if num_qubits < self.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, num_qubits));
        }
        let mut out = PauliSum::zero(num_qubits);
        for (k, &c) in &self.terms {
            out.terms.insert(k.clone(), c);
        }
        Ok(out)
    }

    /// Dense matrix `sum coeff * tensor(letters)` with qubit 0 as the most
    /// significant factor. Refused above `oracle_limit` qubits.
    pub fn to_matrix(&self, oracle_limit: usize) -> Result<DMatrix<Complex64>> {
        if self.num_qubits > oracle_limit {
            return Err(Error::OracleLimit {
                required: self.num_qubits,
                limit: oracle_limit,
            });
        }
        let dim = 1usize << self.num_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for (k, &c) in &self.terms {
            for col in 0..dim {
                let (row, f) = apply_letters_to_basis(k, self.num_qubits, col);
                m[(row, col)] += c * f;
            }
        }
        Ok(m)
    }

    /// Term-by-term comparison: identical canonical term sets with
    /// coefficients equal to within `tol`.
    pub fn approx_eq(&self, other: &PauliSum, tol: f64) -> bool {
        if self.num_qubits != other.num_qubits || self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms.iter().all(|(k, c)| {
            other
                .terms
                .get(k)
                .map(|d| (c - d).norm() <= tol)
                .unwrap_or(false)
        })
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in self.terms() {
            if !first {
                write!(f, "  ")?;
            }
            first = false;
            let body = if s.is_identity() {
                "I".to_string()
            } else {
                s.letters
                    .iter()
                    .map(|(q, l)| format!("{}{}", l.as_char(), q))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            write!(f, "{} {}", format_complex(c), body)?;
        }
        Ok(())
    }
}

/// `sigma_+` or `sigma_-` on one qubit, expanded into `(X +- iY)/2`.
pub fn sigma_pm(num_qubits: usize, qubit: usize, raising: bool) -> Result<PauliSum> {
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, if raising { 0.5 } else { -0.5 });
    let mut s = PauliSum::zero(num_qubits);
    s.add_term(&PauliString::single(num_qubits, qubit, PauliLetter::X)?, half);
    s.add_term(&PauliString::single(num_qubits, qubit, PauliLetter::Y)?, half_i);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn string(n: usize, spec: &str) -> PauliString {
        PauliString::parse(spec, n).unwrap()
    }

    #[test]
    fn letter_products_match_dense_matrices() {
        use PauliLetter::*;
        for a in [I, X, Y, Z] {
            for b in [I, X, Y, Z] {
                let sa = PauliString::single(1, 0, a).unwrap();
                let sb = PauliString::single(1, 0, b).unwrap();
                let prod = sa.multiply(&sb).unwrap();
                let dense = sa.to_matrix() * sb.to_matrix();
                let diff = (dense - prod.to_matrix()).norm();
                assert!(diff < 1e-15, "{a:?}*{b:?} mismatch: {diff}");
            }
        }
    }

    #[test]
    fn x_times_y_is_i_z() {
        let a = string(2, "X0");
        let b = string(2, "Y0");
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.letter(0), PauliLetter::Z);
        assert!((p.phase() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn squares_are_identity() {
        for l in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
            let s = PauliString::single(3, 1, l).unwrap();
            let p = s.multiply(&s).unwrap();
            assert!(p.is_identity());
            assert!((p.phase() - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn xz_times_zz_example() {
        // (X0 Z1) * (Z0 Z1) = -i Y0, checked against the 4x4 dense product.
        let a = string(2, "X0Z1");
        let b = string(2, "Z0Z1");
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.letter(0), PauliLetter::Y);
        assert_eq!(p.letter(1), PauliLetter::I);
        assert!((p.phase() - c(0.0, -1.0)).norm() < 1e-15);
        let diff = (a.to_matrix() * b.to_matrix() - p.to_matrix()).norm();
        assert!(diff < 1e-14);
    }

    #[test]
    fn commutation_cases() {
        let x = string(1, "X0");
        let z = string(1, "Z0");
        assert!(!x.commutes(&z).unwrap());
        let a = string(2, "X0Z1");
        let b = string(2, "Z0X1");
        assert!(a.commutes(&b).unwrap());
        let id = PauliString::identity(2);
        assert!(a.commutes(&id).unwrap());
        // matrix check
        let (ma, mb) = (a.to_matrix(), b.to_matrix());
        assert!((&ma * &mb - &mb * &ma).norm() < 1e-12);
    }

    #[test]
    fn commutes_agrees_with_dense_commutator() {
        use rand::Rng;
        let mut rng = rand::thread_rng();
        let letters = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
        for _ in 0..200 {
            let n = rng.gen_range(1..=5);
            let a = PauliString::from_letters(
                n,
                (0..n).map(|q| (q, letters[rng.gen_range(0..4)])),
            )
            .unwrap();
            let b = PauliString::from_letters(
                n,
                (0..n).map(|q| (q, letters[rng.gen_range(0..4)])),
            )
            .unwrap();
            let (ma, mb) = (a.to_matrix(), b.to_matrix());
            let comm = (&ma * &mb - &mb * &ma).norm();
            assert_eq!(a.commutes(&b).unwrap(), comm < 1e-12);
            // product consistency
            let p = a.multiply(&b).unwrap();
            assert!((&ma * &mb - p.to_matrix()).norm() < 1e-14);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = string(2, "X0");
        let b = string(3, "X0");
        assert!(matches!(a.multiply(&b), Err(Error::DimensionMismatch(2, 3))));
        assert!(a.commutes(&b).is_err());
    }

    #[test]
    fn z_matrix_convention() {
        // |0> = |up>, sigma_z |0> = +|0>: Z on one qubit is diag(1, -1).
        let mut s = PauliSum::zero(1);
        s.add_term(&string(1, "Z0"), c(1.0, 0.0));
        let m = s.to_matrix(DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(-1.0, 0.0));
        assert_eq!(m[(0, 1)], c(0.0, 0.0));

        let mut s = PauliSum::zero(1);
        s.add_term(&string(1, "X0"), c(1.0, 0.0));
        let m = s.to_matrix(DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(1.0, 0.0));
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        // Z on qubit 0 of a 2-qubit register: diag(1, 1, -1, -1).
        let mut s = PauliSum::zero(2);
        s.add_term(&string(2, "Z0"), c(1.0, 0.0));
        let m = s.to_matrix(DEFAULT_ORACLE_LIMIT).unwrap();
        for b in 0..4usize {
            let expect = if b >> 1 == 0 { 1.0 } else { -1.0 };
            assert_eq!(m[(b, b)], c(expect, 0.0));
        }
    }

    #[test]
    fn worked_three_qubit_string_squares_to_identity() {
        let mut s = PauliSum::zero(3);
        s.add_term(&string(3, "X0Z1X2"), c(1.0, 0.0));
        let m = s.to_matrix(DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(m.nrows(), 8);
        let sq = &m * &m;
        let id = DMatrix::<Complex64>::identity(8, 8);
        assert!((sq - id).norm() < 1e-14);
    }

    #[test]
    fn oracle_limit_refusal() {
        let s = PauliSum::scalar(15, c(1.0, 0.0));
        match s.to_matrix(DEFAULT_ORACLE_LIMIT) {
            Err(Error::OracleLimit { required: 15, limit: 14 }) => {}
            other => panic!("expected oracle-limit refusal, got {other:?}"),
        }
    }

    #[test]
    fn hermitian_check() {
        let mut s = PauliSum::zero(1);
        s.add_term(&string(1, "X0"), c(1.0, 0.0));
        assert!(s.is_hermitian(1e-12));
        let mut s = PauliSum::zero(1);
        s.add_term(&string(1, "X0"), c(0.0, 1.0));
        assert!(!s.is_hermitian(1e-12));
    }

    #[test]
    fn normalization_merges_and_prunes() {
        let mut a = PauliSum::zero(2);
        a.add_term(&string(2, "X0Z1"), c(0.5, 0.0));
        a.add_term(&string(2, "X0Z1").with_phase(c(-1.0, 0.0)), c(0.5, 0.0));
        assert!(a.is_zero());

        // phase folding: i * (X0) with coeff 2 == coeff 2i on canonical X0
        let mut b = PauliSum::zero(2);
        b.add_term(&string(2, "X0").with_phase(c(0.0, 1.0)), c(2.0, 0.0));
        assert!((b.coefficient(&string(2, "X0")) - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn sum_matrix_matches_term_products() {
        use rand::Rng;
        let mut rng = rand::thread_rng();
        let letters = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let mut a = PauliSum::zero(n);
            let mut b = PauliSum::zero(n);
            for _ in 0..3 {
                let s = PauliString::from_letters(
                    n,
                    (0..n).map(|q| (q, letters[rng.gen_range(0..4)])),
                )
                .unwrap();
                a.add_term(&s, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                let t = PauliString::from_letters(
                    n,
                    (0..n).map(|q| (q, letters[rng.gen_range(0..4)])),
                )
                .unwrap();
                b.add_term(&t, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
            let prod = a.multiply(&b).unwrap();
            let dense = a.to_matrix(14).unwrap() * b.to_matrix(14).unwrap();
            assert!((dense - prod.to_matrix(14).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn sigma_pm_expansion() {
        // sigma_+ |1> = |0>: matrix [[0,1],[0,0]].
        let sp = sigma_pm(1, 0, true).unwrap();
        let m = sp.to_matrix(14).unwrap();
        assert!((m[(0, 1)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(m[(0, 0)].norm() < 1e-15 && m[(1, 0)].norm() < 1e-15 && m[(1, 1)].norm() < 1e-15);
        let sm = sigma_pm(1, 0, false).unwrap();
        let m = sm.to_matrix(14).unwrap();
        assert!((m[(1, 0)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn parse_round_trip() {
        let s = string(4, "X0 Z2 Y3");
        assert_eq!(s.compact(), "X0Z2Y3");
        let t = PauliString::parse(&s.compact(), 4).unwrap();
        assert_eq!(s, t);
    }
}
