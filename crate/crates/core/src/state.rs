//! Pure states, named test states, the Acin canonical form and local operators.
//!
//! Amplitude `a_i` belongs to the basis state whose n-bit expansion of `i` gives
//! qubit 1 the most significant bit and qubit n the least significant one.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::{Complex, Error, Result};

/// Largest qubit count accepted by [`PureState::new`].
pub const MAX_QUBITS: usize = 24;

/// Largest qubit count accepted by [`random_state`].
pub const MAX_RANDOM_QUBITS: usize = 14;

/// Tolerance on `|Σ|a_i|² − 1|` for a state to count as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Parity of the number of 1-bits of `i`.
pub fn parity(i: u64) -> u8 {
    (i.count_ones() & 1) as u8
}

/// Bit of `qubit` (1-based) in amplitude index `i` of an `n`-qubit state.
#[inline]
pub fn qubit_bit(i: usize, qubit: usize, n: usize) -> usize {
    (i >> (n - qubit)) & 1
}

/// Inverse of [`qubit_bit`]: assemble an index from per-qubit bits, qubit 1 first.
pub fn index_from_bits(bits: &[usize]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | (b & 1))
}

/// An n-qubit pure state. Values are immutable; transformations return new states.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex>,
}

impl PureState {
    pub fn new(n: usize, amplitudes: Vec<Complex>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        if amplitudes.len() != 1 << n {
            return Err(Error::InvalidState(format!(
                "expected {} amplitudes for n = {n}, got {}",
                1usize << n,
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        Ok(Self { n, amplitudes })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(n: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(n, amplitudes.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        if index >= 1 << n {
            return Err(Error::InvalidState(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex::new(0.0, 0.0); 1 << n];
        amps[index] = Complex::new(1.0, 0.0);
        Self::new(n, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex {
        self.amplitudes[i]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(self.norm_sqr()))
        }
    }

    /// Returns `self / ‖self‖`; the zero state is rejected.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("cannot normalize the zero vector".into()));
        }
        Ok(self.scaled(Complex::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, s: Complex) -> Self {
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * s).collect(),
        }
    }

    /// `|self⟩ ⊗ |other⟩`; qubits of `other` follow those of `self`.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let n = self.n + other.n;
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self::new(n, amps)
    }

    /// Largest elementwise distance to another state of the same size.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Named test states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardState {
    Ghz,
    W,
    Bell,
    Zeros,
    Xi,
    Vartheta,
    W1,
    W2,
}

impl StandardState {
    pub const ALL: [StandardState; 8] = [
        StandardState::Ghz,
        StandardState::W,
        StandardState::Bell,
        StandardState::Zeros,
        StandardState::Xi,
        StandardState::Vartheta,
        StandardState::W1,
        StandardState::W2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StandardState::Ghz => "ghz",
            StandardState::W => "w",
            StandardState::Bell => "bell",
            StandardState::Zeros => "zeros",
            StandardState::Xi => "xi",
            StandardState::Vartheta => "vartheta",
            StandardState::W1 => "w1",
            StandardState::W2 => "w2",
        }
    }
}

impl fmt::Display for StandardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StandardState::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    }
}

/// The three real amplitudes `(λ_0, λ_2, λ_3)` of the `w2` test state.
pub fn w2_lambdas() -> (f64, f64, f64) {
    let base = 0.5 - SQRT_2 / 4.0;
    (
        (0.25 * base).sqrt(),
        (0.5 + SQRT_2 / 4.0).sqrt(),
        (0.75 * base).sqrt(),
    )
}

/// Constructs one of the named test states.
pub fn standard_state(name: StandardState, n: usize) -> Result<PureState> {
    let incompatible = || Error::IncompatibleQubits {
        name: name.name().to_string(),
        n,
    };
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange(n));
    }
    let dim = 1usize << n;
    let mut amps = vec![0.0; dim];
    match name {
        StandardState::Ghz => {
            amps[0] = FRAC_1_SQRT_2;
            amps[dim - 1] = FRAC_1_SQRT_2;
        }
        StandardState::W => {
            let v = 1.0 / (n as f64).sqrt();
            for q in 0..n {
                amps[1 << q] = v;
            }
        }
        StandardState::Bell => {
            if n != 2 {
                return Err(incompatible());
            }
            amps[0] = FRAC_1_SQRT_2;
            amps[3] = FRAC_1_SQRT_2;
        }
        StandardState::Zeros => amps[0] = 1.0,
        StandardState::Xi => {
            if n != 3 {
                return Err(incompatible());
            }
            let v = 1.0 / (2.0 * SQRT_2);
            amps.iter_mut().for_each(|a| *a = v);
            amps[7] = -v;
        }
        StandardState::Vartheta => {
            if n != 3 {
                return Err(incompatible());
            }
            let v = 1.0 / 3f64.sqrt();
            amps[0b000] = v;
            amps[0b101] = v;
            amps[0b110] = v;
        }
        StandardState::W1 => {
            if n != 3 {
                return Err(incompatible());
            }
            for i in [0b000, 0b100, 0b101, 0b110] {
                amps[i] = 0.5;
            }
        }
        StandardState::W2 => {
            if n != 3 {
                return Err(incompatible());
            }
            let (l0, l2, l3) = w2_lambdas();
            amps[0b000] = l0;
            amps[0b101] = l2;
            amps[0b110] = l3;
        }
    }
    PureState::from_real(n, &amps)
}

/// Acin canonical form of a three-qubit state:
/// `λ_0|000⟩ + λ_1 e^{iφ}|100⟩ + λ_2|101⟩ + λ_3|110⟩ + λ_4|111⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcinForm {
    lambda: [f64; 5],
    phi: f64,
}

impl AcinForm {
    /// Validates `λ_i ≥ 0`, `0 ≤ φ ≤ π` and `Σ λ_i² = 1` within [`NORM_TOL`].
    pub fn new(lambda: [f64; 5], phi: f64) -> Result<Self> {
        if lambda.iter().chain(std::iter::once(&phi)).any(|x| !x.is_finite()) {
            return Err(Error::InvalidAcinForm("non-finite parameter".into()));
        }
        if let Some(i) = lambda.iter().position(|&l| l < 0.0) {
            return Err(Error::InvalidAcinForm(format!("lambda{i} is negative")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&phi) {
            return Err(Error::InvalidAcinForm(format!("phi = {phi} outside [0, pi]")));
        }
        let norm: f64 = lambda.iter().map(|l| l * l).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidAcinForm(format!(
                "sum of squared lambdas is {norm}, expected 1"
            )));
        }
        Ok(Self { lambda, phi })
    }

    /// Like [`AcinForm::new`] but rescales the λ vector to unit norm first.
    pub fn normalized(lambda: [f64; 5], phi: f64) -> Result<Self> {
        let norm = lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidAcinForm("lambda vector has zero norm".into()));
        }
        Self::new(lambda.map(|l| l / norm), phi)
    }

    /// Parses a comma-separated list of five λ values.
    pub fn parse(lambdas: &str, phi: f64) -> Result<Self> {
        let values = lambdas
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidAcinForm(format!("bad number `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        let lambda: [f64; 5] = values.try_into().map_err(|v: Vec<f64>| {
            Error::InvalidAcinForm(format!("expected 5 lambdas, got {}", v.len()))
        })?;
        Self::new(lambda, phi)
    }

    pub fn lambda(&self, i: usize) -> f64 {
        self.lambda[i]
    }

    pub fn lambdas(&self) -> [f64; 5] {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// The three-qubit state of an Acin form.
pub fn acin_state(form: &AcinForm) -> PureState {
    let l = form.lambda;
    let mut amps = vec![Complex::new(0.0, 0.0); 8];
    amps[0b000] = Complex::new(l[0], 0.0);
    amps[0b100] = Complex::from_polar(l[1], form.phi);
    amps[0b101] = Complex::new(l[2], 0.0);
    amps[0b110] = Complex::new(l[3], 0.0);
    amps[0b111] = Complex::new(l[4], 0.0);
    PureState { n: 3, amplitudes: amps }
}

pub type Matrix2c = Matrix2<Complex>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Unitary,
    Invertible,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Unitary => "unitary",
            OperatorKind::Invertible => "invertible",
        })
    }
}

/// A tensor product `A_1 ⊗ ⋯ ⊗ A_n` of single-qubit operators.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    factors: Vec<Matrix2c>,
    kind: OperatorKind,
}

/// Unitarity tolerance on `‖U†U − I‖_max`.
pub const UNITARY_TOL: f64 = 1e-8;

/// Smallest `|det A_k|` accepted for an invertible factor.
pub const MIN_ABS_DET: f64 = 1e-12;

impl LocalOperator {
    pub fn new(factors: Vec<Matrix2c>, kind: OperatorKind) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidOperator("no factors".into()));
        }
        for (k, a) in factors.iter().enumerate() {
            if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidOperator(format!("factor {} is not finite", k + 1)));
            }
            match kind {
                OperatorKind::Unitary => {
                    let dev = unitarity_defect(a);
                    if dev >= UNITARY_TOL {
                        return Err(Error::InvalidOperator(format!(
                            "factor {} is not unitary (deviation {dev:e})",
                            k + 1
                        )));
                    }
                }
                OperatorKind::Invertible => {
                    if a.determinant().norm() <= MIN_ABS_DET {
                        return Err(Error::InvalidOperator(format!(
                            "factor {} is singular",
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { factors, kind })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            factors: vec![Matrix2c::identity(); n],
            kind: OperatorKind::Unitary,
        }
    }

    pub fn factors(&self) -> &[Matrix2c] {
        &self.factors
    }

    /// Factor acting on `qubit` (1-based).
    pub fn factor(&self, qubit: usize) -> &Matrix2c {
        &self.factors[qubit - 1]
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }
}

/// `‖U†U − I‖_max`.
pub fn unitarity_defect(u: &Matrix2c) -> f64 {
    (u.adjoint() * u - Matrix2c::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Applies `A_1 ⊗ ⋯ ⊗ A_n` one qubit axis at a time.
pub fn apply_local(state: &PureState, op: &LocalOperator) -> Result<PureState> {
    let n = state.n;
    if op.n() != n {
        return Err(Error::InvalidOperator(format!(
            "operator has {} factors, state has {n} qubits",
            op.n()
        )));
    }
    let mut amps = state.amplitudes.clone();
    let dim = amps.len();
    for (k, a) in op.factors.iter().enumerate() {
        if *a == Matrix2c::identity() {
            continue;
        }
        let stride = 1 << (n - k - 1);
        for base in (0..dim).step_by(2 * stride) {
            for i0 in base..base + stride {
                let i1 = i0 + stride;
                let (x0, x1) = (amps[i0], amps[i1]);
                amps[i0] = a[(0, 0)] * x0 + a[(0, 1)] * x1;
                amps[i1] = a[(1, 0)] * x0 + a[(1, 1)] * x1;
            }
        }
    }
    Ok(PureState { n, amplitudes: amps })
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex::new(re, im) * FRAC_1_SQRT_2
}

fn gaussian_matrix2(rng: &mut ChaCha8Rng) -> Matrix2c {
    Matrix2c::new(
        complex_gaussian(rng),
        complex_gaussian(rng),
        complex_gaussian(rng),
        complex_gaussian(rng),
    )
}

/// Random state with i.i.d. standard complex Gaussian amplitudes, normalized.
pub fn random_state(n: usize, seed: u64) -> Result<PureState> {
    if n == 0 || n > MAX_RANDOM_QUBITS {
        return Err(Error::QubitCountOutOfRange(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<Complex> = (0..1usize << n).map(|_| complex_gaussian(&mut rng)).collect();
    PureState::new(n, amps)?.normalized()
}

const MAX_REJECTIONS: usize = 1000;
const MIN_RANDOM_DET: f64 = 1e-3;
const MAX_RANDOM_COND: f64 = 1e3;

/// Condition number `σ_max / σ_min` of a 2×2 matrix.
pub fn condition_number(a: &Matrix2c) -> f64 {
    let fro2: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let det = a.determinant().norm();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let smax2 = 0.5 * (fro2 + disc);
    // smin² = det² / smax² avoids cancellation in (fro2 - disc).
    let smin2 = if smax2 > 0.0 { det * det / smax2 } else { 0.0 };
    if smin2 == 0.0 {
        f64::INFINITY
    } else {
        (smax2 / smin2).sqrt()
    }
}

/// Haar-distributed 2×2 unitary: Gram-Schmidt on a Gaussian matrix, which leaves
/// the triangular factor with positive real diagonal.
fn haar_unitary2(rng: &mut ChaCha8Rng) -> Matrix2c {
    loop {
        let g = gaussian_matrix2(rng);
        let c0 = g.column(0).into_owned();
        let c1 = g.column(1).into_owned();
        let r00 = c0.norm();
        if r00 == 0.0 {
            continue;
        }
        let q0 = c0 / Complex::new(r00, 0.0);
        let r01 = q0.dotc(&c1);
        let v = c1 - q0 * r01;
        let r11 = v.norm();
        if r11 == 0.0 {
            continue;
        }
        let q1 = v / Complex::new(r11, 0.0);
        return Matrix2c::from_columns(&[q0, q1]);
    }
}

/// Random local operator of the given kind, deterministic for a fixed seed.
pub fn random_local(n: usize, kind: OperatorKind, seed: u64) -> Result<LocalOperator> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::with_capacity(n);
    for _ in 0..n {
        let a = match kind {
            OperatorKind::Unitary => haar_unitary2(&mut rng),
            OperatorKind::Invertible => {
                let mut accepted = None;
                for _ in 0..MAX_REJECTIONS {
                    let g = gaussian_matrix2(&mut rng);
                    if g.determinant().norm() >= MIN_RANDOM_DET
                        && condition_number(&g) <= MAX_RANDOM_COND
                    {
                        accepted = Some(g);
                        break;
                    }
                }
                accepted.ok_or(Error::SamplingFailed(MAX_REJECTIONS))?
            }
        };
        factors.push(a);
    }
    LocalOperator::new(factors, kind)
}

/// Pauli X.
pub fn sigma_x() -> Matrix2c {
    let o = Complex::new(0.0, 0.0);
    let i = Complex::new(1.0, 0.0);
    Matrix2c::new(o, i, i, o)
}

/// Hadamard gate.
pub fn hadamard() -> Matrix2c {
    let h = Complex::new(FRAC_1_SQRT_2, 0.0);
    Matrix2c::new(h, h, h, -h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity(0), 0);
        assert_eq!(parity(7), 1);
        assert_eq!(parity(6), 0);
    }

    #[test]
    fn index_bits_round_trip() {
        for n in 1..=6 {
            for i in 0..1usize << n {
                let bits: Vec<usize> = (1..=n).map(|q| qubit_bit(i, q, n)).collect();
                assert_eq!(index_from_bits(&bits), i);
            }
        }
        // qubit 1 is the most significant bit
        assert_eq!(qubit_bit(0b100, 1, 3), 1);
        assert_eq!(qubit_bit(0b100, 3, 3), 0);
    }

    #[test]
    fn named_states() {
        let ghz = standard_state(StandardState::Ghz, 3).unwrap();
        for i in 0..8 {
            let expected = if i == 0 || i == 7 { FRAC_1_SQRT_2 } else { 0.0 };
            assert_eq!(ghz.amplitude(i), c(expected));
        }
        let xi = standard_state(StandardState::Xi, 3).unwrap();
        let v = 1.0 / (2.0 * SQRT_2);
        for i in 0..7 {
            assert!((xi.amplitude(i) - c(v)).norm() < 1e-15);
        }
        assert!((xi.amplitude(7) - c(-v)).norm() < 1e-15);
        for name in StandardState::ALL {
            let n = if name == StandardState::Bell { 2 } else { 3 };
            assert!(standard_state(name, n).unwrap().is_normalized(), "{name}");
        }
        let w2 = standard_state(StandardState::W2, 3).unwrap();
        let base = 0.5 - SQRT_2 / 4.0;
        assert!((w2.amplitude(0).norm_sqr() - 0.25 * base).abs() < 1e-15);
        assert!((w2.amplitude(5).norm_sqr() - (0.5 + SQRT_2 / 4.0)).abs() < 1e-15);
        assert!((w2.amplitude(6).norm_sqr() - 0.75 * base).abs() < 1e-15);
    }

    #[test]
    fn named_state_errors() {
        assert!(matches!("foo".parse::<StandardState>(), Err(Error::UnknownState(_))));
        assert!(matches!(
            standard_state(StandardState::Bell, 3),
            Err(Error::IncompatibleQubits { .. })
        ));
        assert!(matches!(
            standard_state(StandardState::Xi, 4),
            Err(Error::IncompatibleQubits { .. })
        ));
        assert_eq!("GHZ".parse::<StandardState>().unwrap(), StandardState::Ghz);
    }

    #[test]
    fn acin_examples() {
        let h = FRAC_1_SQRT_2;
        let ghz = acin_state(&AcinForm::new([h, 0.0, 0.0, 0.0, h], 0.0).unwrap());
        assert!(ghz.max_abs_diff(&standard_state(StandardState::Ghz, 3).unwrap()) < 1e-15);
        let zero = acin_state(&AcinForm::new([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap());
        assert_eq!(zero, PureState::basis(3, 0).unwrap());
        let (l0, l2, l3) = w2_lambdas();
        let w2 = acin_state(&AcinForm::new([l0, 0.0, l2, l3, 0.0], 0.0).unwrap());
        assert!(w2.max_abs_diff(&standard_state(StandardState::W2, 3).unwrap()) < 1e-15);
    }

    #[test]
    fn acin_validation() {
        assert!(AcinForm::new([1.0, 0.0, 0.0, 0.0, 0.0], -0.1).is_err());
        assert!(AcinForm::new([1.0, 0.0, 0.0, 0.0, 0.0], 3.2).is_err());
        assert!(AcinForm::new([-1.0, 0.0, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(AcinForm::new([0.5, 0.5, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(AcinForm::parse("0.5,0,0.5,0.5,0.5", 0.0).is_ok());
        assert!(AcinForm::parse("0.5,0,0.5,0.5", 0.0).is_err());
        assert!(AcinForm::parse("0.5,x,0.5,0.5,0.5", 0.0).is_err());
    }

    #[test]
    fn vartheta_maps_to_w() {
        let vt = standard_state(StandardState::Vartheta, 3).unwrap();
        let op = LocalOperator::new(
            vec![sigma_x(), Matrix2c::identity(), Matrix2c::identity()],
            OperatorKind::Unitary,
        )
        .unwrap();
        let w = standard_state(StandardState::W, 3).unwrap();
        assert!(apply_local(&vt, &op).unwrap().max_abs_diff(&w) < 1e-15);
    }

    #[test]
    fn identity_is_exact() {
        let psi = random_state(4, 3).unwrap();
        assert_eq!(apply_local(&psi, &LocalOperator::identity(4)).unwrap(), psi);
    }

    #[test]
    fn factor_count_mismatch() {
        let psi = random_state(3, 1).unwrap();
        assert!(apply_local(&psi, &LocalOperator::identity(2)).is_err());
    }

    #[test]
    fn random_state_contract() {
        let a = random_state(3, 11).unwrap();
        assert_eq!(a, random_state(3, 11).unwrap());
        assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        assert_eq!(random_state(4, 11).unwrap().amplitudes().len(), 16);
        assert!(random_state(0, 1).is_err());
        assert!(random_state(15, 1).is_err());
    }

    #[test]
    fn random_local_contract() {
        let u = random_local(3, OperatorKind::Unitary, 5).unwrap();
        assert!(u.factors().iter().all(|f| unitarity_defect(f) < 1e-10));
        let a = random_local(3, OperatorKind::Invertible, 5).unwrap();
        assert!(a.factors().iter().all(|f| f.determinant().norm() >= 1e-3));
        assert!(a.factors().iter().all(|f| condition_number(f) <= 1e3));
        let psi = random_state(2, 9).unwrap();
        let u2 = random_local(2, OperatorKind::Unitary, 9).unwrap();
        let out = apply_local(&psi, &u2).unwrap();
        assert!((out.norm_sqr() - psi.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn operator_validation() {
        let z = Matrix2c::zeros();
        assert!(LocalOperator::new(vec![z], OperatorKind::Invertible).is_err());
        let two = Matrix2c::identity() * c(2.0);
        assert!(LocalOperator::new(vec![two], OperatorKind::Unitary).is_err());
        assert!(LocalOperator::new(vec![two], OperatorKind::Invertible).is_ok());
        assert!(LocalOperator::new(vec![], OperatorKind::Invertible).is_err());
    }
}
