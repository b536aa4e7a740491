//! Spin-flipping matrices `Ω = C υ^{⊗(n−ℓ)} Cᵀ`, their ℓ-fold powers and the
//! congruence relation they satisfy under local operators.

use serde::Serialize;

use crate::coeff::{coeff_matrix, QubitPartition};
use crate::state::{apply_local, parity, LocalOperator, Matrix2c, PureState};
use crate::{CMatrix, Complex, Error, Result};

/// Largest supported kernel order.
pub const MAX_KERNEL_ORDER: usize = 14;

/// `υ^{⊗k}` with `υ = [[0, 1], [−1, 0]]`.
///
/// Every row of `υ^{⊗k}` has a single nonzero entry: row `j` holds
/// `(−1)^{popcount(j)}` in column `j XOR (2^k − 1)`. The kernel is stored in that
/// signed-permutation form and applied without materializing the dense matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntisymmetricKernel {
    order: usize,
}

pub fn kernel_power(k: usize) -> Result<AntisymmetricKernel> {
    if k > MAX_KERNEL_ORDER {
        return Err(Error::KernelTooLarge(k));
    }
    Ok(AntisymmetricKernel { order: k })
}

impl AntisymmetricKernel {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        1 << self.order
    }

    /// Column of the nonzero entry in row `j`.
    #[inline]
    pub fn partner(&self, j: usize) -> usize {
        j ^ (self.dim() - 1)
    }

    /// Value of the nonzero entry in row `j`.
    #[inline]
    pub fn sign(&self, j: usize) -> f64 {
        if parity(j as u64) == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Dense entry `(r, c)`.
    pub fn entry(&self, r: usize, c: usize) -> i8 {
        if c == self.partner(r) {
            self.sign(r) as i8
        } else {
            0
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        let d = self.dim();
        CMatrix::from_fn(d, d, |r, c| Complex::new(self.entry(r, c) as f64, 0.0))
    }

    /// `υ^{⊗k} · m`.
    pub fn left_mul(&self, m: &CMatrix) -> CMatrix {
        assert_eq!(m.nrows(), self.dim(), "kernel/matrix dimension mismatch");
        CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| {
            m[(self.partner(r), c)] * self.sign(r)
        })
    }

    /// `m · υ^{⊗k}`.
    pub fn right_mul(&self, m: &CMatrix) -> CMatrix {
        assert_eq!(m.ncols(), self.dim(), "kernel/matrix dimension mismatch");
        CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| {
            let j = self.partner(c);
            m[(r, j)] * self.sign(j)
        })
    }
}

/// An ℓ-spin-flipping matrix of order `2^i`, `i` the number of row qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaMatrix {
    partition: QubitPartition,
    power: usize,
    entries: CMatrix,
}

impl OmegaMatrix {
    pub fn partition(&self) -> &QubitPartition {
        &self.partition
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    /// `max |Ω − Ωᵀ| / max |Ω|` (0 for the zero matrix).
    pub fn symmetry_defect(&self) -> f64 {
        transpose_defect(&self.entries, 1.0)
    }

    /// `max |Ω + Ωᵀ| / max |Ω|` (0 for the zero matrix).
    pub fn skew_defect(&self) -> f64 {
        transpose_defect(&self.entries, -1.0)
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn transpose_defect(m: &CMatrix, sign: f64) -> f64 {
    let scale = max_abs(m);
    if scale == 0.0 {
        return 0.0;
    }
    let d = m.nrows();
    let mut worst = 0.0f64;
    for r in 0..d {
        for c in 0..d {
            worst = worst.max((m[(r, c)] - m[(c, r)] * sign).norm());
        }
    }
    worst / scale
}

/// `Ω = C υ^{⊗(n−i)} Cᵀ` for `C = coeff_matrix(state, partition)`.
pub fn omega(state: &PureState, partition: &QubitPartition) -> Result<OmegaMatrix> {
    let c = coeff_matrix(state, partition)?.into_entries();
    let kernel = kernel_power(partition.n() - partition.size())?;
    let entries = kernel.right_mul(&c) * c.transpose();
    Ok(OmegaMatrix {
        partition: partition.clone(),
        power: 1,
        entries,
    })
}

/// All powers `Ω^{⊙1}, …, Ω^{⊙max_power}` via `Ω^{⊙ℓ} = Ω^{⊙(ℓ−1)} υ^{⊗i} Ω`.
pub fn omega_powers(
    state: &PureState,
    partition: &QubitPartition,
    max_power: usize,
) -> Result<Vec<OmegaMatrix>> {
    if max_power == 0 {
        return Err(Error::InvalidPartition("power must be at least 1".into()));
    }
    let base = omega(state, partition)?;
    let kernel = kernel_power(partition.size())?;
    let flipped = kernel.left_mul(&base.entries);
    let mut out = Vec::with_capacity(max_power);
    let mut current = base.entries.clone();
    out.push(base);
    for power in 2..=max_power {
        current = &current * &flipped;
        out.push(OmegaMatrix {
            partition: partition.clone(),
            power,
            entries: current.clone(),
        });
    }
    Ok(out)
}

pub fn omega_power(
    state: &PureState,
    partition: &QubitPartition,
    ell: usize,
) -> Result<OmegaMatrix> {
    Ok(omega_powers(state, partition, ell)?
        .pop()
        .expect("omega_powers returns ell >= 1 matrices"))
}

/// Dense Kronecker product of 2×2 factors, first factor most significant.
pub fn kron_factors(factors: &[&Matrix2c]) -> CMatrix {
    let mut out = CMatrix::identity(1, 1);
    for f in factors {
        let d = out.nrows();
        out = CMatrix::from_fn(2 * d, 2 * d, |r, c| out[(r / 2, c / 2)] * f[(r % 2, c % 2)]);
    }
    out
}

/// Outcome of checking
/// `Ω^{⊙ℓ}(Aψ) = α^{ℓ−1} β^ℓ (A_{q1}⊗⋯⊗A_{qi}) Ω^{⊙ℓ}(ψ) (A_{q1}⊗⋯⊗A_{qi})ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CongruenceReport {
    /// Product of `det A_q` over the row qubits.
    #[serde(with = "crate::io::complex_pair")]
    pub alpha: Complex,
    /// Product of `det A_q` over the column qubits.
    #[serde(with = "crate::io::complex_pair")]
    pub beta: Complex,
    /// `max |LHS − RHS|` relative to `max |LHS|`.
    pub residual: f64,
    /// Same residual with the `α^{ℓ−1} β^ℓ` prefactor dropped from the right side.
    pub residual_without_prefactor: f64,
}

/// Relative residual; LHS entries below 1e-14 switch to an absolute measure.
fn relative_residual(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    let diff = max_abs(&(lhs - rhs));
    let scale = max_abs(lhs);
    if scale > 1e-14 {
        diff / scale
    } else {
        diff
    }
}

pub fn verify_congruence(
    state: &PureState,
    op: &LocalOperator,
    partition: &QubitPartition,
    ell: usize,
) -> Result<CongruenceReport> {
    if op.n() != state.n() {
        return Err(Error::InvalidOperator(format!(
            "operator has {} factors, state has {} qubits",
            op.n(),
            state.n()
        )));
    }
    if let Some(q) = (1..=op.n()).find(|&q| op.factor(q).determinant().norm() == 0.0) {
        return Err(Error::InvalidOperator(format!("factor {q} is singular")));
    }
    let transformed = apply_local(state, op)?;
    let lhs = omega_power(&transformed, partition, ell)?.into_entries();
    let before = omega_power(state, partition, ell)?.into_entries();

    let det_product = |qubits: &[usize]| {
        qubits
            .iter()
            .fold(Complex::new(1.0, 0.0), |acc, &q| acc * op.factor(q).determinant())
    };
    let alpha = det_product(partition.rows());
    let beta = det_product(&partition.columns());
    let row_factors: Vec<&Matrix2c> = partition.rows().iter().map(|&q| op.factor(q)).collect();
    let a = kron_factors(&row_factors);
    let conjugated = &a * before * a.transpose();
    let prefactor = alpha.powi(ell as i32 - 1) * beta.powi(ell as i32);
    let rhs = &conjugated * prefactor;

    Ok(CongruenceReport {
        alpha,
        beta,
        residual: relative_residual(&lhs, &rhs),
        residual_without_prefactor: relative_residual(&lhs, &conjugated),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{
        random_local, random_state, standard_state, OperatorKind, StandardState,
    };

    fn c(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    /// Dense υ^{⊗k} by repeated Kronecker products.
    fn kron_oracle(k: usize) -> CMatrix {
        let u = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(0.0)]);
        let mut out = CMatrix::identity(1, 1);
        for _ in 0..k {
            out = out.kronecker(&u);
        }
        out
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_power(0).unwrap().to_dense(), CMatrix::identity(1, 1));
        let u = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(0.0)]);
        assert_eq!(kernel_power(1).unwrap().to_dense(), u);
        for k in 0..=5 {
            let dense = kernel_power(k).unwrap().to_dense();
            assert_eq!(dense, kron_oracle(k));
            // orthogonal with integer entries
            assert_eq!(dense.transpose() * &dense, CMatrix::identity(1 << k, 1 << k));
        }
        assert!(kernel_power(15).is_err());
    }

    #[test]
    fn kernel_products_match_dense() {
        let k = kernel_power(3).unwrap();
        let m = CMatrix::from_fn(8, 8, |r, col| Complex::new(r as f64, col as f64 * 0.5));
        assert_eq!(k.left_mul(&m), k.to_dense() * &m);
        assert_eq!(k.right_mul(&m), &m * k.to_dense());
    }

    #[test]
    fn two_qubit_omega_is_scaled_kernel() {
        let psi = random_state(2, 17).unwrap();
        let a = psi.amplitudes();
        let det = a[0] * a[3] - a[1] * a[2];
        let om = omega(&psi, &QubitPartition::new(2, vec![1]).unwrap()).unwrap();
        let expected = kernel_power(1).unwrap().to_dense() * det;
        assert!(max_abs(&(om.entries() - expected)) < 1e-15);
    }

    #[test]
    fn ghz_omega_by_hand() {
        let ghz = standard_state(StandardState::Ghz, 3).unwrap();
        let om = omega(&ghz, &QubitPartition::new(3, vec![1, 2]).unwrap()).unwrap();
        let mut expected = CMatrix::zeros(4, 4);
        expected[(0, 3)] = c(0.5);
        expected[(3, 0)] = c(-0.5);
        assert!(max_abs(&(om.entries() - expected)) < 1e-15);
    }

    #[test]
    fn product_state_omega_vanishes() {
        let zero = standard_state(StandardState::Zeros, 3).unwrap();
        let om = omega(&zero, &QubitPartition::new(3, vec![1, 2]).unwrap()).unwrap();
        assert_eq!(om.entries(), &CMatrix::zeros(4, 4));
    }

    #[test]
    fn power_one_is_omega() {
        let psi = random_state(4, 2).unwrap();
        let p = QubitPartition::new(4, vec![3, 1]).unwrap();
        assert_eq!(omega_power(&psi, &p, 1).unwrap(), omega(&psi, &p).unwrap());
        assert!(omega_power(&psi, &p, 0).is_err());
    }

    #[test]
    fn power_matches_dense_recursion() {
        let psi = random_state(4, 6).unwrap();
        let p = QubitPartition::new(4, vec![2, 3]).unwrap();
        let c_mat = coeff_matrix(&psi, &p).unwrap().into_entries();
        let base = &c_mat * kron_oracle(2) * c_mat.transpose();
        let third = &base * kron_oracle(2) * &base * kron_oracle(2) * &base;
        let om3 = omega_power(&psi, &p, 3).unwrap();
        assert!(max_abs(&(om3.entries() - third)) < 1e-14);
    }

    #[test]
    fn identity_congruence() {
        let psi = random_state(3, 4).unwrap();
        let p = QubitPartition::new(3, vec![2]).unwrap();
        for ell in 1..=3 {
            let rep = verify_congruence(&psi, &LocalOperator::identity(3), &p, ell).unwrap();
            assert_eq!(rep.alpha, c(1.0));
            assert_eq!(rep.beta, c(1.0));
            assert!(rep.residual < 1e-12);
        }
    }

    #[test]
    fn random_congruence_examples() {
        let psi = random_state(3, 40).unwrap();
        let u = random_local(3, OperatorKind::Unitary, 41).unwrap();
        let p = QubitPartition::new(3, vec![1, 2]).unwrap();
        assert!(verify_congruence(&psi, &u, &p, 2).unwrap().residual < 1e-9);

        let psi = random_state(4, 42).unwrap();
        let a = random_local(4, OperatorKind::Invertible, 43).unwrap();
        let p = QubitPartition::new(4, vec![1]).unwrap();
        let rep = verify_congruence(&psi, &a, &p, 1).unwrap();
        assert!(rep.residual < 1e-8);
        assert!(rep.residual_without_prefactor > 1e-3);
    }

    #[test]
    fn congruence_operator_size_mismatch() {
        let psi = random_state(3, 1).unwrap();
        let p = QubitPartition::new(3, vec![1]).unwrap();
        assert!(verify_congruence(&psi, &LocalOperator::identity(2), &p, 1).is_err());
    }
}
