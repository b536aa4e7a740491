//! Singular values, numerical rank and determinants of spin-flipping matrices, and
//! the closed-form invariants computed directly from amplitudes.

use serde::Serialize;

use crate::coeff::QubitPartition;
use crate::omega::{omega, omega_powers};
use crate::state::{parity, PureState};
use crate::{CMatrix, Complex, Error, Result};

/// Singular values at or below `ZERO_FLOOR * scale` count as exact zeros.
pub const ZERO_FLOOR: f64 = 1e-12;

const JACOBI_EPS: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
///
/// Returns `min(rows, cols)` values.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let a = if m.nrows() >= m.ncols() {
        m.clone()
    } else {
        m.adjoint()
    };
    let rows = a.nrows();
    let mut cols: Vec<Vec<Complex>> = (0..a.ncols())
        .map(|j| a.column(j).iter().copied().collect())
        .collect();
    let k = cols.len();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let (head, tail) = cols.split_at_mut(q);
                let (cp, cq) = (&mut head[p], &mut tail[0]);
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex::new(0.0, 0.0);
                for i in 0..rows {
                    alpha += cp[i].norm_sqr();
                    beta += cq[i].norm_sqr();
                    gamma += cp[i].conj() * cq[i];
                }
                let g = gamma.norm();
                if g == 0.0 || g <= JACOBI_EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rephase column q so that the inner product becomes real, then
                // apply a real Jacobi rotation.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let x = cp[i];
                    let y = cq[i] * phase;
                    cp[i] = x * c - y * s;
                    cq[i] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = cols
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Rank from a descending singular-value list: values above `tol · σ_1` count,
/// unless `σ_1 ≤ ZERO_FLOOR · scale`, in which case the matrix is numerically zero.
pub fn rank_from_singular_values(sv: &[f64], tol: f64, scale: f64) -> usize {
    let Some(&top) = sv.first() else {
        return 0;
    };
    if top <= ZERO_FLOOR * scale {
        return 0;
    }
    let threshold = tol * top.max(1e-300);
    sv.iter().filter(|&&s| s > threshold).count()
}

/// Numerical rank of a standalone matrix, with the zero floor taken relative to its
/// largest entry magnitude (1 for the zero matrix).
pub fn numerical_rank(m: &CMatrix, tol: f64) -> Result<usize> {
    let sv = singular_values(m)?;
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = if scale == 0.0 { 1.0 } else { scale };
    Ok(rank_from_singular_values(&sv, tol, scale))
}

/// Reference magnitude for `Ω^{⊙ℓ}` of a state: `‖ψ‖^{2ℓ}` bounds its spectral norm.
pub fn omega_scale(state: &PureState, power: usize) -> f64 {
    state.norm_sqr().powi(power as i32)
}

/// Ranks `r^{(1)} ≥ r^{(2)} ≥ …` of the powers of one spin-flipping matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankProfile {
    pub partition: QubitPartition,
    pub ranks: Vec<usize>,
    pub tolerance: f64,
}

fn check_monotone(partition: &QubitPartition, ranks: &[usize], tol: f64) -> Result<()> {
    if ranks.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Inconsistent(format!(
            "rank profile {ranks:?} of rows {partition} increases at tol {tol:e}"
        )));
    }
    Ok(())
}

pub fn rank_profile(
    state: &PureState,
    partition: &QubitPartition,
    max_power: usize,
    tol: f64,
) -> Result<RankProfile> {
    let powers = omega_powers(state, partition, max_power)?;
    let ranks = powers
        .iter()
        .map(|om| {
            let sv = singular_values(om.entries())?;
            Ok(rank_from_singular_values(&sv, tol, omega_scale(state, om.power())))
        })
        .collect::<Result<Vec<_>>>()?;
    check_monotone(partition, &ranks, tol)?;
    Ok(RankProfile {
        partition: partition.clone(),
        ranks,
        tolerance: tol,
    })
}

/// Concurrence of an even-qubit state: `|Σ_{i<2^{n−1}} (−1)^{N(i)} a_i a_{2^n−1−i}|`.
pub fn concurrence_even(state: &PureState) -> Result<f64> {
    let n = state.n();
    if !n.is_multiple_of(2) {
        return Err(Error::WrongQubitCount { expected: "an even number of", n });
    }
    let a = state.amplitudes();
    let last = a.len() - 1;
    let sum: Complex = (0..a.len() / 2)
        .map(|i| signed(i) * a[i] * a[last - i])
        .sum();
    Ok(sum.norm())
}

#[inline]
fn signed(i: usize) -> f64 {
    if parity(i as u64) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Entries of `Ω_1` for odd n, the two singular values derived from them and the n-tangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OddInvariants {
    #[serde(with = "crate::io::complex_pair")]
    pub e11: Complex,
    #[serde(with = "crate::io::complex_pair")]
    pub e12: Complex,
    #[serde(with = "crate::io::complex_pair")]
    pub e22: Complex,
    /// `2|e12|² + |e11|² + |e22|²`
    pub delta: f64,
    /// `|e11 e22 − e12²|²`
    pub dee: f64,
    pub t1: f64,
    pub t2: f64,
    pub ntangle: f64,
}

pub fn odd_invariants(state: &PureState) -> Result<OddInvariants> {
    let n = state.n();
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::WrongQubitCount { expected: "an odd number (≥ 3) of", n });
    }
    let a = state.amplitudes();
    let dim = a.len();
    let half = dim / 2;
    let quarter = dim / 4;
    let two = Complex::new(2.0, 0.0);

    let e11: Complex = two
        * (0..quarter)
            .map(|i| signed(i) * a[i] * a[half - 1 - i])
            .sum::<Complex>();
    let e22: Complex = two
        * (0..quarter)
            .map(|i| signed(i) * a[half + i] * a[dim - 1 - i])
            .sum::<Complex>();
    let e12: Complex = (0..half).map(|i| signed(i) * a[i] * a[dim - 1 - i]).sum();

    let delta = 2.0 * e12.norm_sqr() + e11.norm_sqr() + e22.norm_sqr();
    let ntangle = (e11 * e22 - e12 * e12).norm();
    let dee = ntangle * ntangle;
    let root = (delta * delta - 4.0 * dee).max(0.0).sqrt();
    let t1 = (0.5 * (delta + root)).sqrt();
    // t2 from t1·t2 = ntangle keeps precision when t2 ≪ t1.
    let t2 = if t1 > 0.0 {
        ntangle / t1
    } else {
        (0.5 * (delta - root)).max(0.0).sqrt()
    };
    Ok(OddInvariants {
        e11,
        e12,
        e22,
        delta,
        dee,
        t1,
        t2,
        ntangle,
    })
}

/// The doubly degenerate nonzero singular value of `Ω_{1,2}` for three qubits.
pub fn three_qubit_s(state: &PureState) -> Result<f64> {
    if state.n() != 3 {
        return Err(Error::WrongQubitCount { expected: "3", n: state.n() });
    }
    let a = state.amplitudes();
    let minor = |p: usize, q: usize, r: usize, s: usize| (a[p] * a[q] - a[r] * a[s]).norm_sqr();
    let s2 = minor(0, 3, 1, 2)
        + minor(0, 5, 1, 4)
        + minor(0, 7, 1, 6)
        + minor(2, 5, 3, 4)
        + minor(2, 7, 3, 6)
        + minor(4, 7, 5, 6);
    Ok(s2.sqrt())
}

pub fn abs_det(m: &CMatrix) -> f64 {
    m.clone().determinant().norm()
}

/// `|det Ω|` for the given partition.
pub fn abs_det_omega(state: &PureState, partition: &QubitPartition) -> Result<f64> {
    Ok(abs_det(omega(state, partition)?.entries()))
}

/// Invariants of the powers of one spin-flipping matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionInvariants {
    pub rows: QubitPartition,
    pub ranks: Vec<usize>,
    /// Descending singular values, one list per power.
    pub singular_values: Vec<Vec<f64>>,
    /// `|det|`, one value per power.
    pub abs_det: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantProfile {
    pub n: usize,
    pub max_power: usize,
    pub tolerance: f64,
    pub partitions: Vec<PartitionInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd: Option<OddInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

pub fn partition_invariants(
    state: &PureState,
    partition: &QubitPartition,
    max_power: usize,
    tol: f64,
) -> Result<PartitionInvariants> {
    let powers = omega_powers(state, partition, max_power)?;
    let mut ranks = Vec::with_capacity(max_power);
    let mut svs = Vec::with_capacity(max_power);
    let mut dets = Vec::with_capacity(max_power);
    for om in &powers {
        let sv = singular_values(om.entries())?;
        ranks.push(rank_from_singular_values(&sv, tol, omega_scale(state, om.power())));
        svs.push(sv);
        dets.push(abs_det(om.entries()));
    }
    check_monotone(partition, &ranks, tol)?;
    Ok(PartitionInvariants {
        rows: partition.clone(),
        ranks,
        singular_values: svs,
        abs_det: dets,
    })
}

/// Everything computable for a state: per-partition spectra plus the closed forms
/// that apply to its qubit count.
pub fn invariant_profile(
    state: &PureState,
    partitions: &[QubitPartition],
    max_power: usize,
    tol: f64,
) -> Result<InvariantProfile> {
    let n = state.n();
    let partitions = partitions
        .iter()
        .map(|p| partition_invariants(state, p, max_power, tol))
        .collect::<Result<Vec<_>>>()?;
    let concurrence = if n.is_multiple_of(2) {
        Some(concurrence_even(state)?)
    } else {
        None
    };
    let odd = if n % 2 == 1 && n >= 3 {
        Some(odd_invariants(state)?)
    } else {
        None
    };
    let s = if n == 3 { Some(three_qubit_s(state)?) } else { None };
    Ok(InvariantProfile {
        n,
        max_power,
        tolerance: tol,
        partitions,
        concurrence,
        odd,
        s,
    })
}
