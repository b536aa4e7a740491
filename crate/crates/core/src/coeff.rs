//! Qubit partitions and coefficient matrices.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::invariants::{rank_from_singular_values, singular_values};
use crate::state::PureState;
use crate::{CMatrix, Error, Result};

/// An ordered choice of row qubits `q_1, …, q_ℓ` out of `1..=n`. The remaining
/// qubits index columns in ascending label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitPartition {
    n: usize,
    rows: Vec<usize>,
}

impl QubitPartition {
    pub fn new(n: usize, rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() >= n {
            return Err(Error::InvalidPartition(format!(
                "need between 1 and {} row qubits for n = {n}, got {}",
                n.saturating_sub(1),
                rows.len()
            )));
        }
        for (k, &q) in rows.iter().enumerate() {
            if q == 0 || q > n {
                return Err(Error::InvalidPartition(format!("qubit {q} out of range 1..={n}")));
            }
            if rows[..k].contains(&q) {
                return Err(Error::InvalidPartition(format!("qubit {q} repeated")));
            }
        }
        Ok(Self { n, rows })
    }

    /// Parses a comma-separated label list such as `1,2`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let rows = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad qubit label `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, rows)
    }

    /// `{1, 2}` for n ≥ 3, `{1}` otherwise.
    pub fn default_for(n: usize) -> Result<Self> {
        if n >= 3 {
            Self::new(n, vec![1, 2])
        } else {
            Self::new(n, vec![1])
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of row qubits.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> Vec<usize> {
        (1..=self.n).filter(|q| !self.rows.contains(q)).collect()
    }
}

impl fmt::Display for QubitPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        f.write_str(&labels.join(","))
    }
}

impl Serialize for QubitPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

/// The `2^ℓ × 2^(n−ℓ)` reshaping of a state's amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    partition: QubitPartition,
    entries: CMatrix,
}

impl CoeffMatrix {
    pub fn partition(&self) -> &QubitPartition {
        &self.partition
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }
}

/// For every amplitude index, its (row, column) position under `partition`.
fn index_map(partition: &QubitPartition) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    let n = partition.n;
    let cols = partition.columns();
    (0..1usize << n).map(move |i| {
        let gather = |labels: &[usize]| {
            labels
                .iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((i >> (n - q)) & 1))
        };
        (i, gather(&partition.rows), gather(&cols))
    })
}

pub fn coeff_matrix(state: &PureState, partition: &QubitPartition) -> Result<CoeffMatrix> {
    if partition.n != state.n() {
        return Err(Error::DimensionMismatch(partition.n, state.n()));
    }
    let nrows = 1 << partition.size();
    let ncols = 1 << (partition.n - partition.size());
    let amps = state.amplitudes();
    let mut entries = CMatrix::zeros(nrows, ncols);
    for (i, r, c) in index_map(partition) {
        entries[(r, c)] = amps[i];
    }
    Ok(CoeffMatrix {
        partition: partition.clone(),
        entries,
    })
}

/// Rank of a single-qubit coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalRank {
    pub rank: usize,
    /// Set when the input was the zero vector; `rank` is then 0.
    pub zero_state: bool,
}

/// Numerical rank of `C_qubit`; rank 1 means the qubit factors out of the state.
pub fn local_rank(state: &PureState, qubit: usize, tol: f64) -> Result<LocalRank> {
    let n = state.n();
    if qubit == 0 || qubit > n {
        return Err(Error::InvalidPartition(format!("qubit {qubit} out of range 1..={n}")));
    }
    if state.is_zero() {
        return Ok(LocalRank {
            rank: 0,
            zero_state: true,
        });
    }
    if n == 1 {
        return Ok(LocalRank {
            rank: 1,
            zero_state: false,
        });
    }
    let partition = QubitPartition::new(n, vec![qubit])?;
    let c = coeff_matrix(state, &partition)?;
    let sv = singular_values(c.entries())?;
    Ok(LocalRank {
        rank: rank_from_singular_values(&sv, tol, state.norm()),
        zero_state: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{acin_state, random_state, standard_state, AcinForm, StandardState};
    use crate::{Complex, DEFAULT_TOL};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn first_qubit_layout() {
        let psi = random_state(3, 4).unwrap();
        let c = coeff_matrix(&psi, &QubitPartition::new(3, vec![1]).unwrap()).unwrap();
        let a = psi.amplitudes();
        for col in 0..4 {
            assert_eq!(c.entries()[(0, col)], a[col]);
            assert_eq!(c.entries()[(1, col)], a[4 + col]);
        }
    }

    #[test]
    fn ghz_two_rows() {
        let ghz = standard_state(StandardState::Ghz, 3).unwrap();
        let c = coeff_matrix(&ghz, &QubitPartition::new(3, vec![1, 2]).unwrap()).unwrap();
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex::new(0.0, 0.0);
        let expected = CMatrix::from_row_slice(4, 2, &[h, z, z, z, z, z, z, h]);
        assert_eq!(c.entries(), &expected);
    }

    #[test]
    fn non_contiguous_rows_match_enumeration() {
        // Independent oracle: loop over all 16 indices, reading bits by hand.
        let psi = random_state(4, 21).unwrap();
        let c = coeff_matrix(&psi, &QubitPartition::new(4, vec![2, 4]).unwrap()).unwrap();
        for i in 0..16usize {
            let b = |q: usize| (i >> (4 - q)) & 1;
            let r = 2 * b(2) + b(4);
            let col = 2 * b(1) + b(3);
            assert_eq!(c.entries()[(r, col)], psi.amplitude(i));
        }
        // reversed row order swaps row-bit significance
        let c = coeff_matrix(&psi, &QubitPartition::new(4, vec![4, 2]).unwrap()).unwrap();
        for i in 0..16usize {
            let b = |q: usize| (i >> (4 - q)) & 1;
            assert_eq!(c.entries()[(2 * b(4) + b(2), 2 * b(1) + b(3))], psi.amplitude(i));
        }
    }

    #[test]
    fn leading_rows_flatten_to_amplitudes() {
        let psi = random_state(5, 8).unwrap();
        for l in 1..5 {
            let p = QubitPartition::new(5, (1..=l).collect()).unwrap();
            let c = coeff_matrix(&psi, &p).unwrap();
            let m = c.entries();
            let flat: Vec<Complex> = (0..m.nrows())
                .flat_map(|r| (0..m.ncols()).map(move |col| m[(r, col)]))
                .collect();
            assert_eq!(flat.as_slice(), psi.amplitudes());
        }
    }

    #[test]
    fn partition_validation() {
        assert!(QubitPartition::new(3, vec![]).is_err());
        assert!(QubitPartition::new(3, vec![1, 2, 3]).is_err());
        assert!(QubitPartition::new(3, vec![1, 1]).is_err());
        assert!(QubitPartition::new(3, vec![4]).is_err());
        assert!(QubitPartition::new(3, vec![0]).is_err());
        assert!(QubitPartition::new(1, vec![1]).is_err());
        assert_eq!(QubitPartition::parse(" 1, 3", 4).unwrap().rows(), &[1, 3]);
        assert!(QubitPartition::parse("1,,2", 4).is_err());
        assert_eq!(QubitPartition::default_for(2).unwrap().rows(), &[1]);
        assert_eq!(QubitPartition::default_for(5).unwrap().rows(), &[1, 2]);
        assert_eq!(QubitPartition::new(4, vec![3, 1]).unwrap().columns(), vec![2, 4]);
    }

    #[test]
    fn partition_state_mismatch() {
        let psi = random_state(3, 1).unwrap();
        let p = QubitPartition::new(4, vec![1]).unwrap();
        assert!(coeff_matrix(&psi, &p).is_err());
    }

    #[test]
    fn local_rank_examples() {
        let zero = standard_state(StandardState::Zeros, 3).unwrap();
        assert_eq!(local_rank(&zero, 1, DEFAULT_TOL).unwrap().rank, 1);
        let ghz = standard_state(StandardState::Ghz, 3).unwrap();
        assert_eq!(local_rank(&ghz, 2, DEFAULT_TOL).unwrap().rank, 2);
        // C-AB Acin state: λ_2 = 0, λ_3 ≠ 0 leaves qubit 3 in |0⟩
        let form = AcinForm::normalized([0.6, 0.3, 0.0, 0.5, 0.0], 1.0).unwrap();
        let psi = acin_state(&form);
        assert_eq!(local_rank(&psi, 3, DEFAULT_TOL).unwrap().rank, 1);
        assert_eq!(local_rank(&psi, 1, DEFAULT_TOL).unwrap().rank, 2);
        let c3 = coeff_matrix(&psi, &QubitPartition::new(3, vec![3]).unwrap()).unwrap();
        assert!(c3.entries().row(1).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn local_rank_zero_state_flag() {
        let z = PureState::new(2, vec![Complex::new(0.0, 0.0); 4]).unwrap();
        let r = local_rank(&z, 1, DEFAULT_TOL).unwrap();
        assert_eq!(r, LocalRank { rank: 0, zero_state: true });
        assert!(local_rank(&z, 3, DEFAULT_TOL).is_err());
    }
}
