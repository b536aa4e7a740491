#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinflip::coeff::QubitPartition;
use spinflip::state::{standard_state, AcinForm, LocalOperator, PureState, StandardState};
use spinflip::{CMatrix, Complex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random partition with 1..n-1 row qubits in random order.
pub fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> QubitPartition {
    let size = rng.gen_range(1..n);
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    labels.truncate(size);
    QubitPartition::new(n, labels).unwrap()
}

/// Dense `A_1 ⊗ ⋯ ⊗ A_n` applied to the amplitude vector by ordinary matrix-vector
/// multiplication.
pub fn dense_apply(state: &PureState, op: &LocalOperator) -> Vec<Complex> {
    let mut big = CMatrix::identity(1, 1);
    for f in op.factors() {
        let f = CMatrix::from_fn(2, 2, |r, c| f[(r, c)]);
        big = big.kronecker(&f);
    }
    let v = nalgebra::DVector::from_column_slice(state.amplitudes());
    (big * v).iter().copied().collect()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn named(name: StandardState, n: usize) -> PureState {
    standard_state(name, n).unwrap()
}

pub fn ket(n: usize, index: usize) -> PureState {
    PureState::basis(n, index).unwrap()
}

/// One representative per three-qubit SLOCC class, with its label.
pub fn class_seeds() -> Vec<(&'static str, PureState)> {
    let bell = named(StandardState::Bell, 2);
    let zero = ket(1, 0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let b_ac = PureState::from_real(3, &[h, 0.0, 0.0, 0.0, 0.0, h, 0.0, 0.0]).unwrap();
    vec![
        ("GHZ", named(StandardState::Ghz, 3)),
        ("W", named(StandardState::W, 3)),
        ("A-BC", zero.tensor(&bell).unwrap()),
        ("B-AC", b_ac),
        ("C-AB", bell.tensor(&zero).unwrap()),
        ("A-B-C", named(StandardState::Zeros, 3)),
    ]
}

/// Acin-form patterns, each as a sampler of Acin forms plus the class it must yield.
pub const ACIN_ROWS: [&str; 10] = [
    "A-B-C", // λ0 = 0, λ4 ≠ 0, λ2λ3 = λ1λ4 e^{iφ}
    "A-BC",  // λ0 = 0, λ4 ≠ 0, λ2λ3 ≠ λ1λ4 e^{iφ}
    "A-B-C", // λ0 ≠ 0, λ4 = 0, λ2 = λ3 = 0
    "C-AB",  // λ0 ≠ 0, λ4 = 0, λ2 = 0, λ3 ≠ 0
    "B-AC",  // λ0 ≠ 0, λ4 = 0, λ2 ≠ 0, λ3 = 0
    "W",     // λ0 ≠ 0, λ4 = 0, λ2λ3 ≠ 0
    "A-B-C", // λ0 = λ4 = 0, λ2λ3 = 0
    "A-BC",  // λ0 = λ4 = 0, λ2λ3 ≠ 0
    "GHZ",   // λ0λ4 ≠ 0
    "",      // unconstrained random sample
];

fn positive(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.05..1.0)
}

pub fn acin_sample(row: usize, rng: &mut ChaCha8Rng) -> AcinForm {
    let mut l: [f64; 5] = std::array::from_fn(|_| positive(rng));
    let mut phi = rng.gen_range(0.0..std::f64::consts::PI);
    // occasionally drop λ1, which no row constrains
    if rng.gen_bool(0.2) {
        l[1] = 0.0;
    }
    match row {
        0 => {
            l[0] = 0.0;
            l[1] = positive(rng);
            phi = 0.0;
            l[3] = l[1] * l[4] / l[2];
        }
        1 => l[0] = 0.0,
        2 => {
            l[4] = 0.0;
            l[2] = 0.0;
            l[3] = 0.0;
        }
        3 => {
            l[4] = 0.0;
            l[2] = 0.0;
        }
        4 => {
            l[4] = 0.0;
            l[3] = 0.0;
        }
        5 => l[4] = 0.0,
        6 => {
            l[0] = 0.0;
            l[4] = 0.0;
            l[1] = positive(rng);
            if rng.gen_bool(0.5) {
                l[2] = 0.0;
            } else {
                l[3] = 0.0;
            }
        }
        7 => {
            l[0] = 0.0;
            l[4] = 0.0;
        }
        8 => {}
        _ => {
            for x in l.iter_mut() {
                if rng.gen_bool(0.15) {
                    *x = 0.0;
                }
            }
            if l.iter().all(|&x| x == 0.0) {
                l[0] = 1.0;
            }
        }
    }
    AcinForm::normalized(l, phi).unwrap()
}
