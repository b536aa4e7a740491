//! JSON documents for states and local operators.
//!
//! State: `{"n": 3, "amplitudes": [[re, im], ...]}` with `2^n` entries in index order.
//! Operator: `{"kind": "unitary" | "invertible", "factors": [[[[re, im], [re, im]],
//! [[re, im], [re, im]]], ...]}`, one row-major 2×2 matrix per qubit.

use serde::{Deserialize, Serialize};

use crate::state::{LocalOperator, Matrix2c, OperatorKind, PureState};
use crate::{Complex, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub kind: OperatorKind,
    pub factors: Vec<[[[f64; 2]; 2]; 2]>,
}

impl From<&PureState> for StateDocument {
    fn from(state: &PureState) -> Self {
        Self {
            n: state.n(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

impl TryFrom<StateDocument> for PureState {
    type Error = Error;

    fn try_from(doc: StateDocument) -> Result<Self> {
        if doc.n == 0 || doc.n > crate::state::MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(doc.n));
        }
        let amps = doc
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex::new(re, im))
            .collect();
        PureState::new(doc.n, amps)
    }
}

impl From<&LocalOperator> for OperatorDocument {
    fn from(op: &LocalOperator) -> Self {
        let entry = |z: Complex| [z.re, z.im];
        Self {
            kind: op.kind(),
            factors: op
                .factors()
                .iter()
                .map(|m| {
                    [
                        [entry(m[(0, 0)]), entry(m[(0, 1)])],
                        [entry(m[(1, 0)]), entry(m[(1, 1)])],
                    ]
                })
                .collect(),
        }
    }
}

impl TryFrom<OperatorDocument> for LocalOperator {
    type Error = Error;

    fn try_from(doc: OperatorDocument) -> Result<Self> {
        let c = |[re, im]: [f64; 2]| Complex::new(re, im);
        let factors = doc
            .factors
            .into_iter()
            .map(|[[a, b], [d, e]]| Matrix2c::new(c(a), c(b), c(d), c(e)))
            .collect();
        LocalOperator::new(factors, doc.kind)
    }
}

fn parse_json<'a, T: Deserialize<'a>>(bytes: &'a [u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates a state document.
pub fn parse_state(bytes: &[u8]) -> Result<PureState> {
    parse_json::<StateDocument>(bytes)?.try_into()
}

/// Parses and validates an operator document.
pub fn parse_operator(bytes: &[u8]) -> Result<LocalOperator> {
    parse_json::<OperatorDocument>(bytes)?.try_into()
}

pub fn state_to_json(state: &PureState) -> String {
    serde_json::to_string_pretty(&StateDocument::from(state)).expect("state serializes")
}

pub fn operator_to_json(op: &LocalOperator) -> String {
    serde_json::to_string_pretty(&OperatorDocument::from(op)).expect("operator serializes")
}

/// Serializes a complex number as `[re, im]`.
pub mod complex_pair {
    use serde::{Serialize, Serializer};

    use crate::Complex;

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }
}
