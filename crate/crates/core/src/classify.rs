//! SLOCC classification for two and three qubits, LU/SLOCC comparison verdicts and
//! LU family labels.
//!
//! Comparison verdicts are necessary-condition checks only: `not-distinguished`
//! never asserts that two states are equivalent.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::Serialize;

use crate::coeff::{coeff_matrix, local_rank, QubitPartition};
use crate::invariants::{
    concurrence_even, odd_invariants, partition_invariants, rank_profile, three_qubit_s,
};
use crate::state::{acin_state, AcinForm, PureState};
use crate::{Complex, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SloccClass {
    #[serde(rename = "GHZ")]
    Ghz,
    #[serde(rename = "W")]
    W,
    #[serde(rename = "A-BC")]
    ABc,
    #[serde(rename = "B-AC")]
    BAc,
    #[serde(rename = "C-AB")]
    CAb,
    #[serde(rename = "A-B-C")]
    ABC,
    #[serde(rename = "entangled")]
    Entangled,
    #[serde(rename = "product")]
    Product,
}

impl SloccClass {
    pub fn label(self) -> &'static str {
        match self {
            SloccClass::Ghz => "GHZ",
            SloccClass::W => "W",
            SloccClass::ABc => "A-BC",
            SloccClass::BAc => "B-AC",
            SloccClass::CAb => "C-AB",
            SloccClass::ABC => "A-B-C",
            SloccClass::Entangled => "entangled",
            SloccClass::Product => "product",
        }
    }

    /// Rank triple `r^{(1)} r^{(2)} r^{(3)}` of `Ω_{1,2}` for a three-qubit class.
    pub fn three_qubit_ranks(self) -> Option<[usize; 3]> {
        match self {
            SloccClass::Ghz => Some([2, 2, 2]),
            SloccClass::W => Some([2, 1, 0]),
            SloccClass::ABc | SloccClass::BAc => Some([2, 0, 0]),
            SloccClass::CAb | SloccClass::ABC => Some([0, 0, 0]),
            SloccClass::Entangled | SloccClass::Product => None,
        }
    }
}

impl fmt::Display for SloccClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn require_n(state: &PureState, n: usize, expected: &'static str) -> Result<()> {
    if state.n() != n {
        return Err(Error::WrongQubitCount { expected, n: state.n() });
    }
    Ok(())
}

fn require_nonzero(state: &PureState) -> Result<()> {
    if state.is_zero() {
        return Err(Error::InvalidState("the zero vector has no class".into()));
    }
    Ok(())
}

/// Two qubits: `Ω_1` has rank 2 (entangled) or 0 (product).
pub fn classify_two(state: &PureState, tol: f64) -> Result<SloccClass> {
    require_n(state, 2, "2")?;
    require_nonzero(state)?;
    let profile = rank_profile(state, &QubitPartition::new(2, vec![1])?, 1, tol)?;
    match profile.ranks[0] {
        2 => Ok(SloccClass::Entangled),
        0 => Ok(SloccClass::Product),
        r => Err(Error::Inconsistent(format!("two-qubit omega has rank {r}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThreeQubitClass {
    pub class: SloccClass,
    /// Ranks of `Ω_{1,2}^{⊙1..3}`.
    pub ranks: [usize; 3],
    /// Ranks of `C_1`, `C_2`, `C_3`.
    pub local_ranks: [usize; 3],
}

/// Three qubits: the rank triple of `Ω_{1,2}` separates GHZ and W; single-qubit
/// ranks tell the biseparable and product classes apart.
pub fn classify_three(state: &PureState, tol: f64) -> Result<ThreeQubitClass> {
    require_n(state, 3, "3")?;
    require_nonzero(state)?;
    let profile = rank_profile(state, &QubitPartition::new(3, vec![1, 2])?, 3, tol)?;
    let ranks = [profile.ranks[0], profile.ranks[1], profile.ranks[2]];
    let mut local_ranks = [0; 3];
    for (q, slot) in local_ranks.iter_mut().enumerate() {
        *slot = local_rank(state, q + 1, tol)?.rank;
    }

    let class = match ranks {
        [2, 2, 2] => SloccClass::Ghz,
        [2, 1, 0] => SloccClass::W,
        _ => {
            let separated: Vec<usize> = (0..3).filter(|&q| local_ranks[q] == 1).collect();
            match separated.as_slice() {
                [0] => SloccClass::ABc,
                [1] => SloccClass::BAc,
                [2] => SloccClass::CAb,
                [0, 1, 2] => SloccClass::ABC,
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "rank triple {ranks:?} with local ranks {local_ranks:?} fits no class"
                    )))
                }
            }
        }
    };
    let expected = class.three_qubit_ranks().expect("three-qubit class");
    if expected != ranks {
        return Err(Error::Inconsistent(format!(
            "class {class} requires rank triple {expected:?}, computed {ranks:?}"
        )));
    }
    Ok(ThreeQubitClass {
        class,
        ranks,
        local_ranks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcinClass {
    /// Class from the parameter decision tree.
    pub class: SloccClass,
    /// Rank triple the decision tree predicts.
    pub tree_ranks: [usize; 3],
    /// Rank triple computed from the state.
    pub ranks: [usize; 3],
    pub s: f64,
}

/// Decision tree over the Acin parameters. A λ or λ-product counts as zero when
/// it is at most `tol`.
pub fn acin_tree(form: &AcinForm, tol: f64) -> SloccClass {
    let l = form.lambdas();
    let zero = |x: f64| x <= tol;
    if !zero(l[0] * l[4]) {
        return SloccClass::Ghz;
    }
    // λ_0 λ_4 = 0: decide which factor vanishes; the smaller one if neither is tiny.
    let (l0_zero, l4_zero) = match (zero(l[0]), zero(l[4])) {
        (false, false) => (l[0] <= l[4], l[4] < l[0]),
        other => other,
    };
    let p23 = l[2] * l[3];
    match (l0_zero, l4_zero) {
        (true, false) => {
            let twist = Complex::from_polar(l[1] * l[4], form.phi());
            if zero((Complex::new(p23, 0.0) - twist).norm()) {
                SloccClass::ABC
            } else {
                SloccClass::ABc
            }
        }
        (false, true) => {
            if !zero(p23) {
                SloccClass::W
            } else if zero(l[2]) && zero(l[3]) {
                SloccClass::ABC
            } else if l[2] <= l[3] {
                SloccClass::CAb
            } else {
                SloccClass::BAc
            }
        }
        _ => {
            if zero(p23) {
                SloccClass::ABC
            } else {
                SloccClass::ABc
            }
        }
    }
}

/// Classifies an Acin form by its decision tree and cross-checks the tree against
/// [`classify_three`] on the corresponding state.
pub fn classify_acin(form: &AcinForm, tol: f64) -> Result<AcinClass> {
    let class = acin_tree(form, tol);
    let tree_ranks = class.three_qubit_ranks().expect("three-qubit class");
    let state = acin_state(form);
    let numeric = classify_three(&state, tol)?;
    if numeric.class != class || numeric.ranks != tree_ranks {
        return Err(Error::Inconsistent(format!(
            "decision tree gives {class} {tree_ranks:?}, state gives {} {:?}",
            numeric.class, numeric.ranks
        )));
    }
    Ok(AcinClass {
        class,
        tree_ranks,
        ranks: numeric.ranks,
        s: three_qubit_s(&state)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Inequivalent,
    NotDistinguished,
}

/// The first invariant on which two states differ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// `concurrence`, `ntangle`, `delta`, `singular-values`, `abs-det`, `rank`,
    /// `class`, `concurrence-zero` or `ntangle-zero`.
    pub invariant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<QubitPartition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<usize>,
    pub a: serde_json::Value,
    pub b: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareVerdict {
    pub relation: Relation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CompareVerdict {
    fn not_distinguished() -> Self {
        Self {
            relation: Relation::NotDistinguished,
            witness: None,
        }
    }

    fn inequivalent(witness: Witness) -> Self {
        Self {
            relation: Relation::Inequivalent,
            witness: Some(witness),
        }
    }

    pub fn is_inequivalent(&self) -> bool {
        self.relation == Relation::Inequivalent
    }
}

/// Two values differ when they are more than `10 · tol` apart.
pub const SEPARATION_FACTOR: f64 = 10.0;

/// Default absolute tolerance for LU comparisons of normalized states.
pub const LU_TOL: f64 = 1e-9;

fn differs(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() > SEPARATION_FACTOR * tol
}

fn scalar_witness(invariant: &str, a: f64, b: f64) -> Witness {
    Witness {
        invariant: invariant.into(),
        rows: None,
        power: None,
        a: a.into(),
        b: b.into(),
    }
}

fn require_same_n(a: &PureState, b: &PureState) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// Compares LU invariants: concurrence (even n) or n-tangle and Δ (odd n), then the
/// sorted singular values and `|det|` of every requested power and partition.
pub fn lu_compare(
    a: &PureState,
    b: &PureState,
    partitions: &[QubitPartition],
    max_power: usize,
    tol: f64,
) -> Result<CompareVerdict> {
    require_same_n(a, b)?;
    a.require_normalized()?;
    b.require_normalized()?;
    let n = a.n();

    if n.is_multiple_of(2) {
        let (ca, cb) = (concurrence_even(a)?, concurrence_even(b)?);
        if differs(ca, cb, tol) {
            return Ok(CompareVerdict::inequivalent(scalar_witness("concurrence", ca, cb)));
        }
    } else if n >= 3 {
        let (oa, ob) = (odd_invariants(a)?, odd_invariants(b)?);
        if differs(oa.ntangle, ob.ntangle, tol) {
            return Ok(CompareVerdict::inequivalent(scalar_witness(
                "ntangle", oa.ntangle, ob.ntangle,
            )));
        }
        if differs(oa.delta, ob.delta, tol) {
            return Ok(CompareVerdict::inequivalent(scalar_witness(
                "delta", oa.delta, ob.delta,
            )));
        }
    }

    for partition in partitions {
        let pa = partition_invariants(a, partition, max_power, tol)?;
        let pb = partition_invariants(b, partition, max_power, tol)?;
        for k in 0..max_power {
            let (sa, sb) = (&pa.singular_values[k], &pb.singular_values[k]);
            if sa.iter().zip(sb).any(|(x, y)| differs(*x, *y, tol)) {
                return Ok(CompareVerdict::inequivalent(Witness {
                    invariant: "singular-values".into(),
                    rows: Some(partition.clone()),
                    power: Some(k + 1),
                    a: serde_json::json!(sa),
                    b: serde_json::json!(sb),
                }));
            }
            let (da, db) = (pa.abs_det[k], pb.abs_det[k]);
            if differs(da, db, tol) {
                return Ok(CompareVerdict::inequivalent(Witness {
                    invariant: "abs-det".into(),
                    rows: Some(partition.clone()),
                    power: Some(k + 1),
                    a: da.into(),
                    b: db.into(),
                }));
            }
        }
    }
    Ok(CompareVerdict::not_distinguished())
}

/// Compares SLOCC invariants: vanishing of the concurrence (even n) or n-tangle
/// (odd n), the two/three-qubit class, and the rank profile of the default
/// partition.
pub fn slocc_compare(a: &PureState, b: &PureState, tol: f64) -> Result<CompareVerdict> {
    require_same_n(a, b)?;
    let n = a.n();
    let (a, b) = (a.normalized()?, b.normalized()?);

    // A value is zero at ≤ tol and nonzero beyond 10·tol; in between nothing is concluded.
    let zero_mismatch = |x: f64, y: f64| {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        lo <= tol && hi > SEPARATION_FACTOR * tol
    };
    if n.is_multiple_of(2) {
        let (ca, cb) = (concurrence_even(&a)?, concurrence_even(&b)?);
        if zero_mismatch(ca, cb) {
            return Ok(CompareVerdict::inequivalent(scalar_witness(
                "concurrence-zero",
                ca,
                cb,
            )));
        }
    } else if n >= 3 {
        let (ta, tb) = (odd_invariants(&a)?.ntangle, odd_invariants(&b)?.ntangle);
        if zero_mismatch(ta, tb) {
            return Ok(CompareVerdict::inequivalent(scalar_witness("ntangle-zero", ta, tb)));
        }
    }

    let class_pair = match n {
        2 => Some((classify_two(&a, tol)?, classify_two(&b, tol)?)),
        3 => Some((classify_three(&a, tol)?.class, classify_three(&b, tol)?.class)),
        _ => None,
    };
    if let Some((ca, cb)) = class_pair {
        if ca != cb {
            return Ok(CompareVerdict::inequivalent(Witness {
                invariant: "class".into(),
                rows: None,
                power: None,
                a: ca.label().into(),
                b: cb.label().into(),
            }));
        }
    }

    if n >= 2 {
        let partition = QubitPartition::default_for(n)?;
        let max_power = 3;
        let ra = rank_profile(&a, &partition, max_power, tol)?;
        let rb = rank_profile(&b, &partition, max_power, tol)?;
        if ra.ranks != rb.ranks {
            return Ok(CompareVerdict::inequivalent(Witness {
                invariant: "rank".into(),
                rows: Some(partition),
                power: None,
                a: serde_json::json!(ra.ranks),
                b: serde_json::json!(rb.ranks),
            }));
        }
    }
    Ok(CompareVerdict::not_distinguished())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    #[serde(rename = "F_c")]
    Concurrence,
    #[serde(rename = "F_g")]
    NTangle,
    #[serde(rename = "F_S")]
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyLabel {
    pub kind: FamilyKind,
    pub value: f64,
    /// SLOCC class, for three qubits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<SloccClass>,
}

/// Slack allowed when checking a family value against its interval.
const FAMILY_RANGE_SLACK: f64 = 1e-9;

fn check_range(label: FamilyLabel, lo_open: bool, lo: f64, hi: f64) -> Result<FamilyLabel> {
    let v = label.value;
    let below = if lo_open { v <= lo } else { v < lo - FAMILY_RANGE_SLACK };
    if below || v > hi + FAMILY_RANGE_SLACK {
        return Err(Error::Inconsistent(format!(
            "family value {v} outside its interval [{lo}, {hi}]"
        )));
    }
    Ok(label)
}

/// Concurrence of the qubit-1,2 factor of a state whose third qubit factors out.
fn pair_concurrence(state: &PureState) -> Result<f64> {
    let c = coeff_matrix(state, &QubitPartition::new(3, vec![1, 2])?)?.into_entries();
    let col = (0..c.ncols())
        .max_by(|&x, &y| c.column(x).norm().total_cmp(&c.column(y).norm()))
        .expect("two columns");
    let v = c.column(col);
    let norm = v.norm();
    let pair: Vec<Complex> = v.iter().map(|z| z / norm).collect();
    concurrence_even(&PureState::new(2, pair)?)
}

/// LU family of a normalized state.
pub fn family_label(state: &PureState, tol: f64) -> Result<FamilyLabel> {
    state.require_normalized()?;
    let n = state.n();
    if n.is_multiple_of(2) {
        let label = FamilyLabel {
            kind: FamilyKind::Concurrence,
            value: concurrence_even(state)?,
            class: None,
        };
        return check_range(label, false, 0.0, 0.5);
    }
    if n > 3 {
        let label = FamilyLabel {
            kind: FamilyKind::NTangle,
            value: odd_invariants(state)?.ntangle,
            class: None,
        };
        return check_range(label, false, 0.0, 0.25);
    }
    if n == 1 {
        return Err(Error::WrongQubitCount { expected: "at least 2", n });
    }
    let class = classify_three(state, tol)?.class;
    let with = |kind, value| FamilyLabel {
        kind,
        value,
        class: Some(class),
    };
    match class {
        SloccClass::CAb => check_range(
            with(FamilyKind::Concurrence, pair_concurrence(state)?),
            true,
            0.0,
            0.5,
        ),
        SloccClass::ABC => Ok(with(FamilyKind::S, three_qubit_s(state)?)),
        SloccClass::W => check_range(with(FamilyKind::S, three_qubit_s(state)?), true, 0.0, SQRT_2 / 3.0),
        _ => check_range(with(FamilyKind::S, three_qubit_s(state)?), true, 0.0, 0.5),
    }
}
