#![no_main]

use libfuzzer_sys::fuzz_target;
use spinflip::classify::classify_three;
use spinflip::coeff::QubitPartition;
use spinflip::invariants::invariant_profile;
use spinflip::io::{parse_state, state_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(psi) = parse_state(data) else { return };
    let again = parse_state(state_to_json(&psi).as_bytes()).expect("re-parse");
    assert_eq!(again, psi);
    if psi.n() < 2 || psi.n() > 6 || psi.is_zero() {
        return;
    }
    let psi = psi.normalized().expect("nonzero");
    let partition = QubitPartition::default_for(psi.n()).expect("n >= 2");
    let _ = invariant_profile(&psi, &[partition], 2, spinflip::DEFAULT_TOL);
    if psi.n() == 3 {
        let _ = classify_three(&psi, spinflip::DEFAULT_TOL);
    }
});
