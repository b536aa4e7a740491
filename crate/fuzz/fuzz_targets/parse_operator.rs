#![no_main]

use libfuzzer_sys::fuzz_target;
use spinflip::io::{operator_to_json, parse_operator};
use spinflip::state::{apply_local, standard_state, StandardState};

fuzz_target!(|data: &[u8]| {
    let Ok(op) = parse_operator(data) else { return };
    let again = parse_operator(operator_to_json(&op).as_bytes()).expect("re-parse");
    assert_eq!(again, op);
    if op.n() <= 8 {
        let psi = standard_state(StandardState::Ghz, op.n().max(2)).expect("ghz");
        let _ = apply_local(&psi, &op);
    }
});
