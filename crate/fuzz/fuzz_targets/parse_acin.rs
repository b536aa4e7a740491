#![no_main]

use libfuzzer_sys::fuzz_target;
use spinflip::classify::classify_acin;
use spinflip::state::AcinForm;

fuzz_target!(|data: &[u8]| {
    if data.len() < 8 {
        return;
    }
    let (phi, rest) = data.split_at(8);
    let phi = f64::from_le_bytes(phi.try_into().expect("8 bytes"));
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(form) = AcinForm::parse(text, phi) {
        let _ = classify_acin(&form, spinflip::DEFAULT_TOL);
    }
});
