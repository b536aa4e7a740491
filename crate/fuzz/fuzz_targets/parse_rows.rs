#![no_main]

use libfuzzer_sys::fuzz_target;
use spinflip::coeff::QubitPartition;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let n = usize::from(n % 32);
    if let Ok(p) = QubitPartition::parse(text, n) {
        assert!(p.size() >= 1 && p.size() < n);
        let back = QubitPartition::parse(&p.to_string(), n).expect("display re-parses");
        assert_eq!(back, p);
    }
});
