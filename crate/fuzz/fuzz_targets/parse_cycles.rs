//! Cycle notation. The first byte picks the degree, the rest is the text.

#![no_main]

use libfuzzer_sys::fuzz_target;
use minsep_core::Permutation;

fuzz_target!(|data: &[u8]| {
    let Some((&n, text)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(text) else {
        return;
    };
    let n = usize::from(n % 64);
    if let Ok(p) = Permutation::parse_cycles(n, text) {
        let again = Permutation::parse_cycles(n, &p.to_string()).expect("normalized text parses");
        assert_eq!(again, p);
        assert_eq!(p.cycle_type().total(), n);
    }
});
