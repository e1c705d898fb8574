#![no_main]

use libfuzzer_sys::fuzz_target;
use minsep_core::{Partition, TypeTriple};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = TypeTriple::parse_key(text) {
        assert_eq!(TypeTriple::parse_key(&t.key()).expect("written key parses"), t);
    }
    if let Ok(p) = Partition::parse_key(text) {
        assert_eq!(Partition::parse_key(&p.key()).expect("written key parses"), p);
    }
});
