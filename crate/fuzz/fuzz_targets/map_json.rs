#![no_main]

use libfuzzer_sys::fuzz_target;
use minsep_core::io::{map_from_json, map_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = map_from_json(text) {
        assert_eq!(map_from_json(&map_to_json(&m)).expect("written map parses"), m);
        assert_eq!(m.dual().dual(), m);
        assert_eq!(m.dual().genus(), m.genus());
    }
});
