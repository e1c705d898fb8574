#![no_main]

use libfuzzer_sys::fuzz_target;
use minsep_core::io::{hypermap_from_json, hypermap_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(h) = hypermap_from_json(text) {
        let back = hypermap_from_json(&hypermap_to_json(&h)).expect("written hypermap parses");
        assert_eq!(back, h);
        let _ = minsep_core::rules::minsep_genus(&h);
        let _ = h.genus();
    }
});
