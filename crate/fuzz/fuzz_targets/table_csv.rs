#![no_main]

use libfuzzer_sys::fuzz_target;
use minsep_core::GenusTable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = GenusTable::from_csv(text) {
        assert_eq!(GenusTable::from_csv(&t.to_csv()).expect("written table parses"), t);
    }
});
