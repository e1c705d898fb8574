//! One shard line.

#![no_main]

use libfuzzer_sys::fuzz_target;
use minsep_core::io::{entry_from_line, entry_to_line};

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(e) = entry_from_line(line) {
        let back = entry_from_line(&entry_to_line(&e)).expect("written entry parses");
        assert_eq!(back, e);
    }
});
