//! Graph class lines. Canonical labeling only runs on small graphs.

#![no_main]

use libfuzzer_sys::fuzz_target;
use minsep_core::MultiGraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = MultiGraph::from_json(text) else {
        return;
    };
    assert_eq!(MultiGraph::from_json(&g.to_json()).expect("written graph parses"), g);
    if g.vertex_count() <= 8 && g.edges().len() <= 24 {
        let c = g.canonical_form();
        assert_eq!(c.canonical_form(), c);
        assert!(g.is_isomorphic(&c));
    }
});
