#![no_main]

use libfuzzer_sys::fuzz_target;
use threefree::edgelist;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(loaded) = edgelist::parse(text) else { return };
    let g = loaded.graph;
    let again = edgelist::parse(&edgelist::to_text(&g)).expect("printed edge list parses");
    assert_eq!(again.graph, g);
    assert_eq!(again.collapsed, 0);
    if g.n() <= 64 {
        let _ = g.three_free_check();
        let _ = g.acyclicity();
    }
});
