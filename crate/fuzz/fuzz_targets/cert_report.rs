#![no_main]

//! Input is an edge list, a NUL byte, then a decycle report in JSON.

use libfuzzer_sys::fuzz_target;
use threefree::edgelist;
use threefree_cli::cmd_verify_cert;

fuzz_target!(|data: &[u8]| {
    let Some(split) = data.iter().position(|&b| b == 0) else { return };
    let (Ok(graph), Ok(report)) = (std::str::from_utf8(&data[..split]), std::str::from_utf8(&data[split + 1..])) else {
        return;
    };
    let Ok(loaded) = edgelist::parse(graph) else { return };
    if loaded.graph.n() > 24 {
        return;
    }
    // forged certificates must be rejected, never panic
    let _ = cmd_verify_cert(&loaded.graph, report);
});
