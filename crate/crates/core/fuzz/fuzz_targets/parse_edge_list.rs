#![no_main]

use gapforge::frontends::parse_edge_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = parse_edge_list(text) {
            for t in 1..4 {
                let _ = g.partitioned(t);
            }
        }
    }
});
