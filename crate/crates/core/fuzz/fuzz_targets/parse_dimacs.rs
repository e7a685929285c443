#![no_main]

use gapforge::frontends::{parse_dimacs_cnf, sat_to_maxcover};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(phi) = parse_dimacs_cnf(text) {
            // keep the front-end small enough to finish
            if phi.vars() <= 12 {
                let _ = sat_to_maxcover(&phi, 2);
            }
        }
    }
});
