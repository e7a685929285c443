#![no_main]

use gapforge::format::{maxcover_from_json, maxcover_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = maxcover_from_json(text) {
            assert_eq!(maxcover_from_json(&maxcover_to_json(&g)).unwrap(), g);
        }
    }
});
