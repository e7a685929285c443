#![no_main]

use gapforge::format::{setcover_from_json, setcover_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = setcover_from_json(text) {
            assert_eq!(setcover_from_json(&setcover_to_json(&s)).unwrap(), s);
        }
    }
});
