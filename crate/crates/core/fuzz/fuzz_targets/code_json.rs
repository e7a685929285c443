#![no_main]

use gapforge::format::{code_from_json, code_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(code) = code_from_json(text) {
            let again = code_to_json(&code).expect("parsed codes have tables");
            assert_eq!(code_from_json(&again).unwrap(), code);
        }
    }
});
