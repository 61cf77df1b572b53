#![no_main]

use libfuzzer_sys::fuzz_target;
use pairgap::io;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = io::parse_set_function(text) {
            assert_eq!(io::parse_set_function(&io::set_function_to_json(&f)).unwrap(), f);
        }
    }
});
