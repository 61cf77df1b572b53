#![no_main]

use libfuzzer_sys::fuzz_target;
use pairgap::io;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(d) = io::parse_distribution(text) {
            assert_eq!(io::parse_distribution(&io::distribution_to_json(&d)).unwrap(), d);
        }
    }
});
