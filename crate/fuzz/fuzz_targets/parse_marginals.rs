#![no_main]

use libfuzzer_sys::fuzz_target;
use pairgap::io;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(x) = io::parse_marginals(text) {
            let inline: Vec<String> = x.values().iter().map(ToString::to_string).collect();
            assert_eq!(io::parse_marginals(&inline.join(",")).unwrap(), x);
        }
    }
});
