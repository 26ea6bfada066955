#![no_main]

use conelab_lab::parse_symbol;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((_, a)) = parse_symbol(text) {
            let _ = a.is_elliptic();
            let _ = a.matching_residual();
        }
    }
});
