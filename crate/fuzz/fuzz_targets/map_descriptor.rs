#![no_main]

use conelab_lab::MapDescriptor;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(d) = text.parse::<MapDescriptor>() {
            let _ = d.to_string().parse::<MapDescriptor>();
            if let MapDescriptor::Diagonal(f) = d {
                let _ = f.weights(8);
            }
        }
    }
});
