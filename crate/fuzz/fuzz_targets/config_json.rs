#![no_main]

use conelab_lab::{validate, ExperimentConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = ExperimentConfig::from_json(text) {
            let _ = cfg.run_id();
            if let Ok(v) = validate(cfg) {
                let _ = conelab_lab::list(&v);
            }
        }
    }
});
