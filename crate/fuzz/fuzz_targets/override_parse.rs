#![no_main]

use libfuzzer_sys::fuzz_target;

use squeezelink::experiments::SweepConfig;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let mut cfg = SweepConfig::default();
    let pairs: Vec<&str> = text.split('\n').collect();
    if cfg.apply_overrides(&pairs).is_ok() {
        assert!(cfg.validate().is_ok());
    }
});
