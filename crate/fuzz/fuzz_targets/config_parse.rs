#![no_main]

use libfuzzer_sys::fuzz_target;

use squeezelink::experiments::SweepConfig;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(cfg) = SweepConfig::parse(&text) {
        let again = SweepConfig::parse(&cfg.to_text()).expect("rendered config parses");
        assert_eq!(cfg, again);
    }
});
