#![no_main]

use libfuzzer_sys::fuzz_target;

use squeezelink::experiments::config::MAX_GRID_POINTS;
use squeezelink::experiments::parse_grid;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(grid) = parse_grid(&text) {
        assert!(!grid.is_empty() && grid.len() <= MAX_GRID_POINTS);
        assert!(grid.iter().all(|x| x.is_finite()));
    }
});
