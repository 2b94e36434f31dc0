#![no_main]

use hcmc_core::export::grid::{parse_grid, MAX_GRID_POINTS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = parse_grid(text) {
        assert!(grid.len() <= MAX_GRID_POINTS);
        for axis in &grid.axes {
            assert!(axis.values.iter().all(|v| v.is_finite()));
        }
    }
});
