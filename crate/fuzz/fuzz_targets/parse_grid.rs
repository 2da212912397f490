#![no_main]

use funk_finsler::parse::{parse_grid, MAX_GRID_CELLS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_grid(s) {
        assert!(g.nx >= 2 && g.ny >= 2);
        assert!(g.len() <= MAX_GRID_CELLS);
        assert_eq!(parse_grid(&g.to_string()).unwrap(), g);
        let last = g.node(g.nx - 1, g.ny - 1);
        assert!(last.is_finite());
    }
});
