#![no_main]

use funk_finsler::parse::parse_vec2;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_vec2(s) {
        assert!(v.is_finite());
        let again = parse_vec2(&format!("{},{}", v.x, v.y)).unwrap();
        assert_eq!(again, v);
    }
});
