#![no_main]

use funk_finsler::parse::{parse_xi_mode, MetricName, SuiteName};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = s.parse::<MetricName>() {
        assert_eq!(m.to_string().parse::<MetricName>().unwrap(), m);
    }
    if let Ok(suite) = s.parse::<SuiteName>() {
        assert_eq!(suite.as_str(), s);
    }
    if let Ok(mode) = parse_xi_mode(s) {
        let d = mode.direction(funk_finsler::Vec2::new(0.3, -0.4));
        assert!(d.is_finite() && d.norm() > 0.0);
    }
});
