#![no_main]

use legendre_core::parse::{parse_lambda, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(s) {
        // whatever parses must survive a round trip through its display form
        assert_eq!(parse_rational(&q.to_string()).ok(), Some(q));
    }
    let _ = parse_lambda(s);
});
