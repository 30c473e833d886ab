#![no_main]

use legendre_core::cyclotomic::CycNumber;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(c) = CycNumber::from_json(&v) {
        // decoding is canonical: re-encoding gives the same number back
        assert_eq!(CycNumber::from_json(&c.to_json()).ok(), Some(c));
    }
});
