#![no_main]

use legendre_core::parse::parse_family;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    if let Ok(f) = parse_family(&s) {
        assert_eq!(parse_family(&f.to_string()).ok(), Some(f));
        let _ = f.genus();
    }
});
