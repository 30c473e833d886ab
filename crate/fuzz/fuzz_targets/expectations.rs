#![no_main]

use legendre_cli::expectations::Expectations;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(e) = Expectations::parse(s) {
        let _ = e.lookup("greene", "p=7");
        let _ = e.lookup("", "");
    }
});
