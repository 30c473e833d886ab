#![no_main]

use legendre_core::arith::is_prime;
use legendre_core::parse::parse_primes;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    if let Ok(ps) = parse_primes(&s) {
        assert!(ps.iter().all(|&p| is_prime(p)));
    }
});
