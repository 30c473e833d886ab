//! Parsers for the textual inputs accepted on the command line.

use num_rational::Rational64;
use num_traits::Zero;

use crate::arith::is_prime;
use crate::curves::CurveFamily;
use crate::error::{Error, Result};

const MAX_INPUT: usize = 256;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int(s: &str, what: &str) -> Result<i64> {
    match s.trim().parse::<i64>() {
        // keeps every later negation in range
        Ok(v) if v != i64::MIN => Ok(v),
        _ => Err(parse_err(format!("{what}: `{s}` is not an integer in range"))),
    }
}

fn uint(s: &str, what: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| parse_err(format!("{what}: `{s}` is not a non-negative integer")))
}

/// A rational number written `u/v`, as an integer, or as a finite decimal such as `0.3`.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    if s.is_empty() || s.len() > MAX_INPUT {
        return Err(parse_err("expected a rational number"));
    }
    if let Some((u, v)) = s.split_once('/') {
        let (u, v) = (int(u, "numerator")?, int(v, "denominator")?);
        if v == 0 {
            return Err(parse_err("zero denominator"));
        }
        return Ok(Rational64::new(u, v));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && digits.is_empty() {
            return Err(parse_err(format!("`{s}` is not a number")));
        }
        if !frac.chars().all(|c| c.is_ascii_digit()) || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(parse_err(format!("`{s}` is not a decimal")));
        }
        let w: i64 = if digits.is_empty() { 0 } else { int(digits, "integer part")? };
        let scale = u32::try_from(frac.len())
            .ok()
            .and_then(|n| 10i64.checked_pow(n))
            .ok_or_else(|| parse_err("too many decimal places"))?;
        let f: i64 = if frac.is_empty() { 0 } else { int(frac, "fraction")? };
        let num = w
            .checked_mul(scale)
            .and_then(|x| x.checked_add(f))
            .ok_or_else(|| parse_err("decimal out of range"))?;
        let r = Rational64::new(num, scale);
        return Ok(if neg { -r } else { r });
    }
    Ok(Rational64::from_integer(int(s, "value")?))
}

/// λ for a curve instance: any rational other than 0 and 1.
pub fn parse_lambda(s: &str) -> Result<Rational64> {
    let l = parse_rational(s)?;
    if l.is_zero() || l == Rational64::from_integer(1) {
        return Err(Error::pre(format!("λ = {l} is degenerate")));
    }
    Ok(l)
}

/// `[N;i,j,k]`, brackets optional.
pub fn parse_family(s: &str) -> Result<CurveFamily> {
    let s = s.trim();
    if s.len() > MAX_INPUT {
        return Err(parse_err("family string too long"));
    }
    let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
    let (n, rest) = inner.split_once(';').ok_or_else(|| parse_err("expected `[N;i,j,k]`"))?;
    let parts: Vec<&str> = rest.split(',').collect();
    let [i, j, k] = parts[..] else {
        return Err(parse_err("expected three exponents after `;`"));
    };
    CurveFamily::new(uint(n, "N")?, uint(i, "i")?, uint(j, "j")?, uint(k, "k")?)
}

/// Largest upper end accepted in a prime range.
pub const MAX_PRIME_RANGE: u64 = 1 << 20;

/// A comma list `7,11,13`, a half-open range `5..50` or a closed range `5..=50`.
///
/// Ranges keep only the primes; an explicit list must consist of primes.
pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() || s.len() > MAX_INPUT {
        return Err(parse_err("expected a prime list or range"));
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let (hi, inclusive) = match hi.strip_prefix('=') {
            Some(h) => (h, true),
            None => (hi, false),
        };
        let lo = uint(lo, "range start")?;
        let hi = uint(hi, "range end")?;
        let hi = if inclusive { hi.saturating_add(1) } else { hi };
        if hi > MAX_PRIME_RANGE {
            return Err(parse_err(format!("range end exceeds {MAX_PRIME_RANGE}")));
        }
        let out: Vec<u64> = (lo..hi).filter(|&n| is_prime(n)).collect();
        if out.is_empty() {
            return Err(parse_err(format!("no primes in `{s}`")));
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let p = uint(part, "prime")?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2/1").unwrap(), r(2, 1));
        assert_eq!(parse_rational(" -3/6 ").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("0.3").unwrap(), r(3, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), r(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        for bad in ["", "1/0", "a", "1.2.3", "0.-1", "1/2/3", ".", "-."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lambdas() {
        assert!(matches!(parse_lambda("1/1"), Err(Error::Precondition(_))));
        assert!(parse_lambda("0").is_err());
        assert_eq!(parse_lambda("1.5").unwrap(), r(3, 2));
    }

    #[test]
    fn families() {
        let f = parse_family("[6;4,3,1]").unwrap();
        assert_eq!((f.n(), f.i(), f.j(), f.k()), (6, 4, 3, 1));
        assert_eq!(parse_family("12; 9, 5, 1").unwrap(), CurveFamily::new(12, 9, 5, 1).unwrap());
        for bad in ["[6;4,3]", "[6;4,3,1,1]", "6,4,3,1", "[6;0,3,1]", "[x;1,1,1]"] {
            assert!(parse_family(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn primes() {
        assert_eq!(parse_primes("13,7,11,7").unwrap(), [7, 11, 13]);
        assert_eq!(parse_primes("5..20").unwrap(), [5, 7, 11, 13, 17, 19]);
        assert_eq!(parse_primes("5..=19").unwrap(), [5, 7, 11, 13, 17, 19]);
        assert!(matches!(parse_primes("7,9"), Err(Error::NotPrime(9))));
        assert!(parse_primes("24..28").is_err());
        assert!(parse_primes("2..99999999999").is_err());
    }

    proptest! {
        #[test]
        fn fraction_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = r(n, d);
            prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
        }

        #[test]
        fn arbitrary_text_never_panics(s in "\\PC{0,40}") {
            let _ = parse_rational(&s);
            let _ = parse_family(&s);
            let _ = parse_primes(&s);
        }
    }
}
