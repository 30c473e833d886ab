//! Prime and extension fields `F_{p^s}` with eagerly built discrete-log tables.
//!
//! Elements are encoded by the integer `c_0 + c_1 p + ... + c_{s-1} p^{s-1}` of their
//! coefficient vector in the power basis of the defining modulus. That integer is also the
//! element ordering used to pick the generator.

use std::fmt;

use crate::arith::{gcd, is_prime, mod_inv, modulo, prime_factors};
use crate::error::{Error, Result};

/// Largest field (number of elements) that [`FieldSpec::build`] accepts.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct FieldSpec {
    p: u64,
    s: u32,
    q: u64,
    modulus: Option<Vec<u64>>,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn build(p: u64, s: u32) -> Result<FieldSpec> {
        Self::build_with_bound(p, s, DEFAULT_FIELD_BOUND)
    }

    pub fn build_with_bound(p: u64, s: u32, bound: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::pre(format!("characteristic must exceed 3, got {p}")));
        }
        if s == 0 {
            return Err(Error::pre("extension degree must be at least 1"));
        }
        let too_large = Error::FieldTooLarge { p, s, bound };
        let q = p.checked_pow(s).ok_or(too_large.clone())?;
        if q > bound || q > u32::MAX as u64 {
            return Err(too_large);
        }

        let modulus = if s == 1 { None } else { Some(smallest_irreducible(p, s as usize)) };
        let arith = PolyArith { p, s: s as usize, modulus: modulus.clone() };
        let order = q - 1;
        let cofactors: Vec<u64> = prime_factors(order).into_iter().map(|r| order / r).collect();
        let generator = (1..q)
            .find(|&g| {
                let g = arith.from_index(g);
                cofactors.iter().all(|&e| !arith.is_one(&arith.pow(&g, e)))
            })
            .expect("a finite field has a primitive element");

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; q as usize];
        let g = arith.from_index(generator);
        let mut cur = arith.from_index(1);
        for t in 0..order as usize {
            let idx = arith.to_index(&cur);
            assert_eq!(log[idx as usize], NO_LOG, "generator order is smaller than q - 1");
            exp[t] = idx as u32;
            log[idx as usize] = t as u32;
            cur = arith.mul(&cur, &g);
        }
        assert!(arith.is_one(&cur), "generator order is not q - 1");

        Ok(FieldSpec { p, s, q, modulus, generator: FieldElement(generator as u32), exp, log })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic defining polynomial, coefficients low to high; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    pub fn element(&self, index: u64) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index as u32))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Option<FieldElement> {
        if coeffs.len() > self.s as usize || coeffs.iter().any(|&c| c >= self.p) {
            return None;
        }
        let idx = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c);
        Some(FieldElement(idx as u32))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut v = x.0 as u64;
        (0..self.s)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(modulo(n, self.p) as u32)
    }

    /// Image of `num/den`, or `None` when `p` divides the denominator.
    pub fn from_rational(&self, num: i64, den: i64) -> Option<FieldElement> {
        let d = mod_inv(modulo(den, self.p), self.p)?;
        let n = modulo(num, self.p);
        Some(FieldElement((n as u128 * d as u128 % self.p as u128) as u32))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y| x + y)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y| x + self.p - y)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(self.zero(), a)
    }

    fn digitwise(&self, a: FieldElement, b: FieldElement, op: impl Fn(u64, u64) -> u64) -> FieldElement {
        let p = self.p;
        if self.s == 1 {
            return FieldElement((op(a.0 as u64, b.0 as u64) % p) as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.s {
            out += op(x % p, y % p) % p * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out as u32)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let t = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q - 1);
        FieldElement(self.exp[t as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let t = (self.q - 1 - self.log[a.0 as usize] as u64) % (self.q - 1);
        Some(FieldElement(self.exp[t as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` for any integer `e`; `0^e` is 0 for `e > 0`, 1 for `e = 0`, undefined for `e < 0`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Option<FieldElement> {
        if a.is_zero() {
            return match e.signum() {
                0 => Some(self.one()),
                1 => Some(self.zero()),
                _ => None,
            };
        }
        let t = (self.log[a.0 as usize] as i128 * e as i128).rem_euclid((self.q - 1) as i128);
        Some(FieldElement(self.exp[t as usize]))
    }

    /// `generator^t`.
    pub fn exp(&self, t: i64) -> FieldElement {
        FieldElement(self.exp[modulo(t, self.q - 1) as usize])
    }

    pub fn dlog(&self, v: FieldElement) -> Result<u64> {
        match self.log.get(v.0 as usize) {
            Some(&t) if t != NO_LOG => Ok(t as u64),
            _ => Err(Error::ZeroElement),
        }
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as i64).expect("non-negative exponent")
    }

    /// `#{y in F_q : y^n = v}`.
    pub fn nth_power_count(&self, v: FieldElement, n: u64) -> u64 {
        if v.is_zero() {
            return 1;
        }
        let d = gcd(n, self.q - 1);
        if self.log[v.0 as usize] as u64 % d == 0 {
            d
        } else {
            0
        }
    }

    pub fn format(&self, x: FieldElement) -> String {
        if self.s == 1 {
            return x.0.to_string();
        }
        let parts: Vec<String> = self.coeffs(x).iter().map(u64::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Polynomial arithmetic over `F_p`, used only while constructing a field.
struct PolyArith {
    p: u64,
    s: usize,
    modulus: Option<Vec<u64>>,
}

impl PolyArith {
    fn from_index(&self, mut idx: u64) -> Vec<u64> {
        (0..self.s)
            .map(|_| {
                let d = idx % self.p;
                idx /= self.p;
                d
            })
            .collect()
    }

    fn to_index(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn is_one(&self, v: &[u64]) -> bool {
        v[0] == 1 && v[1..].iter().all(|&c| c == 0)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        match &self.modulus {
            None => vec![a[0] * b[0] % p],
            Some(f) => {
                let mut prod = poly_mul(a, b, p);
                poly_rem_monic(&mut prod, f, p);
                prod.resize(self.s, 0);
                prod
            }
        }
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.from_index(1);
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// In-place remainder modulo a monic polynomial.
fn poly_rem_monic(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let df = f.len() - 1;
    trim(a);
    while a.len() > df {
        let lead = a[a.len() - 1];
        let shift = a.len() - 1 - df;
        for (i, &c) in f.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
        }
        trim(a);
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    let db = b.len() - 1;
    let inv_lead = mod_inv(b[db], p).expect("nonzero leading coefficient");
    while a.len() > db {
        let factor = a[a.len() - 1] * inv_lead % p;
        let shift = a.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - factor * c % p) % p;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    poly_rem_monic(&mut b, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(&acc, &b, p);
            poly_rem_monic(&mut acc, f, p);
        }
        b = poly_mul(&b, &b, p);
        poly_rem_monic(&mut b, f, p);
        e >>= 1;
    }
    acc
}

/// Distinct-degree test: `f` (monic, degree `s`) is irreducible iff it shares no factor with
/// `x^{p^d} - x` for `1 <= d <= s/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let s = f.len() - 1;
    if s == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=s / 2 {
        h = poly_powmod(&h, p, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        if poly_gcd(f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Smallest irreducible monic polynomial of degree `s`, ordering the lower coefficients by the
/// integer `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`.
fn smallest_irreducible(p: u64, s: usize) -> Vec<u64> {
    let count = p.pow(s as u32);
    (0..count)
        .map(|mut idx| {
            let mut f: Vec<u64> = (0..s)
                .map(|_| {
                    let d = idx % p;
                    idx /= p;
                    d
                })
                .collect();
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_seven() {
        let f = FieldSpec::build(7, 1).unwrap();
        assert_eq!(f.q(), 7);
        assert_eq!(f.generator(), FieldElement(3));
        // oracle: the powers of 3 visit every nonzero residue before returning to 1
        let powers: Vec<u64> = (0..6).map(|t| 3u64.pow(t) % 7).collect();
        assert_eq!(powers, vec![1, 3, 2, 6, 4, 5]);
        assert_eq!(f.dlog(f.from_int(6)).unwrap(), 3);
        assert_eq!(f.dlog(f.generator()).unwrap(), 1);
        assert_eq!(f.dlog(f.one()).unwrap(), 0);
        assert_eq!(f.dlog(f.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn quadratic_extension_of_seven() {
        // oracle: monic quadratics without roots, in the same ordering
        let oracle = (0..49u64)
            .map(|idx| (idx % 7, idx / 7))
            .find(|&(c0, c1)| (0..7u64).all(|x| (x * x + c1 * x + c0) % 7 != 0))
            .unwrap();
        assert_eq!(oracle, (1, 0));
        let f = FieldSpec::build(7, 2).unwrap();
        assert_eq!(f.q(), 49);
        assert_eq!(f.modulus(), Some(&[1u64, 0, 1][..]));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldSpec::build(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldSpec::build(3, 1), Err(Error::Precondition(_))));
        assert!(matches!(FieldSpec::build(5, 11), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn power_counts() {
        let f = FieldSpec::build(7, 1).unwrap();
        assert_eq!(f.nth_power_count(f.zero(), 5), 1);
        assert_eq!(f.nth_power_count(f.one(), 3), 3);
        assert_eq!(f.nth_power_count(f.from_int(3), 2), 0);
        // brute force over all (v, n)
        for v in f.elements() {
            for n in 1..10u64 {
                let brute = f.elements().filter(|&y| f.pow(y, n as i64) == Some(v)).count() as u64;
                assert_eq!(f.nth_power_count(v, n), brute, "v={v:?} n={n}");
            }
        }
    }

    #[test]
    fn counts_partition_the_field() {
        for (p, s) in [(5, 2), (7, 2), (11, 1), (5, 3)] {
            let f = FieldSpec::build(p, s).unwrap();
            for n in 1..13 {
                let total: u64 = f.elements().map(|v| f.nth_power_count(v, n)).sum();
                assert_eq!(total, f.q());
            }
        }
    }

    #[test]
    fn dlog_round_trip_full_table() {
        for (p, s) in [(5, 1), (7, 3), (11, 2), (13, 2)] {
            let f = FieldSpec::build(p, s).unwrap();
            for v in f.elements().skip(1) {
                assert_eq!(f.exp(f.dlog(v).unwrap() as i64), v);
            }
        }
    }

    #[test]
    fn irreducibility_matches_root_search_for_cubics() {
        let p = 5;
        for idx in 0..125u64 {
            let f = vec![idx % 5, idx / 5 % 5, idx / 25, 1];
            let has_root = (0..p).any(|x| (f[0] + f[1] * x + f[2] * x * x + x * x * x) % p == 0);
            assert_eq!(is_irreducible(&f, p), !has_root, "{f:?}");
        }
    }

    #[test]
    fn rationals_reduce() {
        let f = FieldSpec::build(7, 1).unwrap();
        assert_eq!(f.from_rational(1, 2), Some(f.from_int(4)));
        assert_eq!(f.from_rational(1, 14), None);
        assert_eq!(f.from_rational(-3, 5), Some(f.from_int(5)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn field() -> &'static FieldSpec {
            static F: OnceLock<FieldSpec> = OnceLock::new();
            F.get_or_init(|| FieldSpec::build(11, 3).unwrap())
        }

        proptest! {
            #[test]
            fn ring_axioms(a in 0u64..1331, b in 0u64..1331, c in 0u64..1331) {
                let f = field();
                let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }

            #[test]
            fn frobenius_is_additive(a in 0u64..1331, b in 0u64..1331) {
                let f = field();
                let (a, b) = (f.element(a).unwrap(), f.element(b).unwrap());
                prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}
