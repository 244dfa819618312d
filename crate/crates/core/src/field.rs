//! Coefficient fields: arbitrary-precision rationals and prime fields F_p.
//!
//! All higher layers (polynomials, rational functions, matrices) are generic
//! over the [`Field`] trait. A field value acts as a context object; elements
//! are plain data. This keeps `F_p` elements at one machine word instead of
//! carrying the modulus around.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type BigRat = BigRational;

/// Shorthand for a `BigRat` from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer `BigRat`.
pub fn rat_int(n: i64) -> BigRat {
    BigRational::from_integer(BigInt::from(n))
}

/// A field of coefficients, used as an explicit context for all arithmetic.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    /// Canonical image of a small integer.
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Canonical text form of a coefficient ("3", "-1/2").
    fn render(&self, a: &Self::Elem) -> String;
}

/// The field of rational numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRat;

    fn zero(&self) -> BigRat {
        BigRat::zero()
    }
    fn one(&self) -> BigRat {
        BigRat::one()
    }
    fn is_zero(&self, a: &BigRat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a + b
    }
    fn sub(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a - b
    }
    fn neg(&self, a: &BigRat) -> BigRat {
        -a
    }
    fn mul(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a * b
    }
    fn inv(&self, a: &BigRat) -> Option<BigRat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRat {
        BigRat::from_integer(BigInt::from(n))
    }
    fn render(&self, a: &BigRat) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The ring of integers, exposed through the [`Field`] interface so integer
/// matrices can reuse the generic containers; `inv` is defined only on the
/// units +-1, and the generic elimination routines must not be used over it.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Integers;

impl Field for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        use num_traits::Zero;
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        use num_traits::One;
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        use num_traits::Zero;
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        use num_traits::One;
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// The prime field F_p with residues in `[0, p)`.
///
/// The modulus must pass a deterministic Miller-Rabin check (valid for all
/// p < 2^64); scans stay far below that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary-precision integer into `[0, p)`.
    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = n % &p;
        let r = if r.sign() == Sign::Minus { r + &p } else { r };
        r.to_u64().expect("residue fits in u64")
    }

    /// Reduce a rational into F_p; `None` when p divides the denominator.
    pub fn reduce_rat(&self, a: &BigRat) -> Option<u64> {
        let d = self.reduce_bigint(a.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_bigint(a.numer());
        Some(self.mul(&n, &self.inv(&d).expect("nonzero residue")))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended gcd on (a, p)
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "modulus is prime, gcd must be 1");
        let p = self.p as i128;
        Some(((s0 % p + p) % p) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        let p = self.p as i128;
        ((n as i128 % p + p) % p) as u64
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Deterministic Miller-Rabin primality test, valid for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    // This base set is deterministic below 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// p-adic valuation of a nonzero rational (negative when p divides the denominator).
pub fn padic_valuation(a: &BigRat, p: u64) -> i64 {
    assert!(!a.is_zero(), "valuation of zero is undefined");
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut v = 0i64;
        n = n.abs();
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    count(a.numer().clone()) - count(a.denom().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.add(&3, &4), 2);
        assert_eq!(f5.mul(&3, &4), 2);
        assert_eq!(f5.inv(&2), Some(3));
        assert_eq!(f5.inv(&0), None);
        assert_eq!(f5.from_i64(-1), 4);
        assert!(PrimeField::new(6).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7919));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(is_prime_u64(2u64.pow(61) - 1));
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn rational_reduction() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.reduce_rat(&rat(1, 2)), Some(3));
        assert_eq!(f5.reduce_rat(&rat(1, 5)), None);
        assert_eq!(f5.reduce_rat(&rat(-1, 1)), Some(4));
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&rat(8, 3), 2), 3);
        assert_eq!(padic_valuation(&rat(5, 128), 2), -7);
        assert_eq!(padic_valuation(&rat(9, 1), 3), 2);
    }
}
