//! Float views of exact quantities: logarithms of big integers and
//! rationals without overflow, accurate to well below the 1e-9 slack used
//! by the audit assertions.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::BigRat;

/// Natural log of a positive big integer.
pub fn ln_bigint(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "log of a non-positive integer");
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let mant = (n >> shift).to_f64().expect("53-bit mantissa");
    mant.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_bigrat(x: &BigRat) -> f64 {
    assert!(x.is_positive(), "log of a non-positive rational");
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// log^+ |x| = log max(1, |x|), with log^+ 0 = 0.
pub fn log_plus_abs(x: &BigRat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let a = x.abs();
    if a.numer() <= a.denom() {
        0.0
    } else {
        ln_bigrat(&a)
    }
}

/// Round a rational to the nearest integer, ties away from zero.
pub fn round_rat(x: &BigRat) -> BigInt {
    let two = BigInt::from(2);
    let num = x.numer() * &two;
    let den = x.denom() * &two;
    let shifted = if x.is_negative() {
        num - x.denom()
    } else {
        num + x.denom()
    };
    // truncation toward zero of shifted / den
    &shifted / &den
}

/// f64 view of a rational (approximate; exactness lives upstream).
pub fn rat_to_f64(x: &BigRat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.numer().bits() <= 52 && x.denom().bits() <= 52 {
        return x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap();
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_bigrat(&x.abs())).exp()
}

/// Volume of the d-dimensional unit ball, pi^(d/2)/Gamma(d/2 + 1), by the
/// exact two-step recurrence v_d = 2 pi v_{d-2} / d.
pub fn unit_ball_volume(d: usize) -> f64 {
    assert!(d >= 1);
    let mut v = if d % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if d % 2 == 0 { 0 } else { 1 };
    while k < d {
        k += 2;
        v *= 2.0 * std::f64::consts::PI / k as f64;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use num_bigint::BigInt;

    #[test]
    fn big_logs() {
        let n = BigInt::from(3u32).pow(400);
        let expect = 400.0 * 3.0f64.ln();
        assert!((ln_bigint(&n) - expect).abs() < 1e-9);
        assert!((ln_bigrat(&rat(1, 8)) + 3.0 * 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn log_plus() {
        assert_eq!(log_plus_abs(&rat_int(0)), 0.0);
        assert_eq!(log_plus_abs(&rat(1, 2)), 0.0);
        assert!((log_plus_abs(&rat(-5, 2)) - 2.5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn rounding() {
        assert_eq!(round_rat(&rat(1, 2)), BigInt::from(1));
        assert_eq!(round_rat(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(round_rat(&rat(7, 3)), BigInt::from(2));
        assert_eq!(round_rat(&rat(-8, 3)), BigInt::from(-3));
    }

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-12);
        assert!((unit_ball_volume(2) - std::f64::consts::PI).abs() < 1e-12);
        assert!((unit_ball_volume(3) - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        // v_4 = pi^2/2
        let pi = std::f64::consts::PI;
        assert!((unit_ball_volume(4) - pi * pi / 2.0).abs() < 1e-12);
    }
}
