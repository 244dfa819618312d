//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored lowest degree first. The zero polynomial is the
//! empty sequence; otherwise the last coefficient is nonzero. Degrees in the
//! prime scans stay at a few thousand, so everything here is schoolbook.

use crate::field::{BigRat, Field, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Poly { coeffs };
        p.trim(field);
        p
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn one(field: &F) -> Self {
        Poly::constant(field, field.one())
    }

    /// c * z^k
    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        if field.is_zero(&c) {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable z.
    pub fn var(field: &F) -> Self {
        Poly::monomial(field, field.one(), 1)
    }

    fn trim(&mut self, field: &F) {
        while let Some(last) = self.coeffs.last() {
            if field.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, field: &F, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_one(&self, field: &F) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == field.one()
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => field.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(field, coeffs)
    }

    pub fn neg(&self, field: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if field.is_zero(b) {
                    continue;
                }
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Poly::from_coeffs(field, coeffs)
    }

    pub fn mul_scalar(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    /// Multiply by z^k.
    pub fn shift_up(&self, k: usize) -> Self
    where
        F: Default,
    {
        self.shift_up_in(&F::default(), k)
    }

    pub fn shift_up_in(&self, field: &F, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, field: &F, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = field
            .inv(divisor.leading().expect("nonzero divisor"))
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - divisor.coeffs.len() + 1;
        let mut quot = vec![field.zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + divisor.coeffs.len() - 1].clone();
            if field.is_zero(&top) {
                continue;
            }
            let q = field.mul(&top, &lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = field.mul(&q, d);
                rem[k + j] = field.sub(&rem[k + j], &t);
            }
            quot[k] = q;
        }
        (
            Poly::from_coeffs(field, quot),
            Poly::from_coeffs(field, rem),
        )
    }

    pub fn rem(&self, field: &F, divisor: &Self) -> Self {
        self.divrem(field, divisor).1
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    pub fn make_monic(&self, field: &F) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if *l == field.one() => self.clone(),
            Some(l) => {
                let inv = field.inv(l).expect("nonzero leading coefficient");
                self.mul_scalar(field, &inv)
            }
        }
    }

    /// Formal derivative. In characteristic p the factor n is taken in F,
    /// so d(z^p)/dz = 0 falls out of coefficient arithmetic.
    pub fn derivative(&self, field: &F) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| field.mul(c, &field.from_i64(k as i64)))
            .collect();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn eval(&self, field: &F, x: &F::Elem) -> F::Elem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    pub fn pow(&self, field: &F, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// Substitute z -> z + c (Taylor shift).
    pub fn compose_shift(&self, field: &F, c: &F::Elem) -> Self {
        // Horner on p(z + c)
        let mut acc = Poly::zero();
        let shift = Poly::from_coeffs(field, vec![c.clone(), field.one()]);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(field, &shift);
            acc = acc.add(field, &Poly::constant(field, coeff.clone()));
        }
        acc
    }

    /// True when every exponent with a nonzero coefficient is divisible by m.
    pub fn supported_on_multiples_of(&self, field: &F, m: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % m == 0 || field.is_zero(c))
    }

    /// Replace z^(km) by z^k; requires [`supported_on_multiples_of`].
    pub fn contract_exponents(&self, field: &F, m: usize) -> Self {
        debug_assert!(self.supported_on_multiples_of(field, m));
        let coeffs = self.coeffs.iter().step_by(m).cloned().collect();
        Poly::from_coeffs(field, coeffs)
    }

    /// Canonical text form, highest degree first, e.g. `3*z^2 - 1/2`.
    pub fn render(&self, field: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let one = field.one();
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let txt = field.render(c);
            let (neg, mag) = match txt.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, txt),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_is_unit = mag == field.render(&one);
            match (k, coeff_is_unit) {
                (0, _) => out.push_str(&mag),
                (1, true) => out.push_str(var),
                (1, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(var);
                }
                (_, true) => out.push_str(&format!("{var}^{k}")),
                (_, false) => out.push_str(&format!("{mag}*{var}^{k}")),
            }
        }
        out
    }
}

impl Poly<Rationals> {
    /// Content of a rational polynomial: positive rational c with self = c * primitive.
    pub fn content(&self) -> BigRat {
        if self.is_zero() {
            return BigRat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRat::new(num_gcd, den_lcm)
    }

    /// Primitive integer-coefficient multiple: self / content.
    pub fn primitive_part(&self) -> Poly<Rationals> {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        self.mul_scalar(&Rationals, &c.recip())
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Reduce all coefficients mod p; `None` if any denominator vanishes mod p.
    pub fn reduce_mod(&self, fp: &crate::field::PrimeField) -> Option<Poly<crate::field::PrimeField>> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(fp.reduce_rat(c)?);
        }
        Some(Poly::from_coeffs(fp, coeffs))
    }
}

/// `base^exp mod modulus` by repeated squaring.
pub fn modpow<F: Field>(field: &F, base: &Poly<F>, mut exp: u64, modulus: &Poly<F>) -> Poly<F> {
    assert!(
        modulus.degree().map_or(false, |d| d >= 1),
        "modulus must have degree >= 1"
    );
    let mut acc = Poly::one(field);
    let mut b = base.rem(field, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul(field, &b).rem(field, modulus);
        }
        exp >>= 1;
        if exp > 0 {
            b = b.mul(field, &b).rem(field, modulus);
        }
    }
    acc
}

/// Resultant of two rational polynomials, by the subresultant-free Euclidean
/// recurrence res(f, g) = lc(g)^(deg f - deg r) * (-1)^(deg f * deg g) * res(g, r).
pub fn resultant_q(f: &Poly<Rationals>, g: &Poly<Rationals>) -> BigRat {
    let q = Rationals;
    fn go(q: &Rationals, f: &Poly<Rationals>, g: &Poly<Rationals>) -> BigRat {
        if g.is_zero() {
            return if f.degree() == Some(0) {
                BigRat::one()
            } else {
                BigRat::zero()
            };
        }
        let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap());
        if df < dg {
            let sign = if (df * dg) % 2 == 1 {
                -BigRat::one()
            } else {
                BigRat::one()
            };
            return sign * go(q, g, f);
        }
        let r = f.rem(q, g);
        let dr = match r.degree() {
            None => {
                // res(f, g) with r = 0 and deg g > 0 is zero; deg g = 0 handled below
                return if dg == 0 {
                    g.leading().unwrap().pow(df as i32)
                } else {
                    BigRat::zero()
                };
            }
            Some(d) => d,
        };
        if dg == 0 {
            return g.leading().unwrap().pow(df as i32);
        }
        let lc = g.leading().unwrap();
        let sign = if (df * dg) % 2 == 1 {
            -BigRat::one()
        } else {
            BigRat::one()
        };
        sign * lc.pow((df - dr) as i32) * go(q, g, &r)
    }
    go(&q, f, g)
}

/// Discriminant of a rational polynomial of degree >= 1.
pub fn discriminant_q(f: &Poly<Rationals>) -> BigRat {
    let q = Rationals;
    let n = f.degree().expect("discriminant of the zero polynomial") as i64;
    assert!(n >= 1);
    let fp = f.derivative(&q);
    let res = resultant_q(f, &fp);
    let lc = f.leading().unwrap();
    let sign = if (n * (n - 1) / 2) % 2 == 1 {
        -BigRat::one()
    } else {
        BigRat::one()
    };
    sign * res / lc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_int, PrimeField};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn normalization_and_degree() {
        let p = Poly::from_coeffs(&q(), vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), Some(0));
        let z: Poly<Rationals> = Poly::from_coeffs(&q(), vec![rat_int(0), rat_int(0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn divrem_and_gcd() {
        // (z^2 - 1) / (z - 1) = z + 1
        let num = Poly::from_coeffs(&q(), vec![rat_int(-1), rat_int(0), rat_int(1)]);
        let den = Poly::from_coeffs(&q(), vec![rat_int(-1), rat_int(1)]);
        let (quot, rem) = num.divrem(&q(), &den);
        assert!(rem.is_zero());
        assert_eq!(quot, Poly::from_coeffs(&q(), vec![rat_int(1), rat_int(1)]));

        let g = num.gcd(&q(), &den);
        assert_eq!(g, den.make_monic(&q()));
    }

    #[test]
    fn derivative_char_p() {
        let f5 = PrimeField::new(5).unwrap();
        let z5 = Poly::monomial(&f5, 1, 5);
        assert!(z5.derivative(&f5).is_zero());
        let z2 = Poly::monomial(&f5, 1, 2);
        assert_eq!(z2.derivative(&f5), Poly::monomial(&f5, 2, 1));
    }

    #[test]
    fn rendering() {
        let p = Poly::from_coeffs(&q(), vec![crate::field::rat(-1, 2), rat_int(0), rat_int(3)]);
        assert_eq!(p.render(&q(), "z"), "3*z^2 - 1/2");
        let m = Poly::from_coeffs(&q(), vec![rat_int(0), rat_int(-1)]);
        assert_eq!(m.render(&q(), "z"), "-z");
        assert_eq!(Poly::<Rationals>::zero().render(&q(), "z"), "0");
    }

    #[test]
    fn taylor_shift() {
        // (z+1)^2 = z^2 + 2z + 1
        let p = Poly::from_coeffs(&q(), vec![rat_int(0), rat_int(0), rat_int(1)]);
        let shifted = p.compose_shift(&q(), &rat_int(1));
        assert_eq!(
            shifted,
            Poly::from_coeffs(&q(), vec![rat_int(1), rat_int(2), rat_int(1)])
        );
    }

    #[test]
    fn discriminants() {
        // disc(z^2 - 2) = 8
        let f = Poly::from_coeffs(&q(), vec![rat_int(-2), rat_int(0), rat_int(1)]);
        assert_eq!(discriminant_q(&f), rat_int(8));
        // disc(z^3 - 2) = -108
        let g = Poly::from_coeffs(&q(), vec![rat_int(-2), rat_int(0), rat_int(0), rat_int(1)]);
        assert_eq!(discriminant_q(&g), rat_int(-108));
    }
}
