//! Reduced rational functions over a coefficient field, and the fraction
//! field F(z) itself as a [`Field`] so matrices over it share the generic
//! linear algebra.
//!
//! Invariants: the denominator is monic and nonzero, gcd(num, den) = 1, and
//! zero is 0/1. Every arithmetic operation re-reduces; coefficient blow-up in
//! the iterated-derivative recursions is the dominant cost and eager
//! reduction keeps degrees at the true minimum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::field::{BigRat, Field, PrimeField, Rationals};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Build `num/den` in reduced form. Panics when `den = 0`.
    pub fn new(field: &F, num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut f = RatFunc { num, den };
        f.normalize(field);
        f
    }

    pub fn from_poly(field: &F, num: Poly<F>) -> Self {
        RatFunc {
            num,
            den: Poly::one(field),
        }
    }

    pub fn zero(field: &F) -> Self {
        RatFunc::from_poly(field, Poly::zero())
    }

    pub fn one(field: &F) -> Self {
        RatFunc::from_poly(field, Poly::one(field))
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        RatFunc::from_poly(field, Poly::constant(field, c))
    }

    pub fn var(field: &F) -> Self {
        RatFunc::from_poly(field, Poly::var(field))
    }

    fn normalize(&mut self, field: &F) {
        if self.num.is_zero() {
            self.den = Poly::one(field);
            return;
        }
        let g = self.num.gcd(field, &self.den);
        if g.degree() != Some(0) {
            self.num = self.num.divrem(field, &g).0;
            self.den = self.den.divrem(field, &g).0;
        }
        let lead = self.den.leading().expect("nonzero denominator").clone();
        if lead != field.one() {
            let inv = field.inv(&lead).expect("leading coefficient nonzero");
            self.num = self.num.mul_scalar(field, &inv);
            self.den = self.den.mul_scalar(field, &inv);
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let num = self
            .num
            .mul(field, &other.den)
            .add(field, &other.num.mul(field, &self.den));
        let den = self.den.mul(field, &other.den);
        RatFunc::new(field, num, den)
    }

    pub fn neg(&self, field: &F) -> Self {
        RatFunc {
            num: self.num.neg(field),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(field);
        }
        // cross-cancel before multiplying to keep intermediate degrees low
        let g1 = self.num.gcd(field, &other.den);
        let g2 = other.num.gcd(field, &self.den);
        let n1 = self.num.divrem(field, &g1).0;
        let d2 = other.den.divrem(field, &g1).0;
        let n2 = other.num.divrem(field, &g2).0;
        let d1 = self.den.divrem(field, &g2).0;
        RatFunc::new(field, n1.mul(field, &n2), d1.mul(field, &d2))
    }

    pub fn inv(&self, field: &F) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(field, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, field: &F, other: &Self) -> Option<Self> {
        other.inv(field).map(|o| self.mul(field, &o))
    }

    pub fn mul_scalar(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return RatFunc::zero(field);
        }
        RatFunc::new(field, self.num.mul_scalar(field, c), self.den.clone())
    }

    pub fn pow(&self, field: &F, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = RatFunc::one(field);
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

    /// d/dz by the quotient rule, with the gcd(den, den') shortcut that keeps
    /// the intermediate numerator small before the final reduction.
    pub fn derivative(&self, field: &F) -> Self {
        if self.num.is_zero() {
            return RatFunc::zero(field);
        }
        let dnum = self.num.derivative(field);
        let dden = self.den.derivative(field);
        if dden.is_zero() {
            return RatFunc::new(field, dnum, self.den.clone());
        }
        let g = self.den.gcd(field, &dden);
        let den_red = self.den.divrem(field, &g).0;
        let dden_red = dden.divrem(field, &g).0;
        let num = dnum
            .mul(field, &den_red)
            .sub(field, &self.num.mul(field, &dden_red));
        let den = self.den.mul(field, &den_red);
        RatFunc::new(field, num, den)
    }

    /// Evaluate at a point; `None` at a pole.
    pub fn eval(&self, field: &F, x: &F::Elem) -> Option<F::Elem> {
        let d = self.den.eval(field, x);
        if field.is_zero(&d) {
            return None;
        }
        let n = self.num.eval(field, x);
        Some(field.mul(&n, &field.inv(&d).expect("nonzero value")))
    }

    /// Substitute z -> z + c.
    pub fn shift(&self, field: &F, c: &F::Elem) -> Self {
        RatFunc::new(
            field,
            self.num.compose_shift(field, c),
            self.den.compose_shift(field, c),
        )
    }

    /// Taylor coefficients at 0 through order `n`, by the linear recurrence
    /// den * (series) = num.
    pub fn series_at_zero(&self, field: &F, n: usize) -> Result<Vec<F::Elem>, AlgebraError> {
        let d0 = self.den.coeff(field, 0);
        if field.is_zero(&d0) {
            return Err(AlgebraError::PoleAtOrigin);
        }
        let d0_inv = field.inv(&d0).expect("nonzero constant term");
        let mut out: Vec<F::Elem> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(field, k);
            for j in 1..=k.min(self.den.degree().unwrap_or(0)) {
                let t = field.mul(&self.den.coeff(field, j), &out[k - j]);
                acc = field.sub(&acc, &t);
            }
            out.push(field.mul(&acc, &d0_inv));
        }
        Ok(out)
    }

    /// Canonical text form, e.g. `(z + 1)/(z^2 - 1)` or `3*z^2 - 1/2`.
    pub fn render(&self, field: &F, var: &str) -> String {
        if self.den.is_one(field) {
            self.num.render(field, var)
        } else {
            format!(
                "({})/({})",
                self.num.render(field, var),
                self.den.render(field, var)
            )
        }
    }
}

impl RatFunc<Rationals> {
    /// Present as `N/D` with integer-coefficient polynomials of joint content 1.
    pub fn integer_parts(&self) -> (Poly<Rationals>, Poly<Rationals>) {
        let q = Rationals;
        let mut lcm = BigInt::one();
        for c in self.num.coeffs().iter().chain(self.den.coeffs()) {
            lcm = lcm.lcm(c.denom());
        }
        let scale = BigRat::from_integer(lcm);
        let n = self.num.mul_scalar(&q, &scale);
        let d = self.den.mul_scalar(&q, &scale);
        let mut content = BigInt::zero();
        for c in n.coeffs().iter().chain(d.coeffs()) {
            debug_assert!(c.denom().is_one());
            content = content.gcd(&c.numer().abs());
        }
        let inv = BigRat::from_integer(content).recip();
        (n.mul_scalar(&q, &inv), d.mul_scalar(&q, &inv))
    }
}

/// Reduce a rational function with rational coefficients modulo p.
///
/// The function is first written as a ratio of integer polynomials with joint
/// content 1; reduction succeeds iff the denominator does not vanish mod p.
pub fn reduce_ratfunc_mod_p(
    f: &RatFunc<Rationals>,
    fp: &PrimeField,
) -> Result<RatFunc<PrimeField>, AlgebraError> {
    if f.is_zero() {
        return Ok(RatFunc::zero(fp));
    }
    let (n, d) = f.integer_parts();
    let reduce = |p: &Poly<Rationals>| -> Poly<PrimeField> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| fp.reduce_bigint(c.numer()))
            .collect();
        Poly::from_coeffs(fp, coeffs)
    };
    let dbar = reduce(&d);
    if dbar.is_zero() {
        return Err(AlgebraError::BadReduction(fp.modulus()));
    }
    Ok(RatFunc::new(fp, reduce(&n), dbar))
}

/// The field F(z) of rational functions over F.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFuncField<F: Field> {
    base: F,
}

impl<F: Field> RatFuncField<F> {
    pub fn new(base: F) -> Self {
        RatFuncField { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }
}

impl<F: Field> Field for RatFuncField<F> {
    type Elem = RatFunc<F>;

    fn zero(&self) -> RatFunc<F> {
        RatFunc::zero(&self.base)
    }
    fn one(&self) -> RatFunc<F> {
        RatFunc::one(&self.base)
    }
    fn is_zero(&self, a: &RatFunc<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a.add(&self.base, b)
    }
    fn sub(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a.sub(&self.base, b)
    }
    fn neg(&self, a: &RatFunc<F>) -> RatFunc<F> {
        a.neg(&self.base)
    }
    fn mul(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a.mul(&self.base, b)
    }
    fn inv(&self, a: &RatFunc<F>) -> Option<RatFunc<F>> {
        a.inv(&self.base)
    }
    fn from_i64(&self, n: i64) -> RatFunc<F> {
        RatFunc::constant(&self.base, self.base.from_i64(n))
    }
    fn render(&self, a: &RatFunc<F>) -> String {
        a.render(&self.base, "z")
    }
}
