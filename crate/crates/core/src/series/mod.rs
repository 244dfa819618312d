//! Power series over Q: expansion of algebraic branches, Hermite-Pade
//! detection of algebraic and rational relations, place-wise size
//! invariants, and Eisenstein denominator analysis.

pub mod detect;
pub mod invariants;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::AlgebraError;
use crate::field::{BigRat, Rationals};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

pub use detect::{detect_rational, hermite_pade_detect};
pub use invariants::{
    borel_dwork_report, eisenstein_report, invariants_estimate, BorelDworkReport,
    EisensteinReport, InvariantsEstimate, Place, PlaceEstimate,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("y0 is not a root of P(0, Y)")]
    NotARoot,
    #[error("branch is singular: dP/dY vanishes at (0, y0)")]
    SingularBranch,
    #[error("need order >= {need}, have {have}")]
    InsufficientPrecision { need: usize, have: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Truncated power series a_0 .. a_N with exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesApprox {
    coeffs: Vec<BigRat>,
}

impl SeriesApprox {
    pub fn new(coeffs: Vec<BigRat>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a_0");
        SeriesApprox { coeffs }
    }

    /// Taylor expansion of a rational function regular at the origin.
    pub fn from_ratfunc(f: &RatFunc<Rationals>, order: usize) -> Result<Self, SeriesError> {
        Ok(SeriesApprox::new(f.series_at_zero(&Rationals, order)?))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRat {
        &self.coeffs[k]
    }

    pub fn truncated(&self, order: usize) -> SeriesApprox {
        assert!(order <= self.order());
        SeriesApprox::new(self.coeffs[..=order].to_vec())
    }
}

/// Truncated product of coefficient slices, through x^order.
pub(crate) fn ts_mul(a: &[BigRat], b: &[BigRat], order: usize) -> Vec<BigRat> {
    let mut out = vec![BigRat::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Truncated reciprocal of a series with a_0 != 0.
pub(crate) fn ts_inv(a: &[BigRat], order: usize) -> Vec<BigRat> {
    assert!(!a[0].is_zero(), "series reciprocal needs a unit");
    let a0_inv = a[0].clone().recip();
    let mut out = vec![BigRat::zero(); order + 1];
    out[0] = a0_inv.clone();
    for k in 1..=order {
        let mut acc = BigRat::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &out[k - j];
        }
        out[k] = -acc * &a0_inv;
    }
    out
}

/// A nonzero bivariate integer polynomial P(X, Y) = sum P_i(X) Y^i with
/// content 1, stored by Y-degree.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgRelation {
    polys: Vec<Poly<Rationals>>,
}

impl AlgRelation {
    /// Normalize: clear denominators, divide by the joint integer content,
    /// and make the first nonzero coefficient (in (Y-degree, X-degree)
    /// order) positive. Panics on the zero polynomial.
    pub fn new(polys: Vec<Poly<Rationals>>) -> Self {
        let q = Rationals;
        assert!(polys.iter().any(|p| !p.is_zero()), "zero relation");
        let mut lcm = BigInt::one();
        for p in &polys {
            for c in p.coeffs() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let scale = BigRat::from_integer(lcm);
        let mut cleared: Vec<Poly<Rationals>> =
            polys.iter().map(|p| p.mul_scalar(&q, &scale)).collect();
        let mut content = BigInt::zero();
        for p in &cleared {
            for c in p.coeffs() {
                content = content.gcd(&c.numer().abs());
            }
        }
        let mut factor = BigRat::from_integer(content).recip();
        // sign: first nonzero coefficient scanning P_0, P_1, ... low degree first
        'sign: for p in &cleared {
            for c in p.coeffs() {
                if !c.is_zero() {
                    if (c * &factor).is_negative() {
                        factor = -factor;
                    }
                    break 'sign;
                }
            }
        }
        for p in cleared.iter_mut() {
            *p = p.mul_scalar(&q, &factor);
        }
        while cleared.len() > 1 && cleared.last().map_or(false, |p| p.is_zero()) {
            cleared.pop();
        }
        AlgRelation { polys: cleared }
    }

    pub fn from_integer_rows(rows: Vec<Vec<i64>>) -> Self {
        let q = Rationals;
        AlgRelation::new(
            rows.into_iter()
                .map(|r| {
                    Poly::from_coeffs(&q, r.into_iter().map(crate::field::rat_int).collect())
                })
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[Poly<Rationals>] {
        &self.polys
    }

    /// Degree in Y.
    pub fn deg_y(&self) -> usize {
        self.polys.len() - 1
    }

    /// Degree in X.
    pub fn deg_x(&self) -> usize {
        self.polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn eval_at(&self, x: &BigRat, y: &BigRat) -> BigRat {
        let q = Rationals;
        let mut acc = BigRat::zero();
        let mut ypow = BigRat::one();
        for p in &self.polys {
            acc += p.eval(&q, x) * &ypow;
            ypow *= y;
        }
        acc
    }

    /// P(x, s(x)) through x^order for a coefficient slice s.
    pub fn eval_series(&self, s: &[BigRat], order: usize) -> Vec<BigRat> {
        let mut acc = vec![BigRat::zero(); order + 1];
        let mut ypow: Vec<BigRat> = vec![BigRat::one()];
        for (i, p) in self.polys.iter().enumerate() {
            if i > 0 {
                ypow = ts_mul(&ypow, s, order);
            }
            if p.is_zero() {
                continue;
            }
            let pc: Vec<BigRat> = p.coeffs().to_vec();
            let term = ts_mul(&pc, &ypow, order);
            for (a, t) in acc.iter_mut().zip(term) {
                *a += t;
            }
        }
        acc
    }

    /// dP/dY as raw coefficient rows.
    fn partial_y(&self) -> Vec<Poly<Rationals>> {
        let q = Rationals;
        self.polys
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, p)| p.mul_scalar(&q, &crate::field::rat_int(i as i64)))
            .collect()
    }

    /// Text form like `X*Y^2 - Y + 1`.
    pub fn render(&self) -> String {
        let q = Rationals;
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, p) in self.polys.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let ytag = match i {
                0 => String::new(),
                1 => "Y".to_string(),
                _ => format!("Y^{i}"),
            };
            let rendered = p.render(&q, "X");
            let single_term = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            if ytag.is_empty() {
                let neg = rendered.starts_with('-');
                parts.push((neg, rendered.trim_start_matches('-').to_string()));
            } else if single_term {
                let neg = rendered.starts_with('-');
                let mag = rendered.trim_start_matches('-');
                let txt = if mag == "1" {
                    ytag
                } else {
                    format!("{mag}*{ytag}")
                };
                parts.push((neg, txt));
            } else {
                parts.push((false, format!("({rendered})*{ytag}")));
            }
        }
        let mut out = String::new();
        for (i, (neg, txt)) in parts.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(txt);
        }
        out
    }
}

/// Expand the unique power-series branch of P(x, y) = 0 with y(0) = y0,
/// by Newton iteration with quadratic order doubling.
pub fn expand_algebraic_branch(
    p: &AlgRelation,
    y0: &BigRat,
    order: usize,
) -> Result<SeriesApprox, SeriesError> {
    let zero = BigRat::zero();
    if !p.eval_at(&zero, y0).is_zero() {
        return Err(SeriesError::NotARoot);
    }
    let py = p.partial_y();
    let py_at = |x: &BigRat, y: &BigRat| -> BigRat {
        let q = Rationals;
        let mut acc = BigRat::zero();
        let mut ypow = BigRat::one();
        for poly in &py {
            acc += poly.eval(&q, x) * &ypow;
            ypow *= y;
        }
        acc
    };
    if py_at(&zero, y0).is_zero() {
        return Err(SeriesError::SingularBranch);
    }

    let mut y = vec![y0.clone()];
    let mut prec = 1usize;
    while prec < order + 1 {
        prec = (2 * prec).min(order + 1);
        y.resize(prec, BigRat::zero());
        let cur = prec - 1;
        // Newton step: y <- y - P(x,y) / P_Y(x,y) mod x^prec
        let val = p.eval_series(&y, cur);
        // P_Y(x, y) as series
        let mut dval = vec![BigRat::zero(); cur + 1];
        {
            let mut ypow: Vec<BigRat> = vec![BigRat::one()];
            for (i, poly) in py.iter().enumerate() {
                if i > 0 {
                    ypow = ts_mul(&ypow, &y, cur);
                }
                if poly.is_zero() {
                    continue;
                }
                let pc: Vec<BigRat> = poly.coeffs().to_vec();
                let term = ts_mul(&pc, &ypow, cur);
                for (a, t) in dval.iter_mut().zip(term) {
                    *a += t;
                }
            }
        }
        let dinv = ts_inv(&dval, cur);
        let delta = ts_mul(&val, &dinv, cur);
        for (a, t) in y.iter_mut().zip(delta) {
            *a -= t;
        }
    }
    // the defining identity must hold through the requested order
    let check = p.eval_series(&y, order);
    assert!(
        check.iter().all(|c| c.is_zero()),
        "Newton expansion failed its defining identity"
    );
    Ok(SeriesApprox::new(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    #[test]
    fn sqrt_branch() {
        // Y^2 - (1 + X), y0 = 1: binomial series for sqrt(1+x)
        let p = AlgRelation::from_integer_rows(vec![vec![-1, -1], vec![0], vec![1]]);
        let s = expand_algebraic_branch(&p, &rat_int(1), 4).unwrap();
        assert_eq!(
            s.coeffs(),
            &[
                rat_int(1),
                rat(1, 2),
                rat(-1, 8),
                rat(1, 16),
                rat(-5, 128)
            ]
        );
    }

    #[test]
    fn geometric_branch() {
        // (1 - X) Y - 1, y0 = 1
        let p = AlgRelation::new(vec![
            Poly::from_coeffs(&Rationals, vec![rat_int(-1)]),
            Poly::from_coeffs(&Rationals, vec![rat_int(1), rat_int(-1)]),
        ]);
        let s = expand_algebraic_branch(&p, &rat_int(1), 3).unwrap();
        assert_eq!(s.coeffs(), vec![rat_int(1); 4].as_slice());
    }

    #[test]
    fn catalan_branch() {
        // X Y^2 - Y + 1, y0 = 1: Catalan numbers
        let p = AlgRelation::from_integer_rows(vec![vec![1], vec![-1], vec![0, 1]]);
        let s = expand_algebraic_branch(&p, &rat_int(1), 5).unwrap();
        let expect: Vec<BigRat> = [1, 1, 2, 5, 14, 42].iter().map(|&c| rat_int(c)).collect();
        assert_eq!(s.coeffs(), &expect[..]);
    }

    #[test]
    fn branch_error_paths() {
        let p = AlgRelation::from_integer_rows(vec![vec![1], vec![-1], vec![0, 1]]);
        assert_eq!(
            expand_algebraic_branch(&p, &rat_int(2), 3),
            Err(SeriesError::NotARoot)
        );
        // Y^2 - X: branch at y0 = 0 is singular
        let p = AlgRelation::from_integer_rows(vec![vec![0, -1], vec![0], vec![1]]);
        assert_eq!(
            expand_algebraic_branch(&p, &rat_int(0), 3),
            Err(SeriesError::SingularBranch)
        );
    }

    #[test]
    fn relation_normalization_and_render() {
        // 2X Y^2 - 2Y + 2 normalizes to X Y^2 - Y + 1... sign rule scans P_0 first
        let p = AlgRelation::from_integer_rows(vec![vec![2], vec![-2], vec![0, 2]]);
        assert_eq!(p.render(), "X*Y^2 - Y + 1");
        let q = AlgRelation::from_integer_rows(vec![vec![-1], vec![1, -1]]);
        // first nonzero is P_0 = -1: flip sign
        assert_eq!(q.render(), "(X - 1)*Y + 1");
    }
}
