//! Hermite-Pade detection: find a nonzero P(X, Y) of bidegree <= (d, D)
//! with P(x, y(x)) = 0 to high order, then verify on guard coefficients.
//!
//! The linear system uses (d+1)(D+1) - 1 coefficient rows, one less than
//! the number of unknowns, so a nonzero kernel always exists; soundness
//! comes entirely from the guard verification against the remaining
//! coefficients. The kernel is refined against further rows while it stays
//! nonzero, so a junk vector cannot shadow a genuine relation that a larger
//! kernel happens to contain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{BigRat, Rationals};
use crate::matrix::{kernel_basis, rref, Mat};
use crate::poly::Poly;

use super::{ts_mul, AlgRelation, SeriesApprox, SeriesError};

/// Detect an algebraic relation of bidegree <= (d, D); requires
/// order >= 2 (d+1) (D+1).
pub fn hermite_pade_detect(
    y: &SeriesApprox,
    d: usize,
    dy: usize,
) -> Result<Option<AlgRelation>, SeriesError> {
    let need = 2 * (d + 1) * (dy + 1);
    if y.order() < need {
        return Err(SeriesError::InsufficientPrecision {
            need,
            have: y.order(),
        });
    }
    Ok(detect_inner(y, d, dy))
}

/// Shared detector core; preconditions are the callers' business.
fn detect_inner(y: &SeriesApprox, d: usize, dy: usize) -> Option<AlgRelation> {
    let q = Rationals;
    let n = y.order();
    let unknowns = (d + 1) * (dy + 1);
    let head_rows = unknowns - 1;

    // powers of y through y^D, truncated at order n
    let mut powers: Vec<Vec<BigRat>> = Vec::with_capacity(dy + 1);
    let mut one = vec![BigRat::zero(); n + 1];
    one[0] = BigRat::one();
    powers.push(one);
    for _ in 1..=dy {
        let next = ts_mul(powers.last().unwrap(), y.coeffs(), n);
        powers.push(next);
    }

    // column (i, j) = coefficient of x^k in x^j y^i, unknown index i*(d+1)+j
    let coeff_of = |k: usize, i: usize, j: usize| -> BigRat {
        if k < j {
            BigRat::zero()
        } else {
            powers[i][k - j].clone()
        }
    };
    let build_row = |k: usize| -> Vec<BigRat> {
        let mut row = Vec::with_capacity(unknowns);
        for i in 0..=dy {
            for j in 0..=d {
                row.push(coeff_of(k, i, j));
            }
        }
        row
    };

    let head = Mat::from_rows((0..head_rows).map(build_row).collect());
    let mut kernel = kernel_basis(&q, &head);
    debug_assert!(!kernel.is_empty(), "underdetermined system has a kernel");

    // refine against further rows while the kernel stays nonzero
    for k in head_rows..=n {
        let row = build_row(k);
        let dots: Vec<BigRat> = kernel
            .iter()
            .map(|v| {
                row.iter()
                    .zip(v)
                    .map(|(r, x)| r * x)
                    .fold(BigRat::zero(), |a, b| a + b)
            })
            .collect();
        if dots.iter().all(|t| t.is_zero()) {
            continue;
        }
        if kernel.len() == 1 {
            break; // the lone vector already fails this row; guard will reject
        }
        let pivot = dots.iter().position(|t| !t.is_zero()).unwrap();
        let pv = kernel[pivot].clone();
        let pd = dots[pivot].clone();
        let mut next = Vec::with_capacity(kernel.len() - 1);
        for (idx, v) in kernel.iter().enumerate() {
            if idx == pivot {
                continue;
            }
            let factor = &dots[idx] / &pd;
            let reduced: Vec<BigRat> = v
                .iter()
                .zip(&pv)
                .map(|(a, b)| a - &factor * b)
                .collect();
            next.push(reduced);
        }
        kernel = next;
    }

    // canonical pick: reduced echelon form of the kernel basis, each vector
    // primitive integer, lexicographically smallest
    let mut km = Mat::from_rows(kernel);
    rref(&q, &mut km);
    let mut candidates: Vec<Vec<BigInt>> = Vec::new();
    for r in 0..km.rows() {
        let row = km.row(r);
        if row.iter().all(|x| x.is_zero()) {
            continue;
        }
        candidates.push(primitive_integer(row));
    }
    candidates.sort();
    let choice = candidates.into_iter().next()?;

    // assemble P_i(X) from the flat unknown vector
    let mut polys = Vec::with_capacity(dy + 1);
    for i in 0..=dy {
        let coeffs: Vec<BigRat> = (0..=d)
            .map(|j| BigRat::from_integer(choice[i * (d + 1) + j].clone()))
            .collect();
        polys.push(Poly::from_coeffs(&q, coeffs));
    }
    if polys.iter().all(|p| p.is_zero()) {
        return None;
    }
    let relation = AlgRelation::new(polys);

    // guard: the relation must vanish through the full stored order
    let check = relation.eval_series(y.coeffs(), n);
    if check.iter().all(|c| c.is_zero()) {
        Some(relation)
    } else {
        None
    }
}

fn primitive_integer(v: &[BigRat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRat::from_integer(lcm.clone())).numer().clone())
        .collect();
    let mut content = BigInt::zero();
    for x in &ints {
        content = content.gcd(&x.abs());
    }
    if !content.is_zero() && !content.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &content;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    ints
}

/// Rational detection: D = 1 specialization returning y = num/den with
/// den(0) = 1 when possible; requires order >= 2 (d+1) + 2.
pub fn detect_rational(
    y: &SeriesApprox,
    d: usize,
) -> Result<Option<(Poly<Rationals>, Poly<Rationals>)>, SeriesError> {
    let need = 2 * (d + 1) + 2;
    if y.order() < need {
        return Err(SeriesError::InsufficientPrecision {
            need,
            have: y.order(),
        });
    }
    let q = Rationals;
    let relation = match detect_inner(y, d, 1) {
        Some(r) => r,
        None => return Ok(None),
    };
    // P_0 + P_1 Y = 0 => y = -P_0 / P_1
    let polys = relation.coefficients();
    let mut num = polys[0].neg(&q);
    let mut den = polys.get(1).cloned().unwrap_or_else(Poly::zero);
    if den.is_zero() {
        return Ok(None); // degenerate relation P_0(X) = 0 cannot define y
    }
    // cancel a common factor x^k when every kernel solution vanishes at 0
    while den.coeff(&q, 0).is_zero() {
        if !num.coeff(&q, 0).is_zero() {
            return Ok(None);
        }
        let x = Poly::var(&q);
        num = num.divrem(&q, &x).0;
        den = den.divrem(&q, &x).0;
        if den.is_zero() {
            return Ok(None);
        }
    }
    // normalize den(0) = 1
    let d0 = den.coeff(&q, 0);
    let inv = d0.recip();
    num = num.mul_scalar(&q, &inv);
    den = den.mul_scalar(&q, &inv);
    Ok(Some((num, den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use crate::ratfunc::RatFunc;
    use crate::series::expand_algebraic_branch;

    fn series(vals: &[i64]) -> SeriesApprox {
        SeriesApprox::new(vals.iter().map(|&v| rat_int(v)).collect())
    }

    #[test]
    fn detects_catalan_relation() {
        let p = AlgRelation::from_integer_rows(vec![vec![1], vec![-1], vec![0, 1]]);
        let y = expand_algebraic_branch(&p, &rat_int(1), 20).unwrap();
        let found = hermite_pade_detect(&y, 1, 2).unwrap().expect("relation");
        assert_eq!(found.render(), "X*Y^2 - Y + 1");
    }

    #[test]
    fn detects_geometric_relation() {
        let y = series(&[1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let found = hermite_pade_detect(&y, 1, 1).unwrap().expect("relation");
        // (1 - X) Y - 1 up to overall sign
        assert_eq!(found.render(), "(X - 1)*Y + 1");
    }

    #[test]
    fn rejects_exponential() {
        // a_n = 1/n!, N = 60, (d, D) = (4, 4): kernel vectors exist below the
        // guard order but all fail the guard
        let mut coeffs = vec![rat_int(1)];
        let mut fact = rat_int(1);
        for n in 1..=60i64 {
            fact = fact * rat_int(n);
            coeffs.push(fact.clone().recip());
        }
        let y = SeriesApprox::new(coeffs);
        assert_eq!(hermite_pade_detect(&y, 4, 4).unwrap(), None);
    }

    #[test]
    fn precision_errors() {
        let y = series(&[1, 1, 1]);
        assert!(matches!(
            hermite_pade_detect(&y, 1, 1),
            Err(SeriesError::InsufficientPrecision { need: 8, .. })
        ));
        assert!(matches!(
            detect_rational(&y, 1),
            Err(SeriesError::InsufficientPrecision { need: 6, .. })
        ));
    }

    #[test]
    fn rational_detection_examples() {
        // [1,2,2,2,...]: (1+x)/(1-x)
        let y = series(&[1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]);
        let (num, den) = detect_rational(&y, 1).unwrap().expect("rational");
        let q = Rationals;
        let f = RatFunc::new(&q, num, den);
        let expect = RatFunc::new(
            &q,
            Poly::from_coeffs(&q, vec![rat_int(1), rat_int(1)]),
            Poly::from_coeffs(&q, vec![rat_int(1), rat_int(-1)]),
        );
        assert_eq!(f, expect);

        // Fibonacci: x/(1 - x - x^2)
        let y = series(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
        let (num, den) = detect_rational(&y, 2).unwrap().expect("rational");
        assert_eq!(num, Poly::from_coeffs(&q, vec![rat_int(0), rat_int(1)]));
        assert_eq!(
            den,
            Poly::from_coeffs(&q, vec![rat_int(1), rat_int(-1), rat_int(-1)])
        );
    }

    #[test]
    fn catalan_is_not_rational() {
        let p = AlgRelation::from_integer_rows(vec![vec![1], vec![-1], vec![0, 1]]);
        let y = expand_algebraic_branch(&p, &rat_int(1), 20).unwrap();
        for d in 0..=5 {
            assert_eq!(detect_rational(&y, d).unwrap(), None, "d = {d}");
        }
    }

    #[test]
    fn sqrt_series_relation_roundtrip() {
        let p = AlgRelation::from_integer_rows(vec![vec![-1, -1], vec![0], vec![1]]);
        let y = expand_algebraic_branch(&p, &rat_int(1), 2 * 2 * 3 + 8).unwrap();
        let found = hermite_pade_detect(&y, 1, 2).unwrap().expect("relation");
        assert_eq!(found, p);
    }

    #[test]
    fn monotonicity_in_degrees() {
        // a relation found at (1, 2) is still found at (2, 3)
        let p = AlgRelation::from_integer_rows(vec![vec![1], vec![-1], vec![0, 1]]);
        let y = expand_algebraic_branch(&p, &rat_int(1), 40).unwrap();
        assert!(hermite_pade_detect(&y, 1, 2).unwrap().is_some());
        assert!(hermite_pade_detect(&y, 2, 3).unwrap().is_some());
        assert!(hermite_pade_detect(&y, 3, 4).unwrap().is_some());
    }

    #[test]
    fn half_integer_series() {
        // series of (1 - x/2)/(1 - x): rational with non-integer coefficients
        let q = Rationals;
        let f = RatFunc::new(
            &q,
            Poly::from_coeffs(&q, vec![rat_int(1), rat(-1, 2)]),
            Poly::from_coeffs(&q, vec![rat_int(1), rat_int(-1)]),
        );
        let y = SeriesApprox::from_ratfunc(&f, 12).unwrap();
        let (num, den) = detect_rational(&y, 1).unwrap().expect("rational");
        assert_eq!(RatFunc::new(&q, num, den), f);
    }
}
