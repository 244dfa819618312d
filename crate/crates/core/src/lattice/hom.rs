//! Heights of lattice homomorphisms.
//!
//! h(phi) = 1/2 log lambda_max, where lambda_max is the largest generalized
//! eigenvalue of (M^T G_F M, G_E). The eigenvalue is located by Sturm-chain
//! bisection on the exact characteristic polynomial, giving a certified
//! rational enclosure with relative width 1e-10; only the final logarithm is
//! floating point.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::field::{BigRat, Rationals};
use crate::lattice::{EuclideanLattice, LatticeError};
use crate::matrix::{char_poly, mat_inverse, mat_mul, Mat};
use crate::numeric::ln_bigrat;
use crate::poly::Poly;

/// A linear map between lattices: `matrix` has shape
/// (target rank) x (source rank) and acts on coordinate columns.
#[derive(Debug, Clone)]
pub struct LatticeHom {
    pub source: EuclideanLattice,
    pub target: EuclideanLattice,
    pub matrix: Mat<BigRat>,
}

impl LatticeHom {
    pub fn new(source: EuclideanLattice, target: EuclideanLattice, matrix: Mat<BigRat>) -> Self {
        assert_eq!(matrix.rows(), target.rank(), "row count mismatch");
        assert_eq!(matrix.cols(), source.rank(), "column count mismatch");
        LatticeHom {
            source,
            target,
            matrix,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.entries().iter().all(|x| x.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        crate::matrix::rank(&Rationals, &self.matrix) == self.source.rank()
    }
}

/// Height with its certified eigenvalue enclosure.
#[derive(Debug, Clone)]
pub struct HomHeight {
    pub log: f64,
    pub lambda_lo: BigRat,
    pub lambda_hi: BigRat,
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &Poly<Rationals>) -> Vec<Poly<Rationals>> {
    let q = Rationals;
    let mut chain = vec![p.clone(), p.derivative(&q)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let r = chain[n - 2].rem(&q, &chain[n - 1]);
        chain.push(r.neg(&q));
    }
    chain
}

fn sign_variations(chain: &[Poly<Rationals>], x: &BigRat) -> usize {
    let q = Rationals;
    let mut last: Option<bool> = None;
    let mut count = 0;
    for p in chain {
        let v = p.eval(&q, x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Number of roots of the (squarefree) chain polynomial in the half-open
/// interval (a, b].
fn roots_in(chain: &[Poly<Rationals>], a: &BigRat, b: &BigRat) -> isize {
    sign_variations(chain, a) as isize - sign_variations(chain, b) as isize
}

/// Largest real root of a nonzero polynomial with all roots in [0, hi],
/// certified to relative width 1e-10 by Sturm bisection.
pub(crate) fn largest_root(p: &Poly<Rationals>, hi0: BigRat) -> Option<(BigRat, BigRat)> {
    let q = Rationals;
    // squarefree part
    let dp = p.derivative(&q);
    let g = p.gcd(&q, &dp);
    let sf = if g.degree() == Some(0) {
        p.clone()
    } else {
        p.divrem(&q, &g).0
    };
    let chain = sturm_chain(&sf);
    let mut lo = BigRat::zero();
    let mut hi = hi0;
    if roots_in(&chain, &lo, &hi) <= 0 {
        // no positive root; check zero itself
        if sf.eval(&q, &BigRat::zero()).is_zero() {
            return Some((BigRat::zero(), BigRat::zero()));
        }
        return None;
    }
    let tol = BigRat::new(BigInt::from(1), BigInt::from(10u64.pow(11)));
    for _ in 0..2048 {
        let width = hi.clone() - &lo;
        if width <= hi.clone() * &tol {
            break;
        }
        let mid = (lo.clone() + &hi) / BigRat::from_integer(2.into());
        if roots_in(&chain, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}

/// h(phi) = 1/2 log of the largest generalized eigenvalue of
/// (M^T G_F M, G_E).
pub fn hom_height(hom: &LatticeHom) -> Result<HomHeight, LatticeError> {
    if hom.is_zero() {
        return Err(LatticeError::ZeroMap);
    }
    let q = Rationals;
    let a = mat_mul(
        &q,
        &mat_mul(&q, &hom.matrix.transpose(), hom.target.gram()),
        &hom.matrix,
    );
    let b_inv = mat_inverse(&q, hom.source.gram()).expect("PD Gram invertible");
    let c = mat_mul(&q, &b_inv, &a);
    let chi = char_poly(&c);
    // Gershgorin bound on the spectral radius of C
    let mut hi = BigRat::zero();
    for i in 0..c.rows() {
        let row_sum: BigRat = (0..c.cols()).map(|j| c.at(i, j).abs()).sum();
        if row_sum > hi {
            hi = row_sum;
        }
    }
    hi += BigRat::from_integer(1.into());
    let (lo, hi) = largest_root(&chi, hi).expect("nonzero PSD pencil has a positive eigenvalue");
    assert!(
        lo.is_positive() || hi.is_positive(),
        "nonzero map must have positive top eigenvalue"
    );
    let mid = (lo.clone() + &hi) / BigRat::from_integer(2.into());
    Ok(HomHeight {
        log: 0.5 * ln_bigrat(&mid),
        lambda_lo: lo,
        lambda_hi: hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    fn gram(rows: Vec<Vec<i64>>) -> Mat<BigRat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
    }

    #[test]
    fn scaling_map() {
        // 3 * id on Z: h = log 3
        let z = EuclideanLattice::standard(1);
        let hom = LatticeHom::new(z.clone(), z, Mat::from_rows(vec![vec![rat_int(3)]]));
        let h = hom_height(&hom).unwrap();
        assert!((h.log - 3f64.ln()).abs() < 1e-9);
        assert!(h.lambda_lo <= rat_int(9) && rat_int(9) <= h.lambda_hi);
    }

    #[test]
    fn row_sum_map() {
        // (1,1,1): Z^3 -> Z has operator norm sqrt(3)
        let hom = LatticeHom::new(
            EuclideanLattice::standard(3),
            EuclideanLattice::standard(1),
            Mat::from_rows(vec![vec![rat_int(1), rat_int(1), rat_int(1)]]),
        );
        let h = hom_height(&hom).unwrap();
        assert!((h.log - 0.5 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn diagonal_map() {
        let z2 = EuclideanLattice::standard(2);
        let hom = LatticeHom::new(
            z2.clone(),
            z2,
            Mat::from_rows(vec![
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(0), rat_int(2)],
            ]),
        );
        let h = hom_height(&hom).unwrap();
        assert!((h.log - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn weighted_source() {
        // inclusion Gram[[2]] -> Z by matrix [1]: lambda = 1/2
        let e = EuclideanLattice::new(gram(vec![vec![2]])).unwrap();
        let hom = LatticeHom::new(
            e,
            EuclideanLattice::standard(1),
            Mat::from_rows(vec![vec![rat_int(1)]]),
        );
        let h = hom_height(&hom).unwrap();
        assert!((h.log + 0.5 * 2f64.ln()).abs() < 1e-9);
        assert!(h.lambda_lo <= rat(1, 2) && rat(1, 2) <= h.lambda_hi);
    }

    #[test]
    fn zero_map_rejected() {
        let z = EuclideanLattice::standard(1);
        let hom = LatticeHom::new(z.clone(), z, Mat::from_rows(vec![vec![rat_int(0)]]));
        assert!(matches!(hom_height(&hom), Err(LatticeError::ZeroMap)));
    }

    #[test]
    fn sturm_counts() {
        let q = Rationals;
        // (x-1)(x-4) = x^2 - 5x + 4
        let p = Poly::from_coeffs(&q, vec![rat_int(4), rat_int(-5), rat_int(1)]);
        let chain = sturm_chain(&p);
        assert_eq!(roots_in(&chain, &rat_int(0), &rat_int(1)), 1);
        assert_eq!(roots_in(&chain, &rat_int(1), &rat_int(4)), 1);
        assert_eq!(roots_in(&chain, &rat_int(0), &rat_int(10)), 2);
        assert_eq!(roots_in(&chain, &rat_int(4), &rat_int(10)), 0);
    }
}
