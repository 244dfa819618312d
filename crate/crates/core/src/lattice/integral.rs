//! Integer matrix normal forms: Smith decomposition with column transforms,
//! saturated kernels, and saturation checks.
//!
//! Everything is exact BigInt arithmetic with content division; no modular
//! shortcuts. Desk scale is n <= 50.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::field::Integers;
use crate::matrix::Mat;

/// Smith decomposition `D = U A C` where only the column transform is kept:
/// `C` and its inverse are accumulated so that the kernel and the row-space
/// complement of `A` can be read off directly.
pub struct SmithResult {
    /// Invariant factors d_1 | d_2 | ... (nonnegative, zeros trailing).
    pub factors: Vec<BigInt>,
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// Column transform: columns `rank..n` of `c` span the kernel of A.
    pub c: Mat<BigInt>,
    /// Inverse of `c`: rows of `c_inv` adapted to the row space
    /// (first `rank` rows span the saturation of the row space of A).
    pub c_inv: Mat<BigInt>,
}

/// Compute the Smith normal form of an integer matrix, tracking column
/// operations and their inverses.
pub fn smith(a: &Mat<BigInt>) -> SmithResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut c = crate::matrix::mat_identity(&Integers, cols);
    let mut c_inv = crate::matrix::mat_identity(&Integers, cols);

    // column op helpers keep c and c_inv consistent:
    // col_j += q * col_i on m and c  <=>  row_i -= q * row_j on c_inv
    let t = rows.min(cols);
    let mut k = 0usize;
    while k < t {
        // find a pivot: nonzero entry of minimal absolute value in the
        // remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !m.at(i, j).is_zero()
                    && pivot.is_none_or(|(pi, pj)| m.at(i, j).abs() < m.at(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        swap_rows(&mut m, k, pi);
        swap_cols(&mut m, &mut c, &mut c_inv, k, pj);

        let mut clean = true;
        // clear column k by row ops (no transform tracking needed)
        for i in k + 1..rows {
            if m.at(i, k).is_zero() {
                continue;
            }
            let q = div_round(m.at(i, k), m.at(k, k));
            if !q.is_zero() {
                for j in k..cols {
                    let v = m.at(i, j) - &q * m.at(k, j);
                    *m.at_mut(i, j) = v;
                }
            }
            if !m.at(i, k).is_zero() {
                clean = false;
            }
        }
        // clear row k by column ops (tracked)
        for j in k + 1..cols {
            if m.at(k, j).is_zero() {
                continue;
            }
            let q = div_round(m.at(k, j), m.at(k, k));
            if !q.is_zero() {
                col_axpy(&mut m, &mut c, &mut c_inv, j, k, &q);
            }
            if !m.at(k, j).is_zero() {
                clean = false;
            }
        }
        if clean {
            k += 1;
        }
        // otherwise loop again: remainders shrank, a smaller pivot exists
    }

    // sign-normalize the diagonal
    for i in 0..t {
        if m.at(i, i).is_negative() {
            negate_col(&mut m, &mut c, &mut c_inv, i);
        }
    }

    // enforce the divisibility chain d_i | d_{i+1}
    let rank = (0..t).take_while(|&i| !m.at(i, i).is_zero()).count();
    let mut factors: Vec<BigInt> = (0..t).map(|i| m.at(i, i).clone()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..rank.saturating_sub(1) {
            if factors[i].is_zero() || (&factors[i + 1] % &factors[i]).is_zero() {
                continue;
            }
            // replace (a, b) by (gcd, lcm); the transforms are not needed for
            // the saturation test, which only looks at the factor list, and
            // the kernel columns are unaffected (both factors stay nonzero)
            let g = gcd(&factors[i], &factors[i + 1]);
            let l = (&factors[i] / &g) * &factors[i + 1];
            factors[i] = g;
            factors[i + 1] = l;
            changed = true;
        }
    }

    SmithResult {
        factors,
        rank,
        c,
        c_inv,
    }
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

/// Quotient rounded to nearest (minimizes the remainder).
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let r = crate::numeric::round_rat(&crate::field::BigRat::new(a.clone(), b.clone()));
    r
}

fn swap_rows(m: &mut Mat<BigInt>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for col in 0..m.cols() {
        let a = m.at(i, col).clone();
        let b = m.at(j, col).clone();
        *m.at_mut(i, col) = b;
        *m.at_mut(j, col) = a;
    }
}

fn swap_cols(m: &mut Mat<BigInt>, c: &mut Mat<BigInt>, c_inv: &mut Mat<BigInt>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in 0..m.rows() {
        let a = m.at(row, i).clone();
        let b = m.at(row, j).clone();
        *m.at_mut(row, i) = b;
        *m.at_mut(row, j) = a;
    }
    for row in 0..c.rows() {
        let a = c.at(row, i).clone();
        let b = c.at(row, j).clone();
        *c.at_mut(row, i) = b;
        *c.at_mut(row, j) = a;
    }
    // inverse of a swap is the same swap, applied as a row op
    for col in 0..c_inv.cols() {
        let a = c_inv.at(i, col).clone();
        let b = c_inv.at(j, col).clone();
        *c_inv.at_mut(i, col) = b;
        *c_inv.at_mut(j, col) = a;
    }
}

/// col_j -= q * col_i on m and c; row_i += q * row_j on c_inv.
fn col_axpy(
    m: &mut Mat<BigInt>,
    c: &mut Mat<BigInt>,
    c_inv: &mut Mat<BigInt>,
    j: usize,
    i: usize,
    q: &BigInt,
) {
    for row in 0..m.rows() {
        let v = m.at(row, j) - q * m.at(row, i);
        *m.at_mut(row, j) = v;
    }
    for row in 0..c.rows() {
        let v = c.at(row, j) - q * c.at(row, i);
        *c.at_mut(row, j) = v;
    }
    for col in 0..c_inv.cols() {
        let v = c_inv.at(i, col) + q * c_inv.at(j, col);
        *c_inv.at_mut(i, col) = v;
    }
}

fn negate_col(m: &mut Mat<BigInt>, c: &mut Mat<BigInt>, c_inv: &mut Mat<BigInt>, i: usize) {
    for row in 0..m.rows() {
        let v = -m.at(row, i);
        *m.at_mut(row, i) = v;
    }
    for row in 0..c.rows() {
        let v = -c.at(row, i);
        *c.at_mut(row, i) = v;
    }
    for col in 0..c_inv.cols() {
        let v = -c_inv.at(i, col);
        *c_inv.at_mut(i, col) = v;
    }
}

/// Basis of the saturated integer kernel `{x : A x = 0}` as rows; empty when
/// A has full column rank.
pub fn integer_kernel_basis(a: &Mat<BigInt>) -> Vec<Vec<BigInt>> {
    let s = smith(a);
    let n = a.cols();
    (s.rank..n)
        .map(|j| (0..n).map(|i| s.c.at(i, j).clone()).collect())
        .collect()
}

/// A family of integer row vectors is saturated (spans a primitive
/// sublattice) iff all invariant factors are 1.
pub fn is_saturated(rows: &Mat<BigInt>) -> bool {
    let s = smith(rows);
    s.rank == rows.rows() && s.factors.iter().take(s.rank).all(|d| d.is_one())
}

/// Extend a saturated family of rows to a basis of Z^n: returns complement
/// rows. Panics if the family is not saturated.
pub fn complement_basis(rows: &Mat<BigInt>) -> Vec<Vec<BigInt>> {
    let s = smith(rows);
    assert!(
        s.rank == rows.rows() && s.factors.iter().take(s.rank).all(|d| d.is_one()),
        "complement_basis needs a saturated family"
    );
    let n = rows.cols();
    // rows of c_inv beyond the rank complete the span of the family
    (s.rank..n)
        .map(|i| (0..n).map(|j| s.c_inv.at(i, j).clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> Mat<BigInt> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }

    #[test]
    fn smith_identity_transforms() {
        let a = m(vec![vec![2, 4, 4]]);
        let s = smith(&a);
        assert_eq!(s.rank, 1);
        assert_eq!(s.factors[0], BigInt::from(2));
        // c * c_inv = I
        let prod = crate::matrix::mat_mul(&Integers, &s.c, &s.c_inv);
        assert_eq!(prod, crate::matrix::mat_identity(&Integers, 3));
        // kernel columns annihilate a
        for v in integer_kernel_basis(&a) {
            let s: BigInt = v
                .iter()
                .zip([2i64, 4, 4])
                .map(|(x, c)| x * BigInt::from(c))
                .sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn smith_divisibility_chain() {
        let a = m(vec![vec![2, 0], vec![0, 3]]);
        let s = smith(&a);
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn kernel_of_sum_map() {
        let a = m(vec![vec![1, 1, 1]]);
        let basis = integer_kernel_basis(&a);
        assert_eq!(basis.len(), 2);
        // kernel of [[2, 4]] is generated by the primitive (2, -1)
        let b = integer_kernel_basis(&m(vec![vec![2, 4]]));
        assert_eq!(b.len(), 1);
        let v = &b[0];
        assert!(v[0].abs() == BigInt::from(2) && v[1].abs() == BigInt::from(1));
    }

    #[test]
    fn saturation() {
        assert!(is_saturated(&m(vec![vec![1, 1, 0]])));
        assert!(!is_saturated(&m(vec![vec![2, 2, 0]])));
        assert!(is_saturated(&m(vec![vec![1, 0, 0], vec![0, 1, 0]])));
        assert!(!is_saturated(&m(vec![vec![1, 1, 0], vec![1, -1, 0]]))); // index 2
    }

    #[test]
    fn complements() {
        let rows = m(vec![vec![1, 1]]);
        let comp = complement_basis(&rows);
        assert_eq!(comp.len(), 1);
        // [rows; comp] must be unimodular
        let full = m(vec![
            vec![1, 1],
            comp[0]
                .iter()
                .map(|x| x.to_string().parse::<i64>().unwrap())
                .collect(),
        ]);
        let det = crate::matrix::bareiss_det(&full);
        assert!(det.abs().is_one());
    }
}
