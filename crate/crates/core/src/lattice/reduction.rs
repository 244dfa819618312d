//! Basis reduction and short-vector enumeration, entirely in exact rational
//! arithmetic on Gram matrices.
//!
//! LLL runs with delta = 99/100 and tracks the unimodular transform, so it
//! applies to lattices given by a Gram matrix alone. Fincke-Pohst
//! enumeration keeps the exact quadratic-form value along the search tree;
//! floats are used only to seed integer range guesses, which are then fixed
//! up by exact comparisons.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::{BigRat, Rationals};
use crate::matrix::{mat_identity, Mat};
use crate::numeric::{rat_to_f64, round_rat};

/// Gram-Schmidt data: `b[i]` = squared length of the i-th orthogonal vector,
/// `mu[i][j]` for j < i.
struct Gso {
    b: Vec<BigRat>,
    mu: Vec<Vec<BigRat>>,
}

fn gso(g: &Mat<BigRat>) -> Gso {
    let d = g.rows();
    let mut b = vec![BigRat::zero(); d];
    let mut mu = vec![vec![BigRat::zero(); d]; d];
    let mut c = vec![vec![BigRat::zero(); d]; d]; // c[i][j] = <b_i, b*_j>
    for i in 0..d {
        for j in 0..=i.min(d - 1) {
            if j >= i {
                break;
            }
            let mut v = g.at(i, j).clone();
            for k in 0..j {
                v -= mu[j][k].clone() * &c[i][k];
            }
            c[i][j] = v.clone();
            mu[i][j] = v / &b[j];
        }
        let mut v = g.at(i, i).clone();
        for k in 0..i {
            v -= mu[i][k].clone() * &c[i][k];
        }
        b[i] = v;
    }
    Gso { b, mu }
}

/// Apply the symmetric row+column operation of `row_k -= q * row_j` to a
/// Gram matrix (i.e. G <- E G E^T).
fn gram_row_op(g: &mut Mat<BigRat>, k: usize, j: usize, q: &BigInt) {
    let qr = BigRat::from_integer(q.clone());
    for t in 0..g.cols() {
        let v = g.at(k, t) - &qr * g.at(j, t);
        *g.at_mut(k, t) = v;
    }
    for t in 0..g.rows() {
        let v = g.at(t, k) - &qr * g.at(t, j);
        *g.at_mut(t, k) = v;
    }
}

fn gram_swap(g: &mut Mat<BigRat>, i: usize, j: usize) {
    for t in 0..g.cols() {
        let a = g.at(i, t).clone();
        let b = g.at(j, t).clone();
        *g.at_mut(i, t) = b;
        *g.at_mut(j, t) = a;
    }
    for t in 0..g.rows() {
        let a = g.at(t, i).clone();
        let b = g.at(t, j).clone();
        *g.at_mut(t, i) = b;
        *g.at_mut(t, j) = a;
    }
}

pub struct ReducedGram {
    pub gram: Mat<BigRat>,
    /// reduced basis rows = transform * original basis rows
    pub transform: Mat<BigInt>,
}

/// Exact LLL reduction of a positive-definite Gram matrix (delta = 99/100).
pub fn lll_on_gram(g: &Mat<BigRat>) -> ReducedGram {
    assert!(g.is_square());
    let d = g.rows();
    let delta = BigRat::new(BigInt::from(99), BigInt::from(100));
    let mut gram = g.clone();
    let mut u = mat_identity(&crate::field::Integers, d);
    if d == 1 {
        return ReducedGram { gram, transform: u };
    }
    let mut k = 1usize;
    let mut guard = 0usize;
    while k < d {
        guard += 1;
        assert!(guard < 100_000, "LLL failed to terminate");
        let data = gso(&gram);
        // size-reduce row k against rows k-1 .. 0
        let mut mu_row = data.mu[k].clone();
        for j in (0..k).rev() {
            let q = round_rat(&mu_row[j]);
            if !q.is_zero() {
                gram_row_op(&mut gram, k, j, &q);
                let qr = BigRat::from_integer(q.clone());
                for t in 0..j {
                    let v = mu_row[t].clone() - &qr * &data.mu[j][t];
                    mu_row[t] = v;
                }
                mu_row[j] -= qr;
                for t in 0..d {
                    let v = u.at(k, t) - &q * u.at(j, t);
                    *u.at_mut(k, t) = v;
                }
            }
        }
        let data = gso(&gram);
        let lhs = data.b[k].clone();
        let rhs = (delta.clone() - data.mu[k][k - 1].clone() * &data.mu[k][k - 1]) * &data.b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            gram_swap(&mut gram, k - 1, k);
            for t in 0..d {
                let a = u.at(k - 1, t).clone();
                let b = u.at(k, t).clone();
                *u.at_mut(k - 1, t) = b;
                *u.at_mut(k, t) = a;
            }
            k = k.max(2) - 1;
        }
    }
    ReducedGram {
        gram,
        transform: u,
    }
}

/// Largest integer x with bq * (x + c)^2 <= rem, and the smallest such x,
/// via a float guess fixed up by exact comparisons. Returns None when the
/// interval is empty.
fn integer_range(c: &BigRat, bq: &BigRat, rem: &BigRat) -> Option<(i64, i64)> {
    if rem.is_negative() {
        return None;
    }
    let ok = |x: i64| {
        let xr = BigRat::from_integer(BigInt::from(x)) + c;
        &(xr.clone() * xr) * bq <= *rem
    };
    let t = (rat_to_f64(rem) / rat_to_f64(bq)).max(0.0).sqrt();
    let center = -rat_to_f64(c);
    let mut hi = (center + t).floor() as i64;
    let mut lo = (center - t).ceil() as i64;
    // exact fixup (float guess can be off by a couple of units)
    while ok(hi + 1) {
        hi += 1;
    }
    while hi >= lo && !ok(hi) {
        hi -= 1;
    }
    while ok(lo - 1) {
        lo -= 1;
    }
    while lo <= hi && !ok(lo) {
        lo += 1;
    }
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

/// All nonzero vectors `x` (integer coordinates in the basis of `g`) with
/// `x^T G x <= bound`, up to sign: the highest-index nonzero coordinate is
/// positive. Each vector carries its exact squared norm.
pub fn enumerate_short_vectors(g: &Mat<BigRat>, bound: &BigRat) -> Vec<(Vec<i64>, BigRat)> {
    let d = g.rows();
    let data = gso(g);
    let mut out = Vec::new();
    let mut x = vec![0i64; d];
    // centers: c_i = sum_{l > i} mu[l][i] * x_l
    fn recurse(
        i: usize,
        d: usize,
        data: &Gso,
        x: &mut Vec<i64>,
        rem: &BigRat,
        used: &BigRat,
        all_above_zero: bool,
        out: &mut Vec<(Vec<i64>, BigRat)>,
    ) {
        let mut c = BigRat::zero();
        for l in i + 1..d {
            c += data.mu[l][i].clone() * BigRat::from_integer(BigInt::from(x[l]));
        }
        let range = match integer_range(&c, &data.b[i], rem) {
            Some(r) => r,
            None => return,
        };
        for xi in range.0..=range.1 {
            if all_above_zero && xi < 0 {
                continue; // sign symmetry: keep highest nonzero coordinate positive
            }
            x[i] = xi;
            let term = {
                let v = BigRat::from_integer(BigInt::from(xi)) + &c;
                v.clone() * v * &data.b[i]
            };
            let rem2 = rem - &term;
            let used2 = used + &term;
            if i == 0 {
                if x.iter().any(|&v| v != 0) {
                    out.push((x.clone(), used2));
                }
            } else {
                recurse(
                    i - 1,
                    d,
                    data,
                    x,
                    &rem2,
                    &used2,
                    all_above_zero && xi == 0,
                    out,
                );
            }
        }
        x[i] = 0;
    }
    recurse(
        d - 1,
        d,
        &data,
        &mut x,
        bound,
        &BigRat::zero(),
        true,
        &mut out,
    );
    out
}

/// Shortest nonzero vector of the Gram matrix within `bound` (exact), as
/// (coordinates in the ORIGINAL basis, exact squared norm). Ties are broken
/// by lexicographically smallest coordinate vector in the reduced basis,
/// considering both signs; the returned vector is sign-normalized so its
/// first nonzero original coordinate is positive.
pub fn shortest_vector_within(g: &Mat<BigRat>, bound: &BigRat) -> Option<(Vec<BigInt>, BigRat)> {
    let reduced = lll_on_gram(g);
    let found = enumerate_short_vectors(&reduced.gram, bound);
    let mut best: Option<(Vec<i64>, BigRat)> = None;
    for (v, norm2) in found {
        for cand in [v.clone(), v.iter().map(|x| -x).collect::<Vec<i64>>()] {
            let better = match &best {
                None => true,
                Some((bv, bn)) => match norm2.cmp(bn) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => cand < *bv,
                },
            };
            if better {
                best = Some((cand, norm2.clone()));
            }
        }
    }
    let (coords_reduced, norm2) = best?;
    // original coordinates: x * transform
    let d = g.rows();
    let mut coords: Vec<BigInt> = vec![BigInt::zero(); d];
    for (i, &xi) in coords_reduced.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for j in 0..d {
            coords[j] += BigInt::from(xi) * reduced.transform.at(i, j);
        }
    }
    if let Some(first) = coords.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in coords.iter_mut() {
                *c = -c.clone();
            }
        }
    }
    Some((coords, norm2))
}

/// Try to replace an LLL basis by the canonical greedy-short basis: enumerate
/// all vectors no longer than the current longest basis vector, sort by
/// (norm, lex), and greedily pick an independent family. Adopted only when it
/// generates the full lattice (same determinant).
pub fn canonical_short_basis(g: &Mat<BigRat>) -> Mat<BigInt> {
    let d = g.rows();
    let reduced = lll_on_gram(g);
    if d == 1 {
        return reduced.transform;
    }
    let max_len = (0..d)
        .map(|i| reduced.gram.at(i, i).clone())
        .max()
        .expect("nonempty");
    let mut cands: Vec<(Vec<i64>, BigRat)> = Vec::new();
    for (v, n) in enumerate_short_vectors(&reduced.gram, &max_len) {
        // sign-normalize on first nonzero coordinate in ORIGINAL coords for
        // a deterministic, presentation-independent order
        let mut coords: Vec<BigInt> = vec![BigInt::zero(); d];
        for (i, &xi) in v.iter().enumerate() {
            for j in 0..d {
                coords[j] += BigInt::from(xi) * reduced.transform.at(i, j);
            }
        }
        if let Some(first) = coords.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                for c in coords.iter_mut() {
                    *c = -c.clone();
                }
            }
        }
        cands.push((
            coords
                .iter()
                .map(|c| c.to_i64().unwrap_or(i64::MAX))
                .collect(),
            n,
        ));
        if cands.len() > 4096 {
            return reduced.transform; // too dense; keep the LLL basis
        }
    }
    let first_nonzero = |v: &[i64]| v.iter().position(|&x| x != 0).unwrap_or(v.len());
    cands.sort_by(|a, b| {
        a.1.cmp(&b.1)
            .then_with(|| first_nonzero(&a.0).cmp(&first_nonzero(&b.0)))
            .then_with(|| a.0.cmp(&b.0))
    });
    cands.dedup();
    let q = Rationals;
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    for (v, _) in &cands {
        if chosen.len() == d {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(v.clone());
        let rows: Vec<Vec<BigRat>> = trial
            .iter()
            .map(|r| r.iter().map(|&x| crate::field::rat_int(x)).collect())
            .collect();
        if crate::matrix::rank(&q, &Mat::from_rows(rows)) == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() != d {
        return reduced.transform;
    }
    let mut t = Mat::from_rows(
        chosen
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    );
    // adopt only if it generates the same lattice: |det T| = 1
    if crate::matrix::bareiss_det(&t).abs() != BigInt::from(1) {
        return reduced.transform;
    }
    // sign pass: flip rows so earlier inner products come out non-positive
    let q = Rationals;
    let tr = t.map(|x| BigRat::from_integer(x.clone()));
    let mut new_gram = crate::matrix::mat_mul(
        &q,
        &crate::matrix::mat_mul(&q, &tr, g),
        &tr.transpose(),
    );
    for i in 1..d {
        let s: BigRat = (0..i).map(|j| new_gram.at(i, j).clone()).sum();
        if s.is_positive() {
            for j in 0..d {
                let v = -t.at(i, j);
                *t.at_mut(i, j) = v;
            }
            for j in 0..d {
                let v = -new_gram.at(i, j).clone();
                *new_gram.at_mut(i, j) = v;
                let w = -new_gram.at(j, i).clone();
                *new_gram.at_mut(j, i) = w;
            }
        }
    }
    t
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
    fn lll_preserves_determinant() {
        let g = gram(vec![vec![10, 3], vec![3, 2]]);
        let red = lll_on_gram(&g);
        assert_eq!(
            crate::matrix::det_rational(&red.gram),
            crate::matrix::det_rational(&g)
        );
        // reduced Gram should have shorter first vector
        assert!(red.gram.at(0, 0) <= g.at(0, 0));
        // transform consistency: red.gram = U G U^T
        let q = Rationals;
        let ur = red.transform.map(|x| BigRat::from_integer(x.clone()));
        let ugu = crate::matrix::mat_mul(&q, &crate::matrix::mat_mul(&q, &ur, &g), &ur.transpose());
        assert_eq!(ugu, red.gram);
    }

    #[test]
    fn enumeration_counts_hexagonal() {
        // Gram [[2,-1],[-1,2]]: 3 vector pairs of norm 2, none shorter
        let g = gram(vec![vec![2, -1], vec![-1, 2]]);
        let v = enumerate_short_vectors(&g, &rat_int(2));
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|(_, n)| *n == rat_int(2)));
        // norm 6 sphere: 3 pairs at 2 and 3 pairs at 6
        let v = enumerate_short_vectors(&g, &rat_int(6));
        assert_eq!(v.len(), 6);
    }

    #[test]
    fn shortest_vector_standard() {
        let g = gram(vec![vec![1, 0], vec![0, 1]]);
        let (v, n) = shortest_vector_within(&g, &rat_int(1)).unwrap();
        assert_eq!(n, rat_int(1));
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn shortest_vector_skewed() {
        // basis (1,0), (100, 1): shortest vector still has norm 1
        let g = gram(vec![vec![1, 100], vec![100, 10001]]);
        let (_, n) = shortest_vector_within(&g, &rat_int(1)).unwrap();
        assert_eq!(n, rat_int(1));
    }

    #[test]
    fn rational_gram_enumeration() {
        let g = Mat::from_rows(vec![vec![rat(1, 4)]]);
        let (v, n) = shortest_vector_within(&g, &rat(1, 4)).unwrap();
        assert_eq!(v, vec![BigInt::from(1)]);
        assert_eq!(n, rat(1, 4));
    }

    #[test]
    fn canonical_basis_a2() {
        // kernel-of-(1,1,1) Gram in a skewed presentation
        let g = gram(vec![vec![2, 1], vec![1, 2]]);
        let t = canonical_short_basis(&g);
        let q = Rationals;
        let tr = t.map(|x| BigRat::from_integer(x.clone()));
        let new_gram =
            crate::matrix::mat_mul(&q, &crate::matrix::mat_mul(&q, &tr, &g), &tr.transpose());
        assert_eq!(crate::matrix::det_rational(&new_gram), rat_int(3));
    }
}
