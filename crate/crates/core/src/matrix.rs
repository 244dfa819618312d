//! Dense row-major matrices with exact linear algebra.
//!
//! Generic operations are parameterized by the coefficient [`Field`]; the
//! rational-specific routines (fraction-free determinant, characteristic
//! polynomial) live at the bottom.

use crate::error::AlgebraError;
use crate::field::{BigRat, Field, Rationals};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S>(&self, f: impl FnMut(&T) -> S) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<S, E>(&self, mut f: impl FnMut(&T) -> Result<S, E>) -> Result<Mat<S>, E> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl<T: Clone> Mat<T> {
    pub fn transpose(&self) -> Mat<T> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

pub fn mat_zero<F: Field>(field: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    Mat::from_vec(rows, cols, vec![field.zero(); rows * cols])
}

pub fn mat_identity<F: Field>(field: &F, n: usize) -> Mat<F::Elem> {
    let mut m = mat_zero(field, n, n);
    for i in 0..n {
        *m.at_mut(i, i) = field.one();
    }
    m
}

pub fn mat_add<F: Field>(field: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "dimension mismatch");
    Mat {
        rows: a.rows,
        cols: a.cols,
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| field.add(x, y))
            .collect(),
    }
}

pub fn mat_mul<F: Field>(field: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in matrix product");
    let mut out = mat_zero(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.at(i, k);
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let t = field.mul(aik, b.at(k, j));
                let cur = out.at(i, j);
                *out.at_mut(i, j) = field.add(cur, &t);
            }
        }
    }
    out
}

pub fn mat_scale<F: Field>(field: &F, a: &Mat<F::Elem>, c: &F::Elem) -> Mat<F::Elem> {
    a.map(|x| field.mul(x, c))
}

pub fn mat_is_zero<F: Field>(field: &F, a: &Mat<F::Elem>) -> bool {
    a.entries.iter().all(|x| field.is_zero(x))
}

/// Apply a matrix to a vector.
pub fn mat_apply<F: Field>(field: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "dimension mismatch");
    (0..a.rows)
        .map(|i| {
            let mut acc = field.zero();
            for j in 0..a.cols {
                acc = field.add(&acc, &field.mul(a.at(i, j), &v[j]));
            }
            acc
        })
        .collect()
}

/// Exact inverse by Gauss-Jordan elimination over the field.
pub fn mat_inverse<F: Field>(field: &F, a: &Mat<F::Elem>) -> Result<Mat<F::Elem>, AlgebraError> {
    assert!(a.is_square(), "inverse of a non-square matrix");
    let n = a.rows;
    let mut work = a.clone();
    let mut inv = mat_identity(field, n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !field.is_zero(work.at(r, col)));
        let pivot = match pivot {
            Some(p) => p,
            None => return Err(AlgebraError::SingularMatrix),
        };
        if pivot != col {
            for j in 0..n {
                work.entries.swap(pivot * n + j, col * n + j);
                inv.entries.swap(pivot * n + j, col * n + j);
            }
        }
        let pinv = field.inv(work.at(col, col)).expect("nonzero pivot");
        for j in 0..n {
            *work.at_mut(col, j) = field.mul(work.at(col, j), &pinv);
            *inv.at_mut(col, j) = field.mul(inv.at(col, j), &pinv);
        }
        for r in 0..n {
            if r == col || field.is_zero(work.at(r, col)) {
                continue;
            }
            let factor = work.at(r, col).clone();
            for j in 0..n {
                let t = field.mul(&factor, work.at(col, j));
                *work.at_mut(r, j) = field.sub(work.at(r, j), &t);
                let t = field.mul(&factor, inv.at(col, j));
                *inv.at_mut(r, j) = field.sub(inv.at(r, j), &t);
            }
        }
    }
    Ok(inv)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, a: &mut Mat<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !field.is_zero(a.at(i, c)));
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        if pivot != r {
            for j in 0..cols {
                a.entries.swap(pivot * cols + j, r * cols + j);
            }
        }
        let pinv = field.inv(a.at(r, c)).expect("nonzero pivot");
        for j in 0..cols {
            *a.at_mut(r, j) = field.mul(a.at(r, j), &pinv);
        }
        for i in 0..rows {
            if i == r || field.is_zero(a.at(i, c)) {
                continue;
            }
            let factor = a.at(i, c).clone();
            for j in 0..cols {
                let t = field.mul(&factor, a.at(r, j));
                *a.at_mut(i, j) = field.sub(a.at(i, j), &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel, one vector per free column, in the standard
/// free-variable parameterization of the reduced echelon form.
pub fn kernel_basis<F: Field>(field: &F, a: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = a.clone();
    let pivots = rref(field, &mut work);
    let cols = a.cols;
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(work.at(r, free));
        }
        basis.push(v);
    }
    basis
}

pub fn rank<F: Field>(field: &F, a: &Mat<F::Elem>) -> usize {
    let mut work = a.clone();
    rref(field, &mut work).len()
}

/// Solve `A x = b` over the field; `None` when inconsistent.
pub fn solve<F: Field>(field: &F, a: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let mut aug = mat_zero(field, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            *aug.at_mut(i, j) = a.at(i, j).clone();
        }
        *aug.at_mut(i, a.cols) = b[i].clone();
    }
    let pivots = rref(field, &mut aug);
    if pivots.contains(&a.cols) {
        return None; // pivot in the constant column
    }
    let mut x = vec![field.zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.at(r, a.cols).clone();
    }
    Some(x)
}

/// Exact determinant of an integer matrix by fraction-free (Bareiss)
/// elimination. Returns the list of leading principal minors when no row
/// interchange is needed; with interchanges only the determinant is exact.
pub fn bareiss_det(a: &Mat<BigInt>) -> BigInt {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.at(k, k).is_zero() {
            let swap = (k + 1..n).find(|&r| !m.at(r, k).is_zero());
            match swap {
                Some(r) => {
                    for j in 0..n {
                        m.entries.swap(r * n + j, k * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                *m.at_mut(i, j) = t / &prev;
            }
            *m.at_mut(i, k) = BigInt::zero();
        }
        prev = m.at(k, k).clone();
    }
    let d = m.at(n - 1, n - 1).clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Clear denominators row by row; returns the integer matrix and the product
/// of the (positive) row scalings.
fn clear_rows(a: &Mat<BigRat>) -> (Mat<BigInt>, BigRat) {
    let mut scale = BigRat::one();
    let mut entries = Vec::with_capacity(a.entries.len());
    for i in 0..a.rows {
        let mut lcm = BigInt::one();
        for j in 0..a.cols {
            lcm = lcm.lcm(a.at(i, j).denom());
        }
        scale *= BigRat::from_integer(lcm.clone());
        for j in 0..a.cols {
            let v = a.at(i, j) * BigRat::from_integer(lcm.clone());
            debug_assert!(v.denom().is_one());
            entries.push(v.numer().clone());
        }
    }
    (Mat::from_vec(a.rows, a.cols, entries), scale)
}

/// Exact determinant of a rational matrix.
pub fn det_rational(a: &Mat<BigRat>) -> BigRat {
    let (m, scale) = clear_rows(a);
    BigRat::from_integer(bareiss_det(&m)) / scale
}

/// Exact positive-definiteness check for a symmetric rational matrix:
/// all leading principal minors strictly positive.
pub fn is_positive_definite(a: &Mat<BigRat>) -> bool {
    assert!(a.is_square());
    for k in 1..=a.rows {
        let mut sub = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                sub.push(a.at(i, j).clone());
            }
        }
        let minor = det_rational(&Mat::from_vec(k, k, sub));
        if !minor.is_positive() {
            return false;
        }
    }
    true
}

/// Characteristic polynomial det(lambda I - A) of a rational matrix, by the
/// Faddeev-LeVerrier recurrence (exact, division only by integers).
pub fn char_poly(a: &Mat<BigRat>) -> Poly<Rationals> {
    assert!(a.is_square());
    let q = Rationals;
    let n = a.rows;
    let mut coeffs = vec![BigRat::zero(); n + 1];
    coeffs[n] = BigRat::one();
    let mut m = mat_identity(&q, n);
    for k in 1..=n {
        m = mat_mul(&q, a, &m);
        let trace: BigRat = (0..n).map(|i| m.at(i, i).clone()).sum();
        let c = -trace / BigRat::from_integer(BigInt::from(k as i64));
        coeffs[n - k] = c.clone();
        for i in 0..n {
            let cur = m.at(i, i).clone();
            *m.at_mut(i, i) = cur + &c;
        }
    }
    Poly::from_coeffs(&q, coeffs)
}
