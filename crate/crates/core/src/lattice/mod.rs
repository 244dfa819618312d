//! Arakelov-style arithmetic of Euclidean lattices: degrees, slopes, duals
//! and quotients, short vectors, slope-inequality audits and the
//! Siegel-lemma solver.
//!
//! A lattice is presented by an exact rational positive-definite Gram
//! matrix, optionally with an explicit embedding basis. Degrees are carried
//! as (exact determinant, float log) pairs: logs of rationals are
//! irrational, so the inequalities are asserted with 1e-9 slack on the log
//! scale while the exact determinant is retained for bit-exact re-audit.

pub mod audit;
pub mod hom;
pub mod integral;
pub mod reduction;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{BigRat, Integers, Rationals};
use crate::matrix::{det_rational, is_positive_definite, mat_inverse, mat_mul, Mat};
use crate::numeric::{ln_bigrat, rat_to_f64, unit_ball_volume};

pub use audit::{
    filtered_slope_audit, kernel_slope_bound_audit, mu_max_bounds, siegel_solve,
    slope_inequality_audit, FilterLevel, FilteredAudit, FilteredTarget, KernelSlopeAudit,
    MinkowskiRecord, MuMaxBounds, SiegelRecord, SlopeAudit,
};
pub use audit::minkowski_short_vector;
pub use hom::{hom_height, HomHeight, LatticeHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("embedding does not match the Gram matrix")]
    EmbeddingMismatch,
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("quotient by the full lattice is degenerate")]
    DegenerateQuotient,
    #[error("the zero map has no height")]
    ZeroMap,
    #[error("map is not injective")]
    NotInjective,
    #[error("no exact upper bound for mu_max (Gram is not integral)")]
    NoUpperBound,
    #[error("kernel is zero (matrix has full column rank)")]
    FullRank,
    #[error("filtration is not separated on the image")]
    NotSeparated,
}

/// A Euclidean lattice: Z^d with an exact positive-definite Gram matrix,
/// optionally embedded in an ambient standard space (rows = generators).
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanLattice {
    gram: Mat<BigRat>,
    embedding: Option<Mat<BigRat>>,
}

impl EuclideanLattice {
    pub fn new(gram: Mat<BigRat>) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram.at(i, j) != gram.at(j, i) {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        if !is_positive_definite(&gram) {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(EuclideanLattice {
            gram,
            embedding: None,
        })
    }

    /// Lattice spanned by the rows of `basis` in a standard ambient space.
    pub fn from_embedding(basis: Mat<BigRat>) -> Result<Self, LatticeError> {
        let q = Rationals;
        let gram = mat_mul(&q, &basis, &basis.transpose());
        let mut l = EuclideanLattice::new(gram)?;
        l.embedding = Some(basis);
        Ok(l)
    }

    /// Z^n with the standard inner product.
    pub fn standard(n: usize) -> Self {
        let gram = crate::matrix::mat_identity(&Rationals, n);
        EuclideanLattice {
            gram,
            embedding: Some(crate::matrix::mat_identity(&Rationals, n)),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat<BigRat> {
        &self.gram
    }

    pub fn embedding(&self) -> Option<&Mat<BigRat>> {
        self.embedding.as_ref()
    }

    /// Exact Gram determinant (square of the covolume).
    pub fn det(&self) -> BigRat {
        det_rational(&self.gram)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.entries().iter().all(|x| x.denom().is_one())
    }

    /// Map lattice coordinates to ambient coordinates (if embedded).
    pub fn to_ambient(&self, coords: &[BigInt]) -> Option<Vec<BigRat>> {
        let emb = self.embedding.as_ref()?;
        assert_eq!(coords.len(), self.rank());
        let mut out = vec![BigRat::from_integer(0.into()); emb.cols()];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cr = BigRat::from_integer(c.clone());
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += &cr * emb.at(i, j);
            }
        }
        Some(out)
    }

    /// Exact squared norm of a coordinate vector.
    pub fn norm2(&self, coords: &[BigInt]) -> BigRat {
        assert_eq!(coords.len(), self.rank());
        let mut acc = BigRat::from_integer(0.into());
        for i in 0..self.rank() {
            if coords[i].is_zero() {
                continue;
            }
            for j in 0..self.rank() {
                if coords[j].is_zero() {
                    continue;
                }
                acc += BigRat::from_integer(&coords[i] * &coords[j]) * self.gram.at(i, j);
            }
        }
        acc
    }
}


/// Arithmetic degree: minus the log of the covolume, carried with the exact
/// Gram determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeValue {
    pub det: BigRat,
    pub logvalue: f64,
}

impl DegreeValue {
    pub fn to_json(&self) -> Value {
        json!({
            "det_exact": self.det.to_string(),
            "det": rat_to_f64(&self.det),
            "degree": self.logvalue,
        })
    }
}

/// deg(L) = -1/2 log det(Gram).
pub fn arithmetic_degree(l: &EuclideanLattice) -> DegreeValue {
    let det = l.det();
    DegreeValue {
        logvalue: -0.5 * ln_bigrat(&det),
        det,
    }
}

/// Degree divided by rank.
pub fn slope(l: &EuclideanLattice) -> f64 {
    arithmetic_degree(l).logvalue / l.rank() as f64
}

/// Dual lattice: Gram passes to its inverse.
pub fn dual_lattice(l: &EuclideanLattice) -> EuclideanLattice {
    let inv = mat_inverse(&Rationals, l.gram()).expect("positive definite Gram is invertible");
    EuclideanLattice {
        gram: inv,
        embedding: None,
    }
}

/// Sublattice spanned by integer row vectors (in lattice coordinates), with
/// the induced metric. The rows must be linearly independent.
pub fn sublattice(l: &EuclideanLattice, rows: &Mat<BigInt>) -> Result<EuclideanLattice, LatticeError> {
    assert_eq!(rows.cols(), l.rank(), "coordinate length mismatch");
    let q = Rationals;
    let s = rows.map(|x| BigRat::from_integer(x.clone()));
    let gram = mat_mul(&q, &mat_mul(&q, &s, l.gram()), &s.transpose());
    let mut sub = EuclideanLattice::new(gram)?; // PD fails iff rows dependent
    sub.embedding = l
        .embedding
        .as_ref()
        .map(|emb| mat_mul(&q, &s, emb));
    Ok(sub)
}

/// Quotient L / S by a saturated sublattice, with the quotient metric
/// (orthogonal projection away from S).
pub fn quotient_lattice(
    l: &EuclideanLattice,
    s_rows: &Mat<BigInt>,
) -> Result<EuclideanLattice, LatticeError> {
    assert_eq!(s_rows.cols(), l.rank(), "coordinate length mismatch");
    let k = s_rows.rows();
    let d = l.rank();
    if k >= d {
        return Err(LatticeError::DegenerateQuotient);
    }
    if !integral::is_saturated(s_rows) {
        return Err(LatticeError::NotSaturated);
    }
    let comp = integral::complement_basis(s_rows);
    let t = Mat::from_rows(comp);
    let q = Rationals;
    let sr = s_rows.map(|x| BigRat::from_integer(x.clone()));
    let tr = t.map(|x| BigRat::from_integer(x.clone()));
    let g = l.gram();
    let tgt = mat_mul(&q, &mat_mul(&q, &tr, g), &tr.transpose());
    let tgs = mat_mul(&q, &mat_mul(&q, &tr, g), &sr.transpose());
    let sgs = mat_mul(&q, &mat_mul(&q, &sr, g), &sr.transpose());
    let sgs_inv = mat_inverse(&q, &sgs).expect("saturated sublattice has PD Gram");
    let correction = mat_mul(&q, &mat_mul(&q, &tgs, &sgs_inv), &tgs.transpose());
    let mut gram = tgt;
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            let v = gram.at(i, j) - correction.at(i, j);
            *gram.at_mut(i, j) = v;
        }
    }
    EuclideanLattice::new(gram)
}

/// Saturated kernel of an integer matrix, with the induced standard metric.
/// The basis is canonicalized (LLL then greedy-short when that generates the
/// same lattice), so small kernels come out in their familiar presentation.
pub fn kernel_lattice(phi: &Mat<BigInt>) -> Result<EuclideanLattice, LatticeError> {
    let basis = integral::integer_kernel_basis(phi);
    if basis.is_empty() {
        return Err(LatticeError::FullRank);
    }
    let b = Mat::from_rows(basis);
    let q = Rationals;
    let br = b.map(|x| BigRat::from_integer(x.clone()));
    let gram = mat_mul(&q, &br, &br.transpose());
    let transform = reduction::canonical_short_basis(&gram);
    let new_basis = mat_mul(&Integers, &transform, &b);
    EuclideanLattice::from_embedding(new_basis.map(|x| BigRat::from_integer(x.clone())))
}

/// Unit-ball volume constant for Minkowski bounds. `volume` is the standard
/// pi^(d/2)/Gamma(d/2+1); `paper_variant` is pi^(d/2)/Gamma(d/2) = volume * d/2,
/// reported alongside for comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct BallConstant {
    pub dimension: usize,
    pub volume: f64,
    pub paper_variant: f64,
}

impl BallConstant {
    pub fn new(d: usize) -> Self {
        let volume = unit_ball_volume(d);
        BallConstant {
            dimension: d,
            volume,
            paper_variant: volume * d as f64 / 2.0,
        }
    }
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

    fn imat(rows: Vec<Vec<i64>>) -> Mat<BigInt> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }

    #[test]
    fn degrees_and_slopes() {
        let l = EuclideanLattice::standard(3);
        assert_eq!(arithmetic_degree(&l).det, rat_int(1));
        assert_eq!(arithmetic_degree(&l).logvalue, 0.0);
        assert_eq!(slope(&l), 0.0);

        let hex = EuclideanLattice::new(gram(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        let deg = arithmetic_degree(&hex);
        assert_eq!(deg.det, rat_int(3));
        assert!((deg.logvalue + 0.5 * 3f64.ln()).abs() < 1e-12);
        assert!((slope(&hex) + 0.25 * 3f64.ln()).abs() < 1e-12);

        // 2Z inside Z: Gram [[4]], degree -log 2
        let two_z = EuclideanLattice::new(gram(vec![vec![4]])).unwrap();
        assert_eq!(arithmetic_degree(&two_z).det, rat_int(4));
        assert!((slope(&two_z) + 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_gram() {
        assert_eq!(
            EuclideanLattice::new(gram(vec![vec![1, 2], vec![3, 1]])).unwrap_err(),
            LatticeError::NotSymmetric
        );
        assert_eq!(
            EuclideanLattice::new(gram(vec![vec![1, 2], vec![2, 1]])).unwrap_err(),
            LatticeError::NotPositiveDefinite
        );
    }

    #[test]
    fn duals() {
        let l = EuclideanLattice::new(gram(vec![vec![4]])).unwrap();
        assert_eq!(dual_lattice(&l).gram(), &Mat::from_rows(vec![vec![rat(1, 4)]]));
        // det(dual) = 1/det
        let hex = EuclideanLattice::new(gram(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        assert_eq!(dual_lattice(&hex).det(), rat(1, 3));
    }

    #[test]
    fn quotient_examples() {
        let l = EuclideanLattice::standard(2);
        let q = quotient_lattice(&l, &imat(vec![vec![1, 1]])).unwrap();
        assert_eq!(q.gram(), &Mat::from_rows(vec![vec![rat(1, 2)]]));

        // quotient by the full lattice is degenerate
        assert_eq!(
            quotient_lattice(&l, &imat(vec![vec![1, 0], vec![0, 1]])).unwrap_err(),
            LatticeError::DegenerateQuotient
        );
        // non-saturated sublattice rejected
        assert_eq!(
            quotient_lattice(&l, &imat(vec![vec![2, 0]])).unwrap_err(),
            LatticeError::NotSaturated
        );
    }

    #[test]
    fn degree_additivity() {
        // det(L) = det(S) * det(L/S) for saturated S
        let l = EuclideanLattice::new(gram(vec![
            vec![2, 1, 0],
            vec![1, 3, 1],
            vec![0, 1, 4],
        ]))
        .unwrap();
        let s_rows = imat(vec![vec![1, 0, 0], vec![0, 1, 1]]);
        let s = sublattice(&l, &s_rows).unwrap();
        let quo = quotient_lattice(&l, &s_rows).unwrap();
        assert_eq!(l.det(), s.det() * quo.det());
    }

    #[test]
    fn kernel_lattice_examples() {
        // kernel of (1,1,1): the hexagonal Gram in its canonical basis
        let k = kernel_lattice(&imat(vec![vec![1, 1, 1]])).unwrap();
        assert_eq!(k.rank(), 2);
        assert_eq!(k.gram(), &gram(vec![vec![2, -1], vec![-1, 2]]));

        // padded identity: kernel is Z e_3
        let k = kernel_lattice(&imat(vec![vec![1, 0, 0], vec![0, 1, 0]])).unwrap();
        assert_eq!(k.gram(), &gram(vec![vec![1]]));

        // kernel of [[2, 4]] is the primitive (2, -1)
        let k = kernel_lattice(&imat(vec![vec![2, 4]])).unwrap();
        assert_eq!(k.gram(), &gram(vec![vec![5]]));

        // full-rank map has no kernel
        assert_eq!(
            kernel_lattice(&imat(vec![vec![1, 0], vec![0, 1]])).unwrap_err(),
            LatticeError::FullRank
        );
    }

    #[test]
    fn ball_constants() {
        let b1 = BallConstant::new(1);
        assert!((b1.volume - 2.0).abs() < 1e-12);
        let b2 = BallConstant::new(2);
        assert!((b2.volume - std::f64::consts::PI).abs() < 1e-12);
        assert!((b2.paper_variant - std::f64::consts::PI).abs() < 1e-12);
    }
}
