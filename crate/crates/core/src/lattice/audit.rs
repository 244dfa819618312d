//! Slope bounds and audits: mu_max enclosures, the slope inequality, the
//! Siegel-lemma chain, Minkowski short vectors, and the filtered variant.
//!
//! Audits assert their inequality with 1e-9 slack on the log scale and
//! return the full record; a violated assertion means a bug, not bad input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::field::{BigRat, Rationals};
use crate::lattice::hom::{hom_height, HomHeight, LatticeHom};
use crate::lattice::reduction::{enumerate_short_vectors, lll_on_gram};
use crate::lattice::{
    arithmetic_degree, kernel_lattice, quotient_lattice, slope, sublattice, BallConstant,
    EuclideanLattice, LatticeError,
};
use crate::matrix::{mat_mul, Mat};
use crate::numeric::{ln_bigrat, rat_to_f64};

const AUDIT_SLACK: f64 = 1e-9;

/// Enclosure of the maximal slope: an enumerated lower bound and the exact
/// upper bound 0 for integral Grams (the covolume squared of any sublattice
/// of an integral lattice is a nonzero integer).
#[derive(Debug, Clone)]
pub struct MuMaxBounds {
    pub lower: f64,
    pub upper: Option<f64>,
}

impl MuMaxBounds {
    pub fn to_json(&self) -> Value {
        json!({"lower": self.lower, "upper": self.upper})
    }
}

/// Lower bound: the best slope among sublattices generated by subsets of the
/// vectors enumerated up to squared radius `effort * d * det^(1/d)`; the
/// lattice itself is always a candidate.
pub fn mu_max_bounds(l: &EuclideanLattice, effort: u32) -> MuMaxBounds {
    assert!(effort >= 1, "effort must be >= 1");
    let d = l.rank();
    let det = l.det();
    let radius = effort as f64 * d as f64 * rat_to_f64(&det).powf(1.0 / d as f64);
    let bound = BigRat::from_float(radius.max(f64::MIN_POSITIVE))
        .unwrap_or_else(|| BigRat::from_integer(1.into()));
    let reduced = lll_on_gram(l.gram());
    let mut vectors = enumerate_short_vectors(&reduced.gram, &bound);
    vectors.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    vectors.truncate(16);

    let mut best = slope(l);
    // subsets of the short vectors, grown only while independent
    let q = Rationals;
    let vecs: Vec<Vec<BigRat>> = vectors
        .iter()
        .map(|(x, _)| {
            // coordinates back in the original basis
            let mut coords = vec![BigRat::zero(); d];
            for (i, &xi) in x.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for j in 0..d {
                    coords[j] +=
                        BigRat::from_integer(BigInt::from(xi) * reduced.transform.at(i, j));
                }
            }
            coords
        })
        .collect();
    fn explore(
        q: &Rationals,
        gram: &Mat<BigRat>,
        vecs: &[Vec<BigRat>],
        start: usize,
        chosen: &mut Vec<usize>,
        best: &mut f64,
        d: usize,
    ) {
        if chosen.len() == d || start == vecs.len() {
            return;
        }
        for i in start..vecs.len() {
            chosen.push(i);
            let rows: Vec<Vec<BigRat>> = chosen.iter().map(|&k| vecs[k].clone()).collect();
            let s = Mat::from_rows(rows);
            let g = mat_mul(q, &mat_mul(q, &s, gram), &s.transpose());
            let det = crate::matrix::det_rational(&g);
            if det.is_positive() {
                let sl = -0.5 * ln_bigrat(&det) / chosen.len() as f64;
                if sl > *best {
                    *best = sl;
                }
                explore(q, gram, vecs, i + 1, chosen, best, d);
            }
            chosen.pop();
        }
    }
    let mut chosen = Vec::new();
    explore(&q, l.gram(), &vecs, 0, &mut chosen, &mut best, d);

    MuMaxBounds {
        lower: best,
        upper: if l.is_integral() { Some(0.0) } else { None },
    }
}

/// A Minkowski-guaranteed short vector with exact norm.
#[derive(Debug, Clone)]
pub struct MinkowskiRecord {
    /// Coordinates in the lattice basis.
    pub coords: Vec<BigInt>,
    /// Ambient coordinates when the lattice is embedded.
    pub ambient: Option<Vec<BigRat>>,
    pub norm2: BigRat,
    pub norm: f64,
    /// Minkowski threshold t = 2 (covol / ball_d)^(1/d) * (1 + 1e-9).
    pub threshold: f64,
    pub ball: BallConstant,
}

impl MinkowskiRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "coords": self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "ambient": self.ambient.as_ref().map(|a| a.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            "norm2_exact": self.norm2.to_string(),
            "norm": self.norm,
            "threshold": self.threshold,
            "ball_volume": self.ball.volume,
            "ball_volume_paper_variant": self.ball.paper_variant,
        })
    }
}

/// Shortest-vector search under the Minkowski threshold; existence is
/// guaranteed, so a miss is a bug and panics.
pub fn minkowski_short_vector(l: &EuclideanLattice) -> MinkowskiRecord {
    let d = l.rank();
    let ball = BallConstant::new(d);
    let covol = (0.5 * ln_bigrat(&l.det())).exp();
    let t = 2.0 * (covol / ball.volume).powf(1.0 / d as f64) * (1.0 + 1e-9);
    let bound = BigRat::from_float(t * t).expect("finite threshold");
    let (coords, norm2) = crate::lattice::reduction::shortest_vector_within(l.gram(), &bound)
        .expect("Minkowski guarantees a lattice point under the threshold");
    assert!(
        norm2 <= bound,
        "enumerated vector exceeds the Minkowski threshold"
    );
    MinkowskiRecord {
        ambient: l.to_ambient(&coords),
        norm: rat_to_f64(&norm2).sqrt(),
        coords,
        norm2,
        threshold: t,
        ball,
    }
}

/// Audit record for the slope inequality mu(E) <= mu_max(F) + h(phi).
#[derive(Debug, Clone)]
pub struct SlopeAudit {
    pub lhs: f64,
    pub mu_max_upper: f64,
    pub height: HomHeight,
    pub rhs: f64,
    pub slack: f64,
}

impl SlopeAudit {
    pub fn to_json(&self) -> Value {
        json!({
            "lhs_slope": self.lhs,
            "mu_max_upper": self.mu_max_upper,
            "hom_height": self.height.log,
            "lambda_interval": [self.height.lambda_lo.to_string(), self.height.lambda_hi.to_string()],
            "rhs": self.rhs,
            "slack": self.slack,
        })
    }
}

/// Slope inequality for an injective map into a lattice with exact mu_max
/// upper bound (integral target Gram).
pub fn slope_inequality_audit(hom: &LatticeHom) -> Result<SlopeAudit, LatticeError> {
    if !hom.is_injective() {
        return Err(LatticeError::NotInjective);
    }
    if !hom.target.is_integral() {
        return Err(LatticeError::NoUpperBound);
    }
    let mu_max_upper = 0.0;
    let height = hom_height(hom)?;
    let lhs = slope(&hom.source);
    let rhs = mu_max_upper + height.log;
    let slack = rhs - lhs;
    assert!(
        slack >= -AUDIT_SLACK,
        "slope inequality violated: mu = {lhs}, rhs = {rhs}"
    );
    Ok(SlopeAudit {
        lhs,
        mu_max_upper,
        height,
        rhs,
        slack,
    })
}

/// Audit of the kernel slope bound mu(E1) >= -((n-d)/d) h(phi_2) derived
/// from the slope inequality, with the a-priori bound
/// -(r/(n-r)) log(sqrt(r n) A) reported alongside.
#[derive(Debug, Clone)]
pub struct KernelSlopeAudit {
    pub kernel_rank: usize,
    pub kernel_degree: f64,
    pub mu_kernel: f64,
    pub height: Option<HomHeight>,
    pub bound: f64,
    pub a_priori: Option<f64>,
    pub slack: f64,
}

impl KernelSlopeAudit {
    pub fn to_json(&self) -> Value {
        json!({
            "kernel_rank": self.kernel_rank,
            "kernel_degree": self.kernel_degree,
            "mu_kernel": self.mu_kernel,
            "hom_height": self.height.as_ref().map(|h| h.log),
            "bound": self.bound,
            "a_priori": self.a_priori,
            "slack": self.slack,
        })
    }
}

pub fn kernel_slope_bound_audit(phi: &Mat<BigInt>) -> Result<KernelSlopeAudit, LatticeError> {
    let n = phi.cols();
    let e1 = kernel_lattice(phi)?;
    let d = e1.rank();
    let rho = n - d; // rank of phi
    let mu = slope(&e1);
    let (height, bound) = if rho == 0 {
        (None, 0.0)
    } else {
        // induced injection E/E1 -> Z^r on a complement basis
        let basis_int: Mat<BigInt> = e1
            .embedding()
            .expect("kernel lattice is embedded")
            .map(|x| {
                debug_assert!(x.denom().is_one());
                x.numer().clone()
            });
        let quotient = quotient_lattice(&EuclideanLattice::standard(n), &basis_int)?;
        let comp = crate::lattice::integral::complement_basis(&basis_int);
        let t = Mat::from_rows(comp);
        let q = Rationals;
        let phir = phi.map(|x| BigRat::from_integer(x.clone()));
        let tr = t.map(|x| BigRat::from_integer(x.clone()));
        let m = mat_mul(&q, &phir, &tr.transpose());
        let hom = LatticeHom::new(quotient, EuclideanLattice::standard(phi.rows()), m);
        let h = hom_height(&hom)?;
        let bound = -(rho as f64 / d as f64) * h.log;
        (Some(h), bound)
    };
    let r = phi.rows();
    let a_max = phi
        .entries()
        .iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let a_priori = if a_max.is_zero() || n <= r {
        None
    } else {
        let a = a_max.to_f64().unwrap_or(f64::MAX);
        Some(-(r as f64 / (n - r) as f64) * ((r as f64 * n as f64).sqrt() * a).ln())
    };
    let slack = mu - bound;
    assert!(
        slack >= -AUDIT_SLACK,
        "kernel slope bound violated: mu = {mu}, bound = {bound}"
    );
    Ok(KernelSlopeAudit {
        kernel_rank: d,
        kernel_degree: arithmetic_degree(&e1).logvalue,
        mu_kernel: mu,
        height,
        bound,
        a_priori,
        slack,
    })
}

/// Siegel-lemma solution: a short nonzero integer kernel vector with both the
/// classical bound and the slope-derived threshold.
#[derive(Debug, Clone)]
pub struct SiegelRecord {
    /// Solution in ambient Z^n coordinates.
    pub x: Vec<BigInt>,
    pub norm2: BigRat,
    pub norm: f64,
    pub ell_inf: BigInt,
    /// (n A)^(r/(n-r)) with r = rank of the matrix.
    pub classical_bound: f64,
    pub within_classical: bool,
    /// Minkowski threshold on the kernel lattice (slope-derived bound).
    pub slope_bound: f64,
    pub kernel_audit: KernelSlopeAudit,
}

impl SiegelRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "norm2_exact": self.norm2.to_string(),
            "norm": self.norm,
            "ell_inf": self.ell_inf.to_string(),
            "classical_bound": self.classical_bound,
            "within_classical": self.within_classical,
            "slope_bound": self.slope_bound,
            "kernel_audit": self.kernel_audit.to_json(),
        })
    }
}

pub fn siegel_solve(phi: &Mat<BigInt>) -> Result<SiegelRecord, LatticeError> {
    let n = phi.cols();
    let e1 = kernel_lattice(phi)?;
    let mink = minkowski_short_vector(&e1);
    let ambient = mink.ambient.clone().expect("kernel lattice is embedded");
    let x: Vec<BigInt> = ambient
        .iter()
        .map(|c| {
            debug_assert!(c.denom().is_one());
            c.numer().clone()
        })
        .collect();
    // exact check Phi x = 0
    for i in 0..phi.rows() {
        let mut acc = BigInt::zero();
        for j in 0..n {
            acc += phi.at(i, j) * &x[j];
        }
        assert!(acc.is_zero(), "siegel solution fails Phi x = 0");
    }
    let rank = n - e1.rank();
    let a_max = phi
        .entries()
        .iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
        .to_f64()
        .unwrap_or(f64::MAX);
    let classical_bound = if rank == 0 {
        1.0
    } else {
        (n as f64 * a_max).powf(rank as f64 / (n - rank) as f64)
    };
    let ell_inf = x
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let within_classical = ell_inf.to_f64().unwrap_or(f64::MAX) <= classical_bound + 1e-9;
    let kernel_audit = kernel_slope_bound_audit(phi)?;
    Ok(SiegelRecord {
        norm: rat_to_f64(&mink.norm2).sqrt(),
        norm2: mink.norm2.clone(),
        x,
        ell_inf,
        classical_bound,
        within_classical,
        slope_bound: mink.threshold,
        kernel_audit,
    })
}

/// One level of a filtered target: the graded quotient G^(n) with an upper
/// bound for its maximal slope. The filtration is the coordinate filtration
/// on the stacked blocks.
#[derive(Debug, Clone)]
pub struct FilterLevel {
    pub gram: Mat<BigRat>,
    pub mu_max_upper: f64,
}

#[derive(Debug, Clone)]
pub struct FilteredTarget {
    pub levels: Vec<FilterLevel>,
}

impl FilteredTarget {
    pub fn total_rank(&self) -> usize {
        self.levels.iter().map(|l| l.gram.rows()).sum()
    }
}

#[derive(Debug, Clone)]
pub struct FilteredLevelReport {
    pub level: usize,
    pub rank: usize,
    pub rank_drop: usize,
    pub mu_max_upper: f64,
    pub height: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct FilteredAudit {
    pub lhs_degree: f64,
    pub residual_rank: usize,
    pub residual_degree: f64,
    /// deg E - deg(residual): equals deg E when the filtration separates.
    pub effective_lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub separated: bool,
    pub levels: Vec<FilteredLevelReport>,
}

impl FilteredAudit {
    pub fn to_json(&self) -> Value {
        json!({
            "lhs_degree": self.lhs_degree,
            "residual_rank": self.residual_rank,
            "residual_degree": self.residual_degree,
            "effective_lhs": self.effective_lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "separated": self.separated,
            "levels": self.levels.iter().map(|l| json!({
                "level": l.level,
                "rank": l.rank,
                "rank_drop": l.rank_drop,
                "mu_max_upper": l.mu_max_upper,
                "hom_height": l.height,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Filtered slope inequality
/// `deg E <= sum_n rank(E^(n)/E^(n+1)) (mu_max(G^(n)) + h(phi^(n)))`.
///
/// `phi` maps E into the stacked blocks of the levels; E^(n) is the
/// saturated preimage of the n-th filtration step. When the provided levels
/// do not separate E (phi has a kernel), the audit subtracts the residual
/// degree from the left-hand side, which is the form the telescoping proof
/// actually gives; `strict` turns that case into an error instead.
pub fn filtered_slope_audit(
    e: &EuclideanLattice,
    phi: &Mat<BigRat>,
    target: &FilteredTarget,
    strict: bool,
) -> Result<FilteredAudit, LatticeError> {
    let d = e.rank();
    assert_eq!(phi.cols(), d, "phi must act on E");
    assert_eq!(
        phi.rows(),
        target.total_rank(),
        "phi must map into the stacked levels"
    );

    // integer row-cleared copies of each level block of phi
    let mut blocks: Vec<Mat<BigInt>> = Vec::new();
    let mut offset = 0usize;
    for level in &target.levels {
        let r = level.gram.rows();
        let mut rows = Vec::with_capacity(r);
        for i in offset..offset + r {
            rows.push(phi.row(i).to_vec());
        }
        blocks.push(clear_rational_rows(&Mat::from_rows(rows)));
        offset += r;
    }

    // E^(n): saturated kernel of the stacked blocks < n; basis rows
    let mut chains: Vec<Mat<BigInt>> = Vec::with_capacity(target.levels.len() + 1);
    chains.push(identity_int(d));
    let mut stacked: Vec<Vec<BigInt>> = Vec::new();
    for block in &blocks {
        for i in 0..block.rows() {
            stacked.push(block.row(i).to_vec());
        }
        let kernel = crate::lattice::integral::integer_kernel_basis(&Mat::from_rows(
            stacked.clone(),
        ));
        if kernel.is_empty() {
            // represent the zero lattice by an empty marker handled below
            chains.push(Mat::from_vec(1, d, vec![BigInt::zero(); d]));
        } else {
            chains.push(Mat::from_rows(kernel));
        }
    }
    let rank_of = |m: &Mat<BigInt>| -> usize {
        if m.entries().iter().all(|x| x.is_zero()) {
            0
        } else {
            m.rows()
        }
    };

    let residual = chains.last().unwrap().clone();
    let residual_rank = rank_of(&residual);
    let separated = residual_rank == 0;
    if strict && !separated {
        return Err(LatticeError::NotInjective);
    }

    let q = Rationals;
    let mut rhs = 0.0;
    let mut levels_out = Vec::new();
    for (n, level) in target.levels.iter().enumerate() {
        let rank_n = rank_of(&chains[n]);
        let rank_next = rank_of(&chains[n + 1]);
        let drop = rank_n - rank_next;
        let mut height = None;
        if drop > 0 {
            let basis = &chains[n];
            let sub = if rank_n == d && n == 0 {
                e.clone()
            } else {
                sublattice(e, basis)?
            };
            let target_lattice = EuclideanLattice::new(level.gram.clone())?;
            let blockr = blocks[n].map(|x| BigRat::from_integer(x.clone()));
            let basisr = basis.map(|x| BigRat::from_integer(x.clone()));
            let m = mat_mul(&q, &blockr, &basisr.transpose());
            let hom = LatticeHom::new(sub, target_lattice, m);
            let h = hom_height(&hom)?;
            rhs += drop as f64 * (level.mu_max_upper + h.log);
            height = Some(h.log);
        }
        levels_out.push(FilteredLevelReport {
            level: n,
            rank: rank_n,
            rank_drop: drop,
            mu_max_upper: level.mu_max_upper,
            height,
        });
    }

    let lhs_degree = arithmetic_degree(e).logvalue;
    let residual_degree = if separated {
        0.0
    } else {
        arithmetic_degree(&sublattice(e, &residual)?).logvalue
    };
    let effective_lhs = lhs_degree - residual_degree;
    let slack = rhs - effective_lhs;
    assert!(
        slack >= -AUDIT_SLACK,
        "filtered slope inequality violated: lhs = {effective_lhs}, rhs = {rhs}"
    );
    Ok(FilteredAudit {
        lhs_degree,
        residual_rank,
        residual_degree,
        effective_lhs,
        rhs,
        slack,
        separated,
        levels: levels_out,
    })
}

fn identity_int(n: usize) -> Mat<BigInt> {
    let mut entries = vec![BigInt::zero(); n * n];
    for i in 0..n {
        entries[i * n + i] = BigInt::one();
    }
    Mat::from_vec(n, n, entries)
}

/// Scale each row to integer entries (blocks of phi may be rational).
fn clear_rational_rows(m: &Mat<BigRat>) -> Mat<BigInt> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut lcm = BigInt::one();
        for j in 0..m.cols() {
            lcm = lcm.lcm(m.at(i, j).denom());
        }
        let row: Vec<BigInt> = (0..m.cols())
            .map(|j| {
                let v = m.at(i, j) * BigRat::from_integer(lcm.clone());
                debug_assert!(v.denom().is_one());
                v.numer().clone()
            })
            .collect();
        rows.push(row);
    }
    Mat::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use crate::matrix::mat_identity;

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
    fn mu_max_standard_lattice() {
        let l = EuclideanLattice::standard(3);
        let b = mu_max_bounds(&l, 1);
        assert_eq!(b.upper, Some(0.0));
        assert!(b.lower.abs() < 1e-12); // unit vectors give slope 0 exactly
    }

    #[test]
    fn mu_max_hexagonal() {
        let l = EuclideanLattice::new(gram(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        let b = mu_max_bounds(&l, 1);
        assert_eq!(b.upper, Some(0.0));
        // best sublattice is the full lattice: -1/4 log 3 > -1/2 log 2
        assert!((b.lower + 0.25 * 3f64.ln()).abs() < 1e-9);
        assert!(b.lower >= -0.5 * 2f64.ln());
    }

    #[test]
    fn mu_max_rank_one_rational() {
        let l = EuclideanLattice::new(Mat::from_rows(vec![vec![rat(1, 4)]])).unwrap();
        let b = mu_max_bounds(&l, 1);
        assert!(b.upper.is_none());
        assert!((b.lower - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn mu_max_scaling_shift() {
        // scaling the Gram by c^2 shifts the lower bound by -log c
        let l = EuclideanLattice::new(gram(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        let scaled = EuclideanLattice::new(
            l.gram().map(|x| x * rat(1, 4)), // c = 1/2
        )
        .unwrap();
        let b1 = mu_max_bounds(&l, 1);
        let b2 = mu_max_bounds(&scaled, 1);
        assert!(b2.upper.is_none());
        assert!((b2.lower - (b1.lower + 2f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn minkowski_examples() {
        // Z^2: unit vector under threshold 4/pi
        let r = minkowski_short_vector(&EuclideanLattice::standard(2));
        assert_eq!(r.norm2, rat_int(1));
        assert!((r.threshold * r.threshold - 4.0 / std::f64::consts::PI).abs() < 1e-6);

        // hexagonal: norm^2 = 2 under threshold^2 = 4 sqrt(3)/pi
        let l = EuclideanLattice::new(gram(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        let r = minkowski_short_vector(&l);
        assert_eq!(r.norm2, rat_int(2));
        let expect = 4.0 * 3f64.sqrt() / std::f64::consts::PI;
        assert!((r.threshold * r.threshold - expect).abs() < 1e-6);

        // rank 1, Gram [[N^2]]: equality case of the bound
        let l = EuclideanLattice::new(gram(vec![vec![49]])).unwrap();
        let r = minkowski_short_vector(&l);
        assert_eq!(r.norm2, rat_int(49));
    }

    #[test]
    fn slope_audit_examples() {
        // x3 on Z: 0 <= 0 + log 3
        let z = EuclideanLattice::standard(1);
        let hom = LatticeHom::new(z.clone(), z.clone(), Mat::from_rows(vec![vec![rat_int(3)]]));
        let audit = slope_inequality_audit(&hom).unwrap();
        assert!((audit.rhs - 3f64.ln()).abs() < 1e-9);
        assert!(audit.lhs.abs() < 1e-12);

        // Gram [[2]] -> Z by [1]: equality
        let e = EuclideanLattice::new(gram(vec![vec![2]])).unwrap();
        let hom = LatticeHom::new(e, z.clone(), Mat::from_rows(vec![vec![rat_int(1)]]));
        let audit = slope_inequality_audit(&hom).unwrap();
        assert!(audit.slack.abs() < 1e-9);

        // non-injective map rejected
        let hom = LatticeHom::new(
            EuclideanLattice::standard(2),
            z,
            Mat::from_rows(vec![vec![rat_int(1), rat_int(1)]]),
        );
        assert!(matches!(
            slope_inequality_audit(&hom),
            Err(LatticeError::NotInjective)
        ));
    }

    #[test]
    fn kernel_audit_equality_case() {
        // Phi = (1,1,1): mu(E1) = -1/4 log 3 equals the bound
        let audit = kernel_slope_bound_audit(&imat(vec![vec![1, 1, 1]])).unwrap();
        assert_eq!(audit.kernel_rank, 2);
        assert!((audit.mu_kernel + 0.25 * 3f64.ln()).abs() < 1e-9);
        assert!(audit.slack.abs() < 1e-9);

        // padded identity: kernel Z e3, mu = 0 >= bound
        let audit = kernel_slope_bound_audit(&imat(vec![vec![1, 0, 0], vec![0, 1, 0]])).unwrap();
        assert_eq!(audit.kernel_rank, 1);
        assert_eq!(audit.mu_kernel, 0.0);
        assert!(audit.slack >= -1e-9);
    }

    #[test]
    fn siegel_examples() {
        let rec = siegel_solve(&imat(vec![vec![1, 1, 1]])).unwrap();
        assert_eq!(rec.ell_inf, BigInt::from(1));
        assert!(rec.within_classical);
        assert!((rec.classical_bound - 3f64.sqrt()).abs() < 1e-9);

        let rec = siegel_solve(&imat(vec![vec![1, 2, 3]])).unwrap();
        assert!(rec.ell_inf <= BigInt::from(3));
        assert!(rec.within_classical);

        // zero map: kernel is everything, returns a unit vector
        let rec = siegel_solve(&imat(vec![vec![0, 0, 0]])).unwrap();
        assert_eq!(rec.norm2, rat_int(1));
        assert_eq!(rec.x.iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(rec.x[0], BigInt::from(1));

        // full rank: no kernel
        assert!(matches!(
            siegel_solve(&imat(vec![vec![1, 0], vec![0, 1]])),
            Err(LatticeError::FullRank)
        ));
    }

    #[test]
    fn filtered_trivial_instance() {
        // E = Z, G^(0) = Z, phi = id: 0 <= 1 * (0 + 0)
        let e = EuclideanLattice::standard(1);
        let target = FilteredTarget {
            levels: vec![FilterLevel {
                gram: mat_identity(&Rationals, 1),
                mu_max_upper: 0.0,
            }],
        };
        let phi = mat_identity(&Rationals, 1);
        let audit = filtered_slope_audit(&e, &phi, &target, true).unwrap();
        assert!(audit.separated);
        assert!(audit.lhs_degree.abs() < 1e-12);
        assert!(audit.rhs.abs() < 1e-9);
    }

    #[test]
    fn filtered_hermite_pade_tiny_instance() {
        // E = E_{1,1} = Z^4 (coordinates a, b, c, e for a + bX + (c + eX)Y),
        // y = 1/(1-x) truncated at order 4, levels = vanishing order,
        // G^(n) = Z. phi columns: 1, x, y, xy.
        let e = EuclideanLattice::standard(4);
        let rows = vec![
            vec![1i64, 0, 1, 0], // x^0: a + c
            vec![0, 1, 1, 1],    // x^1: b + c + e
            vec![0, 0, 1, 1],    // x^2
            vec![0, 0, 1, 1],    // x^3
            vec![0, 0, 1, 1],    // x^4
        ];
        let phi = Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect::<Vec<_>>())
                .collect(),
        );
        let target = FilteredTarget {
            levels: (0..5)
                .map(|_| FilterLevel {
                    gram: mat_identity(&Rationals, 1),
                    mu_max_upper: 0.0,
                })
                .collect(),
        };
        // the exact relation (1-X)Y - 1 lies in the kernel: not separated
        let audit = filtered_slope_audit(&e, &phi, &target, false).unwrap();
        assert!(!audit.separated);
        assert_eq!(audit.residual_rank, 1);
        // residual = span{(-1, 0, 1, -1)}: degree -1/2 log 3
        assert!((audit.residual_degree + 0.5 * 3f64.ln()).abs() < 1e-9);
        // the telescoped inequality is an exact equality here
        assert!(audit.slack.abs() < 1e-9, "slack = {}", audit.slack);
        // strict mode rejects it
        assert!(matches!(
            filtered_slope_audit(&e, &phi, &target, true),
            Err(LatticeError::NotInjective)
        ));
    }
}
