//! p-curvature of linear differential systems `Y' = A(z) Y`.
//!
//! The central object is the matrix sequence
//! `A_0 = I, A_1 = A, A_{k+1} = A_k' + A_k A`, which satisfies
//! `d^n Y / dz^n = A_n Y` for any solution. Over F_p the p-th term `A_p` is
//! the p-curvature; it vanishes iff the reduced system has a full basis of
//! rational solutions, in which case a fundamental matrix is
//! `Y = (sum_{i<p} (-z)^i/i! A_i)^{-1}`.
//!
//! The p-curvature is computed entirely in F_p(z): reduce first, iterate
//! second. Iterating over Q and reducing at the end blows up exponentially;
//! the equivalence of the two orders (where reduction succeeds throughout)
//! is covered by a property test at tiny p.

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::AlgebraError;
use crate::field::{primes_up_to, BigRat, Field, PrimeField, Rationals};
use crate::matrix::{mat_identity, mat_inverse, mat_is_zero, mat_mul, Mat};
use crate::poly::Poly;
use crate::ratfunc::{reduce_ratfunc_mod_p, RatFunc, RatFuncField};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PCurvatureError {
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("the system is singular at the origin mod {0}")]
    SingularAtOrigin(u64),
    #[error("p-curvature is nonzero at p = {0}")]
    NotZeroCurvature(u64),
    #[error("truncated Taylor sum is singular mod {0}")]
    InvertibilityFailure(u64),
    #[error("invalid parameter: {0}")]
    ParameterError(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A linear differential system `Y' = A(z) Y` with `A` square over Q(z).
#[derive(Debug, Clone, PartialEq)]
pub struct DiffSystem {
    a: Mat<RatFunc<Rationals>>,
}

impl DiffSystem {
    pub fn new(a: Mat<RatFunc<Rationals>>) -> Self {
        assert!(a.is_square(), "system matrix must be square");
        DiffSystem { a }
    }

    pub fn dimension(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Mat<RatFunc<Rationals>> {
        &self.a
    }

    /// Move the basepoint z0 to the origin: A(z) -> A(z + z0).
    pub fn shift(&self, z0: &BigRat) -> DiffSystem {
        DiffSystem::new(self.a.map(|f| f.shift(&Rationals, z0)))
    }

    /// Entry-wise reduction mod p.
    pub fn reduce_mod_p(&self, fp: &PrimeField) -> Result<Mat<RatFunc<PrimeField>>, AlgebraError> {
        self.a.try_map(|f| reduce_ratfunc_mod_p(f, fp))
    }
}

/// The table `A_0, ..., A_n` over F(z), kept with its base matrix.
#[derive(Debug, Clone)]
pub struct IterateTable<F: Field> {
    base: Mat<RatFunc<F>>,
    iterates: Vec<Mat<RatFunc<F>>>,
}

impl<F: Field> IterateTable<F> {
    pub fn base(&self) -> &Mat<RatFunc<F>> {
        &self.base
    }

    /// A_k; panics when k exceeds the stored range.
    pub fn get(&self, k: usize) -> &Mat<RatFunc<F>> {
        &self.iterates[k]
    }

    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }
}

fn mat_derivative<F: Field>(field: &F, a: &Mat<RatFunc<F>>) -> Mat<RatFunc<F>> {
    a.map(|f| f.derivative(field))
}

/// One step of the recursion: `A_{k+1} = A_k' + A_k A`.
pub fn iterate_step<F: Field>(
    field: &F,
    current: &Mat<RatFunc<F>>,
    base: &Mat<RatFunc<F>>,
) -> Mat<RatFunc<F>> {
    let k = RatFuncField::new(field.clone());
    let d = mat_derivative(field, current);
    let prod = mat_mul(&k, current, base);
    crate::matrix::mat_add(&k, &d, &prod)
}

/// Build the table `A_0 .. A_n`; works identically over Q and over F_p.
pub fn iterate_system<F: Field>(field: &F, a: &Mat<RatFunc<F>>, n: usize) -> IterateTable<F> {
    assert!(a.is_square(), "system matrix must be square");
    let k = RatFuncField::new(field.clone());
    let mut iterates = Vec::with_capacity(n + 1);
    iterates.push(mat_identity(&k, a.rows()));
    if n >= 1 {
        iterates.push(a.clone());
    }
    while iterates.len() <= n {
        let next = iterate_step(field, iterates.last().unwrap(), a);
        iterates.push(next);
    }
    IterateTable {
        base: a.clone(),
        iterates,
    }
}

/// Outcome of the p-curvature test at a single prime.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureStatus {
    BadReduction,
    Zero,
    NonZero(Mat<RatFunc<PrimeField>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PCurvatureOutcome {
    pub p: u64,
    pub status: CurvatureStatus,
}

impl PCurvatureOutcome {
    pub fn to_json(&self) -> Value {
        match &self.status {
            CurvatureStatus::BadReduction => json!({"p": self.p, "status": "bad-reduction"}),
            CurvatureStatus::Zero => json!({"p": self.p, "status": "zero"}),
            CurvatureStatus::NonZero(m) => {
                let fp = PrimeField::new(self.p).expect("outcome prime");
                json!({
                    "p": self.p,
                    "status": "nonzero",
                    "matrix": render_matrix(&fp, m),
                })
            }
        }
    }
}

pub fn render_matrix<F: Field>(field: &F, m: &Mat<RatFunc<F>>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|f| f.render(field, "z")).collect())
        .collect()
}

/// Compute the p-curvature `A_p mod p` of the system.
pub fn p_curvature(sys: &DiffSystem, p: u64) -> Result<PCurvatureOutcome, PCurvatureError> {
    let fp = PrimeField::new(p)?;
    let abar = match sys.reduce_mod_p(&fp) {
        Ok(m) => m,
        Err(AlgebraError::BadReduction(_)) => {
            return Ok(PCurvatureOutcome {
                p,
                status: CurvatureStatus::BadReduction,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let k = RatFuncField::new(fp);
    let mut current = abar.clone();
    for _ in 1..p {
        current = iterate_step(&fp, &current, &abar);
    }
    let status = if mat_is_zero(&k, &current) {
        CurvatureStatus::Zero
    } else {
        CurvatureStatus::NonZero(current)
    };
    Ok(PCurvatureOutcome { p, status })
}

/// Scan report over all primes up to a bound.
#[derive(Debug, Clone)]
pub struct PCurvatureReport {
    pub p_max: u64,
    pub outcomes: Vec<PCurvatureOutcome>,
    pub zero_count: usize,
    pub nonzero_count: usize,
    pub bad_count: usize,
    pub verdict: String,
}

impl PCurvatureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "p_max": self.p_max,
            "outcomes": self.outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
            "counts": {
                "zero": self.zero_count,
                "nonzero": self.nonzero_count,
                "bad_reduction": self.bad_count,
            },
            "verdict": self.verdict,
        })
    }
}

/// Test every prime `<= p_max`; bad primes are recorded, not fatal.
/// Output is deterministic regardless of worker count.
pub fn scan_p_curvatures(sys: &DiffSystem, p_max: u64) -> PCurvatureReport {
    assert!(p_max >= 2, "scan needs p_max >= 2");
    let primes = primes_up_to(p_max);
    let mut outcomes: Vec<PCurvatureOutcome> = primes
        .par_iter()
        .map(|&p| p_curvature(sys, p).expect("prime from sieve"))
        .collect();
    outcomes.sort_by_key(|o| o.p);
    let zero_count = outcomes
        .iter()
        .filter(|o| o.status == CurvatureStatus::Zero)
        .count();
    let bad_count = outcomes
        .iter()
        .filter(|o| o.status == CurvatureStatus::BadReduction)
        .count();
    let nonzero_count = outcomes.len() - zero_count - bad_count;
    let verdict = if nonzero_count == 0 {
        "all-zero (Grothendieck hypothesis holds up to bound)".to_string()
    } else {
        let ps: Vec<String> = outcomes
            .iter()
            .filter(|o| matches!(o.status, CurvatureStatus::NonZero(_)))
            .map(|o| o.p.to_string())
            .collect();
        format!("nonzero at p = {}", ps.join(", "))
    };
    PCurvatureReport {
        p_max,
        outcomes,
        zero_count,
        nonzero_count,
        bad_count,
        verdict,
    }
}

/// Fundamental solution matrix over F_p(z) for a system with zero
/// p-curvature, regular at the origin:
/// `Y = (sum_{i=0}^{p-1} (-z)^i/i! A_i)^{-1}`, normalized by `Y(0) = I`.
///
/// The identities `Y' = A Y` and `Y(0) = I` are verified exactly before
/// returning; a failure there is an implementation bug, hence a panic.
pub fn cartier_fundamental_matrix(
    sys: &DiffSystem,
    p: u64,
) -> Result<Mat<RatFunc<PrimeField>>, PCurvatureError> {
    let fp = PrimeField::new(p)?;
    let abar = sys
        .reduce_mod_p(&fp)
        .map_err(|_| PCurvatureError::BadReduction(p))?;
    for f in abar.entries() {
        if fp.is_zero(&f.den().eval(&fp, &0)) {
            return Err(PCurvatureError::SingularAtOrigin(p));
        }
    }
    let k = RatFuncField::new(fp);
    let d = abar.rows();

    // running iterate A_i, running coefficient (-1)^i / i!, running sum
    let mut sum = mat_identity(&k, d);
    let mut current = mat_identity(&k, d);
    let mut coeff = 1u64; // (-1)^i * (i!)^{-1} mod p, starting at i = 0
    for i in 1..=p {
        current = iterate_step(&fp, &current, &abar);
        if i == p {
            if !mat_is_zero(&k, &current) {
                return Err(PCurvatureError::NotZeroCurvature(p));
            }
            break;
        }
        // update coefficient to (-1)^i / i!
        let inv_i = fp.inv(&fp.from_i64(i as i64)).expect("i < p");
        coeff = fp.mul(&coeff, &fp.neg(&inv_i));
        let term = RatFunc::from_poly(&fp, Poly::monomial(&fp, coeff, i as usize));
        let scaled = current.map(|f| f.mul(&fp, &term));
        sum = crate::matrix::mat_add(&k, &sum, &scaled);
    }

    let y = mat_inverse(&k, &sum).map_err(|_| PCurvatureError::InvertibilityFailure(p))?;

    // mandatory internal verification
    let dy = mat_derivative(&fp, &y);
    let ay = mat_mul(&k, &abar, &y);
    assert_eq!(dy, ay, "fundamental matrix fails Y' = AY at p = {p}");
    for i in 0..d {
        for j in 0..d {
            let v = y.at(i, j).eval(&fp, &0).expect("regular at origin");
            let expect = if i == j { fp.one() } else { fp.zero() };
            assert_eq!(v, expect, "fundamental matrix fails Y(0) = I at p = {p}");
        }
    }
    Ok(y)
}

/// Companion system of the Gauss hypergeometric equation
/// `z(1-z) y'' + (c - (a+b+1) z) y' - ab y = 0`.
///
/// Requires `c` not to be a nonpositive integer, so that the standard series
/// basis at the regular point 0 exists.
pub fn hypergeometric_system(
    a: &BigRat,
    b: &BigRat,
    c: &BigRat,
) -> Result<DiffSystem, PCurvatureError> {
    use num_traits::Signed;
    if c.is_integer() && !c.is_positive() {
        return Err(PCurvatureError::ParameterError(format!(
            "c = {c} is a nonpositive integer"
        )));
    }
    let q = Rationals;
    // z(1-z) = z - z^2
    let zz = Poly::from_coeffs(
        &q,
        vec![
            BigRat::from_integer(0.into()),
            BigRat::from_integer(1.into()),
            BigRat::from_integer((-1).into()),
        ],
    );
    let ab = a * b;
    let lower_left = RatFunc::new(&q, Poly::constant(&q, ab), zz.clone());
    // ((a+b+1) z - c) / (z(1-z))
    let lin = Poly::from_coeffs(
        &q,
        vec![-c.clone(), a + b + BigRat::from_integer(1.into())],
    );
    let lower_right = RatFunc::new(&q, lin, zz);
    let zero = RatFunc::zero(&q);
    let one = RatFunc::one(&q);
    Ok(DiffSystem::new(Mat::from_rows(vec![
        vec![zero, one],
        vec![lower_left, lower_right],
    ])))
}

/// Taylor coefficients `Y_0 .. Y_n` of the unique solution with `Y(0) = I`,
/// over Q, by the coefficient recursion `(k+1) Y_{k+1} = sum A^(j) Y_{k-j}`.
pub fn fundamental_series(sys: &DiffSystem, n: usize) -> Result<Vec<Mat<BigRat>>, AlgebraError> {
    let q = Rationals;
    let d = sys.dimension();
    // entrywise Taylor expansion of A through order n
    let mut a_coeffs: Vec<Mat<BigRat>> = Vec::with_capacity(n + 1);
    let mut expansions: Vec<Vec<BigRat>> = Vec::with_capacity(d * d);
    for f in sys.matrix().entries() {
        expansions.push(f.series_at_zero(&q, n)?);
    }
    for k in 0..=n {
        let entries: Vec<BigRat> = expansions.iter().map(|e| e[k].clone()).collect();
        a_coeffs.push(Mat::from_vec(d, d, entries));
    }

    let mut y: Vec<Mat<BigRat>> = vec![mat_identity(&q, d)];
    for k in 0..n {
        let mut acc = crate::matrix::mat_zero(&q, d, d);
        for j in 0..=k {
            let prod = mat_mul(&q, &a_coeffs[j], &y[k - j]);
            acc = crate::matrix::mat_add(&q, &acc, &prod);
        }
        let inv = BigRat::from_integer((k as i64 + 1).into()).recip();
        y.push(crate::matrix::mat_scale(&q, &acc, &inv));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    fn q() -> Rationals {
        Rationals
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc<Rationals> {
        RatFunc::new(
            &q(),
            Poly::from_coeffs(&q(), num.iter().map(|&x| rat_int(x)).collect()),
            Poly::from_coeffs(&q(), den.iter().map(|&x| rat_int(x)).collect()),
        )
    }

    fn scalar_sys(f: RatFunc<Rationals>) -> DiffSystem {
        DiffSystem::new(Mat::from_vec(1, 1, vec![f]))
    }

    #[test]
    fn iterate_zero_system() {
        let sys = scalar_sys(RatFunc::zero(&q()));
        let table = iterate_system(&q(), sys.matrix(), 5);
        assert_eq!(table.get(0).at(0, 0), &RatFunc::one(&q()));
        for k in 1..=5 {
            assert!(table.get(k).at(0, 0).is_zero());
        }
    }

    #[test]
    fn iterate_inverse_z() {
        // A = [[1/z]]: A_2 = (1/z)' + 1/z^2 = 0, hence A_3 = 0
        let sys = scalar_sys(rf(&[1], &[0, 1]));
        let table = iterate_system(&q(), sys.matrix(), 3);
        assert!(table.get(2).at(0, 0).is_zero());
        assert!(table.get(3).at(0, 0).is_zero());
    }

    #[test]
    fn iterate_nilpotent_log_system() {
        // A = [[0, 1/z], [0, 0]]: A^2 = 0 so A_{k+1} = A_k'
        let a = Mat::from_rows(vec![
            vec![RatFunc::zero(&q()), rf(&[1], &[0, 1])],
            vec![RatFunc::zero(&q()), RatFunc::zero(&q())],
        ]);
        let table = iterate_system(&q(), &a, 3);
        assert_eq!(table.get(2).at(0, 1), &rf(&[-1], &[0, 0, 1]));
        assert!(table.get(2).at(0, 0).is_zero());
        assert_eq!(table.get(3).at(0, 1), &rf(&[2], &[0, 0, 0, 1]));
    }

    #[test]
    fn p_curvature_examples() {
        // A = [[(1/2)/z]] at p = 7: falling factorial vanishes
        let half_over_z = RatFunc::new(
            &q(),
            Poly::constant(&q(), rat(1, 2)),
            Poly::var(&q()),
        );
        let out = p_curvature(&scalar_sys(half_over_z), 7).unwrap();
        assert_eq!(out.status, CurvatureStatus::Zero);

        // log system at p = 5: corner is -z^{-5} = 4/z^5 by Wilson
        let a = Mat::from_rows(vec![
            vec![RatFunc::zero(&q()), rf(&[1], &[0, 1])],
            vec![RatFunc::zero(&q()), RatFunc::zero(&q())],
        ]);
        let out = p_curvature(&DiffSystem::new(a), 5).unwrap();
        match out.status {
            CurvatureStatus::NonZero(m) => {
                let f5 = PrimeField::new(5).unwrap();
                assert_eq!(m.at(0, 1).render(&f5, "z"), "(4)/(z^5)");
                assert!(m.at(0, 0).is_zero());
                assert!(m.at(1, 1).is_zero());
            }
            other => panic!("expected NonZero, got {other:?}"),
        }

        // A = [[1]] (exponential) at p = 3: A_p = I
        let out = p_curvature(&scalar_sys(RatFunc::one(&q())), 3).unwrap();
        match out.status {
            CurvatureStatus::NonZero(m) => {
                let f3 = PrimeField::new(3).unwrap();
                assert_eq!(m.at(0, 0), &RatFunc::one(&f3));
            }
            other => panic!("expected NonZero, got {other:?}"),
        }
    }

    #[test]
    fn scan_examples() {
        let sys = scalar_sys(rf(&[1], &[0, 1]));
        let report = scan_p_curvatures(&sys, 20);
        assert_eq!(report.zero_count, 8);
        assert_eq!(report.nonzero_count, 0);
        assert!(report.verdict.contains("all-zero"));

        let half = scalar_sys(RatFunc::constant(&q(), rat(1, 2)));
        let report = scan_p_curvatures(&half, 5);
        assert_eq!(report.bad_count, 1); // p = 2
        assert_eq!(report.nonzero_count, 2); // p = 3, 5
        assert_eq!(report.outcomes[0].status, CurvatureStatus::BadReduction);
    }

    #[test]
    fn scan_is_deterministic() {
        let a = Mat::from_rows(vec![
            vec![RatFunc::zero(&q()), rf(&[1], &[0, 1])],
            vec![RatFunc::zero(&q()), RatFunc::zero(&q())],
        ]);
        let sys = DiffSystem::new(a);
        let r1 = scan_p_curvatures(&sys, 30).to_json();
        let r2 = scan_p_curvatures(&sys, 30).to_json();
        assert_eq!(r1.to_string(), r2.to_string());
        assert_eq!(scan_p_curvatures(&sys, 30).nonzero_count, 10);
    }

    #[test]
    fn cartier_identity_system() {
        let sys = scalar_sys(RatFunc::zero(&q()));
        let y = cartier_fundamental_matrix(&sys, 5).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(y.at(0, 0), &RatFunc::one(&f5));
    }

    #[test]
    fn cartier_rank_one_pole() {
        // y' = y/(z-1) has solution 1 - z (normalized to Y(0) = 1)
        let sys = scalar_sys(rf(&[1], &[-1, 1]));
        let y = cartier_fundamental_matrix(&sys, 5).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(y.at(0, 0).render(&f5, "z"), "4*z + 1"); // 1 - z mod 5
    }

    #[test]
    fn cartier_gauge_transform() {
        // U = [[1, z^2], [0, 1]], A = U' U^{-1}; expect Y = U at p = 7
        let z2 = rf(&[0, 0, 1], &[1]);
        let u = Mat::from_rows(vec![
            vec![RatFunc::one(&q()), z2],
            vec![RatFunc::zero(&q()), RatFunc::one(&q())],
        ]);
        let k = RatFuncField::new(q());
        let du = u.map(|f| f.derivative(&q()));
        let a = mat_mul(&k, &du, &mat_inverse(&k, &u).unwrap());
        let sys = DiffSystem::new(a);
        let y = cartier_fundamental_matrix(&sys, 7).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(y.at(0, 1).render(&f7, "z"), "z^2");
        assert_eq!(y.at(0, 0), &RatFunc::one(&f7));
    }

    #[test]
    fn cartier_error_paths() {
        // singular at origin
        let sys = scalar_sys(rf(&[1], &[0, 1]));
        assert_eq!(
            cartier_fundamental_matrix(&sys, 5),
            Err(PCurvatureError::SingularAtOrigin(5))
        );
        // nonzero curvature
        let exp = scalar_sys(RatFunc::one(&q()));
        assert_eq!(
            cartier_fundamental_matrix(&exp, 5),
            Err(PCurvatureError::NotZeroCurvature(5))
        );
        // bad reduction
        let half = scalar_sys(RatFunc::constant(&q(), rat(1, 2)));
        assert_eq!(
            cartier_fundamental_matrix(&half, 2),
            Err(PCurvatureError::BadReduction(2))
        );
    }

    #[test]
    fn hypergeometric_entries() {
        let sys = hypergeometric_system(&rat(1, 4), &rat(-1, 4), &rat(1, 2)).unwrap();
        let f = sys.matrix().at(1, 0);
        // (-1/16)/(z(1-z)) normalized with monic denominator z^2 - z: 1/16 / (z^2 - z)
        assert_eq!(
            f,
            &RatFunc::new(
                &q(),
                Poly::constant(&q(), rat(-1, 16)),
                Poly::from_coeffs(&q(), vec![rat_int(0), rat_int(1), rat_int(-1)])
            )
        );

        let sys = hypergeometric_system(&rat_int(0), &rat_int(0), &rat_int(1)).unwrap();
        assert!(sys.matrix().at(1, 0).is_zero());

        let sys = hypergeometric_system(&rat(1, 2), &rat(1, 2), &rat_int(1)).unwrap();
        let f = sys.matrix().at(1, 0);
        assert_eq!(
            f,
            &RatFunc::new(
                &q(),
                Poly::constant(&q(), rat(1, 4)),
                Poly::from_coeffs(&q(), vec![rat_int(0), rat_int(1), rat_int(-1)])
            )
        );

        assert!(hypergeometric_system(&rat_int(1), &rat_int(1), &rat_int(0)).is_err());
        assert!(hypergeometric_system(&rat_int(1), &rat_int(1), &rat_int(-2)).is_err());
    }

    #[test]
    fn recursion_matches_taylor_derivatives() {
        // (d^n Y/dz^n)(0) = A_n(0) for the solution with Y(0) = I
        let sys = scalar_sys(rf(&[1], &[-1, 1])); // regular at 0
        let table = iterate_system(&q(), sys.matrix(), 8);
        let series = fundamental_series(&sys, 8).unwrap();
        let mut factorial = rat_int(1);
        for n in 1..=8usize {
            factorial *= rat_int(n as i64);
            // n-th derivative at 0 equals n! * Y_n
            let lhs = series[n].at(0, 0) * &factorial;
            let rhs = table.get(n).at(0, 0).eval(&q(), &rat_int(0)).unwrap();
            assert_eq!(lhs, rhs, "mismatch at n = {n}");
        }
    }

    #[test]
    fn scalar_shift_identity() {
        // For d = 1 over F_p: A_{n+p} = A_n A_p
        let f5 = PrimeField::new(5).unwrap();
        let sys = scalar_sys(rf(&[1, 1], &[0, 0, 1])); // (z+1)/z^2
        let abar = sys.reduce_mod_p(&f5).unwrap();
        let table = iterate_system(&f5, &abar, 12);
        let ap = table.get(5).at(0, 0);
        for n in 0..=7 {
            let lhs = table.get(n + 5).at(0, 0);
            let rhs = table.get(n).at(0, 0).mul(&f5, ap);
            assert_eq!(lhs, &rhs, "A_(n+p) != A_n A_p at n = {n}");
        }
    }

    #[test]
    fn shifted_basepoint() {
        // A singular at 0 but regular at 1: shift z -> z + 1
        let sys = scalar_sys(rf(&[1], &[0, 1])); // 1/z
        let shifted = sys.shift(&rat_int(1));
        assert_eq!(shifted.matrix().at(0, 0), &rf(&[1], &[1, 1])); // 1/(z+1)
        assert!(cartier_fundamental_matrix(&shifted, 5).is_ok());
    }
}
