//! Python bindings for the arithlab toolkit.
//!
//! Matrices and Gram inputs are JSON strings (rows of integers or "a/b"
//! strings) or the expression grammar ("[[0, 1/z],[0, 0]]"); series
//! coefficients are lists of "a/b" strings or integers. Reports come back
//! as JSON strings matching the CLI schemas in /schemas.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use arithlab::diffforms::{classify_form as classify_form_rs, scan_form as scan_form_rs, RationalForm};
use arithlab::field::{BigRat, PrimeField, Rationals};
use arithlab::lattice::{
    arithmetic_degree, minkowski_short_vector as minkowski_rs, mu_max_bounds,
    siegel_solve as siegel_rs, slope, EuclideanLattice,
};
use arithlab::matrix::Mat;
use arithlab::pcurvature::{
    cartier_fundamental_matrix as cartier_rs, hypergeometric_system, p_curvature as p_curvature_rs,
    render_matrix, scan_p_curvatures as scan_rs, DiffSystem,
};
use arithlab::poly::Poly;
use arithlab::series::{
    borel_dwork_report, eisenstein_report, expand_algebraic_branch, hermite_pade_detect,
    invariants_estimate, AlgRelation, SeriesApprox,
};
use num_bigint::BigInt;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Render num/den as found, preserving the den(0) = 1 normalization.
fn render_fraction(q: &Rationals, num: &Poly<Rationals>, den: &Poly<Rationals>) -> String {
    if den.is_one(q) {
        num.render(q, "x")
    } else {
        format!("({})/({})", num.render(q, "x"), den.render(q, "x"))
    }
}

fn parse_rat(text: &str) -> PyResult<BigRat> {
    text.trim()
        .parse::<BigRat>()
        .map_err(|e| err(format!("bad rational {text:?}: {e}")))
}

fn parse_series(coeffs: Vec<String>) -> PyResult<SeriesApprox> {
    if coeffs.is_empty() {
        return Err(err("series needs at least one coefficient"));
    }
    let parsed: PyResult<Vec<BigRat>> = coeffs.iter().map(|c| parse_rat(c)).collect();
    Ok(SeriesApprox::new(parsed?))
}

fn parse_system(matrix: &str) -> PyResult<DiffSystem> {
    use arithlab::cli::expr;
    let m = match expr::parse_input(matrix).map_err(err)? {
        expr::ParsedInput::Matrix(rows) => expr::eval_matrix(&rows).map_err(err)?,
        expr::ParsedInput::Scalar(e) => Mat::from_rows(vec![vec![expr::eval(&e).map_err(err)?]]),
    };
    if !m.is_square() {
        return Err(err("system matrix must be square"));
    }
    Ok(DiffSystem::new(m))
}

fn parse_gram(gram_json: &str) -> PyResult<EuclideanLattice> {
    let v: serde_json::Value = serde_json::from_str(gram_json).map_err(err)?;
    let rows = v.as_array().ok_or_else(|| err("expected rows"))?;
    let mut out = Vec::new();
    for row in rows {
        let cells = row.as_array().ok_or_else(|| err("expected array rows"))?;
        let mut r = Vec::new();
        for c in cells {
            let rat = match c {
                serde_json::Value::Number(n) => BigRat::from_integer(BigInt::from(
                    n.as_i64().ok_or_else(|| err("non-integer number"))?,
                )),
                serde_json::Value::String(s) => parse_rat(s)?,
                _ => return Err(err("expected integer or \"a/b\" string")),
            };
            r.push(rat);
        }
        out.push(r);
    }
    EuclideanLattice::new(Mat::from_rows(out)).map_err(err)
}

fn parse_int_matrix(rows: Vec<Vec<i64>>) -> PyResult<Mat<BigInt>> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(err("matrix must be nonempty"));
    }
    Ok(Mat::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
    ))
}

/// Parse and canonically re-render a rational function expression.
#[pyfunction]
fn parse_ratfunc(expr_text: &str) -> PyResult<String> {
    use arithlab::cli::expr;
    let ast = expr::parse_expression(expr_text).map_err(err)?;
    let f = expr::eval(&ast).map_err(err)?;
    Ok(f.render(&Rationals, "z"))
}

/// p-curvature status at one prime: "zero", "nonzero" or "bad-reduction",
/// with the nonzero matrix rendered.
#[pyfunction]
fn p_curvature(matrix: &str, p: u64) -> PyResult<String> {
    let sys = parse_system(matrix)?;
    let outcome = p_curvature_rs(&sys, p).map_err(err)?;
    Ok(outcome.to_json().to_string())
}

/// Scan all primes up to p_max; returns the JSON report.
#[pyfunction]
fn scan_p_curvatures(matrix: &str, p_max: u64) -> PyResult<String> {
    if p_max < 2 {
        return Err(err("p_max must be >= 2"));
    }
    let sys = parse_system(matrix)?;
    Ok(scan_rs(&sys, p_max).to_json().to_string())
}

/// Fundamental solution matrix mod p (rows of rendered entries).
#[pyfunction]
fn cartier_solve(matrix: &str, p: u64) -> PyResult<Vec<Vec<String>>> {
    let sys = parse_system(matrix)?;
    let y = cartier_rs(&sys, p).map_err(err)?;
    let fp = PrimeField::new(p).map_err(err)?;
    Ok(render_matrix(&fp, &y))
}

/// Companion matrix of the Gauss hypergeometric equation.
#[pyfunction]
fn hypergeometric_matrix(a: &str, b: &str, c: &str) -> PyResult<Vec<Vec<String>>> {
    let sys = hypergeometric_system(&parse_rat(a)?, &parse_rat(b)?, &parse_rat(c)?).map_err(err)?;
    Ok(render_matrix(&Rationals, sys.matrix()))
}

/// Classify the form f dz mod p: "exact", "log-exact" or "neither".
#[pyfunction]
fn classify_form(form: &str, p: u64) -> PyResult<String> {
    use arithlab::cli::expr;
    let ast = expr::parse_expression(form).map_err(err)?;
    let f = expr::eval(&ast).map_err(err)?;
    let class = classify_form_rs(&RationalForm::new(f), p).map_err(err)?;
    Ok(class.status.as_str().to_string())
}

/// Form scan JSON report with the per-prime statuses and verdict.
#[pyfunction]
fn scan_form(form: &str, p_max: u64) -> PyResult<String> {
    use arithlab::cli::expr;
    if p_max < 2 {
        return Err(err("p_max must be >= 2"));
    }
    let ast = expr::parse_expression(form).map_err(err)?;
    let f = expr::eval(&ast).map_err(err)?;
    Ok(scan_form_rs(&RationalForm::new(f), p_max).to_json().to_string())
}

/// Degree, slope and mu_max bounds of a lattice given by its Gram matrix.
#[pyfunction]
#[pyo3(signature = (gram_json, effort = 1))]
fn lattice_slopes(gram_json: &str, effort: u32) -> PyResult<String> {
    let l = parse_gram(gram_json)?;
    let deg = arithmetic_degree(&l);
    let bounds = mu_max_bounds(&l, effort.max(1));
    Ok(serde_json::json!({
        "rank": l.rank(),
        "degree": deg.to_json(),
        "slope": slope(&l),
        "mu_max": bounds.to_json(),
    })
    .to_string())
}

/// Minkowski-guaranteed short vector (JSON record).
#[pyfunction]
fn minkowski_short_vector(gram_json: &str) -> PyResult<String> {
    let l = parse_gram(gram_json)?;
    Ok(minkowski_rs(&l).to_json().to_string())
}

/// Siegel solver: short nonzero integer kernel vector with both bounds.
#[pyfunction]
fn siegel_solve(rows: Vec<Vec<i64>>) -> PyResult<String> {
    let m = parse_int_matrix(rows)?;
    Ok(siegel_rs(&m).map_err(err)?.to_json().to_string())
}

/// Hermite-Pade detection; returns the rendered relation or None.
#[pyfunction]
fn detect_algebraic(coeffs: Vec<String>, d: usize, dy: usize) -> PyResult<Option<String>> {
    let y = parse_series(coeffs)?;
    Ok(hermite_pade_detect(&y, d, dy)
        .map_err(err)?
        .map(|rel| rel.render()))
}

/// Rational detection; returns the rendered function or None.
#[pyfunction]
fn detect_rational(coeffs: Vec<String>, d: usize) -> PyResult<Option<String>> {
    let y = parse_series(coeffs)?;
    let q = Rationals;
    Ok(arithlab::series::detect_rational(&y, d)
        .map_err(err)?
        .map(|(num, den)| render_fraction(&q, &num, &den)))
}

/// Expand the branch of P(x, y) = 0 through y(0) = y0; rows give the
/// coefficients of P_0(X), P_1(X), ... Returns "a/b" coefficient strings.
#[pyfunction]
fn expand_branch(rows: Vec<Vec<i64>>, y0: &str, order: usize) -> PyResult<Vec<String>> {
    let q = Rationals;
    let polys: Vec<Poly<Rationals>> = rows
        .into_iter()
        .map(|r| {
            Poly::from_coeffs(
                &q,
                r.into_iter()
                    .map(|c| BigRat::from_integer(BigInt::from(c)))
                    .collect(),
            )
        })
        .collect();
    if polys.iter().all(|p| p.is_zero()) {
        return Err(err("zero relation"));
    }
    let rel = AlgRelation::new(polys);
    let series = expand_algebraic_branch(&rel, &parse_rat(y0)?, order).map_err(err)?;
    Ok(series.coeffs().iter().map(|c| c.to_string()).collect())
}

/// Eisenstein denominator report (JSON).
#[pyfunction]
fn eisenstein(coeffs: Vec<String>) -> PyResult<String> {
    let y = parse_series(coeffs)?;
    Ok(eisenstein_report(&y).to_json().to_string())
}

/// Place-wise size invariants at the stored order (JSON).
#[pyfunction]
fn invariants(coeffs: Vec<String>, primes: Vec<u64>) -> PyResult<String> {
    let y = parse_series(coeffs)?;
    for &p in &primes {
        if !arithlab::field::is_prime_u64(p) {
            return Err(err(format!("{p} is not prime")));
        }
    }
    let n = y.order();
    if n == 0 {
        return Err(err("need at least order 1"));
    }
    Ok(invariants_estimate(&y, &primes, n).to_json().to_string())
}

/// Borel-Dwork-style verdict with detector cross-check (JSON).
#[pyfunction]
#[pyo3(signature = (coeffs, radius_hint = None))]
fn borel_dwork(coeffs: Vec<String>, radius_hint: Option<f64>) -> PyResult<String> {
    let y = parse_series(coeffs)?;
    Ok(borel_dwork_report(&y, radius_hint).to_json().to_string())
}

/// Complete-splitting density scan (JSON).
#[pyfunction]
fn kronecker_scan(poly: &str, p_max: u64) -> PyResult<String> {
    use arithlab::cli::expr;
    if p_max < 3 {
        return Err(err("p_max must be >= 3"));
    }
    let ast = expr::parse_expression(poly).map_err(err)?;
    let f = expr::eval_polynomial(&ast).map_err(err)?;
    let spec = arithlab::arith::NumberSpec::new(f).map_err(err)?;
    Ok(arithlab::arith::kronecker_scan(&spec, p_max).to_json().to_string())
}

/// Projective point count of [a1, a2, a3, a4, a6] over F_p.
#[pyfunction]
fn ec_count_points(curve: [i64; 5], p: u64) -> PyResult<u64> {
    let c = arithlab::arith::CurveSpec::new(curve).map_err(err)?;
    arithlab::arith::ec_count_points(&c, p).map_err(err)
}

/// (Hasse invariant, point count); the congruence #E = 1 - A mod p is
/// verified before returning.
#[pyfunction]
fn hasse_invariant(curve: [i64; 5], p: u64) -> PyResult<(u64, u64)> {
    let c = arithlab::arith::CurveSpec::new(curve).map_err(err)?;
    arithlab::arith::hasse_invariant(&c, p).map_err(err)
}

/// Point-count comparison scan of two curves (JSON).
#[pyfunction]
fn isogeny_scan(curve: [i64; 5], curve2: [i64; 5], p_max: u64) -> PyResult<String> {
    if p_max < 5 {
        return Err(err("p_max must be >= 5"));
    }
    let a = arithlab::arith::CurveSpec::new(curve).map_err(err)?;
    let b = arithlab::arith::CurveSpec::new(curve2).map_err(err)?;
    Ok(arithlab::arith::isogeny_scan(&a, &b, p_max).to_json().to_string())
}

#[pymodule]
fn arithlab_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse_ratfunc, m)?)?;
    m.add_function(wrap_pyfunction!(p_curvature, m)?)?;
    m.add_function(wrap_pyfunction!(scan_p_curvatures, m)?)?;
    m.add_function(wrap_pyfunction!(cartier_solve, m)?)?;
    m.add_function(wrap_pyfunction!(hypergeometric_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(classify_form, m)?)?;
    m.add_function(wrap_pyfunction!(scan_form, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_slopes, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski_short_vector, m)?)?;
    m.add_function(wrap_pyfunction!(siegel_solve, m)?)?;
    m.add_function(wrap_pyfunction!(detect_algebraic, m)?)?;
    m.add_function(wrap_pyfunction!(detect_rational, m)?)?;
    m.add_function(wrap_pyfunction!(expand_branch, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(borel_dwork, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker_scan, m)?)?;
    m.add_function(wrap_pyfunction!(ec_count_points, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(isogeny_scan, m)?)?;
    Ok(())
}
