//! Place-wise size invariants of a power series, Eisenstein denominator
//! analysis, and the combined Borel-Dwork-style verdict.
//!
//! The underlying quantities are limsups; at finite truncation only proxies
//! exist. Every output is labelled by the order it was computed at, and the
//! windowed estimates (window [N/2, N]) are reported next to the full
//! prefix values rather than extrapolated.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeSet;

use crate::field::{is_prime_u64, padic_valuation, primes_up_to, BigRat};
use crate::numeric::log_plus_abs;

use super::SeriesApprox;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Archimedean,
}

impl Place {
    pub fn label(&self) -> String {
        match self {
            Place::Prime(p) => p.to_string(),
            Place::Archimedean => "inf".to_string(),
        }
    }
}

/// log^+ |a|_v for one coefficient.
fn log_plus_at(a: &BigRat, place: &Place) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    match place {
        Place::Archimedean => log_plus_abs(a),
        Place::Prime(p) => {
            let v = padic_valuation(a, *p);
            if v < 0 {
                (-v) as f64 * (*p as f64).ln()
            } else {
                0.0
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlaceEstimate {
    pub place: Place,
    /// (1/N) sup_{m<=N} log^+ |a_m|_v over the full prefix.
    pub rho_prefix: f64,
    /// max over the window [N/2, N] of (1/m) log^+ |a_m|_v.
    pub rho_windowed: f64,
    /// exp(-rho_windowed): the v-adic radius estimate.
    pub radius_estimate: f64,
}

#[derive(Debug, Clone)]
pub struct InvariantsEstimate {
    pub order: usize,
    pub places: Vec<PlaceEstimate>,
    pub rho_s_prefix: f64,
    pub rho_s_windowed: f64,
}

impl InvariantsEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "places": self.places.iter().map(|p| json!({
                "place": p.place.label(),
                "rho_prefix": p.rho_prefix,
                "rho_windowed": p.rho_windowed,
                "radius_estimate": p.radius_estimate,
            })).collect::<Vec<_>>(),
            "rho_s_prefix": self.rho_s_prefix,
            "rho_s_windowed": self.rho_s_windowed,
            "label": format!("estimate at order {}", self.order),
        })
    }
}

/// Per-place size estimates at order `n` over the listed primes plus the
/// archimedean place.
pub fn invariants_estimate(y: &SeriesApprox, primes: &[u64], n: usize) -> InvariantsEstimate {
    assert!(n <= y.order(), "estimate order exceeds the truncation");
    assert!(n >= 1);
    let mut places: Vec<Place> = primes.iter().map(|&p| Place::Prime(p)).collect();
    places.push(Place::Archimedean);
    let window_lo = n.div_ceil(2);
    let estimates: Vec<PlaceEstimate> = places
        .iter()
        .map(|place| {
            let mut prefix_sup: f64 = 0.0;
            let mut windowed: f64 = 0.0;
            for m in 0..=n {
                let lp = log_plus_at(y.coeff(m), place);
                prefix_sup = prefix_sup.max(lp);
                if m >= window_lo && m >= 1 {
                    windowed = windowed.max(lp / m as f64);
                }
            }
            PlaceEstimate {
                place: *place,
                rho_prefix: prefix_sup / n as f64,
                rho_windowed: windowed,
                radius_estimate: (-windowed).exp(),
            }
        })
        .collect();
    InvariantsEstimate {
        order: n,
        rho_s_prefix: estimates.iter().map(|e| e.rho_prefix).sum(),
        rho_s_windowed: estimates.iter().map(|e| e.rho_windowed).sum(),
        places: estimates,
    }
}

/// Prime support of all coefficient denominators up to the stored order.
/// Factoring is trial division by sieved primes plus a primality check on
/// the cofactor; a composite cofactor beyond the sieve is reported as-is.
pub fn denominator_support(y: &SeriesApprox) -> (BTreeSet<u64>, bool) {
    const SIEVE_BOUND: u64 = 100_000;
    let mut lcm = BigInt::one();
    for c in y.coeffs() {
        lcm = num_integer::Integer::lcm(&lcm, c.denom());
    }
    let mut support = BTreeSet::new();
    let mut fully_factored = true;
    if lcm.is_one() {
        return (support, true);
    }
    for q in primes_up_to(SIEVE_BOUND) {
        let qb = BigInt::from(q);
        if (&lcm % &qb).is_zero() {
            support.insert(q);
            while (&lcm % &qb).is_zero() {
                lcm /= &qb;
            }
            if lcm.is_one() {
                break;
            }
        }
    }
    if !lcm.is_one() {
        match lcm.to_u64() {
            Some(c) if is_prime_u64(c) => {
                support.insert(c);
            }
            _ => fully_factored = false,
        }
    }
    (support, fully_factored)
}

/// Minimal exponent e with v_q(a_n) + (n+1) e >= 0 for all n <= order.
fn eisenstein_exponent(y: &SeriesApprox, q: u64, order: usize) -> u32 {
    let mut e = 0u32;
    for n in 0..=order.min(y.order()) {
        let a = y.coeff(n);
        if a.is_zero() {
            continue;
        }
        let v = padic_valuation(a, q);
        if v < 0 {
            let need = (-v) as u64;
            let denom = n as u64 + 1;
            let cand = need.div_ceil(denom) as u32;
            e = e.max(cand);
        }
    }
    e
}

#[derive(Debug, Clone)]
pub struct EisensteinPrime {
    pub q: u64,
    pub exponent: u32,
    pub exponent_at_half: u32,
}

#[derive(Debug, Clone)]
pub struct EisensteinReport {
    pub order: usize,
    /// Minimal A with a_n A^(n+1) integral for all n <= order.
    pub a: BigInt,
    pub support: Vec<EisensteinPrime>,
    pub fully_factored: bool,
    /// Some exponent (or the support itself) grew between order N/2 and N:
    /// the non-algebraic signature.
    pub violated: bool,
    pub verdict: String,
}

impl EisensteinReport {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "a": self.a.to_string(),
            "support": self.support.iter().map(|s| json!({
                "prime": s.q,
                "exponent": s.exponent,
                "exponent_at_half_order": s.exponent_at_half,
            })).collect::<Vec<_>>(),
            "fully_factored": self.fully_factored,
            "violated": self.violated,
            "verdict": self.verdict,
        })
    }
}

/// Minimal Eisenstein constant at the stored order, with the growth flag.
pub fn eisenstein_report(y: &SeriesApprox) -> EisensteinReport {
    let order = y.order();
    let (support, fully_factored) = denominator_support(y);
    let half = order / 2;
    let mut primes_out = Vec::new();
    let mut a = BigInt::one();
    let mut violated = false;
    for &q in &support {
        let e_full = eisenstein_exponent(y, q, order);
        let e_half = eisenstein_exponent(y, q, half);
        if e_full > e_half {
            violated = true;
        }
        if e_full > 0 {
            a *= BigInt::from(q).pow(e_full);
            // verify the defining property and minimality at this prime
            for n in 0..=order {
                let c = y.coeff(n);
                if c.is_zero() {
                    continue;
                }
                let v = padic_valuation(c, q);
                assert!(
                    v + (n as i64 + 1) * e_full as i64 >= 0,
                    "Eisenstein exponent fails its defining property"
                );
            }
            assert!(
                (0..=order).any(|n| {
                    let c = y.coeff(n);
                    !c.is_zero()
                        && padic_valuation(c, q) + (n as i64 + 1) * (e_full as i64 - 1) < 0
                }),
                "Eisenstein exponent is not minimal"
            );
        }
        primes_out.push(EisensteinPrime {
            q,
            exponent: e_full,
            exponent_at_half: e_half,
        });
    }
    let verdict = if violated {
        "Eisenstein property violated (non-algebraic signature)".to_string()
    } else if a.is_one() {
        "integral coefficients (A = 1)".to_string()
    } else {
        format!("Eisenstein constant A = {a} at order {order}")
    };
    EisensteinReport {
        order,
        a,
        support: primes_out,
        fully_factored,
        violated,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BdHypothesis {
    SatisfiedEmpirically,
    Violated,
    Inconclusive,
}

impl BdHypothesis {
    fn as_str(&self) -> &'static str {
        match self {
            BdHypothesis::SatisfiedEmpirically => "satisfied-empirically",
            BdHypothesis::Violated => "violated (tau != 0 signature)",
            BdHypothesis::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BorelDworkReport {
    pub order: usize,
    pub product_estimate: f64,
    pub arch_radius: f64,
    pub arch_radius_from_hint: bool,
    /// sigma-hat over support primes above each threshold.
    pub tau_proxies: Vec<(u64, f64)>,
    pub hypothesis: BdHypothesis,
    pub prediction: String,
    pub rational_found: Option<(String, usize)>,
    pub algebraic_found: Option<(String, usize, usize)>,
    pub verdict: String,
}

impl BorelDworkReport {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "product_estimate": self.product_estimate,
            "arch_radius": self.arch_radius,
            "arch_radius_from_hint": self.arch_radius_from_hint,
            "tau_proxies": self.tau_proxies.iter().map(|(b, t)| json!({"above": b, "sigma": t})).collect::<Vec<_>>(),
            "hypothesis": self.hypothesis.as_str(),
            "prediction": self.prediction,
            "rational_found": self.rational_found.as_ref().map(|(s, d)| json!({"function": s, "d": d})),
            "algebraic_found": self.algebraic_found.as_ref().map(|(s, d, dy)| json!({"relation": s, "d": d, "D": dy})),
            "verdict": self.verdict,
        })
    }
}

/// Combine radius estimates, the tau-growth signature, and the detectors
/// into one verdict record. The archimedean radius cannot be recovered from
/// coefficients alone (it is a meromorphic continuation radius), hence the
/// explicit hint.
pub fn borel_dwork_report(y: &SeriesApprox, arch_radius_hint: Option<f64>) -> BorelDworkReport {
    let order = y.order();
    let (support, _) = denominator_support(y);
    let support_vec: Vec<u64> = support.iter().copied().collect();
    let inv = invariants_estimate(y, &support_vec, order);
    let arch_windowed = inv
        .places
        .iter()
        .find(|p| p.place == Place::Archimedean)
        .map(|p| p.radius_estimate)
        .unwrap_or(1.0);
    let (arch_radius, from_hint) = match arch_radius_hint {
        Some(r) => (r, true),
        None => (arch_windowed, false),
    };
    let finite_product: f64 = inv
        .places
        .iter()
        .filter(|p| p.place != Place::Archimedean)
        .map(|p| p.radius_estimate)
        .product();
    let product_estimate = arch_radius * finite_product;

    let tau_proxies: Vec<(u64, f64)> = [2u64, 8, 32, 128]
        .iter()
        .map(|&b| {
            let sigma: f64 = inv
                .places
                .iter()
                .filter(|p| matches!(p.place, Place::Prime(q) if q > b))
                .map(|p| p.rho_prefix)
                .sum();
            (b, sigma)
        })
        .collect();

    // growth of the Eisenstein data between N/2 and N is the tau != 0 signature
    let eis = eisenstein_report(y);
    let hypothesis = if eis.violated {
        BdHypothesis::Violated
    } else if product_estimate > 1.0 {
        BdHypothesis::SatisfiedEmpirically
    } else {
        BdHypothesis::Inconclusive
    };

    // cross-check with the detectors at escalating degrees
    let mut rational_found = None;
    for d in 1..=6usize {
        if 2 * (d + 1) + 2 > order {
            break;
        }
        if let Ok(Some((num, den))) = super::detect_rational(y, d) {
            let q = crate::field::Rationals;
            let rendered = if den.is_one(&q) {
                num.render(&q, "x")
            } else {
                format!("({})/({})", num.render(&q, "x"), den.render(&q, "x"))
            };
            rational_found = Some((rendered, d));
            break;
        }
    }
    let mut algebraic_found = None;
    'outer: for dy in 1..=4usize {
        for d in 1..=4usize {
            if 2 * (d + 1) * (dy + 1) > order {
                continue;
            }
            if let Ok(Some(rel)) = super::hermite_pade_detect(y, d, dy) {
                algebraic_found = Some((rel.render(), d, dy));
                break 'outer;
            }
        }
    }

    let prediction = match (&hypothesis, from_hint) {
        (BdHypothesis::SatisfiedEmpirically, true) => "predicts rational".to_string(),
        (BdHypothesis::SatisfiedEmpirically, false) => {
            "predicts algebraic (radii from coefficients only)".to_string()
        }
        (BdHypothesis::Violated, _) => "no prediction (hypotheses violated)".to_string(),
        (BdHypothesis::Inconclusive, _) => "no prediction (product <= 1)".to_string(),
    };
    let verdict = format!(
        "{}; {}; cross-check: {}",
        hypothesis.as_str(),
        prediction,
        match (&rational_found, &algebraic_found) {
            (Some((f, d)), _) => format!("rational at d = {d}: {f}"),
            (None, Some((r, d, dy))) => format!("algebraic at (d, D) = ({d}, {dy}): {r}"),
            (None, None) => "no relation found".to_string(),
        }
    );
    BorelDworkReport {
        order,
        product_estimate,
        arch_radius,
        arch_radius_from_hint: from_hint,
        tau_proxies,
        hypothesis,
        prediction,
        rational_found,
        algebraic_found,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use crate::series::{expand_algebraic_branch, AlgRelation};

    fn exp_series(order: usize) -> SeriesApprox {
        let mut coeffs = vec![rat_int(1)];
        let mut fact = rat_int(1);
        for n in 1..=order as i64 {
            fact = fact * rat_int(n);
            coeffs.push(fact.clone().recip());
        }
        SeriesApprox::new(coeffs)
    }

    #[test]
    fn geometric_invariants() {
        let y = SeriesApprox::new(vec![rat_int(1); 41]);
        let inv = invariants_estimate(&y, &[2, 3, 5], 40);
        for p in &inv.places {
            assert_eq!(p.rho_prefix, 0.0, "{:?}", p.place);
        }
        let arch = inv
            .places
            .iter()
            .find(|p| p.place == Place::Archimedean)
            .unwrap();
        assert!((arch.radius_estimate - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exp_invariants_follow_legendre() {
        // v_p(n!) ~ n/(p-1): rho_2 ~ log 2, rho_3 ~ (1/2) log 3
        let y = exp_series(500);
        let inv = invariants_estimate(&y, &[2, 3], 500);
        let rho2 = inv.places[0].rho_prefix;
        let rho3 = inv.places[1].rho_prefix;
        assert!((rho2 - 2f64.ln()).abs() < 0.03, "rho2 = {rho2}");
        assert!((rho3 - 0.5 * 3f64.ln()).abs() < 0.03, "rho3 = {rho3}");
    }

    #[test]
    fn catalan_radius() {
        // c_n ~ 4^n n^(-3/2): R_inf ~ 1/4 within 10% at order 400.
        // Coefficients from the convolution recurrence c_{n+1} = sum c_i c_{n-i}.
        let mut cat: Vec<BigInt> = vec![BigInt::one()];
        for n in 0..400usize {
            let next: BigInt = (0..=n).map(|i| &cat[i] * &cat[n - i]).sum();
            cat.push(next);
        }
        let y = SeriesApprox::new(cat.into_iter().map(BigRat::from_integer).collect());
        let inv = invariants_estimate(&y, &[2, 3, 5], 400);
        for pl in &inv.places {
            if let Place::Prime(_) = pl.place {
                assert_eq!(pl.rho_prefix, 0.0);
            }
        }
        let arch = inv
            .places
            .iter()
            .find(|p| p.place == Place::Archimedean)
            .unwrap();
        assert!(
            (arch.radius_estimate - 0.25).abs() < 0.025,
            "radius = {}",
            arch.radius_estimate
        );
    }

    #[test]
    fn eisenstein_sqrt() {
        let p = AlgRelation::from_integer_rows(vec![vec![-1, -1], vec![0], vec![1]]);
        let y = expand_algebraic_branch(&p, &rat_int(1), 50).unwrap();
        let report = eisenstein_report(&y);
        assert_eq!(report.a, BigInt::from(4));
        assert!(!report.violated);
        // A = 2 fails at n = 4: a_4 = -5/128 needs 2^(2*5) = 4^5
        assert_eq!(report.support.len(), 1);
        assert_eq!(report.support[0].q, 2);
        assert_eq!(report.support[0].exponent, 2);
    }

    #[test]
    fn eisenstein_integer_series() {
        let y = SeriesApprox::new((0..=30).map(|n| rat_int(n * n + 1)).collect());
        let report = eisenstein_report(&y);
        assert_eq!(report.a, BigInt::one());
        assert!(!report.violated);
    }

    #[test]
    fn eisenstein_exponential_flagged() {
        let report = eisenstein_report(&exp_series(30));
        assert!(report.violated);
        assert!(report.verdict.contains("violated"));
        // support keeps growing: primes up to 30 all appear
        assert!(report.support.iter().any(|s| s.q == 29));
    }

    #[test]
    fn borel_dwork_geometric() {
        let y = SeriesApprox::new(vec![rat_int(1); 13]);
        let report = borel_dwork_report(&y, Some(10.0));
        assert_eq!(report.hypothesis, BdHypothesis::SatisfiedEmpirically);
        assert!(report.prediction.contains("rational"));
        assert!(report.rational_found.is_some());
    }

    #[test]
    fn borel_dwork_catalan() {
        let p = AlgRelation::from_integer_rows(vec![vec![1], vec![-1], vec![0, 1]]);
        let y = expand_algebraic_branch(&p, &rat_int(1), 30).unwrap();
        let report = borel_dwork_report(&y, Some(0.25));
        assert_eq!(report.hypothesis, BdHypothesis::Inconclusive);
        // the criterion is sufficient, not necessary: detector still succeeds
        let (rel, d, dy) = report.algebraic_found.expect("relation");
        assert_eq!((d, dy), (1, 2));
        assert_eq!(rel, "X*Y^2 - Y + 1");
        assert!(report.rational_found.is_none());
    }

    #[test]
    fn borel_dwork_exponential() {
        let report = borel_dwork_report(&exp_series(60), Some(f64::INFINITY));
        assert_eq!(report.hypothesis, BdHypothesis::Violated);
        assert!(report.rational_found.is_none());
        assert!(report.algebraic_found.is_none());
    }

    #[test]
    fn support_detection() {
        let y = SeriesApprox::new(vec![rat_int(1), rat(1, 6), rat(3, 20)]);
        let (support, ok) = denominator_support(&y);
        assert!(ok);
        assert_eq!(support.into_iter().collect::<Vec<_>>(), vec![2, 3, 5]);
    }
}
