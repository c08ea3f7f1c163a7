//! Threshold functions for choosing `K` under node deletion, and the exact
//! and bounded probabilities of cut events in the residual graph.
//!
//! All logarithms are natural. Everything here is generic over [`Scalar`];
//! binomial ratios are evaluated in log space so that `n` in the tens of
//! thousands does not overflow.
//!
//! | function | goal | deletion |
//! |----------|------|----------|
//! | [`r1`] | connectivity | `gamma = alpha * n` |
//! | [`r2`] | connectivity | `sqrt(n) <= gamma << n` |
//! | [`r3`] | fewer than `lambda` nodes outside the giant | `gamma << n` |
//! | [`r4`] | fewer than `lambda` nodes outside the giant | `gamma = alpha * n` |
//!
//! When `gamma < sqrt(n)`, `K >= 2` already gives connectivity.

use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;
use crate::Exact;

fn check_fraction<T: Scalar>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha < T::one() {
        Ok(())
    } else {
        Err(domain(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

fn ln2_plus_half<T: Scalar>() -> T {
    T::LN_2() + T::from_f64_lossy(0.5)
}

/// `log n / (1 - alpha - log alpha)`.
pub fn r1<T: Scalar>(alpha: T, n: usize) -> Result<T> {
    check_fraction(alpha)?;
    if n < 2 {
        return Err(domain(format!("n must be at least 2, got {n}")));
    }
    let denom = T::one() - alpha - alpha.ln();
    Ok(T::from_usize_lossy(n).ln() / denom)
}

/// `log gamma / (log 2 + 1/2)`.
///
/// Some published tables quote `1 + r2(gamma)` for this quantity (for
/// instance 6.79 at `gamma = 1000`); this function returns the bare ratio.
pub fn r2<T: Scalar>(gamma: usize) -> Result<T> {
    if gamma < 1 {
        return Err(domain("gamma must be at least 1"));
    }
    Ok(T::from_usize_lossy(gamma).ln() / ln2_plus_half())
}

/// `1 + log(1 + gamma/lambda) / (log 2 + 1/2)`.
pub fn r3<T: Scalar>(gamma: usize, lambda: usize) -> Result<T> {
    if lambda < 1 {
        return Err(domain("lambda must be at least 1"));
    }
    let ratio = T::from_usize_lossy(gamma) / T::from_usize_lossy(lambda);
    Ok(T::one() + ratio.ln_1p() / ln2_plus_half())
}

/// Denominator of [`r4`], `(1 - alpha)/2 - log((1 + alpha)/2)`; positive on `(0, 1)`.
pub fn r4_denominator<T: Scalar>(alpha: T) -> T {
    let two = T::from_f64_lossy(2.0);
    (T::one() - alpha) / two - ((T::one() + alpha) / two).ln()
}

/// `1 + [log(1 + n alpha / lambda) + alpha + log(1 - alpha)] / [(1 - alpha)/2 - log((1 + alpha)/2)]`.
pub fn r4<T: Scalar>(alpha: T, lambda: usize, n: usize) -> Result<T> {
    check_fraction(alpha)?;
    if lambda < 1 {
        return Err(domain("lambda must be at least 1"));
    }
    if n < 2 {
        return Err(domain(format!("n must be at least 2, got {n}")));
    }
    let denom = r4_denominator(alpha);
    assert!(
        denom > T::zero(),
        "r4 denominator must be positive, got {denom}"
    );
    let numer = (T::from_usize_lossy(n) * alpha / T::from_usize_lossy(lambda)).ln_1p()
        + alpha
        + (-alpha).ln_1p();
    Ok(T::one() + numer / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Goal {
    Connectivity,
    Giant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeletionLevel<T> {
    Count(usize),
    Fraction(T),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdQuery<T> {
    pub goal: Goal,
    pub n: usize,
    pub deletion: DeletionLevel<T>,
    /// Allowed number of nodes outside the giant component; giant goal only.
    pub lambda: Option<usize>,
    /// Added to the recommended `K`.
    pub slack: u32,
}

impl<T: Scalar> ThresholdQuery<T> {
    pub fn connectivity(n: usize, deletion: DeletionLevel<T>) -> Self {
        ThresholdQuery {
            goal: Goal::Connectivity,
            n,
            deletion,
            lambda: None,
            slack: 0,
        }
    }

    pub fn giant(n: usize, deletion: DeletionLevel<T>, lambda: usize) -> Self {
        ThresholdQuery {
            goal: Goal::Giant,
            n,
            deletion,
            lambda: Some(lambda),
            slack: 0,
        }
    }

    pub fn with_slack(mut self, slack: u32) -> Self {
        self.slack = slack;
        self
    }
}

/// Which scaling regime produced a recommendation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Connectivity, `gamma < sqrt(n)`: `K >= 2` suffices.
    SublinearSmall,
    /// Connectivity, `sqrt(n) <= gamma < n` given as a count: [`r2`].
    Sublinear,
    /// Connectivity, `gamma = alpha n`: [`r1`].
    Linear,
    /// Giant component, deletion given as a count: [`r3`].
    GiantSublinear,
    /// Giant component, deletion given as a fraction: [`r4`].
    GiantLinear,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::SublinearSmall => "sublinear-small",
            Regime::Sublinear => "sublinear",
            Regime::Linear => "linear",
            Regime::GiantSublinear => "giant-sublinear",
            Regime::GiantLinear => "giant-linear",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Regime::SublinearSmall => "connectivity, gamma < sqrt(n): K >= 2 suffices",
            Regime::Sublinear => "connectivity, sqrt(n) <= gamma = o(n): K > r2(gamma)",
            Regime::Linear => "connectivity, gamma = alpha*n: K > r1(alpha, n)",
            Regime::GiantSublinear => "giant component, gamma = o(n): K > r3(gamma, lambda)",
            Regime::GiantLinear => "giant component, gamma = alpha*n: K > r4(alpha, lambda, n)",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdOutcome<T> {
    pub threshold: T,
    pub recommended_k: u32,
    pub regime: Regime,
}

/// Evaluates the applicable threshold and the smallest integer `K` strictly
/// above it (plus `slack`). Connectivity answers are at least 2, giant answers at least 1.
///
/// Finite instances do not fall cleanly into asymptotic regimes; dispatch is
/// by the form of the input: a fraction selects the linear-deletion formulas,
/// a count selects the sublinear ones.
pub fn evaluate<T: Scalar>(query: &ThresholdQuery<T>) -> Result<ThresholdOutcome<T>> {
    let n = query.n;
    if n < 2 {
        return Err(Error::InvalidQuery(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let q = |e: Error| Error::InvalidQuery(e.to_string());
    let (threshold, regime, floor) = match (query.goal, query.deletion) {
        (Goal::Connectivity, DeletionLevel::Count(gamma)) => {
            if gamma >= n {
                return Err(Error::InvalidQuery(format!(
                    "gamma = {gamma} leaves no survivors of n = {n}"
                )));
            }
            if (gamma as u128) * (gamma as u128) < n as u128 {
                (T::zero(), Regime::SublinearSmall, 2)
            } else {
                (r2(gamma).map_err(q)?, Regime::Sublinear, 2)
            }
        }
        (Goal::Connectivity, DeletionLevel::Fraction(alpha)) => {
            (r1(alpha, n).map_err(q)?, Regime::Linear, 2)
        }
        (Goal::Giant, deletion) => {
            let lambda = query
                .lambda
                .ok_or_else(|| Error::InvalidQuery("giant goal requires lambda".into()))?;
            match deletion {
                DeletionLevel::Count(gamma) => {
                    if gamma >= n {
                        return Err(Error::InvalidQuery(format!(
                            "gamma = {gamma} leaves no survivors of n = {n}"
                        )));
                    }
                    (r3(gamma, lambda).map_err(q)?, Regime::GiantSublinear, 1)
                }
                DeletionLevel::Fraction(alpha) => {
                    (r4(alpha, lambda, n).map_err(q)?, Regime::GiantLinear, 1)
                }
            }
        }
    };
    if query.goal == Goal::Connectivity && query.lambda.is_some() {
        return Err(Error::InvalidQuery(
            "lambda only applies to the giant goal".into(),
        ));
    }
    let above = strictly_above(threshold)
        .ok_or_else(|| Error::InvalidQuery(format!("threshold {threshold} is not finite")))?;
    let k = above.max(floor).saturating_add(query.slack);
    Ok(ThresholdOutcome {
        threshold,
        recommended_k: k,
        regime,
    })
}

/// Smallest integer strictly greater than the applicable threshold, plus slack.
pub fn min_k<T: Scalar>(query: &ThresholdQuery<T>) -> Result<u32> {
    evaluate(query).map(|o| o.recommended_k)
}

fn strictly_above<T: Scalar>(t: T) -> Option<u32> {
    if !t.is_finite() {
        return None;
    }
    let f = t.floor().to_f64()?;
    if f < 0.0 {
        return Some(0);
    }
    if f >= u32::MAX as f64 {
        return None;
    }
    Some(f as u32 + 1)
}

fn check_cut_args(n: usize, k: usize, gamma: usize, r: usize) -> Result<()> {
    if k < 1 || k >= n {
        return Err(domain(format!(
            "k must satisfy 1 <= k <= n-1, got k = {k}, n = {n}"
        )));
    }
    if gamma + 2 > n {
        return Err(domain(format!(
            "gamma must be at most n-2, got gamma = {gamma}, n = {n}"
        )));
    }
    if r < 1 || r + gamma + 1 > n {
        return Err(domain(format!(
            "r must satisfy 1 <= r <= n-gamma-1 = {}, got {r}",
            n - gamma - 1
        )));
    }
    Ok(())
}

/// Exact probability that a fixed set of `r` survivors and the other
/// `n - gamma - r` survivors pick no one across the split:
///
/// `(C(gamma+r-1, k)/C(n-1, k))^r * (C(n-r-1, k)/C(n-1, k))^(n-gamma-r)`.
pub fn cut_event_probability<T: Scalar>(n: usize, k: usize, gamma: usize, r: usize) -> Result<T> {
    check_cut_args(n, k, gamma, r)?;
    if gamma + r - 1 < k {
        return Ok(T::zero());
    }
    let base = T::ln_choose(n - 1, k);
    let inside = T::ln_choose(gamma + r - 1, k) - base;
    let outside = T::ln_choose(n - r - 1, k) - base;
    let ln_p = T::from_usize_lossy(r) * inside + T::from_usize_lossy(n - gamma - r) * outside;
    Ok(ln_p.exp().min(T::one()))
}

/// [`cut_event_probability`] as an exact rational.
pub fn cut_event_probability_exact(n: usize, k: usize, gamma: usize, r: usize) -> Result<Exact> {
    check_cut_args(n, k, gamma, r)?;
    let c = |m: usize| binomial(BigUint::from(m), BigUint::from(k));
    let outside = n - gamma - r;
    let numer = Pow::pow(c(gamma + r - 1), r) * Pow::pow(c(n - r - 1), outside);
    let denom = Pow::pow(c(n - 1), r + outside);
    if numer.is_zero() {
        return Ok(Exact::new(BigUint::zero(), BigUint::one()));
    }
    Ok(Exact::new(numer, denom))
}

fn ln_cut_bound<T: Scalar>(n: usize, k: usize, gamma: usize, r: usize) -> T {
    let nf = T::from_usize_lossy(n);
    let kf = T::from_usize_lossy(k);
    let rf = T::from_usize_lossy(r);
    let inside = (T::from_usize_lossy(gamma + r) / nf).ln();
    let outside = (-rf / nf).ln_1p();
    rf * kf * inside + kf * T::from_usize_lossy(n - gamma - r) * outside
}

/// `((gamma+r)/n)^(r k) * ((n-r)/n)^(k (n-gamma-r))`, an upper bound on
/// [`cut_event_probability`].
pub fn cut_event_upper_bound<T: Scalar>(n: usize, k: usize, gamma: usize, r: usize) -> Result<T> {
    check_cut_args(n, k, gamma, r)?;
    Ok(ln_cut_bound::<T>(n, k, gamma, r).exp().min(T::one()))
}

/// Union bound on the probability that the residual graph has a cut, i.e. is disconnected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<T> {
    pub n: usize,
    pub k: usize,
    pub gamma: usize,
    /// `min(1, sum of terms)`.
    pub pz_bound: T,
    /// Summand for `r = 1, 2, ...`, when requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_r_terms: Option<Vec<T>>,
    /// The unclamped sum exceeded 1.
    pub clamped: bool,
}

/// `sum_{r=1}^{floor((n-gamma)/2)} C(n-gamma, r) ((gamma+r)/n)^(r k) ((n-r)/n)^(k (n-gamma-r))`,
/// summed in log space and clamped at 1.
pub fn union_bound_pz<T: Scalar>(
    n: usize,
    k: usize,
    gamma: usize,
    with_terms: bool,
) -> Result<BoundReport<T>> {
    if k < 1 {
        return Err(domain("k must be at least 1"));
    }
    if gamma + 2 > n {
        return Err(domain(format!(
            "gamma must be at most n-2, got gamma = {gamma}, n = {n}"
        )));
    }
    let m = n - gamma;
    let logs: Vec<T> = (1..=m / 2)
        .map(|r| T::ln_choose(m, r) + ln_cut_bound::<T>(n, k, gamma, r))
        .collect();
    let peak = logs.iter().copied().fold(T::neg_infinity(), T::max);
    let scaled: T = logs
        .iter()
        .map(|&l| (l - peak).exp())
        .fold(T::zero(), |a, b| a + b);
    let ln_total = peak + scaled.ln();
    let clamped = ln_total > T::zero();
    let pz_bound = if clamped {
        T::one()
    } else {
        ln_total.exp().min(T::one())
    };
    Ok(BoundReport {
        n,
        k,
        gamma,
        pz_bound,
        per_r_terms: with_terms.then(|| logs.iter().map(|l| l.exp()).collect()),
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_traits::ToPrimitive;

    // Reference values below were evaluated independently at 50 significant
    // digits and rounded.

    #[test]
    fn r1_values() {
        assert_abs_diff_eq!(r1(0.5f64, 5000).unwrap(), 7.138_426_281_5, epsilon = 1e-9);
        assert_abs_diff_eq!(r1(0.1f64, 5000).unwrap(), 2.659_474_438_3, epsilon = 1e-9);
        assert!(r1(0.1f64, 5000).unwrap() < r1(0.8f64, 5000).unwrap());
        assert_abs_diff_eq!(r1(0.5f32, 5000).unwrap(), 7.1384, epsilon = 1e-3);
        assert!(matches!(r1(0.0f64, 10), Err(Error::Domain(_))));
        assert!(matches!(r1(1.0f64, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn r2_values() {
        assert_eq!(r2::<f64>(1).unwrap(), 0.0);
        assert_abs_diff_eq!(r2::<f64>(1000).unwrap(), 5.789_524_873_0, epsilon = 1e-9);
        assert_abs_diff_eq!(r2::<f64>(2000).unwrap(), 6.370_465_088_8, epsilon = 1e-9);
        assert!(r2::<f64>(0).is_err());
    }

    #[test]
    fn r3_values() {
        assert_eq!(r3::<f64>(0, 100).unwrap(), 1.0);
        assert_abs_diff_eq!(
            r3::<f64>(250, 100).unwrap(),
            2.049_965_158_5,
            epsilon = 1e-9
        );
        assert!(r3::<f64>(10, 0).is_err());
        // lambda = beta * n with gamma = o(n): tends to 1
        let at = |n: usize| r3::<f64>((n as f64).sqrt() as usize, n / 10).unwrap();
        assert!(at(10_000) > at(1_000_000) && at(1_000_000) > at(100_000_000));
        assert!(at(100_000_000) - 1.0 < 0.01);
    }

    #[test]
    fn r4_values() {
        assert_abs_diff_eq!(
            r4(0.4f64, 200, 5000).unwrap(),
            4.482_803_280_6,
            epsilon = 1e-9
        );
        assert!(r4(0.4f64, 100, 5000).unwrap() > r4(0.4f64, 200, 5000).unwrap());
        let tiny = r4(1e-9f64, 1_000_000, 100).unwrap();
        assert!((tiny - 1.0).abs() < 1e-6, "{tiny}");
        assert!(r4(1.2f64, 10, 100).is_err());
    }

    #[test]
    fn min_k_examples() {
        let q = ThresholdQuery::<f64>::connectivity(50_000, DeletionLevel::Count(100));
        let o = evaluate(&q).unwrap();
        assert_eq!(o.recommended_k, 2);
        assert_eq!(o.regime, Regime::SublinearSmall);

        let q = ThresholdQuery::connectivity(5000, DeletionLevel::Fraction(0.5f64));
        assert_eq!(min_k(&q).unwrap(), 8);
        assert_eq!(min_k(&q.with_slack(2)).unwrap(), 10);

        let q = ThresholdQuery::<f64>::giant(50_000, DeletionLevel::Count(250), 250);
        let o = evaluate(&q).unwrap();
        assert_abs_diff_eq!(o.threshold, 1.580_940_215_8, epsilon = 1e-9);
        assert_eq!(o.recommended_k, 2);
        assert_eq!(o.regime, Regime::GiantSublinear);

        let q = ThresholdQuery::<f64>::connectivity(50_000, DeletionLevel::Count(1000));
        let o = evaluate(&q).unwrap();
        assert_eq!((o.regime, o.recommended_k), (Regime::Sublinear, 6));

        let q = ThresholdQuery::giant(5000, DeletionLevel::Fraction(0.4f64), 200);
        let o = evaluate(&q).unwrap();
        assert_eq!((o.regime, o.recommended_k), (Regime::GiantLinear, 5));
    }

    #[test]
    fn min_k_floors() {
        // giant answers may be 1, connectivity answers never below 2
        let q = ThresholdQuery::<f64>::giant(1000, DeletionLevel::Count(0), 10);
        assert_eq!(min_k(&q).unwrap(), 2); // threshold exactly 1
        let q = ThresholdQuery::giant(100, DeletionLevel::Fraction(0.5f64), 1000);
        assert!(evaluate(&q).unwrap().threshold < 1.0);
        assert_eq!(min_k(&q).unwrap(), 1);
        let q = ThresholdQuery::connectivity(100, DeletionLevel::Fraction(0.01f64));
        assert!(min_k(&q).unwrap() >= 2);
    }

    #[test]
    fn min_k_rejects_inconsistent_queries() {
        let mut q = ThresholdQuery::<f64>::giant(1000, DeletionLevel::Count(10), 5);
        q.lambda = None;
        assert!(matches!(min_k(&q), Err(Error::InvalidQuery(_))));
        let mut q = ThresholdQuery::<f64>::connectivity(1000, DeletionLevel::Count(10));
        q.lambda = Some(3);
        assert!(matches!(min_k(&q), Err(Error::InvalidQuery(_))));
        let q = ThresholdQuery::<f64>::connectivity(1000, DeletionLevel::Count(1000));
        assert!(matches!(min_k(&q), Err(Error::InvalidQuery(_))));
        let q = ThresholdQuery::connectivity(1000, DeletionLevel::Fraction(1.5f64));
        assert!(matches!(min_k(&q), Err(Error::InvalidQuery(_))));
        let q = ThresholdQuery::<f64>::giant(1000, DeletionLevel::Count(10), 0);
        assert!(matches!(min_k(&q), Err(Error::InvalidQuery(_))));
    }

    #[test]
    fn cut_examples() {
        assert_eq!(cut_event_probability::<f64>(10, 5, 0, 1).unwrap(), 0.0);
        assert_abs_diff_eq!(
            cut_event_probability::<f64>(4, 1, 1, 1).unwrap(),
            4.0 / 27.0,
            epsilon = 1e-12
        );
        assert_eq!(
            cut_event_probability_exact(4, 1, 1, 1).unwrap(),
            Exact::new(4u32.into(), 27u32.into())
        );
        assert_abs_diff_eq!(
            cut_event_upper_bound::<f64>(4, 1, 1, 1).unwrap(),
            9.0 / 32.0,
            epsilon = 1e-12
        );
        let b = cut_event_upper_bound::<f64>(10, 5, 0, 1).unwrap();
        assert_abs_diff_eq!(b, 8.727_963_568_1e-8, epsilon = 1e-16);
        assert!(cut_event_probability::<f64>(10, 5, 0, 0).is_err());
        assert!(cut_event_probability::<f64>(10, 5, 2, 8).is_err());
        assert!(cut_event_upper_bound::<f64>(10, 10, 2, 1).is_err());
    }

    #[test]
    fn exact_and_log_space_agree_and_bound_dominates() {
        for n in 2..=12 {
            for k in 1..=3usize.min(n - 1) {
                for gamma in 0..=3usize {
                    if gamma + 2 > n {
                        continue;
                    }
                    for r in 1..n - gamma {
                        let exact = cut_event_probability_exact(n, k, gamma, r).unwrap();
                        let ex = exact.numer().to_f64().unwrap() / exact.denom().to_f64().unwrap();
                        let approx = cut_event_probability::<f64>(n, k, gamma, r).unwrap();
                        let bound = cut_event_upper_bound::<f64>(n, k, gamma, r).unwrap();
                        assert!(
                            (ex - approx).abs() <= 1e-12 + 1e-9 * ex,
                            "({n},{k},{gamma},{r})"
                        );
                        assert!((0.0..=1.0).contains(&ex));
                        assert!(
                            ex <= bound * (1.0 + 1e-12),
                            "({n},{k},{gamma},{r}): {ex} > {bound}"
                        );
                        assert!(bound <= 1.0);
                    }
                }
            }
        }
    }

    #[test]
    fn union_bound_golden() {
        // independent 50-digit summation: 4.2547431088348225752e-5
        let b = union_bound_pz::<f64>(5000, 15, 2500, false).unwrap();
        assert!(b.pz_bound < 0.05);
        assert!(!b.clamped);
        assert_abs_diff_eq!(b.pz_bound, 4.254_743_108_834_823e-5, epsilon = 1e-15);
        assert!(b.per_r_terms.is_none());
    }

    #[test]
    fn union_bound_saturates() {
        // unclamped sum is about 5.117e8
        let b = union_bound_pz::<f64>(100, 1, 50, true).unwrap();
        assert_eq!(b.pz_bound, 1.0);
        assert!(b.clamped);
        let terms = b.per_r_terms.unwrap();
        assert_eq!(terms.len(), 25);
        let raw: f64 = terms.iter().sum();
        assert!((raw / 511_698_877.595_612_9 - 1.0).abs() < 1e-9, "{raw}");
    }

    #[test]
    fn union_bound_monotone_in_k() {
        for &(n, gamma) in &[(200usize, 0usize), (200, 100), (1000, 10), (50, 48)] {
            let mut prev = f64::INFINITY;
            for k in 1..12 {
                let v = union_bound_pz::<f64>(n, k, gamma, false).unwrap().pz_bound;
                assert!(v <= prev, "n={n} gamma={gamma} k={k}");
                prev = v;
            }
        }
    }

    #[test]
    fn union_bound_f32_matches_f64() {
        let a = union_bound_pz::<f32>(5000, 15, 2500, false)
            .unwrap()
            .pz_bound as f64;
        let b = union_bound_pz::<f64>(5000, 15, 2500, false)
            .unwrap()
            .pz_bound;
        assert!((a / b - 1.0).abs() < 0.05, "{a} vs {b}");
    }

    #[test]
    fn union_bound_domain() {
        assert!(union_bound_pz::<f64>(10, 0, 0, false).is_err());
        assert!(union_bound_pz::<f64>(10, 2, 9, false).is_err());
        assert!(union_bound_pz::<f64>(10, 2, 8, false).is_ok());
    }

    #[test]
    fn bound_report_json() {
        let b = union_bound_pz::<f64>(20, 2, 3, false).unwrap();
        let v = serde_json::to_value(&b).unwrap();
        assert!(v.get("per_r_terms").is_none());
        for key in ["n", "k", "gamma", "pz_bound", "clamped"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
