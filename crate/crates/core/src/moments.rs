//! Closed-form moments of the cherry count `C_n` of a uniformly random
//! labelled tree, in exact rational arithmetic and in overflow-free floating
//! point.
//!
//! Writing `ε(i1, i2, j)` for the indicator that `(i1, i2, j)` is a cherry:
//!
//! * `E[ε] = (n-3)^(n-4) / n^(n-2)` for distinct `i1, i2, j`: glue a cherry
//!   onto any of the `n-3` vertices of any tree on the remaining labels.
//! * `E[ε ε'] = (n-6)^(n-6) / n^(n-2)` for two cherries on six distinct
//!   labels, `E[ε]` for the same cherry, and zero otherwise.
//! * `E[C_n] = n(n-1)(n-2)/2 · E[ε]`.
//! * `E[C_n²] = (n!/(n-6)!/4 · (n-6)^(n-6) + n(n-1)(n-2)/2 · (n-3)^(n-4)) / n^(n-2)`:
//!   ordered pairs of distinct cherries plus the diagonal `E[ε²] = E[ε]`,
//!   which is counted once.
//!
//! An often-quoted form of the second moment has `n(n-1)(n-2)(n-3)^(n-4)`
//! as its second term, counting the diagonal twice; it is kept as
//! [`published_second_moment`] for comparison and disagrees with exhaustive
//! enumeration (at `n = 7` it gives a total of 14 700 where the trees give
//! 7 980).
//!
//! The second-moment formula is only used for `n >= 7`; at `n = 6` its
//! `0^0` term is ambiguous and the report leaves those fields empty.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

fn pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(big(base), exp)
}

/// `n^(n-2)` as an exact integer.
pub fn cayley(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::one();
    }
    num_traits::pow(BigUint::from(n), n - 2)
}

fn require(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        Err(Error::InvalidArgument(format!(
            "{what} requires n >= {min}, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Number of labelled trees on `n` vertices with a cherry at one fixed
/// triple of distinct labels: `(n-3)^(n-4)`.
pub fn trees_with_cherry_at(n: usize) -> Result<BigInt> {
    require(n, 4, "a cherry")?;
    Ok(pow(n - 3, n - 4))
}

/// `E[ε(i1, i2, j)]` for pairwise distinct `i1, i2, j`.
pub fn expectation_epsilon(n: usize) -> Result<BigRational> {
    Ok(BigRational::new(
        trees_with_cherry_at(n)?,
        BigInt::from(cayley(n)),
    ))
}

/// How two index triples `(i1, i2, j1)` and `(i3, i4, j2)` relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverlapCase {
    /// All six labels are different.
    AllDistinct,
    /// The same cherry: `j1 = j2`, `{i1, i2} = {i3, i4}`, with `i1, i2, j1`
    /// distinct.
    IdenticalCherry,
    /// Any other pattern.
    Other,
}

impl OverlapCase {
    pub fn of(first: [usize; 3], second: [usize; 3]) -> Self {
        let [i1, i2, j1] = first;
        let [i3, i4, j2] = second;
        let mut all = [i1, i2, j1, i3, i4, j2];
        all.sort_unstable();
        if all.windows(2).all(|w| w[0] != w[1]) {
            return Self::AllDistinct;
        }
        let first_distinct = i1 != i2 && i1 != j1 && i2 != j1;
        let same_pair = (i1 == i3 && i2 == i4) || (i1 == i4 && i2 == i3);
        if first_distinct && j1 == j2 && same_pair {
            Self::IdenticalCherry
        } else {
            Self::Other
        }
    }
}

/// `E[ε(i1, i2, j1) · ε(i3, i4, j2)]` for the given overlap pattern.
///
/// The zero for [`OverlapCase::Other`] needs `n >= 5`: on four vertices the
/// star carries three cherries sharing a stem, so two overlapping triples
/// can both be cherries.
pub fn expectation_epsilon_pair(n: usize, case: OverlapCase) -> Result<BigRational> {
    match case {
        OverlapCase::AllDistinct => {
            require(n, 7, "the all-distinct pair expectation")?;
            Ok(BigRational::new(pow(n - 6, n - 6), BigInt::from(cayley(n))))
        }
        OverlapCase::IdenticalCherry => expectation_epsilon(n),
        OverlapCase::Other => {
            require(n, 5, "the overlapping pair expectation")?;
            Ok(BigRational::zero())
        }
    }
}

/// `n^(n-2) · E[C_n]`, the total number of cherries summed over all
/// labelled trees on `n` vertices.
pub fn total_cherries_over_all_trees(n: usize) -> Result<BigInt> {
    require(n, 4, "E[C_n]")?;
    Ok(big(n) * big(n - 1) * big(n - 2) * pow(n - 3, n - 4) / 2)
}

/// Sum over all trees of the number of ordered pairs of vertex-disjoint
/// cherries: `n!/(n-6)!/4 · (n-6)^(n-6)`.
fn total_disjoint_cherry_pairs(n: usize) -> BigInt {
    let falling: BigInt = (0..6).map(|k| big(n - k)).product();
    falling * pow(n - 6, n - 6) / 4
}

/// `n^(n-2) · E[C_n²]`, the sum of squared cherry counts over all trees.
pub fn total_squared_cherries_over_all_trees(n: usize) -> Result<BigInt> {
    require(n, 7, "E[C_n^2]")?;
    Ok(total_disjoint_cherry_pairs(n) + total_cherries_over_all_trees(n)?)
}

/// The published second-moment numerator
/// `n!/(n-6)!/4 · (n-6)^(n-6) + n(n-1)(n-2)(n-3)^(n-4)`, which exceeds
/// [`total_squared_cherries_over_all_trees`] by `n^(n-2) · E[C_n]`.
pub fn published_total_squared_cherries(n: usize) -> Result<BigInt> {
    require(n, 7, "E[C_n^2]")?;
    Ok(total_disjoint_cherry_pairs(n) + big(n) * big(n - 1) * big(n - 2) * pow(n - 3, n - 4))
}

pub fn expected_cherries(n: usize) -> Result<BigRational> {
    Ok(BigRational::new(
        total_cherries_over_all_trees(n)?,
        BigInt::from(cayley(n)),
    ))
}

pub fn second_moment(n: usize) -> Result<BigRational> {
    Ok(BigRational::new(
        total_squared_cherries_over_all_trees(n)?,
        BigInt::from(cayley(n)),
    ))
}

pub fn published_second_moment(n: usize) -> Result<BigRational> {
    Ok(BigRational::new(
        published_total_squared_cherries(n)?,
        BigInt::from(cayley(n)),
    ))
}

/// `1 - Var[X]/E[X]² - Var[X-1]/E[X-1]²` with `Var[X-1] = Var[X]`.
fn chebyshev_two_cherries(e: &BigRational, var: &BigRational) -> Option<BigRational> {
    let one = BigRational::one();
    let shifted = e - &one;
    if e.is_zero() || shifted.is_zero() {
        return None;
    }
    Some(one - var / (e * e) - var / (&shifted * &shifted))
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_rational<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Exact moments of `C_n`. Rationals serialize as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub e_cn: BigRational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub e_cn_sq: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub var_cn: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub var_cn_minus_1: Option<BigRational>,
    /// Chebyshev lower bound on `P[C_n >= 2]`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub chebyshev_lower_bound_two_cherries: Option<BigRational>,
}

impl MomentReport {
    /// Bound as `f64`, for tables.
    pub fn chebyshev_bound_f64(&self) -> Option<f64> {
        self.chebyshev_lower_bound_two_cherries
            .as_ref()
            .map(rational_to_f64)
    }

    pub fn var_ratio(&self) -> Option<BigRational> {
        let var = self.var_cn.as_ref()?;
        Some(var / (&self.e_cn * &self.e_cn))
    }

    pub fn var_ratio_shifted(&self) -> Option<BigRational> {
        let var = self.var_cn_minus_1.as_ref()?;
        let shifted = &self.e_cn - BigRational::one();
        (!shifted.is_zero()).then(|| var / (&shifted * &shifted))
    }
}

/// Exact moment report for `n >= 4`. Second-moment fields are `None` below
/// `n = 7`.
pub fn exact_moments(n: usize) -> Result<MomentReport> {
    let e_cn = expected_cherries(n)?;
    let e_cn_sq = (n >= 7).then(|| second_moment(n)).transpose()?;
    let var_cn = e_cn_sq.as_ref().map(|sq| sq - &e_cn * &e_cn);
    let chebyshev = var_cn
        .as_ref()
        .and_then(|var| chebyshev_two_cherries(&e_cn, var));
    Ok(MomentReport {
        n,
        var_cn_minus_1: var_cn.clone(),
        e_cn,
        e_cn_sq,
        var_cn,
        chebyshev_lower_bound_two_cherries: chebyshev,
    })
}

/// Nearest `f64` to an exact rational, robust to numerators and
/// denominators far beyond the `f64` range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64().filter(|x| x.is_finite() && *x != 0.0) {
        return x;
    }
    if r.is_zero() {
        return 0.0;
    }
    // scale both parts down to 64 significant bits
    let num = r.numer().abs();
    let den = r.denom().abs();
    let shift = |x: &BigInt| x.bits().saturating_sub(64);
    let (sn, sd) = (shift(&num), shift(&den));
    let mantissa = (&num >> sn).to_f64().unwrap() / (&den >> sd).to_f64().unwrap();
    let value = mantissa * 2f64.powi(sn as i32 - sd as i32);
    if r.is_negative() {
        -value
    } else {
        value
    }
}

/// Floating-point moments evaluated without forming `n^(n-2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticMoments {
    pub n: usize,
    pub e_cn: f64,
    pub e_cn_sq: f64,
    /// `Var[C_n] / E[C_n]²`
    pub var_ratio: f64,
    /// `Var[C_n - 1] / E[C_n - 1]²`
    pub var_ratio_shifted: f64,
    pub chebyshev_bound: f64,
}

/// Evaluates the closed forms through `ln_1p`, e.g.
/// `E[C_n] = (n-1)(n-2)/(2n) · exp((n-4) · ln(1 - 3/n))`, so they stay
/// accurate for `n` in the millions.
pub fn asymptotic_moments(n: usize) -> Result<AsymptoticMoments> {
    require(n, 7, "asymptotic moments")?;
    let x = n as f64;
    let e_cn = 0.5 * (x - 1.0) * (x - 2.0) / x * ((x - 4.0) * (-3.0 / x).ln_1p()).exp();
    let falling: f64 = (1..6).map(|k| 1.0 - k as f64 / x).product();
    let pair_term = 0.25 * x * x * falling * ((x - 6.0) * (-6.0 / x).ln_1p()).exp();
    let e_cn_sq = pair_term + e_cn;
    let var = e_cn_sq - e_cn * e_cn;
    let var_ratio = var / (e_cn * e_cn);
    let var_ratio_shifted = var / ((e_cn - 1.0) * (e_cn - 1.0));
    Ok(AsymptoticMoments {
        n,
        e_cn,
        e_cn_sq,
        var_ratio,
        var_ratio_shifted,
        chebyshev_bound: 1.0 - var_ratio - var_ratio_shifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn expectation_of_single_indicator() {
        assert_eq!(expectation_epsilon(4).unwrap(), q(1, 16));
        assert_eq!(expectation_epsilon(5).unwrap(), q(2, 125));
        assert_eq!(trees_with_cherry_at(6).unwrap(), 9.into());
        assert!(expectation_epsilon(3).is_err());
    }

    #[test]
    fn expectation_of_indicator_pairs() {
        assert_eq!(
            expectation_epsilon_pair(7, OverlapCase::AllDistinct).unwrap(),
            q(1, 16807)
        );
        assert_eq!(
            expectation_epsilon_pair(7, OverlapCase::IdenticalCherry).unwrap(),
            q(64, 16807)
        );
        for n in [5, 7, 20] {
            assert!(expectation_epsilon_pair(n, OverlapCase::Other)
                .unwrap()
                .is_zero());
        }
        assert!(expectation_epsilon_pair(6, OverlapCase::AllDistinct).is_err());
        assert!(expectation_epsilon_pair(4, OverlapCase::Other).is_err());
    }

    #[test]
    fn overlap_classification() {
        assert_eq!(
            OverlapCase::of([0, 1, 2], [3, 4, 5]),
            OverlapCase::AllDistinct
        );
        assert_eq!(
            OverlapCase::of([0, 1, 2], [1, 0, 2]),
            OverlapCase::IdenticalCherry
        );
        assert_eq!(
            OverlapCase::of([0, 1, 2], [0, 1, 2]),
            OverlapCase::IdenticalCherry
        );
        assert_eq!(OverlapCase::of([0, 1, 2], [0, 3, 2]), OverlapCase::Other);
        assert_eq!(OverlapCase::of([0, 0, 2], [0, 0, 2]), OverlapCase::Other);
        assert_eq!(OverlapCase::of([0, 1, 2], [0, 1, 3]), OverlapCase::Other);
    }

    #[test]
    fn expected_cherry_counts() {
        assert_eq!(expected_cherries(4).unwrap(), q(3, 4));
        assert_eq!(expected_cherries(5).unwrap(), q(12, 25));
        assert_eq!(total_cherries_over_all_trees(4).unwrap(), 12.into());
        assert_eq!(total_cherries_over_all_trees(5).unwrap(), 60.into());
    }

    #[test]
    fn second_moment_values() {
        // 7!/1!/4 · 1 + 7·6·5/2 · 4^3
        assert_eq!(second_moment(7).unwrap(), q(7980, 16807));
        assert_eq!(
            total_squared_cherries_over_all_trees(7).unwrap(),
            7980.into()
        );
        // 8!/2!/4 · 2^2 + 8·7·6/2 · 5^4
        assert_eq!(
            total_squared_cherries_over_all_trees(8).unwrap(),
            125_160.into()
        );
        assert_eq!(published_total_squared_cherries(7).unwrap(), 14700.into());
        assert_eq!(published_total_squared_cherries(8).unwrap(), 230_160.into());
        assert_eq!(
            published_second_moment(7).unwrap() - second_moment(7).unwrap(),
            expected_cherries(7).unwrap()
        );
        assert!(second_moment(6).is_err());
    }

    #[test]
    fn partial_report_below_seven() {
        let r = exact_moments(6).unwrap();
        assert!(r.e_cn_sq.is_none() && r.var_cn.is_none());
        assert!(r.chebyshev_lower_bound_two_cherries.is_none());
        assert!(exact_moments(3).is_err());
    }

    #[test]
    fn report_invariants() {
        for n in 7..40 {
            let r = exact_moments(n).unwrap();
            let sq = r.e_cn_sq.clone().unwrap();
            assert_eq!(r.var_cn.clone().unwrap(), &sq - &r.e_cn * &r.e_cn);
            let four_cayley = BigInt::from(cayley(n)) * 4;
            for x in [&r.e_cn, &sq] {
                let rem: BigInt = &four_cayley % x.denom();
                assert!(rem.is_zero());
            }
        }
    }

    #[test]
    fn log_space_matches_rationals() {
        for n in 7..=64 {
            let exact = exact_moments(n).unwrap();
            let approx = asymptotic_moments(n).unwrap();
            let rel = |a: f64, b: f64| ((a - b) / b).abs();
            assert!(
                rel(approx.e_cn, rational_to_f64(&exact.e_cn)) < 1e-10,
                "n={n}"
            );
            assert!(
                rel(
                    approx.e_cn_sq,
                    rational_to_f64(exact.e_cn_sq.as_ref().unwrap())
                ) < 1e-10,
                "n={n}"
            );
        }
    }

    #[test]
    fn rational_to_f64_handles_huge_parts() {
        let huge = BigInt::from(cayley(500));
        let r = BigRational::new(&huge * 3, &huge * 4);
        assert_eq!(rational_to_f64(&r), 0.75);
        let r = BigRational::new(-huge.clone(), huge * 8);
        assert_eq!(rational_to_f64(&r), -0.125);
    }

    #[test]
    fn report_serializes_rationals_as_strings() {
        let json = serde_json::to_value(exact_moments(7).unwrap()).unwrap();
        assert_eq!(json["e_cn_sq"], "1140/2401");
        let json = serde_json::to_value(exact_moments(4).unwrap()).unwrap();
        assert_eq!(json["e_cn"], "3/4");
        assert!(json["var_cn"].is_null());
    }
}
