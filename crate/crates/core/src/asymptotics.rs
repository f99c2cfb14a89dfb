//! Exact ratio and normalization series for the growth of α(m, n), plus the
//! binomial tail bound and the weighted-mediant inequality used with them.
//!
//! None of the limits can be computed; the checks built on these series are
//! trends over the computed range plus a tolerance on the last point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::count::BigCount;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::fixed::Fixed;
use crate::formulas::{alpha_closed_form, alpha_one_column, binomial};
use crate::layer::Layer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoint {
    pub n: usize,
    /// The exact rational part of the value (the whole value for ratio
    /// series; α(m,n)/α(m,1)^n for normalized constants).
    pub exact: BigRational,
    pub value: Fixed,
}

pub const SERIES_CSV_HEADER: &str = "n,numerator,denominator,decimal";

/// CSV with one extra constant column per named target.
pub fn series_csv(points: &[SeriesPoint], targets: &[(&str, &Fixed)]) -> String {
    let mut out = String::from(SERIES_CSV_HEADER);
    for (name, _) in targets {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}",
            p.n,
            p.exact.numer(),
            p.exact.denom(),
            p.value
        ));
        for (_, t) in targets {
            out.push_str(&format!(",{t}"));
        }
        out.push('\n');
    }
    out
}

/// Where the α(m, n) values of a series come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AlphaSource {
    /// Closed forms when m ≤ 4, otherwise the DP engine.
    #[default]
    Best,
    /// Always the DP engine.
    Engine,
}

/// α(m, n) for n = 0..=n_max.
pub fn alpha_values(m: usize, n_max: usize, source: AlphaSource) -> Result<Vec<BigCount>> {
    if source == AlphaSource::Best && m <= 4 {
        return Ok((0..=n_max)
            .map(|n| alpha_closed_form(m, n).expect("closed form for m <= 4"))
            .collect());
    }
    Engine::default().count_good_series(m, n_max)
}

fn ratio(num: &BigCount, den: &BigCount) -> BigRational {
    BigRational::new(num.to_bigint(), den.to_bigint())
}

fn point(n: usize, exact: BigRational) -> SeriesPoint {
    let value = Fixed::from_rational(&exact);
    SeriesPoint { n, exact, value }
}

/// Points (n, α(m, n+gap)/α(m, n)) for n = 0..=n_max.
pub fn ratio_series(
    m: usize,
    n_max: usize,
    gap: usize,
    source: AlphaSource,
) -> Result<Vec<SeriesPoint>> {
    let alpha = alpha_values(m, n_max + gap, source)?;
    Ok((0..=n_max)
        .map(|n| point(n, ratio(&alpha[n + gap], &alpha[n])))
        .collect())
}

/// α(m, 1)², the limit of α(m, n+2)/α(m, n).
pub fn ratio_target(m: usize) -> Fixed {
    let a = alpha_one_column(m).to_bigint();
    Fixed::from_ratio(&(&a * &a), &BigInt::one())
}

/// Points (2n−1, α(2h, 2n−1)/α(2h−1, 2n−1)) for odd 2n−1 ≤ n_max.
pub fn oddeven_ratio_series(
    half_m: usize,
    n_max: usize,
    source: AlphaSource,
) -> Result<Vec<SeriesPoint>> {
    if half_m == 0 {
        return Err(Error::Precondition("half_m must be at least 1".into()));
    }
    let top = alpha_values(2 * half_m, n_max, source)?;
    let bottom = alpha_values(2 * half_m - 1, n_max, source)?;
    Ok((1..=n_max)
        .step_by(2)
        .map(|n| point(n, ratio(&top[n], &bottom[n])))
        .collect())
}

/// C(2h, h) / 2^(2h−1).
pub fn oddeven_target(half_m: usize) -> Fixed {
    let h = half_m as i64;
    let num = BigInt::from(binomial(2 * h, h));
    let den = BigInt::from(2u32).pow(2 * half_m as u32 - 1);
    Fixed::from_ratio(&num, &den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn matches(self, n: usize) -> bool {
        n.is_multiple_of(2) == (self == Parity::Even)
    }
}

/// Twice the exponent ⌊(m−1)/2⌋ + 1/2 of n in the normalization.
fn doubled_exponent(m: usize) -> u32 {
    2 * ((m as u32 - 1) / 2) + 1
}

/// α(m, n)·n^(⌊(m−1)/2⌋+1/2) / α(m, 1)^n for 1 ≤ n ≤ n_max of the given parity.
pub fn normalized_constant_series(
    m: usize,
    parity: Parity,
    n_max: usize,
    source: AlphaSource,
) -> Result<Vec<SeriesPoint>> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let alpha = alpha_values(m, n_max, source)?;
    let base = alpha_one_column(m).to_bigint();
    let e2 = doubled_exponent(m);
    Ok((1..=n_max)
        .filter(|&n| parity.matches(n))
        .map(|n| {
            let exact = BigRational::new(alpha[n].to_bigint(), base.pow(n as u32));
            // value² = exact² · n^(2e) is rational, so take one square root at the end
            let num = exact.numer() * exact.numer() * BigInt::from(n).pow(e2);
            let den = exact.denom() * exact.denom();
            SeriesPoint {
                n,
                value: Fixed::sqrt_ratio(&num, &den),
                exact,
            }
        })
        .collect())
}

/// √(num / (den·π³)).
fn over_pi_cubed(num: i64, den: i64) -> Fixed {
    let pi = Fixed::pi();
    let pi3 = pi.mul(&pi).mul(&pi);
    Fixed::from_ratio(&BigInt::from(num), &BigInt::from(den))
        .div(&pi3)
        .sqrt()
}

/// 3√3 / (√2·π^(3/2)) ≈ 0.659845, the even-n constant for m = 3.
pub fn three_row_even_constant() -> Fixed {
    over_pi_cubed(27, 2)
}

/// 12√6 / π^(3/2) ≈ 5.2788: the odd-n constant for m = 3 obtained from the
/// even constant, the limit 36 of α(3, n+2)/α(3, n) and the limit 3/4 of
/// α(4, n)/α(3, n) over odd n.
pub fn three_row_odd_constant() -> Fixed {
    over_pi_cubed(864, 1)
}

/// 2√6 / π^(3/2) ≈ 0.8798, the odd-n constant as usually printed for m = 3.
pub fn three_row_odd_constant_printed() -> Fixed {
    over_pi_cubed(24, 1)
}

/// Points (n, α_{r′}(m, n)/α_r(m, n)) for n ≤ n_max where α_r(m, n) > 0.
pub fn row_profile_ratio_series(
    m: usize,
    n_max: usize,
    r: &[i64],
    r_prime: &[i64],
) -> Result<Vec<SeriesPoint>> {
    for v in [r, r_prime] {
        if v.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: v.len(),
            });
        }
    }
    let parity = r.first().or(r_prime.first()).map_or(0, |v| v.rem_euclid(2));
    if r.iter().chain(r_prime).any(|v| v.rem_euclid(2) != parity) {
        return Err(Error::ParityMismatch(
            format!("{r:?}"),
            format!("{r_prime:?}"),
        ));
    }
    let engine = Engine::default();
    let mut out = Vec::new();
    for n in (0..=n_max).filter(|n| (*n as i64 - parity).rem_euclid(2) == 0) {
        let den = engine.count_row_profile(m, n, r)?;
        if den.is_zero() {
            continue;
        }
        let num = engine.count_row_profile(m, n, r_prime)?;
        out.push(point(n, ratio(&num, &den)));
    }
    if out.is_empty() {
        return Err(Error::Precondition(format!(
            "row profile {r:?} is infeasible for every n <= {n_max}"
        )));
    }
    Ok(out)
}

/// P(|X₁ + ⋯ + Xₙ| ≥ t) for independent fair ±1 variables, exactly.
pub fn tail_probability(n: usize, t: u64) -> BigRational {
    // distribution of the sum as counts over 2^n equally likely outcomes
    let mut layer = Layer::start(0i64);
    for _ in 0..n {
        layer = layer.advance(&[1i64, -1], |s, d| Some(s + d));
    }
    let hits = layer.total_where(|s| s.unsigned_abs() >= t);
    BigRational::new(hits.to_bigint(), BigInt::from(2u32).pow(n as u32))
}

/// Σaᵢcᵢ / Σbᵢcᵢ ≥ Σaᵢ / Σbᵢ, given positive b and c, c nonincreasing and
/// aᵢ/bᵢ nonincreasing. Returns whether the inequality holds on the input.
pub fn weighted_mediant_holds(
    a: &[BigRational],
    b: &[BigRational],
    c: &[BigRational],
) -> Result<bool> {
    if a.len() != b.len() || a.len() != c.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: if a.len() != b.len() { b.len() } else { c.len() },
        });
    }
    if a.is_empty() {
        return Err(Error::Precondition("need at least one term".into()));
    }
    if b.iter().chain(c).any(|x| !x.is_positive()) {
        return Err(Error::Precondition("b and c must be positive".into()));
    }
    if c.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition("c must be nonincreasing".into()));
    }
    let quotients: Vec<BigRational> = a.iter().zip(b).map(|(x, y)| x / y).collect();
    if quotients.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition("a_i/b_i must be nonincreasing".into()));
    }
    let dot = |x: &[BigRational]| -> BigRational {
        x.iter()
            .zip(c)
            .fold(BigRational::zero(), |acc, (p, q)| acc + p * q)
    };
    let sum =
        |x: &[BigRational]| -> BigRational { x.iter().fold(BigRational::zero(), |acc, p| acc + p) };
    Ok(dot(a) / dot(b) >= sum(a) / sum(b))
}

pub fn is_increasing(points: &[SeriesPoint]) -> bool {
    points.windows(2).all(|w| w[0].value < w[1].value)
}

pub fn is_decreasing(points: &[SeriesPoint]) -> bool {
    points.windows(2).all(|w| w[0].value > w[1].value)
}

/// No drift to 0 or ∞: every value is positive, and every value in the
/// second half of the series lies in [lo/2, 2·hi], where lo and hi are the
/// extremes over the first half.
pub fn stays_bounded(values: &[Fixed]) -> bool {
    if values.len() < 2 || values.iter().any(|v| !v.is_positive()) {
        return false;
    }
    let (head, tail) = values.split_at(values.len() / 2);
    let lo = head.iter().min().expect("nonempty");
    let hi = head.iter().max().expect("nonempty");
    let two = Fixed::from_int(2);
    let floor = lo.div(&two);
    let ceil = hi.mul(&two);
    tail.iter().all(|v| *v >= floor && *v <= ceil)
}
