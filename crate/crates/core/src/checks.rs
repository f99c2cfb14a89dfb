//! Named verification suites, each a list of pass/fail checks.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::asymptotics::{
    normalized_constant_series, oddeven_ratio_series, oddeven_target, ratio_series, ratio_target,
    stays_bounded, tail_probability, three_row_even_constant, three_row_odd_constant,
    three_row_odd_constant_printed, AlphaSource, Parity, SeriesPoint,
};
use crate::count::BigCount;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::fixed::Fixed;
use crate::formulas::{alpha_four, alpha_three, alpha_three_even_multinomial, diff_four_three};
use crate::majorization::{verify_decreasing, verify_psi};
use crate::oracle::Oracle;
use crate::walks::{count_walks, phi, phi_inverse};

/// α(3, 2k) for k = 0..=6 as listed for the cubic-lattice polygon sequence.
pub const PUBLISHED_EVEN_THREE_ROW: [u64; 7] = [1, 6, 90, 1860, 44730, 1172556, 32496156];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(suite: Suite, name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "fail" };
        write!(
            f,
            "{status}\t{}\t{}\t{}",
            self.suite, self.name, self.detail
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Sequence,
    Identities,
    Bijection,
    Majorization,
    Asymptotics,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Sequence,
        Suite::Identities,
        Suite::Bijection,
        Suite::Majorization,
        Suite::Asymptotics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sequence => "sequence",
            Suite::Identities => "identities",
            Suite::Bijection => "bijection",
            Suite::Majorization => "majorization",
            Suite::Asymptotics => "asymptotics",
        }
    }

    pub fn run(self) -> Result<Vec<Check>> {
        match self {
            Suite::Sequence => sequence(),
            Suite::Identities => identities(),
            Suite::Bijection => bijection(),
            Suite::Majorization => majorization(),
            Suite::Asymptotics => asymptotics(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Collects the failing instances of a family of equalities into one check.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, instance: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(instance());
        }
    }

    fn finish(self, suite: Suite, name: &str) -> Check {
        match self.failures.first() {
            None => Check::new(suite, name, true, format!("{} instances", self.checked)),
            Some(first) => Check::new(
                suite,
                name,
                false,
                format!(
                    "{} of {} failed; first: {first}",
                    self.failures.len(),
                    self.checked
                ),
            ),
        }
    }
}

pub fn sequence() -> Result<Vec<Check>> {
    let engine = Engine::default();
    let mut dp = Tally::new();
    let mut formula = Tally::new();
    for (k, &want) in PUBLISHED_EVEN_THREE_ROW.iter().enumerate() {
        let got = engine.count_good(3, 2 * k)?;
        dp.expect(got == want, || {
            format!("k={k}: dp gives {got}, listed {want}")
        });
        let closed = alpha_three(2 * k);
        formula.expect(closed == want, || {
            format!("k={k}: formula gives {closed}, listed {want}")
        });
    }
    Ok(vec![
        dp.finish(Suite::Sequence, "dp_matches_published"),
        formula.finish(Suite::Sequence, "formula_matches_published"),
    ])
}

pub fn identities() -> Result<Vec<Check>> {
    let engine = Engine::default();
    let s = Suite::Identities;
    let alpha = |m: usize, n: usize| engine.count_good(m, n);
    let mut out = Vec::new();

    let mut transpose = Tally::new();
    for m in 1..=6 {
        for n in m + 1..=7 {
            let (a, b) = (alpha(m, n)?, alpha(n, m)?);
            transpose.expect(a == b, || {
                format!("alpha({m},{n})={a} but alpha({n},{m})={b}")
            });
        }
    }
    out.push(transpose.finish(s, "transpose_symmetry"));

    let mut even_rows = Tally::new();
    for m in [2, 4, 6] {
        for n in 1..=8 {
            let (a, b) = (alpha(m, n)?, alpha(m - 1, n)?);
            even_rows.expect(a <= b, || {
                format!("alpha({m},{n})={a} > alpha({},{n})={b}", m - 1)
            });
            if n % 2 == 0 {
                let c = alpha(m, n - 1)?;
                even_rows.expect(a == b && a == c, || {
                    format!(
                        "alpha({m},{n})={a}, alpha({},{n})={b}, alpha({m},{})={c}",
                        m - 1,
                        n - 1
                    )
                });
            }
        }
    }
    out.push(even_rows.finish(s, "even_rows_collapse"));

    let mut geq = Tally::new();
    for m in [3, 5] {
        for n in 1..=8 {
            let lhs = alpha(m, n)?;
            let rhs = alpha(1, n)? * alpha(m - 1, n)?;
            geq.expect(lhs >= rhs, || format!("alpha({m},{n})={lhs} < {rhs}"));
        }
    }
    out.push(geq.finish(s, "odd_rows_lower_bound"));

    let mut extension = Tally::new();
    let mut decomposition = Tally::new();
    for m in [2, 4] {
        for n in 1..=8 {
            let mut total = BigCount::zero();
            for r in unit_profiles(m - 1) {
                let sum: i64 = r.iter().sum();
                if sum.abs() > 1 {
                    continue;
                }
                let count = engine.count_row_profile(m - 1, n, &r)?;
                if n <= 6 {
                    let mut extended = r.clone();
                    extended.push(-sum);
                    let wide = engine.count_row_profile(m, n, &extended)?;
                    extension.expect(wide == count, || {
                        format!("m={m} n={n} r={r:?}: {count} vs extended {wide}")
                    });
                }
                total += count;
            }
            let a = alpha(m, n)?;
            decomposition.expect(a == total, || {
                format!("alpha({m},{n})={a}, sum over top rows {total}")
            });
        }
    }
    out.push(extension.finish(s, "last_row_extension"));
    out.push(decomposition.finish(s, "top_rows_decomposition"));

    let mut diff = Tally::new();
    for k in 1..=15 {
        let n = 2 * k - 1;
        let lhs = alpha_four(n).to_bigint() - alpha_three(n).to_bigint();
        let rhs = diff_four_three(k)?;
        diff.expect(lhs == rhs, || format!("k={k}: {lhs} vs {rhs}"));
        if k <= 5 {
            let dp = alpha(4, n)?.to_bigint() - alpha(3, n)?.to_bigint();
            diff.expect(dp == rhs, || format!("k={k}: dp difference {dp} vs {rhs}"));
        }
    }
    out.push(diff.finish(s, "four_minus_three_odd"));

    let mut two_forms = Tally::new();
    for k in 0..=12 {
        let (a, b) = (alpha_three_even_multinomial(k), alpha_three(2 * k));
        two_forms.expect(a == b, || format!("n={}: {a} vs {b}", 2 * k));
    }
    out.push(two_forms.finish(s, "three_row_even_two_forms"));

    Ok(out)
}

fn unit_profiles(len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                [-1, 0, 1].into_iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn bijection() -> Result<Vec<Check>> {
    let s = Suite::Bijection;
    let oracle = Oracle::default();
    let mut round_trip = Tally::new();
    for n in 1..=6 {
        let mut image = BTreeSet::new();
        let mut size = 0usize;
        for a in oracle.enumerate_good(3, n)? {
            size += 1;
            let w = phi(&a)?;
            round_trip.expect(w.in_family(), || {
                format!("n={n}: walk of {a:?} leaves the family")
            });
            let back = phi_inverse(&w)?;
            round_trip.expect(back == a, || {
                format!("n={n}: inverse of phi({a:?}) is {back:?}")
            });
            image.insert(w);
        }
        let walks = count_walks(n);
        round_trip.expect(image.len() == size, || {
            format!("n={n}: {size} matrices, {} walks", image.len())
        });
        round_trip.expect(walks == image.len() as u64, || {
            format!(
                "n={n}: image has {} walks, count_walks gives {walks}",
                image.len()
            )
        });
    }
    let mut counts = Tally::new();
    for n in 0..=30 {
        let (w, a) = (count_walks(n), alpha_three(n));
        counts.expect(w == a, || format!("n={n}: {w} walks vs alpha {a}"));
    }
    Ok(vec![
        round_trip.finish(s, "phi_round_trip"),
        counts.finish(s, "walk_count_matches_formula"),
    ])
}

pub fn majorization() -> Result<Vec<Check>> {
    let s = Suite::Majorization;
    let engine = Engine::default();
    let mut out = Vec::new();
    for (m, n, bound) in [(3, 3, 3), (3, 5, 3), (4, 4, 4), (5, 5, 3)] {
        let report = verify_decreasing(&engine, m, n, bound)?;
        let name = format!("decreasing_m{m}_n{n}_b{bound}");
        let check = match (
            report.violations().next(),
            report.refined_violations.first(),
        ) {
            (None, None) => Check::new(
                s,
                &name,
                true,
                format!(
                    "{} pairs, {} fixed-column comparisons",
                    report.pairs.len(),
                    report.refined_checked
                ),
            ),
            (Some(p), _) => Check::new(s, &name, false, format!("violation {}", p.csv_line())),
            (None, Some(v)) => Check::new(
                s,
                &name,
                false,
                format!("violation with c={:?}: {}", v.c, v.record.csv_line()),
            ),
        };
        out.push(check);
    }
    let oracle = Oracle::default();
    let mut psi = Tally::new();
    let mut domain = 0;
    for n in 0..=6 {
        let report = verify_psi(&oracle, 2, n)?;
        domain += report.domain_size;
        for f in report.failures {
            psi.expect(false, || format!("n={n}: {f}"));
        }
        psi.expect(true, String::new);
    }
    let mut check = psi.finish(s, "psi_two_rows");
    if check.passed {
        check.detail = format!("{domain} matrices, n <= 6");
    }
    out.push(check);
    Ok(out)
}

fn last(points: &[SeriesPoint]) -> &SeriesPoint {
    points.last().expect("nonempty series")
}

fn trend_check(
    name: &str,
    ok_trend: bool,
    trend: &str,
    p: &SeriesPoint,
    target: &Fixed,
    tol: (i64, i64),
) -> Check {
    let close = p.value.within_relative(target, tol.0, tol.1);
    Check::new(
        Suite::Asymptotics,
        name,
        ok_trend && close,
        format!(
            "{trend} {}; value at n={} is {:.6}, target {:.6}, tolerance {}/{}",
            if ok_trend { "holds" } else { "fails" },
            p.n,
            p.value.to_f64(),
            target.to_f64(),
            tol.0,
            tol.1
        ),
    )
}

/// Largest n used for the five-row boundedness check.
pub const FIVE_ROW_SERIES_MAX: usize = 40;

pub fn asymptotics() -> Result<Vec<Check>> {
    let s = Suite::Asymptotics;
    let mut out = Vec::new();

    let porp: Vec<SeriesPoint> = ratio_series(3, 100, 2, AlphaSource::Best)?
        .into_iter()
        .filter(|p| p.n % 2 == 0 && p.n >= 4)
        .collect();
    out.push(trend_check(
        "ratio_three_rows",
        crate::asymptotics::is_increasing(&porp),
        "increase over even n in [4,100]",
        last(&porp),
        &ratio_target(3),
        (1, 10),
    ));

    let target = ratio_target(3);
    let gap = |p: &SeriesPoint| p.value.sub(&target).abs();
    let first = porp.first().expect("nonempty series");
    out.push(Check::new(
        s,
        "ratio_three_rows_approaches",
        gap(last(&porp)) < gap(first),
        format!(
            "distance to 36 goes from {:.6} to {:.6}",
            gap(first).to_f64(),
            gap(last(&porp)).to_f64()
        ),
    ));

    let oddeven = oddeven_ratio_series(2, 99, AlphaSource::Best)?;
    out.push(trend_check(
        "four_over_three_odd",
        crate::asymptotics::is_decreasing(&oddeven),
        "decrease over odd n <= 99",
        last(&oddeven),
        &oddeven_target(2),
        (5, 100),
    ));

    let even = normalized_constant_series(3, Parity::Even, 200, AlphaSource::Best)?;
    out.push(trend_check(
        "constant_three_even",
        true,
        "no trend required",
        last(&even),
        &three_row_even_constant(),
        (2, 100),
    ));

    let odd = normalized_constant_series(3, Parity::Odd, 199, AlphaSource::Best)?;
    let printed = three_row_odd_constant_printed();
    let mut check = trend_check(
        "constant_three_odd",
        crate::asymptotics::is_increasing(&odd),
        "increase over odd n <= 199",
        last(&odd),
        &three_row_odd_constant(),
        (1, 10),
    );
    let above = last(&odd).value > printed.mul(&Fixed::from_int(3));
    check.passed &= above;
    check.detail.push_str(&format!(
        "; printed constant {:.6} is {} by more than 3x",
        printed.to_f64(),
        if above { "exceeded" } else { "not exceeded" }
    ));
    out.push(check);

    for m in [3, 4, 5] {
        let n_max = if m == 5 { FIVE_ROW_SERIES_MAX } else { 200 };
        for parity in [Parity::Even, Parity::Odd] {
            let series = normalized_constant_series(m, parity, n_max, AlphaSource::Best)?;
            let values: Vec<Fixed> = series.iter().map(|p| p.value.clone()).collect();
            let lo = values.iter().min().map_or(0.0, Fixed::to_f64);
            let hi = values.iter().max().map_or(0.0, Fixed::to_f64);
            let name = format!(
                "bounded_m{m}_{}",
                if parity == Parity::Even {
                    "even"
                } else {
                    "odd"
                }
            );
            out.push(Check::new(
                s,
                &name,
                stays_bounded(&values),
                format!(
                    "{} points up to n={n_max}, range [{lo:.6}, {hi:.6}]",
                    values.len()
                ),
            ));
        }
    }

    let hundredth = BigRational::new(BigInt::from(1), BigInt::from(100));
    let tail = tail_probability(100, 30);
    out.push(Check::new(
        s,
        "tail_n100_t30",
        tail < hundredth,
        format!("P = {:.6e}", Fixed::from_rational(&tail).to_f64()),
    ));
    let mut certain = Tally::new();
    for n in [0, 1, 2, 7, 50, 100] {
        let p = tail_probability(n, 0);
        certain.expect(p == BigRational::from_integer(1.into()), || {
            format!("n={n}: P = {p}")
        });
    }
    out.push(certain.finish(s, "tail_threshold_zero"));
    let mut sampled = Tally::new();
    for n in (16..=400).step_by(16) {
        // t = ceil(3 sqrt n)
        let t = (1..).find(|t: &u64| t * t >= 9 * n as u64).expect("finite");
        let p = tail_probability(n, t);
        sampled.expect(p < hundredth, || format!("n={n} t={t}: P = {p}"));
    }
    out.push(sampled.finish(s, "tail_three_sigma"));
    Ok(out)
}
