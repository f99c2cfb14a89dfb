//! Closed forms for α(m, n) with m ≤ 4 and the related identities.
//!
//! Sums run over exactly the printed index ranges; a binomial with its lower
//! index outside `0..=n` is zero.

use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::count::BigCount;
use crate::error::{Error, Result};

/// Memoized rows of Pascal's triangle, shared between threads.
#[derive(Debug, Default)]
pub struct BinomialTable {
    rows: RwLock<Vec<Vec<BigUint>>>,
}

impl BinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// C(n, k), zero when `k < 0`, `k > n` or `n < 0`.
    pub fn binomial(&self, n: i64, k: i64) -> BigUint {
        if n < 0 || k < 0 || k > n {
            return BigUint::zero();
        }
        let (n, k) = (n as usize, k as usize);
        {
            let rows = self.rows.read().expect("binomial table poisoned");
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        let mut rows = self.rows.write().expect("binomial table poisoned");
        while rows.len() <= n {
            let next = match rows.last() {
                None => vec![BigUint::one()],
                Some(prev) => {
                    let mut row = Vec::with_capacity(prev.len() + 1);
                    row.push(BigUint::one());
                    for w in prev.windows(2) {
                        row.push(&w[0] + &w[1]);
                    }
                    row.push(BigUint::one());
                    row
                }
            };
            rows.push(next);
        }
        rows[n][k].clone()
    }

    /// n! / (p_1! ⋯ p_r!), zero unless every part is nonnegative and the parts sum to `n`.
    pub fn multinomial(&self, n: i64, parts: &[i64]) -> BigUint {
        if parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != n {
            return BigUint::zero();
        }
        let mut rest = n;
        let mut acc = BigUint::one();
        for &p in parts {
            acc *= self.binomial(rest, p);
            rest -= p;
        }
        acc
    }
}

static TABLE: LazyLock<BinomialTable> = LazyLock::new(BinomialTable::new);

pub fn binomial(n: i64, k: i64) -> BigUint {
    TABLE.binomial(n, k)
}

pub fn multinomial(n: i64, parts: &[i64]) -> BigUint {
    TABLE.multinomial(n, parts)
}

fn central(h: i64) -> BigUint {
    binomial(2 * h, h)
}

/// α(1, n) = α(2, n) = C(2h, h) with h = ⌊(n+1)/2⌋.
pub fn alpha_rows12(n: usize) -> BigCount {
    central((n as i64 + 1) / 2).into()
}

/// Σ_{i=0}^{k} C(k,i)² C(2i,i)
fn square_sum(k: i64) -> BigUint {
    (0..=k)
        .map(|i| {
            let c = binomial(k, i);
            &c * &c * binomial(2 * i, i)
        })
        .sum()
}

/// α(3, n), the number of good 3×n matrices.
pub fn alpha_three(n: usize) -> BigCount {
    let n = n as i64;
    if n % 2 == 0 {
        let k = n / 2;
        (binomial(n, k) * square_sum(k)).into()
    } else {
        let k = (n - 1) / 2;
        let sum: BigUint = (0..=k)
            .map(|i| {
                let bracket = binomial(2 * i + 1, i + 1) * binomial(k + 1, i)
                    + 2u32 * binomial(k + 1, i + 1) * binomial(2 * i + 1, i);
                binomial(k, i) * bracket
            })
            .sum();
        (2u32 * binomial(n, k) * sum).into()
    }
}

/// The multinomial form Σ_{i=0}^{k} C(2k; k−i, k−i, i, i)·C(2i, i) of α(3, 2k).
pub fn alpha_three_even_multinomial(k: usize) -> BigCount {
    let k = k as i64;
    (0..=k)
        .map(|i| multinomial(2 * k, &[k - i, k - i, i, i]) * binomial(2 * i, i))
        .sum::<BigUint>()
        .into()
}

/// α(4, n) = C(2c, c) Σ_{i=0}^{c} C(c,i)² C(2i,i) with c = ⌈n/2⌉.
pub fn alpha_four(n: usize) -> BigCount {
    let c = n.div_ceil(2) as i64;
    (central(c) * square_sum(c)).into()
}

/// α(m, 1): the number of column-good columns of height m.
pub fn alpha_one_column(m: usize) -> BigCount {
    central((m as i64 + 1) / 2).into()
}

/// α(4, 2k−1) − α(3, 2k−1) = −C(2k,k) Σ_{i=0}^{k−1} C(k,i) C(k−1,i) C(2i,i+1).
pub fn diff_four_three(k: usize) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::Precondition("diff_four_three needs k >= 1".into()));
    }
    let k = k as i64;
    let sum: BigUint = (0..k)
        .map(|i| binomial(k, i) * binomial(k - 1, i) * binomial(2 * i, i + 1))
        .sum();
    Ok(-BigInt::from(central(k) * sum))
}

/// α(m, n) from a closed form when one exists (m ≤ 4).
pub fn alpha_closed_form(m: usize, n: usize) -> Option<BigCount> {
    match m {
        1 | 2 => Some(alpha_rows12(n)),
        3 => Some(alpha_three(n)),
        4 => Some(alpha_four(n)),
        _ => None,
    }
}
