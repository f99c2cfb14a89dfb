//! Column-by-column dynamic programming over running row sums.
//!
//! A state after `j` columns is the vector of partial row sums. Each step
//! appends one column from the column-good alphabet (or, for fixed column
//! sums, from the columns with the prescribed sum) and drops states that can
//! no longer reach the target row sums in the remaining columns.

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::layer::Layer;
use crate::matrix::Sign;
use crate::oracle::{columns_with_sum, good_columns, profile_feasible};

/// Partial row sums after some number of columns.
pub type DpState = Vec<i32>;
pub type DpLayer = Layer<DpState>;

/// Default bound on the number of states a single layer may hold.
pub const DEFAULT_CAPACITY: usize = 50_000_000;

#[derive(Clone, Copy, Debug)]
pub struct Engine {
    pub capacity: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            capacity: DEFAULT_CAPACITY,
        }
    }
}

fn to_steps(columns: &[Vec<Sign>]) -> Vec<Vec<i32>> {
    columns
        .iter()
        .map(|c| c.iter().map(|s| s.value() as i32).collect())
        .collect()
}

fn add(state: &[i32], col: &[i32]) -> DpState {
    state.iter().zip(col).map(|(a, b)| a + b).collect()
}

/// Checks the retained-state bounds: |p_i| ≤ depth, p_i ≡ depth (mod 2).
fn state_in_bounds(state: &[i32], depth: usize) -> bool {
    let j = depth as i32;
    state
        .iter()
        .all(|&p| p.abs() <= j && (p - j).rem_euclid(2) == 0)
}

impl Engine {
    pub fn with_capacity(capacity: usize) -> Self {
        Engine { capacity }
    }

    fn check(&self, layer: &DpLayer) -> Result<()> {
        if layer.len() > self.capacity {
            return Err(Error::Capacity {
                layer: layer.depth,
                states: layer.len(),
                capacity: self.capacity,
            });
        }
        Ok(())
    }

    /// α(m, n): the number of m×n ±1 matrices with every row and column sum
    /// in {−1, 0, 1}. `n = 0` counts the empty matrix.
    pub fn count_good(&self, m: usize, n: usize) -> Result<BigCount> {
        if m == 0 || n == 0 {
            return Ok(BigCount::one());
        }
        let steps = to_steps(&good_columns(m).columns);
        let mut layer = DpLayer::start(vec![0; m]);
        for j in 1..=n {
            // a row sum of magnitude > remaining + 1 can never return to {−1,0,1}
            let slack = (n - j + 1) as i32;
            layer = layer.advance(&steps, |s, c| {
                let next = add(s, c);
                next.iter().all(|p| p.abs() <= slack).then_some(next)
            });
            debug_assert!(layer
                .table
                .keys()
                .all(|s| state_in_bounds(s, j) && s.iter().all(|p| p.abs() <= slack)));
            self.check(&layer)?;
        }
        Ok(layer.total_where(|s| s.iter().all(|p| p.abs() <= 1)))
    }

    /// α_r(m, n): column-good m×n matrices with row-sum vector `r`.
    pub fn count_row_profile(&self, m: usize, n: usize, r: &[i64]) -> Result<BigCount> {
        if r.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: r.len(),
            });
        }
        if !profile_feasible(r, n) {
            return Ok(BigCount::zero());
        }
        let alphabet = to_steps(&good_columns(m).columns);
        self.profile_dp(m, n, r, |_| &alphabet)
    }

    /// |A_{r,c}(m, n)| for column sums `c` with every entry in {−1, 0, 1}.
    pub fn count_profile_pair(&self, m: usize, n: usize, r: &[i64], c: &[i64]) -> Result<BigCount> {
        if r.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: r.len(),
            });
        }
        if c.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: c.len(),
            });
        }
        if let Some((col, &value)) = c.iter().enumerate().find(|(_, v)| v.abs() > 1) {
            return Err(Error::UnsupportedColumnSum { col, value });
        }
        if r.iter().sum::<i64>() != c.iter().sum::<i64>()
            || !profile_feasible(r, n)
            || !profile_feasible(c, m)
        {
            return Ok(BigCount::zero());
        }
        let by_sum: Vec<Vec<Vec<i32>>> = (-1..=1)
            .map(|s| to_steps(&columns_with_sum(m, s)))
            .collect();
        self.profile_dp(m, n, r, |j| &by_sum[(c[j] + 1) as usize])
    }

    fn profile_dp<'a>(
        &self,
        m: usize,
        n: usize,
        r: &[i64],
        alphabet_for: impl Fn(usize) -> &'a Vec<Vec<i32>>,
    ) -> Result<BigCount> {
        let target: Vec<i32> = r.iter().map(|&v| v as i32).collect();
        let mut layer = DpLayer::start(vec![0; m]);
        for j in 1..=n {
            let remaining = (n - j) as i32;
            layer = layer.advance(alphabet_for(j - 1), |s, c| {
                let next = add(s, c);
                next.iter()
                    .zip(&target)
                    .all(|(p, t)| (t - p).abs() <= remaining)
                    .then_some(next)
            });
            debug_assert!(layer.table.keys().all(|s| state_in_bounds(s, j)));
            self.check(&layer)?;
        }
        Ok(layer.table.get(&target).cloned().unwrap_or_default())
    }

    /// Same value as [`Engine::count_good`], with states stored as sorted
    /// multisets of partial sums.
    ///
    /// Merging the states of one row-permutation orbit is exact here: the
    /// alphabet is closed under row permutations, so every member of an orbit
    /// has the same successors up to sorting.
    pub fn count_good_compressed(&self, m: usize, n: usize) -> Result<BigCount> {
        if m == 0 || n == 0 {
            return Ok(BigCount::one());
        }
        let steps = to_steps(&good_columns(m).columns);
        let mut layer = DpLayer::start(vec![0; m]);
        for j in 1..=n {
            let slack = (n - j + 1) as i32;
            layer = layer.advance(&steps, |s, c| {
                let mut next = add(s, c);
                if next.iter().any(|p| p.abs() > slack) {
                    return None;
                }
                next.sort_unstable();
                Some(next)
            });
            debug_assert!(layer.table.keys().all(|s| state_in_bounds(s, j)));
            self.check(&layer)?;
        }
        Ok(layer.total_where(|s| s.iter().all(|p| p.abs() <= 1)))
    }

    /// α(m, n) for every n in `0..=n_max` from one compressed pass.
    pub fn count_good_series(&self, m: usize, n_max: usize) -> Result<Vec<BigCount>> {
        let mut out = vec![BigCount::one()];
        if m == 0 {
            out.resize(n_max + 1, BigCount::one());
            return Ok(out);
        }
        let steps = to_steps(&good_columns(m).columns);
        let mut layer = DpLayer::start(vec![0; m]);
        for j in 1..=n_max {
            let slack = (n_max - j + 1) as i32;
            layer = layer.advance(&steps, |s, c| {
                let mut next = add(s, c);
                if next.iter().any(|p| p.abs() > slack) {
                    return None;
                }
                next.sort_unstable();
                Some(next)
            });
            self.check(&layer)?;
            out.push(layer.total_where(|s| s.iter().all(|p| p.abs() <= 1)));
        }
        Ok(out)
    }
}

pub fn count_good(m: usize, n: usize) -> Result<BigCount> {
    Engine::default().count_good(m, n)
}

pub fn count_row_profile(m: usize, n: usize, r: &[i64]) -> Result<BigCount> {
    Engine::default().count_row_profile(m, n, r)
}

pub fn count_profile_pair(m: usize, n: usize, r: &[i64], c: &[i64]) -> Result<BigCount> {
    Engine::default().count_profile_pair(m, n, r, c)
}

pub fn count_good_compressed(m: usize, n: usize) -> Result<BigCount> {
    Engine::default().count_good_compressed(m, n)
}

pub fn count_good_series(m: usize, n_max: usize) -> Result<Vec<BigCount>> {
    Engine::default().count_good_series(m, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_good_oracle, count_profile_pair_oracle, count_row_profile_oracle};

    /// All vectors of length `m` with entries in `-bound..=bound`.
    fn profiles(m: usize, bound: i64) -> Vec<Vec<i64>> {
        let width = (2 * bound + 1) as usize;
        (0..width.pow(m as u32))
            .map(|code| {
                (0..m)
                    .map(|i| (code / width.pow(i as u32) % width) as i64 - bound)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn published_three_row_values() {
        assert_eq!(count_good(3, 4).unwrap(), 90u64);
        assert_eq!(count_good(3, 10).unwrap(), 1172556u64);
        assert_eq!(count_good(1, 0).unwrap(), 1u64);
        assert_eq!(count_good(3, 0).unwrap(), 1u64);
    }

    #[test]
    fn matches_oracle_small() {
        for m in 1..=5 {
            for n in 0..=5 {
                if m * n > 20 {
                    continue;
                }
                assert_eq!(
                    count_good(m, n).unwrap(),
                    count_good_oracle(m, n).unwrap(),
                    "({m},{n})"
                );
            }
        }
        assert_eq!(count_good(5, 5).unwrap(), count_good_oracle(5, 5).unwrap());
    }

    #[test]
    fn row_profile_examples() {
        assert_eq!(count_row_profile(2, 2, &[0, 0]).unwrap(), 2u64);
        assert_eq!(count_row_profile(3, 1, &[1, 1, -1]).unwrap(), 1u64);
        assert_eq!(
            count_row_profile(4, 6, &[0, 0, 0, 0]).unwrap(),
            count_good(4, 6).unwrap()
        );
        assert_eq!(count_row_profile(2, 2, &[1, 0]).unwrap(), 0u64);
        assert!(matches!(
            count_row_profile(3, 2, &[0, 0]),
            Err(Error::LengthMismatch {
                expected: 3,
                actual: 2
            })
        ));
    }

    #[test]
    fn row_profile_matches_oracle() {
        for (m, n) in [(2, 3), (3, 3), (3, 4), (4, 3), (4, 4)] {
            for r in profiles(m, 3) {
                assert_eq!(
                    count_row_profile(m, n, &r).unwrap(),
                    count_row_profile_oracle(m, n, &r).unwrap(),
                    "({m},{n}) r={r:?}"
                );
            }
        }
    }

    #[test]
    fn profile_pair_examples() {
        assert_eq!(count_profile_pair(2, 2, &[0, 0], &[0, 0]).unwrap(), 2u64);
        // [[+,-],[-,+],[+,+]] and its top-two-rows swap
        assert_eq!(count_profile_pair(3, 2, &[0, 0, 2], &[1, 1]).unwrap(), 2u64);
        assert_eq!(
            count_profile_pair_oracle(3, 2, &[0, 0, 2], &[1, 1]).unwrap(),
            2u64
        );
        assert_eq!(count_profile_pair(2, 2, &[2, 0], &[0, 0]).unwrap(), 0u64);
        assert_eq!(
            count_profile_pair(3, 3, &[1, 1, 1], &[1, 1, -1]).unwrap(),
            0u64
        );
        assert!(matches!(
            count_profile_pair(2, 2, &[0, 0], &[2, -2]),
            Err(Error::UnsupportedColumnSum { col: 0, value: 2 })
        ));
        assert!(count_profile_pair(2, 2, &[0, 0], &[0]).is_err());
    }

    #[test]
    fn profile_pair_matches_oracle() {
        for (m, n) in [(2, 3), (3, 3), (4, 2), (3, 4)] {
            for c in profiles(n, 1) {
                for r in profiles(m, 3) {
                    assert_eq!(
                        count_profile_pair(m, n, &r, &c).unwrap(),
                        count_profile_pair_oracle(m, n, &r, &c).unwrap(),
                        "({m},{n}) r={r:?} c={c:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn compressed_agrees() {
        assert_eq!(count_good_compressed(3, 4).unwrap(), 90u64);
        assert_eq!(
            count_good_compressed(6, 6).unwrap(),
            count_good(6, 6).unwrap()
        );
        for k in 0..=5 {
            assert_eq!(
                count_good_compressed(4, 2 * k).unwrap(),
                count_good(3, 2 * k).unwrap()
            );
        }
        for m in 1..=5 {
            for n in 0..=7 {
                assert_eq!(
                    count_good_compressed(m, n).unwrap(),
                    count_good(m, n).unwrap(),
                    "({m},{n})"
                );
            }
        }
    }

    #[test]
    fn series_agrees_with_single_counts() {
        for m in 1..=5 {
            let series = count_good_series(m, 9).unwrap();
            assert_eq!(series.len(), 10);
            for (n, v) in series.iter().enumerate() {
                assert_eq!(*v, count_good(m, n).unwrap(), "({m},{n})");
            }
        }
    }

    #[test]
    fn capacity_error_names_layer() {
        let err = Engine::with_capacity(10).count_good(4, 6).unwrap_err();
        assert!(matches!(err, Error::Capacity { layer: 2, .. }), "{err:?}");
    }
}
