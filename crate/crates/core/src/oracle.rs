//! Brute-force enumeration of good and column-good matrices.
//!
//! Everything here walks the full product of per-column alphabets, so it is
//! only usable at small sizes. It is the ground truth the DP engine and the
//! closed forms are checked against.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::matrix::{Sign, SignMatrix};

/// Default limit on the number of candidate column tuples an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// All ±1 columns of height `m` with sum in {−1, 0, 1}, in lexicographic
/// order (+1 before −1, read top to bottom).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnAlphabet {
    pub m: usize,
    pub columns: Vec<Vec<Sign>>,
}

impl ColumnAlphabet {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

/// Every ±1 column of height `m`, lexicographically ordered.
pub fn all_columns(m: usize) -> Vec<Vec<Sign>> {
    assert!(m < 32, "column height {m} too large to enumerate");
    (0u32..(1u32 << m))
        .map(|bits| {
            (0..m)
                .map(|i| {
                    if bits >> (m - 1 - i) & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect()
        })
        .collect()
}

pub fn column_sum(col: &[Sign]) -> i64 {
    col.iter().map(|s| s.value()).sum()
}

/// Columns of height `m` whose entries sum to exactly `sum`.
pub fn columns_with_sum(m: usize, sum: i64) -> Vec<Vec<Sign>> {
    all_columns(m)
        .into_iter()
        .filter(|c| column_sum(c) == sum)
        .collect()
}

pub fn good_columns(m: usize) -> ColumnAlphabet {
    let columns = all_columns(m)
        .into_iter()
        .filter(|c| column_sum(c).abs() <= 1)
        .collect();
    ColumnAlphabet { m, columns }
}

/// Odometer over the product of per-column alphabets, tracking row sums
/// incrementally and yielding the tuples whose row sums pass `accept`.
struct Odometer<'a, F> {
    m: usize,
    alphabets: Vec<&'a [Vec<Sign>]>,
    digits: Vec<usize>,
    row_sums: Vec<i64>,
    started: bool,
    done: bool,
    accept: F,
}

impl<'a, F: Fn(&[i64]) -> bool> Odometer<'a, F> {
    fn new(m: usize, alphabets: Vec<&'a [Vec<Sign>]>, accept: F) -> Self {
        let done = alphabets.iter().any(|a| a.is_empty());
        let mut row_sums = vec![0i64; m];
        if !done {
            for a in &alphabets {
                for (i, s) in a[0].iter().enumerate() {
                    row_sums[i] += s.value();
                }
            }
        }
        Odometer {
            m,
            digits: vec![0; alphabets.len()],
            alphabets,
            row_sums,
            started: false,
            done,
            accept,
        }
    }

    fn apply(&mut self, col: usize, digit: usize, sign: i64) {
        for (i, s) in self.alphabets[col][digit].iter().enumerate() {
            self.row_sums[i] += sign * s.value();
        }
    }

    /// Advances to the next tuple; false once exhausted.
    fn advance(&mut self) -> bool {
        let mut pos = self.alphabets.len();
        while pos > 0 {
            pos -= 1;
            let d = self.digits[pos];
            self.apply(pos, d, -1);
            if d + 1 < self.alphabets[pos].len() {
                self.digits[pos] = d + 1;
                self.apply(pos, d + 1, 1);
                return true;
            }
            self.digits[pos] = 0;
            self.apply(pos, 0, 1);
        }
        false
    }

    fn next_accepted(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        loop {
            if self.started {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
            }
            if (self.accept)(&self.row_sums) {
                return Some(&self.digits);
            }
        }
    }

    fn matrix(&self) -> SignMatrix {
        let cols: Vec<&[Sign]> = self
            .digits
            .iter()
            .enumerate()
            .map(|(j, &d)| self.alphabets[j][d].as_slice())
            .collect();
        SignMatrix::from_columns(self.m, &cols).expect("odometer columns have height m")
    }

    fn count(mut self) -> u64 {
        let mut total = 0u64;
        while self.next_accepted().is_some() {
            total += 1;
        }
        total
    }
}

/// Brute-force enumerator with a hard limit on the search space.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Deterministic stream of the members of A(m, n).
pub struct GoodMatrices {
    m: usize,
    alphabet: ColumnAlphabet,
    // position into the product space, driven lazily
    state: Option<OdometerState>,
}

struct OdometerState {
    digits: Vec<usize>,
    started: bool,
    done: bool,
    first_column: Option<usize>,
}

impl Iterator for GoodMatrices {
    type Item = SignMatrix;

    fn next(&mut self) -> Option<SignMatrix> {
        let st = self.state.as_mut()?;
        if st.done {
            return None;
        }
        let n = st.digits.len();
        let k = self.alphabet.len();
        // Row sums are rebuilt per tuple; the stream is for witnesses, counting
        // goes through the incremental odometer.
        loop {
            if st.started {
                let mut pos = n;
                let floor = usize::from(st.first_column.is_some());
                loop {
                    if pos == floor {
                        st.done = true;
                        return None;
                    }
                    pos -= 1;
                    if st.digits[pos] + 1 < k {
                        st.digits[pos] += 1;
                        break;
                    }
                    st.digits[pos] = 0;
                }
            } else {
                st.started = true;
            }
            let mut sums = vec![0i64; self.m];
            for &d in &st.digits {
                for (i, s) in self.alphabet.columns[d].iter().enumerate() {
                    sums[i] += s.value();
                }
            }
            if sums.iter().all(|s| s.abs() <= 1) {
                let cols: Vec<&[Sign]> = st
                    .digits
                    .iter()
                    .map(|&d| self.alphabet.columns[d].as_slice())
                    .collect();
                return Some(SignMatrix::from_columns(self.m, &cols).expect("valid columns"));
            }
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Self {
        Oracle { budget }
    }

    fn check_budget(&self, m: usize, n: usize, space: &BigUint) -> Result<()> {
        match space.to_u64() {
            Some(v) if v <= self.budget => Ok(()),
            _ => Err(Error::BudgetExceeded {
                rows: m,
                cols: n,
                needed: space.to_string(),
                budget: self.budget,
            }),
        }
    }

    fn product_size(sizes: impl Iterator<Item = usize>) -> BigUint {
        sizes.fold(BigUint::one(), |acc, s| acc * s)
    }

    /// Streams A(m, n) in lexicographic order of column-alphabet indices.
    pub fn enumerate_good(&self, m: usize, n: usize) -> Result<GoodMatrices> {
        self.enumerate_inner(m, n, None)
    }

    /// The part of the A(m, n) stream whose first column is alphabet entry
    /// `first`. Concatenating the partitions for every `first` in order gives
    /// back the full stream.
    pub fn enumerate_good_partition(
        &self,
        m: usize,
        n: usize,
        first: usize,
    ) -> Result<GoodMatrices> {
        self.enumerate_inner(m, n, Some(first))
    }

    fn enumerate_inner(&self, m: usize, n: usize, first: Option<usize>) -> Result<GoodMatrices> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyDimension { rows: m, cols: n });
        }
        let alphabet = good_columns(m);
        self.check_budget(
            m,
            n,
            &Self::product_size(std::iter::repeat_n(alphabet.len(), n)),
        )?;
        let mut digits = vec![0; n];
        let valid_first = first.is_none_or(|f| f < alphabet.len());
        if let Some(f) = first {
            digits[0] = f;
        }
        Ok(GoodMatrices {
            m,
            alphabet,
            state: valid_first.then_some(OdometerState {
                digits,
                started: false,
                done: false,
                first_column: first,
            }),
        })
    }

    /// |A(m, n)| by exhaustive search; n = 0 counts the empty matrix.
    pub fn count_good(&self, m: usize, n: usize) -> Result<BigCount> {
        if n == 0 {
            return Ok(BigCount::one());
        }
        let alphabet = good_columns(m);
        self.check_budget(
            m,
            n,
            &Self::product_size(std::iter::repeat_n(alphabet.len(), n)),
        )?;
        let total: u64 = (0..alphabet.len())
            .into_par_iter()
            .map(|first| {
                let mut alphabets: Vec<&[Vec<Sign>]> = vec![&alphabet.columns; n];
                alphabets[0] = std::slice::from_ref(&alphabet.columns[first]);
                Odometer::new(m, alphabets, |s: &[i64]| s.iter().all(|x| x.abs() <= 1)).count()
            })
            .sum();
        Ok(BigCount::from(total))
    }

    /// |A_r(m, n)|: column-good matrices with row-sum vector `r`.
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
        if n == 0 {
            return Ok(BigCount::one());
        }
        let alphabet = good_columns(m);
        self.check_budget(
            m,
            n,
            &Self::product_size(std::iter::repeat_n(alphabet.len(), n)),
        )?;
        let alphabets: Vec<&[Vec<Sign>]> = vec![&alphabet.columns; n];
        Ok(BigCount::from(
            Odometer::new(m, alphabets, |s: &[i64]| s == r).count(),
        ))
    }

    /// |A_{r,c}(m, n)|: all ±1 matrices with row sums `r` and column sums `c`.
    pub fn count_profile_pair(&self, m: usize, n: usize, r: &[i64], c: &[i64]) -> Result<BigCount> {
        self.profile_pair_matrices(m, n, r, c)
            .map(|v| BigCount::from(v.len() as u64))
    }

    /// Members of A_{r,c}(m, n), in lexicographic column order.
    pub fn profile_pair_matrices(
        &self,
        m: usize,
        n: usize,
        r: &[i64],
        c: &[i64],
    ) -> Result<Vec<SignMatrix>> {
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
        if m == 0 || n == 0 || !profile_feasible(r, n) || !profile_feasible(c, m) {
            return Ok(Vec::new());
        }
        let per_column: Vec<Vec<Vec<Sign>>> = c.iter().map(|&s| columns_with_sum(m, s)).collect();
        self.check_budget(
            m,
            n,
            &Self::product_size(per_column.iter().map(|a| a.len())),
        )?;
        let alphabets: Vec<&[Vec<Sign>]> = per_column.iter().map(|a| a.as_slice()).collect();
        let mut odo = Odometer::new(m, alphabets, |s: &[i64]| s == r);
        let mut out = Vec::new();
        while odo.next_accepted().is_some() {
            out.push(odo.matrix());
        }
        Ok(out)
    }

    /// Members of A_r(m, n) (column-good, row sums `r`).
    pub fn row_profile_matrices(&self, m: usize, n: usize, r: &[i64]) -> Result<Vec<SignMatrix>> {
        if r.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: r.len(),
            });
        }
        if m == 0 || n == 0 || !profile_feasible(r, n) {
            return Ok(Vec::new());
        }
        let alphabet = good_columns(m);
        self.check_budget(
            m,
            n,
            &Self::product_size(std::iter::repeat_n(alphabet.len(), n)),
        )?;
        let alphabets: Vec<&[Vec<Sign>]> = vec![&alphabet.columns; n];
        let mut odo = Odometer::new(m, alphabets, |s: &[i64]| s == r);
        let mut out = Vec::new();
        while odo.next_accepted().is_some() {
            out.push(odo.matrix());
        }
        Ok(out)
    }
}

/// Every entry has the parity of `len` and magnitude at most `len`.
pub fn profile_feasible(values: &[i64], len: usize) -> bool {
    let len = len as i64;
    values
        .iter()
        .all(|v| v.abs() <= len && (v - len).rem_euclid(2) == 0)
}

pub fn enumerate_good(m: usize, n: usize) -> Result<GoodMatrices> {
    Oracle::default().enumerate_good(m, n)
}

pub fn count_good_oracle(m: usize, n: usize) -> Result<BigCount> {
    Oracle::default().count_good(m, n)
}

pub fn count_row_profile_oracle(m: usize, n: usize, r: &[i64]) -> Result<BigCount> {
    Oracle::default().count_row_profile(m, n, r)
}

pub fn count_profile_pair_oracle(m: usize, n: usize, r: &[i64], c: &[i64]) -> Result<BigCount> {
    Oracle::default().count_profile_pair(m, n, r, c)
}

/// Column-type tallies of a three-row matrix.
///
/// `x, y, z, w` count the columns whose top two entries are (+,+), (−,−),
/// (+,−), (−,+). `u, v` count the columns with top pair summing to zero whose
/// third entry is +1 or −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
    pub u: usize,
    pub v: usize,
}

impl Census {
    /// (x − y, z − w, u − v).
    pub fn differences(&self) -> (i64, i64, i64) {
        (
            self.x as i64 - self.y as i64,
            self.z as i64 - self.w as i64,
            self.u as i64 - self.v as i64,
        )
    }
}

/// The eight values (x − y, z − w, u − v) can take on a good three-row matrix.
pub const CENSUS_DIFFERENCES: [(i64, i64, i64); 8] = [
    (0, 1, 1),
    (0, -1, -1),
    (0, 1, -1),
    (0, -1, 1),
    (1, 0, 0),
    (-1, 0, 0),
    (1, 0, 2),
    (-1, 0, -2),
];

pub fn column_census(matrix: &SignMatrix) -> Result<Census> {
    if matrix.rows() != 3 {
        return Err(Error::WrongRowCount {
            expected: 3,
            actual: matrix.rows(),
        });
    }
    let mut c = Census {
        x: 0,
        y: 0,
        z: 0,
        w: 0,
        u: 0,
        v: 0,
    };
    for j in 0..matrix.cols() {
        match (matrix.sign(0, j), matrix.sign(1, j)) {
            (Sign::Plus, Sign::Plus) => c.x += 1,
            (Sign::Minus, Sign::Minus) => c.y += 1,
            (top, _) => {
                if top == Sign::Plus {
                    c.z += 1;
                } else {
                    c.w += 1;
                }
                if matrix.sign(2, j) == Sign::Plus {
                    c.u += 1;
                } else {
                    c.v += 1;
                }
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SignMatrix;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Filters all 2^(mn) sign matrices; independent of the column alphabet.
    fn brute_force_good(m: usize, n: usize) -> Vec<SignMatrix> {
        let cells = m * n;
        (0u64..(1u64 << cells))
            .map(|bits| {
                let vals: Vec<i64> = (0..cells)
                    .map(|i| {
                        if bits >> (cells - 1 - i) & 1 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect();
                SignMatrix::from_values(m, n, &vals).unwrap()
            })
            .filter(|a| a.is_good())
            .collect()
    }

    #[test]
    fn alphabet_sizes() {
        let a1 = good_columns(1);
        assert_eq!(a1.columns, vec![vec![Sign::Plus], vec![Sign::Minus]]);
        let a2 = good_columns(2);
        assert_eq!(
            a2.columns,
            vec![vec![Sign::Plus, Sign::Minus], vec![Sign::Minus, Sign::Plus]]
        );
        assert_eq!(good_columns(3).len(), 6);
        for m in 1..=10u64 {
            let expected = if m % 2 == 0 {
                binom(m, m / 2)
            } else {
                binom(m, m.div_ceil(2)) + binom(m, (m - 1) / 2)
            };
            assert_eq!(good_columns(m as usize).len() as u64, expected, "m={m}");
        }
        let a3 = good_columns(3);
        let mut sorted = a3.columns.clone();
        sorted.sort();
        assert_eq!(sorted, a3.columns);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_good(1, 1).unwrap().count(), 2);
        assert_eq!(enumerate_good(3, 2).unwrap().count(), 6);
        assert_eq!(enumerate_good(3, 3).unwrap().count(), 102);
        assert_eq!(count_good_oracle(2, 4).unwrap(), 6u64);
        assert_eq!(count_good_oracle(4, 4).unwrap(), 90u64);
        assert_eq!(count_good_oracle(3, 3).unwrap(), 102u64);
        assert_eq!(count_good_oracle(3, 0).unwrap(), 1u64);
    }

    #[test]
    fn enumeration_matches_full_brute_force() {
        for (m, n) in [(2, 2), (3, 3), (2, 5), (4, 3), (3, 4)] {
            let mut expected = brute_force_good(m, n);
            expected.sort_by_key(|a| (0..n).map(|j| a.column(j)).collect::<Vec<_>>());
            let got: Vec<_> = enumerate_good(m, n).unwrap().collect();
            assert_eq!(got, expected, "({m},{n})");
            assert_eq!(count_good_oracle(m, n).unwrap(), got.len() as u64);
        }
        assert_eq!(brute_force_good(3, 3).len(), 102);
    }

    #[test]
    fn partitions_concatenate_to_stream() {
        let oracle = Oracle::default();
        let full: Vec<_> = oracle.enumerate_good(3, 4).unwrap().collect();
        let parts: Vec<_> = (0..6)
            .flat_map(|f| oracle.enumerate_good_partition(3, 4, f).unwrap())
            .collect();
        assert_eq!(full, parts);
        assert_eq!(oracle.enumerate_good_partition(3, 4, 6).unwrap().count(), 0);
        assert_eq!(oracle.enumerate_good_partition(2, 1, 1).unwrap().count(), 1);
    }

    #[test]
    fn budget_is_a_hard_error() {
        let err = Oracle::with_budget(1000).count_good(3, 4).unwrap_err();
        match err {
            Error::BudgetExceeded { rows, cols, .. } => assert_eq!((rows, cols), (3, 4)),
            e => panic!("unexpected {e:?}"),
        }
        assert!(Oracle::with_budget(1296).count_good(3, 4).is_ok());
        assert!(Oracle::default().enumerate_good(9, 12).is_err());
    }

    #[test]
    fn row_profile_examples() {
        assert_eq!(count_row_profile_oracle(2, 2, &[0, 0]).unwrap(), 2u64);
        assert_eq!(count_row_profile_oracle(2, 2, &[1, 0]).unwrap(), 0u64);
        assert_eq!(count_row_profile_oracle(1, 2, &[0]).unwrap(), 2u64);
        assert_eq!(count_row_profile_oracle(2, 2, &[4, -4]).unwrap(), 0u64);
        assert!(matches!(
            count_row_profile_oracle(2, 2, &[0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn profile_pair_examples() {
        assert_eq!(
            count_profile_pair_oracle(2, 2, &[0, 0], &[0, 0]).unwrap(),
            2u64
        );
        assert_eq!(count_profile_pair_oracle(1, 1, &[1], &[1]).unwrap(), 1u64);
        assert_eq!(
            count_profile_pair_oracle(2, 2, &[2, -2], &[0, 0]).unwrap(),
            1u64
        );
        assert_eq!(
            count_profile_pair_oracle(2, 2, &[2, 0], &[0, 0]).unwrap(),
            0u64
        );
        assert!(count_profile_pair_oracle(2, 2, &[0, 0], &[0]).is_err());
    }

    #[test]
    fn row_profiles_sum_to_total() {
        for (m, n) in [(2, 3), (3, 3), (3, 4), (4, 3), (4, 4)] {
            let mut total = BigCount::zero();
            for code in 0..3usize.pow(m as u32) {
                let r: Vec<i64> = (0..m)
                    .map(|i| (code / 3usize.pow(i as u32) % 3) as i64 - 1)
                    .collect();
                total += count_row_profile_oracle(m, n, &r).unwrap();
            }
            assert_eq!(total, count_good_oracle(m, n).unwrap(), "({m},{n})");
            if n % 2 == 0 {
                assert_eq!(
                    count_row_profile_oracle(m, n, &vec![0; m]).unwrap(),
                    count_good_oracle(m, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn extension_by_negated_total() {
        // even m: A_r(m-1, n) and A_{r+}(m, n) are in bijection
        for n in 1..=4 {
            for r1 in -3i64..=3 {
                for r2 in -3i64..=3 {
                    for r3 in -3i64..=3 {
                        let r = [r1, r2, r3];
                        let plus = [r1, r2, r3, -(r1 + r2 + r3)];
                        assert_eq!(
                            count_row_profile_oracle(3, n, &r).unwrap(),
                            count_row_profile_oracle(4, n, &plus).unwrap(),
                            "n={n} r={r:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn census_examples() {
        let a = SignMatrix::from_rows(&[vec![1], vec![1], vec![-1]]).unwrap();
        assert_eq!(
            column_census(&a).unwrap(),
            Census {
                x: 1,
                y: 0,
                z: 0,
                w: 0,
                u: 0,
                v: 0
            }
        );
        let b = SignMatrix::from_rows(&[vec![1, -1], vec![-1, 1], vec![1, -1]]).unwrap();
        assert_eq!(
            column_census(&b).unwrap(),
            Census {
                x: 0,
                y: 0,
                z: 1,
                w: 1,
                u: 1,
                v: 1
            }
        );
        // top pairs (+,+), (−,−), (+,−) with column sums ±1
        let c = SignMatrix::from_rows(&[vec![1, -1, 1], vec![1, -1, -1], vec![-1, 1, 1]]).unwrap();
        assert!(c.is_good());
        let cc = column_census(&c).unwrap();
        assert_eq!((cc.x, cc.y, cc.z, cc.w), (1, 1, 1, 0));
        assert!(column_census(&SignMatrix::from_rows(&[vec![1], vec![-1]]).unwrap()).is_err());
    }

    #[test]
    fn census_differences_are_restricted() {
        for n in 1..=6 {
            for a in enumerate_good(3, n).unwrap() {
                let c = column_census(&a).unwrap();
                assert_eq!(c.x + c.y + c.z + c.w, n);
                assert_eq!(c.u + c.v, c.z + c.w);
                let d = c.differences();
                if n % 2 == 0 {
                    assert_eq!(d, (0, 0, 0));
                } else {
                    assert!(CENSUS_DIFFERENCES.contains(&d), "{d:?}");
                }
            }
        }
    }
}
