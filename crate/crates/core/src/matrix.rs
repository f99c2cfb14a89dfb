//! ±1 matrices, their sum vectors and the discrepancy predicates.
//!
//! All indices in this API are 0-based: `entry(i, j)` is the entry in the
//! `(i+1)`-th row and `(j+1)`-th column.

use std::fmt;

use crate::error::{Error, Result};

/// One cell of a sign matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Whether a [`SumVector`] holds row sums or column sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

/// Row sums or column sums of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SumVector {
    pub values: Vec<i64>,
    pub axis: Axis,
}

impl SumVector {
    pub fn new(values: Vec<i64>, axis: Axis) -> Self {
        SumVector { values, axis }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn max_abs(&self) -> u64 {
        self.values
            .iter()
            .map(|v| v.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

/// A dense, immutable `rows × cols` matrix with entries in {+1, −1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    // row-major
    entries: Vec<Sign>,
}

impl SignMatrix {
    /// Builds a matrix from row-major integer entries, rejecting anything
    /// other than +1 and −1.
    pub fn from_values(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension { rows, cols });
        }
        if values.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                actual: values.len(),
            });
        }
        let entries = values
            .iter()
            .enumerate()
            .map(|(idx, &v)| {
                Sign::from_value(v).ok_or(Error::InvalidEntry {
                    row: idx / cols,
                    col: idx % cols,
                    value: v,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: bad.len(),
            });
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_values(m, n, &flat)
    }

    pub fn from_signs(rows: usize, cols: usize, entries: Vec<Sign>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Ok(SignMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Assembles a matrix from its columns, each of height `rows`.
    pub fn from_columns(rows: usize, columns: &[&[Sign]]) -> Result<Self> {
        let cols = columns.len();
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension { rows, cols });
        }
        let mut entries = vec![Sign::Plus; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    actual: col.len(),
                });
            }
            for (i, &s) in col.iter().enumerate() {
                entries[i * cols + j] = s;
            }
        }
        Ok(SignMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn sign(&self, i: usize, j: usize) -> Sign {
        self.entries[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.sign(i, j).value()
    }

    pub fn column(&self, j: usize) -> Vec<Sign> {
        (0..self.rows).map(|i| self.sign(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Sign] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sums(&self) -> SumVector {
        let values = (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.value()).sum())
            .collect();
        SumVector::new(values, Axis::Row)
    }

    pub fn col_sums(&self) -> SumVector {
        let values = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entry(i, j)).sum())
            .collect();
        SumVector::new(values, Axis::Column)
    }

    /// Largest absolute row or column sum.
    pub fn discrepancy(&self) -> u64 {
        self.row_sums().max_abs().max(self.col_sums().max_abs())
    }

    /// Discrepancy at most one.
    pub fn is_good(&self) -> bool {
        self.discrepancy() <= 1
    }

    /// Every column sum lies in {−1, 0, 1}; rows are unconstrained.
    pub fn is_column_good(&self) -> bool {
        self.col_sums().max_abs() <= 1
    }

    pub fn transpose(&self) -> SignMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.sign(i, j));
            }
        }
        SignMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Returns a copy with rows `a` and `b` exchanged in every column `j`
    /// where `swap(j)` holds.
    pub(crate) fn with_rows_swapped_where(
        &self,
        a: usize,
        b: usize,
        swap: impl Fn(usize) -> bool,
    ) -> SignMatrix {
        let mut out = self.clone();
        for j in (0..self.cols).filter(|&j| swap(j)) {
            out.entries.swap(a * self.cols + j, b * self.cols + j);
        }
        out
    }

    /// Serializes in the line format: one row per line, `+`/`-` per entry.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            s.extend(self.row(i).iter().map(|x| x.symbol()));
            s.push('\n');
        }
        s
    }

    /// Parses one matrix from the line format. Reading stops at the first
    /// blank line or at end of input.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<Sign>> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.is_empty() {
                break;
            }
            let row = line
                .chars()
                .enumerate()
                .map(|(c, ch)| match ch {
                    '+' => Ok(Sign::Plus),
                    '-' => Ok(Sign::Minus),
                    other => Err(Error::Parse {
                        line: idx + 1,
                        reason: format!("unexpected character {other:?} at column {}", c + 1),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::Parse {
                        line: idx + 1,
                        reason: format!("row has {} entries, expected {}", row.len(), first.len()),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 1,
                reason: "no rows".into(),
            });
        }
        let m = rows.len();
        let n = rows[0].len();
        Self::from_signs(m, n, rows.into_iter().flatten().collect())
    }

    /// Parses a sequence of matrices separated by blank lines.
    pub fn parse_many(text: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut block = String::new();
        let mut start_line = 1;
        for (idx, line) in text.lines().enumerate() {
            if line.is_empty() {
                if !block.is_empty() {
                    out.push(Self::parse_text(&block).map_err(|e| shift_line(e, start_line))?);
                    block.clear();
                }
                start_line = idx + 2;
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        if !block.is_empty() {
            out.push(Self::parse_text(&block).map_err(|e| shift_line(e, start_line))?);
        }
        Ok(out)
    }
}

fn shift_line(e: Error, start: usize) -> Error {
    match e {
        Error::Parse { line, reason } => Error::Parse {
            line: line + start - 1,
            reason,
        },
        other => other,
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignMatrix({}x{}:", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = self.row(i).iter().map(|s| s.symbol()).collect();
            write!(f, " {row}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> SignMatrix {
        SignMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(m(&[&[1]]).row_sums().values, vec![1]);
        assert_eq!(m(&[&[1, -1], &[-1, 1]]).row_sums().values, vec![0, 0]);
        assert_eq!(
            m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).row_sums().values,
            vec![3, 3, 3]
        );

        assert_eq!(m(&[&[1]]).col_sums().values, vec![1]);
        assert_eq!(m(&[&[1, -1], &[-1, 1]]).col_sums().values, vec![0, 0]);
        let col = m(&[&[1], &[1], &[-1]]).col_sums();
        assert_eq!(col.values, vec![1]);
        assert_eq!(col.axis, Axis::Column);
    }

    #[test]
    fn discrepancy_and_goodness() {
        assert_eq!(m(&[&[1, -1], &[-1, 1]]).discrepancy(), 0);
        assert_eq!(m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).discrepancy(), 3);
        assert_eq!(m(&[&[1, 1], &[-1, 1]]).discrepancy(), 2);

        assert!(m(&[&[1, -1], &[-1, 1]]).is_good());
        assert!(!m(&[&[1, 1, 1]]).is_good());
        assert!(m(&[&[1], &[1], &[-1]]).is_good());

        assert!(m(&[&[1, 1], &[-1, -1]]).is_column_good());
        assert!(!m(&[&[1], &[1]]).is_column_good());
        assert!(m(&[&[1], &[1], &[-1]]).is_column_good());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(m(&[&[1, -1]]).transpose(), m(&[&[1], &[-1]]));
        let a = m(&[&[1, -1], &[-1, 1]]);
        assert_eq!(a.transpose(), a);
        let b = m(&[&[1, 1, -1], &[-1, 1, 1]]);
        assert_eq!(b.transpose().transpose(), b);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(
            SignMatrix::from_values(1, 2, &[1, 0]),
            Err(Error::InvalidEntry {
                row: 0,
                col: 1,
                value: 0
            })
        ));
        assert!(matches!(
            SignMatrix::from_values(0, 2, &[]),
            Err(Error::EmptyDimension { .. })
        ));
        assert!(SignMatrix::from_values(2, 2, &[1, 1, 1]).is_err());
    }

    #[test]
    fn text_format() {
        let a = m(&[&[1, -1, 1], &[-1, -1, 1]]);
        assert_eq!(a.to_text(), "+-+\n--+\n");
        assert_eq!(SignMatrix::parse_text("+-+\n--+\n\n+++\n").unwrap(), a);
        assert!(matches!(
            SignMatrix::parse_text("+-\n+0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(SignMatrix::parse_text("+-\n+\n").is_err());
        let many = SignMatrix::parse_many("+\n\n-\n-\n").unwrap();
        assert_eq!(many.len(), 2);
        assert_eq!(many[1].rows(), 2);
        assert!(matches!(
            SignMatrix::parse_many("+\n\n-\nx\n"),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    fn arb_matrix() -> impl Strategy<Value = SignMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], r * c)
                .prop_map(move |v| SignMatrix::from_values(r, c, &v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn transpose_preserves_discrepancy(a in arb_matrix()) {
            prop_assert_eq!(a.transpose().discrepancy(), a.discrepancy());
            prop_assert_eq!(a.transpose().transpose(), a.clone());
        }

        #[test]
        fn good_implies_column_good(a in arb_matrix()) {
            if a.is_good() {
                prop_assert!(a.is_column_good());
                if a.rows() % 2 == 0 {
                    prop_assert!(a.col_sums().values.iter().all(|&c| c == 0));
                }
            }
        }

        #[test]
        fn parity_law(a in arb_matrix()) {
            let n = a.cols() as i64;
            let m = a.rows() as i64;
            prop_assert!(a.row_sums().values.iter().all(|r| (r - n).rem_euclid(2) == 0 && r.abs() <= n));
            prop_assert!(a.col_sums().values.iter().all(|c| (c - m).rem_euclid(2) == 0 && c.abs() <= m));
        }

        #[test]
        fn text_round_trip(a in arb_matrix()) {
            let text = a.to_text();
            let back = SignMatrix::parse_text(&text).unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, a);
        }
    }
}
