//! Three-row good matrices as unit-step walks on ℤ³.
//!
//! A column (x, y, z) with sum ±1 maps to the unit step
//! ((y+z)/2, (z+x)/2, (x+y)/2). Reading columns left to right turns a good
//! 3×n matrix into an n-step walk from the origin that ends at the origin
//! (n even) or at one of eight fixed points (n odd), and every such walk
//! arises from exactly one matrix.

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::layer::Layer;
use crate::matrix::{Sign, SignMatrix};

pub type Point = [i64; 3];

/// A unit step of ℤ³: one coordinate ±1, the others zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step(Point);

pub const UNIT_STEPS: [Step; 6] = [
    Step([1, 0, 0]),
    Step([-1, 0, 0]),
    Step([0, 1, 0]),
    Step([0, -1, 0]),
    Step([0, 0, 1]),
    Step([0, 0, -1]),
];

/// Where an odd-length walk may end.
pub const ODD_ENDPOINTS: [Point; 8] = [
    [1, 0, 0],
    [-1, 0, 0],
    [0, 1, 0],
    [0, -1, 0],
    [0, 0, 1],
    [0, 0, -1],
    [1, 1, 1],
    [-1, -1, -1],
];

impl Step {
    pub fn new(p: Point) -> Result<Step> {
        let step = Step(p);
        if UNIT_STEPS.contains(&step) {
            Ok(step)
        } else {
            Err(Error::InvalidWalk(format!("{p:?} is not a unit step")))
        }
    }

    pub fn coords(&self) -> Point {
        self.0
    }
}

/// A walk from the origin; the endpoint is derived from the steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn new(steps: Vec<Step>) -> Self {
        Walk { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn endpoint(&self) -> Point {
        self.steps.iter().fold([0; 3], |mut acc, s| {
            for (a, d) in acc.iter_mut().zip(s.0) {
                *a += d;
            }
            acc
        })
    }

    /// Membership in W_n for n = number of steps.
    pub fn in_family(&self) -> bool {
        endpoint_allowed(self.len(), &self.endpoint())
    }
}

fn endpoint_allowed(n: usize, p: &Point) -> bool {
    if n.is_multiple_of(2) {
        *p == [0, 0, 0]
    } else {
        ODD_ENDPOINTS.contains(p)
    }
}

pub fn phi_column(col: &[Sign]) -> Result<Step> {
    if col.len() != 3 {
        return Err(Error::WrongRowCount {
            expected: 3,
            actual: col.len(),
        });
    }
    let (x, y, z) = (col[0].value(), col[1].value(), col[2].value());
    let sum = x + y + z;
    if sum.abs() != 1 {
        return Err(Error::NotUnitColumn { sum });
    }
    Ok(Step([(y + z) / 2, (z + x) / 2, (x + y) / 2]))
}

/// Inverse of [`phi_column`]: the step (a, b, c) comes from the column
/// (b+c−a, a+c−b, a+b−c).
pub fn step_column(step: Step) -> [Sign; 3] {
    let [a, b, c] = step.0;
    [b + c - a, a + c - b, a + b - c]
        .map(|v| Sign::from_value(v).expect("unit steps invert to ±1 columns"))
}

pub fn phi(matrix: &SignMatrix) -> Result<Walk> {
    if matrix.rows() != 3 {
        return Err(Error::WrongRowCount {
            expected: 3,
            actual: matrix.rows(),
        });
    }
    if !matrix.is_good() {
        return Err(Error::NotGood {
            discrepancy: matrix.discrepancy(),
        });
    }
    let steps = (0..matrix.cols())
        .map(|j| phi_column(&matrix.column(j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Walk { steps })
}

pub fn phi_inverse(walk: &Walk) -> Result<SignMatrix> {
    if !walk.in_family() {
        return Err(Error::InvalidWalk(format!(
            "{}-step walk ends at {:?}",
            walk.len(),
            walk.endpoint()
        )));
    }
    let columns: Vec<[Sign; 3]> = walk.steps.iter().map(|&s| step_column(s)).collect();
    let refs: Vec<&[Sign]> = columns.iter().map(|c| c.as_slice()).collect();
    SignMatrix::from_columns(3, &refs)
}

/// |W_n| by dynamic programming over lattice positions.
pub fn count_walks(n: usize) -> BigCount {
    let mut layer = Layer::start([0i64; 3]);
    for j in 1..=n {
        // every allowed endpoint has all coordinates in {−1, 0, 1}
        let slack = (n - j + 1) as i64;
        layer = layer.advance(&UNIT_STEPS, |p, s| {
            let next = [p[0] + s.0[0], p[1] + s.0[1], p[2] + s.0[2]];
            next.iter().all(|c| c.abs() <= slack).then_some(next)
        });
    }
    layer.total_where(|p| endpoint_allowed(n, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::alpha_three;
    use crate::oracle::enumerate_good;
    use std::collections::BTreeSet;

    fn col(v: [i64; 3]) -> Vec<Sign> {
        v.iter().map(|&x| Sign::from_value(x).unwrap()).collect()
    }

    /// All 6^n step sequences, filtered by endpoint.
    fn brute_force_walks(n: usize) -> Vec<Walk> {
        let mut out = Vec::new();
        for code in 0..6usize.pow(n as u32) {
            let steps = (0..n)
                .map(|i| UNIT_STEPS[code / 6usize.pow(i as u32) % 6])
                .collect();
            let w = Walk::new(steps);
            if w.in_family() {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn phi_column_examples() {
        assert_eq!(phi_column(&col([1, 1, -1])).unwrap(), Step([0, 0, 1]));
        assert_eq!(phi_column(&col([-1, -1, 1])).unwrap(), Step([0, 0, -1]));
        assert!(matches!(
            phi_column(&col([1, 1, 1])),
            Err(Error::NotUnitColumn { sum: 3 })
        ));
        assert_eq!(
            step_column(Step([0, 0, 1])),
            [Sign::Plus, Sign::Plus, Sign::Minus]
        );
        for s in UNIT_STEPS {
            assert_eq!(phi_column(&step_column(s)).unwrap(), s);
        }
    }

    #[test]
    fn phi_examples() {
        let a = SignMatrix::from_rows(&[vec![1, -1], vec![1, -1], vec![-1, 1]]).unwrap();
        let w = phi(&a).unwrap();
        assert_eq!(w.steps, vec![Step([0, 0, 1]), Step([0, 0, -1])]);
        assert_eq!(w.endpoint(), [0, 0, 0]);
        assert_eq!(phi_inverse(&w).unwrap(), a);

        let bad = SignMatrix::from_rows(&[vec![1, 1], vec![1, -1], vec![-1, 1]]).unwrap();
        assert!(matches!(phi(&bad), Err(Error::NotGood { .. })));
        let two = SignMatrix::from_rows(&[vec![1], vec![-1]]).unwrap();
        assert!(matches!(phi(&two), Err(Error::WrongRowCount { .. })));

        let off = Walk::new(vec![Step([1, 0, 0]), Step([1, 0, 0])]);
        assert!(matches!(phi_inverse(&off), Err(Error::InvalidWalk(_))));
        assert!(Step::new([1, 1, 0]).is_err());
    }

    #[test]
    fn endpoints_follow_parity() {
        for n in 1..=5 {
            for a in enumerate_good(3, n).unwrap() {
                let end = phi(&a).unwrap().endpoint();
                if n % 2 == 0 {
                    assert_eq!(end, [0, 0, 0]);
                } else {
                    assert!(ODD_ENDPOINTS.contains(&end), "{end:?}");
                }
            }
        }
    }

    #[test]
    fn bijection_small() {
        for n in 1..=5 {
            let mats: Vec<_> = enumerate_good(3, n).unwrap().collect();
            let image: BTreeSet<Walk> = mats.iter().map(|a| phi(a).unwrap()).collect();
            assert_eq!(image.len(), mats.len(), "injective at n={n}");
            let all: BTreeSet<Walk> = brute_force_walks(n).into_iter().collect();
            assert_eq!(image, all, "surjective at n={n}");
            for a in &mats {
                assert_eq!(&phi_inverse(&phi(a).unwrap()).unwrap(), a);
            }
        }
    }

    #[test]
    fn walk_counts() {
        assert_eq!(count_walks(0), 1u64);
        assert_eq!(count_walks(2), 6u64);
        assert_eq!(count_walks(4), 90u64);
        assert_eq!(count_walks(3), 102u64);
        assert_eq!(brute_force_walks(3).len(), 102);
        for n in 0..=20 {
            assert_eq!(count_walks(n), alpha_three(n), "n={n}");
        }
    }
}
