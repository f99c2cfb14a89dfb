//! Majorization of row-sum vectors and the counting monotonicity it implies.
//!
//! If r′ majorizes r then there are at least as many column-good matrices
//! with row sums r as with row sums r′. The proof goes through a chain of
//! ±2 transfers ([`dalton_chain`]) and an injection ([`psi`]) that undoes one
//! transfer on the first two rows; both are implemented here together with
//! an exhaustive checker.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::count::BigCount;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::oracle::{profile_feasible, Oracle};

pub type ProfileVector = Vec<i64>;

fn show(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn sorted_desc(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// `x ⪰ y`: equal totals, and every prefix sum of x sorted decreasingly
/// dominates the corresponding prefix sum of y.
pub fn majorizes(x: &[i64], y: &[i64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    Ok(majorizes_sorted(&sorted_desc(x), &sorted_desc(y)))
}

fn majorizes_sorted(xs: &[i64], ys: &[i64]) -> bool {
    let mut px = 0;
    let mut py = 0;
    for (a, b) in xs.iter().zip(ys) {
        px += a;
        py += b;
        if px < py {
            return false;
        }
    }
    px == py
}

/// Vectors from r′ down to r, each obtained from the previous by moving 2
/// from one coordinate to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaltonChain {
    pub vectors: Vec<ProfileVector>,
}

impl DaltonChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Consecutive vectors differ by a permutation of (+2, −2, 0, …, 0) and
    /// each majorizes the next.
    pub fn is_valid(&self) -> bool {
        self.vectors.windows(2).all(|w| {
            let diff: Vec<i64> = w[0].iter().zip(&w[1]).map(|(a, b)| a - b).collect();
            let mut nz: Vec<i64> = diff.iter().copied().filter(|&d| d != 0).collect();
            nz.sort_unstable();
            nz == [-2, 2] && majorizes(&w[0], &w[1]).unwrap_or(false)
        })
    }
}

/// Builds a transfer chain from `r_prime` down to `r`.
///
/// Coordinates are visited in the decreasing order of `r_prime` (ties by
/// index) and `r` is laid out in the same order. Each step takes 2 from the
/// first coordinate holding an excess over that layout and gives it to the
/// next coordinate after it holding a deficit. The last vector is `r`
/// itself whenever `r` is ordered like `r_prime`, and a rearrangement of `r`
/// otherwise.
pub fn dalton_chain(r: &[i64], r_prime: &[i64]) -> Result<DaltonChain> {
    if r.len() != r_prime.len() {
        return Err(Error::LengthMismatch {
            expected: r_prime.len(),
            actual: r.len(),
        });
    }
    if let Some(&first) = r_prime.first().or(r.first()) {
        if r.iter()
            .chain(r_prime)
            .any(|v| (v - first).rem_euclid(2) != 0)
        {
            return Err(Error::ParityMismatch(show(r), show(r_prime)));
        }
    }
    if !majorizes(r_prime, r)? {
        return Err(Error::NotMajorized(show(r_prime), show(r)));
    }
    let m = r.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| r_prime[b].cmp(&r_prime[a]).then(a.cmp(&b)));
    let r_sorted = sorted_desc(r);
    let mut target = vec![0; m];
    for (rank, &pos) in order.iter().enumerate() {
        target[pos] = r_sorted[rank];
    }

    let mut current = r_prime.to_vec();
    let mut vectors = vec![current.clone()];
    loop {
        let excess = |p: usize, c: &[i64]| c[p] - target[p];
        let Some(i) = order.iter().position(|&p| excess(p, &current) != 0) else {
            break;
        };
        let from = order[i];
        debug_assert!(excess(from, &current) > 0);
        let to = order[i + 1..]
            .iter()
            .copied()
            .find(|&p| excess(p, &current) < 0)
            .expect("a deficit follows every leading excess");
        current[from] -= 2;
        current[to] += 2;
        vectors.push(current.clone());
    }
    Ok(DaltonChain { vectors })
}

/// Running differences between the first two rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixDifference {
    /// `s[l-1]` = Σ_{j≤l} (b_{1j} − b_{2j}) for l = 1..=n.
    pub s: Vec<i64>,
    /// First 1-based column where the running difference reaches the target.
    pub k: Option<usize>,
}

/// Prefix differences of rows 1 and 2, with `k` the first column where the
/// running difference equals `target`.
pub fn prefix_difference(matrix: &SignMatrix, target: i64) -> PrefixDifference {
    let mut s = Vec::with_capacity(matrix.cols());
    let mut acc = 0;
    let mut k = None;
    for j in 0..matrix.cols() {
        acc += matrix.entry(0, j) - matrix.entry(1, j);
        s.push(acc);
        if k.is_none() && acc == target {
            k = Some(j + 1);
        }
    }
    PrefixDifference { s, k }
}

/// The injection from row profile (r₁+2, r₂−2, r₃, …) to (r₁, r₂, r₃, …),
/// r₁ ≥ r₂: rows 1 and 2 are exchanged in every column after the first
/// column `k` where their running difference reaches r₁ − r₂ + 2.
///
/// Only rows 1 and 2 are handled; permute rows beforehand for other pairs.
pub fn psi(matrix: &SignMatrix) -> Result<SignMatrix> {
    if matrix.rows() < 2 {
        return Err(Error::Precondition("psi needs at least two rows".into()));
    }
    let sums = matrix.row_sums().values;
    let (r1, r2) = (sums[0] - 2, sums[1] + 2);
    if r1 < r2 {
        return Err(Error::Precondition(format!(
            "row sums ({}, {}) are not of the form (r1+2, r2-2) with r1 >= r2",
            sums[0], sums[1]
        )));
    }
    let pd = prefix_difference(matrix, r1 - r2 + 2);
    let k = pd.k.ok_or_else(|| {
        Error::Precondition("running difference never reaches r1 - r2 + 2".into())
    })?;
    Ok(matrix.with_rows_swapped_where(0, 1, |j| j >= k))
}

/// One comparison r′ ⪰ r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub r: ProfileVector,
    pub r_prime: ProfileVector,
    pub count_r: BigCount,
    pub count_r_prime: BigCount,
}

impl PairRecord {
    pub fn ok(&self) -> bool {
        self.count_r >= self.count_r_prime
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{};{};{};{};{}",
            show(&self.r),
            show(&self.r_prime),
            self.count_r,
            self.count_r_prime,
            self.ok()
        )
    }
}

/// A failed comparison under a fixed column-sum vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedViolation {
    pub c: ProfileVector,
    pub record: PairRecord,
}

#[derive(Clone, Debug, Default)]
pub struct MajorizationReport {
    pub m: usize,
    pub n: usize,
    pub bound: i64,
    pub pairs: Vec<PairRecord>,
    /// Number of (c, r, r′) comparisons made with fixed column sums.
    pub refined_checked: usize,
    pub refined_violations: Vec<RefinedViolation>,
}

pub const CSV_HEADER: &str = "r;r_prime;count_r;count_r_prime;ok";

impl MajorizationReport {
    pub fn violations(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs.iter().filter(|p| !p.ok())
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none() && self.refined_violations.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for p in &self.pairs {
            out.push_str(&p.csv_line());
            out.push('\n');
        }
        out
    }
}

/// Integer vectors of length `m` with entries in `-bound..=bound` sharing
/// the parity of `n`, in lexicographic order.
pub fn candidate_profiles(m: usize, n: usize, bound: i64) -> Vec<ProfileVector> {
    let values: Vec<i64> = (-bound..=bound)
        .filter(|v| (v - n as i64).rem_euclid(2) == 0)
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

// Above this many (column vector × profile) DP runs the fixed-c check is skipped.
const REFINEMENT_LIMIT: usize = 200_000;

/// Checks α_r(m, n) ≥ α_{r′}(m, n) for every pair r′ ⪰ r (r′ ≠ r) of
/// candidate profiles, and the same inequality under each fixed column-sum
/// vector when the instance is small enough.
pub fn verify_decreasing(
    engine: &Engine,
    m: usize,
    n: usize,
    bound: i64,
) -> Result<MajorizationReport> {
    let profiles = candidate_profiles(m, n, bound);
    let sorted: Vec<Vec<i64>> = profiles.iter().map(|p| sorted_desc(p)).collect();

    let mut comparable: Vec<(usize, usize)> = Vec::new();
    for (a, sa) in sorted.iter().enumerate() {
        for (b, sb) in sorted.iter().enumerate() {
            if a != b && profiles[a] != profiles[b] && majorizes_sorted(sb, sa) {
                // profile b majorizes profile a
                comparable.push((a, b));
            }
        }
    }

    let counts = profiles
        .par_iter()
        .map(|r| engine.count_row_profile(m, n, r))
        .collect::<Result<Vec<_>>>()?;
    let pairs = comparable
        .iter()
        .map(|&(a, b)| PairRecord {
            r: profiles[a].clone(),
            r_prime: profiles[b].clone(),
            count_r: counts[a].clone(),
            count_r_prime: counts[b].clone(),
        })
        .collect();

    let mut report = MajorizationReport {
        m,
        n,
        bound,
        pairs,
        ..Default::default()
    };

    let columns = column_profiles(m, n);
    if columns.len() * profiles.len() <= REFINEMENT_LIMIT {
        for c in &columns {
            let total: i64 = c.iter().sum();
            let fixed = profiles
                .par_iter()
                .map(|r| {
                    if r.iter().sum::<i64>() == total {
                        engine.count_profile_pair(m, n, r, c)
                    } else {
                        Ok(BigCount::zero())
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            for &(a, b) in &comparable {
                report.refined_checked += 1;
                if fixed[a] < fixed[b] {
                    report.refined_violations.push(RefinedViolation {
                        c: c.clone(),
                        record: PairRecord {
                            r: profiles[a].clone(),
                            r_prime: profiles[b].clone(),
                            count_r: fixed[a].clone(),
                            count_r_prime: fixed[b].clone(),
                        },
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Column-sum vectors with entries in {−1, 0, 1} of the parity of `m`.
fn column_profiles(m: usize, n: usize) -> Vec<ProfileVector> {
    candidate_profiles(n, m, 1)
}

/// Outcome of running ψ over every matrix of every admissible profile.
#[derive(Clone, Debug, Default)]
pub struct PsiReport {
    pub domain_size: usize,
    pub failures: Vec<String>,
}

impl PsiReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies ψ to all of A_{r′}(m, n) for every r′ = (r₁+2, r₂−2, r₃, …) with
/// r₁ ≥ r₂, checking that column sums are kept, the row profile moves by
/// (−2, +2, 0, …), the image is column-good, and no two inputs collide.
pub fn verify_psi(oracle: &Oracle, m: usize, n: usize) -> Result<PsiReport> {
    let mut report = PsiReport::default();
    let bound = n as i64;
    for r_prime in candidate_profiles(m, n, bound) {
        if r_prime[0] - r_prime[1] < 4 || !profile_feasible(&r_prime, n) {
            continue;
        }
        let domain = oracle.row_profile_matrices(m, n, &r_prime)?;
        let mut expected_rows = r_prime.clone();
        expected_rows[0] -= 2;
        expected_rows[1] += 2;
        let mut image = BTreeSet::new();
        for a in &domain {
            let b = psi(a)?;
            if b.col_sums() != a.col_sums() {
                report
                    .failures
                    .push(format!("column sums changed for {a:?}"));
            }
            if b.row_sums().values != expected_rows {
                report.failures.push(format!(
                    "row sums of psi({a:?}) are {:?}",
                    b.row_sums().values
                ));
            }
            if !b.is_column_good() {
                report
                    .failures
                    .push(format!("psi({a:?}) is not column-good"));
            }
            image.insert(b);
        }
        if image.len() != domain.len() {
            report.failures.push(format!(
                "psi not injective on r'={}: {} inputs, {} images",
                show(&r_prime),
                domain.len(),
                image.len()
            ));
        }
        report.domain_size += domain.len();
    }
    Ok(report)
}

/// Counts of every candidate profile, memoized by sorted profile (row
/// counts do not depend on the order of the rows).
pub fn profile_counts(
    engine: &Engine,
    m: usize,
    n: usize,
    bound: i64,
) -> Result<HashMap<ProfileVector, BigCount>> {
    let mut out = HashMap::new();
    for p in candidate_profiles(m, n, bound) {
        if let std::collections::hash_map::Entry::Vacant(slot) = out.entry(sorted_desc(&p)) {
            let c = engine.count_row_profile(m, n, slot.key())?;
            slot.insert(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_row_profile_oracle;
    use proptest::prelude::*;

    #[test]
    fn majorizes_examples() {
        assert!(majorizes(&[2, 0, -2], &[0, 0, 0]).unwrap());
        assert!(!majorizes(&[0, 0, 0], &[2, 0, -2]).unwrap());
        assert!(!majorizes(&[2, -2], &[1, 1]).unwrap());
        assert!(majorizes(&[0, 2], &[2, 0]).unwrap());
        assert!(majorizes(&[1, 2], &[1]).is_err());
    }

    #[test]
    fn chain_examples() {
        let c = dalton_chain(&[0, 0], &[4, -4]).unwrap();
        assert_eq!(c.vectors, vec![vec![4, -4], vec![2, -2], vec![0, 0]]);
        assert!(c.is_valid());
        let same = dalton_chain(&[1, -1, 3], &[1, -1, 3]).unwrap();
        assert_eq!(same.vectors, vec![vec![1, -1, 3]]);
        assert!(matches!(
            dalton_chain(&[1, -1], &[2, -2]),
            Err(Error::ParityMismatch(..))
        ));
        assert!(matches!(
            dalton_chain(&[4, -4], &[0, 0]),
            Err(Error::NotMajorized(..))
        ));
    }

    #[test]
    fn chain_ends_at_rearranged_target() {
        let c = dalton_chain(&[-2, 2, 0], &[-4, 4, 0]).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.vectors.last().unwrap(), &vec![-2, 2, 0]);
        let d = dalton_chain(&[2, 0, -2], &[-4, 4, 0]).unwrap();
        assert!(d.is_valid());
        let mut last = d.vectors.last().unwrap().clone();
        last.sort();
        assert_eq!(last, vec![-2, 0, 2]);
    }

    #[test]
    fn chains_exhaustive_small() {
        for r in candidate_profiles(4, 0, 4) {
            for rp in candidate_profiles(4, 0, 4) {
                if !majorizes(&rp, &r).unwrap() {
                    continue;
                }
                let chain = dalton_chain(&r, &rp).unwrap();
                assert!(chain.is_valid(), "{r:?} {rp:?}");
                assert_eq!(chain.vectors[0], rp);
                let mut a = chain.vectors.last().unwrap().clone();
                let mut b = r.clone();
                a.sort();
                b.sort();
                assert_eq!(a, b);
                let excess: i64 = sorted_desc(&rp)
                    .iter()
                    .zip(sorted_desc(&r))
                    .map(|(x, y)| (x - y).max(0))
                    .sum();
                assert_eq!(chain.len() as i64, excess / 2 + 1);
            }
        }
    }

    #[test]
    fn psi_example() {
        let a = SignMatrix::from_rows(&[vec![1, 1], vec![-1, -1]]).unwrap();
        let pd = prefix_difference(&a, 2);
        assert_eq!(pd.s, vec![2, 4]);
        assert_eq!(pd.k, Some(1));
        let b = psi(&a).unwrap();
        assert_eq!(
            b,
            SignMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap()
        );
        assert_eq!(b.row_sums().values, vec![0, 0]);
        assert_eq!(b.col_sums(), a.col_sums());

        let shaped = SignMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap();
        assert!(matches!(psi(&shaped), Err(Error::Precondition(_))));
    }

    #[test]
    fn psi_injective_tiny_domain() {
        let oracle = Oracle::default();
        let domain = oracle
            .profile_pair_matrices(2, 2, &[2, -2], &[0, 0])
            .unwrap();
        assert_eq!(domain.len(), 1);
        let image: BTreeSet<_> = domain.iter().map(|a| psi(a).unwrap()).collect();
        assert_eq!(image.len(), 1);
        let target = oracle
            .profile_pair_matrices(2, 2, &[0, 0], &[0, 0])
            .unwrap();
        assert!(image.iter().all(|b| target.contains(b)));
    }

    #[test]
    fn psi_on_more_rows() {
        let report = verify_psi(&Oracle::default(), 3, 5).unwrap();
        assert!(report.is_clean(), "{:?}", report.failures);
        assert!(report.domain_size > 0);
    }

    #[test]
    fn decreasing_small_grids() {
        let engine = Engine::default();
        for (m, n, bound) in [(3, 3, 3), (4, 4, 4)] {
            let report = verify_decreasing(&engine, m, n, bound).unwrap();
            assert!(report.is_clean(), "({m},{n},{bound})");
            assert!(!report.pairs.is_empty());
            assert!(report.refined_checked > 0);
        }
        let deg = verify_decreasing(&engine, 1, 2, 2).unwrap();
        assert!(deg.pairs.is_empty() || deg.pairs.iter().all(|p| p.ok()));
        assert_eq!(count_row_profile_oracle(1, 2, &[0]).unwrap(), 2u64);
        assert_eq!(count_row_profile_oracle(1, 2, &[2]).unwrap(), 1u64);
    }

    #[test]
    fn csv_format() {
        let rec = PairRecord {
            r: vec![0, 0],
            r_prime: vec![2, -2],
            count_r: 2u64.into(),
            count_r_prime: 1u64.into(),
        };
        assert_eq!(rec.csv_line(), "0,0;2,-2;2;1;true");
    }

    #[test]
    fn profile_counts_are_order_free() {
        let engine = Engine::default();
        let counts = profile_counts(&engine, 3, 3, 3).unwrap();
        for p in candidate_profiles(3, 3, 3) {
            assert_eq!(
                counts[&sorted_desc(&p)],
                engine.count_row_profile(3, 3, &p).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn majorization_preorder(
            a in proptest::collection::vec(-4i64..=4, 4),
            b in proptest::collection::vec(-4i64..=4, 4),
            c in proptest::collection::vec(-4i64..=4, 4),
        ) {
            prop_assert!(majorizes(&a, &a).unwrap());
            if majorizes(&a, &b).unwrap() && majorizes(&b, &c).unwrap() {
                prop_assert!(majorizes(&a, &c).unwrap());
            }
            if majorizes(&a, &b).unwrap() && majorizes(&b, &a).unwrap() {
                prop_assert_eq!(sorted_desc(&a), sorted_desc(&b));
            }
        }
    }
}
