//! Column-step transfer machinery shared by the matrix and walk counters.

use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::count::BigCount;

/// One step of a counting DP: state → number of prefixes reaching it.
#[derive(Clone, Debug)]
pub struct Layer<K> {
    /// Steps consumed so far.
    pub depth: usize,
    pub table: FxHashMap<K, BigCount>,
}

// Below this many states the layer is expanded on the calling thread.
const PARALLEL_THRESHOLD: usize = 2048;

impl<K> Layer<K>
where
    K: Clone + Eq + Hash + Send + Sync,
{
    pub fn start(initial: K) -> Self {
        let mut table = FxHashMap::default();
        table.insert(initial, BigCount::one());
        Layer { depth: 0, table }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn total(&self) -> BigCount {
        self.table.values().sum()
    }

    /// Sum of counts over the states satisfying `pred`.
    pub fn total_where(&self, pred: impl Fn(&K) -> bool) -> BigCount {
        self.table
            .iter()
            .filter(|(k, _)| pred(k))
            .map(|(_, v)| v)
            .sum()
    }

    /// Expands every state by every move. `step` returns the successor, or
    /// `None` when the successor is pruned. Counts landing on the same
    /// successor are added, so the result does not depend on the order in
    /// which states are visited.
    pub fn advance<M, F>(&self, moves: &[M], step: F) -> Layer<K>
    where
        M: Sync,
        F: Fn(&K, &M) -> Option<K> + Sync,
    {
        let expand = |acc: &mut FxHashMap<K, BigCount>, (state, count): (&K, &BigCount)| {
            for mv in moves {
                if let Some(next) = step(state, mv) {
                    match acc.get_mut(&next) {
                        Some(c) => *c += count,
                        None => {
                            acc.insert(next, count.clone());
                        }
                    }
                }
            }
        };

        let table = if self.table.len() < PARALLEL_THRESHOLD {
            let mut acc = FxHashMap::default();
            for entry in &self.table {
                expand(&mut acc, entry);
            }
            acc
        } else {
            self.table
                .par_iter()
                .fold(FxHashMap::default, |mut acc, entry| {
                    expand(&mut acc, entry);
                    acc
                })
                .reduce(FxHashMap::default, merge)
        };
        Layer {
            depth: self.depth + 1,
            table,
        }
    }
}

fn merge<K: Eq + Hash>(
    mut a: FxHashMap<K, BigCount>,
    mut b: FxHashMap<K, BigCount>,
) -> FxHashMap<K, BigCount> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (k, v) in b {
        match a.get_mut(&k) {
            Some(c) => *c += v,
            None => {
                a.insert(k, v);
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_walk_on_a_line() {
        // ±1 walks of length n ending at 0: C(n, n/2)
        let mut layer = Layer::start(0i64);
        for _ in 0..10 {
            layer = layer.advance(&[1i64, -1], |p, d| Some(p + d));
        }
        assert_eq!(layer.depth, 10);
        assert_eq!(layer.table[&0], 252u64);
        assert_eq!(layer.total(), 1024u64);
        assert_eq!(layer.total_where(|p| p.abs() <= 2), (252 + 2 * 210) as u64);
    }

    #[test]
    fn parallel_path_matches_sequential() {
        // a layer large enough to take the rayon path
        let mut layer = Layer::start((0i32, 0i32));
        let moves = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)];
        for _ in 0..40 {
            layer = layer.advance(&moves, |&(x, y), &(dx, dy)| Some((x + dx, y + dy)));
        }
        assert!(layer.len() > PARALLEL_THRESHOLD);
        assert_eq!(layer.total(), BigCount::from(5u64).pow(40));
    }

    #[test]
    fn pruned_states_vanish() {
        let mut layer = Layer::start(0i64);
        for _ in 0..6 {
            layer = layer.advance(&[1i64, -1], |p, d| Some(p + d).filter(|q| q.abs() <= 1));
        }
        // Dyck-like paths confined to {-1,0,1}
        assert_eq!(layer.total_where(|&p| p == 0), 8u64);
    }
}
