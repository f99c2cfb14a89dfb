//! Reader for OEIS b-files (`index value` per line, `#` comments).

use crate::count::BigCount;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: u64,
    pub value: BigCount,
}

pub fn parse(text: &str) -> Result<Vec<BFileEntry>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| Error::BFile {
            line: idx + 1,
            reason,
        };
        let mut fields = line.split_whitespace();
        let (Some(k), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `index value`, got {line:?}")));
        };
        let index = k.parse().map_err(|_| err(format!("bad index {k:?}")))?;
        let value = v.parse().map_err(|_| err(format!("bad value {v:?}")))?;
        out.push(BFileEntry { index, value });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub index: u64,
    pub expected: BigCount,
    pub computed: BigCount,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.expected == self.computed
    }
}

/// Compares every entry with `index <= max_index` against `compute(index)`.
pub fn compare(
    entries: &[BFileEntry],
    max_index: u64,
    compute: impl Fn(u64) -> Result<BigCount>,
) -> Result<Vec<Comparison>> {
    entries
        .iter()
        .filter(|e| e.index <= max_index)
        .map(|e| {
            Ok(Comparison {
                index: e.index,
                expected: e.value.clone(),
                computed: compute(e.index)?,
            })
        })
        .collect()
}
