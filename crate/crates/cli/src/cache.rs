//! Append-only text cache of computed counts.
//!
//! Each line is `alpha <m> <n> <decimal>` or
//! `alpha_r <m> <n> <r1,r2,...> <decimal>`; a later line for the same key
//! replaces an earlier one.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use disc_rect::BigCount;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CacheKey {
    Alpha { m: usize, n: usize },
    AlphaR { m: usize, n: usize, r: Vec<i64> },
}

impl CacheKey {
    fn line(&self, value: &BigCount) -> String {
        match self {
            CacheKey::Alpha { m, n } => format!("alpha {m} {n} {value}"),
            CacheKey::AlphaR { m, n, r } => {
                let r: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("alpha_r {m} {n} {} {value}", r.join(","))
            }
        }
    }
}

#[derive(Debug)]
pub enum CacheError {
    Io(io::Error),
    Parse { line: usize, reason: String },
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "{e}"),
            CacheError::Parse { line, reason } => write!(f, "line {line}: {reason}"),
        }
    }
}

impl From<io::Error> for CacheError {
    fn from(e: io::Error) -> Self {
        CacheError::Io(e)
    }
}

pub struct CountCache {
    path: PathBuf,
    entries: HashMap<CacheKey, BigCount>,
}

fn parse_line(line: &str) -> Result<(CacheKey, BigCount), String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("bad size {s:?}"));
    let count = |s: &str| {
        s.parse::<BigCount>()
            .map_err(|_| format!("bad count {s:?}"))
    };
    match fields.as_slice() {
        ["alpha", m, n, v] => Ok((
            CacheKey::Alpha {
                m: num(m)?,
                n: num(n)?,
            },
            count(v)?,
        )),
        ["alpha_r", m, n, r, v] => {
            let r = r
                .split(',')
                .map(|x| x.parse::<i64>().map_err(|_| format!("bad row sum {x:?}")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((
                CacheKey::AlphaR {
                    m: num(m)?,
                    n: num(n)?,
                    r,
                },
                count(v)?,
            ))
        }
        _ => Err(format!("unrecognized entry {line:?}")),
    }
}

impl CountCache {
    /// Loads the cache at `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let mut entries = HashMap::new();
        match fs::read_to_string(path) {
            Ok(text) => {
                for (idx, raw) in text.lines().enumerate() {
                    let line = raw.trim();
                    if line.is_empty() {
                        continue;
                    }
                    let (key, value) = parse_line(line).map_err(|reason| CacheError::Parse {
                        line: idx + 1,
                        reason,
                    })?;
                    entries.insert(key, value);
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(CountCache {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn get(&self, key: &CacheKey) -> Option<&BigCount> {
        self.entries.get(key)
    }

    /// Entries in key order.
    pub fn entries(&self) -> Vec<(&CacheKey, &BigCount)> {
        let mut out: Vec<_> = self.entries.iter().collect();
        out.sort();
        out
    }

    pub fn insert(&mut self, key: CacheKey, value: BigCount) -> io::Result<()> {
        if self.entries.get(&key) == Some(&value) {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{}", key.line(&value))?;
        self.entries.insert(key, value);
        Ok(())
    }
}
