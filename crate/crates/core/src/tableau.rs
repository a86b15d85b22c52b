//! Symplectic shifted tableaux and their correspondence with strict patterns.
//!
//! Letters are ordered `1̄ < 1 < 2̄ < 2 < … < r̄ < r`; row `ρ` of a tableau
//! starts in column `ρ`. Row `ρ` of the tableau of a pattern `P` has
//! `a_{r−k, ρ+r−k}` letters `≤ k` and `b_{r−k+1, ρ+r−k}` letters `≤ k̄` for
//! every `k ≥ ρ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pattern::{EntryClass, GTPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub value: usize,
    pub barred: bool,
}

impl Letter {
    pub fn plain(value: usize) -> Self {
        Letter {
            value,
            barred: false,
        }
    }

    pub fn barred(value: usize) -> Self {
        Letter {
            value,
            barred: true,
        }
    }

    /// Position in the alphabet, starting at 1 for `1̄`.
    pub fn key(self) -> usize {
        2 * self.value - usize::from(self.barred)
    }

    pub fn from_key(key: usize) -> Self {
        Letter {
            value: key.div_ceil(2),
            barred: key % 2 == 1,
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "{}_", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, barred) = match s.strip_suffix('_') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let value: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad tableau letter {s:?}")))?;
        if value == 0 {
            return Err(Error::Parse(format!("bad tableau letter {s:?}")));
        }
        Ok(Letter { value, barred })
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
struct RawTableau {
    rank: usize,
    rows: Vec<Vec<Letter>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct ShiftedTableau {
    rank: usize,
    rows: Vec<Vec<Letter>>,
}

impl TryFrom<RawTableau> for ShiftedTableau {
    type Error = Error;

    fn try_from(raw: RawTableau) -> Result<Self> {
        ShiftedTableau::new(raw.rank, raw.rows)
    }
}

impl ShiftedTableau {
    pub fn new(rank: usize, rows: Vec<Vec<Letter>>) -> Result<Self> {
        let t = ShiftedTableau { rank, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    /// Row lengths of the shifted shape.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Letter in row `row`, absolute column `col` (both 0-based).
    fn at(&self, row: usize, col: usize) -> Option<Letter> {
        let start = row;
        if col < start {
            return None;
        }
        self.rows.get(row)?.get(col - start).copied()
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rank;
        let bad = |msg: String| Err(Error::InvalidTableau(msg));
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        if self.rows.len() != r {
            return bad(format!("expected {r} rows, found {}", self.rows.len()));
        }
        let shape = self.shape();
        if shape.windows(2).any(|w| w[0] <= w[1]) || shape[r - 1] == 0 {
            return bad(format!("shape {shape:?} is not strictly decreasing"));
        }
        for (ri, row) in self.rows.iter().enumerate() {
            if row.iter().any(|l| l.value == 0 || l.value > r) {
                return bad(format!("row {} has a letter outside 1..={r}", ri + 1));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad(format!("row {} is not weakly increasing", ri + 1));
            }
            if row[0].value != ri + 1 {
                return bad(format!("diagonal box of row {} holds {}", ri + 1, row[0]));
            }
        }
        for ri in 1..r {
            for (ci, letter) in self.rows[ri].iter().enumerate() {
                let col = ri + ci;
                if let Some(above) = self.at(ri - 1, col) {
                    if above > *letter {
                        return bad(format!("column {} decreases at row {}", col + 1, ri + 1));
                    }
                }
                if let Some(diag) = self.at(ri - 1, col - 1) {
                    if diag >= *letter {
                        return bad(format!("diagonal fails at row {}, column {}", ri + 1, col + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of letters `≤ letter` in 0-based row `row`.
    fn count_at_most(&self, row: usize, letter: Letter) -> i64 {
        self.rows[row].iter().filter(|l| **l <= letter).count() as i64
    }

    pub fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|l| l.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for (ri, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|l| format!("{:<width$}", l.to_string())).collect();
            out.push_str(&" ".repeat(ri * (width + 1)));
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ShiftedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The tableau of a strict pattern.
pub fn tableau_from_pattern(p: &GTPattern) -> Result<ShiftedTableau> {
    if !p.is_strict() {
        return Err(Error::NotStrict);
    }
    let r = p.rank();
    let mut rows = Vec::with_capacity(r);
    for rho in 1..=r {
        let mut row = Vec::new();
        let mut filled = 0i64;
        for k in rho..=r {
            let barred_total = p.b_or_zero(r - k + 1, rho + r - k);
            let plain_total = p.a_or_zero(r - k, rho + r - k);
            for _ in filled..barred_total {
                row.push(Letter::barred(k));
            }
            for _ in barred_total..plain_total {
                row.push(Letter::plain(k));
            }
            filled = plain_total;
        }
        rows.push(row);
    }
    ShiftedTableau::new(r, rows)
}

/// Reads the counting rule backwards.
pub fn pattern_from_tableau(t: &ShiftedTableau) -> Result<GTPattern> {
    t.validate()?;
    let r = t.rank();
    let mut a: Vec<Vec<i64>> = (0..r).map(|i| vec![0; r - i]).collect();
    let mut b: Vec<Vec<i64>> = (0..r).map(|i| vec![0; r - i]).collect();
    for rho in 1..=r {
        for k in rho..=r {
            // a_{r−k, ρ+r−k} and b_{r−k+1, ρ+r−k}
            let ai = r - k;
            let col = rho + r - k;
            a[ai][col - ai - 1] = t.count_at_most(rho - 1, Letter::plain(k));
            let bi = r - k + 1;
            b[bi - 1][col - bi] = t.count_at_most(rho - 1, Letter::barred(k));
        }
    }
    let p = GTPattern::new(r, a, b).map_err(|e| Error::InvalidTableau(e.to_string()))?;
    if !p.is_strict() {
        return Err(Error::InvalidTableau("pattern is not strict".into()));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableauStats {
    pub wgt: Vec<i64>,
    /// Components of the `k` boxes, indexed by `k − 1`.
    pub con: Vec<i64>,
    /// Components of the `k̄` boxes.
    pub con_bar: Vec<i64>,
    /// Rows containing `k`.
    pub row: Vec<i64>,
    /// Rows containing `k̄`.
    pub row_bar: Vec<i64>,
    pub str: i64,
    pub barred: i64,
    pub height: i64,
}

fn components(t: &ShiftedTableau, letter: Letter) -> i64 {
    let cells: BTreeSet<(usize, usize)> = t
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(ri, row)| {
            row.iter()
                .enumerate()
                .filter(move |(_, l)| **l == letter)
                .map(move |(ci, _)| (ri, ri + ci))
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &start in &cells {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        while let Some((x, y)) = stack.pop() {
            let mut nbrs = vec![(x + 1, y), (x, y + 1)];
            if x > 0 {
                nbrs.push((x - 1, y));
            }
            if y > 0 {
                nbrs.push((x, y - 1));
            }
            for nb in nbrs {
                if cells.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
    }
    count
}

pub fn tableau_stats(t: &ShiftedTableau) -> TableauStats {
    let r = t.rank();
    let count = |letter: Letter| t.rows().iter().flatten().filter(|l| **l == letter).count() as i64;
    let rows_with = |letter: Letter| t.rows().iter().filter(|row| row.contains(&letter)).count() as i64;
    let wgt = (1..=r).map(|k| count(Letter::plain(k)) - count(Letter::barred(k))).collect();
    let con: Vec<i64> = (1..=r).map(|k| components(t, Letter::plain(k))).collect();
    let con_bar: Vec<i64> = (1..=r).map(|k| components(t, Letter::barred(k))).collect();
    let row: Vec<i64> = (1..=r).map(|k| rows_with(Letter::plain(k))).collect();
    let row_bar: Vec<i64> = (1..=r).map(|k| rows_with(Letter::barred(k))).collect();
    let str = con.iter().sum::<i64>() + con_bar.iter().sum::<i64>();
    let barred = t.rows().iter().flatten().filter(|l| l.barred).count() as i64;
    let height = (0..r).map(|k| row[k] - con[k] - row_bar[k]).sum();
    TableauStats {
        wgt,
        con,
        con_bar,
        row,
        row_bar,
        str,
        barred,
        height,
    }
}

/// Checks `gen(P) = str − r` and `max(P) = height + r(r+1)/2`.
pub fn verify_tableau_stats(p: &GTPattern) -> bool {
    let Ok(t) = tableau_from_pattern(p) else {
        return false;
    };
    let r = p.rank() as i64;
    let stats = tableau_stats(&t);
    let generic = p.class_count(EntryClass::Generic) as i64;
    let maximal = p.class_count(EntryClass::Maximal) as i64;
    generic == stats.str - r && maximal == stats.height + r * (r + 1) / 2
}
