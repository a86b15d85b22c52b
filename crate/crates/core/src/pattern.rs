//! Symplectic Gelfand-Tsetlin patterns.
//!
//! A rank-`r` pattern is a zig-zag of rows `a_0, b_1, a_1, b_2, …, a_{r−1}, b_r`
//! where `a_i = (a_{i,i+1}, …, a_{i,r})` and `b_i = (b_{i,i}, …, b_{i,r})`.
//! Column indices are 1-based throughout. Consecutive rows interleave:
//!
//! ```text
//! a_{i−1,j} ≥ b_{i,j} ≥ a_{i−1,j+1}     b_{i,j−1} ≥ a_{i,j} ≥ b_{i,j}
//! ```
//!
//! with a missing `a_{i−1,r+1}` read as 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{simple_root_coords, LambdaTwist, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    A { i: usize, j: usize },
    B { i: usize, j: usize },
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::A { i, j } => write!(f, "a({i},{j})"),
            Position::B { i, j } => write!(f, "b({i},{j})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryClass {
    Minimal,
    Maximal,
    Generic,
}

#[derive(Deserialize)]
struct RawPattern {
    rank: usize,
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPattern")]
pub struct GTPattern {
    rank: usize,
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
}

impl TryFrom<RawPattern> for GTPattern {
    type Error = Error;

    fn try_from(raw: RawPattern) -> Result<Self> {
        GTPattern::new(raw.rank, raw.a, raw.b)
    }
}

impl GTPattern {
    /// Builds and validates a pattern from its rows, listed top to bottom.
    pub fn new(rank: usize, a: Vec<Vec<i64>>, b: Vec<Vec<i64>>) -> Result<Self> {
        let p = GTPattern { rank, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn a_rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn b_rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn top_row(&self) -> &[i64] {
        &self.a[0]
    }

    /// `a_{i,j}` for `0 ≤ i ≤ r−1`, `i+1 ≤ j ≤ r`.
    pub fn a(&self, i: usize, j: usize) -> Option<i64> {
        if i >= self.rank || j <= i || j > self.rank {
            return None;
        }
        Some(self.a[i][j - i - 1])
    }

    /// `b_{i,j}` for `1 ≤ i ≤ j ≤ r`.
    pub fn b(&self, i: usize, j: usize) -> Option<i64> {
        if i == 0 || i > self.rank || j < i || j > self.rank {
            return None;
        }
        Some(self.b[i - 1][j - i])
    }

    /// `a_{i,j}` with absent entries read as 0.
    pub fn a_or_zero(&self, i: usize, j: usize) -> i64 {
        self.a(i, j).unwrap_or(0)
    }

    /// `b_{i,j}` with absent entries read as 0.
    pub fn b_or_zero(&self, i: usize, j: usize) -> i64 {
        self.b(i, j).unwrap_or(0)
    }

    pub fn get(&self, pos: Position) -> Result<i64> {
        match pos {
            Position::A { i, j } => self.a(i, j),
            Position::B { i, j } => self.b(i, j),
        }
        .ok_or_else(|| Error::InvalidPosition(pos.to_string()))
    }

    /// Every entry other than the top row, in the order
    /// `b_1, a_1, b_2, …, b_r`, each row left to right.
    pub fn positions(&self) -> Vec<Position> {
        let r = self.rank;
        let mut out = Vec::with_capacity(r * r);
        for i in 1..=r {
            out.extend((i..=r).map(|j| Position::B { i, j }));
            if i < r {
                out.extend((i + 1..=r).map(|j| Position::A { i, j }));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rank;
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        if self.a.len() != r || self.b.len() != r {
            return Err(Error::InvalidPattern(format!(
                "expected {r} a-rows and {r} b-rows"
            )));
        }
        for i in 0..r {
            if self.a[i].len() != r - i {
                return Err(Error::InvalidPattern(format!(
                    "row a_{i} has length {}, expected {}",
                    self.a[i].len(),
                    r - i
                )));
            }
            if self.b[i].len() != r - i {
                return Err(Error::InvalidPattern(format!(
                    "row b_{} has length {}, expected {}",
                    i + 1,
                    self.b[i].len(),
                    r - i
                )));
            }
        }
        for row in self.a.iter().chain(&self.b) {
            if row.iter().any(|x| *x < 0) {
                return Err(Error::InvalidPattern(format!("negative entry in {row:?}")));
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidPattern(format!("row {row:?} is not decreasing")));
            }
        }
        for i in 1..=r {
            for j in i..=r {
                let b = self.b(i, j).unwrap_or_default();
                let upper = self.a_or_zero(i - 1, j);
                let lower = self.a_or_zero(i - 1, j + 1);
                if b > upper || b < lower {
                    return Err(Error::InvalidPattern(format!(
                        "b({i},{j}) = {b} outside [{lower}, {upper}]"
                    )));
                }
            }
            for j in i + 1..=r {
                let a = self.a(i, j).unwrap_or_default();
                let upper = self.b_or_zero(i, j - 1);
                let lower = self.b_or_zero(i, j);
                if a > upper || a < lower {
                    return Err(Error::InvalidPattern(format!(
                        "a({i},{j}) = {a} outside [{lower}, {upper}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Bounds `(lower, upper)` that the interleaving places on an entry given
    /// the row above it.
    pub fn bounds(&self, pos: Position) -> Result<(i64, i64)> {
        self.get(pos)?;
        Ok(match pos {
            Position::B { i, j } => (self.a_or_zero(i - 1, j + 1), self.a_or_zero(i - 1, j)),
            Position::A { i, j } => (self.b_or_zero(i, j), self.b_or_zero(i, j - 1)),
        })
    }

    /// Tags an entry as minimal, maximal or generic.
    ///
    /// `b_{i,j}` is minimal when it equals `a_{i−1,j}` and maximal when it
    /// equals `a_{i−1,j+1}` or is a zero in the last column. `a_{i,j}` is
    /// minimal when it equals `b_{i,j}` and maximal when it equals
    /// `b_{i,j−1}`.
    pub fn classify_entry(&self, pos: Position) -> Result<EntryClass> {
        let value = self.get(pos)?;
        let r = self.rank;
        Ok(match pos {
            Position::B { i, j } => {
                if j == r && value == 0 {
                    EntryClass::Maximal
                } else if value == self.a_or_zero(i - 1, j) {
                    EntryClass::Minimal
                } else if j < r && value == self.a_or_zero(i - 1, j + 1) {
                    EntryClass::Maximal
                } else {
                    EntryClass::Generic
                }
            }
            Position::A { i, j } => {
                if value == self.b_or_zero(i, j) {
                    EntryClass::Minimal
                } else if value == self.b_or_zero(i, j - 1) {
                    EntryClass::Maximal
                } else {
                    EntryClass::Generic
                }
            }
        })
    }

    /// Number of entries with the given tag.
    pub fn class_count(&self, class: EntryClass) -> usize {
        self.positions()
            .into_iter()
            .filter(|p| self.classify_entry(*p).ok() == Some(class))
            .count()
    }

    /// Strictly decreasing rows, and no zero in any `a_i` with `i ≥ 1`.
    ///
    /// A zero `a_{i,r}` forces `b_{i+1,r} = 0`, which the weighting would
    /// otherwise count as a maximal entry although the corresponding tableau
    /// has no room for it.
    pub fn is_strict(&self) -> bool {
        let rows_strict = self
            .a
            .iter()
            .chain(&self.b)
            .all(|row| row.windows(2).all(|w| w[0] > w[1]));
        rows_strict && self.a[1..].iter().flatten().all(|x| *x > 0)
    }

    /// Strict, and each string `b_{i,i}, …, b_{i,r}, a_{i,r}, …, a_{i,i+1}`
    /// is a run of minimal entries followed by a run of maximal ones.
    pub fn is_stable(&self) -> bool {
        if !self.is_strict() {
            return false;
        }
        let r = self.rank;
        (1..=r).all(|i| {
            let mut string: Vec<Position> = (i..=r).map(|j| Position::B { i, j }).collect();
            string.extend((i + 1..=r).rev().map(|j| Position::A { i, j }));
            let mut seen_max = false;
            string.into_iter().all(|pos| match self.classify_entry(pos) {
                Ok(EntryClass::Minimal) => !seen_max,
                Ok(EntryClass::Maximal) => {
                    seen_max = true;
                    true
                }
                _ => false,
            })
        })
    }

    /// Row sums `s_a(0..=r)` (with `s_a(r) = 0`) and `s_b(0..=r)` (with the
    /// unused `s_b(0) = 0`).
    pub fn row_sums(&self) -> (Vec<i64>, Vec<i64>) {
        let mut sa: Vec<i64> = self.a.iter().map(|row| row.iter().sum()).collect();
        sa.push(0);
        let mut sb = vec![0];
        sb.extend(self.b.iter().map(|row| row.iter().sum::<i64>()));
        (sa, sb)
    }

    /// `wgt_i = s_a(r−i) − 2 s_b(r+1−i) + s_a(r+1−i)`.
    pub fn weight(&self) -> Vec<i64> {
        let r = self.rank;
        let (sa, sb) = self.row_sums();
        (1..=r)
            .map(|i| sa[r - i] - 2 * sb[r + 1 - i] + sa[r + 1 - i])
            .collect()
    }

    /// The support vector `k(P)`, possibly with negative components.
    pub fn k_raw(&self) -> Vec<i64> {
        let r = self.rank;
        let (sa, sb) = self.row_sums();
        let diff = |m: usize| sb[m] - sa[m];
        let top = sa[0];
        (1..=r)
            .map(|i| {
                if i == 1 {
                    top - (1..=r).map(diff).sum::<i64>()
                } else {
                    let n = r + 1 - i;
                    top - 2 * (1..=n).map(diff).sum::<i64>() - sa[n]
                        + self.a[0][..n].iter().sum::<i64>()
                }
            })
            .collect()
    }

    pub fn k(&self) -> Result<Vec<i64>> {
        let k = self.k_raw();
        if let Some((idx, value)) = k.iter().enumerate().find(|(_, v)| **v < 0) {
            return Err(Error::NegativeK {
                index: idx + 1,
                value: *value,
            });
        }
        Ok(k)
    }

    pub fn data(&self) -> Result<PatternData> {
        PatternData::new(self)
    }

    /// The pattern whose every `b` row copies the row above and every `a` row
    /// copies the `b` row above, dropping the first entry.
    pub fn all_minimal(top: &[i64]) -> Result<GTPattern> {
        let r = check_top_row(top)?;
        let mut a = vec![top.to_vec()];
        let mut b = Vec::with_capacity(r);
        for i in 0..r {
            let bi = a[i].clone();
            if i + 1 < r {
                a.push(bi[1..].to_vec());
            }
            b.push(bi);
        }
        GTPattern::new(r, a, b)
    }

    /// The pattern with every entry at its lower bound.
    pub fn all_maximal(top: &[i64]) -> Result<GTPattern> {
        let r = check_top_row(top)?;
        let mut a = vec![top.to_vec()];
        let mut b = Vec::with_capacity(r);
        for i in 0..r {
            let mut bi: Vec<i64> = a[i][1..].to_vec();
            bi.push(0);
            if i + 1 < r {
                a.push(bi[..bi.len() - 1].to_vec());
            }
            b.push(bi);
        }
        GTPattern::new(r, a, b)
    }
}

impl fmt::Display for GTPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rank;
        let width = self
            .a
            .iter()
            .chain(&self.b)
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let mut lines = Vec::with_capacity(2 * r);
        for i in 0..r {
            lines.push((i, &self.a[i]));
            lines.push((i + 1, &self.b[i]));
        }
        for (idx, (indent_row, row)) in lines.into_iter().enumerate() {
            let indent = if idx % 2 == 0 { 2 * indent_row } else { 2 * indent_row - 1 };
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            let pad = " ".repeat(indent * (width + 1) / 2);
            writeln!(f, "{pad}{}", cells.join(&" ".repeat(width + 2)))?;
        }
        Ok(())
    }
}

fn check_top_row(top: &[i64]) -> Result<usize> {
    if top.is_empty() {
        return Err(Error::ZeroRank);
    }
    if top.iter().any(|x| *x < 0) || top.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::BadTopRow(top.to_vec()));
    }
    Ok(top.len())
}

/// Calls `visit` on every pattern with the given top row, in row-major
/// lexicographic order with larger values first. Stops early when `visit`
/// returns `false`.
pub fn for_each_pattern<F>(top: &[i64], mut visit: F) -> Result<()>
where
    F: FnMut(&GTPattern) -> bool,
{
    let r = check_top_row(top)?;
    let mut p = GTPattern {
        rank: r,
        a: (0..r).map(|i| if i == 0 { top.to_vec() } else { vec![0; r - i] }).collect(),
        b: (0..r).map(|i| vec![0; r - i]).collect(),
    };
    let rows = zigzag_rows(r);
    fill(&mut p, &rows, 0, 0, &mut |p| visit(p));
    Ok(())
}

/// Rows below the top, as `(is_b, index)`.
fn zigzag_rows(r: usize) -> Vec<(bool, usize)> {
    let mut rows = Vec::with_capacity(2 * r - 1);
    for i in 1..=r {
        rows.push((true, i));
        if i < r {
            rows.push((false, i));
        }
    }
    rows
}

fn fill(
    p: &mut GTPattern,
    rows: &[(bool, usize)],
    row: usize,
    col: usize,
    visit: &mut dyn FnMut(&GTPattern) -> bool,
) -> bool {
    if row == rows.len() {
        return visit(p);
    }
    let (is_b, i) = rows[row];
    let r = p.rank;
    let len = if is_b { r - i + 1 } else { r - i };
    if col == len {
        return fill(p, rows, row + 1, 0, visit);
    }
    let (lower, upper) = if is_b {
        let j = i + col;
        (p.a_or_zero(i - 1, j + 1), p.a_or_zero(i - 1, j))
    } else {
        let j = i + 1 + col;
        (p.b_or_zero(i, j), p.b_or_zero(i, j - 1))
    };
    for value in (lower..=upper).rev() {
        if is_b {
            p.b[i - 1][col] = value;
        } else {
            p.a[i][col] = value;
        }
        if !fill(p, rows, row, col + 1, visit) {
            return false;
        }
    }
    true
}

/// All patterns with the given top row, in canonical order.
pub fn enumerate_patterns(top: &[i64]) -> Result<Vec<GTPattern>> {
    let mut out = Vec::new();
    for_each_pattern(top, |p| {
        out.push(p.clone());
        true
    })?;
    Ok(out)
}

pub fn count_patterns(top: &[i64]) -> Result<u64> {
    let mut count = 0u64;
    for_each_pattern(top, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// Stable patterns with the given strictly decreasing top row, in canonical
/// order. Only entries sitting at one of their two bounds are tried, so this
/// avoids the full enumeration.
pub fn stable_patterns(top: &[i64]) -> Result<Vec<GTPattern>> {
    let r = check_top_row(top)?;
    if top.windows(2).any(|w| w[0] <= w[1]) || top[r - 1] == 0 {
        return Err(Error::TopRowNotStrict(top.to_vec()));
    }
    let mut p = GTPattern {
        rank: r,
        a: (0..r).map(|i| if i == 0 { top.to_vec() } else { vec![0; r - i] }).collect(),
        b: (0..r).map(|i| vec![0; r - i]).collect(),
    };
    let rows = zigzag_rows(r);
    let mut out = Vec::new();
    fill_extremal(&mut p, &rows, 0, 0, &mut out);
    Ok(out)
}

fn fill_extremal(
    p: &mut GTPattern,
    rows: &[(bool, usize)],
    row: usize,
    col: usize,
    out: &mut Vec<GTPattern>,
) {
    if row == rows.len() {
        if p.is_stable() {
            out.push(p.clone());
        }
        return;
    }
    let (is_b, i) = rows[row];
    let r = p.rank;
    let len = if is_b { r - i + 1 } else { r - i };
    if col == len {
        fill_extremal(p, rows, row + 1, 0, out);
        return;
    }
    let (lower, upper) = if is_b {
        let j = i + col;
        (p.a_or_zero(i - 1, j + 1), p.a_or_zero(i - 1, j))
    } else {
        let j = i + 1 + col;
        (p.b_or_zero(i, j), p.b_or_zero(i, j - 1))
    };
    // once a b-entry has dropped to its lower bound the rest of the row must follow
    if is_b && col > 0 {
        let j = i + col - 1;
        if p.b[i - 1][col - 1] < p.a_or_zero(i - 1, j) {
            p.b[i - 1][col] = lower;
            fill_extremal(p, rows, row, col + 1, out);
            return;
        }
    }
    let mut candidates = vec![upper];
    if lower != upper {
        candidates.push(lower);
    }
    for value in candidates {
        if is_b {
            p.b[i - 1][col] = value;
        } else {
            p.a[i][col] = value;
        }
        fill_extremal(p, rows, row, col + 1, out);
    }
}

/// Solves `λ+ρ + wgt = Σ k_i α_i` for `k`.
pub fn k_from_weight(weight: &[i64], twist: &LambdaTwist) -> Result<Vec<i64>> {
    if weight.len() != twist.rank() {
        return Err(Error::TwistLength {
            got: weight.len(),
            rank: twist.rank(),
        });
    }
    let shifted: Vec<i64> = weight.iter().zip(twist.big_l()).map(|(w, l)| w + l).collect();
    simple_root_coords(&shifted).map_err(|_| {
        // 2k_1 = L_1 + wgt_1 + k_2 and k_2 = Σ_{i≥2} (L_i + wgt_i)
        Error::Parity(shifted.iter().sum())
    })
}

/// The Weyl element attached to a stable pattern: `−wgt(P) = w(λ+ρ)`.
pub fn weyl_from_stable(p: &GTPattern) -> Result<WeylElement> {
    if !p.is_stable() {
        return Err(Error::NotStable);
    }
    let twist = LambdaTwist::from_top_row(p.top_row())?;
    let big_l = twist.big_l();
    let weight = p.weight();
    let r = p.rank();
    let mut sigma = vec![usize::MAX; r];
    let mut eps = vec![1i8; r];
    for (i, wi) in weight.iter().enumerate() {
        let j = big_l
            .iter()
            .position(|l| *l == wi.abs())
            .ok_or_else(|| Error::InvalidWeylElement(format!("weight {weight:?}")))?;
        // σ^{-1}(i) = j
        sigma[j] = i;
        eps[i] = if *wi > 0 { -1 } else { 1 };
    }
    WeylElement::new(sigma, eps)
}

/// The stable pattern attached to `w`, found among the stable patterns by
/// its support vector.
pub fn stable_pattern_for(w: &WeylElement, top: &[i64]) -> Result<GTPattern> {
    let twist = LambdaTwist::from_top_row(top)?;
    if w.rank() != twist.rank() {
        return Err(Error::TwistLength {
            got: w.rank(),
            rank: twist.rank(),
        });
    }
    let target = weyl_k(w, &twist)?;
    stable_patterns(top)?
        .into_iter()
        .find(|p| p.k_raw() == target)
        .ok_or(Error::NotStable)
}

/// `k(w)` with `λ+ρ − w(λ+ρ) = Σ k_i α_i`.
pub fn weyl_k(w: &WeylElement, twist: &LambdaTwist) -> Result<Vec<i64>> {
    let lr = twist.lambda_plus_rho();
    let image = w.act(&lr);
    let diff: Vec<i64> = lr.iter().zip(&image).map(|(a, b)| a - b).collect();
    simple_root_coords(&diff)
}

/// Derived per-pattern data: row sums, weight, support vector and the
/// `u`, `v`, `w` arrays.
///
/// `v[i-1][j-i]` holds `v_{i,j}` for `i ≤ j ≤ r`; `w[i-1][j-i-1]` and
/// `u[i-1][j-i-1]` hold `w_{i,j}` and `u_{i,j}` for `i < j ≤ r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternData {
    pub s_a: Vec<i64>,
    pub s_b: Vec<i64>,
    pub wgt: Vec<i64>,
    pub k: Vec<i64>,
    pub v: Vec<Vec<i64>>,
    pub w: Vec<Vec<i64>>,
    pub u: Vec<Vec<i64>>,
    pub entry_class: Vec<(Position, EntryClass)>,
}

impl PatternData {
    pub fn new(p: &GTPattern) -> Result<Self> {
        let r = p.rank();
        let (s_a, s_b) = p.row_sums();
        let k = p.k()?;
        let mut v = Vec::with_capacity(r);
        let mut w = Vec::with_capacity(r);
        let mut u = Vec::with_capacity(r);
        for i in 1..=r {
            let mut acc = 0;
            let vi: Vec<i64> = (i..=r)
                .map(|m| {
                    acc += p.a_or_zero(i - 1, m) - p.b_or_zero(i, m);
                    acc
                })
                .collect();
            let wi: Vec<i64> = (i + 1..=r)
                .map(|j| (j..=r).map(|m| p.a_or_zero(i, m) - p.b_or_zero(i, m)).sum())
                .collect();
            let v_ir = *vi.last().unwrap_or(&0);
            u.push(wi.iter().map(|x| v_ir + x).collect());
            v.push(vi);
            w.push(wi);
        }
        let entry_class = p
            .positions()
            .into_iter()
            .map(|pos| Ok((pos, p.classify_entry(pos)?)))
            .collect::<Result<_>>()?;
        Ok(PatternData {
            s_a,
            s_b,
            wgt: p.weight(),
            k,
            v,
            w,
            u,
            entry_class,
        })
    }

    pub fn v(&self, i: usize, j: usize) -> i64 {
        self.v[i - 1][j - i]
    }

    pub fn w(&self, i: usize, j: usize) -> i64 {
        self.w[i - 1][j - i - 1]
    }

    pub fn u(&self, i: usize, j: usize) -> i64 {
        self.u[i - 1][j - i - 1]
    }

    pub fn sum_uv(&self) -> i64 {
        self.v.iter().flatten().sum::<i64>() + self.u.iter().flatten().sum::<i64>()
    }
}

/// `Σ k_i = Σ v_{i,j} + Σ u_{i,j}`.
pub fn verify_k_sum(p: &GTPattern) -> bool {
    match p.data() {
        Ok(d) => d.k.iter().sum::<i64>() == d.sum_uv(),
        Err(_) => false,
    }
}
