//! The stable case: when `n` is large compared to the twist, each nonzero
//! coefficient is a product of Gauss sums over the inversion set `Φ_w` of a
//! single Weyl element.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::coefficient::h_table;
use crate::error::{Error, Result};
use crate::gauss::{gauss_eval, ArithContext, GaussValue};
use crate::pattern::{weyl_from_stable, weyl_k, EntryClass, GTPattern, Position};
use crate::root_system::{is_positive, LambdaTwist, RootSystemC, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootKind {
    /// `2e_{σ⁻¹(i)}`
    Long,
    /// `e_{σ⁻¹(j)} + e_{σ⁻¹(i)}`
    ShortPlus,
    /// `±(e_{σ⁻¹(j)} − e_{σ⁻¹(i)})`, signed to be positive
    ShortMinus,
}

/// A positive root labelled relative to `w`; `i` and `j < i` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypedRoot {
    pub kind: RootKind,
    pub i: usize,
    pub j: Option<usize>,
    pub root: Vec<i64>,
}

/// Every positive root, labelled by `(kind, i, j)` with respect to `w`.
pub fn typed_roots(w: &WeylElement) -> Vec<TypedRoot> {
    let r = w.rank();
    let inv = w.sigma_inv();
    let unit = |l: usize, c: i64| {
        let mut v = vec![0; r];
        v[l] = c;
        v
    };
    let mut out = Vec::with_capacity(r * r);
    for i in 1..=r {
        let si = inv[i - 1];
        out.push(TypedRoot {
            kind: RootKind::Long,
            i,
            j: None,
            root: unit(si, 2),
        });
        for j in 1..i {
            let sj = inv[j - 1];
            let mut plus = unit(si, 1);
            plus[sj] += 1;
            out.push(TypedRoot {
                kind: RootKind::ShortPlus,
                i,
                j: Some(j),
                root: plus,
            });
            let (hi, lo) = if sj > si { (sj, si) } else { (si, sj) };
            let mut minus = unit(hi, 1);
            minus[lo] = -1;
            out.push(TypedRoot {
                kind: RootKind::ShortMinus,
                i,
                j: Some(j),
                root: minus,
            });
        }
    }
    out
}

/// `Φ_w^{(i)}` for `i = 1..=r`, as index `i−1` of the result.
pub fn phi_w_typed(w: &WeylElement) -> Vec<Vec<TypedRoot>> {
    let mut parts = vec![Vec::new(); w.rank()];
    for t in typed_roots(w) {
        if !is_positive(&w.act(&t.root)) {
            parts[t.i - 1].push(t);
        }
    }
    parts
}

/// `D_i = {d_λ(α) : α ∈ Φ_w^{(i)}}` as a sorted multiset, computed from the
/// roots.
pub fn d_sets(rs: &RootSystemC, w: &WeylElement, twist: &LambdaTwist) -> Result<Vec<Vec<i64>>> {
    phi_w_typed(w)
        .into_iter()
        .map(|part| {
            let mut d = part
                .iter()
                .map(|t| rs.d_lambda(&t.root, twist))
                .collect::<Result<Vec<_>>>()?;
            d.sort_unstable();
            Ok(d)
        })
        .collect()
}

/// The closed form of `D_i` in terms of `L` and `w`, sorted.
pub fn d_set_closed_form(w: &WeylElement, twist: &LambdaTwist, i: usize) -> Vec<i64> {
    let inv = w.sigma_inv();
    let l = twist.big_l();
    let li = l[inv[i - 1]];
    let mut d = Vec::new();
    if w.eps()[i - 1] > 0 {
        for j in 1..i {
            if inv[j - 1] > inv[i - 1] {
                d.push(l[inv[j - 1]] - li);
            }
        }
    } else {
        d.push(li);
        for j in 1..i {
            let lj = l[inv[j - 1]];
            d.push(lj + li);
            if inv[j - 1] < inv[i - 1] {
                d.push(li - lj);
            }
        }
    }
    d.sort_unstable();
    d
}

fn check_stable_degree(twist: &LambdaTwist, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    let bound = twist.stability_bound();
    if n < bound {
        return Err(Error::BelowStabilityBound { n, bound });
    }
    Ok(())
}

/// `Π_{α ∈ Φ_w} g_{‖α‖²}(p^{d_λ(α)−1}, p^{d_λ(α)})`.
pub fn h_stable(w: &WeylElement, twist: &LambdaTwist, n: u32) -> Result<GaussValue> {
    check_stable_degree(twist, n)?;
    let rs = RootSystemC::new(twist.rank())?;
    let mut acc = GaussValue::one(n);
    for root in rs.phi_w(w) {
        let d = rs.d_lambda(&root.coords, twist)?;
        let factor = gauss_eval(i64::from(root.norm_sq()), d - 1, d as u32, n);
        acc *= &factor;
    }
    Ok(acc)
}

/// Number of maximal entries in rows `b_{r+1−i}` and `a_{r+1−i}`.
pub fn maximal_count(p: &GTPattern, i: usize) -> Result<usize> {
    if !p.is_stable() {
        return Err(Error::NotStable);
    }
    let r = p.rank();
    if i == 0 || i > r {
        return Err(Error::IndexOutOfRange { index: i, rank: r });
    }
    let row = r + 1 - i;
    let mut positions: Vec<Position> = (row..=r).map(|j| Position::B { i: row, j }).collect();
    if row < r {
        positions.extend((row + 1..=r).map(|j| Position::A { i: row, j }));
    }
    let mut count = 0;
    for pos in positions {
        if p.classify_entry(pos)? == EntryClass::Maximal {
            count += 1;
        }
    }
    Ok(count)
}

/// `inv_i(w⁻¹)` when `ε_i = +1`, else `i + pr_i(w⁻¹)`.
pub fn maximal_count_formula(w: &WeylElement, i: usize) -> Result<usize> {
    let (inv, pr) = w.inv_pr_counts(i)?;
    Ok(if w.eps()[i - 1] > 0 { inv } else { i + pr })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub weyl: String,
    pub k: Vec<i64>,
    pub table: GaussValue,
    pub stable: GaussValue,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StableReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl StableReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn numerically_close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-6 * a.norm().max(b.norm()).max(1.0)
}

/// Compares the pattern-sum table with the stable formula at every Weyl
/// element, symbolically and, given a context, numerically. Also checks that
/// distinct elements have distinct supports and that no other support
/// vector carries a nonzero value.
pub fn verify_stable_formula(
    twist: &LambdaTwist,
    n: u32,
    ctx: Option<&ArithContext>,
) -> Result<StableReport> {
    check_stable_degree(twist, n)?;
    if let Some(ctx) = ctx {
        if ctx.n() != n {
            return Err(Error::DegreeMismatch(ctx.n(), n));
        }
    }
    let r = twist.rank();
    let table = h_table(twist, n)?;
    let mut mismatches = Vec::new();
    let mut hit: BTreeMap<Vec<i64>, WeylElement> = BTreeMap::new();
    let elements = WeylElement::all(r);
    for w in &elements {
        let k = weyl_k(w, twist)?;
        let expected = h_stable(w, twist, n)?;
        let actual = table.value(&k);
        let mut reason = None;
        if let Some(prev) = hit.insert(k.clone(), w.clone()) {
            reason = Some(format!("support vector shared with {prev}"));
        } else if actual != expected {
            reason = Some("symbolic values differ".to_string());
        } else if let Some(ctx) = ctx {
            let a = ctx.numeric_eval(&actual)?;
            let b = ctx.numeric_eval(&expected)?;
            if !numerically_close(a, b) {
                reason = Some(format!("numeric values differ: {a} vs {b}"));
            }
        }
        if let Some(reason) = reason {
            mismatches.push(Mismatch {
                weyl: w.to_string(),
                k,
                table: actual,
                stable: expected,
                reason,
            });
        }
    }
    for k in table.nonzero_keys() {
        if !hit.contains_key(k) {
            mismatches.push(Mismatch {
                weyl: "none".to_string(),
                k: k.clone(),
                table: table.value(k),
                stable: GaussValue::zero(n),
                reason: "nonzero coefficient outside the Weyl orbit".to_string(),
            });
        }
    }
    Ok(StableReport {
        checked: elements.len(),
        mismatches,
    })
}

/// Each stable pattern's Weyl element, paired with the pattern.
pub fn stable_census(top: &[i64]) -> Result<Vec<(WeylElement, GTPattern)>> {
    crate::pattern::stable_patterns(top)?
        .into_iter()
        .map(|p| Ok((weyl_from_stable(&p)?, p)))
        .collect()
}
