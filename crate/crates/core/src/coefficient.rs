//! Per-entry Gauss sum weights, the pattern weight `G(P)` and the table of
//! prime-power coefficients `H(p^k; p^l)`.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gauss::{gauss_eval, phi_q, GaussValue};
use crate::pattern::{for_each_pattern, EntryClass, GTPattern, PatternData, Position};
use crate::root_system::LambdaTwist;

fn nonneg(x: i64) -> u32 {
    u32::try_from(x).expect("interleaving keeps u and v nonnegative")
}

fn check_b(p: &GTPattern, i: usize, j: usize) -> Result<()> {
    p.get(Position::B { i, j }).map(|_| ())
}

fn check_a(p: &GTPattern, i: usize, j: usize) -> Result<()> {
    if i == 0 {
        return Err(Error::InvalidPosition(format!("a({i},{j})")));
    }
    p.get(Position::A { i, j }).map(|_| ())
}

/// `γ_b(i,j)`: `q^v` when minimal, else `g_{δ_{jr}+1}(p^{v+b−a_{i−1,j+1}−1}, p^v)`.
pub fn gamma_b(p: &GTPattern, i: usize, j: usize, n: u32) -> Result<GaussValue> {
    check_b(p, i, j)?;
    Ok(gamma_b_with(p, &p.data()?, i, j, n))
}

fn gamma_b_with(p: &GTPattern, d: &PatternData, i: usize, j: usize, n: u32) -> GaussValue {
    let v = d.v(i, j);
    let b = p.b_or_zero(i, j);
    if b == p.a_or_zero(i - 1, j) {
        return GaussValue::q_pow(n, nonneg(v));
    }
    let t = if j == p.rank() { 2 } else { 1 };
    gauss_eval(t, v + b - p.a_or_zero(i - 1, j + 1) - 1, nonneg(v), n)
}

/// `γ_a(i,j)` for `i ≥ 1`: `q^u` when minimal, else
/// `g_1(p^{u−a+b_{i,j−1}−1}, p^u)`.
pub fn gamma_a(p: &GTPattern, i: usize, j: usize, n: u32) -> Result<GaussValue> {
    check_a(p, i, j)?;
    Ok(gamma_a_with(p, &p.data()?, i, j, n))
}

fn gamma_a_with(p: &GTPattern, d: &PatternData, i: usize, j: usize, n: u32) -> GaussValue {
    let u = d.u(i, j);
    let a = p.a_or_zero(i, j);
    if a == p.b_or_zero(i, j) {
        return GaussValue::q_pow(n, nonneg(u));
    }
    gauss_eval(1, u - a + p.b_or_zero(i, j - 1) - 1, nonneg(u), n)
}

/// Four-case form of `γ_b`, testing the maximal case first.
pub fn gamma_b_cases(p: &GTPattern, i: usize, j: usize, n: u32) -> Result<GaussValue> {
    check_b(p, i, j)?;
    let d = p.data()?;
    let v = d.v(i, j);
    let b = p.b_or_zero(i, j);
    let t = if j == p.rank() { 2 } else { 1 };
    Ok(if b == p.a_or_zero(i - 1, j + 1) {
        gauss_eval(t, v - 1, nonneg(v), n)
    } else if b < p.a_or_zero(i - 1, j) {
        if (v * t) % i64::from(n) == 0 {
            phi_q(n, nonneg(v))
        } else {
            GaussValue::zero(n)
        }
    } else {
        GaussValue::q_pow(n, nonneg(v))
    })
}

/// Four-case form of `γ_a`, testing the maximal case first.
pub fn gamma_a_cases(p: &GTPattern, i: usize, j: usize, n: u32) -> Result<GaussValue> {
    check_a(p, i, j)?;
    let d = p.data()?;
    let u = d.u(i, j);
    let a = p.a_or_zero(i, j);
    Ok(if a == p.b_or_zero(i, j - 1) {
        gauss_eval(1, u - 1, nonneg(u), n)
    } else if a > p.b_or_zero(i, j) {
        if u % i64::from(n) == 0 {
            phi_q(n, nonneg(u))
        } else {
            GaussValue::zero(n)
        }
    } else {
        GaussValue::q_pow(n, nonneg(u))
    })
}

/// `G(P)`: the product of every entry weight for strict `P`, 0 otherwise.
#[allow(non_snake_case)]
pub fn pattern_G(p: &GTPattern, n: u32) -> Result<GaussValue> {
    if !p.is_strict() {
        return Ok(GaussValue::zero(n));
    }
    let d = p.data()?;
    let mut acc = GaussValue::one(n);
    for pos in p.positions() {
        let factor = match pos {
            Position::B { i, j } => gamma_b_with(p, &d, i, j, n),
            Position::A { i, j } => gamma_a_with(p, &d, i, j, n),
        };
        if factor.is_zero() {
            return Ok(factor);
        }
        acc *= &factor;
    }
    Ok(acc)
}

/// Reduced per-entry weight at `n = 1`, as `(tag, [c_0, c_1])` meaning
/// `c_0 + c_1/q`: minimal 1, generic `1 − 1/q`, maximal `−1/q`.
pub fn reduced_weight(class: EntryClass) -> [i64; 2] {
    match class {
        EntryClass::Minimal => [1, 0],
        EntryClass::Generic => [1, -1],
        EntryClass::Maximal => [0, -1],
    }
}

/// `H^{(n)}(p^k; p^l)` for every support vector `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTable {
    pub twist: LambdaTwist,
    pub n: u32,
    pub entries: BTreeMap<Vec<i64>, GaussValue>,
}

impl HTable {
    pub fn get(&self, k: &[i64]) -> Option<&GaussValue> {
        self.entries.get(k)
    }

    /// Value at `k`, with keys outside the support reading as 0.
    pub fn value(&self, k: &[i64]) -> GaussValue {
        self.entries
            .get(k)
            .cloned()
            .unwrap_or_else(|| GaussValue::zero(self.n))
    }

    pub fn nonzero_keys(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| k)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<HTable> {
        let bad = |msg: &str| Error::Parse(format!("coefficient table: {msg}"));
        let l = value["l"]
            .as_array()
            .ok_or_else(|| bad("missing l"))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("bad l")))
            .collect::<Result<Vec<u32>>>()?;
        let n = value["n"].as_u64().ok_or_else(|| bad("missing n"))? as u32;
        let mut entries = BTreeMap::new();
        for entry in value["entries"].as_array().ok_or_else(|| bad("missing entries"))? {
            let k = entry["k"]
                .as_array()
                .ok_or_else(|| bad("missing k"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("bad k")))
                .collect::<Result<Vec<i64>>>()?;
            entries.insert(k, GaussValue::from_json(&entry["value"], n)?);
        }
        Ok(HTable {
            twist: LambdaTwist::new(l)?,
            n,
            entries,
        })
    }
}

impl Serialize for HTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            k: &'a [i64],
            value: &'a GaussValue,
        }
        let entries: Vec<Entry<'_>> = self
            .entries
            .iter()
            .map(|(k, value)| Entry { k, value })
            .collect();
        let mut s = serializer.serialize_struct("HTable", 3)?;
        s.serialize_field("l", self.twist.l())?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

/// Groups `G(P)` over the patterns with top row `λ+ρ` by their support
/// vector. Keys whose patterns cancel or are all non-strict stay in the
/// table with value 0.
pub fn h_table(twist: &LambdaTwist, n: u32) -> Result<HTable> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut entries: BTreeMap<Vec<i64>, GaussValue> = BTreeMap::new();
    let mut failure = None;
    for_each_pattern(&twist.top_row(), |p| {
        let step = p.k().and_then(|k| Ok((k, pattern_G(p, n)?)));
        match step {
            Ok((k, g)) => {
                *entries.entry(k).or_insert_with(|| GaussValue::zero(n)) += &g;
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(HTable {
        twist: twist.clone(),
        n,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::ArithContext;
    use crate::pattern::enumerate_patterns;
    use num_bigint::BigInt;

    fn q(n: u32, e: u32) -> GaussValue {
        GaussValue::q_pow(n, e)
    }

    #[test]
    fn rank_one_table() {
        let t = h_table(&LambdaTwist::new(vec![1]).unwrap(), 1).unwrap();
        assert_eq!(t.entries.len(), 3);
        assert_eq!(t.value(&[0]), GaussValue::one(1));
        assert_eq!(t.value(&[1]), &q(1, 1) - &q(1, 0));
        assert_eq!(t.value(&[2]), -q(1, 1));
        assert_eq!(t.value(&[1]).to_string(), "-1 + q");
    }

    #[test]
    fn origin_is_one() {
        for l in [vec![0], vec![2], vec![0, 1], vec![1, 0, 0]] {
            for n in [1, 2, 3] {
                let t = h_table(&LambdaTwist::new(l.clone()).unwrap(), n).unwrap();
                assert!(t.value(&vec![0; l.len()]).is_one());
            }
        }
    }

    #[test]
    fn long_element_entry() {
        let t = h_table(&LambdaTwist::new(vec![0, 0]).unwrap(), 3).unwrap();
        let expected = GaussValue::monomial(3, BigInt::from(-1), 3, &[1, 1, 2]);
        assert_eq!(t.value(&[3, 4]), expected);
        let ctx = ArithContext::new(3, 7).unwrap();
        let direct = ctx.gauss_brute(2, 0, 1).unwrap()
            * ctx.gauss_brute(2, 1, 2).unwrap()
            * ctx.gauss_brute(1, 0, 1).unwrap()
            * ctx.gauss_brute(1, 2, 3).unwrap();
        let value = ctx.numeric_eval(&expected).unwrap();
        assert!((direct - value).norm() < 1e-6 * value.norm());
    }

    #[test]
    fn entry_examples() {
        let ps = enumerate_patterns(&[1]).unwrap();
        assert!(gamma_b(&ps[0], 1, 1, 3).unwrap().is_one());
        assert_eq!(gamma_b(&ps[1], 1, 1, 3).unwrap(), GaussValue::symbol(3, 2));
        assert_eq!(gamma_b(&ps[1], 1, 1, 1).unwrap(), GaussValue::from_int(1, -1));
        let generic = &enumerate_patterns(&[2]).unwrap()[1];
        assert_eq!(pattern_G(generic, 1).unwrap(), &q(1, 1) - &q(1, 0));
        assert!(gamma_a(&ps[0], 1, 1, 1).is_err());
        assert!(gamma_b(&ps[0], 2, 1, 1).is_err());
    }

    #[test]
    fn gamma_a_examples() {
        // a_{1,2} spans a gap so it can be minimal, maximal or generic
        let top = [5, 3];
        for p in enumerate_patterns(&top).unwrap() {
            let d = p.data().unwrap();
            let u = d.u(1, 2);
            let class = p.classify_entry(Position::A { i: 1, j: 2 }).unwrap();
            let g = gamma_a(&p, 1, 2, 3).unwrap();
            match class {
                EntryClass::Minimal => assert_eq!(g, q(3, nonneg(u))),
                EntryClass::Maximal => {
                    let expected = if u % 3 == 0 {
                        -q(3, nonneg(u) - 1)
                    } else {
                        &q(3, nonneg(u) - 1) * &GaussValue::symbol(3, u)
                    };
                    assert_eq!(g, expected);
                }
                EntryClass::Generic if u % 3 != 0 => assert!(g.is_zero()),
                EntryClass::Generic => {}
            }
        }
    }

    #[test]
    fn non_strict_weight_is_zero() {
        let p = GTPattern::new(2, vec![vec![2, 1], vec![1]], vec![vec![1, 1], vec![1]]).unwrap();
        assert!(pattern_G(&p, 1).unwrap().is_zero());
        let min = GTPattern::all_minimal(&[4, 2]).unwrap();
        assert!(pattern_G(&min, 5).unwrap().is_one());
    }

    #[test]
    fn short_and_case_forms_agree_on_strict_patterns() {
        for top in [vec![3, 1], vec![4, 2], vec![3, 2, 1], vec![4, 3, 1]] {
            for p in enumerate_patterns(&top).unwrap() {
                if !p.is_strict() {
                    continue;
                }
                for n in [1, 2, 3, 5] {
                    for pos in p.positions() {
                        match pos {
                            Position::B { i, j } => assert_eq!(
                                gamma_b(&p, i, j, n).unwrap(),
                                gamma_b_cases(&p, i, j, n).unwrap()
                            ),
                            Position::A { i, j } => assert_eq!(
                                gamma_a(&p, i, j, n).unwrap(),
                                gamma_a_cases(&p, i, j, n).unwrap()
                            ),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let t = h_table(&LambdaTwist::new(vec![1]).unwrap(), 1).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(
            text,
            r#"{"l":[1],"n":1,"entries":[{"k":[0],"value":[{"c":"1","q":0,"g":[]}]},{"k":[1],"value":[{"c":"-1","q":0,"g":[]},{"c":"1","q":1,"g":[]}]},{"k":[2],"value":[{"c":"-1","q":1,"g":[]}]}]}"#
        );
        let back = HTable::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn weight_is_bounded_by_support() {
        let ctx = ArithContext::new(3, 7).unwrap();
        for p in enumerate_patterns(&[3, 1]).unwrap() {
            let g = pattern_G(&p, 3).unwrap();
            let k: i64 = p.k().unwrap().iter().sum();
            let bound = 7f64.powi(k as i32);
            assert!(ctx.numeric_eval(&g).unwrap().norm() < bound || k == 0);
        }
    }
}
