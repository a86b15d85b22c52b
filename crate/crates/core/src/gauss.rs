//! Gauss sums `g_t(p^c, p^v)`: a symbolic ring for exact identities and a
//! brute-force numeric evaluator used as an oracle.
//!
//! Symbolic values live in `Z[q] · <G[1], …, G[n−1]>` where `G[s]` is the
//! primitive Gauss sum of `χ^s` modulo `p`. Products stay formal except that
//! for odd `n` the pair `G[s]·G[n−s]` collapses to `q`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Guard on the number of residues the brute-force sum visits.
pub const MAX_SUMMANDS: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussValue {
    n: u32,
    // (sorted symbol multiset, q exponent) -> coefficient
    terms: BTreeMap<(Vec<u32>, u32), BigInt>,
}

/// One term `c · q^e · Π G[s]` of a [`GaussValue`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussTerm<'a> {
    pub coeff: &'a BigInt,
    pub q_exp: u32,
    pub symbols: &'a [u32],
}

impl GaussValue {
    pub fn zero(n: u32) -> Self {
        GaussValue {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::monomial(n, BigInt::one(), 0, &[])
    }

    pub fn from_int(n: u32, c: impl Into<BigInt>) -> Self {
        Self::monomial(n, c.into(), 0, &[])
    }

    /// `q^e`.
    pub fn q_pow(n: u32, e: u32) -> Self {
        Self::monomial(n, BigInt::one(), e, &[])
    }

    /// `G[s]`, with `s` reduced mod `n` (so `G[0] = −1`).
    pub fn symbol(n: u32, s: i64) -> Self {
        Self::monomial(n, BigInt::one(), 0, &[s.rem_euclid(i64::from(n.max(1))) as u32])
    }

    /// `c · q^e · Π G[s]`, brought to canonical form.
    pub fn monomial(n: u32, coeff: BigInt, q_exp: u32, symbols: &[u32]) -> Self {
        let mut v = Self::zero(n);
        v.add_term(coeff, q_exp, symbols.to_vec());
        v
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.n)
    }

    pub fn terms(&self) -> impl Iterator<Item = GaussTerm<'_>> {
        self.terms.iter().map(|((symbols, q_exp), coeff)| GaussTerm {
            coeff,
            q_exp: *q_exp,
            symbols,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mut coeff: BigInt, mut q_exp: u32, symbols: Vec<u32>) {
        if coeff.is_zero() {
            return;
        }
        let n = self.n.max(1);
        let mut reduced: Vec<u32> = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s % n;
            if s == 0 {
                coeff = -coeff;
            } else {
                reduced.push(s);
            }
        }
        reduced.sort_unstable();
        if n % 2 == 1 {
            // G[s]·G[n−s] = χ(−1)·q = q for odd n
            let mut counts = vec![0u32; n as usize];
            for s in &reduced {
                counts[*s as usize] += 1;
            }
            for s in 1..=(n / 2) as usize {
                let pairs = counts[s].min(counts[n as usize - s]);
                counts[s] -= pairs;
                counts[n as usize - s] -= pairs;
                q_exp += pairs;
            }
            reduced = counts
                .iter()
                .enumerate()
                .flat_map(|(s, c)| std::iter::repeat_n(s as u32, *c as usize))
                .collect();
        }
        let key = (reduced, q_exp);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_degree(&self, other: &GaussValue) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GaussValue) -> Result<GaussValue> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for ((symbols, q_exp), coeff) in &other.terms {
            out.add_term(coeff.clone(), *q_exp, symbols.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &GaussValue) -> Result<GaussValue> {
        self.check_degree(other)?;
        let mut out = GaussValue::zero(self.n);
        for ((s1, e1), c1) in &self.terms {
            for ((s2, e2), c2) in &other.terms {
                let mut symbols = s1.clone();
                symbols.extend(s2);
                out.add_term(c1 * c2, e1 + e2, symbols);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> GaussValue {
        let mut out = GaussValue::one(self.n);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// For `n = 1` every value is an integer polynomial in `q`; returns its
    /// coefficients by exponent, or `None` if a Gauss symbol remains.
    pub fn as_q_polynomial(&self) -> Option<BTreeMap<u32, BigInt>> {
        let mut out = BTreeMap::new();
        for ((symbols, q_exp), coeff) in &self.terms {
            if !symbols.is_empty() {
                return None;
            }
            out.insert(*q_exp, coeff.clone());
        }
        Some(out)
    }

    /// Substitutes an integer for `q`; fails if a Gauss symbol remains.
    pub fn eval_q(&self, q: &BigInt) -> Option<BigInt> {
        let poly = self.as_q_polynomial()?;
        Some(poly.iter().map(|(e, c)| c * Pow::pow(q, *e)).sum())
    }

    /// Rebuilds a value from its JSON form.
    pub fn from_json(value: &serde_json::Value, n: u32) -> Result<GaussValue> {
        let bad = |msg: &str| Error::Parse(format!("gauss value: {msg}"));
        let items = value.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut out = GaussValue::zero(n);
        for item in items {
            let coeff: BigInt = item["c"]
                .as_str()
                .ok_or_else(|| bad("missing c"))?
                .parse()
                .map_err(|_| bad("bad coefficient"))?;
            let q_exp = item["q"].as_u64().ok_or_else(|| bad("missing q"))? as u32;
            let symbols = item["g"]
                .as_array()
                .ok_or_else(|| bad("missing g"))?
                .iter()
                .map(|s| s.as_u64().map(|s| s as u32).ok_or_else(|| bad("bad symbol")))
                .collect::<Result<Vec<u32>>>()?;
            out.add_term(coeff, q_exp, symbols);
        }
        Ok(out)
    }
}

impl Serialize for GaussValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            c: String,
            q: u32,
            g: &'a [u32],
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((symbols, q_exp), coeff) in &self.terms {
            seq.serialize_element(&Term {
                c: coeff.to_string(),
                q: *q_exp,
                g: symbols,
            })?;
        }
        seq.end()
    }
}

impl fmt::Display for GaussValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((symbols, q_exp), coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (*q_exp == 0 && symbols.is_empty()) {
                factors.push(abs.to_string());
            }
            match q_exp {
                0 => {}
                1 => factors.push("q".into()),
                e => factors.push(format!("q^{e}")),
            }
            let mut i = 0;
            while i < symbols.len() {
                let s = symbols[i];
                let run = symbols[i..].iter().take_while(|x| **x == s).count();
                if run == 1 {
                    factors.push(format!("G[{s}]"));
                } else {
                    factors.push(format!("G[{s}]^{run}"));
                }
                i += run;
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

// Arithmetic operators panic on a degree mismatch; the `try_` forms report it.
impl Add for &GaussValue {
    type Output = GaussValue;
    fn add(self, rhs: &GaussValue) -> GaussValue {
        self.try_add(rhs).expect("gauss value degree mismatch")
    }
}

impl Add for GaussValue {
    type Output = GaussValue;
    fn add(self, rhs: GaussValue) -> GaussValue {
        &self + &rhs
    }
}

impl AddAssign<&GaussValue> for GaussValue {
    fn add_assign(&mut self, rhs: &GaussValue) {
        assert_eq!(self.n, rhs.n, "gauss value degree mismatch");
        for ((symbols, q_exp), coeff) in &rhs.terms {
            self.add_term(coeff.clone(), *q_exp, symbols.clone());
        }
    }
}

impl Neg for &GaussValue {
    type Output = GaussValue;
    fn neg(self) -> GaussValue {
        GaussValue {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Neg for GaussValue {
    type Output = GaussValue;
    fn neg(self) -> GaussValue {
        -&self
    }
}

impl Sub for &GaussValue {
    type Output = GaussValue;
    fn sub(self, rhs: &GaussValue) -> GaussValue {
        self + &(-rhs)
    }
}

impl Mul for &GaussValue {
    type Output = GaussValue;
    fn mul(self, rhs: &GaussValue) -> GaussValue {
        self.try_mul(rhs).expect("gauss value degree mismatch")
    }
}

impl Mul for GaussValue {
    type Output = GaussValue;
    fn mul(self, rhs: GaussValue) -> GaussValue {
        &self * &rhs
    }
}

impl MulAssign<&GaussValue> for GaussValue {
    fn mul_assign(&mut self, rhs: &GaussValue) {
        *self = &*self * rhs;
    }
}

/// `φ(p^v) = q^{v−1}(q − 1)` for `v ≥ 1`.
pub fn phi_q(n: u32, v: u32) -> GaussValue {
    if v == 0 {
        return GaussValue::one(n);
    }
    &GaussValue::q_pow(n, v) - &GaussValue::q_pow(n, v - 1)
}

/// Symbolic `g_t(p^c, p^v)` for a character of order `n`.
pub fn gauss_eval(t: i64, c: i64, v: u32, n: u32) -> GaussValue {
    if v == 0 {
        return GaussValue::one(n);
    }
    let tv = (t * i64::from(v)).rem_euclid(i64::from(n.max(1)));
    let v = i64::from(v);
    if c >= v {
        if tv == 0 {
            phi_q(n, v as u32)
        } else {
            GaussValue::zero(n)
        }
    } else if c == v - 1 {
        let q = GaussValue::q_pow(n, (v - 1) as u32);
        if tv == 0 {
            -q
        } else {
            &q * &GaussValue::symbol(n, tv)
        }
    } else {
        GaussValue::zero(n)
    }
}

/// A prime `p ≡ 1 (mod n)` with the character `χ(g) = e^{2πi/n}` on the
/// least primitive root `g`.
#[derive(Clone, Debug)]
pub struct ArithContext {
    n: u32,
    p: u64,
    generator: u64,
    // discrete log base `generator`, indexed by residue; entry 0 unused
    dlog: Vec<u64>,
    primitive_sums: Vec<Complex64>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = u128::from(base % m);
    let m128 = u128::from(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    base = acc as u64;
    base
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|g| factors.iter().all(|f| pow_mod(*g, (p - 1) / f, p) != 1))
        .expect("every prime has a primitive root")
}

impl ArithContext {
    pub fn new(n: u32, p: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) || !(p - 1).is_multiple_of(u64::from(n)) {
            return Err(Error::BadPrime { p, n });
        }
        if p > MAX_SUMMANDS as u64 {
            return Err(Error::TooManySummands(u128::from(p)));
        }
        let generator = primitive_root(p);
        let mut dlog = vec![0u64; p as usize];
        let mut x = 1u64;
        for e in 0..p - 1 {
            dlog[x as usize] = e;
            x = x * generator % p;
        }
        let mut ctx = ArithContext {
            n,
            p,
            generator,
            dlog,
            primitive_sums: Vec::new(),
        };
        ctx.primitive_sums = (0..n)
            .map(|s| ctx.gauss_brute(i64::from(s), 0, 1))
            .collect::<Result<_>>()?;
        Ok(ctx)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Index `s` with `χ(d) = e^{2πis/n}`, or `None` when `p | d`.
    pub fn residue_symbol(&self, d: i64) -> Option<u32> {
        let r = d.rem_euclid(self.p as i64) as u64;
        if r == 0 {
            return None;
        }
        Some((self.dlog[r as usize] % u64::from(self.n)) as u32)
    }

    fn root_of_unity(&self, index: i64) -> Complex64 {
        let k = index.rem_euclid(i64::from(self.n));
        Complex64::from_polar(1.0, TAU * k as f64 / f64::from(self.n))
    }

    /// Literal sum `Σ_{d mod p^v, p ∤ d} χ(d)^{t·v} e(d p^c / p^v)`.
    pub fn gauss_brute(&self, t: i64, c: u32, v: u32) -> Result<Complex64> {
        if v == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let modulus = u128::from(self.p)
            .checked_pow(v)
            .filter(|m| *m <= MAX_SUMMANDS)
            .ok_or_else(|| Error::TooManySummands(u128::from(self.p).saturating_pow(v)))?;
        let shift = if c >= v {
            0
        } else {
            u128::from(self.p).pow(c) % modulus
        };
        let exponent = t * i64::from(v);
        let chi: Vec<Complex64> = (0..self.n)
            .map(|s| self.root_of_unity(i64::from(s) * exponent))
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for d in 1..modulus {
            let residue = (d % u128::from(self.p)) as usize;
            if residue == 0 {
                continue;
            }
            let s = (self.dlog[residue] % u64::from(self.n)) as usize;
            let phase = (d * shift % modulus) as f64 / modulus as f64;
            total += chi[s] * Complex64::from_polar(1.0, TAU * phase);
        }
        Ok(total)
    }

    /// `G[s]` evaluated numerically.
    pub fn primitive_sum(&self, s: u32) -> Complex64 {
        self.primitive_sums[(s % self.n) as usize]
    }

    /// Substitutes `q → p` and `G[s] → g(χ^s)`.
    pub fn numeric_eval(&self, value: &GaussValue) -> Result<Complex64> {
        if value.degree() != self.n {
            return Err(Error::DegreeMismatch(value.degree(), self.n));
        }
        let p = self.p as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for term in value.terms() {
            let mut x = Complex64::new(term.coeff.to_f64().unwrap_or(f64::NAN), 0.0);
            x *= p.powi(term.q_exp as i32);
            for s in term.symbols {
                x *= self.primitive_sum(*s);
            }
            total += x;
        }
        Ok(total)
    }
}
