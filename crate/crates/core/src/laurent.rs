//! Exact multivariate Laurent polynomials with rational coefficients.
//!
//! For rank `r` the variables are `x_1, …, x_r, t, q`, so exponent vectors
//! have length `r + 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    pub fn monomial(exp: Vec<i64>, c: BigRational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// `x^exp` with coefficient 1.
    pub fn x_pow(exp: Vec<i64>) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// The single variable with index `var`, raised to `e`.
    pub fn var(nvars: usize, var: usize, e: i64) -> Self {
        let mut exp = vec![0; nvars];
        exp[var] = e;
        Self::x_pow(exp)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: BigRational) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes `v ↦ c_v · x^{e_v}` for every variable `v` at once.
    pub fn substitute_monomials(&self, images: &[(BigRational, Vec<i64>)]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Parse(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = images.first().map_or(self.nvars, |(_, e)| e.len());
        let mut out = Self::zero(target);
        for (exp, c) in &self.terms {
            let mut coeff = c.clone();
            let mut new_exp = vec![0i64; target];
            for (v, k) in exp.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let (cv, ev) = &images[v];
                if cv.is_zero() && *k < 0 {
                    return Err(Error::Parse("negative power of zero".into()));
                }
                coeff *= rational_pow(cv, *k);
                for (slot, e) in new_exp.iter_mut().zip(ev) {
                    *slot += e * k;
                }
            }
            out.add_term(new_exp, coeff);
        }
        Ok(out)
    }

    /// Identity substitution with selected variables replaced.
    pub fn identity_images(nvars: usize) -> Vec<(BigRational, Vec<i64>)> {
        (0..nvars)
            .map(|v| {
                let mut e = vec![0; nvars];
                e[v] = 1;
                (BigRational::one(), e)
            })
            .collect()
    }

    /// Sum of all coefficients, i.e. the value at every variable equal to 1.
    pub fn eval_ones(&self) -> BigRational {
        self.terms.values().sum()
    }

    fn lowest(&self) -> Option<&Vec<i64>> {
        self.terms.keys().next()
    }

    fn leading(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`, failing on a nonzero remainder.
    ///
    /// Lexicographic leading terms are cancelled one at a time. If the
    /// division is exact every quotient exponent is at least
    /// `low(self) − low(divisor)`, which bounds the loop.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (lead_exp, lead_c) = divisor
            .leading()
            .ok_or_else(|| Error::Parse("division by zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.nvars);
        let Some(low_f) = self.lowest().cloned() else {
            return Ok(quotient);
        };
        let low_g = divisor.lowest().expect("nonzero divisor");
        let floor: Vec<i64> = low_f.iter().zip(low_g).map(|(a, b)| a - b).collect();
        while let Some((exp, c)) = rem.leading() {
            let q_exp: Vec<i64> = exp.iter().zip(lead_exp).map(|(a, b)| a - b).collect();
            if q_exp < floor {
                return Err(Error::Parse(format!(
                    "inexact division, remainder has {} terms",
                    rem.len()
                )));
            }
            let q_c = c / lead_c;
            let step = LaurentPoly::monomial(q_exp.clone(), q_c.clone());
            rem = &rem - &(&step * divisor);
            quotient.add_term(q_exp, q_c);
        }
        Ok(quotient)
    }
}

fn rational_pow(c: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(c.clone(), k as usize)
    } else {
        num_traits::pow(c.recip(), (-k) as usize)
    }
}

fn ratio_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [i64],
            coeff: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (exp, c) in &self.terms {
            seq.serialize_element(&Term {
                exp,
                coeff: ratio_string(c),
            })?;
        }
        seq.end()
    }
}

impl LaurentPoly {
    pub fn from_json(value: &serde_json::Value, nvars: usize) -> Result<LaurentPoly> {
        let bad = |msg: &str| Error::Parse(format!("polynomial: {msg}"));
        let mut out = LaurentPoly::zero(nvars);
        for item in value.as_array().ok_or_else(|| bad("expected an array"))? {
            let exp = item["exp"]
                .as_array()
                .ok_or_else(|| bad("missing exp"))?
                .iter()
                .map(|e| e.as_i64().ok_or_else(|| bad("bad exponent")))
                .collect::<Result<Vec<i64>>>()?;
            if exp.len() != nvars {
                return Err(bad("exponent length"));
            }
            let text = item["coeff"].as_str().ok_or_else(|| bad("missing coeff"))?;
            let (n, d) = text.split_once('/').unwrap_or((text, "1"));
            let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            out.add_term(exp, BigRational::new(n, d));
        }
        Ok(out)
    }
}

/// Variable names for rank `nvars − 2`.
fn var_name(nvars: usize, v: usize) -> String {
    if v + 2 == nvars {
        "t".into()
    } else if v + 1 == nvars {
        "q".into()
    } else {
        format!("x{}", v + 1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exp, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            let constant = exp.iter().all(|e| *e == 0);
            if !abs.is_one() || constant {
                factors.push(abs.to_string());
            }
            for (v, e) in exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_name(self.nvars, v)),
                    e => factors.push(format!("{}^{e}", var_name(self.nvars, v))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic() {
        let x = LaurentPoly::var(3, 0, 1);
        let xi = LaurentPoly::var(3, 0, -1);
        let one = LaurentPoly::one(3);
        assert_eq!(&x * &xi, one);
        let s = &x + &xi;
        let sq = &s * &s;
        assert_eq!(sq.coeff(&[0, 0, 0]), r(2, 1));
        assert_eq!(sq.len(), 3);
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn exact_division() {
        let x = LaurentPoly::var(3, 0, 1);
        let y = LaurentPoly::var(3, 1, -2);
        let a = &(&x + &y) + &LaurentPoly::constant(3, r(1, 3));
        let b = &(&x - &LaurentPoly::var(3, 2, 5)) + &y;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        let off = &prod + &LaurentPoly::one(3);
        assert!(off.div_exact(&a).is_err());
        assert!(LaurentPoly::zero(3).div_exact(&a).unwrap().is_zero());
    }

    #[test]
    fn monomial_substitution() {
        // x1 + t/x1 under x1 -> t*x1
        let p = &LaurentPoly::var(3, 0, 1) + &LaurentPoly::x_pow(vec![-1, 1, 0]);
        let mut images = LaurentPoly::identity_images(3);
        images[0] = (BigRational::one(), vec![1, 1, 0]);
        let s = p.substitute_monomials(&images).unwrap();
        let expected = &LaurentPoly::x_pow(vec![1, 1, 0]) + &LaurentPoly::x_pow(vec![-1, 0, 0]);
        assert_eq!(s, expected);
        images[1] = (r(-1, 1), vec![0, 0, -1]);
        let s = p.substitute_monomials(&images).unwrap();
        assert_eq!(s.coeff(&[1, 1, 0]), r(1, 1));
        assert_eq!(s.coeff(&[-1, -1, -1]), r(-1, 1));
    }

    #[test]
    fn json_roundtrip() {
        let p = &LaurentPoly::monomial(vec![1, -2, 0], r(3, 4)) - &LaurentPoly::one(3);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"[{"exp":[0,0,0],"coeff":"-1/1"},{"exp":[1,-2,0],"coeff":"3/4"}]"#
        );
        let back = LaurentPoly::from_json(&serde_json::from_str(&text).unwrap(), 3).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_string(), "3/4*x1*t^-2 - 1");
    }
}
