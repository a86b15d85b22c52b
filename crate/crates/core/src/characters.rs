//! The `n = 1` specialization: symplectic characters, the Hamel–King
//! deformation, the reduced weights `H̃`, the Euler-factor identity and the
//! global Euler product.
//!
//! Polynomials carry the variables `x_1, …, x_r, t, q` (see [`LaurentPoly`]).
//! Characters take the highest weight as a weakly decreasing partition
//! `(λ_1 ≥ … ≥ λ_r ≥ 0)`, i.e. the top row of the patterns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::coefficient::{h_table, reduced_weight};
use crate::error::{Error, Result};
use crate::gauss::is_prime;
use crate::laurent::LaurentPoly;
use crate::pattern::{enumerate_patterns, for_each_pattern, EntryClass};
use crate::root_system::{from_simple_root_coords, LambdaTwist, RootSystemC, WeylElement};
use crate::tableau::{tableau_from_pattern, tableau_stats};

fn nvars(r: usize) -> usize {
    r + 2
}

fn t_var(r: usize) -> usize {
    r
}

fn q_var(r: usize) -> usize {
    r + 1
}

fn x_monomial(r: usize, xs: &[i64], t: i64, q: i64) -> LaurentPoly {
    let mut exp = xs.to_vec();
    exp.push(t);
    exp.push(q);
    debug_assert_eq!(exp.len(), nvars(r));
    LaurentPoly::x_pow(exp)
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `Σ_{P ∈ GT(λ)} x^{wgt(P)}`.
pub fn character_gt(top: &[i64]) -> Result<LaurentPoly> {
    let r = top.len();
    let mut out = LaurentPoly::zero(nvars(r));
    for_each_pattern(top, |p| {
        let mut exp = p.weight();
        exp.extend([0, 0]);
        out.add_term(exp, BigRational::one());
        true
    })?;
    Ok(out)
}

/// `A_v = Σ_w sign(w) x^{w(v)}`.
fn alternant(v: &[i64]) -> LaurentPoly {
    let r = v.len();
    let mut out = LaurentPoly::zero(nvars(r));
    for w in WeylElement::all(r) {
        let mut exp = w.act(v);
        exp.extend([0, 0]);
        out.add_term(exp, BigRational::from_integer(w.sign().into()));
    }
    out
}

/// The Weyl character formula `A_{μ+ρ} / A_ρ`, by exact division.
pub fn character_weyl_oracle(top: &[i64]) -> Result<LaurentPoly> {
    let r = top.len();
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    if top.iter().any(|x| *x < 0) || top.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::BadTopRow(top.to_vec()));
    }
    let rs = RootSystemC::new(r)?;
    let shifted: Vec<i64> = top.iter().rev().zip(rs.rho()).map(|(m, p)| m + p).collect();
    alternant(&shifted).div_exact(&alternant(rs.rho()))
}

/// `Π x_i^{r−i+1} Π(1 + t x_i^{−2}) Π_{i<j}(1 + t x_i^{−1}x_j)(1 + t x_i^{−1}x_j^{−1})`.
pub fn deformation_d(r: usize) -> LaurentPoly {
    let one = LaurentPoly::one(nvars(r));
    let prefix: Vec<i64> = (1..=r).map(|i| (r - i + 1) as i64).collect();
    let mut out = x_monomial(r, &prefix, 0, 0);
    for i in 0..r {
        let mut xs = vec![0; r];
        xs[i] = -2;
        out = &out * &(&one + &x_monomial(r, &xs, 1, 0));
        for j in i + 1..r {
            for sign in [1, -1] {
                let mut xs = vec![0; r];
                xs[i] = -1;
                xs[j] = sign;
                out = &out * &(&one + &x_monomial(r, &xs, 1, 0));
            }
        }
    }
    out
}

/// `Σ_S t^{height(S) + r(r+1)/2} (1+t)^{str(S) − r} x^{wgt(S)}` over the
/// tableaux of the strict patterns with top row `λ+ρ`.
pub fn hk_rhs(twist: &LambdaTwist) -> Result<LaurentPoly> {
    let r = twist.rank();
    let nv = nvars(r);
    let one_plus_t = &LaurentPoly::one(nv) + &LaurentPoly::var(nv, t_var(r), 1);
    let mut powers: Vec<LaurentPoly> = vec![LaurentPoly::one(nv)];
    let mut by_exp: BTreeMap<(Vec<i64>, i64, i64), i64> = BTreeMap::new();
    let mut failure = None;
    for_each_pattern(&twist.top_row(), |p| {
        if !p.is_strict() {
            return true;
        }
        match tableau_from_pattern(p) {
            Ok(t) => {
                let s = tableau_stats(&t);
                let ri = r as i64;
                *by_exp
                    .entry((s.wgt, s.height + ri * (ri + 1) / 2, s.str - ri))
                    .or_default() += 1;
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
    let mut out = LaurentPoly::zero(nv);
    for ((wgt, t_exp, strips), count) in by_exp {
        let strips = usize::try_from(strips).map_err(|_| Error::InvalidTableau("str < r".into()))?;
        while powers.len() <= strips {
            let next = powers.last().unwrap() * &one_plus_t;
            powers.push(next);
        }
        let term = x_monomial(r, &wgt, t_exp, 0).scale(&BigRational::from_integer(count.into()));
        out += &(&term * &powers[strips]);
    }
    Ok(out)
}

/// Result of an identity check: the difference of the two sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub residual: LaurentPoly,
}

impl IdentityCheck {
    fn compare(lhs: &LaurentPoly, rhs: &LaurentPoly) -> Self {
        let residual = lhs - rhs;
        IdentityCheck {
            holds: residual.is_zero(),
            residual,
        }
    }
}

/// `D(x;t)` with `x_i ↦ t x_i`.
fn deformation_d_scaled(r: usize) -> Result<LaurentPoly> {
    let mut images = LaurentPoly::identity_images(nvars(r));
    for (i, image) in images.iter_mut().enumerate().take(r) {
        image.1[t_var(r)] = 1;
        debug_assert_eq!(image.1[i], 1);
    }
    deformation_d(r).substitute_monomials(&images)
}

/// `D(tx; t) · sp_λ(x) = hk_rhs`, where `λ = L − ρ`. Also checks, tableau
/// by tableau, that `Σ wgt_i = r(r+1)/2 − 2·barred + Σ (r−i+1) l_i`.
pub fn verify_hamel_king(twist: &LambdaTwist) -> Result<IdentityCheck> {
    let r = twist.rank();
    let sp = character_gt(&twist.lambda_partition())?;
    let lhs = &deformation_d_scaled(r)? * &sp;
    let rhs = hk_rhs(twist)?;
    let mut check = IdentityCheck::compare(&lhs, &rhs);
    if check.holds && !weight_sum_identity(twist)? {
        check.holds = false;
    }
    Ok(check)
}

/// `Σ wgt_i(S) = r(r+1)/2 − 2·barred(S) + Σ (r−i+1) l_i` for every tableau.
pub fn weight_sum_identity(twist: &LambdaTwist) -> Result<bool> {
    let r = twist.rank() as i64;
    let shift: i64 = twist
        .l()
        .iter()
        .enumerate()
        .map(|(i, l)| (r - i as i64) * i64::from(*l))
        .sum();
    let mut ok = true;
    for p in enumerate_patterns(&twist.top_row())? {
        if !p.is_strict() {
            continue;
        }
        let s = tableau_stats(&tableau_from_pattern(&p)?);
        ok &= s.wgt.iter().sum::<i64>() == r * (r + 1) / 2 - 2 * s.barred + shift;
    }
    Ok(ok)
}

/// `H̃(k)` as a Laurent polynomial in `q`: the sum over strict patterns of
/// the product of reduced weights `1`, `1 − 1/q`, `−1/q`.
pub fn h_tilde(twist: &LambdaTwist) -> Result<BTreeMap<Vec<i64>, LaurentPoly>> {
    let r = twist.rank();
    let nv = nvars(r);
    let weights: BTreeMap<EntryClass, LaurentPoly> = [EntryClass::Minimal, EntryClass::Generic, EntryClass::Maximal]
        .into_iter()
        .map(|class| {
            let [c0, c1] = reduced_weight(class);
            let poly = &LaurentPoly::from_int(nv, c0)
                + &LaurentPoly::var(nv, q_var(r), -1).scale(&BigRational::from_integer(c1.into()));
            (class, poly)
        })
        .collect();
    let mut out: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    for p in enumerate_patterns(&twist.top_row())? {
        let k = p.k()?;
        let slot = out.entry(k).or_insert_with(|| LaurentPoly::zero(nv));
        if !p.is_strict() {
            continue;
        }
        let mut g = LaurentPoly::one(nv);
        for pos in p.positions() {
            g = &g * &weights[&p.classify_entry(pos)?];
        }
        *slot += &g;
    }
    Ok(out)
}

fn q_poly(r: usize, coeffs: &BTreeMap<u32, BigInt>) -> LaurentPoly {
    let nv = nvars(r);
    let mut out = LaurentPoly::zero(nv);
    for (e, c) in coeffs {
        let mut exp = vec![0; nv];
        exp[q_var(r)] = i64::from(*e);
        out.add_term(exp, BigRational::from_integer(c.clone()));
    }
    out
}

/// `H(k)` at `n = 1` as polynomials in `q`.
pub fn h_table_q(twist: &LambdaTwist) -> Result<BTreeMap<Vec<i64>, LaurentPoly>> {
    let r = twist.rank();
    let table = h_table(twist, 1)?;
    table
        .entries
        .iter()
        .map(|(k, v)| {
            let coeffs = v
                .as_q_polynomial()
                .ok_or_else(|| Error::Parse("gauss symbol at n = 1".into()))?;
            Ok((k.clone(), q_poly(r, &coeffs)))
        })
        .collect()
}

/// Checks `H(k) = H̃(k) q^{Σk}` at every support vector; returns the first
/// offending `k`, if any.
pub fn h_tilde_relation(twist: &LambdaTwist) -> Result<Option<Vec<i64>>> {
    let r = twist.rank();
    let nv = nvars(r);
    let h = h_table_q(twist)?;
    let tilde = h_tilde(twist)?;
    if h.len() != tilde.len() {
        let missing = h.keys().find(|k| !tilde.contains_key(*k)).or_else(|| tilde.keys().find(|k| !h.contains_key(*k)));
        return Ok(missing.cloned());
    }
    for (k, value) in &h {
        let scaled = &tilde[k] * &LaurentPoly::var(nv, q_var(r), k.iter().sum());
        if &scaled != value {
            return Ok(Some(k.clone()));
        }
    }
    Ok(None)
}

/// Satake substitution `q^{−2s_i} = q^{−1} X_i` with `X_i = x^{α_i}`: the
/// x-exponent attached to the support vector `k`.
pub fn satake_exponent(k: &[i64]) -> Vec<i64> {
    from_simple_root_coords(k)
}

/// Inverse of [`satake_exponent`].
pub fn satake_support(exp: &[i64]) -> Result<Vec<i64>> {
    crate::root_system::simple_root_coords(exp)
}

/// `Σ_k H(k) q^{−|k|} x^{Σ k_i α_i}`.
pub fn generating_function(twist: &LambdaTwist) -> Result<LaurentPoly> {
    let r = twist.rank();
    let mut out = LaurentPoly::zero(nvars(r));
    for (k, value) in h_table_q(twist)? {
        let shift = x_monomial(r, &satake_exponent(&k), 0, -k.iter().sum::<i64>());
        out += &(&value * &shift);
    }
    Ok(out)
}

/// `Π_{α>0} (1 − x^α / q)`.
pub fn positive_root_product(r: usize) -> Result<LaurentPoly> {
    let rs = RootSystemC::new(r)?;
    let one = LaurentPoly::one(nvars(r));
    let mut out = one.clone();
    for root in rs.positive_roots() {
        out = &out * &(&one - &x_monomial(r, &root.coords, 0, -1));
    }
    Ok(out)
}

/// `x^ρ · D(−x/q; −1/q) = Π_{α>0}(1 − x^α/q)`.
pub fn cs_identity_part_a(r: usize) -> Result<IdentityCheck> {
    let nv = nvars(r);
    let mut images = LaurentPoly::identity_images(nv);
    for image in images.iter_mut().take(r) {
        image.0 = rational(-1, 1);
        image.1[q_var(r)] = -1;
    }
    let mut t_image = vec![0; nv];
    t_image[q_var(r)] = -1;
    images[t_var(r)] = (rational(-1, 1), t_image);
    let d = deformation_d(r).substitute_monomials(&images)?;
    let rho: Vec<i64> = (1..=r as i64).collect();
    let lhs = &d * &x_monomial(r, &rho, 0, 0);
    Ok(IdentityCheck::compare(&lhs, &positive_root_product(r)?))
}

/// `Σ_k H(k) q^{−|k|} x^{Σk_iα_i} / Π_{α>0}(1 − x^α/q) = x^{L−ρ} sp_λ(x)`.
pub fn cs_identity_part_b(twist: &LambdaTwist) -> Result<IdentityCheck> {
    let r = twist.rank();
    let series = generating_function(twist)?;
    let quotient = series.div_exact(&positive_root_product(r)?);
    let rhs = &character_gt(&twist.lambda_partition())? * &x_monomial(r, &twist.lambda(), 0, 0);
    Ok(match quotient {
        Ok(q) => IdentityCheck::compare(&q, &rhs),
        Err(_) => IdentityCheck {
            holds: false,
            residual: &series - &(&rhs * &positive_root_product(r)?),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsReport {
    pub part_a: bool,
    pub part_b: bool,
    pub residual_a: LaurentPoly,
    pub residual_b: LaurentPoly,
}

pub fn cs_euler_identity(twist: &LambdaTwist) -> Result<CsReport> {
    let a = cs_identity_part_a(twist.rank())?;
    let b = cs_identity_part_b(twist)?;
    Ok(CsReport {
        part_a: a.holds,
        part_b: b.holds,
        residual_a: a.residual,
        residual_b: b.residual,
    })
}

/// The `n = 1` coefficients at one prime, as integer polynomials in `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletPPart {
    pub twist: LambdaTwist,
    pub coefficients: BTreeMap<Vec<i64>, BTreeMap<u32, BigInt>>,
}

impl DirichletPPart {
    pub fn new(twist: &LambdaTwist) -> Result<Self> {
        let table = h_table(twist, 1)?;
        let coefficients = table
            .entries
            .iter()
            .map(|(k, v)| {
                let poly = v
                    .as_q_polynomial()
                    .ok_or_else(|| Error::Parse("gauss symbol at n = 1".into()))?;
                Ok((k.clone(), poly))
            })
            .collect::<Result<_>>()?;
        Ok(DirichletPPart {
            twist: twist.clone(),
            coefficients,
        })
    }

    /// Coefficient at `k` with `q` set to `p`; 0 off the support.
    pub fn at(&self, k: &[i64], p: u64) -> BigInt {
        let q = BigInt::from(p);
        self.coefficients
            .get(k)
            .map(|poly| poly.iter().map(|(e, c)| c * Pow::pow(&q, *e)).sum())
            .unwrap_or_else(BigInt::zero)
    }
}

/// Guard on the number of coefficient vectors in the Euler product.
pub const MAX_EULER_VECTORS: u64 = 1_000_000;

fn ord(mut x: u64, p: u64) -> u32 {
    let mut e = 0;
    while x.is_multiple_of(p) {
        x /= p;
        e += 1;
    }
    e
}

/// `H(c; m)` for every `c ∈ [1, bound]^r`, as the product over primes
/// `p ≤ bound` of the local coefficients with `l_i = ord_p(m_i)`.
pub fn euler_product_n1(m: &[i64], bound: u64) -> Result<BTreeMap<Vec<u64>, BigInt>> {
    let r = m.len();
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    if m.contains(&0) {
        return Err(Error::Parse("twisting integers must be nonzero".into()));
    }
    let total = bound
        .checked_pow(r as u32)
        .filter(|t| *t <= MAX_EULER_VECTORS)
        .ok_or(Error::BoundTooLarge(bound))?;
    let _ = total;
    let primes: Vec<u64> = (2..=bound).filter(|p| is_prime(*p)).collect();
    let mut locals: BTreeMap<u64, DirichletPPart> = BTreeMap::new();
    for &p in &primes {
        let l: Vec<u32> = m.iter().map(|mi| ord(mi.unsigned_abs(), p)).collect();
        locals.insert(p, DirichletPPart::new(&LambdaTwist::new(l)?)?);
    }
    let mut out = BTreeMap::new();
    let mut c = vec![1u64; r];
    loop {
        let mut value = BigInt::one();
        for &p in &primes {
            let k: Vec<i64> = c.iter().map(|ci| i64::from(ord(*ci, p))).collect();
            if k.iter().all(|x| *x == 0) {
                continue;
            }
            value *= locals[&p].at(&k, p);
            if value.is_zero() {
                break;
            }
        }
        out.insert(c.clone(), value);
        let mut idx = r;
        loop {
            if idx == 0 {
                return Ok(out);
            }
            idx -= 1;
            if c[idx] < bound {
                c[idx] += 1;
                break;
            }
            c[idx] = 1;
        }
    }
}

/// Value of a polynomial with all `x_i = 1`, for dimension checks.
pub fn dimension(p: &LaurentPoly) -> Option<i64> {
    let v = p.eval_ones();
    if v.is_integer() {
        v.to_integer().to_i64()
    } else {
        None
    }
}
