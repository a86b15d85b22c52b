//! The C_r root system in Euclidean coordinates and its Weyl group.
//!
//! Roots live in `Z^r` with simple roots `α_1 = 2e_1`, `α_i = e_i − e_{i−1}`.
//! The inner product is normalized so that short roots have squared norm 1
//! and long roots squared norm 2, i.e. `<x, y> = (x · y) / 2` for the
//! Euclidean dot product. In these coordinates `ρ = (1, 2, …, r)` and the
//! fundamental weights are `ε_i = e_i + … + e_r`.
//!
//! A Weyl element is a signed permutation `(σ, ε)` acting by
//! `w(t)_i = ε_i · t_{σ^{-1}(i)}`. Composition `a.compose(&b)` means "apply
//! `b` first, then `a`".

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootLength {
    Short,
    Long,
}

impl RootLength {
    /// Squared norm under the normalized inner product.
    pub fn norm_sq(self) -> u32 {
        match self {
            RootLength::Short => 1,
            RootLength::Long => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
    pub length: RootLength,
}

impl Root {
    pub fn norm_sq(&self) -> u32 {
        self.length.norm_sq()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `2<x, α>/<α, α>`, which is an integer whenever `x` is in the weight lattice.
pub fn coroot_pairing(x: &[i64], alpha: &[i64]) -> BigRational {
    BigRational::new(BigInt::from(2 * dot(x, alpha)), BigInt::from(dot(alpha, alpha)))
}

/// Normalized inner product `<x, y>`.
pub fn inner(x: &[i64], y: &[i64]) -> BigRational {
    BigRational::new(BigInt::from(dot(x, y)), BigInt::from(2))
}

/// A root is positive iff its last nonzero coordinate is positive.
pub fn is_positive(v: &[i64]) -> bool {
    v.iter().rev().find(|c| **c != 0).is_some_and(|c| *c > 0)
}

#[derive(Clone, Debug)]
pub struct RootSystemC {
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    rho: Vec<i64>,
    fundamental_weights: Vec<Vec<i64>>,
}

fn simple_root(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    if i == 0 {
        v[0] = 2;
    } else {
        v[i] = 1;
        v[i - 1] = -1;
    }
    v
}

fn reflect(beta: &[i64], alpha: &[i64]) -> Vec<i64> {
    // the pairing is integral for roots
    let c = 2 * dot(beta, alpha) / dot(alpha, alpha);
    beta.iter().zip(alpha).map(|(b, a)| b - c * a).collect()
}

impl RootSystemC {
    /// Builds C_r, generating the roots as the closure of the simple roots
    /// under simple reflections.
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let simple_roots: Vec<Vec<i64>> = (0..rank).map(|i| simple_root(rank, i)).collect();

        let mut seen: BTreeSet<Vec<i64>> = simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = simple_roots.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for alpha in &simple_roots {
                let image = reflect(&beta, alpha);
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }

        let mut positive_roots: Vec<Root> = seen
            .into_iter()
            .filter(|v| is_positive(v))
            .map(|coords| {
                let length = if dot(&coords, &coords) == 4 {
                    RootLength::Long
                } else {
                    RootLength::Short
                };
                Root { coords, length }
            })
            .collect();
        positive_roots.sort_by_key(|root| (height_of(&root.coords), root.coords.clone()));

        let rho = (1..=rank as i64).collect();
        let fundamental_weights = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(j >= i)).collect())
            .collect();

        Ok(RootSystemC {
            rank,
            simple_roots,
            positive_roots,
            rho,
            fundamental_weights,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    pub fn fundamental_weights(&self) -> &[Vec<i64>] {
        &self.fundamental_weights
    }

    /// Looks up a positive root by its coordinates.
    pub fn positive_root(&self, coords: &[i64]) -> Result<&Root> {
        self.positive_roots
            .iter()
            .find(|root| root.coords == coords)
            .ok_or_else(|| Error::NotPositiveRoot(coords.to_vec()))
    }

    /// `2<α_j, α_i>/<α_i, α_i>` for 1-based `i`, `j`.
    pub fn cartan(&self, j: usize, i: usize) -> i64 {
        let aj = &self.simple_roots[j - 1];
        let ai = &self.simple_roots[i - 1];
        2 * dot(aj, ai) / dot(ai, ai)
    }

    /// Weyl dimension formula for the irreducible representation with
    /// dominant highest weight `mu` (Euclidean coordinates, so
    /// `0 ≤ mu_1 ≤ … ≤ mu_r`).
    pub fn weyl_dimension(&self, mu: &[i64]) -> BigInt {
        let shifted: Vec<i64> = mu.iter().zip(&self.rho).map(|(m, r)| m + r).collect();
        let mut value = BigRational::one();
        for root in &self.positive_roots {
            value *= BigRational::new(
                BigInt::from(dot(&shifted, &root.coords)),
                BigInt::from(dot(&self.rho, &root.coords)),
            );
        }
        value.to_integer()
    }

    /// Shifted action of the simple reflection `σ_i` (1-based) on `s`:
    /// `s_j ↦ s_j − (2<α_j,α_i>/<α_i,α_i>)(s_i − 1/2)`.
    pub fn s_action(&self, i: usize, s: &[BigRational]) -> Result<Vec<BigRational>> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        if s.len() != self.rank {
            return Err(Error::TwistLength {
                got: s.len(),
                rank: self.rank,
            });
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let shift = &s[i - 1] - &half;
        Ok((1..=self.rank)
            .map(|j| &s[j - 1] - BigRational::from_integer(self.cartan(j, i).into()) * &shift)
            .collect())
    }

    /// `Φ_w = {α > 0 : w(α) < 0}` in the canonical positive-root order.
    pub fn phi_w(&self, w: &WeylElement) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|root| !is_positive(&w.act(&root.coords)))
            .cloned()
            .collect()
    }

    /// `d_λ(α) = 2<λ+ρ, α>/<α, α>`.
    pub fn d_lambda(&self, alpha: &[i64], twist: &LambdaTwist) -> Result<i64> {
        let root = self.positive_root(alpha)?;
        if twist.rank() != self.rank {
            return Err(Error::TwistLength {
                got: twist.rank(),
                rank: self.rank,
            });
        }
        let lr = twist.lambda_plus_rho();
        Ok(2 * dot(&lr, &root.coords) / dot(&root.coords, &root.coords))
    }
}

fn height_of(v: &[i64]) -> i64 {
    // sum of simple-root coordinates: k_r = v_r, k_i = v_i + k_{i+1}, 2k_1 = v_1 + k_2
    let r = v.len();
    let mut k = vec![0i64; r + 1];
    for i in (1..r).rev() {
        k[i] = v[i] + k[i + 1];
    }
    k[0] = (v[0] + k.get(1).copied().unwrap_or(0)) / 2;
    k[..r].iter().sum()
}

/// Coordinates of `v` in the basis of simple roots, i.e. `k` with
/// `v = Σ k_i α_i`. Fails when `v` is outside the root lattice.
pub fn simple_root_coords(v: &[i64]) -> Result<Vec<i64>> {
    let r = v.len();
    let mut k = vec![0i64; r + 1];
    for i in (1..r).rev() {
        k[i] = v[i] + k[i + 1];
    }
    let twice = v[0] + if r > 1 { k[1] } else { 0 };
    if twice % 2 != 0 {
        return Err(Error::NotInRootLattice(v.to_vec()));
    }
    k[0] = twice / 2;
    k.truncate(r);
    Ok(k)
}

/// Converts simple-root coordinates back to Euclidean coordinates.
pub fn from_simple_root_coords(k: &[i64]) -> Vec<i64> {
    let r = k.len();
    (0..r)
        .map(|i| {
            let next = if i + 1 < r { k[i + 1] } else { 0 };
            if i == 0 {
                2 * k[0] - next
            } else {
                k[i] - next
            }
        })
        .collect()
}

/// The twisting exponents `l_i = ord_p(m_i)` and the partial sums
/// `L_j = l_1 + … + l_j + j`, so that `λ + ρ = (L_1, …, L_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaTwist {
    l: Vec<u32>,
    big_l: Vec<i64>,
}

impl LambdaTwist {
    pub fn new(l: Vec<u32>) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::ZeroRank);
        }
        let mut acc = 0i64;
        let big_l = l
            .iter()
            .enumerate()
            .map(|(j, li)| {
                acc += i64::from(*li);
                acc + j as i64 + 1
            })
            .collect();
        Ok(LambdaTwist { l, big_l })
    }

    pub fn zero(rank: usize) -> Result<Self> {
        Self::new(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.l.len()
    }

    pub fn l(&self) -> &[u32] {
        &self.l
    }

    /// `(L_1, …, L_r)`.
    pub fn big_l(&self) -> &[i64] {
        &self.big_l
    }

    pub fn lambda_plus_rho(&self) -> Vec<i64> {
        self.big_l.clone()
    }

    /// `λ` in Euclidean coordinates, `(l_1, l_1 + l_2, …)`.
    pub fn lambda(&self) -> Vec<i64> {
        self.big_l
            .iter()
            .enumerate()
            .map(|(j, big)| big - j as i64 - 1)
            .collect()
    }

    /// Top row `(L_r, …, L_1)` of the patterns in `GT(λ+ρ)`.
    pub fn top_row(&self) -> Vec<i64> {
        self.big_l.iter().rev().copied().collect()
    }

    /// `λ` written as a partition `(l_1 + … + l_r, …, l_1)`.
    pub fn lambda_partition(&self) -> Vec<i64> {
        self.lambda().into_iter().rev().collect()
    }

    /// Recovers the twist from a strictly decreasing positive top row.
    pub fn from_top_row(top: &[i64]) -> Result<Self> {
        let r = top.len();
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        let big_l: Vec<i64> = top.iter().rev().copied().collect();
        let mut l = Vec::with_capacity(r);
        let mut prev = 0;
        for &big in &big_l {
            let step = big - prev - 1;
            if step < 0 {
                return Err(Error::TopRowNotStrict(top.to_vec()));
            }
            l.push(step as u32);
            prev = big;
        }
        Self::new(l)
    }

    /// Right side of the stability bound for odd `n`:
    /// `l_1 + 1 + Σ_{i≥2} 2(l_i + 1)`.
    pub fn stability_bound(&self) -> u32 {
        self.l
            .iter()
            .enumerate()
            .map(|(i, li)| if i == 0 { li + 1 } else { 2 * (li + 1) })
            .sum()
    }

    /// Least odd `n` satisfying the stability bound.
    pub fn stability_min_n(&self) -> u32 {
        let bound = self.stability_bound();
        if bound % 2 == 1 {
            bound
        } else {
            bound + 1
        }
    }
}

/// Signed permutation `(σ, ε)`; `sigma[l]` is the 0-based image `σ(l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    sigma: Vec<usize>,
    eps: Vec<i8>,
}

impl WeylElement {
    pub fn new(sigma: Vec<usize>, eps: Vec<i8>) -> Result<Self> {
        let r = sigma.len();
        if eps.len() != r {
            return Err(Error::InvalidWeylElement(format!(
                "sigma has length {r}, eps has length {}",
                eps.len()
            )));
        }
        let mut hit = vec![false; r];
        for &s in &sigma {
            if s >= r || hit[s] {
                return Err(Error::InvalidWeylElement(format!(
                    "{sigma:?} is not a permutation"
                )));
            }
            hit[s] = true;
        }
        if eps.iter().any(|e| *e != 1 && *e != -1) {
            return Err(Error::InvalidWeylElement(format!("signs {eps:?}")));
        }
        Ok(WeylElement { sigma, eps })
    }

    pub fn identity(rank: usize) -> Self {
        WeylElement {
            sigma: (0..rank).collect(),
            eps: vec![1; rank],
        }
    }

    /// `w_0 = −1`.
    pub fn long_element(rank: usize) -> Self {
        WeylElement {
            sigma: (0..rank).collect(),
            eps: vec![-1; rank],
        }
    }

    /// Simple reflection `σ_{α_i}` for 1-based `i`.
    pub fn simple_reflection(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        let mut w = Self::identity(rank);
        if i == 1 {
            w.eps[0] = -1;
        } else {
            w.sigma.swap(i - 2, i - 1);
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn sigma_inv(&self) -> Vec<usize> {
        let mut inv = vec![0; self.sigma.len()];
        for (l, &s) in self.sigma.iter().enumerate() {
            inv[s] = l;
        }
        inv
    }

    pub fn act(&self, t: &[i64]) -> Vec<i64> {
        let inv = self.sigma_inv();
        (0..t.len())
            .map(|i| i64::from(self.eps[i]) * t[inv[i]])
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let inv = self.sigma_inv();
        let sigma = other.sigma.iter().map(|&s| self.sigma[s]).collect();
        let eps = (0..self.rank())
            .map(|i| self.eps[i] * other.eps[inv[i]])
            .collect();
        WeylElement { sigma, eps }
    }

    pub fn inverse(&self) -> WeylElement {
        let sigma = self.sigma_inv();
        let eps = (0..self.rank()).map(|j| self.eps[self.sigma[j]]).collect();
        WeylElement { sigma, eps }
    }

    /// Determinant of the action.
    pub fn sign(&self) -> i64 {
        let mut parity = 1i64;
        let mut seen = vec![false; self.rank()];
        for start in 0..self.rank() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.sigma[cur];
                len += 1;
            }
            if len % 2 == 0 {
                parity = -parity;
            }
        }
        parity * self.eps.iter().map(|e| i64::from(*e)).product::<i64>()
    }

    /// `(inv_i(w^{-1}), pr_i(w^{-1}))` for 1-based `i`.
    pub fn inv_pr_counts(&self, i: usize) -> Result<(usize, usize)> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        let inv = self.sigma_inv();
        let target = inv[i - 1];
        let inversions = (0..i - 1).filter(|&j| inv[j] > target).count();
        Ok((inversions, i - 1 - inversions))
    }

    /// All `2^r r!` elements in canonical `(σ, ε)` order.
    pub fn all(rank: usize) -> Vec<WeylElement> {
        let mut out = Vec::new();
        for sigma in permutations(rank) {
            for mask in 0..(1u32 << rank) {
                let eps = (0..rank)
                    .map(|i| if mask >> (rank - 1 - i) & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(WeylElement {
                    sigma: sigma.clone(),
                    eps,
                });
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (l, s) in self.sigma.iter().enumerate() {
            if l > 0 {
                write!(f, " ")?;
            }
            let sign = if self.eps[*s] < 0 { "-" } else { "" };
            write!(f, "{}->{sign}{}", l + 1, s + 1)?;
        }
        write!(f, "]")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Converts a rational vector of small integers for tests and the CLI.
pub fn rational_vec(values: &[(i64, i64)]) -> Vec<BigRational> {
    values
        .iter()
        .map(|(n, d)| BigRational::new(BigInt::from(*n), BigInt::from(*d)))
        .collect()
}
