//! Borel-Weil-Bott on `Gr(2,N)` for bundles `Σ^{a,b}U∨`.
//!
//! `λ = (a, b, 0, …, 0)`, `ρ = (N-1, …, 0)`. If `λ+ρ` has a repeated entry
//! all cohomology vanishes; otherwise it sits in degree `ℓ` = number of
//! inversions of `λ+ρ`, with the `GL(N)` representation of highest weight
//! `sort(λ+ρ) − ρ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{hom_object, GrSum, Weight};

/// Finite graded dimension vector; zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, u128>);

impl GradedDims {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(deg: i64, dim: u128) -> Self {
        let mut g = Self::zero();
        g.add(deg, dim);
        g
    }

    pub fn add(&mut self, deg: i64, dim: u128) {
        if dim == 0 {
            return;
        }
        *self.0.entry(deg).or_insert(0) += dim;
    }

    pub fn get(&self, deg: i64) -> u128 {
        self.0.get(&deg).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u128)> + '_ {
        self.0.iter().map(|(&d, &v)| (d, v))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn total(&self) -> u128 {
        self.0.values().sum()
    }

    /// Moves every class from degree `d` to degree `d + by`.
    pub fn shift_degrees(&self, by: i64) -> Self {
        Self(self.0.iter().map(|(&d, &v)| (d + by, v)).collect())
    }

    pub fn plus(mut self, other: &GradedDims) -> Self {
        for (d, v) in other.iter() {
            self.add(d, v);
        }
        self
    }

    pub fn scaled(&self, m: u64) -> Self {
        Self(self.0.iter().map(|(&d, &v)| (d, v * m as u128)).filter(|&(_, v)| v != 0).collect())
    }

    pub fn euler(&self) -> i128 {
        self.iter()
            .map(|(d, v)| if d.rem_euclid(2) == 0 { v as i128 } else { -(v as i128) })
            .sum()
    }

    /// `Some((deg, 1))` when the whole space is `C[-deg]`.
    pub fn as_simple(&self) -> Option<i64> {
        match self.0.iter().next() {
            Some((&d, &1)) if self.0.len() == 1 => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(d, v)| format!("{d}↦{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Dimension of the irreducible `GL(N)` module of highest weight `nu`.
pub fn weyl_dim(nu: &[i64]) -> Result<u128> {
    if nu.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotDominant(nu.to_vec()));
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..nu.len() {
        for j in i + 1..nu.len() {
            let gap = (j - i) as i64;
            let top = nu[i] - nu[j] + gap;
            num *= BigUint::from(top as u64);
            den *= BigUint::from(gap as u64);
        }
    }
    let q = num / den;
    u128::try_from(q).map_err(|_| Error::Overflow("Weyl dimension"))
}

fn check_rank(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::BadRank(n));
    }
    Ok(())
}

/// Cohomology without the memo cache.
pub fn cohomology_uncached(w: Weight, n: usize) -> Result<GradedDims> {
    check_rank(n)?;
    let mut mu: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    mu[0] += w.a();
    mu[1] += w.b();

    let mut sorted = mu.clone();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Ok(GradedDims::zero());
    }
    let mut inversions = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            if mu[i] < mu[j] {
                inversions += 1;
            }
        }
    }
    let nu: Vec<i64> = sorted.iter().enumerate().map(|(i, &m)| m - (n - 1 - i) as i64).collect();
    Ok(GradedDims::single(inversions, weyl_dim(&nu)?))
}

fn cache() -> &'static DashMap<(usize, i64, i64), GradedDims> {
    static CACHE: OnceLock<DashMap<(usize, i64, i64), GradedDims>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// `H•(Gr(2,N), Σ^{a,b}U∨)`, memoized on `(N, a, b)`.
pub fn cohomology(w: Weight, n: usize) -> Result<GradedDims> {
    let key = (n, w.a(), w.b());
    if let Some(hit) = cache().get(&key) {
        return Ok(hit.clone());
    }
    let value = cohomology_uncached(w, n)?;
    cache().insert(key, value.clone());
    Ok(value)
}

/// Total cohomology of a formal sum; a term `Σ[s]` contributes `H^j` to degree `j - s`.
pub fn sum_cohomology(s: &GrSum, n: usize) -> Result<GradedDims> {
    let mut out = GradedDims::zero();
    for (w, shift, m) in s.iter() {
        let h = cohomology(w, n)?;
        out = out.plus(&h.shift_degrees(-shift).scaled(m));
    }
    Ok(out)
}

/// `Ext•_{Gr}(A, B)`.
pub fn gr_ext(a: &GrSum, b: &GrSum, n: usize) -> Result<GradedDims> {
    check_rank(n)?;
    sum_cohomology(&hom_object(a, b), n)
}

pub fn gr_euler(a: &GrSum, b: &GrSum, n: usize) -> Result<i128> {
    Ok(gr_ext(a, b, n)?.euler())
}
