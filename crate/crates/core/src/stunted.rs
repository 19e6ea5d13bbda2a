//! The operator `P_k` on `H_*(CP^{top}_{bot}; F_p)`.
//!
//! Cohomology is `F_p[x]·u_c` with `P_k(x) = x^{p^k}` and
//! `P_k(u_c) = c·x^{p^k-1}·u_c`, so by the Leibniz rule
//! `P_k(x^i u_c) = (i + c)·x^{i+p^k-1} u_c`. Dually, on the homology basis
//! `b_i` (degree `2i`, dual to `x^{i-c} u_c`),
//! `P_k(b_i) = (i - p^k + 1)·b_{i-p^k+1}`, zero when the target falls below
//! the bottom cell.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, PrimeField};
use crate::nilpotent::NilOperator;

/// A prime `p` and `k >= 1`, with the derived height `n = k(p-1)` and the
/// index shift `p^k - 1` of `P_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PkParams {
    pub p: u64,
    pub k: u32,
    pub n: u64,
    pub shift: i64,
}

impl PkParams {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        PrimeField::new(p)?;
        if k == 0 {
            return Err(Error::NonPositive { name: "k" });
        }
        let pk = p
            .checked_pow(k)
            .filter(|&v| v < (1 << 40))
            .ok_or(Error::Overflow("p^k"))?;
        Ok(Self {
            p,
            k,
            n: k as u64 * (p - 1),
            shift: pk as i64 - 1,
        })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    /// `p^k`.
    pub fn pk(&self) -> i64 {
        self.shift + 1
    }
}

/// Cells `b_bot, ..., b_top` of `CP^{top}_{bot}`; `bot` may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StuntedBasis {
    pub bot: i64,
    pub top: i64,
}

impl StuntedBasis {
    pub fn new(bot: i64, top: i64) -> Result<Self> {
        if top < bot {
            return Err(Error::EmptyRange { bot, top });
        }
        Ok(Self { bot, top })
    }

    pub fn len(&self) -> usize {
        (self.top - self.bot + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.bot..=self.top
    }

    pub fn contains(&self, i: i64) -> bool {
        (self.bot..=self.top).contains(&i)
    }

    /// Position of `b_i` in the ordered basis.
    pub fn position(&self, i: i64) -> usize {
        debug_assert!(self.contains(i));
        (i - self.bot) as usize
    }

    pub fn degree(i: i64) -> i64 {
        2 * i
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.indices().map(Self::degree).collect()
    }
}

/// Coefficient of `b_{i - p^k + 1}` in `P_k(b_i)`, ignoring the range cut-off.
pub fn homology_coefficient(params: PkParams, i: i64) -> u64 {
    (i - params.shift).rem_euclid(params.p as i64) as u64
}

/// The index `P_k` sends `b_i` to, if it stays inside the basis.
pub fn homology_target(params: PkParams, basis: StuntedBasis, i: i64) -> Option<i64> {
    let t = i - params.shift;
    (t >= basis.bot).then_some(t)
}

pub fn pk_homology_matrix(params: PkParams, basis: StuntedBasis) -> FpMatrix {
    let mut m = FpMatrix::zeros(params.field(), basis.len(), basis.len());
    for i in basis.indices() {
        if let Some(t) = homology_target(params, basis, i) {
            m.set(basis.position(t), basis.position(i), homology_coefficient(params, i));
        }
    }
    m
}

/// `P_k` acting on `H_*(CP^{top}_{bot})`, graded by `deg b_i = 2i`.
pub fn pk_homology_operator(params: PkParams, basis: StuntedBasis) -> NilOperator {
    NilOperator::graded(pk_homology_matrix(params, basis), basis.degrees())
        .expect("P_k is degree-lowering and P_k^p = 0")
}

/// Coefficient of `x^{i+p^k-1} u_c` in `P_k(x^i u_c)`, i.e. `(i + c) mod p`.
pub fn pk_cohomology_coefficient(params: PkParams, c: i64, i: u64) -> u64 {
    (i as i64 + c).rem_euclid(params.p as i64) as u64
}

/// `P_k` on `H^*(CP^{top}_{bot})` in the basis `x^{j-bot} u_bot`,
/// `bot <= j <= top`, truncated above `top`.
pub fn pk_cohomology_matrix(params: PkParams, basis: StuntedBasis) -> FpMatrix {
    let mut m = FpMatrix::zeros(params.field(), basis.len(), basis.len());
    for j in basis.indices() {
        let t = j + params.shift;
        if basis.contains(t) {
            let coeff = pk_cohomology_coefficient(params, basis.bot, (j - basis.bot) as u64);
            m.set(basis.position(t), basis.position(j), coeff);
        }
    }
    m
}

/// The homology action is the transpose of the cohomology action.
pub fn duality_check(params: PkParams, basis: StuntedBasis) -> bool {
    pk_homology_matrix(params, basis) == pk_cohomology_matrix(params, basis).transpose()
}
