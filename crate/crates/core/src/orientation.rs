//! `p`-adic orientation orders of the tautological line bundle.
//!
//! All orders are powers of `p` and are stored as exponents.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::splitting::beta_constants;
use crate::stunted::PkParams;

/// Largest `e` with `p^e | n`.
pub fn nu_p(n: u64, p: u64) -> Result<u32> {
    PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::Zero);
    }
    let (mut n, mut e) = (n, 0);
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Ok(e)
}

/// `ν_p` of the sphere orientation order of `γ` over `CP^n`:
/// `max{r + ν_p(r) : 1 <= r <= ⌊n/(p-1)⌋}` when `p <= n + 1`, else `0`.
pub fn theta_sphere_valuation(p: u64, n: u64) -> Result<u64> {
    PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::NonPositive { name: "n" });
    }
    if p > n + 1 {
        return Ok(0);
    }
    let bound = n / (p - 1);
    (1..=bound)
        .map(|r| nu_p(r, p).map(|v| r + v as u64))
        .try_fold(0, |acc, v| v.map(|v| acc.max(v)))
}

/// Provenance of an exactly known orientation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum KnownSource {
    /// Height `p - 1`: the order is exactly `p`.
    HeightPMinusOne,
    /// `p = 2`: real Johnson–Wilson theory maps to EO, so the order divides `2^n`.
    RealJohnsonWilson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KnownValue {
    pub valuation: u64,
    pub source: KnownSource,
    /// `true` for an exact order, `false` for an upper bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrientationReport {
    pub p: u64,
    pub k: u32,
    /// Height `k(p-1)`.
    pub height: u64,
    /// Skeleton dimension `β̂_k - 1` the computation reduces to.
    pub skeleton: u64,
    pub sphere_valuation: u64,
    /// The bound `p^{p^k - 1}`, as an exponent.
    pub bound_valuation: u64,
    pub known: Vec<KnownValue>,
    pub conjecture_valuation: u64,
}

impl OrientationReport {
    /// `conjecture ≤ known ≤ bound` as valuations, for every known value.
    pub fn divisibility_holds(&self) -> bool {
        self.conjecture_valuation <= self.bound_valuation
            && self.known.iter().all(|kv| {
                self.conjecture_valuation <= kv.valuation && kv.valuation <= self.bound_valuation
            })
    }

    /// The bound exceeds the conjecture.
    pub fn gap(&self) -> u64 {
        self.bound_valuation - self.conjecture_valuation
    }
}

/// EO orientation order bound: evaluate the sphere valuation on the
/// `β̂_k - 1` skeleton and check it equals `p^k - 1`.
pub fn eo_bound(p: u64, k: u32) -> Result<OrientationReport> {
    known_orders_report(p, k, None)
}

/// [`eo_bound`] together with known exact values and the conjectured order `p^k`.
///
/// `skeleton_override` evaluates the sphere valuation at a different
/// skeleton dimension; the identity with `p^k - 1` is only enforced at the
/// default `β̂_k - 1`.
pub fn known_orders_report(p: u64, k: u32, skeleton_override: Option<u64>) -> Result<OrientationReport> {
    let params = PkParams::new(p, k)?;
    let default_skeleton = (beta_constants(params).beta_hat - 1) as u64;
    let skeleton = skeleton_override.unwrap_or(default_skeleton);
    let sphere_valuation = theta_sphere_valuation(p, skeleton)?;
    let bound_valuation = params.shift as u64;
    if skeleton == default_skeleton && sphere_valuation != bound_valuation {
        return Err(Error::Inconsistent("sphere valuation on the β̂-1 skeleton differs from p^k - 1"));
    }

    let mut known = Vec::new();
    if k == 1 {
        known.push(KnownValue {
            valuation: 1,
            source: KnownSource::HeightPMinusOne,
            exact: true,
        });
    }
    if p == 2 {
        known.push(KnownValue {
            valuation: params.n,
            source: KnownSource::RealJohnsonWilson,
            exact: false,
        });
    }
    Ok(OrientationReport {
        p,
        k,
        height: params.n,
        skeleton,
        sphere_valuation,
        bound_valuation,
        known,
        conjecture_valuation: k as u64,
    })
}
