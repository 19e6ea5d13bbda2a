use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::{ExtElem, Field};

use super::endo::{EndoElement, EndoRing, TValuation};

/// Largest residue field the exhaustive digit search will accept.
pub const MAX_SEARCH_FIELD: u64 = 4096;

fn height_for(p: u64, k: u32) -> Result<u32> {
    if k == 0 {
        return Err(Error::NonPositive { name: "k" });
    }
    let n = (k as u64)
        .checked_mul(p.saturating_sub(1))
        .filter(|&n| n <= u32::MAX as u64)
        .ok_or(Error::Overflow("height k(p-1)"))?;
    Ok(n as u32)
}

/// Index of the first nonzero digit at or below `upto`, else `upto + 1`.
fn low_index(digits: &[ExtElem], upto: usize) -> usize {
    digits[..=upto]
        .iter()
        .position(|d| d.0 != 0)
        .unwrap_or(upto + 1)
}

struct Search<'a> {
    ring: &'a EndoRing,
    p: u64,
    n: usize,
    target: usize,
    horizon: usize,
    elems: Vec<ExtElem>,
    digits: Vec<ExtElem>,
}

impl Search<'_> {
    /// `(1 + c)^p - 1` for the current digit prefix.
    fn defect(&self) -> Result<EndoElement> {
        let zeta = self.ring.from_digits(self.digits.clone());
        let one = self.ring.one();
        self.ring.sub(&self.ring.pow(&zeta, self.p)?, &one)
    }

    fn admissible(&self, j: usize) -> Result<bool> {
        let low = low_index(&self.digits[1..], j - 1) + 1;
        let low = low.min(j + 1);
        let bound = (self.n + j + 1)
            .min(j + 1 + (self.p as usize - 1) * low)
            .min(self.horizon);
        let d = self.defect()?;
        Ok(d.digits()[..bound].iter().all(|x| x.0 == 0))
    }

    fn run(&mut self, j: usize) -> Result<bool> {
        if j == self.target {
            let d = self.defect()?;
            let exact = d.digits().iter().all(|x| x.0 == 0);
            let nontrivial = self.digits[1..self.target].iter().any(|x| x.0 != 0);
            return Ok(exact && nontrivial);
        }
        for idx in 0..self.elems.len() {
            self.digits[j] = self.elems[idx];
            if self.admissible(j)? && self.run(j + 1)? {
                return Ok(true);
            }
        }
        self.digits[j] = ExtElem(0);
        Ok(false)
    }
}

/// Searches for `ζ ≠ 1` with `ζ^p = 1` in the height `k(p-1)` endomorphism
/// ring, to `T`-precision `precision`.
///
/// Digits are fixed one at a time in the order of the residue field's
/// encoding, with every digit from index 1 onwards left free. The work is
/// done `n` digits deeper than requested so that truncation commutes with
/// taking the `p`-th power.
pub fn find_order_p_unit(p: u64, k: u32, precision: usize) -> Result<EndoElement> {
    let n = height_for(p, k)?;
    if precision <= k as usize {
        return Err(Error::PrecisionTooSmall {
            precision,
            required: k as usize + 1,
        });
    }
    if p.checked_pow(n).is_none_or(|q| q > MAX_SEARCH_FIELD) {
        return Err(Error::FieldTooLarge { p, m: n });
    }
    let horizon = precision + n as usize;
    let work = EndoRing::new(p, n, horizon)?;
    let elems: Vec<ExtElem> = work.residue_field().elements().collect();

    // Residue of ζ: only 1 is a p-th root of unity in characteristic p.
    let f = work.residue_field();
    let a0 = elems
        .iter()
        .copied()
        .find(|&a| f.pow(a, p) == f.one())
        .ok_or(Error::NoOrderPUnit { stage: 0 })?;

    let mut search = Search {
        ring: &work,
        p,
        n: n as usize,
        target: precision,
        horizon,
        elems,
        digits: vec![ExtElem(0); horizon],
    };
    search.digits[0] = a0;
    if !search.run(1)? {
        return Err(Error::NoOrderPUnit { stage: precision });
    }
    let out = EndoRing::new(p, n, precision)?;
    Ok(out.from_digits(search.digits[..precision].to_vec()))
}

/// Digits `a_1, a_2, …` of `ζ - 1`.
pub fn tbar_coefficients(ring: &EndoRing, zeta: &EndoElement) -> Result<Vec<ExtElem>> {
    if zeta.params() != ring.params() {
        return Err(Error::MismatchedRings);
    }
    if zeta.digits().first().is_none_or(|d| d.0 == 0) {
        return Err(Error::NotAUnit);
    }
    let c = ring.sub(zeta, &ring.one())?;
    Ok(c.digits()[1..].to_vec())
}

/// Outcome of checking that an order-`p` unit has `ζ - 1` of valuation `k/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TkReport {
    pub p: u64,
    pub k: u32,
    pub height: u32,
    pub precision: usize,
    /// Coefficients of the residue-field modulus, constant term first.
    pub residue_modulus: Vec<u64>,
    pub zeta_digits: Vec<ExtElem>,
    /// `tbar[i - 1]` is the digit `a_i` of `ζ - 1`.
    pub tbar: Vec<ExtElem>,
    pub valuation: TValuation,
    pub zeta_pow_is_one: bool,
    pub zeta_not_one: bool,
    pub lower_vanish: bool,
    pub leading_unit: bool,
    pub valuation_matches: bool,
}

impl TkReport {
    pub fn passed(&self) -> bool {
        self.zeta_pow_is_one
            && self.zeta_not_one
            && self.lower_vanish
            && self.leading_unit
            && self.valuation_matches
    }
}

pub fn verify_tk_lemma(p: u64, k: u32, precision: usize) -> Result<TkReport> {
    let zeta = find_order_p_unit(p, k, precision)?;
    let n = height_for(p, k)?;
    let ring = EndoRing::new(p, n, precision)?;
    let tbar = tbar_coefficients(&ring, &zeta)?;
    let one = ring.one();
    let c = ring.sub(&zeta, &one)?;
    let valuation = ring.t_valuation(&c);
    let zp = ring.pow(&zeta, p)?;
    let k = k as usize;
    Ok(TkReport {
        p,
        k: k as u32,
        height: n,
        precision,
        residue_modulus: ring.residue_field().modulus().to_vec(),
        zeta_digits: zeta.digits().to_vec(),
        valuation,
        zeta_pow_is_one: zp == one,
        zeta_not_one: zeta != one,
        lower_vanish: tbar[..k - 1].iter().all(|d| d.0 == 0),
        leading_unit: tbar[k - 1].0 != 0,
        valuation_matches: match valuation {
            TValuation::Finite { numerator, .. } => numerator * (p as usize - 1) == n as usize,
            TValuation::Infinite => false,
        },
        tbar,
    })
}
