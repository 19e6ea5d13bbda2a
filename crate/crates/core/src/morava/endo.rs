use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fp::{ExtElem, ExtField, Field};

use super::witt::{WittElem, WittRing};

/// Parameters of a truncated endomorphism ring: residue characteristic `p`,
/// height `n` (also the residue degree) and `T`-adic precision `M`.
/// The unit in `T^n = p·u` is fixed to `u = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EndoParams {
    pub p: u64,
    pub height: u32,
    pub precision: usize,
}

/// `Σ_{i<M} τ(a_i) T^i` with `a_i ∈ F_{p^n}`, truncated mod `T^M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EndoElement {
    params: EndoParams,
    digits: Vec<ExtElem>,
}

impl EndoElement {
    pub fn params(&self) -> EndoParams {
        self.params
    }

    pub fn digits(&self) -> &[ExtElem] {
        &self.digits
    }
}

/// `T`-adic valuation `j/n`, `j` the index of the first nonzero digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TValuation {
    Finite { numerator: usize, denominator: u32 },
    /// Zero to the working precision.
    Infinite,
}

impl TValuation {
    /// Reduced fraction, `None` for `+∞`.
    pub fn reduced(&self) -> Option<(usize, usize)> {
        match *self {
            TValuation::Finite { numerator, denominator } => {
                let d = denominator as usize;
                let g = gcd(numerator, d);
                Some((numerator / g, d / g))
            }
            TValuation::Infinite => None,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for TValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reduced() {
            Some((n, 1)) => write!(f, "{n}"),
            Some((n, d)) => write!(f, "{n}/{d}"),
            None => write!(f, "inf"),
        }
    }
}

/// Arithmetic in `W(F_{p^n})⟨T⟩/(Ta - φ(a)T, T^n - p)` modulo `T^M`.
///
/// Internally an element is `Σ_{i<n} w_i T^i` with `w_i ∈ W(F_{p^n})/p^N`,
/// `N = ⌈M/n⌉ + 1`; the digit `a_{i+jn}` is the `j`-th Teichmüller digit
/// of `w_i` because `p^j T^i = T^{i+jn}`.
#[derive(Debug, Clone)]
pub struct EndoRing {
    params: EndoParams,
    witt: WittRing,
}

impl EndoRing {
    pub fn new(p: u64, height: u32, precision: usize) -> Result<Self> {
        if height == 0 {
            return Err(Error::NonPositive { name: "height" });
        }
        if precision == 0 {
            return Err(Error::NonPositive { name: "precision" });
        }
        let residue = ExtField::new(p, height)?;
        let n = height as usize;
        let witt = WittRing::new(residue, (precision.div_ceil(n) + 1) as u32)?;
        Ok(Self {
            params: EndoParams { p, height, precision },
            witt,
        })
    }

    pub fn params(&self) -> EndoParams {
        self.params
    }

    pub fn residue_field(&self) -> &ExtField {
        self.witt.residue_field()
    }

    pub fn witt(&self) -> &WittRing {
        &self.witt
    }

    fn check(&self, x: &EndoElement) -> Result<()> {
        if x.params == self.params {
            Ok(())
        } else {
            Err(Error::MismatchedRings)
        }
    }

    /// Element with the given digits, zero-padded or truncated to precision.
    pub fn from_digits(&self, mut digits: Vec<ExtElem>) -> EndoElement {
        digits.resize(self.params.precision, ExtElem(0));
        EndoElement { params: self.params, digits }
    }

    pub fn zero(&self) -> EndoElement {
        self.from_digits(Vec::new())
    }

    pub fn one(&self) -> EndoElement {
        self.teichmuller(self.residue_field().one())
    }

    /// `τ(a)`.
    pub fn teichmuller(&self, a: ExtElem) -> EndoElement {
        self.monomial(a, 0)
    }

    /// `τ(a) T^i`.
    pub fn monomial(&self, a: ExtElem, i: usize) -> EndoElement {
        let mut d = vec![ExtElem(0); i + 1];
        d[i] = a;
        self.from_digits(d)
    }

    /// The uniformizer `T`.
    pub fn t(&self) -> EndoElement {
        self.monomial(self.residue_field().one(), 1)
    }

    pub fn from_int(&self, n: i64) -> EndoElement {
        let mut rep = vec![self.witt.zero(); self.params.height as usize];
        rep[0] = self.witt.from_int(n);
        self.assemble(&rep)
    }

    fn witt_rep(&self, x: &EndoElement) -> Vec<WittElem> {
        let n = self.params.height as usize;
        (0..n)
            .map(|i| {
                let col: Vec<ExtElem> = x.digits.iter().skip(i).step_by(n).copied().collect();
                self.witt.from_digits(&col)
            })
            .collect()
    }

    fn assemble(&self, rep: &[WittElem]) -> EndoElement {
        let n = self.params.height as usize;
        let mut digits = vec![ExtElem(0); self.params.precision];
        for (i, w) in rep.iter().enumerate() {
            for (j, d) in self.witt.digits(w).into_iter().enumerate() {
                if let Some(slot) = digits.get_mut(i + j * n) {
                    *slot = d;
                }
            }
        }
        EndoElement { params: self.params, digits }
    }

    pub fn add(&self, x: &EndoElement, y: &EndoElement) -> Result<EndoElement> {
        self.check(x)?;
        self.check(y)?;
        let (a, b) = (self.witt_rep(x), self.witt_rep(y));
        let sum: Vec<WittElem> = a.iter().zip(&b).map(|(u, v)| self.witt.add(u, v)).collect();
        Ok(self.assemble(&sum))
    }

    pub fn neg(&self, x: &EndoElement) -> Result<EndoElement> {
        self.check(x)?;
        let rep: Vec<WittElem> = self.witt_rep(x).iter().map(|w| self.witt.neg(w)).collect();
        Ok(self.assemble(&rep))
    }

    pub fn sub(&self, x: &EndoElement, y: &EndoElement) -> Result<EndoElement> {
        self.add(x, &self.neg(y)?)
    }

    /// Product using `T^i a = φ^i(a) T^i` and `T^n = p`.
    pub fn mul(&self, x: &EndoElement, y: &EndoElement) -> Result<EndoElement> {
        self.check(x)?;
        self.check(y)?;
        let n = self.params.height as usize;
        let (a, b) = (self.witt_rep(x), self.witt_rep(y));
        let mut out = vec![self.witt.zero(); n];
        for (i, u) in a.iter().enumerate() {
            if self.witt.is_zero(u) {
                continue;
            }
            for (j, v) in b.iter().enumerate() {
                if self.witt.is_zero(v) {
                    continue;
                }
                let mut term = self.witt.mul(u, &self.witt.frobenius_pow(v, i as u32));
                let mut slot = i + j;
                if slot >= n {
                    term = self.witt.mul_int(&term, self.params.p);
                    slot -= n;
                }
                out[slot] = self.witt.add(&out[slot], &term);
            }
        }
        Ok(self.assemble(&out))
    }

    pub fn pow(&self, x: &EndoElement, e: u64) -> Result<EndoElement> {
        self.check(x)?;
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Digit-wise Frobenius `Σ τ(a_i) T^i ↦ Σ τ(a_i^p) T^i`, i.e. conjugation by `T`.
    pub fn frobenius(&self, x: &EndoElement) -> Result<EndoElement> {
        self.check(x)?;
        let f = self.residue_field();
        Ok(EndoElement {
            params: self.params,
            digits: x.digits.iter().map(|&d| f.frobenius(d)).collect(),
        })
    }

    pub fn t_valuation(&self, x: &EndoElement) -> TValuation {
        match x.digits.iter().position(|d| d.0 != 0) {
            Some(numerator) => TValuation::Finite {
                numerator,
                denominator: self.params.height,
            },
            None => TValuation::Infinite,
        }
    }

    /// Re-expresses `x` in a ring of the same `p` and height but lower precision.
    pub fn truncate(&self, x: &EndoElement, target: &EndoRing) -> Result<EndoElement> {
        self.check(x)?;
        if target.params.p != self.params.p
            || target.params.height != self.params.height
            || target.params.precision > self.params.precision
        {
            return Err(Error::MismatchedRings);
        }
        Ok(target.from_digits(x.digits.clone()))
    }
}
