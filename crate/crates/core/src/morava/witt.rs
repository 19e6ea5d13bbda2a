use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::{ExtElem, ExtField, Field};

/// Residue fields above this size are refused (one lift is cached per element).
const MAX_TABLE: u64 = 1 << 16;

/// Element of `W(F_{p^m})/p^N`: coefficients of `1, ξ, …, ξ^{m-1}` in
/// `(Z/p^N)[ξ]/(f)`, with `f` the integer lift of the residue field modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittElem(pub Vec<u64>);

#[derive(Debug)]
struct Inner {
    residue: ExtField,
    p: u64,
    m: usize,
    precision: u32,
    modulus: u64,
    poly: Vec<u64>,
    teich: Vec<WittElem>,
}

/// `W(F_{p^m})` modulo `p^N`, i.e. the unramified extension of `Z_p` of
/// degree `m` to `N` `p`-adic digits.
#[derive(Debug, Clone)]
pub struct WittRing {
    inner: Arc<Inner>,
}

impl PartialEq for WittRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.residue == other.inner.residue && self.inner.precision == other.inner.precision)
    }
}

impl WittRing {
    pub fn new(residue: ExtField, precision: u32) -> Result<Self> {
        let p = residue.p();
        let m = residue.degree() as usize;
        if precision == 0 {
            return Err(Error::NonPositive { name: "precision" });
        }
        if residue.order() > MAX_TABLE {
            return Err(Error::FieldTooLarge { p, m: m as u32 });
        }
        let modulus = p
            .checked_pow(precision)
            .filter(|&v| v < 1 << 62)
            .ok_or(Error::Overflow("p^N"))?;
        let mut ring = Self {
            inner: Arc::new(Inner {
                p,
                m,
                precision,
                modulus,
                poly: residue.modulus().to_vec(),
                residue,
                teich: Vec::new(),
            }),
        };
        let teich = ring.inner.residue.elements().map(|a| ring.compute_teichmuller(a)).collect();
        Arc::get_mut(&mut ring.inner).expect("unshared").teich = teich;
        Ok(ring)
    }

    pub fn residue_field(&self) -> &ExtField {
        &self.inner.residue
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn precision(&self) -> u32 {
        self.inner.precision
    }

    pub fn zero(&self) -> WittElem {
        WittElem(vec![0; self.inner.m])
    }

    pub fn from_int(&self, n: i64) -> WittElem {
        let mut w = self.zero();
        w.0[0] = n.rem_euclid(self.inner.modulus as i64) as u64;
        w
    }

    pub fn one(&self) -> WittElem {
        self.from_int(1)
    }

    pub fn is_zero(&self, a: &WittElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &WittElem, b: &WittElem) -> WittElem {
        let q = self.inner.modulus;
        WittElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % q).collect())
    }

    pub fn neg(&self, a: &WittElem) -> WittElem {
        let q = self.inner.modulus;
        WittElem(a.0.iter().map(|&x| (q - x) % q).collect())
    }

    pub fn sub(&self, a: &WittElem, b: &WittElem) -> WittElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul_int(&self, a: &WittElem, n: u64) -> WittElem {
        let q = self.inner.modulus as u128;
        WittElem(a.0.iter().map(|&x| (x as u128 * n as u128 % q) as u64).collect())
    }

    pub fn mul(&self, a: &WittElem, b: &WittElem) -> WittElem {
        let Inner { m, modulus, poly, .. } = &*self.inner;
        let (m, q) = (*m, *modulus as u128);
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % q;
            }
        }
        // ξ^m = -Σ_{i<m} f_i ξ^i
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + q - c * poly[i] as u128 % q) % q;
            }
        }
        WittElem(prod[..m].iter().map(|&x| x as u64).collect())
    }

    pub fn pow(&self, a: &WittElem, mut e: u64) -> WittElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Reduction mod `p`.
    pub fn residue(&self, a: &WittElem) -> ExtElem {
        let p = self.inner.p;
        let c: Vec<u64> = a.0.iter().map(|&x| x % p).collect();
        self.inner.residue.from_coeffs(&c)
    }

    /// Some lift of a residue class: its coefficients read as integers.
    pub fn naive_lift(&self, a: ExtElem) -> WittElem {
        WittElem(self.inner.residue.coeffs(a))
    }

    fn compute_teichmuller(&self, a: ExtElem) -> WittElem {
        // x ↦ x^{p^m} contracts lifts of `a` onto its Teichmüller lift, one
        // p-adic digit per step.
        let q = self.inner.residue.order();
        let mut x = self.naive_lift(a);
        for _ in 0..self.inner.precision {
            x = self.pow(&x, q);
        }
        x
    }

    /// The multiplicative lift `τ(a)`.
    pub fn teichmuller(&self, a: ExtElem) -> &WittElem {
        &self.inner.teich[a.0 as usize]
    }

    /// Divides by `p`; the caller guarantees divisibility.
    fn div_p(&self, a: &WittElem) -> WittElem {
        let p = self.inner.p;
        debug_assert!(a.0.iter().all(|&x| x % p == 0));
        WittElem(a.0.iter().map(|&x| x / p).collect())
    }

    /// Teichmüller digits: `a = Σ_{j<N} τ(d_j) p^j`.
    pub fn digits(&self, a: &WittElem) -> Vec<ExtElem> {
        let mut rest = a.clone();
        let mut out = Vec::with_capacity(self.inner.precision as usize);
        for _ in 0..self.inner.precision {
            let d = self.residue(&rest);
            out.push(d);
            rest = self.div_p(&self.sub(&rest, self.teichmuller(d)));
        }
        out
    }

    /// `Σ_j τ(d_j) p^j`; digits past the precision are ignored.
    pub fn from_digits(&self, digits: &[ExtElem]) -> WittElem {
        let mut acc = self.zero();
        let mut scale = 1u64;
        for &d in digits.iter().take(self.inner.precision as usize) {
            if d.0 != 0 {
                acc = self.add(&acc, &self.mul_int(self.teichmuller(d), scale));
            }
            scale = scale.wrapping_mul(self.inner.p);
        }
        acc
    }

    /// Frobenius `φ^i`, acting on Teichmüller digits by `τ(a) ↦ τ(a^{p^i})`.
    pub fn frobenius_pow(&self, a: &WittElem, i: u32) -> WittElem {
        let i = i % self.inner.m as u32;
        if i == 0 {
            return a.clone();
        }
        let f = &self.inner.residue;
        let digits: Vec<ExtElem> = self.digits(a).into_iter().map(|d| f.frobenius_pow(d, i)).collect();
        self.from_digits(&digits)
    }

    pub fn frobenius(&self, a: &WittElem) -> WittElem {
        self.frobenius_pow(a, 1)
    }

    /// Evaluates the lifted modulus `f` at `a`.
    pub fn eval_modulus(&self, a: &WittElem) -> WittElem {
        self.inner
            .poly
            .iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, a), &self.from_int(c as i64)))
    }
}
