use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

use super::{poly, Field, PrimeField};

/// Largest field order for which log/antilog tables are built.
const MAX_ORDER: u64 = 1 << 20;

/// Element of an [`ExtField`]: the integer `Σ c_i p^i` encoding the
/// coefficients of `Σ c_i x^i` modulo the field's defining polynomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct ExtElem(pub u32);

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    base: PrimeField,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: ExtElem,
    // exp[i] = g^i for 0 <= i < q - 1; log is indexed by encoding.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// `F_{p^m}` presented as `F_p[x]/(f)` for the smallest monic irreducible `f`
/// of degree `m` (coefficient vectors ordered by their base-`p` encoding).
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct ExtField {
    t: Arc<Tables>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.t.base.p(), self.t.m)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.base == other.t.base && self.t.m == other.t.m)
    }
}

impl Eq for ExtField {}

fn digits(mut code: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = vec![0; m];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply two residues modulo a monic polynomial; used only while the
/// tables are being built.
fn mul_raw(f: &PrimeField, a: &[u64], b: &[u64], modulus: &[u64]) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c != 0 {
            for i in 0..m {
                prod[top - m + i] = f.sub(prod[top - m + i], f.mul(c, modulus[i]));
            }
            prod[top] = 0;
        }
    }
    prod.truncate(m);
    prod
}

impl ExtField {
    /// Builds `F_{p^m}`.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, m })?;
        let md = m as usize;

        let modulus = (0..q)
            .map(|code| {
                let mut c = digits(code, p, md);
                c.push(1);
                c
            })
            .find(|c| poly::is_irreducible(&base, c))
            .ok_or(Error::Inconsistent("no irreducible polynomial found"))?;

        let one = digits(1, p, md);
        let mut found = None;
        for code in 1..q {
            let g = digits(code, p, md);
            let mut powers = Vec::with_capacity((q - 1) as usize);
            let mut cur = one.clone();
            let mut primitive = true;
            for i in 0..q - 1 {
                if i > 0 && cur == one {
                    primitive = false;
                    break;
                }
                powers.push(encode(&cur, p) as u32);
                cur = mul_raw(&base, &cur, &g, &modulus);
            }
            if primitive && cur == one {
                found = Some((code, powers));
                break;
            }
        }
        let (gen_code, exp) = found.ok_or(Error::Inconsistent("no multiplicative generator"))?;
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(Self {
            t: Arc::new(Tables {
                base,
                m,
                q,
                modulus,
                generator: ExtElem(gen_code as u32),
                exp,
                log,
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.t.base.p()
    }

    pub fn degree(&self) -> u32 {
        self.t.m
    }

    /// The defining polynomial, monic, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.t.modulus
    }

    pub fn prime_field(&self) -> PrimeField {
        self.t.base
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> ExtElem {
        self.t.generator
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: ExtElem) -> ExtElem {
        if a.0 == 0 {
            return a;
        }
        let l = self.t.log[a.0 as usize] as u64 * self.p() % (self.t.q - 1);
        ExtElem(self.t.exp[l as usize])
    }

    /// `a ↦ a^{p^i}`.
    pub fn frobenius_pow(&self, a: ExtElem, i: u32) -> ExtElem {
        (0..i % self.t.m).fold(a, |x, _| self.frobenius(x))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> ExtElem {
        let p = self.p();
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
        c.resize(self.t.m as usize, 0);
        ExtElem(encode(&c, p) as u32)
    }

    pub fn coeffs(&self, a: ExtElem) -> Vec<u64> {
        digits(a.0 as u64, self.p(), self.t.m as usize)
    }

    /// All elements in encoding order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> {
        (0..self.t.q as u32).map(ExtElem)
    }

    /// Discrete logarithm to the base [`generator`](Self::generator).
    pub fn log(&self, a: ExtElem) -> Option<u64> {
        (a.0 != 0).then(|| self.t.log[a.0 as usize] as u64)
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn order(&self) -> u64 {
        self.t.q
    }

    fn zero(&self) -> ExtElem {
        ExtElem(0)
    }

    fn one(&self) -> ExtElem {
        ExtElem(1)
    }

    fn from_int(&self, n: i64) -> ExtElem {
        ExtElem(self.t.base.reduce(n) as u32)
    }

    fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.p() as u32;
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        ExtElem(out)
    }

    fn neg(&self, a: ExtElem) -> ExtElem {
        let p = self.p() as u32;
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        ExtElem(out)
    }

    fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if a.0 == 0 || b.0 == 0 {
            return ExtElem(0);
        }
        let t = &self.t;
        let l = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % (t.q - 1);
        ExtElem(t.exp[l as usize])
    }

    fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.t;
        let l = (t.q - 1 - t.log[a.0 as usize] as u64) % (t.q - 1);
        Some(ExtElem(t.exp[l as usize]))
    }

    fn pow(&self, a: ExtElem, e: u64) -> ExtElem {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        let t = &self.t;
        let l = (t.log[a.0 as usize] as u128 * e as u128 % (t.q - 1) as u128) as usize;
        ExtElem(t.exp[l])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_is_prime_field_with_trivial_frobenius() {
        let f = ExtField::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        for a in f.elements() {
            assert_eq!(f.frobenius(a), a);
        }
    }

    #[test]
    fn f4_generator_is_a_root_of_x2_x_1() {
        let f = ExtField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.generator();
        let lhs = f.add(f.add(f.mul(w, w), w), f.one());
        assert!(f.is_zero(lhs));
        assert_eq!(f.pow(w, 3), f.one());
        assert_ne!(w, f.one());
    }

    #[test]
    fn f9_has_fourth_root_of_minus_one() {
        let f = ExtField::new(3, 2).unwrap();
        let minus_one = f.from_int(-1);
        let a = f.generator();
        assert_eq!(f.pow(a, 4), minus_one);
        // Exhaustive: exactly four solutions of a^4 = -1 (elements of order 8).
        let count = f.elements().filter(|&x| f.pow(x, 4) == minus_one).count();
        assert_eq!(count, 4);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(ExtField::new(6, 2).unwrap_err(), Error::NotPrime(6));
        assert_eq!(ExtField::new(3, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn frobenius_is_a_ring_map_of_order_m() {
        for &(p, m) in &[(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)] {
            let f = ExtField::new(p, m).unwrap();
            assert_eq!(f.order(), p.pow(m));
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.frobenius_pow(a, m), a);
                for &b in &els {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
            // Order exactly m: some element is moved by every smaller power.
            let g = f.generator();
            for i in 1..m {
                assert_ne!(f.frobenius_pow(g, i), g);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for &(p, m) in &[(2u64, 3u32), (3, 2), (5, 1)] {
            let f = ExtField::new(p, m).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &els {
                    for &c in &els {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
