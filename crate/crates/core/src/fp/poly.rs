//! Dense polynomials over `F_p`, coefficients stored low degree first.
//! Only what irreducibility testing needs.

use alloc::vec;
use alloc::vec::Vec;

use super::{Field, PrimeField};

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(f: &PrimeField, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    while a.len() > dm {
        let top = a.len() - 1;
        let q = f.mul(a[top], lead_inv);
        if q != 0 {
            let shift = top - dm;
            for (i, &c) in m.iter().enumerate() {
                a[shift + i] = f.sub(a[shift + i], f.mul(q, c));
            }
        }
        a.pop();
    }
    trim(a)
}

fn mul_mod(f: &PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    rem(f, out, m)
}

fn pow_mod(f: &PrimeField, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut base = a.to_vec();
    let mut acc = vec![1];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &base, m);
        }
        base = mul_mod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

fn gcd(f: &PrimeField, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(f, a, &b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: a monic `m` of degree `d` is irreducible iff
/// `gcd(m, x^{p^i} - x) = 1` for every `1 <= i <= d/2`.
pub(crate) fn is_irreducible(f: &PrimeField, m: &[u64]) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let p = f.p();
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 0..d / 2 {
        xp = pow_mod(f, &xp, p, m);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = f.sub(diff[1], 1);
        let g = gcd(f, m.to_vec(), diff);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles_over_f2() {
        let f = PrimeField::new(2).unwrap();
        assert!(is_irreducible(&f, &[1, 1, 1]));
        assert!(!is_irreducible(&f, &[1, 0, 1]));
        assert!(is_irreducible(&f, &[1, 1, 0, 1]));
        assert!(!is_irreducible(&f, &[1, 1, 1, 1]));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible.
        assert!(!is_irreducible(&f, &[1, 0, 1, 0, 1]));
    }
}
