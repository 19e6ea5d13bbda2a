//! Exact arithmetic over `F_p` and `F_{p^m}` plus dense linear algebra.

mod ext;
mod matrix;
mod poly;
mod prime;

use core::fmt::Debug;

pub use ext::{ExtElem, ExtField};
pub use matrix::FpMatrix;
pub use prime::{is_prime, PrimeField};

/// A finite field whose elements are small `Copy` handles.
///
/// Element values are only meaningful relative to the field that produced
/// them; mixing elements of different fields is a logic error.
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Copy + Eq + Ord + Debug;

    fn characteristic(&self) -> u64;
    /// Number of elements.
    fn order(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under `Z -> F`.
    fn from_int(&self, n: i64) -> Self::Elem;

    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}
