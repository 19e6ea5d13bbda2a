//! Exact algebra behind EO-orientation computations.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organised bottom-up:
//!
//! * [`fp`]: prime and extension fields, dense matrices, ranks.
//! * [`nilpotent`]: modules over `F_p[χ]/(χ^p)`, Jordan types, the group-ring
//!   coproduct of `C_p`.
//! * [`stunted`]: the operator `P_k` on the mod `p` homology of stunted
//!   complex projective spaces.
//! * [`splitting`]: free/finite decompositions built from `P_k`.
//! * [`orientation`]: `p`-adic orientation orders of the tautological bundle.
//! * [`morava`]: truncated arithmetic in the endomorphism ring of the Honda
//!   formal group and the search for elements of order `p`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod fp;
pub mod morava;
pub mod nilpotent;
pub mod orientation;
pub mod splitting;
pub mod stunted;

pub use error::{Error, Result};
