//! Truncated arithmetic in `End(Γ) = W(F_{p^n})⟨T⟩/(Ta - φ(a)T, T^n - p)`,
//! the endomorphism ring of the height `n` Honda formal group.

mod endo;
mod order_p;
mod witt;

pub use endo::{EndoElement, EndoParams, EndoRing, TValuation};
pub use order_p::{find_order_p_unit, tbar_coefficients, verify_tk_lemma, TkReport, MAX_SEARCH_FIELD};
pub use witt::{WittElem, WittRing};
