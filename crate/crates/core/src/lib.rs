//! Exact Schubert calculus for the flag varieties of `GL_n`.
//!
//! The crate computes, over the integers and with no floating point:
//!
//! - the symmetric group as Weyl group: lengths, Bruhat order, reduced
//!   words, parabolic cosets ([`weyl`]);
//! - Schubert and Grothendieck polynomials and their basis expansions
//!   ([`polyring`]);
//! - the cohomology ring of the complete flag variety in the Schubert
//!   basis: cup products, Poincare pairing, the Chevalley formula, divisor
//!   and Picard-group utilities ([`cohomology`]);
//! - the Grothendieck ring in the structure-sheaf and boundary-ideal bases:
//!   Euler characteristic, duality pairing and involution, line-bundle
//!   multiplication, K-Chevalley ([`ktheory`]);
//! - Grassmannian specializations: index dictionaries, posets, Pieri and
//!   K-Pieri formulas, Littlewood-Richardson coefficients through the full
//!   flag variety, and the Hilbert-polynomial model of `K(P^n)`
//!   ([`grassmann`]);
//! - independent brute-force oracles cross-checking all of the above,
//!   including the cone counterexample to alternating signs ([`oracle`]).

pub mod cohomology;
pub mod error;
pub mod grassmann;
pub mod ktheory;
pub mod oracle;
pub mod polyring;
pub mod weyl;

pub use error::{Error, Result};
