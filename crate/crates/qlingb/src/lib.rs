//! Gröbner bases for left submodules of the ℓ-fold free module over the ring
//! of q-linearized polynomials under addition and composition.
//!
//! The crate is organized bottom-up:
//! - [`ff`]: exact arithmetic in the tower GF(p) ⊂ GF(q) ⊂ GF(q^m) with the
//!   q-power Frobenius,
//! - [`linpoly`]: the non-commutative ring of q-linearized polynomials,
//! - [`modvec`]: length-ℓ vectors of linearized polynomials, weighted
//!   term-over-position monomial orders, and leading data,
//! - [`groebner`]: reduction with quotient certificates, minimal Gröbner
//!   basis computation, membership testing, and leading-monomial prediction,
//! - [`oracle`]: an independent brute-force verifier that enumerates small
//!   modules exhaustively,
//! - [`cli`]: the plain-text problem-file format and command front end.

pub mod cli;
pub mod error;
pub mod ff;
pub mod groebner;
pub mod linpoly;
pub mod modvec;
pub mod oracle;

pub use error::{Error, Result};
pub use ff::{Field, FieldElement};
pub use groebner::{
    find_reducers, membership, minimal_groebner_basis, plm_predict, reduce_full, reduce_step,
    GroebnerBasis, Membership, ReductionResult, ReductionStep,
};
pub use linpoly::LinearizedPoly;
pub use modvec::{ModuleVector, Monomial, Term, TieBreak, TopOrder};
pub use oracle::{enumerate_combinations, verify_groebner, EnumeratedModule, VerifyReport};
