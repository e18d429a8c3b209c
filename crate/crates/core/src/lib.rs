// Matrix arithmetic throughout indexes rows and columns explicitly; the
// iterator rewrites the lint suggests obscure the i/j symmetry of the math.
#![allow(clippy::needless_range_loop)]

//! Exact-arithmetic invariants for knot concordance.
//!
//! The crate is organized around four pillars:
//!
//! * [`laurent`] — integer Laurent polynomials with canonical unit
//!   normalization, Kronecker factorization, and the Fox–Milnor test.
//! * [`seifert`] — Seifert matrices and the invariants they carry:
//!   Alexander polynomial, signature, determinant, Arf invariant, and
//!   metabolizer search.
//! * [`surgery`] — rational surgery coefficients, surgery diagrams, the
//!   Rolfsen twist calculus, and a conservative `S³` recognizer.
//! * [`annulus`] — the annulus-modification bookkeeping: twist
//!   automorphisms of the torus, boundary re-gluing images, and the
//!   induced surgery instructions.
//!
//! All arithmetic is exact; no floating point appears anywhere in the
//! crate.

pub mod annulus;
pub mod laurent;
mod matrix;
pub mod seifert;
pub mod surgery;

pub use laurent::LaurentPoly;
pub use seifert::SeifertMatrix;
pub use surgery::SurgeryCoefficient;
