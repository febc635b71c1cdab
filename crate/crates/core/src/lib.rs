//! Exact arithmetic for Gauss composition of integer binary quadratic forms.
//!
//! The crate is `no_std` and only needs `alloc`. Every quantity is an
//! arbitrary-precision integer or a rational in lowest terms; no floating
//! point is used anywhere.
//!
//! Layout:
//! - [`exact`]: integer/rational helpers, 2-vectors, 2x2 matrices, HNF bases.
//! - [`forms`]: forms, invariants, the `GL_2(Z)` action, determinant identities,
//!   definite reduction and brute-force representability.
//! - [`bilinear`]: composition laws as bilinear maps and their symbolic
//!   verification.
//! - [`quadalg`]: the algebra `Q[t]/(t^2 - d)`, embeddings and product lattices.
//! - [`compose`]: construction of a direct composition for any pair of forms
//!   whose discriminant ratio is a rational square.
//! - [`sample`]: the seeded generator shared by fuzzing and property suites.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bilinear;
pub mod compose;
mod error;
pub mod exact;
pub mod forms;
pub mod quadalg;
pub mod sample;

pub use crate::bilinear::{BiQuadratic, BilinearLaw, Clause, VerifiedComposition};
pub use crate::compose::{compose, ComposeReport, Transforms};
pub use crate::error::{Error, Result, Side};
pub use crate::exact::{Int, Mat2, QVec2, Rat, Vec2};
pub use crate::forms::{Form, InvariantRecord, RatForm};
pub use crate::quadalg::{AlgebraElement, Embedding, QLattice};
