//! Legendrian invariants of Lagrangian petal projections.
//!
//! A petal projection is a knot diagram with a single multi-crossing; its
//! Lagrangian lift is fixed by the height order of the strands at that
//! crossing plus one half twist on every petal whose strands ascend. This
//! crate computes the Thurston–Bennequin and rotation numbers of such
//! diagrams and cross-checks them against independent engines:
//!
//! * [`petal`]: height permutations and the closed-form invariants.
//! * [`geometry`]: an explicit planar realization with prescribed lobe areas,
//!   `z` recovered from `dz = y dx`, turning numbers, SVG output.
//! * [`expansion`]: the classical diagram obtained by spreading the
//!   multi-crossing into a half twist, with PD and Gauss codes.
//! * [`invariants`]: component count, determinant, Kauffman bracket and
//!   Jones polynomial.
//! * [`front`]: half-twist front diagrams with non-crossing closures.
//! * [`search`]: exhaustive scans, the Λ_n audit, conformance reports.

pub mod cli;
pub mod error;
pub mod expansion;
pub mod front;
pub mod geometry;
pub mod invariants;
pub mod petal;
pub mod search;

pub use error::{Error, Result};
pub use expansion::{expand, ClassicalDiagram};
pub use petal::{
    canonical_twists, rotation_number, thurston_bennequin, validate_permutation,
    LagrangianPetalDiagram, PetalPermutation, Sign,
};
