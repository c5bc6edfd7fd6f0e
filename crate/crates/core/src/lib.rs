//! Exact decision procedures for unit-regular and semi-balanced elements of
//! two families of monoids:
//!
//! * `T̄(X, Y)`: self-maps of a finite set `X = {0, …, n-1}` that leave a
//!   nonempty subset `Y` invariant ([`txy`]);
//! * `L̄(V, W)`: linear maps of `V = GF(p)^n` that leave a subspace `W`
//!   invariant ([`lvw`]).
//!
//! Every positive decision comes with an explicit witness unit `g` such that
//! `f g f = f`, and every decision can be cross-checked against an exhaustive
//! search over the unit group (`oracle` in both modules). The [`balance`]
//! module computes collapse and defect, and [`scan`] runs whole-universe
//! sweeps that tie all of the above together.
//!
//! Maps act on the right and compose left to right: `x(fg) = (xf)g`. Linear
//! maps are matrices acting on row vectors.

pub mod balance;
pub mod error;
pub mod ffla;
pub mod lvw;
pub mod scan;
pub mod settrans;
pub mod txy;

pub use balance::BalanceReport;
pub use error::{Error, Result};
pub use ffla::{FFMatrix, FFScalar, InvariantSubspacePair, PrimeField, Subspace};
pub use lvw::LvwDecision;
pub use settrans::{InvariantSetPair, KernelData, Transformation};
pub use txy::TxyDecision;
