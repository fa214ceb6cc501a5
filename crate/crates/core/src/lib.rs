//! Exact combinatorial invariants of Boolean dynamical systems.
//!
//! A Boolean dynamical system is a Boolean algebra `B`, a finite label set `L`
//! and one Boolean homomorphism `θ_α` per label. This crate works with two
//! concrete algebras: the powerset of a finite atom set, and the
//! finite/cofinite algebra over `N` or `Z`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod boolean;
pub mod dynamics;
pub mod invariants;
pub mod ktheory;
pub mod presets;
pub mod semigroup;
pub mod topograph;

pub use boolean::{Backend, BoolElem, BoolError, Height, IdealDesc, Ultrafilter, Universe};
pub use dynamics::{ActionSpec, System, Tail, Word};
pub use semigroup::SemiElem;
