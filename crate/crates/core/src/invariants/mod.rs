//! Hereditary and saturated ideals, cycles without exits, cofinality,
//! simplicity and quotient systems.

mod cofinal;
mod cycles;
mod hs;
mod quotient;

pub use cofinal::{check_condition2, is_cofinal, is_simple, Condition2, SimplicityReport, SimplicityWitness};
pub use cycles::{condition_lb, find_cycle_no_exit, find_cycle_no_exit_with, CycleWitness};
pub use hs::{
    enumerate_hs_ideals, enumerate_hs_ideals_with, hereditary_closure, hereditary_violation, hs_closure,
    hs_closure_with, is_hereditary, is_saturated, saturation_violation, HsLattice, HsReport, LawViolation,
};
pub use quotient::quotient_system;

use alloc::string::String;

use crate::boolean::{BoolElem, BoolError, IdealDesc};
use crate::dynamics::{DynError, System};

/// Errors raised by the invariants layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvError {
    /// Boolean-layer error.
    #[error(transparent)]
    Bool(#[from] BoolError),
    /// Dynamics-layer error.
    #[error(transparent)]
    Dyn(#[from] DynError),
    /// The closure did not stabilise within the bound.
    #[error("closure did not stabilise within bound {bound}")]
    ClosureBoundExceeded {
        /// Ideal computed so far.
        partial: IdealDesc,
        /// Bound used.
        bound: usize,
    },
    /// A forced-path search did not finish within the bound.
    #[error("search did not finish within bound {bound}")]
    SearchBoundExceeded {
        /// Bound used.
        bound: usize,
    },
    /// The question is outside what the backend supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Quotienting needs a hereditary ideal.
    #[error("ideal is not hereditary: θ of a member leaves the ideal")]
    NotHereditary {
        /// Member of the ideal.
        element: BoolElem,
        /// Label position.
        label: usize,
        /// Its image, outside the ideal.
        image: BoolElem,
    },
    /// The seed of a closure was empty.
    #[error("seed must be nonempty")]
    EmptySeed,
}

/// Default iteration bound on the cofinite backend: `10·(window size + max shift)`.
pub fn default_bound(sys: &System) -> usize {
    if sys.is_finite() {
        return usize::MAX;
    }
    let k = sys.explicit_radius();
    (10 * (2 * k + 1 + sys.max_shift())) as usize
}
