//! Compound Du Val germs: splitting, classification, Milnor numbers and
//! the Milnor-number bounds for quartic threefolds.

mod bounds;
mod classify;
mod kawakita;
mod milnor;
mod split;

pub use bounds::{bound_check, BoundReport, NON_FACTORIAL_LIMIT, SMOOTH_QUARTIC_B3};
pub use classify::{classify_cdv, Certificate, GermClass, GermKind};
pub use kawakita::{kawakita_weights, max_discrepancy, milnor_lower_bound, BlowupKind, BlowupSpec};
pub use milnor::{milnor_number, MilnorRoute};
pub use split::{split_quadratic, Split};

use crate::poly::{GroebnerError, Poly, QuotientDim};
use num_traits::Zero;
use thiserror::Error;

pub const DEFAULT_MAX_JET: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("germ has a nonzero constant term")]
    NotThroughOrigin,
    #[error("classification needs 4 variables, got {0}")]
    Arity(usize),
    #[error("germ is smooth at the origin")]
    Smooth,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("Milnor routes disagree: {0}")]
    Inconsistent(String),
    #[error("route not applicable: {0}")]
    NotApplicable(String),
    #[error("infinite Milnor number in bound input")]
    InfiniteMilnor,
}

/// A hypersurface germ at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    poly: Poly,
}

impl Germ {
    pub fn new(poly: Poly) -> Result<Self, SingularityError> {
        if !poly.constant_term().is_zero() {
            return Err(SingularityError::NotThroughOrigin);
        }
        Ok(Germ { poly })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_singular(&self) -> bool {
        self.poly.homogeneous_part(1).is_zero()
    }
}

pub type MilnorNumber = QuotientDim;
