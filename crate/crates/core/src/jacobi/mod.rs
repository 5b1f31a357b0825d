//! A-Jacobi brackets on `M^A` and their verification batteries.
//!
//! Three constructions are provided: the bracket of a prolonged lcs pair
//! ([`LcsBracket`]), the prolongation of a Jacobi structure given by
//! `(Lambda, E)` ([`ProlongedBracket`]), and the generic construction from a
//! non-degenerate 2-form and a representation ([`LrjStructure`]).

mod checks;
mod lcs;
mod lrj;
mod prolonged;

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::smooth::APoly;
use crate::weil::Algebra;

pub use checks::{
    check_jacobi_axioms, check_lcs_identities, check_pointwise, check_prolongation_coincidence,
    check_prolonged_homomorphism, AXIOM_SUITE, PROLONGATION_SUITE,
};
pub use lcs::{hamiltonian, lcs_bracket, solve_at, LcsBracket, LcsData};
pub use lrj::{Anchor, LrjStructure};
pub use prolonged::{prolong_jacobi, JacobiData, ProlongedBracket};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    Lcs,
    Prolonged,
    Lrj,
}

impl BracketKind {
    pub fn tag(self) -> &'static str {
        match self {
            BracketKind::Lcs => "lcs",
            BracketKind::Prolonged => "prolonged",
            BracketKind::Lrj => "lrj",
        }
    }
}

impl fmt::Display for BracketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An A-bilinear bracket on the A-valued functions of `M^A`.
pub trait ABracket {
    fn kind(&self) -> BracketKind;
    fn algebra(&self) -> &Algebra;
    fn n_vars(&self) -> usize;
    fn bracket(&self, phi: &APoly, psi: &APoly) -> Result<APoly>;
}

#[cfg(test)]
mod tests;
