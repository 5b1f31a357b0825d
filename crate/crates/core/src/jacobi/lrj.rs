use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::AForm;
use crate::ops::DiffOp;
use crate::ring::{determinant, inverse_if_unimodular};
use crate::smooth::APoly;
use crate::weil::Algebra;

use super::{ABracket, BracketKind};

/// Representation of the vector fields of `M^A` on the A-functions.
#[derive(Clone, Debug)]
pub enum Anchor {
    /// `X -> X~`.
    Tilde,
    /// `X -> X~ + alpha(X)` for an A-valued 1-form `alpha`.
    Conformal(AForm),
}

/// Non-degenerate A-valued 2-form `Omega` on `M^A`, paired with a
/// representation whose differential is used to define Hamiltonians:
/// `i_(X_phi) Omega = d~ phi`, `{phi, psi} = -Omega(X_phi, X_psi)`.
#[derive(Clone, Debug)]
pub struct LrjStructure {
    omega: AForm,
    anchor: Anchor,
    solver: Vec<Vec<APoly>>,
}

impl LrjStructure {
    pub fn new(omega: AForm, anchor: Anchor) -> Result<Self> {
        let n = omega.n();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        if omega.degree() != 2 {
            return Err(Error::FormDegree { degree: omega.degree(), reason: "expected a 2-form" });
        }
        if let Anchor::Conformal(alpha) = &anchor {
            if alpha.degree() != 1 {
                return Err(Error::FormDegree { degree: alpha.degree(), reason: "expected a 1-form" });
            }
            if alpha.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: alpha.n() });
            }
        }
        let w_t: Vec<Vec<APoly>> = (0..n).map(|j| (0..n).map(|i| omega.coefficient(&[i, j])).collect()).collect();
        let solver = match inverse_if_unimodular(&w_t) {
            Some(s) => s,
            None => {
                let det = determinant(&w_t);
                let degenerate = det.is_none_or(|d| d.is_constant() && d.constant_term().augmentation().is_zero());
                return Err(if degenerate {
                    Error::DegenerateForm { origin: "every point".into() }
                } else {
                    Error::NeedsPointwise
                });
            }
        };
        Ok(LrjStructure { omega, anchor, solver })
    }

    pub fn omega(&self) -> &AForm {
        &self.omega
    }

    pub fn anchor(&self) -> &Anchor {
        &self.anchor
    }

    /// The differential `d~` of the representation, on forms.
    pub fn differential(&self, eta: &AForm) -> Result<AForm> {
        match &self.anchor {
            Anchor::Tilde => eta.d(),
            Anchor::Conformal(alpha) => eta.d_alpha(alpha),
        }
    }

    /// `d~ Omega = 0`.
    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.differential(&self.omega)?.is_zero())
    }

    /// The representation applied to `X` and `psi`.
    pub fn represent(&self, x: &DiffOp, psi: &APoly) -> Result<APoly> {
        let base = x.tilde_apply(psi)?;
        match &self.anchor {
            Anchor::Tilde => Ok(base),
            Anchor::Conformal(alpha) => base.try_add(&psi.try_mul(&alpha.evaluate(&[x])?)?),
        }
    }

    pub fn hamiltonian(&self, phi: &APoly) -> Result<DiffOp> {
        let eta = self.differential(&AForm::function(phi.clone()))?;
        let n = self.omega.n();
        let components = self
            .solver
            .iter()
            .map(|row| {
                row.iter().enumerate().try_fold(APoly::zero(self.omega.algebra(), n), |acc, (j, pij)| {
                    acc.try_add(&pij.try_mul(&eta.coefficient(&[j]))?)
                })
            })
            .collect::<Result<_>>()?;
        DiffOp::vector_field(components)
    }
}

impl ABracket for LrjStructure {
    fn kind(&self) -> BracketKind {
        BracketKind::Lrj
    }

    fn algebra(&self) -> &Algebra {
        self.omega.algebra()
    }

    fn n_vars(&self) -> usize {
        self.omega.n()
    }

    fn bracket(&self, phi: &APoly, psi: &APoly) -> Result<APoly> {
        let xf = self.hamiltonian(phi)?;
        let xg = self.hamiltonian(psi)?;
        Ok(-self.omega.evaluate(&[&xf, &xg])?)
    }
}
