use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{AForm, RForm};
use crate::ops::DiffOp;
use crate::poly::Poly;
use crate::ring::{determinant, inverse_if_unimodular};
use crate::smooth::{prolong, APoly, NearPoint};
use crate::weil::{nil_matrix_invert, AElement, Algebra};

use super::prolonged::JacobiData;
use super::{ABracket, BracketKind};

/// A locally conformally symplectic pair `(alpha, omega)` on `R^n`, with its
/// prolongation to `M^A` cached.
#[derive(Clone, Debug)]
pub struct LcsData {
    alg: Algebra,
    alpha: RForm,
    omega: RForm,
    alpha_a: AForm,
    omega_a: AForm,
    /// `(W^T)^-1` for `W_ij = omega(d_i, d_j)`, present when `det W` is a
    /// non-zero constant.
    solver: Option<Vec<Vec<Poly>>>,
}

impl LcsData {
    /// Validated constructor: requires `d(omega) + alpha ^ omega = 0` exactly.
    pub fn new(alg: &Algebra, alpha: RForm, omega: RForm) -> Result<Self> {
        let lcs = Self::new_unchecked(alg, alpha, omega)?;
        if let Some((idx, c)) = lcs.compatibility_defect()?.entries().iter().next() {
            let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            return Err(Error::LcsCompatibility { component: format!("({}): {}", idx.join(","), c) });
        }
        Ok(lcs)
    }

    /// Skips the compatibility check (shape checks still apply).
    pub fn new_unchecked(alg: &Algebra, alpha: RForm, omega: RForm) -> Result<Self> {
        let n = omega.n();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        if alpha.degree() != 1 {
            return Err(Error::FormDegree { degree: alpha.degree(), reason: "alpha must be a 1-form" });
        }
        if omega.degree() != 2 {
            return Err(Error::FormDegree { degree: omega.degree(), reason: "omega must be a 2-form" });
        }
        if alpha.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: alpha.n() });
        }
        let w_t: Vec<Vec<Poly>> = (0..n).map(|j| (0..n).map(|i| omega.coefficient(&[i, j])).collect()).collect();
        let solver = inverse_if_unimodular(&w_t);
        if solver.is_none() {
            if let Some(det) = determinant(&w_t) {
                if det.is_zero() {
                    return Err(Error::DegenerateForm { origin: "every point".into() });
                }
            }
        }
        Ok(LcsData {
            alg: alg.clone(),
            alpha_a: alpha.prolong(alg),
            omega_a: omega.prolong(alg),
            alpha,
            omega,
            solver,
        })
    }

    /// Replaces the prolonged 2-form by an arbitrary A-valued one (for
    /// mutation tests: the result is no longer a prolongation).
    pub fn with_lifted_omega(&self, omega_a: AForm) -> Self {
        LcsData { omega_a, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.omega.n()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn alpha(&self) -> &RForm {
        &self.alpha
    }

    pub fn omega(&self) -> &RForm {
        &self.omega
    }

    pub fn alpha_a(&self) -> &AForm {
        &self.alpha_a
    }

    pub fn omega_a(&self) -> &AForm {
        &self.omega_a
    }

    /// `d(omega) + alpha ^ omega`; zero for a valid lcs pair.
    pub fn compatibility_defect(&self) -> Result<RForm> {
        self.omega.d_alpha(&self.alpha)
    }

    /// Advisory: `d(alpha) = 0`.
    pub fn alpha_is_closed(&self) -> Result<bool> {
        Ok(self.alpha.d()?.is_zero())
    }

    pub fn is_symbolic(&self) -> bool {
        self.solver.is_some()
    }

    fn solver(&self) -> Result<&Vec<Vec<Poly>>> {
        self.solver.as_ref().ok_or(Error::NeedsPointwise)
    }

    /// Hamiltonian field of `f` on the base: `i_(X_f) omega = d_alpha f`.
    pub fn base_hamiltonian(&self, f: &Poly) -> Result<Vec<Poly>> {
        let p = self.solver()?;
        let eta = RForm::function(f.clone()).d_alpha(&self.alpha)?;
        let rhs: Vec<Poly> = (0..self.n()).map(|j| eta.coefficient(&[j])).collect();
        Ok(p.iter()
            .map(|row| row.iter().zip(&rhs).fold(Poly::zero(self.n()), |acc, (a, b)| &acc + &(a * b)))
            .collect())
    }

    /// Base Jacobi bracket `{f, g} = -omega(X_f, X_g)`.
    pub fn base_bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let xf = self.base_hamiltonian(f)?;
        let xg = self.base_hamiltonian(g)?;
        let contracted = self.omega.interior_components(&xf)?.interior_components(&xg)?;
        Ok(-contracted.as_function())
    }

    /// The `(Lambda, E)` presentation of the base bracket, read off from its
    /// values on `1` and the coordinate functions.
    pub fn jacobi_data(&self) -> Result<JacobiData> {
        let n = self.n();
        let one = Poly::one(n);
        let e: Vec<Poly> = (0..n).map(|j| self.base_bracket(&one, &Poly::var(n, j))).collect::<Result<_>>()?;
        let mut lambda = vec![vec![Poly::zero(n); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let xi = Poly::var(n, i);
                let xj = Poly::var(n, j);
                lambda[i][j] = &(&self.base_bracket(&xi, &xj)? - &(&xi * &e[j])) + &(&xj * &e[i]);
            }
        }
        JacobiData::new(lambda, e)
    }

    /// `d_(alpha^A) F` as a 1-form.
    pub fn lichnerowicz(&self, f: &APoly) -> Result<AForm> {
        AForm::function(f.clone()).d_alpha(&self.alpha_a)
    }

    /// `X_F`: the unique vector field with `i_(X_F) omega^A = d_(alpha^A) F`,
    /// solved with the prolonged inverse of the base 2-form.
    pub fn hamiltonian(&self, f: &APoly) -> Result<DiffOp> {
        let p = self.solver()?;
        let eta = self.lichnerowicz(f)?;
        let n = self.n();
        let components = p
            .iter()
            .map(|row| {
                row.iter().enumerate().try_fold(APoly::zero(&self.alg, n), |acc, (j, pij)| {
                    acc.try_add(&prolong(pij, &self.alg).try_mul(&eta.coefficient(&[j]))?)
                })
            })
            .collect::<Result<_>>()?;
        DiffOp::vector_field(components)
    }

    /// Pointwise Hamiltonian: components of `X_F` at a near point, by inverting
    /// the A-valued matrix of `omega^A(xi)` over the local ring.
    pub fn hamiltonian_at(&self, f: &APoly, xi: &NearPoint) -> Result<Vec<AElement>> {
        solve_at(&self.omega_a, &self.lichnerowicz(f)?, xi)
    }

    /// `-omega^A(X_F, X_G)` evaluated at a near point.
    pub fn bracket_at(&self, f: &APoly, g: &APoly, xi: &NearPoint) -> Result<AElement> {
        let xf = self.hamiltonian_at(f, xi)?;
        let xg = self.hamiltonian_at(g, xi)?;
        Ok(-two_form_at(&self.omega_a, &xf, &xg, xi)?)
    }

    /// `rho_(alpha^A)(X)(G) = X~(G) + G * alpha^A(X)`.
    pub fn rho(&self, x: &DiffOp, g: &APoly) -> Result<APoly> {
        let alpha_x = self.alpha_a.evaluate(&[x])?;
        x.tilde_apply(g)?.try_add(&g.try_mul(&alpha_x)?)
    }
}

/// Solves `i_X omega = eta` at `xi`. `(i_X omega)_j = sum_i X_i W_ij`.
pub fn solve_at(omega: &AForm, eta: &AForm, xi: &NearPoint) -> Result<Vec<AElement>> {
    let n = omega.n();
    let w_t: Vec<Vec<AElement>> = (0..n)
        .map(|j| (0..n).map(|i| omega.coefficient(&[i, j]).eval(xi)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let inv = nil_matrix_invert(&w_t).map_err(|e| match e {
        Error::SingularMatrix => Error::DegenerateForm { origin: format_origin(xi) },
        other => other,
    })?;
    let rhs: Vec<AElement> = (0..n).map(|j| eta.coefficient(&[j]).eval(xi)).collect::<Result<_>>()?;
    Ok(inv
        .iter()
        .map(|row| row.iter().zip(&rhs).fold(AElement::zero(xi.algebra()), |acc, (a, b)| &acc + &(a * b)))
        .collect())
}

/// `omega(X, Y)` at a point, for vectors given by their A-valued components.
pub(crate) fn two_form_at(omega: &AForm, x: &[AElement], y: &[AElement], xi: &NearPoint) -> Result<AElement> {
    let mut acc = AElement::zero(xi.algebra());
    for (idx, c) in omega.entries() {
        let (i, j) = (idx[0], idx[1]);
        let det = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
        acc = &acc + &(&c.eval(xi)? * &det);
    }
    Ok(acc)
}

fn format_origin(xi: &NearPoint) -> String {
    let parts: Vec<String> = xi.origin().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// `{F, G}_(omega^A) = -omega^A(X_F, X_G)`.
#[derive(Clone, Debug)]
pub struct LcsBracket {
    lcs: LcsData,
}

impl LcsBracket {
    pub fn new(lcs: LcsData) -> Self {
        LcsBracket { lcs }
    }

    pub fn lcs(&self) -> &LcsData {
        &self.lcs
    }

    /// The alternative formula `rho_(alpha^A)(X_F)(G)`.
    pub fn rho_formula(&self, f: &APoly, g: &APoly) -> Result<APoly> {
        self.lcs.rho(&self.lcs.hamiltonian(f)?, g)
    }
}

impl ABracket for LcsBracket {
    fn kind(&self) -> BracketKind {
        BracketKind::Lcs
    }

    fn algebra(&self) -> &Algebra {
        &self.lcs.alg
    }

    fn n_vars(&self) -> usize {
        self.lcs.n()
    }

    fn bracket(&self, f: &APoly, g: &APoly) -> Result<APoly> {
        let xf = self.lcs.hamiltonian(f)?;
        let xg = self.lcs.hamiltonian(g)?;
        Ok(-self.lcs.omega_a.evaluate(&[&xf, &xg])?)
    }
}

pub fn lcs_bracket(lcs: &LcsData) -> LcsBracket {
    LcsBracket::new(lcs.clone())
}

pub fn hamiltonian(lcs: &LcsData, f: &APoly) -> Result<DiffOp> {
    lcs.hamiltonian(f)
}

impl fmt::Display for LcsData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lcs{{ alpha = {}, omega = {} }} over {}", self.alpha, self.omega, self.alg)
    }
}
