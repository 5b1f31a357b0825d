//! First-order differential operators on `M^A`, their tilde extension to
//! A-valued functions, and the Lie-Rinehart bracket.
//!
//! An operator is stored in the prolonged coordinate frame as a vector-field
//! part `Z = sum_j Z_j (d/dx_j)^A` plus a multiplier `mu = X(1)`, so that
//!
//! ```text
//! X(f)    = sum_j Z_j * d_j(f^A) + f^A * mu
//! X~(phi) = sum_j Z_j * d_j(phi) + phi * mu
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::report::{named, IdentityCheck};
use crate::smooth::{prolong, APoly};
use crate::weil::{same_algebra, AElement, Algebra};

#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    alg: Algebra,
    components: Vec<APoly>,
    multiplier: APoly,
}

impl DiffOp {
    pub fn new(components: Vec<APoly>, multiplier: APoly) -> Result<Self> {
        let n = multiplier.n_vars();
        if components.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: components.len() });
        }
        for c in &components {
            multiplier.check_compatible(c)?;
        }
        Ok(DiffOp { alg: multiplier.algebra().clone(), components, multiplier })
    }

    pub fn vector_field(components: Vec<APoly>) -> Result<Self> {
        let first = components.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let mu = APoly::zero(first.algebra(), first.n_vars());
        Self::new(components, mu)
    }

    pub fn zero(alg: &Algebra, n: usize) -> Self {
        DiffOp { alg: alg.clone(), components: vec![APoly::zero(alg, n); n], multiplier: APoly::zero(alg, n) }
    }

    /// The lift `(d/dx_j)^A` of a coordinate field.
    pub fn coordinate_field(alg: &Algebra, n: usize, j: usize) -> Self {
        let mut op = Self::zero(alg, n);
        op.components[j] = APoly::one(alg, n);
        op
    }

    /// Pure multiplication operator `f -> f^A * mu`.
    pub fn multiplication(mu: APoly) -> Self {
        let n = mu.n_vars();
        DiffOp { alg: mu.algebra().clone(), components: vec![APoly::zero(mu.algebra(), n); n], multiplier: mu }
    }

    /// Prolongation `theta^A` of a vector field on `M` given by its components.
    pub fn prolong_field(components: &[Poly], alg: &Algebra) -> Result<Self> {
        Self::vector_field(components.iter().map(|c| prolong(c, alg)).collect())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[APoly] {
        &self.components
    }

    pub fn multiplier(&self) -> &APoly {
        &self.multiplier
    }

    pub fn is_vector_field(&self) -> bool {
        self.multiplier.is_zero()
    }

    /// The derivation part `X - (.)^A * X(1)`.
    pub fn derivation_part(&self) -> DiffOp {
        DiffOp {
            alg: self.alg.clone(),
            components: self.components.clone(),
            multiplier: APoly::zero(&self.alg, self.dim()),
        }
    }

    fn check(&self, other: &DiffOp) -> Result<()> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    /// `X(f)` for `f` on the base manifold.
    pub fn apply(&self, f: &Poly) -> Result<APoly> {
        if f.n_vars() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: f.n_vars() });
        }
        self.tilde_apply(&prolong(f, &self.alg))
    }

    /// `X~(phi)`: the unique A-linear first-order operator extending `X`.
    pub fn tilde_apply(&self, phi: &APoly) -> Result<APoly> {
        let mut out = phi.try_mul(&self.multiplier)?;
        for (j, z) in self.components.iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            out = out.try_add(&z.try_mul(&phi.partial(j)?)?)?;
        }
        Ok(out)
    }

    /// `phi . X`, the module action of A-valued functions.
    pub fn module_action(&self, phi: &APoly) -> Result<DiffOp> {
        let components = self.components.iter().map(|z| phi.try_mul(z)).collect::<Result<_>>()?;
        DiffOp::new(components, phi.try_mul(&self.multiplier)?)
    }

    pub fn a_scale(&self, a: &AElement) -> Result<DiffOp> {
        let components = self.components.iter().map(|z| z.a_scale(a)).collect::<Result<_>>()?;
        DiffOp::new(components, self.multiplier.a_scale(a)?)
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check(other)?;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        DiffOp::new(components, self.multiplier.try_add(&other.multiplier)?)
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            alg: self.alg.clone(),
            components: self.components.iter().map(|z| -z).collect(),
            multiplier: -&self.multiplier,
        }
    }

    /// Re-expresses the operator in a permuted algebra basis.
    pub fn transport(&self, target: &Algebra, perm: &[usize]) -> Result<DiffOp> {
        let components = self.components.iter().map(|z| z.transport(target, perm)).collect::<Result<_>>()?;
        DiffOp::new(components, self.multiplier.transport(target, perm)?)
    }

    /// Rebuilds an operator from its action on `1` and on the coordinate
    /// functions: `mu = X(1)`, `Z_j = X(x_j) - x_j^A * mu`.
    pub fn from_action(alg: &Algebra, n: usize, action: impl Fn(&Poly) -> Result<APoly>) -> Result<DiffOp> {
        let multiplier = action(&Poly::one(n))?;
        let components = (0..n)
            .map(|j| {
                let xj = APoly::coordinate(alg, n, j);
                action(&Poly::var(n, j))?.try_add(&-&xj.try_mul(&multiplier)?)
            })
            .collect::<Result<_>>()?;
        DiffOp::new(components, multiplier)
    }
}

/// `[X, Y] = X~ o Y - Y~ o X`, reconstructed from its action on coordinates and `1`.
pub fn bracket(x: &DiffOp, y: &DiffOp) -> Result<DiffOp> {
    x.check(y)?;
    DiffOp::from_action(&x.alg, x.dim(), |f| {
        let left = x.tilde_apply(&y.apply(f)?)?;
        let right = y.tilde_apply(&x.apply(f)?)?;
        left.try_add(&-right)
    })
}

pub fn module_action(phi: &APoly, x: &DiffOp) -> Result<DiffOp> {
    x.module_action(phi)
}

/// Checks the Lie-Rinehart compatibility identities for `(X, Y, phi)`:
///
/// * `[X, phi.Y] = (X~(phi) - phi X~(1)) . Y + phi . [X, Y]`, as operators and on each `f`;
/// * `[X~, Y~] = [X, Y]~` on each `psi` and on each prolonged `f`.
pub fn check_lie_rinehart(
    x: &DiffOp,
    y: &DiffOp,
    phi: &APoly,
    fs: &[Poly],
    psis: &[APoly],
) -> Result<Vec<IdentityCheck>> {
    let mut anchor = IdentityCheck::new("lie-rinehart", "anchor-expansion");
    let lhs = bracket(x, &y.module_action(phi)?)?;
    let one = APoly::one(&x.alg, x.dim());
    let coefficient = x.tilde_apply(phi)?.try_add(&-phi.try_mul(&x.tilde_apply(&one)?)?)?;
    let rhs = y.module_action(&coefficient)?.try_add(&bracket(x, y)?.module_action(phi)?)?;
    let inputs = || vec![named("X", x), named("Y", y), named("phi", phi)];
    anchor.record_eq(&lhs, &rhs, None, inputs);
    for f in fs {
        anchor.record_eq(&lhs.apply(f)?, &rhs.apply(f)?, None, || {
            let mut v = inputs();
            v.push(named("f", f));
            v
        });
    }

    let mut naturality = IdentityCheck::new("lie-rinehart", "tilde-naturality");
    let xy = bracket(x, y)?;
    let prolonged: Vec<APoly> = fs.iter().map(|f| prolong(f, &x.alg)).collect();
    for psi in psis.iter().chain(&prolonged) {
        let commutator = x.tilde_apply(&y.tilde_apply(psi)?)?.try_add(&-y.tilde_apply(&x.tilde_apply(psi)?)?)?;
        naturality.record_eq(&commutator, &xy.tilde_apply(psi)?, None, || {
            vec![named("X", x), named("Y", y), named("psi", psi)]
        });
    }
    Ok(vec![anchor, naturality])
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "diffop{{ Z = [{}], mu = {} }}", parts.join(", "), self.multiplier)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::weil::WeilAlgebra;

    #[test]
    fn coordinate_lift_differentiates() {
        let d = WeilAlgebra::dual_numbers();
        let x = Poly::var(1, 0);
        let dx = DiffOp::coordinate_field(&d, 1, 0);
        assert_eq!(dx.apply(&(&x * &x)).unwrap(), prolong(&x.scale(&q(2)), &d));
    }

    #[test]
    fn pure_multiplier_and_unit() {
        let a = WeilAlgebra::univariate(3);
        let mu = &APoly::coordinate(&a, 2, 1) + &APoly::one(&a, 2);
        let m = DiffOp::multiplication(mu.clone());
        let f = &Poly::var(2, 0) + &Poly::one(2);
        assert_eq!(m.apply(&f).unwrap(), &prolong(&f, &a) * &mu);
        assert_eq!(m.apply(&Poly::one(2)).unwrap(), mu);
    }

    #[test]
    fn tilde_of_eps_x() {
        let d = WeilAlgebra::dual_numbers();
        let eps = AElement::basis(&d, 1).unwrap();
        let phi = APoly::coordinate(&d, 1, 0).a_scale(&eps).unwrap();
        let dx = DiffOp::coordinate_field(&d, 1, 0);
        assert_eq!(dx.tilde_apply(&phi).unwrap(), APoly::constant(1, eps));
    }

    #[test]
    fn coordinate_lifts_commute() {
        let a = WeilAlgebra::jets(2, 2);
        let d1 = DiffOp::coordinate_field(&a, 2, 0);
        let d2 = DiffOp::coordinate_field(&a, 2, 1);
        assert_eq!(bracket(&d1, &d2).unwrap(), DiffOp::zero(&a, 2));
    }

    #[test]
    fn bracket_of_operator_with_itself_vanishes() {
        let d = WeilAlgebra::dual_numbers();
        let x = DiffOp::new(
            vec![&APoly::coordinate(&d, 1, 0) * &APoly::coordinate(&d, 1, 0)],
            APoly::coordinate(&d, 1, 0),
        )
        .unwrap();
        assert_eq!(bracket(&x, &x).unwrap(), DiffOp::zero(&d, 1));
    }

    #[test]
    fn module_action_units() {
        let d = WeilAlgebra::dual_numbers();
        let x = DiffOp::new(vec![APoly::coordinate(&d, 1, 0)], APoly::one(&d, 1)).unwrap();
        assert_eq!(x.module_action(&APoly::one(&d, 1)).unwrap(), x);
        assert_eq!(x.module_action(&APoly::zero(&d, 1)).unwrap(), DiffOp::zero(&d, 1));
    }

    #[test]
    fn mismatch_is_reported() {
        let x = DiffOp::coordinate_field(&WeilAlgebra::dual_numbers(), 1, 0);
        let y = DiffOp::coordinate_field(&WeilAlgebra::univariate(3), 1, 0);
        assert_eq!(bracket(&x, &y).unwrap_err(), Error::AlgebraMismatch);
        assert!(x.apply(&Poly::var(2, 0)).is_err());
    }
}
