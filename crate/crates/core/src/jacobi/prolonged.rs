use crate::error::{Error, Result};
use crate::ops::DiffOp;
use crate::poly::Poly;
use crate::smooth::{prolong, APoly};
use crate::weil::Algebra;

use super::{ABracket, BracketKind};

/// A Jacobi structure on `R^n` in local form: bivector `Lambda` and vector field `E`,
///
/// ```text
/// {f, g} = sum_ij Lambda^ij d_i f d_j g + f E(g) - g E(f)
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiData {
    lambda: Vec<Vec<Poly>>,
    e: Vec<Poly>,
}

impl JacobiData {
    pub fn new(lambda: Vec<Vec<Poly>>, e: Vec<Poly>) -> Result<Self> {
        let n = e.len();
        if lambda.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: lambda.len() });
        }
        for (i, row) in lambda.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.n_vars() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: entry.n_vars() });
                }
                if *entry != -&lambda[j][i] {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(JacobiData { lambda, e })
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn lambda(&self) -> &[Vec<Poly>] {
        &self.lambda
    }

    pub fn reeb(&self) -> &[Poly] {
        &self.e
    }

    fn apply_e(&self, f: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero(self.n());
        for (j, ej) in self.e.iter().enumerate() {
            acc = &acc + &(ej * &f.partial(j)?);
        }
        Ok(acc)
    }

    /// The base bracket `{f, g}`.
    #[allow(clippy::needless_range_loop)]
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let n = self.n();
        let df: Vec<Poly> = (0..n).map(|i| f.partial(i)).collect::<Result<_>>()?;
        let dg: Vec<Poly> = (0..n).map(|j| g.partial(j)).collect::<Result<_>>()?;
        let mut acc = Poly::zero(n);
        for i in 0..n {
            for j in 0..n {
                if !self.lambda[i][j].is_zero() {
                    acc = &acc + &(&self.lambda[i][j] * &(&df[i] * &dg[j]));
                }
            }
        }
        Ok(&(&acc + &(f * &self.apply_e(g)?)) - &(g * &self.apply_e(f)?))
    }
}

/// Prolongation to `M^A` of a Jacobi structure on `M`:
/// `{phi, psi}_A = tau~_phi(psi)` with `tau_phi(f) = -[ad(f)]^A~(phi)`.
#[derive(Clone, Debug)]
pub struct ProlongedBracket {
    data: JacobiData,
    alg: Algebra,
}

impl ProlongedBracket {
    pub fn new(data: JacobiData, alg: &Algebra) -> Self {
        ProlongedBracket { data, alg: alg.clone() }
    }

    pub fn data(&self) -> &JacobiData {
        &self.data
    }

    /// `[ad(f)]^A : g -> {f, g}^A`, as an operator on `M^A`.
    pub fn ad_prolonged(&self, f: &Poly) -> Result<DiffOp> {
        DiffOp::from_action(&self.alg, self.data.n(), |g| Ok(prolong(&self.data.bracket(f, g)?, &self.alg)))
    }

    /// `tau_phi : f -> -[ad(f)]^A~(phi)`.
    pub fn tau(&self, phi: &APoly) -> Result<DiffOp> {
        DiffOp::from_action(&self.alg, self.data.n(), |f| Ok(-self.ad_prolonged(f)?.tilde_apply(phi)?))
    }
}

impl ABracket for ProlongedBracket {
    fn kind(&self) -> BracketKind {
        BracketKind::Prolonged
    }

    fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn n_vars(&self) -> usize {
        self.data.n()
    }

    fn bracket(&self, phi: &APoly, psi: &APoly) -> Result<APoly> {
        self.tau(phi)?.tilde_apply(psi)
    }
}

pub fn prolong_jacobi(data: &JacobiData, alg: &Algebra) -> ProlongedBracket {
    ProlongedBracket::new(data.clone(), alg)
}
