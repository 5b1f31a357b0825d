//! Exterior forms in the global coordinate coframe of `R^n` and its prolongation.
//!
//! A k-form is a map from strictly increasing index tuples `(i_1 < .. < i_k)`
//! (0-based) to coefficients; antisymmetry is structural. The same code serves
//! real forms on `M` (polynomial coefficients) and A-valued forms on `M^A`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ops::DiffOp;
use crate::poly::Poly;
use crate::ring::DiffRing;
use crate::smooth::{prolong, APoly};
use crate::weil::{same_algebra, Algebra};

#[derive(Clone, PartialEq)]
pub struct Form<C> {
    n: usize,
    degree: usize,
    zero: C,
    coeffs: BTreeMap<Vec<usize>, C>,
}

/// Real form on the base manifold.
pub type RForm = Form<Poly>;
/// A-valued form on the near-point manifold.
pub type AForm = Form<APoly>;

/// Sign of the permutation sorting `indices`, or `None` on a repeated index.
fn sort_sign(indices: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut inversions = 0;
    for (a, i) in indices.iter().enumerate() {
        for j in &indices[a + 1..] {
            match i.cmp(j) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, sorted))
}

impl<C: DiffRing> Form<C> {
    /// The zero k-form; `proto` supplies the coefficient ring.
    pub fn zero(degree: usize, proto: &C) -> Self {
        Form { n: proto.n_vars(), degree, zero: proto.zero_like(), coeffs: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn function(c: C) -> Self {
        let mut f = Self::zero(0, &c);
        f.add_entry(vec![], c);
        f
    }

    /// Builds a form from `(indices, coefficient)` entries; unsorted indices are
    /// reordered with the permutation sign and repeated indices vanish.
    pub fn from_entries(degree: usize, proto: &C, entries: impl IntoIterator<Item = (Vec<usize>, C)>) -> Result<Self> {
        let mut form = Self::zero(degree, proto);
        for (idx, c) in entries {
            if idx.len() != degree {
                return Err(Error::FormDegree { degree: idx.len(), reason: "entry arity differs from form degree" });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= form.n) {
                return Err(Error::IndexOutOfRange { index: bad, bound: form.n });
            }
            if let Some((sign, sorted)) = sort_sign(&idx) {
                let c = if sign < 0 { c.negated() } else { c };
                form.add_entry(sorted, c);
            }
        }
        Ok(form)
    }

    /// The coordinate 1-form `dx_j`.
    pub fn dx(proto: &C, j: usize) -> Self {
        let mut f = Self::zero(1, proto);
        f.add_entry(vec![j], proto.one_like());
        f
    }

    fn add_entry(&mut self, idx: Vec<usize>, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&idx) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(idx, sum);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, C> {
        &self.coeffs
    }

    /// Coefficient of `dx_I`, for any ordering of `I` (sign applied).
    pub fn coefficient(&self, idx: &[usize]) -> C {
        match sort_sign(idx) {
            Some((sign, sorted)) => {
                let c = self.coeffs.get(&sorted).cloned().unwrap_or_else(|| self.zero.clone());
                if sign < 0 {
                    c.negated()
                } else {
                    c
                }
            }
            None => self.zero.clone(),
        }
    }

    /// Value of a 0-form.
    pub fn as_function(&self) -> C {
        self.coefficient(&[])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.degree != other.degree {
            return Err(Error::FormDegree { degree: other.degree, reason: "sum of forms of different degree" });
        }
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_entry(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), ..self.clone() };
        for (idx, c) in &self.coeffs {
            out.coeffs.insert(idx.clone(), c.negated());
        }
        out
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negated())
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn scale(&self, f: &C) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), ..self.clone() };
        for (idx, c) in &self.coeffs {
            out.add_entry(idx.clone(), f.times(c));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.degree + other.degree, &self.zero);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                if let Some((sign, sorted)) = sort_sign(&idx) {
                    let c = a.times(b);
                    out.add_entry(sorted, if sign < 0 { c.negated() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative in coordinates: `d(c dx_I) = sum_j d_j c dx_j ^ dx_I`.
    /// On top-degree forms this is the zero form.
    pub fn d(&self) -> Result<Self> {
        let mut out = Self::zero(self.degree + 1, &self.zero);
        for (idx, c) in &self.coeffs {
            for j in 0..self.n {
                if idx.contains(&j) {
                    continue;
                }
                let dc = c.partial(j)?;
                if dc.is_zero() {
                    continue;
                }
                let mut full = vec![j];
                full.extend_from_slice(idx);
                if let Some((sign, sorted)) = sort_sign(&full) {
                    out.add_entry(sorted, if sign < 0 { dc.negated() } else { dc });
                }
            }
        }
        Ok(out)
    }

    /// Lichnerowicz differential `d_alpha(eta) = d(eta) + alpha ^ eta`.
    pub fn d_alpha(&self, alpha: &Self) -> Result<Self> {
        if alpha.degree != 1 {
            return Err(Error::FormDegree { degree: alpha.degree, reason: "Lichnerowicz differential needs a 1-form" });
        }
        self.d()?.try_add(&alpha.wedge(self)?)
    }

    /// Contraction with a vector field given by components, in the first slot.
    pub fn interior_components(&self, components: &[C]) -> Result<Self> {
        if components.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: components.len() });
        }
        if self.degree == 0 {
            return Err(Error::FormDegree { degree: 0, reason: "cannot contract a function" });
        }
        let mut out = Self::zero(self.degree - 1, &self.zero);
        for (idx, c) in &self.coeffs {
            for (r, &i) in idx.iter().enumerate() {
                let zi = &components[i];
                if zi.is_zero() {
                    continue;
                }
                let term = zi.times(c);
                let mut rest = idx.clone();
                rest.remove(r);
                out.add_entry(rest, if r % 2 == 0 { term } else { term.negated() });
            }
        }
        Ok(out)
    }
}

impl RForm {
    /// Coefficientwise prolongation in the coframe `(dx_i)^A`.
    pub fn prolong(&self, alg: &Algebra) -> AForm {
        let proto = APoly::zero(alg, self.n);
        let mut out = AForm::zero(self.degree, &proto);
        for (idx, c) in &self.coeffs {
            out.add_entry(idx.clone(), prolong(c, alg));
        }
        out
    }
}

impl AForm {
    pub fn algebra(&self) -> &Algebra {
        self.zero.algebra()
    }

    /// `i_X eta` for a vector field `X` (zero multiplier).
    pub fn interior(&self, x: &DiffOp) -> Result<Self> {
        if !x.is_vector_field() {
            return Err(Error::NotVectorField);
        }
        if !same_algebra(x.algebra(), self.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        self.interior_components(x.components())
    }

    /// `eta(X_1, .., X_k)` for vector fields.
    pub fn evaluate(&self, fields: &[&DiffOp]) -> Result<APoly> {
        if fields.len() != self.degree {
            return Err(Error::FormDegree { degree: self.degree, reason: "wrong number of arguments" });
        }
        let mut form = self.clone();
        for x in fields {
            form = form.interior(x)?;
        }
        Ok(form.as_function())
    }

    /// Lie derivative `theta_X = i_Z d_alpha + d_alpha i_Z + mu`, where `Z` is the
    /// vector-field part of `X` and `mu` its multiplier; with `alpha = 0` this
    /// is the homotopy formula for the plain differential.
    pub fn lie_derivative(&self, x: &DiffOp, alpha: &AForm) -> Result<Self> {
        let z = x.derivation_part();
        let first = self.d_alpha(alpha)?.interior(&z)?;
        let mut out = if self.degree == 0 {
            first
        } else {
            first.try_add(&self.interior(&z)?.d_alpha(alpha)?)?
        };
        if !x.multiplier().is_zero() {
            out = out.try_add(&self.scale(x.multiplier()))?;
        }
        Ok(out)
    }
}

pub fn prolong_form(eta: &RForm, alg: &Algebra) -> AForm {
    eta.prolong(alg)
}

pub fn wedge<C: DiffRing>(a: &Form<C>, b: &Form<C>) -> Result<Form<C>> {
    a.wedge(b)
}

pub fn d_alpha<C: DiffRing>(eta: &Form<C>, alpha: &Form<C>) -> Result<Form<C>> {
    eta.d_alpha(alpha)
}

pub fn interior(x: &DiffOp, eta: &AForm) -> Result<AForm> {
    eta.interior(x)
}

pub fn lie_derivative(x: &DiffOp, eta: &AForm, alpha: &AForm) -> Result<AForm> {
    eta.lie_derivative(x, alpha)
}

/// Writes `form2{ (1,2): c, ... }` with 1-based indices.
impl<C: DiffRing> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form{}{{", self.degree)?;
        for (k, (idx, c)) in self.coeffs.iter().enumerate() {
            let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{} ({}): {}", if k == 0 { "" } else { "," }, idx.join(","), c)?;
        }
        write!(f, " }}")
    }
}

impl<C: DiffRing> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
