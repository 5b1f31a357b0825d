//! Functions on the near-point manifold `M^A` for `M = R^n`: A-valued
//! polynomials in the prolonged coordinates `x_j^A`, near points, and the
//! prolongation `f -> f^A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{owned_ops, Monomial, Poly};
use crate::rational::{factorial, Q};
use crate::weil::{same_algebra, AElement, Algebra};

/// A point of `M^A = A^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NearPoint {
    alg: Algebra,
    coords: Vec<AElement>,
}

impl NearPoint {
    pub fn new(alg: &Algebra, coords: Vec<AElement>) -> Result<Self> {
        if coords.iter().any(|c| !same_algebra(c.algebra(), alg)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(NearPoint { alg: alg.clone(), coords })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[AElement] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The point `x_0` of `M` this near point sits over.
    pub fn origin(&self) -> Vec<Q> {
        self.coords.iter().map(AElement::augmentation).collect()
    }
}

impl fmt::Display for NearPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An A-valued polynomial in `x_1^A .. x_n^A`.
///
/// `real_valued` marks members of the real-valued function class; it is set
/// by the constructor and never inferred.
#[derive(Clone)]
pub struct APoly {
    alg: Algebra,
    n_vars: usize,
    terms: BTreeMap<Monomial, AElement>,
    real_valued: bool,
}

impl APoly {
    pub fn zero(alg: &Algebra, n_vars: usize) -> Self {
        APoly { alg: alg.clone(), n_vars, terms: BTreeMap::new(), real_valued: false }
    }

    pub fn constant(n_vars: usize, a: AElement) -> Self {
        let mut p = Self::zero(a.algebra(), n_vars);
        p.add_term(Monomial::one(n_vars), a);
        p
    }

    pub fn one(alg: &Algebra, n_vars: usize) -> Self {
        Self::constant(n_vars, AElement::one(alg))
    }

    /// The prolonged coordinate function `x_j^A` (0-based `j`).
    pub fn coordinate(alg: &Algebra, n_vars: usize, j: usize) -> Self {
        let mut p = Self::zero(alg, n_vars);
        p.add_term(Monomial::var(n_vars, j), AElement::one(alg));
        p
    }

    /// A real constant `c * 1_A`, flagged as real-valued.
    pub fn real_constant(alg: &Algebra, n_vars: usize, c: Q) -> Self {
        Self::constant(n_vars, AElement::from_rational(alg, c)).into_real_valued()
    }

    pub fn from_terms(alg: &Algebra, n_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, AElement)>) -> Result<Self> {
        let mut p = Self::zero(alg, n_vars);
        for (exps, c) in terms {
            if exps.len() != n_vars {
                return Err(Error::DimensionMismatch { expected: n_vars, found: exps.len() });
            }
            if !same_algebra(c.algebra(), alg) {
                return Err(Error::AlgebraMismatch);
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn into_real_valued(mut self) -> Self {
        self.real_valued = true;
        self
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    /// Advisory check for real-valuedness: every value at the given points is a
    /// real multiple of the unit. A `true` result is evidence, not proof.
    pub fn real_at(&self, points: &[NearPoint]) -> Result<bool> {
        for p in points {
            if !self.eval(p)?.is_real() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, AElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> AElement {
        self.terms.get(&Monomial::one(self.n_vars)).cloned().unwrap_or_else(|| AElement::zero(&self.alg))
    }

    pub fn add_term(&mut self, m: Monomial, c: AElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, found: other.n_vars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.real_valued = false;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.alg, self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Module action of `A`: multiplies every coefficient by `a`.
    pub fn a_scale(&self, a: &AElement) -> Result<Self> {
        if !same_algebra(&self.alg, a.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = Self::zero(&self.alg, self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.alg, self.n_vars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.scale(c));
        }
        out
    }

    /// Formal partial derivative along `x_j^A` (0-based `j`).
    pub fn partial(&self, j: usize) -> Result<Self> {
        if j >= self.n_vars {
            return Err(Error::IndexOutOfRange { index: j, bound: self.n_vars });
        }
        let mut out = Self::zero(&self.alg, self.n_vars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(j) {
                out.add_term(dm, c.scale(&Q::from_integer(e.into())));
            }
        }
        Ok(out)
    }

    /// Value at a near point: substitute `x_j^A = xi_j` and multiply out in `A`.
    pub fn eval(&self, point: &NearPoint) -> Result<AElement> {
        if !same_algebra(&self.alg, point.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if point.dim() != self.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, found: point.dim() });
        }
        let max_exp = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<AElement>> = point
            .coords()
            .iter()
            .map(|x| {
                let mut ps = vec![AElement::one(&self.alg)];
                for k in 0..max_exp as usize {
                    let next = &ps[k] * x;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc = AElement::zero(&self.alg);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[j][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-expresses every coefficient in a permuted basis (see [`AElement::transport`]).
    pub fn transport(&self, target: &Algebra, perm: &[usize]) -> Result<Self> {
        let mut out = Self::zero(target, self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.transport(target, perm)?);
        }
        out.real_valued = self.real_valued;
        Ok(out)
    }
}

/// The prolongation `f^A`: substitute `x_j -> x_j^A`, with rational
/// coefficients embedded through the unit of `A`.
pub fn prolong(f: &Poly, alg: &Algebra) -> APoly {
    let mut out = APoly::zero(alg, f.n_vars());
    for (m, c) in f.terms() {
        out.add_term(m.clone(), AElement::from_rational(alg, c.clone()));
    }
    out
}

pub fn apoly_eval(phi: &APoly, xi: &NearPoint) -> Result<AElement> {
    phi.eval(xi)
}

/// `xi(f)` by the finite Taylor formula
/// `sum_beta d^beta f(x0) / beta! * (xi - x0)^beta` around the origin `x0` of
/// `xi`. Independent of substitution; used as an oracle for [`prolong`].
pub fn taylor_eval(f: &Poly, xi: &NearPoint) -> Result<AElement> {
    let n = f.n_vars();
    if xi.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: xi.dim() });
    }
    let alg = xi.algebra();
    let x0 = xi.origin();
    let offsets: Vec<AElement> = xi.coords().iter().map(AElement::nilpotent_part).collect();
    let mut acc = AElement::zero(alg);
    let mut beta = vec![0u32; n];
    loop {
        let coefficient = f.derivative(&beta)?.eval(&x0)?;
        if !coefficient.is_zero() {
            let denom = beta.iter().fold(Q::one(), |d, &b| d * factorial(b));
            let mut term = AElement::from_rational(alg, coefficient / denom);
            for (o, &b) in offsets.iter().zip(&beta) {
                term = &term * &o.pow(b);
            }
            acc = &acc + &term;
        }
        if !next_multi_index(&mut beta, f.degree()) {
            return Ok(acc);
        }
    }
}

/// Advances `beta` through all multi-indices of total degree `<= max`.
fn next_multi_index(beta: &mut [u32], max: u32) -> bool {
    for j in 0..beta.len() {
        beta[j] += 1;
        if beta.iter().sum::<u32>() <= max {
            return true;
        }
        beta[j] = 0;
    }
    false
}

impl PartialEq for APoly {
    fn eq(&self, other: &Self) -> bool {
        self.n_vars == other.n_vars && same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for APoly {}

impl Add for &APoly {
    type Output = APoly;
    fn add(self, rhs: &APoly) -> APoly {
        self.try_add(rhs).expect("incompatible A-polynomials")
    }
}

impl Sub for &APoly {
    type Output = APoly;
    fn sub(self, rhs: &APoly) -> APoly {
        self.try_add(&-rhs).expect("incompatible A-polynomials")
    }
}

impl Mul for &APoly {
    type Output = APoly;
    fn mul(self, rhs: &APoly) -> APoly {
        self.try_mul(rhs).expect("incompatible A-polynomials")
    }
}

impl Neg for &APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        APoly {
            alg: self.alg.clone(),
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            real_valued: self.real_valued,
        }
    }
}

owned_ops!(APoly);

/// Same layout as [`Poly`]; coefficients outside `R 1_A` are parenthesised
/// unless they are a single basis term.
impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let nonzero: Vec<(usize, &Q)> = c.coords().iter().enumerate().filter(|(_, v)| !num_traits::Zero::is_zero(*v)).collect();
            let (negative, body) = if nonzero.len() == 1 {
                let (idx, v) = nonzero[0];
                let mag = v.abs();
                let label = &self.alg.labels()[idx];
                let body = match (idx, mag.is_one(), m.is_one()) {
                    (0, _, true) => mag.to_string(),
                    (0, true, false) => String::new(),
                    (0, false, false) => format!("{mag}*"),
                    (_, true, true) => label.clone(),
                    (_, true, false) => format!("{label}*"),
                    (_, false, true) => format!("{mag}*{label}"),
                    (_, false, false) => format!("{mag}*{label}*"),
                };
                (v.is_negative(), body)
            } else if m.is_one() {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*"))
            };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            write!(f, "{body}")?;
            if !m.is_one() {
                m.write_vars(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "APoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::weil::WeilAlgebra;

    fn el(alg: &Algebra, coords: &[i64]) -> AElement {
        AElement::new(alg, coords.iter().map(|&c| q(c)).collect()).unwrap()
    }

    #[test]
    fn prolong_square_on_dual_numbers() {
        let d = WeilAlgebra::dual_numbers();
        let x = Poly::var(1, 0);
        let f = &x * &x;
        let xi = NearPoint::new(&d, vec![el(&d, &[2, 3])]).unwrap();
        assert_eq!(prolong(&f, &d).eval(&xi).unwrap(), el(&d, &[4, 12]));
    }

    #[test]
    fn prolong_cube_on_second_order() {
        let a = WeilAlgebra::univariate(3);
        let x = Poly::var(1, 0);
        let f = &(&x * &x) * &x;
        let xi = NearPoint::new(&a, vec![el(&a, &[1, 1, 0])]).unwrap();
        assert_eq!(prolong(&f, &a).eval(&xi).unwrap(), el(&a, &[1, 3, 3]));
    }

    #[test]
    fn prolong_one_is_unit() {
        let a = WeilAlgebra::jets(2, 2);
        assert_eq!(prolong(&Poly::one(2), &a), APoly::one(&a, 2));
    }

    #[test]
    fn eval_examples() {
        let d = WeilAlgebra::dual_numbers();
        let xi = NearPoint::new(&d, vec![el(&d, &[2, 3])]).unwrap();
        let a = el(&d, &[5, -1]);
        assert_eq!(APoly::constant(1, a.clone()).eval(&xi).unwrap(), a);
        assert_eq!(APoly::coordinate(&d, 1, 0).eval(&xi).unwrap(), el(&d, &[2, 3]));
        let eps = el(&d, &[0, 1]);
        let phi = APoly::coordinate(&d, 1, 0).a_scale(&eps).unwrap();
        let at = NearPoint::new(&d, vec![el(&d, &[1, 1])]).unwrap();
        assert_eq!(phi.eval(&at).unwrap(), eps);
        let wrong = NearPoint::new(&d, vec![el(&d, &[1, 1]), el(&d, &[0, 0])]).unwrap();
        assert!(phi.eval(&wrong).is_err());
    }

    #[test]
    fn scaling_examples() {
        let d = WeilAlgebra::dual_numbers();
        let phi = &APoly::coordinate(&d, 1, 0) + &APoly::one(&d, 1);
        assert!(phi.a_scale(&AElement::zero(&d)).unwrap().is_zero());
        let eps = el(&d, &[0, 1]);
        assert!(phi.a_scale(&eps).unwrap().a_scale(&eps).unwrap().is_zero());
    }

    #[test]
    fn partial_examples() {
        let d = WeilAlgebra::dual_numbers();
        let x = Poly::var(1, 0);
        assert_eq!(prolong(&(&x * &x), &d).partial(0).unwrap(), prolong(&x.scale(&q(2)), &d));
        assert!(APoly::one(&d, 1).partial(0).unwrap().is_zero());
        let xa = APoly::coordinate(&d, 1, 0);
        let eps = el(&d, &[0, 1]);
        let phi = (&xa * &xa).a_scale(&eps).unwrap();
        assert_eq!(phi.partial(0).unwrap(), xa.a_scale(&eps.scale(&q(2))).unwrap());
        assert_eq!(phi.partial(1).unwrap_err(), Error::IndexOutOfRange { index: 1, bound: 1 });
    }

    #[test]
    fn display() {
        let d = WeilAlgebra::dual_numbers();
        let xa = APoly::coordinate(&d, 2, 0);
        let ya = APoly::coordinate(&d, 2, 1);
        let eps = el(&d, &[0, 1]);
        let phi = &(&xa * &xa).a_scale(&eps).unwrap() - &ya.a_scale(&el(&d, &[2, -3])).unwrap();
        assert_eq!(phi.to_string(), "eps*x1^2 + (-2 + 3*eps)*x2");
        assert_eq!((-APoly::one(&d, 2)).to_string(), "-1");
    }
}
