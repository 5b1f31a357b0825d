//! Polynomials with rational coefficients on `R^n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Exponent multi-index, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `d/dx_j` of the monomial: the exponent it came down with, and the reduced monomial.
    pub fn derivative(&self, j: usize) -> Option<(u32, Monomial)> {
        let e = self.0[j];
        if e == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[j] -= 1;
        Some((e, Monomial(out)))
    }

    pub(crate) fn write_vars(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial on `R^n` with exact rational coefficients. Stands in for a
/// smooth function on the base manifold.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n_vars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Poly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Q) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial::one(n_vars), c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, Q::one())
    }

    /// The coordinate function `x_j` (0-based).
    pub fn var(n_vars: usize, j: usize) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial::var(n_vars, j), Q::one());
        p
    }

    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (exps, c) in terms {
            if exps.len() != n_vars {
                return Err(Error::DimensionMismatch { expected: n_vars, found: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one(self.n_vars)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Poly { n_vars: self.n_vars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Formal partial derivative along `x_j` (0-based).
    pub fn partial(&self, j: usize) -> Result<Self> {
        if j >= self.n_vars {
            return Err(Error::IndexOutOfRange { index: j, bound: self.n_vars });
        }
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(j) {
                out.add_term(dm, c * Q::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Iterated partial derivative `d^beta`.
    pub fn derivative(&self, beta: &[u32]) -> Result<Self> {
        let mut p = self.clone();
        for (j, &k) in beta.iter().enumerate() {
            for _ in 0..k {
                p = p.partial(j)?;
            }
        }
        Ok(p)
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, found: point.len() });
        }
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n_vars, other.n_vars, "polynomials live on different dimensions");
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n_vars: self.n_vars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let mut out = Poly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($ty:ty) => {
        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(Poly);

/// Terms in decreasing graded-lex order: `3/2*x1^2*x2 - x1 + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                m.write_vars(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
