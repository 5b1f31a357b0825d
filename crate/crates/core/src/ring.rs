//! Minimal commutative-ring interface so forms and matrices can be written
//! once for base polynomials, A-polynomials and algebra elements.

use std::fmt;

use num_traits::Zero;

use crate::error::Result;
use crate::poly::Poly;
use crate::smooth::APoly;
use crate::weil::AElement;

pub trait Ring: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Inverse when `self` is an invertible constant.
    fn constant_inverse(&self) -> Option<Self>;
}

/// A ring of functions on `R^n` with formal partial derivatives.
pub trait DiffRing: Ring {
    fn n_vars(&self) -> usize;
    fn partial(&self, j: usize) -> Result<Self>;
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.n_vars())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.n_vars())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn constant_inverse(&self) -> Option<Self> {
        let c = self.constant_term();
        (self.is_constant() && !c.is_zero()).then(|| Poly::constant(self.n_vars(), c.recip()))
    }
}

impl DiffRing for Poly {
    fn n_vars(&self) -> usize {
        Poly::n_vars(self)
    }
    fn partial(&self, j: usize) -> Result<Self> {
        Poly::partial(self, j)
    }
}

impl Ring for APoly {
    fn zero_like(&self) -> Self {
        APoly::zero(self.algebra(), self.n_vars())
    }
    fn one_like(&self) -> Self {
        APoly::one(self.algebra(), self.n_vars())
    }
    fn is_zero(&self) -> bool {
        APoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn constant_inverse(&self) -> Option<Self> {
        if !self.is_constant() {
            return None;
        }
        let inv = self.constant_term().invert().ok()?;
        Some(APoly::constant(self.n_vars(), inv))
    }
}

impl DiffRing for APoly {
    fn n_vars(&self) -> usize {
        APoly::n_vars(self)
    }
    fn partial(&self, j: usize) -> Result<Self> {
        APoly::partial(self, j)
    }
}

impl Ring for AElement {
    fn zero_like(&self) -> Self {
        AElement::zero(self.algebra())
    }
    fn one_like(&self) -> Self {
        AElement::one(self.algebra())
    }
    fn is_zero(&self) -> bool {
        AElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn constant_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
}

/// Determinant by cofactor expansion along the first row. Matrices here are at
/// most 6x6.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> Option<R> {
    let n = m.len();
    let proto = m.first()?.first()?;
    if n == 1 {
        return Some(m[0][0].clone());
    }
    let mut acc = proto.zero_like();
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor = minor(m, 0, c);
        let term = entry.times(&determinant(&minor)?);
        acc = if c % 2 == 0 { acc.plus(&term) } else { acc.plus(&term.negated()) };
    }
    Some(acc)
}

fn minor<R: Ring>(m: &[Vec<R>], row: usize, col: usize) -> Vec<Vec<R>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
        .collect()
}

/// Inverse `adj(m) / det(m)` when the determinant is an invertible constant.
#[allow(clippy::needless_range_loop)]
pub fn inverse_if_unimodular<R: Ring>(m: &[Vec<R>]) -> Option<Vec<Vec<R>>> {
    let n = m.len();
    let det_inv = determinant(m)?.constant_inverse()?;
    if n == 1 {
        return Some(vec![vec![det_inv]]);
    }
    let mut inv = vec![vec![det_inv.zero_like(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let cof = determinant(&minor(m, i, j))?;
            let cof = if (i + j) % 2 == 0 { cof } else { cof.negated() };
            inv[j][i] = cof.times(&det_inv);
        }
    }
    Some(inv)
}

pub fn mat_mul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].zero_like();
                    for (x, brow) in row.iter().zip(b) {
                        acc = acc.plus(&x.times(&brow[j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn unimodular_polynomial_inverse() {
        let one = Poly::one(2);
        let x = Poly::var(2, 0);
        let zero = Poly::zero(2);
        let m = vec![vec![one.clone(), x.clone()], vec![zero.clone(), one.clone()]];
        let inv = inverse_if_unimodular(&m).unwrap();
        assert_eq!(inv, vec![vec![one.clone(), -&x], vec![zero.clone(), one.clone()]]);
        assert_eq!(mat_mul(&m, &inv), vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]);
        let singular = vec![vec![x.clone(), zero.clone()], vec![zero, one]];
        assert!(inverse_if_unimodular(&singular).is_none());
    }

    #[test]
    fn determinant_three_by_three() {
        let c = |v: i64| Poly::constant(1, q(v));
        let m = vec![vec![c(2), c(0), c(1)], vec![c(1), c(3), c(2)], vec![c(1), c(1), c(2)]];
        assert_eq!(determinant(&m).unwrap(), c(6));
    }
}
