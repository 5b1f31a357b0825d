use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::rational::Q;

/// An element of a Weil algebra, as coordinates in the algebra's basis.
#[derive(Clone)]
pub struct AElement {
    alg: Algebra,
    coords: Vec<Q>,
}

impl AElement {
    pub fn new(alg: &Algebra, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), found: coords.len() });
        }
        Ok(AElement { alg: alg.clone(), coords })
    }

    pub fn zero(alg: &Algebra) -> Self {
        AElement { alg: alg.clone(), coords: vec![Q::zero(); alg.dim()] }
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::from_rational(alg, Q::one())
    }

    pub fn from_rational(alg: &Algebra, value: Q) -> Self {
        let mut e = Self::zero(alg);
        e.coords[0] = value;
        e
    }

    pub fn basis(alg: &Algebra, index: usize) -> Result<Self> {
        if index >= alg.dim() {
            return Err(Error::IndexOutOfRange { index, bound: alg.dim() });
        }
        let mut e = Self::zero(alg);
        e.coords[index] = Q::one();
        Ok(e)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// Coordinate along basis element `index` (the dual-basis functional).
    pub fn coord(&self, index: usize) -> &Q {
        &self.coords[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// True when the element is a rational multiple of the unit.
    pub fn is_real(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Image under the quotient map `A -> A/m = R`.
    pub fn augmentation(&self) -> Q {
        self.coords[0].clone()
    }

    /// The component in the maximal ideal: `a - augmentation(a) * 1`.
    pub fn nilpotent_part(&self) -> Self {
        let mut n = self.clone();
        n.coords[0] = Q::zero();
        n
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(AElement { alg: self.alg.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(AElement { alg: self.alg.clone(), coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(AElement { alg: self.alg.clone(), coords: self.alg.mul_coords(&self.coords, &other.coords) })
    }

    pub fn scale(&self, factor: &Q) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.alg);
        }
        AElement { alg: self.alg.clone(), coords: self.coords.iter().map(|c| c * factor).collect() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via the terminating geometric series
    /// `l^-1 * sum_k (-n/l)^k` where `self = l + n`, `n` nilpotent.
    pub fn invert(&self) -> Result<Self> {
        let lambda = self.augmentation();
        if lambda.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_lambda = lambda.recip();
        let step = self.nilpotent_part().scale(&(-inv_lambda.clone()));
        let mut term = Self::one(&self.alg);
        let mut sum = term.clone();
        for _ in 0..self.alg.height() {
            term = &term * &step;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum.scale(&inv_lambda))
    }

    /// Re-expresses this element in `target`, where basis element `i` of
    /// `target` is basis element `perm[i]` of the current algebra.
    pub fn transport(&self, target: &Algebra, perm: &[usize]) -> Result<Self> {
        let coords = perm.iter().map(|&old| self.coords[old].clone()).collect();
        AElement::new(target, coords)
    }
}

impl PartialEq for AElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_algebra(&self.alg, &other.alg)
    }
}

impl Eq for AElement {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&AElement> for &AElement {
            type Output = AElement;
            fn $method(self, rhs: &AElement) -> AElement {
                self.$checked(rhs).expect("Weil algebra mismatch")
            }
        }
        impl $trait<AElement> for AElement {
            type Output = AElement;
            fn $method(self, rhs: AElement) -> AElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AElement {
    type Output = AElement;
    fn neg(self) -> AElement {
        AElement { alg: self.alg.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for AElement {
    type Output = AElement;
    fn neg(self) -> AElement {
        -&self
    }
}

/// Writes `c*label` terms in basis order, e.g. `2 - 3/4*eps + eps^2`.
impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let label = &self.alg.labels()[i];
            if i == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{magnitude}*{label}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AElement({self})")
    }
}
