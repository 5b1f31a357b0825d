use super::algebra::Algebra;
use super::element::AElement;
use super::linalg;
use crate::error::{Error, Result};
use crate::rational::Q;

/// Dense square or rectangular matrix of algebra elements, row-major.
pub type AMatrix = Vec<Vec<AElement>>;

pub fn identity(alg: &Algebra, n: usize) -> AMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { AElement::one(alg) } else { AElement::zero(alg) }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<AElement>], b: &[Vec<AElement>]) -> Result<AMatrix> {
    let inner = b.len();
    if a.iter().any(|row| row.len() != inner) {
        return Err(Error::DimensionMismatch { expected: inner, found: a.first().map_or(0, Vec::len) });
    }
    let cols = b.first().map_or(0, Vec::len);
    let alg = a
        .first()
        .and_then(|r| r.first())
        .or_else(|| b.first().and_then(|r| r.first()))
        .map(|e| e.algebra().clone());
    let Some(alg) = alg else {
        return Ok(vec![vec![]; a.len()]);
    };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).try_fold(AElement::zero(&alg), |acc, (x, brow)| {
                        let p = x.try_mul(&brow[j])?;
                        acc.try_add(&p)
                    })
                })
                .collect()
        })
        .collect()
}

pub fn augmentation_matrix(m: &[Vec<AElement>]) -> Vec<Vec<Q>> {
    m.iter().map(|row| row.iter().map(AElement::augmentation).collect()).collect()
}

/// Exact inverse of a square matrix over a Weil algebra. Writes `M = M0 + N`
/// with `M0` the real (augmentation) part and `N` nilpotent entrywise, and
/// sums the terminating series `sum_k (-M0^-1 N)^k M0^-1`.
pub fn nil_matrix_invert(m: &[Vec<AElement>]) -> Result<AMatrix> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|row| row.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let alg = m[0][0].algebra().clone();
    let m0_inv = linalg::invert(&augmentation_matrix(m)).ok_or(Error::SingularMatrix)?;
    let m0_inv: AMatrix = m0_inv
        .into_iter()
        .map(|row| row.into_iter().map(|q| AElement::from_rational(&alg, q)).collect())
        .collect();
    let nil: AMatrix = m.iter().map(|row| row.iter().map(AElement::nilpotent_part).collect()).collect();
    let step: AMatrix = mat_mul(&m0_inv, &nil)?
        .into_iter()
        .map(|row| row.into_iter().map(|e| -e).collect())
        .collect();

    let mut term = identity(&alg, n);
    let mut series = term.clone();
    // Every entry of step^k is a sum of k-fold products from m, so k = h + 1 vanishes.
    for _ in 0..alg.height() {
        term = mat_mul(&term, &step)?;
        if term.iter().flatten().all(AElement::is_zero) {
            break;
        }
        series = add(&series, &term)?;
    }
    let inverse = mat_mul(&series, &m0_inv)?;

    let id = identity(&alg, n);
    if mat_mul(m, &inverse)? != id || mat_mul(&inverse, m)? != id {
        return Err(Error::SingularMatrix);
    }
    Ok(inverse)
}

fn add(a: &[Vec<AElement>], b: &[Vec<AElement>]) -> Result<AMatrix> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.try_add(y)).collect())
        .collect()
}
