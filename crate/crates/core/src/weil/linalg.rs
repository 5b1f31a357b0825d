//! Dense linear algebra over exact rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Row-reduces `rows` and returns a basis of their span (reduced echelon form).
pub fn row_basis(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    if rows.is_empty() {
        return rows;
    }
    let width = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].recip();
        for c in rows[pivot_row].iter_mut() {
            *c *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, p) in row.iter_mut().zip(&pivot) {
                *c -= &factor * p;
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    row_basis(rows).len()
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let found = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, found);
        let inv = aug[col][col].recip();
        for c in aug[col].iter_mut() {
            *c *= &inv;
        }
        let pivot = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, p) in row.iter_mut().zip(&pivot) {
                *c -= &factor * p;
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn inverse_of_two_by_two() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn rank_detects_dependence() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), frac(1, 2)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
    }
}
