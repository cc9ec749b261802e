//! Exact linear algebra over cyclotomic fields and over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

fn echelon(m: &mut [Vec<CycloNum>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].invert().expect("pivot is nonzero");
        let row: Vec<CycloNum> = m[r].iter().map(|x| x * &inv).collect();
        m[r] = row;
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let len = m[i].len();
                for j in c..len {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of a matrix with cyclotomic entries.
pub fn rank(a: &[Vec<CycloNum>]) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    echelon(&mut m, cols).len()
}

/// Unique solution x of `a · x = b`, where `a` has one row per equation.
///
/// Fails when the system is inconsistent or has more than one solution.
pub fn solve(a: &[Vec<CycloNum>], b: &[CycloNum]) -> Result<Vec<CycloNum>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<CycloNum>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m, n + 1);
    if pivots.contains(&n) {
        return Err(Error::Singular("inconsistent system".into()));
    }
    if pivots.len() < n {
        return Err(Error::Singular(format!(
            "rank {} below {} unknowns",
            pivots.len(),
            n
        )));
    }
    Ok((0..n).map(|i| m[i][n].clone()).collect())
}

/// A Z-basis of the left kernel { x ∈ Z^r : x · m = 0 } of an integer matrix.
///
/// Row operations on [m | I] are unimodular, so the identity parts of the
/// rows whose m part vanishes span the kernel over Z.
pub fn integer_left_kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<(Vec<BigInt>, Vec<BigInt>)> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut id = vec![BigInt::zero(); rows];
            id[i] = 1.into();
            (r.clone(), id)
        })
        .collect();
    let mut active: Vec<usize> = (0..rows).collect();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&i| !aug[i].0[c].is_zero())
                .collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| aug[i].0[c].abs()).expect("nonempty");
            if nz.len() == 1 {
                active.retain(|&i| i != piv);
                break;
            }
            let (prow, pid) = aug[piv].clone();
            for &i in nz.iter().filter(|&&i| i != piv) {
                let q = aug[i].0[c].div_floor(&prow[c]);
                let (row, id) = &mut aug[i];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &q * y;
                }
                for (x, y) in id.iter_mut().zip(&pid) {
                    *x -= &q * y;
                }
            }
        }
    }
    active.into_iter().map(|i| aug[i].1.clone()).collect()
}
