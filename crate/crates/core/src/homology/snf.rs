//! Integral homology via dense Smith normal form. Slow; meant for small
//! complexes where a torsion question needs an exact answer.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::BettiVector;
use crate::complex::{FaceList, SimplicialComplex};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Default bound on `rows * cols` of any dense boundary matrix.
pub const DEFAULT_MAX_DENSE_ENTRIES: u64 = 4_000_000;

/// Reduced integral homology: free ranks plus torsion coefficients per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralHomology {
    pub free: BettiVector,
    pub torsion: BTreeMap<i32, Vec<BigUint>>,
}

impl IntegralHomology {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.values().all(Vec::is_empty)
    }
}

pub fn integral_homology(
    k: &SimplicialComplex,
    limits: &Limits,
    max_dense_entries: u64,
) -> Result<IntegralHomology> {
    let census = k.face_census(limits)?;
    let Some(top) = census.top_dimension() else {
        return Ok(IntegralHomology {
            free: BettiVector::void("Z"),
            torsion: BTreeMap::new(),
        });
    };
    // factors[d] = nonzero invariant factors of the boundary out of dimension d.
    let mut factors: BTreeMap<i32, Vec<BigUint>> = BTreeMap::new();
    let mut upper = k.faces_of_dimension(top, limits)?;
    for d in (0..=top).rev() {
        let lower = k.faces_of_dimension(d - 1, limits)?;
        let entries = upper.len() as u64 * lower.len() as u64;
        if entries > max_dense_entries {
            return Err(Error::ResourceLimit {
                what: format!("dense boundary matrix in dimension {d} has {entries} entries"),
                bound: max_dense_entries,
            });
        }
        factors.insert(d, invariant_factors(dense_boundary(&upper, &lower)));
        limits.check_time()?;
        upper = lower;
    }
    let rank = |d: i32| factors.get(&d).map_or(0, Vec::len) as u64;
    let mut ranks = Vec::new();
    let mut torsion = BTreeMap::new();
    for d in -1..=top {
        ranks.push((d, census.get(d) - rank(d) - rank(d + 1)));
        let tors: Vec<BigUint> = factors
            .get(&(d + 1))
            .map(|f| {
                f.iter()
                    .filter(|x| **x > BigUint::from(1u32))
                    .cloned()
                    .collect()
            })
            .unwrap_or_default();
        if !tors.is_empty() {
            torsion.insert(d, tors);
        }
    }
    Ok(IntegralHomology {
        free: BettiVector::from_counts("Z", ranks),
        torsion,
    })
}

fn dense_boundary(upper: &FaceList, lower: &FaceList) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::zero(); upper.len()]; lower.len()];
    let mut scratch = Vec::new();
    for (j, face) in upper.iter().enumerate() {
        for i in 0..face.len() {
            scratch.clear();
            scratch.extend(
                face.iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i)
                    .map(|(_, &v)| v),
            );
            let row = lower.index_of(&scratch).expect("boundary faces are faces");
            m[row][j] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Nonzero diagonal of the Smith normal form, as absolute values.
pub(crate) fn invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                let (upper, lower) = a.split_at_mut(i);
                for (x, p) in lower[0][t..].iter_mut().zip(&upper[t][t..]) {
                    *x -= &q * p;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let (upper, lower) = a.split_at_mut(i);
                    for (x, y) in upper[t][t..].iter_mut().zip(&lower[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs().to_biguint().expect("absolute value"));
        t += 1;
    }
    out
}
