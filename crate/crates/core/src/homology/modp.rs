//! Sparse column reduction of simplicial boundary matrices over GF(p).

use crate::complex::FaceList;
use crate::error::Result;
use crate::limits::Limits;

type Column = Vec<(u32, u64)>;

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and < 2^32 so products fit in u64.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Column of the boundary of `face` in the basis `lower`. The face with its
/// i-th vertex removed has coefficient `(-1)^i`.
fn boundary_column(face: &[u32], lower: &FaceList, p: u64, scratch: &mut Vec<u32>) -> Column {
    let mut col = Vec::with_capacity(face.len());
    for i in 0..face.len() {
        scratch.clear();
        scratch.extend(
            face.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v),
        );
        let row = lower.index_of(scratch).expect("boundary faces are faces") as u32;
        col.push((row, if i % 2 == 0 { 1 } else { p - 1 }));
    }
    col.sort_unstable_by_key(|&(r, _)| r);
    col
}

/// `a + factor * b` over GF(p); both sorted by row.
fn axpy(a: &[(u32, u64)], factor: u64, b: &[(u32, u64)], p: u64) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ra, va)), Some(&(rb, _))) if ra < rb => {
                out.push((ra, va));
                i += 1;
            }
            (Some(&(ra, va)), Some(&(rb, vb))) if ra == rb => {
                let v = (va + factor * vb) % p;
                if v != 0 {
                    out.push((ra, v));
                }
                i += 1;
                j += 1;
            }
            (_, Some(&(rb, vb))) => {
                out.push((rb, factor * vb % p));
                j += 1;
            }
            (Some(&(ra, va)), None) => {
                out.push((ra, va));
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Rank of the boundary map `upper -> lower` over GF(p).
///
/// Columns are reduced left to right in lexicographic face order; a column's
/// pivot is its largest nonzero row. Columns flagged in `cleared` are known to
/// reduce to zero (they were pivots of the next boundary map up) and are skipped.
/// Returns the rank and the set of pivot rows.
pub(crate) fn boundary_rank(
    upper: &FaceList,
    lower: &FaceList,
    p: u64,
    cleared: &[bool],
    limits: &Limits,
) -> Result<(usize, Vec<bool>)> {
    const NONE: u32 = u32::MAX;
    let mut pivot_of = vec![NONE; lower.len()];
    let mut reduced: Vec<Column> = Vec::new();
    let mut scratch = Vec::new();
    for (j, face) in upper.iter().enumerate() {
        if cleared.get(j).copied().unwrap_or(false) {
            continue;
        }
        if j % 1024 == 0 {
            limits.check_time()?;
        }
        let mut col = boundary_column(face, lower, p, &mut scratch);
        while let Some(&(low, value)) = col.last() {
            let k = pivot_of[low as usize];
            if k == NONE {
                // Normalise so the pivot entry is 1.
                let inv = inverse_mod(value, p);
                for e in col.iter_mut() {
                    e.1 = e.1 * inv % p;
                }
                pivot_of[low as usize] = reduced.len() as u32;
                reduced.push(col);
                break;
            }
            col = axpy(&col, p - value, &reduced[k as usize], p);
        }
    }
    let pivots = pivot_of.iter().map(|&k| k != NONE).collect();
    Ok((reduced.len(), pivots))
}
