#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lexind_core::spheres::{Component, SphereSpace};
use lexind_core::Graph;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type FaceSet = BTreeSet<Vec<u32>>;

/// Independent sets of `g` by scanning every vertex subset, empty set excluded.
pub fn brute_faces(g: &Graph) -> FaceSet {
    let n = g.vertex_count();
    assert!(n <= 20, "subset oracle is for small graphs");
    let edges = g.edges();
    let mut out = FaceSet::new();
    for mask in 1u32..(1 << n) {
        if edges
            .iter()
            .all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0)
        {
            out.insert((0..n as u32).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    out
}

pub fn nonempty(faces: FaceSet) -> FaceSet {
    faces.into_iter().filter(|f| !f.is_empty()).collect()
}

/// Reduced Betti numbers over GF(2) by dense elimination on bit rows.
/// `faces` lists nonempty faces; an empty list means the void complex.
pub fn dense_gf2_betti(faces: &FaceSet) -> BTreeMap<i32, u64> {
    if faces.is_empty() {
        return BTreeMap::from([(-1, 1)]);
    }
    let mut by_dim: BTreeMap<i32, Vec<&Vec<u32>>> = BTreeMap::new();
    by_dim.entry(-1).or_default();
    for f in faces {
        by_dim.entry(f.len() as i32 - 1).or_default().push(f);
    }
    let top = *by_dim.keys().last().unwrap();
    let count = |d: i32| {
        if d == -1 {
            1
        } else {
            by_dim.get(&d).map_or(0, Vec::len)
        }
    };
    let mut rank = BTreeMap::new();
    for d in 0..=top {
        let lower: BTreeMap<Vec<u32>, usize> = if d == 0 {
            BTreeMap::from([(Vec::new(), 0)])
        } else {
            by_dim[&(d - 1)]
                .iter()
                .enumerate()
                .map(|(i, f)| ((*f).clone(), i))
                .collect()
        };
        let words = lower.len().div_ceil(64);
        let mut rows: Vec<Vec<u64>> = by_dim[&d]
            .iter()
            .map(|f| {
                let mut row = vec![0u64; words];
                for skip in 0..f.len() {
                    let face: Vec<u32> = f
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let j = lower[&face];
                    row[j / 64] ^= 1 << (j % 64);
                }
                row
            })
            .collect();
        rank.insert(d, gf2_rank(&mut rows));
    }
    let mut out = BTreeMap::new();
    for d in -1..=top {
        let r_out = if d >= 0 { rank[&d] } else { 0 };
        let r_in = rank.get(&(d + 1)).copied().unwrap_or(0);
        let b = count(d) as u64 - r_out as u64 - r_in as u64;
        if b > 0 {
            out.insert(d, b);
        }
    }
    out
}

fn gf2_rank(rows: &mut [Vec<u64>]) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len() * 64);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c / 64] >> (c % 64) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c / 64] >> (c % 64) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn ranks_u64(b: &lexind_core::BettiVector) -> BTreeMap<i32, u64> {
    b.ranks().keys().map(|&d| (d, b.get_u64(d))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random canonical space: empty about one time in seven, otherwise one to
/// three components of small wedges.
pub fn random_space(rng: &mut ChaCha8Rng) -> SphereSpace {
    if rng.random_range(0..7) == 0 {
        return SphereSpace::empty();
    }
    let comps = (0..rng.random_range(1..4))
        .map(|_| {
            Component::wedge((0..rng.random_range(0..3)).map(|_| {
                (
                    rng.random_range(1..5u32),
                    BigUint::from(rng.random_range(1..4u32)),
                )
            }))
        })
        .collect();
    SphereSpace::from_components(comps)
}

/// `{d: count}` face counts of a face set, with the empty face in dimension -1.
pub fn census_of(faces: &FaceSet) -> BTreeMap<i32, u64> {
    let mut out = BTreeMap::new();
    if !faces.is_empty() {
        out.insert(-1, 1);
    }
    for f in faces {
        *out.entry(f.len() as i32 - 1).or_insert(0) += 1;
    }
    out
}
