use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use super::SphereSpace;
use crate::error::{Error, Result};

/// One summand family of the closed form for paths: `count` copies of `S^d`
/// contributed by `p` join factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClosedFormTerm {
    pub p: u32,
    pub d: u32,
    #[serde(serialize_with = "count_json")]
    pub count: BigUint,
}

fn count_json<S: serde::Serializer>(c: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::homology::rank_json(c).serialize(s)
}

/// `(l choose r)`, zero when `r < 0` or `l < r`.
fn binomial(l: i64, r: i64) -> BigUint {
    if r < 0 || l < r {
        return BigUint::zero();
    }
    let r = r.min(l - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= BigUint::from((l - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// `N(p, d) = n^p · C(d - pk + 1, p) · C(p + 1, 3(d - pk + 1) - m)`.
pub fn closed_form_count(m: u32, n: u64, k: u32, p: u32, d: u32) -> BigUint {
    let e = d as i64 - (p as i64) * (k as i64) + 1;
    let c1 = binomial(e, p as i64);
    if c1.is_zero() {
        return c1;
    }
    let c2 = binomial(p as i64 + 1, 3 * e - m as i64);
    Pow::pow(BigUint::from(n), p) * c1 * c2
}

fn check_line_args(m: u32, n: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("path length m must be at least 1"));
    }
    if n == 0 {
        return Err(Error::invalid("wedge multiplicity n must be at least 1"));
    }
    Ok(())
}

/// All nonzero terms `N(p, d)` for `0 <= p <= (m+1)/2`, ordered by `(p, d)`.
pub fn closed_form_terms(m: u32, n: u64, k: u32) -> Result<Vec<ClosedFormTerm>> {
    check_line_args(m, n)?;
    let mut terms = Vec::new();
    for p in 0..=m.div_ceil(2) {
        let top = p * k + (m + p) / 3 + 1;
        for d in 0..=top {
            let count = closed_form_count(m, n, k, p, d);
            if !count.is_zero() {
                terms.push(ClosedFormTerm { p, d, count });
            }
        }
    }
    Ok(terms)
}

/// The single wedge `X_{m,n,k}` with `N(p, d)` copies of `S^d` summed over `p`.
pub fn x_space(m: u32, n: u64, k: u32) -> Result<SphereSpace> {
    let mut dims: BTreeMap<u32, BigUint> = BTreeMap::new();
    for t in closed_form_terms(m, n, k)? {
        *dims.entry(t.d).or_default() += t.count;
    }
    SphereSpace::from_dimension_counts(dims)
}

/// Homotopy type of `I(L_m ∘ H)` when `I(H) ≃ ∨_n S^k`, with the terms of
/// the general formula.
pub fn closed_form_l(m: u32, n: u64, k: u32) -> Result<(SphereSpace, Vec<ClosedFormTerm>)> {
    let terms = closed_form_terms(m, n, k)?;
    let w = SphereSpace::wedge_of_spheres(n, k);
    let space = match m {
        1 => w,
        2 => w.disjoint_union(&w),
        3 => w.disjoint_union(&SphereSpace::wedge_of_spheres(
            BigUint::from(n).pow(2u32),
            2 * k + 1,
        )),
        _ => x_space(m, n, k)?,
    };
    Ok((space, terms))
}

/// `ΣA ∨ (∨_n Σ^{k+1} A) ∨ (∨_n Σ^{k+1} B)`: the three-step recurrence shared by
/// paths and by `X_{m,n,k}`, with `A` the value at `m` and `B` at `m + 1`.
pub fn line_recursion_step(
    a: &SphereSpace,
    b: &SphereSpace,
    n: u64,
    k: u32,
) -> Result<SphereSpace> {
    let sa = a.suspend_times(k + 1).wedge_power(n)?;
    let sb = b.suspend_times(k + 1).wedge_power(n)?;
    a.suspend().wedge(&sa)?.wedge(&sb)
}

/// `I(C_n)`: `∨_2 S^{j-1}`, `S^{j-1}` or `S^j` for `n = 3j, 3j+1, 3j+2`.
pub fn cycle_homotopy(n: usize) -> Result<SphereSpace> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let j = (n / 3) as u32;
    Ok(match n % 3 {
        0 => SphereSpace::wedge_of_spheres(2u32, j - 1),
        1 => SphereSpace::sphere(j - 1),
        _ => SphereSpace::sphere(j),
    })
}

/// `I(K_j)` is `j` points, i.e. `∨_{j-1} S^0`.
pub fn complete_homotopy(j: usize) -> Result<SphereSpace> {
    if j == 0 {
        return Err(Error::invalid("complete graph needs at least 1 vertex"));
    }
    Ok(SphereSpace::wedge_of_spheres(BigUint::from(j - 1), 0))
}

/// Homological connectivity of `I(L_m ∘ H)` for `I(H) ≃ ∨_n S^k`, `n >= 1`.
pub fn line_connectivity(m: u32, k: u32) -> Result<i64> {
    if m == 0 {
        return Err(Error::invalid("path length m must be at least 1"));
    }
    let l = (m / 3) as i64;
    Ok(match m % 3 {
        0 => l - 2,
        1 => k as i64 + l - 1,
        _ => l - 1,
    })
}
