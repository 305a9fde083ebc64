//! Exhaustive exact conversion between generator and halfspace
//! descriptions of polyhedral cones.
//!
//! Everything here is exponential in the number of generators and meant
//! for small ambient ranks. Facet normals are canonicalized as the unique
//! primitive representative orthogonal to the span equalities, which makes
//! the output independent of the generator order.

use itertools::Itertools;
use num::{Signed, Zero};

use crate::exactq::{dot_int, dot_int_rat, kernel_functionals, primitive, to_rational, Int, Rat};
use crate::{Error, Result};

/// Rank of the linear span of a set of rational vectors.
pub(crate) fn linear_rank(vecs: &[Vec<Rat>], n: usize) -> usize {
    n - kernel_functionals(vecs, n).len()
}

/// Halfspace description of `cone(gens)`: span equalities `e * x = 0` and
/// facet normals `f * x >= 0`, both primitive, canonical, and sorted.
pub(crate) fn cone_hrep(gens: &[Vec<Rat>], rank: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let equalities = kernel_functionals(gens, rank);
    let dim = rank - equalities.len();
    if dim == 0 {
        return (equalities, Vec::new());
    }
    let eq_rows: Vec<Vec<Rat>> = equalities.iter().map(|e| to_rational(e)).collect();

    let mut normals: Vec<Vec<Int>> = Vec::new();
    for subset in (0..gens.len()).combinations(dim - 1) {
        let mut rows: Vec<Vec<Rat>> = subset.iter().map(|&i| gens[i].clone()).collect();
        rows.extend(eq_rows.iter().cloned());
        let kernel = kernel_functionals(&rows, rank);
        if kernel.len() != 1 {
            continue;
        }
        let f = &kernel[0];
        let values: Vec<Rat> = gens.iter().map(|g| dot_int_rat(f, g)).collect();
        let oriented = if values.iter().all(|v| !v.is_negative()) {
            f.clone()
        } else if values.iter().all(|v| !v.is_positive()) {
            f.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let incident: Vec<Vec<Rat>> = gens
            .iter()
            .zip(&values)
            .filter(|(_, v)| v.is_zero())
            .map(|(g, _)| g.clone())
            .collect();
        if linear_rank(&incident, rank) != dim - 1 {
            continue;
        }
        normals.push(oriented);
    }
    normals.sort();
    normals.dedup();
    (equalities, normals)
}

/// Extreme rays of `{ v : e*v = 0, f*v >= 0 }`, primitive and sorted.
/// Errors if the region contains a line.
pub(crate) fn extreme_rays_from_hrep(
    equalities: &[Vec<Int>],
    normals: &[Vec<Int>],
    rank: usize,
) -> Result<Vec<Vec<Int>>> {
    let all_rows: Vec<Vec<Rat>> = equalities
        .iter()
        .chain(normals)
        .map(|v| to_rational(v))
        .collect();
    if linear_rank(&all_rows, rank) < rank {
        // Nontrivial lineality space.
        if rank > 0 {
            return Err(Error::NotPointed);
        }
    }

    let subspace_dim = rank - linear_rank(&equalities.iter().map(|e| to_rational(e)).collect::<Vec<_>>(), rank);
    if subspace_dim == 0 {
        return Ok(Vec::new());
    }

    let eq_rows: Vec<Vec<Rat>> = equalities.iter().map(|e| to_rational(e)).collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for subset in (0..normals.len()).combinations(subspace_dim - 1) {
        let mut rows = eq_rows.clone();
        rows.extend(subset.iter().map(|&i| to_rational(&normals[i])));
        let kernel = kernel_functionals(&rows, rank);
        if kernel.len() != 1 {
            continue;
        }
        let z = &kernel[0];
        let forward = normals.iter().all(|f| !dot_int(f, z).is_negative());
        let backward = normals.iter().all(|f| !dot_int(f, z).is_positive());
        let candidate = match (forward, backward) {
            (true, true) => return Err(Error::NotPointed),
            (true, false) => z.clone(),
            (false, true) => z.iter().map(|x| -x).collect(),
            (false, false) => continue,
        };
        // Extremality: the active constraints must cut the subspace down to
        // a single line.
        let mut active = eq_rows.clone();
        active.extend(
            normals
                .iter()
                .filter(|f| dot_int(f, &candidate).is_zero())
                .map(|f| to_rational(f)),
        );
        if linear_rank(&active, rank) != rank - 1 {
            continue;
        }
        rays.push(candidate);
    }
    rays.sort();
    rays.dedup();
    Ok(rays)
}

/// Determinant of a square rational matrix given by rows.
pub(crate) fn determinant(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = Rat::from_integer(Int::from(1));
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    det
}

/// Sum of integer vectors, reduced to the primitive vector on its ray.
pub(crate) fn primitive_sum(vecs: &[Vec<Int>], rank: usize) -> Result<Vec<Int>> {
    let mut sum = vec![Rat::zero(); rank];
    for v in vecs {
        for (s, x) in sum.iter_mut().zip(v) {
            *s += Rat::from_integer(x.clone());
        }
    }
    primitive(&sum)
}

