//! Polytopes and polyhedra in vertex and halfspace form.
//!
//! Facet enumeration goes through the homogenization cone: a polyhedron
//! `conv(V) + cone(R)` in rank `r` becomes the cone over `{(v,1)} ∪ {(r,0)}`
//! in rank `r+1`, whose facet normals `(a,-b)` dehomogenize to halfspaces
//! `a*x <= b`. Cone facets incident to no lifted point correspond to the
//! empty face and are dropped.

use num::{One, Signed, Zero};

use crate::exactq::{
    dot_int_rat, fm_feasible, to_rational, Int, LinSystem, Rat,
};
use crate::hrep::cone_hrep;
use crate::{Error, Result};

/// A closed halfspace `normal * x <= offset` with primitive integer data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<Int>,
    pub offset: Int,
}

/// Irredundant halfspace description, with explicit affine-hull equalities
/// `normal * x = offset` when the polyhedron is not full-dimensional.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HPolyhedron {
    pub halfspaces: Vec<HalfSpace>,
    pub equalities: Vec<(Vec<Int>, Int)>,
}

impl HPolyhedron {
    /// Exact membership test.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities
            .iter()
            .all(|(a, b)| dot_int_rat(a, x) == Rat::from_integer(b.clone()))
            && self
                .halfspaces
                .iter()
                .all(|h| dot_int_rat(&h.normal, x) <= Rat::from_integer(h.offset.clone()))
    }

    pub fn contains_int(&self, x: &[Int]) -> bool {
        self.contains(&to_rational(x))
    }
}

/// A polytope by its canonical vertex list (lexicographically sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    pub vertices: Vec<Vec<Rat>>,
    pub rank: usize,
}

impl VPolytope {
    /// Canonicalizes an arbitrary point set down to its vertices.
    pub fn from_points(points: &[Vec<Rat>]) -> Result<VPolytope> {
        let rank = check_points(points)?;
        Ok(VPolytope {
            vertices: vertices_of(points, &[]),
            rank,
        })
    }
}

fn check_points(points: &[Vec<Rat>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::Internal("empty point set".into()));
    };
    let rank = first.len();
    for p in points {
        if p.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: p.len(),
            });
        }
    }
    Ok(rank)
}

/// Irredundant facet description of `conv(points)`.
pub fn facets(points: &[Vec<Rat>]) -> Result<HPolyhedron> {
    check_points(points)?;
    Ok(facets_of_polyhedron(points, &[]))
}

/// Irredundant facet description of `conv(points) + cone(rays)`.
pub fn facets_of_polyhedron(points: &[Vec<Rat>], rays: &[Vec<Rat>]) -> HPolyhedron {
    let rank = points[0].len();
    let mut gens: Vec<Vec<Rat>> = Vec::with_capacity(points.len() + rays.len());
    for p in points {
        let mut g = p.clone();
        g.push(Rat::one());
        gens.push(g);
    }
    for r in rays {
        let mut g = r.clone();
        g.push(Rat::zero());
        gens.push(g);
    }

    let (eqs, normals) = cone_hrep(&gens, rank + 1);

    let mut equalities: Vec<(Vec<Int>, Int)> = eqs
        .into_iter()
        .map(|e| {
            let offset = -e[rank].clone();
            (e[..rank].to_vec(), offset)
        })
        .collect();
    equalities.sort();

    let mut halfspaces: Vec<HalfSpace> = Vec::new();
    for f in normals {
        // Facet normal f satisfies f*g >= 0 on generators; the halfspace is
        // (-f_head) * x <= f_last.
        let normal: Vec<Int> = f[..rank].iter().map(|x| -x).collect();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let incident_point = points.iter().any(|p| {
            let mut g = p.clone();
            g.push(Rat::one());
            dot_int_rat(&f, &g).is_zero()
        });
        if !incident_point {
            continue;
        }
        halfspaces.push(HalfSpace {
            normal,
            offset: f[rank].clone(),
        });
    }
    halfspaces.sort();

    HPolyhedron {
        halfspaces,
        equalities,
    }
}

/// The vertices of `conv(points) + cone(rays)`: points not expressible as a
/// convex combination of the others plus a recession direction. Checked by
/// exact feasibility, returned sorted and deduplicated.
pub fn vertices_of(points: &[Vec<Rat>], rays: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rank = points[0].len();
    let mut unique: Vec<Vec<Rat>> = points.to_vec();
    unique.sort();
    unique.dedup();

    let mut out = Vec::new();
    for (i, p) in unique.iter().enumerate() {
        let others: Vec<&Vec<Rat>> = unique
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q)
            .collect();
        if others.is_empty() && rays.is_empty() {
            out.push(p.clone());
            continue;
        }
        let nvars = others.len() + rays.len();
        let mut sys = LinSystem::new(nvars);
        for coord in 0..rank {
            let mut row: Vec<Rat> = Vec::with_capacity(nvars);
            for q in &others {
                row.push(q[coord].clone());
            }
            for r in rays {
                row.push(r[coord].clone());
            }
            sys.equalities.push((row, p[coord].clone()));
        }
        let mut row = vec![Rat::zero(); nvars];
        for entry in row.iter_mut().take(others.len()) {
            *entry = Rat::one();
        }
        sys.equalities.push((row, Rat::one()));
        for v in 0..nvars {
            let mut row = vec![Rat::zero(); nvars];
            row[v] = -Rat::one();
            sys.weak.push((row, Rat::zero()));
        }
        if fm_feasible(&sys).expect("well-formed system").is_none() {
            out.push(p.clone());
        }
    }
    out
}

/// Cells of the coherent subdivision induced by the last coordinate.
///
/// Input points live in rank `d+1` with the last coordinate a lifting
/// height. Returns, for each facet of the hull with strictly positive last
/// normal coordinate, the indices of the input points on that facet. A lift
/// that is affine over its shadow (all heights equal, for instance) yields
/// the single cell of all points.
pub fn upper_hull(points: &[Vec<Rat>]) -> Result<Vec<Vec<usize>>> {
    let rank = check_points(points)?;
    if rank < 2 {
        return Err(Error::DegenerateLift);
    }
    let hull = facets_of_polyhedron(points, &[]);

    // Heights affine over the shadow (all heights equal, in particular):
    // the whole configuration is one cell.
    let affine_lift = hull
        .equalities
        .iter()
        .any(|(a, _)| !a[rank - 1].is_zero());
    if affine_lift {
        return Ok(vec![(0..points.len()).collect()]);
    }

    // Not a graph over the shadow, and the hull is too small to subdivide a
    // d-dimensional shadow, d = rank - 1.
    let dim = rank - hull.equalities.len();
    if dim < rank - 1 {
        return Err(Error::DegenerateLift);
    }

    let mut cells: Vec<Vec<usize>> = Vec::new();
    for h in &hull.halfspaces {
        if !h.normal[rank - 1].is_positive() {
            continue;
        }
        let cell: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| dot_int_rat(&h.normal, p) == Rat::from_integer(h.offset.clone()))
            .map(|(i, _)| i)
            .collect();
        cells.push(cell);
    }
    if cells.is_empty() {
        return Err(Error::DegenerateLift);
    }
    cells.sort();
    Ok(cells)
}

/// Membership of a rational point in an H-polyhedron.
pub fn contains(p: &HPolyhedron, x: &[Rat]) -> bool {
    p.contains(x)
}

/// All integer points of the box `[lo, hi]` satisfying `filter`, in
/// lexicographic order.
pub fn lattice_points_in_box(
    lo: &[Int],
    hi: &[Int],
    filter: &HPolyhedron,
) -> Result<Vec<Vec<Int>>> {
    if lo.len() != hi.len() {
        return Err(Error::DimensionMismatch {
            expected: lo.len(),
            got: hi.len(),
        });
    }
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Err(Error::Internal("box lower bound exceeds upper bound".into()));
    }
    let n = lo.len();
    let mut out = Vec::new();
    let mut current: Vec<Int> = lo.to_vec();
    loop {
        if filter.contains_int(&current) {
            out.push(current.clone());
        }
        // Odometer increment, last coordinate fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if current[pos] < hi[pos] {
                current[pos] += Int::one();
                break;
            }
            current[pos] = lo[pos].clone();
        }
    }
}
