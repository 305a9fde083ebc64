//! Newton polyhedra of monomial ideals, their normal fans, and round-trip
//! verification against a subdivision.
//!
//! The Newton polyhedron of an ideal on the chart of a full-dimensional
//! pointed cone `tau` is the convex hull of the exponent vectors plus the
//! dual cone of `tau`. Its inner normal fan is supported on `tau`; a
//! subdivision is realized by the blowup of the ideal exactly when the two
//! fans agree.

use num::{One, Signed, Zero};

use crate::cartier::MonomialIdealData;
use crate::exactq::{dot_int, solve_linear, to_rational, Int, LinearSolution, Rat};
use crate::fans::{dual_cone, fan_equal, Cone, Fan};
use crate::hrep::{determinant, extreme_rays_from_hrep};
use crate::polyhedra::{facets_of_polyhedron, lattice_points_in_box, vertices_of, HPolyhedron};
use crate::{Error, Result};

/// The Newton polyhedron of a monomial ideal: vertex set, facet
/// description, and the ambient cone whose dual is the recession cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub ambient: Cone,
    pub vertices: Vec<Vec<Int>>,
    pub hrep: HPolyhedron,
}

impl NewtonPolyhedron {
    pub fn contains_int(&self, x: &[Int]) -> bool {
        self.hrep.contains_int(x)
    }
}

/// Builds the Newton polyhedron `conv(generators) + dual(ambient)`.
pub fn newton(ideal: &MonomialIdealData) -> Result<NewtonPolyhedron> {
    if ideal.generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if !ideal.ambient.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let rank = ideal.ambient.rank();
    for g in &ideal.generators {
        if g.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: g.len(),
            });
        }
        if ideal.ambient.rays().iter().any(|v| dot_int(g, v).is_negative()) {
            return Err(Error::GeneratorOutsideDual);
        }
    }
    let dual = dual_cone(&ideal.ambient)?;
    let points: Vec<Vec<Rat>> = ideal.generators.iter().map(|g| to_rational(g)).collect();
    let rays: Vec<Vec<Rat>> = dual.rays().iter().map(|r| to_rational(r)).collect();

    let mut vertices: Vec<Vec<Int>> = vertices_of(&points, &rays)
        .iter()
        .map(|v| v.iter().map(|x| x.to_integer()).collect())
        .collect();
    vertices.sort();
    vertices.dedup();

    let vertex_points: Vec<Vec<Rat>> = vertices.iter().map(|v| to_rational(v)).collect();
    let hrep = facets_of_polyhedron(&vertex_points, &rays);
    Ok(NewtonPolyhedron {
        ambient: ideal.ambient.clone(),
        vertices,
        hrep,
    })
}

/// The inner normal fan of the Newton polyhedron, supported on the ambient
/// cone: the maximal cone of a vertex `g` is cut out by the ambient's
/// facets together with `<g' - g, w> >= 0` over the other vertices.
pub fn normal_fan(np: &NewtonPolyhedron) -> Result<Fan> {
    let rank = np.ambient.rank();
    let mut cones = Vec::new();
    for g in &np.vertices {
        let mut normals: Vec<Vec<Int>> = np.ambient.facet_normals().to_vec();
        for other in &np.vertices {
            if other == g {
                continue;
            }
            normals.push(other.iter().zip(g).map(|(a, b)| a - b).collect());
        }
        let rays = extreme_rays_from_hrep(&[], &normals, rank)?;
        cones.push(Cone::from_rays(&rays)?);
    }
    Fan::new(cones, rank)
}

/// Minimal monomial generators of the integral closure, i.e. of the
/// semigroup ideal of all lattice points of the Newton polyhedron. Only
/// supported when the ambient cone is simplicial and unimodular, so that a
/// lattice-preserving change of coordinates reduces to the orthant chart.
pub fn integral_closure_generators(ideal: &MonomialIdealData) -> Result<Vec<Vec<Int>>> {
    let np = newton(ideal)?;
    let rank = np.ambient.rank();
    let ray_rows: Vec<Vec<Rat>> = np.ambient.rays().iter().map(|r| to_rational(r)).collect();
    if ray_rows.len() != rank || determinant(&ray_rows).abs() != Rat::one() {
        return Err(Error::UnsupportedAmbient);
    }

    // Coordinates m' = V m with V the ray matrix: the dual cone becomes the
    // orthant and the lattice maps onto itself. Invert column by column.
    let mut inverse_cols: Vec<Vec<Int>> = Vec::new();
    for i in 0..rank {
        let mut e = vec![Rat::zero(); rank];
        e[i] = Rat::one();
        match solve_linear(&ray_rows, &e)? {
            LinearSolution::Solution { particular, .. } => {
                inverse_cols.push(particular.iter().map(|x| x.to_integer()).collect());
            }
            LinearSolution::Inconsistent => {
                return Err(Error::Internal("unimodular matrix failed to invert".into()));
            }
        }
    }
    let transform = |m: &[Int]| -> Vec<Int> {
        np.ambient.rays().iter().map(|v| dot_int(v, m)).collect()
    };
    let back = |mp: &[Int]| -> Vec<Int> {
        (0..rank)
            .map(|row| {
                (0..rank)
                    .map(|col| &inverse_cols[col][row] * &mp[col])
                    .sum()
            })
            .collect()
    };

    let transformed: Vec<Vec<Rat>> = np
        .vertices
        .iter()
        .map(|v| to_rational(&transform(v)))
        .collect();
    let orthant_rays: Vec<Vec<Rat>> = Cone::orthant(rank)
        .rays()
        .iter()
        .map(|r| to_rational(r))
        .collect();
    let hrep = facets_of_polyhedron(&transformed, &orthant_rays);

    // A minimal generator is bounded above, coordinate-wise, by the vertex
    // maxima: one more step along a unit direction always stays inside.
    let lo = vec![Int::zero(); rank];
    let hi: Vec<Int> = (0..rank)
        .map(|i| {
            transformed
                .iter()
                .map(|v| v[i].to_integer())
                .max()
                .expect("vertex set is nonempty")
        })
        .collect();

    let mut out = Vec::new();
    for mp in lattice_points_in_box(&lo, &hi, &hrep)? {
        let minimal = (0..rank).all(|i| {
            let mut down = mp.clone();
            down[i] -= Int::one();
            !hrep.contains_int(&down)
        });
        if minimal {
            out.push(back(&mp));
        }
    }
    out.sort();
    Ok(out)
}

/// Checks that, over each maximal cone of `delta`, the normal fan of the
/// Newton polyhedron of the associated ideal coincides with the restriction
/// of `sigma`.
pub fn verify_blowup(
    sigma: &Fan,
    delta: &Fan,
    ideals: &[(Cone, MonomialIdealData)],
) -> Result<bool> {
    for tau in delta.maximal_cones() {
        let Some((_, ideal)) = ideals.iter().find(|(c, _)| c == tau) else {
            return Err(Error::Internal(
                "no ideal attached to a maximal cone of Delta".into(),
            ));
        };
        let nf = normal_fan(&newton(ideal)?)?;
        let restricted: Vec<Cone> = sigma
            .maximal_cones()
            .iter()
            .filter(|c| tau.contains_cone(c))
            .cloned()
            .collect();
        let restricted = Fan::new(restricted, sigma.rank())?;
        if !fan_equal(&nf, &restricted) {
            return Ok(false);
        }
    }
    Ok(true)
}
