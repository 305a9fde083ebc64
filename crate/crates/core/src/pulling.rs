//! Pulling subdivisions of a full-dimensional pointed cone along a
//! contained cone.
//!
//! An admissible hyperplane `<a, x> = c` cuts every ray of `sigma` in a
//! point; the rays of `tau` get height one and the remaining rays of
//! `sigma` height zero. Projecting the upper hull of the lifted point
//! configuration and coning over the cells yields the subdivision, together
//! with the homogenized height of every primitive ray.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::exactq::{dot_int, dot_int_rat, primitive, to_rational, Int, Rat};
use crate::fans::{dual_cone, Cone, Fan};
use crate::polyhedra::upper_hull;
use crate::{Error, Result};

/// A finite rational point set on a hyperplane, each point carrying a
/// lifting height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightedConfig {
    pub points: Vec<Vec<Rat>>,
    pub heights: Vec<Rat>,
    pub hyperplane: (Vec<Int>, Int),
}

/// A coherent subdivision of a cone with the piecewise-linear height data
/// that induced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicalSubdivision {
    pub fan: Fan,
    pub ray_heights: BTreeMap<Vec<Int>, Rat>,
}

/// A canonical admissible hyperplane for `sigma`: the primitive vector on
/// the sum of the dual cone's extreme rays, with offset one. Strictly
/// positive on every ray of `sigma`, hence on `tau`.
pub fn admissible_hyperplane(sigma: &Cone, tau: &Cone) -> Result<(Vec<Int>, Int)> {
    check_pair(sigma, tau)?;
    let dual = dual_cone(sigma)?;
    let mut sum = vec![Rat::zero(); sigma.rank()];
    for r in dual.rays() {
        for (s, x) in sum.iter_mut().zip(r) {
            *s += Rat::from_integer(x.clone());
        }
    }
    Ok((primitive(&sum)?, Int::one()))
}

fn check_pair(sigma: &Cone, tau: &Cone) -> Result<()> {
    if !sigma.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if !sigma.contains_cone(tau) {
        return Err(Error::TauNotInSigma);
    }
    Ok(())
}

fn check_admissible(sigma: &Cone, hyperplane: &(Vec<Int>, Int)) -> Result<()> {
    let (a, c) = hyperplane;
    if a.len() != sigma.rank() {
        return Err(Error::DimensionMismatch {
            expected: sigma.rank(),
            got: a.len(),
        });
    }
    if c.is_zero() {
        return Err(Error::Internal("hyperplane through the origin".into()));
    }
    for r in sigma.rays() {
        if !dot_int(a, r).is_positive() {
            return Err(Error::Internal(
                "hyperplane misses a ray of sigma".into(),
            ));
        }
    }
    Ok(())
}

/// Intersects the hyperplane with every ray of `sigma` and `tau` and
/// assigns height one to the images of `tau`'s rays, zero to the rest.
/// A ray shared by both cones gets height one.
pub fn build_config(
    sigma: &Cone,
    tau: &Cone,
    hyperplane: &(Vec<Int>, Int),
) -> Result<HeightedConfig> {
    check_pair(sigma, tau)?;
    check_admissible(sigma, hyperplane)?;
    let (a, c) = hyperplane;
    let c = Rat::from_integer(c.clone());

    let cut = |ray: &Vec<Int>| -> Vec<Rat> {
        let scale = &c / Rat::from_integer(dot_int(a, ray));
        to_rational(ray).into_iter().map(|x| x * &scale).collect()
    };

    let mut entries: BTreeMap<Vec<Int>, (Vec<Rat>, Rat)> = BTreeMap::new();
    for r in sigma.rays() {
        entries.insert(r.clone(), (cut(r), Rat::zero()));
    }
    for r in tau.rays() {
        if !dot_int(a, r).is_positive() {
            return Err(Error::Internal("hyperplane misses a ray of tau".into()));
        }
        entries.insert(r.clone(), (cut(r), Rat::one()));
    }

    let (points, heights) = entries.into_values().unzip();
    Ok(HeightedConfig {
        points,
        heights,
        hyperplane: hyperplane.clone(),
    })
}

/// The pulling subdivision of `sigma` along `tau` for the canonical
/// admissible hyperplane.
pub fn pull(sigma: &Cone, tau: &Cone) -> Result<ConicalSubdivision> {
    let hyperplane = admissible_hyperplane(sigma, tau)?;
    pull_with_hyperplane(sigma, tau, &hyperplane)
}

/// The pulling subdivision for an explicit admissible hyperplane.
pub fn pull_with_hyperplane(
    sigma: &Cone,
    tau: &Cone,
    hyperplane: &(Vec<Int>, Int),
) -> Result<ConicalSubdivision> {
    let config = build_config(sigma, tau, hyperplane)?;
    let (a, c) = hyperplane;
    let c = Rat::from_integer(c.clone());

    let lifted: Vec<Vec<Rat>> = config
        .points
        .iter()
        .zip(&config.heights)
        .map(|(p, h)| {
            let mut q = p.clone();
            q.push(h.clone());
            q
        })
        .collect();

    let cells = upper_hull(&lifted)?;
    let mut cones = Vec::new();
    for cell in &cells {
        let gens: Vec<Vec<Int>> = cell
            .iter()
            .map(|&i| primitive(&config.points[i]))
            .collect::<Result<_>>()?;
        cones.push(Cone::from_rays(&gens)?);
    }
    let fan = Fan::new(cones, sigma.rank())?;

    // Homogenize: a config point p on the hyperplane sits at
    // <a, v>/c times p's primitive vector v, so the ray height is
    // omega(p) * <a, v> / c.
    let mut ray_heights = BTreeMap::new();
    for (p, h) in config.points.iter().zip(&config.heights) {
        let v = primitive(p)?;
        let height = h * dot_int_rat(a, &to_rational(&v)) / &c;
        ray_heights.insert(v, height);
    }

    Ok(ConicalSubdivision { fan, ray_heights })
}
