//! Pointed rational polyhedral cones and fans.
//!
//! Cones carry both descriptions: sorted primitive extreme rays and
//! primitive facet normals (with span equalities when the cone is not
//! full-dimensional). Equality of cones is equality of their canonical ray
//! sets, which is sound for pointed cones.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::exactq::{dot_int, dot_int_rat, primitive_int, to_rational, Int, Rat};
use crate::hrep::{cone_hrep, determinant, extreme_rays_from_hrep, linear_rank, primitive_sum};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    rays: Vec<Vec<Int>>,
    facet_normals: Vec<Vec<Int>>,
    span_equalities: Vec<Vec<Int>>,
    rank: usize,
    dim: usize,
}

impl Cone {
    /// Canonical pointed cone generated by the given nonzero vectors.
    /// Redundant generators are removed; a conical hull containing a line
    /// is rejected.
    pub fn from_rays(gens: &[Vec<Int>]) -> Result<Cone> {
        let Some(first) = gens.first() else {
            return Err(Error::ZeroVector);
        };
        let rank = first.len();
        let mut rays: Vec<Vec<Int>> = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: g.len(),
                });
            }
            rays.push(primitive_int(g)?);
        }
        rays.sort();
        rays.dedup();

        let rational: Vec<Vec<Rat>> = rays.iter().map(|r| to_rational(r)).collect();
        let (span_equalities, facet_normals) = cone_hrep(&rational, rank);
        let dim = rank - span_equalities.len();

        // Pointed means no nonzero vector lies on every supporting
        // hyperplane.
        let mut rows: Vec<Vec<Rat>> = span_equalities.iter().map(|e| to_rational(e)).collect();
        rows.extend(facet_normals.iter().map(|f| to_rational(f)));
        if linear_rank(&rows, rank) < rank {
            return Err(Error::NotPointed);
        }

        let extreme: Vec<Vec<Int>> = rays
            .into_iter()
            .filter(|r| {
                let mut active: Vec<Vec<Rat>> =
                    span_equalities.iter().map(|e| to_rational(e)).collect();
                active.extend(
                    facet_normals
                        .iter()
                        .filter(|f| dot_int(f, r).is_zero())
                        .map(|f| to_rational(f)),
                );
                linear_rank(&active, rank) == rank - 1
            })
            .collect();

        Ok(Cone {
            rays: extreme,
            facet_normals,
            span_equalities,
            rank,
            dim,
        })
    }

    /// The trivial cone `{0}`.
    pub fn zero(rank: usize) -> Cone {
        let mut span_equalities: Vec<Vec<Int>> = Vec::new();
        for i in 0..rank {
            let mut e = vec![Int::zero(); rank];
            e[i] = Int::one();
            span_equalities.push(e);
        }
        Cone {
            rays: Vec::new(),
            facet_normals: Vec::new(),
            span_equalities,
            rank,
            dim: 0,
        }
    }

    /// The full-dimensional positive orthant.
    pub fn orthant(rank: usize) -> Cone {
        let gens: Vec<Vec<Int>> = (0..rank)
            .map(|i| {
                let mut e = vec![Int::zero(); rank];
                e[i] = Int::one();
                e
            })
            .collect();
        Cone::from_rays(&gens).expect("orthant is pointed")
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[Vec<Int>] {
        &self.facet_normals
    }

    pub fn span_equalities(&self) -> &[Vec<Int>] {
        &self.span_equalities
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, v: &[Rat]) -> bool {
        v.len() == self.rank
            && self
                .span_equalities
                .iter()
                .all(|e| dot_int_rat(e, v).is_zero())
            && self
                .facet_normals
                .iter()
                .all(|f| !dot_int_rat(f, v).is_negative())
    }

    pub fn contains_int(&self, v: &[Int]) -> bool {
        self.contains(&to_rational(v))
    }

    /// Containment of another cone, via its generators.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_int(r))
    }

    /// A primitive M-vector strictly positive on every nonzero point of the
    /// cone (the sum of the facet normals; for a full-dimensional cone this
    /// is the primitive sum of the dual cone's extreme rays).
    pub fn interior_functional(&self) -> Result<Vec<Int>> {
        if self.facet_normals.is_empty() {
            return Err(Error::ZeroVector);
        }
        primitive_sum(&self.facet_normals, self.rank)
    }

    /// The face of this cone cut out by the given supporting functional.
    /// Returns `None` when `f` is negative somewhere on the cone.
    pub fn face(&self, f: &[Int]) -> Option<Cone> {
        let mut face_rays = Vec::new();
        for r in &self.rays {
            let v = dot_int(f, r);
            if v.is_negative() {
                return None;
            }
            if v.is_zero() {
                face_rays.push(r.clone());
            }
        }
        if face_rays.is_empty() {
            Some(Cone::zero(self.rank))
        } else {
            Some(Cone::from_rays(&face_rays).expect("face of a pointed cone is pointed"))
        }
    }

    /// All faces, computed on demand from subsets of facet normals.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Vec<Vec<Int>>> = BTreeSet::new();
        let mut out = vec![self.clone()];
        seen.insert(self.rays.clone());
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            for f in &c.facet_normals {
                let face = c.face(f).expect("facet normal supports the cone");
                if seen.insert(face.rays.clone()) {
                    out.push(face.clone());
                    stack.push(face);
                }
            }
        }
        out.sort();
        out
    }

    /// Intersection with another cone, by stacking both halfspace
    /// descriptions.
    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let equalities: Vec<Vec<Int>> = self
            .span_equalities
            .iter()
            .chain(&other.span_equalities)
            .cloned()
            .collect();
        let normals: Vec<Vec<Int>> = self
            .facet_normals
            .iter()
            .chain(&other.facet_normals)
            .cloned()
            .collect();
        let rays = extreme_rays_from_hrep(&equalities, &normals, self.rank)?;
        if rays.is_empty() {
            Ok(Cone::zero(self.rank))
        } else {
            Cone::from_rays(&rays)
        }
    }

    /// Whether `other` is a face of this cone.
    pub fn has_face(&self, other: &Cone) -> bool {
        if !self.contains_cone(other) {
            return false;
        }
        if other.dim == 0 {
            // The origin is a face of every pointed cone.
            return true;
        }
        // Candidate supporting functional: sum of the facet normals
        // vanishing on all of `other`.
        let vanishing: Vec<Vec<Int>> = self
            .facet_normals
            .iter()
            .filter(|f| other.rays.iter().all(|r| dot_int(f, r).is_zero()))
            .cloned()
            .collect();
        if other == self {
            return true;
        }
        if vanishing.is_empty() {
            return false;
        }
        let f = primitive_sum(&vanishing, self.rank).expect("nonzero sum of facet normals");
        match self.face(&f) {
            Some(face) => face == *other,
            None => false,
        }
    }
}

/// Construct a pointed cone from integer ray generators.
pub fn cone_from_rays(gens: &[Vec<Int>]) -> Result<Cone> {
    Cone::from_rays(gens)
}

/// The dual cone `{ m : <m, v> >= 0 for all v }` of a full-dimensional
/// pointed cone, with canonical extreme rays.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    // The dual's extreme rays are the facet normals; rebuilding from them
    // re-runs the exhaustive facet-subset enumeration for the dual's own
    // halfspace data.
    Cone::from_rays(&c.facet_normals)
}

pub fn cone_contains(c: &Cone, v: &[Rat]) -> bool {
    c.contains(v)
}

/// A fan, stored by its maximal cones in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fan {
    maximal_cones: Vec<Cone>,
    rank: usize,
}

impl Fan {
    pub fn new(cones: Vec<Cone>, rank: usize) -> Result<Fan> {
        let mut cones = cones;
        for c in &cones {
            if c.rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: c.rank(),
                });
            }
        }
        cones.sort();
        cones.dedup();
        Ok(Fan {
            maximal_cones: cones,
            rank,
        })
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Union of the primitive rays of all maximal cones, sorted.
    pub fn rays(&self) -> Vec<Vec<Int>> {
        let mut out: Vec<Vec<Int>> = self
            .maximal_cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Checks the fan axioms for the stored maximal cones: none contained
    /// in another, and every pairwise intersection a face of both.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.maximal_cones.iter().enumerate() {
            for b in self.maximal_cones.iter().skip(i + 1) {
                if a.contains_cone(b) || b.contains_cone(a) {
                    return Err(Error::Internal(
                        "maximal cone contained in another".into(),
                    ));
                }
                let meet = a.intersect(b)?;
                if !a.has_face(&meet) || !b.has_face(&meet) {
                    return Err(Error::Internal(
                        "cone intersection is not a common face".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Fan equality as equality of canonical maximal-cone sets.
pub fn fan_equal(a: &Fan, b: &Fan) -> bool {
    a.rank == b.rank && a.maximal_cones == b.maximal_cones
}

/// Normalized volume of the slab `cone ∩ {a*x <= 1}` for a functional `a`
/// strictly positive on the cone. Zero for cones below full dimension.
fn cone_slab_volume(c: &Cone, a: &[Int]) -> Rat {
    if !c.is_full_dimensional() {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    for simplex in triangulate(c) {
        let rows: Vec<Vec<Rat>> = simplex
            .iter()
            .map(|r| {
                let scale = dot_int(a, r);
                to_rational(r)
                    .into_iter()
                    .map(|x| x / Rat::from_integer(scale.clone()))
                    .collect()
            })
            .collect();
        total += determinant(&rows).abs();
    }
    total
}

/// Placing triangulation of a cone into simplicial subcones, each given by
/// its ray list.
fn triangulate(c: &Cone) -> Vec<Vec<Vec<Int>>> {
    if c.is_simplicial() {
        return vec![c.rays().to_vec()];
    }
    let apex = c.rays()[0].clone();
    let mut out = Vec::new();
    for f in c.facet_normals() {
        if !dot_int(f, &apex).is_positive() {
            continue;
        }
        let facet_rays: Vec<Vec<Int>> = c
            .rays()
            .iter()
            .filter(|r| dot_int(f, r).is_zero())
            .cloned()
            .collect();
        let facet = Cone::from_rays(&facet_rays).expect("facet of a pointed cone");
        for mut simplex in triangulate(&facet) {
            simplex.insert(0, apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Whether `fine` refines `coarse`: equal supports and every maximal cone
/// of `fine` contained in a cone of `coarse`. Support equality is checked
/// by exact normalized volumes of hyperplane cross-sections.
pub fn refines(fine: &Fan, coarse: &Fan) -> Result<bool> {
    if fine.rank() != coarse.rank() {
        return Err(Error::DimensionMismatch {
            expected: coarse.rank(),
            got: fine.rank(),
        });
    }
    for c in fine.maximal_cones() {
        if !coarse.maximal_cones().iter().any(|t| t.contains_cone(c)) {
            return Ok(false);
        }
    }
    for tau in coarse.maximal_cones() {
        if !tau.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let a = tau.interior_functional()?;
        let target = cone_slab_volume(tau, &a);
        let mut covered = Rat::zero();
        for c in fine.maximal_cones() {
            if tau.contains_cone(c) {
                covered += cone_slab_volume(c, &a);
            }
        }
        if covered != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Star subdivision of a fan along a primitive ray in its support.
pub fn star_subdivision(f: &Fan, ray: &[Int]) -> Result<Fan> {
    let ray = primitive_int(ray)?;
    if !f.maximal_cones().iter().any(|c| c.contains_int(&ray)) {
        return Err(Error::RayOutsideSupport);
    }
    let mut cones = Vec::new();
    for c in f.maximal_cones() {
        if !c.contains_int(&ray) {
            cones.push(c.clone());
            continue;
        }
        for normal in c.facet_normals() {
            if !dot_int(normal, &ray).is_positive() {
                continue;
            }
            let mut gens: Vec<Vec<Int>> = c
                .rays()
                .iter()
                .filter(|r| dot_int(normal, r).is_zero())
                .cloned()
                .collect();
            gens.push(ray.clone());
            cones.push(Cone::from_rays(&gens)?);
        }
    }
    Fan::new(cones, f.rank())
}
