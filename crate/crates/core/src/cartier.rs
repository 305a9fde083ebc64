//! Support functions and Cartier data for coherent subdivisions.
//!
//! Two routes produce Cartier data: solving `<u, v> = h(v)` per maximal
//! cone when ray heights are available, and solving the linear-inequality
//! system that characterizes strictly convex integral support functions
//! when only the subdivision is known.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::exactq::{
    clear_denominators, dot_int, fm_feasible, solve_linear, to_rational, Int, LinSystem,
    LinearSolution, Rat,
};
use crate::fans::{refines, Cone, Fan};
use crate::pulling::ConicalSubdivision;
use crate::{Error, Result};

/// A piecewise-linear function on the support of a fan, one rational
/// M-vector per maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    pub entries: Vec<(Cone, Vec<Rat>)>,
}

impl SupportFunction {
    /// Value at a point of the support: the minimum over the linear pieces,
    /// which agrees with the piece of any cone containing the point.
    pub fn eval(&self, v: &[Rat]) -> Option<Rat> {
        self.entries
            .iter()
            .filter(|(c, _)| c.contains(v))
            .map(|(_, u)| crate::exactq::dot(u, v))
            .min()
    }
}

/// Integral Cartier data: one integer M-vector per maximal cone, together
/// with the positive multiplier that relates it to the rational support
/// function it was scaled from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierData {
    pub entries: Vec<(Cone, Vec<Int>)>,
    pub multiplier: Int,
}

/// A torus-invariant monomial ideal on the affine chart of `ambient`,
/// recorded by exponent vectors. When `closure` is set the ideal is the
/// integral closure of the one the generators span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdealData {
    pub ambient: Cone,
    pub generators: Vec<Vec<Int>>,
    pub closure: bool,
}

/// Solves `<u, v_rho> = h(v_rho)` over the rays of each maximal cone.
/// The overdetermined systems of a coherent subdivision are consistent by
/// construction; an inconsistency is an internal invariant violation.
pub fn support_from_heights(sub: &ConicalSubdivision) -> Result<SupportFunction> {
    let mut entries = Vec::new();
    for cone in sub.fan.maximal_cones() {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for ray in cone.rays() {
            let h = sub.ray_heights.get(ray).ok_or_else(|| {
                Error::Internal("subdivision is missing a ray height".into())
            })?;
            rows.push(to_rational(ray));
            rhs.push(h.clone());
        }
        match solve_linear(&rows, &rhs)? {
            LinearSolution::Solution { particular, .. } => {
                entries.push((cone.clone(), particular));
            }
            LinearSolution::Inconsistent => {
                return Err(Error::Internal(
                    "ray heights are not linear on a maximal cone".into(),
                ));
            }
        }
    }
    Ok(SupportFunction { entries })
}

/// Scales a support function by the least positive integer that makes all
/// of its pieces integral.
pub fn integralize(sf: &SupportFunction) -> CartierData {
    let mut k = Int::one();
    for (_, u) in &sf.entries {
        let (_, piece) = clear_denominators(u);
        k = num::Integer::lcm(&k, &piece);
    }
    let entries = sf
        .entries
        .iter()
        .map(|(c, u)| {
            let m: Vec<Int> = u
                .iter()
                .map(|x| (x * Rat::from_integer(k.clone())).to_integer())
                .collect();
            (c.clone(), m)
        })
        .collect();
    CartierData {
        entries,
        multiplier: k,
    }
}

/// Cartier data for a coherent subdivision `Sigma` of `Delta`, via the
/// linear-inequality system: for maximal cones of `Sigma` inside a common
/// maximal cone of `Delta`, equal pairings on shared rays, strictly smaller
/// pairings on own rays, and nonnegativity on the ambient cone's rays.
/// Strictness is realized with slack one; the system is homogeneous, so any
/// positive slack only rescales the solution.
pub fn cartier_from_subdivision(sigma: &Fan, delta: &Fan) -> Result<CartierData> {
    if !refines(sigma, delta)? {
        return Err(Error::NotARefinement);
    }
    let rank = sigma.rank();
    let cones = sigma.maximal_cones();
    let nvars = rank * cones.len();
    let fan_rays = sigma.rays();

    let mut equalities: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut weak: BTreeSet<(Vec<Rat>, Rat)> = BTreeSet::new();

    let difference_row = |i: usize, j: usize, ray: &[Int]| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); nvars];
        for (coord, x) in ray.iter().enumerate() {
            row[i * rank + coord] = Rat::from_integer(x.clone());
            row[j * rank + coord] = Rat::from_integer(-x.clone());
        }
        row
    };

    for tau in delta.maximal_cones() {
        let members: Vec<usize> = (0..cones.len())
            .filter(|&i| tau.contains_cone(&cones[i]))
            .collect();
        for &i in &members {
            for &j in &members {
                if i >= j {
                    continue;
                }
                for ray in &fan_rays {
                    let in_i = cones[i].contains_int(ray);
                    let in_j = cones[j].contains_int(ray);
                    if in_i && in_j {
                        equalities.insert(difference_row(i, j, ray));
                    } else if in_i {
                        weak.insert((difference_row(i, j, ray), -Rat::one()));
                    } else if in_j {
                        weak.insert((difference_row(j, i, ray), -Rat::one()));
                    }
                }
            }
            for v in tau.rays() {
                let mut row = vec![Rat::zero(); nvars];
                for (coord, x) in v.iter().enumerate() {
                    row[i * rank + coord] = Rat::from_integer(-x.clone());
                }
                weak.insert((row, Rat::zero()));
            }
        }
    }

    let mut sys = LinSystem::new(nvars);
    for row in equalities {
        sys.equalities.push((row, Rat::zero()));
    }
    sys.weak.extend(weak);

    let Some(solution) = fm_feasible(&sys)? else {
        return Err(Error::NotCoherent);
    };
    let (scaled, k) = clear_denominators(&solution);
    let entries = cones
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), scaled[i * rank..(i + 1) * rank].to_vec()))
        .collect();
    Ok(CartierData {
        entries,
        multiplier: k,
    })
}

/// Per maximal cone of `Delta`, the monomial ideal generated by the Cartier
/// vectors of the subdivision cones it contains, marked as integrally
/// closed.
pub fn ideal_from_cartier(
    cd: &CartierData,
    delta: &Fan,
) -> Result<Vec<(Cone, MonomialIdealData)>> {
    let mut out = Vec::new();
    for tau in delta.maximal_cones() {
        let mut generators: Vec<Vec<Int>> = cd
            .entries
            .iter()
            .filter(|(c, _)| tau.contains_cone(c))
            .map(|(_, m)| m.clone())
            .collect();
        if generators.is_empty() {
            return Err(Error::Internal(
                "no Cartier cone inside a maximal cone of Delta".into(),
            ));
        }
        generators.sort();
        generators.dedup();
        for g in &generators {
            if tau.rays().iter().any(|v| dot_int(g, v).is_negative()) {
                return Err(Error::GeneratorOutsideDual);
            }
        }
        out.push((
            tau.clone(),
            MonomialIdealData {
                ambient: tau.clone(),
                generators,
                closure: true,
            },
        ));
    }
    Ok(out)
}

/// Substitution check for the strict-convexity conditions: equal pairings
/// on shared rays, strictly smaller pairings on own rays, nonnegativity on
/// the ambient rays. Used by tests and the verification pipeline.
pub fn satisfies_convexity_conditions(cd: &CartierData, sigma: &Fan, delta: &Fan) -> bool {
    let fan_rays = sigma.rays();
    for tau in delta.maximal_cones() {
        let members: Vec<&(Cone, Vec<Int>)> = cd
            .entries
            .iter()
            .filter(|(c, _)| tau.contains_cone(c))
            .collect();
        for (i, (ci, mi)) in members.iter().enumerate() {
            for (j, (cj, mj)) in members.iter().enumerate() {
                if i == j {
                    continue;
                }
                for ray in &fan_rays {
                    let in_i = ci.contains_int(ray);
                    let in_j = cj.contains_int(ray);
                    let vi = dot_int(mi, ray);
                    let vj = dot_int(mj, ray);
                    if in_i && in_j && vi != vj {
                        return false;
                    }
                    if in_i && !in_j && vi >= vj {
                        return false;
                    }
                }
            }
            for v in tau.rays() {
                if dot_int(mi, v).is_negative() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{dot_int_rat, ivec, qvec, rat};
    use crate::fans::star_subdivision;
    use crate::pulling::pull;

    fn example_subdivision() -> ConicalSubdivision {
        let sigma = Cone::orthant(3);
        let tau = Cone::from_rays(&[ivec(&[2, 1, 0]), ivec(&[0, 1, 2])]).unwrap();
        pull(&sigma, &tau).unwrap()
    }

    fn plane_subdivision() -> ConicalSubdivision {
        let sigma = Cone::orthant(2);
        let tau = Cone::from_rays(&[ivec(&[1, 1])]).unwrap();
        pull(&sigma, &tau).unwrap()
    }

    #[test]
    fn support_of_worked_example() {
        let sf = support_from_heights(&example_subdivision()).unwrap();
        assert_eq!(sf.entries.len(), 2);
        // Cones sort by rays, so the cone containing (0,0,1) comes first.
        assert_eq!(sf.entries[0].1, qvec(&[0, 3, 0]));
        assert_eq!(sf.entries[1].1, vec![rat(3, 2), rat(0, 1), rat(3, 2)]);
    }

    #[test]
    fn support_of_plane_case() {
        let sf = support_from_heights(&plane_subdivision()).unwrap();
        let pieces: Vec<Vec<Rat>> = sf.entries.iter().map(|(_, u)| u.clone()).collect();
        assert_eq!(pieces, vec![qvec(&[2, 0]), qvec(&[0, 2])]);
    }

    #[test]
    fn support_of_trivial_subdivision_is_hyperplane() {
        let sigma = Cone::orthant(3);
        let sub = pull(&sigma, &sigma).unwrap();
        let sf = support_from_heights(&sub).unwrap();
        assert_eq!(sf.entries.len(), 1);
        assert_eq!(sf.entries[0].1, qvec(&[1, 1, 1]));
    }

    #[test]
    fn integralize_worked_example() {
        let cd = integralize(&support_from_heights(&example_subdivision()).unwrap());
        assert_eq!(cd.multiplier, Int::from(2));
        assert_eq!(cd.entries[0].1, ivec(&[0, 6, 0]));
        assert_eq!(cd.entries[1].1, ivec(&[3, 0, 3]));
    }

    #[test]
    fn integralize_plane_case_is_identity() {
        let cd = integralize(&support_from_heights(&plane_subdivision()).unwrap());
        assert_eq!(cd.multiplier, Int::one());
        assert_eq!(cd.entries[0].1, ivec(&[2, 0]));
        assert_eq!(cd.entries[1].1, ivec(&[0, 2]));
    }

    #[test]
    fn support_function_is_min_of_pieces() {
        let sf = support_from_heights(&example_subdivision()).unwrap();
        let sub = example_subdivision();
        for (ray, h) in &sub.ray_heights {
            assert_eq!(sf.eval(&to_rational(ray)), Some(h.clone()));
            for (_, u) in &sf.entries {
                assert!(dot_int_rat(ray, u) >= *h);
            }
        }
    }

    #[test]
    fn solver_on_worked_example() {
        let sub = example_subdivision();
        let delta = Fan::new(vec![Cone::orthant(3)], 3).unwrap();
        let cd = cartier_from_subdivision(&sub.fan, &delta).unwrap();
        assert!(satisfies_convexity_conditions(&cd, &sub.fan, &delta));
    }

    #[test]
    fn solver_on_trivial_subdivision_gives_zero() {
        let delta = Fan::new(vec![Cone::orthant(3)], 3).unwrap();
        let cd = cartier_from_subdivision(&delta, &delta).unwrap();
        assert_eq!(cd.entries[0].1, ivec(&[0, 0, 0]));
        assert_eq!(cd.multiplier, Int::one());
    }

    #[test]
    fn solver_on_star_subdivision() {
        let delta = Fan::new(vec![Cone::orthant(2)], 2).unwrap();
        let star = star_subdivision(&delta, &ivec(&[1, 1])).unwrap();
        let cd = cartier_from_subdivision(&star, &delta).unwrap();
        assert!(satisfies_convexity_conditions(&cd, &star, &delta));
    }

    #[test]
    fn solver_rejects_non_refinement() {
        let delta = Fan::new(vec![Cone::orthant(2)], 2).unwrap();
        let other = Fan::new(
            vec![Cone::from_rays(&[ivec(&[1, 0]), ivec(&[1, -1])]).unwrap()],
            2,
        )
        .unwrap();
        assert_eq!(
            cartier_from_subdivision(&other, &delta),
            Err(Error::NotARefinement)
        );
    }

    #[test]
    fn ideal_of_worked_example() {
        let cd = integralize(&support_from_heights(&example_subdivision()).unwrap());
        let delta = Fan::new(vec![Cone::orthant(3)], 3).unwrap();
        let ideals = ideal_from_cartier(&cd, &delta).unwrap();
        assert_eq!(ideals.len(), 1);
        let ideal = &ideals[0].1;
        assert_eq!(ideal.generators, vec![ivec(&[0, 6, 0]), ivec(&[3, 0, 3])]);
        assert!(ideal.closure);
    }

    #[test]
    fn ideal_of_trivial_cartier_is_unit() {
        let delta = Fan::new(vec![Cone::orthant(3)], 3).unwrap();
        let cd = cartier_from_subdivision(&delta, &delta).unwrap();
        let ideals = ideal_from_cartier(&cd, &delta).unwrap();
        assert_eq!(ideals[0].1.generators, vec![ivec(&[0, 0, 0])]);
    }

    #[test]
    fn ideal_of_plane_case() {
        let cd = integralize(&support_from_heights(&plane_subdivision()).unwrap());
        let delta = Fan::new(vec![Cone::orthant(2)], 2).unwrap();
        let ideals = ideal_from_cartier(&cd, &delta).unwrap();
        assert_eq!(ideals[0].1.generators, vec![ivec(&[0, 2]), ivec(&[2, 0])]);
    }
}
