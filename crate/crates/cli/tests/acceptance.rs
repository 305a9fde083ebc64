//! Acceptance gate: nine exact-arithmetic criteria over the reference
//! example, derived oracles, randomized instances, and CLI determinism.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toricsub::cartier::{
    cartier_from_subdivision, ideal_from_cartier, integralize, satisfies_convexity_conditions,
    support_from_heights, MonomialIdealData,
};
use toricsub::exactq::{rat, Int, Rat};
use toricsub::fans::{fan_equal, refines, star_subdivision};
use toricsub::newton::{integral_closure_generators, newton, normal_fan, verify_blowup};
use toricsub::polyhedra::facets;
use toricsub::pulling::{build_config, pull, pull_with_hyperplane};
use toricsub::{Cone, Fan};

fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn sigma3() -> Cone {
    Cone::orthant(3)
}

fn tau3() -> Cone {
    Cone::from_rays(&[ivec(&[2, 1, 0]), ivec(&[0, 1, 2])]).unwrap()
}

fn hyperplane3() -> (Vec<Int>, Int) {
    (ivec(&[1, 1, 1]), Int::from(1))
}

fn example_pull() -> toricsub::ConicalSubdivision {
    pull_with_hyperplane(&sigma3(), &tau3(), &hyperplane3()).unwrap()
}

type Criterion = (&'static str, fn() -> Result<(), String>);

fn check(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn criterion_1_pulling_fan() -> Result<(), String> {
    let sub = example_pull();
    let expected = Fan::new(
        vec![
            Cone::from_rays(&[ivec(&[0, 1, 0]), ivec(&[2, 1, 0]), ivec(&[0, 1, 2])]).unwrap(),
            Cone::from_rays(&[
                ivec(&[1, 0, 0]),
                ivec(&[0, 0, 1]),
                ivec(&[2, 1, 0]),
                ivec(&[0, 1, 2]),
            ])
            .unwrap(),
        ],
        3,
    )
    .unwrap();
    check(fan_equal(&sub.fan, &expected), "pulling fan differs")
}

fn criterion_2_lifted_facets() -> Result<(), String> {
    let config = build_config(&sigma3(), &tau3(), &hyperplane3()).unwrap();
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
    let hull = facets(&lifted).map_err(|e| e.to_string())?;
    let expected: Vec<(Vec<i64>, i64)> = vec![
        (vec![-3, 1, 1, 0], 1),
        (vec![-3, 3, -3, 4], 3),
        (vec![0, 0, 0, -1], 0),
        (vec![1, 1, -3, 0], 1),
        (vec![3, -9, 3, 4], 3),
    ];
    check(hull.halfspaces.len() == 5, "expected five facets")?;
    for (normal, offset) in &expected {
        let normal = ivec(normal);
        let offset = Int::from(*offset);
        let matched = hull.halfspaces.iter().any(|h| {
            // Equality up to a positive rational scale: cross-multiply all
            // pairs of entries of (normal, offset) and require matching
            // signs on the nonzero entries.
            let a: Vec<&Int> = normal.iter().chain(std::iter::once(&offset)).collect();
            let b: Vec<&Int> = h.normal.iter().chain(std::iter::once(&h.offset)).collect();
            let proportional = (0..a.len())
                .all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]));
            let positively_oriented = a
                .iter()
                .zip(&b)
                .all(|(x, y)| (**x > Int::from(0)) == (**y > Int::from(0)));
            proportional && positively_oriented
        });
        check(matched, &format!("facet {normal:?} <= {offset} not found"))?;
    }
    Ok(())
}

fn criterion_3_support_and_cartier() -> Result<(), String> {
    let sf = support_from_heights(&example_pull()).unwrap();
    let sigma1 = Cone::from_rays(&[ivec(&[0, 1, 0]), ivec(&[2, 1, 0]), ivec(&[0, 1, 2])]).unwrap();
    let sigma2 = Cone::from_rays(&[
        ivec(&[1, 0, 0]),
        ivec(&[0, 0, 1]),
        ivec(&[2, 1, 0]),
        ivec(&[0, 1, 2]),
    ])
    .unwrap();
    let u1 = &sf.entries.iter().find(|(c, _)| *c == sigma1).unwrap().1;
    let u2 = &sf.entries.iter().find(|(c, _)| *c == sigma2).unwrap().1;
    check(*u1 == vec![rat(3, 2), rat(0, 1), rat(3, 2)], "u_sigma1 differs")?;
    check(*u2 == vec![rat(0, 1), rat(3, 1), rat(0, 1)], "u_sigma2 differs")?;
    let cd = integralize(&sf);
    check(cd.multiplier == Int::from(2), "multiplier is not 2")?;
    let m1 = &cd.entries.iter().find(|(c, _)| *c == sigma1).unwrap().1;
    let m2 = &cd.entries.iter().find(|(c, _)| *c == sigma2).unwrap().1;
    check(*m1 == ivec(&[3, 0, 3]), "m_sigma1 differs")?;
    check(*m2 == ivec(&[0, 6, 0]), "m_sigma2 differs")
}

fn criterion_4_ideal_round_trip() -> Result<(), String> {
    let sub = example_pull();
    let delta = Fan::new(vec![sigma3()], 3).unwrap();
    let cd = integralize(&support_from_heights(&sub).unwrap());
    let ideals = ideal_from_cartier(&cd, &delta).unwrap();
    let ideal = &ideals[0].1;
    check(
        ideal.generators == vec![ivec(&[0, 6, 0]), ivec(&[3, 0, 3])],
        "ideal generators differ",
    )?;
    check(ideal.closure, "closure flag not set")?;
    let nf = normal_fan(&newton(ideal).unwrap()).unwrap();
    check(fan_equal(&nf, &sub.fan), "blowup fan differs from pulling fan")
}

fn criterion_5_star_noncomparability() -> Result<(), String> {
    let sub = example_pull();
    let delta = Fan::new(vec![sigma3()], 3).unwrap();
    let star1 = star_subdivision(&delta, &ivec(&[2, 1, 0])).unwrap();
    let star2 = star_subdivision(&delta, &ivec(&[0, 1, 2])).unwrap();
    check(!refines(&sub.fan, &star1).unwrap(), "pull refines star at (2,1,0)")?;
    check(!refines(&star1, &sub.fan).unwrap(), "star at (2,1,0) refines pull")?;
    check(!refines(&sub.fan, &star2).unwrap(), "pull refines star at (0,1,2)")?;
    check(!refines(&star2, &sub.fan).unwrap(), "star at (0,1,2) refines pull")
}

fn criterion_6_integral_closure_oracle() -> Result<(), String> {
    let ideal = MonomialIdealData {
        ambient: sigma3(),
        generators: vec![ivec(&[0, 6, 0]), ivec(&[3, 0, 3])],
        closure: true,
    };
    let computed = integral_closure_generators(&ideal).unwrap();
    let expected = vec![
        ivec(&[0, 6, 0]),
        ivec(&[1, 4, 1]),
        ivec(&[2, 2, 2]),
        ivec(&[3, 0, 3]),
    ];
    check(computed == expected, "closure generators differ from quoted set")?;

    // Independent oracle: a point m lies in the Newton polyhedron exactly
    // when some lambda in [0,1] has lambda*(3,0,3) + (1-lambda)*(0,6,0)
    // below m coordinate-wise; that is an interval condition on lambda.
    let member = |m: &[i64]| -> bool {
        if m.iter().any(|&x| x < 0) {
            return false;
        }
        let hi = rat(m[0], 3).min(rat(m[2], 3)).min(rat(1, 1));
        let lo = (rat(1, 1) - rat(m[1], 6)).max(rat(0, 1));
        lo <= hi
    };
    let mut oracle = Vec::new();
    for a in 0..=3i64 {
        for b in 0..=6i64 {
            for c in 0..=3i64 {
                let m = [a, b, c];
                let minimal = member(&m)
                    && (0..3).all(|i| {
                        let mut down = m;
                        down[i] -= 1;
                        !member(&down)
                    });
                if minimal {
                    oracle.push(ivec(&m));
                }
            }
        }
    }
    check(computed == oracle, "closure generators differ from brute-force oracle")
}

fn criterion_7_random_solver_suite() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240901);
    let mut run_instance = |rank: usize, hi: i64| -> Result<bool, String> {
        let sigma = Cone::orthant(rank);
        let nrays = rng.gen_range(1..=2usize);
        let rays: Vec<Vec<Int>> = (0..nrays)
            .map(|_| {
                let mut v: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=hi)).collect();
                if v.iter().all(|&x| x == 0) {
                    v[rng.gen_range(0..rank)] = 1;
                }
                ivec(&v)
            })
            .collect();
        let Ok(tau) = Cone::from_rays(&rays) else {
            return Ok(false);
        };
        let sub = pull(&sigma, &tau).map_err(|e| e.to_string())?;
        let delta = Fan::new(vec![sigma], rank).unwrap();
        let cd = cartier_from_subdivision(&sub.fan, &delta).map_err(|e| e.to_string())?;
        if !satisfies_convexity_conditions(&cd, &sub.fan, &delta) {
            return Err("solver output violates convexity conditions".into());
        }
        let ideals = ideal_from_cartier(&cd, &delta).map_err(|e| e.to_string())?;
        if !verify_blowup(&sub.fan, &delta, &ideals).map_err(|e| e.to_string())? {
            return Err("blowup fan does not reproduce random subdivision".into());
        }
        Ok(true)
    };
    let mut done = 0;
    let mut attempts = 0;
    while done < 20 {
        attempts += 1;
        if attempts > 200 {
            return Err("could not generate 20 valid instances".into());
        }
        let rank = if done % 2 == 0 { 2 } else { 3 };
        let hi = if rank == 2 { 3 } else { 2 };
        if run_instance(rank, hi)? {
            done += 1;
        }
    }
    Ok(())
}

fn criterion_8_trivial_suite() -> Result<(), String> {
    let sigma = sigma3();
    let sub = pull(&sigma, &sigma).unwrap();
    let trivial = Fan::new(vec![sigma.clone()], 3).unwrap();
    check(fan_equal(&sub.fan, &trivial), "trivial pull is not {sigma}")?;
    let cd = integralize(&support_from_heights(&sub).unwrap());
    check(
        cd.entries.len() == 1 && cd.entries[0].1 == ivec(&[1, 1, 1]),
        "trivial Cartier data is not the hyperplane functional",
    )?;
    let ideals = ideal_from_cartier(&cd, &trivial).unwrap();
    check(
        ideals[0].1.generators == vec![ivec(&[1, 1, 1])],
        "trivial ideal is not principal",
    )?;
    let nf = normal_fan(&newton(&ideals[0].1).unwrap()).unwrap();
    check(fan_equal(&nf, &trivial), "principal ideal fan is not {sigma}")?;

    let plane = Cone::orthant(2);
    let diag = Cone::from_rays(&[ivec(&[1, 1])]).unwrap();
    let sub2 = pull(&plane, &diag).unwrap();
    let ambient2 = Fan::new(vec![plane], 2).unwrap();
    let star = star_subdivision(&ambient2, &ivec(&[1, 1])).unwrap();
    check(fan_equal(&sub2.fan, &star), "2D pull is not the star subdivision")?;
    let cd2 = integralize(&support_from_heights(&sub2).unwrap());
    let ideals2 = ideal_from_cartier(&cd2, &ambient2).unwrap();
    let closure = integral_closure_generators(&ideals2[0].1).unwrap();
    check(
        closure == vec![ivec(&[0, 2]), ivec(&[1, 1]), ivec(&[2, 0])],
        "2D closure generators differ",
    )
}

fn criterion_9_determinism() -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_toricsub");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name);
    std::fs::write(path("sigma.json"), r#"{ "rays": [[1,0,0],[0,1,0],[0,0,1]] }"#)
        .map_err(|e| e.to_string())?;
    std::fs::write(path("tau.json"), r#"{ "rays": [[2,1,0],[0,1,2]] }"#)
        .map_err(|e| e.to_string())?;
    std::fs::write(
        path("delta.json"),
        r#"{ "rank": 3, "cones": [ { "rays": [[1,0,0],[0,1,0],[0,0,1]] } ] }"#,
    )
    .map_err(|e| e.to_string())?;

    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let output = Command::new(bin)
            .args(args)
            .current_dir(dir.path())
            .output()
            .map_err(|e| e.to_string())?;
        if !output.status.success() {
            return Err(format!(
                "{args:?} failed: {}",
                String::from_utf8_lossy(&output.stderr)
            ));
        }
        Ok(output.stdout)
    };

    let stages: Vec<Vec<&str>> = vec![
        vec!["pull", "--sigma", "sigma.json", "--tau", "tau.json", "--hyperplane", "1,1,1,1", "--out", "sub.json"],
        vec!["cartier", "--subdivision", "sub.json", "--ambient", "delta.json", "--from-heights", "--out", "cartier.json"],
        vec!["idealize", "--cartier", "cartier.json", "--ambient", "delta.json", "--out", "ideals.json"],
        vec!["reproduce-paper", "--json"],
    ];
    for args in &stages {
        let first = run(args)?;
        let outputs: Vec<Vec<u8>> = args
            .windows(2)
            .filter(|w| w[0] == "--out")
            .map(|w| std::fs::read(path(w[1])).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let second = run(args)?;
        check(first == second, &format!("stdout differs across reruns of {args:?}"))?;
        for (w, before) in args.windows(2).filter(|w| w[0] == "--out").zip(&outputs) {
            let after = std::fs::read(path(w[1])).map_err(|e| e.to_string())?;
            check(
                *before == after,
                &format!("file {} differs across reruns", w[1]),
            )?;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("1 pulling fan of the reference example", criterion_1_pulling_fan),
        ("2 lifted polytope facets", criterion_2_lifted_facets),
        ("3 support function and Cartier data", criterion_3_support_and_cartier),
        ("4 ideal and blowup round trip", criterion_4_ideal_round_trip),
        ("5 star subdivision non-comparability", criterion_5_star_noncomparability),
        ("6 integral closure against brute-force oracle", criterion_6_integral_closure_oracle),
        ("7 inequality solver on 20 random instances", criterion_7_random_solver_suite),
        ("8 trivial cases", criterion_8_trivial_suite),
        ("9 byte-identical reruns", criterion_9_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("criterion {name}: pass"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg})");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
