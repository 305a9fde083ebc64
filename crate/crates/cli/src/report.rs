//! The worked-example report: recomputes every stage of the pipeline on
//! the reference input and compares against golden values.

use serde_json::{json, Value};
use toricsub::cartier::{ideal_from_cartier, integralize, support_from_heights};
use toricsub::exactq::Int;
use toricsub::fans::{fan_equal, refines, star_subdivision};
use toricsub::newton::{integral_closure_generators, newton, normal_fan};
use toricsub::polyhedra::{facets, upper_hull};
use toricsub::pulling::{build_config, pull_with_hyperplane};
use toricsub::{Cone, Fan, Rat};

use crate::json::{
    cone_to_value, ivec_to_value, qvec_to_value, rat_to_string, subdivision_to_value,
};

fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Runs the reference pipeline and serializes every intermediate value.
pub fn compute_report() -> Result<Value, toricsub::Error> {
    let sigma = Cone::orthant(3);
    let tau = Cone::from_rays(&[ivec(&[2, 1, 0]), ivec(&[0, 1, 2])])?;
    let hyperplane = (ivec(&[1, 1, 1]), Int::from(1));

    let config = build_config(&sigma, &tau, &hyperplane)?;
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
    let polytope = facets(&lifted)?;
    let cells = upper_hull(&lifted)?;

    let sub = pull_with_hyperplane(&sigma, &tau, &hyperplane)?;
    let delta = Fan::new(vec![sigma.clone()], 3)?;
    let sf = support_from_heights(&sub)?;
    let cd = integralize(&sf);
    let ideals = ideal_from_cartier(&cd, &delta)?;
    let ideal = &ideals[0].1;
    let np = newton(ideal)?;
    let nf = normal_fan(&np)?;
    let closure = integral_closure_generators(ideal)?;

    let star1 = star_subdivision(&delta, &ivec(&[2, 1, 0]))?;
    let star2 = star_subdivision(&delta, &ivec(&[0, 1, 2]))?;
    let noncomparability = vec![
        refines(&sub.fan, &star1)?,
        refines(&star1, &sub.fan)?,
        refines(&sub.fan, &star2)?,
        refines(&star2, &sub.fan)?,
    ];

    Ok(json!({
        "hyperplane": { "a": ivec_to_value(&hyperplane.0), "c": 1 },
        "config_points": config.points.iter().map(|p| qvec_to_value(p)).collect::<Vec<_>>(),
        "config_heights": config.heights.iter().map(|h| json!(rat_to_string(h))).collect::<Vec<_>>(),
        "lifted_polytope": {
            "equalities": polytope
                .equalities
                .iter()
                .map(|(n, b)| json!({ "normal": ivec_to_value(n), "offset": crate::json::int_to_value(b) }))
                .collect::<Vec<_>>(),
            "halfspaces": polytope
                .halfspaces
                .iter()
                .map(|h| json!({ "normal": ivec_to_value(&h.normal), "offset": crate::json::int_to_value(&h.offset) }))
                .collect::<Vec<_>>(),
        },
        "upper_cells": cells,
        "subdivision": subdivision_to_value(&sub),
        "support": sf
            .entries
            .iter()
            .map(|(c, u)| json!({ "cone": cone_to_value(c), "u": qvec_to_value(u) }))
            .collect::<Vec<_>>(),
        "cartier": {
            "multiplier": crate::json::int_to_value(&cd.multiplier),
            "entries": cd
                .entries
                .iter()
                .map(|(c, m)| json!({ "cone": cone_to_value(c), "m": ivec_to_value(m) }))
                .collect::<Vec<_>>(),
        },
        "ideal": crate::json::ideal_to_value(ideal),
        "closure_generators": closure.iter().map(|g| ivec_to_value(g)).collect::<Vec<_>>(),
        "blowup_fan_matches": fan_equal(&nf, &sub.fan),
        "star_noncomparability": noncomparability,
    }))
}

/// Renders the report for terminal consumption, one line per value.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let section = |out: &mut String, title: &str, v: &Value| {
        out.push_str(title);
        out.push_str(": ");
        out.push_str(&serde_json::to_string(v).expect("report serializes"));
        out.push('\n');
    };
    section(&mut out, "hyperplane", &report["hyperplane"]);
    section(&mut out, "configuration points", &report["config_points"]);
    section(&mut out, "configuration heights", &report["config_heights"]);
    section(&mut out, "lifted polytope", &report["lifted_polytope"]);
    section(&mut out, "upper cells", &report["upper_cells"]);
    section(&mut out, "subdivision", &report["subdivision"]);
    section(&mut out, "support function", &report["support"]);
    section(&mut out, "cartier data", &report["cartier"]);
    section(&mut out, "ideal", &report["ideal"]);
    section(&mut out, "closure generators", &report["closure_generators"]);
    section(&mut out, "blowup fan matches", &report["blowup_fan_matches"]);
    section(
        &mut out,
        "star non-comparability",
        &report["star_noncomparability"],
    );
    out
}

/// Lists the top-level report keys whose values differ from the golden.
pub fn diff_keys(computed: &Value, golden: &Value) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    let (Some(a), Some(b)) = (computed.as_object(), golden.as_object()) else {
        return vec!["<entire report>".into()];
    };
    for (k, v) in a {
        if b.get(k) != Some(v) {
            keys.push(k.clone());
        }
    }
    for k in b.keys() {
        if !a.contains_key(k) {
            keys.push(k.clone());
        }
    }
    keys.sort();
    keys.dedup();
    keys
}
