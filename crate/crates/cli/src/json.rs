//! JSON encoding of fans, Cartier data, and ideal documents.
//!
//! Integer vectors serialize as arrays of JSON numbers; rationals as
//! strings `"p/q"`, shortened to `"p"` when the denominator is one. All
//! maps are emitted in a fixed key order so identical inputs produce
//! byte-identical documents.

use std::collections::BTreeMap;

use num::ToPrimitive;
use serde_json::{json, Map, Value};
use toricsub::cartier::{CartierData, MonomialIdealData};
use toricsub::exactq::{Int, Rat};
use toricsub::pulling::ConicalSubdivision;
use toricsub::{Cone, Fan};

#[derive(Debug)]
pub enum DocError {
    Malformed(String),
    Domain(toricsub::Error),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Malformed(msg) => write!(f, "malformed document: {msg}"),
            DocError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<toricsub::Error> for DocError {
    fn from(e: toricsub::Error) -> Self {
        DocError::Domain(e)
    }
}

fn malformed<T>(msg: &str) -> Result<T, DocError> {
    Err(DocError::Malformed(msg.into()))
}

pub fn int_to_value(x: &Int) -> Value {
    json!(x.to_i64().expect("integer fits in 64 bits"))
}

pub fn ivec_to_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_value).collect())
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.denom() == &Int::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn qvec_to_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| json!(rat_to_string(x))).collect())
}

pub fn value_to_int(v: &Value) -> Result<Int, DocError> {
    match v.as_i64() {
        Some(x) => Ok(Int::from(x)),
        None => malformed("expected an integer"),
    }
}

pub fn value_to_ivec(v: &Value) -> Result<Vec<Int>, DocError> {
    match v.as_array() {
        Some(xs) => xs.iter().map(value_to_int).collect(),
        None => malformed("expected an integer array"),
    }
}

pub fn string_to_rat(s: &str) -> Result<Rat, DocError> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let numer: Int = p
        .parse()
        .map_err(|_| DocError::Malformed(format!("bad rational {s:?}")))?;
    let denom: Int = q
        .parse()
        .map_err(|_| DocError::Malformed(format!("bad rational {s:?}")))?;
    if denom == Int::from(0) {
        return malformed("zero denominator");
    }
    Ok(Rat::new(numer, denom))
}

pub fn value_to_rat(v: &Value) -> Result<Rat, DocError> {
    match v.as_str() {
        Some(s) => string_to_rat(s),
        None => malformed("expected a rational string"),
    }
}

fn get<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, DocError> {
    obj.get(key)
        .ok_or_else(|| DocError::Malformed(format!("missing field {key:?}")))
}

pub fn cone_to_value(c: &Cone) -> Value {
    json!({ "rays": c.rays().iter().map(|r| ivec_to_value(r)).collect::<Vec<_>>() })
}

pub fn value_to_cone(v: &Value) -> Result<Cone, DocError> {
    let rays: Vec<Vec<Int>> = match get(v, "rays")?.as_array() {
        Some(xs) => xs.iter().map(value_to_ivec).collect::<Result<_, _>>()?,
        None => return malformed("rays must be an array"),
    };
    Ok(Cone::from_rays(&rays)?)
}

pub fn fan_to_value(fan: &Fan, ray_heights: Option<&BTreeMap<Vec<Int>, Rat>>) -> Value {
    let mut obj = Map::new();
    obj.insert("rank".into(), json!(fan.rank()));
    obj.insert(
        "cones".into(),
        Value::Array(fan.maximal_cones().iter().map(cone_to_value).collect()),
    );
    if let Some(heights) = ray_heights {
        let entries: Vec<Value> = heights
            .iter()
            .map(|(ray, h)| json!({ "ray": ivec_to_value(ray), "height": rat_to_string(h) }))
            .collect();
        obj.insert("ray_heights".into(), Value::Array(entries));
    }
    Value::Object(obj)
}

pub fn value_to_fan(v: &Value) -> Result<Fan, DocError> {
    let rank = match get(v, "rank")?.as_u64() {
        Some(r) => r as usize,
        None => return malformed("rank must be a nonnegative integer"),
    };
    let cones: Vec<Cone> = match get(v, "cones")?.as_array() {
        Some(xs) => xs.iter().map(value_to_cone).collect::<Result<_, _>>()?,
        None => return malformed("cones must be an array"),
    };
    Ok(Fan::new(cones, rank)?)
}

pub fn subdivision_to_value(sub: &ConicalSubdivision) -> Value {
    fan_to_value(&sub.fan, Some(&sub.ray_heights))
}

pub fn value_to_subdivision(v: &Value) -> Result<ConicalSubdivision, DocError> {
    let fan = value_to_fan(v)?;
    let mut ray_heights = BTreeMap::new();
    let entries = match get(v, "ray_heights")?.as_array() {
        Some(xs) => xs,
        None => return malformed("ray_heights must be an array"),
    };
    for e in entries {
        ray_heights.insert(value_to_ivec(get(e, "ray")?)?, value_to_rat(get(e, "height")?)?);
    }
    Ok(ConicalSubdivision { fan, ray_heights })
}

pub fn cartier_to_value(cd: &CartierData) -> Value {
    json!({
        "multiplier": int_to_value(&cd.multiplier),
        "entries": cd
            .entries
            .iter()
            .map(|(c, m)| json!({ "cone": cone_to_value(c), "m": ivec_to_value(m) }))
            .collect::<Vec<_>>(),
    })
}

pub fn value_to_cartier(v: &Value) -> Result<CartierData, DocError> {
    let multiplier = value_to_int(get(v, "multiplier")?)?;
    let mut entries = Vec::new();
    let list = match get(v, "entries")?.as_array() {
        Some(xs) => xs,
        None => return malformed("entries must be an array"),
    };
    for e in list {
        entries.push((value_to_cone(get(e, "cone")?)?, value_to_ivec(get(e, "m")?)?));
    }
    Ok(CartierData { entries, multiplier })
}

pub fn ideal_to_value(ideal: &MonomialIdealData) -> Value {
    json!({
        "ambient_rays": ideal
            .ambient
            .rays()
            .iter()
            .map(|r| ivec_to_value(r))
            .collect::<Vec<_>>(),
        "generators": ideal
            .generators
            .iter()
            .map(|g| ivec_to_value(g))
            .collect::<Vec<_>>(),
        "closure": ideal.closure,
    })
}

pub fn value_to_ideal(v: &Value) -> Result<MonomialIdealData, DocError> {
    let rays: Vec<Vec<Int>> = match get(v, "ambient_rays")?.as_array() {
        Some(xs) => xs.iter().map(value_to_ivec).collect::<Result<_, _>>()?,
        None => return malformed("ambient_rays must be an array"),
    };
    let generators: Vec<Vec<Int>> = match get(v, "generators")?.as_array() {
        Some(xs) => xs.iter().map(value_to_ivec).collect::<Result<_, _>>()?,
        None => return malformed("generators must be an array"),
    };
    let closure = match get(v, "closure")?.as_bool() {
        Some(b) => b,
        None => return malformed("closure must be a boolean"),
    };
    Ok(MonomialIdealData {
        ambient: Cone::from_rays(&rays)?,
        generators,
        closure,
    })
}

pub fn ideals_to_value(ideals: &[(Cone, MonomialIdealData)]) -> Value {
    json!({
        "ideals": ideals
            .iter()
            .map(|(_, ideal)| ideal_to_value(ideal))
            .collect::<Vec<_>>(),
    })
}

pub fn value_to_ideals(v: &Value) -> Result<Vec<MonomialIdealData>, DocError> {
    match get(v, "ideals")?.as_array() {
        Some(xs) => xs.iter().map(value_to_ideal).collect(),
        None => malformed("ideals must be an array"),
    }
}
