//! JSON file formats, reports and DOT output.
//!
//! Integers are JSON numbers (strings when they leave `i64`), rationals are
//! `[num, den]` pairs with `den > 0` in lowest terms. Objects are emitted with
//! sorted keys, so identical input gives byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ah::{
    AhError, CoherencePair, CoherenceReport, ColoredDivisor, Curve, CurvePoint, Mobius,
    PolyhedralDivisor, TailedPolyhedron,
};
use crate::fan::{build_fan, Fan, FanError};
use crate::lattice::{
    DualVector, IntVector, Lattice, LatticeVector, RatVector, RationalCone, RationalVector, N,
};
use crate::lnd::{Monomial, SemigroupElement, SymbolicExpansion};
use crate::orbits::{GOrbitPartition, HeConnectedPair};
use crate::roots::DemazureRoot;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Ah(#[from] AhError),
}

fn format_err(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

pub fn int_json(x: &BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn rational_json(q: &BigRational) -> Value {
    json!([int_json(q.numer()), int_json(q.denom())])
}

pub fn vector_json<L: Lattice>(v: &IntVector<L>) -> Value {
    Value::Array(v.coords().iter().map(int_json).collect())
}

pub fn rational_vector_json<L: Lattice>(v: &RatVector<L>) -> Value {
    Value::Array(v.coords().iter().map(rational_json).collect())
}

/// `"a,b,c"` as used for roots on the command line.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>, IoError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| format_err(format!("not an integer: {t:?}")))
        })
        .collect()
}

pub fn parse_dual_vector(s: &str) -> Result<DualVector, IoError> {
    Ok(DualVector::new(parse_int_list(s)?))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalIn {
    Int(i64),
    Pair([i64; 2]),
}

impl RationalIn {
    fn value(&self) -> Result<BigRational, IoError> {
        match *self {
            RationalIn::Int(n) => Ok(BigRational::from_integer(n.into())),
            RationalIn::Pair([_, 0]) => Err(format_err("rational with zero denominator")),
            RationalIn::Pair([n, d]) => Ok(BigRational::new(n.into(), d.into())),
        }
    }
}

fn rational_vector(coords: &[RationalIn]) -> Result<RationalVector, IoError> {
    Ok(RationalVector::new(
        coords
            .iter()
            .map(RationalIn::value)
            .collect::<Result<_, _>>()?,
    ))
}

// ---------------------------------------------------------------- fans

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanIn {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    #[serde(default, rename = "cones")]
    _cones: Option<Value>,
}

/// A fan file before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanInput {
    pub rank: usize,
    pub rays: Vec<LatticeVector>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanInput {
    pub fn build(&self) -> Result<Fan, FanError> {
        build_fan(self.rank, self.rays.clone(), &self.max_cones)
    }
}

/// Reads `{"rank", "rays", "max_cones"}`, or the `result.fan` of a report.
pub fn parse_fan(text: &str) -> Result<FanInput, IoError> {
    let value: Value = serde_json::from_str(text)?;
    let fan = value.pointer("/result/fan").cloned().unwrap_or(value);
    let raw: FanIn = serde_json::from_value(fan)?;
    Ok(FanInput {
        rank: raw.rank,
        rays: raw
            .rays
            .iter()
            .map(|r| LatticeVector::from_i64s(r))
            .collect(),
        max_cones: raw.max_cones,
    })
}

/// The fan with its canonical cone list.
pub fn fan_json(fan: &Fan) -> Value {
    let cones: Vec<Value> = fan
        .cones()
        .iter()
        .map(
            |c| json!({"id": c.id(), "rays": c.ray_indices, "dim": c.dim, "maximal": c.is_maximal}),
        )
        .collect();
    json!({
        "rank": fan.rank(),
        "rays": fan.rays().iter().map(vector_json).collect::<Vec<_>>(),
        "max_cones": fan.supplied_maximal_cones(),
        "cones": cones,
    })
}

/// The fan of a single cone together with its faces.
pub fn cone_fan(cone: &RationalCone<N>) -> Result<Fan, FanError> {
    let rays = cone.rays().to_vec();
    let all: Vec<usize> = (0..rays.len()).collect();
    build_fan(cone.rank(), rays, &[all])
}

pub fn fan_error_json(e: &FanError) -> Value {
    let (kind, detail) = match e {
        FanError::RankMismatch {
            ray,
            expected,
            found,
        } => (
            "rank_mismatch",
            json!({"ray": ray, "expected": expected, "found": found}),
        ),
        FanError::ZeroRay(r) => ("zero_ray", json!({"ray": r})),
        FanError::NotPrimitive(r) => ("not_primitive", json!({"ray": r})),
        FanError::DuplicateRay(a, b) => ("duplicate_ray", json!({"rays": [a, b]})),
        FanError::InvalidRayIndex { cone, index } => {
            ("invalid_ray_index", json!({"cone": cone, "index": index}))
        }
        FanError::NotStronglyConvex(c) => ("not_strongly_convex", json!({"cone": c})),
        FanError::RayNotExtreme { cone, ray } => {
            ("ray_not_extreme", json!({"cone": cone, "ray": ray}))
        }
        FanError::BadIntersection(a, b) => ("bad_intersection", json!({"cones": [a, b]})),
        FanError::ConeNotInFan(c) => ("cone_not_in_fan", json!({"cone": c})),
        FanError::Geometry(g) => ("geometry", json!({"message": g.to_string()})),
    };
    json!({"kind": kind, "detail": detail, "message": e.to_string()})
}

pub fn root_json(root: &DemazureRoot) -> Value {
    json!({"e": vector_json(&root.e), "ray": root.distinguished_ray})
}

pub fn partition_json(fan: &Fan, partition: &GOrbitPartition, pairs: &[HeConnectedPair]) -> Value {
    let orbits: Vec<Value> = partition
        .orbits
        .iter()
        .map(|o| {
            json!({
                "cones": o.cones.iter().map(|&c| fan.cone(c).id()).collect::<Vec<_>>(),
                "dim": o.dim,
                "ga_fixed": o.ga_fixed,
                "stabilizer": {
                    "torus_dim": o.stabilizer.torus_dim,
                    "torus_component_order": int_json(&o.stabilizer.torus_component_order),
                    "contains_ga": o.stabilizer.contains_ga,
                },
            })
        })
        .collect();
    json!({
        "root": root_json(&partition.root),
        "orbit_count": partition.len(),
        "orbits": orbits,
        "he_pairs": pairs.iter().map(|p| [fan.cone(p.lower).id(), fan.cone(p.upper).id()]).collect::<Vec<_>>(),
    })
}

/// Torus orbits as nodes, He-connected pairs as edges.
pub fn orbit_dot(fan: &Fan, pairs: &[HeConnectedPair]) -> String {
    let mut out = String::from("digraph orbits {\n");
    for (i, c) in fan.cones().iter().enumerate() {
        writeln!(out, "  c{i} [label=\"{} (dim {})\"];", c.id(), c.dim).unwrap();
    }
    for p in pairs {
        writeln!(out, "  c{} -> c{} [label=\"He\"];", p.lower, p.upper).unwrap();
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------- elements

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermIn {
    m: Vec<i64>,
    #[serde(default)]
    r: Option<i64>,
    #[serde(default)]
    c: Option<RationalIn>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElementIn {
    Terms(Vec<TermIn>),
    Product { factors: Vec<Vec<TermIn>> },
}

fn element_from_terms(terms: &[TermIn]) -> Result<SemigroupElement, IoError> {
    let mut f = SemigroupElement::zero();
    for t in terms {
        let m = DualVector::from_i64s(&t.m);
        let mono = match t.r {
            Some(r) => Monomial::with_t(m, r.into()),
            None => Monomial::character(m),
        };
        let c =
            t.c.as_ref()
                .map_or(Ok(BigRational::one()), RationalIn::value)?;
        f.add_term(mono, c);
    }
    Ok(f)
}

/// A list of `{"m", "r"?, "c"?}` terms, or `{"factors": [list, ...]}` for a
/// product; returns the factors.
pub fn parse_element(text: &str) -> Result<Vec<SemigroupElement>, IoError> {
    match serde_json::from_str::<ElementIn>(text)? {
        ElementIn::Terms(t) => Ok(vec![element_from_terms(&t)?]),
        ElementIn::Product { factors } if factors.is_empty() => Err(format_err("empty product")),
        ElementIn::Product { factors } => factors.iter().map(|t| element_from_terms(t)).collect(),
    }
}

pub fn element_json(f: &SemigroupElement) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(mono, c)| {
            let mut t = Map::new();
            t.insert("m".into(), vector_json(&mono.m));
            if let Some(r) = &mono.r {
                t.insert("r".into(), int_json(r));
            }
            t.insert("c".into(), rational_json(c));
            Value::Object(t)
        })
        .collect();
    Value::Array(terms)
}

pub fn expansion_json(x: &SymbolicExpansion) -> Value {
    let powers: Vec<Value> = x
        .coefficients
        .iter()
        .enumerate()
        .map(|(j, c)| json!({"power": j, "coefficient": element_json(c)}))
        .collect();
    json!({"powers": powers, "display": x.to_string()})
}

// ---------------------------------------------------------------- divisors

#[derive(Deserialize)]
#[serde(untagged)]
enum PointIn {
    Named(String),
    Value(RationalIn),
}

impl PointIn {
    fn point(&self) -> Result<CurvePoint, IoError> {
        match self {
            PointIn::Named(s) => parse_point_key(s),
            PointIn::Value(q) => Ok(CurvePoint::Finite(q.value()?)),
        }
    }
}

fn parse_point_key(s: &str) -> Result<CurvePoint, IoError> {
    if s == "inf" {
        return Ok(CurvePoint::Infinity);
    }
    s.parse::<BigRational>()
        .map(CurvePoint::Finite)
        .map_err(|_| format_err(format!("not a curve point: {s:?}")))
}

fn point_key(z: &CurvePoint) -> String {
    match z {
        CurvePoint::Infinity => "inf".into(),
        CurvePoint::Finite(q) => q.to_string(),
    }
}

pub fn point_json(z: &CurvePoint) -> Value {
    match z {
        CurvePoint::Infinity => Value::from("inf"),
        CurvePoint::Finite(q) => rational_json(q),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorPointIn {
    z: PointIn,
    vertices: Vec<Vec<RationalIn>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MarksIn {
    z0: PointIn,
    #[serde(default)]
    zinf: Option<PointIn>,
    #[serde(default)]
    vertices: BTreeMap<String, Vec<RationalIn>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorIn {
    curve: String,
    rank: usize,
    tail: Vec<Vec<i64>>,
    #[serde(default)]
    points: Vec<DivisorPointIn>,
    #[serde(default)]
    marks: Option<MarksIn>,
}

/// A divisor file, with its coloring when `marks` is present.
#[derive(Clone, Debug)]
pub struct DivisorInput {
    pub divisor: PolyhedralDivisor,
    pub colored: Option<ColoredDivisor>,
}

pub fn parse_divisor(text: &str) -> Result<DivisorInput, IoError> {
    let value: Value = serde_json::from_str(text)?;
    let value = value.pointer("/result/divisor").cloned().unwrap_or(value);
    let raw: DivisorIn = serde_json::from_value(value)?;
    let curve = match raw.curve.as_str() {
        "A1" => Curve::A1,
        "P1" => Curve::P1,
        other => return Err(format_err(format!("unknown curve {other:?}"))),
    };
    let tail_rays: Vec<LatticeVector> = raw
        .tail
        .iter()
        .map(|r| LatticeVector::from_i64s(r))
        .collect();
    if let Some(r) = tail_rays.iter().find(|r| r.rank() != raw.rank) {
        return Err(AhError::RankMismatch {
            expected: raw.rank,
            found: r.rank(),
        }
        .into());
    }
    let tail = RationalCone::from_int_generators(raw.rank, &tail_rays).map_err(AhError::from)?;
    let mut points = Vec::new();
    for p in &raw.points {
        let vs = p
            .vertices
            .iter()
            .map(|v| rational_vector(v))
            .collect::<Result<Vec<_>, _>>()?;
        points.push((p.z.point()?, TailedPolyhedron::new(vs, tail.clone())?));
    }
    let divisor = PolyhedralDivisor::new(curve, tail, points)?;
    let colored = match raw.marks {
        None => None,
        Some(m) => {
            let z_inf = m.zinf.as_ref().map(PointIn::point).transpose()?;
            let marks = m
                .vertices
                .iter()
                .map(|(k, v)| Ok((parse_point_key(k)?, rational_vector(v)?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            Some(ColoredDivisor::new(
                divisor.clone(),
                m.z0.point()?,
                z_inf,
                marks,
            )?)
        }
    };
    Ok(DivisorInput { divisor, colored })
}

pub fn divisor_json(d: &PolyhedralDivisor, colored: Option<&ColoredDivisor>) -> Value {
    let points: Vec<Value> = d
        .support()
        .map(|(z, delta)| {
            json!({"z": point_json(z), "vertices": delta.vertices().iter().map(rational_vector_json).collect::<Vec<_>>()})
        })
        .collect();
    let mut out = json!({
        "curve": d.curve().to_string(),
        "rank": d.rank(),
        "tail": d.tail().rays().iter().map(vector_json).collect::<Vec<_>>(),
        "points": points,
    });
    if let Some(c) = colored {
        let vertices: Map<String, Value> = c
            .marks()
            .iter()
            .map(|(z, v)| (point_key(z), rational_vector_json(v)))
            .collect();
        let mut marks = json!({"z0": point_json(c.z0()), "vertices": vertices});
        if let Some(z) = c.z_inf() {
            marks["zinf"] = point_json(z);
        }
        out["marks"] = marks;
    }
    out
}

pub fn mobius_json(m: &Mobius) -> Value {
    json!({"a": rational_json(&m.a), "b": rational_json(&m.b), "c": rational_json(&m.c), "d": rational_json(&m.d)})
}

pub fn coherence_pair_json(p: &CoherencePair) -> Value {
    json!({
        "coherent": true,
        "e": vector_json(&p.e),
        "d": int_json(&p.d),
        "s": int_json(&p.s),
        "e_tilde": vector_json(&p.e_tilde),
        "rho_tilde": vector_json(&p.rho_tilde),
        "sigma_tilde_rays": p.sigma_tilde.rays().iter().map(vector_json).collect::<Vec<_>>(),
    })
}

pub fn coherence_report_json(r: &CoherenceReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "condition": v.condition.to_string(),
                "point": v.point.as_ref().map(point_json),
                "witness": v.witness.as_ref().map(rational_vector_json),
                "message": v.message,
            })
        })
        .collect();
    json!({
        "coherent": false,
        "e": vector_json(&r.e),
        "d": int_json(&r.d),
        "s": r.s.as_ref().map(int_json),
        "violations": violations,
    })
}

// ---------------------------------------------------------------- reports

/// The envelope around every command result.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Vec<String>,
    pub input_sha256: String,
    pub result: Value,
    pub error: Option<Value>,
}

impl Report {
    pub fn new(command: Vec<String>, input: &[u8], result: Value) -> Self {
        Self {
            command,
            input_sha256: sha256_hex(input),
            result,
            error: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input_sha256": self.input_sha256,
            "result": self.result,
        });
        if let Some(e) = &self.error {
            v["error"] = e.clone();
        }
        v
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
