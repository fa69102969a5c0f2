//! JSON schemas for CLI input and output. Rationals travel as "p/q" strings;
//! Laurent polynomials in q as maps keyed by doubled exponents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveEdge, PlaneCurve};
use crate::error::{parse_err, Result};
use crate::fan::FanCurve;
use crate::graph::{EdgeLen, GraphEdge, MetricGraph};
use crate::intersect::StableIntersection;
use crate::laurent::LaurentQ;
use crate::matroid::Matroid;
use crate::patchwork::PatchworkResult;
use crate::poly1::{Factorization, Root};
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::semiring::Trop;
use crate::subdivision::DualSubdivision;

pub fn rat_str(r: &Rat) -> String {
    fmt_rat(r)
}

pub fn trop_str(t: &Trop) -> String {
    match t {
        Trop::NegInf => "-inf".to_string(),
        Trop::Finite(r) => fmt_rat(r),
    }
}

/// { "2e": coeff } keyed by doubled exponents.
pub fn laurent_json(l: &LaurentQ) -> serde_json::Value {
    let map: BTreeMap<String, i64> = l
        .terms
        .iter()
        .map(|(de, c)| (de.to_string(), *c))
        .collect();
    serde_json::json!({ "display": l.to_string(), "coeffs": map })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RootJson {
    pub root: String,
    pub order: u32,
}

pub fn roots_json(roots: &[Root]) -> Vec<RootJson> {
    roots
        .iter()
        .map(|r| RootJson { root: trop_str(&r.location), order: r.order })
        .collect()
}

pub fn factorization_json(f: &Factorization) -> serde_json::Value {
    serde_json::json!({
        "lead": rat_str(&f.lead),
        "roots": roots_json(&f.roots),
    })
}

pub fn subdivision_json(s: &DualSubdivision) -> serde_json::Value {
    serde_json::json!({
        "dim": s.dim,
        "newton": s.newton,
        "vertices": s.cells0,
        "edges": s.cells1.iter().map(|c| serde_json::json!({
            "a": c.a, "b": c.b, "cells": c.cells,
        })).collect::<Vec<_>>(),
        "cells": s.cells2.iter().map(|c| serde_json::json!({
            "polygon": c.polygon,
        })).collect::<Vec<_>>(),
    })
}

pub fn curve_json(c: &PlaneCurve) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = c
        .edges
        .iter()
        .map(|e| match e {
            CurveEdge::Bounded { a, b, weight, dual } => serde_json::json!({
                "kind": "bounded", "a": a, "b": b, "weight": weight, "dual": dual,
            }),
            CurveEdge::Ray { v, dir, weight, dual } => serde_json::json!({
                "kind": "ray", "v": v, "dir": dir, "weight": weight, "dual": dual,
            }),
        })
        .collect();
    serde_json::json!({
        "degree": c.degree,
        "vertices": c.vertices.iter().map(|(x, y)| vec![rat_str(x), rat_str(y)]).collect::<Vec<_>>(),
        "edges": edges,
        "balanced": c.check_balanced(),
        "nonsingular": c.is_nonsingular(),
    })
}

pub fn intersection_json(s: &StableIntersection) -> serde_json::Value {
    serde_json::json!({
        "total": s.total,
        "perturbed": s.perturbed,
        "points": s.points.iter().map(|p| serde_json::json!({
            "point": [rat_str(&p.point.0), rat_str(&p.point.1)],
            "multiplicity": p.multiplicity,
        })).collect::<Vec<_>>(),
    })
}

pub fn patchwork_json(r: &PatchworkResult) -> serde_json::Value {
    serde_json::json!({
        "strands": r.strands.iter().map(|s| serde_json::json!({
            "arcs": s.arcs,
            "sign": [s.sign.0, s.sign.1],
            "component": s.component,
        })).collect::<Vec<_>>(),
        "component_count": r.component_count,
        "type_I": r.type_i,
        "maximal": r.maximal,
        "orientable_quotient": r.orientable_quotient,
        "euler_char_quotient": r.euler_char_quotient,
    })
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FanCurveJson {
    pub n: usize,
    pub rays: Vec<FanRayJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FanRayJson {
    pub direction: Vec<i64>,
    pub weight: i64,
}

pub fn fan_curve_from_json(v: &FanCurveJson) -> Result<FanCurve> {
    FanCurve::new(
        v.n,
        v.rays.iter().map(|r| (r.direction.clone(), r.weight)).collect(),
    )
}

pub fn fan_curve_to_json(c: &FanCurve) -> FanCurveJson {
    FanCurveJson {
        n: c.n,
        rays: c
            .rays
            .iter()
            .map(|(d, w)| FanRayJson { direction: d.clone(), weight: *w })
            .collect(),
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatroidJson {
    pub n: usize,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flats: Option<Vec<FlatJson>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FlatJson {
    pub set: Vec<usize>,
    pub rank: usize,
}

pub fn matroid_from_json(v: &MatroidJson) -> Result<Matroid> {
    match v.kind.as_deref() {
        Some("uniform") => {
            let rank = v
                .rank
                .ok_or_else(|| parse_err("uniform matroid requires a rank"))?;
            Matroid::uniform(v.n, rank)
        }
        Some("braid") => Ok(Matroid::braid()),
        Some(other) => Err(parse_err(format!("unknown matroid type {other:?}"))),
        None => {
            let flats = v
                .flats
                .as_ref()
                .ok_or_else(|| parse_err("matroid requires flats or a type"))?;
            let rank = v
                .rank
                .ok_or_else(|| parse_err("matroid requires an explicit rank"))?;
            Matroid::from_flats(
                v.n,
                rank,
                flats
                    .iter()
                    .map(|f| (f.set.iter().copied().collect(), f.rank))
                    .collect(),
            )
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GraphJson {
    pub vertices: Vec<GraphVertexJson>,
    pub edges: Vec<GraphEdgeJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GraphVertexJson {
    #[serde(default)]
    pub inf: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GraphEdgeJson {
    pub a: usize,
    /// Absent or null: open end.
    #[serde(default)]
    pub b: Option<usize>,
    pub len: String,
}

pub fn graph_from_json(v: &GraphJson) -> Result<MetricGraph> {
    let edges = v
        .edges
        .iter()
        .map(|e| {
            let len = if e.len == "inf" {
                EdgeLen::Infinite
            } else {
                EdgeLen::Finite(parse_rat(&e.len)?)
            };
            Ok(GraphEdge { a: e.a, b: e.b, len })
        })
        .collect::<Result<Vec<_>>>()?;
    MetricGraph::new(v.vertices.iter().map(|x| x.inf).collect(), edges)
}

pub fn graph_to_json(g: &MetricGraph) -> GraphJson {
    GraphJson {
        vertices: g.infinite.iter().map(|&inf| GraphVertexJson { inf }).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| GraphEdgeJson {
                a: e.a,
                b: e.b,
                len: match &e.len {
                    EdgeLen::Finite(l) => fmt_rat(l),
                    EdgeLen::Infinite => "inf".to_string(),
                },
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::FanPlane;

    #[test]
    fn fan_curve_round_trip() {
        let c = FanPlane::new(3).unwrap().line();
        let j = fan_curve_to_json(&c);
        let text = serde_json::to_string(&j).unwrap();
        let back: FanCurveJson = serde_json::from_str(&text).unwrap();
        assert_eq!(fan_curve_from_json(&back).unwrap(), c);
    }

    #[test]
    fn graph_round_trip() {
        let g = MetricGraph::new(
            vec![false, true],
            vec![
                GraphEdge { a: 0, b: Some(1), len: EdgeLen::Infinite },
                GraphEdge { a: 0, b: None, len: EdgeLen::Infinite },
                GraphEdge { a: 0, b: None, len: EdgeLen::Finite(crate::rat::rat(2)) },
            ],
        )
        .unwrap();
        let j = graph_to_json(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(graph_from_json(&back).unwrap(), g);
    }

    #[test]
    fn laurent_keys_are_doubled_exponents() {
        let l = LaurentQ::quantum_int(2); // q^{1/2} + q^{-1/2}
        let j = laurent_json(&l);
        let coeffs = j.get("coeffs").unwrap().as_object().unwrap();
        assert!(coeffs.contains_key("1") && coeffs.contains_key("-1"));
    }
}
