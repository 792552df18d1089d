//! JSON renderings of the stable output schemas.
//!
//! Rationals are serialized as {"num": "...", "den": "..."} with decimal
//! digit strings, never floats, so exactness survives the wire format:
//!
//! - Divisor: {level, entries: [{cusp: {a, c}, order}], degree}
//! - Report:  {overall, conditions: [{id, pass, witness}]}
//! - Group:   {level, kind, invariant_factors: [string]}

use serde_json::{json, Value};

use crate::classgrp::AbelianGroup;
use crate::etafam::CuspidalDivisor;
use crate::modcurve::LevelContext;
use crate::ntheory::Rational;
use crate::unitcheck::CriterionReport;

pub fn rational_json(r: &Rational) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
    })
}

pub fn divisor_json(divisor: &CuspidalDivisor, ctx: &LevelContext) -> Value {
    let entries: Vec<Value> = ctx
        .cusps()
        .iter()
        .filter_map(|cusp| {
            let order = divisor.coeff(cusp);
            if order == Rational::from_integer(0.into()) {
                return None;
            }
            Some(json!({
                "cusp": {"a": cusp.a(), "c": cusp.c()},
                "order": rational_json(&order),
            }))
        })
        .collect();
    json!({
        "level": ctx.n(),
        "entries": entries,
        "degree": rational_json(&divisor.degree()),
    })
}

pub fn report_json(report: &CriterionReport) -> Value {
    let conditions: Vec<Value> = report
        .conditions
        .iter()
        .map(|c| {
            json!({
                "id": c.id.as_str(),
                "pass": c.pass,
                "witness": rational_json(&c.witness),
            })
        })
        .collect();
    json!({
        "overall": report.overall,
        "conditions": conditions,
    })
}

pub fn group_json(level: u64, kind: &str, group: &AbelianGroup) -> Value {
    let factors: Vec<String> = group
        .invariant_factors()
        .iter()
        .map(|d| d.to_string())
        .collect();
    json!({
        "level": level,
        "kind": kind,
        "invariant_factors": factors,
    })
}
