//! JSON encodings for polynomials, derivations and cable prefixes.
//!
//! Polynomial schema: `{"vars": [...], "terms": [{"c": "p/q", "e": [...]}]}`
//! with terms in canonical order (descending graded-lex) and coefficients
//! as `p` or `p/q` strings. Derivations carry images aligned with their
//! variable list; cables carry their derivation and element list.

use cable_core::cable::CablePrefix;
use cable_core::derivation::Derivation;
use cable_core::poly::{Monomial, Polynomial, VarSet};
use cable_core::rat::{format_rat, parse_rat};
use cable_core::{Error, Result};
use serde_json::{json, Map, Value};

pub fn poly_to_json(p: &Polynomial) -> Value {
    let vars: Vec<Value> = p.vars().names().map(|n| json!(n)).collect();
    // Canonical order: descending, matching the text rendering.
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            json!({
                "c": format_rat(c),
                "e": m.exps().iter().map(|&e| json!(e)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "vars": vars, "terms": terms })
}

fn parse_err(msg: &str) -> Error {
    Error::Parse {
        pos: 0,
        msg: msg.into(),
    }
}

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(&format!("expected a JSON object for {what}")))
}

fn vars_from_json(v: &Value) -> Result<VarSet> {
    let names = v
        .as_array()
        .ok_or_else(|| parse_err("expected \"vars\" to be an array"))?
        .iter()
        .map(|n| {
            n.as_str()
                .map(str::to_owned)
                .ok_or_else(|| parse_err("variable names must be strings"))
        })
        .collect::<Result<Vec<_>>>()?;
    VarSet::new(names)
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    let obj = as_obj(v, "a polynomial")?;
    let vars = vars_from_json(
        obj.get("vars")
            .ok_or_else(|| parse_err("polynomial is missing \"vars\""))?,
    )?;
    let terms_json = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("polynomial is missing \"terms\""))?;
    let mut terms = Vec::with_capacity(terms_json.len());
    for t in terms_json {
        let t = as_obj(t, "a term")?;
        let c = t
            .get("c")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("term is missing \"c\""))?;
        let coeff = parse_rat(c)?;
        let exps = t
            .get("e")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("term is missing \"e\""))?
            .iter()
            .map(|e| {
                e.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| parse_err("exponents must be small non-negative integers"))
            })
            .collect::<Result<Vec<_>>>()?;
        if exps.len() != vars.len() {
            return Err(parse_err("exponent vector length does not match vars"));
        }
        terms.push((Monomial::new(exps), coeff));
    }
    Polynomial::from_terms(&vars, terms)
}

pub fn derivation_to_json(d: &Derivation) -> Value {
    let vars: Vec<Value> = d.vars().names().map(|n| json!(n)).collect();
    let images: Vec<Value> = d.images().iter().map(poly_to_json).collect();
    json!({ "vars": vars, "images": images })
}

pub fn derivation_from_json(v: &Value) -> Result<Derivation> {
    let obj = as_obj(v, "a derivation")?;
    let vars = vars_from_json(
        obj.get("vars")
            .ok_or_else(|| parse_err("derivation is missing \"vars\""))?,
    )?;
    let images_json = obj
        .get("images")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("derivation is missing \"images\""))?;
    if images_json.len() != vars.len() {
        return Err(parse_err("derivation image count does not match vars"));
    }
    let mut pairs: Vec<(String, Polynomial)> = Vec::new();
    for (i, img) in images_json.iter().enumerate() {
        let p = poly_from_json(img)?.embed(&vars)?;
        pairs.push((vars.name(i).to_owned(), p));
    }
    let borrowed: Vec<(&str, Polynomial)> =
        pairs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    Derivation::new(&vars, &borrowed)
}

pub fn cable_to_json(c: &CablePrefix) -> Value {
    json!({
        "derivation": derivation_to_json(c.derivation()),
        "elements": c.elements().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn cable_from_json(v: &Value) -> Result<CablePrefix> {
    let obj = as_obj(v, "a cable")?;
    let d = derivation_from_json(
        obj.get("derivation")
            .ok_or_else(|| parse_err("cable is missing \"derivation\""))?,
    )?;
    let elements = obj
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("cable is missing \"elements\""))?
        .iter()
        .map(|e| poly_from_json(e).and_then(|p| p.embed(d.vars())))
        .collect::<Result<Vec<_>>>()?;
    CablePrefix::new(d, elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cable_core::poly::parse_text;

    #[test]
    fn poly_round_trip_and_schema() {
        let vars = VarSet::new(["a", "x", "v"]).unwrap();
        let p = parse_text(&vars, "1/2*a*v^2 - x").unwrap();
        let v = poly_to_json(&p);
        assert_eq!(
            v,
            serde_json::json!({
                "vars": ["a", "x", "v"],
                "terms": [
                    {"c": "1/2", "e": [1, 0, 2]},
                    {"c": "-1", "e": [0, 1, 0]},
                ],
            })
        );
        assert_eq!(poly_from_json(&v).unwrap(), p);
        // Zero polynomial.
        let z = Polynomial::zero(&vars);
        assert_eq!(poly_from_json(&poly_to_json(&z)).unwrap(), z);
    }

    #[test]
    fn cable_round_trip() {
        let vars = VarSet::new(["x", "v"]).unwrap();
        let d = Derivation::partial(&vars, "v").unwrap();
        let elems = vec![
            parse_text(&vars, "x").unwrap(),
            parse_text(&vars, "x*v").unwrap(),
        ];
        let c = CablePrefix::new(d, elems).unwrap();
        let v = cable_to_json(&c);
        let back = cable_from_json(&v).unwrap();
        assert_eq!(back.elements(), c.elements());
    }

    #[test]
    fn derivation_round_trip() {
        let vars = VarSet::new(["a", "x", "v"]).unwrap();
        let d = Derivation::new(
            &vars,
            &[
                ("x", parse_text(&vars, "a^3").unwrap()),
                ("v", parse_text(&vars, "a^2").unwrap()),
            ],
        )
        .unwrap();
        let v = derivation_to_json(&d);
        let back = derivation_from_json(&v).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(poly_from_json(&serde_json::json!({"vars": ["a"]})).is_err());
        assert!(poly_from_json(&serde_json::json!({
            "vars": ["a"],
            "terms": [{"c": "1", "e": [1, 2]}]
        }))
        .is_err());
        assert!(poly_from_json(&serde_json::json!([1, 2])).is_err());
    }
}
