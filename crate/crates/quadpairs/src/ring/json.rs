//! Declarative JSON form for ring descriptors, elements, and homomorphisms.
//!
//! A ring is `"Z"`, `{"zmod":n}`, `{"gf":q}` with q = 2^m, `{"poly":[base,
//! var]}` (optionally `[base, var, bound]`), `{"laurent":[base, var]}`,
//! `{"quot":{<base keys>, "by":"gen"}}`, or `{"product":[...]}`. Elements
//! are text in the grammar of [`super::parse`].

use super::{Element, Hom, HomSpec, Ring};
use crate::error::{Error, Result};
use serde_json::{json, Map, Value as Json};
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn ring_to_json(r: &Ring) -> Json {
    match r {
        Ring::Int => json!("Z"),
        Ring::ZMod(n) => json!({ "zmod": n }),
        Ring::Gf(m) => json!({ "gf": 1u64 << m }),
        Ring::Poly { base, var, bound } => match bound {
            None => json!({ "poly": [ring_to_json(base), var] }),
            Some(b) => json!({ "poly": [ring_to_json(base), var, b] }),
        },
        Ring::Laurent { base, var, .. } => json!({ "laurent": [ring_to_json(base), var] }),
        Ring::Quot { base, modulus } => {
            let base_json = ring_to_json(base);
            let mut obj = match base_json {
                Json::Object(m) => m,
                other => {
                    let mut m = Map::new();
                    m.insert("base".into(), other);
                    m
                }
            };
            obj.insert("by".into(), json!(super::parse::print_value(base, modulus)));
            json!({ "quot": obj })
        }
        Ring::Product(fs) => {
            json!({ "product": fs.iter().map(|f| ring_to_json(f)).collect::<Vec<_>>() })
        }
    }
}

pub fn ring_from_json(j: &Json) -> Result<Arc<Ring>> {
    if let Some(s) = j.as_str() {
        return match s {
            "Z" => Ok(Ring::int()),
            other => Err(Error::Parse(format!("unknown ring name {other:?}"))),
        };
    }
    let obj = j.as_object().ok_or_else(|| Error::Parse("ring must be a string or object".into()))?;
    if let Some(n) = obj.get("zmod") {
        let n = n.as_u64().ok_or_else(|| Error::Parse("zmod needs an integer".into()))?;
        if n < 2 {
            return Err(Error::Parse("zmod needs modulus >= 2".into()));
        }
        return Ok(Ring::zmod(n));
    }
    if let Some(q) = obj.get("gf") {
        let q = q.as_u64().ok_or_else(|| Error::Parse("gf needs an integer".into()))?;
        let m = match q {
            2 => 1,
            4 => 2,
            8 => 3,
            16 => 4,
            _ => return Err(Error::Parse(format!("unsupported field size {q}"))),
        };
        return Ok(Ring::gf(m));
    }
    if let Some(args) = obj.get("poly").or_else(|| obj.get("laurent")) {
        let arr = args.as_array().ok_or_else(|| Error::Parse("poly needs [base, var]".into()))?;
        if arr.len() < 2 {
            return Err(Error::Parse("poly needs [base, var]".into()));
        }
        let base = ring_from_json(&arr[0])?;
        let var = arr[1].as_str().ok_or_else(|| Error::Parse("variable must be a string".into()))?;
        if obj.contains_key("laurent") {
            return Ok(Ring::laurent(base, var));
        }
        return Ok(match arr.get(2).and_then(|b| b.as_i64()) {
            Some(b) => Ring::poly_bounded(base, var, b),
            None => Ring::poly(base, var),
        });
    }
    if let Some(inner) = obj.get("quot") {
        let inner_obj =
            inner.as_object().ok_or_else(|| Error::Parse("quot needs an object".into()))?;
        let by = inner_obj
            .get("by")
            .and_then(|b| b.as_str())
            .ok_or_else(|| Error::Parse("quot needs a \"by\" generator".into()))?;
        let mut base_obj = inner_obj.clone();
        base_obj.remove("by");
        let base_json =
            base_obj.get("base").cloned().unwrap_or(Json::Object(base_obj));
        let base = ring_from_json(&base_json)?;
        return Ring::quot(base, by);
    }
    if let Some(fs) = obj.get("product") {
        let arr = fs.as_array().ok_or_else(|| Error::Parse("product needs an array".into()))?;
        if arr.len() < 2 {
            return Err(Error::Parse("product needs >= 2 factors".into()));
        }
        let factors: Result<Vec<Arc<Ring>>> = arr.iter().map(ring_from_json).collect();
        return Ok(Ring::product(factors?));
    }
    Err(Error::Parse(format!("unrecognized ring object {j}")))
}

pub fn element_to_json(e: &Element) -> Json {
    json!(e.to_string())
}

pub fn element_from_json(ring: &Arc<Ring>, j: &Json) -> Result<Element> {
    let s = j.as_str().ok_or_else(|| Error::Parse("element must be a string".into()))?;
    ring.parse(s)
}

pub fn hom_to_json(h: &Hom) -> Json {
    fn spec_to_json(s: &HomSpec) -> Json {
        match s {
            HomSpec::Canonical => json!("canonical"),
            HomSpec::Vars(map) => {
                let vars: Map<String, Json> =
                    map.iter().map(|(v, e)| (v.clone(), json!(e.to_string()))).collect();
                json!({ "vars": vars })
            }
            HomSpec::Tuple(parts) => {
                json!({ "tuple": parts.iter().map(spec_to_json).collect::<Vec<_>>() })
            }
            HomSpec::Project(k, inner) => json!({ "project": k, "then": spec_to_json(inner) }),
        }
    }
    spec_to_json(&h.spec)
}

pub fn hom_from_json(source: Arc<Ring>, target: Arc<Ring>, j: &Json) -> Result<Hom> {
    fn spec_from_json(target: &Arc<Ring>, j: &Json) -> Result<HomSpec> {
        if j.as_str() == Some("canonical") {
            return Ok(HomSpec::Canonical);
        }
        let obj = j.as_object().ok_or_else(|| Error::Parse("hom must be an object".into()))?;
        if let Some(vars) = obj.get("vars") {
            let vmap =
                vars.as_object().ok_or_else(|| Error::Parse("vars needs an object".into()))?;
            let mut out = BTreeMap::new();
            for (v, img) in vmap {
                let s = img.as_str().ok_or_else(|| Error::Parse("image must be text".into()))?;
                out.insert(v.clone(), target.parse(s)?);
            }
            return Ok(HomSpec::Vars(out));
        }
        if let Some(parts) = obj.get("tuple") {
            let arr = parts.as_array().ok_or_else(|| Error::Parse("tuple needs array".into()))?;
            let Ring::Product(fs) = &**target else {
                return Err(Error::Parse("tuple spec needs product target".into()));
            };
            if fs.len() != arr.len() {
                return Err(Error::Dimension("tuple spec arity".into()));
            }
            let specs: Result<Vec<HomSpec>> =
                arr.iter().zip(fs).map(|(p, f)| spec_from_json(f, p)).collect();
            return Ok(HomSpec::Tuple(specs?));
        }
        if let Some(k) = obj.get("project") {
            let k = k.as_u64().ok_or_else(|| Error::Parse("project needs an index".into()))? as usize;
            let inner = obj.get("then").ok_or_else(|| Error::Parse("project needs \"then\"".into()))?;
            return Ok(HomSpec::Project(k, Box::new(spec_from_json(target, inner)?)));
        }
        Err(Error::Parse(format!("unrecognized hom object {j}")))
    }
    let spec = spec_from_json(&target, j)?;
    Ok(Hom { source, target, spec })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_json_round_trip() {
        let rings = vec![
            Ring::int(),
            Ring::zmod(4),
            Ring::gf(2),
            Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap(),
            Ring::laurent(Ring::zmod(4), "x"),
            Ring::product(vec![
                Ring::quot(Ring::poly(Ring::gf(2), "x"), "x^2+1").unwrap(),
                Ring::quot(Ring::poly(Ring::gf(2), "x"), "x^2+1").unwrap(),
            ]),
        ];
        for r in rings {
            let j = ring_to_json(&r);
            let back = ring_from_json(&j).unwrap();
            assert_eq!(back, r, "{j}");
        }
    }

    #[test]
    fn spec_shape_accepted() {
        // the documented example spelling
        let j: Json =
            serde_json::from_str(r#"{"quot":{"poly":["Z","x"],"by":"4x"}}"#).unwrap();
        let r = ring_from_json(&j).unwrap();
        let e = r.parse("5+x").unwrap();
        assert_eq!(e.to_string(), "5+x");
    }
}
