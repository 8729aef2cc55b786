//! JSON file formats for the command-line interface: algebras with
//! involution, cover presentations with gluing data, and report objects.

use crate::descent::{Cochain, Cover, Gluing, Overlap};
use crate::error::{Error, Result};
use crate::involution::Involution;
use crate::linalg::Mat;
use crate::obstruction::{FunForm, NontrivCert, ObstructionReport, Verdict};
use crate::quadratic::Classification;
use crate::reproduce::ExampleReport;
use crate::ring::{element_from_json, hom_from_json, hom_to_json, ring_from_json, ring_to_json, Ring};
use serde_json::{json, Value as Json};
use std::sync::Arc;

pub fn mat_to_json(m: &Mat) -> Json {
    let rows: Vec<Json> = (0..m.rows)
        .map(|i| Json::Array((0..m.cols).map(|j| json!(m.get(i, j).to_string())).collect()))
        .collect();
    Json::Array(rows)
}

pub fn mat_from_json(ring: &Arc<Ring>, j: &Json) -> Result<Mat> {
    let rows = j.as_array().ok_or_else(|| Error::Parse("matrix must be an array".into()))?;
    let r = rows.len();
    let c = rows
        .first()
        .and_then(|x| x.as_array())
        .map(|x| x.len())
        .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?;
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::Parse("matrix row".into()))?;
        if row.len() != c {
            return Err(Error::Parse("ragged matrix".into()));
        }
        for e in row {
            data.push(element_from_json(ring, e)?.v);
        }
    }
    Mat::from_values(ring.clone(), r, c, data)
}

/// `{"ring": ..., "n": ..., "u": [[...]]}`
pub fn algebra_to_json(a: &Involution) -> Json {
    json!({ "ring": ring_to_json(&a.ring), "n": a.n, "u": mat_to_json(&a.u) })
}

pub fn algebra_from_json(j: &Json) -> Result<Involution> {
    let obj = j.as_object().ok_or_else(|| Error::Parse("algebra must be an object".into()))?;
    let ring = ring_from_json(obj.get("ring").ok_or_else(|| Error::Parse("missing ring".into()))?)?;
    let n = obj.get("n").and_then(|x| x.as_u64()).ok_or_else(|| Error::Parse("missing n".into()))?;
    let u = mat_from_json(&ring, obj.get("u").ok_or_else(|| Error::Parse("missing u".into()))?)?;
    if u.rows != n as usize {
        return Err(Error::Parse("u size does not match n".into()));
    }
    Involution::new(ring, u)
}

/// Cover presentations load from
/// `{"charts": [...], "overlaps": [{"i": 0, "j": 1, "ring": ..., "res_i":
/// ..., "res_j": ..., "v": [[...]]}], "degree": n, "involutions": [u, ...]}`.
pub fn gluing_from_json(j: &Json) -> Result<(Gluing, Vec<Arc<Involution>>)> {
    let obj = j.as_object().ok_or_else(|| Error::Parse("cover must be an object".into()))?;
    let charts_json = obj
        .get("charts")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing charts".into()))?;
    let charts: Vec<Arc<Ring>> =
        charts_json.iter().map(ring_from_json).collect::<Result<_>>()?;
    let n = obj
        .get("degree")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| Error::Parse("missing degree".into()))? as usize;
    let overlaps_json = obj
        .get("overlaps")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing overlaps".into()))?;
    let mut overlaps = Vec::new();
    let mut vs = Vec::new();
    for o in overlaps_json {
        let oo = o.as_object().ok_or_else(|| Error::Parse("overlap must be an object".into()))?;
        let i = oo.get("i").and_then(|x| x.as_u64()).ok_or_else(|| Error::Parse("overlap i".into()))?
            as usize;
        let jj = oo.get("j").and_then(|x| x.as_u64()).ok_or_else(|| Error::Parse("overlap j".into()))?
            as usize;
        let ring =
            ring_from_json(oo.get("ring").ok_or_else(|| Error::Parse("overlap ring".into()))?)?;
        let res_i = hom_from_json(
            charts.get(i).ok_or_else(|| Error::Parse("overlap i out of range".into()))?.clone(),
            ring.clone(),
            oo.get("res_i").ok_or_else(|| Error::Parse("missing res_i".into()))?,
        )?;
        let res_j = hom_from_json(
            charts.get(jj).ok_or_else(|| Error::Parse("overlap j out of range".into()))?.clone(),
            ring.clone(),
            oo.get("res_j").ok_or_else(|| Error::Parse("missing res_j".into()))?,
        )?;
        let v = mat_from_json(&ring, oo.get("v").ok_or_else(|| Error::Parse("missing v".into()))?)?;
        overlaps.push(Overlap { i, j: jj, ring, res_i, res_j });
        vs.push(v);
    }
    let cover = Cover::new(charts.clone(), overlaps)?;
    let gluing = Gluing::new(cover, n, vs, 2)?;
    let invs_json = obj
        .get("involutions")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing involutions".into()))?;
    if invs_json.len() != charts.len() {
        return Err(Error::Parse("one involution datum per chart".into()));
    }
    let sigmas: Vec<Arc<Involution>> = charts
        .iter()
        .zip(invs_json)
        .map(|(r, u)| Ok(Arc::new(Involution::new(r.clone(), mat_from_json(r, u)?)?)))
        .collect::<Result<_>>()?;
    Ok((gluing, sigmas))
}

pub fn gluing_to_json(g: &Gluing, sigmas: &[Arc<Involution>]) -> Json {
    let overlaps: Vec<Json> = g
        .cover
        .overlaps
        .iter()
        .enumerate()
        .map(|(o, ov)| {
            json!({
                "i": ov.i,
                "j": ov.j,
                "ring": ring_to_json(&ov.ring),
                "res_i": hom_to_json(&ov.res_i),
                "res_j": hom_to_json(&ov.res_j),
                "v": mat_to_json(&g.v[o]),
            })
        })
        .collect();
    json!({
        "charts": g.cover.charts.iter().map(|r| ring_to_json(r)).collect::<Vec<_>>(),
        "degree": g.n,
        "overlaps": overlaps,
        "involutions": sigmas.iter().map(|s| mat_to_json(&s.u)).collect::<Vec<_>>(),
    })
}

pub fn classification_to_json(c: &Classification) -> Json {
    match c {
        Classification::Empty { certificate, degree } => json!({
            "status": "EMPTY",
            "degree": degree,
            "certificate": {
                "modulus": certificate.modulus().to_string(),
                "value": certificate.value().to_string(),
            },
        }),
        Classification::Classified { particular, coset_generators, skew, alt } => json!({
            "status": "CLASSIFIED",
            "particular_ell": mat_to_json(&particular.ell),
            "normalized_ell": mat_to_json(&particular.normalized),
            "coset_generators": coset_generators.iter().map(mat_to_json).collect::<Vec<_>>(),
            "skew_generators": skew.gens.len(),
            "alt_generators": alt.gens.len(),
        }),
    }
}

fn cochain_to_json(c: &Cochain) -> Json {
    json!(c.sections.iter().map(mat_to_json).collect::<Vec<_>>())
}

fn cert_to_json(c: &NontrivCert) -> Json {
    match c {
        NontrivCert::Functional(f) => {
            let form = match f.form {
                FunForm::Coordinate { row, col } => json!({
                    "kind": "coordinate",
                    "position": [row + 1, col + 1],
                }),
                FunForm::General(_) => json!({ "kind": "functional" }),
            };
            json!({
                "type": "functional",
                "overlap": f.overlap,
                "degree": f.degree,
                "form": form,
                "modulus": f.modulus.to_string(),
                "value": f.value.to_string(),
                "generators_checked": f.generators_checked,
            })
        }
        NontrivCert::ScalarSections(s) => json!({
            "type": "scalar_sections",
            "sections_count": s.sections_count,
            "two_is_zero": s.two_is_zero,
        }),
        NontrivCert::Equivariant(e) => json!({
            "type": "equivariant",
            "generator_count": e.generator_count,
            "solution_dim": e.solution_dim,
            "nonzero_requirement": e.trd_witness,
        }),
        NontrivCert::FromWeak(inner) => json!({
            "type": "from_weak",
            "inner": cert_to_json(inner),
        }),
    }
}

pub fn obstruction_report_to_json(r: &ObstructionReport) -> Json {
    let verdict = match &r.verdict {
        Verdict::Trivial(w) => json!({
            "verdict": "TRIVIAL",
            "witness": w.lifts.iter().map(mat_to_json).collect::<Vec<_>>(),
        }),
        Verdict::Nontrivial(c) => json!({
            "verdict": "NONTRIVIAL",
            "certificate": cert_to_json(c),
        }),
        Verdict::Unknown { degree } => json!({
            "verdict": "UNKNOWN",
            "degree": degree,
        }),
    };
    json!({
        "kind": match r.kind {
            crate::obstruction::ObstructionKind::Strong => "strong",
            crate::obstruction::ObstructionKind::Weak => "weak",
        },
        "degree": r.degree,
        "representative": cochain_to_json(&r.representative),
        "result": verdict,
    })
}

pub fn example_report_to_json(r: &ExampleReport) -> Json {
    json!({
        "id": r.id.to_string(),
        "entries": r.entries.iter().map(|(k, v)| json!({ "key": k, "value": v })).collect::<Vec<_>>(),
        "passed": r.passed,
        "diffs": r.diffs,
    })
}
