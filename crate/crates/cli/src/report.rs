//! JSON views of engine values.

use flatfuk_core::arrangement::Arrangement;
use flatfuk_core::curve::{PLCurve, Verdict};
use flatfuk_core::floer::{obj_name, FloerComplex, Ranks};
use flatfuk_core::polygons::ImmersedPolygon;
use flatfuk_core::rat::{self, Q};
use flatfuk_core::surface::FlatSurface;
use flatfuk_core::twisted::{InvariantVector, QisVerdict};
use flatfuk_core::Novikov;
use serde_json::{json, Value};

pub fn q(x: &Q) -> Value {
    json!({"value": rat::to_json(x), "display": rat::fmt_q(x)})
}

pub fn series(x: &Novikov) -> Value {
    let mut v = x.to_json();
    v["display"] = json!(x.to_string());
    v
}

pub fn surface(s: &FlatSurface) -> Value {
    json!({
        "kind": format!("{:?}", s.kind()).to_lowercase(),
        "genus": s.genus(),
        "euler_characteristic": s.chi(),
        "area": q(s.area()),
        "edges": s.n_edges(),
        "vertex_classes": s.vertex_classes().len(),
        "cone_angles_quarter_turns": s.class_angles(),
    })
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Unobstructed => json!({"verdict": "unobstructed"}),
        Verdict::Obstructed(w) => json!({"verdict": "obstructed", "witness": w}),
        Verdict::Inconclusive(w) => json!({"verdict": "inconclusive", "note": w}),
    }
}

/// Winding number reduced into `[0, |χ|)` when `χ ≠ 0`.
pub fn wd_mod(wd: i64, chi: i64) -> Option<i64> {
    (chi != 0).then(|| wd.rem_euclid(chi.abs()))
}

pub fn curve(s: &FlatSurface, c: &PLCurve) -> Value {
    let wd = c.turning_number();
    json!({
        "name": c.name,
        "segments": c.len(),
        "class": c.homology_class(s),
        "turning_number": wd,
        "wd_mod_chi": wd_mod(wd, s.chi()),
        "holonomy": q(&c.holonomy(s)),
        "self_crossings": c.self_crossings().len(),
    })
}

pub fn point(arr: &Arrangement, id: usize) -> Value {
    let p = &arr.points[id];
    let deg = arr.degree_of(id, p.ci, p.cj).ok();
    json!({
        "id": id,
        "at": [rat::to_json(&p.at.x), rat::to_json(&p.at.y)],
        "at_display": p.at.to_string(),
        "curves": [arr.curves[p.ci].name, arr.curves[p.cj].name],
        "det_sign": p.det_sign,
        "degree_first_to_second": deg,
    })
}

pub fn ranks(r: &Ranks) -> Value {
    json!({"h0": r.h0, "h1": r.h1, "total": r.h0 + r.h1, "conclusive": r.conclusive})
}

pub fn floer_complex(arr: &Arrangement, c: &FloerComplex) -> Value {
    let gens: Vec<Value> = c.gens.iter().zip(&c.degrees).map(|(&p, &d)| json!({"point": p, "at": arr.points[p].at.to_string(), "degree": d})).collect();
    let mut d = Vec::new();
    for (r, row) in c.d.iter().enumerate() {
        for (col, x) in row.iter().enumerate() {
            if !x.is_zero() {
                d.push(json!({"from": c.gens[col], "to": c.gens[r], "coefficient": series(x)}));
            }
        }
    }
    json!({
        "from": obj_name(arr, c.from),
        "to": obj_name(arr, c.to),
        "cutoff": rat::to_json(&c.cutoff),
        "generators": gens,
        "differential": d,
    })
}

pub fn polygon(arr: &Arrangement, u: &ImmersedPolygon) -> Value {
    json!({
        "sequence": u.seq.iter().map(|&o| obj_name(arr, o)).collect::<Vec<_>>(),
        "output": u.output,
        "inputs": u.inputs,
        "area": q(&u.area),
        "sign": u.sign,
    })
}

pub fn invariants(v: &InvariantVector) -> Value {
    v.to_json()
}

pub fn qis(arr: &Arrangement, v: &QisVerdict) -> Value {
    json!({
        "test": obj_name(arr, v.test),
        "source_ranks": ranks(&v.source),
        "target_ranks": ranks(&v.target),
        "cone_acyclic": v.cone_acyclic,
        "square_invertible": v.square_invertible,
        "pass": v.pass,
        "note": v.note,
    })
}
