//! Scene files: a surface, named curves, twisted complexes and morphisms, and the default cutoff.
//!
//! All numbers are exact rationals written as `["num", "den"]` string pairs. Intersection points
//! are referred to by their chart location, so files stay valid when curves are added.

use crate::arrangement::Arrangement;
use crate::curve::{pt_from_json, pt_json, PLCurve};
use crate::error::{Error, Result};
use crate::floer::{canonical_qis, Chain, Engine};
use crate::geom::Pt;
use crate::novikov::Novikov;
use crate::polygons::Obj;
use crate::rat::{self, Q};
use crate::surface::FlatSurface;
use crate::twisted::{Entries, TwistedComplex};
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceSpec {
    Torus { side_x: Q, side_y: Q },
    LSurface,
    Annulus,
    Rectilinear { vertices: Vec<Pt>, pairs: Vec<(usize, usize)> },
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<FlatSurface> {
        match self {
            SurfaceSpec::Torus { side_x, side_y } => FlatSurface::torus(side_x.clone(), side_y.clone()),
            SurfaceSpec::LSurface => Ok(FlatSurface::l_surface()),
            SurfaceSpec::Annulus => Ok(FlatSurface::annulus()),
            SurfaceSpec::Rectilinear { vertices, pairs } => FlatSurface::rectilinear(vertices.clone(), pairs),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SurfaceSpec::Torus { side_x, side_y } => {
                json!({"kind": "torus", "side_x": rat::to_json(side_x), "side_y": rat::to_json(side_y)})
            }
            SurfaceSpec::LSurface => json!({"kind": "l-surface"}),
            SurfaceSpec::Annulus => json!({"kind": "annulus"}),
            SurfaceSpec::Rectilinear { vertices, pairs } => json!({
                "kind": "rectilinear",
                "vertices": vertices.iter().map(pt_json).collect::<Vec<_>>(),
                "pairs": pairs.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<SurfaceSpec> {
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| input("surface needs a 'kind'"))?;
        match kind {
            "torus" => Ok(SurfaceSpec::Torus { side_x: q_field(v, "side_x")?, side_y: q_field(v, "side_y")? }),
            "l-surface" => Ok(SurfaceSpec::LSurface),
            "annulus" => Ok(SurfaceSpec::Annulus),
            "rectilinear" => {
                let vertices = array(v, "vertices")?.iter().map(pt_from_json).collect::<std::result::Result<Vec<_>, _>>().map_err(input)?;
                let pairs = array(v, "pairs")?
                    .iter()
                    .map(|p| {
                        let a = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| input("pair must be [i, j]"))?;
                        let ix = |x: &Value| x.as_u64().map(|x| x as usize).ok_or_else(|| input("edge index must be a natural number"));
                        Ok((ix(&a[0])?, ix(&a[1])?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SurfaceSpec::Rectilinear { vertices, pairs })
            }
            k => Err(input(format!("unknown surface kind '{k}'"))),
        }
    }
}

/// Entries of a twisted-complex differential or a morphism, before intersection points are
/// resolved against an arrangement: `(from, to, [(location, coefficient)])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntrySpec {
    pub from: usize,
    pub to: usize,
    pub terms: Vec<(Pt, Novikov)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSpec {
    pub name: String,
    /// `(curve name, shifted)`
    pub objects: Vec<(String, bool)>,
    pub delta: Vec<EntrySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismBody {
    Entries(Vec<EntrySpec>),
    /// The closed morphism `e` between two isotopic curves of equal holonomy.
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub body: MorphismBody,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub description: String,
    pub spec: SurfaceSpec,
    pub surface: FlatSurface,
    pub cutoff: Q,
    pub curves: Vec<PLCurve>,
    pub complexes: Vec<ComplexSpec>,
    pub morphisms: Vec<MorphismSpec>,
    /// Curve pairs checked by `verify d2`.
    pub pairs: Vec<(String, String)>,
    /// Curve sequences checked by `verify ainfty`.
    pub sequences: Vec<Vec<String>>,
    /// Default test curves for quasi-isomorphism tests.
    pub tests: Vec<String>,
}

fn input(s: impl Into<String>) -> Error {
    Error::Input(s.into())
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.get(key).and_then(Value::as_array).ok_or_else(|| input(format!("missing array '{key}'")))
}

fn opt_array<'a>(v: &'a Value, key: &str) -> Result<&'a [Value]> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(&[]),
        Some(Value::Array(a)) => Ok(a),
        Some(_) => Err(input(format!("'{key}' must be an array"))),
    }
}

fn q_field(v: &Value, key: &str) -> Result<Q> {
    rat::from_json(v.get(key).ok_or_else(|| input(format!("missing '{key}'")))?).map_err(input)
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| input(format!("missing string '{key}'")))
}

fn names(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| input("expected a list of names"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| input("names must be strings")))
        .collect()
}

fn entries_from_json(v: &[Value], cutoff: &Q) -> Result<Vec<EntrySpec>> {
    let lam = Some(cutoff.clone());
    v.iter()
        .map(|e| {
            let ix = |k: &str| e.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| input(format!("entry needs '{k}'")));
            let chain = e.get("chain").unwrap_or(e);
            let terms = array(chain, "terms")?
                .iter()
                .map(|t| {
                    let at = pt_from_json(t.get("at").ok_or_else(|| input("term needs 'at'"))?).map_err(input)?;
                    let c = match t.get("coefficient") {
                        None => Novikov::one(lam.clone()),
                        Some(c) => Novikov::from_json(c, &lam).map_err(input)?,
                    };
                    Ok((at, c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(EntrySpec { from: ix("from")?, to: ix("to")?, terms })
        })
        .collect()
}

fn entries_to_json(es: &[EntrySpec]) -> Value {
    Value::Array(
        es.iter()
            .map(|e| {
                let terms: Vec<Value> = e.terms.iter().map(|(p, c)| json!({"at": pt_json(p), "coefficient": {"terms": c.to_json()["terms"]}})).collect();
                json!({"from": e.from, "to": e.to, "chain": {"terms": terms}})
            })
            .collect(),
    )
}

impl ComplexSpec {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "objects": self.objects.iter().map(|(n, s)| json!({"curve": n, "shift": s})).collect::<Vec<_>>(),
            "delta": entries_to_json(&self.delta),
        })
    }
}

/// Splits `"A[1]"` into `("A", true)`.
pub fn parse_object(s: &str) -> (&str, bool) {
    match s.strip_suffix("[1]") {
        Some(n) => (n, true),
        None => (s, false),
    }
}

impl Scene {
    pub fn new(name: &str, description: &str, spec: SurfaceSpec, cutoff: Q) -> Result<Scene> {
        let surface = spec.build()?;
        Ok(Scene {
            name: name.into(),
            description: description.into(),
            spec,
            surface,
            cutoff,
            curves: Vec::new(),
            complexes: Vec::new(),
            morphisms: Vec::new(),
            pairs: Vec::new(),
            sequences: Vec::new(),
            tests: Vec::new(),
        })
    }

    pub fn parse(text: &str) -> Result<Scene> {
        let v: Value = serde_json::from_str(text).map_err(|e| input(format!("scene is not JSON: {e}")))?;
        Scene::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Scene> {
        let spec = SurfaceSpec::from_json(v.get("surface").ok_or_else(|| input("scene needs a 'surface'"))?)?;
        let cutoff = match v.get("cutoff") {
            None | Some(Value::Null) => rat::qi(1),
            Some(c) => rat::from_json(c).map_err(input)?,
        };
        if cutoff <= Q::from_integer(0.into()) {
            return Err(input("cutoff must be positive"));
        }
        let name = v.get("name").and_then(Value::as_str).unwrap_or("scene");
        let description = v.get("description").and_then(Value::as_str).unwrap_or("");
        let mut s = Scene::new(name, description, spec, cutoff)?;
        for c in opt_array(v, "curves")? {
            let name = str_field(c, "name")?;
            let runs = array(c, "runs")?
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| input("a run is a list of points"))?
                        .iter()
                        .map(|p| pt_from_json(p).map_err(input))
                        .collect::<Result<Vec<Pt>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let marked = c.get("marked").and_then(Value::as_u64).unwrap_or(0) as usize;
            let curve = PLCurve::from_runs(&s.surface, name, &runs, marked)?;
            s.curves.push(curve);
        }
        for c in opt_array(v, "complexes")? {
            let objects = array(c, "objects")?
                .iter()
                .map(|o| match o {
                    Value::String(n) => {
                        let (n, sh) = parse_object(n);
                        Ok((n.to_string(), sh))
                    }
                    _ => Ok((str_field(o, "curve")?.to_string(), o.get("shift").and_then(Value::as_bool).unwrap_or(false))),
                })
                .collect::<Result<Vec<_>>>()?;
            let delta = entries_from_json(opt_array(c, "delta")?, &s.cutoff)?;
            s.complexes.push(ComplexSpec { name: str_field(c, "name")?.into(), objects, delta });
        }
        for m in opt_array(v, "morphisms")? {
            let body = if m.get("canonical").and_then(Value::as_bool) == Some(true) {
                MorphismBody::Canonical
            } else {
                MorphismBody::Entries(entries_from_json(array(m, "entries")?, &s.cutoff)?)
            };
            s.morphisms.push(MorphismSpec {
                name: str_field(m, "name")?.into(),
                source: str_field(m, "source")?.into(),
                target: str_field(m, "target")?.into(),
                body,
            });
        }
        for p in opt_array(v, "pairs")? {
            let n = names(p)?;
            if n.len() != 2 {
                return Err(input("a pair names two curves"));
            }
            s.pairs.push((n[0].clone(), n[1].clone()));
        }
        for q in opt_array(v, "sequences")? {
            s.sequences.push(names(q)?);
        }
        s.tests = match v.get("tests") {
            None | Some(Value::Null) => Vec::new(),
            Some(t) => names(t)?,
        };
        s.check_names()?;
        Ok(s)
    }

    fn check_names(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for n in self.curves.iter().map(|c| &c.name).chain(self.complexes.iter().map(|c| &c.name)).chain(self.morphisms.iter().map(|m| &m.name)) {
            if n.is_empty() || n.ends_with("[1]") {
                return Err(input(format!("bad name '{n}'")));
            }
            if !seen.insert(n.clone()) {
                return Err(input(format!("duplicate name '{n}'")));
            }
        }
        let curve = |n: &str| -> Result<()> {
            let (n, _) = parse_object(n);
            if self.curve_index(n).is_none() {
                return Err(input(format!("unknown curve '{n}'")));
            }
            Ok(())
        };
        for c in &self.complexes {
            for (o, _) in &c.objects {
                curve(o)?;
            }
            for e in &c.delta {
                if e.from >= e.to || e.to >= c.objects.len() {
                    return Err(input(format!("{}: entry ({}, {}) is not strictly upper triangular", c.name, e.from, e.to)));
                }
            }
        }
        for m in &self.morphisms {
            for n in [&m.source, &m.target] {
                if self.complex_spec(n).is_none() && self.curve_index(parse_object(n).0).is_none() {
                    return Err(input(format!("{}: unknown object '{n}'", m.name)));
                }
            }
        }
        for (a, b) in &self.pairs {
            curve(a)?;
            curve(b)?;
        }
        for s in &self.sequences {
            for n in s {
                curve(n)?;
            }
        }
        for n in &self.tests {
            curve(n)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("description".into(), json!(self.description));
        m.insert("surface".into(), self.spec.to_json());
        m.insert("cutoff".into(), rat::to_json(&self.cutoff));
        m.insert("curves".into(), Value::Array(self.curves.iter().map(PLCurve::to_json).collect()));
        m.insert("complexes".into(), Value::Array(self.complexes.iter().map(ComplexSpec::to_json).collect()));
        let morphisms: Vec<Value> = self
            .morphisms
            .iter()
            .map(|f| {
                let mut o = json!({"name": f.name, "source": f.source, "target": f.target});
                match &f.body {
                    MorphismBody::Canonical => o["canonical"] = json!(true),
                    MorphismBody::Entries(es) => o["entries"] = entries_to_json(es),
                }
                o
            })
            .collect();
        m.insert("morphisms".into(), Value::Array(morphisms));
        m.insert("pairs".into(), Value::Array(self.pairs.iter().map(|(a, b)| json!([a, b])).collect()));
        m.insert("sequences".into(), json!(self.sequences));
        m.insert("tests".into(), json!(self.tests));
        Value::Object(m)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("scene serializes");
        s.push('\n');
        s
    }

    pub fn add_curve(&mut self, c: PLCurve) -> usize {
        self.curves.push(c);
        self.curves.len() - 1
    }

    pub fn curve_index(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&PLCurve> {
        self.curve_index(name).map(|i| &self.curves[i])
    }

    pub fn complex_spec(&self, name: &str) -> Option<&ComplexSpec> {
        self.complexes.iter().find(|c| c.name == name)
    }

    pub fn morphism_spec(&self, name: &str) -> Option<&MorphismSpec> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    pub fn arrangement(&self) -> Arrangement {
        Arrangement::new(&self.surface, self.curves.clone())
    }

    /// `"A"` or `"A[1]"` as an object of the arrangement built from this scene.
    pub fn object(&self, name: &str) -> Result<Obj> {
        let (n, sh) = parse_object(name);
        let i = self.curve_index(n).ok_or_else(|| input(format!("unknown curve '{n}'")))?;
        Ok(Obj { curve: i, shifted: sh })
    }

    /// A named complex, or a curve (possibly `"A[1]"`) as a one-object complex.
    pub fn complex(&self, engine: &Engine, name: &str) -> Result<TwistedComplex> {
        if let Some(c) = self.complex_spec(name) {
            let objects = c.objects.iter().map(|(n, s)| Ok(Obj { curve: self.object(n)?.curve, shifted: *s })).collect::<Result<Vec<Obj>>>()?;
            let delta = resolve_entries(engine, &objects, &objects, &c.delta)?;
            return Ok(TwistedComplex { objects, delta, cutoff: engine.cutoff.clone() });
        }
        let o = self.object(name).map_err(|_| input(format!("unknown complex or curve '{name}'")))?;
        Ok(TwistedComplex::single(o, engine.cutoff.clone()))
    }

    /// A named morphism with its source and target complexes.
    pub fn morphism(&self, engine: &Engine, name: &str) -> Result<(TwistedComplex, TwistedComplex, Entries)> {
        let m = self.morphism_spec(name).ok_or_else(|| input(format!("unknown morphism '{name}'")))?;
        let t = self.complex(engine, &m.source)?;
        let t2 = self.complex(engine, &m.target)?;
        let f = match &m.body {
            MorphismBody::Entries(es) => resolve_entries(engine, &t.objects, &t2.objects, es)?,
            MorphismBody::Canonical => {
                if t.len() != 1 || t2.len() != 1 {
                    return Err(input(format!("{name}: the canonical morphism joins two single curves")));
                }
                let e = canonical_qis(engine, t.objects[0], t2.objects[0])?;
                BTreeMap::from([((0, 0), e)])
            }
        };
        Ok((t, t2, f))
    }
}

/// Finds the intersection point of curves `a` and `b` at `at`.
pub fn point_at(arr: &Arrangement, a: usize, b: usize, at: &Pt) -> Result<usize> {
    arr.between(a, b)
        .into_iter()
        .find(|&p| arr.points[p].at == *at)
        .ok_or_else(|| input(format!("no intersection of {} and {} at {at}", arr.curves[a].name, arr.curves[b].name)))
}

fn resolve_entries(engine: &Engine, src: &[Obj], dst: &[Obj], es: &[EntrySpec]) -> Result<Entries> {
    let lam = engine.lam();
    let mut out: Entries = BTreeMap::new();
    for e in es {
        let (a, b) = (
            *src.get(e.from).ok_or_else(|| input(format!("entry source {} out of range", e.from)))?,
            *dst.get(e.to).ok_or_else(|| input(format!("entry target {} out of range", e.to)))?,
        );
        let c = out.entry((e.from, e.to)).or_insert_with(|| Chain::zero(a, b, lam.clone()));
        for (at, x) in &e.terms {
            c.add_term(point_at(engine.arr, a.curve, b.curve, at)?, x);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Entry specs for resolved entries, for emitting complexes back into a scene.
pub fn entry_specs(arr: &Arrangement, es: &Entries) -> Vec<EntrySpec> {
    es.iter()
        .map(|(&(from, to), c)| EntrySpec { from, to, terms: c.terms.iter().map(|(&p, x)| (arr.points[p].at.clone(), x.clone())).collect() })
        .collect()
}

/// A complex as a scene entry.
pub fn complex_spec(arr: &Arrangement, name: &str, t: &TwistedComplex) -> ComplexSpec {
    ComplexSpec {
        name: name.into(),
        objects: t.objects.iter().map(|o| (arr.curves[o.curve].name.clone(), o.shifted)).collect(),
        delta: entry_specs(arr, &t.delta),
    }
}
