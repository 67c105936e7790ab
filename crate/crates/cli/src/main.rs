mod render;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use flatfuk_core::arrangement::Arrangement;
use flatfuk_core::construct::{hamiltonian_pushoff, resolve_connect_sum};
use flatfuk_core::curve::{rotation_of, Verdict};
use flatfuk_core::faces::Faces;
use flatfuk_core::floer::{
    boundary_offset, cf_complex, check_a_infinity, check_d_squared, hf_ranks, Chain, Engine, Signs,
};
use flatfuk_core::polygons::{ImmersedPolygon, Obj};
use flatfuk_core::rat::{self, Q};
use flatfuk_core::scene::{complex_spec, Scene};
use flatfuk_core::twisted::{cone, dehn_twist_complex, invariant_vector, quasi_iso_test, validate};
use flatfuk_core::{fixtures, Error, Pt};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "flatfuk", version, about = "Exact Floer computations for curves on flat surfaces")]
struct Cli {
    /// Novikov cutoff Λ as a rational (`1`, `3/2`); defaults to the scene's cutoff.
    #[arg(long, global = true)]
    cutoff: Option<String>,
    /// Search bound for the unobstructedness test.
    #[arg(long, global = true)]
    depth: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Surface summary, curve invariants and unobstructedness.
    Validate { scene: PathBuf },
    /// Intersection points of all curves.
    Intersect { scene: PathBuf },
    /// Floer complex CF(A, B) and its homology ranks.
    Hf { scene: PathBuf, a: String, b: String },
    /// Polygons and products m_k on a sequence of curves.
    Mk {
        scene: PathBuf,
        #[arg(num_args = 2.., required = true)]
        curves: Vec<String>,
    },
    /// Check d² = 0 or the A∞ relations.
    Verify {
        what: Check,
        scene: PathBuf,
        curves: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Invariant vector of a twisted complex or curve.
    Invariants { scene: PathBuf, complex: String },
    /// Mapping cone of a closed morphism, emitted as a scene complex.
    Cone {
        scene: PathBuf,
        morphism: String,
        /// Name of the emitted complex.
        #[arg(long)]
        name: Option<String>,
        /// Write the scene with the cone added.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The twisted complex for the Dehn twist of A about B.
    Twistcx {
        scene: PathBuf,
        a: String,
        b: String,
        /// A curve (or complex) to compare against.
        #[arg(long)]
        compare: Option<String>,
        #[arg(long, num_args = 1..)]
        tests: Vec<String>,
    },
    /// Quasi-isomorphism test of a morphism against test curves.
    Qis {
        scene: PathBuf,
        morphism: String,
        #[arg(long, num_args = 1..)]
        tests: Vec<String>,
    },
    /// Hamiltonian pushoff of a curve.
    Pushoff {
        scene: PathBuf,
        curve: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        lambda_prime: String,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oriented resolution of a crossing: `resolve SCENE A B at C`, C an id or `x,y`.
    Resolve {
        scene: PathBuf,
        a: String,
        b: String,
        #[arg(value_parser = ["at"])]
        at: String,
        point: String,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagnostic SVG of the scene.
    Render {
        scene: PathBuf,
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        svg_out: Option<PathBuf>,
        /// Shade the polygons with boundary on these curves.
        #[arg(long, num_args = 2..)]
        polygons: Vec<String>,
    },
    /// Standard scenes.
    Fixtures {
        #[command(subcommand)]
        cmd: FixtureCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    D2,
    Ainfty,
}

#[derive(Subcommand)]
enum FixtureCmd {
    List,
    Generate {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A finished command: its report and whether the check passed.
struct Outcome {
    report: Value,
    pass: bool,
    /// Raw text replacing the JSON report on stdout.
    raw: Option<String>,
}

impl Outcome {
    fn pass(report: Value) -> Outcome {
        Outcome { report, pass: true, raw: None }
    }

    fn checked(report: Value, pass: bool) -> Outcome {
        Outcome { report, pass, raw: None }
    }
}

type Res<T> = Result<T, Error>;

fn input(s: impl Into<String>) -> Error {
    Error::Input(s.into())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_) | Error::Construction(_) | Error::Arithmetic(_) => 1,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Surface(_) => "surface",
        Error::Curve(_) => "curve",
        Error::ConeContact(_) => "cone-contact",
        Error::Transversality(_) => "transversality",
        Error::Degenerate(_) => "degenerate",
        Error::Input(_) => "input",
        Error::Arithmetic(_) => "arithmetic",
        Error::Hypothesis(_) => "hypothesis",
        Error::Construction(_) => "construction",
    }
}

fn load(path: &PathBuf) -> Res<Scene> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?
    };
    Scene::parse(&text)
}

fn write_file(path: &PathBuf, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

struct Ctx {
    scene: Scene,
    arr: Arrangement,
    cutoff: Q,
    depth: Option<u32>,
}

impl Ctx {
    fn new(cli: &Cli, path: &PathBuf) -> Res<Ctx> {
        let scene = load(path)?;
        let cutoff = match &cli.cutoff {
            Some(s) => rat::parse_q(s).map_err(input)?,
            None => scene.cutoff.clone(),
        };
        if cutoff <= Q::from_integer(0.into()) {
            return Err(input("cutoff must be positive"));
        }
        let arr = scene.arrangement();
        Ok(Ctx { scene, arr, cutoff, depth: cli.depth })
    }

    fn engine(&self) -> Engine<'_> {
        Engine::new(&self.scene.surface, &self.arr, self.cutoff.clone())
    }

    fn curve(&self, name: &str) -> Res<usize> {
        self.scene.curve_index(name).ok_or_else(|| input(format!("unknown curve '{name}'")))
    }

    fn obj(&self, name: &str) -> Res<Obj> {
        self.scene.object(name)
    }

    fn header(&self) -> Value {
        json!({"scene": self.scene.name, "cutoff": rat::to_json(&self.cutoff)})
    }
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn run(cli: &Cli) -> Res<Outcome> {
    match &cli.cmd {
        Cmd::Fixtures { cmd } => fixtures_cmd(cmd),
        Cmd::Validate { scene } => validate_cmd(&Ctx::new(cli, scene)?),
        Cmd::Intersect { scene } => intersect(&Ctx::new(cli, scene)?),
        Cmd::Hf { scene, a, b } => hf(&Ctx::new(cli, scene)?, a, b),
        Cmd::Mk { scene, curves } => mk(&Ctx::new(cli, scene)?, curves),
        Cmd::Verify { what, scene, curves, max_k } => verify(&Ctx::new(cli, scene)?, *what, curves, *max_k),
        Cmd::Invariants { scene, complex } => invariants(&Ctx::new(cli, scene)?, complex),
        Cmd::Cone { scene, morphism, name, out } => cone_cmd(&Ctx::new(cli, scene)?, morphism, name.as_deref(), out.as_ref()),
        Cmd::Twistcx { scene, a, b, compare, tests } => twistcx(&Ctx::new(cli, scene)?, a, b, compare.as_deref(), tests),
        Cmd::Qis { scene, morphism, tests } => qis(&Ctx::new(cli, scene)?, morphism, tests),
        Cmd::Pushoff { scene, curve, lambda, lambda_prime, name, out } => {
            pushoff(&Ctx::new(cli, scene)?, curve, lambda, lambda_prime, name.as_deref(), out.as_ref())
        }
        Cmd::Resolve { scene, a, b, point, name, out, .. } => {
            resolve(&Ctx::new(cli, scene)?, a, b, point, name.as_deref(), out.as_ref())
        }
        Cmd::Render { scene, svg, svg_out, polygons } => render_cmd(&Ctx::new(cli, scene)?, *svg, svg_out.as_ref(), polygons),
    }
}

fn fixtures_cmd(cmd: &FixtureCmd) -> Res<Outcome> {
    match cmd {
        FixtureCmd::List => Ok(Outcome::pass(json!({"fixtures": fixtures::NAMES}))),
        FixtureCmd::Generate { name, out } => {
            let s = fixtures::generate(name)?;
            let text = s.to_text();
            match out {
                Some(p) => {
                    write_file(p, &text)?;
                    Ok(Outcome::pass(json!({"fixture": name, "written": p.display().to_string(), "curves": s.curves.len()})))
                }
                None => Ok(Outcome { report: Value::Null, pass: true, raw: Some(text) }),
            }
        }
    }
}

fn validate_cmd(cx: &Ctx) -> Res<Outcome> {
    let s = &cx.scene.surface;
    let mut pass = true;
    let curves: Vec<Value> = cx
        .scene
        .curves
        .iter()
        .map(|c| {
            let valid = c.validate(s);
            let v = c.is_unobstructed(s, cx.depth);
            pass &= valid.is_ok() && !matches!(v, Verdict::Obstructed(_));
            with(
                report::curve(s, c),
                json!({"valid": valid.is_ok(), "error": valid.err().map(|e| e.to_string()), "unobstructed": report::verdict(&v)}),
            )
        })
        .collect();
    let report = with(cx.header(), json!({"surface": report::surface(s), "curves": curves, "transversal": cx.arr.transversal}));
    Ok(Outcome::checked(report, pass))
}

fn intersect(cx: &Ctx) -> Res<Outcome> {
    if !cx.arr.transversal {
        return Err(Error::Transversality(cx.arr.witness.clone().unwrap_or_default()));
    }
    let n = cx.arr.curves.len();
    let mut counts = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            counts.push(json!({"curves": [cx.arr.curves[a].name, cx.arr.curves[b].name], "points": cx.arr.between(a, b).len()}));
        }
    }
    let points: Vec<Value> = (0..cx.arr.points.len()).map(|i| report::point(&cx.arr, i)).collect();
    Ok(Outcome::pass(with(cx.header(), json!({"transversal": true, "pairs": counts, "points": points}))))
}

fn hf(cx: &Ctx, a: &str, b: &str) -> Res<Outcome> {
    let e = cx.engine();
    let (a, b) = (cx.obj(a)?, cx.obj(b)?);
    cx.arr.check_transverse(&[a.curve, b.curve])?;
    let c = cf_complex(&e, a, b)?;
    let d2 = check_d_squared(&c);
    let r = hf_ranks(&c)?;
    let report = with(
        cx.header(),
        json!({
            "complex": report::floer_complex(&cx.arr, &c),
            "d_squared": {"ok": d2.ok, "witness": d2.witness},
            "ranks": report::ranks(&r),
        }),
    );
    Ok(Outcome::checked(report, d2.ok))
}

fn mk(cx: &Ctx, names: &[String]) -> Res<Outcome> {
    let e = cx.engine();
    let seq: Vec<Obj> = names.iter().map(|n| cx.obj(n)).collect::<Res<_>>()?;
    let ids: Vec<usize> = seq.iter().map(|o| o.curve).collect::<BTreeSet<_>>().into_iter().collect();
    cx.arr.check_transverse(&ids)?;
    let polys = e.polygons(&seq)?;
    let lam = e.lam();
    let gens: Vec<Vec<usize>> = seq.windows(2).map(|w| e.generators(w[0], w[1])).collect();
    let mut products = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    if gens.iter().all(|g| !g.is_empty()) {
        loop {
            let xs: Vec<Chain> = (0..gens.len()).map(|i| Chain::gen(seq[i], seq[i + 1], gens[i][idx[i]], lam.clone())).collect();
            let refs: Vec<&Chain> = xs.iter().collect();
            let y = e.mu(&refs)?;
            if !y.is_zero() {
                products.push(json!({"inputs": (0..gens.len()).map(|i| gens[i][idx[i]]).collect::<Vec<_>>(), "output": y.to_json(&cx.arr)}));
            }
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < gens[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
    }
    let (laws, laws_ok) = disc_laws(&e);
    let report = with(
        cx.header(),
        json!({
            "sequence": names,
            "k": seq.len() - 1,
            "polygons": polys.iter().map(|u| report::polygon(&cx.arr, u)).collect::<Vec<_>>(),
            "products": products,
            "degree_violations": e.degree_violations(),
            "disc_laws": laws,
        }),
    );
    Ok(Outcome::checked(report, e.degree_violations() == 0 && laws_ok))
}

/// `wd(∂u)` of the developed boundary.
fn boundary_wd(u: &ImmersedPolygon) -> i64 {
    let dirs: Vec<Pt> = u.boundary.iter().map(|p| p.chart.1.sub(&p.chart.0)).collect();
    -rotation_of(&dirs)
}

fn disc_laws(e: &Engine) -> (Value, bool) {
    let polys = e.all_polygons();
    let bad_wd = polys.iter().filter(|u| boundary_wd(u) != -1).count();
    let offsets: BTreeSet<Q> = polys.iter().map(|u| boundary_offset(e.surface, u)).collect();
    let ok = bad_wd == 0 && offsets.len() <= 1;
    let v = json!({
        "polygons": polys.len(),
        "boundary_wd_violations": bad_wd,
        "boundary_offsets": offsets.iter().map(report::q).collect::<Vec<_>>(),
        "offset_constant": offsets.len() <= 1,
    });
    (v, ok)
}

fn verify(cx: &Ctx, what: Check, names: &[String], max_k: usize) -> Res<Outcome> {
    if !cx.arr.transversal {
        return Err(Error::Transversality(cx.arr.witness.clone().unwrap_or_default()));
    }
    let e = cx.engine();
    let start = std::time::Instant::now();
    let mut pass = true;
    let mut results = Vec::new();
    match what {
        Check::D2 => {
            let pairs: Vec<(String, String)> = if !names.is_empty() {
                if names.len() < 2 {
                    return Err(input("verify d2 needs at least two curves"));
                }
                let mut v = Vec::new();
                for i in 0..names.len() {
                    for j in i + 1..names.len() {
                        v.push((names[i].clone(), names[j].clone()));
                    }
                }
                v
            } else if !cx.scene.pairs.is_empty() {
                cx.scene.pairs.clone()
            } else {
                let c = &cx.scene.curves;
                (0..c.len()).flat_map(|i| (i + 1..c.len()).map(move |j| (c[i].name.clone(), c[j].name.clone()))).collect()
            };
            for (a, b) in &pairs {
                let c = cf_complex(&e, cx.obj(a)?, cx.obj(b)?)?;
                let chk = check_d_squared(&c);
                pass &= chk.ok;
                results.push(json!({"complex": [a, b], "generators": c.gens.len(), "ok": chk.ok, "checked": chk.checked, "witness": chk.witness}));
            }
        }
        Check::Ainfty => {
            let seqs: Vec<Vec<String>> = if !names.is_empty() {
                vec![names.to_vec()]
            } else if !cx.scene.sequences.is_empty() {
                cx.scene.sequences.clone()
            } else {
                vec![cx.scene.curves.iter().map(|c| c.name.clone()).collect()]
            };
            for s in &seqs {
                let objs: Vec<Obj> = s.iter().map(|n| cx.obj(n)).collect::<Res<_>>()?;
                let chk = check_a_infinity(&e, &objs, max_k, Signs::Standard)?;
                pass &= chk.ok;
                results.push(json!({"objects": s, "max_k": max_k, "ok": chk.ok, "checked": chk.checked, "witness": chk.witness}));
            }
        }
    }
    let (laws, laws_ok) = disc_laws(&e);
    pass &= laws_ok && e.degree_violations() == 0;
    let report = with(
        cx.header(),
        json!({
            "check": match what { Check::D2 => "d2", Check::Ainfty => "ainfty" },
            "checked": results.len(),
            "results": results,
            "degree_violations": e.degree_violations(),
            "disc_laws": laws,
            "pass": pass,
            "elapsed_ms": if std::env::var_os("FLATFUK_TIMING").is_some() { json!(start.elapsed().as_millis() as u64) } else { Value::Null },
        }),
    );
    Ok(Outcome::checked(report, pass))
}

fn invariants(cx: &Ctx, name: &str) -> Res<Outcome> {
    let e = cx.engine();
    let t = cx.scene.complex(&e, name)?;
    let v = validate(&e, &t)?;
    let inv = invariant_vector(&cx.scene.surface, &cx.arr, &t.objects);
    let report = with(
        cx.header(),
        json!({
            "complex": name,
            "objects": t.describe(&cx.arr),
            "maurer_cartan": {"ok": v.ok, "surviving": v.surviving.iter().map(|(k, l, s)| json!([k, l, s])).collect::<Vec<_>>()},
            "invariants": report::invariants(&inv),
            "zero": inv.is_zero(),
            "euler_characteristic": cx.scene.surface.chi(),
        }),
    );
    Ok(Outcome::checked(report, v.ok))
}

fn cone_cmd(cx: &Ctx, morphism: &str, name: Option<&str>, out: Option<&PathBuf>) -> Res<Outcome> {
    let e = cx.engine();
    let (t, t2, f) = cx.scene.morphism(&e, morphism)?;
    let c = cone(&e, &t, &t2, &f)?;
    let name = name.map(str::to_string).unwrap_or_else(|| format!("Cone_{morphism}"));
    let spec = complex_spec(&cx.arr, &name, &c);
    let inv = invariant_vector(&cx.scene.surface, &cx.arr, &c.objects);
    if let Some(p) = out {
        let mut s = cx.scene.clone();
        s.complexes.retain(|x| x.name != name);
        s.complexes.push(spec.clone());
        write_file(p, &s.to_text())?;
    }
    let report = with(
        cx.header(),
        json!({
            "morphism": morphism,
            "objects": c.describe(&cx.arr),
            "complex": spec.to_json(),
            "invariants": report::invariants(&inv),
            "zero": inv.is_zero(),
        }),
    );
    Ok(Outcome::pass(report))
}

fn tests_of(cx: &Ctx, tests: &[String]) -> Res<Vec<Obj>> {
    let names = if tests.is_empty() { &cx.scene.tests } else { tests };
    if names.is_empty() {
        return Err(input("no test curves given and none in the scene"));
    }
    names.iter().map(|n| cx.obj(n)).collect()
}

fn twistcx(cx: &Ctx, a: &str, b: &str, compare: Option<&str>, tests: &[String]) -> Res<Outcome> {
    let e = cx.engine();
    let t = dehn_twist_complex(&e, cx.curve(a)?, cx.curve(b)?)?;
    let v = validate(&e, &t)?;
    let inv = invariant_vector(&cx.scene.surface, &cx.arr, &t.objects);
    let mut pass = v.ok;
    let mut report = with(
        cx.header(),
        json!({
            "objects": t.describe(&cx.arr),
            "complex": complex_spec(&cx.arr, &format!("Tw_{b}_{a}"), &t).to_json(),
            "maurer_cartan_ok": v.ok,
            "invariants": report::invariants(&inv),
        }),
    );
    if let Some(c) = compare {
        let t2 = cx.scene.complex(&e, c)?;
        let inv2 = invariant_vector(&cx.scene.surface, &cx.arr, &t2.objects);
        let tests = tests_of(cx, tests)?;
        let vs = quasi_iso_test(&e, &t, &t2, None, &tests)?;
        let ranks_equal = vs.iter().all(|v| v.source.h0 + v.source.h1 == v.target.h0 + v.target.h1);
        pass &= inv == inv2 && ranks_equal;
        report = with(
            report,
            json!({"compare": {
                "with": c,
                "invariants": report::invariants(&inv2),
                "invariants_equal": inv == inv2,
                "tests": vs.iter().map(|v| report::qis(&cx.arr, v)).collect::<Vec<_>>(),
                "ranks_equal": ranks_equal,
            }}),
        );
    }
    Ok(Outcome::checked(report, pass))
}

fn qis(cx: &Ctx, morphism: &str, tests: &[String]) -> Res<Outcome> {
    let e = cx.engine();
    let (t, t2, f) = cx.scene.morphism(&e, morphism)?;
    let tests = tests_of(cx, tests)?;
    let vs = quasi_iso_test(&e, &t, &t2, Some(&f), &tests)?;
    let pass = vs.iter().all(|v| v.pass);
    let report = with(
        cx.header(),
        json!({
            "morphism": morphism,
            "source": t.describe(&cx.arr),
            "target": t2.describe(&cx.arr),
            "tests": vs.iter().map(|v| report::qis(&cx.arr, v)).collect::<Vec<_>>(),
            "pass": pass,
        }),
    );
    Ok(Outcome::checked(report, pass))
}

fn pushoff(cx: &Ctx, name: &str, l: &str, lp: &str, new: Option<&str>, out: Option<&PathBuf>) -> Res<Outcome> {
    let ix = cx.curve(name)?;
    let (l, lp) = (rat::parse_q(l).map_err(input)?, rat::parse_q(lp).map_err(input)?);
    let new = new.map(str::to_string).unwrap_or_else(|| format!("{name}'"));
    if cx.scene.curve_index(&new).is_some() {
        return Err(input(format!("curve '{new}' already exists")));
    }
    let s = &cx.scene.surface;
    let p = hamiltonian_pushoff(s, &cx.arr, ix, &l, &lp, &new)?;
    let mut scene = cx.scene.clone();
    let j = scene.add_curve(p.clone());
    let arr = scene.arrangement();
    if !arr.transversal {
        return Err(Error::Construction(format!("pushoff is not transverse: {}", arr.witness.clone().unwrap_or_default())));
    }
    let e = Engine::new(s, &arr, cx.cutoff.clone());
    let (a, b) = (Obj::new(ix), Obj::new(j));
    let mut areas: BTreeSet<Q> = BTreeSet::new();
    for seq in [[a, b], [b, a]] {
        areas.extend(e.polygons(&seq)?.into_iter().map(|u| u.area));
    }
    let ranks = hf_ranks(&cf_complex(&e, a, b)?)?;
    let (h0, h1) = (cx.arr.curves[ix].holonomy(s), p.holonomy(s));
    if let Some(o) = out {
        write_file(o, &scene.to_text())?;
    }
    let report = with(
        cx.header(),
        json!({
            "curve": p.to_json(),
            "holonomy": {"original": report::q(&h0), "pushoff": report::q(&h1), "equal": h0 == h1},
            "intersections": arr.between(ix, j).len(),
            "bigon_areas": areas.iter().map(report::q).collect::<Vec<_>>(),
            "ranks": report::ranks(&ranks),
        }),
    );
    Ok(Outcome::checked(report, h0 == h1))
}

fn parse_point(cx: &Ctx, a: usize, b: usize, s: &str) -> Res<usize> {
    if let Some((x, y)) = s.split_once(',') {
        let at = Pt::new(rat::parse_q(x.trim()).map_err(input)?, rat::parse_q(y.trim()).map_err(input)?);
        return flatfuk_core::scene::point_at(&cx.arr, a, b, &at);
    }
    let id: usize = s.parse().map_err(|_| input(format!("bad point '{s}'")))?;
    if !cx.arr.between(a, b).contains(&id) {
        return Err(input(format!("point {id} is not a crossing of the two curves")));
    }
    Ok(id)
}

fn resolve(cx: &Ctx, a: &str, b: &str, point: &str, name: Option<&str>, out: Option<&PathBuf>) -> Res<Outcome> {
    let (ai, bi) = (cx.curve(a)?, cx.curve(b)?);
    cx.arr.check_transverse(&[ai, bi])?;
    let p = parse_point(cx, ai, bi, point)?;
    let name = name.map(str::to_string).unwrap_or_else(|| format!("{a}#{b}"));
    let r = resolve_connect_sum(&cx.scene.surface, &cx.arr, ai, bi, p, &name)?;
    let s = &cx.scene.surface;
    let inv_sum = invariant_vector(s, &cx.arr, &[Obj::new(ai), Obj::new(bi)]);
    let mut scene = cx.scene.clone();
    scene.add_curve(r.curve.clone());
    let arr = scene.arrangement();
    let inv = invariant_vector(s, &arr, &[Obj::new(arr.curves.len() - 1)]);
    if let Some(o) = out {
        write_file(o, &scene.to_text())?;
    }
    let report = with(
        cx.header(),
        json!({
            "point": report::point(&cx.arr, p),
            "curve": r.curve.to_json(),
            "connector": {"on_first": r.on_alpha.to_string(), "on_second": r.on_beta.to_string()},
            "invariants": report::invariants(&inv),
            "sum_invariants": report::invariants(&inv_sum),
            "invariants_equal": inv == inv_sum,
        }),
    );
    Ok(Outcome::checked(report, inv == inv_sum))
}

fn render_cmd(cx: &Ctx, _svg: bool, out: Option<&PathBuf>, polys: &[String]) -> Res<Outcome> {
    let e = cx.engine();
    let shaded;
    let faces;
    let shade = if polys.is_empty() {
        None
    } else {
        let seq: Vec<Obj> = polys.iter().map(|n| cx.obj(n)).collect::<Res<_>>()?;
        let ids: Vec<usize> = seq.iter().map(|o| o.curve).collect::<BTreeSet<_>>().into_iter().collect();
        cx.arr.check_transverse(&ids)?;
        shaded = e.polygons(&seq)?;
        faces = Faces::new(&cx.scene.surface, &cx.arr, &ids);
        Some((&faces, shaded.as_slice()))
    };
    let svg = render::svg(&cx.scene.surface, &cx.arr, shade);
    match out {
        Some(p) => {
            write_file(p, &svg)?;
            let report = with(cx.header(), json!({"svg": p.display().to_string(), "polygons": shade.map_or(0, |s| s.1.len())}));
            Ok(Outcome::pass(report))
        }
        None => Ok(Outcome { report: Value::Null, pass: true, raw: Some(svg) }),
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            match o.raw {
                Some(t) => emit(&t),
                None => emit(&pretty(&with(json!({"status": if o.pass { "pass" } else { "fail" }}), o.report))),
            }
            ExitCode::from(if o.pass { 0 } else { 1 })
        }
        Err(e) => {
            emit(&pretty(&json!({"status": "error", "kind": error_kind(&e), "message": e.to_string()})));
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use flatfuk_core::floer::obj_name;
    use flatfuk_core::scene::parse_object;

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Transversality("x".into())), 2);
        assert_eq!(exit_code(&Error::Input("x".into())), 2);
        assert_eq!(exit_code(&Error::Hypothesis("x".into())), 1);
    }

    #[test]
    fn object_names() {
        assert_eq!(parse_object("A[1]"), ("A", true));
        let s = fixtures::generate("torus-pushoff-equal").unwrap();
        let arr = s.arrangement();
        assert_eq!(obj_name(&arr, s.object("V[1]").unwrap()), "V[1]");
    }
}
