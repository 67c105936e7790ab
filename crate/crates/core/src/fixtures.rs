//! The standard scenes: circle pairs on the torus, slope families, the annulus, and curve
//! systems on the genus-two L-surface.

use crate::construct::{dehn_twist, hamiltonian_pushoff, resolve_connect_sum, straight};
use crate::curve::PLCurve;
use crate::error::{Error, Result};
use crate::floer::{Chain, Engine};
use crate::geom::{pi, pq, Pt};
use crate::novikov::Novikov;
use crate::polygons::Obj;
use crate::rat::{q, qi, Q};
use crate::scene::{ComplexSpec, EntrySpec, MorphismBody, MorphismSpec, Scene, SurfaceSpec};
use crate::twisted::{hom_complex, m1_hat, TwistedComplex};

pub const NAMES: &[&str] = &[
    "torus-pushoff-equal",
    "torus-pushoff-unequal",
    "torus-pushoff-built",
    "torus-theta",
    "torus-four-slope",
    "torus-cone",
    "torus-twist",
    "annulus-pairs",
    "genus2-pairs",
    "genus2-triple",
    "genus2-krelation",
    "genus2-subsurfaces",
    "genus2-lickorish",
];

pub fn generate(name: &str) -> Result<Scene> {
    match name {
        "torus-pushoff-equal" => pushoff_equal(),
        "torus-pushoff-unequal" => pushoff_unequal(),
        "torus-pushoff-built" => pushoff_built(),
        "torus-theta" => theta(),
        "torus-four-slope" => four_slope(),
        "torus-cone" => torus_cone(),
        "torus-twist" => torus_twist(),
        "annulus-pairs" => annulus_pairs(),
        "genus2-pairs" => genus2_pairs(),
        "genus2-triple" => genus2_triple(),
        "genus2-krelation" => krelation(),
        "genus2-subsurfaces" => subsurfaces(),
        "genus2-lickorish" => lickorish(),
        _ => Err(Error::Input(format!("unknown fixture '{name}'; known: {}", NAMES.join(", ")))),
    }
}

fn unit_torus() -> SurfaceSpec {
    SurfaceSpec::Torus { side_x: qi(1), side_y: qi(1) }
}

fn run(s: &Scene, name: &str, pts: &[Pt]) -> Result<PLCurve> {
    PLCurve::from_runs(&s.surface, name, &[pts.to_vec()], 0)
}

fn moves(s: &Scene, name: &str, start: Pt, m: &[Pt]) -> Result<PLCurve> {
    PLCurve::from_moves(&s.surface, name, &start, m, 0)
}

fn pair(a: &str, b: &str) -> (String, String) {
    (a.into(), b.into())
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn single_term(from: usize, to: usize, at: Pt) -> EntrySpec {
    EntrySpec { from, to, terms: vec![(at, Novikov::one(None))] }
}

fn v_h_scene(name: &str, description: &str) -> Result<Scene> {
    let mut s = Scene::new(name, description, unit_torus(), qi(1))?;
    let v = run(&s, "V", &[pq((1, 4), (0, 1)), pq((1, 4), (1, 1))])?;
    s.add_curve(v);
    Ok(s)
}

fn pushoff_equal() -> Result<Scene> {
    let mut s = v_h_scene("torus-pushoff-equal", "V = {x = 1/4} and a zigzag copy V' with two bigons of area 1/32")?;
    let w = run(&s, "V'", &[pq((3, 8), (0, 1)), pq((1, 8), (1, 2)), pq((3, 8), (1, 1))])?;
    s.add_curve(w);
    let h = run(&s, "H", &[pq((0, 1), (1, 8)), pq((1, 1), (1, 8))])?;
    s.add_curve(h);
    s.add_curve(straight(&s.surface, "D", &pq((0, 1), (9, 16)), &pi(1, 1))?);
    s.pairs = vec![pair("V", "V'")];
    s.sequences = vec![names(&["V", "V'", "H"]), names(&["H", "V", "V'"])];
    s.tests = names(&["H", "D"]);
    s.morphisms.push(MorphismSpec { name: "e".into(), source: "V".into(), target: "V'".into(), body: MorphismBody::Canonical });
    Ok(s)
}

fn pushoff_unequal() -> Result<Scene> {
    let mut s = v_h_scene("torus-pushoff-unequal", "V = {x = 1/4} and a copy V2 bounding bigons of areas 9/512 and 23/512")?;
    let w = run(&s, "V2", &[pq((7, 24), (0, 1)), pq((1, 8), (3, 8)), pq((83, 240), (3, 8)), pq((7, 24), (1, 1))])?;
    s.add_curve(w);
    let h = run(&s, "H", &[pq((0, 1), (1, 8)), pq((1, 1), (1, 8))])?;
    s.add_curve(h);
    s.pairs = vec![pair("V", "V2")];
    s.tests = names(&["H"]);
    Ok(s)
}

fn pushoff_built() -> Result<Scene> {
    let mut s = v_h_scene("torus-pushoff-built", "V, H and the pushoff P of V with bigon area 1/64 and corner area 1/96")?;
    let h = run(&s, "H", &[pq((0, 1), (1, 8)), pq((1, 1), (1, 8))])?;
    s.add_curve(h);
    let arr = s.arrangement();
    let p = hamiltonian_pushoff(&s.surface, &arr, 0, &q(1, 64), &q(1, 96), "P")?;
    s.add_curve(p);
    s.pairs = vec![pair("V", "P"), pair("H", "P")];
    s.sequences = vec![names(&["H", "V", "P"])];
    s.tests = names(&["H"]);
    Ok(s)
}

fn theta() -> Result<Scene> {
    let mut s = Scene::new("torus-theta", "horizontal, vertical and diagonal circles on the unit torus", unit_torus(), qi(1))?;
    s.add_curve(straight(&s.surface, "L0", &pq((0, 1), (7, 16)), &pi(1, 0))?);
    s.add_curve(straight(&s.surface, "L1", &pq((0, 1), (5, 8)), &pi(1, 1))?);
    s.add_curve(straight(&s.surface, "Linf", &pq((1, 16), (0, 1)), &pi(0, 1))?);
    s.pairs = vec![pair("L0", "L1"), pair("L1", "Linf"), pair("L0", "Linf")];
    s.sequences = vec![names(&["L0", "Linf", "L1"])];
    Ok(s)
}

fn four_slope() -> Result<Scene> {
    let mut s = Scene::new("torus-four-slope", "circles of slopes 0, infinity, 1 and -1", unit_torus(), qi(1))?;
    s.add_curve(straight(&s.surface, "S0", &pq((0, 1), (3, 16)), &pi(1, 0))?);
    s.add_curve(straight(&s.surface, "Sinf", &pq((5, 16), (0, 1)), &pi(0, 1))?);
    s.add_curve(straight(&s.surface, "S1", &pq((0, 1), (7, 32)), &pi(1, 1))?);
    s.add_curve(straight(&s.surface, "Sm1", &pq((0, 1), (21, 32)), &pi(1, -1))?);
    s.pairs = vec![pair("S0", "Sinf"), pair("S1", "Sm1")];
    s.sequences = vec![names(&["S0", "Sinf", "S1", "Sm1"])];
    Ok(s)
}

/// `V`, `H` meeting once, the resolution `R` at their crossing, and two test curves.
fn torus_cone() -> Result<Scene> {
    let mut s = Scene::new("torus-cone", "V, H, the resolution R of their crossing and test curves D1, D2", unit_torus(), qi(1))?;
    s.add_curve(straight(&s.surface, "V", &pq((1, 4), (1, 16)), &pi(0, 1))?);
    s.add_curve(straight(&s.surface, "H", &pq((7, 8), (1, 8)), &pi(-1, 0))?);
    let a0 = s.arrangement();
    let c0 = a0.between(0, 1)[0];
    let r = resolve_connect_sum(&s.surface, &a0, 0, 1, c0, "R")?;
    s.add_curve(r.curve);
    s.add_curve(straight(&s.surface, "D1", &pq((5, 8), (1, 16)), &pi(1, -1))?);
    s.add_curve(straight(&s.surface, "D2", &pq((11, 16), (1, 32)), &pi(1, 2))?);
    let c = a0.points[c0].at.clone();
    s.morphisms.push(MorphismSpec { name: "c".into(), source: "V".into(), target: "H".into(), body: MorphismBody::Entries(vec![single_term(0, 0, c.clone())]) });
    s.complexes.push(ComplexSpec { name: "ConeC".into(), objects: vec![("V".into(), false), ("H".into(), false)], delta: vec![single_term(0, 1, c)] });
    let arr = s.arrangement();
    let eng = Engine::new(&s.surface, &arr, s.cutoff.clone());
    let tr = TwistedComplex::single(Obj::new(2), s.cutoff.clone());
    let cc = s.complex(&eng, "ConeC")?;
    let f = closed_degree_zero(&eng, &tr, &cc)?;
    s.morphisms.push(MorphismSpec { name: "f".into(), source: "R".into(), target: "ConeC".into(), body: MorphismBody::Entries(f) });
    s.pairs = vec![pair("V", "H"), pair("R", "D1"), pair("R", "D2")];
    s.tests = names(&["D1", "D2"]);
    Ok(s)
}

/// The first closed generator of degree 0 in `Mor(t, t2)`.
fn closed_degree_zero(eng: &Engine, t: &TwistedComplex, t2: &TwistedComplex) -> Result<Vec<EntrySpec>> {
    let hc = hom_complex(eng, t, t2)?;
    for (i, &(a, b, p)) in hc.gens.iter().enumerate() {
        if hc.degrees[i] != 0 {
            continue;
        }
        let mut f = crate::twisted::Entries::new();
        f.insert((a, b), Chain::gen(t.objects[a], t2.objects[b], p, eng.lam()));
        if m1_hat(eng, t, t2, &f)?.is_empty() {
            return Ok(vec![single_term(a, b, eng.arr.points[p].at.clone())]);
        }
    }
    Err(Error::Construction("no closed generator of degree 0".into()))
}

fn torus_twist() -> Result<Scene> {
    let mut s = Scene::new("torus-twist", "H, V and the twist T along V of a zigzag copy of H, with test curves", unit_torus(), qi(1))?;
    let h = straight(&s.surface, "H", &pq((0, 1), (3, 8)), &pi(1, 0))?;
    let v = straight(&s.surface, "V", &pq((5, 8), (0, 1)), &pi(0, 1))?;
    let hz = run(&s, "Hz", &[pq((0, 1), (1, 4)), pq((7, 8), (1, 2)), pq((1, 1), (1, 4))])?;
    let t = dehn_twist(&s.surface, &hz, &v, &q(1, 8), "T")?;
    s.add_curve(h);
    s.add_curve(v);
    s.add_curve(t);
    s.add_curve(straight(&s.surface, "E1", &pq((0, 1), (13, 16)), &pi(1, 0))?);
    s.add_curve(straight(&s.surface, "E2", &pq((1, 16), (0, 1)), &pi(1, 2))?);
    s.pairs = vec![pair("H", "V"), pair("T", "E1"), pair("T", "E2")];
    s.tests = names(&["E1", "E2"]);
    Ok(s)
}

fn annulus_pairs() -> Result<Scene> {
    let mut s = Scene::new("annulus-pairs", "core circles of the annulus with equal and unequal zigzag copies", SurfaceSpec::Annulus, qi(1))?;
    let c = run(&s, "C", &[pq((0, 1), (1, 4)), pq((1, 1), (1, 4))])?;
    s.add_curve(c);
    let e = run(&s, "C'", &[pq((0, 1), (3, 8)), pq((1, 2), (1, 8)), pq((1, 1), (3, 8))])?;
    s.add_curve(e);
    let u = run(&s, "C2", &[pq((0, 1), (5, 16)), pq((3, 8), (1, 8)), pq((1, 1), (5, 16))])?;
    s.add_curve(u);
    s.pairs = vec![pair("C", "C'"), pair("C", "C2")];
    s.sequences = vec![names(&["C", "C'", "C2"])];
    Ok(s)
}

fn l_surface(name: &str, description: &str) -> Result<Scene> {
    Scene::new(name, description, SurfaceSpec::LSurface, qi(3))
}

/// `Hb = {y = 1/2}` on the bottom row, `Vl = {x = 1/2}` on the left column.
fn add_hb_vl(s: &mut Scene) -> Result<()> {
    s.add_curve(straight(&s.surface, "Hb", &pq((0, 1), (1, 2)), &pi(2, 0))?);
    s.add_curve(straight(&s.surface, "Vl", &pq((1, 2), (0, 1)), &pi(0, 2))?);
    Ok(())
}

fn genus2_pairs() -> Result<Scene> {
    let mut s = l_surface("genus2-pairs", "curve pairs on the L-shaped genus-two surface")?;
    add_hb_vl(&mut s)?;
    s.add_curve(straight(&s.surface, "Vr", &pq((3, 2), (0, 1)), &pi(0, 1))?);
    s.add_curve(straight(&s.surface, "Ht", &pq((0, 1), (3, 2)), &pi(1, 0))?);
    let arr = s.arrangement();
    let hb = hamiltonian_pushoff(&s.surface, &arr, 0, &q(1, 32), &q(1, 64), "Hb'")?;
    let vl = hamiltonian_pushoff(&s.surface, &arr, 1, &q(1, 32), &q(1, 64), "Vl'")?;
    s.add_curve(hb);
    s.add_curve(vl);
    s.pairs = vec![pair("Hb", "Vl"), pair("Hb", "Vr"), pair("Vl", "Ht"), pair("Hb", "Hb'"), pair("Vl", "Vl'")];
    s.tests = names(&["Vl", "Vr"]);
    Ok(s)
}

fn genus2_triple() -> Result<Scene> {
    let mut s = l_surface("genus2-triple", "Hb, Vl and the pushoff Hb' of Hb on the L-shaped surface")?;
    add_hb_vl(&mut s)?;
    let arr = s.arrangement();
    let p = hamiltonian_pushoff(&s.surface, &arr, 0, &q(1, 32), &q(1, 64), "Hb'")?;
    s.add_curve(p);
    s.pairs = vec![pair("Hb", "Hb'")];
    s.sequences = vec![names(&["Vl", "Hb", "Hb'"])];
    Ok(s)
}

/// Boundary of a neighbourhood of `{y = 1/2} ∪ {x = 3/2}` of half-width `w`: a one-holed torus.
pub fn torus_boundary(s: &Scene, name: &str, w: &Q) -> Result<PLCurve> {
    let one = qi(1);
    let start = Pt::new(q(1, 4), q(1, 2) - w);
    let m = [
        Pt::new(q(5, 4) - w, qi(0)),
        Pt::new(qi(0), -(&one - w * qi(2))),
        Pt::new(-(qi(2) - w * qi(2)), qi(0)),
        Pt::new(qi(0), &one - w * qi(2)),
        Pt::new(q(3, 4) - w, qi(0)),
    ];
    PLCurve::from_moves(&s.surface, name, &start, &m, 0)
}

/// Boundary of a small disc about the cone point, oriented as the boundary of its complement.
pub fn cone_loop(s: &Scene, name: &str, d: &Q) -> Result<PLCurve> {
    let one = qi(1);
    let start = Pt::new(&one - d, &one - d);
    let two = d * qi(2);
    let sq = [Pt::new(qi(0), two.clone()), Pt::new(two.clone(), qi(0)), Pt::new(qi(0), -two.clone()), Pt::new(-two, qi(0))];
    let m: Vec<Pt> = sq.iter().cycle().take(12).cloned().collect();
    PLCurve::from_moves(&s.surface, name, &start, &m, 0)
}

fn krelation() -> Result<Scene> {
    let mut s = l_surface("genus2-krelation", "cylinder pairs of total area 3 and a zero-area torus-bounding complex")?;
    s.add_curve(straight(&s.surface, "lo", &pq((0, 1), (1, 8)), &pi(2, 0))?);
    s.add_curve(straight(&s.surface, "hi", &pq((0, 1), (7, 8)), &pi(2, 0))?);
    s.add_curve(straight(&s.surface, "vr", &pq((7, 8), (0, 1)), &pi(0, 2))?);
    s.add_curve(straight(&s.surface, "vl", &pq((1, 8), (0, 1)), &pi(0, 2))?);
    let g = torus_boundary(&s, "gT", &q(1, 8))?;
    s.add_curve(g);
    s.add_curve(straight(&s.surface, "lo'", &pq((0, 1), (1, 4)), &pi(2, 0))?);
    s.add_curve(straight(&s.surface, "hi'", &pq((0, 1), (19, 32)), &pi(2, 0))?);
    let obj = |n: &str, sh: bool| (n.to_string(), sh);
    s.complexes.push(ComplexSpec {
        name: "OmegaRho".into(),
        objects: vec![obj("lo", false), obj("hi", true), obj("vr", false), obj("vl", true)],
        delta: vec![],
    });
    s.complexes.push(ComplexSpec { name: "T".into(), objects: vec![obj("gT", false), obj("hi'", false), obj("lo'", true)], delta: vec![] });
    let neg_t = vec![obj("gT", true), obj("hi'", true), obj("lo'", false)];
    s.complexes.push(ComplexSpec { name: "ChiT".into(), objects: neg_t.iter().chain(neg_t.iter()).cloned().collect(), delta: vec![] });
    Ok(s)
}

fn subsurfaces() -> Result<Scene> {
    let mut s = l_surface("genus2-subsurfaces", "boundaries of subsurfaces of the L-shaped surface")?;
    let d = cone_loop(&s, "Disc", &q(1, 8))?;
    s.add_curve(d);
    let g = torus_boundary(&s, "gT", &q(1, 8))?;
    s.add_curve(g);
    // clockwise square inside the one-holed torus
    let small = moves(&s, "small", pq((1, 16), (13, 32)), &[pq((0, 1), (1, 8)), pq((1, 8), (0, 1)), pq((0, 1), (-1, 8)), pq((-1, 8), (0, 1))])?;
    s.add_curve(small);
    s.add_curve(straight(&s.surface, "cyl_lo", &pq((0, 1), (1, 4)), &pi(2, 0))?);
    s.add_curve(straight(&s.surface, "cyl_hi", &pq((0, 1), (3, 4)), &pi(-2, 0))?);
    let obj = |n: &str| (n.to_string(), false);
    s.complexes.push(ComplexSpec { name: "OneHoledTorus".into(), objects: vec![obj("gT")], delta: vec![] });
    s.complexes.push(ComplexSpec { name: "TwoHoledTorus".into(), objects: vec![obj("gT"), obj("small")], delta: vec![] });
    s.complexes.push(ComplexSpec { name: "Cylinder".into(), objects: vec![obj("cyl_lo"), obj("cyl_hi")], delta: vec![] });
    s.complexes.push(ComplexSpec { name: "Complement".into(), objects: vec![obj("Disc")], delta: vec![] });
    Ok(s)
}

fn lickorish() -> Result<Scene> {
    let mut s = l_surface("genus2-lickorish", "a chain of curves on the L-shaped surface standing in for twist generators")?;
    s.add_curve(straight(&s.surface, "Ht", &pq((0, 1), (3, 2)), &pi(1, 0))?);
    s.add_curve(straight(&s.surface, "Vl", &pq((1, 2), (0, 1)), &pi(0, 2))?);
    s.add_curve(straight(&s.surface, "Hb", &pq((0, 1), (1, 2)), &pi(2, 0))?);
    s.add_curve(straight(&s.surface, "Vr", &pq((3, 2), (0, 1)), &pi(0, 1))?);
    s.pairs = vec![pair("Ht", "Vl"), pair("Vl", "Hb"), pair("Hb", "Vr")];
    Ok(s)
}
