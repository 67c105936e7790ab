//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs the `flatfuk` binary on the shipped scenes where a criterion is phrased as a command and
//! the library elsewhere. Exits non-zero when any criterion fails.

#[allow(dead_code)]
#[path = "../../core/tests/support/lift.rs"]
mod lift;

use flatfuk_core::fixtures;
use flatfuk_core::floer::Engine;
use flatfuk_core::rat;
use flatfuk_core::scene::{parse_object, Scene};
use flatfuk_core::twisted::{cone, hom_complex, m1_hat, TwistedComplex};
use flatfuk_core::{Novikov, Q};
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

const D2_LIMIT: Duration = Duration::from_secs(10);
const AINFTY_LIMIT: Duration = Duration::from_secs(60);
const NOVIKOV_LIMIT: Duration = Duration::from_secs(5);
const NOVIKOV_CHECKS: usize = 1000;

fn scene_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(format!("{name}.json"))
}

fn scene(name: &str) -> Scene {
    Scene::parse(&std::fs::read_to_string(scene_path(name)).unwrap()).unwrap()
}

struct Run {
    code: i32,
    out: Value,
    took: Duration,
}

fn flatfuk(args: &[&str]) -> Run {
    let t = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_flatfuk")).args(args).output().expect("flatfuk runs");
    let took = t.elapsed();
    let out = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    Run { code: o.status.code().unwrap_or(-1), out, took }
}

fn on(name: &str, args: &[&str]) -> Run {
    let p = scene_path(name);
    let mut v: Vec<&str> = vec![args[0]];
    let ps = p.to_str().unwrap().to_string();
    let rest: Vec<&str> = args[1..].to_vec();
    if args[0] == "verify" {
        v.push(rest[0]);
        v.push(&ps);
        v.extend(&rest[1..]);
    } else {
        v.push(&ps);
        v.extend(rest);
    }
    flatfuk(&v)
}

fn q(v: &Value) -> Q {
    rat::from_json(v).unwrap()
}

fn qs(s: &str) -> Q {
    rat::parse_q(s).unwrap()
}

/// Polygon-level audit collected from every command report.
#[derive(Default)]
struct Audit {
    violations: u64,
    polygons: u64,
    wd_bad: u64,
    offsets: BTreeMap<String, BTreeSet<Q>>,
}

impl Audit {
    fn take(&mut self, surface: &str, r: &Value) {
        self.violations += r["degree_violations"].as_u64().unwrap_or(1);
        let l = &r["disc_laws"];
        self.polygons += l["polygons"].as_u64().unwrap_or(0);
        self.wd_bad += l["boundary_wd_violations"].as_u64().unwrap_or(1);
        let set = self.offsets.entry(surface.to_string()).or_default();
        for o in l["boundary_offsets"].as_array().into_iter().flatten() {
            set.insert(q(&o["value"]));
        }
    }
}

fn surface_kind(name: &str) -> &'static str {
    if name.starts_with("torus") {
        "torus"
    } else if name.starts_with("annulus") {
        "annulus"
    } else {
        "l-surface"
    }
}

fn cutoff_for(name: &str) -> &'static str {
    if name.starts_with("genus2") {
        "3"
    } else {
        "1"
    }
}

fn c1(audit: &mut Audit) -> (bool, String) {
    let names = ["torus-pushoff-equal", "torus-pushoff-built", "torus-theta", "annulus-pairs", "genus2-pairs", "genus2-triple"];
    let mut complexes = 0;
    let mut worst = Duration::ZERO;
    let mut ok = true;
    let mut kinds = BTreeSet::new();
    for n in names {
        let r = on(n, &["verify", "d2", "--cutoff", cutoff_for(n)]);
        ok &= r.code == 0 && r.took < D2_LIMIT;
        complexes += r.out["checked"].as_u64().unwrap_or(0);
        worst = worst.max(r.took);
        kinds.insert(surface_kind(n));
        audit.take(surface_kind(n), &r.out);
    }
    ok &= complexes >= 6 && kinds.len() == 3;
    (ok, format!("{complexes} complexes on {} scenes over {} surfaces, slowest {:.2?} (limit {D2_LIMIT:?})", names.len(), kinds.len(), worst))
}

fn c2(audit: &mut Audit) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in ["torus-four-slope", "genus2-triple"] {
        let r = on(n, &["verify", "ainfty", "--max-k", "4", "--cutoff", cutoff_for(n)]);
        let checked: u64 = r.out["results"].as_array().into_iter().flatten().map(|x| x["checked"].as_u64().unwrap_or(0)).sum();
        ok &= r.code == 0 && r.took < AINFTY_LIMIT && checked > 0;
        parts.push(format!("{n}: {checked} relations in {:.2?}", r.took));
        audit.take(surface_kind(n), &r.out);
    }
    (ok, format!("{} (limit {AINFTY_LIMIT:?})", parts.join(", ")))
}

fn c3(audit: &Audit) -> (bool, String) {
    (audit.violations == 0 && audit.polygons > 0, format!("{} degree violations over {} polygons", audit.violations, audit.polygons))
}

fn c4() -> (bool, String) {
    let run = std::panic::catch_unwind(|| {
        let torus: Vec<&str> = fixtures::NAMES.iter().copied().filter(|n| n.starts_with("torus")).collect();
        (torus.iter().map(|n| lift::check(n)).sum::<usize>(), torus.len())
    });
    match run {
        Ok((polygons, scenes)) => (true, format!("{polygons} polygons identical to the lift oracle on {scenes} torus scenes")),
        Err(_) => (false, "enumerator and lift oracle disagree".into()),
    }
}

fn c5(audit: &mut Audit) -> (bool, String) {
    let r = on("torus-theta", &["mk", "L0", "Linf", "L1", "--cutoff", "1"]);
    audit.take("torus", &r.out);
    let products = r.out["products"].as_array().cloned().unwrap_or_default();
    let mut exps = BTreeSet::new();
    let mut unit = true;
    for p in &products {
        for t in p["output"]["terms"].as_array().into_iter().flatten() {
            for term in t["coefficient"]["terms"].as_array().into_iter().flatten() {
                exps.insert(q(&term[0]));
                unit &= q(&term[1]).abs() == Q::from_integer(1.into());
            }
        }
    }
    let want: BTreeSet<Q> = ["1/32", "9/32", "25/32"].iter().map(|s| qs(s)).collect();
    let shown: Vec<String> = exps.iter().map(rat::fmt_q).collect();
    (r.code == 0 && products.len() == 1 && unit && exps == want, format!("m2 exponents {{{}}}, unit coefficients: {unit}", shown.join(", ")))
}

fn total(r: &Run) -> i64 {
    r.out["ranks"]["total"].as_i64().unwrap_or(-1)
}

fn c6() -> (bool, String) {
    let hv = total(&on("torus-pushoff-equal", &["hf", "H", "V", "--cutoff", "1"]));
    let hv2 = total(&on("torus-pushoff-equal", &["hf", "H", "V'", "--cutoff", "1"]));
    let vv = total(&on("torus-pushoff-equal", &["hf", "V", "V'", "--cutoff", "1"]));
    let un = on("torus-pushoff-unequal", &["hf", "V", "V2", "--cutoff", "1"]);
    let mut exps = BTreeSet::new();
    for d in un.out["complex"]["differential"].as_array().into_iter().flatten() {
        for t in d["coefficient"]["terms"].as_array().into_iter().flatten() {
            exps.insert(q(&t[0]));
        }
    }
    let want: BTreeSet<Q> = ["9/512", "23/512"].iter().map(|s| qs(s)).collect();
    let ok = hv == 1 && hv2 == 1 && vv == 2 && total(&un) == 0 && exps == want;
    (ok, format!("HF(H,V)={hv} HF(H,V')={hv2} HF(V,V')={vv} HF(V,V2)={} with bigons {{9/512, 23/512}}: {}", total(&un), exps == want))
}

fn c7() -> (bool, String) {
    let s = scene("torus-pushoff-equal");
    let arr = s.arrangement();
    let e = Engine::new(&s.surface, &arr, Q::from_integer(1.into()));
    let (t, t2, f) = s.morphism(&e, "e").unwrap();
    let closed = m1_hat(&e, &t, &t2, &f).unwrap().is_empty();
    let r = on("torus-pushoff-equal", &["qis", "e", "--tests", "H", "--cutoff", "1"]);
    let inv = r.out["tests"][0]["square_invertible"] == Value::Bool(true);
    (closed && inv && r.code == 0, format!("m1(e) = 0: {closed}; m2(e, .) invertible on H: {inv}"))
}

fn c8() -> (bool, String) {
    let qis = on("torus-cone", &["qis", "f", "--cutoff", "1"]);
    let tests: Vec<String> = qis.out["tests"].as_array().into_iter().flatten().filter(|t| t["cone_acyclic"] == Value::Bool(true) && t["pass"] == Value::Bool(true)).map(|t| t["test"].as_str().unwrap_or("").to_string()).collect();
    let cone_inv = on("torus-cone", &["invariants", "ConeC", "--cutoff", "1"]).out["invariants"].clone();
    let res = on("torus-cone", &["resolve", "V", "H", "at", "1/4,1/8", "--name", "Rx", "--cutoff", "1"]);
    let r_inv = on("torus-cone", &["invariants", "R", "--cutoff", "1"]).out["invariants"].clone();
    let ok = qis.code == 0 && tests.len() >= 2 && res.code == 0 && res.out["invariants"] == cone_inv && r_inv == cone_inv;
    (ok, format!("Cone(c) ~ R against {tests:?}; inv(Cone) = inv(R) = inv(resolution): {}", res.out["invariants"] == cone_inv && r_inv == cone_inv))
}

fn raw_wd(s: &Scene, objects: &[(String, bool)]) -> i64 {
    objects.iter().map(|(n, sh)| s.curve(parse_object(n).0).unwrap().turning_number() * if *sh { -1 } else { 1 }).sum()
}

fn c9(audit: &Audit) -> (bool, String) {
    let s = scene("genus2-subsurfaces");
    let chi = s.surface.chi();
    let disc = s.curve("Disc").unwrap().turning_number();
    let mut ok = disc == 1 - chi;
    let frozen = [("OneHoledTorus", -1), ("TwoHoledTorus", -2), ("Cylinder", 0), ("Complement", -3)];
    let mut laws = 0;
    for (n, x) in frozen {
        let c = s.complex_spec(n).unwrap();
        if -raw_wd(&s, &c.objects) == x {
            laws += 1;
        }
    }
    ok &= laws == frozen.len();
    // cylinders of the bottom row: width 2, heights 1/2 and 3/4
    let hol = |s: &Scene, n: &str| s.curve(n).unwrap().holonomy(&s.surface);
    let cyl = hol(&s, "cyl_lo") + hol(&s, "cyl_hi") == qs("1");
    let k = scene("genus2-krelation");
    let cyl2 = hol(&k, "lo") - hol(&k, "hi") == qs("3/2");
    ok &= cyl && cyl2;
    let offsets_ok = audit.wd_bad == 0 && audit.offsets.values().all(|v| v.len() == 1);
    ok &= offsets_ok;
    let shown: Vec<String> = audit.offsets.iter().map(|(k, v)| format!("{k}: {}", v.iter().map(rat::fmt_q).collect::<Vec<_>>().join("|"))).collect();
    (
        ok,
        format!(
            "wd(disc) = {disc} = 1 - chi; {laws}/{} subsurface laws; cylinder hol = area: {}; wd(du) = -1 on all {} polygons; hol(du) - area constant ({})",
            frozen.len(),
            cyl && cyl2,
            audit.polygons,
            shown.join(", ")
        ),
    )
}

fn c10() -> (bool, String) {
    let a = on("genus2-krelation", &["invariants", "OmegaRho"]);
    let b = on("genus2-krelation", &["invariants", "ChiT"]);
    let (ia, ib) = (&a.out["invariants"], &b.out["invariants"]);
    let frozen = q(&ia["hol"]) == qs("3") && ia["wd"] == 0 && ia["class"].as_array().map_or(false, |c| c.iter().all(|x| x == 0));
    let ok = a.code == 0 && b.code == 0 && ia == ib && !ia.is_null() && frozen;
    (ok, format!("inv(Omega rho) = inv(chi T) = (0, {}, {})", ia["hol_display"].as_str().unwrap_or("?"), ia["wd"]))
}

fn c11() -> (bool, String) {
    let r = on("torus-pushoff-equal", &["cone", "e", "--cutoff", "1"]);
    let zero = r.out["zero"] == Value::Bool(true);
    let s = scene("torus-pushoff-equal");
    let arr = s.arrangement();
    let e = Engine::new(&s.surface, &arr, Q::from_integer(1.into()));
    let (t, t2, f) = s.morphism(&e, "e").unwrap();
    let c = cone(&e, &t, &t2, &f).unwrap();
    let mut acyclic = 0;
    for name in &s.tests {
        let b = TwistedComplex::single(s.object(name).unwrap(), e.cutoff.clone());
        let fwd = hom_complex(&e, &b, &c).unwrap().ranks().unwrap();
        let back = hom_complex(&e, &c, &b).unwrap().ranks().unwrap();
        if fwd.h0 + fwd.h1 == 0 && back.h0 + back.h1 == 0 {
            acyclic += 1;
        }
    }
    (zero && acyclic == s.tests.len(), format!("zero invariant vector: {zero}; acyclic against {acyclic}/{} test curves", s.tests.len()))
}

fn series(rng: &mut StdRng, lam: &Option<Q>, nonneg: bool) -> Novikov {
    let n = rng.gen_range(0..5);
    let terms = (0..n)
        .map(|_| {
            let lo = if nonneg { 0 } else { -8 };
            let e = Q::new(rng.gen_range(lo..=24).into(), rng.gen_range(1..=8).into());
            let c = Q::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=6).into());
            (e, c)
        })
        .collect();
    Novikov::from_terms(terms, lam.clone())
}

fn c12() -> (bool, String) {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let lam = Some(Q::from_integer(3.into()));
    let one = Novikov::one(lam.clone());
    let start = Instant::now();
    let mut passed = 0;
    for _ in 0..NOVIKOV_CHECKS {
        let (a, b, c) = (series(&mut rng, &lam, false), series(&mut rng, &lam, true), series(&mut rng, &lam, true));
        let mut ok = a.add(&b) == b.add(&a)
            && a.add(&b).add(&c) == a.add(&b.add(&c))
            && b.mul(&c) == c.mul(&b)
            && b.mul(&c).mul(&b) == b.mul(&c.mul(&b))
            && b.mul(&a.add(&c)).eq_mod(&b.mul(&a).add(&b.mul(&c)), &lam)
            && b.mul(&one) == b
            && a.sub(&a).is_zero();
        if !b.is_zero() {
            ok &= b.mul(&b.invert().unwrap()).eq_mod(&one, &lam);
        }
        if ok {
            passed += 1;
        }
    }
    let took = start.elapsed();
    (passed == NOVIKOV_CHECKS && took < NOVIKOV_LIMIT, format!("{passed}/{NOVIKOV_CHECKS} ring and inversion checks in {took:.2?} (limit {NOVIKOV_LIMIT:?})"))
}

fn main() {
    let mut audit = Audit::default();
    let mut results: Vec<(u32, &str, (bool, String))> = Vec::new();
    results.push((1, "d^2 = 0", c1(&mut audit)));
    results.push((2, "A-infinity relations", c2(&mut audit)));
    results.push((5, "theta counts", c5(&mut audit)));
    results.push((3, "degree law", c3(&audit)));
    results.push((4, "lift oracle", c4()));
    results.push((6, "Hamiltonian invariance", c6()));
    results.push((7, "canonical morphism", c7()));
    results.push((8, "cone and resolution", c8()));
    results.push((9, "winding and holonomy laws", c9(&audit)));
    results.push((10, "K-relation invariants", c10()));
    results.push((11, "zero cone", c11()));
    results.push((12, "Novikov algebra", c12()));
    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (n, title, (ok, detail)) in &results {
        println!("criterion {n:>2} {title}: {} ({detail})", if *ok { "PASS" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
