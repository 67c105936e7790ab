//! Twisted complexes over the curve pre-category: Maurer–Cartan check, hom complexes,
//! composition, cones, the Dehn-twist complex, quasi-isomorphism tests and invariants.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::floer::{graded_ranks, mat_mul, novikov_rank, obj_json, obj_name, Chain, Check, Engine, Ranks};
use crate::novikov::{Cutoff, Novikov};
use crate::polygons::{degree, Obj};
use crate::rat::{self, Q};
use crate::surface::FlatSurface;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Entries `(source index, target index) → chain`.
pub type Entries = BTreeMap<(usize, usize), Chain>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub objects: Vec<Obj>,
    /// `δ_{k,l} ∈ CF(objects[k], objects[l])`, `k < l`
    pub delta: Entries,
    pub cutoff: Q,
}

impl TwistedComplex {
    pub fn single(o: Obj, cutoff: Q) -> TwistedComplex {
        TwistedComplex { objects: vec![o], delta: BTreeMap::new(), cutoff }
    }

    /// `Δ = 0` on the given objects.
    pub fn sum(objects: Vec<Obj>, cutoff: Q) -> TwistedComplex {
        TwistedComplex { objects, delta: BTreeMap::new(), cutoff }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Every object shifted; the entries keep their intersection points.
    pub fn shift(&self) -> TwistedComplex {
        let objects: Vec<Obj> = self.objects.iter().map(|o| o.shift()).collect();
        let delta = self.delta.iter().map(|(&(k, l), c)| ((k, l), rebase(c, objects[k], objects[l]))).collect();
        TwistedComplex { objects, delta, cutoff: self.cutoff.clone() }
    }

    pub fn direct_sum(&self, other: &TwistedComplex) -> TwistedComplex {
        let n = self.len();
        let mut out = self.clone();
        out.objects.extend(other.objects.iter().copied());
        for (&(k, l), c) in &other.delta {
            out.delta.insert((k + n, l + n), c.clone());
        }
        out
    }

    pub fn to_json(&self, arr: &Arrangement) -> Value {
        let delta: Vec<Value> = self
            .delta
            .iter()
            .map(|(&(k, l), c)| json!({"from": k, "to": l, "chain": c.to_json(arr)}))
            .collect();
        json!({
            "objects": self.objects.iter().map(|&o| obj_json(arr, o)).collect::<Vec<_>>(),
            "delta": delta,
            "cutoff": rat::to_json(&self.cutoff),
        })
    }

    pub fn describe(&self, arr: &Arrangement) -> String {
        self.objects.iter().map(|&o| obj_name(arr, o)).collect::<Vec<_>>().join(" ⊕ ")
    }
}

fn rebase(c: &Chain, from: Obj, to: Obj) -> Chain {
    Chain { from, to, terms: c.terms.clone(), cutoff: c.cutoff.clone() }
}

fn curves_of(ts: &[&TwistedComplex]) -> Vec<usize> {
    let mut ids: Vec<usize> = ts.iter().flat_map(|t| t.objects.iter().map(|o| o.curve)).collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Sums `m_k` over every path that runs through the stages in order: any number of `Δ`
/// steps inside a stage, exactly one entry of `morphs[s]` from stage `s` to `s + 1`.
pub fn path_sum(engine: &Engine, stages: &[&TwistedComplex], morphs: &[&Entries]) -> Result<Entries> {
    assert_eq!(stages.len(), morphs.len() + 1);
    let mut out: Entries = BTreeMap::new();
    let mut path: Vec<&Chain> = Vec::new();
    for start in 0..stages[0].len() {
        walk(engine, stages, morphs, 0, start, start, &mut path, &mut out)?;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk<'c>(
    engine: &Engine,
    stages: &[&'c TwistedComplex],
    morphs: &[&'c Entries],
    stage: usize,
    start: usize,
    at: usize,
    path: &mut Vec<&'c Chain>,
    out: &mut Entries,
) -> Result<()> {
    let last = stages.len() - 1;
    if stage == last && !path.is_empty() {
        let v = engine.mu(path)?;
        if !v.is_zero() {
            let key = (start, at);
            let cur = out.remove(&key);
            out.insert(key, match cur {
                Some(c) => c.add(&v),
                None => v,
            });
        }
    }
    let t = stages[stage];
    for ((k, l), c) in t.delta.range((at, 0)..(at + 1, 0)) {
        debug_assert_eq!(*k, at);
        if c.is_zero() {
            continue;
        }
        path.push(c);
        walk(engine, stages, morphs, stage, start, *l, path, out)?;
        path.pop();
    }
    if stage < last {
        for ((k, l), c) in morphs[stage].range((at, 0)..(at + 1, 0)) {
            debug_assert_eq!(*k, at);
            if c.is_zero() {
                continue;
            }
            path.push(c);
            walk(engine, stages, morphs, stage + 1, start, *l, path, out)?;
            path.pop();
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Validation {
    pub ok: bool,
    /// `(k, l, surviving Maurer–Cartan term)`
    pub surviving: Vec<(usize, usize, String)>,
}

/// Maurer–Cartan: `Σ m_r(δ_{i₁i₂}, …, δ_{i_{r−1}i_r}) ≡ 0` for every pair of indices.
pub fn validate(engine: &Engine, t: &TwistedComplex) -> Result<Validation> {
    engine.arr.check_transverse(&curves_of(&[t]))?;
    let mc = path_sum(engine, &[t], &[])?;
    let surviving: Vec<(usize, usize, String)> = mc
        .iter()
        .map(|(&(k, l), c)| {
            let terms: Vec<String> = c.terms.iter().map(|(p, x)| format!("({x})·p{p}")).collect();
            (k, l, terms.join(" + "))
        })
        .collect();
    Ok(Validation { ok: surviving.is_empty(), surviving })
}

/// `m̂₁(F)` for `F ∈ Mor(T, T′)`.
pub fn m1_hat(engine: &Engine, t: &TwistedComplex, t2: &TwistedComplex, f: &Entries) -> Result<Entries> {
    path_sum(engine, &[t, t2], &[f])
}

/// `m̂₂(G, F)` for `F ∈ Mor(T, T′)`, `G ∈ Mor(T′, T″)`.
pub fn compose(
    engine: &Engine,
    t: &TwistedComplex,
    t2: &TwistedComplex,
    t3: &TwistedComplex,
    f: &Entries,
    g: &Entries,
) -> Result<Entries> {
    engine.arr.check_transverse(&curves_of(&[t, t2, t3]))?;
    path_sum(engine, &[t, t2, t3], &[f, g])
}

/// `Mor(T, T′)` with its differential.
#[derive(Clone, Debug)]
pub struct HomComplex {
    /// `(source index, target index, intersection point)`
    pub gens: Vec<(usize, usize, usize)>,
    pub degrees: Vec<u8>,
    /// `d[row][col]`
    pub d: Vec<Vec<Novikov>>,
    pub cutoff: Q,
    pub d_squared: Check,
}

impl HomComplex {
    pub fn ranks(&self) -> Result<Ranks> {
        graded_ranks(&self.degrees, &self.d)
    }

    fn position(&self) -> BTreeMap<(usize, usize, usize), usize> {
        self.gens.iter().enumerate().map(|(i, &g)| (g, i)).collect()
    }

    /// The element `F` for a coefficient vector over `gens`.
    pub fn element(&self, t: &TwistedComplex, t2: &TwistedComplex, coeffs: &[Novikov]) -> Entries {
        let lam: Cutoff = Some(self.cutoff.clone());
        let mut out: Entries = BTreeMap::new();
        for (&(i, j, p), x) in self.gens.iter().zip(coeffs) {
            if x.is_zero() {
                continue;
            }
            out.entry((i, j)).or_insert_with(|| Chain::zero(t.objects[i], t2.objects[j], lam.clone())).add_term(p, x);
        }
        out
    }

    fn column(&self, e: &Entries) -> Vec<Novikov> {
        let lam: Cutoff = Some(self.cutoff.clone());
        let pos = self.position();
        let mut col = vec![Novikov::zero(lam); self.gens.len()];
        for (&(i, j), c) in e {
            for (&p, x) in &c.terms {
                if let Some(&r) = pos.get(&(i, j, p)) {
                    col[r] = col[r].add(x);
                }
            }
        }
        col
    }
}

pub fn hom_complex(engine: &Engine, t: &TwistedComplex, t2: &TwistedComplex) -> Result<HomComplex> {
    engine.arr.check_transverse(&curves_of(&[t, t2]))?;
    let lam: Cutoff = engine.lam();
    let mut gens = Vec::new();
    let mut degrees = Vec::new();
    for (i, &a) in t.objects.iter().enumerate() {
        for (j, &b) in t2.objects.iter().enumerate() {
            for p in engine.generators(a, b) {
                gens.push((i, j, p));
                degrees.push(degree(engine.arr, p, a, b)?);
            }
        }
    }
    let n = gens.len();
    let mut hc = HomComplex {
        gens,
        degrees,
        d: vec![vec![Novikov::zero(lam.clone()); n]; n],
        cutoff: engine.cutoff.clone(),
        d_squared: Check { ok: true, checked: 0, witness: None },
    };
    for col in 0..n {
        let (i, j, p) = hc.gens[col];
        let mut f: Entries = BTreeMap::new();
        f.insert((i, j), Chain::gen(t.objects[i], t2.objects[j], p, lam.clone()));
        let img = m1_hat(engine, t, t2, &f)?;
        let c = hc.column(&img);
        for (row, x) in c.into_iter().enumerate() {
            hc.d[row][col] = x;
        }
    }
    let dd = mat_mul(&hc.d, &hc.d, &lam);
    hc.d_squared = Check { ok: true, checked: 1, witness: None };
    'outer: for (r, row) in dd.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() {
                hc.d_squared = Check {
                    ok: false,
                    checked: 1,
                    witness: Some(format!("m̂₁² of generator {:?} has {x} on {:?}", hc.gens[c], hc.gens[r])),
                };
                break 'outer;
            }
        }
    }
    Ok(hc)
}

/// The common degree of a morphism's support.
pub fn morphism_degree(engine: &Engine, f: &Entries) -> Result<Option<u8>> {
    let mut d = None;
    for c in f.values() {
        match (d, c.degree(engine.arr)?) {
            (_, None) => {}
            (None, e) => d = e,
            (Some(x), Some(y)) if x != y => return Err(Error::Input("morphism is not homogeneous".into())),
            _ => {}
        }
    }
    Ok(d)
}

/// `Cone(F)` for a closed `F ∈ Mor(T, T′)`: the source is shifted when `F` has degree 0,
/// so that `F` becomes a degree-1 block of the differential.
pub fn cone(engine: &Engine, t: &TwistedComplex, t2: &TwistedComplex, f: &Entries) -> Result<TwistedComplex> {
    let closed = m1_hat(engine, t, t2, f)?;
    if !closed.is_empty() {
        return Err(Error::Hypothesis("morphism is not closed".into()));
    }
    let deg = morphism_degree(engine, f)?.unwrap_or(1);
    let src = if deg == 0 { t.shift() } else { t.clone() };
    let n = src.len();
    let mut out = src.direct_sum(t2);
    for (&(i, j), c) in f {
        out.delta.insert((i, n + j), rebase(c, out.objects[i], out.objects[n + j]));
    }
    if !validate(engine, &out)?.ok && deg == 0 {
        // the shifted source may need its internal differential negated
        for (&(k, l), c) in &src.delta {
            out.delta.insert((k, l), c.neg());
        }
    }
    let v = validate(engine, &out)?;
    if !v.ok {
        return Err(Error::Hypothesis(format!("cone fails Maurer–Cartan: {:?}", v.surviving.first())));
    }
    Ok(out)
}

/// `α → β^{⊕n} ⊕ β[1]^{⊕m}` with the degree-1 generators of `CF(α, β)` and `CF(α, β[1])`.
pub fn dehn_twist_complex(engine: &Engine, alpha: usize, beta: usize) -> Result<TwistedComplex> {
    let arr = engine.arr;
    arr.check_transverse(&[alpha, beta])?;
    if !arr.curves[beta].self_crossings().is_empty() {
        return Err(Error::Hypothesis(format!("{} is not embedded", arr.curves[beta].name)));
    }
    let (a, b) = (Obj::new(alpha), Obj::new(beta));
    for seq in [[a, b], [b, a]] {
        if let Some(u) = engine.polygons(&seq)?.first() {
            return Err(Error::Hypothesis(format!(
                "not in minimal position: bigon of area {} between {} and {}",
                u.area, arr.curves[alpha].name, arr.curves[beta].name
            )));
        }
    }
    let gens = engine.generators(a, b);
    if gens.is_empty() {
        return Err(Error::Degenerate("curves are disjoint; the twist complex is trivial".into()));
    }
    let lam = engine.lam();
    let mut objects = vec![a];
    let mut delta: Entries = BTreeMap::new();
    for target in [b, b.shift()] {
        for &p in &gens {
            if degree(arr, p, a, target)? == 1 {
                objects.push(target);
                delta.insert((0, objects.len() - 1), Chain::gen(a, target, p, lam.clone()));
            }
        }
    }
    Ok(TwistedComplex { objects, delta, cutoff: engine.cutoff.clone() })
}

#[derive(Clone, Debug)]
pub struct QisVerdict {
    pub test: Obj,
    pub source: Ranks,
    pub target: Ranks,
    /// `None` when no morphism was given and only ranks were compared
    pub cone_acyclic: Option<bool>,
    pub square_invertible: Option<bool>,
    pub pass: bool,
    pub note: Option<String>,
}

/// For each test curve `B`: ranks of `Mor(B, T)` and `Mor(B, T′)`, and, given `F`, whether
/// `m̂₂(·, F)` is a quasi-isomorphism (its mapping cone is acyclic).
pub fn quasi_iso_test(
    engine: &Engine,
    t: &TwistedComplex,
    t2: &TwistedComplex,
    f: Option<&Entries>,
    tests: &[Obj],
) -> Result<Vec<QisVerdict>> {
    if let Some(f) = f {
        if !m1_hat(engine, t, t2, f)?.is_empty() {
            return Err(Error::Hypothesis("morphism is not closed".into()));
        }
    }
    let lam = engine.lam();
    let mut out = Vec::new();
    for &b in tests {
        let tb = TwistedComplex::single(b, engine.cutoff.clone());
        let c1 = hom_complex(engine, &tb, t)?;
        let c2 = hom_complex(engine, &tb, t2)?;
        let (r1, r2) = (c1.ranks()?, c2.ranks()?);
        let mut v = QisVerdict {
            test: b,
            source: r1.clone(),
            target: r2.clone(),
            cone_acyclic: None,
            square_invertible: None,
            pass: r1.h0 == r2.h0 && r1.h1 == r2.h1,
            note: None,
        };
        if !(c1.d_squared.ok && c2.d_squared.ok) {
            v.pass = false;
            v.note = Some("hom complex differential does not square to zero".into());
            out.push(v);
            continue;
        }
        if let Some(f) = f {
            let (n1, n2) = (c1.gens.len(), c2.gens.len());
            let mut phi = vec![vec![Novikov::zero(lam.clone()); n1]; n2];
            for col in 0..n1 {
                let mut unit = vec![Novikov::zero(lam.clone()); n1];
                unit[col] = Novikov::one(lam.clone());
                let x = c1.element(&tb, t, &unit);
                let img = compose(engine, &tb, t, t2, &x, f)?;
                for (row, y) in c2.column(&img).into_iter().enumerate() {
                    phi[row][col] = y;
                }
            }
            let n = n1 + n2;
            let mut best: Option<(bool, usize)> = None;
            for sign in [1i64, -1] {
                let mut dm = vec![vec![Novikov::zero(lam.clone()); n]; n];
                for r in 0..n1 {
                    for c in 0..n1 {
                        dm[r][c] = c1.d[r][c].scale(&Q::from_integer(sign.into()));
                    }
                }
                for r in 0..n2 {
                    for c in 0..n1 {
                        dm[n1 + r][c] = phi[r][c].clone();
                    }
                    for c in 0..n2 {
                        dm[n1 + r][n1 + c] = c2.d[r][c].clone();
                    }
                }
                let sq = mat_mul(&dm, &dm, &lam);
                let zero = sq.iter().all(|row| row.iter().all(Novikov::is_zero));
                if zero {
                    best = Some((true, novikov_rank(&dm)?));
                    break;
                }
            }
            match best {
                Some((_, rank)) => {
                    let acyclic = 2 * rank == n;
                    v.cone_acyclic = Some(acyclic);
                    if n1 == n2 {
                        v.square_invertible = Some(novikov_rank(&phi)? == n1);
                    }
                    v.pass = v.pass && acyclic;
                }
                None => {
                    v.pass = false;
                    v.note = Some("no sign makes the mapping cone a complex".into());
                }
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// `([Γ], hol(Γ), wd(Γ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub class: Vec<i64>,
    pub hol: Q,
    /// reduced mod `|χ|` when `χ ≠ 0`
    pub wd: i64,
}

impl InvariantVector {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(|&x| x == 0) && self.hol.is_zero() && self.wd == 0
    }

    pub fn to_json(&self) -> Value {
        json!({"class": self.class, "hol": rat::to_json(&self.hol), "hol_display": rat::fmt_q(&self.hol), "wd": self.wd})
    }
}

pub fn invariant_vector(surface: &FlatSurface, arr: &Arrangement, objects: &[Obj]) -> InvariantVector {
    let mut class = vec![0i64; surface.h1_rank()];
    let mut hol = Q::zero();
    let mut wd = 0i64;
    for o in objects {
        let c = &arr.curves[o.curve];
        let s = if o.shifted { -1 } else { 1 };
        for (x, y) in class.iter_mut().zip(c.homology_class(surface)) {
            *x += s * y;
        }
        hol += Q::from_integer(s.into()) * c.holonomy(surface);
        wd += s * c.turning_number();
    }
    let chi = surface.chi().abs();
    if chi != 0 {
        wd = wd.rem_euclid(chi);
    }
    InvariantVector { class, hol, wd }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{resolve_connect_sum, straight};
    use crate::curve::PLCurve;
    use crate::floer::canonical_qis;
    use crate::geom::{pi, pq};
    use crate::rat::qi;

    fn scene() -> (FlatSurface, Arrangement) {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = PLCurve::from_runs(&t, "V", &[vec![pq((1, 4), (0, 1)), pq((1, 4), (1, 1))]], 0).unwrap();
        let w = PLCurve::from_runs(&t, "W", &[vec![pq((3, 8), (0, 1)), pq((1, 8), (1, 2)), pq((3, 8), (1, 1))]], 0).unwrap();
        let h = PLCurve::from_runs(&t, "H", &[vec![pq((0, 1), (1, 8)), pq((1, 1), (1, 8))]], 0).unwrap();
        let arr = Arrangement::new(&t, vec![v, w, h]);
        (t, arr)
    }

    #[test]
    fn cone_of_canonical_morphism() {
        let (t, arr) = scene();
        let eng = Engine::new(&t, &arr, qi(1));
        let (v, w, h) = (Obj::new(0), Obj::new(1), Obj::new(2));
        let e = canonical_qis(&eng, v, w).unwrap();
        let (tv, tw) = (TwistedComplex::single(v, qi(1)), TwistedComplex::single(w, qi(1)));
        let mut f = Entries::new();
        f.insert((0, 0), e);
        let verdicts = quasi_iso_test(&eng, &tv, &tw, Some(&f), &[h]).unwrap();
        assert!(verdicts[0].pass, "{:?}", verdicts[0]);
        assert_eq!(verdicts[0].square_invertible, Some(true));
        let c = cone(&eng, &tv, &tw, &f).unwrap();
        assert_eq!(c.objects, vec![v.shift(), w]);
        assert!(invariant_vector(&t, &arr, &c.objects).is_zero());
        let th = TwistedComplex::single(h, qi(1));
        let hc = hom_complex(&eng, &th, &c).unwrap();
        assert!(hc.d_squared.ok);
        let r = hc.ranks().unwrap();
        assert_eq!((r.h0, r.h1), (0, 0));
    }

    #[test]
    fn cone_of_crossing_matches_resolution() {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = straight(&t, "V", &pq((1, 4), (1, 16)), &pi(0, 1)).unwrap();
        let h = straight(&t, "H", &pq((7, 8), (1, 8)), &pi(-1, 0)).unwrap();
        let a0 = Arrangement::new(&t, vec![v.clone(), h.clone()]);
        let c0 = a0.between(0, 1)[0];
        assert_eq!(a0.degree_of(c0, 0, 1).unwrap(), 1);
        let r = resolve_connect_sum(&t, &a0, 0, 1, c0, "R").unwrap();
        let d1 = straight(&t, "D1", &pq((5, 8), (1, 16)), &pi(1, -1)).unwrap();
        let d2 = straight(&t, "D2", &pq((11, 16), (1, 32)), &pi(1, 2)).unwrap();
        let arr = Arrangement::new(&t, vec![v, h, r.curve, d1, d2]);
        assert!(arr.transversal, "{:?}", arr.witness);
        let eng = Engine::new(&t, &arr, qi(1));
        let c = arr.between(0, 1)[0];
        let mut delta = Entries::new();
        delta.insert((0, 1), Chain::gen(Obj::new(0), Obj::new(1), c, eng.lam()));
        let cc = TwistedComplex { objects: vec![Obj::new(0), Obj::new(1)], delta, cutoff: qi(1) };
        assert!(validate(&eng, &cc).unwrap().ok);
        let tr = TwistedComplex::single(Obj::new(2), qi(1));
        assert_eq!(invariant_vector(&t, &arr, &cc.objects), invariant_vector(&t, &arr, &tr.objects));
        let hc = hom_complex(&eng, &tr, &cc).unwrap();
        assert!(hc.d_squared.ok);
        let closed: Vec<Entries> = (0..hc.gens.len())
            .filter(|&i| hc.degrees[i] == 0)
            .map(|i| {
                let mut unit = vec![Novikov::zero(eng.lam()); hc.gens.len()];
                unit[i] = Novikov::one(eng.lam());
                hc.element(&tr, &cc, &unit)
            })
            .filter(|f| m1_hat(&eng, &tr, &cc, f).unwrap().is_empty())
            .collect();
        assert_eq!(closed.len(), 1);
        let verdicts = quasi_iso_test(&eng, &tr, &cc, Some(&closed[0]), &[Obj::new(3), Obj::new(4)]).unwrap();
        assert_eq!(verdicts.len(), 2);
        for v in verdicts {
            assert!(v.pass && v.cone_acyclic == Some(true), "{v:?}");
        }
    }
}
