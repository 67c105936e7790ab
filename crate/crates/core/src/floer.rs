//! Floer cochains, the products `m_k`, and the checks built on them.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::faces::Faces;
use crate::novikov::{Cutoff, Novikov};
use crate::polygons::{self, degree, Enumeration, ImmersedPolygon, Obj};
use crate::rat::{self, Q};
use crate::surface::FlatSurface;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// A Novikov combination of intersection points of an ordered pair of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub from: Obj,
    pub to: Obj,
    pub terms: BTreeMap<usize, Novikov>,
    pub cutoff: Cutoff,
}

impl Chain {
    pub fn zero(from: Obj, to: Obj, cutoff: Cutoff) -> Chain {
        Chain { from, to, terms: BTreeMap::new(), cutoff }
    }

    pub fn gen(from: Obj, to: Obj, point: usize, cutoff: Cutoff) -> Chain {
        let mut c = Chain::zero(from, to, cutoff.clone());
        c.terms.insert(point, Novikov::one(cutoff));
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Novikov::is_zero)
    }

    pub fn add_term(&mut self, point: usize, x: &Novikov) {
        let x = x.truncate(&self.cutoff);
        if x.is_zero() {
            return;
        }
        let v = match self.terms.remove(&point) {
            Some(y) => y.add(&x),
            None => x,
        };
        if !v.is_zero() {
            self.terms.insert(point, v);
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.cutoff = crate::novikov::min_cutoff(&self.cutoff, &other.cutoff);
        for (p, x) in &other.terms {
            out.add_term(*p, x);
        }
        out.terms = out.terms.into_iter().map(|(p, x)| (p, x.truncate(&out.cutoff))).filter(|(_, x)| !x.is_zero()).collect();
        out
    }

    pub fn neg(&self) -> Chain {
        self.mul(&Novikov::monomial(-Q::one(), Q::zero(), None))
    }

    pub fn mul(&self, k: &Novikov) -> Chain {
        let mut out = Chain::zero(self.from, self.to, self.cutoff.clone());
        for (p, x) in &self.terms {
            out.add_term(*p, &x.mul(k));
        }
        out
    }

    /// The common degree of the support, if homogeneous.
    pub fn degree(&self, arr: &Arrangement) -> Result<Option<u8>> {
        let mut d = None;
        for (&p, x) in &self.terms {
            if x.is_zero() {
                continue;
            }
            let e = degree(arr, p, self.from, self.to)?;
            match d {
                None => d = Some(e),
                Some(f) if f != e => return Ok(None),
                _ => {}
            }
        }
        Ok(d)
    }

    pub fn to_json(&self, arr: &Arrangement) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&p, x)| {
                json!({
                    "point": p,
                    "at": crate::curve::pt_json(&arr.points[p].at),
                    "coefficient": x.to_json(),
                    "display": x.to_string(),
                })
            })
            .collect();
        json!({
            "from": obj_json(arr, self.from),
            "to": obj_json(arr, self.to),
            "terms": terms,
        })
    }
}

pub fn obj_json(arr: &Arrangement, o: Obj) -> Value {
    json!({"curve": arr.curves[o.curve].name, "shift": o.shifted})
}

pub fn obj_name(arr: &Arrangement, o: Obj) -> String {
    let n = &arr.curves[o.curve].name;
    if o.shifted {
        format!("{n}[1]")
    } else {
        n.clone()
    }
}

/// Polygon counts for a fixed arrangement and cutoff, cached per object sequence.
pub struct Engine<'a> {
    pub surface: &'a FlatSurface,
    pub arr: &'a Arrangement,
    pub cutoff: Q,
    cache: RefCell<HashMap<Vec<Obj>, Rc<Indexed>>>,
    degree_violations: Cell<usize>,
    polygons_checked: Cell<usize>,
}

struct Indexed {
    enumeration: Enumeration,
    by_inputs: HashMap<Vec<usize>, Vec<usize>>,
}

impl<'a> Engine<'a> {
    pub fn new(surface: &'a FlatSurface, arr: &'a Arrangement, cutoff: Q) -> Engine<'a> {
        Engine {
            surface,
            arr,
            cutoff,
            cache: RefCell::new(HashMap::new()),
            degree_violations: Cell::new(0),
            polygons_checked: Cell::new(0),
        }
    }

    pub fn lam(&self) -> Cutoff {
        Some(self.cutoff.clone())
    }

    fn indexed(&self, seq: &[Obj]) -> Result<Rc<Indexed>> {
        if let Some(x) = self.cache.borrow().get(seq) {
            return Ok(x.clone());
        }
        let e = polygons::enumerate(self.surface, self.arr, seq, &self.cutoff, None)?;
        self.degree_violations.set(self.degree_violations.get() + e.degree_violations);
        self.polygons_checked.set(self.polygons_checked.get() + e.polygons.len());
        let mut by_inputs: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (i, u) in e.polygons.iter().enumerate() {
            by_inputs.entry(u.inputs.clone()).or_default().push(i);
        }
        let ix = Rc::new(Indexed { enumeration: e, by_inputs });
        self.cache.borrow_mut().insert(seq.to_vec(), ix.clone());
        Ok(ix)
    }

    /// All polygons with boundary on `seq`, sorted by area.
    pub fn polygons(&self, seq: &[Obj]) -> Result<Vec<ImmersedPolygon>> {
        Ok(self.indexed(seq)?.enumeration.polygons.clone())
    }

    pub fn degree_violations(&self) -> usize {
        self.degree_violations.get()
    }

    pub fn polygons_checked(&self) -> usize {
        self.polygons_checked.get()
    }

    /// Every polygon seen so far, for whole-run audits.
    pub fn all_polygons(&self) -> Vec<ImmersedPolygon> {
        let cache = self.cache.borrow();
        let mut keys: Vec<&Vec<Obj>> = cache.keys().collect();
        keys.sort();
        keys.into_iter().flat_map(|k| cache[k].enumeration.polygons.iter().cloned()).collect()
    }

    /// Bigons from input `p` to output `q` in `CF(a, b)`.
    pub fn bigons(&self, a: Obj, b: Obj, q: usize, p: usize) -> Result<Vec<ImmersedPolygon>> {
        let ix = self.indexed(&[a, b])?;
        Ok(ix
            .by_inputs
            .get(&vec![p])
            .map(|v| v.iter().map(|&i| &ix.enumeration.polygons[i]).filter(|u| u.output == q).cloned().collect())
            .unwrap_or_default())
    }

    pub fn generators(&self, a: Obj, b: Obj) -> Vec<usize> {
        self.arr.between(a.curve, b.curve)
    }

    /// `m_k(x_k, …, x_1)`, with `xs[i]` in `CF(γᵢ, γᵢ₊₁)` (so `xs` lists `x_1` first).
    pub fn mu(&self, xs: &[&Chain]) -> Result<Chain> {
        let k = xs.len();
        if k == 0 {
            return Err(Error::Input("m_k needs at least one input".into()));
        }
        let mut seq = vec![xs[0].from];
        for (i, x) in xs.iter().enumerate() {
            if x.from != *seq.last().unwrap() {
                return Err(Error::Input(format!("input {} does not start where input {} ends", i + 1, i)));
            }
            seq.push(x.to);
        }
        let mut cutoff = self.lam();
        for x in xs {
            cutoff = crate::novikov::min_cutoff(&cutoff, &x.cutoff);
        }
        let mut out = Chain::zero(seq[0], seq[k], cutoff.clone());
        if xs.iter().any(|x| x.is_zero()) {
            return Ok(out);
        }
        let ix = self.indexed(&seq)?;
        let supports: Vec<Vec<(&usize, &Novikov)>> = xs.iter().map(|x| x.terms.iter().collect()).collect();
        let mut idx = vec![0usize; k];
        loop {
            let key: Vec<usize> = (0..k).map(|i| *supports[i][idx[i]].0).collect();
            if let Some(list) = ix.by_inputs.get(&key) {
                let mut coeff = Novikov::one(cutoff.clone());
                for i in 0..k {
                    coeff = coeff.mul(supports[i][idx[i]].1);
                }
                for &pi in list {
                    let u = &ix.enumeration.polygons[pi];
                    let w = Novikov::monomial(Q::from_integer(u.sign.into()), u.area.clone(), cutoff.clone());
                    out.add_term(u.output, &coeff.mul(&w));
                }
            }
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(out);
                }
                idx[i] += 1;
                if idx[i] < supports[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    /// `hol(∂u) − ω(u)` for every polygon seen so far, torus lattice corners counted back in.
    pub fn boundary_offsets(&self) -> Vec<Q> {
        self.all_polygons().iter().map(|u| boundary_offset(self.surface, u)).collect()
    }
}

/// `hol(∂u) − ω(u) + n·area(Σ)` with `n` the corner multiplicity.
pub fn boundary_offset(surface: &FlatSurface, u: &ImmersedPolygon) -> Q {
    boundary_holonomy(surface, u) - &u.area + surface.area() * rat::qi(corner_multiplicity(surface, u))
}

/// `hol(∂u)` of the closed developed boundary, computed in the chart.
pub fn boundary_holonomy(surface: &FlatSurface, u: &ImmersedPolygon) -> Q {
    let mut h = Q::zero();
    let n = u.boundary.len();
    let mut dirs = Vec::with_capacity(n);
    for (i, p) in u.boundary.iter().enumerate() {
        let (a, b) = &p.chart;
        h += rat::half(&(&a.x + &b.x)) * (&b.y - &a.y);
        dirs.push(b.sub(a));
        let next = &u.boundary[(i + 1) % n];
        if next.chart.0 != *b {
            let shift = next.chart.0.sub(b);
            h += crate::curve::crossing_term(&shift, b);
        }
    }
    h + surface.kappa() * rat::qi(crate::curve::rotation_of(&dirs))
}

/// Number of times the closed boundary covers the corner point (torus charts).
pub fn corner_multiplicity(surface: &FlatSurface, u: &ImmersedPolygon) -> i64 {
    if !surface.abelian_deck() || surface.kind() != crate::surface::SurfaceKind::Torus {
        return 0;
    }
    let segs: Vec<(crate::geom::Pt, crate::geom::Pt)> = u.boundary.iter().map(|p| p.dev.clone()).collect();
    let v = &surface.vertices()[0];
    let gens: Vec<crate::geom::Pt> = surface.pairings().iter().map(|p| p.shift.clone()).collect();
    let mut lo = segs[0].0.clone();
    let mut hi = segs[0].0.clone();
    for (a, b) in &segs {
        for p in [a, b] {
            if p.x < lo.x { lo.x = p.x.clone(); }
            if p.y < lo.y { lo.y = p.y.clone(); }
            if p.x > hi.x { hi.x = p.x.clone(); }
            if p.y > hi.y { hi.y = p.y.clone(); }
        }
    }
    let sx = gens.iter().map(|g| num_traits::Signed::abs(&g.x)).find(|x| !x.is_zero()).unwrap();
    let sy = gens.iter().map(|g| num_traits::Signed::abs(&g.y)).find(|y| !y.is_zero()).unwrap();
    let i0 = rat::floor_i64(&((&lo.x - &v.x) / &sx));
    let i1 = rat::floor_i64(&((&hi.x - &v.x) / &sx)) + 1;
    let j0 = rat::floor_i64(&((&lo.y - &v.y) / &sy));
    let j1 = rat::floor_i64(&((&hi.y - &v.y) / &sy)) + 1;
    let mut total = 0;
    let dev = u.developed();
    for i in i0..=i1 {
        for j in j0..=j1 {
            let p = crate::geom::Pt::new(&v.x + &sx * rat::qi(i), &v.y + &sy * rat::qi(j));
            total += winding_number(&p, &dev);
        }
    }
    total
}

/// Winding number of a closed polygonal loop around a point not on it.
pub fn winding_number(p: &crate::geom::Pt, loop_pts: &[crate::geom::Pt]) -> i64 {
    let n = loop_pts.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (&loop_pts[i], &loop_pts[(i + 1) % n]);
        if a.y <= p.y {
            if b.y > p.y && crate::geom::orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && crate::geom::orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// Floer complex `CF(a, b)` with its differential.
#[derive(Clone, Debug)]
pub struct FloerComplex {
    pub from: Obj,
    pub to: Obj,
    pub gens: Vec<usize>,
    pub degrees: Vec<u8>,
    /// `d[row][col]`: coefficient of `gens[row]` in `d(gens[col])`.
    pub d: Vec<Vec<Novikov>>,
    pub cutoff: Q,
}

pub fn cf_complex(engine: &Engine, a: Obj, b: Obj) -> Result<FloerComplex> {
    engine.arr.check_transverse(&[a.curve, b.curve])?;
    let gens = engine.generators(a, b);
    let lam = engine.lam();
    let degrees = gens.iter().map(|&p| degree(engine.arr, p, a, b)).collect::<Result<Vec<u8>>>()?;
    let n = gens.len();
    let mut d = vec![vec![Novikov::zero(lam.clone()); n]; n];
    let pos: HashMap<usize, usize> = gens.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    for (col, &p) in gens.iter().enumerate() {
        let img = engine.mu(&[&Chain::gen(a, b, p, lam.clone())])?;
        for (q, x) in img.terms {
            d[pos[&q]][col] = x;
        }
    }
    Ok(FloerComplex { from: a, to: b, gens, degrees, d, cutoff: engine.cutoff.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub ok: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

pub fn mat_mul(a: &[Vec<Novikov>], b: &[Vec<Novikov>], cutoff: &Cutoff) -> Vec<Vec<Novikov>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    let mut out = vec![vec![Novikov::zero(cutoff.clone()); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = Novikov::zero(cutoff.clone());
            for k in 0..inner {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    s = s.add(&a[i][k].mul(&b[k][j]));
                }
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn check_d_squared(c: &FloerComplex) -> Check {
    let lam = Some(c.cutoff.clone());
    let dd = mat_mul(&c.d, &c.d, &lam);
    for (i, row) in dd.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                return Check {
                    ok: false,
                    checked: 1,
                    witness: Some(format!("d²(generator {}) has {} on generator {}", c.gens[j], x, c.gens[i])),
                };
            }
        }
    }
    Check { ok: true, checked: 1, witness: None }
}

/// Sign convention in the `A∞` sum; `Dropped` omits the `d` summand and exists for fault injection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signs {
    Standard,
    Dropped,
}

/// Checks the `A∞` relations on every ordered sequence of distinct objects from `objs` with
/// `n ≤ max_k` inputs, on all tuples of generators.
pub fn check_a_infinity(engine: &Engine, objs: &[Obj], max_k: usize, signs: Signs) -> Result<Check> {
    let mut checked = 0;
    let mut seqs: Vec<Vec<Obj>> = Vec::new();
    fn extend(cur: &mut Vec<Obj>, objs: &[Obj], left: usize, out: &mut Vec<Vec<Obj>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for &o in objs {
            if cur.iter().all(|c| c.curve != o.curve) {
                cur.push(o);
                extend(cur, objs, left - 1, out);
                cur.pop();
            }
        }
    }
    extend(&mut Vec::new(), objs, max_k + 1, &mut seqs);
    for seq in seqs {
        if engine.arr.check_transverse(&seq.iter().map(|o| o.curve).collect::<Vec<_>>()).is_err() {
            continue;
        }
        let n = seq.len() - 1;
        let gens: Vec<Vec<usize>> = (0..n).map(|i| engine.generators(seq[i], seq[i + 1])).collect();
        if gens.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; n];
        loop {
            let xs: Vec<Chain> =
                (0..n).map(|i| Chain::gen(seq[i], seq[i + 1], gens[i][idx[i]], engine.lam())).collect();
            let total = a_infinity_sum(engine, &xs, signs)?;
            checked += 1;
            if !total.is_zero() {
                let names: Vec<String> = seq.iter().map(|&o| obj_name(engine.arr, o)).collect();
                let pts: Vec<String> = xs.iter().map(|x| x.terms.keys().next().unwrap().to_string()).collect();
                let terms: Vec<String> = total.terms.iter().map(|(p, x)| format!("{x} on {p}")).collect();
                return Ok(Check {
                    ok: false,
                    checked,
                    witness: Some(format!(
                        "sequence ({}) inputs [{}]: sum = {}",
                        names.join(", "),
                        pts.join(", "),
                        terms.join(" + ")
                    )),
                });
            }
            let mut i = 0;
            while i < n {
                idx[i] += 1;
                if idx[i] < gens[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(Check { ok: true, checked, witness: None })
}

/// `Σ (−1)^{d + Σ_{i≤d} deg xᵢ} m(x_n, …, m_j(x_{d+j}, …, x_{d+1}), x_d, …, x_1)`.
pub fn a_infinity_sum(engine: &Engine, xs: &[Chain], signs: Signs) -> Result<Chain> {
    let n = xs.len();
    let mut total = Chain::zero(xs[0].from, xs[n - 1].to, engine.lam());
    let degs: Vec<u8> = xs.iter().map(|x| x.degree(engine.arr).map(|d| d.unwrap_or(0))).collect::<Result<_>>()?;
    for j in 1..=n {
        for d in 0..=(n - j) {
            let inner_in: Vec<&Chain> = xs[d..d + j].iter().collect();
            let inner = engine.mu(&inner_in)?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_in: Vec<&Chain> = xs[..d].iter().collect();
            outer_in.push(&inner);
            outer_in.extend(xs[d + j..].iter());
            let val = engine.mu(&outer_in)?;
            let mut e: usize = degs[..d].iter().map(|&x| x as usize).sum();
            if signs == Signs::Standard {
                e += d;
            }
            total = total.add(&if e % 2 == 0 { val } else { val.neg() });
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranks {
    pub h0: usize,
    pub h1: usize,
    /// True when `d² = 0` leaves no room for terms at or above `Λ` to lower the ranks.
    pub conclusive: bool,
}

/// Rank over the Novikov field, eliminating with minimal-valuation pivots.
pub fn novikov_rank(m: &[Vec<Novikov>]) -> Result<usize> {
    let mut a: Vec<Vec<Novikov>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut r0 = 0;
    let mut done_cols = vec![false; cols];
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in 0..cols {
                if done_cols[j] || a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => a[i][j].valuation() < a[bi][bj].valuation(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            return Ok(rank);
        };
        a.swap(r0, pi);
        let inv = a[r0][pj].invert()?;
        for i in r0 + 1..rows {
            if a[i][pj].is_zero() {
                continue;
            }
            let f = a[i][pj].mul(&inv);
            for j in 0..cols {
                if !a[r0][j].is_zero() {
                    let x = a[i][j].sub(&f.mul(&a[r0][j]));
                    a[i][j] = x;
                }
            }
        }
        done_cols[pj] = true;
        rank += 1;
        r0 += 1;
    }
}

pub fn hf_ranks(c: &FloerComplex) -> Result<Ranks> {
    graded_ranks(&c.degrees, &c.d)
}

/// Homology ranks of a `ℤ/2`-graded complex with differential `d[row][col]`.
pub fn graded_ranks(degrees: &[u8], d: &[Vec<Novikov>]) -> Result<Ranks> {
    let idx = |g: u8| -> Vec<usize> { (0..degrees.len()).filter(|&i| degrees[i] == g).collect() };
    let (i0, i1) = (idx(0), idx(1));
    let block = |rows: &[usize], cols: &[usize]| -> Vec<Vec<Novikov>> {
        rows.iter().map(|&r| cols.iter().map(|&s| d[r][s].clone()).collect()).collect()
    };
    let r = novikov_rank(&block(&i1, &i0))? + novikov_rank(&block(&i0, &i1))?;
    Ok(Ranks { h0: i0.len() - r, h1: i1.len() - r, conclusive: r == i0.len().min(i1.len()) })
}

/// The degree-0 cochain `e₁₂` between isotopic curves of equal holonomy.
pub fn canonical_qis(engine: &Engine, g1: Obj, g2: Obj) -> Result<Chain> {
    let arr = engine.arr;
    let (c1, c2) = (&arr.curves[g1.curve], &arr.curves[g2.curve]);
    let sgn = |o: Obj| if o.shifted { -Q::one() } else { Q::one() };
    let h1 = c1.holonomy(engine.surface) * sgn(g1);
    let h2 = c2.holonomy(engine.surface) * sgn(g2);
    if h1 != h2 {
        return Err(Error::Hypothesis(format!(
            "holonomy mismatch: {} vs {}",
            rat::fmt_q(&h1),
            rat::fmt_q(&h2)
        )));
    }
    let mut pts: Vec<usize> = engine.generators(g1, g2);
    if pts.is_empty() || pts.len() % 2 != 0 {
        return Err(Error::Hypothesis(format!("expected an even positive number of crossings, found {}", pts.len())));
    }
    pts.sort_by(|&p, &q| {
        let (sp, tp) = arr.points[p].on(g1.curve).unwrap();
        let (sq, tq) = arr.points[q].on(g1.curve).unwrap();
        (sp, tp).cmp(&(sq, tq))
    });
    if g1.shifted {
        pts.reverse();
    }
    let start = pts
        .iter()
        .position(|&p| degree(arr, p, g1, g2).ok() == Some(0))
        .ok_or_else(|| Error::Hypothesis("no degree-0 crossing".into()))?;
    pts.rotate_left(start);
    let n2 = pts.len();
    let bigons = engine.polygons(&[g1, g2])?;
    let faces = Faces::new(engine.surface, arr, &[g1.curve, g2.curve]);
    let mut cover = vec![0i64; faces.faces.len()];
    let mut areas = Vec::with_capacity(n2);
    for k in 0..n2 {
        let (a, b) = (pts[k], pts[(k + 1) % n2]);
        let u = bigons
            .iter()
            .filter(|u| {
                let (s, e) = if u.sides[0].along { (u.output, u.inputs[0]) } else { (u.inputs[0], u.output) };
                s == a && e == b
            })
            .min_by(|x, y| x.area.cmp(&y.area))
            .ok_or_else(|| Error::Hypothesis(format!("no bigon between consecutive crossings {a} and {b}")))?;
        let dom = u.domain(engine.surface, &faces);
        for (c, m) in cover.iter_mut().zip(&dom) {
            if *m < 0 || *m > 1 {
                return Err(Error::Hypothesis(format!("bigon between {a} and {b} is not embedded")));
            }
            *c += m;
        }
        areas.push(u.area.clone());
    }
    if cover.iter().any(|&c| c > 1) {
        return Err(Error::Hypothesis("bigons overlap".into()));
    }
    let alt: Q = areas.iter().enumerate().map(|(k, a)| if k % 2 == 0 { a.clone() } else { -a.clone() }).sum();
    if !alt.is_zero() {
        return Err(Error::Hypothesis(format!("alternating bigon areas sum to {}", rat::fmt_q(&alt))));
    }
    let lam = engine.lam();
    let n = n2 / 2;
    let mut exps = vec![Q::zero(); n];
    for i in 1..n {
        exps[i] = &exps[i - 1] + &areas[2 * i - 2] - &areas[2 * i - 1];
    }
    let mut signs = vec![Q::one(); n];
    let images: Vec<Chain> = (0..n)
        .map(|i| engine.mu(&[&Chain::gen(g1, g2, pts[2 * i], lam.clone())]))
        .collect::<Result<_>>()?;
    let lead = |i: usize, c: usize| images[i].terms.get(&c).and_then(|x| x.leading().map(|t| t.1.clone()));
    for i in 0..n.saturating_sub(1) {
        let c = pts[2 * i + 1];
        if let (Some(a), Some(b)) = (lead(i, c), lead(i + 1, c)) {
            signs[i + 1] = -(&signs[i] * a) / b;
        }
    }
    let mut e = Chain::zero(g1, g2, lam.clone());
    for i in 0..n {
        e.add_term(pts[2 * i], &Novikov::monomial(signs[i].clone(), exps[i].clone(), lam.clone()));
    }
    let de = engine.mu(&[&e])?;
    if !de.is_zero() {
        return Err(Error::Hypothesis("the alternating cochain is not closed".into()));
    }
    Ok(e)
}
