//! Brute-force polygon count on the torus by lifting to the plane.
//!
//! Every curve is developed into a periodic polyline; lifts are its lattice translates. A
//! candidate polygon picks one lift per object and one crossing per consecutive pair, walks the
//! lifts between crossings and keeps the simple counterclockwise loops with convex corners.

use flatfuk_core::arrangement::Arrangement;
use flatfuk_core::fixtures;
use flatfuk_core::floer::Engine;
use flatfuk_core::polygons::Obj;
use flatfuk_core::scene::Scene;
use flatfuk_core::{Pt, Q};
use num_traits::{One, Signed, Zero};

const R: i64 = 2;
const M: i64 = 3;

fn det(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

/// Developed vertices of one period, the period vector and the marked vertex.
struct Line {
    verts: Vec<Pt>,
    period: Pt,
    marked: usize,
}

impl Line {
    fn new(scene: &Scene, c: usize) -> Line {
        let curve = &scene.curves[c];
        let mut verts = vec![curve.seg(0).a.clone()];
        for s in curve.segs() {
            let last = verts.last().unwrap().clone();
            verts.push(last.add(&s.b.sub(&s.a)));
        }
        let period = verts.pop().unwrap().sub(&verts[0]);
        Line { verts, period, marked: curve.marked() }
    }

    fn n(&self) -> i64 {
        self.verts.len() as i64
    }

    /// Vertex `j` of the bi-infinite lift translated by `t`.
    fn vertex(&self, j: i64, t: &Pt) -> Pt {
        let n = self.n();
        let (m, r) = (j.div_euclid(n), j.rem_euclid(n) as usize);
        self.verts[r].add(&self.period.scale(&Q::from_integer(m.into()))).add(t)
    }

    fn dir(&self, j: i64) -> Pt {
        self.vertex(j + 1, &Pt::origin()).sub(&self.vertex(j, &Pt::origin()))
    }
}

/// A point on a lift: segment `seg` at parameter `t ∈ [0, 1)`.
#[derive(Clone, Debug)]
struct At {
    seg: i64,
    t: Q,
    p: Pt,
}

fn before(a: &At, b: &At) -> bool {
    (a.seg, &a.t) < (b.seg, &b.t)
}

fn crossings(l1: &Line, t1: &Pt, l2: &Line, t2: &Pt, range1: (i64, i64)) -> Vec<(At, At)> {
    let mut out = Vec::new();
    for i in range1.0..range1.1 {
        let (a0, a1) = (l1.vertex(i, t1), l1.vertex(i + 1, t1));
        for j in -M * l2.n()..M * l2.n() {
            let (b0, b1) = (l2.vertex(j, t2), l2.vertex(j + 1, t2));
            let (da, db) = (a1.sub(&a0), b1.sub(&b0));
            let den = det(&da, &db);
            if den.is_zero() {
                continue;
            }
            let w = b0.sub(&a0);
            let s = det(&w, &db) / &den;
            let u = det(&w, &da) / &den;
            if s.is_negative() || s >= Q::one() || u.is_negative() || u >= Q::one() {
                continue;
            }
            let p = a0.add(&da.scale(&s));
            out.push((At { seg: i, t: s, p: p.clone() }, At { seg: j, t: u, p }));
        }
    }
    out
}

/// Vertices strictly inside the arc from `a` to `b`, the direction flag and the marked count.
fn arc(l: &Line, tr: &Pt, a: &At, b: &At) -> (Vec<Pt>, bool, usize) {
    let fwd = before(a, b);
    let (lo, hi) = if fwd { (a, b) } else { (b, a) };
    let mut inner = Vec::new();
    let mut marks = 0;
    for j in lo.seg + 1..=hi.seg {
        inner.push(l.vertex(j, tr));
        if j.rem_euclid(l.n()) as usize == l.marked {
            marks += 1;
        }
    }
    if hi.t.is_zero() && hi.seg > lo.seg {
        inner.pop();
        if hi.seg.rem_euclid(l.n()) as usize == l.marked {
            marks -= 1;
        }
    }
    if !fwd {
        inner.reverse();
    }
    (inner, fwd, marks)
}

/// Drops vertices where the loop runs straight on.
fn corners_only(pts: &[Pt]) -> Vec<Pt> {
    let n = pts.len();
    (0..n)
        .filter(|&i| {
            let (a, b, c) = (&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]);
            let (u, v) = (b.sub(a), c.sub(b));
            !(det(&u, &v).is_zero() && (&u.x * &v.x + &u.y * &v.y).is_positive())
        })
        .map(|i| pts[i].clone())
        .collect()
}

fn simple(pts: &[Pt]) -> bool {
    let loop_pts = corners_only(pts);
    let n = loop_pts.len();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a0, a1) = (&loop_pts[i], &loop_pts[(i + 1) % n]);
            let (b0, b1) = (&loop_pts[j], &loop_pts[(j + 1) % n]);
            let (da, db) = (a1.sub(a0), b1.sub(b0));
            let den = det(&da, &db);
            if den.is_zero() {
                if det(&da, &b0.sub(a0)).is_zero() {
                    return false;
                }
                continue;
            }
            let w = b0.sub(a0);
            let s = det(&w, &db) / &den;
            let u = det(&w, &da) / &den;
            if !s.is_negative() && s <= Q::one() && !u.is_negative() && u <= Q::one() {
                return false;
            }
        }
    }
    true
}

fn shoelace(pts: &[Pt]) -> Q {
    let n = pts.len();
    let mut a = Q::zero();
    for i in 0..n {
        a += det(&pts[i], &pts[(i + 1) % n]);
    }
    a / Q::from_integer(2.into())
}

/// Chart point of a plane point, matched against the arrangement.
fn point_id(scene: &Scene, arr: &Arrangement, a: usize, b: usize, p: &Pt) -> usize {
    let v = &scene.surface.vertices()[0];
    let gens: Vec<Pt> = scene.surface.pairings().iter().map(|e| e.shift.clone()).collect();
    let sx = gens.iter().map(|g| g.x.abs()).find(|x| !x.is_zero()).unwrap();
    let sy = gens.iter().map(|g| g.y.abs()).find(|y| !y.is_zero()).unwrap();
    let rx = (&p.x - &v.x) / &sx;
    let ry = (&p.y - &v.y) / &sy;
    let c = Pt::new(&v.x + (&rx - rx.floor()) * &sx, &v.y + (&ry - ry.floor()) * &sy);
    arr.between(a, b)
        .into_iter()
        .find(|&i| arr.points[i].at == c)
        .unwrap_or_else(|| panic!("no crossing at {c}"))
}

/// `(area, sign, inputs, output)` for one polygon.
pub type Record = (Q, i8, Vec<usize>, usize);

pub fn oracle(scene: &Scene, arr: &Arrangement, seq: &[usize], cutoff: &Q) -> Vec<Record> {
    let k = seq.len() - 1;
    let lines: Vec<Line> = seq.iter().map(|&c| Line::new(scene, c)).collect();
    let gens: Vec<Pt> = scene.surface.pairings().iter().map(|e| e.shift.clone()).collect();
    let (g1, g2) = (&gens[0], &gens[1]);
    let mut translates = Vec::new();
    for a in -R..=R {
        for b in -R..=R {
            translates.push(g1.scale(&Q::from_integer(a.into())).add(&g2.scale(&Q::from_integer(b.into()))));
        }
    }
    let canon = |l: &Line, t: &Pt| -> Pt {
        let pp = &l.period;
        let m = (((&t.x * &pp.x) + (&t.y * &pp.y)) / ((&pp.x * &pp.x) + (&pp.y * &pp.y))).floor();
        t.sub(&pp.scale(&m))
    };
    let origin = Pt::origin();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let mut lifts: Vec<Pt> = vec![origin.clone()];
        for i in 0..k {
            lifts.push(canon(&lines[i + 1], &translates[choice[i]]));
        }
        let distinct = (1..=k).all(|i| (1..i).all(|j| seq[j] != seq[i] || lifts[j] != lifts[i]));
        if distinct {
            search(scene, arr, seq, &lines, &lifts, cutoff, &mut out);
        }
        let mut i = 0;
        while i < k {
            choice[i] += 1;
            if choice[i] < translates.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

fn search(scene: &Scene, arr: &Arrangement, seq: &[usize], lines: &[Line], lifts: &[Pt], cutoff: &Q, out: &mut Vec<Record>) {
    let k = seq.len() - 1;
    // output corner on one period of the base lift
    let outs = crossings(&lines[0], &lifts[0], &lines[k], &lifts[k], (0, lines[0].n()));
    let wide = (-M * lines[0].n(), M * lines[0].n());
    let pairs: Vec<Vec<(At, At)>> = (0..k)
        .map(|i| crossings(&lines[i], &lifts[i], &lines[i + 1], &lifts[i + 1], if i == 0 { wide } else { (-M * lines[i].n(), M * lines[i].n()) }))
        .collect();
    for (o0, ok) in &outs {
        let mut pick = vec![0usize; k];
        if pairs.iter().any(|p| p.is_empty()) {
            return;
        }
        loop {
            let cs: Vec<&(At, At)> = (0..k).map(|i| &pairs[i][pick[i]]).collect();
            if let Some(rec) = assemble(scene, arr, seq, lines, lifts, o0, ok, &cs, cutoff) {
                out.push(rec);
            }
            let mut i = 0;
            while i < k {
                pick[i] += 1;
                if pick[i] < pairs[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    scene: &Scene,
    arr: &Arrangement,
    seq: &[usize],
    lines: &[Line],
    lifts: &[Pt],
    o0: &At,
    ok: &At,
    cs: &[&(At, At)],
    cutoff: &Q,
) -> Option<Record> {
    let k = seq.len() - 1;
    // side i runs on lift i from its entry corner to its exit corner
    let mut loop_pts = Vec::new();
    let mut along = Vec::new();
    let mut marks = 0usize;
    let mut dirs_in = Vec::new();
    let mut dirs_out = Vec::new();
    for i in 0..=k {
        let entry = if i == 0 { o0 } else { &cs[i - 1].1 };
        let exit = if i == k { ok } else { &cs[i].0 };
        if entry.seg == exit.seg && entry.t == exit.t {
            return None;
        }
        let (inner, fwd, m) = arc(&lines[i], &lifts[i], entry, exit);
        marks += m;
        along.push(fwd);
        let sgn = |fwd: bool, d: Pt| if fwd { d } else { d.neg() };
        dirs_out.push(sgn(fwd, lines[i].dir(entry.seg)));
        dirs_in.push(sgn(fwd, lines[i].dir(exit.seg)));
        loop_pts.push(entry.p.clone());
        loop_pts.extend(inner);
    }
    // convex corners: left turn from side i into side i + 1
    for i in 0..=k {
        let j = (i + 1) % (k + 1);
        if !det(&dirs_in[i], &dirs_out[j]).is_positive() {
            return None;
        }
    }
    let area = shoelace(&loop_pts);
    if !area.is_positive() || area >= *cutoff || !simple(&loop_pts) {
        return None;
    }
    let inputs: Vec<usize> = (0..k).map(|i| point_id(scene, arr, seq[i], seq[i + 1], &cs[i].0.p)).collect();
    let output = point_id(scene, arr, seq[0], seq[k], &o0.p);
    // degree of a crossing from a to b: 1 when (a', b') is positively oriented
    let deg1 = |i: usize, seg_i: i64, j: usize, seg_j: i64| det(&lines[i].dir(seg_i), &lines[j].dir(seg_j)).is_positive();
    let mut sign: i8 = if marks % 2 == 0 { 1 } else { -1 };
    for i in 0..k {
        if deg1(i, cs[i].0.seg, i + 1, cs[i].1.seg) && !along[i + 1] {
            sign = -sign;
        }
    }
    if deg1(0, o0.seg, k, ok.seg) && !along[k] {
        sign = -sign;
    }
    Some((area, sign, inputs, output))
}

pub fn engine_records(scene: &Scene, arr: &Arrangement, seq: &[usize], cutoff: &Q) -> Vec<Record> {
    let e = Engine::new(&scene.surface, arr, cutoff.clone());
    let objs: Vec<Obj> = seq.iter().map(|&c| Obj::new(c)).collect();
    let mut v: Vec<Record> = e.polygons(&objs).unwrap().into_iter().map(|u| (u.area, u.sign, u.inputs, u.output)).collect();
    v.sort();
    v
}

pub fn sequences(scene: &Scene) -> Vec<Vec<usize>> {
    let ix = |n: &String| scene.curve_index(n).unwrap();
    let mut out = Vec::new();
    for (a, b) in &scene.pairs {
        out.push(vec![ix(a), ix(b)]);
        out.push(vec![ix(b), ix(a)]);
    }
    for s in &scene.sequences {
        let s: Vec<usize> = s.iter().map(ix).collect();
        for w in s.windows(2) {
            out.push(w.to_vec());
            out.push(vec![w[1], w[0]]);
        }
        for r in 0..s.len() {
            let mut t = s.clone();
            t.rotate_left(r);
            out.push(t[..3.min(t.len())].to_vec());
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn check(name: &str) -> usize {
    let scene = fixtures::generate(name).unwrap();
    let arr = scene.arrangement();
    let cutoff = Q::one();
    let mut total = 0;
    for seq in sequences(&scene) {
        let want = oracle(&scene, &arr, &seq, &cutoff);
        let got = engine_records(&scene, &arr, &seq, &cutoff);
        let names: Vec<&str> = seq.iter().map(|&c| scene.curves[c].name.as_str()).collect();
        assert_eq!(got, want, "{name} {names:?}");
        total += got.len();
    }
    total
}
