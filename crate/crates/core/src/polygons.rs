//! Immersed polygons with convex corners, found by tracing boundary lifts in the cover.

use crate::arrangement::Arrangement;
use crate::curve::rotation_of;
use crate::deck::{Tile, Undo};
use crate::error::{Error, Result};
use crate::faces::Faces;
use crate::geom::{self, det, dot, Hit, Pt};
use crate::rat::{self, Q};
use crate::surface::FlatSurface;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{HashMap, HashSet};

/// A curve of the arrangement, possibly with reversed orientation (`γ[1]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj {
    pub curve: usize,
    pub shifted: bool,
}

impl Obj {
    pub fn new(curve: usize) -> Obj {
        Obj { curve, shifted: false }
    }

    pub fn shift(self) -> Obj {
        Obj { curve: self.curve, shifted: !self.shifted }
    }

    fn sign(self) -> i64 {
        if self.shifted {
            -1
        } else {
            1
        }
    }
}

/// Degree of an intersection point as a morphism `a → b`.
pub fn degree(arr: &Arrangement, point: usize, a: Obj, b: Obj) -> Result<u8> {
    let d = arr.degree_of(point, a.curve, b.curve)?;
    Ok(if a.shifted != b.shifted { 1 - d } else { d })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub chart: (Pt, Pt),
    pub dev: (Pt, Pt),
    pub tile: Tile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    /// Position in the sequence.
    pub obj: usize,
    /// Whether the side runs along the object's orientation.
    pub along: bool,
    pub pieces: usize,
    pub marks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImmersedPolygon {
    pub seq: Vec<Obj>,
    pub output: usize,
    /// `inputs[i]` is the corner `p_{i,i+1}` between objects `i` and `i + 1`.
    pub inputs: Vec<usize>,
    pub area: Q,
    pub sign: i8,
    pub sides: Vec<Side>,
    pub boundary: Vec<Piece>,
    pub key: Vec<(usize, Tile)>,
}

impl ImmersedPolygon {
    /// Corners with the output first, then `p_{k−1,k}, …, p_{0,1}`.
    pub fn corners(&self) -> Vec<usize> {
        let mut c = vec![self.output];
        c.extend(self.inputs.iter().rev());
        c
    }

    /// Developed boundary vertices, one per piece start.
    pub fn developed(&self) -> Vec<Pt> {
        self.boundary.iter().map(|p| p.dev.0.clone()).collect()
    }

    /// Multiplicity of the polygon over each face.
    pub fn domain(&self, surface: &FlatSurface, faces: &Faces) -> Vec<i64> {
        if surface.abelian_deck() {
            let segs: Vec<(Pt, Pt)> = self.boundary.iter().map(|p| p.dev.clone()).collect();
            let (lo, hi) = bbox(&segs);
            let gens: Vec<Pt> = surface.pairings().iter().map(|p| p.shift.clone()).collect();
            faces
                .faces
                .iter()
                .map(|f| {
                    let s = &faces.charts[f.charts[0]].sample;
                    lattice_points(s, &gens, &lo, &hi)
                        .iter()
                        .map(|p| ray_winding(p, &Pt::new(Q::one(), Q::zero()), &segs, None, None))
                        .sum()
                })
                .collect()
        } else {
            let mut groups: HashMap<&Tile, Vec<(Pt, Pt)>> = HashMap::new();
            for p in &self.boundary {
                groups.entry(&p.tile).or_default().push(p.chart.clone());
            }
            faces
                .faces
                .iter()
                .map(|f| {
                    let s = &faces.charts[f.charts[0]].sample;
                    groups
                        .values()
                        .map(|g| {
                            let v = visible_vertex(surface, s, None).expect("sample sees a vertex");
                            ray_winding(s, &v.sub(s), g, None, Some(&v))
                        })
                        .sum()
                })
                .collect()
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub polygons: Vec<ImmersedPolygon>,
    pub degree_violations: usize,
    pub walk_budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Point(usize),
    Joint(usize),
}

struct Station {
    kind: Kind,
    seg: usize,
    pt: Pt,
}

/// A curve cut at the intersection points relevant to one sequence.
struct Track {
    st: Vec<Station>,
    /// chart piece from station `s` to `s + 1`
    fwd: Vec<(Pt, Pt)>,
    /// deck generator picked up leaving station `s` forwards
    gen: Vec<Option<i32>>,
    shift: Vec<Option<Pt>>,
    marked: usize,
    at: HashMap<usize, usize>,
}

impl Track {
    fn new(surface: &FlatSurface, arr: &Arrangement, c: usize, members: &[usize]) -> Track {
        let curve = &arr.curves[c];
        let n = curve.len();
        let mut per_seg: Vec<Vec<(Q, usize)>> = vec![Vec::new(); n];
        for p in &arr.points {
            if !(members.contains(&p.ci) && members.contains(&p.cj)) {
                continue;
            }
            if p.ci == c {
                per_seg[p.si].push((p.ti.clone(), p.id));
            }
            if p.cj == c {
                per_seg[p.sj].push((p.tj.clone(), p.id));
            }
        }
        let mut st = Vec::new();
        for (k, mut v) in per_seg.into_iter().enumerate() {
            v.sort();
            for (t, id) in v {
                st.push(Station { kind: Kind::Point(id), seg: k, pt: curve.seg(k).at(&t) });
            }
            st.push(Station { kind: Kind::Joint(k), seg: k, pt: curve.seg(k).b.clone() });
        }
        let m = st.len();
        let mut fwd = Vec::with_capacity(m);
        let mut gen = Vec::with_capacity(m);
        let mut shift = Vec::with_capacity(m);
        let mut at = HashMap::new();
        let mut marked = 0;
        for s in 0..m {
            let nx = &st[(s + 1) % m];
            let a = match st[s].kind {
                Kind::Joint(_) => curve.seg(nx.seg).a.clone(),
                Kind::Point(_) => st[s].pt.clone(),
            };
            fwd.push((a, nx.pt.clone()));
            let link = match st[s].kind {
                Kind::Joint(k) => curve.jump(k).and_then(|e| surface.link(e)),
                Kind::Point(id) => {
                    at.insert(id, s);
                    None
                }
            };
            gen.push(link.map(|l| l.gen));
            shift.push(link.map(|l| l.shift.clone()));
            if st[s].kind == Kind::Joint((curve.marked() + n - 1) % n) {
                marked = s;
            }
        }
        Track { st, fwd, gen, shift, marked, at }
    }

    fn len(&self) -> usize {
        self.st.len()
    }

    fn dir(&self, s: usize, arr: &Arrangement, c: usize) -> Pt {
        arr.curves[c].seg(self.st[s].seg).dir()
    }
}

#[derive(Clone, Copy)]
struct Step {
    pos: usize,
    from: usize,
    to: usize,
    fwd: bool,
}

/// Running lower bound on the area of any polygon whose boundary contains the walked pieces:
/// a face with `sides` boundary pieces met `c` times is covered at least `⌈c / sides⌉` times.
struct Cover {
    area: Vec<Q>,
    sides: Vec<usize>,
    count: Vec<usize>,
    lower: Q,
}

impl Cover {
    fn push(&mut self, f: usize) {
        if self.count[f] % self.sides[f] == 0 {
            self.lower += &self.area[f];
        }
        self.count[f] += 1;
    }

    fn pop(&mut self, f: usize) {
        self.count[f] -= 1;
        if self.count[f] % self.sides[f] == 0 {
            self.lower -= &self.area[f];
        }
    }
}

struct Search<'a> {
    arr: &'a Arrangement,
    cover: Cover,
    /// per track: faces left of the forward and backward piece leaving each station
    lefts: Vec<Vec<(usize, usize)>>,
    cutoff: &'a Q,
    seq: &'a [Obj],
    tracks: &'a [Track],
    k: usize,
    budget: usize,
    output: usize,
    start_dir: i8,
    tile: Tile,
    steps: usize,
    marks: Vec<usize>,
    dirs: Vec<i8>,
    path: Vec<Step>,
    corners: Vec<(usize, Tile)>,
    found: Vec<(Vec<Step>, Vec<(usize, Tile)>, Vec<usize>, Vec<i8>)>,
}

fn tile_size(t: &Tile) -> usize {
    match t {
        Tile::Abelian(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
        Tile::Free(w) => w.len(),
    }
}

impl<'a> Search<'a> {
    fn walk(&mut self, pos: usize, s0: usize, d: i8) {
        let m = self.tracks[pos].len();
        let mut s = s0;
        let mut undos: Vec<Option<Undo>> = Vec::new();
        let saved_marks = self.marks[pos];
        self.dirs[pos] = d;
        while self.steps < self.budget && tile_size(&self.tile) <= self.budget - self.steps {
            let t = &self.tracks[pos];
            let (next, undo) = if d > 0 {
                let u = t.gen[s].map(|g| self.tile.apply(g));
                ((s + 1) % m, u)
            } else {
                let p = (s + m - 1) % m;
                let u = t.gen[p].map(|g| self.tile.apply(-g));
                (p, u)
            };
            undos.push(undo);
            let f = if d > 0 { self.lefts[pos][s].0 } else { self.lefts[pos][next].1 };
            self.cover.push(f);
            self.path.push(Step { pos, from: s, to: next, fwd: d > 0 });
            self.steps += 1;
            s = next;
            if self.cover.lower >= *self.cutoff {
                break;
            }
            if s == self.tracks[pos].marked {
                self.marks[pos] += 1;
            }
            let Kind::Point(p) = self.tracks[pos].st[s].kind else { continue };
            let c = self.seq[pos].curve;
            if pos < self.k {
                let c2 = self.seq[pos + 1].curve;
                if let Some(&s2) = self.tracks[pos + 1].at.get(&p) {
                    if self.arr.points[p].other(c) == Some(c2) {
                        let a = self.tracks[pos].dir(s, self.arr, c);
                        let b = self.tracks[pos + 1].dir(s2, self.arr, c2);
                        let d2 = rat::sign(&det(&a, &b)) as i8 * d;
                        self.corners.push((p, self.tile.clone()));
                        if pos + 1 == self.k {
                            self.close(s2, d2);
                        } else {
                            self.walk(pos + 1, s2, d2);
                        }
                        self.corners.pop();
                    }
                }
            }
        }
        for u in undos.into_iter().rev() {
            if let Some(u) = u {
                self.tile.undo(u);
            }
            let st = self.path.pop().unwrap();
            let f = if st.fwd { self.lefts[pos][st.from].0 } else { self.lefts[pos][st.to].1 };
            self.cover.pop(f);
            self.steps -= 1;
        }
        self.marks[pos] = saved_marks;
    }

    /// Last side: the output is reached after `t₀ + j·m` steps, so only those tiles are tested.
    fn close(&mut self, s0: usize, d: i8) {
        let pos = self.k;
        let t = &self.tracks[pos];
        let m = t.len();
        let Some(&sx) = t.at.get(&self.output) else { return };
        let c = self.seq[pos].curve;
        let a = t.dir(sx, self.arr, c).scale(&rat::qi(i64::from(d)));
        let s_out = self.tracks[0].at[&self.output];
        let b = self.tracks[0]
            .dir(s_out, self.arr, self.seq[0].curve)
            .scale(&rat::qi(i64::from(self.start_dir)));
        if !det(&a, &b).is_positive() {
            return;
        }
        let lefts = &self.lefts[pos];
        let step = |s: usize| -> (usize, Option<i32>, usize) {
            if d > 0 {
                ((s + 1) % m, t.gen[s], lefts[s].0)
            } else {
                let p = (s + m - 1) % m;
                (p, t.gen[p].map(|g| -g), lefts[p].1)
            }
        };
        let mut first = Vec::new();
        let mut first_faces = Vec::new();
        let mut s = s0;
        let mut n = 0;
        loop {
            let (nx, g, f) = step(s);
            first.extend(g);
            first_faces.push(f);
            s = nx;
            n += 1;
            if s == sx {
                break;
            }
        }
        let mut lap = Vec::new();
        let mut lap_faces = Vec::new();
        for _ in 0..m {
            let (nx, g, f) = step(s);
            lap.extend(g);
            lap_faces.push(f);
            s = nx;
        }
        let remaining = self.budget - self.steps;
        let mut undos = Vec::new();
        let mut pushed = Vec::new();
        for &g in &first {
            undos.push(self.tile.apply(g));
        }
        for &f in &first_faces {
            self.cover.push(f);
            pushed.push(f);
        }
        while n <= remaining && self.cover.lower < *self.cutoff {
            if self.tile.is_identity() {
                self.record(s0, d, n);
            }
            for &g in &lap {
                undos.push(self.tile.apply(g));
            }
            for &f in &lap_faces {
                self.cover.push(f);
                pushed.push(f);
            }
            n += m;
        }
        for f in pushed.into_iter().rev() {
            self.cover.pop(f);
        }
        for u in undos.into_iter().rev() {
            self.tile.undo(u);
        }
    }

    fn record(&mut self, s0: usize, d: i8, n: usize) {
        let pos = self.k;
        let m = self.tracks[pos].len();
        let saved = (self.marks[pos], self.dirs[pos], self.path.len());
        self.dirs[pos] = d;
        let mut s = s0;
        for _ in 0..n {
            let next = if d > 0 { (s + 1) % m } else { (s + m - 1) % m };
            self.path.push(Step { pos, from: s, to: next, fwd: d > 0 });
            s = next;
            if s == self.tracks[pos].marked {
                self.marks[pos] += 1;
            }
        }
        self.found.push((self.path.clone(), self.corners.clone(), self.marks.clone(), self.dirs.clone()));
        self.path.truncate(saved.2);
        self.marks[pos] = saved.0;
        self.dirs[pos] = saved.1;
    }
}

/// All convex immersed polygons with boundary on `seq` (in order) and area below `cutoff`,
/// one search per output corner in `CF(seq[0], seq[k])`.
pub fn enumerate(
    surface: &FlatSurface,
    arr: &Arrangement,
    seq: &[Obj],
    cutoff: &Q,
    outputs: Option<&[usize]>,
) -> Result<Enumeration> {
    let k = seq.len().checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| Error::Input("need at least two objects".into()))?;
    let ids: Vec<usize> = seq.iter().map(|o| o.curve).collect();
    arr.check_transverse(&ids)?;
    let faces = Faces::new(surface, arr, &ids);
    let budget = (cutoff * faces.density()).floor().to_usize().unwrap_or(usize::MAX).min(1 << 20);
    let tracks: Vec<Track> = ids.iter().map(|&c| Track::new(surface, arr, c, &ids)).collect();
    let lefts: Vec<Vec<(usize, usize)>> = tracks
        .iter()
        .map(|t| {
            t.fwd
                .iter()
                .map(|(a, b)| {
                    let l = faces.left_of(a, b).expect("curve piece in the face structure");
                    let r = faces.left_of(b, a).expect("curve piece in the face structure");
                    (l, r)
                })
                .collect()
        })
        .collect();
    let outs: Vec<usize> = match outputs {
        Some(o) => o.to_vec(),
        None => arr.between(ids[0], ids[k]),
    };
    let mut result = Enumeration { walk_budget: budget, ..Default::default() };
    let mut seen: HashSet<Vec<(usize, Tile)>> = HashSet::new();
    for x in outs {
        if arr.points[x].other(ids[0]) != Some(ids[k]) {
            return Err(Error::Input(format!("point {x} is not a corner between the first and last objects")));
        }
        let s0 = tracks[0].at[&x];
        let mut search = Search {
            arr,
            cover: Cover {
                area: faces.faces.iter().map(|f| f.area.clone()).collect(),
                sides: faces.faces.iter().map(|f| f.sides.max(1)).collect(),
                count: vec![0; faces.faces.len()],
                lower: Q::zero(),
            },
            lefts: lefts.clone(),
            cutoff,
            seq,
            tracks: &tracks,
            k,
            budget,
            output: x,
            start_dir: 1,
            tile: Tile::identity(surface.abelian_deck(), surface.pairings().len()),
            steps: 0,
            marks: vec![0; k + 1],
            dirs: vec![0; k + 1],
            path: Vec::new(),
            corners: Vec::new(),
            found: Vec::new(),
        };
        for d in [1i8, -1] {
            search.start_dir = d;
            search.walk(0, s0, d);
        }

        for (path, corners, marks, dirs) in std::mem::take(&mut search.found) {
            let mut key = vec![(x, Tile::identity(surface.abelian_deck(), surface.pairings().len()))];
            key.extend(corners.iter().cloned());
            if seen.contains(&key) {
                continue;
            }
            if let Some(poly) = finish(surface, arr, seq, &search.tracks, x, &path, &corners, &marks, &dirs, cutoff)? {
                seen.insert(key.clone());
                if !degree_law(arr, &poly)? {
                    result.degree_violations += 1;
                }
                result.polygons.push(ImmersedPolygon { key, ..poly });
            }
        }
    }
    result.polygons.sort_by(|a, b| (&a.area, &a.output, &a.inputs).cmp(&(&b.area, &b.output, &b.inputs)));
    Ok(result)
}

fn degree_law(arr: &Arrangement, u: &ImmersedPolygon) -> Result<bool> {
    let k = u.seq.len() - 1;
    let mut sum = k as u32;
    for (i, &p) in u.inputs.iter().enumerate() {
        sum += u32::from(degree(arr, p, u.seq[i], u.seq[i + 1])?);
    }
    let out = degree(arr, u.output, u.seq[0], u.seq[k])?;
    Ok(sum % 2 == u32::from(out))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    surface: &FlatSurface,
    arr: &Arrangement,
    seq: &[Obj],
    tracks: &[Track],
    output: usize,
    path: &[Step],
    corners: &[(usize, Tile)],
    marks: &[usize],
    dirs: &[i8],
    cutoff: &Q,
) -> Result<Option<ImmersedPolygon>> {
    let k = seq.len() - 1;
    let mut tile = Tile::identity(surface.abelian_deck(), surface.pairings().len());
    let mut off = Pt::origin();
    let mut boundary = Vec::with_capacity(path.len());
    let mut counts = vec![0usize; k + 1];
    for st in path {
        let t = &tracks[st.pos];
        let m = t.len();
        let (chart, after) = if st.fwd {
            if let (Some(g), Some(sh)) = (t.gen[st.from], &t.shift[st.from]) {
                tile.apply(g);
                off = off.sub(sh);
            }
            (t.fwd[st.from].clone(), None)
        } else {
            let (a, b) = &t.fwd[st.to];
            debug_assert_eq!((st.to + 1) % m, st.from);
            ((b.clone(), a.clone()), t.gen[st.to].zip(t.shift[st.to].clone()))
        };
        let dev = (chart.0.add(&off), chart.1.add(&off));
        boundary.push(Piece { chart, dev, tile: tile.clone() });
        if let Some((g, sh)) = after {
            tile.apply(-g);
            off = off.add(&sh);
        }
        counts[st.pos] += 1;
    }
    let dirs_v: Vec<Pt> = boundary.iter().map(|p| p.dev.1.sub(&p.dev.0)).collect();
    if rotation_of(&dirs_v) != 1 {
        return Ok(None);
    }
    let mut area2 = Q::zero();
    for p in &boundary {
        area2 += det(&p.dev.0, &p.dev.1);
    }
    let area = rat::half(&area2);
    if !area.is_positive() || area >= *cutoff {
        return Ok(None);
    }
    if !immersed(surface, &boundary) {
        return Ok(None);
    }
    let sides: Vec<Side> = (0..=k)
        .map(|i| Side {
            obj: i,
            along: i64::from(dirs[i]) * seq[i].sign() > 0,
            pieces: counts[i],
            marks: marks[i],
        })
        .collect();
    let inputs: Vec<usize> = corners.iter().map(|c| c.0).collect();
    let mut sign: i8 = if sides.iter().map(|s| s.marks).sum::<usize>() % 2 == 0 { 1 } else { -1 };
    for (i, &p) in inputs.iter().enumerate() {
        if degree(arr, p, seq[i], seq[i + 1])? == 1 && !sides[i + 1].along {
            sign = -sign;
        }
    }
    if degree(arr, output, seq[0], seq[k])? == 1 && !sides[k].along {
        sign = -sign;
    }
    Ok(Some(ImmersedPolygon {
        seq: seq.to_vec(),
        output,
        inputs,
        area,
        sign,
        sides,
        boundary,
        key: Vec::new(),
    }))
}

/// Winding-number test: no region to the right of any boundary piece has negative winding.
pub fn immersed(surface: &FlatSurface, boundary: &[Piece]) -> bool {
    crate::winding::immersed(surface, boundary).unwrap_or_else(|| immersed_exact(surface, boundary))
}

/// Rational version of [`immersed`].
pub fn immersed_exact(surface: &FlatSurface, boundary: &[Piece]) -> bool {
    if surface.abelian_deck() {
        let segs: Vec<(Pt, Pt)> = boundary.iter().map(|p| p.dev.clone()).collect();
        let Some(subs) = split(&segs) else { return false };
        subs.iter().enumerate().all(|(i, (a, b))| {
            let d = b.sub(a);
            let r = Pt::new(d.y.clone(), -d.x.clone());
            ray_winding(&a.mid(b), &r, &subs, Some(i), None) >= 0
        })
    } else {
        let mut groups: HashMap<&Tile, Vec<(Pt, Pt)>> = HashMap::new();
        for p in boundary {
            groups.entry(&p.tile).or_default().push(p.chart.clone());
        }
        groups.values().all(|g| {
            let Some(subs) = split(g) else { return false };
            subs.iter().enumerate().all(|(i, (a, b))| {
                let m = a.mid(b);
                let d = b.sub(a);
                let Some(v) = visible_vertex(surface, &m, Some(&d)) else { return false };
                let w = ray_winding(&m, &v.sub(&m), &subs, Some(i), Some(&v));
                let right = det(&d, &v.sub(&m)).is_negative();
                (if right { w } else { w - 1 }) >= 0
            })
        })
    }
}

/// Cuts the pieces at their mutual crossings; `None` on collinear overlap.
fn split(segs: &[(Pt, Pt)]) -> Option<Vec<(Pt, Pt)>> {
    let n = segs.len();
    let mut cuts: Vec<Vec<Q>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            match geom::seg_hit(&segs[i].0, &segs[i].1, &segs[j].0, &segs[j].1) {
                Hit::None => {}
                Hit::Overlap => return None,
                Hit::Point { t, s } => {
                    if t.is_positive() && t < Q::one() {
                        cuts[i].push(t);
                    }
                    if s.is_positive() && s < Q::one() {
                        cuts[j].push(s);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for (i, (a, b)) in segs.iter().enumerate() {
        let mut c = std::mem::take(&mut cuts[i]);
        c.sort();
        c.dedup();
        let mut prev = a.clone();
        for t in c {
            let p = a.lerp(b, &t);
            out.push((prev, p.clone()));
            prev = p;
        }
        out.push((prev, b.clone()));
    }
    Some(out)
}

/// Signed count of pieces crossing the ray `m + u·r` (`u > 0`, and `u < 1` when `end` is given),
/// counterclockwise crossings positive.
fn ray_winding(m: &Pt, r: &Pt, segs: &[(Pt, Pt)], skip: Option<usize>, end: Option<&Pt>) -> i64 {
    let rr = dot(r, r);
    let mut w = 0;
    for (i, (a, b)) in segs.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let (wa, wb) = (a.sub(m), b.sub(m));
        let (v1, v2) = (det(r, &wa), det(r, &wb));
        let up = !v1.is_positive() && v2.is_positive();
        let down = !v2.is_positive() && v1.is_positive();
        if !(up || down) {
            continue;
        }
        let t = &v1 / (&v1 - &v2);
        let z = wa.add(&wb.sub(&wa).scale(&t));
        let u = dot(r, &z);
        if !u.is_positive() || (end.is_some() && u >= rr) {
            continue;
        }
        w += if up { 1 } else { -1 };
    }
    w
}

/// A polygon vertex seen from the interior point `m` along an open segment, skipping vertices
/// in direction `avoid`.
fn visible_vertex(surface: &FlatSurface, m: &Pt, avoid: Option<&Pt>) -> Option<Pt> {
    let n = surface.n_edges();
    surface.vertices().iter().find(|v| {
        let w = v.sub(m);
        if avoid.map_or(false, |d| det(d, &w).is_zero()) {
            return false;
        }
        (0..n).all(|e| {
            let (p, q) = surface.edge(e);
            match geom::seg_hit(m, v, p, q) {
                Hit::None => true,
                Hit::Point { t, .. } => t.is_one(),
                Hit::Overlap => false,
            }
        })
    }).cloned()
}

fn bbox(segs: &[(Pt, Pt)]) -> (Pt, Pt) {
    let mut lo = segs[0].0.clone();
    let mut hi = segs[0].0.clone();
    for (a, b) in segs {
        for p in [a, b] {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
    }
    (lo, hi)
}

/// Translates of `s` by the rectangular lattice spanned by `gens` inside the box.
fn lattice_points(s: &Pt, gens: &[Pt], lo: &Pt, hi: &Pt) -> Vec<Pt> {
    let sx = gens.iter().map(|g| g.x.abs()).find(|x| x.is_positive()).unwrap_or_else(Q::one);
    let sy = gens.iter().map(|g| g.y.abs()).find(|y| y.is_positive()).unwrap_or_else(Q::one);
    let i0 = rat::floor_i64(&((&lo.x - &s.x) / &sx));
    let i1 = rat::floor_i64(&((&hi.x - &s.x) / &sx)) + 1;
    let j0 = rat::floor_i64(&((&lo.y - &s.y) / &sy));
    let j1 = rat::floor_i64(&((&hi.y - &s.y) / &sy)) + 1;
    let mut out = Vec::new();
    for i in i0..=i1 {
        for j in j0..=j1 {
            out.push(Pt::new(&s.x + &sx * rat::qi(i), &s.y + &sy * rat::qi(j)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::PLCurve;
    use crate::geom::pq;
    use crate::rat::{q, qi};

    fn torus_pair(w: Vec<Pt>) -> (FlatSurface, Arrangement) {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = PLCurve::from_runs(&t, "V", &[vec![pq((1, 4), (0, 1)), pq((1, 4), (1, 1))]], 0).unwrap();
        let w = PLCurve::from_runs(&t, "W", &[w], 0).unwrap();
        let arr = Arrangement::new(&t, vec![v, w]);
        (t, arr)
    }

    #[test]
    fn equal_zigzag_bigons_cancel() {
        let (t, arr) = torus_pair(vec![pq((3, 8), (0, 1)), pq((1, 8), (1, 2)), pq((3, 8), (1, 1))]);
        let e = enumerate(&t, &arr, &[Obj::new(0), Obj::new(1)], &qi(1), None).unwrap();
        assert_eq!(e.degree_violations, 0);
        let areas: Vec<Q> = e.polygons.iter().map(|u| u.area.clone()).collect();
        assert_eq!(areas, vec![q(1, 32), q(1, 32)]);
        let total: i64 = e.polygons.iter().map(|u| i64::from(u.sign)).sum();
        assert_eq!(total, 0);
        for u in &e.polygons {
            let faces = Faces::new(&t, &arr, &[0, 1]);
            let dom = u.domain(&t, &faces);
            let w: Q = dom.iter().zip(&faces.faces).map(|(m, f)| rat::qi(*m) * &f.area).sum();
            assert_eq!(w, u.area);
        }
    }

    #[test]
    fn unequal_zigzag_areas() {
        let (t, arr) = torus_pair(vec![
            pq((7, 24), (0, 1)),
            pq((1, 8), (3, 8)),
            pq((83, 240), (3, 8)),
            pq((7, 24), (1, 1)),
        ]);
        let e = enumerate(&t, &arr, &[Obj::new(0), Obj::new(1)], &qi(1), None).unwrap();
        let areas: Vec<Q> = e.polygons.iter().map(|u| u.area.clone()).collect();
        assert_eq!(areas, vec![q(9, 512), q(23, 512)]);
        assert_eq!(e.polygons[0].sign, -e.polygons[1].sign);
    }

    #[test]
    fn v_h_has_no_bigons() {
        let (t, arr) = torus_pair(vec![pq((0, 1), (1, 4)), pq((1, 1), (1, 4))]);
        let e = enumerate(&t, &arr, &[Obj::new(0), Obj::new(1)], &qi(1), None).unwrap();
        assert!(e.polygons.is_empty());
    }
}
