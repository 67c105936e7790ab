//! Faces of the complement of a family of curves, glued across paired edges.

use crate::arrangement::Arrangement;
use crate::geom::{self, det, Pt};
use crate::rat::Q;
use crate::surface::FlatSurface;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug)]
pub struct ChartFace {
    pub outer: Vec<Pt>,
    pub holes: Vec<Vec<Pt>>,
    pub area: Q,
    /// A point strictly inside the face.
    pub sample: Pt,
    pub face: usize,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub area: Q,
    /// Curve pieces on the boundary, counted with multiplicity.
    pub sides: usize,
    pub charts: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Faces {
    pub charts: Vec<ChartFace>,
    pub faces: Vec<Face>,
    /// face to the left of each directed curve piece
    left: HashMap<(Pt, Pt), usize>,
}

struct Dcel {
    pts: Vec<Pt>,
    ids: BTreeMap<Pt, usize>,
    /// half-edge `h` runs `from[h] → from[h ^ 1]`
    from: Vec<usize>,
    curve: Vec<bool>,
    lookup: HashMap<(usize, usize), usize>,
}

impl Dcel {
    fn vertex(&mut self, p: &Pt) -> usize {
        if let Some(&i) = self.ids.get(p) {
            return i;
        }
        self.pts.push(p.clone());
        self.ids.insert(p.clone(), self.pts.len() - 1);
        self.pts.len() - 1
    }

    fn edge(&mut self, a: &Pt, b: &Pt, curve: bool) {
        let (u, v) = (self.vertex(a), self.vertex(b));
        if u == v || self.lookup.contains_key(&(u, v)) {
            return;
        }
        let h = self.from.len();
        self.from.extend([u, v]);
        self.curve.extend([curve, curve]);
        self.lookup.insert((u, v), h);
        self.lookup.insert((v, u), h + 1);
    }

    fn to(&self, h: usize) -> usize {
        self.from[h ^ 1]
    }

    fn dir(&self, h: usize) -> Pt {
        self.pts[self.to(h)].sub(&self.pts[self.from[h]])
    }
}

fn angle_cmp(a: &Pt, b: &Pt) -> Ordering {
    let half = |d: &Pt| u8::from(!(d.y.is_positive() || (d.y.is_zero() && d.x.is_positive())));
    half(a).cmp(&half(b)).then_with(|| {
        let s = det(a, b);
        if s.is_positive() {
            Ordering::Less
        } else if s.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let n = parent[y];
        parent[y] = r;
        y = n;
    }
    r
}

impl Faces {
    /// Faces cut out by the curves `ids` of the arrangement (which must be transverse).
    pub fn new(surface: &FlatSurface, arr: &Arrangement, ids: &[usize]) -> Faces {
        let mut g = Dcel { pts: vec![], ids: BTreeMap::new(), from: vec![], curve: vec![], lookup: HashMap::new() };
        let member = |c: usize| ids.contains(&c);
        for &c in ids {
            let curve = &arr.curves[c];
            for k in 0..curve.len() {
                let s = curve.seg(k);
                let mut ts: Vec<&Q> = Vec::new();
                for p in &arr.points {
                    if !(member(p.ci) && member(p.cj)) {
                        continue;
                    }
                    if p.ci == c && p.si == k {
                        ts.push(&p.ti);
                    }
                    if p.cj == c && p.sj == k {
                        ts.push(&p.tj);
                    }
                }
                ts.sort();
                let mut chain = vec![s.a.clone()];
                chain.extend(ts.into_iter().map(|t| s.at(t)));
                chain.push(s.b.clone());
                for w in chain.windows(2) {
                    g.edge(&w[0], &w[1], true);
                }
            }
        }
        let n = surface.n_edges();
        let mut on_edge: Vec<Vec<Pt>> = vec![Vec::new(); n];
        for &c in ids {
            for s in arr.curves[c].segs() {
                for p in [&s.a, &s.b] {
                    if let Some(e) = surface.edge_of(p) {
                        on_edge[e].push(p.clone());
                    }
                }
            }
        }
        let mut pieces: Vec<Vec<(Pt, Pt)>> = Vec::with_capacity(n);
        for (e, mut pts) in on_edge.into_iter().enumerate() {
            let (a, b) = surface.edge(e);
            pts.push(a.clone());
            pts.push(b.clone());
            pts.sort_by_key(|p| geom::param_on(p, a, b));
            pts.dedup();
            let ps: Vec<(Pt, Pt)> = pts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
            for (u, v) in &ps {
                g.edge(u, v, false);
            }
            pieces.push(ps);
        }

        let nv = g.pts.len();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..g.from.len() {
            out[g.from[h]].push(h);
        }
        for o in out.iter_mut() {
            o.sort_by(|&x, &y| angle_cmp(&g.dir(x), &g.dir(y)));
        }
        let mut pos = vec![0usize; g.from.len()];
        for o in &out {
            for (i, &h) in o.iter().enumerate() {
                pos[h] = i;
            }
        }
        let next = |h: usize| {
            let t = h ^ 1;
            let o = &out[g.to(h)];
            o[(pos[t] + o.len() - 1) % o.len()]
        };

        let mut cycle_of = vec![usize::MAX; g.from.len()];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for h0 in 0..g.from.len() {
            if cycle_of[h0] != usize::MAX {
                continue;
            }
            let mut cyc = vec![];
            let mut h = h0;
            while cycle_of[h] == usize::MAX {
                cycle_of[h] = cycles.len();
                cyc.push(h);
                h = next(h);
            }
            cycles.push(cyc);
        }
        let polys: Vec<Vec<Pt>> =
            cycles.iter().map(|c| c.iter().map(|&h| g.pts[g.from[h]].clone()).collect()).collect();
        let areas: Vec<Q> = polys.iter().map(|p| geom::shoelace(p)).collect();

        let mut comp: Vec<usize> = (0..nv).collect();
        for h in (0..g.from.len()).step_by(2) {
            let (a, b) = (find(&mut comp, g.from[h]), find(&mut comp, g.to(h)));
            comp[a] = b;
        }
        let outer_area = -surface.area().clone();
        let mut chart_of_cycle = vec![usize::MAX; cycles.len()];
        let mut charts: Vec<ChartFace> = Vec::new();
        for (ci, a) in areas.iter().enumerate() {
            if a.is_positive() {
                chart_of_cycle[ci] = charts.len();
                charts.push(ChartFace {
                    outer: polys[ci].clone(),
                    holes: vec![],
                    area: a.clone(),
                    sample: Pt::origin(),
                    face: 0,
                });
            }
        }
        for (ci, a) in areas.iter().enumerate() {
            if a.is_positive() || *a == outer_area {
                continue;
            }
            let x = &polys[ci][0];
            let cx = find(&mut comp, g.from[cycles[ci][0]]);
            let mut best: Option<usize> = None;
            for (cj, b) in areas.iter().enumerate() {
                if !b.is_positive() || find(&mut comp, g.from[cycles[cj][0]]) == cx {
                    continue;
                }
                if geom::locate(x, &polys[cj]) == Some(true) && best.map_or(true, |k| *b < areas[k]) {
                    best = Some(cj);
                }
            }
            if let Some(cj) = best {
                let f = chart_of_cycle[cj];
                chart_of_cycle[ci] = f;
                charts[f].holes.push(polys[ci].clone());
                charts[f].area += a;
            }
        }

        let mut sides = vec![0usize; charts.len()];
        for (ci, cyc) in cycles.iter().enumerate() {
            let f = chart_of_cycle[ci];
            if f != usize::MAX {
                sides[f] += cyc.iter().filter(|&&h| g.curve[h]).count();
            }
        }

        let mut parent: Vec<usize> = (0..charts.len()).collect();
        for (e, ps) in pieces.iter().enumerate() {
            let Some(link) = surface.link(e) else { continue };
            if link.partner < e {
                continue;
            }
            for (u, v) in ps {
                let h = g.lookup[&(g.ids[u], g.ids[v])];
                let (u2, v2) = (u.add(&link.shift), v.add(&link.shift));
                let h2 = g.lookup[&(g.ids[&v2], g.ids[&u2])];
                let (a, b) = (chart_of_cycle[cycle_of[h]], chart_of_cycle[cycle_of[h2]]);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let mut face_ix: BTreeMap<usize, usize> = BTreeMap::new();
        let mut faces: Vec<Face> = Vec::new();
        for f in 0..charts.len() {
            let r = find(&mut parent, f);
            let k = *face_ix.entry(r).or_insert_with(|| {
                faces.push(Face { area: Q::zero(), sides: 0, charts: vec![] });
                faces.len() - 1
            });
            charts[f].face = k;
            faces[k].area += &charts[f].area;
            faces[k].sides += sides[f];
            faces[k].charts.push(f);
        }

        for (ci, cyc) in cycles.iter().enumerate() {
            if !areas[ci].is_positive() {
                continue;
            }
            let h = cyc[0];
            let (a, b) = (&g.pts[g.from[h]], &g.pts[g.to(h)]);
            let m = a.mid(b);
            let nrm = b.sub(a).perp();
            let mut best: Option<Q> = None;
            for e in (0..g.from.len()).step_by(2) {
                let (p, q) = (&g.pts[g.from[e]], &g.pts[g.to(e)]);
                let d = q.sub(p);
                let den = det(&nrm, &d);
                if den.is_zero() {
                    continue;
                }
                let w = p.sub(&m);
                let s = det(&w, &d) / &den;
                let r = det(&w, &nrm) / &den;
                if s.is_positive() && !r.is_negative() && r <= Q::from_integer(1.into()) && best.as_ref().map_or(true, |b| s < *b) {
                    best = Some(s);
                }
            }
            let s = best.expect("bounded face");
            charts[chart_of_cycle[ci]].sample = m.add(&nrm.scale(&(s / Q::from_integer(2.into()))));
        }
        let mut left = HashMap::new();
        for h in 0..g.from.len() {
            let cf = chart_of_cycle[cycle_of[h]];
            if g.curve[h] && cf != usize::MAX {
                left.insert((g.pts[g.from[h]].clone(), g.pts[g.to(h)].clone()), charts[cf].face);
            }
        }
        Faces { charts, faces, left }
    }

    /// The face to the left of the curve piece `a → b`.
    pub fn left_of(&self, a: &Pt, b: &Pt) -> Option<usize> {
        self.left.get(&(a.clone(), b.clone())).copied()
    }

    /// Largest ratio of boundary curve pieces to area over all faces.
    pub fn density(&self) -> Q {
        self.faces
            .iter()
            .filter(|f| f.sides > 0)
            .map(|f| Q::from_integer(f.sides.into()) / &f.area)
            .max()
            .unwrap_or_else(Q::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::PLCurve;
    use crate::geom::pq;
    use crate::rat::{q, qi};

    #[test]
    fn torus_grid_faces() {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = PLCurve::from_runs(&t, "V", &[vec![pq((1, 4), (0, 1)), pq((1, 4), (1, 1))]], 0).unwrap();
        let h = PLCurve::from_runs(&t, "H", &[vec![pq((0, 1), (1, 4)), pq((1, 1), (1, 4))]], 0).unwrap();
        let arr = Arrangement::new(&t, vec![v, h]);
        let f = Faces::new(&t, &arr, &[0, 1]);
        assert_eq!(f.faces.len(), 1);
        assert_eq!(f.faces[0].area, qi(1));
        assert_eq!(f.faces[0].sides, 8);
        assert_eq!(f.charts.len(), 4);
        let f1 = Faces::new(&t, &arr, &[0]);
        assert_eq!(f1.faces.len(), 1);
        assert_eq!(f1.faces[0].sides, 2);
    }

    #[test]
    fn pushoff_faces() {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = PLCurve::from_runs(&t, "V", &[vec![pq((1, 4), (0, 1)), pq((1, 4), (1, 1))]], 0).unwrap();
        let w = PLCurve::from_runs(&t, "W", &[vec![pq((3, 8), (0, 1)), pq((1, 8), (1, 2)), pq((3, 8), (1, 1))]], 0)
            .unwrap();
        let arr = Arrangement::new(&t, vec![v, w]);
        let f = Faces::new(&t, &arr, &[0, 1]);
        let mut areas: Vec<Q> = f.faces.iter().map(|x| x.area.clone()).collect();
        areas.sort();
        assert_eq!(areas, vec![q(1, 32), q(1, 32), q(15, 16)]);
        assert_eq!(f.density(), q(128, 1));
    }

    #[test]
    fn inner_loop_is_a_hole() {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let sq = PLCurve::from_runs(
            &t,
            "S",
            &[vec![pq((1, 4), (1, 4)), pq((3, 4), (1, 4)), pq((3, 4), (3, 4)), pq((1, 4), (3, 4)), pq((1, 4), (1, 4))]],
            0,
        )
        .unwrap();
        let arr = Arrangement::new(&t, vec![sq]);
        let f = Faces::new(&t, &arr, &[0]);
        let mut areas: Vec<Q> = f.faces.iter().map(|x| x.area.clone()).collect();
        areas.sort();
        assert_eq!(areas, vec![q(1, 4), q(3, 4)]);
        let outer = f.charts.iter().find(|c| !c.holes.is_empty()).unwrap();
        assert_eq!(outer.area, q(3, 4));
    }
}
