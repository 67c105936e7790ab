//! Flat surfaces presented as one rectilinear polygon with translation edge pairings.

use crate::error::{Error, Result};
use crate::geom::{self, det, Hit, Pt};
use crate::rat::{self, Q};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Torus,
    /// Closed of genus at least two; one cone point.
    Higher,
    Annulus,
}

/// Edge `a` is carried onto edge `b` by `+shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePair {
    pub a: usize,
    pub b: usize,
    pub shift: Pt,
}

#[derive(Clone, Debug)]
pub struct FlatSurface {
    vertices: Vec<Pt>,
    pairings: Vec<EdgePair>,
    /// Per edge: (pairing index, partner edge, translation to partner, generator exponent).
    links: Vec<Option<Link>>,
    area: Q,
    chi: i64,
    genus: u32,
    kind: SurfaceKind,
    classes: Vec<Vec<usize>>,
    /// Quarter turns per class.
    angles: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Link {
    pub pairing: usize,
    pub partner: usize,
    pub shift: Pt,
    /// `±(pairing + 1)`: the deck generator picked up when leaving through this edge.
    pub gen: i32,
}

impl FlatSurface {
    pub fn torus(side_x: Q, side_y: Q) -> Result<Self> {
        if !side_x.is_positive() || !side_y.is_positive() {
            return Err(Error::Surface("torus sides must be positive".into()));
        }
        let z = Q::zero();
        let v = vec![
            Pt::new(z.clone(), z.clone()),
            Pt::new(side_x.clone(), z.clone()),
            Pt::new(side_x.clone(), side_y.clone()),
            Pt::new(z.clone(), side_y),
        ];
        // right → left first so that [V] = (0,1) and [H] = (1,0)
        Self::rectilinear(v, &[(1, 3), (2, 0)])
    }

    /// The genus-two L-shaped surface on `[0,2]×[0,1] ∪ [0,1]×[1,2]`.
    pub fn l_surface() -> Self {
        let v = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 1)]
            .iter()
            .map(|&(x, y)| geom::pi(x, y))
            .collect();
        Self::rectilinear(v, &[(2, 7), (3, 1), (5, 0), (4, 6)]).expect("L surface")
    }

    /// Unit square with left and right sides glued.
    pub fn annulus() -> Self {
        let v = [(0, 0), (1, 0), (1, 1), (0, 1)].iter().map(|&(x, y)| geom::pi(x, y)).collect();
        Self::rectilinear(v, &[(1, 3)]).expect("annulus")
    }

    /// Edge `i` runs from `vertices[i]` to `vertices[i+1]`; each pair `(i, j)` glues edge `i`
    /// onto edge `j` by a translation.
    pub fn rectilinear(vertices: Vec<Pt>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        if n < 4 {
            return Err(Error::Surface("polygon needs at least four vertices".into()));
        }
        let vt = |i: usize| &vertices[i % n];
        for i in 0..n {
            let d = vt(i + 1).sub(vt(i));
            if d.is_zero() {
                return Err(Error::Surface(format!("repeated vertex {}", vt(i))));
            }
            if !d.x.is_zero() && !d.y.is_zero() {
                return Err(Error::Surface(format!("edge {i} is not axis-parallel")));
            }
            let e = vt(i + 2).sub(vt(i + 1));
            if geom::turn_sign(&d, &e).is_none() {
                return Err(Error::Surface(format!("polygon folds back at vertex {}", i + 1)));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                match geom::seg_hit(vt(i), vt(i + 1), vt(j), vt(j + 1)) {
                    Hit::None => {}
                    Hit::Point { .. } if adjacent => {}
                    _ => return Err(Error::Surface(format!("edges {i} and {j} meet: polygon not simple"))),
                }
            }
        }
        let area = geom::shoelace(&vertices);
        if !area.is_positive() {
            return Err(Error::Surface("vertices must run counterclockwise".into()));
        }
        let mut links: Vec<Option<Link>> = vec![None; n];
        let mut pairings = Vec::new();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if i >= n || j >= n || i == j {
                return Err(Error::Surface(format!("bad pairing ({i}, {j})")));
            }
            if links[i].is_some() || links[j].is_some() {
                return Err(Error::Surface(format!("edge paired twice in ({i}, {j})")));
            }
            let shift = vt(j).sub(vt(i + 1));
            if vt(i).add(&shift) != *vt(j + 1) {
                return Err(Error::Surface(format!("pairing ({i}, {j}) is not a translation")));
            }
            if shift.is_zero() {
                return Err(Error::Surface(format!("pairing ({i}, {j}) has zero translation")));
            }
            let g = k as i32 + 1;
            links[i] = Some(Link { pairing: k, partner: j, shift: shift.clone(), gen: g });
            links[j] = Some(Link { pairing: k, partner: i, shift: shift.neg(), gen: -g });
            pairings.push(EdgePair { a: i, b: j, shift });
        }
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut c = x;
            while uf[c] != r {
                let nx = uf[c];
                uf[c] = r;
                c = nx;
            }
            r
        }
        for p in &pairings {
            for (u, v) in [(p.a, (p.b + 1) % n), ((p.a + 1) % n, p.b)] {
                let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
                uf[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_idx = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut uf, i);
            if root_idx[r] == usize::MAX {
                root_idx[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[root_idx[r]].push(i);
        }
        let angles: Vec<u32> = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&i| {
                        let din = vt(i).sub(vt(i + n - 1));
                        let dout = vt(i + 1).sub(vt(i));
                        match rat::sign(&det(&din, &dout)) {
                            1 => 1,
                            0 => 2,
                            _ => 3,
                        }
                    })
                    .sum()
            })
            .collect();
        let unpaired = links.iter().filter(|l| l.is_none()).count();
        let edges = pairings.len() + unpaired;
        let chi = classes.len() as i64 - edges as i64 + 1;
        let (kind, genus) = if unpaired == 0 {
            if classes.len() != 1 {
                return Err(Error::Surface(format!(
                    "closed surface with {} vertex classes; exactly one is supported",
                    classes.len()
                )));
            }
            let g = (2 - chi) / 2;
            if g < 1 {
                return Err(Error::Surface("sphere is not supported".into()));
            }
            if angles[0] as i64 != 4 * (2 * g - 1) {
                return Err(Error::Surface("cone angle inconsistent with genus".into()));
            }
            (if g == 1 { SurfaceKind::Torus } else { SurfaceKind::Higher }, g as u32)
        } else {
            let ok = unpaired == 2 && pairings.len() == 1 && chi == 0 && n == 4;
            if !ok {
                return Err(Error::Surface(
                    "only the annulus (one pair of opposite sides glued) may have boundary".into(),
                ));
            }
            (SurfaceKind::Annulus, 0)
        };
        Ok(FlatSurface { vertices, pairings, links, area, chi, genus, kind, classes, angles })
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn n_edges(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge(&self, i: usize) -> (&Pt, &Pt) {
        let n = self.vertices.len();
        (&self.vertices[i % n], &self.vertices[(i + 1) % n])
    }

    pub fn pairings(&self) -> &[EdgePair] {
        &self.pairings
    }

    pub fn link(&self, edge: usize) -> Option<&Link> {
        self.links[edge].as_ref()
    }

    pub fn area(&self) -> &Q {
        &self.area
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn vertex_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Total angle of each vertex class, in quarter turns.
    pub fn class_angles(&self) -> &[u32] {
        &self.angles
    }

    /// Rank of the homology lattice used for classes.
    pub fn h1_rank(&self) -> usize {
        self.pairings.len()
    }

    /// Deck group is `ℤⁿ` on the torus and free on the pairings otherwise.
    pub fn abelian_deck(&self) -> bool {
        self.kind == SurfaceKind::Torus
    }

    /// Correction coefficient `κ = −Ω/χ` (zero when `χ = 0`).
    pub fn kappa(&self) -> Q {
        if self.chi == 0 {
            Q::zero()
        } else {
            -(&self.area / rat::qi(self.chi))
        }
    }

    pub fn is_vertex(&self, p: &Pt) -> bool {
        self.vertices.iter().any(|v| v == p)
    }

    /// Edge whose relative interior contains `p`.
    pub fn edge_of(&self, p: &Pt) -> Option<usize> {
        if self.is_vertex(p) {
            return None;
        }
        (0..self.n_edges()).find(|&i| {
            let (a, b) = self.edge(i);
            geom::on_segment(p, a, b)
        })
    }

    pub fn contains_closed(&self, p: &Pt) -> bool {
        geom::locate(p, &self.vertices) != Some(false)
    }

    pub fn contains_open(&self, p: &Pt) -> bool {
        geom::locate(p, &self.vertices) == Some(true)
    }

    /// Checks that the open segment `ab` lies in the open polygon.
    pub fn segment_interior(&self, a: &Pt, b: &Pt) -> Result<()> {
        if a == b {
            return Err(Error::Curve(format!("degenerate segment at {a}")));
        }
        for v in &self.vertices {
            if geom::on_segment(v, a, b) {
                return Err(Error::ConeContact(format!("{v}")));
            }
        }
        for i in 0..self.n_edges() {
            let (p, q) = self.edge(i);
            match geom::seg_hit(a, b, p, q) {
                Hit::Overlap => {
                    return Err(Error::Curve(format!("segment {a}–{b} runs along edge {i}")))
                }
                Hit::Point { t, .. } => {
                    if !t.is_zero() && t != rat::one() {
                        return Err(Error::Curve(format!("segment {a}–{b} leaves the polygon")));
                    }
                }
                Hit::None => {}
            }
        }
        if !self.contains_open(&a.mid(b)) {
            return Err(Error::Curve(format!("segment {a}–{b} lies outside the polygon")));
        }
        Ok(())
    }

    /// Moves from `start` along each displacement in turn, re-entering through paired edges.
    pub fn develop(&self, start: &Pt, moves: &[Pt]) -> Result<DevelopedPath> {
        if self.is_vertex(start) {
            return Err(Error::ConeContact(format!("{start}")));
        }
        if !self.contains_closed(start) {
            return Err(Error::Input(format!("start {start} outside the polygon")));
        }
        let mut p = start.clone();
        let mut shift = Pt::origin();
        let mut segs: Vec<DevSeg> = Vec::new();
        let mut crossings = Vec::new();
        for mv in moves {
            let mut rest = mv.clone();
            while !rest.is_zero() {
                if let Some(e) = self.edge_of(&p) {
                    let (a, b) = self.edge(e);
                    let s = rat::sign(&det(&b.sub(a), &rest));
                    if s < 0 {
                        let link = self
                            .link(e)
                            .ok_or_else(|| Error::Input(format!("path leaves through boundary edge {e}")))?;
                        p = p.add(&link.shift);
                        shift = shift.sub(&link.shift);
                        crossings.push(Crossing { edge: e, seg: segs.len(), at: p.sub(&link.shift) });
                    } else if s == 0 {
                        return Err(Error::Input(format!("move runs along edge {e}")));
                    }
                }
                let target = p.add(&rest);
                let mut best: Option<(Q, usize)> = None;
                for i in 0..self.n_edges() {
                    let (a, b) = self.edge(i);
                    match geom::seg_hit(&p, &target, a, b) {
                        Hit::Point { t, .. } if t.is_positive() => {
                            if best.as_ref().map_or(true, |(bt, _)| t < *bt) {
                                best = Some((t, i));
                            }
                        }
                        Hit::Overlap => return Err(Error::Input(format!("move runs along edge {i}"))),
                        _ => {}
                    }
                }
                let (t, _) = best.unwrap_or((rat::one() + rat::one(), 0));
                let t = if t > rat::one() { rat::one() } else { t };
                let end = p.lerp(&target, &t);
                if self.is_vertex(&end) {
                    return Err(Error::ConeContact(format!("{end}")));
                }
                self.segment_interior(&p, &end)?;
                segs.push(DevSeg { a: p.clone(), b: end.clone(), shift: shift.clone() });
                rest = rest.scale(&(rat::one() - &t));
                p = end;
            }
        }
        Ok(DevelopedPath { segs, crossings, end: p, shift })
    }

    /// Deck generator word read off by a small counterclockwise loop around the vertex class
    /// containing `vertices[0]`; `None` if the class touches the boundary.
    pub fn vertex_relator(&self) -> Option<Vec<i32>> {
        let n = self.n_edges();
        let mut word = Vec::new();
        let mut v = 0usize;
        for _ in 0..4 * n {
            let e_in = (v + n - 1) % n;
            let link = self.link(e_in)?;
            word.push(link.gen);
            v = link.partner;
            if v == 0 {
                return Some(word);
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevSeg {
    pub a: Pt,
    pub b: Pt,
    /// Cover translation: developed point = chart point + shift.
    pub shift: Pt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub edge: usize,
    /// Index of the first segment after the crossing.
    pub seg: usize,
    pub at: Pt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevelopedPath {
    pub segs: Vec<DevSeg>,
    pub crossings: Vec<Crossing>,
    pub end: Pt,
    pub shift: Pt,
}
