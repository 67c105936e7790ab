//! Closed piecewise-linear curves drawn in the polygon chart.

use crate::deck;
use crate::error::{Error, Result};
use crate::geom::{self, det, Hit, Pt};
use crate::rat::{self, Q};
use crate::surface::{FlatSurface, SurfaceKind};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seg {
    pub a: Pt,
    pub b: Pt,
}

impl Seg {
    pub fn dir(&self) -> Pt {
        self.b.sub(&self.a)
    }

    pub fn at(&self, t: &Q) -> Pt {
        self.a.lerp(&self.b, t)
    }
}

/// A closed curve: segment `k` is followed by segment `k + 1`, either meeting at a common
/// point or, when `jumps[k]` names an edge, re-entering through that edge's partner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLCurve {
    pub name: String,
    segs: Vec<Seg>,
    /// (exit edge, entry edge)
    jumps: Vec<Option<(usize, usize)>>,
    marked: usize,
    parity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCrossing {
    pub at: Pt,
    pub i: usize,
    pub ti: Q,
    pub j: usize,
    pub tj: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unobstructed,
    Obstructed(String),
    Inconclusive(String),
}

impl PLCurve {
    /// Builds a curve from polylines; consecutive runs (cyclically) are joined either at a
    /// shared point or by an edge crossing. `marked` indexes segment starts.
    pub fn from_runs(surface: &FlatSurface, name: &str, runs: &[Vec<Pt>], marked: usize) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::Curve(format!("{name}: no runs")));
        }
        let mut segs = Vec::new();
        let mut jumps = Vec::new();
        for (r, run) in runs.iter().enumerate() {
            if run.len() < 2 {
                return Err(Error::Curve(format!("{name}: run {r} needs two points")));
            }
            for w in run.windows(2) {
                segs.push(Seg { a: w[0].clone(), b: w[1].clone() });
                jumps.push(None);
            }
            let last = run.last().unwrap();
            let next_first = &runs[(r + 1) % runs.len()][0];
            let n = jumps.len();
            if last == next_first {
                if runs.len() == 1 {
                    continue;
                }
                return Err(Error::Curve(format!("{name}: runs {r} and {} touch without crossing", r + 1)));
            }
            let e = surface
                .edge_of(last)
                .ok_or_else(|| Error::Curve(format!("{name}: run {r} ends at {last}, not on an edge")))?;
            let link = surface
                .link(e)
                .ok_or_else(|| Error::Curve(format!("{name}: run {r} leaves through boundary edge {e}")))?;
            if last.add(&link.shift) != *next_first {
                return Err(Error::Curve(format!(
                    "{name}: run {} must start at {} to continue across edge {e}",
                    (r + 1) % runs.len(),
                    last.add(&link.shift)
                )));
            }
            jumps[n - 1] = Some((e, link.partner));
        }
        if marked >= segs.len() {
            return Err(Error::Curve(format!("{name}: marked point index {marked} out of range")));
        }
        Ok(PLCurve { name: name.to_string(), segs, jumps, marked, parity: false })
    }

    /// Chart pieces of a developed closed path starting at `start`.
    pub fn from_moves(surface: &FlatSurface, name: &str, start: &Pt, moves: &[Pt], marked: usize) -> Result<Self> {
        let dev = surface.develop(start, moves)?;
        let closes = dev.end == *start
            || surface.edge_of(&dev.end).and_then(|e| surface.link(e)).map_or(false, |l| dev.end.add(&l.shift) == *start);
        if !closes {
            return Err(Error::Curve(format!("{name}: developed path does not close in the chart")));
        }
        let mut runs: Vec<Vec<Pt>> = Vec::new();
        let mut cross = dev.crossings.iter().peekable();
        for (k, s) in dev.segs.iter().enumerate() {
            let new_run = runs.is_empty() || cross.peek().map_or(false, |c| c.seg == k);
            while cross.peek().map_or(false, |c| c.seg <= k) {
                cross.next();
            }
            if new_run {
                runs.push(vec![s.a.clone()]);
            }
            push_merged(runs.last_mut().unwrap(), s.b.clone());
        }
        let starts_on_edge = dev.crossings.first().map_or(false, |c| c.seg == 0) || surface.edge_of(start).is_some();
        if !starts_on_edge && runs.len() > 1 {
            let first = runs.remove(0);
            let last = runs.last_mut().unwrap();
            for p in first.into_iter().skip(1) {
                push_merged(last, p);
            }
        }
        if runs.len() == 1 && dev.crossings.is_empty() {
            let run = &mut runs[0];
            let m = run.len();
            if m > 3 && det(&run[1].sub(&run[0]), &run[m - 1].sub(&run[m - 2])).is_zero() {
                run.remove(0);
                run.pop();
                let p = run[0].clone();
                run.push(p);
            }
        }
        let c = PLCurve::from_runs(surface, name, &runs, 0)?;
        let m = marked % c.len();
        Ok(c.with_marked(m))
    }

    pub fn with_marked(mut self, marked: usize) -> Self {
        self.marked = marked % self.segs.len();
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn segs(&self) -> &[Seg] {
        &self.segs
    }

    pub fn seg(&self, k: usize) -> &Seg {
        &self.segs[k % self.segs.len()]
    }

    /// Edge crossed between segment `k` and `k + 1`.
    pub fn jump(&self, k: usize) -> Option<usize> {
        self.jumps[k % self.jumps.len()].map(|j| j.0)
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn parity(&self) -> bool {
        self.parity
    }

    pub fn marked_point(&self) -> &Pt {
        &self.segs[self.marked].a
    }

    /// Polylines split at edge crossings, starting at segment 0.
    pub fn runs(&self) -> Vec<Vec<Pt>> {
        let mut runs = vec![vec![self.segs[0].a.clone()]];
        for (k, s) in self.segs.iter().enumerate() {
            runs.last_mut().unwrap().push(s.b.clone());
            if self.jumps[k].is_some() && k + 1 < self.segs.len() {
                runs.push(vec![self.segs[k + 1].a.clone()]);
            }
        }
        runs
    }

    /// Reversed orientation (`γ[1]`), same marked point, parity toggled.
    pub fn shift(&self) -> PLCurve {
        let n = self.segs.len();
        let segs: Vec<Seg> = (0..n).rev().map(|k| Seg { a: self.segs[k].b.clone(), b: self.segs[k].a.clone() }).collect();
        // new joint m is old joint n-2-m, crossed the other way
        let jumps = (0..n).map(|m| self.jumps[(2 * n - 2 - m) % n].map(|(x, y)| (y, x))).collect();
        let marked = (n - self.marked) % n;
        PLCurve { name: self.name.clone(), segs, jumps, marked, parity: !self.parity }
    }

    /// Checks every structural invariant, reporting the first failure.
    pub fn validate(&self, surface: &FlatSurface) -> Result<()> {
        let n = self.segs.len();
        for (k, s) in self.segs.iter().enumerate() {
            surface.segment_interior(&s.a, &s.b).map_err(|e| match e {
                Error::ConeContact(p) => Error::ConeContact(format!("{p} (cone vertex contact, segment {k})")),
                other => other,
            })?;
        }
        for k in 0..n {
            let s = &self.segs[k];
            let t = &self.segs[(k + 1) % n];
            match self.jump(k) {
                None => {
                    if s.b != t.a {
                        return Err(Error::Curve(format!("segments {k} and {} do not meet", (k + 1) % n)));
                    }
                    if surface.edge_of(&s.b).is_some() {
                        return Err(Error::Curve(format!("joint {} touches an edge without crossing", s.b)));
                    }
                }
                Some(e) => {
                    if surface.edge_of(&s.b) != Some(e) {
                        return Err(Error::Curve(format!("segment {k} does not end on edge {e}")));
                    }
                    let link = surface.link(e).ok_or_else(|| Error::Curve(format!("edge {e} is boundary")))?;
                    if s.b.add(&link.shift) != t.a {
                        return Err(Error::Curve(format!("crossing of edge {e} does not match its pairing")));
                    }
                }
            }
            if geom::turn_sign(&s.dir(), &t.dir()).is_none() {
                return Err(Error::Curve(format!("backtracking at joint {k}")));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent_fwd = j == i + 1 && self.jumps[i].is_none();
                let adjacent_wrap = i == 0 && j == n - 1 && self.jumps[n - 1].is_none();
                let (si, sj) = (&self.segs[i], &self.segs[j]);
                match geom::seg_hit(&si.a, &si.b, &sj.a, &sj.b) {
                    Hit::None => {}
                    Hit::Overlap => return Err(Error::Curve(format!("segments {i} and {j} overlap"))),
                    Hit::Point { t, s } => {
                        let shared = (adjacent_fwd && t.is_one() && s.is_zero())
                            || (adjacent_wrap && t.is_zero() && s.is_one());
                        if shared {
                            continue;
                        }
                        let interior = |v: &Q| v.is_positive() && *v < Q::one();
                        if !(interior(&t) && interior(&s)) {
                            return Err(Error::Curve(format!(
                                "self-intersection at a segment endpoint ({})",
                                si.at(&t)
                            )));
                        }
                    }
                }
            }
        }
        for k in 0..n {
            if self.jumps[k].is_none() {
                continue;
            }
            let pts = [&self.segs[k].b, &self.segs[(k + 1) % n].a];
            for (m, s) in self.segs.iter().enumerate() {
                if m == k || m == (k + 1) % n {
                    continue;
                }
                if pts.iter().any(|p| geom::on_segment(p, &s.a, &s.b)) {
                    return Err(Error::Curve(format!("self-intersection on an edge at {}", pts[0])));
                }
            }
        }
        if self.marked >= n {
            return Err(Error::Curve("marked point out of range".into()));
        }
        Ok(())
    }

    /// Deck generators picked up along the loop from the start of segment 0.
    pub fn word(&self, surface: &FlatSurface) -> Vec<i32> {
        self.word_between(surface, 0, self.segs.len())
    }

    /// Generators of joints `from ≤ k < to` (indices taken cyclically).
    pub fn word_between(&self, surface: &FlatSurface, from: usize, to: usize) -> Vec<i32> {
        let n = self.segs.len();
        (from..to)
            .filter_map(|k| self.jump(k % n).and_then(|e| surface.link(e)).map(|l| l.gen))
            .collect()
    }

    pub fn homology_class(&self, surface: &FlatSurface) -> Vec<i64> {
        deck::abelian(&self.word(surface), surface.h1_rank())
    }

    /// A direction parallel to no segment.
    pub fn reference_direction(dirs: &[Pt]) -> Pt {
        let mut m = 2i64;
        loop {
            let r = Pt::new(Q::one(), rat::q(1, m));
            if dirs.iter().all(|d| !det(d, &r).is_zero()) {
                return r;
            }
            m += 1;
        }
    }

    /// Counterclockwise turns of the tangent (joints turn through the smaller angle).
    pub fn rotation(&self) -> i64 {
        let dirs: Vec<Pt> = self.segs.iter().map(Seg::dir).collect();
        rotation_of(&dirs)
    }

    /// `wd = −rotation`, so that counterclockwise disc boundaries have `wd = −1`.
    pub fn turning_number(&self) -> i64 {
        -self.rotation()
    }

    /// Čech-corrected `∫ x dy` plus `κ · rotation`.
    pub fn holonomy(&self, surface: &FlatSurface) -> Q {
        let mut h = Q::zero();
        for (k, s) in self.segs.iter().enumerate() {
            h += rat::half(&(&s.a.x + &s.b.x)) * (&s.b.y - &s.a.y);
            if let Some(link) = self.jump(k).and_then(|e| surface.link(e)) {
                h += crossing_term(&link.shift, &s.b);
            }
        }
        h + surface.kappa() * rat::qi(self.rotation())
    }

    pub fn self_crossings(&self) -> Vec<SelfCrossing> {
        let n = self.segs.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (si, sj) = (&self.segs[i], &self.segs[j]);
                if let Hit::Point { t, s } = geom::seg_hit(&si.a, &si.b, &sj.a, &sj.b) {
                    let inner = |v: &Q| v.is_positive() && *v < Q::one();
                    if inner(&t) && inner(&s) {
                        out.push(SelfCrossing { at: si.at(&t), i, ti: t, j, tj: s });
                    }
                }
            }
        }
        out
    }

    pub fn is_unobstructed(&self, surface: &FlatSurface, depth: Option<u32>) -> Verdict {
        let crossings = self.self_crossings();
        let depth = depth.unwrap_or(4 * (crossings.len() as u32 + surface.genus())).max(1) as i64;
        let w = deck::reduce(&self.word(surface));
        let abelian = surface.abelian_deck();
        let rank = surface.h1_rank();
        let trivial = if abelian { deck::abelian(&w, rank).iter().all(|&x| x == 0) } else { w.is_empty() };
        if trivial {
            return Verdict::Obstructed("null-homotopic: the lift closes up in the cover".into());
        }
        if surface.kind() == SurfaceKind::Higher && crossings.is_empty() {
            if let Some(r) = surface.vertex_relator() {
                if deck::conjugate(&w, &r) || deck::conjugate(&w, &deck::inverse(&r)) {
                    return Verdict::Obstructed("null-homotopic: bounds a disc about the cone point".into());
                }
            }
        }
        let n = self.segs.len();
        for c in &crossings {
            // loop A runs from the crossing on segment i to the crossing on segment j
            let a = deck::reduce(&self.word_between(surface, c.i, c.j));
            let full = deck::reduce(&self.word_between(surface, c.i, c.i + n));
            let hit = if abelian {
                let va = deck::abelian(&a, rank);
                let vf = deck::abelian(&full, rank);
                integer_multiple(&va, &vf)
            } else {
                (-depth..=depth).find(|&m| deck::power(&full, m) == a)
            };
            if let Some(m) = hit {
                let what = if m == 0 { "split loop develops closed (fish-tail)" } else { "lift meets its own translate" };
                return Verdict::Obstructed(format!("self-crossing at {}: {what}", c.at));
            }
        }
        if crossings.is_empty() || abelian || surface.kind() == SurfaceKind::Annulus {
            Verdict::Unobstructed
        } else {
            Verdict::Inconclusive(format!(
                "{} self-crossings; no obstruction within depth {depth}",
                crossings.len()
            ))
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "runs": self.runs().iter().map(|r| r.iter().map(pt_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "marked": self.marked,
        })
    }
}

fn push_merged(run: &mut Vec<Pt>, p: Pt) {
    let m = run.len();
    if m >= 2 {
        let d1 = run[m - 1].sub(&run[m - 2]);
        let d2 = p.sub(&run[m - 1]);
        if det(&d1, &d2).is_zero() && geom::dot(&d1, &d2).is_positive() {
            run.pop();
        }
    }
    run.push(p);
}

pub fn pt_json(p: &Pt) -> Value {
    json!([rat::to_json(&p.x), rat::to_json(&p.y)])
}

pub fn pt_from_json(v: &Value) -> std::result::Result<Pt, String> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| format!("expected point [x, y], got {v}"))?;
    Ok(Pt::new(rat::from_json(&a[0])?, rat::from_json(&a[1])?))
}

/// Čech term for leaving the chart at `p` with translation `shift` to the partner edge.
pub fn crossing_term(shift: &Pt, p: &Pt) -> Q {
    &shift.x * (&p.y + rat::half(&shift.y))
}

/// Rotation index of a closed cycle of directions.
pub fn rotation_of(dirs: &[Pt]) -> i64 {
    let r = PLCurve::reference_direction(dirs);
    let n = dirs.len();
    (0..n).map(|k| i64::from(geom::sweeps(&dirs[k], &dirs[(k + 1) % n], &r))).sum()
}

fn integer_multiple(a: &[i64], f: &[i64]) -> Option<i64> {
    if f.iter().all(|&x| x == 0) {
        return if a.iter().all(|&x| x == 0) { Some(0) } else { None };
    }
    let k = f.iter().position(|&x| x != 0).unwrap();
    if a[k] % f[k] != 0 {
        return None;
    }
    let m = a[k] / f[k];
    a.iter().zip(f).all(|(x, y)| *x == m * y).then_some(m)
}

/// Reports success or the first violated invariant.
pub fn validate_curve(surface: &FlatSurface, curve: &PLCurve) -> std::result::Result<(), String> {
    curve.validate(surface).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{pi, pq};
    use crate::rat::{q, qi};

    fn torus() -> FlatSurface {
        FlatSurface::torus(qi(1), qi(1)).unwrap()
    }

    fn vertical(s: &FlatSurface, x: Q) -> PLCurve {
        let run = vec![Pt::new(x.clone(), qi(0)), Pt::new(x, qi(1))];
        PLCurve::from_runs(s, "V", &[run], 0).unwrap()
    }

    #[test]
    fn vertical_circle_basics() {
        let t = torus();
        let v = vertical(&t, q(1, 4));
        assert!(v.validate(&t).is_ok());
        assert_eq!(v.homology_class(&t), vec![0, 1]);
        assert_eq!(v.turning_number(), 0);
        assert_eq!(v.holonomy(&t), q(1, 4));
        assert_eq!(v.is_unobstructed(&t, None), Verdict::Unobstructed);
        let w = v.shift();
        assert!(w.validate(&t).is_ok());
        assert_eq!(w.homology_class(&t), vec![0, -1]);
        assert_eq!(w.holonomy(&t), q(-1, 4));
        assert_eq!(w.shift(), v);
    }

    #[test]
    fn horizontal_holonomy() {
        let t = torus();
        let h = PLCurve::from_runs(&t, "H", &[vec![pq((0, 1), (1, 4)), pq((1, 1), (1, 4))]], 0).unwrap();
        assert_eq!(h.holonomy(&t), q(-1, 4));
        assert_eq!(h.homology_class(&t), vec![1, 0]);
    }

    #[test]
    fn square_loop() {
        let t = torus();
        let sq = vec![pq((1, 4), (1, 4)), pq((3, 4), (1, 4)), pq((3, 4), (3, 4)), pq((1, 4), (3, 4)), pq((1, 4), (1, 4))];
        let c = PLCurve::from_runs(&t, "S", &[sq], 0).unwrap();
        assert!(c.validate(&t).is_ok());
        assert_eq!(c.turning_number(), -1);
        assert_eq!(c.holonomy(&t), q(1, 4));
        assert!(matches!(c.is_unobstructed(&t, None), Verdict::Obstructed(_)));
    }

    #[test]
    fn cone_contact_and_backtracking() {
        let l = FlatSurface::l_surface();
        let bad = vec![pi(1, 1), pq((1, 2), (1, 2)), pq((3, 2), (1, 2)), pi(1, 1)];
        let c = PLCurve::from_runs(&l, "C", &[bad], 0).unwrap();
        assert!(c.validate(&l).unwrap_err().to_string().contains("cone vertex contact"));
        let t = torus();
        let back = vec![pq((1, 4), (1, 4)), pq((1, 2), (1, 4)), pq((3, 8), (1, 4)), pq((1, 4), (1, 4))];
        let b = PLCurve::from_runs(&t, "B", &[back], 0).unwrap();
        assert!(b.validate(&t).unwrap_err().to_string().contains("backtracking"));
    }

    #[test]
    fn developed_vertical_closes() {
        let t = torus();
        let c = PLCurve::from_moves(&t, "V", &pq((1, 4), (1, 2)), &[pi(0, 1)], 0).unwrap();
        assert!(c.validate(&t).is_ok());
        assert_eq!(c.homology_class(&t), vec![0, 1]);
        assert_eq!(c.len(), 1);
    }
}
