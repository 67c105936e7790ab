//! Intersection points of a finite family of curves and the transversality sets they allow.

use crate::curve::PLCurve;
use crate::error::{Error, Result};
use crate::geom::{self, det, Hit, Pt};
use crate::rat::{self, Q};
use crate::surface::FlatSurface;
use num_traits::{One, Signed};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub id: usize,
    pub at: Pt,
    pub ci: usize,
    pub si: usize,
    pub ti: Q,
    pub cj: usize,
    pub sj: usize,
    pub tj: Q,
    /// Sign of `det(dir γᵢ, dir γⱼ)` at the point.
    pub det_sign: i8,
}

impl IntersectionPoint {
    pub fn other(&self, c: usize) -> Option<usize> {
        if c == self.ci {
            Some(self.cj)
        } else if c == self.cj {
            Some(self.ci)
        } else {
            None
        }
    }

    /// `(segment, parameter)` of the branch on curve `c` (first branch for self-crossings).
    pub fn on(&self, c: usize) -> Option<(usize, &Q)> {
        if c == self.ci {
            Some((self.si, &self.ti))
        } else if c == self.cj {
            Some((self.sj, &self.tj))
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub curves: Vec<PLCurve>,
    pub points: Vec<IntersectionPoint>,
    pub transversal: bool,
    pub witness: Option<String>,
    /// Curve sets that may not appear together in a transverse sequence.
    bad: Vec<(BTreeSet<usize>, String)>,
}

impl Arrangement {
    pub fn new(_surface: &FlatSurface, curves: Vec<PLCurve>) -> Arrangement {
        let mut raw: Vec<IntersectionPoint> = Vec::new();
        let mut bad: Vec<(BTreeSet<usize>, String)> = Vec::new();
        let nc = curves.len();
        for ci in 0..nc {
            for cj in ci..nc {
                let (a, b) = (&curves[ci], &curves[cj]);
                for si in 0..a.len() {
                    let sj0 = if ci == cj { si + 1 } else { 0 };
                    for sj in sj0..b.len() {
                        let (s, t) = (a.seg(si), b.seg(sj));
                        match geom::seg_hit(&s.a, &s.b, &t.a, &t.b) {
                            Hit::None => {}
                            Hit::Overlap => bad.push((
                                [ci, cj].into_iter().collect(),
                                format!("{} and {} overlap near {}", a.name, b.name, s.a),
                            )),
                            Hit::Point { t: u, s: v } => {
                                let inner = |x: &Q| x.is_positive() && *x < Q::one();
                                if inner(&u) && inner(&v) {
                                    let sign = rat::sign(&det(&s.dir(), &t.dir())) as i8;
                                    raw.push(IntersectionPoint {
                                        id: 0,
                                        at: s.at(&u),
                                        ci,
                                        si,
                                        ti: u,
                                        cj,
                                        sj,
                                        tj: v,
                                        det_sign: sign,
                                    });
                                } else if ci != cj || !shared_joint(a, si, &u, sj, &v) {
                                    bad.push((
                                        [ci, cj].into_iter().collect(),
                                        format!("{} and {} meet at a segment endpoint {}", a.name, b.name, s.at(&u)),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        raw.sort_by(|p, q| {
            (&p.at.x, &p.at.y, p.ci, p.cj, p.si, p.sj).cmp(&(&q.at.x, &q.at.y, q.ci, q.cj, q.si, q.sj))
        });
        for (k, p) in raw.iter_mut().enumerate() {
            p.id = k;
        }
        let mut by_loc: BTreeMap<&Pt, Vec<&IntersectionPoint>> = BTreeMap::new();
        for p in &raw {
            by_loc.entry(&p.at).or_default().push(p);
        }
        for (at, ps) in &by_loc {
            if ps.len() > 1 {
                let set: BTreeSet<usize> = ps.iter().flat_map(|p| [p.ci, p.cj]).collect();
                let names: Vec<&str> = set.iter().map(|&c| curves[c].name.as_str()).collect();
                bad.push((set, format!("three branches through {at} ({})", names.join(", "))));
            }
        }
        let witness = bad.first().map(|b| b.1.clone());
        Arrangement { curves, points: raw, transversal: bad.is_empty(), witness, bad }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    /// Checks that the listed curves may form a transverse sequence.
    pub fn check_transverse(&self, ids: &[usize]) -> Result<()> {
        let set: BTreeSet<usize> = ids.iter().copied().collect();
        if set.len() != ids.len() {
            return Err(Error::Transversality("a curve appears twice in the sequence".into()));
        }
        for (b, why) in &self.bad {
            if b.is_subset(&set) {
                return Err(Error::Transversality(why.clone()));
            }
        }
        Ok(())
    }

    /// Intersection points of two distinct curves, by id.
    pub fn between(&self, a: usize, b: usize) -> Vec<usize> {
        self.points
            .iter()
            .filter(|p| a != b && ((p.ci == a && p.cj == b) || (p.ci == b && p.cj == a)))
            .map(|p| p.id)
            .collect()
    }

    /// Degree of the point as a morphism `from → to` of the curves as stored.
    pub fn degree_of(&self, point: usize, from: usize, to: usize) -> Result<u8> {
        let p = self.points.get(point).ok_or_else(|| Error::Input(format!("no point {point}")))?;
        if from == to || p.other(from) != Some(to) {
            return Err(Error::Input(format!("point {point} is not on the pair ({from}, {to})")));
        }
        let s = if from == p.ci { p.det_sign } else { -p.det_sign };
        Ok(u8::from(s > 0))
    }
}

fn shared_joint(c: &PLCurve, si: usize, u: &Q, sj: usize, v: &Q) -> bool {
    let n = c.len();
    let fwd = sj == si + 1 && c.jump(si).is_none() && u.is_one() && num_traits::Zero::is_zero(v);
    let wrap = si == 0 && sj == n - 1 && c.jump(n - 1).is_none() && num_traits::Zero::is_zero(u) && v.is_one();
    fwd || wrap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pq;
    use crate::rat::qi;

    fn line(s: &FlatSurface, name: &str, a: Pt, b: Pt) -> PLCurve {
        PLCurve::from_runs(s, name, &[vec![a, b]], 0).unwrap()
    }

    #[test]
    fn v_h_single_point() {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = line(&t, "V", pq((1, 4), (0, 1)), pq((1, 4), (1, 1)));
        let h = line(&t, "H", pq((0, 1), (1, 4)), pq((1, 1), (1, 4)));
        let arr = Arrangement::new(&t, vec![v, h]);
        assert!(arr.transversal);
        assert_eq!(arr.points.len(), 1);
        assert_eq!(arr.points[0].at, pq((1, 4), (1, 4)));
        assert_eq!(arr.degree_of(0, 0, 1).unwrap(), 0);
        assert_eq!(arr.degree_of(0, 1, 0).unwrap(), 1);
    }

    #[test]
    fn zigzag_pushoff_points() {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = line(&t, "V", pq((1, 4), (0, 1)), pq((1, 4), (1, 1)));
        let w = PLCurve::from_runs(&t, "W", &[vec![pq((3, 8), (0, 1)), pq((1, 8), (1, 2)), pq((3, 8), (1, 1))]], 0).unwrap();
        let arr = Arrangement::new(&t, vec![v, w]);
        let at: Vec<Pt> = arr.points.iter().map(|p| p.at.clone()).collect();
        assert_eq!(at, vec![pq((1, 4), (1, 4)), pq((1, 4), (3, 4))]);
    }

    #[test]
    fn triple_point_witness() {
        let t = FlatSurface::torus(qi(1), qi(1)).unwrap();
        let v = line(&t, "V", pq((1, 2), (0, 1)), pq((1, 2), (1, 1)));
        let h = line(&t, "H", pq((0, 1), (1, 4)), pq((1, 1), (1, 4)));
        let runs = [vec![pq((1, 4), (0, 1)), pq((1, 1), (3, 4))], vec![pq((0, 1), (3, 4)), pq((1, 4), (1, 1))]];
        let d = PLCurve::from_runs(&t, "D", &runs, 0).unwrap();
        let arr = Arrangement::new(&t, vec![v, h, d]);
        assert!(!arr.transversal);
        assert!(arr.witness.as_deref().unwrap().contains("three branches"));
        assert!(arr.check_transverse(&[0, 1]).is_ok());
        assert!(arr.check_transverse(&[0, 1, 2]).is_err());
        assert!(arr.check_transverse(&[0, 0]).is_err());
    }
}
