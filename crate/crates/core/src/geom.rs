//! Planar points and segment predicates over exact rationals.

use crate::rat::{self, Q};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat::fmt_q(&self.x), rat::fmt_q(&self.y))
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }

    pub fn origin() -> Self {
        Pt::new(Q::zero(), Q::zero())
    }

    pub fn add(&self, o: &Pt) -> Pt {
        Pt::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Pt {
        Pt::new(-&self.x, -&self.y)
    }

    pub fn scale(&self, k: &Q) -> Pt {
        Pt::new(&self.x * k, &self.y * k)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Point at parameter `t` on `self → b`.
    pub fn lerp(&self, b: &Pt, t: &Q) -> Pt {
        self.add(&b.sub(self).scale(t))
    }

    pub fn mid(&self, b: &Pt) -> Pt {
        Pt::new(rat::half(&(&self.x + &b.x)), rat::half(&(&self.y + &b.y)))
    }

    /// Rotation by +90°.
    pub fn perp(&self) -> Pt {
        Pt::new(-&self.y, self.x.clone())
    }
}

/// Shorthand for `(xn/xd, yn/yd)`.
pub fn pq(x: (i64, i64), y: (i64, i64)) -> Pt {
    Pt::new(rat::q(x.0, x.1), rat::q(y.0, y.1))
}

pub fn pi(x: i64, y: i64) -> Pt {
    Pt::new(rat::qi(x), rat::qi(y))
}

pub fn det(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> i32 {
    rat::sign(&det(&b.sub(a), &c.sub(a)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hit {
    None,
    /// Single common point at parameters `t` on the first segment, `s` on the second.
    Point { t: Q, s: Q },
    /// Collinear overlap of positive length.
    Overlap,
}

/// Intersection of the closed segments `a0a1` and `b0b1`.
pub fn seg_hit(a0: &Pt, a1: &Pt, b0: &Pt, b1: &Pt) -> Hit {
    let r = a1.sub(a0);
    let s = b1.sub(b0);
    let w = b0.sub(a0);
    let den = det(&r, &s);
    if !den.is_zero() {
        let t = det(&w, &s) / &den;
        let u = det(&w, &r) / &den;
        let unit = |v: &Q| !v.is_negative() && *v <= Q::one();
        if unit(&t) && unit(&u) {
            return Hit::Point { t, s: u };
        }
        return Hit::None;
    }
    if !det(&w, &r).is_zero() {
        return Hit::None;
    }
    let rr = dot(&r, &r);
    let t0 = dot(&w, &r) / &rr;
    let t1 = dot(&b1.sub(a0), &r) / &rr;
    let (lo, hi) = if t0 <= t1 { (t0.clone(), t1.clone()) } else { (t1.clone(), t0.clone()) };
    let lo2 = if lo > Q::zero() { lo } else { Q::zero() };
    let hi2 = if hi < Q::one() { hi } else { Q::one() };
    if lo2 > hi2 {
        Hit::None
    } else if lo2 < hi2 {
        Hit::Overlap
    } else {
        let t = lo2;
        let p = a0.lerp(a1, &t);
        let ss = dot(&p.sub(b0), &s) / dot(&s, &s);
        Hit::Point { t, s: ss }
    }
}

/// Is `p` on the closed segment `ab`?
pub fn on_segment(p: &Pt, a: &Pt, b: &Pt) -> bool {
    let d = b.sub(a);
    let w = p.sub(a);
    if !det(&d, &w).is_zero() {
        return false;
    }
    let t = dot(&w, &d);
    !t.is_negative() && t <= dot(&d, &d)
}

/// Parameter of `p` on the line `a + t(b − a)`.
pub fn param_on(p: &Pt, a: &Pt, b: &Pt) -> Q {
    let d = b.sub(a);
    dot(&p.sub(a), &d) / dot(&d, &d)
}

/// Twice the signed area of a closed polygon.
pub fn shoelace2(pts: &[Pt]) -> Q {
    let n = pts.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += det(&pts[i], &pts[(i + 1) % n]);
    }
    s
}

pub fn shoelace(pts: &[Pt]) -> Q {
    rat::half(&shoelace2(pts))
}

/// Even-odd point location; `Some(true)` inside, `Some(false)` outside, `None` on the boundary.
pub fn locate(p: &Pt, poly: &[Pt]) -> Option<bool> {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_segment(p, a, b) {
            return None;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    Some(inside)
}

/// Sign of the turn from `a` to `b` through the smaller angle; `None` for a reversal.
pub fn turn_sign(a: &Pt, b: &Pt) -> Option<i32> {
    let d = det(a, b);
    if d.is_zero() {
        if dot(a, b).is_positive() {
            Some(0)
        } else {
            None
        }
    } else {
        Some(rat::sign(&d))
    }
}

/// Does the turn `a → b` (smaller angle, counterclockwise iff `det > 0`) sweep across the
/// direction `r`? Returns the signed crossing (`+1` counterclockwise). `r` must not be parallel
/// to `a` or `b`.
pub fn sweeps(a: &Pt, b: &Pt, r: &Pt) -> i32 {
    let dab = det(a, b);
    if dab.is_zero() {
        return 0;
    }
    let ar = det(a, r);
    let rb = det(r, b);
    if dab.is_positive() && ar.is_positive() && rb.is_positive() {
        1
    } else if dab.is_negative() && ar.is_negative() && rb.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn crossing_and_overlap() {
        let h = seg_hit(&pi(0, 0), &pi(2, 2), &pi(0, 2), &pi(2, 0));
        assert_eq!(h, Hit::Point { t: q(1, 2), s: q(1, 2) });
        assert_eq!(seg_hit(&pi(0, 0), &pi(2, 0), &pi(1, 0), &pi(3, 0)), Hit::Overlap);
        assert_eq!(
            seg_hit(&pi(0, 0), &pi(1, 0), &pi(1, 0), &pi(3, 0)),
            Hit::Point { t: q(1, 1), s: q(0, 1) }
        );
        assert_eq!(seg_hit(&pi(0, 0), &pi(1, 0), &pi(0, 1), &pi(1, 1)), Hit::None);
    }

    #[test]
    fn locate_l_shape() {
        let l = vec![pi(0, 0), pi(2, 0), pi(2, 1), pi(1, 1), pi(1, 2), pi(0, 2)];
        assert_eq!(locate(&pq((1, 2), (3, 2)), &l), Some(true));
        assert_eq!(locate(&pq((3, 2), (3, 2)), &l), Some(false));
        assert_eq!(locate(&pq((3, 2), (1, 1)), &l), None);
        assert_eq!(shoelace(&l), q(3, 1));
    }

    #[test]
    fn sweep_counts() {
        let r = pq((1, 1), (1, 7));
        assert_eq!(sweeps(&pi(1, -1), &pi(1, 1), &r), 1);
        assert_eq!(sweeps(&pi(1, 1), &pi(1, -1), &r), -1);
        assert_eq!(sweeps(&pi(-1, 1), &pi(-1, -1), &r), 0);
    }
}
