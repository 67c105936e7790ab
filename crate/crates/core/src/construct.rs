//! Curve constructions in developed coordinates: straight loops, Hamiltonian pushoffs,
//! connect-sum resolutions and Dehn twists.

use crate::arrangement::Arrangement;
use crate::curve::PLCurve;
use crate::error::{Error, Result};
use crate::geom::{det, dot, Pt};
use crate::rat::{self, Q};
use crate::surface::FlatSurface;
use num_traits::{One, Signed, Zero};

/// A closed curve lifted to the plane, one developed segment per chart segment.
#[derive(Clone, Debug)]
pub struct Lift {
    pub a: Vec<Pt>,
    pub d: Vec<Pt>,
    /// developed point = chart point + `off[k]`
    pub off: Vec<Pt>,
    pub period: Pt,
}

impl Lift {
    pub fn new(surface: &FlatSurface, c: &PLCurve) -> Lift {
        let n = c.len();
        let mut off = Vec::with_capacity(n);
        let mut cur = Pt::origin();
        for k in 0..n {
            off.push(cur.clone());
            if let Some(link) = c.jump(k).and_then(|e| surface.link(e)) {
                cur = cur.sub(&link.shift);
            }
        }
        let a = (0..n).map(|k| c.seg(k).a.add(&off[k])).collect();
        let d = (0..n).map(|k| c.seg(k).dir()).collect();
        Lift { a, d, off, period: cur }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Point at parameter `t` of segment `k`, where `k` may run past one period.
    pub fn at(&self, k: usize, t: &Q) -> Pt {
        let n = self.len();
        let p = self.a[k % n].add(&self.d[k % n].scale(t));
        self.lap(p, k / n)
    }

    /// Start of segment `k` (`k` may equal or exceed `len`).
    pub fn joint(&self, k: usize) -> Pt {
        let n = self.len();
        self.lap(self.a[k % n].clone(), k / n)
    }

    fn lap(&self, p: Pt, laps: usize) -> Pt {
        p.add(&self.period.scale(&rat::qi(laps as i64)))
    }

    /// Like `at` for any integer segment index.
    pub fn at_i(&self, k: i64, t: &Q) -> Pt {
        let n = self.len() as i64;
        let (laps, r) = (k.div_euclid(n), k.rem_euclid(n) as usize);
        self.a[r].add(&self.d[r].scale(t)).add(&self.period.scale(&rat::qi(laps)))
    }

    /// Free room from `(k, t)` along the straight stretch through it, in parameter units of
    /// segment `k`, up to the nearest event or bend.
    pub fn room(&self, events: &[(usize, Q)], k: usize, t: &Q, forward: bool) -> Q {
        let n = self.len() as i64;
        let d = &self.d[k];
        let c = self.at(k, t);
        let dir = if forward { d.clone() } else { d.neg() };
        let s_of = |p: &Pt| dot(&p.sub(&c), &dir) / dot(d, d);
        let step: i64 = if forward { 1 } else { -1 };
        let mut best: Option<Q> = None;
        let take = |v: Q, best: &mut Option<Q>| {
            if v.is_positive() && best.as_ref().map_or(true, |b| v < *b) {
                *best = Some(v);
            }
        };
        for i in 0..=n {
            let kk = k as i64 + step * i;
            let r = kk.rem_euclid(n) as usize;
            if i > 0 && !(det(&self.d[r], d).is_zero() && dot(&self.d[r], d).is_positive()) {
                let end = if forward { self.at_i(kk, &Q::zero()) } else { self.at_i(kk, &Q::one()) };
                take(s_of(&end), &mut best);
                break;
            }
            for (ek, et) in events {
                if *ek == r {
                    take(s_of(&self.at_i(kk, et)), &mut best);
                }
            }
        }
        best.unwrap_or_else(|| dot(&self.period, &self.period) / dot(d, d))
    }

    pub fn chart(&self, k: usize, p: &Pt) -> Pt {
        p.sub(&self.off[k % self.len()])
    }
}

/// `(y, −x)` scaled to unit L¹ norm.
pub fn right_normal(u: &Pt) -> Pt {
    let n = u.x.abs() + u.y.abs();
    Pt::new(&u.y / &n, -&u.x / &n)
}

/// Intersection of the lines `p + s·u` and `q + r·v`.
pub fn meet(p: &Pt, u: &Pt, q: &Pt, v: &Pt) -> Option<Pt> {
    let den = det(u, v);
    if den.is_zero() {
        return None;
    }
    let s = det(&q.sub(p), v) / den;
    Some(p.add(&u.scale(&s)))
}

fn shoelace_signed(pts: &[Pt]) -> Q {
    let n = pts.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += det(&pts[i], &pts[(i + 1) % n]);
    }
    rat::half(&s)
}

/// Closes the cyclic developed vertex list `v` (with `v[N] = v[0] + period`) into a curve
/// starting at `v[s]`, whose chart position is `start`.
pub fn close_cycle(
    surface: &FlatSurface,
    name: &str,
    v: &[Pt],
    period: &Pt,
    s: usize,
    start: &Pt,
    marked: usize,
) -> Result<PLCurve> {
    let n = v.len();
    let at = |i: usize| if i >= n { v[i - n].add(period) } else { v[i].clone() };
    let moves: Vec<Pt> = (s..s + n).map(|i| at(i + 1).sub(&at(i))).filter(|m| !m.is_zero()).collect();
    PLCurve::from_moves(surface, name, start, &moves, marked)
}

/// Straight closed curve from `start` along the closing displacement `dir`.
pub fn straight(surface: &FlatSurface, name: &str, start: &Pt, dir: &Pt) -> Result<PLCurve> {
    PLCurve::from_moves(surface, name, start, &[dir.clone()], 0)
}

struct Cut {
    k: usize,
    t: Q,
    c: Pt,
    /// crossing direction turned to the left of the curve
    w: Pt,
    /// free parameter room of `w` beyond the crossing
    w_room: Q,
}

fn events_on(arr: &Arrangement, c: usize) -> Vec<(usize, Q)> {
    arr.points
        .iter()
        .filter(|p| p.other(c).map_or(false, |o| o != c))
        .map(|p| {
            let (k, t) = p.on(c).unwrap();
            (k, t.clone())
        })
        .collect()
}

fn cuts(surface: &FlatSurface, arr: &Arrangement, ix: usize, lift: &Lift) -> Vec<Cut> {
    let mut out = Vec::new();
    for p in &arr.points {
        let Some(o) = p.other(ix) else { continue };
        if o == ix {
            continue;
        }
        let (k, t) = p.on(ix).unwrap();
        let (so, to) = p.on(o).unwrap();
        let mut w = arr.curves[o].seg(so).dir();
        let flip = det(&lift.d[k], &w).is_negative();
        if flip {
            w = w.neg();
        }
        let lo = Lift::new(surface, &arr.curves[o]);
        let w_room = lo.room(&events_on(arr, o), so, to, !flip);
        out.push(Cut { k, t: t.clone(), c: lift.at(k, t), w, w_room });
    }
    out.sort_by(|a, b| (a.k, &a.t).cmp(&(b.k, &b.t)));
    out
}

/// Tent over one crossing: `x1 → p → x0` with `z` the crossing of `p x0` with the crossing curve.
struct Tent {
    p: Pt,
    x0: Pt,
    x1: Pt,
    k: usize,
}

/// A C¹-close copy of curve `ix` meeting it twice between consecutive crossings with the
/// other curves: left tents of area `lambda` around each crossing (corner triangle
/// `lambda_p`), right bigons of area `lambda` in between.
pub fn hamiltonian_pushoff(
    surface: &FlatSurface,
    arr: &Arrangement,
    ix: usize,
    lambda: &Q,
    lambda_p: &Q,
    name: &str,
) -> Result<PLCurve> {
    if !lambda.is_positive() || !lambda_p.is_positive() || lambda_p >= lambda {
        return Err(Error::Input("pushoff needs 0 < λ′ < λ".into()));
    }
    let curve = &arr.curves[ix];
    if !curve.self_crossings().is_empty() {
        return Err(Error::Hypothesis(format!("{} is not embedded", curve.name)));
    }
    let lift = Lift::new(surface, curve);
    let n = lift.len();
    let mut cs = cuts(surface, arr, ix, &lift);
    let evs = events_on(arr, ix);
    if cs.is_empty() {
        let d = &lift.d[0];
        let w = right_normal(d).neg();
        cs.push(Cut { k: 0, t: rat::half(&Q::one()), c: lift.at(0, &rat::half(&Q::one())), w, w_room: Q::one() });
    }
    let m = cs.len();
    let one = Q::one();
    let ratio = lambda / lambda_p - &one;
    let eps = if ratio > rat::q(1, 2) { rat::q(1, 4) } else { rat::half(&ratio) };
    let mut tents = Vec::with_capacity(m);
    for j in 0..m {
        let cut = &cs[j];
        let (room_b, room_a) = (lift.room(&evs, cut.k, &cut.t, false), lift.room(&evs, cut.k, &cut.t, true));
        let d = &lift.d[cut.k];
        let dd = det(d, &cut.w);
        let eight = rat::qi(6);
        let tau_a = &eight * lambda_p / (&dd * &room_a);
        let tau_b = &eight * lambda / (&dd * (&one + &eps) * &room_b);
        let tau = if tau_a > tau_b { tau_a } else { tau_b };
        if &tau * (&one + &eps) * rat::qi(2) > cut.w_room {
            return Err(Error::Construction(format!("λ too large near crossing at {}", cut.c)));
        }
        let beta = rat::qi(2) * lambda_p / (&tau * &dd);
        let alpha = rat::qi(2) * lambda / (&tau * &dd * (&one + &eps)) - &beta;
        let z = cut.c.add(&cut.w.scale(&tau));
        let x0 = cut.c.add(&d.scale(&beta));
        let x1 = cut.c.sub(&d.scale(&alpha));
        let p = z.add(&z.sub(&x0).scale(&eps));
        tents.push(Tent { p, x0, x1, k: cut.k });
    }
    // right pieces from tent j to tent j+1
    let mut verts: Vec<Pt> = Vec::new();
    for j in 0..m {
        let (tj, tn) = (&tents[j], &tents[(j + 1) % m]);
        let wrap = j + 1 == m;
        let k_end = if wrap { tn.k + n } else { tn.k };
        let lap = |p: &Pt| if wrap { p.add(&lift.period) } else { p.clone() };
        let (x1n, pn) = (lap(&tn.x1), lap(&tn.p));
        let mut h = {
            let mut strip = Q::zero();
            for kk in tj.k..=k_end {
                let u = &lift.d[kk % n];
                strip += dot(u, u) / (u.x.abs() + u.y.abs());
            }
            lambda / strip
        };
        let mut piece: Option<Vec<Pt>> = None;
        for _ in 0..24 {
            match right_piece(&lift, tj, &x1n, &pn, tj.k, k_end, &h, lambda) {
                Some((v, _, true)) => {
                    piece = Some(v);
                    break;
                }
                Some((_, f0, false)) if f0.is_positive() => h = &h * lambda / f0,
                _ => h = rat::half(&h),
            }
        }
        let piece = piece.ok_or_else(|| Error::Construction(format!("no room for a bigon of area {lambda}")))?;
        verts.push(tj.p.clone());
        verts.extend(piece);
    }
    let mut last_err = None;
    for s in 0..m {
        let at = verts.iter().position(|v| *v == tents[s].p).unwrap();
        let start = lift.chart(tents[s].k, &tents[s].p);
        if !surface.contains_open(&start) {
            continue;
        }
        match close_cycle(surface, name, &verts, &lift.period, at, &start, 0) {
            Ok(c) => {
                if c.holonomy(surface) != curve.holonomy(surface) {
                    return Err(Error::Construction("pushoff holonomy mismatch".into()));
                }
                let mut all = arr.curves.clone();
                all.push(c.clone());
                let a2 = Arrangement::new(surface, all);
                if !a2.transversal {
                    return Err(Error::Construction(format!(
                        "pushoff not transverse: {}",
                        a2.witness.unwrap_or_default()
                    )));
                }
                let hits = a2.between(ix, a2.curves.len() - 1).len();
                if hits != 2 * m {
                    return Err(Error::Construction(format!("pushoff meets the curve {hits} times, expected {}", 2 * m)));
                }
                return Ok(c);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Construction("no tent apex inside the chart".into())))
}

/// Vertices `A, M, mitres…, B` of the right bigon from tent `t0` to the next tent.
#[allow(clippy::too_many_arguments)]
/// Also returns the area without the bump and whether the bump stayed admissible.
fn right_piece(lift: &Lift, t0: &Tent, x1n: &Pt, pn: &Pt, k0: usize, k1: usize, h: &Q, lambda: &Q) -> Option<(Vec<Pt>, Q, bool)> {
    let n = lift.len();
    let off = |k: usize| lift.joint(k).add(&right_normal(&lift.d[k % n]).scale(h));
    let a = meet(&t0.p, &t0.x0.sub(&t0.p), &off(k0), &lift.d[k0 % n])?;
    let b = meet(pn, &x1n.sub(pn), &off(k1), &lift.d[k1 % n])?;
    let mut mitres = Vec::new();
    for kk in k0..k1 {
        let (u, v) = (&lift.d[kk % n], &lift.d[(kk + 1) % n]);
        if det(u, v).is_zero() {
            continue;
        }
        let j = lift.joint(kk + 1);
        let mp = meet(&off(kk), u, &j.add(&right_normal(v).scale(h)), v).unwrap_or_else(|| j.add(&right_normal(u).scale(h)));
        mitres.push(mp);
    }
    // ordering along the offset: A before the first mitre / B
    let first = mitres.first().unwrap_or(&b);
    if !dot(&first.sub(&a), &lift.d[k0 % n]).is_positive() {
        return None;
    }
    let last = mitres.last().unwrap_or(&a);
    if !dot(&b.sub(last), &lift.d[k1 % n]).is_positive() {
        return None;
    }
    let mid = a.mid(first);
    let nrm = right_normal(&lift.d[k0 % n]);
    let region = |mm: &Pt| -> Q {
        let mut poly = vec![t0.x0.clone()];
        for kk in k0 + 1..=k1 {
            if !det(&lift.d[(kk - 1) % n], &lift.d[kk % n]).is_zero() {
                poly.push(lift.joint(kk));
            }
        }
        poly.push(x1n.clone());
        poly.push(b.clone());
        for mp in mitres.iter().rev() {
            poly.push(mp.clone());
        }
        poly.push(mm.clone());
        poly.push(a.clone());
        -shoelace_signed(&poly)
    };
    let f0 = region(&mid);
    let f1 = region(&mid.add(&nrm));
    let slope = &f1 - &f0;
    if slope.is_zero() {
        return None;
    }
    let s = (lambda - &f0) / slope;
    // the bump must stay on the right and within the strip scale
    let ok = (h + &s).is_positive() && s.abs() <= h * rat::q(1, 2);
    let mm = mid.add(&nrm.scale(&s));
    let mut out = vec![a, mm];
    out.extend(mitres);
    out.push(b);
    Some((out, f0, ok))
}

/// Result of resolving a crossing.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub curve: PLCurve,
    /// where the connector crosses α and β (chart coordinates)
    pub on_alpha: Pt,
    pub on_beta: Pt,
}

/// Oriented smoothing of the degree-1 crossing `point` of `CF(α, β)`: the right offsets of
/// α and β spliced so that the two cut-corner triangles have equal area.
pub fn resolve_connect_sum(surface: &FlatSurface, arr: &Arrangement, a_ix: usize, b_ix: usize, point: usize, name: &str) -> Result<Resolution> {
    let p = &arr.points[point];
    if p.other(a_ix) != Some(b_ix) {
        return Err(Error::Input(format!("point {point} is not a crossing of the two curves")));
    }
    if arr.degree_of(point, a_ix, b_ix)? != 1 {
        return Err(Error::Hypothesis(format!("crossing {point} has degree 0 in CF(α, β)")));
    }
    let (alpha, beta) = (&arr.curves[a_ix], &arr.curves[b_ix]);
    let (la, lb) = (Lift::new(surface, alpha), Lift::new(surface, beta));
    let (ka, ta) = p.on(a_ix).unwrap();
    let (kb, tb) = p.on(b_ix).unwrap();
    let (na, nb) = (la.len(), lb.len());
    // re-anchor both lifts so that the crossing sits at the same developed point
    let ca = la.at(ka, ta);
    let cb = lb.at(kb, tb);
    let shift_b = ca.sub(&cb);
    let c = ca.clone();
    // room on the crossing segments
    let gaps = |c_ix: usize, k: usize, t: &Q| -> (Q, Q) {
        let (mut lo, mut hi) = (t.clone(), Q::one() - t);
        for q in &arr.points {
            if q.id == point {
                continue;
            }
            for (cc, s, u) in [(q.ci, q.si, &q.ti), (q.cj, q.sj, &q.tj)] {
                if cc == c_ix && s == k {
                    if u < t && t - u < lo {
                        lo = t - u;
                    }
                    if u > t && u - t < hi {
                        hi = u - t;
                    }
                }
            }
        }
        (lo, hi)
    };
    let (room_a, _) = gaps(a_ix, ka, ta);
    let (_, room_b) = gaps(b_ix, kb, tb);
    let (u, v) = (&la.d[ka], &lb.d[kb]);
    let scale = if room_a < room_b { room_a.clone() } else { room_b.clone() };
    let short = {
        let (lu, lv) = (u.x.abs() + u.y.abs(), v.x.abs() + v.y.abs());
        if lu < lv { lu } else { lv }
    };
    let target = alpha.holonomy(surface) + beta.holonomy(surface);
    let mut last = Error::Construction("no admissible resolution".into());
    for e_pow in 3..12u32 {
        let eps = rat::q(1, 1i64 << e_pow) * &scale * &short;
        for s_num in [1i64, 2, 3] {
            let s_par = &scale * rat::q(s_num, 4);
            match splice(surface, &la, &lb, &shift_b, ka, kb, &c, u, v, &eps, &s_par, &target, name, na, nb) {
                Ok(r) => {
                    let marked = nearest_segment(&r.curve, alpha.marked_point());
                    let curve = r.curve.with_marked(marked);
                    return Ok(Resolution { curve, on_alpha: r.on_alpha, on_beta: r.on_beta });
                }
                Err(e) => last = e,
            }
        }
    }
    Err(last)
}

fn nearest_segment(c: &PLCurve, p: &Pt) -> usize {
    let mut best = (Q::zero(), 0usize);
    for (k, s) in c.segs().iter().enumerate() {
        let m = s.a.mid(&s.b).sub(p);
        let dd = m.x.abs() + m.y.abs();
        if k == 0 || dd < best.0 {
            best = (dd, k);
        }
    }
    best.1
}

#[allow(clippy::too_many_arguments)]
fn splice(
    surface: &FlatSurface,
    la: &Lift,
    lb: &Lift,
    shift_b: &Pt,
    ka: usize,
    kb: usize,
    c: &Pt,
    u: &Pt,
    v: &Pt,
    eps: &Q,
    s_par: &Q,
    target: &Q,
    name: &str,
    na: usize,
    nb: usize,
) -> Result<Resolution> {
    let off_a = |k: usize| la.joint(k).add(&right_normal(&la.d[k % na]).scale(eps));
    let off_b = |k: usize| lb.joint(k).add(shift_b).add(&right_normal(&lb.d[k % nb]).scale(eps));
    let mitre = |lift: &Lift, offf: &dyn Fn(usize) -> Pt, k: usize, n: usize, extra: &Pt| -> Pt {
        let (d0, d1) = (&lift.d[k % n], &lift.d[(k + 1) % n]);
        let j = lift.joint(k + 1).add(extra);
        meet(&offf(k), d0, &j.add(&right_normal(d1).scale(eps)), d1).unwrap_or_else(|| j.add(&right_normal(d0).scale(eps)))
    };
    // K: β-in meets α-out near c
    let k_pt = meet(&off_b(kb), v, &off_a(ka), u).ok_or_else(|| Error::Construction("parallel branches".into()))?;
    // α′ from K around α back to the crossing segment (one lap)
    let mut pts = vec![k_pt.clone()];
    let bend = |lift: &Lift, kk: usize, n: usize| !det(&lift.d[kk % n], &lift.d[(kk + 1) % n]).is_zero();
    for kk in ka..ka + na {
        if bend(la, kk, na) {
            pts.push(mitre(la, &off_a, kk, na, &Pt::origin()));
        }
    }
    let ta_lap = la.period.clone();
    // P on the last α′ line, `s_par` before c (in parameter units of u)
    let p_pt = c.add(&ta_lap).sub(&u.scale(s_par)).add(&right_normal(u).scale(eps));
    pts.push(p_pt.clone());
    let q_at = |r: &Q| -> Pt { c.add(&ta_lap).add(&v.scale(r)).add(&right_normal(v).scale(eps)) };
    let tail = |r: &Q| -> Vec<Pt> {
        let mut t = vec![q_at(r)];
        for kk in kb..kb + nb {
            if bend(lb, kk, nb) {
                t.push(mitre(lb, &off_b, kk, nb, shift_b).add(&ta_lap));
            }
        }
        t
    };
    let loop_hol = |r: &Q| -> Result<(PLCurve, Q)> {
        let mut v_all = pts.clone();
        v_all.extend(tail(r));
        let period = ta_lap.add(&lb.period);
        // chart of K: developed minus α's offset at the crossing segment
        let start = la.chart(ka, &k_pt);
        let curve = close_cycle(surface, name, &v_all, &period, 0, &start, 0)?;
        let h = curve.holonomy(surface);
        Ok((curve, h))
    };
    let (_, h0) = loop_hol(&Q::zero())?;
    let (_, h1) = loop_hol(s_par)?;
    let slope = (&h1 - &h0) / s_par;
    if slope.is_zero() {
        return Err(Error::Construction("degenerate connector".into()));
    }
    let r = (target - &h0) / slope;
    if !r.is_positive() || r >= s_par * rat::qi(4) {
        return Err(Error::Construction(format!("connector endpoint {r} out of range")));
    }
    let (curve, h) = loop_hol(&r)?;
    if h != *target {
        return Err(Error::Construction("holonomy not additive".into()));
    }
    // the connector P → Q crosses α then β
    let q_pt = q_at(&r);
    let cl = c.add(&ta_lap);
    let on_a = meet(&p_pt, &q_pt.sub(&p_pt), &cl, u).ok_or_else(|| Error::Construction("connector parallel to α".into()))?;
    let on_b = meet(&p_pt, &q_pt.sub(&p_pt), &cl, v).ok_or_else(|| Error::Construction("connector parallel to β".into()))?;
    let along = q_pt.sub(&p_pt);
    if !(dot(&on_a.sub(&p_pt), &along).is_positive()
        && dot(&on_b.sub(&on_a), &along).is_positive()
        && dot(&q_pt.sub(&on_b), &along).is_positive())
    {
        return Err(Error::Construction("connector does not cross α before β".into()));
    }
    let chart_shift = la.off[ka].add(&ta_lap);
    Ok(Resolution { curve, on_alpha: on_a.sub(&chart_shift), on_beta: on_b.sub(&chart_shift) })
}

/// Reroutes `curve` once around the straight curve `along` inside a collar of the given
/// width: each crossing becomes a ramp that wraps in the direction of the left turn.
pub fn dehn_twist(surface: &FlatSurface, curve: &PLCurve, along: &PLCurve, width: &Q, name: &str) -> Result<PLCurve> {
    if !width.is_positive() {
        return Err(Error::Input("collar width must be positive".into()));
    }
    let core = Lift::new(surface, along);
    let t = core.period.clone();
    if core.d.iter().any(|d| !det(d, &t).is_zero()) {
        return Err(Error::Hypothesis(format!("{} is not straight; no rectilinear collar", along.name)));
    }
    let arr = Arrangement::new(surface, vec![curve.clone(), along.clone()]);
    if !arr.transversal {
        return Err(Error::Transversality(arr.witness.unwrap_or_default()));
    }
    let lift = Lift::new(surface, curve);
    let n = lift.len();
    let mut hits: Vec<(usize, Q)> = arr.between(0, 1).iter().map(|&i| {
        let (k, tt) = arr.points[i].on(0).unwrap();
        (k, tt.clone())
    }).collect();
    if hits.is_empty() {
        return Ok(curve.clone().with_name(name));
    }
    hits.sort();
    let tl1 = t.x.abs() + t.y.abs();
    let mut moves: Vec<Pt> = Vec::new();
    let mut cur = lift.a[0].clone();
    let mut hi = 0usize;
    for k in 0..n {
        while hi < hits.len() && hits[hi].0 == k {
            let (_, tt) = &hits[hi];
            let d = &lift.d[k];
            let dt = det(d, &t);
            let eta = width * &tl1 / (rat::qi(2) * dt.abs());
            if &eta >= tt || &eta >= &(Q::one() - tt) {
                return Err(Error::Construction("collar wider than the crossing segment".into()));
            }
            let e = lift.at(k, &(tt - &eta));
            let x = lift.at(k, &(tt + &eta));
            let wrap = if dt.is_positive() { t.clone() } else { t.neg() };
            moves.push(e.sub(&cur));
            moves.push(x.add(&wrap).sub(&e));
            cur = x;
            hi += 1;
        }
        let end = lift.joint(k + 1);
        moves.push(end.sub(&cur));
        cur = end;
    }
    let moves: Vec<Pt> = moves.into_iter().filter(|m| !m.is_zero()).collect();
    PLCurve::from_moves(surface, name, &curve.seg(0).a, &moves, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{pi, pq};
    use crate::rat::{q, qi};

    fn torus() -> FlatSurface {
        FlatSurface::torus(qi(1), qi(1)).unwrap()
    }

    #[test]
    fn straight_loops() {
        let s = torus();
        let v = straight(&s, "V", &pq((1, 4), (1, 8)), &pi(0, 1)).unwrap();
        assert_eq!(v.homology_class(&s), vec![0, 1]);
        assert_eq!(v.holonomy(&s), q(1, 4));
    }

    #[test]
    fn twist_of_h_about_v() {
        let s = torus();
        let h = straight(&s, "H", &pq((1, 8), (1, 2)), &pi(1, 0)).unwrap();
        let v = straight(&s, "V", &pq((1, 2), (1, 8)), &pi(0, 1)).unwrap();
        let tw = dehn_twist(&s, &h, &v, &q(1, 8), "T").unwrap();
        assert_eq!(tw.homology_class(&s), vec![1, 1]);
        assert!(tw.self_crossings().is_empty());
        let far = straight(&s, "F", &pq((1, 8), (1, 2)), &pi(0, 1)).unwrap();
        let same = dehn_twist(&s, &far, &v, &q(1, 8), "F").unwrap();
        assert_eq!(same.segs(), far.segs());
    }

    #[test]
    fn pushoff_of_vertical() {
        let s = torus();
        let v = straight(&s, "V", &pq((1, 4), (1, 8)), &pi(0, 1)).unwrap();
        let h = straight(&s, "H", &pq((1, 8), (1, 2)), &pi(1, 0)).unwrap();
        let arr = Arrangement::new(&s, vec![v.clone(), h]);
        let p = hamiltonian_pushoff(&s, &arr, 0, &q(1, 64), &q(1, 256), "V'").unwrap();
        assert_eq!(p.holonomy(&s), v.holonomy(&s));
        assert_eq!(p.homology_class(&s), vec![0, 1]);
        let alone = Arrangement::new(&s, vec![v.clone()]);
        let p1 = hamiltonian_pushoff(&s, &alone, 0, &q(1, 64), &q(1, 256), "V'").unwrap();
        assert_eq!(p1.holonomy(&s), v.holonomy(&s));
    }

    #[test]
    fn resolution_of_v_and_h() {
        let s = torus();
        let h = straight(&s, "H", &pq((1, 8), (1, 8)), &pi(1, 0)).unwrap();
        let v = straight(&s, "V", &pq((1, 4), (1, 16)), &pi(0, 1)).unwrap();
        let arr = Arrangement::new(&s, vec![v.clone(), h.clone()]);
        let pt = arr.between(0, 1)[0];
        let (a, b) = if arr.degree_of(pt, 0, 1).unwrap() == 1 { (0, 1) } else { (1, 0) };
        let r = resolve_connect_sum(&s, &arr, a, b, pt, "R").unwrap();
        let c = &r.curve;
        assert_eq!(c.holonomy(&s), v.holonomy(&s) + h.holonomy(&s));
        assert_eq!(c.homology_class(&s), vec![1, 1]);
        assert_eq!(c.turning_number(), 0);
        assert!(c.self_crossings().is_empty());
        let all = Arrangement::new(&s, vec![v, h, c.clone()]);
        assert!(all.transversal);
    }
}
