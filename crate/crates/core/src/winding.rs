//! Integer fast path for the winding test on developed polygon boundaries.
//!
//! All points are rescaled to a common denominator; the answer is `None` whenever a product
//! overflows or a ray meets a polygon vertex, and the caller falls back to exact rationals.

use crate::deck::Tile;
use crate::polygons::Piece;
use crate::rat::Q;
use crate::surface::FlatSurface;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::cmp::Ordering;
use std::collections::HashMap;

type P = (i128, i128);

const LIMIT: i128 = 1 << 40;

fn mul(a: i128, b: i128) -> Option<i128> {
    a.checked_mul(b)
}

fn add(a: i128, b: i128) -> Option<i128> {
    a.checked_add(b)
}

fn sub(a: i128, b: i128) -> Option<i128> {
    a.checked_sub(b)
}

fn det(a: P, b: P) -> Option<i128> {
    sub(mul(a.0, b.1)?, mul(a.1, b.0)?)
}

fn dot(a: P, b: P) -> Option<i128> {
    add(mul(a.0, b.0)?, mul(a.1, b.1)?)
}

fn psub(a: P, b: P) -> Option<P> {
    Some((sub(a.0, b.0)?, sub(a.1, b.1)?))
}

fn pscale(a: P, k: i128) -> Option<P> {
    Some((mul(a.0, k)?, mul(a.1, k)?))
}

/// `n / d` with `d > 0`.
#[derive(Clone, Copy, Debug)]
struct Frac(i128, i128);

fn cmp_frac(a: Frac, b: Frac) -> Ordering {
    match (mul(a.0, b.1), mul(b.0, a.1)) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => (BigInt::from(a.0) * BigInt::from(b.1)).cmp(&(BigInt::from(b.0) * BigInt::from(a.1))),
    }
}

struct Scaled {
    segs: Vec<(P, P)>,
    tiles: Vec<usize>,
    /// per tile: developed offset and polygon vertices
    polys: Vec<Vec<P>>,
    tile_ix: HashMap<Tile, usize>,
    tile_of: Vec<Tile>,
}

fn lcm_denoms<'a>(qs: impl Iterator<Item = &'a Q>) -> Option<i128> {
    let mut d = BigInt::from(1);
    for q in qs {
        d = d.lcm(q.denom());
    }
    d.to_i128().filter(|&x| x < LIMIT)
}

fn scale(q: &Q, d: i128) -> Option<i128> {
    let v = (q * Q::from_integer(BigInt::from(d))).to_integer();
    v.to_i128().filter(|x| x.abs() < LIMIT)
}

fn prepare(surface: &FlatSurface, boundary: &[Piece]) -> Option<(Scaled, i128)> {
    let mut qs: Vec<&Q> = Vec::new();
    for p in boundary {
        qs.extend([&p.dev.0.x, &p.dev.0.y, &p.dev.1.x, &p.dev.1.y, &p.chart.0.x, &p.chart.0.y]);
    }
    for v in surface.vertices() {
        qs.extend([&v.x, &v.y]);
    }
    let d = lcm_denoms(qs.into_iter())?;
    let pt = |p: &crate::geom::Pt| -> Option<P> { Some((scale(&p.x, d)?, scale(&p.y, d)?)) };
    let mut segs = Vec::with_capacity(boundary.len());
    let mut tiles = Vec::with_capacity(boundary.len());
    let mut tile_ix: HashMap<Tile, usize> = HashMap::new();
    let mut tile_of: Vec<Tile> = Vec::new();
    let mut polys: Vec<Vec<P>> = Vec::new();
    let verts: Vec<P> = surface.vertices().iter().map(pt).collect::<Option<_>>()?;
    for p in boundary {
        segs.push((pt(&p.dev.0)?, pt(&p.dev.1)?));
        let ix = match tile_ix.get(&p.tile) {
            Some(&i) => i,
            None => {
                let off = psub(pt(&p.dev.0)?, pt(&p.chart.0)?)?;
                let poly = verts.iter().map(|v| Some((add(v.0, off.0)?, add(v.1, off.1)?))).collect::<Option<_>>()?;
                tile_ix.insert(p.tile.clone(), tile_of.len());
                tile_of.push(p.tile.clone());
                polys.push(poly);
                tile_of.len() - 1
            }
        };
        tiles.push(ix);
    }
    Some((Scaled { segs, tiles, polys, tile_ix, tile_of }, d))
}

enum Contact {
    None,
    Event(Frac),
    Overlap,
}

fn contact(a: P, b: P, c: P, e: P) -> Option<Contact> {
    let r = psub(b, a)?;
    let s = psub(e, c)?;
    let w = psub(c, a)?;
    let den = det(r, s)?;
    if den != 0 {
        let (mut t, mut u, mut dd) = (det(w, s)?, det(w, r)?, den);
        if dd < 0 {
            t = -t;
            u = -u;
            dd = -dd;
        }
        if t <= 0 || t >= dd || u < 0 || u > dd {
            return Some(Contact::None);
        }
        return Some(Contact::Event(Frac(t, dd)));
    }
    if det(w, r)? != 0 {
        return Some(Contact::None);
    }
    let rr = dot(r, r)?;
    let ta = dot(w, r)?;
    let tb = dot(psub(e, a)?, r)?;
    let (lo, hi) = (ta.min(tb).max(0), ta.max(tb).min(rr));
    if lo < hi {
        return Some(Contact::Overlap);
    }
    for t in [ta, tb] {
        if t > 0 && t < rr {
            return Some(Contact::Event(Frac(t, rr)));
        }
    }
    Some(Contact::None)
}

/// Ray from the homogeneous point `m / q` in direction `rr`.
struct Ray {
    m: P,
    q: i128,
    rr: P,
}

impl Ray {
    fn side(&self, z: P) -> Option<i128> {
        det(self.rr, psub(pscale(z, self.q)?, self.m)?)
    }

    /// Crossing of `z1 z2` with the ray line under the half-open rule: `(±1, q·u)`.
    fn cross(&self, z1: P, z2: P) -> Option<Option<(i64, Frac)>> {
        let (v1, v2) = (self.side(z1)?, self.side(z2)?);
        let up = v1 <= 0 && v2 > 0;
        let down = v2 <= 0 && v1 > 0;
        if !(up || down) {
            return Some(None);
        }
        let d = sub(v1, v2)?;
        let a = dot(self.rr, psub(pscale(z1, self.q)?, self.m)?)?;
        let b = dot(self.rr, pscale(psub(z2, z1)?, self.q)?)?;
        let mut n = add(mul(a, d)?, mul(v1, b)?)?;
        let mut dd = d;
        if dd < 0 {
            n = -n;
            dd = -dd;
        }
        Some(Some((if up { 1 } else { -1 }, Frac(n, dd))))
    }
}

/// `Some(true)` iff no region right of a boundary piece has negative winding.
pub fn immersed(surface: &FlatSurface, boundary: &[Piece]) -> Option<bool> {
    let (sc, _) = prepare(surface, boundary)?;
    let abelian = surface.abelian_deck();
    let n = sc.segs.len();
    let mut by_tile: Vec<Vec<usize>> = vec![Vec::new(); sc.tile_of.len()];
    for i in 0..n {
        by_tile[if abelian { 0 } else { sc.tiles[i] }].push(i);
    }
    for i in 0..n {
        let (a, b) = sc.segs[i];
        let group = &by_tile[if abelian { 0 } else { sc.tiles[i] }];
        let mut ev: Vec<Frac> = vec![Frac(0, 1), Frac(1, 1)];
        for &j in group {
            if j == i {
                continue;
            }
            let (c, e) = sc.segs[j];
            match contact(a, b, c, e)? {
                Contact::None => {}
                Contact::Overlap => return Some(false),
                Contact::Event(f) => ev.push(f),
            }
        }
        ev.sort_by(|x, y| cmp_frac(*x, *y));
        ev.dedup_by(|x, y| cmp_frac(*x, *y) == Ordering::Equal);
        let r = psub(b, a)?;
        let rr = (r.1, -r.0);
        for w in ev.windows(2) {
            let (p, q) = (add(w[0].0, w[1].0)?, add(w[0].1, w[1].1)?);
            let m = add2(pscale(a, q)?, pscale(r, p)?)?;
            let ray = Ray { m, q, rr };
            let wnd = if abelian {
                let mut s = 0i64;
                for &j in group {
                    if j == i {
                        continue;
                    }
                    if let Some((sg, u)) = ray.cross(sc.segs[j].0, sc.segs[j].1)? {
                        if u.0 > 0 {
                            s += sg;
                        }
                    }
                }
                s
            } else {
                tile_walk(surface, &sc, &by_tile, i, &ray)?
            };
            if wnd < 0 {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn add2(a: P, b: P) -> Option<P> {
    Some((add(a.0, b.0)?, add(a.1, b.1)?))
}

/// Follows the ray through the tiles of the cover until it leaves the tiles the loop visits.
fn tile_walk(surface: &FlatSurface, sc: &Scaled, by_tile: &[Vec<usize>], start: usize, ray: &Ray) -> Option<i64> {
    let ne = surface.n_edges();
    let mut tile = sc.tile_of[sc.tiles[start]].clone();
    let mut lo: Option<Frac> = None;
    let mut total = 0i64;
    for _ in 0..4 * sc.tile_of.len() + 4 {
        let Some(&t) = sc.tile_ix.get(&tile) else { return Some(total) };
        let poly = &sc.polys[t];
        let mut exit: Option<(Frac, usize)> = None;
        for e in 0..ne {
            let (pa, pb) = (poly[e], poly[(e + 1) % ne]);
            let (va, vb) = (ray.side(pa)?, ray.side(pb)?);
            if va == 0 || vb == 0 {
                let z = if va == 0 { pa } else { pb };
                let u = dot(ray.rr, psub(pscale(z, ray.q)?, ray.m)?)?;
                let ahead = match lo {
                    None => u > 0,
                    Some(l) => cmp_frac(Frac(u, 1), l) == Ordering::Greater,
                };
                if ahead {
                    return None;
                }
                continue;
            }
            if (va > 0) == (vb > 0) {
                continue;
            }
            let (_, u) = ray.cross(pa, pb)?.expect("strict sign change");
            let ahead = match lo {
                None => u.0 > 0,
                Some(l) => cmp_frac(u, l) == Ordering::Greater,
            };
            if ahead && exit.map_or(true, |(x, _)| cmp_frac(u, x) == Ordering::Less) {
                exit = Some((u, e));
            }
        }
        let (ux, e) = exit?;
        for &j in &by_tile[t] {
            if j == start {
                continue;
            }
            if let Some((sg, u)) = ray.cross(sc.segs[j].0, sc.segs[j].1)? {
                let after_lo = match lo {
                    None => u.0 > 0,
                    Some(l) => cmp_frac(u, l) != Ordering::Less,
                };
                if after_lo && cmp_frac(u, ux) != Ordering::Greater {
                    total += sg;
                }
            }
        }
        let Some(link) = surface.link(e) else { return Some(total) };
        tile.apply(link.gen);
        lo = Some(ux);
    }
    None
}
