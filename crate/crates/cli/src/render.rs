//! Diagnostic SVG: the fundamental polygon, curves in chart coordinates, intersection points, and
//! polygon domains shaded by multiplicity.

use flatfuk_core::arrangement::Arrangement;
use flatfuk_core::faces::Faces;
use flatfuk_core::polygons::ImmersedPolygon;
use flatfuk_core::surface::FlatSurface;
use flatfuk_core::Pt;
use num_traits::ToPrimitive;
use std::fmt::Write;

const SIZE: f64 = 480.0;
const PAD: f64 = 20.0;
const COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

struct View {
    x0: f64,
    y1: f64,
    k: f64,
}

impl View {
    fn p(&self, p: &Pt) -> (f64, f64) {
        let x = p.x.to_f64().unwrap_or(0.0);
        let y = p.y.to_f64().unwrap_or(0.0);
        (PAD + (x - self.x0) * self.k, PAD + (self.y1 - y) * self.k)
    }
}

pub fn svg(surface: &FlatSurface, arr: &Arrangement, shade: Option<(&Faces, &[ImmersedPolygon])>) -> String {
    let vs = surface.vertices();
    let xs: Vec<f64> = vs.iter().map(|v| v.x.to_f64().unwrap_or(0.0)).collect();
    let ys: Vec<f64> = vs.iter().map(|v| v.y.to_f64().unwrap_or(0.0)).collect();
    let (x0, x1) = (xs.iter().cloned().fold(f64::MAX, f64::min), xs.iter().cloned().fold(f64::MIN, f64::max));
    let (y0, y1) = (ys.iter().cloned().fold(f64::MAX, f64::min), ys.iter().cloned().fold(f64::MIN, f64::max));
    let k = SIZE / (x1 - x0).max(y1 - y0);
    let view = View { x0, y1, k };
    let w = (x1 - x0) * k + 2.0 * PAD;
    let h = (y1 - y0) * k + 2.0 * PAD;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#);
    let poly: Vec<String> = vs.iter().map(|v| view.p(v)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(s, r##"<polygon points="{}" fill="#fafafa" stroke="#444" stroke-width="1.5"/>"##, poly.join(" "));
    if let Some((faces, polys)) = shade {
        let mut mult = vec![0i64; faces.faces.len()];
        for u in polys {
            for (m, d) in mult.iter_mut().zip(u.domain(surface, faces)) {
                *m += d;
            }
        }
        let top = mult.iter().cloned().max().unwrap_or(0).max(1) as f64;
        for cf in &faces.charts {
            let m = mult[cf.face];
            if m <= 0 {
                continue;
            }
            let mut d = String::new();
            for ring in std::iter::once(&cf.outer).chain(cf.holes.iter()) {
                for (i, p) in ring.iter().enumerate() {
                    let (x, y) = view.p(p);
                    let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
                }
                d.push_str("Z ");
            }
            let a = 0.15 + 0.6 * (m as f64) / top;
            let _ = writeln!(s, r##"<path d="{}" fill="#f5b041" fill-opacity="{a:.2}" fill-rule="evenodd"><title>multiplicity {m}</title></path>"##, d.trim_end());
        }
    }
    for (i, c) in arr.curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        for seg in c.segs() {
            let (ax, ay) = view.p(&seg.a);
            let (bx, by) = view.p(&seg.b);
            let _ = writeln!(s, r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="{color}" stroke-width="2"/>"#);
        }
        let mid = c.seg(0).a.mid(&c.seg(0).b);
        let (mx, my) = view.p(&mid);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{color}">{}</text>"#, mx + 4.0, my - 4.0, escape(&c.name));
        let (px, py) = view.p(c.marked_point());
        let _ = writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="6" height="6" fill="{color}"/>"#, px - 3.0, py - 3.0);
    }
    for p in &arr.points {
        let (x, y) = view.p(&p.at);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"><title>{} {}</title></circle>"#, p.id, p.at);
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
