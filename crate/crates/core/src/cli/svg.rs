//! Minimal SVG figures. Each builder returns the document and a JSON twin
//! holding every plotted primitive.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::amoeba::{AmoebaRaster, ChamberLabeling};
use crate::fibration::SYZBase2D;
use crate::rational;
use crate::subdivision::{DualTropicalCurve, RegularSubdivision};

const SIZE: f64 = 600.0;
const PAD: f64 = 30.0;

/// Canvas over a data box with y pointing up.
struct Canvas {
    bbox: [f64; 4],
    scale: f64,
    body: String,
    twin: Vec<Value>,
}

impl Canvas {
    fn new(bbox: [f64; 4]) -> Self {
        let w = (bbox[1] - bbox[0]).max(1e-9);
        let h = (bbox[3] - bbox[2]).max(1e-9);
        Self {
            bbox,
            scale: (SIZE - 2.0 * PAD) / w.max(h),
            body: String::new(),
            twin: Vec::new(),
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            PAD + (p[0] - self.bbox[0]) * self.scale,
            PAD + (self.bbox[3] - p[1]) * self.scale,
        )
    }

    fn line(&mut self, a: [f64; 2], b: [f64; 2], class: &str) {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
        self.twin.push(json!({"kind": "line", "class": class, "from": a, "to": b}));
    }

    fn dot(&mut self, p: [f64; 2], class: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="4"/>"#);
        self.twin.push(json!({"kind": "point", "class": class, "at": p}));
    }

    fn text(&mut self, p: [f64; 2], s: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, r#"<text x="{:.3}" y="{:.3}">{s}</text>"#, x + 5.0, y - 5.0);
        self.twin.push(json!({"kind": "label", "at": p, "text": s}));
    }

    /// Axis-aligned cell `[x0, x1] × [y0, y1]`; omitted from the twin (the raster is there).
    fn cell(&mut self, x0: f64, x1: f64, y0: f64, y1: f64) {
        let (a, b) = self.map([x0, y1]);
        let w = (x1 - x0) * self.scale;
        let h = (y1 - y0) * self.scale;
        let _ = writeln!(
            self.body,
            r#"<rect class="amoeba" x="{a:.3}" y="{b:.3}" width="{w:.3}" height="{h:.3}"/>"#
        );
    }

    fn finish(self, title: &str, extra: Value) -> (String, Value) {
        let style = "line{stroke:#222;stroke-width:1.5}line.wall{stroke:#b22;stroke-dasharray:6 4}\
                     line.leg{stroke:#236}line.edge{stroke:#236;stroke-width:2.5}\
                     circle{fill:#222}circle.disc{fill:#b22}rect.amoeba{fill:#9ab;stroke:none}\
                     text{font:12px sans-serif}";
        let doc = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\">\n\
             <title>{title}</title>\n<style>{style}</style>\n{}</svg>\n",
            self.body
        );
        let twin = json!({
            "title": title,
            "bbox": self.bbox,
            "primitives": self.twin,
            "data": extra,
        });
        (doc, twin)
    }
}

fn pt(v: &[i64]) -> [f64; 2] {
    [v[0] as f64, v[1] as f64]
}

pub fn subdivision(s: &RegularSubdivision) -> (String, Value) {
    let pts = s.points();
    if s.dim() == 1 {
        let xs: Vec<f64> = pts.iter().map(|p| p[0] as f64).collect();
        let (lo, hi) = xs.iter().fold((0.0f64, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        let mut c = Canvas::new([lo - 1.0, hi + 1.0, -1.0, 1.0]);
        for cell in s.cells() {
            let a = [pts[cell.boundary[0]][0] as f64, 0.0];
            let b = [pts[cell.boundary[cell.boundary.len() - 1]][0] as f64, 0.0];
            c.line(a, b, "cell");
        }
        for p in pts {
            c.dot([p[0] as f64, 0.0], "point");
            if let Some(h) = s.lifting().get(p) {
                c.text([p[0] as f64, 0.0], &h.to_string());
            }
        }
        return c.finish("regular subdivision", s.to_json());
    }
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in pts {
        x0 = x0.min(p[0] as f64);
        x1 = x1.max(p[0] as f64);
        y0 = y0.min(p[1] as f64);
        y1 = y1.max(p[1] as f64);
    }
    let mut c = Canvas::new([x0 - 1.0, x1 + 1.0, y0 - 1.0, y1 + 1.0]);
    for cell in s.cells() {
        let n = cell.boundary.len();
        for k in 0..n {
            c.line(pt(&pts[cell.boundary[k]]), pt(&pts[cell.boundary[(k + 1) % n]]), "cell");
        }
    }
    for p in s.used_points() {
        c.dot(pt(&pts[p]), "point");
    }
    c.finish("regular subdivision", s.to_json())
}

pub fn base_2d(base: &SYZBase2D) -> (String, Value) {
    let (lo, hi) = match (base.walls.first(), base.walls.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => (0.0, 0.0),
    };
    let mut c = Canvas::new([lo - 2.0, hi + 2.0, -2.0, 2.0]);
    c.line([lo - 2.0, 0.0], [hi + 2.0, 0.0], "axis");
    for (i, s) in base.walls.iter().enumerate() {
        c.line([*s, -2.0], [*s, 2.0], "wall");
        c.dot([*s, 0.0], "disc");
        c.text([*s, 0.0], &format!("s{}", i + 1));
    }
    for ch in &base.chambers {
        let x = match (ch.lower, ch.upper) {
            (Some(a), Some(b)) => 0.5 * (a + b),
            (None, Some(b)) => b - 1.0,
            (Some(a), None) => a + 1.0,
            (None, None) => 0.0,
        };
        c.text([x, 1.5], &format!("U{}", ch.index));
    }
    c.finish("SYZ base (log|z|, moment)", base.report())
}

fn curve_overlay(c: &mut Canvas, curve: &DualTropicalCurve, reach: f64) {
    let v = curve.vertex_points_f64();
    for e in &curve.bounded_edges {
        c.line(v[e.cells.0], v[e.cells.1], "edge");
    }
    for leg in &curve.legs {
        let b = [rational::to_f64(&leg.base[0]), rational::to_f64(&leg.base[1])];
        let d = [leg.direction[0] as f64, leg.direction[1] as f64];
        let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
        c.line(b, [b[0] + reach * d[0] / n, b[1] + reach * d[1] / n], "leg");
    }
    for p in v {
        c.dot(p, "vertex");
    }
}

pub fn amoeba(raster: &AmoebaRaster, labels: Option<&ChamberLabeling>, curve: Option<&DualTropicalCurve>) -> (String, Value) {
    let mut c = Canvas::new(raster.bbox);
    let [hx, hy] = raster.pixel_size();
    for iy in 0..raster.resolution {
        for ix in 0..raster.resolution {
            if raster.flag(ix, iy) {
                let x0 = raster.bbox[0] + ix as f64 * hx;
                let y0 = raster.bbox[2] + iy as f64 * hy;
                c.cell(x0, x0 + hx, y0, y0 + hy);
            }
        }
    }
    if let Some(curve) = curve {
        let reach = (raster.bbox[1] - raster.bbox[0]).max(raster.bbox[3] - raster.bbox[2]);
        curve_overlay(&mut c, curve, reach);
    }
    if let Some(l) = labels {
        for ch in &l.chambers {
            let s: Vec<String> = ch.label.iter().map(i64::to_string).collect();
            c.text(ch.representative, &format!("({})", s.join(",")));
        }
    }
    let data = json!({
        "bbox": raster.bbox,
        "resolution": raster.resolution,
        "rows": raster.rows(),
        "chambers": labels.map(|l| json!(l.chambers)),
        "curve": curve.map(|cv| json!(cv)),
    });
    c.finish("amoeba", data)
}
