//! Point-set files (JSON), OFF meshes and SVG drawings.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::geom::{PointSet, Space, Tolerance, Vec3};
use crate::graph::{EdgeColor, GeoGraph};
use crate::spherical::Tiling;

/// Optional per-file tolerance overrides; unset fields keep their defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concyclic_eps: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, mut tol: Tolerance) -> Tolerance {
        if let Some(v) = self.boundary_eps {
            tol.boundary_eps = v;
        }
        if let Some(v) = self.unit_norm {
            tol.unit_norm = v;
        }
        if let Some(v) = self.concyclic_eps {
            tol.concyclic_eps = v;
        }
        tol
    }
}

/// On-disk form of a point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub space: Space,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceOverrides>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub meta: serde_json::Value,
}

impl PointSetFile {
    pub fn from_point_set(v: &PointSet, meta: serde_json::Value) -> Self {
        let dim = v.space().dimension();
        PointSetFile {
            space: v.space(),
            points: v.points().iter().map(|p| p.to_array()[..dim].to_vec()).collect(),
            tolerance: None,
            meta,
        }
    }

    /// Validates the payload; `base` is the tolerance before file overrides.
    pub fn to_point_set(&self, base: Tolerance) -> Result<PointSet> {
        let dim = self.space.dimension();
        let mut pts = Vec::with_capacity(self.points.len());
        for (index, p) in self.points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidPoint {
                    index,
                    reason: format!("expected {dim} coordinates, got {}", p.len()),
                });
            }
            pts.push(if dim == 2 { Vec3::planar(p[0], p[1]) } else { Vec3::new(p[0], p[1], p[2]) });
        }
        let tol = self.tolerance.unwrap_or_default().apply(base);
        PointSet::new(self.space, pts, tol)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    let text = e.to_string();
    let message = match text.rfind(" at line ") {
        Some(cut) => text[..cut].to_string(),
        None => text,
    };
    Error::ParseAt {
        line: e.line(),
        column: e.column(),
        message,
    }
}

/// Parses a point-set file and builds the validated set.
pub fn read_point_set(text: &str, base: Tolerance) -> Result<PointSet> {
    PointSetFile::parse(text)?.to_point_set(base)
}

/// Pretty JSON whose floats carry 17 significant digits.
struct FullPrecision<'a>(PrettyFormatter<'a>);

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes any value as indented JSON with round-trip float precision.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory JSON serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// OFF mesh of the tiling: its vertices and face cycles.
pub fn tiling_to_off(t: &Tiling) -> String {
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} {}", t.vertices.len(), t.faces.len(), t.edges.len());
    for p in t.vertices.points() {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.z);
    }
    for f in &t.faces {
        let _ = write!(out, "{}", f.len());
        for i in f {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}

const SVG_SIZE: f64 = 600.0;
const SVG_MARGIN: f64 = 30.0;
const RED: &str = "#c0392b";
const BLUE: &str = "#2155a5";

/// Map from drawing coordinates to the SVG canvas.
struct Canvas {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Canvas {
    fn fit(pts: &[(f64, f64)]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0);
        let scale = if span > 0.0 { (SVG_SIZE - 2.0 * SVG_MARGIN) / span } else { 1.0 };
        Canvas {
            cx: (x0 + x1) / 2.0,
            cy: (y0 + y1) / 2.0,
            scale,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        // flip y so the drawing keeps the usual orientation
        (
            SVG_SIZE / 2.0 + (x - self.cx) * self.scale,
            SVG_SIZE / 2.0 - (y - self.cy) * self.scale,
        )
    }
}

/// Points along the minor arc from `a` to `b`.
fn arc_samples(a: Vec3, b: Vec3, steps: usize) -> Vec<Vec3> {
    let omega = a.dot(b).clamp(-1.0, 1.0).acos();
    if omega < 1e-12 {
        return vec![a, b];
    }
    (0..=steps)
        .map(|s| {
            let t = s as f64 / steps as f64;
            (a * ((1.0 - t) * omega).sin() + b * (t * omega).sin()) / omega.sin()
        })
        .collect()
}

/// Draws `g` on `v`. Planar and R³ sets are drawn in the xy-plane; sphere
/// sets by orthographic projection along z, with edges as sampled arcs and
/// far-side vertices hollow. Coloured edges follow the red-dashed /
/// blue-solid convention; every edge is one element with `class="edge"`.
pub fn graph_to_svg(v: &PointSet, g: &GeoGraph) -> String {
    let project = |p: Vec3| (p.x, p.y);
    let sphere = v.space() == Space::Sphere;
    let mut frame: Vec<(f64, f64)> = v.points().iter().map(|&p| project(p)).collect();
    if sphere {
        frame.extend((0..4).map(|q| {
            let a = q as f64 * PI / 2.0;
            (a.cos(), a.sin())
        }));
    }
    let canvas = Canvas::fit(&frame);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SVG_SIZE
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if sphere {
        let (cx, cy) = canvas.map((0.0, 0.0));
        let _ = writeln!(
            out,
            r##"<circle class="outline" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="#999999"/>"##,
            canvas.scale
        );
    }
    let colors = g.colors();
    for (idx, &(a, b)) in g.edges().iter().enumerate() {
        let (stroke, dash, tag) = match colors.map(|c| c[idx]) {
            Some(EdgeColor::Red) => (RED, r#" stroke-dasharray="8 5""#, " red"),
            Some(EdgeColor::Blue) => (BLUE, "", " blue"),
            None => ("#222222", "", ""),
        };
        let path: Vec<(f64, f64)> = if sphere {
            arc_samples(v.point(a), v.point(b), 32).into_iter().map(|p| canvas.map(project(p))).collect()
        } else {
            vec![canvas.map(project(v.point(a))), canvas.map(project(v.point(b)))]
        };
        let mut d = String::new();
        for (k, (x, y)) in path.iter().enumerate() {
            let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
        }
        let _ = writeln!(
            out,
            r#"<path class="edge{tag}" data-u="{a}" data-v="{b}" d="{}" fill="none" stroke="{stroke}" stroke-width="2"{dash}/>"#,
            d.trim_end()
        );
    }
    for (i, &p) in v.points().iter().enumerate() {
        let (x, y) = canvas.map(project(p));
        let fill = if sphere && p.z < 0.0 { "white" } else { "black" };
        let _ = writeln!(
            out,
            r#"<circle class="vertex" data-i="{i}" cx="{x:.3}" cy="{y:.3}" r="4" fill="{fill}" stroke="black"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Number of edge elements in an SVG produced by [`graph_to_svg`].
pub fn svg_edge_count(svg: &str) -> usize {
    svg.matches(r#"class="edge"#).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::double_normal::{double_normal_graph, red_blue_decomposition, DnMode};
    use crate::spherical::delaunay_tiling;

    #[test]
    fn round_trip_is_exact() {
        for v in [
            constructions::regular_polygon(7).unwrap(),
            constructions::rhombicuboctahedron_vertices(),
            constructions::five_point_strict(),
        ] {
            let text = PointSetFile::from_point_set(&v, serde_json::Value::Null).to_json();
            let back = read_point_set(&text, Tolerance::default()).unwrap();
            assert_eq!(back.points(), v.points());
        }
    }

    #[test]
    fn seventeen_digits() {
        let text = to_json_string(&vec![0.1f64, -2.5]);
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
        assert!(text.contains("-2.5000000000000000e0"), "{text}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = PointSetFile::parse("{\n  \"space\": \"plane\",\n  \"points\": [[0, 1],, ]\n}").unwrap_err();
        match err {
            Error::ParseAt { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(PointSetFile::parse(r#"{"space": "torus", "points": []}"#), Err(Error::ParseAt { .. })));
        assert!(matches!(PointSetFile::parse(r#"{"space": "plane", "pts": []}"#), Err(Error::ParseAt { .. })));
    }

    #[test]
    fn schema_checks() {
        let f = PointSetFile::parse(r#"{"space": "plane", "points": [[0, 0], [1, 0, 2]]}"#).unwrap();
        assert!(matches!(f.to_point_set(Tolerance::default()), Err(Error::InvalidPoint { index: 1, .. })));
        let f = PointSetFile::parse(
            r#"{"space": "plane", "points": [[0, 0], [1, 0]], "tolerance": {"boundary_eps": 1e-6}, "meta": {"k": 1}}"#,
        )
        .unwrap();
        assert_eq!(f.to_point_set(Tolerance::default()).unwrap().tol().boundary_eps, 1e-6);
        assert_eq!(f.meta["k"], 1);
    }

    #[test]
    fn off_counts() {
        let t = delaunay_tiling(&constructions::cube_vertices()).unwrap();
        let off = tiling_to_off(&t);
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("8 6 12"));
        assert_eq!(off.lines().filter(|l| l.starts_with("4 ")).count(), 6);
    }

    #[test]
    fn svg_octagon_colours() {
        let v = constructions::regular_polygon(8).unwrap();
        let g = double_normal_graph(&v, DnMode::Weak).unwrap();
        let colored = red_blue_decomposition(&v, &g).unwrap().colored(&g);
        let svg = graph_to_svg(&v, &colored);
        assert_eq!(svg_edge_count(&svg), 12);
        assert_eq!(svg.matches("stroke-dasharray").count(), 8);
        assert_eq!(svg.matches(r#"class="edge blue""#).count(), 4);
    }

    #[test]
    fn svg_sphere_edges() {
        let v = constructions::cube_vertices();
        let g = double_normal_graph(&v, DnMode::Weak).unwrap();
        assert_eq!(svg_edge_count(&graph_to_svg(&v, &g)), g.edge_count());
    }
}
