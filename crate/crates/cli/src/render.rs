//! Deterministic SVG rendering of planar (d = 2) partitions: an affine view
//! clipped to a window, and an orthographic view of the upper hemisphere on
//! the unit disk. Rendering converts exact coordinates to floating point at
//! the very end and never feeds anything back into the geometry.

use convpart_core::arrangement::Partition;
use convpart_core::exactgeom::HVector;
use convpart_core::faces::FacePoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View {
    Affine,
    Hemisphere,
}

const SIZE: f64 = 600.0;
const ARC_STEPS: usize = 96;

fn unit(v: &[f64]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn fmt(x: f64) -> String {
    format!("{x:.3}")
}

/// Sampled unit points along the shorter great-circle arc from a to b.
fn sample_arc(a: [f64; 3], b: [f64; 3]) -> Vec<[f64; 3]> {
    (0..=ARC_STEPS)
        .map(|k| {
            let t = k as f64 / ARC_STEPS as f64;
            unit(&[
                (1.0 - t) * a[0] + t * b[0],
                (1.0 - t) * a[1] + t * b[1],
                (1.0 - t) * a[2] + t * b[2],
            ])
        })
        .collect()
}

/// The 1-face arcs of the poset as generator pairs.
fn face_arcs(poset: &FacePoset) -> Vec<([f64; 3], [f64; 3])> {
    let mut arcs = Vec::new();
    for (_, f) in poset.faces() {
        if f.dim != 1 {
            continue;
        }
        if f.cone.is_linear_subspace().unwrap_or(false) {
            // The full equator circle; the hemisphere rim already shows it.
            continue;
        }
        let gens: Vec<HVector> = match f.cone.generators() {
            Ok(g) => g,
            Err(_) => continue,
        };
        let units: Vec<[f64; 3]> = gens.iter().map(|g| unit(&g.to_f64())).collect();
        match f.cone.lineality_dim() {
            Ok(1) => {
                // A half great circle: split at the interior generator.
                if let (Some(l), Some(w)) = (
                    units.first().copied(),
                    units.get(2).copied(),
                ) {
                    arcs.push((l, w));
                    arcs.push((w, [-l[0], -l[1], -l[2]]));
                }
            }
            _ => {
                if units.len() >= 2 {
                    arcs.push((units[0], units[1]));
                }
            }
        }
    }
    arcs
}

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Self {
        let mut body = String::new();
        body.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
            SIZE as i64
        ));
        body.push_str(&format!(
            "<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
            SIZE as i64
        ));
        Svg { body }
    }

    fn polyline(&mut self, pts: &[(f64, f64)]) {
        if pts.len() < 2 {
            return;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y)))
            .collect();
        self.body.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
            coords.join(" ")
        ));
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>\n",
            fmt(x),
            fmt(y),
            fmt(r)
        ));
    }

    fn ring(&mut self, x: f64, y: f64, r: f64) {
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
            fmt(x),
            fmt(y),
            fmt(r)
        ));
    }

    fn label(&mut self, x: f64, y: f64, text: &str) {
        self.body.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\">{text}</text>\n",
            fmt(x),
            fmt(y)
        ));
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Renders a d = 2 partition.
pub fn render(p: &Partition, poset: &FacePoset, view: View, window: f64) -> String {
    match view {
        View::Affine => render_affine(p, poset, window),
        View::Hemisphere => render_hemisphere(p, poset),
    }
}

fn render_affine(p: &Partition, poset: &FacePoset, window: f64) -> String {
    let to_screen = |x: f64, y: f64| {
        (
            SIZE / 2.0 + (x / window) * (SIZE / 2.0 - 20.0),
            SIZE / 2.0 - (y / window) * (SIZE / 2.0 - 20.0),
        )
    };
    let mut svg = Svg::new();
    for (a, b) in face_arcs(poset) {
        let mut run: Vec<(f64, f64)> = Vec::new();
        for u in sample_arc(a, b) {
            let visible = u[0] > 1e-7 && {
                let (x, y) = (u[1] / u[0], u[2] / u[0]);
                x.abs() <= window && y.abs() <= window
            };
            if visible {
                let (x, y) = (u[1] / u[0], u[2] / u[0]);
                run.push(to_screen(x, y));
            } else {
                svg.polyline(&run);
                run.clear();
            }
        }
        svg.polyline(&run);
    }
    // Interior vertices.
    for (_, f) in poset.faces() {
        if f.dim == 0 && !f.at_infinity {
            if let Ok(v) = f.cone.relint_point() {
                let c = v.to_f64();
                if c[0] > 0.0 {
                    let (x, y) = to_screen(c[1] / c[0], c[2] / c[0]);
                    svg.circle(x, y, 4.0, "black");
                }
            }
        }
    }
    // Region labels.
    for i in p.nonempty_labels() {
        if let Ok(v) = p.region(i).unwrap().relint_point() {
            let c = v.to_f64();
            if c[0] > 1e-7 {
                let (mut x, mut y) = (c[1] / c[0], c[2] / c[0]);
                x = x.clamp(-window * 0.9, window * 0.9);
                y = y.clamp(-window * 0.9, window * 0.9);
                let (sx, sy) = to_screen(x, y);
                svg.label(sx, sy, &format!("P{i}"));
            }
        }
    }
    svg.finish()
}

fn render_hemisphere(p: &Partition, poset: &FacePoset) -> String {
    let radius = SIZE / 2.0 - 20.0;
    let to_screen = |u1: f64, u2: f64| (SIZE / 2.0 + u1 * radius, SIZE / 2.0 - u2 * radius);
    let mut svg = Svg::new();
    // The equator rim.
    svg.ring(SIZE / 2.0, SIZE / 2.0, radius);
    for (a, b) in face_arcs(poset) {
        let mut run: Vec<(f64, f64)> = Vec::new();
        for u in sample_arc(a, b) {
            if u[0] >= -1e-9 {
                run.push(to_screen(u[1], u[2]));
            } else {
                svg.polyline(&run);
                run.clear();
            }
        }
        svg.polyline(&run);
    }
    // All vertices, including the points at infinity on the rim.
    for (_, f) in poset.faces() {
        if f.dim == 0 {
            if let Ok(v) = f.cone.relint_point() {
                let u = unit(&v.to_f64());
                let (x, y) = to_screen(u[1], u[2]);
                svg.circle(x, y, 4.0, "black");
            }
        }
    }
    for i in p.nonempty_labels() {
        if let Ok(v) = p.region(i).unwrap().relint_point() {
            let u = unit(&v.to_f64());
            let (x, y) = to_screen(u[1] * 0.85, u[2] * 0.85);
            svg.label(x, y, &format!("P{i}"));
        }
    }
    svg.finish()
}
