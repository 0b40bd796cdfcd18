//! Minimal SVG 1.1 emitter for curves, punctures and plumbing chains.
//! Rendering is a convenience view of inputs, not a measurement surface.

use milnorkit_core::quotient::PlumbingGraph;
use milnorkit_core::Point64;

#[derive(Debug, Clone)]
enum Layer {
    Curve(Vec<Point64>),
    Punctures(Vec<Point64>),
    Plumbing(Vec<i64>),
}

/// Scene accumulating layers in base-plane coordinates; `to_svg` fits them
/// into the pixel canvas.
#[derive(Debug)]
pub struct SvgScene {
    width: u32,
    height: u32,
    layers: Vec<Layer>,
}

impl SvgScene {
    pub fn new(width: u32, height: u32) -> Self {
        SvgScene {
            width,
            height,
            layers: Vec::new(),
        }
    }

    pub fn add_curve(&mut self, points: &[Point64]) {
        self.layers.push(Layer::Curve(points.to_vec()));
    }

    pub fn add_punctures(&mut self, points: &[Point64]) {
        self.layers.push(Layer::Punctures(points.to_vec()));
    }

    pub fn add_plumbing(&mut self, graph: &PlumbingGraph) {
        self.layers.push(Layer::Plumbing(graph.euler_numbers().to_vec()));
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        let mut feed = |x: f64, y: f64| {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        };
        for layer in &self.layers {
            match layer {
                Layer::Curve(pts) | Layer::Punctures(pts) => {
                    for p in pts {
                        feed(p.re, p.im);
                    }
                }
                Layer::Plumbing(chain) => {
                    feed(-1.0, -1.0);
                    feed(chain.len() as f64 * 2.0, 1.0);
                }
            }
        }
        if min_x > max_x {
            (-1.0, 1.0, -1.0, 1.0)
        } else {
            (min_x, max_x, min_y, max_y)
        }
    }

    /// Serialises the scene as an SVG 1.1 document.
    pub fn to_svg(&self) -> String {
        let (min_x, max_x, min_y, max_y) = self.bounds();
        let margin = 0.08 * ((max_x - min_x).max(max_y - min_y)).max(1e-9);
        let (min_x, max_x) = (min_x - margin, max_x + margin);
        let (min_y, max_y) = (min_y - margin, max_y + margin);
        let sx = self.width as f64 / (max_x - min_x);
        let sy = self.height as f64 / (max_y - min_y);
        let scale = sx.min(sy);
        // Flip the y axis so the mathematical orientation reads correctly.
        let map = |p: (f64, f64)| -> (f64, f64) {
            ((p.0 - min_x) * scale, (max_y - p.1) * scale)
        };
        let mut body = String::new();
        for layer in &self.layers {
            match layer {
                Layer::Curve(pts) => {
                    let mut attr = String::new();
                    for (i, p) in pts.iter().enumerate() {
                        let (x, y) = map((p.re, p.im));
                        if i > 0 {
                            attr.push(' ');
                        }
                        attr.push_str(&format!("{x:.3},{y:.3}"));
                    }
                    body.push_str(&format!(
                        "  <polygon class=\"curve\" points=\"{attr}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n"
                    ));
                }
                Layer::Punctures(pts) => {
                    for p in pts {
                        let (x, y) = map((p.re, p.im));
                        body.push_str(&format!(
                            "  <circle class=\"puncture\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"#d62728\"/>\n"
                        ));
                    }
                }
                Layer::Plumbing(chain) => {
                    for (i, e) in chain.iter().enumerate() {
                        let (x, y) = map((i as f64 * 2.0, 0.0));
                        if i > 0 {
                            let (px, py) = map(((i as f64 - 1.0) * 2.0, 0.0));
                            body.push_str(&format!(
                                "  <line class=\"plumbing-edge\" x1=\"{px:.3}\" y1=\"{py:.3}\" x2=\"{x:.3}\" y2=\"{y:.3}\" stroke=\"#2ca02c\" stroke-width=\"1.5\"/>\n"
                            ));
                        }
                        body.push_str(&format!(
                            "  <circle class=\"plumbing-vertex\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"6\" fill=\"#2ca02c\"/>\n"
                        ));
                        body.push_str(&format!(
                            "  <text class=\"plumbing-label\" x=\"{x:.3}\" y=\"{:.3}\" font-size=\"12\" text-anchor=\"middle\">{e}</text>\n",
                            y - 10.0
                        ));
                    }
                }
            }
        }
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n{}</svg>\n",
            self.width, self.height, self.width, self.height, body
        )
    }
}
