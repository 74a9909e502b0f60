//! Static plots. Not part of any golden comparison.

use bidouble_core::Complex;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub struct Plot {
    title: String,
    polylines: Vec<(usize, Vec<Complex<f64>>)>,
    points: Vec<(usize, Complex<f64>, String)>,
}

impl Plot {
    pub fn new(title: &str) -> Self {
        Plot { title: title.to_string(), polylines: Vec::new(), points: Vec::new() }
    }

    pub fn polyline(&mut self, color: usize, pts: Vec<Complex<f64>>) {
        self.polylines.push((color, pts));
    }

    pub fn point(&mut self, color: usize, z: Complex<f64>, label: impl Into<String>) {
        self.points.push((color, z, label.into()));
    }

    pub fn render(&self) -> String {
        let all: Vec<Complex<f64>> =
            self.polylines.iter().flat_map(|(_, p)| p.iter().copied()).chain(self.points.iter().map(|p| p.1)).collect();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in &all {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        if all.is_empty() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        let map = |z: Complex<f64>| (SIZE / 2.0 + (z.re - cx) * scale, SIZE / 2.0 - (z.im - cy) * scale);
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<text x=\"8\" y=\"16\" font-size=\"12\">{}</text>\n",
            self.title
        );
        for (c, pts) in &self.polylines {
            let d: Vec<String> = pts.iter().map(|z| map(*z)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            s.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"/>\n",
                COLORS[c % COLORS.len()],
                d.join(" ")
            ));
        }
        for (c, z, label) in &self.points {
            let (x, y) = map(*z);
            s.push_str(&format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{}\"/>\n", COLORS[c % COLORS.len()]));
            if !label.is_empty() {
                s.push_str(&format!("<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{label}</text>\n", x + 5.0, y - 5.0));
            }
        }
        s.push_str("</svg>\n");
        s
    }
}
