//! Static SVG of `F_P` against `Λ` with the first crossing marked.

use std::fmt::Write;

use lvar_core::{Cdf, LossProfile, PiecewiseLinear};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 70.0;

struct Frame {
    lo: f64,
    hi: f64,
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = xs
            .filter(|x| x.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        if lo > hi {
            (lo, hi) = (-1.0, 1.0);
        }
        let pad = if hi > lo { 0.1 * (hi - lo) } else { 1.0 };
        Frame {
            lo: lo - pad,
            hi: hi + pad,
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.lo) / (self.hi - self.lo) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - y * (HEIGHT - TOP - BOTTOM)
    }

    /// Exact path of a right-continuous piecewise-linear function, vertical
    /// segments at jumps.
    fn path(&self, f: &PiecewiseLinear) -> String {
        let mut d = format!("M {:.2} {:.2}", self.px(self.lo), self.py(f.eval(self.lo)));
        for b in f.points().iter().filter(|b| b.x > self.lo && b.x < self.hi) {
            let x = self.px(b.x);
            let _ = write!(d, " L {x:.2} {:.2} L {x:.2} {:.2}", self.py(b.left), self.py(b.value));
        }
        let _ = write!(d, " L {:.2} {:.2}", self.px(self.hi), self.py(f.eval(self.hi)));
        d
    }
}

fn label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

pub fn render(p: &Cdf, profile: &LossProfile, violation: Option<f64>) -> String {
    let frame = Frame::new(
        p.func()
            .xs()
            .chain(profile.func().xs())
            .chain(violation),
    );
    let (x0, x1) = (frame.px(frame.lo), frame.px(frame.hi));
    let (y0, y1) = (frame.py(0.0), frame.py(1.0));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="400" y="24" text-anchor="middle" font-size="16">F_P and Λ</text>"#
    );
    let _ = writeln!(
        s,
        r#"<g id="axes" stroke="black" stroke-width="1"><line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/><line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/></g>"#
    );
    s.push_str("<g id=\"ticks\" stroke=\"black\">\n");
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let x = frame.lo + t * (frame.hi - frame.lo);
        let (px, py) = (frame.px(x), frame.py(t));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}"/><text x="{px:.2}" y="{:.2}" text-anchor="middle" stroke="none">{}</text>"#,
            y0 + 5.0,
            y0 + 20.0,
            label(x)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}"/><text x="{:.2}" y="{:.2}" text-anchor="end" stroke="none">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            label(t)
        );
    }
    s.push_str("</g>\n");
    let _ = writeln!(
        s,
        r#"<text id="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">outcome x</text>"#,
        0.5 * (x0 + x1),
        HEIGHT - 20.0
    );
    let _ = writeln!(
        s,
        r#"<text id="y-label" transform="translate(20 {:.2}) rotate(-90)" text-anchor="middle">probability</text>"#,
        0.5 * (y0 + y1)
    );
    let _ = writeln!(
        s,
        r##"<path id="cdf" d="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        frame.path(p.func())
    );
    let _ = writeln!(
        s,
        r##"<path id="profile" d="{}" fill="none" stroke="#d62728" stroke-width="2" stroke-dasharray="6 3"/>"##,
        frame.path(profile.func())
    );
    if let Some(v) = violation {
        let (px, py) = (frame.px(v), frame.py(p.eval(v)));
        let _ = writeln!(
            s,
            r#"<g id="violation" data-x="{v}"><line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{y1:.2}" stroke="gray" stroke-dasharray="2 3"/><circle cx="{px:.2}" cy="{py:.2}" r="5" fill="black"/><text x="{:.2}" y="{:.2}">x* = {}</text></g>"#,
            px + 8.0,
            py - 8.0,
            label(v)
        );
    }
    let _ = writeln!(
        s,
        r##"<g id="legend"><line x1="{0:.2}" y1="60" x2="{1:.2}" y2="60" stroke="#1f77b4" stroke-width="2"/><text x="{2:.2}" y="64">F_P</text><line x1="{0:.2}" y1="80" x2="{1:.2}" y2="80" stroke="#d62728" stroke-width="2" stroke-dasharray="6 3"/><text x="{2:.2}" y="84">Λ</text></g>"##,
        x0 + 15.0,
        x0 + 45.0,
        x0 + 52.0
    );
    s.push_str("</svg>\n");
    s
}
