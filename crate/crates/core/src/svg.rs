//! Adams-style SVG charts: stem across, filtration up.
//!
//! Output is a plain function of its input, so charts can be diffed byte for
//! byte between runs.

use std::fmt::Write;

use serde::Deserialize;
use thiserror::Error;

use crate::anss::Chart;
use crate::tau_module::Summand;

#[derive(Debug, Error)]
pub enum StyleError {
    #[error("cannot read chart style: {0}")]
    Toml(#[from] toml::de::Error),
}

/// Colors for chart output, loadable from a TOML table such as
/// `free = "#1f4e9c"`. Missing keys keep their defaults.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChartStyle {
    pub background: String,
    pub grid: String,
    pub text: String,
    pub free: String,
    pub torsion: String,
    pub class: String,
    pub differential: String,
    pub zero_region: String,
}

impl Default for ChartStyle {
    fn default() -> Self {
        ChartStyle {
            background: "#ffffff".into(),
            grid: "#d8d8d8".into(),
            text: "#202020".into(),
            free: "#1f4e9c".into(),
            torsion: "#b8321f".into(),
            class: "#202020".into(),
            differential: "#4f8a2e".into(),
            zero_region: "#eeeeee".into(),
        }
    }
}

impl ChartStyle {
    pub fn from_toml(text: &str) -> Result<Self, StyleError> {
        Ok(toml::from_str(text)?)
    }
}

const CELL: i32 = 40;
const MARGIN: i32 = 48;

struct Frame {
    s_min: i32,
    s_max: i32,
    f_max: u32,
}

impl Frame {
    fn new(points: impl Iterator<Item = (i32, u32)>) -> Frame {
        let mut frame = Frame {
            s_min: 0,
            s_max: 1,
            f_max: 1,
        };
        for (s, f) in points {
            frame.s_min = frame.s_min.min(s);
            frame.s_max = frame.s_max.max(s);
            frame.f_max = frame.f_max.max(f);
        }
        frame
    }

    fn width(&self) -> i32 {
        2 * MARGIN + (self.s_max - self.s_min) * CELL
    }

    fn height(&self) -> i32 {
        2 * MARGIN + self.f_max as i32 * CELL
    }

    fn x(&self, s: f64) -> f64 {
        MARGIN as f64 + (s - self.s_min as f64) * CELL as f64
    }

    fn y(&self, f: f64) -> f64 {
        (self.height() - MARGIN) as f64 - f * CELL as f64
    }

    fn open(&self, out: &mut String, title: &str, style: &ChartStyle) {
        let (w, h) = (self.width(), self.height());
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="10">"#
        )
        .unwrap();
        writeln!(out, "<title>{}</title>", escape(title)).unwrap();
        writeln!(out, r#"<rect width="{w}" height="{h}" fill="{}"/>"#, style.background).unwrap();
    }

    fn grid(&self, out: &mut String, style: &ChartStyle) {
        for s in self.s_min..=self.s_max {
            let x = self.x(s as f64);
            writeln!(
                out,
                r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="{}" stroke-width="0.5"/>"#,
                self.y(0.0),
                self.y(self.f_max as f64),
                style.grid
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{x}" y="{}" text-anchor="middle" fill="{}">{s}</text>"#,
                self.y(0.0) + 16.0,
                style.text
            )
            .unwrap();
        }
        for f in 0..=self.f_max {
            let y = self.y(f as f64);
            writeln!(
                out,
                r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="0.5"/>"#,
                self.x(self.s_min as f64),
                self.x(self.s_max as f64),
                style.grid
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="end" fill="{}">{f}</text>"#,
                self.x(self.s_min as f64) - 10.0,
                y + 3.0,
                style.text
            )
            .unwrap();
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// `tau`-tower overlay: one dot per cyclic summand, filled when free and
/// hollow when `tau`-torsion, labelled with its top weight.
pub fn render_summands(title: &str, summands: &[(i32, u32, Summand)], style: &ChartStyle) -> String {
    let frame = Frame::new(summands.iter().map(|&(s, f, _)| (s, f)));
    let mut out = String::new();
    frame.open(&mut out, title, style);
    frame.grid(&mut out, style);
    let mut i = 0;
    while i < summands.len() {
        let (s, f, _) = summands[i];
        let mut j = i;
        while j < summands.len() && (summands[j].0, summands[j].1) == (s, f) {
            j += 1;
        }
        let n = j - i;
        for (k, &(_, _, summand)) in summands[i..j].iter().enumerate() {
            let offset = (k as f64 - (n - 1) as f64 / 2.0) * 0.22;
            let (cx, cy) = (frame.x(s as f64 + offset), frame.y(f as f64));
            let (fill, label) = match summand.length {
                None => (style.free.as_str(), format!("w={} free", summand.top)),
                Some(l) => ("none", format!("w={} tau^{l}", summand.top)),
            };
            let stroke = if summand.length.is_none() {
                &style.free
            } else {
                &style.torsion
            };
            writeln!(
                out,
                r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="4" fill="{fill}" stroke="{stroke}" stroke-width="1.5"><title>({s},{f}) {label}</title></circle>"#
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle" font-size="7" fill="{}">{}</text>"#,
                cy - 7.0,
                style.text,
                summand.top
            )
            .unwrap();
        }
        i = j;
    }
    out.push_str("</svg>\n");
    out
}

/// A classical chart truncated at weight `w`, with the zero region
/// `s + f < 2w` shaded and removed classes drawn faintly.
pub fn render_truncation(chart: &Chart, w: i32, style: &ChartStyle) -> String {
    let frame = Frame::new(chart.classes().iter().map(|c| (c.stem, c.filtration)));
    let mut out = String::new();
    frame.open(&mut out, &format!("truncation at weight {w}"), style);
    // the zero region is the part of the frame below f = 2w - s
    let mut poly = Vec::new();
    for s in [frame.s_min, frame.s_max] {
        let edge = (2 * w - s).clamp(0, frame.f_max as i32);
        poly.push((s, edge));
    }
    let points = format!(
        "{:.1},{:.1} {:.1},{:.1} {:.1},{:.1} {:.1},{:.1}",
        frame.x(frame.s_min as f64),
        frame.y(0.0),
        frame.x(frame.s_max as f64),
        frame.y(0.0),
        frame.x(poly[1].0 as f64),
        frame.y(poly[1].1 as f64),
        frame.x(poly[0].0 as f64),
        frame.y(poly[0].1 as f64),
    );
    writeln!(out, r#"<polygon points="{points}" fill="{}"/>"#, style.zero_region).unwrap();
    frame.grid(&mut out, style);
    let truncated = chart.truncate(w).ok();
    let kept = |id: &str| {
        truncated
            .as_ref()
            .is_some_and(|t| t.classes().iter().any(|c| c.id == id))
    };
    let find = |id: &str| chart.classes().iter().find(|c| c.id == id);
    for d in chart.differentials() {
        if let (Some(a), Some(b)) = (find(&d.source), find(&d.target)) {
            let opacity = if kept(&a.id) { "1" } else { "0.25" };
            writeln!(
                out,
                r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{}" stroke-width="1.2" opacity="{opacity}"><title>d{} {} {}</title></line>"#,
                frame.x(a.stem as f64),
                frame.y(a.filtration as f64),
                frame.x(b.stem as f64),
                frame.y(b.filtration as f64),
                style.differential,
                d.r,
                escape(&d.source),
                escape(&d.target)
            )
            .unwrap();
        }
    }
    for c in chart.classes() {
        let opacity = if kept(&c.id) { "1" } else { "0.25" };
        writeln!(
            out,
            r#"<circle cx="{:.1}" cy="{:.1}" r="4" fill="{}" opacity="{opacity}"><title>{} ({},{})</title></circle>"#,
            frame.x(c.stem as f64),
            frame.y(c.filtration as f64),
            style.class,
            escape(&c.id),
            c.stem,
            c.filtration
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
