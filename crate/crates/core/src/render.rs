//! SVG output for planar packings.

use crate::error::{Error, Result};
use crate::exactnum::{QNum, Sign};
use crate::geometry::InversiveVector;
use crate::groupwords::Configuration;
use crate::orbit::PackingOrbit;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelMode {
    None,
    Bends,
    Labels,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    Cluster,
    Cocluster,
    Other,
}

impl Role {
    fn color(self) -> &'static str {
        match self {
            Role::Cluster => "#1f4fd8",
            Role::Cocluster => "#d62728",
            Role::Other => "#000000",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderItem {
    pub vector: InversiveVector,
    pub generation: u32,
    pub role: Role,
    pub label: Option<String>,
}

/// Exact box `(xmin, ymin, xmax, ymax)`.
pub type Viewport = (QNum, QNum, QNum, QNum);

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    pub viewport: Option<Viewport>,
    pub width_px: u32,
    pub stroke_width: f64,
    pub labels: LabelMode,
    pub max_circles: Option<usize>,
    pub max_bend: Option<QNum>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            viewport: None,
            width_px: 800,
            stroke_width: 1.0,
            labels: LabelMode::None,
            max_circles: None,
            max_bend: None,
        }
    }
}

/// Orbit circles as cluster-coloured items, plus optional cocluster mirrors.
pub fn items_from_orbit(orbit: &PackingOrbit, cocluster: &[InversiveVector]) -> Vec<RenderItem> {
    let mut out: Vec<RenderItem> = orbit
        .circles
        .iter()
        .map(|c| RenderItem { vector: c.vector.clone(), generation: c.generation, role: Role::Cluster, label: Some(c.word.clone()) })
        .collect();
    for (i, m) in cocluster.iter().enumerate() {
        out.push(RenderItem { vector: m.clone(), generation: 0, role: Role::Cocluster, label: Some(format!("m{}", i + 1)) });
    }
    out
}

pub fn items_from_config(config: &Configuration, cluster: &[usize]) -> Vec<RenderItem> {
    config
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| RenderItem {
            vector: r.clone(),
            generation: 0,
            role: if cluster.is_empty() {
                Role::Other
            } else if cluster.contains(&i) {
                Role::Cluster
            } else {
                Role::Cocluster
            },
            label: Some(config.labels()[i].clone()),
        })
        .collect()
}

/// 12 significant digits, shortest form.
pub fn fmt_num(x: f64) -> String {
    let r: f64 = format!("{:.11e}", x).parse().expect("float text");
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{}", r)
    }
}

fn bend_text(b: &QNum) -> String {
    b.to_string()
}

fn auto_viewport(items: &[RenderItem]) -> (f64, f64, f64, f64) {
    let mut bx: Option<(f64, f64, f64, f64)> = None;
    for it in items {
        if it.vector.bend().sign() != Sign::Positive {
            continue;
        }
        let b = it.vector.bend().to_f64();
        let (cx, cy) = (it.vector.bz()[0].to_f64() / b, it.vector.bz()[1].to_f64() / b);
        let r = 1.0 / b;
        let c = (cx - r, cy - r, cx + r, cy + r);
        bx = Some(match bx {
            None => c,
            Some(o) => (o.0.min(c.0), o.1.min(c.1), o.2.max(c.2), o.3.max(c.3)),
        });
    }
    let (x0, y0, x1, y1) = bx.unwrap_or((-1.0, -1.0, 1.0, 1.0));
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    (x0 - pad, y0 - pad, x1 + pad, y1 + pad)
}

/// Liang–Barsky clip of `p + t d`, `t ∈ ℝ`, to the box.
fn clip_line(p: (f64, f64), d: (f64, f64), b: (f64, f64, f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (dp, lo, hi, pp) in [(d.0, b.0, b.2, p.0), (d.1, b.1, b.3, p.1)] {
        if dp.abs() < 1e-300 {
            if pp < lo || pp > hi {
                return None;
            }
            continue;
        }
        let (a, c) = ((lo - pp) / dp, (hi - pp) / dp);
        let (a, c) = if a < c { (a, c) } else { (c, a) };
        t0 = t0.max(a);
        t1 = t1.min(c);
    }
    if t0 > t1 {
        return None;
    }
    Some(((p.0 + t0 * d.0, p.1 + t0 * d.1), (p.0 + t1 * d.0, p.1 + t1 * d.1)))
}

pub fn render_svg(items: &[RenderItem], opts: &RenderOptions) -> Result<String> {
    if items.is_empty() {
        return Err(Error::InvalidConfig("nothing to render".into()));
    }
    if let Some(bad) = items.iter().find(|i| i.vector.dim() != 2) {
        return Err(Error::Dimension(format!("rendering needs dimension 2, got {}", bad.vector.dim())));
    }
    let mut sorted: Vec<(&RenderItem, String)> = items
        .iter()
        .filter(|i| match &opts.max_bend {
            Some(m) => (&i.vector.bend().abs() - m).sign() != Sign::Positive,
            None => true,
        })
        .map(|i| (i, i.vector.key()))
        .collect();
    sorted.sort_by(|a, b| (a.0.generation, a.0.role, &a.1).cmp(&(b.0.generation, b.0.role, &b.1)));
    sorted.dedup_by(|a, b| a.1 == b.1 && a.0.role == b.0.role);
    if let Some(m) = opts.max_circles {
        sorted.truncate(m);
    }
    let vp = match &opts.viewport {
        Some((a, b, c, d)) => {
            if a >= c || b >= d {
                return Err(Error::InvalidConfig("degenerate viewport".into()));
            }
            (a.to_f64(), b.to_f64(), c.to_f64(), d.to_f64())
        }
        None => auto_viewport(items),
    };
    let (w, h) = (vp.2 - vp.0, vp.3 - vp.1);
    let wpx = opts.width_px as f64;
    let hpx = (wpx * h / w).round().max(1.0);
    let sx = wpx / w;
    let px = |x: f64| (x - vp.0) * sx;
    let py = |y: f64| (vp.3 - y) * sx;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">",
        fmt_num(wpx),
        fmt_num(hpx)
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let _ = writeln!(s, "<g fill=\"none\" stroke-width=\"{}\">", fmt_num(opts.stroke_width));
    let mut texts = Vec::new();
    for (it, _) in &sorted {
        let v = &it.vector;
        let color = it.role.color();
        let b = v.bend();
        if b.is_zero() {
            let n = (v.bz()[0].to_f64(), v.bz()[1].to_f64());
            let off = v.cobend().to_f64() / 2.0;
            let p = (n.0 * off, n.1 * off);
            let d = if -n.1 < 0.0 || (n.1 == 0.0 && n.0 < 0.0) { (n.1, -n.0) } else { (-n.1, n.0) };
            if let Some((a, c)) = clip_line(p, d, vp) {
                let _ = writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"/>",
                    fmt_num(px(a.0)),
                    fmt_num(py(a.1)),
                    fmt_num(px(c.0)),
                    fmt_num(py(c.1)),
                    color
                );
            }
            continue;
        }
        let bf = b.to_f64();
        let (cx, cy) = (v.bz()[0].to_f64() / bf, v.bz()[1].to_f64() / bf);
        let r = (1.0 / bf).abs() * sx;
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"{}\"/>",
            fmt_num(px(cx)),
            fmt_num(py(cy)),
            fmt_num(r),
            color
        );
        let text = match opts.labels {
            LabelMode::None => None,
            LabelMode::Bends => Some(bend_text(b)),
            LabelMode::Labels => it.label.clone(),
        };
        if let Some(t) = text {
            if bf > 0.0 && r >= 4.0 {
                let size = (r * 0.6).min(16.0);
                texts.push(format!(
                    "<text x=\"{}\" y=\"{}\" font-size=\"{}\">{}</text>",
                    fmt_num(px(cx)),
                    fmt_num(py(cy)),
                    fmt_num(size),
                    escape(&t)
                ));
            }
        }
    }
    s.push_str("</g>\n");
    if !texts.is_empty() {
        s.push_str("<g font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"#000000\">\n");
        for t in texts {
            s.push_str(&t);
            s.push('\n');
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
