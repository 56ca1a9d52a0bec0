//! SVG drawing of a projected diagram, with breaks at the under-passages.

use std::fmt::Write;

use super::diagram::DiagramGeometry;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;
/// Half-width of the break at an under-passage, in drawing units.
const GAP: f64 = 6.0;

fn scaled(g: &DiagramGeometry) -> Vec<[f64; 2]> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &g.points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-300);
    let s = (SIZE - 2.0 * MARGIN) / span;
    g.points
        .iter()
        .map(|p| {
            [
                MARGIN + (p[0] - lo[0]) * s,
                SIZE - MARGIN - (p[1] - lo[1]) * s,
            ]
        })
        .collect()
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// The drawing as a standalone SVG document.
pub fn render_svg(g: &DiagramGeometry) -> String {
    let pts = scaled(g);
    let n = pts.len();
    let mut cum = Vec::with_capacity(n + 1);
    cum.push(0.0);
    for i in 0..n {
        cum.push(cum[i] + dist(pts[i], pts[(i + 1) % n]));
    }
    let total = cum[n];
    let at = |s: f64| -> [f64; 2] {
        let s = s.rem_euclid(total);
        let i = cum
            .partition_point(|&c| c <= s)
            .saturating_sub(1)
            .min(n - 1);
        let len = cum[i + 1] - cum[i];
        let f = if len > 0.0 { (s - cum[i]) / len } else { 0.0 };
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        [a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])]
    };
    let mut gaps: Vec<f64> = g
        .unders
        .iter()
        .map(|&pos| {
            let i = (pos.floor() as usize).min(n - 1);
            cum[i] + pos.fract() * (cum[i + 1] - cum[i])
        })
        .collect();
    gaps.sort_by(f64::total_cmp);

    // visible stretches of arc length between consecutive gaps
    let stretches: Vec<(f64, f64)> = if gaps.is_empty() {
        vec![(0.0, total)]
    } else {
        (0..gaps.len())
            .map(|k| {
                let start = gaps[k] + GAP;
                let mut end = gaps[(k + 1) % gaps.len()] - GAP;
                if k + 1 == gaps.len() {
                    end += total;
                }
                (start, end)
            })
            .filter(|(a, b)| b > a)
            .collect()
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (a, b) in stretches {
        let mut d = String::new();
        let p = at(a);
        let _ = write!(d, "M{:.2},{:.2}", p[0], p[1]);
        // vertices strictly inside the stretch, possibly wrapping once
        for lap in 0..2 {
            for (i, &c) in cum.iter().enumerate().take(n) {
                let s = c + lap as f64 * total;
                if s > a && s < b {
                    let _ = write!(d, " L{:.2},{:.2}", pts[i][0], pts[i][1]);
                }
            }
        }
        let p = at(b);
        let _ = write!(d, " L{:.2},{:.2}", p[0], p[1]);
        if g.unders.is_empty() {
            d.push_str(" Z");
        }
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="black" stroke-width="2" stroke-linejoin="round"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn breaks_at_unders() {
        let points: Vec<[f64; 2]> = (0..100)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 100.0;
                [t.cos(), t.sin()]
            })
            .collect();
        let plain = render_svg(&DiagramGeometry {
            points: points.clone(),
            unders: vec![],
        });
        assert_eq!(plain.matches("<path").count(), 1);
        let broken = render_svg(&DiagramGeometry {
            points,
            unders: vec![10.5, 60.25],
        });
        assert_eq!(broken.matches("<path").count(), 2);
        assert!(broken.starts_with("<svg"));
    }
}
