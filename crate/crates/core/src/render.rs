//! Text and SVG drawings of configurations.

use std::fmt::Write as _;

use crate::config::Configuration;
use crate::grid::TriCoord;

/// Bounding box in (column = 2a + b, row = b) space, padded by one node.
fn bounds(cfg: &Configuration) -> (i32, i32, i32, i32) {
    let cols = cfg.robots().iter().map(|c| 2 * c.a + c.b);
    let rows = cfg.robots().iter().map(|c| c.b);
    let (cmin, cmax) = (cols.clone().min().unwrap_or(0), cols.max().unwrap_or(0));
    let (rmin, rmax) = (rows.clone().min().unwrap_or(0), rows.max().unwrap_or(0));
    (cmin - 2, cmax + 2, rmin - 1, rmax + 1)
}

/// Rows top (north) to bottom; robots `o`, empty nodes `.`, staggered by
/// half a cell per row.
pub fn ascii(cfg: &Configuration) -> String {
    let (cmin, cmax, rmin, rmax) = bounds(cfg);
    let mut out = String::new();
    for row in (rmin..=rmax).rev() {
        let mut line = String::new();
        for col in cmin..=cmax {
            if (col - row).rem_euclid(2) != 0 {
                line.push(' ');
                continue;
            }
            let c = TriCoord::new((col - row) / 2, row);
            line.push(if cfg.contains(c) { 'o' } else { '.' });
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

const SCALE: f64 = 40.0;
const ROBOT_RADIUS: f64 = 14.0;
const NODE_RADIUS: f64 = 3.0;

/// An SVG drawing: lattice nodes in the padded bounding box as small dots,
/// robots as filled discs. Node `(a, b)` sits at `(a + b/2, b·√3/2)`.
pub fn svg(cfg: &Configuration, title: &str) -> String {
    let (cmin, cmax, rmin, rmax) = bounds(cfg);
    let h = 3f64.sqrt() / 2.0;
    let px = |col: i32| (f64::from(col - cmin) / 2.0 + 0.5) * SCALE;
    let py = |row: i32| (f64::from(rmax - row) * h + 0.5) * SCALE;
    let width = px(cmax) + SCALE / 2.0;
    let height = py(rmin) + SCALE / 2.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    for row in (rmin..=rmax).rev() {
        for col in cmin..=cmax {
            if (col - row).rem_euclid(2) != 0 {
                continue;
            }
            let c = TriCoord::new((col - row) / 2, row);
            let (x, y) = (px(col), py(row));
            if cfg.contains(c) {
                let _ = writeln!(
                    out,
                    r##"<circle cx="{x:.2}" cy="{y:.2}" r="{ROBOT_RADIUS:.1}" fill="#1f4e9c"><title>{c}</title></circle>"##
                );
            } else {
                let _ = writeln!(
                    out,
                    r##"<circle cx="{x:.2}" cy="{y:.2}" r="{NODE_RADIUS:.1}" fill="#b0b0b0"/>"##
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Direction;

    #[test]
    fn ascii_hexagon() {
        let hex = Configuration::hexagon(TriCoord::ORIGIN);
        let expected = "\
. . . . .
 . o o .
. o o o .
 . o o .
. . . . .
";
        assert_eq!(ascii(&hex), expected);
    }

    #[test]
    fn ascii_is_translation_invariant() {
        let line = Configuration::line(TriCoord::ORIGIN, Direction::SE, 4);
        assert_eq!(ascii(&line), ascii(&line.translate(TriCoord::new(7, -3))));
    }

    #[test]
    fn svg_counts_robots_and_is_deterministic() {
        let hex = Configuration::hexagon(TriCoord::new(2, 3));
        let a = svg(&hex, "step <0>");
        assert_eq!(a, svg(&hex, "step <0>"));
        assert_eq!(a.matches("fill=\"#1f4e9c\"").count(), 7);
        assert!(a.contains("<title>step &lt;0&gt;</title>"));
        assert!(a.starts_with("<svg "));
    }
}
