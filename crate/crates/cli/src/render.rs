//! Static rendering of cylinder configurations: a fundamental strip with
//! edge multiplicities, as plain text or SVG. Output is deterministic:
//! identical input produces identical bytes.

use std::fmt::Write as _;

use weylk0::cylinder::Configuration;
use weylk0::halfint::HalfInt;

fn row_range(cfg: &Configuration) -> (i64, i64) {
    match cfg.support_rows() {
        Some((lo, hi)) => (lo - 1, hi + 1),
        None => (0, 1),
    }
}

/// Text rendering. Columns of `+`/`|` mark the vertex grid; the two seam
/// columns (identified up to the vertical shift) are drawn with `:`. An
/// east edge prints its multiplicity inside the dashes of its cell; a north
/// edge prints it left of the vertex column it runs along.
pub fn render_ascii(cfg: &Configuration) -> String {
    let m = cfg.geom().m();
    let (lo, hi) = row_range(cfg);
    let mut out = String::new();

    let horizontal_row = |out: &mut String, y: HalfInt| {
        let _ = write!(out, "     +");
        for a in 0..m {
            let w = cfg.e2_mult(HalfInt::from_int(a), y);
            if w > 0 {
                let label = w.to_string();
                let dashes = 5 - label.len().min(4);
                let left = dashes / 2;
                let _ = write!(out, "{}{}{}", "-".repeat(left), label, "-".repeat(5 - left - label.len()));
            } else {
                let _ = write!(out, "-----");
            }
            let _ = write!(out, "+");
        }
        let _ = writeln!(out);
    };

    horizontal_row(&mut out, HalfInt::int_plus_half(hi));
    for b in (lo..=hi).rev() {
        let _ = write!(out, "{b:>4} :");
        for a in 0..m {
            let w = cfg.e1_mult(HalfInt::int_plus_half(a), HalfInt::from_int(b));
            if w > 0 {
                let _ = write!(out, "{:>5}", w);
            } else {
                let _ = write!(out, "     ");
            }
            let _ = write!(out, "{}", if a + 1 == m { ':' } else { '|' });
        }
        let _ = writeln!(out);
        horizontal_row(&mut out, HalfInt::int_plus_half(b - 1));
    }
    out
}

const SCALE: i64 = 40;

fn px(x: HalfInt) -> i64 {
    // x = -1/2 maps to 0.
    (x.twice() + 1) * SCALE / 2
}

fn py(y: HalfInt, top: i64) -> i64 {
    // y = top + 1/2 maps to 0, growing downward.
    (2 * top + 1 - y.twice()) * SCALE / 2
}

/// SVG rendering with integer coordinates only.
pub fn render_svg(cfg: &Configuration) -> String {
    let m = cfg.geom().m();
    let (lo, hi) = row_range(cfg);
    let width = m * SCALE;
    let height = (hi - lo + 1) * SCALE;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = width,
        h = height
    );
    let _ = writeln!(out, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");

    // Vertex grid.
    for a in 0..=m {
        let x = px(HalfInt::int_plus_half(a - 1));
        let style = if a == 0 || a == m { "stroke:#999;stroke-dasharray:4 4" } else { "stroke:#ccc" };
        let _ = writeln!(out, "<line x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{height}\" style=\"{style}\"/>");
    }
    for b in lo - 1..=hi {
        let y = py(HalfInt::int_plus_half(b), hi);
        let _ = writeln!(out, "<line x1=\"0\" y1=\"{y}\" x2=\"{width}\" y2=\"{y}\" style=\"stroke:#ccc\"/>");
    }

    // Support edges with labels at their midpoints.
    for ((s1, s2), w) in cfg.iter_e1() {
        let x = px(s1);
        let y1 = py(s2.plus_half(), hi);
        let y2 = py(s2.minus_half(), hi);
        let _ = writeln!(out, "<line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" style=\"stroke:black;stroke-width:2\"/>");
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"14\" fill=\"red\">{w}</text>",
            x + 4,
            py(s2, hi) - 4
        );
    }
    for ((s1, s2), w) in cfg.iter_e2() {
        let x1 = px(s1.minus_half());
        let x2 = px(s1.plus_half());
        let y = py(s2, hi);
        let _ = writeln!(out, "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" style=\"stroke:black;stroke-width:2\"/>");
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"14\" fill=\"red\">{w}</text>",
            px(s1) - 4,
            y - 4
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}
