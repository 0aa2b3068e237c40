//! Standalone SVG ternary maps.
//!
//! Player 1 sits at the top vertex `(1/2, √3/2)`, player 2 bottom-left at
//! `(0, 0)` and player 3 bottom-right at `(1, 0)`; a weight triple `w` with
//! `t = w / D` lands at `t1·V1 + t2·V2 + t3·V3`. Each grid point is filled as
//! its hexagonal lattice cell, clipped to the triangle.

use std::fmt::Write as _;
use std::path::Path;

use crate::committee::Rule;
use crate::error::{Error, Result};
use crate::simplex::{BestRuleMap, Comparison, PairwiseClassification, RuleSet, Weights3};

const SIDE: f64 = 600.0;
const MARGIN: f64 = 60.0;
const LEGEND_WIDTH: f64 = 260.0;

const GREEN: &str = "#1a9850";
const YELLOW: &str = "#fee08b";
const RED: &str = "#d73027";

/// Colors for argmax sets, assigned in ascending bitmask order.
const SET_COLORS: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#ad494a",
];

fn height() -> f64 {
    SIDE * 3f64.sqrt() / 2.0
}

/// SVG coordinates of a grid point.
pub fn project(weights: Weights3, resolution: u64) -> (f64, f64) {
    let d = resolution as f64;
    let (t1, t3) = (weights[0] as f64 / d, weights[2] as f64 / d);
    let x = 0.5 * t1 + t3;
    let y = 3f64.sqrt() / 2.0 * t1;
    (MARGIN + x * SIDE, MARGIN + height() - y * SIDE)
}

fn hexagon(center: (f64, f64), resolution: u64) -> String {
    let radius = SIDE / resolution as f64 / 3f64.sqrt() * 1.02;
    let mut points = String::new();
    for k in 0..6 {
        let angle = (90.0 + 60.0 * k as f64).to_radians();
        let _ = write!(
            points,
            "{:.2},{:.2} ",
            center.0 + radius * angle.cos(),
            center.1 - radius * angle.sin()
        );
    }
    points.trim_end().to_string()
}

fn header(title: &str, legend: bool) -> String {
    let width = SIDE + 2.0 * MARGIN + if legend { LEGEND_WIDTH } else { 0.0 };
    let total_height = height() + 2.0 * MARGIN;
    let (top, left, right) = (
        (MARGIN + SIDE / 2.0, MARGIN),
        (MARGIN, MARGIN + height()),
        (MARGIN + SIDE, MARGIN + height()),
    );
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{total_height:.0}" viewBox="0 0 {width:.0} {total_height:.0}">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="simplex"><polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/></clipPath></defs>"#,
        top.0, top.1, left.0, left.1, right.0, right.1
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        MARGIN + SIDE / 2.0,
        escape(title)
    );
    s
}

fn footer(s: &mut String) {
    let (top, left, right) = (
        (MARGIN + SIDE / 2.0, MARGIN),
        (MARGIN, MARGIN + height()),
        (MARGIN + SIDE, MARGIN + height()),
    );
    let _ = writeln!(
        s,
        r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        top.0, top.1, left.0, left.1, right.0, right.1
    );
    for (label, (x, y), dy) in [
        ("player 1", top, -8.0),
        ("player 2", left, 20.0),
        ("player 3", right, 20.0),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.1}" y="{:.1}" font-family="sans-serif" font-size="13" text-anchor="middle">{label}</text>"#,
            y + dy
        );
    }
    s.push_str("</svg>\n");
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn is_borda_comparison(c: &PairwiseClassification) -> bool {
    c.rule_a == Rule::Borda || c.rule_b == Rule::Borda
}

/// Green where rule A gives the player more influence, red where rule B
/// does, yellow where they tie. Comparisons involving Borda shade by the
/// size of the difference.
pub fn render_classification(c: &PairwiseClassification) -> String {
    let title = format!(
        "{} vs. {}: influence of player {}",
        c.rule_a,
        c.rule_b,
        c.player + 1
    );
    let mut s = header(&title, true);
    let max = c.max_abs_diff();
    let max = *max.numer() as f64 / *max.denom() as f64;
    let shade = is_borda_comparison(c) && max > 0.0;
    s.push_str("<g clip-path=\"url(#simplex)\">\n");
    for cell in &c.cells {
        let color = match cell.class {
            Comparison::AGreater => GREEN,
            Comparison::Equal => YELLOW,
            Comparison::BGreater => RED,
        };
        let opacity = if shade && cell.class != Comparison::Equal {
            let d = (*cell.diff.numer() as f64 / *cell.diff.denom() as f64).abs();
            0.25 + 0.75 * d / max
        } else {
            1.0
        };
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{color}" fill-opacity="{opacity:.3}"/>"#,
            hexagon(project(cell.weights, c.resolution), c.resolution)
        );
    }
    s.push_str("</g>\n");
    let entries = [
        (GREEN, format!("{} greater", c.rule_a)),
        (YELLOW, "equal".to_string()),
        (RED, format!("{} greater", c.rule_b)),
    ];
    legend(&mut s, entries.iter().map(|(c, l)| (*c, l.as_str())));
    footer(&mut s);
    s
}

/// One color per distinct set of influence-maximizing rules.
pub fn render_best_rules(map: &BestRuleMap) -> String {
    let title = format!("Influence-maximizing rules for player {}", map.player + 1);
    let mut s = header(&title, true);
    let sets = map.distinct_sets();
    let color_of = |set: RuleSet| {
        let i = sets.iter().position(|&x| x == set).expect("listed set");
        SET_COLORS[i % SET_COLORS.len()]
    };
    s.push_str("<g clip-path=\"url(#simplex)\">\n");
    for cell in &map.cells {
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{}"/>"#,
            hexagon(project(cell.weights, map.resolution), map.resolution),
            color_of(cell.rules)
        );
    }
    s.push_str("</g>\n");
    let labels: Vec<(&str, String)> = sets
        .iter()
        .map(|&set| (color_of(set), set.to_string()))
        .collect();
    legend(&mut s, labels.iter().map(|(c, l)| (*c, l.as_str())));
    footer(&mut s);
    s
}

fn legend<'a>(s: &mut String, entries: impl Iterator<Item = (&'a str, &'a str)>) {
    let x = MARGIN + SIDE + 30.0;
    for (i, (color, label)) in entries.enumerate() {
        let y = MARGIN + 22.0 * i as f64;
        let _ = writeln!(
            s,
            r##"<rect x="{x:.1}" y="{y:.1}" width="14" height="14" fill="{color}" stroke="#333333" stroke-width="0.5"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12">{}</text>"#,
            x + 20.0,
            y + 11.5,
            escape(label)
        );
    }
}

pub fn write_svg(path: &Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
