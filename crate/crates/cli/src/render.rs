//! Deterministic SVG rendering of arc diagrams: points on a horizontal
//! axis, join arcs red, meet arcs blue, each arc passing strictly above its
//! A-points and strictly below its B-points. Identical input yields
//! byte-identical output.

use std::fmt::Write as _;

use canonical_complex::{Arc, Ncad, Scab};

pub struct RenderSpec {
    pub point_spacing: f64,
    pub margin: f64,
    pub arc_height: f64,
    pub join_color: String,
    pub meet_color: String,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            point_spacing: 40.0,
            margin: 30.0,
            arc_height: 14.0,
            join_color: "#cc2222".to_string(),
            meet_color: "#2255cc".to_string(),
        }
    }
}

impl RenderSpec {
    fn x(&self, p: u8) -> f64 {
        self.margin + (p as f64 - 1.0) * self.point_spacing
    }
}

/// Piecewise cubic path through the waypoints of one arc: the endpoints sit
/// on the axis, interior points are offset up for A-members and down for
/// B-members (SVG y grows downward). Arcs without interior points get a
/// small bow (up for join arcs, down for meet arcs) so they stay visible.
fn arc_path(arc: &Arc, axis: f64, bow: f64, spec: &RenderSpec) -> String {
    let mut waypoints: Vec<(f64, f64)> = vec![(spec.x(arc.a()), axis)];
    for p in (arc.a() + 1)..arc.b() {
        let dy = if arc.above_points().contains(&p) {
            -spec.arc_height
        } else {
            spec.arc_height
        };
        waypoints.push((spec.x(p), axis + dy));
    }
    if waypoints.len() == 1 {
        let mid_x = (spec.x(arc.a()) + spec.x(arc.b())) / 2.0;
        waypoints.push((mid_x, axis + bow));
    }
    waypoints.push((spec.x(arc.b()), axis));
    let mut d = format!("M {:.1} {:.1}", waypoints[0].0, waypoints[0].1);
    for w in waypoints.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        let third = (x1 - x0) / 3.0;
        let _ = write!(
            d,
            " C {:.1} {:.1}, {:.1} {:.1}, {:.1} {:.1}",
            x0 + third,
            y0,
            x1 - third,
            y1,
            x1,
            y1
        );
    }
    d
}

pub fn render_scab(scab: &Scab, n: usize, spec: &RenderSpec) -> String {
    render_diagrams(Some(scab.join_diagram()), Some(scab.meet_diagram()), n, spec)
}

pub fn render_diagrams(
    join: Option<&Ncad>,
    meet: Option<&Ncad>,
    n: usize,
    spec: &RenderSpec,
) -> String {
    let width = 2.0 * spec.margin + (n.max(1) as f64 - 1.0) * spec.point_spacing;
    let height = 2.0 * spec.margin + 2.0 * spec.arc_height;
    let axis = height / 2.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    let mut draw = |d: &Ncad, color: &str, bow: f64| {
        for arc in d.arcs() {
            let _ = writeln!(
                svg,
                "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"/>",
                arc_path(arc, axis, bow, spec),
                color
            );
        }
    };
    if let Some(d) = join {
        draw(d, &spec.join_color, -spec.arc_height / 2.0);
    }
    if let Some(d) = meet {
        draw(d, &spec.meet_color, spec.arc_height / 2.0);
    }
    for p in 1..=n as u8 {
        let _ = writeln!(
            svg,
            "  <circle cx=\"{:.1}\" cy=\"{axis:.1}\" r=\"2.5\" fill=\"#000\"/>",
            spec.x(p)
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\" fill=\"#444\">{p}</text>",
            spec.x(p),
            axis + spec.arc_height + 14.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
