//! Grouped bar chart: one panel per k, one group per dataset, one bar per
//! method. The y axis is log10 because SSE spans orders of magnitude across
//! datasets and spaces.

use std::fmt::Write as _;

use super::compare::representative_sse;
use super::report::{method_label, ExperimentReport};

const PANEL_WIDTH: f64 = 860.0;
const PANEL_HEIGHT: f64 = 360.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const LEGEND_HEIGHT: f64 = 30.0;

const COLORS: &[&str] = &["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub(super) fn render(r: &ExperimentReport) -> String {
    let datasets = r.datasets();
    let methods = r.initializers();
    let ks = r.ks();

    // every plotted value, clamped away from zero for the log axis
    let mut values = Vec::new();
    for &k in &ks {
        for d in &datasets {
            for &s in &methods {
                if let Some(v) = representative_sse(&r.cells_for(d, s, k)) {
                    values.push(v);
                }
            }
        }
    }
    let floor = values.iter().copied().filter(|v| *v > 0.0).fold(f64::INFINITY, f64::min);
    let floor = if floor.is_finite() { floor } else { 1.0 };
    let lo = floor.log10().floor();
    let hi = values
        .iter()
        .copied()
        .fold(floor, f64::max)
        .log10()
        .ceil()
        .max(lo + 1.0);

    let height = LEGEND_HEIGHT + PANEL_HEIGHT * ks.len() as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PANEL_WIDTH}" height="{height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (i, &s) in methods.iter().enumerate() {
        let x = MARGIN_LEFT + 180.0 * i as f64;
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(out, r#"<rect x="{x}" y="8" width="14" height="14" fill="{color}"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="20">{}</text>"#,
            x + 20.0,
            escape(&method_label(r, s))
        );
    }

    let plot_w = PANEL_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    for (pi, &k) in ks.iter().enumerate() {
        let top = LEGEND_HEIGHT + PANEL_HEIGHT * pi as f64 + MARGIN_TOP;
        let bottom = top + plot_h;
        let y_of = |v: f64| {
            let t = (v.max(floor).log10() - lo) / (hi - lo);
            bottom - t * plot_h
        };
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="15" text-anchor="middle">SSE, k = {k}</text>"#,
            PANEL_WIDTH / 2.0,
            top - 14.0
        );
        let mut exp = lo;
        while exp <= hi {
            let y = y_of(10f64.powf(exp));
            let _ = writeln!(
                out,
                r##"<line x1="{MARGIN_LEFT}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ddd"/>"##,
                MARGIN_LEFT + plot_w
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{:.2}" text-anchor="end">1e{exp}</text>"#,
                MARGIN_LEFT - 6.0,
                y + 4.0
            );
            exp += 1.0;
        }
        let _ = writeln!(
            out,
            r#"<line x1="{MARGIN_LEFT}" y1="{bottom}" x2="{}" y2="{bottom}" stroke="black"/>"#,
            MARGIN_LEFT + plot_w
        );

        let group_w = plot_w / datasets.len().max(1) as f64;
        let bar_w = group_w * 0.8 / methods.len().max(1) as f64;
        for (di, d) in datasets.iter().enumerate() {
            let gx = MARGIN_LEFT + group_w * di as f64 + group_w * 0.1;
            for (mi, &s) in methods.iter().enumerate() {
                let Some(v) = representative_sse(&r.cells_for(d, s, k)) else {
                    continue;
                };
                let x = gx + bar_w * mi as f64;
                let y = y_of(v);
                let color = COLORS[mi % COLORS.len()];
                let _ = writeln!(
                    out,
                    r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{color}"><title>{} {}: {v}</title></rect>"#,
                    bar_w * 0.95,
                    bottom - y,
                    escape(d),
                    s
                );
                let _ = writeln!(
                    out,
                    r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{v:.3}</text>"#,
                    x + bar_w * 0.475,
                    y - 3.0
                );
            }
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
                gx + group_w * 0.4,
                bottom + 20.0,
                escape(d)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::report::{CellRecord, Metadata, Timing, SCHEMA_VERSION};
    use crate::bench::ClusteringSpace;
    use crate::dataset::NormalizationMethod;
    use crate::init::{Strategy, PRNG_NAME};
    use crate::lloyd::{Convergence, EmptyClusterPolicy};

    #[test]
    fn one_bar_per_method_and_dataset() {
        let mut cells = Vec::new();
        for (d, base) in [("iris", 2.0), ("ionosphere", 2000.0)] {
            for (i, s) in [Strategy::Dp, Strategy::OriginPoint].into_iter().enumerate() {
                cells.push(CellRecord {
                    dataset: d.into(),
                    initializer: s,
                    k: 4,
                    seed: None,
                    space: ClusteringSpace::Raw,
                    normalization: NormalizationMethod::None,
                    sse_model_space: base * (i + 1) as f64,
                    sse_raw_space: base,
                    iterations: 1,
                    converged: Convergence::MembershipStable,
                    empty_cluster_events: 0,
                });
            }
        }
        let r = ExperimentReport {
            schema_version: SCHEMA_VERSION,
            metadata: Metadata {
                tool: "t".into(),
                tool_version: "0".into(),
                prng: PRNG_NAME.into(),
                normalization: NormalizationMethod::MaxAbs,
                max_iterations: 300,
                empty_cluster_policy: EmptyClusterPolicy::KeepPrevious,
            },
            cells,
            failed_cells: vec![],
            timing: Timing {
                generated_unix_ms: 0,
                total_wall_ms: 0.0,
                cell_wall_ms: vec![],
            },
        };
        let svg = render(&r);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<title>").count(), 4);
        assert!(svg.contains("SSE, k = 4"));
    }
}
