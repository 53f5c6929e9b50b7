//! CSV, summary and SVG emission for finished runs.
//!
//! Data files are always written; plots are opt-in. Output depends only on
//! the results themselves, so a rerun with the same scenario and seed
//! produces byte-identical files.

use crate::pipeline::RunResult;
use crate::scenario::Scenario;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no results to report")]
    NoResults,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Paths of everything one report wrote.
#[derive(Debug, Clone)]
pub struct ReportFiles {
    pub angles: PathBuf,
    pub errors: PathBuf,
    pub trace: PathBuf,
    pub summary: PathBuf,
    pub plots: Vec<PathBuf>,
}

fn write_file(path: &Path, contents: &str) -> Result<(), ReportError> {
    fs::write(path, contents).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Via-point joint angles per arm, degrees.
fn angles_csv(results: &[RunResult]) -> String {
    let mut out = String::from("point");
    for r in results {
        let arm = r.arm.label();
        let _ = write!(out, ",{arm}_theta1_deg,{arm}_theta2_deg,{arm}_theta3_deg");
    }
    out.push('\n');
    let n = results[0].path.len();
    for i in 0..n {
        let _ = write!(out, "{i}");
        for r in results {
            let q = &r.path.configs[i];
            let _ = write!(
                out,
                ",{},{},{}",
                q.theta1.to_degrees(),
                q.theta2.to_degrees(),
                q.theta3.to_degrees()
            );
        }
        out.push('\n');
    }
    out
}

/// Per-via-point tracking error per arm, meters.
fn errors_csv(results: &[RunResult]) -> String {
    let mut out = String::from("point");
    for r in results {
        let _ = write!(out, ",{}", r.arm.label());
    }
    out.push('\n');
    let n = results[0].point_errors.len();
    for i in 0..n {
        let _ = write!(out, "{i}");
        for r in results {
            let _ = write!(out, ",{}", r.point_errors[i]);
        }
        out.push('\n');
    }
    out
}

/// GA and pattern-search convergence, one row per step.
fn trace_csv(results: &[RunResult]) -> String {
    let mut out = String::from("arm,stage,step,best,mean,mesh,success\n");
    for r in results {
        let arm = r.arm.label();
        if let Some(ga) = &r.ga_trace {
            for (step, g) in ga.generations.iter().enumerate() {
                let _ = writeln!(out, "{arm},ga,{step},{},{},,", g.best, g.mean);
            }
        }
        if let Some(ps) = &r.ps_trace {
            for (step, it) in ps.iterations.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{arm},ps,{step},{},,{},{}",
                    it.value, it.mesh, it.success
                );
            }
        }
    }
    out
}

/// Final objective terms per arm, in the scenario file format.
fn summary_toml(results: &[RunResult], scenario: &Scenario) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed = {}", results[0].seed);
    let _ = writeln!(out, "n = {}", scenario.trajectory.len());
    let w = scenario.weights;
    let _ = writeln!(out, "\n[weights]");
    let _ = writeln!(out, "c1 = {}", w.c1);
    let _ = writeln!(out, "c2 = {}", w.c2);
    let _ = writeln!(out, "c3 = {}", w.c3);
    let _ = writeln!(out, "c4 = {}", w.c4);
    for r in results {
        let b = r.breakdown;
        let _ = writeln!(out, "\n[arms.{}]", r.arm.label());
        let _ = writeln!(out, "e_e = {}", b.e_e);
        let _ = writeln!(out, "d_j = {}", b.d_j);
        let _ = writeln!(out, "v_e = {}", b.v_e);
        let _ = writeln!(out, "v_j = {}", b.v_j);
        let _ = writeln!(out, "f_fit = {}", b.f_fit);
        let _ = writeln!(out, "f_eval = {}", b.f_eval);
    }
    out
}

struct Canvas {
    body: String,
    width: f64,
    height: f64,
}

impl Canvas {
    fn new(width: f64, height: f64) -> Self {
        Self {
            body: String::new(),
            width,
            height,
        }
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="{width}"/>"#
        );
    }

    fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{fill}"/>"#
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}"/>"#
        );
    }

    fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, width: f64) {
        let mut coords = String::new();
        for (x, y) in points {
            let _ = write!(coords, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            coords.trim_end()
        );
    }

    fn text(&mut self, x: f64, y: f64, size: f64, content: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="{size}" font-family="sans-serif">{content}</text>"#
        );
    }

    fn finish(self, title: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n<title>{title}</title>\n{body}</svg>\n",
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}

/// Workspace view: desired via points plus the arm drawn at each one.
fn configuration_svg(result: &RunResult, scenario: &Scenario) -> String {
    let size = 520.0;
    let margin = 30.0;
    let reach = scenario.robot.reach();
    let scale = (size - 2.0 * margin) / (2.0 * reach);
    let to_px = |x: f64, y: f64| -> (f64, f64) { (size / 2.0 + x * scale, size / 2.0 - y * scale) };
    let mut canvas = Canvas::new(size, size);

    let desired: Vec<(f64, f64)> = scenario
        .trajectory
        .points
        .iter()
        .map(|p| to_px(p.x, p.y))
        .collect();
    canvas.polyline(&desired, "#d0342c", 1.5);

    let model = &scenario.robot;
    for q in &result.path.configs {
        let a1 = q.theta1;
        let a12 = q.theta1 + q.theta2;
        let a123 = a12 + q.theta3;
        let j1 = (model.l1 * a1.cos(), model.l1 * a1.sin());
        let j2 = (j1.0 + model.l2 * a12.cos(), j1.1 + model.l2 * a12.sin());
        let ee = (j2.0 + model.l3 * a123.cos(), j2.1 + model.l3 * a123.sin());
        let base = to_px(0.0, 0.0);
        let p1 = to_px(j1.0, j1.1);
        let p2 = to_px(j2.0, j2.1);
        let p3 = to_px(ee.0, ee.1);
        canvas.line(base.0, base.1, p1.0, p1.1, "#9aa7b0", 1.0);
        canvas.line(p1.0, p1.1, p2.0, p2.1, "#7a8a96", 1.0);
        canvas.line(p2.0, p2.1, p3.0, p3.1, "#55616b", 1.0);
        canvas.circle(p3.0, p3.1, 2.0, "#1f77b4");
    }
    let base = to_px(0.0, 0.0);
    canvas.circle(base.0, base.1, 4.0, "#222222");
    canvas.text(
        margin,
        18.0,
        13.0,
        &format!("{} arm configurations", result.arm.label()),
    );
    canvas.finish("arm configurations")
}

/// Joint angle profiles over the via points, degrees.
fn angles_svg(result: &RunResult) -> String {
    let (w, h) = (560.0, 360.0);
    let margin = 45.0;
    let n = result.path.len();
    let series: [Vec<f64>; 3] = [
        result
            .path
            .configs
            .iter()
            .map(|q| q.theta1.to_degrees())
            .collect(),
        result
            .path
            .configs
            .iter()
            .map(|q| q.theta2.to_degrees())
            .collect(),
        result
            .path
            .configs
            .iter()
            .map(|q| q.theta3.to_degrees())
            .collect(),
    ];
    let lo = series
        .iter()
        .flatten()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        - 5.0;
    let hi = series
        .iter()
        .flatten()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
        + 5.0;
    let x_px = |i: usize| margin + (w - 2.0 * margin) * i as f64 / (n - 1) as f64;
    let y_px = |v: f64| h - margin - (h - 2.0 * margin) * (v - lo) / (hi - lo);

    let mut canvas = Canvas::new(w, h);
    canvas.line(margin, h - margin, w - margin, h - margin, "#444444", 1.0);
    canvas.line(margin, margin, margin, h - margin, "#444444", 1.0);
    let colors = ["#d0342c", "#1f77b4", "#2ca02c"];
    for (k, values) in series.iter().enumerate() {
        let pts: Vec<(f64, f64)> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| (x_px(i), y_px(v)))
            .collect();
        canvas.polyline(&pts, colors[k], 1.5);
        canvas.text(
            w - margin + 4.0,
            y_px(values[n - 1]),
            11.0,
            &format!("t{}", k + 1),
        );
    }
    canvas.text(6.0, y_px(hi - 5.0) + 4.0, 11.0, &format!("{hi:.0}"));
    canvas.text(6.0, y_px(lo + 5.0) + 4.0, 11.0, &format!("{lo:.0}"));
    canvas.text(
        margin,
        18.0,
        13.0,
        &format!("{} joint angles (deg) per via point", result.arm.label()),
    );
    canvas.finish("joint angle profiles")
}

/// Tracking error bars per via point.
fn errors_svg(result: &RunResult) -> String {
    let (w, h) = (560.0, 300.0);
    let margin = 45.0;
    let n = result.point_errors.len();
    let max = result
        .point_errors
        .iter()
        .cloned()
        .fold(0.0, f64::max)
        .max(1e-15);
    let slot = (w - 2.0 * margin) / n as f64;
    let mut canvas = Canvas::new(w, h);
    canvas.line(margin, h - margin, w - margin, h - margin, "#444444", 1.0);
    for (i, &e) in result.point_errors.iter().enumerate() {
        let bar = (h - 2.0 * margin) * e / max;
        canvas.rect(
            margin + slot * i as f64 + slot * 0.15,
            h - margin - bar,
            slot * 0.7,
            bar,
            "#1f77b4",
        );
    }
    canvas.text(
        margin,
        18.0,
        13.0,
        &format!("{} tracking error per via point", result.arm.label()),
    );
    canvas.text(
        w - margin - 140.0,
        32.0,
        11.0,
        &format!("max = {max:.3e} m"),
    );
    canvas.finish("tracking error")
}

/// Writes `angles.csv`, `errors.csv`, `trace.csv` and `summary.toml` into
/// `out_dir` (created if needed), plus three SVG plots per arm when
/// `plots` is set.
pub fn emit_report(
    results: &[RunResult],
    scenario: &Scenario,
    out_dir: impl AsRef<Path>,
    plots: bool,
) -> Result<ReportFiles, ReportError> {
    if results.is_empty() {
        return Err(ReportError::NoResults);
    }
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir).map_err(|source| ReportError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;

    let angles = out_dir.join("angles.csv");
    write_file(&angles, &angles_csv(results))?;
    let errors = out_dir.join("errors.csv");
    write_file(&errors, &errors_csv(results))?;
    let trace = out_dir.join("trace.csv");
    write_file(&trace, &trace_csv(results))?;
    let summary = out_dir.join("summary.toml");
    write_file(&summary, &summary_toml(results, scenario))?;

    let mut plot_files = Vec::new();
    if plots {
        for r in results {
            let config = out_dir.join(format!("config_{}.svg", r.arm.label()));
            write_file(&config, &configuration_svg(r, scenario))?;
            let angles_plot = out_dir.join(format!("angles_{}.svg", r.arm.label()));
            write_file(&angles_plot, &angles_svg(r))?;
            let errors_plot = out_dir.join(format!("errors_{}.svg", r.arm.label()));
            write_file(&errors_plot, &errors_svg(r))?;
            plot_files.extend([config, angles_plot, errors_plot]);
        }
    }

    Ok(ReportFiles {
        angles,
        errors,
        trace,
        summary,
        plots: plot_files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{run_all, run_analytic};
    use crate::scenario::bundled;

    fn temp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("armtraj-report-{tag}"));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    fn small_line_scenario() -> Scenario {
        let mut config = bundled::line();
        config.ga.generations = 5;
        config.ga.population_size = 12;
        config.ps.max_iterations = 50;
        config.build().unwrap()
    }

    #[test]
    fn csv_shapes_match_via_points_and_arms() {
        let scenario = small_line_scenario();
        let results = run_all(&scenario, 2).unwrap();
        let dir = temp_dir("shapes");
        emit_report(&results, &scenario, &dir, false).unwrap();

        let errors = fs::read_to_string(dir.join("errors.csv")).unwrap();
        let lines: Vec<&str> = errors.trim_end().lines().collect();
        assert_eq!(lines[0], "point,analytic,ga,gps");
        assert_eq!(lines.len(), 21, "header plus one row per via point");

        let angles = fs::read_to_string(dir.join("angles.csv")).unwrap();
        let header = angles.lines().next().unwrap();
        assert_eq!(header.split(',').count(), 1 + 3 * 3);
        assert_eq!(angles.trim_end().lines().count(), 21);
    }

    #[test]
    fn rerun_is_byte_identical() {
        let scenario = small_line_scenario();
        let dir_a = temp_dir("rerun-a");
        let dir_b = temp_dir("rerun-b");
        emit_report(&run_all(&scenario, 5).unwrap(), &scenario, &dir_a, true).unwrap();
        emit_report(&run_all(&scenario, 5).unwrap(), &scenario, &dir_b, true).unwrap();
        for name in [
            "angles.csv",
            "errors.csv",
            "trace.csv",
            "summary.toml",
            "config_gps.svg",
        ] {
            let a = fs::read(dir_a.join(name)).unwrap();
            let b = fs::read(dir_b.join(name)).unwrap();
            assert_eq!(a, b, "{name} differs between identical runs");
        }
    }

    #[test]
    fn summary_terms_recompose_to_totals() {
        let scenario = small_line_scenario();
        let results = run_all(&scenario, 3).unwrap();
        let dir = temp_dir("summary");
        emit_report(&results, &scenario, &dir, false).unwrap();

        let summary: toml::Value =
            toml::from_str(&fs::read_to_string(dir.join("summary.toml")).unwrap()).unwrap();
        let get = |arm: &str, key: &str| -> f64 { summary["arms"][arm][key].as_float().unwrap() };
        let w = scenario.weights;
        for arm in ["analytic", "ga", "gps"] {
            let recomposed = w.c1 * get(arm, "e_e")
                + w.c2 * get(arm, "d_j")
                + w.c3 * get(arm, "v_e")
                + w.c4 * get(arm, "v_j");
            assert!((get(arm, "f_fit") - recomposed).abs() <= 1e-12);
        }

        // f_eval is recomputable from the error csv columns.
        let errors = fs::read_to_string(dir.join("errors.csv")).unwrap();
        let mut ga_sum = 0.0;
        for (i, line) in errors.trim_end().lines().skip(1).enumerate() {
            let cols: Vec<&str> = line.split(',').collect();
            if i > 0 {
                ga_sum += cols[2].parse::<f64>().unwrap();
            }
        }
        assert!((ga_sum - get("ga", "f_eval")).abs() <= 1e-9);
    }

    #[test]
    fn trace_rows_cover_ga_generations() {
        let scenario = small_line_scenario();
        let results = run_all(&scenario, 7).unwrap();
        let dir = temp_dir("trace");
        emit_report(&results, &scenario, &dir, false).unwrap();
        let trace = fs::read_to_string(dir.join("trace.csv")).unwrap();
        let ga_rows = trace.lines().filter(|l| l.starts_with("ga,ga,")).count();
        assert_eq!(ga_rows, 5);
        assert!(trace.lines().any(|l| l.starts_with("gps,ps,")));
    }

    #[test]
    fn empty_results_are_rejected() {
        let scenario = small_line_scenario();
        let dir = temp_dir("empty");
        assert!(matches!(
            emit_report(&[], &scenario, &dir, false),
            Err(ReportError::NoResults)
        ));
    }

    #[test]
    fn plots_are_written_on_request() {
        let scenario = small_line_scenario();
        let results = vec![run_analytic(&scenario).unwrap()];
        let dir = temp_dir("plots");
        let files = emit_report(&results, &scenario, &dir, true).unwrap();
        assert_eq!(files.plots.len(), 3);
        for p in &files.plots {
            let body = fs::read_to_string(p).unwrap();
            assert!(body.starts_with("<svg"));
            assert!(body.trim_end().ends_with("</svg>"));
        }
    }
}
