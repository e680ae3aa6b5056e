//! SVG and CSV output of sampled curves and offsets.

use std::fmt::Write as _;
use std::path::Path;

use crate::offset::{OffsetProblem, StructureReport};

use super::{fmt_g, normalized_residual, Branch, NumError, Numeric, OffsetSample};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    Svg,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotSummary {
    pub samples: usize,
    pub skipped: usize,
    pub notices: Vec<String>,
}

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

pub fn emit_plot(
    op: &OffsetProblem,
    report: &StructureReport,
    ts: &[f64],
    format: PlotFormat,
    path: &Path,
) -> Result<PlotSummary, NumError> {
    if ts.is_empty() {
        return Err(NumError::EmptyRange);
    }
    let num = Numeric::new(op)?;
    let sampled = num.sample(ts);
    if sampled.samples.is_empty() {
        return Err(NumError::NoSamples);
    }
    let body = match format {
        PlotFormat::Csv => csv(&sampled.samples),
        PlotFormat::Svg => svg(&num, report, ts, &sampled.samples),
    };
    write_atomic(path, &body)?;
    Ok(PlotSummary {
        samples: sampled.samples.len(),
        skipped: sampled.notices.len(),
        notices: sampled.notices,
    })
}

pub(crate) fn write_atomic(path: &Path, body: &str) -> Result<(), NumError> {
    let err = |e: std::io::Error| NumError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, body).map_err(err)?;
    std::fs::rename(&tmp, path).map_err(err)
}

fn csv(samples: &[OffsetSample]) -> String {
    let mut out = String::from("t,branch,x,y\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_g(s.t, 12),
            s.branch.label(),
            fmt_g(s.point.0, 12),
            fmt_g(s.point.1, 12)
        );
    }
    out
}

struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Frame {
    fn contains(&self, p: (f64, f64)) -> bool {
        p.0 >= self.x0 && p.0 <= self.x1 && p.1 >= self.y0 && p.1 <= self.y1
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        let scale = (SIZE - 2.0 * MARGIN) / (self.x1 - self.x0).max(self.y1 - self.y0);
        (
            MARGIN + (p.0 - self.x0) * scale,
            SIZE - MARGIN - (p.1 - self.y0) * scale,
        )
    }

    fn diag(&self) -> f64 {
        (self.x1 - self.x0).hypot(self.y1 - self.y0)
    }
}

/// Frame around the input curve, widened to show offsets at distance `d`.
fn frame(curve: &[(f64, f64)], d: f64) -> Frame {
    let mut xs: Vec<f64> = curve
        .iter()
        .map(|p| p.0)
        .filter(|v| v.is_finite())
        .collect();
    let mut ys: Vec<f64> = curve
        .iter()
        .map(|p| p.1)
        .filter(|v| v.is_finite())
        .collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    // ignore the far tails of unbounded curves
    let clip = |v: &[f64]| {
        let k = v.len() / 50;
        (v[k], v[v.len() - 1 - k])
    };
    let ((x0, x1), (y0, y1)) = if xs.is_empty() {
        ((-1.0, 1.0), (-1.0, 1.0))
    } else {
        (clip(&xs), clip(&ys))
    };
    let pad = 1.5 * d + 1e-9;
    Frame {
        x0: x0 - pad,
        y0: y0 - pad,
        x1: x1 + pad,
        y1: y1 + pad,
    }
}

/// Splits a point sequence into drawable runs: breaks at gaps, at points
/// outside the frame and at large jumps.
fn runs(points: &[Option<(f64, f64)>], frame: &Frame) -> Vec<Vec<(f64, f64)>> {
    let jump = 0.25 * frame.diag();
    let mut out = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    for p in points {
        match p {
            Some(p) if frame.contains(*p) => {
                if let Some(last) = cur.last() {
                    if (p.0 - last.0).hypot(p.1 - last.1) > jump {
                        out.push(std::mem::take(&mut cur));
                    }
                }
                cur.push(*p);
            }
            _ => out.push(std::mem::take(&mut cur)),
        }
    }
    out.push(cur);
    out.retain(|r| r.len() > 1);
    out
}

fn polyline(out: &mut String, frame: &Frame, run: &[(f64, f64)], style: &str) {
    let pts: Vec<String> = run
        .iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        "  <polyline fill=\"none\" {style} points=\"{}\"/>",
        pts.join(" ")
    );
}

fn svg(num: &Numeric, report: &StructureReport, ts: &[f64], samples: &[OffsetSample]) -> String {
    let curve: Vec<Option<(f64, f64)>> = ts.iter().map(|&t| num.curve_point(t)).collect();
    let fr = frame(&curve.iter().flatten().copied().collect::<Vec<_>>(), num.d);
    let special = report.special_equation();
    let on_special = |s: &OffsetSample| {
        special.is_some_and(|f| normalized_residual(f, s.point) < num.tol.residual_accept)
    };

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>"
    );
    for run in runs(&curve, &fr) {
        polyline(&mut out, &fr, &run, "stroke=\"red\" stroke-width=\"1.5\"");
    }
    for branch in [Branch::Exterior, Branch::Interior] {
        // one slot per t so skipped parameters break the line
        let mut slots: Vec<Option<&OffsetSample>> = vec![None; ts.len()];
        let mut j = 0;
        for s in samples.iter().filter(|s| s.branch == branch) {
            while j < ts.len() && ts[j] != s.t {
                j += 1;
            }
            if j < ts.len() {
                slots[j] = Some(s);
            }
        }
        for want_special in [false, true] {
            let mut pts: Vec<Option<(f64, f64)>> = Vec::with_capacity(slots.len());
            let mut prev: Option<(f64, f64)> = None;
            for s in &slots {
                // the normal flips at cusps, where the branches swap sides
                if let (Some(s), Some(n)) = (s, prev) {
                    if s.unit_normal.0 * n.0 + s.unit_normal.1 * n.1 < 0.0 {
                        pts.push(None);
                    }
                }
                if let Some(s) = s {
                    prev = Some(s.unit_normal);
                }
                pts.push(s.filter(|s| on_special(s) == want_special).map(|s| s.point));
            }
            let style = if want_special {
                "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"8,3,2,3\""
            } else {
                "stroke=\"black\" stroke-width=\"1\""
            };
            for run in runs(&pts, &fr) {
                polyline(&mut out, &fr, &run, style);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_and_rows() {
        let s = OffsetSample {
            t: 0.5,
            branch: Branch::Interior,
            point: (1.0 / 3.0, -2.0),
            base_point: (0.0, 0.0),
            unit_normal: (1.0, 0.0),
        };
        assert_eq!(csv(&[s]), "t,branch,x,y\n0.5,int,0.333333333333,-2\n");
    }

    #[test]
    fn runs_break_at_gaps() {
        let f = Frame {
            x0: -1.0,
            y0: -1.0,
            x1: 1.0,
            y1: 1.0,
        };
        let pts = [
            Some((0.0, 0.0)),
            Some((0.1, 0.0)),
            None,
            Some((0.2, 0.0)),
            Some((0.3, 0.0)),
            Some((5.0, 0.0)),
        ];
        assert_eq!(runs(&pts, &f).len(), 2);
    }
}
