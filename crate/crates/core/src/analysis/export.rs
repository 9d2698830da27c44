use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use super::oscillation::{JumpCluster, JumpReport};
use crate::error::Result;
use crate::geometry::{Domain, Point};

#[derive(Serialize)]
struct JumpRow {
    px: f64,
    py: f64,
    osc: f64,
    jx1: f64,
    jy1: f64,
    jx2: f64,
    jy2: f64,
    flagged: bool,
}

/// Writes `px,py,osc,jx1,jy1,jx2,jy2,flagged`, one row per probe.
pub fn write_jumps_csv<W: Write>(out: W, report: &JumpReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (k, p) in report.probes.iter().enumerate() {
        w.serialize(JumpRow {
            px: p.location.x,
            py: p.location.y,
            osc: p.oscillation,
            jx1: p.jump_pair.0.x,
            jy1: p.jump_pair.0.y,
            jx2: p.jump_pair.1.x,
            jy2: p.jump_pair.1.y,
            flagged: report.is_flagged(k),
        })?;
    }
    w.flush()?;
    Ok(())
}

const SVG_SIZE: f64 = 800.0;
const SVG_PAD: f64 = 20.0;

/// Standalone SVG of the source domain with all probes in grey, flagged
/// probes in red and each cluster polyline in blue.
pub fn jumps_svg(domain: &Domain, report: &JumpReport, clusters: &[JumpCluster]) -> String {
    let (lo, hi) = domain.discrete().bounding_box();
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let s = (SVG_SIZE - 2.0 * SVG_PAD) / span;
    let width = (hi.x - lo.x) * s + 2.0 * SVG_PAD;
    let height = (hi.y - lo.y) * s + 2.0 * SVG_PAD;
    let map = |p: Point| (SVG_PAD + (p.x - lo.x) * s, SVG_PAD + (hi.y - p.y) * s);
    let path = |pts: &mut dyn Iterator<Item = Point>| {
        let mut d = String::new();
        for p in pts {
            let (x, y) = map(p);
            let _ = write!(d, "{:.3},{:.3} ", x, y);
        }
        d.trim_end().to_string()
    };

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let boundary = path(&mut domain.discrete().vertices().iter().copied());
    let _ = writeln!(svg, r#"<polygon points="{boundary}" fill="none" stroke="black" stroke-width="1.5"/>"#);
    let _ = writeln!(svg, r##"<g fill="#bbbbbb">"##);
    for (k, p) in report.probes.iter().enumerate() {
        if !report.is_flagged(k) {
            let (x, y) = map(p.location);
            let _ = writeln!(svg, r#"<circle cx="{x:.3}" cy="{y:.3}" r="1"/>"#);
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r##"<g fill="#d62728">"##);
    for p in report.flagged_probes() {
        let (x, y) = map(p.location);
        let _ = writeln!(svg, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5"/>"#);
    }
    let _ = writeln!(svg, "</g>");
    for c in clusters {
        let line = path(&mut c.polyline.iter().copied());
        let _ = writeln!(svg, r##"<polyline points="{line}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##);
    }
    let _ = writeln!(svg, "</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{cluster_jumps, detect_jump_set, local_oscillation};
    use crate::examples::make_rectangle;
    use crate::transport::CloudPair;

    fn report() -> (Domain, JumpReport, Vec<JumpCluster>) {
        let x: Vec<Point> = (0..400).map(|i| Point::new((i % 20) as f64 / 19.0, (i / 20) as f64 / 19.0)).collect();
        let y: Vec<Point> = x.iter().map(|p| if p.x < 0.5 { *p } else { *p + Point::new(0.0, 2.0) }).collect();
        let pair = CloudPair::new(x, y).unwrap();
        let sigma: Vec<usize> = (0..400).collect();
        let r = detect_jump_set(&local_oscillation(&pair, &sigma, 0.06).unwrap(), 0.5).unwrap();
        let c = cluster_jumps(&r, 0.12);
        (make_rectangle(1.0, 1.0).unwrap(), r, c)
    }

    #[test]
    fn csv_has_header_and_one_row_per_probe() {
        let (_, r, _) = report();
        let mut buf = Vec::new();
        write_jumps_csv(&mut buf, &r).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("px,py,osc,jx1,jy1,jx2,jy2,flagged"));
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 400);
        assert_eq!(rows.iter().filter(|l| l.ends_with(",true")).count(), r.flagged.len());
    }

    #[test]
    fn svg_parses_as_xml() {
        let (d, r, c) = report();
        let svg = jumps_svg(&d, &r, &c);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        let circles = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
        assert_eq!(circles, 400);
        assert_eq!(svg, jumps_svg(&d, &r, &c));
    }
}
