//! Static SVG frames: robot discs, the enclosing circle, the symmetry axis,
//! the current targets and the paths taken this round.

use std::fmt::Write;

use ucircle::geometry::{smallest_enclosing_circle, Circle, PathPiece, Point2};
use ucircle::logic::compute_target_points;
use ucircle::sim::{RoundRecord, TraceHeader};

fn bounds(points: impl Iterator<Item = Point2<f64>>) -> (f64, f64, f64, f64) {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for p in points {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    (min_x, min_y, max_x, max_y)
}

fn arc_svg(out: &mut String, center: Point2<f64>, radius: f64, start: f64, sweep: f64) {
    let a = center + Point2::from_polar(radius, start);
    let b = center + Point2::from_polar(radius, start + sweep);
    let large = if sweep.abs() > std::f64::consts::PI { 1 } else { 0 };
    // With the y-flip transform a positive sweep renders as sweep flag 0.
    let flag = if sweep > 0.0 { 0 } else { 1 };
    let _ = write!(
        out,
        "M {:.4} {:.4} A {:.4} {:.4} 0 {large} {flag} {:.4} {:.4}",
        a.x, a.y, radius, radius, b.x, b.y
    );
}

/// Renders one round as a standalone SVG document (post-move state, with
/// the executed paths drawn on top).
pub fn render_frame(record: &RoundRecord<f64>, header: &TraceHeader<f64>) -> String {
    let sec = smallest_enclosing_circle(&record.post).ok();
    let tol = header.tolerances;
    let targets = sec.as_ref().and_then(|sec| {
        if tol.is_expansion_phase(sec.radius, header.radius) {
            None
        } else {
            let lifted = Circle::new(sec.center, sec.radius.max(header.radius));
            compute_target_points(&lifted, &record.post, header.n, &tol)
                .ok()
                .map(|l| l.points)
        }
    });

    let everything = record
        .post
        .iter()
        .copied()
        .chain(record.pre.iter().copied())
        .chain(targets.iter().flatten().copied())
        .chain(sec.iter().flat_map(|c| {
            [
                c.center + Point2::new(c.radius, c.radius),
                c.center - Point2::new(c.radius, c.radius),
            ]
        }));
    let (min_x, min_y, max_x, max_y) = bounds(everything);
    let margin = 2.0;
    let (x0, y0) = (min_x - margin, min_y - margin);
    let (w, h) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" viewBox="{:.3} {:.3} {:.3} {:.3}">"##,
        x0,
        -(y0 + h),
        w,
        h
    );
    // Flip Y so the agreed north points up.
    let _ = writeln!(s, r##"<g transform="scale(1,-1)" stroke-width="0.06">"##);

    if let Some(sec) = &sec {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.4}" cy="{:.4}" r="{:.4}" fill="none" stroke="#888" stroke-dasharray="0.3 0.2"/>"##,
            sec.center.x, sec.center.y, sec.radius
        );
        let _ = writeln!(
            s,
            r##"<line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="#bbb" stroke-dasharray="0.15 0.15"/>"##,
            sec.center.x,
            y0,
            sec.center.x,
            y0 + h
        );
    }

    if let Some(targets) = &targets {
        for t in targets {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.4}" cy="{:.4}" r="0.12" fill="#2a2" stroke="none"/>"##,
                t.x, t.y
            );
        }
    }

    for d in &record.decisions {
        let (Some(path), true) = (&d.path, d.moved && !d.deferred) else {
            continue;
        };
        let mut data = String::new();
        for piece in &path.pieces {
            match *piece {
                PathPiece::Line { from, to } => {
                    let _ = write!(
                        data,
                        "M {:.4} {:.4} L {:.4} {:.4} ",
                        from.x, from.y, to.x, to.y
                    );
                }
                PathPiece::Arc {
                    center,
                    radius,
                    start_angle,
                    sweep,
                } => arc_svg(&mut data, center, radius, start_angle, sweep),
            }
        }
        let _ = writeln!(
            s,
            r##"<path d="{data}" fill="none" stroke="#d40" stroke-width="0.08"/>"##
        );
    }

    for (i, p) in record.post.iter().enumerate() {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.4}" cy="{:.4}" r="1" fill="#9ccdfa" fill-opacity="0.75" stroke="#225"/>"##,
            p.x, p.y
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.4}" y="{:.4}" font-size="0.6" text-anchor="middle" transform="scale(1,-1)" fill="#225">{i}</text>"##,
            p.x,
            -(p.y - 0.2)
        );
    }

    let _ = writeln!(s, "</g>\n</svg>");
    s
}
