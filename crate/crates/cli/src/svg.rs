//! Minimal SVG emission: a polyline of the stereographic projection in data
//! coordinates (y flipped so +Y points up) with an auto-fitted viewBox, and
//! optionally three orthographic views of the space curve.

use spherical_clothoid::curve::Vec3;

type View = fn(&Vec3) -> (f64, f64);

struct Bounds {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

fn bounds(points: impl Iterator<Item = (f64, f64)>) -> Bounds {
    let mut b = Bounds {
        x0: f64::INFINITY,
        y0: f64::INFINITY,
        x1: f64::NEG_INFINITY,
        y1: f64::NEG_INFINITY,
    };
    for (x, y) in points {
        b.x0 = b.x0.min(x);
        b.y0 = b.y0.min(y);
        b.x1 = b.x1.max(x);
        b.y1 = b.y1.max(y);
    }
    b
}

fn polyline(points: &[(f64, f64)], stroke: &str, width: f64) -> String {
    let pts: Vec<String> = points.iter().map(|(x, y)| format!("{:.6},{:.6}", x, -y)).collect();
    format!(
        "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{:.6}\" points=\"{}\"/>\n",
        stroke,
        width,
        pts.join(" ")
    )
}

/// Render the projection polyline, plus the xy/xz/yz views when positions
/// are supplied. The viewBox fits all drawn geometry with a 5% margin.
pub fn render(projection: &[(f64, f64)], positions: Option<&[Vec3]>) -> String {
    let mut body = String::new();
    let mut all: Vec<(f64, f64)> = projection.iter().map(|&(x, y)| (x, -y)).collect();

    let proj_bounds = bounds(projection.iter().map(|&(x, y)| (x, -y)));
    let span = (proj_bounds.x1 - proj_bounds.x0).max(proj_bounds.y1 - proj_bounds.y0).max(1e-9);
    body.push_str(&polyline(projection, "#1f77b4", span * 0.005));

    if let Some(pos) = positions {
        // each orthographic view drawn beside the projection, offset by a
        // little more than its own span
        let views: [(&str, View); 3] = [
            ("#d62728", |r| (r.x, r.y)),
            ("#2ca02c", |r| (r.x, r.z)),
            ("#9467bd", |r| (r.y, r.z)),
        ];
        let mut offset = proj_bounds.x1;
        for (color, project) in views {
            let raw: Vec<(f64, f64)> = pos.iter().map(project).collect();
            let vb = bounds(raw.iter().map(|&(x, y)| (x, -y)));
            offset += (vb.x1 - vb.x0).max(0.1) * 0.25 + (proj_bounds.x1 - proj_bounds.x0).max(0.1) * 0.05;
            let shifted: Vec<(f64, f64)> = raw.iter().map(|&(x, y)| (x - vb.x0 + offset, y)).collect();
            body.push_str(&polyline(&shifted, color, span * 0.005));
            all.extend(shifted.iter().map(|&(x, y)| (x, -y)));
            offset += vb.x1 - vb.x0;
        }
    }

    let b = bounds(all.iter().copied());
    let w = (b.x1 - b.x0).max(1e-9);
    let h = (b.y1 - b.y0).max(1e-9);
    let margin = 0.05 * w.max(h);
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n{}</svg>\n",
        b.x0 - margin,
        b.y0 - margin,
        w + 2.0 * margin,
        h + 2.0 * margin,
        body
    )
}
