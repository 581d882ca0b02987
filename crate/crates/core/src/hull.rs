//! Facets of origin-symmetric polytopes in dimension 1 to 3.

use alloc::vec::Vec;


use crate::linalg::Vector;

/// Normals `h` of the facets `{x : h . x = 1}` of `conv(vertices)`, which
/// must contain the origin in its interior. `None` above dimension 3 or for
/// degenerate input.
pub(crate) fn facet_normals(vertices: &[Vector]) -> Option<Vec<Vector>> {
    let dim = vertices.first()?.dim();
    let normals = match dim {
        1 => vertices.iter().filter(|v| v[0] != 0.0).map(|v| Vector::from([1.0 / v[0]])).collect(),
        2 => polygon(vertices)?,
        3 => hull3(vertices)?,
        _ => return None,
    };
    let mut unique: Vec<Vector> = Vec::with_capacity(normals.len());
    for h in normals {
        if !unique.iter().any(|u| (u - &h).max_abs() <= 1e-9 * (1.0 + h.max_abs())) {
            unique.push(h);
        }
    }
    Some(unique)
}

fn polygon(vertices: &[Vector]) -> Option<Vec<Vector>> {
    let mut sorted: Vec<&Vector> = vertices.iter().collect();
    sorted.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    let n = sorted.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (sorted[k], sorted[(k + 1) % n]);
        let det = a[0] * b[1] - a[1] * b[0];
        if det.abs() < 1e-300 {
            continue;
        }
        // h . a = 1, h . b = 1
        out.push(Vector::from([(b[1] - a[1]) / det, (a[0] - b[0]) / det]));
    }
    (!out.is_empty()).then_some(out)
}

type P3 = [f64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

struct Face {
    v: [usize; 3],
    normal: P3,
    offset: f64,
}

fn make_face(pts: &[P3], v: [usize; 3], inside: P3) -> Face {
    let mut v = v;
    let mut normal = cross(sub(pts[v[1]], pts[v[0]]), sub(pts[v[2]], pts[v[0]]));
    let mut offset = dot3(normal, pts[v[0]]);
    if dot3(normal, inside) > offset {
        v.swap(1, 2);
        normal = [-normal[0], -normal[1], -normal[2]];
        offset = -offset;
    }
    Face { v, normal, offset }
}

/// Incremental convex hull.
fn hull3(vertices: &[Vector]) -> Option<Vec<Vector>> {
    let pts: Vec<P3> = vertices.iter().map(|v| [v[0], v[1], v[2]]).collect();
    let scale = pts.iter().flatten().fold(0.0_f64, |m, c| m.max(c.abs())).max(1e-300);
    let eps = 1e-12 * scale * scale * scale;
    let n = pts.len();
    if n < 4 {
        return None;
    }
    let dist2 = |a: P3, b: P3| dot3(sub(a, b), sub(a, b));
    let i0 = 0;
    let i1 = (0..n).max_by(|&a, &b| dist2(pts[a], pts[i0]).total_cmp(&dist2(pts[b], pts[i0])))?;
    let line = sub(pts[i1], pts[i0]);
    let i2 = (0..n).max_by(|&a, &b| {
        let da = dot3(cross(line, sub(pts[a], pts[i0])), cross(line, sub(pts[a], pts[i0])));
        let db = dot3(cross(line, sub(pts[b], pts[i0])), cross(line, sub(pts[b], pts[i0])));
        da.total_cmp(&db)
    })?;
    let plane = cross(line, sub(pts[i2], pts[i0]));
    let i3 = (0..n).max_by(|&a, &b| {
        dot3(plane, sub(pts[a], pts[i0])).abs().total_cmp(&dot3(plane, sub(pts[b], pts[i0])).abs())
    })?;
    if dot3(plane, sub(pts[i3], pts[i0])).abs() <= eps {
        return None;
    }
    let seed = [i0, i1, i2, i3];
    let inside = {
        let mut c = [0.0; 3];
        for &i in &seed {
            for k in 0..3 {
                c[k] += pts[i][k] / 4.0;
            }
        }
        c
    };
    let mut faces: Vec<Face> = [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]]
        .into_iter()
        .map(|v| make_face(&pts, v, inside))
        .collect();

    for p in 0..n {
        if seed.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| dot3(f.normal, pts[p]) - f.offset > eps).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for k in 0..3 {
                edges.push((f.v[k], f.v[(k + 1) % 3]));
            }
        }
        let horizon: Vec<(usize, usize)> =
            edges.iter().copied().filter(|&(a, b)| !edges.contains(&(b, a))).collect();
        let mut kept: Vec<Face> =
            faces.into_iter().zip(visible).filter_map(|(f, v)| (!v).then_some(f)).collect();
        for (a, b) in horizon {
            kept.push(make_face(&pts, [a, b, p], inside));
        }
        faces = kept;
    }
    faces
        .iter()
        .map(|f| (f.offset > 0.0).then(|| Vector::from(f.normal.map(|c| c / f.offset))))
        .collect()
}
