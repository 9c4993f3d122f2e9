use crate::scalar::Real;

/// Relative collinearity tolerance: a turn whose sine is at most this is
/// treated as straight and its middle point dropped.
const COLLINEAR_TOL: f64 = 1e-9;

/// Points closer than this (relative to the coordinate scale) are merged.
const MERGE_TOL: f64 = 1e-9;

/// Convex hull of planar points by Andrew's monotone chain.
///
/// Returns indices of the hull vertices in counterclockwise order, starting
/// at the lexicographically smallest `(x, y)` point, and the number of input
/// points merged into an earlier coincident point. Ties in the sort keep
/// input order, so the earliest of coincident points is kept.
pub fn convex_hull<T: Real>(points: &[[T; 2]]) -> (Vec<usize>, usize) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p[0].partial_cmp(&q[0])
            .expect("finite")
            .then(p[1].partial_cmp(&q[1]).expect("finite"))
            .then(a.cmp(&b))
    });

    let scale = points
        .iter()
        .fold(T::one(), |m, p| m.max(p[0].abs()).max(p[1].abs()));
    let merge = T::tolerance(MERGE_TOL) * scale;
    let mut kept: Vec<usize> = Vec::with_capacity(order.len());
    let mut merged = 0;
    for &i in &order {
        if let Some(&last) = kept.last() {
            let (p, q) = (points[i], points[last]);
            if (p[0] - q[0]).abs() <= merge && (p[1] - q[1]).abs() <= merge {
                merged += 1;
                continue;
            }
        }
        kept.push(i);
    }
    if kept.len() <= 2 {
        return (kept, merged);
    }

    let tol = T::tolerance(COLLINEAR_TOL);
    let left_turn = |a: usize, b: usize, c: usize| {
        let (a, b, c) = (points[a], points[b], points[c]);
        let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
        let (vx, vy) = (c[0] - a[0], c[1] - a[1]);
        let cross = ux * vy - uy * vx;
        cross > tol * ux.hypot(uy) * vx.hypot(vy)
    };
    let chain = |iter: &mut dyn Iterator<Item = usize>| {
        let mut h: Vec<usize> = Vec::new();
        for i in iter {
            while h.len() >= 2 && !left_turn(h[h.len() - 2], h[h.len() - 1], i) {
                h.pop();
            }
            h.push(i);
        }
        h.pop();
        h
    };
    let mut hull = chain(&mut kept.iter().copied());
    hull.extend(chain(&mut kept.iter().rev().copied()));
    (hull, merged)
}
