use crate::error::{invalid, Error, Result};
use crate::numkit::Vector;
use crate::scalar::Real;

use super::cone::{extreme_rays, Reduction};
use super::hull::convex_hull;
use super::vertices::{enumerate_raw, DEFAULT_VERTEX_BUDGET};
use super::{LinearProgram, PolytopeVertex, FEASIBILITY_TOL};

/// Minimum sine of the angle between the two plane vectors.
const PLANE_SINE_TOL: f64 = 1e-9;

/// Orthogonal projection of a polytope onto `span(t, z)`.
///
/// Planar coordinates are taken in the orthonormal frame `u = t/‖t‖`,
/// `v ∝ z - (zᵀu) u`, so the second coordinate increases with `z` for fixed
/// `t`-coordinate.
#[derive(Debug, Clone)]
pub struct ShadowPolygon<T> {
    pub plane: (Vector<T>, Vector<T>),
    axes: [Vector<T>; 2],
    /// Counterclockwise hull vertices.
    pub hull_points: Vec<[T; 2]>,
    /// For each hull point, a polytope vertex projecting onto it.
    pub preimages: Vec<PolytopeVertex<T>>,
    /// Polytope vertices whose projection coincided with an earlier one.
    pub collisions: usize,
}

impl<T: Real> ShadowPolygon<T> {
    pub fn vertex_count(&self) -> usize {
        self.hull_points.len()
    }

    pub fn project(&self, x: &Vector<T>) -> [T; 2] {
        [self.axes[0].dot(x), self.axes[1].dot(x)]
    }

    /// Whether planar point `p` lies inside or on the hull, up to `tol`.
    pub fn contains(&self, p: [T; 2], tol: T) -> bool {
        let h = &self.hull_points;
        match h.len() {
            0 => false,
            1 => dist(p, h[0]) <= tol,
            2 => segment_distance(p, h[0], h[1]) <= tol,
            k => (0..k).all(|i| {
                let (a, b) = (h[i], h[(i + 1) % k]);
                let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
                let cross = ex * (p[1] - a[1]) - ey * (p[0] - a[0]);
                cross >= -tol * ex.hypot(ey)
            }),
        }
    }

    /// Euclidean distance from `p` to the hull boundary.
    pub fn boundary_distance(&self, p: [T; 2]) -> T {
        let h = &self.hull_points;
        let k = h.len();
        match k {
            0 => T::infinity(),
            1 => dist(p, h[0]),
            _ => (0..k)
                .map(|i| segment_distance(p, h[i], h[(i + 1) % k]))
                .fold(T::infinity(), T::min),
        }
    }

    /// Distance from `p` to the nearest hull vertex.
    pub fn nearest_vertex_distance(&self, p: [T; 2]) -> T {
        self.hull_points.iter().map(|&q| dist(p, q)).fold(T::infinity(), T::min)
    }
}

fn dist<T: Real>(p: [T; 2], q: [T; 2]) -> T {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

fn segment_distance<T: Real>(p: [T; 2], a: [T; 2], b: [T; 2]) -> T {
    let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
    let len2 = ex * ex + ey * ey;
    if len2 == T::zero() {
        return dist(p, a);
    }
    let s = (((p[0] - a[0]) * ex + (p[1] - a[1]) * ey) / len2).max(T::zero()).min(T::one());
    dist(p, [a[0] + s * ex, a[1] + s * ey])
}

/// Shadow of `{x : a_iᵀx <= 1}` on `span(t, z)`.
pub fn shadow_polygon<T: Real>(rows: &[Vector<T>], plane_t: &Vector<T>, plane_z: &Vector<T>) -> Result<ShadowPolygon<T>> {
    if rows.is_empty() {
        return Err(invalid("shadow needs at least one constraint row"));
    }
    let lp = LinearProgram::unit_rhs(rows.to_vec(), plane_z.clone())?;
    shadow_polygon_of(&lp, plane_t, plane_z)
}

/// Shadow of the feasible region of `lp` on `span(t, z)`: the exact hull of
/// the projections of all enumerated vertices.
pub fn shadow_polygon_of<T: Real>(lp: &LinearProgram<T>, plane_t: &Vector<T>, plane_z: &Vector<T>) -> Result<ShadowPolygon<T>> {
    let d = lp.d();
    if plane_t.dim() != d || plane_z.dim() != d {
        return Err(invalid("plane vectors must match the polytope dimension"));
    }
    let u = plane_t.normalized().ok_or(Error::DegeneratePlane)?;
    let z_norm = plane_z.norm();
    let z_perp = plane_z.axpy(-plane_z.dot(&u), &u);
    if z_norm == T::zero() || z_perp.norm() < T::lit(PLANE_SINE_TOL) * z_norm {
        return Err(Error::DegeneratePlane);
    }
    let v = z_perp.normalized().ok_or(Error::DegeneratePlane)?;

    let red = Reduction::of(lp.rows());
    let tol = T::tolerance(FEASIBILITY_TOL);
    let vertices = if red.rank == 0 {
        Vec::new()
    } else {
        enumerate_raw(&red.rows, lp.rhs(), DEFAULT_VERTEX_BUDGET)?
    };
    let empty = vertices.is_empty() && !(red.rank == 0 && lp.rhs().iter().all(|&b| b >= -tol));
    if !empty {
        if red.lineality_component(&u).norm() > tol || red.lineality_component(&v).norm() > tol {
            return Err(Error::UnboundedShadow);
        }
        if red.rank > 0 {
            for ray in extreme_rays(&red.rows, DEFAULT_VERTEX_BUDGET)? {
                let w = red.lift(&ray);
                if w.dot(&u).abs() > tol || w.dot(&v).abs() > tol {
                    return Err(Error::UnboundedShadow);
                }
            }
        }
    }

    let lifted: Vec<PolytopeVertex<T>> = vertices.into_iter().map(|v| red.lift_vertex(v)).collect();
    let projected: Vec<[T; 2]> = lifted.iter().map(|x| [u.dot(&x.point), v.dot(&x.point)]).collect();
    let (hull, collisions) = convex_hull(&projected);
    Ok(ShadowPolygon {
        plane: (plane_t.clone(), plane_z.clone()),
        axes: [u, v],
        hull_points: hull.iter().map(|&i| projected[i]).collect(),
        preimages: hull.iter().map(|&i| lifted[i].clone()).collect(),
        collisions,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::enumerate_vertices;
    use super::*;

    fn v3(x: f64, y: f64, z: f64) -> Vector<f64> {
        Vector::new(vec![x, y, z]).unwrap()
    }

    #[test]
    fn square_shadow_is_itself() {
        let lp = cube(2, vec![0.0, 1.0]);
        let s = shadow_polygon(lp.rows(), &vec2(1.0, 0.0), &vec2(0.0, 1.0)).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.hull_points, vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]);
    }

    #[test]
    fn cube_shadows() {
        let lp = cube(3, vec![0.0, 0.0, 1.0]);
        let t = v3(1.0, 0.2, 0.1).normalized().unwrap();
        let z = v3(0.1, 1.0, 0.3).normalized().unwrap();
        assert_eq!(shadow_polygon(lp.rows(), &t, &z).unwrap().vertex_count(), 6);
        let s = shadow_polygon(lp.rows(), &v3(1.0, 0.0, 0.0), &v3(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.collisions, 4);
    }

    #[test]
    fn preimages_project_onto_hull_points() {
        let lp = cube(3, vec![0.0, 0.0, 1.0]);
        let s = shadow_polygon(lp.rows(), &v3(1.0, 0.3, -0.2), &v3(0.1, 0.5, 1.0)).unwrap();
        for (p, pre) in s.hull_points.iter().zip(&s.preimages) {
            let q = s.project(&pre.point);
            assert!((q[0] - p[0]).abs() < 1e-15 && (q[1] - p[1]).abs() < 1e-15);
        }
        for v in enumerate_vertices(&lp).unwrap() {
            assert!(s.contains(s.project(&v.point), 1e-12));
        }
    }

    #[test]
    fn parallel_plane_rejected() {
        let lp = cube(3, vec![0.0, 0.0, 1.0]);
        let err = shadow_polygon(lp.rows(), &v3(1.0, 1.0, 0.0), &v3(2.0, 2.0, 0.0)).unwrap_err();
        assert_eq!(err, Error::DegeneratePlane);
    }

    #[test]
    fn unbounded_shadow_rejected() {
        // A slab |x| <= 1 in R^2 is unbounded along y.
        let rows = vec![vec2(1.0, 0.0), vec2(-1.0, 0.0)];
        let err = shadow_polygon(&rows, &vec2(1.0, 0.0), &vec2(0.0, 1.0)).unwrap_err();
        assert_eq!(err, Error::UnboundedShadow);
        // The positive orthant-like cone {x, y <= 1} has extreme rays.
        let rows = vec![vec2(1.0, 0.0), vec2(0.0, 1.0)];
        let err = shadow_polygon(&rows, &vec2(1.0, 0.0), &vec2(0.0, 1.0)).unwrap_err();
        assert_eq!(err, Error::UnboundedShadow);
    }

    #[test]
    fn prism_shadow_through_lineality() {
        // |x| <= 1, |y| <= 1 in R^3: an infinite square prism along z. Its
        // shadow on the xy-plane is the square.
        let rows = vec![v3(1.0, 0.0, 0.0), v3(-1.0, 0.0, 0.0), v3(0.0, 1.0, 0.0), v3(0.0, -1.0, 0.0)];
        let s = shadow_polygon(&rows, &v3(1.0, 0.0, 0.0), &v3(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(
            shadow_polygon(&rows, &v3(1.0, 0.0, 0.0), &v3(0.0, 0.0, 1.0)).unwrap_err(),
            Error::UnboundedShadow
        );
    }
}
