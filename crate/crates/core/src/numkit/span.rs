use crate::scalar::Real;

use super::vector::{dot, norm};
use super::Vector;

/// Orthonormal basis of the span of `vectors` by modified Gram-Schmidt with
/// one reorthogonalization pass. A vector whose residual falls below
/// `rel_tol` times its own norm is treated as dependent and skipped.
pub fn orthonormal_basis<T: Real>(vectors: &[Vector<T>], rel_tol: T) -> Vec<Vector<T>> {
    let mut basis: Vec<Vec<T>> = Vec::new();
    for v in vectors {
        let original = v.norm();
        if original == T::zero() {
            continue;
        }
        let mut r = v.entries().to_vec();
        project_out(&mut r, &basis);
        project_out(&mut r, &basis);
        let rn = norm(&r);
        if rn > rel_tol * original {
            r.iter_mut().for_each(|x| *x = *x / rn);
            basis.push(r);
        }
    }
    basis.into_iter().map(Vector::from_vec_unchecked).collect()
}

/// Removes the components of `r` along each (orthonormal) vector of `basis`.
pub(crate) fn project_out<T: Real>(r: &mut [T], basis: &[Vec<T>]) {
    for q in basis {
        let c = dot(r, q);
        for (x, &qv) in r.iter_mut().zip(q) {
            *x = *x - c * qv;
        }
    }
}

/// Residual of `v` after removing its projection onto the span of an
/// orthonormal set.
pub fn residual<T: Real>(v: &Vector<T>, orthonormal: &[Vector<T>]) -> Vector<T> {
    let basis: Vec<Vec<T>> = orthonormal.iter().map(|q| q.entries().to_vec()).collect();
    let mut r = v.entries().to_vec();
    project_out(&mut r, &basis);
    project_out(&mut r, &basis);
    Vector::from_vec_unchecked(r)
}

/// A unit vector orthogonal to every vector of an orthonormal set that spans
/// a proper subspace of R^dim: the normalized residual of the standard basis
/// vector that survives projection best.
pub fn complement_direction<T: Real>(orthonormal: &[Vector<T>], dim: usize) -> Option<Vector<T>> {
    if orthonormal.len() >= dim {
        return None;
    }
    (0..dim)
        .map(|k| residual(&Vector::unit(dim, k), orthonormal))
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite norms"))
        .and_then(|r| r.normalized())
}
