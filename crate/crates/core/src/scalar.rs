use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar the geometry and linear algebra are generic over.
///
/// Implemented for `f32` and `f64`. Tolerances in this crate are written as
/// `f64` literals and converted with [`Real::tolerance`], which never goes
/// below a small multiple of the type's machine epsilon.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant. Panics only if the type cannot represent
    /// finite `f64` literals, which does not happen for `f32`/`f64`.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable")
    }

    /// `base`, floored at 64 machine epsilons of `Self`.
    #[inline]
    fn tolerance(base: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(base).max(floor)
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_floors_at_epsilon() {
        assert_eq!(f64::tolerance(1e-9), 1e-9);
        assert!(f32::tolerance(1e-9) > 1e-6);
    }
}
