//! Vector algebra of the Galilean space G3.
//!
//! The first coordinate is the absolute direction. A vector whose first
//! coordinate is exactly zero is isotropic; the scalar product and the norm
//! switch branches on that test. Isotropy is decided exactly, without a
//! tolerance: every isotropic vector built by this crate gets a literal `0.0`
//! in its first slot.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Below this isotropic norm a vector cannot be normalized.
pub const ZERO_NORM: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum VectorError {
    #[error("vector {0} is not isotropic (x != 0)")]
    NonIsotropicInput(G3Vector),
    #[error("isotropic vector {0} is too short to normalize")]
    ZeroVector(G3Vector),
}

/// A triple `(x, y, z)` under the Galilean metric; `x` is the absolute
/// component, `y` and `z` are isotropic.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct G3Vector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl G3Vector {
    pub const ZERO: G3Vector = G3Vector { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Isotropic vector `(0, y, z)`.
    pub const fn isotropic(y: f64, z: f64) -> Self {
        Self { x: 0.0, y, z }
    }

    pub fn is_isotropic(&self) -> bool {
        self.x == 0.0
    }

    /// Galilean scalar product.
    ///
    /// `a.x * b.x` when either vector is non-isotropic, otherwise the
    /// Euclidean product of the isotropic parts.
    pub fn dot(&self, other: &G3Vector) -> f64 {
        if self.x != 0.0 || other.x != 0.0 {
            self.x * other.x
        } else {
            self.y * other.y + self.z * other.z
        }
    }

    /// Galilean cross product `(0, a3 b1 - a1 b3, a1 b2 - a2 b1)`. Always
    /// isotropic.
    pub fn cross(&self, other: &G3Vector) -> G3Vector {
        G3Vector {
            x: 0.0,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn isotropic_norm(&self) -> Result<f64, VectorError> {
        if !self.is_isotropic() {
            return Err(VectorError::NonIsotropicInput(*self));
        }
        Ok(self.y.hypot(self.z))
    }

    pub fn normalize_isotropic(&self) -> Result<G3Vector, VectorError> {
        let norm = self.isotropic_norm()?;
        if norm < ZERO_NORM {
            return Err(VectorError::ZeroVector(*self));
        }
        Ok(G3Vector::isotropic(self.y / norm, self.z / norm))
    }

    /// `|x|` for non-isotropic vectors, the Euclidean length of `(y, z)`
    /// otherwise. This is also the Galilean distance of a difference vector.
    pub fn galilean_norm(&self) -> f64 {
        if self.x != 0.0 {
            self.x.abs()
        } else {
            self.y.hypot(self.z)
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

struct Component(f64);

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.0.abs();
        if a == 0.0 || (1e-4..1e16).contains(&a) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{:e}", self.0)
        }
    }
}

impl fmt::Display for G3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.to_array().map(Component);
        write!(f, "({x}, {y}, {z})")
    }
}

impl Add for G3Vector {
    type Output = G3Vector;
    fn add(self, rhs: G3Vector) -> G3Vector {
        G3Vector::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for G3Vector {
    type Output = G3Vector;
    fn sub(self, rhs: G3Vector) -> G3Vector {
        G3Vector::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for G3Vector {
    type Output = G3Vector;
    fn neg(self) -> G3Vector {
        G3Vector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<G3Vector> for f64 {
    type Output = G3Vector;
    fn mul(self, rhs: G3Vector) -> G3Vector {
        G3Vector::new(self * rhs.x, self * rhs.y, self * rhs.z)
    }
}

impl Mul<f64> for G3Vector {
    type Output = G3Vector;
    fn mul(self, rhs: f64) -> G3Vector {
        rhs * self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: f64, y: f64, z: f64) -> G3Vector {
        G3Vector::new(x, y, z)
    }

    #[test]
    fn dot_branches() {
        assert_eq!(v(1.0, 2.0, 3.0).dot(&v(4.0, 0.0, 0.0)), 4.0);
        assert_eq!(v(0.0, 3.0, 4.0).dot(&v(0.0, 3.0, 4.0)), 25.0);
        assert_eq!(v(0.0, 1.0, 0.0).dot(&v(0.0, 0.0, 1.0)), 0.0);
        // one non-isotropic factor selects the first branch
        assert_eq!(v(0.0, 5.0, 5.0).dot(&v(2.0, 5.0, 5.0)), 0.0);
    }

    #[test]
    fn cross_on_standard_frame() {
        assert_eq!(v(1.0, 0.0, 0.0).cross(&v(0.0, 1.0, 0.0)), v(0.0, 0.0, 1.0));
        assert_eq!(v(0.0, 0.0, 1.0).cross(&v(1.0, 0.0, 0.0)), v(0.0, 1.0, 0.0));
        let a = v(1.5, -2.0, 7.0);
        assert_eq!(a.cross(&a), G3Vector::ZERO);
    }

    #[test]
    fn norms() {
        assert_eq!(v(0.0, 3.0, 4.0).isotropic_norm().unwrap(), 5.0);
        assert_eq!(G3Vector::ZERO.isotropic_norm().unwrap(), 0.0);
        for k in 0..16 {
            let th = k as f64 * 0.4;
            let n = v(0.0, th.cos(), th.sin()).isotropic_norm().unwrap();
            assert!((n - 1.0).abs() < 1e-15);
        }
        assert!(matches!(
            v(1.0, 0.0, 0.0).isotropic_norm(),
            Err(VectorError::NonIsotropicInput(_))
        ));
        assert_eq!(v(-3.0, 1.0, 1.0).galilean_norm(), 3.0);
        assert_eq!(v(0.0, 3.0, 4.0).galilean_norm(), 5.0);
    }

    #[test]
    fn normalize() {
        assert_eq!(v(0.0, 3.0, 4.0).normalize_isotropic().unwrap(), v(0.0, 0.6, 0.8));
        assert_eq!(v(0.0, 0.0, 2.0).normalize_isotropic().unwrap(), v(0.0, 0.0, 1.0));
        assert!(matches!(
            G3Vector::ZERO.normalize_isotropic(),
            Err(VectorError::ZeroVector(_))
        ));
        assert!(matches!(
            v(0.5, 3.0, 4.0).normalize_isotropic(),
            Err(VectorError::NonIsotropicInput(_))
        ));
    }

    fn comp() -> impl Strategy<Value = f64> {
        prop_oneof![Just(0.0), -10.0..10.0f64]
    }

    fn vec3() -> impl Strategy<Value = G3Vector> {
        (comp(), comp(), comp()).prop_map(|(x, y, z)| v(x, y, z))
    }

    proptest! {
        #[test]
        fn cross_is_isotropic_and_antisymmetric(a in vec3(), b in vec3()) {
            let ab = a.cross(&b);
            let ba = b.cross(&a);
            prop_assert_eq!(ab.x, 0.0);
            prop_assert_eq!(ab.y, -ba.y);
            prop_assert_eq!(ab.z, -ba.z);
            prop_assert!(ab.dot(&ab) >= 0.0);
            if ab.isotropic_norm().unwrap() >= ZERO_NORM {
                let unit = ab.normalize_isotropic().unwrap();
                prop_assert!((unit.isotropic_norm().unwrap() - 1.0).abs() < 1e-14);
            }
        }

        #[test]
        fn dot_branch_identities(a in vec3(), y in comp(), z in comp()) {
            let b = G3Vector::isotropic(y, z);
            let a_iso = G3Vector::isotropic(a.y, a.z);
            prop_assert_eq!(a_iso.dot(&b), a.y * y + a.z * z);
            if a.x != 0.0 {
                prop_assert_eq!(a.dot(&a), a.x * a.x);
            }
        }
    }

    #[test]
    fn display_switches_to_exponent_for_tiny_components() {
        assert_eq!(G3Vector::new(1.0, -0.5, 0.0).to_string(), "(1, -0.5, 0)");
        assert_eq!(G3Vector::new(1.0, 4.4e-16, -2e20).to_string(), "(1, 4.4e-16, -2e20)");
    }
}
