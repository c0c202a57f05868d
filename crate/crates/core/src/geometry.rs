use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::num::Scalar;

/// Cartesian position in metres. `z` is height above ground.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Self) -> T {
        (*self - *other).norm()
    }

    pub fn horizontal_distance(&self, other: &Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn with_z(self, z: T) -> Self {
        Self { z, ..self }
    }
}

impl<T: Scalar> Add for Point3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Scalar> Sub for Point3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Scalar> Mul<T> for Point3<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

/// Point of a horizontal disc (centre `center`, radius `radius`, at height
/// `disc_height`) that is closest to `p`.
///
/// The horizontal offset is projected onto the disc and clamped to its rim;
/// the height is fixed to the disc plane.
pub fn closest_point_in_disc<T: Scalar>(
    center: &Point3<T>,
    radius: T,
    disc_height: T,
    p: &Point3<T>,
) -> Point3<T> {
    let dx = p.x - center.x;
    let dy = p.y - center.y;
    let r = dx.hypot(dy);
    if r <= radius {
        Point3::new(p.x, p.y, disc_height)
    } else {
        let scale = radius / r;
        Point3::new(center.x + dx * scale, center.y + dy * scale, disc_height)
    }
}
