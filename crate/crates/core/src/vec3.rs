//! Small fixed-size vector arithmetic.
//!
//! All points and vector values in this crate live in at most three
//! dimensions (curves in the plane, surfaces in space, complex kernel
//! values as (re, im) pairs). A single `Vec3` with trailing zero
//! components covers every case without generics; the ambient dimension
//! travels separately where it matters (reports, scene files).

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    /// Embeds a 2-d point as (x, y, 0).
    pub fn xy(x: f64, y: f64) -> Self {
        Vec3([x, y, 0.0])
    }

    /// Builds from the first `slice.len()` components, zero-padding the rest.
    pub fn from_slice(slice: &[f64]) -> Self {
        let mut c = [0.0; 3];
        for (dst, src) in c.iter_mut().zip(slice) {
            *dst = *src;
        }
        Vec3(c)
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Vec3) -> f64 {
        (*self - *other).norm()
    }

    pub fn normalized(&self) -> Vec3 {
        let n = self.norm();
        Vec3([self.0[0] / n, self.0[1] / n, self.0[2] / n])
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[1] * other.0[2] - self.0[2] * other.0[1],
            self.0[2] * other.0[0] - self.0[0] * other.0[2],
            self.0[0] * other.0[1] - self.0[1] * other.0[0],
        ])
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// The first `dim` components, for serialization.
    pub fn truncated(&self, dim: usize) -> Vec<f64> {
        self.0[..dim.min(3)].to_vec()
    }

    /// Interprets (x, y) as a complex number and multiplies.
    pub fn complex_mul(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[0] * other.0[0] - self.0[1] * other.0[1],
            self.0[0] * other.0[1] + self.0[1] * other.0[0],
            0.0,
        ])
    }

    /// Integer power of (x, y) as a complex number.
    pub fn complex_pow(&self, mut exp: u32) -> Vec3 {
        let mut base = *self;
        let mut acc = Vec3::new(1.0, 0.0, 0.0);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.complex_mul(&base);
            }
            base = base.complex_mul(&base);
            exp >>= 1;
        }
        acc
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        self.0[0] += rhs.0[0];
        self.0[1] += rhs.0[1];
        self.0[2] += rhs.0[2];
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
        ])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        self.scale(rhs)
    }
}
