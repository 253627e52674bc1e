//! Rectifiable curves and surfaces in ℝ^{n+1}.
//!
//! Sets are unions of smooth parametrized patches with analytic first
//! derivatives. Intrinsic dimension n is 1 (curves in the plane) or
//! 2 (surfaces in space).

mod quad;

pub use quad::{integrate_measure, Ball, BallFilter, Exclusion, QuadConfig, QuadResult, SurfacePoint};

use crate::error::{Error, Result};
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Unit normal points away from the shape's center (closed shapes).
    Outward,
    /// Unit normal has positive component along the height axis
    /// (graphs); for generic curves this is the +90° rotation of the
    /// unit tangent.
    GraphUp,
}

/// Parameter-domain rectangle; one axis used for curves, two for surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub dims: usize,
}

impl Rect {
    pub fn interval(a: f64, b: f64) -> Rect {
        Rect {
            lo: [a, 0.0],
            hi: [b, 0.0],
            dims: 1,
        }
    }

    pub fn square(lo: [f64; 2], hi: [f64; 2]) -> Rect {
        Rect { lo, hi, dims: 2 }
    }

    pub fn measure(&self) -> f64 {
        let mut m = self.hi[0] - self.lo[0];
        if self.dims == 2 {
            m *= self.hi[1] - self.lo[1];
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum PatchKind {
    /// p0 + s (p1 − p0) for s ∈ [0, 1].
    Segment { p0: Vec3Ser, p1: Vec3Ser },
    /// center + r (cos θ, sin θ).
    Circle { center: Vec3Ser, radius: f64 },
    /// (s, offset + Σ aₖ sin(ks) + bₖ cos(ks)).
    FourierGraph {
        #[serde(default)]
        sin: Vec<f64>,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        offset: f64,
    },
    /// (s, Σ cₖ sᵏ).
    PolyGraph1 { coeffs: Vec<f64> },
    /// center + r (sin θ cos ψ, sin θ sin ψ, cos θ) on [0,π]×[0,2π].
    Sphere { center: Vec3Ser, radius: f64 },
    /// (u, v, Σ c[k][l] uᵏ vˡ).
    PolyGraph2 { coeffs: Vec<Vec<f64>> },
    /// origin + u·span_u + v·span_v; flat patches in arbitrary position.
    Parallelogram {
        origin: Vec3Ser,
        span_u: Vec3Ser,
        span_v: Vec3Ser,
    },
}

/// Serde-friendly alias: points serialize as coordinate arrays.
pub type Vec3Ser = [f64; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Patch {
    pub kind: PatchKind,
    pub domain: Rect,
}

impl Patch {
    /// Intrinsic dimension of the image.
    pub fn dim(&self) -> usize {
        match self.kind {
            PatchKind::Segment { .. }
            | PatchKind::Circle { .. }
            | PatchKind::FourierGraph { .. }
            | PatchKind::PolyGraph1 { .. } => 1,
            PatchKind::Sphere { .. }
            | PatchKind::PolyGraph2 { .. }
            | PatchKind::Parallelogram { .. } => 2,
        }
    }

    pub fn position(&self, t: &[f64; 2]) -> Vec3 {
        match &self.kind {
            PatchKind::Segment { p0, p1 } => {
                let p0 = Vec3(*p0);
                let p1 = Vec3(*p1);
                p0 + (p1 - p0).scale(t[0])
            }
            PatchKind::Circle { center, radius } => {
                Vec3(*center) + Vec3::xy(t[0].cos(), t[0].sin()).scale(*radius)
            }
            PatchKind::FourierGraph { sin, cos, offset } => {
                let s = t[0];
                let mut h = *offset;
                for (k, a) in sin.iter().enumerate() {
                    h += a * ((k + 1) as f64 * s).sin();
                }
                for (k, b) in cos.iter().enumerate() {
                    h += b * ((k + 1) as f64 * s).cos();
                }
                Vec3::xy(s, h)
            }
            PatchKind::PolyGraph1 { coeffs } => Vec3::xy(t[0], horner(coeffs, t[0])),
            PatchKind::Sphere { center, radius } => {
                let (theta, psi) = (t[0], t[1]);
                Vec3(*center)
                    + Vec3::new(
                        theta.sin() * psi.cos(),
                        theta.sin() * psi.sin(),
                        theta.cos(),
                    )
                    .scale(*radius)
            }
            PatchKind::PolyGraph2 { coeffs } => {
                Vec3::new(t[0], t[1], poly2(coeffs, t[0], t[1], 0, 0))
            }
            PatchKind::Parallelogram {
                origin,
                span_u,
                span_v,
            } => Vec3(*origin) + Vec3(*span_u).scale(t[0]) + Vec3(*span_v).scale(t[1]),
        }
    }

    /// Columns of Dφ; the second column is zero for curves.
    pub fn derivatives(&self, t: &[f64; 2]) -> [Vec3; 2] {
        match &self.kind {
            PatchKind::Segment { p0, p1 } => [Vec3(*p1) - Vec3(*p0), Vec3::ZERO],
            PatchKind::Circle { radius, .. } => [
                Vec3::xy(-t[0].sin(), t[0].cos()).scale(*radius),
                Vec3::ZERO,
            ],
            PatchKind::FourierGraph { sin, cos, .. } => {
                let s = t[0];
                let mut dh = 0.0;
                for (k, a) in sin.iter().enumerate() {
                    let kk = (k + 1) as f64;
                    dh += a * kk * (kk * s).cos();
                }
                for (k, b) in cos.iter().enumerate() {
                    let kk = (k + 1) as f64;
                    dh -= b * kk * (kk * s).sin();
                }
                [Vec3::xy(1.0, dh), Vec3::ZERO]
            }
            PatchKind::PolyGraph1 { coeffs } => {
                [Vec3::xy(1.0, horner_deriv(coeffs, t[0])), Vec3::ZERO]
            }
            PatchKind::Sphere { radius, .. } => {
                let (theta, psi) = (t[0], t[1]);
                [
                    Vec3::new(
                        theta.cos() * psi.cos(),
                        theta.cos() * psi.sin(),
                        -theta.sin(),
                    )
                    .scale(*radius),
                    Vec3::new(-theta.sin() * psi.sin(), theta.sin() * psi.cos(), 0.0)
                        .scale(*radius),
                ]
            }
            PatchKind::PolyGraph2 { coeffs } => [
                Vec3::new(1.0, 0.0, poly2(coeffs, t[0], t[1], 1, 0)),
                Vec3::new(0.0, 1.0, poly2(coeffs, t[0], t[1], 0, 1)),
            ],
            PatchKind::Parallelogram { span_u, span_v, .. } => [Vec3(*span_u), Vec3(*span_v)],
        }
    }

    /// √det(Dφᵀ Dφ), the surface-measure density.
    pub fn jacobian(&self, t: &[f64; 2]) -> f64 {
        let d = self.derivatives(t);
        if self.dim() == 1 {
            d[0].norm()
        } else {
            d[0].cross(&d[1]).norm()
        }
    }

    /// Orientation-resolved unit normal at parameter t.
    pub fn normal(&self, t: &[f64; 2], orientation: Orientation) -> Vec3 {
        match (&self.kind, orientation) {
            (PatchKind::Circle { center, .. }, Orientation::Outward) => {
                (self.position(t) - Vec3(*center)).normalized()
            }
            (PatchKind::Sphere { center, .. }, _) => {
                (self.position(t) - Vec3(*center)).normalized()
            }
            (PatchKind::PolyGraph2 { .. }, _) | (PatchKind::Parallelogram { .. }, _) => {
                let d = self.derivatives(t);
                d[0].cross(&d[1]).normalized()
            }
            _ => {
                // Curves: rotate the unit tangent by +90°, which points
                // "up" for a left-to-right graph.
                let tangent = self.derivatives(t)[0].normalized();
                Vec3::xy(-tangent.y(), tangent.x())
            }
        }
    }
}

fn horner(coeffs: &[f64], s: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
}

fn horner_deriv(coeffs: &[f64], s: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, c)| acc * s + k as f64 * c)
}

/// Evaluates Σ c[k][l] uᵏ vˡ differentiated du times in u, dv in v.
fn poly2(coeffs: &[Vec<f64>], u: f64, v: f64, du: u32, dv: u32) -> f64 {
    let mut total = 0.0;
    for (k, row) in coeffs.iter().enumerate() {
        for (l, c) in row.iter().enumerate() {
            let (k, l) = (k as i64, l as i64);
            if k < du as i64 || l < dv as i64 {
                continue;
            }
            let mut factor = *c;
            for m in 0..du as i64 {
                factor *= (k - m) as f64;
            }
            for m in 0..dv as i64 {
                factor *= (l - m) as f64;
            }
            total += factor * u.powi((k - du as i64) as i32) * v.powi((l - dv as i64) as i32);
        }
    }
    total
}

/// One-sided cone X_a(apex, axis) = { y : (y − apex)·axis > a |y − apex| }.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone {
    pub apex: Vec3,
    pub axis: Vec3,
    pub aperture: f64,
}

impl Cone {
    pub fn new(apex: Vec3, axis: Vec3, aperture: f64) -> Result<Cone> {
        if !(0.0 < aperture && aperture < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "cone aperture must lie in (0,1), got {aperture}"
            )));
        }
        if axis.norm_sq() == 0.0 {
            return Err(Error::InvalidConfig("cone axis must be nonzero".into()));
        }
        Ok(Cone {
            apex,
            axis: axis.normalized(),
            aperture,
        })
    }

    /// Strict membership; the apex itself is excluded.
    pub fn contains(&self, y: Vec3) -> bool {
        let d = y - self.apex;
        d.dot(&self.axis) > self.aperture * d.norm()
    }
}

/// Orthonormal tangent basis and unit normal at a point of the set.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub point: Vec3,
    pub basis: Vec<Vec3>,
    pub normal: Vec3,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RectifiableSet {
    n: usize,
    patches: Vec<Patch>,
    orientation: Orientation,
    diameter: f64,
}

impl RectifiableSet {
    pub fn new(patches: Vec<Patch>, orientation: Orientation) -> Result<RectifiableSet> {
        if patches.is_empty() {
            return Err(Error::Scene("a set needs at least one patch".into()));
        }
        let n = patches[0].dim();
        if patches.iter().any(|p| p.dim() != n) {
            return Err(Error::Scene("patches of mixed intrinsic dimension".into()));
        }
        let diameter = sample_diameter(&patches);
        Ok(RectifiableSet {
            n,
            patches,
            orientation,
            diameter,
        })
    }

    pub fn segment(p0: Vec3, p1: Vec3) -> RectifiableSet {
        Self::new(
            vec![Patch {
                kind: PatchKind::Segment { p0: p0.0, p1: p1.0 },
                domain: Rect::interval(0.0, 1.0),
            }],
            Orientation::GraphUp,
        )
        .expect("segment is a valid patch")
    }

    pub fn circle(center: Vec3, radius: f64) -> RectifiableSet {
        Self::new(
            vec![Patch {
                kind: PatchKind::Circle {
                    center: center.0,
                    radius,
                },
                domain: Rect::interval(0.0, 2.0 * PI),
            }],
            Orientation::Outward,
        )
        .expect("circle is a valid patch")
    }

    pub fn polyline(vertices: &[Vec3]) -> Result<RectifiableSet> {
        if vertices.len() < 2 {
            return Err(Error::Scene("polyline needs at least two vertices".into()));
        }
        let patches = vertices
            .windows(2)
            .map(|w| Patch {
                kind: PatchKind::Segment {
                    p0: w[0].0,
                    p1: w[1].0,
                },
                domain: Rect::interval(0.0, 1.0),
            })
            .collect();
        Self::new(patches, Orientation::GraphUp)
    }

    pub fn fourier_graph(sin: Vec<f64>, cos: Vec<f64>, offset: f64, s0: f64, s1: f64) -> RectifiableSet {
        Self::new(
            vec![Patch {
                kind: PatchKind::FourierGraph { sin, cos, offset },
                domain: Rect::interval(s0, s1),
            }],
            Orientation::GraphUp,
        )
        .expect("fourier graph is a valid patch")
    }

    pub fn poly_graph(coeffs: Vec<f64>, s0: f64, s1: f64) -> RectifiableSet {
        Self::new(
            vec![Patch {
                kind: PatchKind::PolyGraph1 { coeffs },
                domain: Rect::interval(s0, s1),
            }],
            Orientation::GraphUp,
        )
        .expect("poly graph is a valid patch")
    }

    pub fn sphere(center: Vec3, radius: f64) -> RectifiableSet {
        Self::new(
            vec![Patch {
                kind: PatchKind::Sphere {
                    center: center.0,
                    radius,
                },
                domain: Rect::square([0.0, 0.0], [PI, 2.0 * PI]),
            }],
            Orientation::Outward,
        )
        .expect("sphere is a valid patch")
    }

    /// Square planar patch centered at `origin`, spanned by the
    /// orthonormal directions `e1`, `e2`, with parameters in [−h, h]².
    pub fn plane_patch(origin: Vec3, e1: Vec3, e2: Vec3, h: f64) -> RectifiableSet {
        Self::new(
            vec![Patch {
                kind: PatchKind::Parallelogram {
                    origin: origin.0,
                    span_u: e1.0,
                    span_v: e2.0,
                },
                domain: Rect::square([-h, -h], [h, h]),
            }],
            Orientation::GraphUp,
        )
        .expect("plane patch is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    pub fn patches(&self) -> &[Patch] {
        &self.patches
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Diameter estimate from a deterministic sample grid.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn surface_point(&self, patch: usize, t: &[f64; 2]) -> SurfacePoint {
        let p = &self.patches[patch];
        SurfacePoint {
            position: p.position(t),
            normal: p.normal(t, self.orientation),
            param: *t,
            patch,
        }
    }

    /// Orthonormal frame of the tangent plane plus the oriented normal.
    pub fn tangent_frame(&self, patch: usize, t: &[f64; 2]) -> Result<TangentFrame> {
        let p = &self.patches[patch];
        let derivs = p.derivatives(t);
        let scale = self.diameter.max(1.0);
        let degenerate = Error::DegenerateParametrization {
            patch,
            param: *t,
        };
        let e1 = derivs[0];
        if e1.norm() <= 1e-12 * scale {
            return Err(degenerate);
        }
        let e1 = e1.normalized();
        let mut basis = vec![e1];
        if self.n == 2 {
            let raw = derivs[1];
            let mut e2 = raw - e1.scale(raw.dot(&e1));
            if e2.norm() <= 1e-12 * scale {
                return Err(degenerate);
            }
            e2 = e2.normalized();
            basis.push(e2);
        }
        let mut normal = p.normal(t, self.orientation);
        for e in &basis {
            normal = normal - e.scale(normal.dot(e));
        }
        if normal.norm() <= 1e-6 {
            return Err(degenerate);
        }
        Ok(TangentFrame {
            point: p.position(t),
            basis,
            normal: normal.normalized(),
        })
    }

    /// Finds the (patch, parameter) preimage of a point on the set, if any.
    pub fn locate(&self, x: Vec3) -> Option<(usize, [f64; 2])> {
        let tol = 1e-9 * self.diameter.max(1.0);
        for (i, p) in self.patches.iter().enumerate() {
            if let Some(t) = locate_on_patch(p, x, tol) {
                return Some((i, t));
            }
        }
        None
    }
}

fn locate_on_patch(patch: &Patch, x: Vec3, tol: f64) -> Option<[f64; 2]> {
    let candidate: Option<[f64; 2]> = match &patch.kind {
        PatchKind::Segment { p0, p1 } => {
            let (p0, p1) = (Vec3(*p0), Vec3(*p1));
            let d = p1 - p0;
            let s = (x - p0).dot(&d) / d.norm_sq();
            Some([s, 0.0])
        }
        PatchKind::Circle { center, .. } => {
            let d = x - Vec3(*center);
            let mut theta = d.y().atan2(d.x());
            if theta < patch.domain.lo[0] {
                theta += 2.0 * PI;
            }
            Some([theta, 0.0])
        }
        PatchKind::FourierGraph { .. } | PatchKind::PolyGraph1 { .. } => Some([x.x(), 0.0]),
        PatchKind::Sphere { center, radius } => {
            let d = (x - Vec3(*center)).scale(1.0 / radius);
            let theta = d.z().clamp(-1.0, 1.0).acos();
            let mut psi = d.y().atan2(d.x());
            if psi < patch.domain.lo[1] {
                psi += 2.0 * PI;
            }
            Some([theta, psi])
        }
        PatchKind::PolyGraph2 { .. } => Some([x.x(), x.y()]),
        PatchKind::Parallelogram {
            origin,
            span_u,
            span_v,
        } => {
            let d = x - Vec3(*origin);
            let (u, v) = (Vec3(*span_u), Vec3(*span_v));
            Some([d.dot(&u) / u.norm_sq(), d.dot(&v) / v.norm_sq()])
        }
    };
    let t = candidate?;
    let inside = t[0] >= patch.domain.lo[0] - tol
        && t[0] <= patch.domain.hi[0] + tol
        && (patch.dim() == 1
            || (t[1] >= patch.domain.lo[1] - tol && t[1] <= patch.domain.hi[1] + tol));
    if inside && patch.position(&t).dist(&x) <= tol {
        Some(t)
    } else {
        None
    }
}

fn sample_diameter(patches: &[Patch]) -> f64 {
    let mut pts = Vec::new();
    for p in patches {
        let d = &p.domain;
        if p.dim() == 1 {
            for i in 0..=32 {
                let s = d.lo[0] + (d.hi[0] - d.lo[0]) * i as f64 / 32.0;
                pts.push(p.position(&[s, 0.0]));
            }
        } else {
            for i in 0..=8 {
                for j in 0..=8 {
                    let u = d.lo[0] + (d.hi[0] - d.lo[0]) * i as f64 / 8.0;
                    let v = d.lo[1] + (d.hi[1] - d.lo[1]) * j as f64 / 8.0;
                    pts.push(p.position(&[u, v]));
                }
            }
        }
    }
    let mut diam: f64 = 0.0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            diam = diam.max(a.dist(b));
        }
    }
    diam
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn frame_on_flat_graph() {
        let set = RectifiableSet::segment(Vec3::xy(-1.0, 0.0), Vec3::xy(1.0, 0.0));
        let f = set.tangent_frame(0, &[0.5, 0.0]).unwrap();
        assert!((f.basis[0] - Vec3::xy(1.0, 0.0)).norm() < 1e-15);
        assert!((f.normal - Vec3::xy(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn frame_on_unit_circle() {
        let set = RectifiableSet::circle(Vec3::ZERO, 1.0);
        let f = set.tangent_frame(0, &[0.0, 0.0]).unwrap();
        assert!((f.point - Vec3::xy(1.0, 0.0)).norm() < 1e-15);
        assert!((f.normal - Vec3::xy(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn frame_on_tilted_graph() {
        let set = RectifiableSet::segment(Vec3::ZERO, Vec3::xy(1.0, 1.0));
        let f = set.tangent_frame(0, &[0.0, 0.0]).unwrap();
        let r = 0.5f64.sqrt();
        assert!((f.normal - Vec3::xy(-r, r)).norm() < 1e-14);
    }

    #[test]
    fn frame_orthonormal_on_sphere() {
        let set = RectifiableSet::sphere(Vec3::ZERO, 2.0);
        for (theta, psi) in [(0.7, 1.3), (1.9, 4.4), (2.4, 0.2)] {
            let f = set.tangent_frame(0, &[theta, psi]).unwrap();
            assert!(f.basis[0].dot(&f.basis[1]).abs() < 1e-12);
            assert!(f.basis[0].dot(&f.normal).abs() < 1e-12);
            assert!(f.basis[1].dot(&f.normal).abs() < 1e-12);
            assert_abs_diff_eq!(f.normal.norm(), 1.0, epsilon = 1e-12);
            // Outward.
            assert!(f.normal.dot(&f.point) > 0.0);
        }
    }

    #[test]
    fn degenerate_jacobian_rejected() {
        let set = RectifiableSet::sphere(Vec3::ZERO, 1.0);
        // The pole has a rank-deficient parametrization.
        assert!(matches!(
            set.tangent_frame(0, &[0.0, 1.0]),
            Err(Error::DegenerateParametrization { .. })
        ));
    }

    #[test]
    fn cone_membership_examples() {
        let cone = Cone::new(Vec3::ZERO, Vec3::xy(0.0, 1.0), 0.5).unwrap();
        assert!(cone.contains(Vec3::xy(0.0, 1.0)));
        assert!(!cone.contains(Vec3::xy(1.0, 0.1)));
        assert!(!cone.contains(Vec3::ZERO));
    }

    #[test]
    fn cone_reflection_pairs_with_opposite_cone() {
        let x = Vec3::xy(0.3, -0.2);
        let u = Vec3::xy(0.6, 0.8);
        let plus = Cone::new(x, u, 0.37).unwrap();
        let minus = Cone::new(x, -u, 0.37).unwrap();
        let samples = [
            Vec3::xy(0.5, 0.4),
            Vec3::xy(0.31, -0.19),
            Vec3::xy(-2.0, 1.0),
            Vec3::xy(0.3, -0.2),
            Vec3::xy(1.3, 0.9),
        ];
        for y in samples {
            let reflected = x.scale(2.0) - y;
            assert_eq!(plus.contains(y), minus.contains(reflected));
        }
    }

    #[test]
    fn cone_points_stay_away_from_tangent_plane() {
        // dist(y, L_x) > a |y − x| for y in the cone over the normal.
        let set = RectifiableSet::circle(Vec3::ZERO, 1.0);
        let frame = set.tangent_frame(0, &[1.1, 0.0]).unwrap();
        let a = 0.5;
        let cone = Cone::new(frame.point, frame.normal, a).unwrap();
        for i in 0..50 {
            let alpha = -0.9 + 1.8 * i as f64 / 49.0; // sweep inside arccos(a)
            let angle = alpha * a.acos() * 0.999;
            let dir = frame.normal.scale(angle.cos()) + frame.basis[0].scale(angle.sin());
            let y = frame.point + dir.scale(0.3);
            assert!(cone.contains(y));
            let dist_plane = (y - frame.point).dot(&frame.normal).abs();
            assert!(dist_plane > a * (y - frame.point).norm());
        }
    }

    #[test]
    fn locate_roundtrip() {
        let set = RectifiableSet::circle(Vec3::xy(0.5, -1.0), 2.0);
        let x = set.surface_point(0, &[2.8, 0.0]).position;
        let (patch, t) = set.locate(x).unwrap();
        assert_eq!(patch, 0);
        assert_abs_diff_eq!(t[0], 2.8, epsilon = 1e-12);
        assert!(set.locate(Vec3::xy(10.0, 10.0)).is_none());
    }

    #[test]
    fn diameter_of_unit_circle() {
        let set = RectifiableSet::circle(Vec3::ZERO, 1.0);
        assert_abs_diff_eq!(set.diameter(), 2.0, epsilon = 1e-2);
    }

    #[test]
    fn polyline_patch_count() {
        let set = RectifiableSet::polyline(&[
            Vec3::ZERO,
            Vec3::xy(1.0, 0.0),
            Vec3::xy(1.0, 1.0),
        ])
        .unwrap();
        assert_eq!(set.patches().len(), 2);
    }
}
