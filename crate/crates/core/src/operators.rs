//! Truncated transforms, principal values, non-tangential limits, jump
//! constants and the symmetric cone diagnostics.

use crate::error::{Error, Result};
use crate::geometry::{
    integrate_measure, Exclusion, QuadConfig, QuadResult, RectifiableSet, SurfacePoint,
    TangentFrame,
};
use crate::kernel::Kernel;
use crate::measure::RadonMeasure;
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};

/// Geometric ladder driving the ε → 0 and cone-approach limits.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExtrapolationConfig {
    /// Initial truncation radius / approach distance.
    pub eps0: f64,
    /// Scale ratio between consecutive steps, in (0, 1).
    pub ratio: f64,
    pub max_steps: usize,
    /// Increment threshold declaring convergence.
    pub tol: f64,
    /// Geometric first-order Richardson acceleration of the returned
    /// value; off by default.
    #[serde(default)]
    pub richardson: bool,
}

impl ExtrapolationConfig {
    /// eps0 = 0.1 · scene diameter, ratio ½, tol 1e−6, 24 steps.
    pub fn for_diameter(diameter: f64) -> ExtrapolationConfig {
        ExtrapolationConfig {
            eps0: 0.1 * diameter,
            ratio: 0.5,
            max_steps: 24,
            tol: 1e-6,
            richardson: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > 0.0) {
            return Err(Error::InvalidConfig("eps0 must be positive".into()));
        }
        if !(0.0 < self.ratio && self.ratio < 1.0) {
            return Err(Error::InvalidConfig("ratio must lie in (0,1)".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        Ok(())
    }

    /// Quadrature settings tight enough not to pollute the increments
    /// while staying above the roundoff floor of the deepest rungs.
    pub fn quad(&self) -> QuadConfig {
        QuadConfig::with_abs_tol((self.tol * 0.1).clamp(1e-12, 1e-6))
    }
}

/// Outcome of a scale ladder: last iterate, increments, trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitResult {
    pub value: Vec3Ser,
    pub converged: bool,
    pub last_delta: f64,
    /// (scale, value) pairs in evaluation order.
    pub samples: Vec<(f64, Vec3Ser)>,
}

pub type Vec3Ser = [f64; 3];

impl LimitResult {
    pub fn value(&self) -> Vec3 {
        Vec3(self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Plus,
    Minus,
}

/// T_ε ν(x) = ∫_{|x−y|>ε} K(x−y) dν(y).
pub fn truncated_transform(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    eps: f64,
    cfg: &QuadConfig,
) -> QuadResult {
    let ex = Exclusion::outside(x, eps);
    let mut result = integrate_measure(
        measure.carrier(),
        |sp: &SurfacePoint| {
            kernel
                .eval(x - sp.position)
                .scale(measure.density_at_param(sp.param[0]))
        },
        Some(&ex),
        cfg,
    );
    for atom in measure.atoms() {
        let d = x - atom.position();
        if d.norm() > eps {
            result.value += kernel.eval(d).scale(atom.weight);
        }
    }
    result
}

/// Truncated double layer potential: the Riesz kernel paired with the
/// surface normal and normalized by 1/ω_n,
/// R_ε f(z) = (1/ω_n) ∫_{|z−y|>ε} (z−y)·N_y |z−y|^{−(n+1)} f(y) dℋⁿ(y).
/// Scalar-valued (first component); defined for the density part only.
pub fn double_layer_transform(
    measure: &RadonMeasure,
    z: Vec3,
    eps: f64,
    cfg: &QuadConfig,
) -> QuadResult {
    let n = measure.carrier().n() as u32;
    let kernel = Kernel::riesz(n).expect("carrier dimension is 1 or 2");
    let norm = 1.0 / crate::kernel::sphere_volume(n);
    let ex = Exclusion::outside(z, eps);
    integrate_measure(
        measure.carrier(),
        |sp: &SurfacePoint| {
            let k = kernel.eval(z - sp.position);
            Vec3::new(
                k.dot(&sp.normal) * measure.density_at_param(sp.param[0]) * norm,
                0.0,
                0.0,
            )
        },
        Some(&ex),
        cfg,
    )
}

/// Grid version of T_* ν(x) = sup_ε |T_ε ν(x)|.
pub fn maximal_transform(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    eps_grid: &[f64],
    cfg: &QuadConfig,
) -> Result<crate::measure::ScalarResult> {
    if eps_grid.is_empty() {
        return Err(Error::InvalidConfig("eps grid must be nonempty".into()));
    }
    let mut sup = 0.0f64;
    let mut err = 0.0f64;
    let mut converged = true;
    for &eps in eps_grid {
        let r = truncated_transform(kernel, measure, x, eps, cfg);
        sup = sup.max(r.value.norm());
        err = err.max(r.error_bound);
        converged &= r.converged;
    }
    Ok(crate::measure::ScalarResult {
        value: sup,
        error_bound: err,
        converged,
    })
}

/// Runs a scale ladder until two consecutive increments drop below tol.
pub(crate) fn run_ladder<G>(cfg: &ExtrapolationConfig, mut eval: G) -> LimitResult
where
    G: FnMut(f64) -> (Vec3, bool),
{
    let mut samples: Vec<(f64, Vec3Ser)> = Vec::new();
    let mut values: Vec<Vec3> = Vec::new();
    let mut quads_ok = true;
    let mut last_delta = f64::INFINITY;
    let mut prev_delta = f64::INFINITY;
    let mut converged = false;
    let mut scale = cfg.eps0;
    for _ in 0..cfg.max_steps {
        let (v, ok) = eval(scale);
        quads_ok &= ok;
        if let Some(prev) = values.last() {
            prev_delta = last_delta;
            last_delta = (v - *prev).norm();
        }
        values.push(v);
        samples.push((scale, v.0));
        if last_delta <= cfg.tol && prev_delta <= cfg.tol {
            converged = true;
            break;
        }
        scale *= cfg.ratio;
    }
    let mut value = *values.last().expect("at least one step");
    if cfg.richardson && values.len() >= 2 {
        let prev = values[values.len() - 2];
        value = (value - prev.scale(cfg.ratio)).scale(1.0 / (1.0 - cfg.ratio));
    }
    LimitResult {
        value: value.0,
        converged: converged && quads_ok,
        last_delta: if last_delta.is_finite() { last_delta } else { 0.0 },
        samples,
    }
}

/// pv Tν(x) = lim_{ε→0} T_ε ν(x) along ε_k = eps0 · ratio^k.
pub fn principal_value(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    cfg: &ExtrapolationConfig,
) -> Result<LimitResult> {
    cfg.validate()?;
    if measure.carrier().locate(x).is_none() {
        return Err(Error::OffCarrier);
    }
    if measure.atoms().iter().any(|a| a.position().dist(&x) == 0.0) {
        return Err(Error::InvalidConfig(
            "principal value is not evaluated at atom locations".into(),
        ));
    }
    Ok(principal_value_unchecked(kernel, measure, x, cfg))
}

pub(crate) fn principal_value_unchecked(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    cfg: &ExtrapolationConfig,
) -> LimitResult {
    let quad = cfg.quad();
    run_ladder(cfg, |eps| {
        let r = truncated_transform(kernel, measure, x, eps, &quad);
        (r.value, r.converged)
    })
}

/// One-sided limit T^±ν(x): approach along the cone axis y = x ± t·N_x
/// evaluating T_{b·t} ν(y). The axis lies inside X_a^± for every
/// aperture a < 1, so results do not depend on a; it only bounds b.
pub fn nontangential_limit(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    side: Side,
    a: f64,
    b: f64,
    cfg: &ExtrapolationConfig,
) -> Result<LimitResult> {
    cfg.validate()?;
    check_apertures(a, b)?;
    let (patch, t) = measure.carrier().locate(x).ok_or(Error::OffCarrier)?;
    let frame = measure.carrier().tangent_frame(patch, &t)?;
    Ok(nontangential_from_frame(kernel, measure, &frame, side, b, cfg))
}

pub(crate) fn check_apertures(a: f64, b: f64) -> Result<()> {
    if !(0.0 < b && b < a && a < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "apertures must satisfy 0 < b < a < 1, got a={a}, b={b}"
        )));
    }
    Ok(())
}

pub fn nontangential_from_frame(
    kernel: &Kernel,
    measure: &RadonMeasure,
    frame: &TangentFrame,
    side: Side,
    b: f64,
    cfg: &ExtrapolationConfig,
) -> LimitResult {
    let sign = match side {
        Side::Plus => 1.0,
        Side::Minus => -1.0,
    };
    let quad = cfg.quad();
    run_ladder(cfg, |t| {
        let y = frame.point + frame.normal.scale(sign * t);
        let r = truncated_transform(kernel, measure, y, b * t, &quad);
        (r.value, r.converged)
    })
}

/// Numerical jump constant with truncation diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct JumpConstant {
    pub value: Vec3,
    /// Bound on the neglected tail beyond the radial cutoff, folded
    /// together with the quadrature error estimate.
    pub tail_bound: f64,
    pub converged: bool,
}

/// C_K(N) = ∫_{L(N)} (Ω(y+N) − Ω(y−N)) / (2(|y|²+1)^{n/2}) dℋⁿ(y),
/// integrated radially over |y| ≤ R with a leading-order tail
/// correction A(R)/R, where A(r) = r^{n+1} ∮ h(rω) dσ(ω) captures the
/// |y|^{−(n+1)} decay of the integrand.
pub fn jump_constant_numeric(kernel: &Kernel, normal: Vec3, radius: f64) -> Result<JumpConstant> {
    if (normal.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidConfig("normal must be a unit vector".into()));
    }
    if !(radius > 1.0) {
        return Err(Error::InvalidConfig("cutoff radius must exceed 1".into()));
    }
    let n = kernel.n() as usize;
    let basis = hyperplane_basis(normal, n + 1);
    // Ω(z) = |z|^n K(z).
    let h = |y: Vec3| -> Vec3 {
        let om_plus = kernel.eval(y + normal).scale((y + normal).norm().powi(n as i32));
        let om_minus = kernel.eval(y - normal).scale((y - normal).norm().powi(n as i32));
        (om_plus - om_minus).scale(0.5 / (y.norm_sq() + 1.0).powf(0.5 * n as f64))
    };

    // A(r) = r^{n+1} ∮_{S^{n−1}} h(rω) dσ(ω) over the unit sphere of L(N).
    let ring = |r: f64| -> Vec3 {
        match n {
            1 => (h(basis[0].scale(r)) + h(basis[0].scale(-r))).scale(r * r),
            _ => {
                let m = 64;
                let mut sum = Vec3::ZERO;
                for i in 0..m {
                    let phi = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
                    let dir = basis[0].scale(phi.cos()) + basis[1].scale(phi.sin());
                    sum += h(dir.scale(r));
                }
                sum.scale(2.0 * std::f64::consts::PI / m as f64 * r * r * r)
            }
        }
    };

    // Radial integral over [0, R]: ∫ A(r)/r² dr written on dyadic
    // panels so the 1/r² decay never stresses a single panel.
    let radial = |r: f64| -> Vec3 {
        if r == 0.0 {
            Vec3::ZERO
        } else {
            ring(r).scale(1.0 / (r * r))
        }
    };
    let mut value = Vec3::ZERO;
    let mut err = 0.0;
    let mut lo = 0.0f64;
    let mut hi = 1.0f64.min(radius);
    loop {
        let (v, e) = adaptive_line(&radial, lo, hi, 1e-12);
        value += v;
        err += e;
        if hi >= radius {
            break;
        }
        lo = hi;
        hi = (hi * 2.0).min(radius);
    }

    let a_r = ring(radius);
    let a_2r = ring(2.0 * radius);
    value += a_r.scale(1.0 / radius);
    // Second-order coefficient of A(r) ≈ A + a₂/r², estimated from two
    // radii; the post-correction remainder is (2/3)|a₂|/R³.
    let a2 = (a_r - a_2r).scale(4.0 / 3.0 * radius * radius);
    let tail_bound = 4.0 * (2.0 / 3.0) * a2.norm() / radius.powi(3) + err + 1e-15 * value.norm();
    Ok(JumpConstant {
        value,
        tail_bound,
        converged: tail_bound.is_finite(),
    })
}

/// Closed form when the kernel has one, else the numeric hyperplane
/// integral with the default cutoff R = 1e4.
pub fn jump_constant(kernel: &Kernel, normal: Vec3) -> Result<Vec3> {
    if let Some(c) = kernel.closed_form_jump(normal) {
        return Ok(c);
    }
    Ok(jump_constant_numeric(kernel, normal, 1e4)?.value)
}

/// Orthonormal basis of the hyperplane orthogonal to `normal`.
fn hyperplane_basis(normal: Vec3, ambient: usize) -> Vec<Vec3> {
    let mut basis: Vec<Vec3> = Vec::new();
    let mut axes: Vec<usize> = (0..ambient).collect();
    axes.sort_by(|&i, &j| {
        normal.0[i]
            .abs()
            .partial_cmp(&normal.0[j].abs())
            .expect("finite components")
    });
    for &axis in &axes {
        if basis.len() == ambient - 1 {
            break;
        }
        let mut e = Vec3::ZERO;
        e.0[axis] = 1.0;
        let mut v = e - normal.scale(e.dot(&normal));
        for u in &basis {
            v = v - u.scale(v.dot(u));
        }
        if v.norm() > 1e-9 {
            basis.push(v.normalized());
        }
    }
    basis
}

/// Adaptive Simpson on a plain vector-valued line integrand; used for
/// the hyperplane constant where no surface measure is involved.
fn adaptive_line<F: Fn(f64) -> Vec3>(f: &F, a: f64, b: f64, tol: f64) -> (Vec3, f64) {
    fn simpson<F: Fn(f64) -> Vec3>(f: &F, a: f64, b: f64) -> Vec3 {
        let m = 0.5 * (a + b);
        (f(a) + f(m).scale(4.0) + f(b)).scale((b - a) / 6.0)
    }
    fn rec<F: Fn(f64) -> Vec3>(
        f: &F,
        a: f64,
        b: f64,
        whole: Vec3,
        tol: f64,
        depth: u32,
    ) -> (Vec3, f64) {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        let e = (left + right - whole).norm();
        if e < 15.0 * tol || depth >= 48 {
            return (left + right, e / 15.0);
        }
        let (lv, le) = rec(f, a, m, left, tol / 2.0, depth + 1);
        let (rv, re) = rec(f, m, b, right, tol / 2.0, depth + 1);
        (lv + rv, le + re)
    }
    let whole = simpson(f, a, b);
    rec(f, a, b, whole, tol, 0)
}

/// Per-point record of the jump identities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JumpRecord {
    pub point: Vec3Ser,
    pub normal: Vec3Ser,
    pub f: f64,
    pub pv: LimitResult,
    pub t_plus: LimitResult,
    pub t_minus: LimitResult,
    pub jump_constant: Vec3Ser,
    /// |½(T⁺+T⁻) − pv|.
    pub residual_avg: f64,
    /// |½(T⁺−T⁻) − C_K(N)·f|.
    pub residual_jump: f64,
    pub converged: bool,
}

/// Computes pv, T±, f, C_K(N) at a carrier point and the residuals of
/// the two jump identities.
pub fn jump_residuals(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    a: f64,
    b: f64,
    cfg: &ExtrapolationConfig,
) -> Result<JumpRecord> {
    let (patch, t) = measure.carrier().locate(x).ok_or(Error::OffCarrier)?;
    jump_residuals_at_param(kernel, measure, patch, t, a, b, cfg)
}

/// Same as [`jump_residuals`] with the carrier point given by patch
/// and parameter, skipping the locate round trip.
pub fn jump_residuals_at_param(
    kernel: &Kernel,
    measure: &RadonMeasure,
    patch: usize,
    t: [f64; 2],
    a: f64,
    b: f64,
    cfg: &ExtrapolationConfig,
) -> Result<JumpRecord> {
    check_apertures(a, b)?;
    cfg.validate()?;
    let frame = measure.carrier().tangent_frame(patch, &t)?;
    if measure
        .atoms()
        .iter()
        .any(|p| p.position().dist(&frame.point) == 0.0)
    {
        return Err(Error::InvalidConfig(
            "evaluation point coincides with an atom".into(),
        ));
    }
    let f = measure.density_at_param(t[0]);
    let pv = principal_value_unchecked(kernel, measure, frame.point, cfg);
    let t_plus = nontangential_from_frame(kernel, measure, &frame, Side::Plus, b, cfg);
    let t_minus = nontangential_from_frame(kernel, measure, &frame, Side::Minus, b, cfg);
    let ck = jump_constant(kernel, frame.normal)?;
    Ok(assemble_record(&frame, f, pv, t_plus, t_minus, ck))
}

pub(crate) fn assemble_record(
    frame: &TangentFrame,
    f: f64,
    pv: LimitResult,
    t_plus: LimitResult,
    t_minus: LimitResult,
    ck: Vec3,
) -> JumpRecord {
    let avg = (t_plus.value() + t_minus.value()).scale(0.5);
    let half_jump = (t_plus.value() - t_minus.value()).scale(0.5);
    let residual_avg = (avg - pv.value()).norm();
    let residual_jump = (half_jump - ck.scale(f)).norm();
    let converged = pv.converged && t_plus.converged && t_minus.converged;
    JumpRecord {
        point: frame.point.0,
        normal: frame.normal.0,
        f,
        pv,
        t_plus,
        t_minus,
        jump_constant: ck.0,
        residual_avg,
        residual_jump,
        converged,
    }
}

/// Deterministic stratified samples of the one-sided cone X_a⁺(x):
/// radii from an anchored geometric family intersected with (0, δ]
/// (so shrinking δ always yields a subset), directions stratified in
/// the cone angle (and azimuth on surfaces).
pub fn cone_samples(
    frame: &TangentFrame,
    a: f64,
    delta: f64,
    angle_count: usize,
    anchor: f64,
) -> Vec<(f64, Vec3)> {
    let alpha_max = a.acos();
    let mut radii = Vec::new();
    let floor = anchor * 2f64.powi(-24);
    let mut r = anchor;
    while r >= floor {
        if r <= delta {
            radii.push(r);
        }
        r /= std::f64::consts::SQRT_2;
    }
    let mut out = Vec::new();
    let surface = frame.basis.len() == 2;
    for &r in &radii {
        for j in 0..angle_count.max(1) {
            let alpha = if surface {
                0.98 * alpha_max * (j as f64 + 0.5) / angle_count.max(1) as f64
            } else {
                0.98 * alpha_max * (2.0 * (j as f64 + 0.5) / angle_count.max(1) as f64 - 1.0)
            };
            let dir = if surface {
                let beta = 2.399963229728653 * j as f64; // golden-angle spread
                frame.normal.scale(alpha.cos())
                    + (frame.basis[0].scale(beta.cos()) + frame.basis[1].scale(beta.sin()))
                        .scale(alpha.sin())
            } else {
                frame.normal.scale(alpha.cos()) + frame.basis[0].scale(alpha.sin())
            };
            out.push((r, dir));
        }
    }
    out
}

/// Sampled S_δ and S̃_δ in one pass: the sups over cone samples of the
/// symmetric sum and difference mismatches.
pub fn symmetric_diagnostics(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    delta: f64,
    a: f64,
    b: f64,
    sample_count: usize,
    cfg: &ExtrapolationConfig,
) -> Result<(f64, f64)> {
    check_apertures(a, b)?;
    let (patch, t) = measure.carrier().locate(x).ok_or(Error::OffCarrier)?;
    let frame = measure.carrier().tangent_frame(patch, &t)?;
    let f = measure.density_at_param(t[0]);
    let pv = principal_value(kernel, measure, x, cfg)?;
    let ck = jump_constant(kernel, frame.normal)?;
    let quad = cfg.quad();
    let samples = cone_samples(&frame, a, delta, sample_count, measure.scene_diameter());
    let mut s_sum = 0.0f64;
    let mut s_diff = 0.0f64;
    for (r, dir) in samples {
        let y = frame.point + dir.scale(r);
        let y_star = frame.point.scale(2.0) - y;
        let tv = truncated_transform(kernel, measure, y, b * r, &quad).value;
        let tv_star = truncated_transform(kernel, measure, y_star, b * r, &quad).value;
        s_sum = s_sum.max((pv.value() - (tv + tv_star).scale(0.5)).norm());
        s_diff = s_diff.max((ck.scale(f) - (tv - tv_star).scale(0.5)).norm());
    }
    Ok((s_sum, s_diff))
}

/// Sampled sup of |pv Tν(x) − ½(T_{b|x−y|}ν(y) + T_{b|x−y|}ν(2x−y))|.
pub fn symmetric_sum_diagnostic(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    delta: f64,
    a: f64,
    b: f64,
    sample_count: usize,
    cfg: &ExtrapolationConfig,
) -> Result<f64> {
    symmetric_diagnostics(kernel, measure, x, delta, a, b, sample_count, cfg).map(|p| p.0)
}

/// Sampled sup of |C_K(N_x) f(x) − ½(T_{b|x−y|}ν(y) − T_{b|x−y|}ν(2x−y))|.
pub fn symmetric_difference_diagnostic(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    delta: f64,
    a: f64,
    b: f64,
    sample_count: usize,
    cfg: &ExtrapolationConfig,
) -> Result<f64> {
    symmetric_diagnostics(kernel, measure, x, delta, a, b, sample_count, cfg).map(|p| p.1)
}

/// |T(χ_B ℋⁿ|_L)(y) + T(χ_B ℋⁿ|_L)(y*)| for the tangent plane L of the
/// frame and y* the reflection of y through the frame point; vanishes
/// identically because reflection maps the plane measure to itself and
/// the kernel is odd. Both terms are integrated as one pass so the
/// cancellation happens inside a single deterministic grid.
pub fn flat_plane_reflection_check(
    kernel: &Kernel,
    frame: &TangentFrame,
    y: Vec3,
    ball_radius: f64,
) -> Result<f64> {
    let x = frame.point;
    let y_star = x.scale(2.0) - y;
    let plane = if frame.basis.len() == 1 {
        RectifiableSet::segment(
            x - frame.basis[0].scale(ball_radius),
            x + frame.basis[0].scale(ball_radius),
        )
    } else {
        RectifiableSet::plane_patch(x, frame.basis[0], frame.basis[1], ball_radius)
    };
    let ball = Exclusion::inside(x, ball_radius);
    let cfg = QuadConfig::with_abs_tol(1e-11);
    let r = integrate_measure(
        &plane,
        |sp: &SurfacePoint| kernel.eval(y - sp.position) + kernel.eval(y_star - sp.position),
        Some(&ball),
        &cfg,
    );
    Ok(r.value.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{Atom, Density};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn riesz1() -> Kernel {
        Kernel::riesz(1).unwrap()
    }

    fn atoms_only(atoms: Vec<Atom>) -> RadonMeasure {
        // A far-away carrier of zero density stands in for "no carrier".
        let carrier = RectifiableSet::segment(Vec3::xy(50.0, 50.0), Vec3::xy(51.0, 50.0));
        RadonMeasure::new(carrier, Density::constant(0.0), atoms)
    }

    #[test]
    fn truncated_single_atom() {
        let p = Vec3::xy(2.0, 0.0);
        let m = atoms_only(vec![Atom::new(p, 1.0)]);
        let x = Vec3::ZERO;
        let k = riesz1();
        let r = truncated_transform(&k, &m, x, 0.5, &QuadConfig::default());
        let expected = k.eval(x - p);
        assert!((r.value - expected).norm() < 1e-14);

        // Atom inside the truncation radius contributes nothing.
        let r = truncated_transform(&k, &m, x, 2.0, &QuadConfig::default());
        assert_eq!(r.value, Vec3::ZERO);
    }

    #[test]
    fn truncated_symmetric_atom_pair_cancels() {
        let x = Vec3::xy(0.3, -0.4);
        let p = Vec3::xy(1.7, 0.9);
        let m = atoms_only(vec![
            Atom::new(p, 1.0),
            Atom::new(x.scale(2.0) - p, 1.0),
        ]);
        for kernel in [riesz1(), Kernel::cauchy_power(3).unwrap()] {
            for eps in [0.1, 0.5, 1.0] {
                let r = truncated_transform(&kernel, &m, x, eps, &QuadConfig::default());
                assert!(r.value.norm() < 1e-15, "eps={eps}");
            }
        }
    }

    #[test]
    fn maximal_transform_examples() {
        let k = riesz1();
        let m = atoms_only(vec![Atom::new(Vec3::xy(1.0, 0.0), 1.0)]);
        let grid = [0.25, 0.5, 0.9];
        let r = maximal_transform(&k, &m, Vec3::ZERO, &grid, &QuadConfig::default()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-14);

        let x = Vec3::xy(0.2, 0.1);
        let p = Vec3::xy(1.0, 1.0);
        let pair = atoms_only(vec![Atom::new(p, 2.0), Atom::new(x.scale(2.0) - p, 2.0)]);
        let r = maximal_transform(&k, &pair, x, &grid, &QuadConfig::default()).unwrap();
        assert!(r.value < 1e-14);
    }

    #[test]
    fn maximal_transform_on_circle_approaches_pi() {
        let k = riesz1();
        let m = RadonMeasure::hausdorff(RectifiableSet::circle(Vec3::ZERO, 1.0));
        let grid: Vec<f64> = (0..18).map(|i| 0.4 * 0.5f64.powi(i)).collect();
        let r = maximal_transform(&k, &m, Vec3::xy(1.0, 0.0), &grid, &QuadConfig::default())
            .unwrap();
        // |T_ε| = π − 2 arcsin(ε/2) climbs to π as ε → 0.
        assert!(r.value > PI - 1e-4 && r.value <= PI + 1e-9);
    }

    #[test]
    fn pv_at_segment_midpoint_vanishes() {
        let m = RadonMeasure::hausdorff(RectifiableSet::segment(
            Vec3::xy(-1.0, 0.0),
            Vec3::xy(1.0, 0.0),
        ));
        let cfg = ExtrapolationConfig::for_diameter(2.0);
        for kernel in [riesz1(), Kernel::cauchy_power(1).unwrap()] {
            let r = principal_value(&kernel, &m, Vec3::ZERO, &cfg).unwrap();
            assert!(r.converged);
            assert!(r.value().norm() < 1e-12);
        }
    }

    #[test]
    fn pv_on_circle_is_pi_times_normal() {
        let m = RadonMeasure::hausdorff(RectifiableSet::circle(Vec3::ZERO, 1.0));
        let cfg = ExtrapolationConfig::for_diameter(2.0);
        let r = principal_value(&riesz1(), &m, Vec3::xy(1.0, 0.0), &cfg).unwrap();
        assert!(r.converged);
        assert!((r.value() - Vec3::xy(PI, 0.0)).norm() < 5e-6);
    }

    #[test]
    fn pv_rejects_off_carrier_and_atom_points() {
        let carrier = RectifiableSet::segment(Vec3::xy(-1.0, 0.0), Vec3::xy(1.0, 0.0));
        let m = RadonMeasure::new(
            carrier,
            Density::constant(1.0),
            vec![Atom::new(Vec3::xy(0.5, 0.0), 1.0)],
        );
        let cfg = ExtrapolationConfig::for_diameter(2.0);
        assert!(matches!(
            principal_value(&riesz1(), &m, Vec3::xy(0.0, 1.0), &cfg),
            Err(Error::OffCarrier)
        ));
        assert!(principal_value(&riesz1(), &m, Vec3::xy(0.5, 0.0), &cfg).is_err());
    }

    #[test]
    fn nontangential_limit_on_long_segment() {
        // For the segment [−L, L] at x = 0, T at (0, t) is
        // (0, 2 arctan(L/t)) → (0, π); the minus side mirrors it.
        let l = 100.0;
        let m = RadonMeasure::hausdorff(RectifiableSet::segment(
            Vec3::xy(-l, 0.0),
            Vec3::xy(l, 0.0),
        ));
        let cfg = ExtrapolationConfig::for_diameter(2.0 * l);
        let plus = nontangential_limit(&riesz1(), &m, Vec3::ZERO, Side::Plus, 0.5, 0.25, &cfg)
            .unwrap();
        let minus = nontangential_limit(&riesz1(), &m, Vec3::ZERO, Side::Minus, 0.5, 0.25, &cfg)
            .unwrap();
        assert!(plus.converged && minus.converged);
        assert!((plus.value() - Vec3::xy(0.0, PI)).norm() < 1e-4);
        assert!((minus.value() - Vec3::xy(0.0, -PI)).norm() < 1e-4);
        // Spot-check one ladder sample against the closed form.
        let (t, v) = plus.samples[3];
        let expected = 2.0 * (l / t).atan();
        assert_abs_diff_eq!(v[1], expected, epsilon = 1e-6);
    }

    #[test]
    fn nontangential_limit_outside_circle_doubles_pv() {
        let m = RadonMeasure::hausdorff(RectifiableSet::circle(Vec3::ZERO, 1.0));
        let cfg = ExtrapolationConfig::for_diameter(2.0);
        let x = Vec3::xy(1.0, 0.0);
        let plus = nontangential_limit(&riesz1(), &m, x, Side::Plus, 0.5, 0.25, &cfg).unwrap();
        assert!((plus.value() - Vec3::xy(2.0 * PI, 0.0)).norm() < 5e-6);
        let minus = nontangential_limit(&riesz1(), &m, x, Side::Minus, 0.5, 0.25, &cfg).unwrap();
        assert!(minus.value().norm() < 5e-6);
    }

    #[test]
    fn aperture_validation() {
        let m = RadonMeasure::hausdorff(RectifiableSet::circle(Vec3::ZERO, 1.0));
        let cfg = ExtrapolationConfig::for_diameter(2.0);
        let x = Vec3::xy(1.0, 0.0);
        assert!(nontangential_limit(&riesz1(), &m, x, Side::Plus, 0.25, 0.5, &cfg).is_err());
        assert!(nontangential_limit(&riesz1(), &m, x, Side::Plus, 1.2, 0.5, &cfg).is_err());
    }

    #[test]
    fn numeric_jump_constant_riesz() {
        let c = jump_constant_numeric(&riesz1(), Vec3::xy(0.0, 1.0), 1e4).unwrap();
        assert!(c.tail_bound < 1e-8);
        assert!((c.value - Vec3::xy(0.0, PI)).norm() < 1e-8);

        let k2 = Kernel::riesz(2).unwrap();
        let c = jump_constant_numeric(&k2, Vec3::new(0.0, 0.0, 1.0), 1e4).unwrap();
        assert!((c.value - Vec3::new(0.0, 0.0, 2.0 * PI)).norm() < 1e-6);
    }

    #[test]
    fn numeric_jump_constant_is_odd_in_normal() {
        let k = Kernel::cauchy_power(3).unwrap();
        let n = Vec3::xy(0.6, 0.8);
        let plus = jump_constant_numeric(&k, n, 1e3).unwrap().value;
        let minus = jump_constant_numeric(&k, -n, 1e3).unwrap().value;
        assert!((plus + minus).norm() < 1e-9);
    }

    #[test]
    fn numeric_matches_closed_forms_for_cauchy_powers() {
        for j in [1u32, 3, 5] {
            let k = Kernel::cauchy_power(j).unwrap();
            for angle in [0.0f64, 0.71, 2.2] {
                let n = Vec3::xy(angle.cos(), angle.sin());
                let numeric = jump_constant_numeric(&k, n, 1e4).unwrap().value;
                let closed = k.closed_form_jump(n).unwrap();
                assert!(
                    (numeric - closed).norm() < 1e-6,
                    "j={j}, angle={angle}: {numeric:?} vs {closed:?}"
                );
            }
        }
    }

    #[test]
    fn jump_residuals_on_flat_line() {
        let m = RadonMeasure::hausdorff(RectifiableSet::segment(
            Vec3::xy(-100.0, 0.0),
            Vec3::xy(100.0, 0.0),
        ));
        let cfg = ExtrapolationConfig::for_diameter(200.0);
        let rec = jump_residuals(&riesz1(), &m, Vec3::ZERO, 0.5, 0.25, &cfg).unwrap();
        assert!(rec.converged);
        assert!(rec.residual_avg < 1e-9, "avg {}", rec.residual_avg);
        assert!(rec.residual_jump < 1e-5, "jump {}", rec.residual_jump);
        assert!((Vec3(rec.pv.value)).norm() < 1e-10);
        assert!((Vec3(rec.t_plus.value) - Vec3::xy(0.0, PI)).norm() < 1e-4);
    }

    #[test]
    fn jump_residuals_on_circle() {
        let m = RadonMeasure::hausdorff(RectifiableSet::circle(Vec3::ZERO, 1.0));
        let cfg = ExtrapolationConfig::for_diameter(2.0);
        let rec = jump_residuals(&riesz1(), &m, Vec3::xy(1.0, 0.0), 0.5, 0.25, &cfg).unwrap();
        assert!(rec.converged);
        assert!((Vec3(rec.pv.value) - Vec3::xy(PI, 0.0)).norm() < 1e-4);
        assert!((Vec3(rec.t_plus.value) - Vec3::xy(2.0 * PI, 0.0)).norm() < 1e-4);
        assert!(Vec3(rec.t_minus.value).norm() < 1e-4);
        assert!(rec.residual_avg < 1e-3);
        assert!(rec.residual_jump < 1e-3);
    }

    #[test]
    fn jump_residual_with_zero_density_and_off_set_atoms() {
        let carrier = RectifiableSet::segment(Vec3::xy(-10.0, 0.0), Vec3::xy(10.0, 0.0));
        let p = Vec3::xy(0.3, 2.0);
        let x = Vec3::ZERO;
        let m = RadonMeasure::new(
            carrier,
            Density::constant(0.0),
            vec![Atom::new(p, 1.0), Atom::new(x.scale(2.0) - p, -0.5)],
        );
        let cfg = ExtrapolationConfig::for_diameter(20.0);
        let rec = jump_residuals(&riesz1(), &m, x, 0.5, 0.25, &cfg).unwrap();
        // f = 0 makes the right side of the jump identity vanish.
        assert_eq!(rec.f, 0.0);
        assert!(rec.residual_jump < 1e-5, "jump {}", rec.residual_jump);
        assert!(rec.residual_avg < 1e-5);
    }

    #[test]
    fn symmetric_diagnostics_vanish_on_flat_line() {
        let l = 1000.0;
        let m = RadonMeasure::hausdorff(RectifiableSet::segment(
            Vec3::xy(-l, 0.0),
            Vec3::xy(l, 0.0),
        ));
        let cfg = ExtrapolationConfig::for_diameter(2.0 * l);
        for delta in [0.2, 0.1] {
            let (s, sd) =
                symmetric_diagnostics(&riesz1(), &m, Vec3::ZERO, delta, 0.5, 0.25, 4, &cfg)
                    .unwrap();
            // Exact cancellation up to the O(delta/L) edge effect.
            assert!(s < 1e-3, "S {s}");
            assert!(sd < 1e-3, "S~ {sd}");
        }
    }

    #[test]
    fn symmetric_diagnostics_nested_monotonicity() {
        let m = RadonMeasure::hausdorff(RectifiableSet::circle(Vec3::ZERO, 1.0));
        let cfg = ExtrapolationConfig::for_diameter(2.0);
        let x = Vec3::xy(1.0, 0.0);
        let mut prev = f64::INFINITY;
        for delta in [0.2, 0.1, 0.05] {
            let (s, _) = symmetric_diagnostics(&riesz1(), &m, x, delta, 0.5, 0.25, 4, &cfg)
                .unwrap();
            assert!(s <= prev + 1e-12, "delta={delta}: {s} > {prev}");
            prev = s;
        }
        // Decay toward zero on the smooth scene.
        assert!(prev < 0.5);
    }

    #[test]
    fn reflection_check_on_axis_aligned_planes() {
        let set = RectifiableSet::segment(Vec3::xy(-1.0, 0.0), Vec3::xy(1.0, 0.0));
        let frame = set.tangent_frame(0, &[0.5, 0.0]).unwrap();
        for kernel in [riesz1(), Kernel::cauchy_power(3).unwrap()] {
            let v = flat_plane_reflection_check(&kernel, &frame, Vec3::xy(0.0, 1.0), 5.0)
                .unwrap();
            assert!(v < 1e-9, "{v}");
        }
    }

    #[test]
    fn linearity_in_the_measure() {
        let carrier = RectifiableSet::circle(Vec3::ZERO, 1.0);
        let m1 = RadonMeasure::new(carrier.clone(), Density::constant(1.0), vec![]);
        let m2 = RadonMeasure::new(
            carrier.clone(),
            Density::Trig {
                coefficients: vec![0.0, 0.7, -0.2],
            },
            vec![],
        );
        // 2·m1 + 3·m2 assembled as a single trig density.
        let mix = RadonMeasure::new(
            carrier,
            Density::Trig {
                coefficients: vec![2.0, 2.1, -0.6],
            },
            vec![],
        );
        let k = riesz1();
        let x = Vec3::xy(-0.2, 1.3);
        let cfg = QuadConfig::default();
        let a = truncated_transform(&k, &m1, x, 0.05, &cfg).value;
        let b = truncated_transform(&k, &m2, x, 0.05, &cfg).value;
        let c = truncated_transform(&k, &mix, x, 0.05, &cfg).value;
        assert!((a.scale(2.0) + b.scale(3.0) - c).norm() < 1e-10);
    }

    #[test]
    fn plane_transform_translation_invariance() {
        // T_ε(ℋ¹|_{L∩B})(y) is unchanged when the window and the
        // evaluation point translate together along the line.
        let k = riesz1();
        let shift = Vec3::xy(0.35, 0.0);
        let line = RectifiableSet::segment(Vec3::xy(-50.0, 0.0), Vec3::xy(50.0, 0.0));
        let cfg = QuadConfig::with_abs_tol(1e-12);
        let y = Vec3::xy(0.0, 0.7);
        let window = |c: Vec3| Exclusion::inside(c, 3.0);
        let at = integrate_measure(
            &line,
            |sp: &SurfacePoint| k.eval(y - sp.position),
            Some(&window(Vec3::ZERO)),
            &cfg,
        );
        let shifted = integrate_measure(
            &line,
            |sp: &SurfacePoint| k.eval(y + shift - sp.position),
            Some(&window(shift)),
            &cfg,
        );
        assert!((at.value - shifted.value).norm() < 1e-10);
    }

    #[test]
    fn plane_transform_scale_invariance() {
        // T(χ_{B(0,At)} ℋ¹|_L)(tN) is independent of t by homogeneity.
        let k = riesz1();
        let line = RectifiableSet::segment(Vec3::xy(-80.0, 0.0), Vec3::xy(80.0, 0.0));
        let cfg = QuadConfig::with_abs_tol(1e-12);
        let big_a = 7.0;
        let eval = |t: f64| {
            let window = Exclusion::inside(Vec3::ZERO, big_a * t);
            integrate_measure(
                &line,
                |sp: &SurfacePoint| k.eval(Vec3::xy(0.0, t) - sp.position),
                Some(&window),
                &cfg,
            )
            .value
        };
        let v1 = eval(0.5);
        let v2 = eval(1.0);
        assert!((v1 - v2).norm() < 1e-8, "{v1:?} vs {v2:?}");
    }
}
