//! Odd Calderón–Zygmund convolution kernels of homogeneity −n.
//!
//! A kernel K(x) = Ω(x)/|x|^n maps nonzero points of ℝ^{n+1} to vectors:
//! the Riesz kernel takes values in ℝ^{n+1}, complex kernels in ℝ²
//! encoding (re, im). Ω is homogeneous of degree 0 and odd.

use crate::error::{Error, Result};
use crate::vec3::Vec3;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Smoothness exponent used by the Hölder condition; all built-in
/// kernels are smooth away from the origin.
pub const ETA: f64 = 1.0;

const CZ_SEED: u64 = 0x4a55_4d50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KernelKind {
    /// K(x) = x / |x|^{n+1} on ℝ^{n+1}.
    Riesz { n: u32 },
    /// K(z) = z^j / |z|^{j+1} in the complex plane, j odd.
    CauchyPower { j: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    kind: KernelKind,
}

/// n-dimensional volume of the unit sphere in ℝ^{n+1}: 2π^{(n+1)/2} / Γ((n+1)/2).
pub fn sphere_volume(n: u32) -> f64 {
    let half = (n + 1) as i64; // Γ evaluated at half/2
    2.0 * std::f64::consts::PI.powf((n as f64 + 1.0) / 2.0) / gamma_half(half)
}

/// Γ(k/2) for integer k ≥ 1 by the recursion Γ(z+1) = zΓ(z).
fn gamma_half(k: i64) -> f64 {
    match k {
        1 => std::f64::consts::PI.sqrt(),
        2 => 1.0,
        _ => ((k - 2) as f64 / 2.0) * gamma_half(k - 2),
    }
}

impl Kernel {
    /// The n-dimensional Riesz kernel x/|x|^{n+1}.
    pub fn riesz(n: u32) -> Result<Kernel> {
        if n < 1 {
            return Err(Error::InvalidKernel("riesz requires n >= 1".into()));
        }
        Ok(Kernel {
            kind: KernelKind::Riesz { n },
        })
    }

    /// The complex kernel z^j/|z|^{j+1}; only odd powers are odd kernels.
    pub fn cauchy_power(j: u32) -> Result<Kernel> {
        if j % 2 == 0 || j < 1 {
            return Err(Error::InvalidKernel(format!(
                "cauchy power j = {j} is not an odd kernel"
            )));
        }
        Ok(Kernel {
            kind: KernelKind::CauchyPower { j },
        })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// Homogeneity dimension: K(λx) = λ^{-n} K(x).
    pub fn n(&self) -> u32 {
        match self.kind {
            KernelKind::Riesz { n } => n,
            KernelKind::CauchyPower { .. } => 1,
        }
    }

    /// Dimension of the ambient space ℝ^{n+1}.
    pub fn ambient_dim(&self) -> usize {
        self.n() as usize + 1
    }

    /// Number of components of the kernel's output.
    pub fn value_dim(&self) -> usize {
        match self.kind {
            KernelKind::Riesz { n } => n as usize + 1,
            KernelKind::CauchyPower { .. } => 2,
        }
    }

    pub fn eta(&self) -> f64 {
        ETA
    }

    pub fn name(&self) -> String {
        match self.kind {
            KernelKind::Riesz { n } => format!("riesz(n={n})"),
            KernelKind::CauchyPower { j } => format!("cauchy-power(j={j})"),
        }
    }

    /// K(x); errors at the singularity x = 0.
    pub fn evaluate(&self, x: Vec3) -> Result<Vec3> {
        if x.norm_sq() == 0.0 {
            return Err(Error::KernelSingularity);
        }
        Ok(self.eval(x))
    }

    /// K(x) assuming x ≠ 0; the quadrature and limit paths guarantee this.
    pub fn eval(&self, x: Vec3) -> Vec3 {
        match self.kind {
            KernelKind::Riesz { n } => {
                let r = x.norm();
                x.scale(1.0 / r.powi(n as i32 + 1))
            }
            KernelKind::CauchyPower { j } => {
                let r = x.norm();
                x.complex_pow(j).scale(1.0 / r.powi(j as i32 + 1))
            }
        }
    }

    /// Ω(x) = |x|^n K(x), homogeneous of degree 0.
    pub fn omega(&self, x: Vec3) -> Result<Vec3> {
        if x.norm_sq() == 0.0 {
            return Err(Error::KernelSingularity);
        }
        let r = x.norm();
        Ok(self.eval(x).scale(r.powi(self.n() as i32)))
    }

    /// Analytic jump constant C_K(N) for a unit normal N, when known.
    ///
    /// Riesz: (ω_n/2)·N. Cauchy power j: (−1)^{(j−1)/2} π N^j, i.e. the
    /// complex constant π i^{j−1} N^j. The j = 1 case reduces to the
    /// planar Riesz kernel and both formulas give π N, as they must.
    pub fn closed_form_jump(&self, normal: Vec3) -> Option<Vec3> {
        match self.kind {
            KernelKind::Riesz { n } => Some(normal.scale(sphere_volume(n) / 2.0)),
            KernelKind::CauchyPower { j } => {
                let sign = if ((j - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                Some(normal.complex_pow(j).scale(sign * std::f64::consts::PI))
            }
        }
    }
}

/// Estimates the constant of |∇^j K(x)| ≤ C/|x|^{n+j} by sampling the
/// unit sphere and differencing centrally with step h = 1e−5.
///
/// The returned value is the sample supremum of |∇^j K| scaled by
/// |x|^{n+j}; a finite result certifies the bound at those samples.
pub fn check_cz_bounds(kernel: &Kernel, sample_count: usize, j: u8) -> Result<f64> {
    if sample_count < 1 {
        return Err(Error::InvalidConfig("sample_count must be >= 1".into()));
    }
    if j > 2 {
        return Err(Error::InvalidConfig("gradient order must be 0, 1 or 2".into()));
    }
    let h = 1e-5;
    let dim = kernel.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(CZ_SEED ^ (j as u64));
    let mut sup = 0.0f64;
    for _ in 0..sample_count {
        let x = random_unit(&mut rng, dim);
        let est = match j {
            0 => kernel.eval(x).norm(),
            1 => grad_frobenius(kernel, x, dim, h),
            _ => hessian_frobenius(kernel, x, dim, h),
        };
        if !est.is_finite() {
            return Err(Error::InvalidKernel(format!(
                "non-finite derivative estimate at {:?}",
                x.truncated(dim)
            )));
        }
        sup = sup.max(est);
    }
    Ok(sup)
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec3 {
    loop {
        let mut c = [0.0; 3];
        for item in c.iter_mut().take(dim) {
            *item = rng.gen_range(-1.0..1.0);
        }
        let v = Vec3(c);
        let n = v.norm_sq();
        if n > 1e-4 && n <= 1.0 {
            return v.normalized();
        }
    }
}

fn basis(k: usize) -> Vec3 {
    let mut c = [0.0; 3];
    c[k] = 1.0;
    Vec3(c)
}

fn grad_frobenius(kernel: &Kernel, x: Vec3, dim: usize, h: f64) -> f64 {
    let mut sum = 0.0;
    for k in 0..dim {
        let e = basis(k);
        let d = (kernel.eval(x + e.scale(h)) - kernel.eval(x - e.scale(h))).scale(1.0 / (2.0 * h));
        sum += d.norm_sq();
    }
    sum.sqrt()
}

fn hessian_frobenius(kernel: &Kernel, x: Vec3, dim: usize, h: f64) -> f64 {
    let f0 = kernel.eval(x);
    let mut sum = 0.0;
    for k in 0..dim {
        for l in 0..dim {
            let ek = basis(k);
            let el = basis(l);
            let d = if k == l {
                (kernel.eval(x + ek.scale(h)) - f0.scale(2.0) + kernel.eval(x - ek.scale(h)))
                    .scale(1.0 / (h * h))
            } else {
                (kernel.eval(x + ek.scale(h) + el.scale(h))
                    - kernel.eval(x + ek.scale(h) - el.scale(h))
                    - kernel.eval(x - ek.scale(h) + el.scale(h))
                    + kernel.eval(x - ek.scale(h) - el.scale(h)))
                .scale(1.0 / (4.0 * h * h))
            };
            sum += d.norm_sq();
        }
    }
    sum.sqrt()
}
