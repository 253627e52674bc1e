//! Finite signed Radon measures ν = f·ℋⁿ|_E + Σ wᵢ δ_{pᵢ}.
//!
//! The absolutely continuous part is a smooth density on a rectifiable
//! carrier, given as a closed-form expression of the patch parameter;
//! the singular part is a finite list of point masses.

use crate::error::{Error, Result};
use crate::geometry::{integrate_measure, Exclusion, QuadConfig, RectifiableSet, SurfacePoint};
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};

/// Density registry: closed-form expressions of the first patch
/// parameter. Smooth choices keep principal values honest to compute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Density {
    /// f ≡ c.
    Constant { coefficients: [f64; 1] },
    /// f(s) = a₀ + Σₖ aₖ cos(ks) + bₖ sin(ks); coefficients laid out
    /// [a₀, a₁, b₁, a₂, b₂, …].
    Trig { coefficients: Vec<f64> },
    /// f(s) = Σₖ cₖ sᵏ.
    Poly { coefficients: Vec<f64> },
}

impl Density {
    pub fn constant(c: f64) -> Density {
        Density::Constant { coefficients: [c] }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Density::Constant { coefficients } => coefficients[0],
            Density::Trig { coefficients } => {
                let mut f = coefficients.first().copied().unwrap_or(0.0);
                let mut k = 1.0;
                let mut it = coefficients[1.min(coefficients.len())..].chunks(2);
                for pair in &mut it {
                    f += pair[0] * (k * s).cos();
                    if pair.len() > 1 {
                        f += pair[1] * (k * s).sin();
                    }
                    k += 1.0;
                }
                f
            }
            Density::Poly { coefficients } => {
                coefficients.iter().rev().fold(0.0, |acc, c| acc * s + c)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: Vec3Ser,
    pub weight: f64,
}

pub type Vec3Ser = [f64; 3];

impl Atom {
    pub fn new(location: Vec3, weight: f64) -> Atom {
        Atom {
            location: location.0,
            weight,
        }
    }

    pub fn position(&self) -> Vec3 {
        Vec3(self.location)
    }
}

#[derive(Debug, Clone)]
pub struct RadonMeasure {
    carrier: RectifiableSet,
    density: Density,
    atoms: Vec<Atom>,
}

/// Scalar quadrature outcome: best estimate plus convergence status.
#[derive(Debug, Clone, Copy)]
pub struct ScalarResult {
    pub value: f64,
    pub error_bound: f64,
    pub converged: bool,
}

impl RadonMeasure {
    pub fn new(carrier: RectifiableSet, density: Density, atoms: Vec<Atom>) -> RadonMeasure {
        RadonMeasure {
            carrier,
            density,
            atoms,
        }
    }

    /// Constant density one, no atoms: the measure ℋⁿ|_E itself.
    pub fn hausdorff(carrier: RectifiableSet) -> RadonMeasure {
        Self::new(carrier, Density::constant(1.0), Vec::new())
    }

    pub fn carrier(&self) -> &RectifiableSet {
        &self.carrier
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn density_at_param(&self, s: f64) -> f64 {
        self.density.eval(s)
    }

    /// dν/dℋⁿ|_E at a point of the carrier. Atoms have zero density,
    /// so only the absolutely continuous part contributes.
    pub fn density_at(&self, x: Vec3) -> Result<f64> {
        let (_, t) = self.carrier.locate(x).ok_or(Error::OffCarrier)?;
        Ok(self.density.eval(t[0]))
    }

    /// Total-variation mass of the closed ball B̄(x, r).
    pub fn ball_mass(&self, x: Vec3, r: f64, cfg: &QuadConfig) -> ScalarResult {
        let ex = Exclusion::inside(x, r);
        let density = &self.density;
        let quad = integrate_measure(
            &self.carrier,
            |sp: &SurfacePoint| Vec3::new(density.eval(sp.param[0]).abs(), 0.0, 0.0),
            Some(&ex),
            cfg,
        );
        let atom_mass: f64 = self
            .atoms
            .iter()
            .filter(|a| a.position().dist(&x) <= r)
            .map(|a| a.weight.abs())
            .sum();
        ScalarResult {
            value: quad.value.x() + atom_mass,
            error_bound: quad.error_bound,
            converged: quad.converged,
        }
    }

    /// supᵣ |ν|(B(x,r))/rⁿ over a radius grid; +∞ if an atom sits at x.
    pub fn maximal_density(&self, x: Vec3, radii: &[f64], cfg: &QuadConfig) -> ScalarResult {
        if self.atoms.iter().any(|a| a.position().dist(&x) == 0.0) {
            return ScalarResult {
                value: f64::INFINITY,
                error_bound: 0.0,
                converged: true,
            };
        }
        let n = self.carrier.n() as i32;
        let mut sup = 0.0f64;
        let mut err = 0.0f64;
        let mut converged = true;
        for &r in radii {
            let m = self.ball_mass(x, r, cfg);
            sup = sup.max(m.value / r.powi(n));
            err = err.max(m.error_bound / r.powi(n));
            converged &= m.converged;
        }
        ScalarResult {
            value: sup,
            error_bound: err,
            converged,
        }
    }

    /// Diameter of the scene: carrier plus atom locations.
    pub fn scene_diameter(&self) -> f64 {
        let mut d = self.carrier.diameter();
        for (i, a) in self.atoms.iter().enumerate() {
            for b in &self.atoms[i + 1..] {
                d = d.max(a.position().dist(&b.position()));
            }
        }
        d.max(1e-12)
    }
}

/// Default radius grid: 40 radii, geometric from 1e−4·diam to 4·diam.
pub fn default_radii(diameter: f64) -> Vec<f64> {
    let lo = 1e-4 * diameter;
    let hi = 4.0 * diameter;
    let count = 40;
    (0..count)
        .map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64))
        .collect()
}
