//! Momentum-noncommutative sector in 3+1 dimensions: the effective field
//! B_η, its vector potential, and relativistic Landau spectra.
//!
//! Functions take explicit constants so they work in SI or natural units.

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{invalid, Error, Result};
use crate::{Spin, Vector3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Species {
    Electron,
    Positron,
}

impl Species {
    /// Signed charge in the units of `k`.
    pub fn charge(self, k: &PhysicalConstants) -> f64 {
        match self {
            Species::Electron => k.e,
            Species::Positron => -k.e,
        }
    }
}

/// B_η = η/(eħ)
pub fn effective_field(eta: Vector3, k: &PhysicalConstants) -> Vector3 {
    eta / (k.e * k.hbar)
}

/// η that produces the field `b` through B_η = η/(eħ).
pub fn eta_for_field(b: Vector3, k: &PhysicalConstants) -> Vector3 {
    b * (k.e * k.hbar)
}

/// A_η = (η × r)/(2eħ), the symmetric-gauge potential of B_η.
pub fn effective_vector_potential(eta: Vector3, r: Vector3, k: &PhysicalConstants) -> Vector3 {
    eta.cross(&r) / (2.0 * k.e * k.hbar)
}

/// Curl of the linear map r ↦ A_η(r), read off its Jacobian columns.
pub fn effective_vector_potential_curl(eta: Vector3, k: &PhysicalConstants) -> Vector3 {
    let jac: [Vector3; 3] = std::array::from_fn(|j| {
        let mut e = Vector3::zeros();
        e[j] = 1.0;
        effective_vector_potential(eta, e, k)
    });
    // (∇×A)_i = ε_ijk ∂_j A_k, and ∂_j A_k = jac[j][k]
    Vector3::new(jac[1][2] - jac[2][1], jac[2][0] - jac[0][2], jac[0][1] - jac[1][0])
}

/// π_η = p − e A_η = p − (η × r)/(2ħ)
pub fn nc_generalized_momentum(p: Vector3, eta: Vector3, r: Vector3, k: &PhysicalConstants) -> Vector3 {
    p - effective_vector_potential(eta, r, k) * k.e
}

/// √(ħ/|eB|)
pub fn magnetic_radius(b: f64, k: &PhysicalConstants) -> f64 {
    (k.hbar / (k.charge_magnitude() * b.abs())).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauQuery {
    pub p3: f64,
    pub b3: f64,
    pub n: i64,
    pub l: i64,
    /// s₃ = ±ħ/2
    pub spin: Spin,
    /// Signed particle charge.
    pub charge: f64,
}

impl LandauQuery {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| Error::InvalidQuantumNumbers {
            n: self.n,
            l: self.l,
            reason: reason.to_string(),
        };
        if self.n < 0 {
            return Err(bad("n must be non-negative"));
        }
        if self.l.abs() > self.n || (self.n - self.l) % 2 != 0 {
            return Err(bad("l must be one of -n, -n+2, ..., n"));
        }
        if !(self.p3.is_finite() && self.b3.is_finite() && self.charge.is_finite()) {
            return Err(invalid("landau", "p3, B3 and charge must be finite"));
        }
        Ok(())
    }

    /// Level index k with E² = m²c⁴ + p₃²c² + 2k c²ħ|eB₃|.
    pub fn level_index(&self) -> i64 {
        let sign = (self.charge * self.b3).signum() as i64;
        let spin = self.spin.sign() as i64;
        (self.n - self.l + 1 - sign * spin) / 2
    }
}

/// Positive root of E² = m²c⁴ + p₃²c² + c²ħ|eB₃|(n − l + 1) − 2c² eB₃ s₃.
pub fn landau_energy(q: &LandauQuery, k: &PhysicalConstants) -> Result<f64> {
    q.validate()?;
    let c2 = k.c * k.c;
    let eb = q.charge * q.b3;
    let s3 = q.spin.sign() * k.hbar / 2.0;
    let e2 = (k.m_e * c2).powi(2) + (q.p3 * k.c).powi(2) + c2 * k.hbar * eb.abs() * (q.n - q.l + 1) as f64 - 2.0 * c2 * eb * s3;
    Ok(e2.sqrt())
}

/// Energy of level k from the collapsed form.
pub fn landau_level_energy(level: i64, p3: f64, b3: f64, charge: f64, k: &PhysicalConstants) -> f64 {
    let c2 = k.c * k.c;
    ((k.m_e * c2).powi(2) + (p3 * k.c).powi(2) + 2.0 * level as f64 * c2 * k.hbar * (charge * b3).abs()).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LandauState {
    pub n: i64,
    pub l: i64,
    pub spin: Spin,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandauLevel {
    pub k: i64,
    pub energy: f64,
    pub degenerate_states: Vec<LandauState>,
}

/// All (n, l, s₃) with n ≤ n_max in level k.
pub fn landau_level(level: i64, p3: f64, b3: f64, species: Species, n_max: i64, k: &PhysicalConstants) -> Result<LandauLevel> {
    if level < 0 {
        return Err(invalid("k", format!("level index must be non-negative, got {level}")));
    }
    if b3 == 0.0 || !b3.is_finite() {
        return Err(invalid("B3", "field must be finite and nonzero to resolve levels"));
    }
    let charge = species.charge(k);
    let mut states = Vec::new();
    for n in 0..=n_max {
        for l in (-n..=n).step_by(2) {
            for spin in [Spin::Up, Spin::Down] {
                let q = LandauQuery {
                    p3,
                    b3,
                    n,
                    l,
                    spin,
                    charge,
                };
                if q.level_index() == level {
                    states.push(LandauState { n, l, spin });
                }
            }
        }
    }
    Ok(LandauLevel {
        k: level,
        energy: landau_level_energy(level, p3, b3, charge, k),
        degenerate_states: states,
    })
}

/// Levels k = 0..=k_max of the spectrum induced by η₃ alone.
pub fn nc_landau_spectrum(
    eta3: f64,
    p3: f64,
    species: Species,
    k_max: i64,
    n_max: i64,
    k: &PhysicalConstants,
) -> Result<Vec<LandauLevel>> {
    let charge = species.charge(k);
    // B_η carries the charge of the particle it acts on.
    let b = eta3 / (charge * k.hbar);
    (0..=k_max).map(|lvl| landau_level(lvl, p3, b, species, n_max, k)).collect()
}
