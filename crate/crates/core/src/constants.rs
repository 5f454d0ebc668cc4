//! Physical constants.
//!
//! SI values are CODATA 2018. Every closed form in the crate takes a
//! `&PhysicalConstants`, so passing [`PhysicalConstants::dirac_natural`]
//! evaluates the same expression in units where ħ = c = mₑ = |e| = 1.

use serde::Serialize;

use crate::error::{invalid, Result};

const HBAR: f64 = 1.054_571_817e-34;
const C: f64 = 299_792_458.0;
const M_E: f64 = 9.109_383_701_5e-31;
const M_P: f64 = 1.672_621_923_69e-27;
const E_CHARGE: f64 = -1.602_176_634e-19;
const ALPHA_FSC: f64 = 7.297_352_569_3e-3;
/// Euler–Mascheroni constant.
pub const GAMMA_EULER: f64 = 0.577_215_664_901_532_9;
/// Graphene Fermi velocity, 10⁸ cm/s.
const V_F: f64 = 1.0e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Electron mass (kg).
    pub m_e: f64,
    /// Proton mass (kg), used only by the hydrogen Zeeman shift.
    pub m_p: f64,
    /// Signed electron charge (C); negative.
    pub e: f64,
    pub alpha_fsc: f64,
    pub gamma_euler: f64,
    /// Reduced Compton wavelength ħ/(mₑc) (m).
    pub lambda_c: f64,
    /// Default graphene Fermi velocity (m/s).
    pub v_f_default: f64,
}

/// CODATA 2018 constants in SI units.
pub fn load_constants() -> PhysicalConstants {
    PhysicalConstants::codata()
}

impl PhysicalConstants {
    pub fn codata() -> Self {
        Self::from_primitives(HBAR, C, M_E, E_CHARGE, V_F).expect("CODATA values are valid")
    }

    /// Constants in units where ħ = c = mₑ = |e| = 1, so λ_c = 1.
    ///
    /// The proton mass keeps its ratio to mₑ and the Fermi velocity its
    /// ratio to c; the fine-structure constant is dimensionless and unchanged.
    pub fn dirac_natural() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            m_e: 1.0,
            m_p: M_P / M_E,
            e: -1.0,
            alpha_fsc: ALPHA_FSC,
            gamma_euler: GAMMA_EULER,
            lambda_c: 1.0,
            v_f_default: V_F / C,
        }
    }

    /// Builds a constant set from overridable primitives, deriving λ_c.
    pub fn from_primitives(hbar: f64, c: f64, m_e: f64, e: f64, v_f: f64) -> Result<Self> {
        for (name, v) in [("const.hbar", hbar), ("const.c", c), ("const.m_e", m_e), ("const.v_f", v_f)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(name, format!("must be finite and positive, got {v}")));
            }
        }
        if !(e.is_finite() && e < 0.0) {
            return Err(invalid("const.e", "electron charge must be negative"));
        }
        Ok(Self {
            hbar,
            c,
            m_e,
            m_p: M_P * (m_e / M_E),
            e,
            alpha_fsc: ALPHA_FSC,
            gamma_euler: GAMMA_EULER,
            lambda_c: hbar / (m_e * c),
            v_f_default: v_f,
        })
    }

    pub fn with_overrides(&self, hbar: Option<f64>, c: Option<f64>, m_e: Option<f64>, v_f: Option<f64>) -> Result<Self> {
        let mut out = Self::from_primitives(
            hbar.unwrap_or(self.hbar),
            c.unwrap_or(self.c),
            m_e.unwrap_or(self.m_e),
            self.e,
            v_f.unwrap_or(self.v_f_default),
        )?;
        out.m_p = self.m_p * (out.m_e / self.m_e);
        Ok(out)
    }

    /// |e|
    pub fn charge_magnitude(&self) -> f64 {
        self.e.abs()
    }

    /// Rest energy mₑc².
    pub fn rest_energy(&self) -> f64 {
        self.m_e * self.c * self.c
    }

    /// Bohr radius λ_c/α.
    pub fn bohr_radius(&self) -> f64 {
        self.lambda_c / self.alpha_fsc
    }

    pub fn proton_electron_mass_ratio(&self) -> f64 {
        self.m_p / self.m_e
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata()
    }
}
