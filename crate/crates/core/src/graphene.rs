//! Zitterbewegung of a Gaussian packet in monolayer graphene under the
//! uniform effective field B_η.
//!
//! Configuration is given in SI. Everything else is evaluated in graphene
//! natural units: lengths in the magnetic radius L, times in 1/Ω, ħ = 1, so
//! the Fermi velocity becomes 1/√2 and energies are in ħΩ.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{invalid, Error, Result};
use crate::hermite::hermite_ln;
use crate::quadrature::{integrate_real_line, GaussHermite, Tolerance};
use crate::units::UnitFrame;

pub const DEFAULT_M_MAX: usize = 32;
pub const DEFAULT_L_OVER_ELL: f64 = 2.0;
pub const DEFAULT_K0X_ELL: f64 = 1.0;

/// Overlap quadrature tolerance.
const OVERLAP_TOL: f64 = 1e-13;

/// How the effective field is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    /// η₃ in kg²·m²/s².
    Eta3(f64),
    /// B_η in tesla.
    BEta(f64),
    /// Both given; they must agree through B_η = η₃/(|e|ħ).
    Both { eta3: f64, b_eta: f64 },
    /// Magnetic radius as a multiple of the packet width.
    LOverEll(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrapheneConfig {
    /// η₃ in kg²·m²/s².
    pub eta3: f64,
    /// Packet width ℓ in m.
    pub ell: f64,
    /// Initial wavenumber k₀ₓ in 1/m.
    pub k0x: f64,
    /// Fermi velocity in m/s.
    pub v_f: f64,
    pub u: f64,
    pub d: f64,
    pub m_max: usize,
    hbar: f64,
    charge: f64,
}

impl GrapheneConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: FieldSpec,
        ell: f64,
        k0x: f64,
        v_f: f64,
        u: f64,
        d: f64,
        m_max: usize,
        k: &PhysicalConstants,
    ) -> Result<Self> {
        if !(ell.is_finite() && ell > 0.0) {
            return Err(invalid("ell", format!("packet width must be positive, got {ell}")));
        }
        if !(v_f.is_finite() && v_f > 0.0) {
            return Err(invalid("v_f", format!("Fermi velocity must be positive, got {v_f}")));
        }
        if !k0x.is_finite() {
            return Err(invalid("k0x", "initial wavenumber must be finite"));
        }
        if ((u * u + d * d) - 1.0).abs() > 1e-12 {
            return Err(invalid(
                "u,d",
                format!("amplitudes must satisfy u² + d² = 1, got {}", u * u + d * d),
            ));
        }
        if (u - d).abs() > 1e-12 {
            return Err(invalid("u,d", "the series coefficients assume equal band amplitudes u = d"));
        }
        if m_max < 1 {
            return Err(invalid("m_max", "series truncation must be at least 1"));
        }
        let charge = k.charge_magnitude();
        let eta_from_b = |b: f64| b.abs() * charge * k.hbar;
        let eta3 = match field {
            FieldSpec::Eta3(e) => e,
            FieldSpec::BEta(b) => eta_from_b(b),
            FieldSpec::Both { eta3, b_eta } => {
                let implied = eta3 / (charge * k.hbar);
                if ((implied - b_eta.abs()) / implied).abs() > 1e-12 {
                    return Err(Error::InconsistentField { implied, given: b_eta });
                }
                eta3
            }
            FieldSpec::LOverEll(r) => {
                if !(r.is_finite() && r > 0.0) {
                    return Err(invalid("L_over_ell", format!("ratio must be positive, got {r}")));
                }
                (k.hbar / (r * ell)).powi(2)
            }
        };
        if !(eta3.is_finite() && eta3 > 0.0) {
            return Err(invalid("eta3", format!("η₃ must be positive, got {eta3}")));
        }
        let cfg = Self {
            eta3,
            ell,
            k0x,
            v_f,
            u,
            d,
            m_max,
            hbar: k.hbar,
            charge,
        };
        if cfg.magnetic_radius() <= ell {
            return Err(invalid(
                "ell",
                format!(
                    "magnetic radius {:e} m must exceed packet width {ell:e} m",
                    cfg.magnetic_radius()
                ),
            ));
        }
        Ok(cfg)
    }

    /// Demo scenario: L = 2ℓ, k₀ₓℓ = 1, u = d = 1/√2.
    pub fn demo(ell: f64, k: &PhysicalConstants) -> Result<Self> {
        Self::new(
            FieldSpec::LOverEll(DEFAULT_L_OVER_ELL),
            ell,
            DEFAULT_K0X_ELL / ell,
            k.v_f_default,
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            DEFAULT_M_MAX,
            k,
        )
    }

    pub fn with_m_max(mut self, m_max: usize) -> Result<Self> {
        if m_max < 1 {
            return Err(invalid("m_max", "series truncation must be at least 1"));
        }
        self.m_max = m_max;
        Ok(self)
    }

    /// |B_η| in tesla.
    pub fn b_eta(&self) -> f64 {
        self.eta3 / (self.charge * self.hbar)
    }

    /// L = ħ/√η₃ in m.
    pub fn magnetic_radius(&self) -> f64 {
        self.hbar / self.eta3.sqrt()
    }

    /// g = L³/√(L⁴ − ℓ⁴) in m.
    pub fn g(&self) -> f64 {
        let l = self.magnetic_radius();
        l.powi(3) / (l.powi(4) - self.ell.powi(4)).sqrt()
    }

    pub fn frame(&self) -> Result<UnitFrame> {
        Ok(UnitFrame::GrapheneNatural {
            magnetic_length: self.magnetic_radius(),
            omega: big_omega(self)?,
        })
    }

    fn natural(&self) -> Natural {
        let l = self.magnetic_radius();
        let ell = self.ell / l;
        let s = 1.0 + ell * ell;
        let big_a = (1.0 + ell * ell + ell.powi(4)) / s;
        let k0 = self.k0x * l;
        Natural {
            ell,
            k0,
            g: 1.0 / (1.0 - ell.powi(4)).sqrt(),
            big_a,
            center: ell * ell * k0 / big_a,
        }
    }
}

/// Dimensionless scenario in units of L.
#[derive(Debug, Clone, Copy)]
struct Natural {
    ell: f64,
    k0: f64,
    g: f64,
    /// Curvature of the combined Gaussian of Fₘ Fₘ'.
    big_a: f64,
    center: f64,
}

/// Fermi velocity in graphene natural units, from Ω = √2 v_F/L.
pub const V_F_NATURAL: f64 = FRAC_1_SQRT_2;

/// Ω = √(2|eB_η|/ħ)·v_F, checked against √(2η₃)·v_F/ħ.
pub fn big_omega(cfg: &GrapheneConfig) -> Result<f64> {
    let from_field = (2.0 * cfg.charge * cfg.b_eta() / cfg.hbar).sqrt() * cfg.v_f;
    let from_eta = (2.0 * cfg.eta3).sqrt() * cfg.v_f / cfg.hbar;
    if ((from_field - from_eta) / from_eta).abs() > 1e-12 {
        return Err(Error::InconsistentField {
            implied: cfg.eta3 / (cfg.charge * cfg.hbar),
            given: cfg.b_eta(),
        });
    }
    Ok(from_eta)
}

/// E_sm = s√m in units of ħΩ.
pub fn graphene_energy(s: i8, m: usize) -> f64 {
    f64::from(s.signum()) * (m as f64).sqrt()
}

/// E_sm in joules.
pub fn graphene_energy_si(s: i8, m: usize, cfg: &GrapheneConfig) -> Result<f64> {
    Ok(graphene_energy(s, m) * cfg.hbar * big_omega(cfg)?)
}

fn ln_prefactor(m: usize, n: &Natural) -> f64 {
    let l2 = n.ell * n.ell;
    let mf = m as f64;
    n.ell.ln() + 0.5 * mf * (1.0 - l2).ln()
        - 0.5 * ((mf + 1.0) * 2f64.ln() + (mf + 1.0) * (1.0 + l2).ln() + crate::hermite::ln_factorial(m) + 0.5 * PI.ln())
}

fn f_m_natural(kx: f64, m: i64, n: &Natural) -> f64 {
    if m < 0 || !kx.is_finite() {
        return 0.0;
    }
    let m = m as usize;
    let (sign, ln_h) = hermite_ln(m, kx * n.g);
    if sign == 0.0 {
        return 0.0;
    }
    let gauss = -0.5 * n.ell * n.ell * (kx - n.k0).powi(2) - kx * kx / (2.0 * (1.0 + n.ell * n.ell));
    let v = sign * (ln_prefactor(m, n) + ln_h + gauss).exp();
    // Far tails where the log terms overflow contribute nothing.
    if v.is_nan() {
        0.0
    } else {
        v
    }
}

/// Fₘ(kₓ) with kₓ in units of 1/L; F₋₁ ≡ 0.
pub fn f_m(kx: f64, m: i64, cfg: &GrapheneConfig) -> f64 {
    f_m_natural(kx, m, &cfg.natural())
}

fn overlap_natural(m: i64, mp: i64, n: &Natural, tol: Tolerance) -> Result<f64> {
    if m < 0 || mp < 0 {
        return Ok(0.0);
    }
    let width = ((m.max(mp) as f64 + 1.0).sqrt() / n.g).max(1.0 / n.big_a.sqrt());
    integrate_real_line(|k| f_m_natural(k, m, n) * f_m_natural(k, mp, n), n.center, width, tol).map(|r| r.value)
}

fn check_level(m: i64) -> Result<()> {
    if m < -1 {
        Err(invalid("m", format!("overlap index must be ≥ −1, got {m}")))
    } else {
        Ok(())
    }
}

/// V_{m,m'} = ∫ Fₘ Fₘ' dkₓ by adaptive quadrature.
pub fn overlap(m: i64, mp: i64, cfg: &GrapheneConfig) -> Result<f64> {
    check_level(m)?;
    check_level(mp)?;
    let (a, b) = if m <= mp { (m, mp) } else { (mp, m) };
    overlap_natural(a, b, &cfg.natural(), Tolerance::new(OVERLAP_TOL))
}

/// V_{m,m'} by Gauss-Hermite quadrature about the combined Gaussian, exact
/// for the polynomial part.
pub fn overlap_gauss_hermite(m: i64, mp: i64, cfg: &GrapheneConfig) -> Result<f64> {
    check_level(m)?;
    check_level(mp)?;
    if m < 0 || mp < 0 {
        return Ok(0.0);
    }
    let n = cfg.natural();
    let rule = GaussHermite::new((m + mp) as usize / 2 + 8)?;
    let sa = n.big_a.sqrt();
    // Fₘ Fₘ' = e^{−A(k−c)²} · e^{A c² − ℓ²k₀²} · (prefactors) · Hₘ Hₘ'
    let shift = n.big_a * n.center * n.center - n.ell * n.ell * n.k0 * n.k0;
    let base = ln_prefactor(m as usize, &n) + ln_prefactor(mp as usize, &n) + shift - sa.ln();
    Ok(rule.integrate(|x| {
        let k = n.center + x / sa;
        let (s1, l1) = hermite_ln(m as usize, k * n.g);
        let (s2, l2) = hermite_ln(mp as usize, k * n.g);
        s1 * s2 * (base + l1 + l2).exp()
    }))
}

/// V₀,₀ from completing the square.
pub fn overlap_00_analytic(cfg: &GrapheneConfig) -> f64 {
    let n = cfg.natural();
    let l2 = n.ell * n.ell;
    let q = 1.0 + l2 + l2 * l2;
    n.ell * n.ell / (2.0 * ((1.0 + l2) * q).sqrt()) * (-l2 * n.k0 * n.k0 / q).exp()
}

/// The printed V₀,₀ closed form evaluated verbatim in units of L.
pub fn printed_overlap_00(cfg: &GrapheneConfig) -> f64 {
    let n = cfg.natural();
    let l2 = n.ell * n.ell;
    let q = 1.0 + l2 + l2 * l2;
    l2 / (2.0 * ((1.0 + l2) * q).sqrt()) * (l2 * n.k0 * n.k0 * (l2 - 1.0) * (1.0 + l2) / q).exp()
}

/// The printed ratio V₀,₁/V₀,₀ = √2 L³ℓ²k₀ₓ/(L⁴ + L²ℓ² + ℓ⁴).
pub fn printed_overlap_ratio_01(cfg: &GrapheneConfig) -> f64 {
    let n = cfg.natural();
    let l2 = n.ell * n.ell;
    2f64.sqrt() * l2 * n.k0 / (1.0 + l2 + l2 * l2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedAudit {
    pub v00_quadrature: f64,
    pub v00_printed: f64,
    pub v00_relative_discrepancy: f64,
    pub ratio01_quadrature: f64,
    pub ratio01_printed: f64,
    pub ratio01_relative_discrepancy: f64,
}

pub fn printed_formula_audit(cfg: &GrapheneConfig) -> Result<PrintedAudit> {
    let v00 = overlap(0, 0, cfg)?;
    let v01 = overlap(0, 1, cfg)?;
    let printed = printed_overlap_00(cfg);
    let ratio = v01 / v00;
    let ratio_printed = printed_overlap_ratio_01(cfg);
    let rel = |a: f64, b: f64| if b == 0.0 { (a - b).abs() } else { ((a - b) / b).abs() };
    Ok(PrintedAudit {
        v00_quadrature: v00,
        v00_printed: printed,
        v00_relative_discrepancy: rel(printed, v00),
        ratio01_quadrature: ratio,
        ratio01_printed: ratio_printed,
        ratio01_relative_discrepancy: rel(ratio_printed, ratio),
    })
}

/// Order-of-magnitude amplitudes (ℓ²√η/ħ)e^{−(ℓk₀)²η/ħ²} and (ℓ⁴k₀η/ħ²)e^{−(ℓk₀)²η/ħ²}, in units of L.
pub fn rough_amplitudes(cfg: &GrapheneConfig) -> (f64, f64) {
    let n = cfg.natural();
    let damp = (-(n.ell * n.k0).powi(2)).exp();
    (n.ell * n.ell * damp, n.ell.powi(4) * n.k0 * damp)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub m: usize,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub beta_plus: f64,
    pub beta_minus: f64,
    /// In units of Ω.
    pub omega_cyc: f64,
    pub omega_zbw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoefficients {
    pub terms: Vec<SeriesTerm>,
}

pub fn cyclotron_frequency(m: usize) -> f64 {
    let mf = m as f64;
    (mf + 1.0).sqrt() - mf.sqrt()
}

pub fn zbw_frequency(m: usize) -> f64 {
    let mf = m as f64;
    (mf + 1.0).sqrt() + mf.sqrt()
}

/// α and β families with both frequency ladders for m = 0..=m_max.
pub fn series_coefficients(cfg: &GrapheneConfig) -> Result<SeriesCoefficients> {
    let n = cfg.natural();
    let tol = Tolerance::new(OVERLAP_TOL);
    let v = |a: i64, b: i64| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        overlap_natural(a, b, &n, tol)
    };
    let mut terms = Vec::with_capacity(cfg.m_max + 1);
    for m in 0..=cfg.m_max {
        let mi = m as i64;
        let vmm = v(mi, mi)?;
        let v_lo_hi = v(mi - 1, mi + 1)?;
        let v_up = v(mi, mi + 1)?;
        let v_down = v(mi, mi - 1)?;
        terms.push(SeriesTerm {
            m,
            alpha_plus: 2.0 * (vmm + v_lo_hi),
            alpha_minus: 2.0 * (vmm - v_lo_hi),
            beta_plus: -2.0 * (v_up + v_down),
            beta_minus: -2.0 * (v_up - v_down),
            omega_cyc: cyclotron_frequency(m),
            omega_zbw: zbw_frequency(m),
        });
    }
    Ok(SeriesCoefficients { terms })
}

/// Value of a truncated two-component series plus an estimate of the
/// neglected tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSample {
    pub first: f64,
    pub second: f64,
    pub tail: f64,
}

/// Tail of a series whose term magnitudes are bounded by `bounds`: the
/// larger of the last two bounds and a geometric extrapolation from their
/// ratio (infinite when the bounds are not decreasing).
pub fn tail_estimate(bounds: &[f64]) -> f64 {
    match bounds {
        [] => 0.0,
        [only] => *only,
        [.., prev, last] => {
            let pair = prev + last;
            if *prev == 0.0 {
                return pair;
            }
            let rho = last / prev;
            if rho >= 1.0 {
                f64::INFINITY
            } else {
                pair.max(last * rho / (1.0 - rho))
            }
        }
    }
}

impl SeriesCoefficients {
    fn velocity_bounds(&self) -> Vec<f64> {
        self.terms
            .iter()
            .map(|c| V_F_NATURAL * (c.alpha_plus.abs() + c.alpha_minus.abs()).max(c.beta_plus.abs() + c.beta_minus.abs()))
            .collect()
    }

    fn position_bounds(&self) -> Vec<f64> {
        self.terms
            .iter()
            .map(|c| {
                let a = c.alpha_plus.abs() / c.omega_cyc + c.alpha_minus.abs() / c.omega_zbw;
                let b = c.beta_plus.abs() / c.omega_cyc + c.beta_minus.abs() / c.omega_zbw;
                V_F_NATURAL * a.max(b)
            })
            .collect()
    }

    /// ⟨ṙ₁⟩, ⟨ṙ₂⟩ at time t (units of LΩ).
    pub fn velocity(&self, t: f64) -> SeriesSample {
        let (mut v1, mut v2) = (0.0, 0.0);
        for c in &self.terms {
            let (wc, wz) = (c.omega_cyc * t, c.omega_zbw * t);
            v1 += c.alpha_plus * wc.cos() + c.alpha_minus * wz.cos();
            v2 += c.beta_plus * wc.sin() + c.beta_minus * wz.sin();
        }
        SeriesSample {
            first: V_F_NATURAL * v1,
            second: V_F_NATURAL * v2,
            tail: tail_estimate(&self.velocity_bounds()),
        }
    }

    fn position_terms(c: &SeriesTerm, t: f64, keep_zbw: bool) -> (f64, f64) {
        let (wc, wz) = (c.omega_cyc * t, c.omega_zbw * t);
        let z = if keep_zbw { 1.0 } else { 0.0 };
        let r1 = c.alpha_plus / c.omega_cyc * wc.sin() + z * c.alpha_minus / c.omega_zbw * wz.sin();
        let r2 = c.beta_plus / c.omega_cyc * wc.cos() + z * c.beta_minus / c.omega_zbw * wz.cos();
        (V_F_NATURAL * r1, -V_F_NATURAL * r2)
    }

    /// ⟨r₁⟩, ⟨r₂⟩ at time t (units of L).
    pub fn position(&self, t: f64) -> SeriesSample {
        let (mut r1, mut r2) = (0.0, 0.0);
        for c in &self.terms {
            let (a, b) = Self::position_terms(c, t, true);
            r1 += a;
            r2 += b;
        }
        SeriesSample {
            first: r1,
            second: r2,
            tail: tail_estimate(&self.position_bounds()),
        }
    }

    /// Position keeping only the m = m₀ terms.
    pub fn single_level_position(&self, m0: usize, t: f64) -> Result<(f64, f64)> {
        let c = self
            .terms
            .get(m0)
            .ok_or_else(|| invalid("m0", format!("level {m0} is beyond the truncation {}", self.terms.len() - 1)))?;
        Ok(Self::position_terms(c, t, true))
    }

    /// Single-level position with the ZBW-frequency terms removed.
    pub fn single_level_cyclotron_only(&self, m0: usize, t: f64) -> Result<(f64, f64)> {
        let c = self
            .terms
            .get(m0)
            .ok_or_else(|| invalid("m0", format!("level {m0} is beyond the truncation {}", self.terms.len() - 1)))?;
        Ok(Self::position_terms(c, t, false))
    }
}

pub fn velocity_series(coeffs: &SeriesCoefficients, t: f64) -> SeriesSample {
    coeffs.velocity(t)
}

pub fn position_series(coeffs: &SeriesCoefficients, t: f64) -> SeriesSample {
    coeffs.position(t)
}

pub fn single_level_position(coeffs: &SeriesCoefficients, m0: usize, t: f64) -> Result<(f64, f64)> {
    coeffs.single_level_position(m0, t)
}

/// Zero-level ellipse amplitudes (4v_F V₀,₀/Ω, 4v_F V₀,₁/Ω) in units of L.
pub fn zero_level_amplitudes(cfg: &GrapheneConfig) -> Result<(f64, f64)> {
    let w0 = zbw_frequency(0);
    Ok((
        4.0 * V_F_NATURAL * overlap(0, 0, cfg)? / w0,
        4.0 * V_F_NATURAL * overlap(0, 1, cfg)? / w0,
    ))
}

/// r₁ = (4v_F V₀,₀/Ω) sin Ωt, r₂ = (4v_F V₀,₁/Ω) cos Ωt.
pub fn zero_level_closed_form(cfg: &GrapheneConfig, t: f64) -> Result<(f64, f64)> {
    let (a1, a2) = zero_level_amplitudes(cfg)?;
    Ok((a1 * t.sin(), a2 * t.cos()))
}

/// Landau-gauge Hamiltonian −v_F√(2ħ|eB_η|)[[0, a], [a†, 0]] on `n_osc`
/// oscillator states per sublattice, in units of ħΩ.
pub fn landau_gauge_hamiltonian(n_osc: usize) -> DMatrix<f64> {
    let scale = V_F_NATURAL * 2f64.sqrt();
    let mut h = DMatrix::zeros(2 * n_osc, 2 * n_osc);
    for j in 1..n_osc {
        // ⟨j−1|a|j⟩ = √j
        let v = -scale * (j as f64).sqrt();
        h[(j - 1, n_osc + j)] = v;
        h[(n_osc + j, j - 1)] = v;
    }
    h
}

/// Sorted eigenvalues of the truncated Hamiltonian, in units of ħΩ.
pub fn truncated_hamiltonian_oracle(dim: usize) -> Result<Vec<f64>> {
    if dim < 2 || !dim.is_multiple_of(2) {
        return Err(invalid(
            "dim",
            format!("matrix dimension must be even and at least 2, got {dim}"),
        ));
    }
    let eig = landau_gauge_hamiltonian(dim / 2).symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Levels m with both branches ±√m resolved by a matrix of dimension `dim`.
pub fn converged_levels(dim: usize) -> usize {
    dim / 4
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> PhysicalConstants {
        PhysicalConstants::codata()
    }

    fn demo() -> GrapheneConfig {
        GrapheneConfig::demo(1e-8, &k()).unwrap()
    }

    fn with_ratio(ratio: f64, k0x_ell: f64) -> GrapheneConfig {
        let ell = 2e-8;
        GrapheneConfig::new(
            FieldSpec::LOverEll(ratio),
            ell,
            k0x_ell / ell,
            1e6,
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            8,
            &k(),
        )
        .unwrap()
    }

    #[test]
    fn omega_at_field_bound() {
        let cfg = GrapheneConfig::new(
            FieldSpec::BEta(8.6e-14),
            1e-3,
            0.0,
            1e6,
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            4,
            &k(),
        )
        .unwrap();
        let w = big_omega(&cfg).unwrap();
        assert!((w / 1.62e7 - 1.0).abs() < 0.02, "{w}");
        assert!((cfg.magnetic_radius() / 8.7e-2 - 1.0).abs() < 0.02);
    }

    #[test]
    fn omega_scales_with_root_eta() {
        let base = GrapheneConfig::new(FieldSpec::Eta3(1e-50), 1e-10, 0.0, 1e6, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 4, &k()).unwrap();
        let quad = GrapheneConfig::new(FieldSpec::Eta3(4e-50), 1e-10, 0.0, 1e6, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 4, &k()).unwrap();
        let r = big_omega(&quad).unwrap() / big_omega(&base).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn config_validation() {
        let kk = k();
        let s = FRAC_1_SQRT_2;
        assert!(GrapheneConfig::new(FieldSpec::LOverEll(4.0), 0.0, 0.0, 1e6, s, s, 4, &kk).is_err());
        assert!(GrapheneConfig::new(FieldSpec::LOverEll(0.5), 1e-8, 0.0, 1e6, s, s, 4, &kk).is_err());
        assert!(GrapheneConfig::new(FieldSpec::LOverEll(4.0), 1e-8, 0.0, 1e6, 0.6, 0.6, 4, &kk).is_err());
        assert!(GrapheneConfig::new(FieldSpec::LOverEll(4.0), 1e-8, 0.0, 1e6, s, s, 0, &kk).is_err());
        assert!(GrapheneConfig::new(
            FieldSpec::LOverEll(4.0),
            1e-8,
            0.0,
            1e6,
            0.7071067811865476,
            0.7071067811865476,
            4,
            &kk
        )
        .is_ok());
        let eta = 1e-50;
        let b = eta / (kk.charge_magnitude() * kk.hbar);
        assert!(GrapheneConfig::new(FieldSpec::Both { eta3: eta, b_eta: b }, 1e-9, 0.0, 1e6, s, s, 4, &kk).is_ok());
        assert!(matches!(
            GrapheneConfig::new(
                FieldSpec::Both {
                    eta3: eta,
                    b_eta: 2.0 * b
                },
                1e-9,
                0.0,
                1e6,
                s,
                s,
                4,
                &kk
            ),
            Err(Error::InconsistentField { .. })
        ));
    }

    #[test]
    fn energies() {
        assert_eq!(graphene_energy(1, 0), 0.0);
        assert_eq!(graphene_energy(-1, 0), 0.0);
        assert_eq!(graphene_energy(1, 4), 2.0);
        assert_eq!(graphene_energy(-1, 9), -3.0);
    }

    #[test]
    fn f0_is_product_of_gaussians() {
        let cfg = demo();
        let n = cfg.natural();
        let kx = 0.37;
        let l2 = n.ell * n.ell;
        let pref = n.ell / (2.0 * (1.0 + l2) * PI.sqrt()).sqrt();
        let want = pref * (-0.5 * l2 * (kx - n.k0).powi(2)).exp() * (-kx * kx / (2.0 * (1.0 + l2))).exp();
        assert!((f_m(kx, 0, &cfg) - want).abs() < 1e-14 * want);
        assert_eq!(f_m(kx, -1, &cfg), 0.0);
    }

    #[test]
    fn f_m_matches_raw_hermite() {
        let cfg = with_ratio(3.0, 0.8);
        let n = cfg.natural();
        for m in [1usize, 4, 9] {
            for kx in [-1.3, 0.2, 2.1] {
                let l2 = n.ell * n.ell;
                let mf = m as f64;
                let pref = n.ell * (1.0 - l2).powf(mf / 2.0)
                    / (2f64.powf(mf + 1.0) * (1.0 + l2).powf(mf + 1.0) * crate::hermite::ln_factorial(m).exp() * PI.sqrt())
                        .sqrt();
                let want = pref
                    * (-0.5 * l2 * (kx - n.k0).powi(2)).exp()
                    * (-kx * kx / (2.0 * (1.0 + l2))).exp()
                    * crate::hermite::hermite(m, kx * n.g);
                let got = f_m(kx, m as i64, &cfg);
                assert!((got - want).abs() < 1e-12 * want.abs().max(1e-12), "m={m} kx={kx}");
            }
        }
    }

    #[test]
    fn f_m_parity() {
        let cfg = with_ratio(3.0, 0.0);
        for m in 0..8i64 {
            for kx in [0.3, 1.1, 2.7] {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let (a, b) = (f_m(-kx, m, &cfg), sign * f_m(kx, m, &cfg));
                assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn f_m_high_order_is_finite() {
        let cfg = demo();
        for kx in [-5.0, 0.0, 0.5, 7.0] {
            assert!(f_m(kx, 50, &cfg).is_finite());
            assert!(f_m(kx, 300, &cfg).is_finite());
        }
    }

    #[test]
    fn v00_matches_completed_square() {
        for cfg in [demo(), with_ratio(4.0, 1.0), with_ratio(1.3, 2.0)] {
            let q = overlap(0, 0, &cfg).unwrap();
            let a = overlap_00_analytic(&cfg);
            assert!(((q - a) / a).abs() < 1e-10, "{q} vs {a}");
        }
    }

    #[test]
    fn printed_ratio_matches_quadrature() {
        for cfg in [demo(), with_ratio(4.0, 1.0), with_ratio(1.5, 0.6)] {
            let audit = printed_formula_audit(&cfg).unwrap();
            assert!(audit.ratio01_relative_discrepancy < 1e-10);
        }
    }

    #[test]
    fn overlap_minus_one_and_symmetry() {
        let cfg = demo();
        assert_eq!(overlap(-1, 5, &cfg).unwrap(), 0.0);
        assert_eq!(overlap(3, -1, &cfg).unwrap(), 0.0);
        assert!(overlap(-2, 0, &cfg).is_err());
        for m in 0..=8 {
            for mp in 0..=8 {
                let a = overlap(m, mp, &cfg).unwrap();
                let b = overlap(mp, m, &cfg).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn adaptive_agrees_with_gauss_hermite() {
        for cfg in [demo(), with_ratio(4.0, 1.0)] {
            for (m, mp) in [(0, 0), (0, 1), (2, 3), (5, 5), (7, 9), (12, 13), (20, 22)] {
                let a = overlap(m, mp, &cfg).unwrap();
                let g = overlap_gauss_hermite(m, mp, &cfg).unwrap();
                let scale = overlap(m, m, &cfg).unwrap().abs().max(overlap(0, 0, &cfg).unwrap() * 1e-12);
                assert!((a - g).abs() <= 1e-10 * scale, "({m},{mp}): {a} vs {g}");
            }
        }
    }

    #[test]
    fn zero_level_coefficients() {
        let c = series_coefficients(&demo()).unwrap();
        let t0 = c.terms[0];
        assert_eq!(t0.alpha_plus, t0.alpha_minus);
        assert_eq!(t0.omega_cyc, 1.0);
        assert_eq!(t0.omega_zbw, 1.0);
        let t1 = c.terms[1];
        assert!((t1.omega_cyc - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((t1.omega_zbw - (2f64.sqrt() + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn frequency_product() {
        for m in 0..=64 {
            assert!((cyclotron_frequency(m) * zbw_frequency(m) - 1.0).abs() < 1e-12);
            assert!(zbw_frequency(m) >= cyclotron_frequency(m) && cyclotron_frequency(m) > 0.0);
        }
    }

    #[test]
    fn series_at_start() {
        let c = series_coefficients(&demo()).unwrap();
        let v = c.velocity(0.0);
        let sum: f64 = c.terms.iter().map(|t| t.alpha_plus + t.alpha_minus).sum();
        assert!((v.first - V_F_NATURAL * sum).abs() < 1e-15);
        assert_eq!(v.second, 0.0);
        assert_eq!(c.position(0.0).first, 0.0);
    }

    #[test]
    fn velocity_is_derivative_of_position() {
        let c = series_coefficients(&demo()).unwrap();
        let h = 1e-3;
        let amp = c
            .terms
            .iter()
            .map(|t| V_F_NATURAL * (t.alpha_plus.abs() + t.alpha_minus.abs()))
            .sum::<f64>();
        for i in 0..20 {
            let t = 0.731 * i as f64;
            let p = |s: f64| c.position(s);
            let d1 = (p(t - 2.0 * h).first - 8.0 * p(t - h).first + 8.0 * p(t + h).first - p(t + 2.0 * h).first) / (12.0 * h);
            let d2 = (p(t - 2.0 * h).second - 8.0 * p(t - h).second + 8.0 * p(t + h).second - p(t + 2.0 * h).second) / (12.0 * h);
            let v = c.velocity(t);
            assert!((d1 - v.first).abs() < 1e-6 * amp.max(v.first.abs()), "t={t}");
            assert!((d2 - v.second).abs() < 1e-6 * amp.max(v.second.abs()), "t={t}");
        }
    }

    #[test]
    fn doubling_truncation_stays_within_tail() {
        let cfg = demo();
        let short = series_coefficients(&cfg).unwrap();
        let long = series_coefficients(&cfg.with_m_max(2 * cfg.m_max).unwrap()).unwrap();
        for t in [0.0, 0.9, 3.3, 10.0] {
            let (a, b) = (short.velocity(t), long.velocity(t));
            assert!((a.first - b.first).abs() < a.tail && (a.second - b.second).abs() < a.tail);
            let (a, b) = (short.position(t), long.position(t));
            assert!((a.first - b.first).abs() < a.tail && (a.second - b.second).abs() < a.tail);
        }
    }

    #[test]
    fn tail_decreases_with_truncation() {
        let cfg = demo();
        let mut last = f64::INFINITY;
        for m_max in [8, 16, 24, 32] {
            let c = series_coefficients(&cfg.with_m_max(m_max).unwrap()).unwrap();
            let tail = c.velocity(0.0).tail;
            assert!(tail < last, "m_max={m_max}: {tail} ≥ {last}");
            last = tail;
        }
    }

    #[test]
    fn single_levels_sum_to_series() {
        let c = series_coefficients(&demo()).unwrap();
        let t = 2.2;
        let full = c.position(t);
        let (mut r1, mut r2) = (0.0, 0.0);
        for m in 0..c.terms.len() {
            let (a, b) = c.single_level_position(m, t).unwrap();
            r1 += a;
            r2 += b;
        }
        assert_eq!((r1, r2), (full.first, full.second));
        assert!(c.single_level_position(c.terms.len(), t).is_err());
    }

    #[test]
    fn zero_level_from_series() {
        let cfg = demo();
        let c = series_coefficients(&cfg).unwrap();
        for t in [0.0, 0.4, 1.9, 5.0] {
            let (a, b) = c.single_level_position(0, t).unwrap();
            let (x, y) = zero_level_closed_form(&cfg, t).unwrap();
            assert!((a - x).abs() < 1e-14 && (b - y).abs() < 1e-14);
            let (h, _) = c.single_level_cyclotron_only(0, t).unwrap();
            assert_eq!(2.0 * h, a);
        }
    }

    #[test]
    fn zero_level_ellipse() {
        let cfg = demo();
        let (a1, a2) = zero_level_amplitudes(&cfg).unwrap();
        for i in 0..50 {
            let (x, y) = zero_level_closed_form(&cfg, 0.13 * i as f64).unwrap();
            assert!(((x / a1).powi(2) + (y / a2).powi(2) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn hamiltonian_spectrum() {
        let vals = truncated_hamiltonian_oracle(64).unwrap();
        let zero = vals.iter().copied().filter(|v| *v >= -1e-12).fold(f64::INFINITY, f64::min);
        assert!(zero.abs() < 1e-8);
        for m in 1..=converged_levels(64) {
            for s in [1i8, -1] {
                let e = graphene_energy(s, m);
                let best = vals.iter().map(|v| (v - e).abs()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-6, "s={s} m={m}");
            }
        }
        let wider = truncated_hamiltonian_oracle(128).unwrap();
        for m in 1..=converged_levels(64) {
            let e = graphene_energy(1, m);
            let a = vals.iter().map(|v| (v - e).abs()).fold(f64::INFINITY, f64::min);
            let b = wider.iter().map(|v| (v - e).abs()).fold(f64::INFINITY, f64::min);
            assert!((a - b).abs() < 1e-10);
        }
        assert!(truncated_hamiltonian_oracle(1).is_err());
        assert!(truncated_hamiltonian_oracle(7).is_err());
    }

    #[test]
    fn hamiltonian_eigenvectors() {
        // (−s|m−1⟩, |m⟩)/√2 has energy s√m
        let n = 10;
        let h = landau_gauge_hamiltonian(n);
        for m in 1..n {
            for s in [1.0, -1.0] {
                let mut v = nalgebra::DVector::zeros(2 * n);
                v[m - 1] = -s;
                v[n + m] = 1.0;
                let r = &h * &v - &v * (s * (m as f64).sqrt());
                assert!(r.amax() < 1e-14);
            }
        }
    }
}
