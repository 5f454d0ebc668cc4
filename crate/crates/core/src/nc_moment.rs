//! Leading-order space-noncommutative corrections to the ZBW magnetic
//! moment, the one-loop reference value and the Zeeman-shift evaluator.
//!
//! Dirac natural units throughout: θ in λ_c², moments in |e|λ_c, e = −1.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::dirac_packet::{build_packet, cartesian, PacketSpec};
use crate::error::{invalid, Result};
use crate::nc_phase_space::{bopp_shift, NCParams, PhasePoint};
use crate::quadrature::{integrate_interval, integrate_momentum_3d, Tolerance, Weight};
use crate::zbw::{self, ZbwTrajectoryPoint, ZBW_FREQUENCY_NATURAL};
use crate::{Spin, Vector3};

const CHARGE: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentResult {
    pub commutative: Vector3,
    pub nc_correction: Vector3,
    pub total: Vector3,
}

fn check_width(r_o: f64) -> Result<()> {
    if r_o.is_finite() && r_o > 0.0 {
        Ok(())
    } else {
        Err(invalid("r_o", format!("packet width must be positive, got {r_o}")))
    }
}

/// e/(2λ_c)·(λ_c/r_o)², which is eα²/(2λ_c) at the Bohr radius.
pub fn nc_coefficient(r_o: f64) -> f64 {
    0.5 * CHARGE / (r_o * r_o)
}

/// Closed-form θ correction. The half-sine term enters x with +θ₂ and y
/// with −θ₁ for spin up; spin down flips both.
pub fn nc_moment(spin: Spin, theta: Vector3, t: f64, r_o: f64) -> Result<Vector3> {
    check_width(r_o)?;
    let coef = nc_coefficient(r_o);
    let w = ZBW_FREQUENCY_NATURAL * t;
    let (c, s) = (1.0 - w.cos(), w.sin());
    let sg = spin.sign();
    Ok(Vector3::new(
        -coef * (theta.x * c + sg * 0.5 * theta.y * s),
        -coef * (theta.y * c - sg * 0.5 * theta.x * s),
        -coef * theta.z * c,
    ))
}

/// Commutative part, θ correction and their sum.
pub fn moment_result(spin: Spin, theta: Vector3, t: f64, r_o: f64) -> Result<MomentResult> {
    let commutative = zbw::magnetic_moment(spin, t);
    let nc_correction = nc_moment(spin, theta, t, r_o)?;
    Ok(MomentResult {
        commutative,
        nc_correction,
        total: commutative + nc_correction,
    })
}

/// (e/2)⟨Δr × α⟩ with Δr the Bopp displacement −(p × θ)/(2ħ), integrated by
/// 3D quadrature over the truncated packet.
pub fn oracle_nc_moment(spin: Spin, theta: Vector3, t: f64, r_o: f64, tol: Tolerance) -> Result<Vector3> {
    check_width(r_o)?;
    let packet = build_packet(PacketSpec::new(r_o, spin)?);
    let nc = NCParams::space(theta);
    let integrand = |p: [f64; 3], i: usize| {
        let shift = bopp_shift(&PhasePoint::new(Vector3::zeros(), Vector3::from(p)), &nc, 1.0).x;
        let a = Vector3::from(packet.alpha_densities(p, t));
        0.5 * CHARGE * shift.cross(&a)[i]
    };
    let mut out = Vector3::zeros();
    for i in 0..3 {
        out[i] = integrate_momentum_3d(
            |p, th, ph| integrand(cartesian(p, th, ph), i),
            packet.p_o(),
            Weight::Bare,
            tol,
        )?
        .value;
    }
    Ok(out)
}

/// ⟨αₖ pⱼ⟩ over the packet at time t, the building block of the oracle.
pub fn alpha_momentum_moment(spin: Spin, k: usize, j: usize, t: f64, r_o: f64, tol: Tolerance) -> Result<f64> {
    check_width(r_o)?;
    if k > 2 || j > 2 {
        return Err(crate::Error::IndexOutOfRange(k.max(j) + 1));
    }
    let packet = build_packet(PacketSpec::new(r_o, spin)?);
    integrate_momentum_3d(
        |p, th, ph| {
            let q = cartesian(p, th, ph);
            packet.alpha_densities(q, t)[k] * q[j]
        },
        packet.p_o(),
        Weight::Bare,
        tol,
    )
    .map(|r| r.value)
}

/// Mean of the θ correction over one ZBW period.
pub fn nc_moment_time_average(spin: Spin, theta: Vector3, r_o: f64, tol: Tolerance) -> Result<Vector3> {
    check_width(r_o)?;
    let period = TAU / ZBW_FREQUENCY_NATURAL;
    let mut out = Vector3::zeros();
    for i in 0..3 {
        let r = integrate_interval(
            |t| nc_moment(spin, theta, t, r_o).map_or(f64::NAN, |m| m[i]),
            0.0,
            period,
            tol,
        )?;
        out[i] = r.value / period;
    }
    Ok(out)
}

/// Position trajectory at fixed azimuth with space noncommutativity. The
/// θ-only Dirac equation is the commutative one, so the result is unchanged.
pub fn nc_trajectory_fixed_phi(phi0: f64, t: f64, _theta: Vector3) -> ZbwTrajectoryPoint {
    zbw::trajectory_fixed_phi(phi0, t)
}

/// The θ-dependent part of the one-loop reference, (e/2)(mₑcαγ_E/(3πλ_c²))θ.
pub fn oneloop_theta_term(theta: Vector3, k: &PhysicalConstants) -> Vector3 {
    theta * (0.5 * CHARGE * k.alpha_fsc * k.gamma_euler / (3.0 * PI))
}

/// (eλ_c/2)[(1 + α/2π)σ ẑ + (mₑcαγ_E/(3πλ_c²))θ], evaluated as printed.
pub fn oneloop_reference(theta: Vector3, spin: Spin, k: &PhysicalConstants) -> Vector3 {
    let spin_part = Vector3::new(0.0, 0.0, 0.5 * CHARGE * (1.0 + k.alpha_fsc / TAU) * spin.sign());
    spin_part + oneloop_theta_term(theta, k)
}

/// Ratio of the time-averaged leading θ₃ coefficient at r_o to the one-loop
/// θ₃ coefficient. At the Bohr radius this is −3πα/γ_E.
pub fn oneloop_ratio(r_o: f64, k: &PhysicalConstants) -> Result<f64> {
    check_width(r_o)?;
    let leading = -nc_coefficient(r_o);
    let oneloop = oneloop_theta_term(Vector3::new(0.0, 0.0, 1.0), k).z;
    Ok(leading / oneloop)
}

/// ΔE = (eαγ_E/(6πλ_c))(1 − f·m_p/mₑ)(θ·B) in the unit system of `k`.
pub fn zeeman_shift(theta: Vector3, b: Vector3, form_factor: f64, k: &PhysicalConstants) -> f64 {
    let pre = k.e * k.alpha_fsc * k.gamma_euler / (6.0 * PI * k.lambda_c);
    pre * (1.0 - form_factor * k.proton_electron_mass_ratio()) * theta.dot(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bohr() -> f64 {
        1.0 / PhysicalConstants::codata().alpha_fsc
    }

    #[test]
    fn vanishes_at_start() {
        let m = nc_moment(Spin::Up, Vector3::new(0.3, -0.2, 0.5), 0.0, bohr()).unwrap();
        assert_eq!(m, Vector3::zeros());
        assert!(nc_moment(Spin::Up, Vector3::zeros(), 0.0, 0.0).is_err());
    }

    #[test]
    fn z_component_at_half_period() {
        let a = PhysicalConstants::codata().alpha_fsc;
        let th3 = 0.4;
        let m = nc_moment(Spin::Up, Vector3::new(0.0, 0.0, th3), PI / 2.0, bohr()).unwrap();
        // −eα²θ₃/λ_c with e = −1
        assert!((m.z - a * a * th3).abs() < 1e-15 * a * a);
    }

    #[test]
    fn quarter_period_x_and_y() {
        let a2 = PhysicalConstants::codata().alpha_fsc.powi(2);
        let th1 = 0.6;
        let up = nc_moment(Spin::Up, Vector3::new(th1, 0.0, 0.0), PI / 4.0, bohr()).unwrap();
        assert!((up.x - 0.5 * a2 * th1).abs() < 1e-15);
        assert!((up.y + 0.25 * a2 * th1).abs() < 1e-15);
        let down = nc_moment(Spin::Down, Vector3::new(th1, 0.0, 0.0), PI / 4.0, bohr()).unwrap();
        assert!((down.x - up.x).abs() < 1e-18 && (down.y + up.y).abs() < 1e-18);
    }

    #[test]
    fn result_total_is_sum() {
        let r = moment_result(Spin::Down, Vector3::new(0.1, 0.2, 0.3), 1.3, 4.0).unwrap();
        assert_eq!(r.total, r.commutative + r.nc_correction);
    }

    #[test]
    fn oracle_agrees_with_closed_form() {
        let theta = Vector3::new(0.3, -0.7, 0.5);
        for (spin, t) in [(Spin::Up, 0.4), (Spin::Down, 1.1)] {
            let closed = nc_moment(spin, theta, t, 20.0).unwrap();
            let scale = nc_coefficient(20.0).abs() * theta.norm();
            let tol = Tolerance {
                abs: 1e-9 * scale,
                rel: 1e-9,
            };
            let oracle = oracle_nc_moment(spin, theta, t, 20.0, tol).unwrap();
            assert!((oracle - closed).norm() < 1e-6 * scale, "{spin:?}: {oracle} vs {closed}");
        }
    }

    #[test]
    fn printed_building_blocks() {
        let r_o = 10.0;
        let p_o = 2.0 / r_o;
        let tol = Tolerance { abs: 1e-13, rel: 1e-10 };
        // ⟨α₁p₃⟩ vanishes by odd symmetry.
        assert!(alpha_momentum_moment(Spin::Up, 0, 2, 0.7, r_o, tol).unwrap().abs() < 1e-12);
        // ⟨α₃p₃⟩ = 2K(1−cos2t)·p_o²/4
        let t = 0.7;
        let got = alpha_momentum_moment(Spin::Up, 2, 2, t, r_o, tol).unwrap();
        let want = (1.0 - (2.0 * t).cos()) * p_o * p_o / 4.0;
        assert!((got - want).abs() < 1e-9 * want);
    }

    #[test]
    fn sign_opposes_oneloop() {
        let k = PhysicalConstants::codata();
        let theta = Vector3::new(0.0, 0.0, 1.0);
        let avg = nc_moment_time_average(Spin::Up, theta, bohr(), Tolerance::new(1e-12)).unwrap();
        let loop_term = oneloop_theta_term(theta, &k);
        assert!(avg.z * loop_term.z < 0.0);
        let ratio = oneloop_ratio(bohr(), &k).unwrap();
        assert!((ratio + 3.0 * PI * k.alpha_fsc / k.gamma_euler).abs() < 1e-12);
    }

    #[test]
    fn oneloop_values() {
        let k = PhysicalConstants::codata();
        let up = oneloop_reference(Vector3::zeros(), Spin::Up, &k);
        assert!((up.z + 0.5 * (1.0 + k.alpha_fsc / TAU)).abs() < 1e-15);
        let th = Vector3::new(0.2, -0.1, 0.4);
        let d = oneloop_reference(th, Spin::Up, &k) - oneloop_reference(th, Spin::Down, &k);
        assert_eq!(d.x, 0.0);
        assert_eq!(d.y, 0.0);
    }

    #[test]
    fn zeeman_examples() {
        let k = PhysicalConstants::dirac_natural();
        assert_eq!(
            zeeman_shift(Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.0, 2.0, 0.0), 1.0, &k),
            0.0
        );
        let f = 1.0 / k.proton_electron_mass_ratio();
        let z = Vector3::new(0.0, 0.0, 1.0);
        assert!(zeeman_shift(z, z, f, &k).abs() < 1e-18);
        let want = -(k.e * k.alpha_fsc * k.gamma_euler / (6.0 * PI)) * (k.proton_electron_mass_ratio() - 1.0);
        assert!((zeeman_shift(z, z, 1.0, &k) - want).abs() < 1e-15);
        assert!((k.proton_electron_mass_ratio() - 1836.15).abs() < 0.01);
    }

    #[test]
    fn linear_in_theta() {
        let theta = Vector3::new(0.2, 0.5, -0.3);
        let base = nc_moment(Spin::Up, theta, 0.9, bohr()).unwrap();
        for kappa in [0.5, 0.25] {
            let m = nc_moment(Spin::Up, theta * kappa, 0.9, bohr()).unwrap() / kappa;
            assert!((m - base).amax() < 1e-10 * base.amax());
        }
    }

    #[test]
    fn trajectory_ignores_theta() {
        let a = nc_trajectory_fixed_phi(0.3, 2.7, Vector3::new(0.5, 0.1, -0.2));
        let b = zbw::trajectory_fixed_phi(0.3, 2.7);
        assert_eq!(a, b);
    }
}
