//! Closed-form commutative zitterbewegung observables.
//!
//! Lengths are in λ_c, times in ħ/(mₑc²) and moments in |e|λ_c with the
//! electron charge e = −1, except where a function takes explicit constants.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{invalid, Result};
use crate::quadrature::{integrate_2d, integrate_interval, packet_profile_sq, Tolerance};
use crate::{Spin, Vector3};

/// ω_zbw in Dirac natural time units.
pub const ZBW_FREQUENCY_NATURAL: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZbwTrajectoryPoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// 2mₑc²/ħ in whatever unit system the constants are expressed in.
pub fn zbw_frequency(k: &PhysicalConstants) -> f64 {
    2.0 * k.m_e * k.c * k.c / k.hbar
}

fn check_width(r_o: f64) -> Result<()> {
    if r_o.is_finite() && r_o > 0.0 || r_o == f64::INFINITY {
        Ok(())
    } else {
        Err(invalid("r_o", format!("packet width must be positive, got {r_o}")))
    }
}

/// I = −(8π)^{−1/2} λ_c/r_o, with r_o in λ_c.
pub fn amplitude_i(r_o: f64) -> Result<f64> {
    check_width(r_o)?;
    Ok(-(8.0 * PI).powf(-0.5) / r_o)
}

/// J vanishes identically because sin 2θ integrates to zero on [0, π].
pub fn amplitude_j() -> f64 {
    0.0
}

/// I from its defining (p, θ) double integral −2∫∫ f²/(2mₑc) p³ sin²θ.
pub fn amplitude_i_oracle(r_o: f64, tol: Tolerance) -> Result<f64> {
    radial_polar_integral(r_o, |th| th.sin().powi(2), tol).map(|v| -2.0 * v)
}

/// J from its defining double integral −π∫∫ f²/(2mₑc) p³ sin 2θ.
pub fn amplitude_j_oracle(r_o: f64, tol: Tolerance) -> Result<f64> {
    radial_polar_integral(r_o, |th| (2.0 * th).sin(), tol).map(|v| -PI * v)
}

// The Gaussian weight is below 1e-80 past 10 p_o, so the radial axis is cut there.
fn radial_polar_integral<A: Fn(f64) -> f64>(r_o: f64, angular: A, tol: Tolerance) -> Result<f64> {
    check_width(r_o)?;
    let p_o = 2.0 / r_o;
    let r = integrate_2d(
        |p, th| packet_profile_sq(p, p_o) * 0.5 * p.powi(3) * angular(th),
        (0.0, 10.0 * p_o),
        (0.0, PI),
        tol,
    )?;
    Ok(r.value)
}

/// Single Fourier component at fixed azimuth φ₀: a circle of radius λ_c/2.
pub fn trajectory_fixed_phi(phi0: f64, t: f64) -> ZbwTrajectoryPoint {
    let arg = ZBW_FREQUENCY_NATURAL * t + phi0;
    ZbwTrajectoryPoint {
        t,
        x: 0.5 * arg.sin(),
        y: 0.5 * arg.cos(),
        z: 0.0,
    }
}

/// The I-weighted integrand of the decomposed position expectation at azimuth φ.
pub fn weighted_component(r_o: f64, phi: f64, t: f64) -> Result<ZbwTrajectoryPoint> {
    let w = amplitude_i(r_o)?;
    let c = trajectory_fixed_phi(phi, t);
    Ok(ZbwTrajectoryPoint {
        t,
        x: w * c.x,
        y: w * c.y,
        z: amplitude_j() * (ZBW_FREQUENCY_NATURAL * t).sin(),
    })
}

/// Weighted components integrated over the full azimuth; the packet centre stays at rest.
pub fn decomposed_expectation(r_o: f64, t: f64, tol: Tolerance) -> Result<ZbwTrajectoryPoint> {
    let x = integrate_interval(|phi| weighted_component(r_o, phi, t).map_or(f64::NAN, |c| c.x), 0.0, TAU, tol)?;
    let y = integrate_interval(|phi| weighted_component(r_o, phi, t).map_or(f64::NAN, |c| c.y), 0.0, TAU, tol)?;
    Ok(ZbwTrajectoryPoint {
        t,
        x: x.value,
        y: y.value,
        z: amplitude_j() * (ZBW_FREQUENCY_NATURAL * t).sin(),
    })
}

/// (0, 0, ±(e/2)(1 − cos ω_zbw t)) in units of |e|λ_c; + for spin up.
pub fn magnetic_moment(spin: Spin, t: f64) -> Vector3 {
    let e = -1.0;
    let z = spin.sign() * 0.5 * e * (1.0 - (ZBW_FREQUENCY_NATURAL * t).cos());
    Vector3::new(0.0, 0.0, z)
}

/// Mean of the moment over one ZBW period, ±e/2.
pub fn magnetic_moment_time_average(spin: Spin, tol: Tolerance) -> Result<Vector3> {
    let period = TAU / ZBW_FREQUENCY_NATURAL;
    let z = integrate_interval(|t| magnetic_moment(spin, t).z, 0.0, period, tol)?;
    Ok(Vector3::new(0.0, 0.0, z.value / period))
}
