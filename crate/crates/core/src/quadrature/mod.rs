//! Numerical-integration oracles.
//!
//! Two algorithmically independent 1D engines: adaptive Gauss–Kronrod on a
//! mapped domain, and fixed-node Gauss–Hermite. Multi-dimensional integrals
//! are nested 1D adaptive integrals; Monte Carlo is available for
//! spot checks.

mod gauss_hermite;
mod kronrod;
mod monte_carlo;

use std::cell::Cell;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

pub use gauss_hermite::GaussHermite;
pub use monte_carlo::{monte_carlo_gaussian, MC_ALGORITHM};

/// Default quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default Monte Carlo sample count.
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Accept when error ≤ max(abs, rel·|value|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(tol: f64) -> Self {
        Self { abs: tol, rel: tol }
    }

    pub fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }

    fn split(&self, parts: f64) -> Self {
        Self {
            abs: self.abs / parts,
            rel: self.rel / parts,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(DEFAULT_TOL)
    }
}

/// Adaptive integration over a finite interval.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadratureResult> {
    kronrod::integrate(f, a, b, tol)
}

/// ∫_{−∞}^{∞} f(x) dx via x = center + scale·ln(u/(1−u)), u ∈ (0, 1).
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, center: f64, scale: f64, tol: Tolerance) -> Result<QuadratureResult> {
    let mapped = |u: f64| {
        let x = center + scale * (u / (1.0 - u)).ln();
        let jac = scale / (u * (1.0 - u));
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v * jac
        }
    };
    kronrod::integrate(mapped, 0.0, 1.0, tol)
}

/// ∫_0^∞ f(x) dx via x = scale·u/(1−u).
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, scale: f64, tol: Tolerance) -> Result<QuadratureResult> {
    let mapped = |u: f64| {
        let om = 1.0 - u;
        let v = f(scale * u / om);
        if v == 0.0 {
            0.0
        } else {
            v * scale / (om * om)
        }
    };
    kronrod::integrate(mapped, 0.0, 1.0, tol)
}

/// ∫ f(x) dx over the real line for integrands with Gaussian decay.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadratureResult> {
    integrate_real_line(f, 0.0, 1.0, Tolerance::new(tol))
}

/// Bookkeeping for nested 1D integrations.
#[derive(Default)]
struct Nest {
    evaluations: Cell<usize>,
    inner_error: Cell<f64>,
    failure: Cell<Option<Error>>,
}

impl Nest {
    fn record(&self, r: Result<QuadratureResult>, weight: f64) -> f64 {
        match r {
            Ok(q) => {
                self.evaluations.set(self.evaluations.get() + q.evaluations);
                self.inner_error.set(self.inner_error.get().max(q.error_estimate * weight));
                q.value
            }
            Err(e) => {
                let best = match &e {
                    Error::NonConvergence { value, .. } => *value,
                    _ => f64::NAN,
                };
                let prior = self.failure.take();
                self.failure.set(prior.or(Some(e)));
                best
            }
        }
    }

    fn finish(self, outer: Result<QuadratureResult>) -> Result<QuadratureResult> {
        let outer = outer?;
        let evaluations = self.evaluations.get() + outer.evaluations;
        let error_estimate = outer.error_estimate + self.inner_error.get();
        if let Some(Error::NonConvergence { .. }) = self.failure.take() {
            return Err(Error::NonConvergence {
                value: outer.value,
                error_estimate,
                evaluations,
            });
        }
        Ok(QuadratureResult {
            value: outer.value,
            error_estimate,
            evaluations,
        })
    }
}

/// ∫_a^b ∫_c^d f(x, y) dy dx by nested adaptive quadrature.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (a, b): (f64, f64),
    (c, d): (f64, f64),
    tol: Tolerance,
) -> Result<QuadratureResult> {
    let per_axis = tol.split(2.0);
    let nest = Nest::default();
    let outer = integrate_interval(
        |x| nest.record(integrate_interval(|y| f(x, y), c, d, per_axis), (b - a).abs()),
        a,
        b,
        per_axis,
    );
    nest.finish(outer)
}

/// f²(p/p_o) for the normalized Gaussian packet profile
/// f(p/p_o) = (2/(π p_o²))^{3/4} exp(−(p/p_o)²).
pub fn packet_profile_sq(p: f64, p_o: f64) -> f64 {
    (2.0 / (PI * p_o * p_o)).powf(1.5) * (-2.0 * (p / p_o).powi(2)).exp()
}

/// Whether to multiply the integrand by f²(p/p_o).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Bare,
    PacketProfile,
}

/// ∫ g(p, θ, φ) p² sinθ dp dθ dφ over all of momentum space.
///
/// `g` must decay at least like polynomial × exp(−2p²/p_o²). Each axis gets
/// a third of the tolerance.
pub fn integrate_momentum_3d<G: Fn(f64, f64, f64) -> f64>(
    g: G,
    p_o: f64,
    weight: Weight,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    let per_axis = tol.split(3.0);
    let nest = Nest::default();
    let radial = |p: f64| {
        let w = match weight {
            Weight::Bare => 1.0,
            Weight::PacketProfile => packet_profile_sq(p, p_o),
        };
        if w == 0.0 {
            return 0.0;
        }
        let polar = |theta: f64| {
            let st = theta.sin();
            let az = integrate_interval(|phi| g(p, theta, phi), 0.0, 2.0 * PI, per_axis);
            nest.record(az, 2.0 * PI) * st
        };
        let th = integrate_interval(polar, 0.0, PI, per_axis);
        nest.record(th, PI) * w * p * p
    };
    let outer = integrate_half_line(radial, p_o, per_axis);
    nest.finish(outer)
}

/// Separable variant: ∫ R(p) p² dp · ∫ Θ(θ) sinθ dθ · ∫ Φ(φ) dφ.
pub fn integrate_separable<R, T, P>(
    radial: R,
    polar: T,
    azimuthal: P,
    p_o: f64,
    weight: Weight,
    tol: Tolerance,
) -> Result<QuadratureResult>
where
    R: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    let per_axis = tol.split(3.0);
    let r = integrate_half_line(
        |p| {
            let w = match weight {
                Weight::Bare => 1.0,
                Weight::PacketProfile => packet_profile_sq(p, p_o),
            };
            if w == 0.0 {
                0.0
            } else {
                radial(p) * w * p * p
            }
        },
        p_o,
        per_axis,
    )?;
    let t = integrate_interval(|th| polar(th) * th.sin(), 0.0, PI, per_axis)?;
    let a = integrate_interval(azimuthal, 0.0, 2.0 * PI, per_axis)?;
    let value = r.value * t.value * a.value;
    let error_estimate = r.error_estimate * (t.value * a.value).abs()
        + t.error_estimate * (r.value * a.value).abs()
        + a.error_estimate * (r.value * t.value).abs();
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations: r.evaluations + t.evaluations + a.evaluations,
    })
}
