//! Non-relativistic Gaussian Dirac wave packet in momentum space.
//!
//! All quantities here are in Dirac natural units (ħ = c = mₑ = |e| = 1,
//! lengths in λ_c). The packet is
//!
//! φ(p, t) = C₊(p) e^{−iωt} + C₋(p) e^{iωt},
//! C₊ = (χ, K σ·p χ) f(p/p_o),   C₋ = (0, −K σ·p χ) f(p/p_o),
//!
//! with K = 1/2, ω = 1 and p_o = 2/r_o, which is the free positive/negative
//! energy decomposition truncated at first order in p.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::error::{invalid, Result};
use crate::quadrature::{integrate_momentum_3d, Tolerance, Weight};
use crate::spinor::{alpha_triplet, free_dirac_hamiltonian, pauli, ComplexMatrix, Spinor4, C64};
use crate::{Spin, Vector3};

/// Above this λ_c/r_o the dropped O((p/2mₑc)²) terms are no longer small.
pub const NONRELATIVISTIC_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    /// Spatial width in units of λ_c.
    pub r_o: f64,
    pub spin: Spin,
}

impl PacketSpec {
    pub fn new(r_o: f64, spin: Spin) -> Result<Self> {
        if !(r_o.is_finite() && r_o > 0.0) {
            return Err(invalid("r_o", format!("packet width must be positive, got {r_o}")));
        }
        Ok(Self { r_o, spin })
    }

    pub fn from_si(r_o_m: f64, spin: Spin, k: &PhysicalConstants) -> Result<Self> {
        Self::new(r_o_m / k.lambda_c, spin)
    }

    /// Packet at the Bohr radius λ_c/α.
    pub fn bohr(spin: Spin) -> Self {
        let k = PhysicalConstants::codata();
        Self {
            r_o: 1.0 / k.alpha_fsc,
            spin,
        }
    }

    /// Momentum-space width p_o = 2ħ/r_o.
    pub fn p_o(&self) -> f64 {
        2.0 / self.r_o
    }

    /// True when λ_c/r_o = p_o/(2mₑc) is too large for the truncation.
    pub fn nonrelativistic_warning(&self) -> bool {
        1.0 / self.r_o >= NONRELATIVISTIC_LIMIT
    }
}

#[derive(Debug, Clone)]
pub struct DiracPacket {
    pub spec: PacketSpec,
    /// K = 1/(2mₑc).
    pub k: f64,
    /// ω = mₑc²/ħ; the ZBW frequency is 2ω.
    pub omega: f64,
    chi: [C64; 2],
    sigma: [ComplexMatrix; 3],
    alpha: [ComplexMatrix; 3],
}

fn apply2(m: &ComplexMatrix, v: [C64; 2]) -> [C64; 2] {
    [m[(0, 0)] * v[0] + m[(0, 1)] * v[1], m[(1, 0)] * v[0] + m[(1, 1)] * v[1]]
}

/// Cartesian momentum from spherical (p, θ, φ).
pub fn cartesian(p: f64, theta: f64, phi: f64) -> [f64; 3] {
    let st = theta.sin();
    [p * st * phi.cos(), p * st * phi.sin(), p * theta.cos()]
}

pub fn build_packet(spec: PacketSpec) -> DiracPacket {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let chi = match spec.spin {
        Spin::Up => [one, zero],
        Spin::Down => [zero, one],
    };
    DiracPacket {
        spec,
        k: 0.5,
        omega: 1.0,
        chi,
        sigma: [1, 2, 3].map(|i| pauli(i).expect("valid index")),
        alpha: alpha_triplet(),
    }
}

impl DiracPacket {
    pub fn p_o(&self) -> f64 {
        self.spec.p_o()
    }

    /// f(p/p_o) = (2/(π p_o²))^{3/4} exp(−p²/p_o²)
    pub fn profile(&self, p: [f64; 3]) -> f64 {
        let p_o = self.p_o();
        let p2 = p.iter().map(|x| x * x).sum::<f64>();
        (2.0 / (PI * p_o * p_o)).powf(0.75) * (-p2 / (p_o * p_o)).exp()
    }

    fn sigma_dot(&self, p: [f64; 3]) -> [C64; 2] {
        let mut out = [C64::new(0.0, 0.0); 2];
        for (s, pi) in self.sigma.iter().zip(p) {
            let v = apply2(s, self.chi);
            out[0] += v[0] * pi;
            out[1] += v[1] * pi;
        }
        out
    }

    /// Polynomial parts of (C₊, C₋) before multiplying by f.
    fn polynomials(&self, p: [f64; 3]) -> (Spinor4, Spinor4) {
        let sp = self.sigma_dot(p);
        let lower = [sp[0] * self.k, sp[1] * self.k];
        let zero = C64::new(0.0, 0.0);
        (
            Spinor4::from_blocks(self.chi, lower),
            Spinor4::from_blocks([zero, zero], [-lower[0], -lower[1]]),
        )
    }

    /// (C₊(p), C₋(p)) including the Gaussian profile.
    pub fn amplitudes(&self, p: [f64; 3]) -> (Spinor4, Spinor4) {
        let f = C64::from(self.profile(p));
        let (a, b) = self.polynomials(p);
        (a * f, b * f)
    }

    fn phases(&self, t: f64) -> (C64, C64) {
        let w = self.omega * t;
        (C64::from_polar(1.0, -w), C64::from_polar(1.0, w))
    }

    /// φ(p, t)
    pub fn wavefunction(&self, p: [f64; 3], t: f64) -> Spinor4 {
        let (cp, cm) = self.amplitudes(p);
        let (em, ep) = self.phases(t);
        cp * em + cm * ep
    }

    /// ∂φ/∂pⱼ for j = 1, 2, 3, by the product rule on polynomial × Gaussian.
    pub fn gradient(&self, p: [f64; 3], t: f64) -> [Spinor4; 3] {
        let f = self.profile(p);
        let p_o2 = self.p_o() * self.p_o();
        let (poly_p, poly_m) = self.polynomials(p);
        let (em, ep) = self.phases(t);
        let zero = C64::new(0.0, 0.0);
        std::array::from_fn(|j| {
            let ds = apply2(&self.sigma[j], self.chi);
            let dlow = [ds[0] * self.k, ds[1] * self.k];
            let dpoly_p = Spinor4::from_blocks([zero, zero], dlow);
            let dpoly_m = Spinor4::from_blocks([zero, zero], [-dlow[0], -dlow[1]]);
            let dlogf = C64::from(-2.0 * p[j] / p_o2);
            let dp = (dpoly_p + poly_p * dlogf) * C64::from(f);
            let dm = (dpoly_m + poly_m * dlogf) * C64::from(f);
            dp * em + dm * ep
        })
    }

    /// Re φ† O φ at a single momentum.
    pub fn density(&self, p: [f64; 3], t: f64, op: &ComplexMatrix) -> f64 {
        let psi = self.wavefunction(p, t);
        psi.inner(&op.apply(&psi).expect("4x4 operator")).re
    }

    /// Re φ† αₖ φ for k = 1, 2, 3 from a single wavefunction evaluation.
    pub fn alpha_densities(&self, p: [f64; 3], t: f64) -> [f64; 3] {
        let psi = self.wavefunction(p, t);
        std::array::from_fn(|k| psi.inner(&self.alpha[k].apply(&psi).expect("4x4")).re)
    }

    /// (iħ∂ₜ − H(p))φ, using the analytic time derivative.
    pub fn dirac_residual(&self, p: [f64; 3], t: f64) -> Spinor4 {
        let (cp, cm) = self.amplitudes(p);
        let (em, ep) = self.phases(t);
        let i_dt = cp * (em * self.omega) - cm * (ep * self.omega);
        let h = free_dirac_hamiltonian(p, 1.0, 1.0);
        i_dt - h.apply(&self.wavefunction(p, t)).expect("4x4")
    }

    /// The O(p²) term the truncation drops: ((p²/2m)(e^{iωt} − e^{−iωt}) χ f, 0).
    pub fn dropped_order_term(&self, p: [f64; 3], t: f64) -> Spinor4 {
        let p2 = p.iter().map(|x| x * x).sum::<f64>();
        let (em, ep) = self.phases(t);
        let s = (ep - em) * (0.5 * p2 * self.profile(p));
        let zero = C64::new(0.0, 0.0);
        Spinor4::from_blocks([self.chi[0] * s, self.chi[1] * s], [zero, zero])
    }

    /// ∫ |φ|² d³p
    pub fn norm(&self, t: f64, tol: Tolerance) -> Result<f64> {
        self.integrate(|p| self.wavefunction(p, t).norm_sqr(), tol)
    }

    fn integrate<G: Fn([f64; 3]) -> f64>(&self, g: G, tol: Tolerance) -> Result<f64> {
        integrate_momentum_3d(|p, th, ph| g(cartesian(p, th, ph)), self.p_o(), Weight::Bare, tol).map(|r| r.value)
    }

    /// ⟨cα⟩ over the full momentum domain.
    pub fn expectation_velocity(&self, t: f64, tol: Tolerance) -> Result<Vector3> {
        let mut v = Vector3::zeros();
        for (k, a) in self.alpha.iter().enumerate() {
            v[k] = self.integrate(|p| self.density(p, t, a), tol)?;
        }
        Ok(v)
    }

    /// Pointwise Re[iħ φ† (∇ₚ × α) φ]ᵢ = Re[i εᵢⱼₖ φ† αₖ ∂ⱼφ].
    pub fn grad_cross_alpha_density(&self, p: [f64; 3], t: f64) -> [f64; 3] {
        let psi = self.wavefunction(p, t);
        let grad = self.gradient(p, t);
        let term = |j: usize, k: usize| psi.inner(&self.alpha[k].apply(&grad[j]).expect("4x4"));
        let i = C64::new(0.0, 1.0);
        [
            (i * (term(1, 2) - term(2, 1))).re,
            (i * (term(2, 0) - term(0, 2))).re,
            (i * (term(0, 1) - term(1, 0))).re,
        ]
    }

    /// Magnetic moment (e/2)⟨r × α⟩ = (ieħ/2)⟨∇ₚ × α⟩ in units of |e|λ_c
    /// (electron charge, e = −1), integrated over momentum space.
    pub fn expectation_grad_cross_alpha(&self, t: f64, tol: Tolerance) -> Result<Vector3> {
        let e = -1.0;
        let mut m = Vector3::zeros();
        for i in 0..3 {
            m[i] = 0.5 * e * self.integrate(|p| self.grad_cross_alpha_density(p, t)[i], tol)?;
        }
        Ok(m)
    }
}
