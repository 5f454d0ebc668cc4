//! Closed-form-vs-oracle and identity suite across all modules.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;
use zbw_core::dirac_packet::{build_packet, PacketSpec};
use zbw_core::graphene::{self, FieldSpec, GrapheneConfig};
use zbw_core::landau::{self, Species};
use zbw_core::nc_moment;
use zbw_core::nc_phase_space::{verify_brackets, BracketTable, NCParams, SYMMETRIZATION_CONVENTION};
use zbw_core::quadrature::{integrate_real_line, monte_carlo_gaussian, GaussHermite, Tolerance, MC_ALGORITHM};
use zbw_core::spinor::{
    alpha_triplet, anticommutator, commutator, dirac_gamma0, free_dirac_hamiltonian, pauli, ComplexMatrix, C64,
};
use zbw_core::units::{convert_value, Dimension, UnitFrame};
use zbw_core::{zbw, PhysicalConstants, Spin, Vector3};

use crate::error::{CliError, Result};

pub const MODULES: [&str; 9] = [
    "constants-units",
    "spinor-algebra",
    "quadrature-oracle",
    "dirac-packet",
    "zbw-commutative",
    "nc-phase-space",
    "nc-space-moment",
    "nc-momentum-landau",
    "graphene-zbw",
];

const MC_SAMPLES: usize = 200_000;
const HAMILTONIAN_DIM: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported, never gates the exit code.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub module: &'static str,
    pub name: String,
    pub anchor: &'static str,
    pub expected: f64,
    pub actual: f64,
    /// `absolute` or `relative`.
    pub measure: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub constants: PhysicalConstants,
    pub frames: Vec<&'static str>,
    pub seed: u64,
    pub monte_carlo_algorithm: &'static str,
    pub monte_carlo_samples: usize,
    pub graphene_m_max: usize,
    pub hamiltonian_dim: usize,
    pub symplectic_convention: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub metadata: Metadata,
    pub failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Suite {
    module: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: String, anchor: &'static str, expected: f64, actual: f64, tol: f64, relative: bool) {
        let diff = (actual - expected).abs();
        let deviation = if relative && expected != 0.0 {
            diff / expected.abs()
        } else {
            diff
        };
        let status = if deviation <= tol { Status::Pass } else { Status::Fail };
        self.checks.push(Check {
            module: self.module,
            name,
            anchor,
            expected,
            actual,
            measure: if relative { "relative" } else { "absolute" },
            deviation,
            tolerance: tol,
            status,
            note: None,
        });
    }

    fn rel(&mut self, name: impl Into<String>, anchor: &'static str, expected: f64, actual: f64, tol: f64) {
        self.push(name.into(), anchor, expected, actual, tol, true);
    }

    fn abs(&mut self, name: impl Into<String>, anchor: &'static str, expected: f64, actual: f64, tol: f64) {
        self.push(name.into(), anchor, expected, actual, tol, false);
    }

    fn holds(&mut self, name: impl Into<String>, anchor: &'static str, ok: bool) {
        self.push(name.into(), anchor, 1.0, if ok { 1.0 } else { 0.0 }, 0.0, false);
    }

    fn info(&mut self, name: impl Into<String>, anchor: &'static str, expected: f64, actual: f64, note: String) {
        let deviation = if expected != 0.0 {
            ((actual - expected) / expected).abs()
        } else {
            (actual - expected).abs()
        };
        self.checks.push(Check {
            module: self.module,
            name: name.into(),
            anchor,
            expected,
            actual,
            measure: "relative",
            deviation,
            tolerance: f64::INFINITY,
            status: Status::Info,
            note: Some(note),
        });
    }

    /// Records a computation error as a failed check.
    fn guard(&mut self, name: &str, anchor: &'static str, run: impl FnOnce(&mut Suite) -> zbw_core::Result<()>) {
        if let Err(e) = run(self) {
            self.checks.push(Check {
                module: self.module,
                name: name.to_string(),
                anchor,
                expected: f64::NAN,
                actual: f64::NAN,
                measure: "absolute",
                deviation: f64::NAN,
                tolerance: 0.0,
                status: Status::Fail,
                note: Some(e.to_string()),
            });
        }
    }
}

pub fn run_verify(module: Option<&str>, seed: u64) -> Result<VerifyReport> {
    let selected: Vec<&'static str> = match module {
        None | Some("all") => MODULES.to_vec(),
        Some(m) => vec![*MODULES
            .iter()
            .find(|x| **x == m)
            .ok_or_else(|| CliError::UnknownModule(m.to_string()))?],
    };
    let mut checks = Vec::new();
    for m in selected {
        let mut s = Suite {
            module: m,
            checks: Vec::new(),
        };
        match m {
            "constants-units" => constants_units(&mut s),
            "spinor-algebra" => spinor_algebra(&mut s),
            "quadrature-oracle" => quadrature_oracle(&mut s, seed),
            "dirac-packet" => dirac_packet(&mut s),
            "zbw-commutative" => zbw_commutative(&mut s),
            "nc-phase-space" => nc_phase_space(&mut s),
            "nc-space-moment" => nc_space_moment(&mut s),
            "nc-momentum-landau" => nc_momentum_landau(&mut s),
            _ => graphene_zbw(&mut s),
        }
        checks.extend(s.checks);
    }
    let failures = checks.iter().filter(|c| c.status == Status::Fail).count();
    Ok(VerifyReport {
        checks,
        failures,
        metadata: Metadata {
            tool: "zbwlab",
            version: env!("CARGO_PKG_VERSION"),
            constants: PhysicalConstants::codata(),
            frames: vec!["SI", "dirac-natural", "graphene-natural"],
            seed,
            monte_carlo_algorithm: MC_ALGORITHM,
            monte_carlo_samples: MC_SAMPLES,
            graphene_m_max: graphene::DEFAULT_M_MAX,
            hamiltonian_dim: HAMILTONIAN_DIM,
            symplectic_convention: SYMMETRIZATION_CONVENTION,
        },
    })
}

fn constants_units(s: &mut Suite) {
    let k = PhysicalConstants::codata();
    s.rel(
        "lambda_c",
        "reduced Compton wavelength ≃ 3.86e-13 m",
        3.86e-13,
        k.lambda_c,
        1e-3,
    );
    s.rel(
        "omega_zbw",
        "ZBW frequency 2mc²/ħ ≃ 1.6e21 1/s",
        1.6e21,
        zbw::zbw_frequency(&k),
        0.05,
    );
    s.guard("natural_round_trip", "frame conversion is invertible", |s| {
        for dim in Dimension::ALL {
            let there = convert_value(1.2345, dim, UnitFrame::DiracNatural, UnitFrame::SI, &k)?;
            let back = convert_value(there, dim, UnitFrame::SI, UnitFrame::DiracNatural, &k)?;
            s.rel(
                format!("round_trip_{dim}"),
                "frame conversion is invertible",
                1.2345,
                back,
                1e-14,
            );
        }
        Ok(())
    });
}

fn matrix_gap(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.max_abs_diff(b)
}

fn spinor_algebra(s: &mut Suite) {
    let anchor = "{α_i, α_j} = 2δ_ij, {α_i, β} = 0, β² = 1";
    s.guard("clifford", anchor, |s| {
        let alpha = alpha_triplet();
        let beta = dirac_gamma0();
        let one = ComplexMatrix::identity(4)?;
        let zero = ComplexMatrix::zeros(4)?;
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { one.scale(2.0.into()) } else { zero.clone() };
                worst = worst.max(matrix_gap(&anticommutator(&alpha[i], &alpha[j])?, &want));
            }
            worst = worst.max(matrix_gap(&anticommutator(&alpha[i], &beta)?, &zero));
        }
        worst = worst.max(matrix_gap(&beta.try_mul(&beta)?, &one));
        s.abs("clifford", anchor, 0.0, worst, 1e-15);

        let i = C64::new(0.0, 2.0);
        let gap = matrix_gap(&commutator(&pauli(1)?, &pauli(2)?)?, &pauli(3)?.scale(i));
        s.abs("pauli_commutator", "[σ₁, σ₂] = 2iσ₃", 0.0, gap, 1e-15);

        let p = [0.3, -1.1, 0.7];
        let h = free_dirac_hamiltonian(p, 1.0, 1.0);
        let e2 = 1.0 + p.iter().map(|x| x * x).sum::<f64>();
        let gap = matrix_gap(&h.try_mul(&h)?, &one.scale(e2.into()));
        s.abs("hamiltonian_square", "H² = (p²c² + m²c⁴)·1", 0.0, gap, 1e-14);
        Ok(())
    });
}

fn quadrature_oracle(s: &mut Suite, seed: u64) {
    let anchor = "∫ e^{-x²} cos x dx = √π e^{-1/4}";
    let exact = PI.sqrt() * (-0.25f64).exp();
    s.guard("gauss_hermite", anchor, |s| {
        let gh = GaussHermite::new(40)?;
        s.rel("gauss_hermite_40", anchor, exact, gh.integrate(f64::cos), 1e-13);
        let adaptive = integrate_real_line(|x| (-x * x).exp() * x.cos(), 0.0, 1.0, Tolerance::new(1e-13))?;
        s.rel("adaptive_real_line", anchor, exact, adaptive.value, 1e-12);
        let p_o = 2.0;
        let mc = monte_carlo_gaussian(|p| p[0] * p[0], p_o, MC_SAMPLES, seed)?;
        s.abs(
            "monte_carlo_variance",
            "packet density has per-axis variance p_o²/4",
            p_o * p_o / 4.0,
            mc.value,
            5.0 * mc.error_estimate,
        );
        Ok(())
    });
}

fn dirac_packet(s: &mut Suite) {
    let anchor = "truncated packet norm 1 + 3 sin²(ωt) (λ_c/r_o)²";
    s.guard("packet_norm", anchor, |s| {
        let r_o = 2.0;
        let packet = build_packet(PacketSpec::new(r_o, Spin::Up)?);
        let tol = Tolerance::new(1e-12);
        for t in [0.0, 0.7, PI / 2.0] {
            let want = 1.0 + 3.0 * t.sin().powi(2) / (r_o * r_o);
            s.rel(format!("norm_t{t:.4}"), anchor, want, packet.norm(t, tol)?, 1e-9);
        }
        let v = packet.expectation_velocity(0.9, Tolerance { abs: 1e-12, rel: 1e-10 })?;
        s.abs("velocity_zero", "⟨cα⟩ = 0 for the symmetric packet", 0.0, v.norm(), 1e-10);
        let p = [0.4, -0.2, 0.9];
        let gap = (packet
            .dirac_residual(p, 0.6)
            .0
            .iter()
            .zip(packet.dropped_order_term(p, 0.6).0.iter()))
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
        s.abs(
            "residual_order",
            "Dirac residual equals the dropped O(K²) term",
            0.0,
            gap,
            1e-14,
        );
        Ok(())
    });
}

fn zbw_commutative(s: &mut Suite) {
    let anchor_i = "I = -(8π)^(-1/2) λ_c/r_o";
    s.guard("amplitude_i", anchor_i, |s| {
        let tol = Tolerance::new(1e-12);
        for r_o in [0.5, 1.0, 10.0, 137.0] {
            s.rel(
                format!("amplitude_i_r{r_o}"),
                anchor_i,
                zbw::amplitude_i(r_o)?,
                zbw::amplitude_i_oracle(r_o, tol)?,
                1e-8,
            );
            s.abs(
                format!("amplitude_j_r{r_o}"),
                "J = 0",
                0.0,
                zbw::amplitude_j_oracle(r_o, tol)?,
                1e-12,
            );
        }
        Ok(())
    });
    let worst = (0..100)
        .map(|i| {
            let p = zbw::trajectory_fixed_phi(0.0, 0.0314 * i as f64);
            (p.x * p.x + p.y * p.y - 0.25).abs()
        })
        .fold(0.0, f64::max);
    s.abs("circle", "x² + y² = (λ_c/2)²", 0.0, worst, 1e-10);
    s.guard("moment_packet", "μ_z = (e/2)(1 - cos 2ωt)σ_z, |e|λ_c units", |s| {
        let packet = build_packet(PacketSpec::new(137.0, Spin::Up)?);
        let t = 1.0;
        let m = packet.expectation_grad_cross_alpha(t, Tolerance { abs: 1e-10, rel: 1e-10 })?;
        let want = zbw::magnetic_moment(Spin::Up, t).z;
        s.rel(
            "moment_packet_t1",
            "μ_z = (e/2)(1 - cos 2ωt)σ_z, |e|λ_c units",
            want,
            m.z,
            1e-8,
        );
        let avg = zbw::magnetic_moment_time_average(Spin::Up, Tolerance::new(1e-12))?;
        s.rel("moment_average", "time-averaged moment eλ_c/2", -0.5, avg.z, 1e-10);
        Ok(())
    });
}

fn nc_phase_space(s: &mut Suite) {
    let sets = [
        ("space", NCParams::space(Vector3::new(0.1, -0.4, 0.3)), 1.0),
        ("momentum", NCParams::momentum(Vector3::new(0.0, 0.2, -0.5)), 1.0),
        (
            "mixed",
            NCParams::new(Vector3::new(0.3, 0.1, -0.2), Vector3::new(-0.4, 0.6, 0.25)).expect("finite"),
            0.7,
        ),
    ];
    for (label, nc, hbar) in sets {
        let got = verify_brackets(&nc, hbar);
        let want = BracketTable::expected(&nc, hbar);
        for (family, a, b, anchor) in [
            ("xx", got.xx, want.xx, "[x_i, x_j] = iθ_ij"),
            ("pp", got.pp, want.pp, "[p_i, p_j] = iη_ij"),
            ("xp", got.xp, want.xp, "[x_i, p_j] = iħδ_ij + iθη/4ħ mixed correction"),
        ] {
            let scale = b.abs().max().max(f64::MIN_POSITIVE);
            let dev = (a - b).abs().max() / scale;
            s.abs(format!("{label}_{family}"), anchor, 0.0, dev, 1e-14);
        }
    }
}

fn nc_space_moment(s: &mut Suite) {
    let anchor = "δμ = (e/4ħ)⟨α × (p × θ)⟩";
    s.guard("nc_moment_oracle", anchor, |s| {
        let r_o = 1.0 / PhysicalConstants::codata().alpha_fsc;
        let tol = Tolerance {
            abs: 1e-10 * nc_moment::nc_coefficient(r_o).abs(),
            rel: 1e-10,
        };
        for theta in [
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
            Vector3::new(0.3, -0.8, 0.52),
        ] {
            for spin in [Spin::Up, Spin::Down] {
                let t = 0.9;
                let closed = nc_moment::nc_moment(spin, theta, t, r_o)?;
                let oracle = nc_moment::oracle_nc_moment(spin, theta, t, r_o, tol)?;
                let dev = (oracle - closed).norm() / closed.norm();
                s.abs(
                    format!("oracle_{spin:?}_{:.2}_{:.2}_{:.2}", theta.x, theta.y, theta.z),
                    anchor,
                    0.0,
                    dev,
                    1e-6,
                );
            }
        }
        let k = PhysicalConstants::codata();
        let theta = Vector3::new(0.0, 0.0, 1.0);
        let avg = nc_moment::nc_moment_time_average(Spin::Up, theta, r_o, Tolerance::new(1e-12))?;
        let loop_z = nc_moment::oneloop_theta_term(theta, &k).z;
        s.holds(
            "oneloop_sign",
            "time-averaged θ correction opposes the one-loop θ term",
            avg.z * loop_z < 0.0,
        );
        s.info(
            "oneloop_ratio",
            "leading/one-loop θ₃ ratio at the Bohr radius, -3πα/γ_E",
            -3.0 * PI * k.alpha_fsc / k.gamma_euler,
            nc_moment::oneloop_ratio(r_o, &k)?,
            "both in |e|λ_c per λ_c² of θ, ħ = c = mₑ = 1".into(),
        );
        Ok(())
    });
    let same = (0..50).all(|i| {
        let t = 0.21 * i as f64;
        let a = nc_moment::nc_trajectory_fixed_phi(0.7, t, Vector3::new(0.4, -0.2, 0.9));
        let b = zbw::trajectory_fixed_phi(0.7, t);
        [a.x, a.y, a.z].map(f64::to_bits) == [b.x, b.y, b.z].map(f64::to_bits)
    });
    s.holds("trajectory_unchanged", "θ leaves the trajectory unchanged", same);
}

fn nc_momentum_landau(s: &mut Suite) {
    let kn = PhysicalConstants::dirac_natural();
    s.guard("landau", "E² = m²c⁴ + p₃²c² + 2kc²ħ|eB₃|", |s| {
        for level in 1..=5 {
            let lvl = landau::landau_level(level, 0.3, 0.8, Species::Electron, 2 * level + 4, &kn)?;
            let ok = lvl.degenerate_states.iter().all(|st| match st.spin {
                Spin::Up => st.n - st.l == 2 * (level - 1),
                Spin::Down => st.n - st.l == 2 * level,
            });
            s.holds(format!("degeneracy_k{level}"), "spin-up n-l = 2(k-1), spin-down n-l = 2k", ok);
        }
        for species in [Species::Electron, Species::Positron] {
            let zero = landau::landau_level(0, 0.0, 0.8, species, 8, &kn)?;
            let first = zero.degenerate_states.first().map(|st| st.spin);
            let single = first.is_some() && zero.degenerate_states.iter().all(|st| Some(st.spin) == first);
            s.holds(
                format!("zero_level_{species:?}"),
                "zero level has a single spin branch",
                single,
            );
        }
        let a = landau::nc_landau_spectrum(0.4, 0.1, Species::Electron, 4, 10, &kn)?;
        let b = landau::nc_landau_spectrum(0.4, 0.1, Species::Positron, 4, 10, &kn)?;
        s.holds(
            "nc_charge_independence",
            "η-induced spectrum independent of the charge sign",
            a.iter().zip(&b).all(|(x, y)| x.energy == y.energy),
        );
        Ok(())
    });
    let k = PhysicalConstants::codata();
    let eta = landau::eta_for_field(Vector3::new(0.0, 0.0, 8.6e-14), &k);
    let l = landau::magnetic_radius(landau::effective_field(eta, &k).z, &k);
    s.rel("magnetic_radius", "B_η = 8.6e-14 T gives L ≈ 8.7 cm", 8.7e-2, l, 0.02);
}

fn graphene_zbw(s: &mut Suite) {
    let k = PhysicalConstants::codata();
    s.guard("numerology", "Ω ≈ 1.6e7 1/s at B_η = 8.6e-14 T", |s| {
        let cfg = GrapheneConfig::new(FieldSpec::BEta(8.6e-14), 1e-3, 0.0, 1e6, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 4, &k)?;
        s.rel(
            "big_omega",
            "Ω ≈ 1.6e7 1/s at B_η = 8.6e-14 T",
            1.6e7,
            graphene::big_omega(&cfg)?,
            0.02,
        );
        Ok(())
    });
    s.guard("series", "graphene series", |s| {
        let cfg = GrapheneConfig::demo(1e-8, &k)?;
        let c = graphene::series_coefficients(&cfg)?;
        let t0 = c.terms[0];
        s.abs("alpha0_equal", "α₀⁺ = α₀⁻", t0.alpha_plus, t0.alpha_minus, 0.0);
        let worst = (0..=graphene::DEFAULT_M_MAX)
            .map(|m| (graphene::cyclotron_frequency(m) * graphene::zbw_frequency(m) - 1.0).abs())
            .fold(0.0, f64::max);
        s.abs("frequency_product", "ω_cyc ω_zbw = Ω²", 0.0, worst, 1e-12);
        let (full, _) = c.single_level_position(0, 0.8)?;
        let (cyc, _) = c.single_level_cyclotron_only(0, 0.8)?;
        s.abs(
            "zero_level_halving",
            "dropping ZBW terms halves the zero-level amplitude",
            full,
            2.0 * cyc,
            0.0,
        );
        let gh = graphene::overlap_gauss_hermite(0, 0, &cfg)?;
        s.rel(
            "overlap_00_oracle",
            "V₀₀ completed-square closed form",
            graphene::overlap_00_analytic(&cfg),
            gh,
            1e-10,
        );
        let vals = graphene::truncated_hamiltonian_oracle(HAMILTONIAN_DIM)?;
        let mut worst = 0.0f64;
        for m in 0..=graphene::converged_levels(HAMILTONIAN_DIM) {
            for sign in [1i8, -1] {
                let e = graphene::graphene_energy(sign, m);
                worst = worst.max(vals.iter().map(|v| (v - e).abs()).fold(f64::INFINITY, f64::min));
            }
        }
        s.abs("hamiltonian_eigenvalues", "E = sħΩ√m", 0.0, worst, 1e-6);
        let audit = graphene::printed_formula_audit(&cfg)?;
        s.info(
            "overlap_00_printed",
            "printed V₀₀ closed form",
            audit.v00_quadrature,
            audit.v00_printed,
            "informational: printed exponent disagrees with quadrature".into(),
        );
        s.info(
            "overlap_ratio_01_printed",
            "printed V₀₁/V₀₀ ratio",
            audit.ratio01_quadrature,
            audit.ratio01_printed,
            "informational".into(),
        );
        Ok(())
    });
}
