//! Scenario runners: each returns a CSV table and a JSON sidecar.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use zbw_core::dirac_packet::PacketSpec;
use zbw_core::graphene::{self, FieldSpec, GrapheneConfig};
use zbw_core::landau::{self, LandauLevel};
use zbw_core::nc_moment;
use zbw_core::nc_phase_space::SYMMETRIZATION_CONVENTION;
use zbw_core::quadrature::{Tolerance, DEFAULT_TOL, MC_ALGORITHM};
use zbw_core::{zbw, Dimension, PhysicalConstants, Spin, UnitFrame};

use crate::config::{GrapheneField, Scenario, ScenarioConfig};
use crate::error::Result;
use crate::output::{self, to_json, Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Frame {
    SI,
    #[default]
    #[serde(rename = "natural")]
    Natural,
}

impl FromStr for Frame {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "SI" | "si" => Ok(Frame::SI),
            "natural" => Ok(Frame::Natural),
            _ => Err(format!("frame is `SI` or `natural`, got `{s}`")),
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Frame::SI => "SI",
            Frame::Natural => "natural",
        })
    }
}

pub struct Artifacts {
    pub table: Table,
    pub sidecar: String,
}

#[derive(Serialize)]
struct Column {
    name: &'static str,
    unit: String,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    scenario: Scenario,
    frame: Frame,
    seed: u64,
    constants: PhysicalConstants,
    config: &'a ScenarioConfig,
    columns: Vec<Column>,
    derived: Value,
    monte_carlo_algorithm: &'static str,
    symplectic_convention: &'static str,
}

fn columns(spec: &[(&'static str, &str)]) -> Vec<Column> {
    spec.iter()
        .map(|(name, unit)| Column {
            name,
            unit: unit.to_string(),
        })
        .collect()
}

fn header(cols: &[Column]) -> Vec<&'static str> {
    cols.iter().map(|c| c.name).collect()
}

/// SI scale factors of the Dirac-sector outputs.
struct DiracScales {
    time: f64,
    length: f64,
    moment: f64,
    energy: f64,
}

impl DiracScales {
    fn new(frame: Frame, k: &PhysicalConstants) -> Result<Self> {
        Ok(match frame {
            Frame::Natural => Self {
                time: 1.0,
                length: 1.0,
                moment: 1.0,
                energy: 1.0,
            },
            Frame::SI => Self {
                time: UnitFrame::DiracNatural.scale(Dimension::Time, k)?,
                length: k.lambda_c,
                // |e|λ_c·c in A·m²
                moment: k.charge_magnitude() * k.lambda_c * k.c,
                energy: k.rest_energy(),
            },
        })
    }

    fn units(frame: Frame) -> [&'static str; 4] {
        match frame {
            Frame::Natural => ["hbar/(m_e c^2)", "lambda_c", "|e| lambda_c c", "m_e c^2"],
            Frame::SI => ["s", "m", "A m^2", "J"],
        }
    }
}

pub fn run_scenario(cfg: &ScenarioConfig, frame: Frame) -> Result<Artifacts> {
    let k = cfg.constants()?;
    let (cols, table, derived) = match cfg.scenario {
        Scenario::ZbwTraj => zbw_trajectory(cfg, frame, &k)?,
        Scenario::Moment => moment(cfg, frame, &k)?,
        Scenario::NcMoment => nc_moment_series(cfg, frame, &k)?,
        Scenario::Landau => landau_table(cfg, frame, &k)?,
        Scenario::GrapheneTraj => graphene_trajectory(cfg, frame, &k)?,
        Scenario::Verify => unreachable!("verify has its own entry point"),
    };
    let sidecar = Sidecar {
        tool: "zbwlab",
        version: env!("CARGO_PKG_VERSION"),
        scenario: cfg.scenario,
        frame,
        seed: cfg.seed,
        constants: k,
        config: cfg,
        columns: cols,
        derived,
        monte_carlo_algorithm: MC_ALGORITHM,
        symplectic_convention: SYMMETRIZATION_CONVENTION,
    };
    Ok(Artifacts {
        table,
        sidecar: to_json(&sidecar),
    })
}

pub fn write_scenario(cfg: &ScenarioConfig, frame: Frame, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    let a = run_scenario(cfg, frame)?;
    output::write_artifacts(dir, cfg.scenario.name(), &a.table, &a.sidecar)
}

type Outcome = (Vec<Column>, Table, Value);

fn zbw_trajectory(cfg: &ScenarioConfig, frame: Frame, k: &PhysicalConstants) -> Result<Outcome> {
    let s = DiracScales::new(frame, k)?;
    let [tu, lu, _, _] = DiracScales::units(frame);
    let cols = columns(&[("t", tu), ("x", lu), ("y", lu), ("z", lu)]);
    let mut table = Table::new(&header(&cols));
    let mut worst = 0.0f64;
    for t in cfg.time.times() {
        let p = zbw::trajectory_fixed_phi(cfg.zbw.phi0, t);
        worst = worst.max((p.x.hypot(p.y) - 0.5).abs());
        table.push(vec![
            (t * s.time).into(),
            (p.x * s.length).into(),
            (p.y * s.length).into(),
            (p.z * s.length).into(),
        ]);
    }
    let spec = PacketSpec::new(cfg.zbw.r_o, cfg.zbw.spin)?;
    let derived = json!({
        "omega_zbw_natural": zbw::ZBW_FREQUENCY_NATURAL,
        "omega_zbw_si": zbw::zbw_frequency(k),
        "lambda_c_m": k.lambda_c,
        "radius_lambda_c": 0.5,
        "amplitude_i": zbw::amplitude_i(cfg.zbw.r_o)?,
        "amplitude_j": zbw::amplitude_j(),
        "max_radius_deviation_lambda_c": worst,
        "nonrelativistic_warning": spec.nonrelativistic_warning(),
    });
    Ok((cols, table, derived))
}

fn moment(cfg: &ScenarioConfig, frame: Frame, k: &PhysicalConstants) -> Result<Outcome> {
    let s = DiracScales::new(frame, k)?;
    let [tu, _, mu, _] = DiracScales::units(frame);
    let cols = columns(&[("t", tu), ("mu_x", mu), ("mu_y", mu), ("mu_z", mu)]);
    let mut table = Table::new(&header(&cols));
    for t in cfg.time.times() {
        let m = zbw::magnetic_moment(cfg.zbw.spin, t) * s.moment;
        table.push(vec![(t * s.time).into(), m.x.into(), m.y.into(), m.z.into()]);
    }
    let avg = zbw::magnetic_moment_time_average(cfg.zbw.spin, Tolerance::new(DEFAULT_TOL))?;
    let derived = json!({
        "spin": cfg.zbw.spin,
        "time_average_natural": [avg.x, avg.y, avg.z],
        "moment_unit_si": k.charge_magnitude() * k.lambda_c * k.c,
        "omega_zbw_natural": zbw::ZBW_FREQUENCY_NATURAL,
    });
    Ok((cols, table, derived))
}

fn nc_moment_series(cfg: &ScenarioConfig, frame: Frame, k: &PhysicalConstants) -> Result<Outcome> {
    let s = DiracScales::new(frame, k)?;
    let [tu, _, mu, _] = DiracScales::units(frame);
    let cols = columns(&[
        ("t", tu),
        ("mu_x", mu),
        ("mu_y", mu),
        ("mu_z", mu),
        ("dmu_x", mu),
        ("dmu_y", mu),
        ("dmu_z", mu),
        ("total_x", mu),
        ("total_y", mu),
        ("total_z", mu),
    ]);
    let mut table = Table::new(&header(&cols));
    let (spin, theta, r_o) = (cfg.zbw.spin, cfg.theta(), cfg.zbw.r_o);
    for t in cfg.time.times() {
        let m = nc_moment::moment_result(spin, theta, t, r_o)?;
        let mut row: Vec<Cell> = vec![(t * s.time).into()];
        for v in [m.commutative, m.nc_correction, m.total] {
            row.extend(v.iter().map(|c| Cell::Real(c * s.moment)));
        }
        table.push(row);
    }
    let kn = PhysicalConstants::dirac_natural();
    let avg = nc_moment::nc_moment_time_average(spin, theta, r_o, Tolerance::new(DEFAULT_TOL))?;
    let loop_term = nc_moment::oneloop_theta_term(theta, &kn);
    let derived = json!({
        "spin": spin,
        "r_o_lambda_c": r_o,
        "theta_lambda_c2": cfg.theta,
        "theta_m2": cfg.theta.map(|c| c * k.lambda_c * k.lambda_c),
        "coefficient": nc_moment::nc_coefficient(r_o),
        "oneloop_comparison": {
            "leading_time_average": [avg.x, avg.y, avg.z],
            "oneloop_theta_term": [loop_term.x, loop_term.y, loop_term.z],
            "leading_over_oneloop_theta3": nc_moment::oneloop_ratio(r_o, &kn)?,
            "units": "moments in |e| lambda_c, theta in lambda_c^2, hbar = c = m_e = 1",
        },
    });
    Ok((cols, table, derived))
}

fn state_list(level: &LandauLevel) -> String {
    level
        .degenerate_states
        .iter()
        .map(|st| {
            let s = match st.spin {
                Spin::Up => "up",
                Spin::Down => "down",
            };
            format!("{}:{}:{s}", st.n, st.l)
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn landau_table(cfg: &ScenarioConfig, frame: Frame, k: &PhysicalConstants) -> Result<Outcome> {
    let s = DiracScales::new(frame, k)?;
    let [_, _, _, eu] = DiracScales::units(frame);
    let cols = columns(&[
        ("k", "1"),
        ("energy", eu),
        ("degeneracy", "1"),
        ("spin_branches", "1"),
        ("states", "n:l:spin"),
    ]);
    let kn = PhysicalConstants::dirac_natural();
    let l = &cfg.landau;
    let levels = match l.eta3 {
        Some(eta3) => landau::nc_landau_spectrum(eta3, l.p3, l.species, l.k_max, l.n_max, &kn)?,
        None => (0..=l.k_max)
            .map(|lvl| landau::landau_level(lvl, l.p3, l.b3, l.species, l.n_max, &kn))
            .collect::<zbw_core::Result<Vec<_>>>()?,
    };
    let mut table = Table::new(&header(&cols));
    let mut branches = BTreeMap::new();
    for lvl in &levels {
        let up = lvl.degenerate_states.iter().any(|st| st.spin == Spin::Up);
        let down = lvl.degenerate_states.iter().any(|st| st.spin == Spin::Down);
        let n_branches = i64::from(up) + i64::from(down);
        branches.insert(lvl.k.to_string(), n_branches);
        table.push(vec![
            lvl.k.into(),
            (lvl.energy * s.energy).into(),
            (lvl.degenerate_states.len() as i64).into(),
            n_branches.into(),
            state_list(lvl).into(),
        ]);
    }
    let field = match l.eta3 {
        Some(eta3) => json!({ "eta3_natural": eta3, "b_eta_natural": eta3 / (l.species.charge(&kn)) }),
        None => json!({ "b3_natural": l.b3 }),
    };
    let b_abs = match l.eta3 {
        Some(eta3) => eta3.abs(),
        None => l.b3.abs(),
    };
    let derived = json!({
        "species": l.species,
        "p3_natural": l.p3,
        "field": field,
        "n_max": l.n_max,
        "magnetic_radius_lambda_c": landau::magnetic_radius(b_abs, &kn),
        "spin_branches_per_level": branches,
        "field_unit_si_tesla": UnitFrame::DiracNatural.scale(Dimension::MagneticField, k)?,
    });
    Ok((cols, table, derived))
}

pub fn graphene_config(cfg: &ScenarioConfig, k: &PhysicalConstants) -> Result<GrapheneConfig> {
    let g = &cfg.graphene;
    let field = match g.field {
        GrapheneField::LOverEll(r) => FieldSpec::LOverEll(r),
        GrapheneField::BEta(b) => FieldSpec::BEta(b),
        GrapheneField::Eta3(e) => FieldSpec::Eta3(e),
        GrapheneField::Both { eta3, b_eta } => FieldSpec::Both { eta3, b_eta },
    };
    Ok(GrapheneConfig::new(
        field,
        g.ell,
        g.k0x_ell / g.ell,
        k.v_f_default,
        g.u,
        g.d,
        g.m_max,
        k,
    )?)
}

fn graphene_trajectory(cfg: &ScenarioConfig, frame: Frame, k: &PhysicalConstants) -> Result<Outcome> {
    let gc = graphene_config(cfg, k)?;
    let omega = graphene::big_omega(&gc)?;
    let big_l = gc.magnetic_radius();
    let (ts, ls, vs, units) = match frame {
        Frame::Natural => (1.0, 1.0, 1.0, ["1/Omega", "L", "L Omega"]),
        Frame::SI => (1.0 / omega, big_l, big_l * omega, ["s", "m", "m/s"]),
    };
    let [tu, lu, vu] = units;
    let cols = columns(&[("t", tu), ("r1", lu), ("r2", lu), ("v1", vu), ("v2", vu)]);
    let coeffs = graphene::series_coefficients(&gc)?;
    let mut table = Table::new(&header(&cols));
    let (mut tail_r, mut tail_v) = (0.0f64, 0.0f64);
    for t in cfg.time.times() {
        let r = coeffs.position(t);
        let v = coeffs.velocity(t);
        tail_r = tail_r.max(r.tail);
        tail_v = tail_v.max(v.tail);
        table.push(vec![
            (t * ts).into(),
            (r.first * ls).into(),
            (r.second * ls).into(),
            (v.first * vs).into(),
            (v.second * vs).into(),
        ]);
    }
    let (a1, a2) = graphene::zero_level_amplitudes(&gc)?;
    let (rough1, rough2) = graphene::rough_amplitudes(&gc);
    let derived = json!({
        "omega_per_s": omega,
        "magnetic_radius_m": big_l,
        "g_m": gc.g(),
        "b_eta_tesla": gc.b_eta(),
        "eta3_si": gc.eta3,
        "ell_over_l": gc.ell / big_l,
        "k0x_per_m": gc.k0x,
        "v_f_m_per_s": gc.v_f,
        "m_max": gc.m_max,
        "coefficients": coeffs.terms,
        "truncation": {
            "position_tail_l": tail_r,
            "velocity_tail_l_omega": tail_v,
        },
        "zero_level_amplitudes_l": [a1, a2],
        "rough_amplitudes_l": [rough1, rough2],
    });
    Ok((cols, table, derived))
}
