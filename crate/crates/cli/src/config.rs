//! Flat `key = value` configuration with dotted section prefixes.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use zbw_core::graphene::{DEFAULT_K0X_ELL, DEFAULT_L_OVER_ELL, DEFAULT_M_MAX};
use zbw_core::landau::Species;
use zbw_core::{PhysicalConstants, Spin, Vector3};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    ZbwTraj,
    Moment,
    NcMoment,
    Landau,
    GrapheneTraj,
    Verify,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::ZbwTraj,
        Scenario::Moment,
        Scenario::NcMoment,
        Scenario::Landau,
        Scenario::GrapheneTraj,
        Scenario::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::ZbwTraj => "zbw-traj",
            Scenario::Moment => "moment",
            Scenario::NcMoment => "nc-moment",
            Scenario::Landau => "landau",
            Scenario::GrapheneTraj => "graphene-traj",
            Scenario::Verify => "verify",
        }
    }

    /// Default end of the time grid, in the scenario's natural time unit.
    fn default_end(self) -> f64 {
        match self {
            // one ZBW period at ω = 2
            Scenario::ZbwTraj | Scenario::Moment | Scenario::NcMoment => std::f64::consts::PI,
            // one period of the zero level at Ω = 1
            Scenario::GrapheneTraj => std::f64::consts::TAU,
            Scenario::Landau | Scenario::Verify => 0.0,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scenario `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ConstOverrides {
    pub hbar: Option<f64>,
    pub c: Option<f64>,
    pub m_e: Option<f64>,
    pub v_f: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub samples: usize,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        if self.samples == 1 {
            return vec![self.start];
        }
        let span = self.end - self.start;
        let last = (self.samples - 1) as f64;
        (0..self.samples).map(|i| self.start + span * (i as f64 / last)).collect()
    }
}

/// Dirac-sector packet, all in Dirac natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZbwSettings {
    /// Packet width in λ_c.
    pub r_o: f64,
    pub phi0: f64,
    pub spin: Spin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauSettings {
    /// p₃ in mₑc.
    pub p3: f64,
    /// B₃ in mₑ²c²/(|e|ħ); ignored when `eta3` is set.
    pub b3: f64,
    /// η₃ in (mₑc)²; selects the noncommutative spectrum.
    pub eta3: Option<f64>,
    pub species: Species,
    pub k_max: i64,
    pub n_max: i64,
}

/// How the graphene field was given, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrapheneField {
    LOverEll(f64),
    BEta(f64),
    Eta3(f64),
    Both { eta3: f64, b_eta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrapheneSettings {
    /// Packet width ℓ in m.
    pub ell: f64,
    pub field: GrapheneField,
    /// k₀ₓℓ, dimensionless.
    pub k0x_ell: f64,
    pub u: f64,
    pub d: f64,
    pub m_max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub constants: ConstOverrides,
    pub time: TimeGrid,
    pub zbw: ZbwSettings,
    /// θ in λ_c².
    pub theta: [f64; 3],
    pub landau: LandauSettings,
    pub graphene: GrapheneSettings,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn defaults(scenario: Scenario) -> Self {
        let k_max = 3;
        Self {
            scenario,
            constants: ConstOverrides::default(),
            time: TimeGrid {
                start: 0.0,
                end: scenario.default_end(),
                samples: 201,
            },
            zbw: ZbwSettings {
                r_o: 1.0 / PhysicalConstants::codata().alpha_fsc,
                phi0: 0.0,
                spin: Spin::Up,
            },
            theta: [0.0, 0.0, 1.0],
            landau: LandauSettings {
                p3: 0.0,
                b3: 1.0,
                eta3: None,
                species: Species::Electron,
                k_max,
                n_max: 2 * k_max + 2,
            },
            graphene: GrapheneSettings {
                ell: 1e-8,
                field: GrapheneField::LOverEll(DEFAULT_L_OVER_ELL),
                k0x_ell: DEFAULT_K0X_ELL,
                u: FRAC_1_SQRT_2,
                d: FRAC_1_SQRT_2,
                m_max: DEFAULT_M_MAX,
            },
            seed: 0,
        }
    }

    pub fn theta(&self) -> Vector3 {
        Vector3::from(self.theta)
    }

    pub fn constants(&self) -> Result<PhysicalConstants> {
        let o = self.constants;
        Ok(PhysicalConstants::codata().with_overrides(o.hbar, o.c, o.m_e, o.v_f)?)
    }
}

fn number<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| CliError::Syntax {
        line,
        message: format!("`{key}` expects a number, got `{value}`"),
    })
}

fn real(key: &str, value: &str, line: usize) -> Result<f64> {
    let v: f64 = number(key, value, line)?;
    if !v.is_finite() {
        return Err(CliError::Syntax {
            line,
            message: format!("`{key}` must be finite"),
        });
    }
    Ok(v)
}

fn check(ok: bool, key: &str, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::invalid(key, message))
    }
}

/// Parses a configuration document for `scenario`; absent keys keep their defaults.
pub fn parse_config(text: &str, scenario: Scenario) -> Result<ScenarioConfig> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| CliError::Syntax {
            line,
            message: format!("expected `key = value`, got `{body}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(CliError::Syntax {
                line,
                message: "empty key or value".into(),
            });
        }
        if let Some((first, _)) = entries.insert(key.to_string(), (line, value.to_string())) {
            return Err(CliError::Syntax {
                line,
                message: format!("`{key}` already set on line {first}"),
            });
        }
    }

    let mut cfg = ScenarioConfig::defaults(scenario);
    let mut end = None;
    let mut n_max = None;
    let (mut l_over_ell, mut b_eta, mut eta3) = (None, None, None);
    let mut ordered: Vec<_> = entries.iter().collect();
    ordered.sort_by_key(|(_, (line, _))| *line);
    for (key, (line, value)) in ordered {
        let (line, v) = (*line, value.as_str());
        match key.as_str() {
            "seed" => cfg.seed = number(key, v, line)?,
            "const.hbar" => cfg.constants.hbar = Some(real(key, v, line)?),
            "const.c" => cfg.constants.c = Some(real(key, v, line)?),
            "const.m_e" => cfg.constants.m_e = Some(real(key, v, line)?),
            "const.v_f" => cfg.constants.v_f = Some(real(key, v, line)?),
            "time.start" => cfg.time.start = real(key, v, line)?,
            "time.end" => end = Some(real(key, v, line)?),
            "time.samples" => cfg.time.samples = number(key, v, line)?,
            "zbw.r_o" => cfg.zbw.r_o = real(key, v, line)?,
            "zbw.phi0" => cfg.zbw.phi0 = real(key, v, line)?,
            "zbw.spin" => {
                cfg.zbw.spin = match v {
                    "up" => Spin::Up,
                    "down" => Spin::Down,
                    _ => {
                        return Err(CliError::Syntax {
                            line,
                            message: format!("`zbw.spin` is `up` or `down`, got `{v}`"),
                        })
                    }
                }
            }
            "nc.theta1" => cfg.theta[0] = real(key, v, line)?,
            "nc.theta2" => cfg.theta[1] = real(key, v, line)?,
            "nc.theta3" => cfg.theta[2] = real(key, v, line)?,
            "landau.p3" => cfg.landau.p3 = real(key, v, line)?,
            "landau.b3" => cfg.landau.b3 = real(key, v, line)?,
            "landau.eta3" => cfg.landau.eta3 = Some(real(key, v, line)?),
            "landau.species" => {
                cfg.landau.species = match v {
                    "electron" => Species::Electron,
                    "positron" => Species::Positron,
                    _ => {
                        return Err(CliError::Syntax {
                            line,
                            message: format!("`landau.species` is `electron` or `positron`, got `{v}`"),
                        })
                    }
                }
            }
            "landau.k_max" => cfg.landau.k_max = number(key, v, line)?,
            "landau.n_max" => n_max = Some(number(key, v, line)?),
            "graphene.ell" => cfg.graphene.ell = real(key, v, line)?,
            "graphene.L_over_ell" => l_over_ell = Some(real(key, v, line)?),
            "graphene.B_eta" => b_eta = Some(real(key, v, line)?),
            "graphene.eta3" => eta3 = Some(real(key, v, line)?),
            "graphene.k0x_ell" => cfg.graphene.k0x_ell = real(key, v, line)?,
            "graphene.u" => cfg.graphene.u = real(key, v, line)?,
            "graphene.d" => cfg.graphene.d = real(key, v, line)?,
            "graphene.m_max" => cfg.graphene.m_max = number(key, v, line)?,
            _ => {
                return Err(CliError::Syntax {
                    line,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
    }
    cfg.time.end = end.unwrap_or(cfg.time.start.max(cfg.time.end));
    cfg.landau.n_max = n_max.unwrap_or(2 * cfg.landau.k_max + 2);
    cfg.graphene.field = match (l_over_ell, b_eta, eta3) {
        (None, None, None) => cfg.graphene.field,
        (Some(r), None, None) => GrapheneField::LOverEll(r),
        (None, Some(b), None) => GrapheneField::BEta(b),
        (None, None, Some(e)) => GrapheneField::Eta3(e),
        (None, Some(b), Some(e)) => GrapheneField::Both { eta3: e, b_eta: b },
        _ => {
            return Err(CliError::invalid(
                "graphene.L_over_ell",
                "give either L_over_ell or the field (B_eta and/or eta3), not both",
            ))
        }
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &ScenarioConfig) -> Result<()> {
    check(cfg.time.samples >= 1, "time.samples", "need at least one sample")?;
    check(cfg.time.end >= cfg.time.start, "time.end", "must not precede time.start")?;
    check(cfg.zbw.r_o > 0.0, "zbw.r_o", "packet width must be positive")?;
    check(cfg.landau.k_max >= 0, "landau.k_max", "must be non-negative")?;
    check(cfg.landau.n_max >= 0, "landau.n_max", "must be non-negative")?;
    if cfg.landau.eta3.is_none() {
        check(
            cfg.landau.b3 != 0.0,
            "landau.b3",
            "field must be nonzero (or set landau.eta3)",
        )?;
    }
    let g = &cfg.graphene;
    check(g.ell > 0.0, "graphene.ell", "packet width must be positive")?;
    check(g.m_max >= 1, "graphene.m_max", "truncation must be at least 1")?;
    check(
        (g.u * g.u + g.d * g.d - 1.0).abs() <= 1e-12,
        "graphene.u",
        "band amplitudes must satisfy u² + d² = 1",
    )?;
    match g.field {
        GrapheneField::LOverEll(r) => check(r > 1.0, "graphene.L_over_ell", "magnetic radius must exceed the packet width"),
        GrapheneField::BEta(b) => check(b > 0.0, "graphene.B_eta", "must be positive"),
        GrapheneField::Eta3(e) => check(e > 0.0, "graphene.eta3", "must be positive"),
        GrapheneField::Both { eta3, b_eta } => {
            check(eta3 > 0.0 && b_eta > 0.0, "graphene.eta3", "eta3 and B_eta must be positive")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ScenarioConfig> {
        parse_config(text, Scenario::GrapheneTraj)
    }

    #[test]
    fn empty_document_is_all_defaults() {
        let cfg = parse_config("", Scenario::Verify).unwrap();
        assert_eq!(cfg, ScenarioConfig::defaults(Scenario::Verify));
    }

    #[test]
    fn comments_and_blank_lines() {
        let cfg = parse("# header\n\n  graphene.ell = 2e-8  # inline\nseed=7\n").unwrap();
        assert_eq!(cfg.graphene.ell, 2e-8);
        assert_eq!(cfg.seed, 7);
    }

    #[test]
    fn zero_width_rejected() {
        let err = parse("graphene.ell = 0").unwrap_err();
        assert!(
            matches!(err, CliError::Invalid { ref key, .. } if key == "graphene.ell"),
            "{err}"
        );
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn equal_amplitudes_accepted() {
        let cfg = parse("graphene.L_over_ell = 4\ngraphene.u = 0.7071067811865476\ngraphene.d = 0.7071067811865476").unwrap();
        assert_eq!(cfg.graphene.field, GrapheneField::LOverEll(4.0));
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        assert!(parse("graphene.u = 0.7\ngraphene.d = 0.7").is_err());
    }

    #[test]
    fn unknown_key_reports_line() {
        match parse("seed = 1\n\nzbw.radius = 3").unwrap_err() {
            CliError::Syntax { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("zbw.radius"));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn type_mismatch_reports_line() {
        match parse("time.samples = many").unwrap_err() {
            CliError::Syntax { line, .. } => assert_eq!(line, 1),
            e => panic!("{e}"),
        }
        assert!(parse("time.samples = -3").is_err());
        assert!(parse("zbw.spin = sideways").is_err());
    }

    #[test]
    fn missing_equals_and_duplicates() {
        assert!(matches!(parse("graphene.ell 1e-8"), Err(CliError::Syntax { line: 1, .. })));
        assert!(matches!(parse("seed = 1\nseed = 2"), Err(CliError::Syntax { line: 2, .. })));
    }

    #[test]
    fn field_choices() {
        assert!(matches!(
            parse("graphene.B_eta = 8.6e-14").unwrap().graphene.field,
            GrapheneField::BEta(_)
        ));
        assert!(matches!(
            parse("graphene.B_eta = 1\ngraphene.eta3 = 1e-34").unwrap().graphene.field,
            GrapheneField::Both { .. }
        ));
        assert!(parse("graphene.L_over_ell = 3\ngraphene.B_eta = 1").is_err());
        assert!(parse("graphene.L_over_ell = 0.5").is_err());
    }

    #[test]
    fn time_grid() {
        let cfg = parse_config("time.start = 1\ntime.end = 2\ntime.samples = 5", Scenario::ZbwTraj).unwrap();
        assert_eq!(cfg.time.times(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        let one = parse_config("time.samples = 1\ntime.start = 3", Scenario::ZbwTraj).unwrap();
        assert_eq!(one.time.times(), vec![3.0]);
        assert!(parse_config("time.start = 2\ntime.end = 1", Scenario::ZbwTraj).is_err());
        assert!(parse_config("time.samples = 0", Scenario::ZbwTraj).is_err());
    }

    #[test]
    fn landau_defaults_follow_k_max() {
        let cfg = parse_config("landau.k_max = 5", Scenario::Landau).unwrap();
        assert_eq!(cfg.landau.n_max, 12);
        assert!(parse_config("landau.b3 = 0", Scenario::Landau).is_err());
        assert!(parse_config("landau.b3 = 0\nlandau.eta3 = 0.5", Scenario::Landau).is_ok());
    }

    #[test]
    fn scenario_names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert!("warp".parse::<Scenario>().is_err());
    }
}
