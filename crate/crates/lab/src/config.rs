//! Experiment configuration: TOML in, validated and defaulted struct out.
//!
//! Angles are radians when written as numbers. Strings must carry a unit,
//! `"45deg"` or `"0.785rad"`.

use std::fmt;
use std::path::{Path, PathBuf};

use dbac_core::circuits::TableCircuit;
use dbac_core::dbac::RecursionMode;
use dbac_core::tomography::{Damping, NoiseModel};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// An angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAngle", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const QUARTER_PI: Angle = Angle(std::f64::consts::FRAC_PI_4);

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<f64> for Angle {
    fn from(x: f64) -> Self {
        Angle(x)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}rad", self.0)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAngle {
    Number(f64),
    Text(String),
}

impl TryFrom<RawAngle> for Angle {
    type Error = String;

    fn try_from(raw: RawAngle) -> Result<Self, String> {
        let x = match raw {
            RawAngle::Number(x) => x,
            RawAngle::Text(s) => parse_angle(&s)?,
        };
        if !x.is_finite() {
            return Err(format!("angle {x} is not finite"));
        }
        Ok(Angle(x))
    }
}

fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, to_rad) = if let Some(v) = s.strip_suffix("deg") {
        (v, std::f64::consts::PI / 180.0)
    } else if let Some(v) = s.strip_suffix("rad") {
        (v, 1.0)
    } else {
        return Err(format!("angle `{s}` needs a `deg` or `rad` suffix"));
    };
    num.trim()
        .parse::<f64>()
        .map(|v| v * to_rad)
        .map_err(|_| format!("`{s}` is not a number with a unit"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    SweepTheta,
    SweepS,
    GridKm,
    Trotter,
    Ptm,
    Baselines,
    Trajectory,
    Acceptance,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::SweepTheta => "sweep-theta",
            Experiment::SweepS => "sweep-s",
            Experiment::GridKm => "grid-km",
            Experiment::Trotter => "trotter",
            Experiment::Ptm => "ptm",
            Experiment::Baselines => "baselines",
            Experiment::Trajectory => "trajectory",
            Experiment::Acceptance => "acceptance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    PreviousOutput,
    FreshInput,
}

impl From<Mode> for RecursionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::PreviousOutput => RecursionMode::PreviousOutput,
            Mode::FreshInput => RecursionMode::FreshInput,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircuitChoice {
    A,
    B,
    C,
}

impl From<CircuitChoice> for TableCircuit {
    fn from(c: CircuitChoice) -> Self {
        match c {
            CircuitChoice::A => TableCircuit::A,
            CircuitChoice::B => TableCircuit::B,
            CircuitChoice::C => TableCircuit::C,
        }
    }
}

/// Cooling schedule. `m` and `s` hold one entry or one per step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScheduleConfig {
    pub k: i64,
    pub m: Vec<i64>,
    pub s: Vec<Angle>,
    /// Partial-swap angle of the gate-level circuits.
    pub phi: Angle,
    pub mode: Mode,
    /// Use ideal reflections instead of partial swaps.
    pub exact: bool,
    /// Simulate a fixed cooling circuit at angle `phi` instead of the state-level protocol.
    pub circuit: Option<CircuitChoice>,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self {
            k: 1,
            m: vec![1],
            s: vec![Angle::QUARTER_PI],
            phi: Angle::QUARTER_PI,
            mode: Mode::default(),
            exact: false,
            circuit: None,
        }
    }
}

impl ScheduleConfig {
    pub fn steps(&self) -> usize {
        self.k as usize
    }

    pub fn depth_at(&self, j: usize) -> usize {
        *self.m.get(j).unwrap_or(&self.m[0]) as usize
    }

    pub fn duration_at(&self, j: usize) -> f64 {
        self.s.get(j).unwrap_or(&self.s[0]).radians()
    }
}

/// Evenly spaced grid including both ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub start: Angle,
    pub stop: Angle,
    pub count: i64,
}

impl GridConfig {
    fn new(start: f64, stop: f64, count: i64) -> Self {
        Self {
            start: Angle(start),
            stop: Angle(stop),
            count,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count as usize;
        let (a, b) = (self.start.radians(), self.stop.radians());
        (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

fn default_theta() -> GridConfig {
    GridConfig::new(0.0, std::f64::consts::PI, 181)
}

fn default_s_grid() -> GridConfig {
    GridConfig::new(0.01, std::f64::consts::PI, 315)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KmConfig {
    pub k: Vec<i64>,
    pub m: Vec<i64>,
    pub f_target: f64,
}

impl Default for KmConfig {
    fn default() -> Self {
        Self {
            k: vec![1, 2, 3],
            m: vec![1, 2],
            f_target: 0.9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrotterConfig {
    pub t: Angle,
    pub m: Vec<i64>,
    /// Preparation angles of the instruction and data states.
    pub instruction_theta: Angle,
    pub data_theta: Angle,
}

impl Default for TrotterConfig {
    fn default() -> Self {
        Self {
            t: Angle::QUARTER_PI,
            m: vec![1, 2, 4, 8, 16, 32, 64],
            instruction_theta: Angle(std::f64::consts::FRAC_PI_2),
            data_theta: Angle(0.3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PtmConfig {
    pub phi: Vec<Angle>,
    pub p1: f64,
    pub p2: Vec<f64>,
}

impl Default for PtmConfig {
    fn default() -> Self {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};
        Self {
            phi: vec![
                Angle(0.0),
                Angle(FRAC_PI_8),
                Angle(FRAC_PI_4),
                Angle(FRAC_PI_2),
            ],
            p1: 0.0,
            p2: vec![0.0, 0.01, 0.02, 0.04],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselinesConfig {
    pub rounds: i64,
    /// Starting polarization of the compression register.
    pub eps: f64,
    pub eps_bath: f64,
    /// Starting mixedness of the purification and pseudo-pure runs.
    pub x0: f64,
    /// Preparation angle of the pure part.
    pub theta: Angle,
}

impl Default for BaselinesConfig {
    fn default() -> Self {
        Self {
            rounds: 10,
            eps: 0.1,
            eps_bath: 0.1,
            x0: 0.5,
            theta: Angle(std::f64::consts::FRAC_PI_2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrajectoryConfig {
    pub theta: Angle,
}

impl Default for TrajectoryConfig {
    fn default() -> Self {
        Self {
            theta: Angle(0.2 * std::f64::consts::PI),
        }
    }
}

/// Gate noise. Relaxation is enabled by giving both `t1` and `t2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    pub p1: f64,
    pub p2: f64,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub gate_time_1q: f64,
    pub gate_time_2q: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            p1: 0.0,
            p2: 0.0,
            t1: None,
            t2: None,
            gate_time_1q: 0.02,
            gate_time_2q: 0.2,
        }
    }
}

impl NoiseConfig {
    pub fn model(&self) -> Result<NoiseModel<f64>, ConfigError> {
        let base = NoiseModel::depolarizing(self.p1, self.p2).map_err(|e| field("noise", e))?;
        match (self.t1, self.t2) {
            (None, None) => Ok(base),
            (Some(t1), Some(t2)) => base
                .with_damping(Damping {
                    t1,
                    t2,
                    single_qubit_gate_time: self.gate_time_1q,
                    two_qubit_gate_time: self.gate_time_2q,
                })
                .map_err(|e| field("noise", e)),
            _ => Err(ConfigError::field(
                "noise.t2",
                "t1 and t2 must be given together",
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub schedule: ScheduleConfig,
    #[serde(default = "default_theta")]
    pub theta: GridConfig,
    #[serde(default = "default_s_grid")]
    pub s_grid: GridConfig,
    #[serde(default)]
    pub grid: KmConfig,
    #[serde(default)]
    pub trotter: TrotterConfig,
    #[serde(default)]
    pub ptm: PtmConfig,
    #[serde(default)]
    pub baselines: BaselinesConfig,
    #[serde(default)]
    pub trajectory: TrajectoryConfig,
    #[serde(default)]
    pub noise: Option<NoiseConfig>,
}

fn field(name: &str, e: impl fmt::Display) -> ConfigError {
    ConfigError::field(name, e.to_string())
}

fn positive_counts(name: &str, xs: &[i64]) -> Result<(), ConfigError> {
    if xs.is_empty() {
        return Err(ConfigError::field(name, "must not be empty"));
    }
    for (i, &x) in xs.iter().enumerate() {
        if x < 1 {
            return Err(ConfigError::field(
                &format!("{name}[{i}]"),
                format!("{x} must be at least 1"),
            ));
        }
    }
    Ok(())
}

fn probability(name: &str, p: f64) -> Result<(), ConfigError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ConfigError::field(name, format!("{p} is not in [0, 1]")));
    }
    Ok(())
}

impl GridConfig {
    fn check(&self, name: &str) -> Result<(), ConfigError> {
        if self.count < 2 {
            return Err(ConfigError::field(
                &format!("{name}.count"),
                format!("{} must be at least 2", self.count),
            ));
        }
        if self.stop.radians() <= self.start.radians() {
            return Err(ConfigError::field(
                &format!("{name}.stop"),
                "must exceed start",
            ));
        }
        Ok(())
    }
}

impl ExperimentConfig {
    /// Parses TOML text and validates it.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(text).map_err(|e| ConfigError::Parse {
            message: e.message().to_string(),
            span: e.span(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ConfigError::Read(path.to_path_buf(), e))?;
        Self::from_toml(&text)
    }

    pub fn minimal(experiment: Experiment, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            experiment,
            output_dir: output_dir.into(),
            seed: 0,
            schedule: ScheduleConfig::default(),
            theta: default_theta(),
            s_grid: default_s_grid(),
            grid: KmConfig::default(),
            trotter: TrotterConfig::default(),
            ptm: PtmConfig::default(),
            baselines: BaselinesConfig::default(),
            trajectory: TrajectoryConfig::default(),
            noise: None,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let sch = &self.schedule;
        if sch.k < 1 {
            return Err(ConfigError::field(
                "schedule.k",
                format!("{} must be at least 1", sch.k),
            ));
        }
        positive_counts("schedule.m", &sch.m)?;
        for (name, len) in [("schedule.m", sch.m.len()), ("schedule.s", sch.s.len())] {
            if len != 1 && len != sch.k as usize {
                return Err(ConfigError::field(
                    name,
                    format!("has {len} entries; give 1 or k = {}", sch.k),
                ));
            }
        }
        if let Some(c) = sch.circuit {
            let (k, m) = TableCircuit::from(c).shape();
            if self.experiment == Experiment::SweepTheta
                && (sch.k as usize != k || sch.depth_at(0) != m)
            {
                return Err(ConfigError::field(
                    "schedule.circuit",
                    format!("circuit {c:?} runs k = {k}, M = {m}; set schedule.k and schedule.m to match"),
                ));
            }
        }
        self.theta.check("theta")?;
        self.s_grid.check("s_grid")?;
        if self.s_grid.start.radians() <= 0.0 {
            return Err(ConfigError::field(
                "s_grid.start",
                "step sizes must be positive",
            ));
        }
        positive_counts("grid.k", &self.grid.k)?;
        positive_counts("grid.m", &self.grid.m)?;
        if !(self.grid.f_target > 0.0 && self.grid.f_target < 1.0) {
            return Err(ConfigError::field(
                "grid.f_target",
                format!("{} is not in (0, 1)", self.grid.f_target),
            ));
        }
        positive_counts("trotter.m", &self.trotter.m)?;
        if self.trotter.m.len() < 2 {
            return Err(ConfigError::field(
                "trotter.m",
                "needs at least 2 depths for a fit",
            ));
        }
        if self.ptm.phi.is_empty() {
            return Err(ConfigError::field("ptm.phi", "must not be empty"));
        }
        probability("ptm.p1", self.ptm.p1)?;
        for (i, &p) in self.ptm.p2.iter().enumerate() {
            probability(&format!("ptm.p2[{i}]"), p)?;
        }
        if self.baselines.rounds < 1 {
            return Err(ConfigError::field("baselines.rounds", "must be at least 1"));
        }
        for (name, e) in [
            ("baselines.eps", self.baselines.eps),
            ("baselines.eps_bath", self.baselines.eps_bath),
        ] {
            if !(-1.0..=1.0).contains(&e) {
                return Err(ConfigError::field(
                    name,
                    format!("{e} is not a polarization in [-1, 1]"),
                ));
            }
        }
        if !(0.0..1.0).contains(&self.baselines.x0) {
            return Err(ConfigError::field(
                "baselines.x0",
                format!("{} is not in [0, 1)", self.baselines.x0),
            ));
        }
        if let Some(n) = &self.noise {
            probability("noise.p1", n.p1)?;
            probability("noise.p2", n.p2)?;
            n.model()?;
        }
        Ok(())
    }

    pub fn noise_model(&self) -> Result<Option<NoiseModel<f64>>, ConfigError> {
        self.noise.as_ref().map(NoiseConfig::model).transpose()
    }
}
