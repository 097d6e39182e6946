//! Scenario configuration: flat `key = value` TOML with one section per
//! concern. Parsing is strict (unknown keys rejected) and resolution is
//! explicit — no silent unit or rate-scope defaults.
//!
//! ```toml
//! [scenario]
//! n_relays = 100          # default 100
//! # initial_infected_fraction defaults to 1/n_relays
//! horizon = 60.0          # required; in time units
//! time_unit = "h"         # label carried into every emitted table
//! runs = 2000
//! master_seed = 42
//! backend = "meeting"     # analytic | ode | meeting | spatial
//!
//! [rate]
//! lambda = 0.37043        # either an explicit rate ...
//! lambda_scope = "pairwise"  # ... whose scope MUST be declared: pairwise | fluid
//!
//! # ... or a mobility model that yields the pairwise rate (1/h):
//! # [rate.mobility]
//! # model = "rwp"         # rwp | rd
//! # side_length = 2.5352
//! # tx_range = 0.1
//! # v_min = 4.0
//! # v_max = 10.0
//! # waypoint_constant = 1.3683   # rwp only
//! # leg_duration = 0.362         # rd only; default L / mean speed
//! # relative_speed = "reference" # reference | estimated
//! # hours_per_time_unit = 1.0    # required when time_unit is not hours
//!
//! [scheme]
//! kind = "timeout"        # timeout | antipacket
//! t_g = 0.2038            # or: epsilon = 0.05 (derives the optimal timer)
//! # kind = "antipacket":
//! # kappa = 1.0
//! # t_d = 0.31            # analytic / ode backends need a delivery time
//! ```
//!
//! **Rate scopes.** Simulators consume the *pairwise* meeting rate; the
//! closed forms and the ODE consume the *fluid* coefficient, which for
//! `n_relays` relays is `n_relays` times the pairwise rate. Mobility-derived
//! rates are pairwise by construction. An explicit `lambda` must say which
//! scope it is in; [`ResolvedRates`] carries both.

use crate::analytic::{EpidemicParams, ReliabilityTarget};
use crate::error::{Error, Result};
use crate::mobility::{self, MobilityModel, MobilitySpec};
use crate::sim::{MeetingScenario, SchemeKind, SpatialScenario};
use serde::{Deserialize, Serialize};

/// Computation backend a scenario runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Analytic,
    Ode,
    Meeting,
    Spatial,
}

impl Backend {
    pub fn label(&self) -> &'static str {
        match self {
            Backend::Analytic => "analytic",
            Backend::Ode => "ode",
            Backend::Meeting => "meeting",
            Backend::Spatial => "spatial",
        }
    }

    pub fn is_simulator(&self) -> bool {
        matches!(self, Backend::Meeting | Backend::Spatial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaScope {
    Pairwise,
    Fluid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelativeSpeedSource {
    /// Conventional constants: 8.7 km/h (rwp), 9.2 km/h (rd).
    Reference,
    /// Monte-Carlo estimate from the model's stationary velocity law.
    Estimated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MobilityConfig {
    pub model: String,
    pub side_length: f64,
    #[serde(default = "default_tx_range")]
    pub tx_range: f64,
    #[serde(default = "default_v_min")]
    pub v_min: f64,
    #[serde(default = "default_v_max")]
    pub v_max: f64,
    #[serde(default)]
    pub waypoint_constant: Option<f64>,
    #[serde(default)]
    pub leg_duration: Option<f64>,
    #[serde(default = "default_relative_speed_source")]
    pub relative_speed: RelativeSpeedSource,
    #[serde(default)]
    pub relative_speed_samples: Option<usize>,
    /// Conversion applied to the mobility rate (1/h) when the scenario's
    /// time unit is not hours.
    #[serde(default)]
    pub hours_per_time_unit: Option<f64>,
}

fn default_tx_range() -> f64 {
    0.1
}
fn default_v_min() -> f64 {
    4.0
}
fn default_v_max() -> f64 {
    10.0
}
fn default_relative_speed_source() -> RelativeSpeedSource {
    RelativeSpeedSource::Reference
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RateConfig {
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub lambda_scope: Option<LambdaScope>,
    #[serde(default)]
    pub mobility: Option<MobilityConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    pub kind: String,
    #[serde(default)]
    pub t_g: Option<f64>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub kappa: Option<f64>,
    #[serde(default)]
    pub t_d: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    #[serde(default = "default_n_relays")]
    pub n_relays: usize,
    #[serde(default)]
    pub initial_infected_fraction: Option<f64>,
    pub horizon: f64,
    #[serde(default = "default_time_unit")]
    pub time_unit: String,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub master_seed: u64,
    pub backend: Backend,
    /// Spatial backend step; defaults to r / (5 v_max).
    #[serde(default)]
    pub step: Option<f64>,
}

fn default_n_relays() -> usize {
    100
}
fn default_time_unit() -> String {
    "h".into()
}
fn default_runs() -> usize {
    1
}

/// Sweep axis over scenario parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    NRelays,
    Lambda,
    TG,
    Epsilon,
    Kappa,
    TD,
}

impl SweepAxis {
    pub fn label(&self) -> &'static str {
        match self {
            SweepAxis::NRelays => "n_relays",
            SweepAxis::Lambda => "lambda",
            SweepAxis::TG => "t_g",
            SweepAxis::Epsilon => "epsilon",
            SweepAxis::Kappa => "kappa",
            SweepAxis::TD => "t_d",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiSection {
    pub t_d_values: Vec<f64>,
}

/// Raw scenario file; see the module docs for the schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: ScenarioSection,
    pub rate: RateConfig,
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub xi: Option<XiSection>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}

/// Pairwise and fluid forms of one meeting rate.
///
/// `fluid = n_relays * pairwise`: the fluid SIR coefficient that makes the
/// normalized equations the large-population limit of a simulator in which
/// every pair meets at the pairwise rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedRates {
    pub pairwise: f64,
    pub fluid: f64,
}

impl ResolvedRates {
    pub fn from_pairwise(pairwise: f64, n_relays: usize) -> Self {
        Self {
            pairwise,
            fluid: pairwise * n_relays as f64,
        }
    }

    pub fn from_fluid(fluid: f64, n_relays: usize) -> Self {
        Self {
            pairwise: fluid / n_relays as f64,
            fluid,
        }
    }
}

/// Scheme with every derived quantity pinned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedScheme {
    Timeout { t_g: f64, epsilon: Option<f64> },
    Antipacket { kappa: f64, t_d: Option<f64> },
}

/// A validated scenario ready to dispatch.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedScenario {
    pub backend: Backend,
    pub n_relays: usize,
    pub initial_infected_fraction: f64,
    pub initial_infected: usize,
    pub rates: ResolvedRates,
    pub rate_origin: String,
    pub scheme: ResolvedScheme,
    pub horizon: f64,
    pub runs: usize,
    pub master_seed: u64,
    pub time_unit: String,
    pub mobility: Option<MobilitySpec>,
    pub step: Option<f64>,
}

impl ResolvedScenario {
    /// Fluid-model parameters of this scenario.
    pub fn epidemic_params(&self) -> Result<EpidemicParams> {
        EpidemicParams::new(
            self.n_relays as u32,
            self.initial_infected_fraction,
            self.rates.fluid,
        )
    }

    pub fn scheme_kind(&self) -> SchemeKind {
        match self.scheme {
            ResolvedScheme::Timeout { t_g, .. } => SchemeKind::GlobalTimeout { t_g },
            ResolvedScheme::Antipacket { kappa, .. } => SchemeKind::Antipacket { kappa },
        }
    }

    pub fn meeting_scenario(&self) -> MeetingScenario {
        MeetingScenario {
            n_relays: self.n_relays,
            initial_infected: self.initial_infected,
            pairwise_rate: self.rates.pairwise,
            scheme: self.scheme_kind(),
            horizon: self.horizon,
        }
    }

    pub fn spatial_scenario(&self) -> Result<SpatialScenario> {
        let mobility = self.mobility.ok_or_else(|| {
            Error::Config("spatial backend needs a [rate.mobility] section".into())
        })?;
        Ok(SpatialScenario {
            n_relays: self.n_relays,
            initial_infected: self.initial_infected,
            step: self
                .step
                .unwrap_or_else(|| SpatialScenario::default_step(&mobility)),
            warmup: SpatialScenario::default_warmup(&mobility),
            mobility,
            scheme: self.scheme_kind(),
            horizon: self.horizon,
        })
    }

    /// `# key = value` lines describing every resolved field, emitted at the
    /// top of each table so no default stays silent.
    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("backend = {}", self.backend.label()),
            format!("n_relays = {}", self.n_relays),
            format!(
                "initial_infected_fraction = {} ({} node(s))",
                self.initial_infected_fraction, self.initial_infected
            ),
            format!(
                "lambda_pairwise = {} [1/{}] ({})",
                self.rates.pairwise, self.time_unit, self.rate_origin
            ),
            format!(
                "lambda_fluid = {} [1/{}] (n_relays x pairwise)",
                self.rates.fluid, self.time_unit
            ),
        ];
        match self.scheme {
            ResolvedScheme::Timeout { t_g, epsilon } => {
                lines.push(format!("scheme = timeout, t_g = {t_g}"));
                if let Some(eps) = epsilon {
                    lines.push(format!("epsilon (loss target behind t_g) = {eps}"));
                }
            }
            ResolvedScheme::Antipacket { kappa, t_d } => {
                lines.push(format!("scheme = antipacket, kappa = {kappa}"));
                if let Some(td) = t_d {
                    lines.push(format!("t_d = {td}"));
                }
            }
        }
        lines.push(format!("horizon = {} [{}]", self.horizon, self.time_unit));
        lines.push(format!("runs = {}", self.runs));
        lines.push(format!("master_seed = {}", self.master_seed));
        if let Some(mob) = &self.mobility {
            lines.push(format!(
                "mobility = {:?} L = {} km, r = {} km, v = [{}, {}] km/h",
                match mob.model {
                    MobilityModel::RandomWaypoint { .. } => "rwp",
                    MobilityModel::RandomDirection { .. } => "rd",
                },
                mob.side_length,
                mob.tx_range,
                mob.v_min,
                mob.v_max
            ));
            if let Some(step) = self.step {
                lines.push(format!("spatial_step = {step}"));
            }
        }
        lines.push(format!("time_unit = {}", self.time_unit));
        lines
    }
}

fn build_mobility_spec(cfg: &MobilityConfig) -> Result<MobilitySpec> {
    match cfg.model.as_str() {
        "rwp" => MobilitySpec::rwp(
            cfg.side_length,
            cfg.tx_range,
            cfg.v_min,
            cfg.v_max,
            cfg.waypoint_constant
                .unwrap_or(mobility::RWP_WAYPOINT_CONSTANT),
        ),
        "rd" => match cfg.leg_duration {
            Some(tau) => MobilitySpec::rd(cfg.side_length, cfg.tx_range, cfg.v_min, cfg.v_max, tau),
            None => {
                MobilitySpec::rd_default_leg(cfg.side_length, cfg.tx_range, cfg.v_min, cfg.v_max)
            }
        },
        other => Err(Error::Config(format!(
            "unknown mobility model '{other}' (expected rwp or rd)"
        ))),
    }
}

fn hours_label(unit: &str) -> bool {
    matches!(unit, "h" | "hr" | "hour" | "hours")
}

/// Validate the raw file and pin every derived quantity.
pub fn resolve(file: &ConfigFile) -> Result<ResolvedScenario> {
    let s = &file.scenario;
    if s.n_relays < 1 {
        return Err(Error::Config("n_relays must be at least 1".into()));
    }
    if !(s.horizon > 0.0) {
        return Err(Error::Config("horizon must be positive".into()));
    }
    if s.backend.is_simulator() && s.runs < 1 {
        return Err(Error::Config("simulation backends need runs >= 1".into()));
    }
    let i0 = s
        .initial_infected_fraction
        .unwrap_or(1.0 / s.n_relays as f64);
    if !(i0 > 0.0 && i0 <= 1.0) || s.n_relays as f64 * i0 < 1.0 - 1e-12 {
        return Err(Error::Config(format!(
            "initial infected fraction {i0} must lie in (0, 1] with n_relays * i0 >= 1"
        )));
    }
    let initial_infected = crate::sim::initial_infected_count(s.n_relays, i0);

    // rate: exactly one of explicit lambda / mobility spec
    let (rates, rate_origin, mobility_spec) = match (&file.rate.lambda, &file.rate.mobility) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "give either rate.lambda or [rate.mobility], not both".into(),
            ));
        }
        (None, None) => {
            return Err(Error::Config(
                "missing rate: set rate.lambda (+ lambda_scope) or [rate.mobility]".into(),
            ));
        }
        (Some(lambda), None) => {
            if !(*lambda > 0.0) {
                return Err(Error::Config(format!("lambda must be positive, got {lambda}")));
            }
            let scope = file.rate.lambda_scope.ok_or_else(|| {
                Error::Config(
                    "explicit lambda needs lambda_scope = \"pairwise\" or \"fluid\": \
                     simulators use the pairwise rate, the fluid equations use \
                     n_relays x pairwise"
                        .into(),
                )
            })?;
            let rates = match scope {
                LambdaScope::Pairwise => ResolvedRates::from_pairwise(*lambda, s.n_relays),
                LambdaScope::Fluid => ResolvedRates::from_fluid(*lambda, s.n_relays),
            };
            let origin = format!("explicit, declared {:?}", scope).to_lowercase();
            (rates, origin, None)
        }
        (None, Some(mob_cfg)) => {
            let spec = build_mobility_spec(mob_cfg)?;
            let e_vrel = match mob_cfg.relative_speed {
                RelativeSpeedSource::Reference => match spec.model {
                    MobilityModel::RandomWaypoint { .. } => mobility::RWP_RELATIVE_SPEED,
                    MobilityModel::RandomDirection { .. } => mobility::RD_RELATIVE_SPEED,
                },
                RelativeSpeedSource::Estimated => mobility::estimate_relative_speed(
                    &spec,
                    mob_cfg.relative_speed_samples.unwrap_or(200_000),
                    s.master_seed,
                )?,
            };
            let rate_per_hour = match mob_cfg.relative_speed {
                RelativeSpeedSource::Reference => mobility::meeting_rate_reference(&spec)?,
                RelativeSpeedSource::Estimated => match spec.model {
                    MobilityModel::RandomWaypoint { .. } => {
                        mobility::meeting_rate_rwp(&spec, e_vrel)?
                    }
                    MobilityModel::RandomDirection { .. } => {
                        mobility::meeting_rate_rd(&spec, e_vrel)?
                    }
                },
            };
            let pairwise = if hours_label(&s.time_unit) {
                if let Some(f) = mob_cfg.hours_per_time_unit {
                    if (f - 1.0).abs() > 1e-12 {
                        return Err(Error::Config(
                            "hours_per_time_unit must be 1 when the time unit is hours".into(),
                        ));
                    }
                }
                rate_per_hour
            } else {
                let factor = mob_cfg.hours_per_time_unit.ok_or_else(|| {
                    Error::Config(format!(
                        "mobility rates are per hour but time_unit = '{}': set \
                         rate.mobility.hours_per_time_unit to state the conversion",
                        s.time_unit
                    ))
                })?;
                if !(factor > 0.0) {
                    return Err(Error::Config("hours_per_time_unit must be positive".into()));
                }
                rate_per_hour * factor
            };
            let origin = format!(
                "mobility {} with E[V*] = {} km/h ({})",
                mob_cfg.model,
                e_vrel,
                match mob_cfg.relative_speed {
                    RelativeSpeedSource::Reference => "reference constant",
                    RelativeSpeedSource::Estimated => "estimated",
                }
            );
            (
                ResolvedRates::from_pairwise(pairwise, s.n_relays),
                origin,
                Some(spec),
            )
        }
    };

    if s.backend == Backend::Spatial && mobility_spec.is_none() {
        return Err(Error::Config(
            "spatial backend needs [rate.mobility], not an explicit lambda".into(),
        ));
    }
    if let (Some(step), Some(mob)) = (s.step, &mobility_spec) {
        if !(step > 0.0) || mob.v_max * step >= mob.tx_range / 4.0 {
            return Err(Error::Config(format!(
                "step {step} violates the displacement bound v_max * step < r/4"
            )));
        }
    }

    // scheme
    let params = EpidemicParams::new(s.n_relays as u32, i0, rates.fluid)?;
    let scheme = match file.scheme.kind.as_str() {
        "timeout" => {
            if file.scheme.kappa.is_some() || file.scheme.t_d.is_some() {
                return Err(Error::Config(
                    "kappa / t_d belong to the antipacket scheme".into(),
                ));
            }
            let epsilon = file
                .scheme
                .epsilon
                .map(ReliabilityTarget::new)
                .transpose()
                .map_err(|e| Error::Config(e.to_string()))?;
            let t_g = match (file.scheme.t_g, &epsilon) {
                (Some(tg), None) if tg >= 0.0 => tg,
                (Some(tg), None) => {
                    return Err(Error::Config(format!("t_g must be nonnegative, got {tg}")));
                }
                (None, Some(target)) => crate::analytic::optimal_global_timeout(&params, target),
                (Some(_), Some(_)) => {
                    return Err(Error::Config(
                        "give either t_g or epsilon for the timeout scheme, not both".into(),
                    ));
                }
                (None, None) => {
                    return Err(Error::Config(
                        "timeout scheme needs t_g or epsilon (the loss target the \
                         optimal timer is derived from)"
                            .into(),
                    ));
                }
            };
            ResolvedScheme::Timeout {
                t_g,
                epsilon: epsilon.map(|e| e.epsilon),
            }
        }
        "antipacket" => {
            if file.scheme.t_g.is_some() || file.scheme.epsilon.is_some() {
                return Err(Error::Config(
                    "t_g / epsilon belong to the timeout scheme".into(),
                ));
            }
            let kappa = file
                .scheme
                .kappa
                .ok_or_else(|| Error::Config("antipacket scheme needs kappa".into()))?;
            if !(0.0..=1.0).contains(&kappa) {
                return Err(Error::Config(format!("kappa must lie in [0, 1], got {kappa}")));
            }
            if let Some(td) = file.scheme.t_d {
                if !(0.0..=s.horizon).contains(&td) {
                    return Err(Error::Config(format!(
                        "t_d = {td} outside [0, horizon = {}]",
                        s.horizon
                    )));
                }
            }
            ResolvedScheme::Antipacket {
                kappa,
                t_d: file.scheme.t_d,
            }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown scheme '{other}' (expected timeout or antipacket)"
            )));
        }
    };

    Ok(ResolvedScenario {
        backend: s.backend,
        n_relays: s.n_relays,
        initial_infected_fraction: i0,
        initial_infected,
        rates,
        rate_origin,
        scheme,
        horizon: s.horizon,
        runs: s.runs,
        master_seed: s.master_seed,
        time_unit: s.time_unit.clone(),
        mobility: mobility_spec,
        step: s.step,
    })
}
