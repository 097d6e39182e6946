//! Spatial stepper backend: nodes move under a mobility model and contacts
//! fire edge-triggered, once per transmission opportunity.
//!
//! Each step advances every node by `step`, accrues buffer with the infected
//! count held over the step, then processes contact events in ascending
//! `(min id, max id)` order so runs are reproducible. A pair produces a
//! contact event when it enters range, and again while still in range when
//! either node's compartment has changed since the pair's last processed
//! event: carriers forward to everything within range, so a node infected
//! (or handed the antipacket) mid-contact shares it with its current
//! neighbors instead of waiting for a re-entry. A pair whose compartments
//! are unchanged is never re-processed, which keeps the per-contact
//! antipacket coin single-shot.
//!
//! The step must keep per-node displacement under a quarter of the
//! transmission range or grazing encounters would slip between samples.

use super::{Compartment, ContactEvent, EpidemicCore, EventSink, NullSink, RunMetrics, SchemeKind};
use crate::error::{Error, Result};
use crate::mobility::{self, MobilitySpec, NodeKinematics};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Spatial run description. `step` defaults (via [`SpatialScenario::with_default_step`])
/// to a fifth of the range-crossing time at top speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialScenario {
    pub n_relays: usize,
    pub initial_infected: usize,
    pub mobility: MobilitySpec,
    /// Time step; `v_max * step < r / 4` is enforced.
    pub step: f64,
    pub scheme: SchemeKind,
    pub horizon: f64,
    /// Mobility warm-up before the epidemic clock starts, so positions and
    /// velocities are drawn from the walk's stationary regime (the waypoint
    /// model clusters centrally; rate formulas describe that regime, not the
    /// uniform initial draw). No contacts are processed while warming up.
    pub warmup: f64,
}

impl SpatialScenario {
    /// Default step: displacement at top speed is `r / 5` per step.
    pub fn default_step(mobility: &MobilitySpec) -> f64 {
        mobility.tx_range / (5.0 * mobility.v_max)
    }

    /// Default warm-up: four average leg times, enough for the waypoint walk
    /// to forget the uniform start.
    pub fn default_warmup(mobility: &MobilitySpec) -> f64 {
        4.0 * mobility.side_length / mobility.mean_speed()
    }

    pub fn with_default_step(
        n_relays: usize,
        initial_infected: usize,
        mobility: MobilitySpec,
        scheme: SchemeKind,
        horizon: f64,
    ) -> Self {
        Self {
            n_relays,
            initial_infected,
            step: Self::default_step(&mobility),
            warmup: Self::default_warmup(&mobility),
            mobility,
            scheme,
            horizon,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) {
            return Err(Error::InvalidParameter("step must be positive".into()));
        }
        let max_disp = self.mobility.v_max * self.step;
        if max_disp >= self.mobility.tx_range / 4.0 {
            return Err(Error::InvalidParameter(format!(
                "step {} moves up to {} km per step, >= r/4 = {}; contacts would be missed",
                self.step,
                max_disp,
                self.mobility.tx_range / 4.0
            )));
        }
        if !(self.horizon > 0.0) {
            return Err(Error::InvalidParameter("horizon must be positive".into()));
        }
        if !(self.warmup >= 0.0) {
            return Err(Error::InvalidParameter("warmup must be nonnegative".into()));
        }
        Ok(())
    }
}

pub fn run_spatial(scn: &SpatialScenario, seed: u64) -> Result<RunMetrics> {
    run_spatial_with_sink(scn, seed, &mut NullSink)
}

pub fn run_spatial_with_sink(
    scn: &SpatialScenario,
    seed: u64,
    sink: &mut dyn EventSink,
) -> Result<RunMetrics> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<NodeKinematics> = (0..=scn.n_relays)
        .map(|_| mobility::spawn(&scn.mobility, &mut rng))
        .collect();
    run_spatial_inner(scn, nodes, &mut rng, sink)
}

/// Run from caller-placed kinematics (`n_relays + 1` entries, destination
/// last). Placement-sensitive tests and demos use this entry point.
pub fn run_spatial_from(
    scn: &SpatialScenario,
    nodes: Vec<NodeKinematics>,
    seed: u64,
    sink: &mut dyn EventSink,
) -> Result<RunMetrics> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_spatial_inner(scn, nodes, &mut rng, sink)
}

pub(crate) fn run_spatial_with_rng(
    scn: &SpatialScenario,
    rng: &mut ChaCha8Rng,
    sink: &mut dyn EventSink,
) -> Result<RunMetrics> {
    let nodes: Vec<NodeKinematics> = (0..=scn.n_relays)
        .map(|_| mobility::spawn(&scn.mobility, rng))
        .collect();
    run_spatial_inner(scn, nodes, rng, sink)
}

fn pair_index(a: usize, b: usize, n_nodes: usize) -> usize {
    debug_assert!(a < b);
    a * (2 * n_nodes - a - 1) / 2 + (b - a - 1)
}

fn run_spatial_inner(
    scn: &SpatialScenario,
    mut nodes: Vec<NodeKinematics>,
    rng: &mut ChaCha8Rng,
    sink: &mut dyn EventSink,
) -> Result<RunMetrics> {
    scn.validate()?;
    let n_nodes = scn.n_relays + 1;
    if nodes.len() != n_nodes {
        return Err(Error::InvalidParameter(format!(
            "expected {n_nodes} kinematic states, got {}",
            nodes.len()
        )));
    }
    let mut core = EpidemicCore::new(scn.n_relays, scn.initial_infected, scn.scheme)?;
    let timer = match scn.scheme {
        SchemeKind::GlobalTimeout { t_g } => Some(t_g),
        SchemeKind::Antipacket { .. } => None,
    };

    if scn.warmup > 0.0 {
        let steps = (scn.warmup / scn.step).ceil() as usize;
        for _ in 0..steps {
            for node in nodes.iter_mut() {
                *node = mobility::advance(node, &scn.mobility, scn.step, rng);
            }
        }
    }

    // per-pair compartment signature at the last processed contact; None
    // while out of range. A stale signature re-arms the pair.
    let mut processed: Vec<Option<(Compartment, Compartment)>> =
        vec![None; n_nodes * (n_nodes - 1) / 2];

    let mut t = 0.0_f64;
    let mut buffer = 0.0_f64;
    let mut t_extinct = None;
    let mut fresh: Vec<(usize, usize)> = Vec::new();

    if timer.is_some_and(|tg| tg <= 0.0) {
        core.apply_timeout(0.0, sink);
        let mut m = core.metrics(0.0, Some(0.0));
        m.buffer_integral = 0.0;
        return Ok(m);
    }

    // pairs already in range at t = 0 never "entered"; mark them processed
    for a in 0..n_nodes {
        for b in (a + 1)..n_nodes {
            if mobility::in_contact(&nodes[a], &nodes[b], &scn.mobility) {
                processed[pair_index(a, b, n_nodes)] =
                    Some((core.nodes[a].compartment, core.nodes[b].compartment));
            }
        }
    }

    let run_end = loop {
        if t >= scn.horizon {
            break scn.horizon;
        }
        // never straddle the timer or the horizon
        let mut dt = scn.step.min(scn.horizon - t);
        if let Some(tg) = timer {
            if tg > t && tg - t < dt {
                dt = tg - t;
            }
        }
        for node in nodes.iter_mut() {
            *node = mobility::advance(node, &scn.mobility, dt, rng);
        }
        buffer += core.n_infected as f64 * dt;
        t += dt;

        if timer.is_some_and(|tg| (t - tg).abs() < 1e-12 || t >= tg) {
            core.apply_timeout(t, sink);
            t_extinct = Some(t);
            break t;
        }

        fresh.clear();
        for a in 0..n_nodes {
            for b in (a + 1)..n_nodes {
                let idx = pair_index(a, b, n_nodes);
                if !mobility::in_contact(&nodes[a], &nodes[b], &scn.mobility) {
                    processed[idx] = None;
                    continue;
                }
                let cur = (core.nodes[a].compartment, core.nodes[b].compartment);
                if processed[idx] != Some(cur) {
                    fresh.push((a, b));
                }
            }
        }
        // already ascending (a, b) from the scan order; keep it explicit
        fresh.sort_unstable();
        for &(a, b) in &fresh {
            core.contact(ContactEvent { t, a, b }, rng, sink);
            processed[pair_index(a, b, n_nodes)] =
                Some((core.nodes[a].compartment, core.nodes[b].compartment));
        }
        if core.n_infected == 0 {
            t_extinct = Some(t);
            break t;
        }
    };

    let mut metrics = core.metrics(run_end, t_extinct);
    metrics.buffer_integral = buffer;
    Ok(metrics)
}

/// Sample two-node inter-meeting gaps (end of one contact to start of the
/// next) over a long horizon; the raw material for exponential-fit checks.
pub fn inter_meeting_gaps(spec: &MobilitySpec, horizon: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = spec.tx_range / (5.0 * spec.v_max);
    let mut a = mobility::spawn(spec, &mut rng);
    let mut b = mobility::spawn(spec, &mut rng);
    let mut gaps = Vec::new();
    let mut was_in = mobility::in_contact(&a, &b, spec);
    let mut last_end: Option<f64> = None;
    let mut t = 0.0;
    while t < horizon {
        a = mobility::advance(&a, spec, step, &mut rng);
        b = mobility::advance(&b, spec, step, &mut rng);
        t += step;
        let now = mobility::in_contact(&a, &b, spec);
        if now && !was_in {
            if let Some(end) = last_end {
                gaps.push(t - end);
            }
        } else if !now && was_in {
            last_end = Some(t);
        }
        was_in = now;
    }
    gaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobility::MobilityModel;
    use crate::sim::{EventKind, SimEvent};

    fn slow_spec() -> MobilitySpec {
        // near-stationary random-direction nodes with enormous legs
        MobilitySpec::new(
            MobilityModel::RandomDirection { leg_duration: 1e9 },
            4.0,
            0.1,
            1e-9,
            1e-9,
        )
        .unwrap()
    }

    fn still(x: f64, y: f64) -> NodeKinematics {
        NodeKinematics {
            position: [x, y],
            velocity: [0.0, 0.0],
            leg_remaining: 1e9,
        }
    }

    #[test]
    fn step_bound_enforced() {
        let spec = MobilitySpec::rd_default_leg(2.5352, 0.1, 4.0, 10.0).unwrap();
        let mut scn = SpatialScenario::with_default_step(
            3,
            1,
            spec,
            SchemeKind::Antipacket { kappa: 1.0 },
            1.0,
        );
        scn.step = 0.1 / (2.0 * 10.0); // displacement r/2 per step
        assert!(run_spatial(&scn, 0).is_err());
    }

    #[test]
    fn static_out_of_range_nodes_never_deliver() {
        let spec = slow_spec();
        let scn = SpatialScenario {
            n_relays: 3,
            initial_infected: 2,
            mobility: spec,
            step: 0.5,
            scheme: SchemeKind::Antipacket { kappa: 1.0 },
            horizon: 50.0,
            warmup: 0.0,
        };
        // all pairwise torus distances far above r = 0.1
        let nodes = vec![
            still(0.2, 0.2),
            still(2.2, 0.2),
            still(0.2, 2.2),
            still(2.2, 2.2),
        ];
        let m = run_spatial_from(&scn, nodes, 1, &mut NullSink).unwrap();
        assert!(!m.delivered);
        assert_eq!(m.t_extinct, 50.0);
        // two initially infected nodes hold their copies for the whole run
        assert!((m.buffer_integral - 2.0 * 50.0).abs() < 1e-9);
    }

    #[test]
    fn collision_course_fires_exactly_one_contact() {
        let spec = MobilitySpec::new(
            MobilityModel::RandomDirection { leg_duration: 1e9 },
            4.0,
            0.1,
            1.0,
            1.0,
        )
        .unwrap();
        let scn = SpatialScenario {
            n_relays: 1,
            initial_infected: 1,
            mobility: spec,
            step: 0.004,
            scheme: SchemeKind::GlobalTimeout { t_g: 1e6 },
            horizon: 1.0,
            warmup: 0.0,
        };
        // head-on approach along x, meeting near the middle, then separating
        let nodes = vec![
            NodeKinematics {
                position: [1.0, 1.0],
                velocity: [1.0, 0.0],
                leg_remaining: 1e9,
            },
            NodeKinematics {
                position: [2.0, 1.0],
                velocity: [-1.0, 0.0],
                leg_remaining: 1e9,
            },
        ];
        let mut log: Vec<SimEvent> = Vec::new();
        let m = run_spatial_from(&scn, nodes, 1, &mut log).unwrap();
        let contacts = log
            .iter()
            .filter(|e| e.kind == EventKind::Contact)
            .count();
        assert_eq!(contacts, 1, "edge trigger must fire once per range entry");
        assert!(m.delivered);
        // first the gap of 1.0 km closes to 0.1: t ~ (1.0 - 0.1) / 2
        let td = m.t_d.unwrap();
        assert!((td - 0.45).abs() < 0.01, "t_d = {td}");
    }

    #[test]
    fn timeout_applies_mid_step_exactly() {
        let spec = slow_spec();
        let scn = SpatialScenario {
            n_relays: 2,
            initial_infected: 1,
            mobility: spec,
            step: 0.5,
            scheme: SchemeKind::GlobalTimeout { t_g: 1.23 },
            horizon: 50.0,
            warmup: 0.0,
        };
        let nodes = vec![still(0.2, 0.2), still(2.2, 0.2), still(0.2, 2.2)];
        let m = run_spatial_from(&scn, nodes, 1, &mut NullSink).unwrap();
        assert_eq!(m.t_extinct, 1.23);
        assert!((m.buffer_integral - 1.23).abs() < 1e-12);
        assert!(m.lost);
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = MobilitySpec::rd_default_leg(2.5352, 0.1, 4.0, 10.0).unwrap();
        let scn = SpatialScenario::with_default_step(
            10,
            1,
            spec,
            SchemeKind::Antipacket { kappa: 0.5 },
            30.0,
        );
        let a = run_spatial(&scn, 5).unwrap();
        let b = run_spatial(&scn, 5).unwrap();
        assert_eq!(a, b);
    }
}
