//! Event-driven exponential meeting-process backend.
//!
//! Every unordered node pair (destination included) meets at independent
//! exponential times with the configured pairwise rate; each meeting renews
//! the pair's clock, which for exponentials is the same as superposing one
//! Poisson process per pair. The backend therefore draws the next global
//! meeting from `Exp(rate * n_pairs)` and picks the pair uniformly — exactly
//! equivalent and much cheaper.
//!
//! The RNG is consumed strictly in event order (one waiting time plus one
//! pair per meeting, plus antipacket coin flips), so two runs with the same
//! seed and different timer values share their contact history up to the
//! earlier timer — the coupling behind the loss/buffer monotonicity checks.

use super::{ContactEvent, EpidemicCore, EventSink, NullSink, RunMetrics, SchemeKind};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Meeting-process run description. Rates are *pairwise*: the fluid-model
/// coefficient for the same population is `n_relays` times larger.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeetingScenario {
    pub n_relays: usize,
    pub initial_infected: usize,
    /// Pairwise meeting rate, 1/time-unit.
    pub pairwise_rate: f64,
    pub scheme: SchemeKind,
    pub horizon: f64,
}

impl MeetingScenario {
    fn validate(&self) -> Result<()> {
        if !(self.pairwise_rate > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "pairwise rate must be positive, got {}",
                self.pairwise_rate
            )));
        }
        if !(self.horizon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        Ok(())
    }
}

pub fn run_meeting_process(scn: &MeetingScenario, seed: u64) -> Result<RunMetrics> {
    run_meeting_process_with_sink(scn, seed, &mut NullSink)
}

pub fn run_meeting_process_with_sink(
    scn: &MeetingScenario,
    seed: u64,
    sink: &mut dyn EventSink,
) -> Result<RunMetrics> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_meeting_with_rng(scn, &mut rng, sink)
}

pub(crate) fn run_meeting_with_rng(
    scn: &MeetingScenario,
    rng: &mut ChaCha8Rng,
    sink: &mut dyn EventSink,
) -> Result<RunMetrics> {
    scn.validate()?;
    let mut core = EpidemicCore::new(scn.n_relays, scn.initial_infected, scn.scheme)?;
    let n_nodes = scn.n_relays + 1;
    let n_pairs = n_nodes * (n_nodes - 1) / 2;
    let total_rate = scn.pairwise_rate * n_pairs as f64;

    let timer = match scn.scheme {
        SchemeKind::GlobalTimeout { t_g } => Some(t_g),
        SchemeKind::Antipacket { .. } => None,
    };

    let mut t = 0.0_f64;
    let mut buffer = 0.0_f64;
    let mut t_extinct = None;

    // timer already expired at t = 0
    if timer.is_some_and(|tg| tg <= 0.0) {
        core.apply_timeout(0.0, sink);
        let mut m = core.metrics(0.0, Some(0.0));
        m.buffer_integral = 0.0;
        return Ok(m);
    }

    let run_end = loop {
        // inverse-CDF exponential: u in [0, 1) keeps the log argument positive
        let u: f64 = rng.random();
        let wait = -(-u).ln_1p() / total_rate;
        let t_next = t + wait;
        if let Some(tg) = timer {
            if tg <= scn.horizon && t_next >= tg {
                buffer += core.n_infected as f64 * (tg - t);
                core.apply_timeout(tg, sink);
                t_extinct = Some(tg);
                break tg;
            }
        }
        if t_next >= scn.horizon {
            buffer += core.n_infected as f64 * (scn.horizon - t);
            break scn.horizon;
        }
        buffer += core.n_infected as f64 * wait;
        t = t_next;
        let (a, b) = sample_pair(rng, n_nodes);
        core.contact(ContactEvent { t, a, b }, rng, sink);
        if core.n_infected == 0 {
            t_extinct = Some(t);
            break t;
        }
    };

    let mut metrics = core.metrics(run_end, t_extinct);
    metrics.buffer_integral = buffer;
    Ok(metrics)
}

/// Uniform unordered pair with constant RNG consumption (two draws).
fn sample_pair(rng: &mut impl Rng, n_nodes: usize) -> (usize, usize) {
    let a = rng.random_range(0..n_nodes);
    let mut b = rng.random_range(0..n_nodes - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}
