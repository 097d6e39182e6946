//! Monte-Carlo ground truth: one packet spreading among `n_relays` relay
//! nodes (node 0 is the source) plus one destination (node id `n_relays`),
//! under either immunity scheme.
//!
//! Two interchangeable contact backends share the routing rules below:
//! [`meeting::run_meeting_process`] drives an exponential pairwise meeting
//! process event by event, [`spatial::run_spatial`] steps mobility models and
//! fires edge-triggered contacts. Routing on a contact:
//!
//! * infected -> susceptible transfers the packet (always, both schemes);
//! * the first contact between an infected node and the destination records
//!   the delivery delay `t_d`;
//! * **global timeout**: at `t_g` every infected node drops the packet and
//!   recovers; delivery itself changes no relay state;
//! * **antipacket**: the delivering relay recovers at `t_d` (it receives the
//!   acknowledgment in the same exchange); afterwards the destination always
//!   converts susceptible/infected contacts to recovered, while recovered
//!   relays convert them with independent probability `kappa` per contact.
//!   Infected relays keep forwarding the data until they receive the
//!   antipacket; a recovered relay offered the data ignores it.
//!
//! Buffer occupancy integrates the infected head-count exactly between
//! events. A run ends at extinction (no infected nodes) or at the horizon.

pub mod batch;
pub mod meeting;
pub mod spatial;

pub use batch::{batch_meeting, batch_spatial, AggregateStats};
pub use meeting::{run_meeting_process, run_meeting_process_with_sink, MeetingScenario};
pub use spatial::{run_spatial, run_spatial_from, run_spatial_with_sink, SpatialScenario};

use crate::error::{Error, Result};
use rand::Rng;

/// SIR compartment of one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compartment {
    Susceptible,
    Infected,
    Recovered,
}

/// Per-node bookkeeping. Transitions are S->I, S->R, I->R only.
#[derive(Debug, Clone, Copy)]
pub struct NodeState {
    pub compartment: Compartment,
    pub infection_time: Option<f64>,
    pub recovery_time: Option<f64>,
}

/// A pairwise meeting at time `t`; `a != b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactEvent {
    pub t: f64,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Contact,
    Infect,
    Recover,
    Deliver,
    Timeout,
}

impl EventKind {
    pub fn label(&self) -> &'static str {
        match self {
            EventKind::Contact => "contact",
            EventKind::Infect => "infect",
            EventKind::Recover => "recover",
            EventKind::Deliver => "deliver",
            EventKind::Timeout => "timeout",
        }
    }
}

/// One record of the optional per-run event log.
///
/// `a` carries the acting node (infector, antipacket carrier, delivering
/// relay); `b` the node whose state changes. Timer expiries are logged per
/// recovering node with `a == b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEvent {
    pub t: f64,
    pub kind: EventKind,
    pub a: usize,
    pub b: usize,
}

impl SimEvent {
    /// Delimited-text form: `t,kind,a,b`.
    pub fn to_csv(&self) -> String {
        format!("{},{},{},{}", self.t, self.kind.label(), self.a, self.b)
    }
}

/// Receiver for the optional per-run event log.
pub trait EventSink {
    fn record(&mut self, event: &SimEvent);
}

/// Drops all events.
pub struct NullSink;

impl EventSink for NullSink {
    fn record(&mut self, _: &SimEvent) {}
}

impl EventSink for Vec<SimEvent> {
    fn record(&mut self, event: &SimEvent) {
        self.push(*event);
    }
}

/// Writes `t,kind,a,b` lines to the wrapped writer.
pub struct CsvSink<W: std::io::Write> {
    writer: W,
}

impl<W: std::io::Write> CsvSink<W> {
    pub fn new(writer: W) -> Self {
        Self { writer }
    }
}

impl<W: std::io::Write> EventSink for CsvSink<W> {
    fn record(&mut self, event: &SimEvent) {
        let _ = writeln!(self.writer, "{}", event.to_csv());
    }
}

/// Immunity scheme applied by a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeKind {
    GlobalTimeout { t_g: f64 },
    Antipacket { kappa: f64 },
}

impl SchemeKind {
    fn validate(&self) -> Result<()> {
        match self {
            SchemeKind::GlobalTimeout { t_g } if !(*t_g >= 0.0) => Err(Error::InvalidParameter(
                format!("global timeout must be nonnegative, got {t_g}"),
            )),
            SchemeKind::Antipacket { kappa } if !(0.0..=1.0).contains(kappa) => Err(
                Error::InvalidParameter(format!("kappa must lie in [0, 1], got {kappa}")),
            ),
            _ => Ok(()),
        }
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunMetrics {
    pub delivered: bool,
    /// First infected-destination contact, if any.
    pub t_d: Option<f64>,
    /// Timeout scheme only: timer expired without delivery.
    pub lost: bool,
    /// Exact integral of the infected head-count over the run (node x time).
    pub buffer_integral: f64,
    /// Time the infected count reached zero, or the run end if it never did.
    pub t_extinct: f64,
}

/// Shared routing state and rules; backends feed it contacts in time order.
pub(crate) struct EpidemicCore {
    pub scheme: SchemeKind,
    pub nodes: Vec<NodeState>,
    pub destination: usize,
    pub n_infected: usize,
    pub t_d: Option<f64>,
}

impl EpidemicCore {
    pub fn new(n_relays: usize, initial_infected: usize, scheme: SchemeKind) -> Result<Self> {
        if n_relays < 1 {
            return Err(Error::InvalidParameter("need at least one relay".into()));
        }
        if initial_infected < 1 || initial_infected > n_relays {
            return Err(Error::InvalidParameter(format!(
                "initial infected count {initial_infected} outside 1..={n_relays}"
            )));
        }
        scheme.validate()?;
        let mut nodes = vec![
            NodeState {
                compartment: Compartment::Susceptible,
                infection_time: None,
                recovery_time: None,
            };
            n_relays + 1
        ];
        for node in nodes.iter_mut().take(initial_infected) {
            node.compartment = Compartment::Infected;
            node.infection_time = Some(0.0);
        }
        Ok(Self {
            scheme,
            nodes,
            destination: n_relays,
            n_infected: initial_infected,
            t_d: None,
        })
    }

    fn antipacket_active(&self) -> bool {
        matches!(self.scheme, SchemeKind::Antipacket { .. }) && self.t_d.is_some()
    }

    fn infect(&mut self, t: f64, source: usize, target: usize, sink: &mut dyn EventSink) {
        debug_assert_eq!(self.nodes[target].compartment, Compartment::Susceptible);
        self.nodes[target].compartment = Compartment::Infected;
        self.nodes[target].infection_time = Some(t);
        self.n_infected += 1;
        sink.record(&SimEvent {
            t,
            kind: EventKind::Infect,
            a: source,
            b: target,
        });
    }

    fn recover(&mut self, t: f64, cause: usize, target: usize, sink: &mut dyn EventSink) {
        let node = &mut self.nodes[target];
        debug_assert_ne!(node.compartment, Compartment::Recovered);
        if node.compartment == Compartment::Infected {
            self.n_infected -= 1;
        }
        node.compartment = Compartment::Recovered;
        node.recovery_time = Some(t);
        sink.record(&SimEvent {
            t,
            kind: EventKind::Recover,
            a: cause,
            b: target,
        });
    }

    /// Apply routing for one contact; `rng` only feeds the antipacket
    /// Bernoulli(kappa) trials.
    pub fn contact(
        &mut self,
        ev: ContactEvent,
        rng: &mut impl Rng,
        sink: &mut dyn EventSink,
    ) {
        debug_assert_ne!(ev.a, ev.b);
        sink.record(&SimEvent {
            t: ev.t,
            kind: EventKind::Contact,
            a: ev.a.min(ev.b),
            b: ev.a.max(ev.b),
        });
        if ev.a == self.destination || ev.b == self.destination {
            let relay = if ev.a == self.destination { ev.b } else { ev.a };
            return self.destination_contact(ev.t, relay, sink);
        }
        let (ca, cb) = (self.nodes[ev.a].compartment, self.nodes[ev.b].compartment);
        use Compartment::*;
        match (ca, cb) {
            (Infected, Susceptible) => self.infect(ev.t, ev.a, ev.b, sink),
            (Susceptible, Infected) => self.infect(ev.t, ev.b, ev.a, sink),
            (Recovered, Susceptible) | (Recovered, Infected)
                if self.antipacket_active() && self.kappa_trial(rng) =>
            {
                self.recover(ev.t, ev.a, ev.b, sink);
            }
            (Susceptible, Recovered) | (Infected, Recovered)
                if self.antipacket_active() && self.kappa_trial(rng) =>
            {
                self.recover(ev.t, ev.b, ev.a, sink);
            }
            _ => {}
        }
    }

    fn kappa_trial(&self, rng: &mut impl Rng) -> bool {
        let SchemeKind::Antipacket { kappa } = self.scheme else {
            unreachable!("recovered relays only exist pre-horizon under antipacket")
        };
        kappa >= 1.0 || rng.random::<f64>() < kappa
    }

    fn destination_contact(&mut self, t: f64, relay: usize, sink: &mut dyn EventSink) {
        use Compartment::*;
        match self.nodes[relay].compartment {
            Infected => {
                if self.t_d.is_none() {
                    self.t_d = Some(t);
                    sink.record(&SimEvent {
                        t,
                        kind: EventKind::Deliver,
                        a: relay,
                        b: self.destination,
                    });
                    if matches!(self.scheme, SchemeKind::Antipacket { .. }) {
                        // the acknowledgment flows back in the same exchange
                        self.recover(t, self.destination, relay, sink);
                        self.nodes[self.destination].compartment = Recovered;
                        self.nodes[self.destination].recovery_time = Some(t);
                    }
                } else if self.antipacket_active() {
                    self.recover(t, self.destination, relay, sink);
                }
            }
            Susceptible => {
                if self.antipacket_active() {
                    self.recover(t, self.destination, relay, sink);
                }
            }
            Recovered => {}
        }
    }

    /// Timer expiry: every infected relay drops the packet.
    pub fn apply_timeout(&mut self, t_g: f64, sink: &mut dyn EventSink) {
        for id in 0..self.nodes.len() {
            if self.nodes[id].compartment == Compartment::Infected {
                self.nodes[id].compartment = Compartment::Recovered;
                self.nodes[id].recovery_time = Some(t_g);
                sink.record(&SimEvent {
                    t: t_g,
                    kind: EventKind::Timeout,
                    a: id,
                    b: id,
                });
            }
        }
        self.n_infected = 0;
    }

    pub fn metrics(&self, run_end: f64, t_extinct: Option<f64>) -> RunMetrics {
        RunMetrics {
            delivered: self.t_d.is_some(),
            t_d: self.t_d,
            lost: matches!(self.scheme, SchemeKind::GlobalTimeout { .. }) && self.t_d.is_none(),
            buffer_integral: 0.0, // filled by the backend, which owns the accrual
            t_extinct: t_extinct.unwrap_or(run_end),
        }
    }
}

/// Initial infected relay count for a fraction `i0`: ids `0..ceil(n * i0)`.
pub fn initial_infected_count(n_relays: usize, i0: f64) -> usize {
    ((n_relays as f64 * i0).ceil() as usize).clamp(1, n_relays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn core_validation() {
        assert!(EpidemicCore::new(0, 1, SchemeKind::Antipacket { kappa: 1.0 }).is_err());
        assert!(EpidemicCore::new(10, 0, SchemeKind::Antipacket { kappa: 1.0 }).is_err());
        assert!(EpidemicCore::new(10, 11, SchemeKind::Antipacket { kappa: 1.0 }).is_err());
        assert!(EpidemicCore::new(10, 1, SchemeKind::Antipacket { kappa: 1.5 }).is_err());
        assert!(EpidemicCore::new(10, 1, SchemeKind::GlobalTimeout { t_g: -1.0 }).is_err());
    }

    #[test]
    fn routing_rules_on_contacts() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut log: Vec<SimEvent> = Vec::new();
        let mut core = EpidemicCore::new(3, 1, SchemeKind::Antipacket { kappa: 1.0 }).unwrap();
        // infect relay 1, then deliver via relay 1, then antipacket sweeps
        core.contact(ContactEvent { t: 1.0, a: 0, b: 1 }, &mut rng, &mut log);
        assert_eq!(core.nodes[1].compartment, Compartment::Infected);
        assert_eq!(core.n_infected, 2);
        core.contact(ContactEvent { t: 2.0, a: 1, b: 3 }, &mut rng, &mut log);
        assert_eq!(core.t_d, Some(2.0));
        assert_eq!(core.nodes[1].compartment, Compartment::Recovered);
        assert_eq!(core.nodes[3].compartment, Compartment::Recovered);
        // recovered relay 1 vaccinates susceptible relay 2 (kappa = 1)
        core.contact(ContactEvent { t: 3.0, a: 2, b: 1 }, &mut rng, &mut log);
        assert_eq!(core.nodes[2].compartment, Compartment::Recovered);
        // destination clears the still-infected source
        core.contact(ContactEvent { t: 4.0, a: 3, b: 0 }, &mut rng, &mut log);
        assert_eq!(core.n_infected, 0);
        // a recovered node offered the data ignores it
        let kinds: Vec<EventKind> = log.iter().map(|e| e.kind).collect();
        assert!(kinds.contains(&EventKind::Deliver));
        assert_eq!(core.nodes[1].infection_time, Some(1.0));
        assert_eq!(core.nodes[1].recovery_time, Some(2.0));
    }

    #[test]
    fn timeout_scheme_keeps_spreading_after_delivery() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut core = EpidemicCore::new(3, 1, SchemeKind::GlobalTimeout { t_g: 10.0 }).unwrap();
        core.contact(ContactEvent { t: 1.0, a: 0, b: 3 }, &mut rng, &mut NullSink);
        assert_eq!(core.t_d, Some(1.0));
        // source stays infected and keeps forwarding
        assert_eq!(core.nodes[0].compartment, Compartment::Infected);
        core.contact(ContactEvent { t: 2.0, a: 0, b: 1 }, &mut rng, &mut NullSink);
        assert_eq!(core.n_infected, 2);
        core.apply_timeout(10.0, &mut NullSink);
        assert_eq!(core.n_infected, 0);
        assert_eq!(core.nodes[1].compartment, Compartment::Recovered);
    }

    #[test]
    fn kappa_zero_only_destination_disseminates() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut core = EpidemicCore::new(3, 2, SchemeKind::Antipacket { kappa: 0.0 }).unwrap();
        core.contact(ContactEvent { t: 1.0, a: 1, b: 3 }, &mut rng, &mut NullSink);
        assert_eq!(core.t_d, Some(1.0));
        // recovered relay 1 cannot vaccinate at kappa = 0
        core.contact(ContactEvent { t: 2.0, a: 1, b: 0 }, &mut rng, &mut NullSink);
        assert_eq!(core.nodes[0].compartment, Compartment::Infected);
        // the destination still can
        core.contact(ContactEvent { t: 3.0, a: 3, b: 0 }, &mut rng, &mut NullSink);
        assert_eq!(core.nodes[0].compartment, Compartment::Recovered);
    }

    #[test]
    fn initial_infected_rounding() {
        assert_eq!(initial_infected_count(100, 0.01), 1);
        assert_eq!(initial_infected_count(100, 0.015), 2);
        assert_eq!(initial_infected_count(100, 1.0), 100);
        assert_eq!(initial_infected_count(3, 1e-9), 1);
    }

    #[test]
    fn event_csv_shape() {
        let ev = SimEvent {
            t: 1.5,
            kind: EventKind::Infect,
            a: 2,
            b: 7,
        };
        assert_eq!(ev.to_csv(), "1.5,infect,2,7");
    }
}
