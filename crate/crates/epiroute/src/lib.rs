//! Buffer-occupancy / delivery-reliability tradeoff models for epidemic routing
//! in intermittently connected (delay-tolerant) networks.
//!
//! A single packet spreads through a population of mobile relays like an
//! infection: every encounter copies it, so delivery is fast but buffers fill
//! up with redundant copies. Two immunity schemes bound that cost:
//!
//! * **global timeout** — every carrier drops the packet when a shared timer
//!   `t_g` expires (lossy delivery with a tunable loss rate), and
//! * **antipacket dissemination** — the destination's acknowledgment spreads
//!   epidemically and purges buffered copies, with per-contact forwarding
//!   probability `kappa` (lossless delivery).
//!
//! The crate provides four interchangeable views of the same system:
//!
//! * [`analytic`] — closed-form SIR expressions: infected-fraction
//!   trajectories, the delivery CDF, the optimal timeout, the Pareto buffer
//!   contour, and the antipacket buffer-occupancy integral,
//! * [`ode`] — a fixed-step RK4 integrator for the fluid SIR systems, the
//!   oracle for the closed forms and the only solver for `kappa` in (0,1),
//! * [`sim`] — Monte-Carlo ground truth with two contact backends: an
//!   event-driven exponential meeting process and a spatial stepper driven by
//!   [`mobility`] (random-waypoint / random-direction models),
//! * [`commands`] — the CLI layer that parses scenario configs and emits
//!   delimited tables pairing model predictions with simulation estimates.
//!
//! Rate conventions are explicit throughout: simulators work with the
//! *pairwise* meeting rate between two nodes, while the fluid equations use a
//! rate coefficient equal to `n_relays` times the pairwise rate. See
//! [`config::ResolvedRates`] for the one place where the two meet.

// validations use `!(x > 0.0)` so NaN fails them too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod analytic;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod mobility;
pub mod ode;
pub mod sim;
pub mod stats;
pub mod table;

pub use error::{Error, Result};
