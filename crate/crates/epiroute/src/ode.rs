//! Fixed-step RK4 integrator for the fluid SIR systems.
//!
//! Serves as the numerical oracle for the closed forms in [`crate::analytic`]
//! and as the only solver for antipacket forwarding probabilities strictly
//! between 0 and 1. The integrated state is `[s, i, r, p, q]` where `p` is
//! the delivery CDF (`dp/dt = lambda i (1 - p)`) and `q` the running infected
//! integral (`dq/dt = i`).
//!
//! Scheme events are integration breakpoints, never straddled by a step:
//!
//! * global timeout at `t_g`: all infected mass moves to recovered,
//! * antipacket activation at `t_d`: the relay that met the destination
//!   recovers (`i -= 1/n`, `r += 1/n`) and the right-hand side switches to
//!   the dissemination system.

use crate::analytic::EpidemicParams;
use crate::error::{Error, Result};

/// Normalized compartment fractions at one instant; `s + i + r = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SirState {
    pub s: f64,
    pub i: f64,
    pub r: f64,
}

/// Immunity scheme selector for the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    GlobalTimeout { t_g: f64 },
    Antipacket { kappa: f64, t_d: f64 },
}

/// Fluid system specification: parameters plus the scheme in force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhsSpec {
    pub params: EpidemicParams,
    pub scheme: Scheme,
}

impl RhsSpec {
    pub fn new(params: EpidemicParams, scheme: Scheme) -> Result<Self> {
        match scheme {
            Scheme::GlobalTimeout { t_g } if !(t_g >= 0.0) => Err(Error::InvalidParameter(
                format!("global timeout must be nonnegative, got {t_g}"),
            )),
            Scheme::Antipacket { kappa, .. } if !(0.0..=1.0).contains(&kappa) => Err(
                Error::InvalidParameter(format!("kappa must lie in [0, 1], got {kappa}")),
            ),
            Scheme::Antipacket { t_d, .. } if !(t_d >= 0.0) => Err(Error::InvalidParameter(
                format!("delivery time must be nonnegative, got {t_d}"),
            )),
            _ => Ok(Self { params, scheme }),
        }
    }
}

/// Time-ordered solution samples.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SirState>,
    /// Delivery CDF `p(t)`; nondecreasing, in `[0, 1]`.
    pub delivery_p: Vec<f64>,
    /// Running `int_0^t i`, integrated as an ODE state.
    pub infected_integral: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one sample")
    }
}

/// Fluid extinction threshold `1/(2n)`: below half a node the fluid model has
/// lost physical meaning.
pub fn default_extinction_threshold(n_relays: u32) -> f64 {
    0.5 / f64::from(n_relays)
}

const MIN_SAMPLES_PER_PHASE: usize = 512;
const STATE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq)]
enum Phase {
    Spreading,
    PostTimeout,
    Antipacket { kappa: f64 },
}

fn rhs(params: &EpidemicParams, phase: Phase, y: &[f64; 5]) -> [f64; 5] {
    let lam = params.meeting_rate;
    let [s, i, _r, p, _q] = *y;
    match phase {
        Phase::Spreading => {
            let infect = lam * i * s;
            [-infect, infect, 0.0, lam * i * (1.0 - p), i]
        }
        Phase::PostTimeout => [0.0, 0.0, 0.0, lam * i * (1.0 - p), i],
        Phase::Antipacket { kappa } => {
            let infect = lam * i * s;
            let pressure = lam * kappa * y[2] + lam / params.n();
            let rec_i = pressure * i;
            let rec_s = pressure * s;
            [
                -infect - rec_s,
                infect - rec_i,
                rec_i + rec_s,
                lam * i * (1.0 - p),
                i,
            ]
        }
    }
}

fn rk4_step(params: &EpidemicParams, phase: Phase, y: &[f64; 5], h: f64) -> [f64; 5] {
    let add = |a: &[f64; 5], b: &[f64; 5], c: f64| {
        let mut out = *a;
        for k in 0..5 {
            out[k] += c * b[k];
        }
        out
    };
    let k1 = rhs(params, phase, y);
    let k2 = rhs(params, phase, &add(y, &k1, h / 2.0));
    let k3 = rhs(params, phase, &add(y, &k2, h / 2.0));
    let k4 = rhs(params, phase, &add(y, &k3, h));
    let mut out = *y;
    for k in 0..5 {
        out[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    out
}

fn check_state(y: &[f64; 5], t: f64) -> Result<()> {
    for (name, v) in [("s", y[0]), ("i", y[1]), ("r", y[2]), ("p", y[3])] {
        if !(-STATE_TOL..=1.0 + STATE_TOL).contains(&v) || !v.is_finite() {
            return Err(Error::Integration(format!(
                "state component {name} = {v} left [0, 1] at t = {t}"
            )));
        }
    }
    Ok(())
}

/// Integrate the selected fluid system over `[0, t_end]`.
///
/// `max_step` caps the RK4 step; each phase is additionally sampled at no
/// fewer than 512 points, and phase boundaries land exactly on grid points.
/// Initial state is `(s, i, r) = (1 - i0, i0, 0)` with `p = q = 0`.
pub fn integrate(spec: &RhsSpec, t_end: f64, max_step: f64) -> Result<Trajectory> {
    if !(t_end > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    if !(max_step > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "step control must be positive, got {max_step}"
        )));
    }
    let params = &spec.params;
    let i0 = params.initial_infected_fraction;

    // phase layout: breakpoint at the scheme event if it falls inside [0, t_end]
    let (event_t, pre, post) = match spec.scheme {
        Scheme::GlobalTimeout { t_g } if t_g < t_end => {
            (Some(t_g), Phase::Spreading, Phase::PostTimeout)
        }
        Scheme::Antipacket { kappa, t_d } if t_d < t_end => {
            (Some(t_d), Phase::Spreading, Phase::Antipacket { kappa })
        }
        _ => (None, Phase::Spreading, Phase::Spreading),
    };

    let mut traj = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        delivery_p: Vec::new(),
        infected_integral: Vec::new(),
    };
    let mut y = [1.0 - i0, i0, 0.0, 0.0, 0.0];
    let mut push = |t: f64, y: &[f64; 5]| {
        traj.times.push(t);
        traj.states.push(SirState {
            s: y[0],
            i: y[1],
            r: y[2],
        });
        traj.delivery_p.push(y[3].clamp(0.0, 1.0));
        traj.infected_integral.push(y[4]);
    };
    push(0.0, &y);

    let run_phase = |y: &mut [f64; 5],
                         phase: Phase,
                         t0: f64,
                         t1: f64,
                         push: &mut dyn FnMut(f64, &[f64; 5])|
     -> Result<()> {
        if t1 <= t0 {
            return Ok(());
        }
        let len = t1 - t0;
        let n_steps = ((len / max_step).ceil() as usize).max(MIN_SAMPLES_PER_PHASE);
        let h = len / n_steps as f64;
        for k in 1..=n_steps {
            *y = rk4_step(params, phase, y, h);
            let t = t0 + k as f64 * h;
            check_state(y, t)?;
            push(t, y);
        }
        Ok(())
    };

    match event_t {
        None => run_phase(&mut y, pre, 0.0, t_end, &mut push)?,
        Some(te) => {
            run_phase(&mut y, pre, 0.0, te, &mut push)?;
            // apply the scheme event as a jump, then re-sample the same instant
            match post {
                Phase::PostTimeout => {
                    y[2] += y[1];
                    y[1] = 0.0;
                }
                Phase::Antipacket { .. } => {
                    let dn = 1.0 / params.n();
                    let moved = dn.min(y[1]);
                    y[1] -= moved;
                    y[2] += moved;
                }
                Phase::Spreading => unreachable!(),
            }
            push(te, &y);
            run_phase(&mut y, post, te, t_end, &mut push)?;
        }
    }
    Ok(traj)
}

/// First sample time with `i <= threshold`, else the final trajectory time.
pub fn extinction_time(traj: &Trajectory, threshold: f64) -> f64 {
    debug_assert!(threshold > 0.0, "fluid i never reaches exactly zero");
    traj.times
        .iter()
        .zip(&traj.states)
        .find(|(_, st)| st.i <= threshold)
        .map(|(t, _)| *t)
        .unwrap_or_else(|| traj.final_time())
}

/// `n * int_0^{t_end} i dt` by the trapezoidal rule over the sample grid,
/// with linear interpolation of the final partial interval.
pub fn buffer_integral(traj: &Trajectory, n_relays: u32, t_end: f64) -> f64 {
    debug_assert!(t_end <= traj.final_time() + 1e-12);
    let mut acc = 0.0;
    for k in 1..traj.len() {
        let (t0, t1) = (traj.times[k - 1], traj.times[k]);
        let (i0, i1) = (traj.states[k - 1].i, traj.states[k].i);
        if t1 <= t_end {
            acc += 0.5 * (i0 + i1) * (t1 - t0);
        } else {
            if t_end > t0 {
                let frac = (t_end - t0) / (t1 - t0);
                let i_end = i0 + frac * (i1 - i0);
                acc += 0.5 * (i0 + i_end) * (t_end - t0);
            }
            break;
        }
    }
    f64::from(n_relays) * acc
}
