//! Fluid SIR trajectories: numeric integration against the closed forms.
//!
//! Integrates both immunity schemes, prints sampled states, and reports the
//! worst deviation of the infected curve from its logistic closed form
//! during the spreading phase.
//!
//! ```text
//! cargo run --example trajectories
//! ```

use epiroute::analytic::{infected_fraction, EpidemicParams};
use epiroute::ode::{extinction_time, integrate, RhsSpec, Scheme};

fn main() {
    let params = EpidemicParams::single_source(100, 0.37043).unwrap();

    let t_g = 20.382;
    let spec = RhsSpec::new(params, Scheme::GlobalTimeout { t_g }).unwrap();
    let traj = integrate(&spec, 30.0, 0.01 / params.meeting_rate).unwrap();
    println!("global timeout, t_g = {t_g}:");
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "t", "s", "i", "r", "p");
    for k in (0..traj.len()).step_by(traj.len() / 12) {
        let st = traj.states[k];
        println!(
            "{:>8.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            traj.times[k], st.s, st.i, st.r, traj.delivery_p[k]
        );
    }
    let worst = traj
        .times
        .iter()
        .zip(&traj.states)
        .filter(|(t, _)| **t <= t_g)
        .map(|(t, st)| (st.i - infected_fraction(&params, *t)).abs())
        .fold(0.0_f64, f64::max)
        ;
    println!("max |i_ode - i_closed| before the timer: {worst:.2e}");
    println!();

    let t_d = 12.0;
    for kappa in [0.0, 0.5, 1.0] {
        let spec = RhsSpec::new(params, Scheme::Antipacket { kappa, t_d }).unwrap();
        let traj = integrate(&spec, 120.0, 0.01 / params.meeting_rate).unwrap();
        let te = extinction_time(&traj, 0.5 / params.n());
        println!(
            "antipacket kappa = {kappa}: infected falls below half a node at t = {te:.2} \
             (delivery at {t_d})"
        );
    }
}
