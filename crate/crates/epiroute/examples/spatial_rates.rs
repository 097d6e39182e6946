//! Measure two-node meeting rates under both mobility models and compare
//! them with the closed-form rate expressions.
//!
//! ```text
//! cargo run --release --example spatial_rates
//! ```

use epiroute::mobility::{
    meeting_rate_rd, meeting_rate_rwp, MobilitySpec, RD_RELATIVE_SPEED, RWP_RELATIVE_SPEED,
    RWP_WAYPOINT_CONSTANT,
};
use epiroute::sim::spatial::inter_meeting_gaps;
use epiroute::stats;

fn measure(name: &str, spec: &MobilitySpec, target: f64) {
    println!("{name}: formula rate = {target:.5} /h");
    for seed0 in [0u64, 100, 200] {
        let mut gaps = Vec::new();
        for k in 0..16 {
            gaps.extend(inter_meeting_gaps(spec, 150.0 / target, seed0 + k));
        }
        let rate = stats::exponential_rate_mle(&gaps);
        let d = stats::ks_exponential(&gaps, rate);
        println!(
            "  seeds {seed0}..{}: n = {:5}, fitted rate = {rate:.5} ({:+.2}%), \
             KS D = {d:.4} (5% crit {:.4})",
            seed0 + 15,
            gaps.len(),
            (rate / target - 1.0) * 100.0,
            stats::ks_critical_5pct(gaps.len()),
        );
    }
}

fn main() {
    let rwp = MobilitySpec::rwp(2.5352, 0.1, 4.0, 10.0, RWP_WAYPOINT_CONSTANT).unwrap();
    let rwp_rate = meeting_rate_rwp(&rwp, RWP_RELATIVE_SPEED).unwrap();
    measure("random waypoint", &rwp, rwp_rate);

    let rd = MobilitySpec::rd_default_leg(2.5352, 0.1, 4.0, 10.0).unwrap();
    let rd_rate = meeting_rate_rd(&rd, RD_RELATIVE_SPEED).unwrap();
    measure("random direction", &rd, rd_rate);
}
