//! The two contact backends must tell the same story wherever the
//! exponential-meeting abstraction is valid.
//!
//! Validity hinges on contact density: with `n pi r^2 / L^2` expected
//! concurrent neighbors per node well below one, pairwise meetings look like
//! independent Poisson streams and the backends agree on the mean delivery
//! delay to a few percent. At the reference geometry (100 nodes, L = 2.5352,
//! r = 0.1; about 0.49 neighbors each) meetings arrive in correlated local
//! bursts, carriers cluster, and many forwarding opportunities are redundant
//! — the spatial epidemic is measurably slower than any independent-pairs
//! model at the same pairwise rate. Both regimes are pinned here: the sparse
//! one as the interchangeability check, the dense one as the documented
//! breakdown of the approximation.

use epiroute::mobility::{meeting_rate_rwp, MobilitySpec, RWP_RELATIVE_SPEED, RWP_WAYPOINT_CONSTANT};
use epiroute::sim::batch::{batch_meeting_metrics, batch_spatial_metrics};
use epiroute::sim::{MeetingScenario, RunMetrics, SchemeKind, SpatialScenario};

fn mean_delivery(ms: &[RunMetrics]) -> f64 {
    let tds: Vec<f64> = ms.iter().filter_map(|m| m.t_d).collect();
    assert!(
        tds.len() as f64 >= 0.99 * ms.len() as f64,
        "nearly every run should deliver within the horizon"
    );
    tds.iter().sum::<f64>() / tds.len() as f64
}

fn backend_gap(n: usize, side_length: f64, horizon: f64, runs: usize) -> f64 {
    let mobility = MobilitySpec::rwp(side_length, 0.1, 4.0, 10.0, RWP_WAYPOINT_CONSTANT).unwrap();
    let rate = meeting_rate_rwp(&mobility, RWP_RELATIVE_SPEED).unwrap();
    let spatial = SpatialScenario::with_default_step(
        n,
        1,
        mobility,
        SchemeKind::Antipacket { kappa: 1.0 },
        horizon,
    );
    let meeting = MeetingScenario {
        n_relays: n,
        initial_infected: 1,
        pairwise_rate: rate,
        scheme: SchemeKind::Antipacket { kappa: 1.0 },
        horizon,
    };
    let sp = mean_delivery(&batch_spatial_metrics(&spatial, runs, 31).unwrap());
    let mp = mean_delivery(&batch_meeting_metrics(&meeting, runs * 5, 32).unwrap());
    sp / mp - 1.0
}

#[test]
fn sparse_regime_backends_agree_on_mean_delay() {
    // 20 nodes on a 5.07 km square: ~0.025 neighbors per node
    let gap = backend_gap(20, 2.0 * 2.5352, 40.0, 400);
    assert!(
        gap.abs() < 0.15,
        "sparse-regime backends disagree by {:.1}% (tolerance 15%)",
        gap * 100.0
    );
}

#[test]
fn dense_reference_geometry_shows_meeting_correlation_gap() {
    // 100 nodes on the 2.5352 km square: ~0.49 neighbors per node; the
    // spatial epidemic runs well outside the 15% band no matter how exactly
    // the pairwise rate matches, because meetings are no longer independent
    let gap = backend_gap(100, 2.5352, 3.0, 250);
    assert!(
        (0.25..1.5).contains(&gap),
        "expected the documented 30-90% slowdown at density ~0.49, measured {:+.1}%",
        gap * 100.0
    );
}
