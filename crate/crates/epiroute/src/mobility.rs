//! Random-waypoint / random-direction mobility and pairwise meeting rates.
//!
//! Both models live on an `L x L` square; contact is decided with the
//! wrap-around (minimum-image) metric, inclusive at distance `r`. Movement
//! differs:
//!
//! * **Random waypoint (RWP)** draws a uniform point in the square and walks
//!   the straight in-square segment to it at a per-leg speed. The walk never
//!   crosses the boundary, so the long-run position density peaks in the
//!   middle; the `waypoint_constant` in [`meeting_rate_rwp`] is exactly that
//!   clustering factor. Zero pause time at waypoints.
//! * **Random direction (RD)** walks a fixed-duration leg in a uniform
//!   direction and wraps around the edges, so positions stay uniform and the
//!   rate formula needs no constant.
//!
//! Meeting-rate formulas (rates in 1/h for km, km/h inputs):
//!
//! ```text
//! rwp: 2 w r E[V*] / L^2          rd: 2 r E[V*] / L^2
//! ```
//!
//! `E[V*]` is the mean relative speed of two nodes under the model's
//! stationary velocity law. For RWP the leg length is independent of the
//! per-leg speed, so slow legs last longer and the stationary speed density
//! is proportional to `1/v`; RD legs have fixed duration, so per-leg uniform
//! speeds already are the stationary law. [`estimate_relative_speed`]
//! reproduces the standard constants (8.7 km/h RWP, 9.2 km/h RD for speeds
//! uniform on [4, 10]) to within half a percent.

use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Mean relative speed (km/h) conventionally used for RWP with speeds uniform on 4..10 km/h.
pub const RWP_RELATIVE_SPEED: f64 = 8.7;
/// Mean relative speed (km/h) conventionally used for RD with speeds uniform on 4..10 km/h.
pub const RD_RELATIVE_SPEED: f64 = 9.2;
/// Waypoint clustering constant of the RWP model on a square.
pub const RWP_WAYPOINT_CONSTANT: f64 = 1.3683;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MobilityModel {
    /// `waypoint_constant` is the positional clustering factor `w`.
    RandomWaypoint { waypoint_constant: f64 },
    /// `leg_duration` is the fixed time between direction redraws.
    RandomDirection { leg_duration: f64 },
}

/// Geometry and speed range shared by both models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilitySpec {
    pub model: MobilityModel,
    /// Side length `L` (km).
    pub side_length: f64,
    /// Transmission range `r` (km), `0 < r < L/2`.
    pub tx_range: f64,
    /// Speed bounds (km/h), `0 < v_min <= v_max`.
    pub v_min: f64,
    pub v_max: f64,
}

impl MobilitySpec {
    pub fn new(
        model: MobilityModel,
        side_length: f64,
        tx_range: f64,
        v_min: f64,
        v_max: f64,
    ) -> Result<Self> {
        if !(side_length > 0.0) {
            return Err(Error::InvalidParameter("side length must be positive".into()));
        }
        if !(tx_range > 0.0 && tx_range < side_length / 2.0) {
            return Err(Error::InvalidParameter(format!(
                "tx range must lie in (0, L/2), got r = {tx_range}, L = {side_length}"
            )));
        }
        if !(v_min > 0.0 && v_min <= v_max) {
            return Err(Error::InvalidParameter(format!(
                "speeds must satisfy 0 < v_min <= v_max, got [{v_min}, {v_max}]"
            )));
        }
        match model {
            MobilityModel::RandomWaypoint { waypoint_constant } if !(waypoint_constant > 0.0) => {
                return Err(Error::InvalidParameter(
                    "waypoint constant must be positive".into(),
                ));
            }
            MobilityModel::RandomDirection { leg_duration } if !(leg_duration > 0.0) => {
                return Err(Error::InvalidParameter(
                    "leg duration must be positive".into(),
                ));
            }
            _ => {}
        }
        Ok(Self {
            model,
            side_length,
            tx_range,
            v_min,
            v_max,
        })
    }

    pub fn rwp(side_length: f64, tx_range: f64, v_min: f64, v_max: f64, omega: f64) -> Result<Self> {
        Self::new(
            MobilityModel::RandomWaypoint { waypoint_constant: omega },
            side_length,
            tx_range,
            v_min,
            v_max,
        )
    }

    pub fn rd(side_length: f64, tx_range: f64, v_min: f64, v_max: f64, tau: f64) -> Result<Self> {
        Self::new(
            MobilityModel::RandomDirection { leg_duration: tau },
            side_length,
            tx_range,
            v_min,
            v_max,
        )
    }

    /// RD spec with the default leg duration: the time to cover distance `L`
    /// at the midpoint speed.
    pub fn rd_default_leg(side_length: f64, tx_range: f64, v_min: f64, v_max: f64) -> Result<Self> {
        let tau = side_length / ((v_min + v_max) / 2.0);
        Self::rd(side_length, tx_range, v_min, v_max, tau)
    }

    pub fn mean_speed(&self) -> f64 {
        (self.v_min + self.v_max) / 2.0
    }
}

/// Per-node kinematic state; `leg_remaining` is time until the next redraw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeKinematics {
    pub position: [f64; 2],
    pub velocity: [f64; 2],
    pub leg_remaining: f64,
}

/// Pairwise meeting rate of the RWP model: `2 w r E[V*] / L^2`.
pub fn meeting_rate_rwp(spec: &MobilitySpec, e_vrel: f64) -> Result<f64> {
    let MobilityModel::RandomWaypoint { waypoint_constant } = spec.model else {
        return Err(Error::InvalidParameter(
            "meeting_rate_rwp called with a non-RWP spec".into(),
        ));
    };
    if !(e_vrel > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "relative speed must be positive, got {e_vrel}"
        )));
    }
    Ok(2.0 * waypoint_constant * spec.tx_range * e_vrel / (spec.side_length * spec.side_length))
}

/// Pairwise meeting rate of the RD model: `2 r E[V*] / L^2`.
pub fn meeting_rate_rd(spec: &MobilitySpec, e_vrel: f64) -> Result<f64> {
    let MobilityModel::RandomDirection { .. } = spec.model else {
        return Err(Error::InvalidParameter(
            "meeting_rate_rd called with a non-RD spec".into(),
        ));
    };
    if !(e_vrel > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "relative speed must be positive, got {e_vrel}"
        )));
    }
    Ok(2.0 * spec.tx_range * e_vrel / (spec.side_length * spec.side_length))
}

/// Pairwise meeting rate with the model's conventional relative-speed constant.
pub fn meeting_rate_reference(spec: &MobilitySpec) -> Result<f64> {
    match spec.model {
        MobilityModel::RandomWaypoint { .. } => meeting_rate_rwp(spec, RWP_RELATIVE_SPEED),
        MobilityModel::RandomDirection { .. } => meeting_rate_rd(spec, RD_RELATIVE_SPEED),
    }
}

/// Per-leg speed: uniform on `[v_min, v_max]` for both models. The slow-leg
/// time bias of RWP builds up on its own because slow legs last longer.
fn draw_leg_speed(spec: &MobilitySpec, rng: &mut impl Rng) -> f64 {
    spec.v_min + rng.random::<f64>() * (spec.v_max - spec.v_min)
}

/// Speed under the *stationary* (time-weighted) law. RWP leg lengths are
/// speed-independent, so occupation time per leg scales with `1/v` and the
/// stationary density is proportional to `1/v`; RD legs have fixed duration,
/// leaving the per-leg uniform law unchanged.
fn draw_stationary_speed(spec: &MobilitySpec, rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.random();
    match spec.model {
        MobilityModel::RandomWaypoint { .. } => spec.v_min * (spec.v_max / spec.v_min).powf(u),
        MobilityModel::RandomDirection { .. } => spec.v_min + u * (spec.v_max - spec.v_min),
    }
}

/// Monte-Carlo estimate of `E[|v1 - v2|]` from independent velocity draws
/// under the model's stationary speed/direction law. Deterministic per seed.
pub fn estimate_relative_speed(spec: &MobilitySpec, samples: usize, seed: u64) -> Result<f64> {
    if samples < 1_000 {
        return Err(Error::InvalidParameter(format!(
            "need at least 1000 samples for a stable estimate, got {samples}"
        )));
    }
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0;
    for _ in 0..samples {
        let (s1, s2) = (
            draw_stationary_speed(spec, &mut rng),
            draw_stationary_speed(spec, &mut rng),
        );
        let (a1, a2) = (
            rng.random::<f64>() * std::f64::consts::TAU,
            rng.random::<f64>() * std::f64::consts::TAU,
        );
        let dx = s1 * a1.cos() - s2 * a2.cos();
        let dy = s1 * a1.sin() - s2 * a2.sin();
        acc += dx.hypot(dy);
    }
    Ok(acc / samples as f64)
}

fn wrap(x: f64, l: f64) -> f64 {
    let w = x.rem_euclid(l);
    if w == l {
        0.0
    } else {
        w
    }
}

/// Minimum-image (torus) distance between two points of `[0, L)^2`.
pub fn torus_distance(a: [f64; 2], b: [f64; 2], side_length: f64) -> f64 {
    let mut dx = (a[0] - b[0]).abs();
    let mut dy = (a[1] - b[1]).abs();
    dx = dx.min(side_length - dx);
    dy = dy.min(side_length - dy);
    dx.hypot(dy)
}

/// Contact predicate: torus distance at most `r` (boundary inclusive).
pub fn in_contact(a: &NodeKinematics, b: &NodeKinematics, spec: &MobilitySpec) -> bool {
    torus_distance(a.position, b.position, spec.side_length) <= spec.tx_range
}

fn fresh_leg(position: [f64; 2], spec: &MobilitySpec, rng: &mut impl Rng) -> NodeKinematics {
    let speed = draw_leg_speed(spec, rng);
    match spec.model {
        MobilityModel::RandomWaypoint { .. } => {
            // uniform waypoint; walk the straight in-square segment to it
            loop {
                let wp = [
                    rng.random::<f64>() * spec.side_length,
                    rng.random::<f64>() * spec.side_length,
                ];
                let d = [wp[0] - position[0], wp[1] - position[1]];
                let dist = d[0].hypot(d[1]);
                if dist < 1e-12 * spec.side_length {
                    continue;
                }
                return NodeKinematics {
                    position,
                    velocity: [d[0] / dist * speed, d[1] / dist * speed],
                    leg_remaining: dist / speed,
                };
            }
        }
        MobilityModel::RandomDirection { leg_duration } => {
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            NodeKinematics {
                position,
                velocity: [speed * theta.cos(), speed * theta.sin()],
                leg_remaining: leg_duration,
            }
        }
    }
}

/// Node at a uniform position with a freshly drawn leg.
pub fn spawn(spec: &MobilitySpec, rng: &mut impl Rng) -> NodeKinematics {
    let position = [
        rng.random::<f64>() * spec.side_length,
        rng.random::<f64>() * spec.side_length,
    ];
    fresh_leg(position, spec, rng)
}

/// Advance a node by `dt`, drawing new legs as they complete mid-step.
///
/// Speed is constant within a leg; positions are wrapped into `[0, L)` (RWP
/// segments stay inside the square on their own, so the wrap only acts for
/// RD or for hand-built states).
pub fn advance(
    node: &NodeKinematics,
    spec: &MobilitySpec,
    dt: f64,
    rng: &mut impl Rng,
) -> NodeKinematics {
    debug_assert!(dt > 0.0);
    let mut cur = *node;
    let mut budget = dt;
    loop {
        let step = budget.min(cur.leg_remaining);
        cur.position[0] = wrap(cur.position[0] + cur.velocity[0] * step, spec.side_length);
        cur.position[1] = wrap(cur.position[1] + cur.velocity[1] * step, spec.side_length);
        cur.leg_remaining -= step;
        budget -= step;
        if budget <= 0.0 {
            if cur.leg_remaining <= 0.0 {
                // leg ended exactly at the step boundary
                cur = fresh_leg(cur.position, spec, rng);
            }
            return cur;
        }
        cur = fresh_leg(cur.position, spec, rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::SeedableRng;

    fn rwp_spec() -> MobilitySpec {
        MobilitySpec::rwp(2.5352, 0.1, 4.0, 10.0, RWP_WAYPOINT_CONSTANT).unwrap()
    }

    fn rd_spec() -> MobilitySpec {
        MobilitySpec::rd_default_leg(2.5352, 0.1, 4.0, 10.0).unwrap()
    }

    #[test]
    fn meeting_rate_values() {
        let s = rwp_spec();
        assert_abs_diff_eq!(meeting_rate_rwp(&s, 8.7).unwrap(), 0.37043, epsilon = 1e-4);
        let s4 = MobilitySpec::rwp(4.0, 0.1, 4.0, 10.0, RWP_WAYPOINT_CONSTANT).unwrap();
        assert_relative_eq!(
            meeting_rate_rwp(&s4, 8.7).unwrap(),
            0.148802625,
            max_relative = 1e-9
        );
        let d = rd_spec();
        assert_relative_eq!(meeting_rate_rd(&d, 9.2).unwrap(), 0.2862815570649757, max_relative = 1e-12);
        let d4 = MobilitySpec::rd_default_leg(4.0, 0.1, 4.0, 10.0).unwrap();
        assert_relative_eq!(meeting_rate_rd(&d4, 9.2).unwrap(), 0.115, max_relative = 1e-12);
    }

    #[test]
    fn meeting_rate_scaling_laws() {
        let base = meeting_rate_rwp(&rwp_spec(), 8.7).unwrap();
        // inverse-square in L
        let wide = MobilitySpec::rwp(2.0 * 2.5352, 0.1, 4.0, 10.0, RWP_WAYPOINT_CONSTANT).unwrap();
        assert_relative_eq!(meeting_rate_rwp(&wide, 8.7).unwrap(), base / 4.0, max_relative = 1e-12);
        // linear in r and in the relative speed
        let big_r = MobilitySpec::rwp(2.5352, 0.2, 4.0, 10.0, RWP_WAYPOINT_CONSTANT).unwrap();
        assert_relative_eq!(meeting_rate_rwp(&big_r, 8.7).unwrap(), 2.0 * base, max_relative = 1e-12);
        assert_relative_eq!(meeting_rate_rwp(&rwp_spec(), 17.4).unwrap(), 2.0 * base, max_relative = 1e-12);
        // rd with the same r, speed equals rwp at waypoint constant 1
        let rwp1 = MobilitySpec::rwp(2.5352, 0.1, 4.0, 10.0, 1.0).unwrap();
        assert_relative_eq!(
            meeting_rate_rwp(&rwp1, 9.2).unwrap(),
            meeting_rate_rd(&rd_spec(), 9.2).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn meeting_rate_rejects_bad_inputs() {
        assert!(meeting_rate_rwp(&rd_spec(), 8.7).is_err());
        assert!(meeting_rate_rd(&rwp_spec(), 9.2).is_err());
        assert!(meeting_rate_rwp(&rwp_spec(), 0.0).is_err());
        assert!(meeting_rate_rd(&rd_spec(), -1.0).is_err());
    }

    #[test]
    fn spec_invariants_enforced() {
        assert!(MobilitySpec::rwp(0.0, 0.1, 4.0, 10.0, 1.0).is_err());
        assert!(MobilitySpec::rwp(2.0, 1.1, 4.0, 10.0, 1.0).is_err()); // r >= L/2
        assert!(MobilitySpec::rwp(2.0, 0.1, 0.0, 10.0, 1.0).is_err());
        assert!(MobilitySpec::rwp(2.0, 0.1, 5.0, 4.0, 1.0).is_err());
        assert!(MobilitySpec::rwp(2.0, 0.1, 4.0, 10.0, 0.0).is_err());
        assert!(MobilitySpec::rd(2.0, 0.1, 4.0, 10.0, 0.0).is_err());
    }

    // independent 3-d Simpson quadrature of E|v1 - v2| for iid speeds with
    // density f and uniform independent directions
    fn rel_speed_quadrature(f: &dyn Fn(f64) -> f64, v_min: f64, v_max: f64) -> f64 {
        let n = 160;
        let simpson_w = |k: usize| {
            if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            }
        };
        let hv = (v_max - v_min) / n as f64;
        let hp = std::f64::consts::PI / n as f64; // |v1-v2| even in phi around pi
        let mut acc = 0.0;
        let mut norm = 0.0;
        for a in 0..=n {
            let v1 = v_min + a as f64 * hv;
            for b in 0..=n {
                let v2 = v_min + b as f64 * hv;
                let w_ab = simpson_w(a) * simpson_w(b) * f(v1) * f(v2);
                let mut inner = 0.0;
                for c in 0..=n {
                    let phi = c as f64 * hp;
                    inner += simpson_w(c)
                        * (v1 * v1 + v2 * v2 - 2.0 * v1 * v2 * phi.cos()).sqrt();
                }
                acc += w_ab * inner * hp / 3.0;
                norm += w_ab * std::f64::consts::PI;
            }
        }
        acc / norm
    }

    #[test]
    fn relative_speed_rd_matches_quadrature_and_convention() {
        let oracle = rel_speed_quadrature(&|_| 1.0, 4.0, 10.0);
        assert_relative_eq!(oracle, 9.237, max_relative = 1e-3);
        let est = estimate_relative_speed(&rd_spec(), 400_000, 9).unwrap();
        assert_relative_eq!(est, oracle, max_relative = 5e-3);
        // the conventional 9.2 km/h is within 5%
        assert!((est - RD_RELATIVE_SPEED).abs() / RD_RELATIVE_SPEED < 0.05);
    }

    #[test]
    fn relative_speed_rwp_matches_time_weighted_quadrature() {
        let oracle = rel_speed_quadrature(&|v| 1.0 / v, 4.0, 10.0);
        assert_relative_eq!(oracle, 8.663, max_relative = 1e-3);
        let est = estimate_relative_speed(&rwp_spec(), 400_000, 9).unwrap();
        assert_relative_eq!(est, oracle, max_relative = 5e-3);
        assert!((est - RWP_RELATIVE_SPEED).abs() / RWP_RELATIVE_SPEED < 0.05);
    }

    #[test]
    fn relative_speed_degenerate_cases() {
        // equal speeds: E|v1 - v2| = (4/pi) v
        let s = MobilitySpec::rd(2.5352, 0.1, 7.0, 7.0, 0.3).unwrap();
        let est = estimate_relative_speed(&s, 200_000, 1).unwrap();
        assert_relative_eq!(est, 4.0 / std::f64::consts::PI * 7.0, max_relative = 5e-3);
        // near-stationary nodes: estimate collapses toward zero
        let slow = MobilitySpec::rd(2.5352, 0.1, 1e-6, 1e-6, 0.3).unwrap();
        assert!(estimate_relative_speed(&slow, 10_000, 1).unwrap() < 1e-5);
        assert!(estimate_relative_speed(&s, 10, 1).is_err());
    }

    #[test]
    fn contact_metric() {
        let spec = rwp_spec();
        let node = |x: f64, y: f64| NodeKinematics {
            position: [x, y],
            velocity: [0.0, 0.0],
            leg_remaining: 1.0,
        };
        let l = spec.side_length;
        assert!(in_contact(&node(1.0, 1.0), &node(1.0, 1.0), &spec));
        // wrap-around: distance 0.02 across the seam
        assert!(in_contact(&node(0.01, 0.0), &node(l - 0.01, 0.0), &spec));
        // boundary inclusive at exactly r (anchored at 0 so dx == r bit-exactly)
        assert!(in_contact(&node(0.0, 1.0), &node(spec.tx_range, 1.0), &spec));
        assert!(!in_contact(&node(0.0, 1.0), &node(spec.tx_range + 1e-9, 1.0), &spec));
        // symmetry and translation by (L, 0)
        let a = node(0.3, 0.7);
        let b = node(2.5, 0.71);
        assert_eq!(in_contact(&a, &b, &spec), in_contact(&b, &a, &spec));
        assert_abs_diff_eq!(
            torus_distance([0.3 + l, 0.7], b.position, l),
            torus_distance(a.position, b.position, l),
            epsilon = 1e-12
        );
    }

    #[test]
    fn advance_wraps_on_torus() {
        let spec = rd_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let node = NodeKinematics {
            position: [spec.side_length - 0.05, 1.0],
            velocity: [1.0, 0.0],
            leg_remaining: 10.0,
        };
        let out = advance(&node, &spec, 0.1, &mut rng);
        assert_abs_diff_eq!(out.position[0], 0.05, epsilon = 1e-12);
        assert_abs_diff_eq!(out.position[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn advance_redraws_at_leg_end_with_continuous_position() {
        let spec = rd_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let node = NodeKinematics {
            position: [1.0, 1.0],
            velocity: [2.0, 0.0],
            leg_remaining: 0.05,
        };
        // dt exactly ends the leg: position advances the full leg, velocity redrawn
        let out = advance(&node, &spec, 0.05, &mut rng);
        assert_abs_diff_eq!(out.position[0], 1.1, epsilon = 1e-12);
        assert_ne!(out.velocity, node.velocity);
        let MobilityModel::RandomDirection { leg_duration } = spec.model else {
            unreachable!()
        };
        assert_abs_diff_eq!(out.leg_remaining, leg_duration, epsilon = 1e-12);
    }

    #[test]
    fn advance_preserves_speed_bounds_within_legs() {
        for spec in [rwp_spec(), rd_spec()] {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let mut node = spawn(&spec, &mut rng);
            for _ in 0..2_000 {
                node = advance(&node, &spec, 0.013, &mut rng);
                let speed = node.velocity[0].hypot(node.velocity[1]);
                assert!(speed >= spec.v_min - 1e-9 && speed <= spec.v_max + 1e-9);
                assert!((0.0..spec.side_length).contains(&node.position[0]));
                assert!((0.0..spec.side_length).contains(&node.position[1]));
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn meeting_rates_scale_homogeneously(
                l in 0.5f64..50.0, r_frac in 0.01f64..0.4,
                ev in 0.5f64..30.0, c in 1.1f64..4.0, omega in 0.2f64..3.0,
            ) {
                let r = r_frac * l;
                let base = MobilitySpec::rwp(l, r, 4.0, 10.0, omega).unwrap();
                let b = meeting_rate_rwp(&base, ev).unwrap();
                // linear in r and in the relative speed, inverse-square in l
                let wide = MobilitySpec::rwp(c * l, r, 4.0, 10.0, omega).unwrap();
                prop_assert!((meeting_rate_rwp(&wide, ev).unwrap() - b / (c * c)).abs() <= 1e-12 * b);
                if c * r < l / 2.0 {
                    let big = MobilitySpec::rwp(l, c * r, 4.0, 10.0, omega).unwrap();
                    prop_assert!((meeting_rate_rwp(&big, ev).unwrap() - c * b).abs() <= 1e-12 * c * b);
                }
                prop_assert!((meeting_rate_rwp(&base, c * ev).unwrap() - c * b).abs() <= 1e-12 * c * b);
                // omega = 1 collapses onto the rd expression
                let unit = MobilitySpec::rwp(l, r, 4.0, 10.0, 1.0).unwrap();
                let rd = MobilitySpec::rd(l, r, 4.0, 10.0, 1.0).unwrap();
                prop_assert!((meeting_rate_rwp(&unit, ev).unwrap()
                    - meeting_rate_rd(&rd, ev).unwrap()).abs() <= 1e-15);
            }

            #[test]
            fn torus_distance_symmetric_and_shift_invariant(
                ax in 0.0f64..10.0, ay in 0.0f64..10.0,
                bx in 0.0f64..10.0, by in 0.0f64..10.0,
            ) {
                let l = 10.0;
                let d = torus_distance([ax, ay], [bx, by], l);
                prop_assert!((d - torus_distance([bx, by], [ax, ay], l)).abs() <= 1e-12);
                let shifted = torus_distance([(ax + l) % l, ay], [bx, by], l);
                prop_assert!((d - shifted).abs() <= 1e-9);
                prop_assert!(d <= l / std::f64::consts::SQRT_2 + 1e-9);
            }
        }
    }

    // occupancy histogram over a k x k grid from one long trajectory
    fn occupancy(spec: &MobilitySpec, k: usize, steps: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut node = spawn(spec, &mut rng);
        // burn-in so the walk forgets the uniform start
        for _ in 0..5_000 {
            node = advance(&node, spec, 0.01, &mut rng);
        }
        let mut counts = vec![0.0; k * k];
        for _ in 0..steps {
            node = advance(&node, spec, 0.01, &mut rng);
            let cx = ((node.position[0] / spec.side_length * k as f64) as usize).min(k - 1);
            let cy = ((node.position[1] / spec.side_length * k as f64) as usize).min(k - 1);
            counts[cy * k + cx] += 1.0;
        }
        counts
    }

    #[test]
    fn rd_long_run_positions_uniform() {
        let spec = rd_spec();
        let k = 5;
        let steps = 400_000;
        let counts = occupancy(&spec, k, steps, 7);
        let expect = steps as f64 / (k * k) as f64;
        let stat: f64 = counts.iter().map(|c| (c - expect).powi(2) / expect).sum();
        // serial correlation along the trajectory inflates the statistic above a
        // true iid chi-square; a generous multiple of the 5% quantile (36.4 at
        // 24 dof) still separates uniform (rd) cleanly from clustered (rwp).
        let crit = crate::stats::chi_squared_quantile(0.95, (k * k - 1) as f64);
        assert!(
            stat < 60.0 * crit,
            "rd occupancy far from uniform: chi2 = {stat:.1}, crit = {crit:.1}"
        );
    }

    #[test]
    fn rwp_long_run_positions_cluster_centrally() {
        // bounded-square waypoint walk: middle cells carry visibly more mass
        let spec = rwp_spec();
        let k = 5;
        let counts = occupancy(&spec, k, 400_000, 7);
        let center = counts[2 * k + 2];
        let corners = (counts[0] + counts[k - 1] + counts[k * (k - 1)] + counts[k * k - 1]) / 4.0;
        assert!(
            center > 2.0 * corners,
            "expected central clustering, center = {center}, corner mean = {corners}"
        );
        let expect = 400_000.0 / (k * k) as f64;
        let stat: f64 = counts.iter().map(|c| (c - expect).powi(2) / expect).sum();
        let crit = crate::stats::chi_squared_quantile(0.95, (k * k - 1) as f64);
        assert!(stat > crit, "rwp occupancy should reject uniformity");
    }
}
