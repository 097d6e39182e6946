//! Optimal global timers and their buffer cost across loss targets.
//!
//! For each tolerated loss rate `eps`, the timer `t_g*` is the smallest
//! value meeting the delivery constraint with equality, and the buffer cost
//! at that timer collapses to the Pareto contour `(n / lambda) ln(1/eps)` —
//! whose per-node share does not depend on the population size.
//!
//! ```text
//! cargo run --example optimal_timeout
//! ```

use epiroute::analytic::{
    delivery_probability, infected_integral_pre_timeout, optimal_global_timeout, pareto_buffer,
    EpidemicParams, ReliabilityTarget,
};

fn main() {
    let lambdas = [0.37043, 0.14817];
    println!("fluid rate coefficients: {lambdas:?} (1/h)");
    println!();
    println!(
        "{:>8} {:>10} {:>12} {:>14} {:>12} {:>14}",
        "eps", "n", "t_g*", "buffer b*", "b*/n", "p(t_g*)"
    );
    for eps in [0.5, 0.1, 0.01, 1e-3] {
        let target = ReliabilityTarget::new(eps).unwrap();
        for n in [10u32, 100] {
            for lam in lambdas {
                let params = EpidemicParams::single_source(n, lam).unwrap();
                let t_g = optimal_global_timeout(&params, &target);
                let b = pareto_buffer(&params, &target);
                let p = delivery_probability(
                    &params,
                    infected_integral_pre_timeout(&params, t_g),
                );
                println!(
                    "{eps:>8} {n:>4} @{lam:<6} {t_g:>12.4} {b:>14.3} {:>12.4} {p:>14.10}",
                    b / f64::from(n)
                );
            }
        }
    }
    println!();
    println!("note: p(t_g*) lands on 1 - eps exactly; b*/n depends only on lambda and eps");
}
