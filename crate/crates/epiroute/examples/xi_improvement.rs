//! Relative buffer improvement `xi` of fully over null antipacket
//! dissemination: larger when delivery happens early, and larger when nodes
//! meet rarely — exactly when cooperative acknowledgment spreading has the
//! most redundant copies to purge.
//!
//! ```text
//! cargo run --example xi_improvement
//! ```

use epiroute::analytic::{
    antipacket_buffer, relative_improvement, AntipacketPolicy, EpidemicParams,
};

fn main() {
    let t_f = 20_000.0;
    println!("n = 100, horizon t_f = {t_f}");
    println!(
        "{:>8} {:>22} {:>22}",
        "t_d", "xi @ lambda=0.37043", "xi @ lambda=0.14817"
    );
    for t_d in [5.0, 10.0, 20.0, 40.0, 80.0, 160.0] {
        let mut cells = Vec::new();
        for lam in [0.37043, 0.14817] {
            let params = EpidemicParams::single_source(100, lam).unwrap();
            let b = |kappa: f64| {
                antipacket_buffer(
                    &params,
                    &AntipacketPolicy::new(kappa, t_f).unwrap(),
                    t_d,
                )
                .unwrap()
            };
            cells.push(relative_improvement(b(0.0), b(1.0)).unwrap());
        }
        println!("{t_d:>8} {:>22.6} {:>22.6}", cells[0], cells[1]);
    }
    println!();
    println!("xi decreases with t_d and is larger for the smaller meeting rate");
}
