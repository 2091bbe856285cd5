use aqc_core::*;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn main() {
    let pi = std::f64::consts::PI;
    // trough at alpha_i = -5, crest at alpha_f = 4
    let sin_states = SplittingProfile::sinusoidal(1.0, 2.0, -5.0, 4.0).unwrap();
    let mut max_dev = 0.0f64;
    for k in 0..10 {
        let chi = 0.1 + 0.1 * k as f64;
        let k_t = 1.0 / (2.0 * chi);
        let q_exact = q_factor(chi);
        let experiment = AqcExperiment {
            space: FockSpace::new(256, 1.0, k_t).unwrap(),
            profile: sin_states.clone(),
            tau: pi,
            pair: StatePairSpec::Coherent { alpha_i: c(-5.0), alpha_f: c(4.0) },
        };
        let o = experiment.run().unwrap();
        let q = o.q_inferred.unwrap();
        max_dev = max_dev.max(((q - q_exact) / q_exact).abs());
        println!("chi={chi:.2} q_exact={q_exact:.6} q_sin={q:.6}");
    }
    println!("max relative deviation: {max_dev:.4e}");
}
