use aqc_core::*;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn main() {
    let pi = std::f64::consts::PI;
    let profiles: Vec<(&str, SplittingProfile)> = vec![
        ("flat", SplittingProfile::flat_ends(1.0, 2.0, -1.0, 1.0).unwrap()),
        ("sin2", SplittingProfile::sinusoidal(1.0, 2.0, -1.0, 1.0).unwrap()),
        ("linear", SplittingProfile::linear(1.0, 2.0, -1.0, 1.0).unwrap()),
    ];
    let mut max_dev = [0.0f64; 3];
    println!("chi    q_exact   q_flat     q_sin      q_linear");
    for k in 0..10 {
        let chi = 0.1 + 0.1 * k as f64;
        let k_t = 1.0 / (2.0 * chi);
        let q_exact = q_factor(chi);
        let mut row = format!("{chi:.2}  {q_exact:.6}");
        for (i, (_, profile)) in profiles.iter().enumerate() {
            let experiment = AqcExperiment {
                space: FockSpace::new(256, 1.0, k_t).unwrap(),
                profile: profile.clone(),
                tau: pi,
                pair: StatePairSpec::Coherent { alpha_i: c(-5.0), alpha_f: c(4.0) },
            };
            let o = experiment.run().unwrap();
            let q = o.q_inferred.unwrap();
            max_dev[i] = max_dev[i].max(((q - q_exact) / q_exact).abs());
            row += &format!("  {q:.6}");
        }
        println!("{row}");
    }
    println!("max relative deviations: flat={:.4e} sin={:.4e} linear={:.4e}", max_dev[0], max_dev[1], max_dev[2]);
}
