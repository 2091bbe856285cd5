use aqc_core::*;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn main() {
    let pi = std::f64::consts::PI;
    println!("tau scan at alpha = 6, dim = 256:");
    for k in 1..=12 {
        let tau = 0.25 * pi * k as f64;
        let experiment = AqcExperiment {
            space: FockSpace::new(256, 1.0, 1.0).unwrap(),
            profile: SplittingProfile::flat_ends(1.0, 2.0, -4.0, 4.0).unwrap(),
            tau,
            pair: StatePairSpec::Coherent { alpha_i: c(-6.0), alpha_f: c(6.0) },
        };
        let o = experiment.run().unwrap();
        println!("tau={:5.2}pi  Pf={:.6e} Pr={:.6e} 1-R={:+.6e}", tau/pi, o.forward.probability, o.reverse.probability, o.report.one_minus_r);
    }
    println!("alpha scan at tau = pi, dim = 256:");
    for &alpha in &[2.0f64, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] {
        let experiment = AqcExperiment {
            space: FockSpace::new(256, 1.0, 1.0).unwrap(),
            profile: SplittingProfile::flat_ends(1.0, 2.0, -4.0, 4.0).unwrap(),
            tau: pi,
            pair: StatePairSpec::Coherent { alpha_i: c(-alpha), alpha_f: c(alpha) },
        };
        let o = experiment.run().unwrap();
        println!("alpha={alpha}  Pf={:.6e} Pr={:.6e} 1-R={:+.6e} D={:.3e} eps={:.3e}", o.forward.probability, o.reverse.probability, o.report.one_minus_r, o.report.d, o.report.epsilon);
    }
}
