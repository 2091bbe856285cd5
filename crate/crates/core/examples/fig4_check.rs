use aqc_core::*;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn main() {
    let pi = std::f64::consts::PI;
    for &dim in &[128usize, 256, 512] {
        let experiment = AqcExperiment {
            space: FockSpace::new(dim, 1.0, 1.0).unwrap(),
            profile: SplittingProfile::flat_ends(1.0, 2.0, -2.0, 2.0).unwrap(),
            tau: pi,
            pair: StatePairSpec::Coherent { alpha_i: c(-6.0), alpha_f: c(6.0) },
        };
        let o = experiment.run().unwrap();
        println!("dim {dim}: Pf={:.12e} Pr={:.12e} 1-R={:+.3e} D={:.3e} eps={:.3e} warn={}",
            o.forward.probability, o.reverse.probability, o.report.one_minus_r,
            o.report.d, o.report.epsilon, o.forward.localization_warning);
    }
    // alpha sweep for the fig4 inset trend
    for &alpha in &[2.0f64, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] {
        let experiment = AqcExperiment {
            space: FockSpace::new(256, 1.0, 1.0).unwrap(),
            profile: SplittingProfile::flat_ends(1.0, 2.0, -2.0, 2.0).unwrap(),
            tau: pi,
            pair: StatePairSpec::Coherent { alpha_i: c(-alpha), alpha_f: c(alpha) },
        };
        let o = experiment.run().unwrap();
        println!("alpha={alpha}: 1-R={:+.6e} D={:.3e} eps={:.3e}", o.report.one_minus_r, o.report.d, o.report.epsilon);
    }
    // squeezed ordering at alpha=4 (r = -1 narrows position in this convention)
    for &r in &[-1.0f64, 0.0, 1.0] {
        let experiment = AqcExperiment {
            space: FockSpace::new(256, 1.0, 1.0).unwrap(),
            profile: SplittingProfile::flat_ends(1.0, 2.0, -2.0, 2.0).unwrap(),
            tau: pi,
            pair: StatePairSpec::Squeezed { alpha_i: c(-4.0), r_i: r, alpha_f: c(4.0), r_f: r },
        };
        let o = experiment.run().unwrap();
        println!("squeezed r={r}: 1-R={:+.6e}", o.report.one_minus_r);
    }
}
