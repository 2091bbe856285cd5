use aqc_core::*;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn main() {
    for &(win, alpha) in &[(3.0, 4.0), (4.0, 6.0)] {
        println!("window +-{win}, alpha +-{alpha}");
        let mut prev: Option<(f64, f64, f64)> = None;
        for &dim in &[96usize, 128, 192, 256, 384, 512, 768] {
            let experiment = AqcExperiment {
                space: FockSpace::new(dim, 1.0, 1.0).unwrap(),
                profile: SplittingProfile::flat_ends(1.0, 2.0, -win, win).unwrap(),
                tau: std::f64::consts::PI,
                pair: StatePairSpec::Coherent { alpha_i: c(-alpha), alpha_f: c(alpha) },
            };
            let o = experiment.run().unwrap();
            let cur = (o.forward.probability, o.reverse.probability, o.report.one_minus_r);
            let drift = prev.map(|p| {
                let rel = |a: f64, b: f64| (a-b).abs() / a.abs().max(b.abs()).max(1e-30);
                (rel(p.0, cur.0), rel(p.1, cur.1), (p.2 - cur.2).abs())
            });
            println!("dim {dim:4}: Pf={:.12e} Pr={:.12e} 1-R={:+.6e} D={:.3e} eps={:.3e} drift={:?}",
                cur.0, cur.1, cur.2, o.report.d, o.report.epsilon, drift);
            prev = Some(cur);
        }
    }
}
