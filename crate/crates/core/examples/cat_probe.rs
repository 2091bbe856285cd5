use aqc_core::*;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn sym_cat(alpha: f64) -> Vec<CatTerm> {
    vec![CatTerm { weight: c(1.0), alpha: c(alpha) }, CatTerm { weight: c(1.0), alpha: c(-alpha) }]
}
fn one_sided(alpha: f64, sign: f64) -> Vec<CatTerm> {
    vec![CatTerm { weight: c(1.0), alpha: c(sign*alpha) }, CatTerm { weight: c(1.0), alpha: c(sign*(alpha+1.0)) }]
}

fn main() {
    let pi = std::f64::consts::PI;
    for &(label, xw) in &[("window +-4 (X units)", 4.0), ("window +-2 (halved)", 2.0)] {
        println!("== {label}");
        for &alpha in &[2.0f64, 3.0, 4.0] {
            let experiment = AqcExperiment {
                space: FockSpace::new(256, 1.0, 1.0).unwrap(),
                profile: SplittingProfile::flat_ends(1.0, 2.0, -xw, xw).unwrap(),
                tau: pi,
                pair: StatePairSpec::Cat { terms_i: sym_cat(alpha), terms_f: sym_cat(alpha) },
            };
            let o = experiment.run().unwrap();
            println!("sym cat alpha={alpha}: 1-R={:+.6e}  Pf={:.4e} Pr={:.4e}", o.report.one_minus_r, o.forward.probability, o.reverse.probability);
        }
        for &alpha in &[3.0f64, 5.0, 7.0] {
            let experiment = AqcExperiment {
                space: FockSpace::new(256, 1.0, 1.0).unwrap(),
                profile: SplittingProfile::flat_ends(1.0, 2.0, -xw, xw).unwrap(),
                tau: pi,
                pair: StatePairSpec::Cat { terms_i: one_sided(alpha, -1.0), terms_f: one_sided(alpha, 1.0) },
            };
            let o = experiment.run().unwrap();
            println!("one-sided alpha={alpha}: 1-R={:+.6e}", o.report.one_minus_r);
        }
    }
}
