use aqc_core::*;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::new(x, 0.0) }

fn main() {
    let pi = std::f64::consts::PI;
    let sp = FockSpace::new(256, 1.0, 1.0).unwrap();
    let profile = SplittingProfile::flat_ends(1.0, 21.0, -1.0, 1.0).unwrap();
    for &tau in &[0.5*pi, 0.75*pi, pi, 1.25*pi] {
        let config = ProtocolConfig {
            space: sp, profile: profile.clone(), tau,
            direction: Direction::Forward,
            prepared: StateSpec::coherent(c(-4.5)),
            measured: StateSpec::coherent(c(4.5)),
        };
        let (branch_e, _, _) = joint_final_state(&config).unwrap();
        let grid = wigner_of_state(&sp, &branch_e, &WignerGridSpec { x_points: 201, p_points: 201, half_span: None }).unwrap();
        // mean-matched coherent approximation
        let approx_alpha = Complex64::new(branch_e.position_expectation(), branch_e.momentum_expectation());
        let approx = prepare_state(&sp, &StateSpec::Coherent { alpha: approx_alpha }).unwrap();
        let agrid = wigner_of_state(&sp, &approx, &WignerGridSpec { x_points: 201, p_points: 201, half_span: None }).unwrap();
        println!("tau={:.2}pi: <X>={:+.3} <P>={:+.3} minW={:+.5e} negvol={:.3e} | approx minW={:+.3e} negvol={:.3e}",
            tau/pi, branch_e.position_expectation(), branch_e.momentum_expectation(),
            grid.min_value, negativity_volume(&grid), agrid.min_value, negativity_volume(&agrid));
    }
    // identity 4/5 residual scan
    for &(m, n) in &[(0.1, 0.1), (0.05, -0.2), (-0.1, -0.1), (0.15, 0.05), (0.2, 0.1), (0.3, 0.3)] {
        match identity_residuals(64, m, n) {
            Ok(rep) => println!("m={m} n={n}: residuals {:?}", rep.residuals.map(|r| format!("{r:.2e}"))),
            Err(e) => println!("m={m} n={n}: {e}"),
        }
    }
}
