//! Property tests for the structural invariants: preparation round trips,
//! time-reversal symmetry, Gibbs-map closure, probability bounds, and the
//! localisation trends of the error measures.

use aqc_core::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| Complex64::new(re, im))
}

fn arbitrary_spec() -> impl Strategy<Value = StateSpec> {
    prop_oneof![
        complex_in(4.0).prop_map(|alpha| StateSpec::Coherent { alpha }),
        (complex_in(3.0), -1.2..1.2f64)
            .prop_map(|(alpha, r)| StateSpec::SqueezedDisplaced { alpha, r }),
        (complex_in(3.0), complex_in(3.0), 0.2..1.0f64).prop_map(|(a, b, w)| StateSpec::cat([
            (c(1.0), a),
            (c(w), b)
        ])),
        (0usize..40).prop_map(|n| StateSpec::FockLevel { n }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn preparation_round_trip_is_normalised(spec in arbitrary_spec()) {
        let space = FockSpace::new(256, 1.0, 1.0).unwrap();
        let state = prepare_state(&space, &spec).unwrap();
        prop_assert!((state.amplitudes().norm() - 1.0).abs() < 1.0e-10);
        prop_assert!(state.norm_deficit() < NORM_DEFICIT_LIMIT);
    }

    #[test]
    fn time_reversal_involution_and_overlap_preservation(
        spec_a in arbitrary_spec(),
        spec_b in arbitrary_spec(),
    ) {
        let space = FockSpace::new(256, 1.0, 1.0).unwrap();
        let a = prepare_state(&space, &spec_a).unwrap();
        let b = prepare_state(&space, &spec_b).unwrap();
        let twice = time_reverse(&time_reverse(&a));
        prop_assert!((twice.amplitudes() - a.amplitudes()).norm() < 1.0e-14);
        let direct = a.overlap(&b).norm();
        let reversed = time_reverse(&a).overlap(&time_reverse(&b)).norm();
        prop_assert!((direct - reversed).abs() < 1.0e-12);
    }

    #[test]
    fn gibbs_closure_on_coherent_states(
        alpha in complex_in(6.0),
        chi in 0.01..2.0f64,
    ) {
        let dim = ((16.0 * alpha.norm_sqr().max(1.0)).ceil() as usize).max(64);
        let space = FockSpace::new(dim, 1.0, 0.5 / chi).unwrap();
        let state = prepare_state(&space, &StateSpec::Coherent { alpha }).unwrap();
        let (weighted, z) = apply_gibbs_weight(&space, &state).unwrap();
        let target = prepare_state(
            &space,
            &StateSpec::Coherent { alpha: coherent_pair_map(alpha, chi) },
        ).unwrap();
        prop_assert!(weighted.fidelity(&target) > 1.0 - 1.0e-10);
        prop_assert!(z > 0.0 && z <= (-chi).exp() + 1.0e-15);
        // E-tilde of the input state never exceeds its mean energy
        let e = effective_potential(&space, &state).unwrap();
        prop_assert!(e <= state.energy_expectation(&space) + 1.0e-9);
    }

    #[test]
    fn protocol_probabilities_stay_in_the_unit_interval(
        alpha_p in complex_in(1.0),
        alpha_m in complex_in(1.0),
        tau in 0.0..4.0f64,
        e_i in 0.0..1.5f64,
        e_f in 0.0..1.5f64,
        forward in any::<bool>(),
    ) {
        let space = FockSpace::new(48, 1.0, 1.0).unwrap();
        let config = ProtocolConfig {
            space,
            profile: SplittingProfile::flat_ends(e_i, e_f, -1.0, 1.0).unwrap(),
            tau,
            direction: if forward { Direction::Forward } else { Direction::Reverse },
            prepared: StateSpec::Coherent { alpha: alpha_p },
            measured: StateSpec::Coherent { alpha: alpha_m },
        };
        let result = run_protocol(&config).unwrap();
        prop_assert!(result.probability >= 0.0);
        prop_assert!(result.probability <= 1.0 + 1.0e-10);
        let recomposed = result.weights.0 * result.branch_e_amp.norm_sqr()
            + result.weights.1 * result.branch_g_amp.norm_sqr();
        prop_assert!((result.probability - recomposed).abs() < 1.0e-12);
    }
}

fn error_magnitude_experiment(pair: StatePairSpec) -> AqcExperiment {
    AqcExperiment {
        space: FockSpace::new(256, 1.0, 1.0).unwrap(),
        profile: SplittingProfile::flat_ends(1.0, 2.0, -2.0, 2.0).unwrap(),
        tau: std::f64::consts::PI,
        pair,
    }
}

#[test]
fn one_minus_r_decreases_with_coherent_localisation() {
    // decreasing in |alpha_i| until the double-precision floor of the tiny
    // Gibbs-weighted products
    let mut previous = f64::INFINITY;
    for alpha in [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] {
        let outcome = error_magnitude_experiment(StatePairSpec::Coherent {
            alpha_i: c(-alpha),
            alpha_f: c(alpha),
        })
        .run()
        .unwrap();
        let one_minus_r = outcome.report.one_minus_r;
        assert!(
            one_minus_r < previous.max(1.0e-10),
            "1-R = {one_minus_r:.3e} did not decrease at alpha = {alpha}"
        );
        previous = one_minus_r;
    }
}

#[test]
fn squeezing_position_reduces_the_error_measure() {
    // r = -1 narrows the position quadrature in this convention
    let one_minus_r = |r: f64| {
        error_magnitude_experiment(StatePairSpec::Squeezed {
            alpha_i: c(-4.0),
            r_i: r,
            alpha_f: c(4.0),
            r_f: r,
        })
        .run()
        .unwrap()
        .report
        .one_minus_r
    };
    let narrow = one_minus_r(-1.0);
    let coherent = one_minus_r(0.0);
    let wide = one_minus_r(1.0);
    assert!(
        narrow < coherent && coherent < wide,
        "ordering violated: {narrow:.3e}, {coherent:.3e}, {wide:.3e}"
    );
}

#[test]
fn inferred_q_matches_the_closed_form_on_accurate_configurations() {
    // on configurations with epsilon < 1e-8 the inferred q agrees with
    // delta E-tilde / W_q to 1e-6
    for (alpha_i, alpha_f) in [(-6.0, 5.0), (-7.0, 6.0), (-6.5, 5.5)] {
        let experiment = error_magnitude_experiment(StatePairSpec::Coherent {
            alpha_i: c(alpha_i),
            alpha_f: c(alpha_f),
        });
        let outcome = experiment.run().unwrap();
        assert!(outcome.report.epsilon < 1.0e-8, "epsilon too large");
        let q_closed = outcome.prediction.q.unwrap();
        let q_measured = outcome.q_inferred.unwrap();
        assert!(
            (q_measured - q_closed).abs() < 1.0e-6,
            "q inferred {q_measured} vs closed form {q_closed}"
        );
    }
}

#[test]
fn full_joint_energy_is_conserved_along_the_evolution() {
    // <H_SB> in the initial joint state equals the evolved value; the joint
    // operator is block diagonal, so the weighted branch energies add
    let experiment = error_magnitude_experiment(StatePairSpec::Coherent {
        alpha_i: c(-5.0),
        alpha_f: c(5.0),
    });
    let config = experiment.forward_config().unwrap();
    let joint = joint_hamiltonian(&config.space, &config.profile).unwrap();
    let prepared = prepare_state(&config.space, &config.prepared).unwrap();
    let (branch_e, branch_g, (p_e, p_g)) = joint_final_state(&config).unwrap();

    let energy =
        |state: &BatteryState, h: &OperatorMatrix| h.expectation(state).re;
    let before = p_e * energy(&prepared, joint.excited_block())
        + p_g * energy(&prepared, joint.ground_block());
    let after = p_e * energy(&branch_e, joint.excited_block())
        + p_g * energy(&branch_g, joint.ground_block());
    assert!(
        ((before - after) / before).abs() < 1.0e-8,
        "joint energy drifted: {before} -> {after}"
    );
}
