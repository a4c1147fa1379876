//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use ndarray::array;

use qpurify::bath::BathSpectrum;
use qpurify::engine::{
    continuum_ode_rhs, effective_propagator, integrate_continuum, iterate, stationary_state,
    Observable,
};
use qpurify::hilbert::{pauli, plus_ket, Axis, DensityMatrix, TwoQubitCorrelators};
use qpurify::linalg::{identity, max_abs_diff, CMat, C64};
use qpurify::metrics::{concurrence, purity, stationary_correlators_finite_dt};
use qpurify::models::{
    bell_measurement_set, bell_protocol, feedback_liouvillian_jump, feedback_protocol,
    jump_protocol, measurement_set_general, single_qubit_liouvillian, zeno_propagator,
    zeno_propagator_power, Branch, JumpParams, SingleQubitParams, TwoQubitParams,
};
use qpurify::superop::{hamiltonian_superop, vectorize, VectorizationConvention};
use qpurify::trajectories::{run_ensemble, TrajectoryConfig};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(criterion: &str, checks: &[(bool, String)]) {
    let failed: Vec<&(bool, String)> = checks.iter().filter(|(ok, _)| !ok).collect();
    if failed.is_empty() {
        let detail = checks.iter().map(|(_, d)| d.as_str()).collect::<Vec<_>>().join("; ");
        println!("{criterion} PASS ({detail})");
    } else {
        for (_, d) in &failed {
            println!("{criterion} FAIL ({d})");
        }
        panic!("{criterion} failed {} of {} checks", failed.len(), checks.len());
    }
}

fn reference_params() -> SingleQubitParams {
    SingleQubitParams::new(5.0, 1.0, 5.0, BathSpectrum::flat(1.0)).unwrap()
}

/// Criterion 1: continuum stationary purification at the reference
/// parameters; discrete iterations converge at first order in Δt.
#[test]
fn ac1_single_qubit_continuum_purification() {
    let start = Instant::now();
    let target = 12.0 / 13.0;
    let params = reference_params();
    let rhs = continuum_ode_rhs(&params).unwrap();
    let series = integrate_continuum(&rhs, 1.0, 3.0, 1e-3);
    let ode_final = series.last().unwrap().1;

    // stationary value of the discrete iteration: the fixed point of the
    // effective propagator, cross-checked by running the per-step map to
    // convergence
    let discrete = |gdt: f64, n: usize| -> (f64, f64) {
        let protocol = feedback_protocol(&params, gdt).unwrap();
        let eff = effective_propagator(&protocol).unwrap();
        let fixed_point = stationary_state(&eff).unwrap().rho.bloch().unwrap().x;
        let mut x = 1.0;
        for _ in 0..n {
            x = qpurify::engine::bloch_iteration_step(&params, gdt, x).unwrap().x;
        }
        (fixed_point, x)
    };
    let (x3, x3_iter) = discrete(1e-3, 3000);
    let (x4, x4_iter) = discrete(1e-4, 25000);
    let elapsed = start.elapsed().as_secs_f64();

    report(
        "AC1",
        &[
            (
                (ode_final - target).abs() <= 1e-8,
                format!("ode stationary {ode_final:.10} vs 12/13"),
            ),
            (
                (x3 - target).abs() <= 2e-3,
                format!("discrete gdt=1e-3 err {:.3e} <= 2e-3", (x3 - target).abs()),
            ),
            (
                (x4 - target).abs() <= 2e-4,
                format!("discrete gdt=1e-4 err {:.3e} <= 2e-4", (x4 - target).abs()),
            ),
            (
                (x3 - x3_iter).abs() <= 1e-9 && (x4 - x4_iter).abs() <= 1e-9,
                format!(
                    "fixed point agrees with iterated map to {:.1e}",
                    (x3 - x3_iter).abs().max((x4 - x4_iter).abs())
                ),
            ),
            (elapsed < 1.0, format!("runtime {elapsed:.2}s < 1s")),
        ],
    );
}

/// Criterion 2: ensemble of 10^4 trajectories matches the effective
/// propagator within three standard errors everywhere; the standard error
/// scales as 1/sqrt(n_traj).
#[test]
fn ac2_trajectory_effective_equivalence() {
    let start = Instant::now();
    let params = reference_params();
    let dt = 0.05;
    let n_steps = 40;
    let seed = 20_260_809;
    let protocol = feedback_protocol(&params, dt).unwrap();
    let rho0 = DensityMatrix::pure(&plus_ket()).unwrap();
    let obs = vec![Observable::new("sx", pauli(Axis::X))];

    let eff = effective_propagator(&protocol).unwrap();
    let record = iterate(&eff, &rho0, n_steps, &obs).unwrap();

    let ensemble = |n_traj: usize| {
        let cfg = TrajectoryConfig::new(protocol.clone(), rho0.clone(), n_steps, n_traj, seed)
            .unwrap();
        run_ensemble(&cfg, &obs, true).unwrap()
    };
    let big = ensemble(10_000);
    let small = ensemble(100);

    let mut worst = 0.0f64;
    let mut inside = true;
    for t in 0..=n_steps {
        let diff = (big.mean_observables[0].1[t] - record.observables[0].1[t]).abs();
        // floating floor for the deterministic early steps where stderr = 0
        let band = 3.0 * big.stderr_observables[0].1[t] + 1e-10;
        if diff > band {
            inside = false;
        }
        // z-score is only meaningful once the branches are stochastic
        if big.stderr_observables[0].1[t] > 1e-6 {
            worst = worst.max(diff / big.stderr_observables[0].1[t]);
        }
    }

    let se_small = *small.stderr_observables[0].1.last().unwrap();
    let se_big = *big.stderr_observables[0].1.last().unwrap();
    let ratio = se_small / se_big;
    let theory = (10_000.0f64 / 100.0).sqrt();
    let elapsed = start.elapsed().as_secs_f64();

    report(
        "AC2",
        &[
            (inside, format!("all times within 3 stderr (worst z = {worst:.2})")),
            (
                ratio / theory < 1.3 && theory / ratio < 1.3,
                format!("stderr ratio {ratio:.2} vs sqrt(100) = {theory:.1} within 1.3x"),
            ),
            (elapsed < 60.0, format!("runtime {elapsed:.1}s < 60s")),
        ],
    );
}

/// Criterion 3: two-qubit stationary correlators, concurrence, and purity
/// reach the continuum values after Richardson extrapolation in Δt.
#[test]
fn ac3_two_qubit_stationary_richardson() {
    let start = Instant::now();
    let correlators_at = |dt: f64| -> TwoQubitCorrelators {
        let p = TwoQubitParams::new(0.0, 0.0, 1.0, 5.0, 1.0, dt).unwrap();
        let eff = effective_propagator(&bell_protocol(&p).unwrap()).unwrap();
        stationary_state(&eff).unwrap().rho.correlators().unwrap()
    };
    let coarse = correlators_at(1e-3);
    let fine = correlators_at(5e-4);
    let mut extrapolated = [[0.0f64; 4]; 4];
    for (i, a) in Axis::ALL.iter().enumerate() {
        for (j, b) in Axis::ALL.iter().enumerate() {
            extrapolated[i][j] = 2.0 * fine.expectation(*a, *b) - coarse.expectation(*a, *b);
        }
    }
    let target = 6.0 / 7.0;
    let ex = TwoQubitCorrelators::from_expectations(extrapolated);
    let rho = DensityMatrix::from_correlators(&ex).unwrap();
    let conc = concurrence(&rho).unwrap();
    let pur = purity(&rho);
    let elapsed = start.elapsed().as_secs_f64();

    let err_xx = (ex.expectation(Axis::X, Axis::X) - target).abs();
    let err_yy = (ex.expectation(Axis::Y, Axis::Y) + target).abs();
    let err_zz = (ex.expectation(Axis::Z, Axis::Z) - target).abs();
    let err_c = (conc - 11.0 / 14.0).abs();
    let err_p = (pur - 628.0 / 784.0).abs();
    report(
        "AC3",
        &[
            (err_xx <= 1e-4, format!("Sxx err {err_xx:.2e} <= 1e-4")),
            (err_yy <= 1e-4, format!("Syy err {err_yy:.2e} <= 1e-4")),
            (err_zz <= 1e-4, format!("Szz err {err_zz:.2e} <= 1e-4")),
            (err_c <= 1e-4, format!("concurrence err {err_c:.2e} <= 1e-4 (11/14)")),
            (err_p <= 1e-4, format!("purity err {err_p:.2e} <= 1e-4 (628/784)")),
            (elapsed < 10.0, format!("runtime {elapsed:.2}s < 10s")),
        ],
    );
}

/// Criterion 4: the closed-form finite-Δt stationary correlators equal the
/// eigenvalue-one eigenvector of the 16x16 effective propagator.
#[test]
fn ac4_finite_dt_dual_path_oracle() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(404);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let big_lambda_b: f64 = rng.random_range(0.01..1.0);
        let big_lambda_r: f64 = rng.random_range(0.01..1.0);
        let big_omega: f64 = rng.random_range(0.0..3.0);
        // realize the dimensionless groups with unit gamma and a fixed dt
        let dt = 0.1;
        let split: f64 = rng.random_range(0.0..1.0);
        let p = TwoQubitParams::new(
            split * big_omega / dt,
            (1.0 - split) * big_omega / dt,
            (big_lambda_b / dt).sqrt(),
            (big_lambda_r / dt).sqrt(),
            1.0,
            dt,
        )
        .unwrap();
        let closed = stationary_correlators_finite_dt(&p).unwrap();
        let eff = effective_propagator(&bell_protocol(&p).unwrap()).unwrap();
        let numeric = stationary_state(&eff).unwrap().rho.correlators().unwrap();
        for a in Axis::ALL {
            for b in Axis::ALL {
                worst = worst.max((closed.expectation(a, b) - numeric.expectation(a, b)).abs());
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "AC4",
        &[
            (worst <= 1e-8, format!("max |closed - eigenvector| = {worst:.2e} <= 1e-8 (50 points)")),
            (elapsed < 10.0, format!("runtime {elapsed:.2}s < 10s")),
        ],
    );
}

/// Printed 16x16 quarter-pattern matrices of the Bell-projection sandwich
/// superoperators, in the ordering populations (00,01,10,11) then the
/// twelve coherences row-major.
fn printed_bell_superop() -> CMat {
    let mut m = CMat::zeros((16, 16));
    for &i in &[0usize, 3, 6, 13] {
        for &j in &[0usize, 3, 6, 13] {
            m[[i, j]] = C64::new(0.25, 0.0);
        }
    }
    m
}

fn printed_rest_superop() -> CMat {
    let q = 0.25;
    let entries: [(usize, &[(usize, f64)]); 16] = [
        (0, &[(0, 1.0), (3, 1.0), (6, -1.0), (13, -1.0)]),
        (1, &[(1, 4.0)]),
        (2, &[(2, 4.0)]),
        (3, &[(0, 1.0), (3, 1.0), (6, -1.0), (13, -1.0)]),
        (4, &[(4, 2.0), (14, -2.0)]),
        (5, &[(5, 2.0), (15, -2.0)]),
        (6, &[(0, -1.0), (3, -1.0), (6, 1.0), (13, 1.0)]),
        (7, &[(7, 2.0), (9, -2.0)]),
        (8, &[(8, 4.0)]),
        (9, &[(7, -2.0), (9, 2.0)]),
        (10, &[(10, 2.0), (12, -2.0)]),
        (11, &[(11, 4.0)]),
        (12, &[(10, -2.0), (12, 2.0)]),
        (13, &[(0, -1.0), (3, -1.0), (6, 1.0), (13, 1.0)]),
        (14, &[(4, -2.0), (14, 2.0)]),
        (15, &[(5, -2.0), (15, 2.0)]),
    ];
    let mut m = CMat::zeros((16, 16));
    for (row, cols) in entries {
        for &(col, v) in cols {
            m[[row, col]] = C64::new(q * v, 0.0);
        }
    }
    m
}

/// Closed-form general-direction measurement superoperators in this crate's
/// basis convention (|0⟩ the σᶻ = −1 ground state), transcribed entrywise.
fn general_direction_closed_form(theta: f64, phi: f64, sign: f64) -> CMat {
    let s = (theta / 2.0).sin();
    let c = (theta / 2.0).cos();
    let eip = C64::new(phi.cos(), phi.sin());
    let eim = eip.conj();
    let q = theta.sin().powi(2) / 4.0;
    let (p00, p11, a, b) = if sign > 0.0 {
        (s.powi(4), c.powi(4), s.powi(3) * c, s * c.powi(3))
    } else {
        (c.powi(4), s.powi(4), -s * c.powi(3), -s.powi(3) * c)
    };
    let re = |x: f64| C64::new(x, 0.0);
    array![
        [re(p00), re(q), eim * a, eip * a],
        [re(q), re(p11), eim * b, eip * b],
        [eip * a, eip * b, re(q), eip * eip * q],
        [eim * a, eim * b, eim * eim * q, re(q)]
    ]
}

/// Criterion 5: constructed measurement superoperators reproduce the
/// printed matrices entrywise.
#[test]
fn ac5_measurement_superop_matrix_regression() {
    let set = bell_measurement_set().unwrap();
    let dev_b = max_abs_diff(set.superop(0).matrix(), &printed_bell_superop());
    let dev_r = max_abs_diff(set.superop(1).matrix(), &printed_rest_superop());

    // sigma_x special case: the all-quarters pattern
    let mut quarter = CMat::zeros((4, 4));
    for i in 0..4 {
        for j in 0..4 {
            quarter[[i, j]] = C64::new(0.25, 0.0);
        }
    }
    let equator = measurement_set_general(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
    let dev_x = max_abs_diff(equator.superop(0).matrix(), &quarter);

    let mut rng = StdRng::seed_from_u64(505);
    let mut dev_angles = 0.0f64;
    for _ in 0..10 {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::PI);
        let phi: f64 = rng.random_range(0.0..2.0 * std::f64::consts::PI);
        let set = measurement_set_general(theta, phi).unwrap();
        for (m, sign) in [(0usize, 1.0), (1, -1.0)] {
            let closed = general_direction_closed_form(theta, phi, sign);
            dev_angles = dev_angles.max(max_abs_diff(set.superop(m).matrix(), &closed));
        }
    }

    report(
        "AC5",
        &[
            (dev_b <= 1e-12, format!("Bell superop entrywise dev {dev_b:.2e} <= 1e-12")),
            (dev_r <= 1e-12, format!("rest superop entrywise dev {dev_r:.2e} <= 1e-12")),
            (dev_x <= 1e-12, format!("equator special case dev {dev_x:.2e}")),
            (dev_angles <= 1e-12, format!("10 random directions dev {dev_angles:.2e} <= 1e-12")),
        ],
    );
}

/// Criterion 6: no feedback means no purification.
#[test]
fn ac6_no_feedback_null_results() {
    // identical branches: stationary Bloch modulus vanishes
    let params = SingleQubitParams::new(5.0, 2.0, 2.0, BathSpectrum::flat(1.0))
        .unwrap()
        .with_dissipation_angles(1.1, 0.3, 1.1, 0.3);
    let protocol = feedback_protocol(&params, 0.1).unwrap();
    let eff = effective_propagator(&protocol).unwrap();
    let st = stationary_state(&eff).unwrap();
    let modulus = st.rho.bloch().unwrap().modulus();

    // identical couplings: concurrence zero, purity that of the mixed state
    let p = TwoQubitParams::new(0.4, 1.3, 1.7, 1.7, 1.0, 0.1).unwrap();
    let eff2 = effective_propagator(&bell_protocol(&p).unwrap()).unwrap();
    let st2 = stationary_state(&eff2).unwrap();
    let conc = concurrence(&st2.rho).unwrap();
    let pur = purity(&st2.rho);

    report(
        "AC6",
        &[
            (modulus <= 1e-10, format!("single-qubit stationary modulus {modulus:.2e} <= 1e-10")),
            (conc <= 1e-10, format!("two-qubit stationary concurrence {conc:.2e}")),
            ((pur - 0.25).abs() <= 1e-10, format!("two-qubit purity dev {:.2e} <= 1e-10", (pur - 0.25).abs())),
        ],
    );
}

/// Criterion 7: Zeno freezing.
#[test]
fn ac7_zeno_limit() {
    let n = 10_000u64;
    let omega_t = 1.0;
    let dt = omega_t / n as f64;
    let powered = zeno_propagator(1.0, dt).power(n);
    let frozen = zeno_propagator(1.0, 0.0);
    let dev = max_abs_diff(powered.matrix(), frozen.matrix());

    // closed-form n-th power agrees with the binary exponentiation route
    let closed = zeno_propagator_power(1.0, dt, n);
    let dev_closed = max_abs_diff(powered.matrix(), closed.matrix());

    let plus = DensityMatrix::pure(&plus_ket()).unwrap();
    let preserved = frozen.apply(&plus).unwrap();
    let dev_plus = max_abs_diff(preserved.matrix(), plus.matrix());

    report(
        "AC7",
        &[
            (dev <= 1e-3, format!("||P^n(t/n) - P(0)|| = {dev:.2e} <= 1e-3 at n = 10^4")),
            (dev_closed <= 1e-9, format!("closed-form power consistency {dev_closed:.2e}")),
            (dev_plus <= 1e-12, format!("|+> preserved to {dev_plus:.2e}")),
        ],
    );
}

/// Criterion 8: the discrete jump-detection protocol converges at first
/// order in Δt to the Lindblad feedback generator.
#[test]
fn ac8_jump_detection_limit() {
    let gamma = 1.0;
    let conv = VectorizationConvention::single_qubit();
    let h = pauli(Axis::Z).mapv(|z| z * 0.5);
    let l0 = hamiltonian_superop(&h, &conv).unwrap();
    let params = JumpParams::new(gamma, pauli(Axis::X), l0).unwrap();
    let l_fb = feedback_liouvillian_jump(&params).unwrap();

    let error_at = |dt: f64| -> f64 {
        let protocol = jump_protocol(&params, dt).unwrap();
        let eff = effective_propagator(&protocol).unwrap();
        let finite = (eff.superop.matrix() - &identity(4)).mapv(|z| z / dt);
        max_abs_diff(&finite, l_fb.matrix())
    };
    let e3 = error_at(1e-3);
    let e4 = error_at(1e-4);
    let order = (e3 / e4).log10();

    report(
        "AC8",
        &[
            (e3 <= 5.0 * gamma * gamma * 1e-3, format!("err(1e-3) = {e3:.3e} <= 5e-3")),
            (e4 <= 5.0 * gamma * gamma * 1e-4, format!("err(1e-4) = {e4:.3e} <= 5e-4")),
            ((order - 1.0).abs() <= 0.2, format!("convergence order {order:.3} in 1.0 ± 0.2")),
        ],
    );
}

/// Criterion 9: property suite over all shipped protocols plus the thermal
/// bath relations.
#[test]
fn ac9_property_suite() {
    let mut checks: Vec<(bool, String)> = Vec::new();
    let mut rng = StdRng::seed_from_u64(909);

    // all shipped protocols: exact trace preservation, positivity over
    // random states
    let reference = feedback_protocol(&reference_params(), 0.05).unwrap();
    let tilted_params = reference_params()
        .with_measurement_direction(1.1, 0.7)
        .with_dissipation_angles(0.4, 1.0, 2.2, -0.5);
    let tilted = feedback_protocol(&tilted_params, 0.08).unwrap();
    let bell = bell_protocol(&TwoQubitParams::new(0.6, 1.1, 1.0, 5.0, 1.0, 0.05).unwrap()).unwrap();
    let zeno = feedback_protocol(
        &SingleQubitParams::new(5.0, 0.0, 0.0, BathSpectrum::flat(1.0)).unwrap(),
        0.1,
    )
    .unwrap();
    let jump = {
        let conv = VectorizationConvention::single_qubit();
        let h = pauli(Axis::Z).mapv(|z| z * 0.5);
        let l0 = hamiltonian_superop(&h, &conv).unwrap();
        jump_protocol(&JumpParams::new(1.0, pauli(Axis::X), l0).unwrap(), 0.05).unwrap()
    };
    let protocols = [("reference", reference), ("tilted", tilted), ("bell", bell), ("zeno", zeno), ("jump", jump)];

    let random_state = |dim: usize, rng: &mut StdRng| -> DensityMatrix {
        let mut g = CMat::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                g[[i, j]] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
        let p = g.dot(&g.t().mapv(|z| z.conj()));
        let tr = qpurify::linalg::trace(&p);
        DensityMatrix::new(p.mapv(|z| z / tr)).unwrap()
    };

    let mut worst_trace = 0.0f64;
    let mut worst_eig = 0.0f64;
    for (name, protocol) in &protocols {
        let eff = effective_propagator(protocol).unwrap();
        let dev = eff.superop.trace_preservation_deviation();
        worst_trace = worst_trace.max(dev);
        checks.push((dev <= 1e-10, format!("{name}: trace preservation {dev:.2e}")));
        let n_states = 20; // x 5 protocols = 100 random states
        for _ in 0..n_states {
            let mut rho = random_state(protocol.dim(), &mut rng);
            for _ in 0..10 {
                let v = vectorize(&rho, eff.superop.convention()).unwrap();
                let next = eff.superop.apply_vec(&v);
                rho = DensityMatrix::new(qpurify::superop::devectorize(
                    &next,
                    eff.superop.convention(),
                ))
                .unwrap();
                let min = rho.min_eigenvalue();
                worst_eig = worst_eig.min(min);
            }
        }
    }
    checks.push((
        worst_eig >= -1e-8,
        format!("positivity: min eigenvalue {worst_eig:.2e} >= -1e-8 over 100 states x 10 steps"),
    ));

    // KMS relation for the ohmic thermal bath
    let mut kms_worst = 0.0f64;
    for _ in 0..20 {
        let beta = rng.random_range(0.05..5.0);
        let w = rng.random_range(0.01..10.0);
        let bath = BathSpectrum::ohmic(0.3, 25.0, beta);
        let dev = (bath.gamma(-w) / bath.gamma(w) - (-beta * w).exp()).abs() / (-beta * w).exp();
        kms_worst = kms_worst.max(dev);
    }
    checks.push((kms_worst <= 1e-10, format!("KMS relative deviation {kms_worst:.2e}")));

    // detailed balance of the thermal stationary state
    let beta = 0.9;
    let omega = 1.7;
    let thermal =
        SingleQubitParams::new(omega, 1.0, 1.0, BathSpectrum::ohmic(0.2, 50.0, beta)).unwrap();
    let l = single_qubit_liouvillian(&thermal, Branch::Plus).unwrap();
    let st = qpurify::engine::stationary_state_of_superop(&l.expm(200.0)).unwrap();
    let rho = st.rho.matrix();
    let ratio = rho[[1, 1]].re / rho[[0, 0]].re;
    let balance_dev = (ratio - (-beta * omega).exp()).abs();
    checks.push((
        balance_dev <= 1e-8,
        format!("detailed balance rho11/rho00 dev {balance_dev:.2e} <= 1e-8"),
    ));

    // phi invariance of the stationary Bloch modulus, via the numerical
    // fixed point of the full finite-dt propagator
    let base = reference_params()
        .with_measurement_direction(0.9, 0.0)
        .with_dissipation_angles(0.7, 0.0, 2.1, 0.0);
    let modulus_of = |meas_phi: f64, phi_plus: f64, phi_minus: f64| -> f64 {
        let p = base
            .clone()
            .with_measurement_direction(0.9, meas_phi)
            .with_dissipation_angles(0.7, phi_plus, 2.1, phi_minus);
        let eff = effective_propagator(&feedback_protocol(&p, 0.07).unwrap()).unwrap();
        stationary_state(&eff).unwrap().rho.bloch().unwrap().modulus()
    };
    let reference = modulus_of(0.0, 0.0, 0.0);
    let mut phi_dev = 0.0f64;
    for _ in 0..5 {
        let tau = 2.0 * std::f64::consts::PI;
        let m = modulus_of(
            rng.random_range(0.0..tau),
            rng.random_range(0.0..tau),
            rng.random_range(0.0..tau),
        );
        phi_dev = phi_dev.max((m - reference).abs());
    }
    checks.push((phi_dev <= 1e-10, format!("phi invariance of modulus {phi_dev:.2e} <= 1e-10")));

    report("AC9", &checks);
}
