use z22susy::sim::*;

fn kink_cfg(dx: f64) -> SimConfig {
    SimConfig { t_end: 5.0, ..SimConfig::new(1.0, dx) }
}

fn static_kink_error(dx: f64) -> f64 {
    let cfg = kink_cfg(dx);
    let traj = run(&cfg).unwrap();
    l2_error(&traj.final_state.phi00, &cfg, |x| kink(1.0, x, 0.0, 0.0, 0.0).0)
}

#[test]
fn closed_form_kink_solves_reduced_equation() {
    let a = 1.3;
    for &x in &[-2.0, -0.3, 0.0, 0.7, 3.0] {
        let h = 1e-3;
        let f = |x: f64, t: f64| kink(a, x, t, 0.2, 0.4).0;
        let (t, _) = (0.5, ());
        let ftt = (f(x, t + h) - 2.0 * f(x, t) + f(x, t - h)) / (h * h);
        let fxx = (f(x + h, t) - 2.0 * f(x, t) + f(x - h, t)) / (h * h);
        let r = ftt - fxx + 0.5 * a * a * (2.0 * f(x, t)).sin();
        assert!(r.abs() < 1e-5, "{r}");
        let ft = (f(x, t + h) - f(x, t - h)) / (2.0 * h);
        let (_, pt) = kink(a, x, t, 0.2, 0.4);
        assert!((ft - pt).abs() < 1e-6);
    }
    let cfg = SimConfig::new(1.0, 0.1);
    let st = init_profile(&cfg).unwrap();
    assert!(st.phi00[0].abs() < 1e-8);
    assert!((st.phi00.last().unwrap() - std::f64::consts::PI).abs() < 1e-8);
}

#[test]
fn kink_energy_by_quadrature() {
    for (alpha, dx) in [(1.0, 0.0125), (2.0, 0.00625)] {
        let cfg = SimConfig { alpha, ..SimConfig::new(alpha, dx) };
        let st = init_profile(&cfg).unwrap();
        let e = total_energy(&st, &cfg);
        assert!((e - kink_energy(alpha)).abs() < 1e-3 * alpha, "{e}");
    }
}

#[test]
fn zero_state_is_static_with_zero_energy() {
    for model in [Model::SineGordon, Model::Massive] {
        let cfg = SimConfig { initial: Profile::Zero, model, t_end: 1.0, ..SimConfig::new(1.0, 0.1) };
        let traj = run(&cfg).unwrap();
        assert!(traj.final_state.phi00.iter().chain(&traj.final_state.phi11).all(|v| *v == 0.0));
        assert_eq!(traj.energies[0], 0.0);
    }
}

#[test]
fn free_update_is_linear() {
    let base = SimConfig { alpha: 0.0, boundary: Boundary::Periodic, ..SimConfig::new(0.0, 0.1) };
    let a = SimConfig { initial: Profile::Gaussian { amplitude: 1.0, x0: -3.0, width: 1.0, field: Target::Phi00 }, ..base.clone() };
    let b = SimConfig { initial: Profile::Gaussian { amplitude: 0.5, x0: 2.0, width: 0.7, field: Target::Both }, ..base.clone() };
    let sa = init_profile(&a).unwrap();
    let sb = init_profile(&b).unwrap();
    let sum = |x: &FieldState, y: &FieldState| FieldState {
        phi00: x.phi00.iter().zip(&y.phi00).map(|(p, q)| p + q).collect(),
        phi11: x.phi11.iter().zip(&y.phi11).map(|(p, q)| p + q).collect(),
        pi00: x.pi00.iter().zip(&y.pi00).map(|(p, q)| p + q).collect(),
        pi11: x.pi11.iter().zip(&y.pi11).map(|(p, q)| p + q).collect(),
        time: 0.0,
    };
    let lhs = step(&sum(&sa, &sb), &base).unwrap();
    let rhs = sum(&step(&sa, &base).unwrap(), &step(&sb, &base).unwrap());
    for (p, q) in lhs.phi00.iter().zip(&rhs.phi00).chain(lhs.pi11.iter().zip(&rhs.pi11)) {
        assert!((p - q).abs() < 1e-12);
    }
}

#[test]
fn static_kink_second_order_convergence() {
    let e: Vec<f64> = [0.1, 0.05, 0.025].iter().map(|dx| static_kink_error(*dx)).collect();
    for w in e.windows(2) {
        let ratio = w[0] / w[1];
        assert!((3.5..=4.5).contains(&ratio), "errors {e:?}");
    }
}

#[test]
fn energy_drift_bound() {
    let cfg = SimConfig {
        dt: 0.02,
        t_end: 100.0,
        x_min: -30.0,
        x_max: 30.0,
        initial: Profile::Kink { x0: 0.0, v: 0.5, field: Target::Phi00 },
        ..SimConfig::new(1.0, 0.05)
    };
    let traj = run(&cfg).unwrap();
    assert!(traj.relative_energy_drift() < 1e-5, "{}", traj.relative_energy_drift());
}

#[test]
fn boosted_kink_position() {
    let cfg = SimConfig {
        dt: 0.02,
        t_end: 40.0,
        x_min: -40.0,
        x_max: 40.0,
        initial: Profile::Kink { x0: -10.0, v: 0.5, field: Target::Phi00 },
        ..SimConfig::new(1.0, 0.05)
    };
    let traj = run(&cfg).unwrap();
    let pos = crossing(&traj.final_state.phi00, &cfg, std::f64::consts::FRAC_PI_2).unwrap();
    assert!((pos - 10.0).abs() < cfg.dx, "{pos}");
    assert!(traj.final_state.phi11.iter().all(|v| *v == 0.0));
}

#[test]
fn exchange_symmetry_preserved() {
    let cfg = SimConfig {
        dt: 0.02,
        t_end: 20.0,
        initial: Profile::TwoFieldKink { x0: 1.0, v: 0.3 },
        ..SimConfig::new(1.0, 0.05)
    };
    let traj = run(&cfg).unwrap();
    let d = traj.final_state.phi00.iter().zip(&traj.final_state.phi11).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(d < 1e-12, "{d}");
    // swapping the initial fields swaps the evolution
    let a = SimConfig { initial: Profile::Gaussian { amplitude: 0.8, x0: -1.0, width: 1.0, field: Target::Phi00 }, t_end: 5.0, ..cfg.clone() };
    let b = SimConfig { initial: Profile::Gaussian { amplitude: 0.8, x0: -1.0, width: 1.0, field: Target::Phi11 }, ..a.clone() };
    let (ta, tb) = (run(&a).unwrap(), run(&b).unwrap());
    assert_eq!(ta.final_state.phi00, tb.final_state.phi11);
    assert_eq!(ta.final_state.phi11, tb.final_state.phi00);
}

#[test]
fn massive_dispersion() {
    let alpha = 1.0;
    let cfg = SimConfig {
        model: Model::Massive,
        boundary: Boundary::Periodic,
        x_min: 0.0,
        x_max: 10.0,
        t_end: 60.0,
        output_stride: 1,
        initial: Profile::StandingWave { amplitude: 1e-3, mode: 2, field: Target::Both },
        ..SimConfig::new(alpha, 0.05)
    };
    let traj = run(&cfg).unwrap();
    let k = 2.0 * std::f64::consts::PI * 2.0 / 10.0;
    let omega = (alpha * alpha + k * k).sqrt();
    let values: Vec<f64> = traj.snapshots.iter().map(|s| s.phi00[0]).collect();
    let period = measured_period(&traj.times, &values).unwrap();
    let measured = 2.0 * std::f64::consts::PI / period;
    assert!((measured / omega - 1.0).abs() < 0.01, "{measured} vs {omega}");
}

#[test]
fn config_validation_and_toml() {
    let mut cfg = SimConfig::new(1.0, 0.1);
    cfg.dt = 0.2;
    assert!(cfg.validate().is_err());
    let src = r#"
alpha = 1.0
dx = 0.1
dt = 0.04
x_min = -10.0
x_max = 10.0
t_end = 1.0
boundary = "fixed"
model = "sine-gordon"
[initial]
profile = "kink"
v = 0.5
"#;
    let cfg = SimConfig::from_toml(src).unwrap();
    assert_eq!(cfg.initial, Profile::Kink { x0: 0.0, v: 0.5, field: Target::Phi00 });
    assert!(SimConfig::from_toml(&src.replace("v = 0.5", "v = 1.5")).is_err());
}

#[test]
fn csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SimConfig { t_end: 0.4, output_stride: 1, ..SimConfig::new(1.0, 0.1) };
    let traj = run(&cfg).unwrap();
    let e = dir.path().join("energy.csv");
    write_energy_csv(&e, &traj).unwrap();
    let text = std::fs::read_to_string(&e).unwrap();
    assert_eq!(text.lines().count(), traj.times.len() + 1);
    let s = dir.path().join("snap.csv");
    write_snapshot_csv(&s, &traj.final_state, &cfg).unwrap();
    assert!(std::fs::read_to_string(&s).unwrap().starts_with("x,phi00,phi11,pi00,pi11\n"));
    // determinism
    assert_eq!(run(&cfg).unwrap().final_state, traj.final_state);
}
