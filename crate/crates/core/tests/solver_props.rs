use chemopulse::solver::{run, Grid1D, InitialCondition, RunSpec, SimState, StepControl, Stepper};
use chemopulse::{PhysicalParams, Species};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = PhysicalParams> {
    let scale = |lo: f64, hi: f64| (lo.ln()..hi.ln()).prop_map(f64::exp);
    (
        (scale(1e-7, 1e-5), scale(1e-7, 1e-5), scale(1e-6, 1e-4), scale(1e-6, 1e-4)),
        (scale(1e-3, 1.0), scale(1e-3, 1.0), scale(1e-3, 1.0)),
        (scale(1e-5, 1e-3), scale(1e-5, 1e-3), scale(1e-5, 1e-3), scale(1e-5, 1e-3)),
    )
        .prop_map(|((d1, d2, ds, dn), (alpha, gamma1, gamma2), (c1s, c2s, c1n, c2n))| PhysicalParams {
            d1,
            d2,
            ds,
            dn,
            alpha,
            gamma1,
            gamma2,
            chi1_s: c1s,
            chi2_s: c2s,
            chi1_n: c1n,
            chi2_n: c2n,
        })
}

/// Arbitrary nonnegative state on `nx` cells.
fn state(nx: usize) -> impl Strategy<Value = SimState> {
    let field = |hi: f64| prop::collection::vec(0.0..hi, nx);
    (field(10.0), field(10.0), field(5.0), field(1.0)).prop_map(|(rho1, rho2, s, n)| SimState {
        t: 0.0,
        rho1,
        rho2,
        s,
        n,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn step_conserves_and_stays_admissible(
        p in params(),
        s0 in state(40),
        cfl in 0.1f64..1.0,
        steps in 1usize..20,
    ) {
        let grid = Grid1D::new(0.2, 40).unwrap();
        let ctrl = StepControl::from_cfl(&p, &grid, cfl).unwrap();
        let mut stepper = Stepper::new();
        let m0 = Species::BOTH.map(|sp| s0.mass(sp, &grid));
        let mut s = s0.clone();
        for i in 1..=steps {
            let n_max = s.n.iter().copied().fold(0.0, f64::max);
            s = stepper.step(&s, &p, &grid, &ctrl).unwrap();
            prop_assert!(s.is_admissible());
            // Consumption and diffusion never raise the nutrient.
            prop_assert!(s.n.iter().all(|&v| v <= n_max));
            for sp in Species::BOTH {
                let m = s.mass(sp, &grid);
                let tol = 1e-13 * i as f64 * m0[sp.slot()].max(f64::MIN_POSITIVE);
                prop_assert!((m - m0[sp.slot()]).abs() <= tol, "mass {m} vs {}", m0[sp.slot()]);
            }
        }
    }

    #[test]
    fn initial_condition_has_exact_masses(
        m in 0.1f64..10.0,
        phi in 0.0f64..=1.0,
        ell0 in 0.01f64..0.5,
        nx in 8usize..400,
    ) {
        let grid = Grid1D::new(1.8, nx).unwrap();
        let init = InitialCondition { m_total: m, phi_red: phi, ell0, n0: 1.0 };
        let s = init.build(&grid);
        let (m1, m2) = (s.mass(Species::One, &grid), s.mass(Species::Two, &grid));
        prop_assert!((m1 - (1.0 - phi) * m).abs() <= 1e-13 * m);
        prop_assert!((m2 - phi * m).abs() <= 1e-13 * m);
    }
}

#[test]
fn zero_duration_returns_initial_state() {
    let grid = Grid1D::new(1.8, 90).unwrap();
    let spec = RunSpec {
        params: PhysicalParams::table1(),
        grid,
        t_end: 0.0,
        cfl: 0.9,
        snapshot_stride: 10,
        init: InitialCondition::default(),
    };
    let snaps = run(&spec).unwrap();
    assert_eq!(snaps.len(), 1);
    assert_eq!(snaps[0], spec.init.build(&grid));
}

#[test]
fn snapshots_are_strictly_ordered_and_end_at_t_end() {
    let grid = Grid1D::new(1.8, 90).unwrap();
    let spec = RunSpec {
        params: PhysicalParams::table1(),
        grid,
        t_end: 123.0,
        cfl: 0.9,
        snapshot_stride: 3,
        init: InitialCondition::default(),
    };
    let snaps = run(&spec).unwrap();
    assert!(snaps.windows(2).all(|w| w[0].t < w[1].t));
    assert_eq!(snaps.last().unwrap().t, 123.0);
}
