use chemopulse::analysis::{phi_star, species_speed};
use chemopulse::experiments::{
    analytic_speed, fit_speed, render_kymograph, sweep_phi, track_peaks, PeakSample, Regime,
    SweepOptions, Track,
};
use chemopulse::io::RunConfig;
use chemopulse::solver::{run, Grid1D, SimState};
use chemopulse::{PhysicalParams, Species};
use proptest::prelude::*;

fn bump(nx: usize, centre: usize) -> Vec<f64> {
    (0..nx)
        .map(|k| {
            let d = k as f64 - centre as f64 - 0.3;
            (-d * d / 8.0).exp()
        })
        .collect()
}

proptest! {
    #[test]
    fn fit_is_exact_on_affine_tracks(
        a in -1.0f64..1.0,
        b in -1e-3f64..1e-3,
        n in 5usize..200,
        dt in 0.5f64..50.0,
    ) {
        let track = Track {
            species: Species::One,
            samples: (0..n).map(|k| {
                let t = k as f64 * dt;
                PeakSample { t, x_peak: a + b * t, peak_height: 1.0 }
            }).collect(),
        };
        let fit = fit_speed(&track, 0.0).unwrap();
        prop_assert!((fit.speed - b).abs() <= 1e-12 * (1.0 + b.abs()) + 1e-14);
        prop_assert!(fit.rms <= 1e-12);
    }

    #[test]
    fn peaks_follow_translation(start in 10usize..40, shift in 1usize..5) {
        let nx = 200;
        let grid = Grid1D::new(2.0, nx).unwrap();
        let snaps: Vec<SimState> = (0..10)
            .map(|i| {
                let mut s = SimState::zeros(nx);
                s.t = i as f64;
                s.rho1 = bump(nx, start + i * shift);
                s
            })
            .collect();
        let rec = track_peaks(&snaps, &grid).unwrap();
        let xs: Vec<f64> = rec.track(Species::One).unwrap().samples.iter().map(|s| s.x_peak).collect();
        for w in xs.windows(2) {
            prop_assert!((w[1] - w[0] - shift as f64 * grid.dx()).abs() < 1e-12);
        }
    }
}

fn small_config(phi: f64) -> RunConfig {
    let mut c = RunConfig::default();
    c.init.phi_red = phi;
    c
}

#[test]
fn pure_slow_run_matches_single_speed() {
    let spec = small_config(0.0).run_spec().unwrap();
    let snaps = run(&spec).unwrap();
    let rec = track_peaks(&snaps, &spec.grid).unwrap();
    assert!(rec.track(Species::Two).is_none());
    let fit = fit_speed(rec.track(Species::One).unwrap(), 0.3).unwrap();
    let sigma1 = species_speed(&PhysicalParams::table1(), Species::One).unwrap();
    assert!((fit.speed / sigma1 - 1.0).abs() < 0.05, "{} vs {sigma1}", fit.speed);
}

#[test]
fn one_species_sweeps() {
    let spec = RunConfig::default().run_spec().unwrap();
    let p = PhysicalParams::table1();
    let res = sweep_phi(&spec, &[1.0, 0.0], &SweepOptions::default()).unwrap();
    assert_eq!(res.rows.len(), 2);
    let (r0, r1) = (&res.rows[0], &res.rows[1]);
    assert_eq!((r0.phi_red, r0.regime), (0.0, Regime::Single));
    assert!(r0.speed_fast.is_none());
    let s1 = species_speed(&p, Species::One).unwrap();
    assert!((r0.speed_slow.unwrap() / s1 - 1.0).abs() < 0.05);
    assert_eq!(r0.sigma_analytic, Some(s1));
    assert_eq!((r1.phi_red, r1.regime), (1.0, Regime::Single));
    assert!(r1.speed_slow.is_none());
    // The fast pure pulse lags by the first-order upwind bias, which
    // shrinks with the cell size (see the acceptance suite).
    let s2 = species_speed(&p, Species::Two).unwrap();
    let err = r1.speed_fast.unwrap() / s2 - 1.0;
    assert!(err < 0.0 && err > -0.10, "{err}");
}

#[test]
fn sweep_is_mirror_symmetric() {
    let mut c = RunConfig {
        nx: 300,
        ..RunConfig::default()
    };
    c.t_end = 1500.0;
    let spec = c.run_spec().unwrap();
    let mut mirrored = spec.clone();
    mirrored.params = spec.params.swapped();
    let opts = SweepOptions::default();
    let phis = [0.2, 0.7];
    let a = sweep_phi(&spec, &phis, &opts).unwrap();
    let b = sweep_phi(&mirrored, &[0.8, 0.3], &opts).unwrap();
    for (ra, rb) in a.rows.iter().zip(b.rows.iter().rev()) {
        let close = |x: Option<f64>, y: Option<f64>| (x.unwrap() / y.unwrap() - 1.0).abs() < 1e-9;
        assert!(close(ra.speed_slow, rb.speed_fast), "{ra:?} vs {rb:?}");
        assert!(close(ra.speed_fast, rb.speed_slow));
        assert_eq!(ra.regime, rb.regime);
        assert_eq!(ra.sigma_analytic, rb.sigma_analytic);
    }
}

#[test]
fn mixed_speed_below_threshold_matches_analysis() {
    let p = PhysicalParams::table1();
    let bif = phi_star(&p).unwrap();
    let phis: Vec<f64> = [0.25, 0.5, 0.8].iter().map(|f| f * bif.phi_star).collect();
    let error = |nx: usize| -> Vec<f64> {
        let c = RunConfig {
            nx,
            ..RunConfig::default()
        };
        let res = sweep_phi(&c.run_spec().unwrap(), &phis, &SweepOptions::default()).unwrap();
        res.rows
            .iter()
            .map(|r| {
                let v = 0.5 * (r.speed_slow.unwrap() + r.speed_fast.unwrap());
                (v / analytic_speed(&bif, r.phi_red).unwrap() - 1.0).abs()
            })
            .collect()
    };
    let coarse = error(900);
    let fine = error(1800);
    for (c, f) in coarse.iter().zip(&fine) {
        assert!(*c <= 0.05, "coarse errors {coarse:?}");
        assert!(f < c, "coarse {coarse:?}, fine {fine:?}");
    }
}

#[test]
fn low_fraction_kymograph_has_one_band() {
    let spec = small_config(0.1).run_spec().unwrap();
    let snaps = run(&spec).unwrap();
    let k = render_kymograph(&snaps).unwrap();
    assert_eq!(k.rows, snaps.len());
    let argmax = |row: &[f64]| (0..row.len()).max_by(|&a, &b| row[a].total_cmp(&row[b])).unwrap();
    let mut prev = 0;
    for r in k.rows / 3..k.rows {
        let g = argmax(&k.green[r * k.cols..(r + 1) * k.cols]);
        let red = argmax(&k.red[r * k.cols..(r + 1) * k.cols]);
        // Both channels peak in the same place, and the band advances.
        assert!(g.abs_diff(red) <= 2, "row {r}: green {g}, red {red}");
        assert!(g >= prev);
        prev = g;
    }
    let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    assert_eq!((max(&k.green), max(&k.red)), (1.0, 1.0));
}
