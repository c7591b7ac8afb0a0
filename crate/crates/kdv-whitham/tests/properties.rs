use kdv_whitham::asymptotic::Region;
use kdv_whitham::compare::{error_metrics, linreg, DiffField, Edges, BOUNDARY_THRESHOLD};
use kdv_whitham::hopf::solve_at;
use kdv_whitham::kdv::SpectralField;
use kdv_whitham::numerics::Mode;
use kdv_whitham::profile::{Branch, HumpRegime, Profile};
use kdv_whitham::whitham::{q_direct, q_phase};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-0.95f64..-0.05).prop_filter("distinct", |b| {
        (b[0] - b[1]).abs() > 1e-3 && (b[1] - b[2]).abs() > 1e-3 && (b[0] - b[2]).abs() > 1e-3
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn q_is_symmetric(b in triple()) {
        let p = Profile::sech2();
        let mut sorted = b;
        sorted.sort_by(|a, c| c.total_cmp(a));
        let q = q_phase(&p, sorted, HumpRegime::PreHump).unwrap();
        // the double integral in the given, unsorted order
        let d = q_direct(&p, b).unwrap();
        prop_assert!((q - d).abs() < 1e-9, "{b:?}: {q} vs {d}");
    }

    #[test]
    fn q_on_the_diagonal(v in -0.95f64..-0.05) {
        let p = Profile::sech2();
        let q = q_phase(&p, [v, v, v], HumpRegime::PreHump).unwrap();
        prop_assert!((q - p.inverse(v, Branch::Decreasing).unwrap()).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn profile_round_trip(x in 0.1f64..6.0) {
        let p = Profile::sech2();
        prop_assert!((p.inverse(p.evaluate(-x), Branch::Decreasing).unwrap() + x).abs() < 1e-10);
        prop_assert!((p.inverse(p.evaluate(x), Branch::Increasing).unwrap() - x).abs() < 1e-10);
    }

    #[test]
    fn hopf_before_breaking(x in -6.0f64..6.0, t in 0.0f64..0.2) {
        let p = Profile::sech2();
        let a = solve_at(&p, x, t, x, Mode::Precision).unwrap();
        prop_assert!((a.u - p.evaluate(a.xi)).abs() == 0.0);
        prop_assert!((x - a.xi - 6.0 * t * a.u).abs() < 1e-10);
        // single valued: a different start lands on the same characteristic
        let b = solve_at(&p, x, t, x + 6.0 * t * 0.5, Mode::Precision).unwrap();
        prop_assert!((a.xi - b.xi).abs() < 1e-8, "{} vs {}", a.xi, b.xi);
    }

    #[test]
    fn fit_recovers_power_laws(c in 0.1f64..10.0, power in -2.0f64..2.0, m in 3usize..10) {
        let z: Vec<f64> = (0..m).map(|k| -1.0 - k as f64 / 4.0).collect();
        let y: Vec<f64> = z.iter().map(|z| (c * 10f64.powf(power * z)).log10()).collect();
        let f = linreg(&z, &y).unwrap();
        prop_assert!((f.slope - power).abs() < 1e-10);
        prop_assert!((f.intercept - c.log10()).abs() < 1e-10);
        if power.abs() > 1e-6 {
            prop_assert!((f.r.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn boundaries_ignore_subthreshold_noise(noise in prop::collection::vec(-1.0f64..1.0, 401)) {
        let x: Vec<f64> = (0..401).map(|i| -10.0 + 0.05 * i as f64).collect();
        let region: Vec<Region> = x
            .iter()
            .map(|&x| if x < -1.0 { Region::OutsideLeft } else if x > 1.0 { Region::OutsideRight } else { Region::Whitham })
            .collect();
        let clean: Vec<f64> = x.iter().map(|&x| if x.abs() <= 1.0 { 0.1 * (20.0 * x).sin() } else { 0.01 * (-3.0 * (x.abs() - 1.0)).exp() }).collect();
        let field = |d: Vec<f64>| DiffField { x: x.clone(), t: 0.4, eps: 0.01, diff: d, region: region.clone() };
        let edges = Edges { x_minus: -1.0, x_plus: 1.0, wavelength_minus: 0.1, wavelength_plus: 0.1 };
        let a = error_metrics(&field(clean.clone()), edges, BOUNDARY_THRESHOLD).unwrap();
        let noisy: Vec<f64> = clean
            .iter()
            .zip(&noise)
            .map(|(d, n)| if d.abs() < 0.5 * BOUNDARY_THRESHOLD { d + 0.4 * BOUNDARY_THRESHOLD * n } else { *d })
            .collect();
        let b = error_metrics(&field(noisy), edges, BOUNDARY_THRESHOLD).unwrap();
        prop_assert_eq!(a.x_hopf_minus, b.x_hopf_minus);
        prop_assert_eq!(a.x_hopf_plus, b.x_hopf_plus);
        prop_assert_eq!(a.delta_minus, b.delta_minus);
        prop_assert_eq!(a.err_mid, b.err_mid);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mass_is_conserved(a in -1.5f64..1.5, b in -1.0f64..1.0, c in -2.0f64..2.0, eps in 0.2f64..1.0) {
        let u0 = |x: f64| a / (x - c).cosh().powi(2) + b / (0.7 * (x + c)).cosh().powi(2);
        let (mut f, _) = SpectralField::from_fn(u0, 4.0, 256, eps, false).unwrap();
        let mean = |f: &SpectralField| f.physical().iter().sum::<f64>() / 256.0;
        let m0 = mean(&f);
        for _ in 0..40 {
            f.step(1e-3).unwrap();
        }
        prop_assert!((mean(&f) - m0).abs() < 1e-13, "{} vs {m0}", mean(&f));
    }
}
