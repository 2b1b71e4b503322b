use proptest::prelude::*;
use qfront_core::analysis::{extract_peak, fit_power_law, FrontWindow};
use qfront_core::asymptotics::*;
use qfront_core::lattice::LoadSpec;

const C1: f64 = LONG_WAVE_SPEED;

fn models() -> impl Strategy<Value = AsymptoticModel> {
    prop_oneof![
        Just(AsymptoticModel::StepElasticBessel),
        Just(AsymptoticModel::StepElasticAiry),
        (0.01f64..0.5).prop_map(|lambda| AsymptoticModel::StepViscous { lambda }),
        (0.01f64..0.1).prop_map(|sigma| AsymptoticModel::GaussShortBessel { sigma }),
        (0.01f64..0.1).prop_map(|sigma| AsymptoticModel::GaussShortAiry { sigma }),
        ((0.5f64..6.0), (0.0f64..0.5)).prop_map(|(sigma, lambda)| AsymptoticModel::GaussLowFreq { sigma, lambda }),
    ]
}

fn quantities() -> impl Strategy<Value = Quantity> {
    prop_oneof![Just(Quantity::Displacement), Just(Quantity::Velocity), Just(Quantity::Acceleration)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_families_vanish_before_launch(model in models(), q in quantities(), r in 0.0f64..60.0, frac in 0.0f64..1.0) {
        let delay = model.launch_delay();
        prop_assume!(delay > 0.0);
        prop_assert_eq!(model.eval(q, r, frac * delay).unwrap(), 0.0);
    }

    #[test]
    fn log_displacement_vanishes_ahead(r in 1.0f64..60.0, frac in 0.01f64..0.999) {
        let t = frac * r / C1;
        for model in [AsymptoticModel::StepElasticBessel, AsymptoticModel::StepViscous { lambda: 0.1 }] {
            prop_assert_eq!(model.eval(Quantity::Displacement, r, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn kappa_is_zero_on_the_ray(model in models(), te in 1.0f64..80.0) {
        let t = te + model.launch_delay();
        let k = model.kappa(C1 * te, t).unwrap();
        prop_assert!(k.abs() < 1e-12);
    }

    #[test]
    fn values_are_finite_near_front(model in models(), q in quantities(), te in 5.0f64..60.0, k in -5.0f64..5.0) {
        let t = te + model.launch_delay();
        let r = (C1 * te + k * model.width(t).unwrap()).max(0.0);
        let v = model.eval(q, r, t).unwrap();
        prop_assert!(v.is_finite());
    }

    #[test]
    fn viscous_velocity_scales_as_lambda_quarter(lambda in 0.005f64..0.2, t in 20.0f64..80.0, k in -2.0f64..3.0) {
        let at = |l: f64, q| {
            let r = C1 * t + k * AsymptoticModel::StepViscous { lambda: l }.width(t).unwrap();
            eval_step_viscous(q, l, r, t).unwrap()
        };
        let ratio = at(lambda, Quantity::Velocity) / at(16.0 * lambda, Quantity::Velocity);
        prop_assert!((ratio - 2.0).abs() < 1e-9, "{}", ratio);
    }

    #[test]
    fn fit_is_scale_invariant(scale in 1e-6f64..1e6, p in -2.0f64..1.0, noise in proptest::collection::vec(-0.05f64..0.05, 5)) {
        let xs = [15.0, 20.0, 25.0, 30.0, 35.0];
        let pts: Vec<(f64, f64)> = xs.iter().zip(&noise).map(|(&x, e): (&f64, &f64)| (x, x.powf(p) * (1.0 + e))).collect();
        let scaled: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (x, scale * y)).collect();
        let a = fit_power_law(&pts).unwrap();
        let b = fit_power_law(&scaled).unwrap();
        prop_assert!((a.exponent - b.exponent).abs() <= 1e-12);
        prop_assert!((b.intercept - a.intercept - scale.ln()).abs() <= 1e-9);
    }

    #[test]
    fn peak_ignores_sign(amp in 0.1f64..10.0, centre in 20.0f64..40.0) {
        let t: Vec<f64> = (0..6000).map(|k| k as f64 * 0.01).collect();
        let v: Vec<f64> = t.iter().map(|&t| amp * (t - centre) * (-(t - centre).powi(2)).exp()).collect();
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        let w = FrontWindow { arrival: centre, width: 1.0, start: centre - 3.0, end: centre + 6.0 };
        let a = extract_peak(&t, &v, 1.0, &w).unwrap();
        let b = extract_peak(&t, &neg, 1.0, &w).unwrap();
        prop_assert_eq!(a.peak_value, b.peak_value);
        prop_assert_eq!(a.peak_time, b.peak_time);
    }

    #[test]
    fn regime_selection_is_total(sigma in 0.001f64..10.0, lambda in 0.0f64..1.0, q in quantities()) {
        // never panics, and any answer belongs to the load's own family
        match regime_select(&LoadSpec::Gauss { sigma }, lambda, q) {
            None | Some(AsymptoticModel::GaussShortBessel { .. }) | Some(AsymptoticModel::GaussLowFreq { .. }) => {}
            Some(other) => prop_assert!(false, "unexpected {other}"),
        }
        match regime_select(&LoadSpec::Step, lambda, q) {
            None | Some(AsymptoticModel::StepElasticBessel) | Some(AsymptoticModel::StepViscous { .. }) => {}
            Some(other) => prop_assert!(false, "unexpected {other}"),
        }
    }
}

#[test]
fn axis_point_equals_radial_coordinate() {
    for model in [AsymptoticModel::StepElasticAiry, AsymptoticModel::GaussLowFreq { sigma: 5.0, lambda: 0.1 }] {
        for q in Quantity::ALL {
            let n = 30usize;
            let t = model.arrival_time(30.0) + 1.0;
            let radial = (n as f64).hypot(0.0);
            assert_eq!(model.eval(q, n as f64, t).unwrap(), model.eval(q, radial, t).unwrap());
        }
    }
}

#[test]
fn gauss_lowfreq_curve_peaks_after_arrival() {
    let model = AsymptoticModel::GaussLowFreq { sigma: 5.0, lambda: 0.1 };
    let r = 35.3553;
    let t: Vec<f64> = (0..=5000).map(|k| 20.0 + k as f64 * 0.01).collect();
    let v: Vec<f64> = t.iter().map(|&t| model.eval(Quantity::Displacement, r, t).unwrap()).collect();
    let (imax, _) = v.iter().enumerate().fold((0, f64::MIN), |b, (i, &x)| if x > b.1 { (i, x) } else { b });
    let arrival = r / C1 + 20.0;
    assert!((arrival - 48.87).abs() < 0.01);
    // Φ₁ peaks a little behind κ = 0
    assert!(t[imax] > arrival && t[imax] < arrival + 10.0, "{}", t[imax]);
}
