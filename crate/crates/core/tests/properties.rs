use proptest::collection::vec;
use proptest::prelude::*;

use stirling::cycle::{analyze, build_points, heats, stroke_works, CostModel, CycleParams, Mode};
use stirling::media::{Spectrum, WorkingMedium};
use stirling::thermal::{self, ThermalState};

fn spectrum() -> impl Strategy<Value = Spectrum> {
    vec(-10.0..10.0f64, 1..=6).prop_map(|e| Spectrum::new(e).unwrap())
}

fn beta() -> impl Strategy<Value = f64> {
    (-3.0..1.0f64).prop_map(|x| 10f64.powf(x))
}

fn medium() -> impl Strategy<Value = WorkingMedium> {
    prop_oneof![Just(WorkingMedium::SingleSpin), Just(WorkingMedium::CoupledSpins)]
}

fn cycle_params() -> impl Strategy<Value = CycleParams> {
    (medium(), 0.05..10.0f64, 0.05..10.0f64, 0.0..6.0f64, 0.1..6.0f64, 1.01..5.0f64).prop_map(
        |(m, l1, l2, j, tc, ratio)| {
            CycleParams::new(m, l1, l2, tc * ratio, tc)
                .with_j(j)
                .with_cost(CostModel::MinCarnot)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn relative_entropy_paths_agree(s in spectrum(), bi in beta(), bf in beta()) {
        let closed = thermal::relative_entropy_gibbs(&s, bi, bf).unwrap();
        let direct = thermal::relative_entropy_direct(
            &thermal::populations(&s, bi).unwrap(),
            &thermal::populations(&s, bf).unwrap(),
        ).unwrap();
        // Scale with the magnitude of the state's energies (up to ~β|E| = 600).
        let scale = 1.0 + closed.abs();
        prop_assert!((closed - direct).abs() <= 1e-10 * scale, "{} vs {}", closed, direct);
        prop_assert!(closed >= -1e-12);
    }

    #[test]
    fn entropy_paths_agree(s in spectrum(), b in beta()) {
        let st = ThermalState::new(s.clone(), b).unwrap();
        let direct = thermal::von_neumann_entropy(st.populations());
        prop_assert!((st.s() - direct).abs() <= 1e-10);
        prop_assert!(st.s() >= -1e-12);
        prop_assert!(st.s() <= (s.len() as f64).ln() + 1e-10);
        prop_assert!((st.populations().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn free_energy_identity(s in spectrum(), b in beta()) {
        let st = ThermalState::new(s, b).unwrap();
        let scale = 1.0 + st.f().abs();
        prop_assert!((st.f() - (st.u() - st.s() / b)).abs() <= 1e-10 * scale);
        prop_assert!((st.f() + st.log_z() / b).abs() <= 1e-10 * scale);
    }

    #[test]
    fn extreme_inputs_stay_finite(e in vec(-1e3..1e3f64, 1..=6), logb in -6.0..6.0f64) {
        let s = Spectrum::new(e).unwrap();
        let b = 10f64.powf(logb);
        let st = ThermalState::new(s.clone(), b).unwrap();
        prop_assert!(st.u().is_finite() && st.s().is_finite() && st.f().is_finite());
        prop_assert!(st.populations().iter().all(|p| p.is_finite()));
        let d = thermal::relative_entropy_gibbs(&s, b, 1.0).unwrap();
        prop_assert!(d.is_finite() && d >= -1e-9 * (1.0 + d.abs()));
    }

    #[test]
    fn first_law_split(p in cycle_params()) {
        let r = analyze(&p).unwrap();
        prop_assert_eq!(r.work, r.q1 + r.q2 + r.q3 + r.q4);
        prop_assert!((r.q_h + r.q_c - r.work).abs() <= 1e-12);
    }

    #[test]
    fn isotherms_carry_all_the_work(p in cycle_params()) {
        let pts = build_points(&p).unwrap();
        let h = heats(&pts);
        let (w1, w3) = stroke_works(&pts, &h);
        prop_assert!((w1 + w3 - h.work()).abs() <= 1e-10);
    }

    #[test]
    fn entropy_production_nonnegative(p in cycle_params()) {
        let r = analyze(&p).unwrap();
        prop_assert!(r.sigma >= -1e-12);
    }

    #[test]
    fn conventional_carnot_identity(p in cycle_params()) {
        let r = analyze(&p).unwrap();
        if r.mode == Mode::Engine {
            if let (Some(eta), Some(d)) = (r.eta_conventional, r.carnot_deficit) {
                prop_assert!(((r.eta_carnot - eta) - d).abs() <= 1e-10);
                prop_assert!(eta < r.eta_carnot);
            }
        }
    }

    #[test]
    fn cost_never_raises_efficiency(p in cycle_params(), fixed in 0.0..2.0f64) {
        for model in [CostModel::MinCarnot, CostModel::Fixed(fixed)] {
            let r = analyze(&p.clone().with_cost(model)).unwrap();
            if let (Some(free), Some(cost)) = (r.eta_regen_free, r.eta_regen_cost) {
                prop_assert!(cost <= free);
            }
        }
    }

    #[test]
    fn required_cost_restores_carnot(p in cycle_params()) {
        let r = analyze(&p).unwrap();
        if let Some(eta) = r.eta_regen_required {
            prop_assert!(eta <= r.eta_carnot + 1e-10, "{} > {}", eta, r.eta_carnot);
        }
    }

    #[test]
    fn equal_fields_are_degenerate(p in cycle_params()) {
        let mut p = p;
        p.lambda2 = p.lambda1;
        let r = analyze(&p).unwrap();
        prop_assert_eq!(r.mode, Mode::Degenerate);
        prop_assert_eq!(r.work, 0.0);
        prop_assert!(r.eta_regen_free.is_none() && r.eta_regen_cost.is_none());
        prop_assert!(r.eta_conventional.is_none());
    }

    #[test]
    fn engine_mode_matches_definition(p in cycle_params()) {
        let r = analyze(&p).unwrap();
        if r.mode == Mode::Engine {
            prop_assert!(r.work > 0.0 && r.q_h > 0.0);
        }
        if r.work > 0.0 && r.q_h > 0.0 && p.lambda1 != p.lambda2 && r.work.abs() >= 1e-14 {
            prop_assert_eq!(r.mode, Mode::Engine);
        }
    }
}
