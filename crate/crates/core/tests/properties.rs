use bohr_core::special_fn::li2;
use bohr_core::{
    majorant, power_sum, solve_radius, ClassId, Enclosure64, Functional, ProblemSpec32,
    ProblemSpec64,
};
use proptest::prelude::*;

fn class() -> impl Strategy<Value = ClassId> {
    prop_oneof![Just(ClassId::C1), Just(ClassId::C2), Just(ClassId::C3)]
}

fn functional() -> impl Strategy<Value = Functional<f64>> {
    prop_oneof![
        Just(Functional::GrowthDistortion),
        (1.0f64..8.0).prop_map(|p| Functional::CoefficientPowers { p }),
        (2usize..12).prop_map(|n| Functional::Rogosinski { n }),
        (2usize..12).prop_map(|n| Functional::SquaredRogosinski { n }),
    ]
}

fn narrow(f: Functional<f64>) -> Functional<f32> {
    match f {
        Functional::GrowthDistortion => Functional::GrowthDistortion,
        Functional::CoefficientPowers { p } => Functional::CoefficientPowers { p: p as f32 },
        Functional::Rogosinski { n } => Functional::Rogosinski { n },
        Functional::SquaredRogosinski { n } => Functional::SquaredRogosinski { n },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_sum_increases_with_radius(c in class(), p in 1.0f64..6.0, start in 2usize..8, r in 0.01f64..0.9) {
        let a = power_sum(c, p, start, r, 1e-13).unwrap();
        let b = power_sum(c, p, start, r + 0.01, 1e-13).unwrap();
        prop_assert!(b.lo() > a.hi());
    }

    #[test]
    fn power_sum_decreases_with_start(c in class(), p in 1.0f64..6.0, start in 2usize..8, r in 0.01f64..0.9) {
        let a = power_sum(c, p, start, r, 1e-13).unwrap();
        let b = power_sum(c, p, start + 1, r, 1e-13).unwrap();
        prop_assert!(b.hi() < a.lo());
    }

    #[test]
    fn radius_bracket_holds_sign_change(c in class(), f in functional()) {
        let spec = ProblemSpec64::new(c, f);
        let res = solve_radius(&spec).unwrap();
        prop_assert!(res.bracket_lo <= res.radius && res.radius <= res.bracket_hi);
        prop_assert!(res.bracket_width() <= 1e-12);
        let d = spec.class.boundary_distance;
        prop_assert!(majorant(&spec, res.bracket_lo).unwrap().lo() <= d);
        prop_assert!(majorant(&spec, res.bracket_hi).unwrap().hi() >= d);
    }

    #[test]
    fn single_precision_agrees(c in class(), f in functional()) {
        let wide = solve_radius(&ProblemSpec64::new(c, f)).unwrap().radius;
        let thin = solve_radius(&ProblemSpec32::new(c, narrow(f))).unwrap().radius;
        prop_assert!((f64::from(thin) - wide).abs() < 1e-4, "{thin} vs {wide}");
    }

    #[test]
    fn li2_is_increasing_and_tight(x in 0.0f64..0.999) {
        let a = li2(x).unwrap();
        let b = li2(x + 1e-3).unwrap();
        prop_assert!(b.lo() > a.hi());
        prop_assert!(a.width() < 1e-13);
    }
}

#[test]
fn enclosure_alias_is_usable() {
    let e = Enclosure64::exact(0.25) + Enclosure64::exact(0.5);
    assert!(e.contains(0.75));
}

#[test]
fn li2_width_target_on_unit_interval() {
    let worst = (0..=999)
        .map(|i| li2(i as f64 / 1000.0).unwrap().width())
        .fold(0.0f64, f64::max);
    assert!(worst <= 1e-14, "max width {worst:e}");
}
