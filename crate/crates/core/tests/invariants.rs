use homtwist::axioms::{check_hom_bialgebra, check_hom_module, check_suite, Suite};
use homtwist::io::{parse_algebra, write_algebra, AlgebraFile};
use homtwist::library::instance;
use homtwist::quasitriangular::{check_qhybe, twist_rmatrix, validate_rmatrix};
use homtwist::twist::{build_twisted_bialgebra, build_twisted_hopf, validate_twist};
use homtwist::{HomModule, Scalar, TensorElement2};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Scalar::new(n, d))
}

fn t2(terms: &[(usize, usize, Scalar)]) -> TensorElement2 {
    TensorElement2::from_terms([4, 4], terms.iter().map(|(i, j, c)| ([*i, *j], c.clone()))).unwrap()
}

/// `1⊗1 + t·gx⊗x` on Sweedler's algebra.
fn sweedler_twist(t: Scalar) -> TensorElement2 {
    t2(&[(0, 0, Scalar::from_int(1)), (3, 2, t)])
}

/// `½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + (t/2)(x⊗x − x⊗gx + gx⊗x + gx⊗gx)`.
fn sweedler_rmatrix(t: Scalar) -> TensorElement2 {
    let half = Scalar::new(1, 2);
    let mut terms = vec![
        (0, 0, half.clone()),
        (0, 1, half.clone()),
        (1, 0, half.clone()),
        (1, 1, -half.clone()),
    ];
    for (i, j, s) in [(2, 2, 1), (2, 3, -1), (3, 2, 1), (3, 3, 1)] {
        terms.push((i, j, t.clone() * half.clone() * Scalar::from_int(s)));
    }
    t2(&terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twisted_sweedler_is_a_hom_hopf_algebra(t in rational()) {
        let h = &instance("sweedler").unwrap().monoidal;
        let tw = validate_twist(h, "t", sweedler_twist(t)).unwrap();
        let hs = build_twisted_bialgebra(h, &tw).unwrap();
        let rep = check_hom_bialgebra(&hs).unwrap();
        prop_assert!(rep.all_passed(), "{}", rep.summary());
        let (hs, sa) = build_twisted_hopf(h, &tw).unwrap();
        prop_assert!(sa.unwrap().printed);
        prop_assert!(check_suite(&hs, Suite::Hopf).unwrap().all_passed());
    }

    #[test]
    fn twisted_rmatrices_stay_rmatrices(s in rational(), t in rational()) {
        let h = &instance("sweedler").unwrap().monoidal;
        let rm = validate_rmatrix(h, "r", sweedler_rmatrix(t)).unwrap();
        prop_assert!(check_qhybe(h, &rm).all_passed());
        let tw = validate_twist(h, "s", sweedler_twist(s)).unwrap();
        let hs = build_twisted_bialgebra(h, &tw).unwrap();
        let rs = twist_rmatrix(h, &tw, &rm, &hs).unwrap();
        prop_assert!(rs.report.all_passed());
        prop_assert!(check_qhybe(&hs, &rs).all_passed());
    }

    #[test]
    fn off_family_twists_are_rejected(t in rational()) {
        prop_assume!(!t.is_zero());
        let h = &instance("sweedler").unwrap().monoidal;
        prop_assert!(validate_twist(h, "t", t2(&[(0, 0, Scalar::from_int(1)), (2, 3, t)])).is_err());
    }

    #[test]
    fn random_modules_are_modules(seed in any::<u64>(), name in prop::sample::select(homtwist::library::NAMES.to_vec())) {
        let inst = instance(name).unwrap();
        for h in [&inst.monoidal, &inst.plain] {
            let m = HomModule::random(h, seed).unwrap();
            prop_assert!(check_hom_module(h, &m).unwrap().all_passed());
        }
    }

    #[test]
    fn files_round_trip(t in rational(), seed in any::<u64>()) {
        let h = &instance("sweedler").unwrap().monoidal;
        let tw = validate_twist(h, "t", sweedler_twist(t)).unwrap();
        let mut file = AlgebraFile::new(build_twisted_bialgebra(h, &tw).unwrap());
        file.twists.push(("t".into(), tw.sigma().clone()));
        file.modules.push(HomModule::random(h, seed).unwrap());
        let text = write_algebra(&file);
        let back = parse_algebra(&text).unwrap();
        prop_assert!(back.algebra.same_structure(&file.algebra));
        prop_assert_eq!(back.twist("t").unwrap(), tw.sigma());
        prop_assert_eq!(write_algebra(&back), text);
    }
}
