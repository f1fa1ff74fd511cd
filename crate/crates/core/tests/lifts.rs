use homtwist::axioms::{check_suite, Suite};
use homtwist::correspondence::{lift_monoidal, lift_plain, unlift_monoidal, unlift_plain};
use homtwist::library::library;

#[test]
fn lifts_pass_their_suites() {
    for inst in library() {
        for h in [&inst.classical, &inst.monoidal, &inst.plain] {
            let r = check_suite(h, Suite::All).unwrap();
            assert!(r.all_passed(), "{}: {}", h.name(), r);
            assert_eq!(r.passed(), 21, "{}", h.name());
        }
    }
}

#[test]
fn round_trips_are_exact() {
    for inst in library() {
        let a = &inst.classical;
        let m = lift_monoidal(a, &inst.automorphism).unwrap();
        let p = lift_plain(a, &inst.automorphism).unwrap();
        assert!(
            unlift_monoidal(&m).unwrap().same_structure(a),
            "{}",
            inst.name
        );
        assert!(unlift_plain(&p).unwrap().same_structure(a), "{}", inst.name);
        assert!(lift_monoidal(
            &unlift_monoidal(&inst.monoidal).unwrap(),
            inst.monoidal.alpha()
        )
        .unwrap()
        .same_structure(&inst.monoidal));
        assert!(
            lift_plain(&unlift_plain(&inst.plain).unwrap(), inst.plain.alpha())
                .unwrap()
                .same_structure(&inst.plain)
        );
    }
}
