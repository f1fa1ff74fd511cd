use homtwist::library::{instance, library};
use homtwist::rep::{
    check_category, check_functor_f, check_functor_g, check_grid, probe_shifts, require_window,
    standard_modules, Grid, RepConfig, Scope, G_SHIFT,
};
use homtwist::twist::build_twisted_bialgebra;
use homtwist::{Error, Flavor, Outcome, Scalar, TensorElement2};

fn small_grid() -> Grid {
    Grid {
        i: 0..=1,
        j: -1..=0,
        ..Grid::default()
    }
}

#[test]
fn small_grid_passes_for_every_instance() {
    for inst in library() {
        let rep = check_grid(&inst.monoidal, &inst.rmatrices, &inst.twists, &small_grid()).unwrap();
        assert!(
            rep.all_passed(),
            "{} monoidal: {:?}",
            inst.name,
            rep.failures().next()
        );
        assert!(rep.passed() > 1000, "{}: {}", inst.name, rep.summary());
        let rep = check_grid(&inst.plain, &inst.plain_rmatrices, &[], &small_grid()).unwrap();
        assert!(
            rep.all_passed(),
            "{} plain: {:?}",
            inst.name,
            rep.failures().next()
        );
    }
}

#[test]
fn grid_covers_braidings_and_both_functors() {
    let inst = instance("sweedler").unwrap();
    let rep = check_grid(&inst.monoidal, &inst.rmatrices, &inst.twists, &small_grid()).unwrap();
    let has = |needle: &str| rep.checks.iter().any(|c| c.id.contains(needle));
    for needle in [
        ".pentagon[",
        ".triangle[",
        ".hexagon[",
        ".hexagon-inverse[",
        "F[",
        "G[",
        ".g2-invertible[",
        ".braided[",
    ] {
        assert!(has(needle), "no check matching {needle}");
    }
}

#[test]
fn wide_grid_exceeds_the_window() {
    let inst = instance("sweedler").unwrap();
    let grid = Grid {
        i: -9..=9,
        j: -9..=9,
        ..Grid::default()
    };
    match check_grid(&inst.monoidal, &inst.rmatrices, &[], &grid) {
        Err(Error::WindowExceeded { power, window }) => assert!(power > window),
        other => panic!("expected a window error, got {other:?}"),
    }
    let cfg = RepConfig::new(9, -9, Flavor::Plain);
    assert_eq!(cfg.required_window(), 19);
    assert!(matches!(
        require_window(&inst.plain, cfg),
        Err(Error::WindowExceeded { .. })
    ));
}

#[test]
fn constraint_powers() {
    let m = RepConfig::new(2, -1, Flavor::Monoidal);
    let p = RepConfig::new(2, -1, Flavor::Plain);
    assert_eq!(m.assoc_powers(), (-1, -2));
    assert_eq!(p.assoc_powers(), (-3, 0));
    assert_eq!((m.left_unit_power(), m.right_unit_power()), (2, -1));
    assert_eq!((p.left_unit_power(), p.right_unit_power()), (0, -3));
    assert_eq!(m.to_string(), "monoidal(2,-1)");
}

#[test]
fn single_category_with_braiding() {
    let inst = instance("sweedler-classical").unwrap();
    let mods = standard_modules(&inst.monoidal, 7).unwrap();
    let rm = &inst.rmatrices[0];
    let cfg = RepConfig::new(-1, 2, Flavor::Monoidal);
    let rep = check_category(
        &inst.monoidal,
        &mods,
        Some((rm.r(), rm.inverse())),
        cfg,
        Scope::default(),
    )
    .unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures().next());
    assert!(matches!(
        check_category(&inst.plain, &mods, None, cfg, Scope::default()),
        Err(Error::FlavorMismatch(_))
    ));
}

#[test]
fn trivial_braiding_is_not_natural_on_sweedler() {
    let inst = instance("sweedler").unwrap();
    let h = &inst.monoidal;
    let mods = standard_modules(h, 0).unwrap();
    let one = h.one_tensor_one();
    let rep = check_category(
        h,
        &mods,
        Some((&one, &one)),
        RepConfig::new(0, 0, Flavor::Monoidal),
        Scope::default(),
    )
    .unwrap();
    assert!(rep.failed() > 0);
    assert!(rep.failures().any(|c| c.id.contains("braiding-linear")));
}

#[test]
fn functor_f_between_distant_indices() {
    let inst = instance("z4").unwrap();
    let mods = standard_modules(&inst.plain, 1).unwrap();
    let rm = &inst.plain_rmatrices[0];
    let from = RepConfig::new(-2, 1, Flavor::Plain);
    let to = RepConfig::new(2, 0, Flavor::Plain);
    let rep = check_functor_f(&inst.plain, &mods, Some((rm.r(), rm.inverse())), from, to).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures().next());
    assert!(rep.checks.iter().any(|c| c.id.contains(".braided[")));
}

fn shift_notes(name: &str) -> Vec<(i32, bool)> {
    let inst = instance(name).unwrap();
    let tw = inst.twists.iter().find(|t| t.name == "grouplike").unwrap();
    let hs = build_twisted_bialgebra(&inst.monoidal, tw).unwrap();
    let mods = standard_modules(&inst.monoidal, 0).unwrap();
    let rep = probe_shifts(&inst.monoidal, &hs, tw.rho(), &mods, None, 0, 0);
    rep.checks
        .iter()
        .enumerate()
        .map(|(k, c)| match &c.outcome {
            Outcome::Note { text } => (k as i32 + 1, text == "all squares commute"),
            other => panic!("expected a note, got {other:?}"),
        })
        .collect()
}

#[test]
fn only_the_shift_of_three_works_for_lambda_two() {
    let notes = shift_notes("sweedler-lambda2");
    assert_eq!(
        notes,
        vec![(1, false), (2, false), (3, true), (4, false), (5, false)]
    );
    assert_eq!(G_SHIFT, 3);
}

#[test]
fn odd_shifts_work_for_lambda_minus_one() {
    let notes = shift_notes("sweedler");
    assert_eq!(
        notes,
        vec![(1, true), (2, false), (3, true), (4, false), (5, true)]
    );
}

#[test]
fn g2_is_invertible_and_monoidal_with_braidings() {
    let inst = instance("sweedler").unwrap();
    let h = &inst.monoidal;
    let tw = inst.twists.iter().find(|t| t.name == "grouplike").unwrap();
    let hs = build_twisted_bialgebra(h, tw).unwrap();
    let rm = &inst.rmatrices[0];
    let rs = homtwist::quasitriangular::twist_rmatrix(h, tw, rm, &hs).unwrap();
    let mods = standard_modules(h, 5).unwrap();
    let r = Some(((rm.r(), rm.inverse()), (rs.r(), rs.inverse())));
    let rep = check_functor_g(h, &hs, tw.rho(), &mods, r, 1, -2, G_SHIFT).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures().next());
    assert!(
        rep.checks
            .iter()
            .filter(|c| c.id.contains("g2-invertible"))
            .count()
            >= 9
    );
    assert!(rep.checks.iter().any(|c| c.id.contains(".braided[")));

    let wrong: TensorElement2 = tw.rho().scale(&Scalar::from_int(2));
    let rep = check_functor_g(h, &hs, &wrong, &mods, None, 1, -2, G_SHIFT).unwrap();
    assert!(
        rep.failures().any(|c| c.id.contains("left-unit")),
        "2ϱ breaks the unit squares"
    );
}
