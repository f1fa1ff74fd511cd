#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use homtwist::io::{parse_algebra, write_algebra, ReportFile};
use homtwist::Scalar;
use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homtwist"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).into(),
        String::from_utf8_lossy(&out.stderr).into(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_json(path: &Path, v: &Value) {
    std::fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

fn q(entry: &Value, at: usize) -> Scalar {
    let a = entry[at].as_i64().unwrap();
    let b = entry[at + 1].as_i64().unwrap();
    Scalar::new(a, b)
}

/// `(row, col, target) → coefficient` of a comult table.
fn comult_table(file: &Value) -> BTreeMap<(u64, u64, u64), Scalar> {
    file["comult"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                (
                    e[0].as_u64().unwrap(),
                    e[1].as_u64().unwrap(),
                    e[2].as_u64().unwrap(),
                ),
                q(e, 3),
            )
        })
        .collect()
}

#[test]
fn exports_match_the_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for (name, flavor, golden) in [
        ("z2", "monoidal", "z2.json"),
        ("sweedler", "monoidal", "sweedler.json"),
        ("sweedler", "plain", "sweedler-plain.json"),
    ] {
        let out = dir.path().join(golden);
        let (code, _, err) = run(&["export-example", name, "--flavor", flavor, "--out", p(&out)]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(
            std::fs::read(&out).unwrap(),
            std::fs::read(fixture(golden)).unwrap(),
            "{golden}"
        );
    }
}

#[test]
fn every_example_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for inst in homtwist::library::library() {
        for flavor in ["monoidal", "plain", "classical"] {
            let out = dir.path().join(format!("{}-{flavor}.json", inst.name));
            assert_eq!(
                run(&[
                    "export-example",
                    &inst.name,
                    "--flavor",
                    flavor,
                    "--out",
                    p(&out)
                ])
                .0,
                0
            );
            let text = std::fs::read_to_string(&out).unwrap();
            assert_eq!(
                write_algebra(&parse_algebra(&text).unwrap()),
                text,
                "{} {flavor}",
                inst.name
            );
            let (code, stdout, _) = run(&["verify", p(&out)]);
            assert_eq!(code, 0, "{} {flavor}: {stdout}", inst.name);
        }
    }
}

#[test]
fn unknown_example_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&[
        "export-example",
        "taft9",
        "--out",
        p(&dir.path().join("x.json")),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("taft9"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", p(&fixture("z2.json"))]).0, 0);
    assert_eq!(
        run(&["verify", p(&fixture("sweedler.json")), "--suite", "hopf"]).0,
        0
    );
    for suite in ["algebra", "coalgebra", "bialgebra", "module", "all"] {
        assert_eq!(
            run(&[
                "verify",
                p(&fixture("sweedler-plain.json")),
                "--suite",
                suite
            ])
            .0,
            0,
            "{suite}"
        );
    }

    let (code, stdout, _) = run(&["verify", p(&fixture("z2-tampered.json"))]);
    assert_eq!(code, 1);
    assert!(
        stdout.contains("FAIL bialg.counit-multiplicative"),
        "{stdout}"
    );
    assert!(stdout.contains("at (g, g): 2 ≠ 1"), "{stdout}");

    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"format_version\": 1").unwrap();
    assert_eq!(run(&["verify", p(&garbage)]).0, 2);
    assert_eq!(run(&["verify", p(&dir.path().join("missing.json"))]).0, 2);

    let mut v = read_json(&fixture("z2.json"));
    v["mult"][0][4] = json!(0);
    let zero_den = dir.path().join("zero-den.json");
    write_json(&zero_den, &v);
    assert_eq!(run(&["verify", p(&zero_den)]).0, 2);

    let mut v = read_json(&fixture("z2.json"));
    v.as_object_mut().unwrap().remove("antipode");
    let no_antipode = dir.path().join("no-antipode.json");
    write_json(&no_antipode, &v);
    assert_eq!(run(&["verify", p(&no_antipode), "--suite", "hopf"]).0, 3);
    assert_eq!(
        run(&["verify", p(&no_antipode), "--suite", "bialgebra"]).0,
        0
    );
}

#[test]
fn report_file_totals_match_the_records() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let (code, _, _) = run(&[
        "verify",
        p(&fixture("z2-tampered.json")),
        "--report",
        p(&report),
    ]);
    assert_eq!(code, 1);
    let r = ReportFile::parse(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.command, "verify");
    assert!(r.failed > 0);
    assert_eq!(r.failed, r.report().failed());
}

#[test]
fn trivial_twist_gives_comult_after_alpha_squared() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["sweedler-lambda2", "z4"] {
        let input = dir.path().join(format!("{name}.json"));
        assert_eq!(run(&["export-example", name, "--out", p(&input)]).0, 0);
        let out = dir.path().join(format!("{name}-trivial.json"));
        let (code, stdout, _) = run(&["twist", p(&input), "--twist", "trivial", "--out", p(&out)]);
        assert_eq!(code, 0, "{stdout}");

        // Δ(α²(e_t)) = Σ_s (α²)_{s,t} Δ(e_s), from the raw tables.
        let v = read_json(&input);
        let n = v["dim"].as_u64().unwrap() as usize;
        let mut alpha = vec![vec![Scalar::zero(); n]; n];
        for e in v["alpha"].as_array().unwrap() {
            alpha[e[0].as_u64().unwrap() as usize][e[1].as_u64().unwrap() as usize] = q(e, 2);
        }
        let mut a2 = vec![vec![Scalar::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                for k in 0..n {
                    a2[r][c] = &a2[r][c] + &(&alpha[r][k] * &alpha[k][c]);
                }
            }
        }
        let delta = comult_table(&v);
        let mut expected: BTreeMap<(u64, u64, u64), Scalar> = BTreeMap::new();
        for t in 0..n {
            for ((a, b, s), c) in &delta {
                let coeff = &a2[*s as usize][t] * c;
                let slot = expected
                    .entry((*a, *b, t as u64))
                    .or_insert_with(Scalar::zero);
                *slot = &*slot + &coeff;
            }
        }
        expected.retain(|_, c| !c.is_zero());
        let w = read_json(&out);
        assert_eq!(comult_table(&w), expected, "{name}");
        assert_eq!(w["flavor"], "plain");
        for key in ["mult", "unit", "counit", "alpha"] {
            assert_eq!(w[key], v[key], "{name} {key}");
        }
    }
}

#[test]
fn bicharacter_twist_on_z2_collapses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z2-bichar.json");
    let (code, stdout, _) = run(&[
        "twist",
        p(&fixture("z2.json")),
        "--twist",
        "bicharacter",
        "--out",
        p(&out),
    ]);
    assert_eq!(code, 0, "{stdout}");
    let (v, w) = (read_json(&fixture("z2.json")), read_json(&out));
    for key in [
        "dim", "basis", "mult", "comult", "unit", "counit", "alpha", "antipode",
    ] {
        assert_eq!(w[key], v[key], "{key}");
    }
}

#[test]
fn sweedler_twist_matches_golden_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tw.json");
    let report = dir.path().join("tw-report.json");
    let (code, stdout, _) = run(&[
        "twist",
        p(&fixture("sweedler.json")),
        "--twist",
        "grouplike",
        "--out",
        p(&out),
        "--report",
        p(&report),
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(fixture("sweedler-grouplike.json")).unwrap()
    );
    assert_eq!(run(&["verify", p(&out), "--suite", "all"]).0, 0);
    let r = ReportFile::parse(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for id in [
        "twisted/hopf.S*id",
        "lift-twist.commute",
        "rmatrix:mixed^grouplike/qhybe.first",
    ] {
        assert!(
            r.checks.iter().any(|c| c.id == id && c.outcome.is_pass()),
            "{id}"
        );
    }
    // The twisted Sweedler coproduct differs from Δ∘α² = Δ.
    assert_ne!(
        comult_table(&read_json(&out)),
        comult_table(&read_json(&fixture("sweedler.json")))
    );
}

#[test]
fn twist_failures() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = read_json(&fixture("sweedler.json"));
    v["twists"]
        .as_array_mut()
        .unwrap()
        .push(json!({"name": "doubled", "element": [[0, 0, 2, 1]]}));
    let input = dir.path().join("bad-twist.json");
    write_json(&input, &v);
    let out = dir.path().join("out.json");
    let (code, stdout, _) = run(&["twist", p(&input), "--twist", "doubled", "--out", p(&out)]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL twist.normalized"), "{stdout}");
    assert!(!out.exists());

    assert_eq!(
        run(&["twist", p(&input), "--twist", "missing", "--out", p(&out)]).0,
        2
    );
    assert_eq!(
        run(&[
            "twist",
            p(&fixture("sweedler-plain.json")),
            "--twist",
            "trivial",
            "--out",
            p(&out)
        ])
        .0,
        3
    );
    // A rejected twist also fails `verify`.
    assert_eq!(run(&["verify", p(&input)]).0, 1);
}

#[test]
fn repcheck_exit_codes() {
    assert_eq!(run(&["repcheck", p(&fixture("z2.json"))]).0, 0);
    let (code, _, err) = run(&[
        "repcheck",
        p(&fixture("sweedler.json")),
        "--grid",
        "-9..9",
        "-9..9",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("window"), "{err}");
    assert_eq!(
        run(&["repcheck", p(&fixture("z2.json")), "--grid", "2..1", "0..0"]).0,
        2
    );
    assert_eq!(
        run(&[
            "repcheck",
            p(&fixture("z2.json")),
            "--modules",
            "trivial,bogus"
        ])
        .0,
        2
    );
}

#[test]
fn repcheck_is_deterministic_given_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("sweedler-plain.json");
    let ids = |seed: &str, name: &str| {
        let report = dir.path().join(name);
        let args = [
            "repcheck",
            p(&input),
            "--grid",
            "0..1",
            "-1..-1",
            "--modules",
            "random,file",
            "--seed",
            seed,
        ];
        let mut args = args.to_vec();
        args.extend(["--report", p(&report)]);
        assert_eq!(run(&args).0, 0);
        let r = ReportFile::parse(&std::fs::read_to_string(&report).unwrap()).unwrap();
        r.checks
            .into_iter()
            .map(|c| (c.id, c.outcome))
            .collect::<Vec<_>>()
    };
    let a = ids("11", "a.json");
    assert!(a.len() > 100);
    assert_eq!(a, ids("11", "b.json"));
}

#[test]
fn repcheck_on_sweedler_with_braidings_and_twists() {
    let (code, stdout, _) = run(&[
        "repcheck",
        p(&fixture("sweedler.json")),
        "--grid",
        "-1..0",
        "1..2",
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert!(
        stdout.contains("NOTE grouplike/G-shift[3](-1,1) all squares commute"),
        "{stdout}"
    );
}
