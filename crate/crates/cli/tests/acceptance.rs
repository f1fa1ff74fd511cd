//! End-to-end acceptance run: one PASS/FAIL line per criterion.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use homtwist::axioms::{
    check_hom_bialgebra, check_suite, hom_algebra_identities, ordinary_coalgebra_identities, run,
    Suite,
};
use homtwist::correspondence::{
    check_twist_lift_commutes, lift_monoidal, lift_plain, unlift_monoidal, unlift_plain,
};
use homtwist::io::{parse_algebra, write_algebra, ReportFile};
use homtwist::library::library;
use homtwist::quasitriangular::{check_qhybe, twist_rmatrix};
use homtwist::rep::{check_grid, Grid};
use homtwist::twist::{
    build_twisted_bialgebra, build_twisted_hopf, consequence_identities, twist_module_algebra,
    twist_module_coalgebra,
};
use homtwist::{Context, Flavor, VerificationReport};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(rep: &VerificationReport, what: &str) -> Result<(), String> {
    match rep.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} failed ({:?})", c.id, c.outcome)),
    }
}

fn lifts() -> Outcome {
    let mut checks = 0;
    for inst in library() {
        for h in [&inst.monoidal, &inst.plain] {
            let r = check_suite(h, Suite::All).map_err(|e| e.to_string())?;
            clean(&r, h.name())?;
            checks += r.passed();
        }
        let a = &inst.classical;
        let m = lift_monoidal(a, &inst.automorphism).map_err(|e| e.to_string())?;
        let p = lift_plain(a, &inst.automorphism).map_err(|e| e.to_string())?;
        ensure(
            m.same_structure(&inst.monoidal) && p.same_structure(&inst.plain),
            || format!("{}: lift differs from library", inst.name),
        )?;
        ensure(
            unlift_monoidal(&m)
                .map_err(|e| e.to_string())?
                .same_structure(a),
            || format!("{}: monoidal round trip", inst.name),
        )?;
        ensure(
            unlift_plain(&p)
                .map_err(|e| e.to_string())?
                .same_structure(a),
            || format!("{}: plain round trip", inst.name),
        )?;
    }
    Ok(format!(
        "{checks} axioms, {} instances round-trip",
        library().len()
    ))
}

fn twisted_bialgebras() -> Outcome {
    let (mut pairs, mut checks) = (0, 0);
    for inst in library() {
        for tw in &inst.twists {
            let hs = build_twisted_bialgebra(&inst.monoidal, tw)
                .map_err(|e| format!("{} {}: {e}", inst.name, tw.name))?;
            ensure(hs.flavor() == Flavor::Plain, || {
                "twisted output is not plain".into()
            })?;
            let r = check_hom_bialgebra(&hs).map_err(|e| e.to_string())?;
            clean(&r, &format!("{} {}", inst.name, tw.name))?;
            ensure(
                r.find("bialg.comul-multiplicative")
                    .is_some_and(|c| c.outcome.is_pass()),
                || "no multiplicativity check".into(),
            )?;
            pairs += 1;
            checks += r.passed();
        }
    }
    Ok(format!("{pairs} pairs, {checks} checks"))
}

fn twist_consequences() -> Outcome {
    let mut n = 0;
    for inst in library() {
        let (ctx, s) = inst.monoidal.context();
        for tw in &inst.twists {
            let ids = consequence_identities(s, tw.sigma(), tw.rho());
            ensure(ids.iter().any(|i| i.id == "twist.mixed"), || {
                "mixed identity missing".into()
            })?;
            clean(&run(&ctx, &ids), &format!("{} {}", inst.name, tw.name))?;
            n += ids.len();
        }
    }
    Ok(format!("{n} identities"))
}

fn correspondence() -> Outcome {
    let (mut pairs, mut strict) = (0, 0);
    for inst in library() {
        for tw in &inst.twists {
            let r = check_twist_lift_commutes(&inst.monoidal, tw).map_err(|e| e.to_string())?;
            clean(&r, &format!("{} {}", inst.name, tw.name))?;
            let iff = r.find("lift-twist.trivial-iff").ok_or("no iff record")?;
            if !tw.is_trivial(&inst.monoidal) && iff.outcome.is_pass() {
                strict += 1;
            }
            pairs += 1;
        }
    }
    ensure(strict >= 1, || {
        "no nontrivial twist separates the two structures".into()
    })?;
    Ok(format!("{pairs} pairs commute, iff witnessed on {strict}"))
}

fn antipodes() -> Outcome {
    let mut pairs = 0;
    for inst in library() {
        if inst.monoidal.antipode().is_none() {
            continue;
        }
        for tw in &inst.twists {
            let (hs, sa) = build_twisted_hopf(&inst.monoidal, tw)
                .map_err(|e| format!("{} {}: {e}", inst.name, tw.name))?;
            let sa = sa.ok_or("no twisted antipode")?;
            clean(&sa.report, &format!("{} {}", inst.name, tw.name))?;
            ensure(sa.printed, || {
                format!("{} {}: printed bracketing rejected", inst.name, tw.name)
            })?;
            let r = check_suite(&hs, Suite::Hopf).map_err(|e| e.to_string())?;
            clean(&r, &format!("{} {} hopf", inst.name, tw.name))?;
            ensure(
                r.find("hopf.S-alpha").is_some_and(|c| c.outcome.is_pass()),
                || "S∘α not checked".into(),
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, printed bracketing"))
}

fn rmatrices() -> Outcome {
    let mut pairs = 0;
    for inst in library() {
        let h = &inst.monoidal;
        for tw in &inst.twists {
            let hs = build_twisted_bialgebra(h, tw).map_err(|e| e.to_string())?;
            for rm in &inst.rmatrices {
                let tag = format!("{} {} {}", inst.name, tw.name, rm.name);
                let rs = twist_rmatrix(h, tw, rm, &hs).map_err(|e| format!("{tag}: {e}"))?;
                clean(&rs.report, &tag)?;
                let q = check_qhybe(&hs, &rs);
                clean(&q, &tag)?;
                ensure(
                    q.find("qhybe.r13-reading")
                        .is_some_and(|c| c.outcome.is_pass()),
                    || format!("{tag}: the two R₁₃ readings differ"),
                )?;
                if tw.is_trivial(h) {
                    ensure(rs.r() == rm.r(), || {
                        format!("{tag}: R^σ ≠ R under the trivial twist")
                    })?;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// Criteria 7 and 8 come from the same sweep.
struct Sweep {
    coherence: Outcome,
    functors: Outcome,
}

fn sweep() -> Sweep {
    let grid = Grid::default();
    let mut reports = Vec::new();
    for inst in library() {
        for (h, rms, tws) in [
            (&inst.monoidal, &inst.rmatrices, &inst.twists[..]),
            (&inst.plain, &inst.plain_rmatrices, &[][..]),
        ] {
            match check_grid(h, rms, tws, &grid) {
                Ok(r) => reports.push((inst, h.flavor(), r)),
                Err(e) => {
                    let msg = format!("{} {}: {e}", inst.name, h.flavor());
                    return Sweep {
                        coherence: Err(msg.clone()),
                        functors: Err(msg),
                    };
                }
            }
        }
    }
    let is_functor = |id: &str| id.contains("F[") || id.contains("G[") || id.contains("G-shift[");
    let coherence = (|| {
        let mut n = 0;
        for (inst, flavor, r) in &reports {
            for c in r.checks.iter().filter(|c| !is_functor(&c.id)) {
                ensure(!c.outcome.is_fail(), || {
                    format!("{} {flavor}: {} ({:?})", inst.name, c.id, c.outcome)
                })?;
                n += 1;
            }
            for needle in [
                ".pentagon[",
                ".triangle[",
                ".assoc-natural[",
                ".left-unit-natural[",
                ".tensor[",
                ".module-assoc",
            ] {
                ensure(r.checks.iter().any(|c| c.id.contains(needle)), || {
                    format!("{} {flavor}: no {needle} checks", inst.name)
                })?;
            }
            if !inst.rmatrices.is_empty() {
                ensure(r.checks.iter().any(|c| c.id.contains(".hexagon[")), || {
                    format!("{} {flavor}: no hexagons", inst.name)
                })?;
            }
        }
        Ok(format!("{n} checks over {} points", grid.points().len()))
    })();
    let functors = (|| {
        let (mut nf, mut ng) = (0, 0);
        for (inst, flavor, r) in &reports {
            let mut f_pairs = std::collections::BTreeSet::new();
            for c in r
                .checks
                .iter()
                .filter(|c| c.id.contains("F[") || c.id.contains("G["))
            {
                ensure(!c.outcome.is_fail(), || {
                    format!("{} {flavor}: {} ({:?})", inst.name, c.id, c.outcome)
                })?;
                if let Some(rest) = c.id.split("F[").nth(1) {
                    f_pairs.insert(rest.split(']').next().unwrap_or_default().to_string());
                    nf += 1;
                } else {
                    ng += 1;
                }
            }
            ensure(f_pairs.len() >= 4, || {
                format!("{} {flavor}: only {} F pairs", inst.name, f_pairs.len())
            })?;
            if *flavor == Flavor::Monoidal {
                for tw in &inst.twists {
                    for (i, j) in grid.points() {
                        let tag = format!("G[monoidal({},{})→plain({i},{j})]", i + 3, j + 3);
                        let ours = |c: &&homtwist::CheckRecord| {
                            c.id.starts_with(&format!("{}/", tw.name)) && c.id.contains(&tag)
                        };
                        ensure(r.checks.iter().any(|c| ours(&c)), || {
                            format!("{}: no {} {tag}", inst.name, tw.name)
                        })?;
                        if !inst.rmatrices.is_empty() {
                            ensure(
                                r.checks
                                    .iter()
                                    .filter(ours)
                                    .any(|c| c.id.contains(".braided[")),
                                || format!("{}: no braided {} {tag}", inst.name, tw.name),
                            )?;
                        }
                    }
                }
            }
        }
        Ok(format!("{nf} F and {ng} G checks"))
    })();
    Sweep {
        coherence,
        functors,
    }
}

fn module_twists() -> Outcome {
    let (mut na, mut nc) = (0, 0);
    for inst in library() {
        let h = &inst.monoidal;
        for tw in &inst.twists {
            for a in &inst.module_algebras {
                let tag = format!("{} {} {}", inst.name, tw.name, a.name());
                let t = twist_module_algebra(h, tw, a).map_err(|e| format!("{tag}: {e}"))?;
                ensure(
                    t.alpha == a.module.alpha().pow(2).map_err(|e| e.to_string())?,
                    || format!("{tag}: structure map is not α²"),
                )?;
                let mut ctx = Context::new();
                let s = ctx.add_space(t.space().map_err(|e| e.to_string())?);
                clean(&run(&ctx, &hom_algebra_identities(s)), &tag)?;
                na += 1;
            }
            for c in &inst.module_coalgebras {
                let tag = format!("{} {} {}", inst.name, tw.name, c.name());
                let t = twist_module_coalgebra(h, tw, c).map_err(|e| format!("{tag}: {e}"))?;
                let mut ctx = Context::new();
                let s = ctx.add_space(t.space());
                clean(&run(&ctx, &ordinary_coalgebra_identities(s)), &tag)?;
                nc += 1;
            }
        }
    }
    ensure(na > 0 && nc > 0, || {
        "no module algebras or coalgebras in the library".into()
    })?;
    Ok(format!("{na} algebras, {nc} coalgebras"))
}

fn oracle() -> Outcome {
    let mut pairs = 0;
    for g in support::corpus::corpus() {
        for id in &g.identities {
            let n = support::dense::agree(&g.ctx, id)
                .map_err(|e| format!("{} {}: {e}", g.label, id.id))?;
            ensure(n > 0, || format!("{} {}: no tuples", g.label, id.id))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 50, || format!("corpus has {pairs} pairs"))?;
    Ok(format!("{pairs} pairs agree"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_homtwist"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        out.status.code().ok_or("killed by a signal")?,
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn expect_code(args: &[&str], code: i32) -> Result<String, String> {
    let (got, out) = cli(args)?;
    ensure(got == code, || {
        format!(
            "`homtwist {}` exited {got}, expected {code}",
            args.join(" ")
        )
    })?;
    Ok(out)
}

fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let tmp = |n: &str| dir.path().join(n);
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));

    for (name, flavor, golden) in [
        ("z2", "monoidal", "z2.json"),
        ("sweedler", "monoidal", "sweedler.json"),
        ("sweedler", "plain", "sweedler-plain.json"),
    ] {
        let out = tmp(golden);
        expect_code(
            &["export-example", name, "--flavor", flavor, "--out", s(&out)],
            0,
        )?;
        ensure(read(&out)? == read(&fixture(golden))?, || {
            format!("{golden} differs from the golden file")
        })?;
    }
    for golden in [
        "z2.json",
        "sweedler.json",
        "sweedler-plain.json",
        "sweedler-grouplike.json",
    ] {
        let text = read(&fixture(golden))?;
        let parsed = parse_algebra(&text).map_err(|e| format!("{golden}: {e}"))?;
        ensure(write_algebra(&parsed) == text, || {
            format!("{golden} does not round-trip")
        })?;
        expect_code(&["verify", s(&fixture(golden))], 0)?;
    }

    let out = expect_code(&["verify", s(&fixture("z2-tampered.json"))], 1)?;
    ensure(out.contains("FAIL bialg.counit-multiplicative"), || {
        "tampered file: no counit failure".into()
    })?;
    std::fs::write(tmp("garbage.json"), "{\"format_version\": 1").map_err(|e| e.to_string())?;
    expect_code(&["verify", s(&tmp("garbage.json"))], 2)?;
    expect_code(&["verify", s(&tmp("missing.json"))], 2)?;
    expect_code(
        &["export-example", "nonexistent", "--out", s(&tmp("x.json"))],
        2,
    )?;

    let report = tmp("report.json");
    expect_code(
        &[
            "verify",
            s(&fixture("z2-tampered.json")),
            "--report",
            s(&report),
        ],
        1,
    )?;
    let r = ReportFile::parse(&read(&report)?).map_err(|e| e.to_string())?;
    ensure(r.failed > 0 && r.failed == r.report().failed(), || {
        "report totals".into()
    })?;

    let tw = tmp("tw.json");
    expect_code(
        &[
            "twist",
            s(&fixture("sweedler.json")),
            "--twist",
            "grouplike",
            "--out",
            s(&tw),
        ],
        0,
    )?;
    ensure(
        read(&tw)? == read(&fixture("sweedler-grouplike.json"))?,
        || "twisted output differs from the golden file".into(),
    )?;
    expect_code(
        &[
            "twist",
            s(&fixture("sweedler.json")),
            "--twist",
            "nonexistent",
            "--out",
            s(&tmp("t2.json")),
        ],
        2,
    )?;
    expect_code(
        &[
            "twist",
            s(&fixture("sweedler-plain.json")),
            "--twist",
            "trivial",
            "--out",
            s(&tmp("t3.json")),
        ],
        3,
    )?;

    let rc = |seed: &str, name: &str| -> Result<String, String> {
        let p = tmp(name);
        expect_code(
            &[
                "repcheck",
                s(&fixture("z2.json")),
                "--grid",
                "-1..1",
                "0..1",
                "--modules",
                "trivial,regular,random",
                "--seed",
                seed,
                "--report",
                s(&p),
            ],
            0,
        )?;
        read(&p)
    };
    let ids = |text: String| -> Result<Vec<String>, String> {
        let r = ReportFile::parse(&text).map_err(|e| e.to_string())?;
        Ok(r.checks.into_iter().map(|c| c.id).collect())
    };
    ensure(ids(rc("4", "a.json")?)? == ids(rc("4", "b.json")?)?, || {
        "repcheck is not deterministic".into()
    })?;
    expect_code(
        &[
            "repcheck",
            s(&fixture("z2.json")),
            "--grid",
            "-9..9",
            "-9..9",
        ],
        3,
    )?;
    expect_code(
        &["repcheck", s(&fixture("z2.json")), "--grid", "2..1", "0..0"],
        2,
    )?;
    Ok("exports, round trips, and exit codes 0/1/2/3".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    let mut line = |k: usize, name: &str, t: Instant, r: Outcome| {
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("PASS {k:>2} {name}: {d} [{secs:.1}s]"),
            Err(d) => {
                failed += 1;
                println!("FAIL {k:>2} {name}: {d} [{secs:.1}s]");
            }
        }
    };
    let guarded = |f: Check| -> Outcome {
        catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or("panic".into()))
        })
    };
    let criteria: [(&str, Check); 6] = [
        ("axiom closure of lifts", lifts),
        ("twisted bialgebras", twisted_bialgebras),
        ("twist consequences", twist_consequences),
        ("twisting and the correspondence", correspondence),
        ("twisted antipodes", antipodes),
        ("twisted R-matrices and QHYBE", rmatrices),
    ];
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        line(k + 1, name, t, guarded(f));
    }
    let t = Instant::now();
    let sw = catch_unwind(sweep).unwrap_or_else(|_| Sweep {
        coherence: Err("panic".into()),
        functors: Err("panic".into()),
    });
    line(7, "representation-category coherence", t, sw.coherence);
    line(8, "functors F and G", t, sw.functors);
    let rest: [(usize, &str, Check); 3] = [
        (9, "twisted module algebras and coalgebras", module_twists),
        (10, "oracle equivalence", oracle),
        (11, "CLI contract", cli_contract),
    ];
    for (k, name, f) in rest {
        let t = Instant::now();
        line(k, name, t, guarded(f));
    }
    println!(
        "{} of 11 criteria passed in {:.1}s",
        11 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
