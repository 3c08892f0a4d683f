//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command as Process;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

use gorinj::gorenstein::{check_thm_4_1, filtration, functoriality_check, is_gorenstein_injective, Witness};
use gorinj::module::syntax::parse_module;
use gorinj::module::{gamma, has_property_t, normalize};
use gorinj::oracle::{oracle_compare, smith_normal_form, verify_smith, Matrix, OracleGrid, OracleReport};
use gorinj::ring::Integers;
use gorinj::tor::{cosyzygy, injective_hull, tensor, tor, TableRow, TorTable};
use gorinj::{parse_ring, Atom, PrimeSpec, Ring, TameModule};
use gorinj_cli::report::EXPERIMENT_OPERATION;
use gorinj_cli::sweep::{
    gi_grid, generate_morphisms, injective_probes, injective_table_cases, module_cases, resolve_primes,
    filtration_case, MORPHISMS_PER_RING,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn ring_with(desc: &str, gens: &[&str]) -> (Ring, Vec<PrimeSpec>) {
    let ring = parse_ring(desc).unwrap();
    let literals: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    let primes = resolve_primes(&ring, &literals).unwrap();
    (ring, primes)
}

fn within(t: Duration, secs: f64) -> bool {
    t.as_secs_f64() < secs
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rings = [
        ("Z", vec!["2", "3", "5"]),
        ("Q[x]", vec!["x", "x+1", "x^2+x+1"]),
        ("F2[x]", vec!["x", "x+1", "x^2+x+1"]),
        ("Z/12", vec![]),
        ("Z/360", vec![]),
        ("F2[x]/(x^3)", vec![]),
    ];
    let mut cases = 0;
    let mut bad = Vec::new();
    for (desc, gens) in &rings {
        let (ring, primes) = ring_with(desc, gens);
        for c in injective_table_cases(&ring, &primes) {
            cases += 1;
            if !c.verdict {
                bad.push(format!("{desc}: {:?} -> {}", c.inputs, c.output));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && within(t, 5.0),
        format!("{} rings, {cases} cases, {} mismatches, {:.2}s (limit 5s) {:?}", rings.len(), bad.len(), t.as_secs_f64(), bad),
    )
}

/// The oracle grids: Z over {2,3,5} with exponents to 4 and k <= 2, and
/// Z/(2^E * 3) for E <= 4 with k <= 4.
fn oracle_grids() -> Vec<OracleGrid> {
    let (z, primes) = ring_with("Z", &["2", "3", "5"]);
    let mut grids = vec![OracleGrid::new(&z, primes, 4, 2)];
    for e in 1..=4 {
        let ring = parse_ring(&format!("Z/{}", (1u32 << e) * 3)).unwrap();
        grids.push(OracleGrid::new(&ring, vec![], 4, 4));
    }
    grids
}

fn run_grids(table: &TorTable) -> Vec<OracleReport> {
    oracle_grids().iter().map(|g| oracle_compare(g, table).unwrap()).collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let reports = run_grids(&TorTable::exact());
    let t = start.elapsed();
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    let bad: Vec<String> = reports.iter().flat_map(|r| r.mismatches()).map(|c| c.to_string()).collect();
    let late = reports.iter().flat_map(|r| &r.cases).filter_map(|c| c.stabilized_at).max().unwrap_or(0);
    outcome(
        bad.is_empty() && within(t, 30.0),
        format!(
            "{cases} oracle cases, {} mismatches, latest stabilization stage {late}, {:.2}s (limit 30s) {:?}",
            bad.len(),
            t.as_secs_f64(),
            bad
        ),
    )
}

fn integer_grid() -> (Ring, Vec<TameModule>) {
    let (z, primes) = ring_with("Z", &["2", "3", "5"]);
    let grid = gi_grid(&z, &primes, 1, 4);
    (z, grid)
}

fn artinian_grid() -> (Ring, Vec<TameModule>) {
    let (r, primes) = ring_with("Z/360", &[]);
    let grid = gi_grid(&r, &primes, 3, 3);
    (r, grid)
}

fn thm41_failures(grid: &[TameModule]) -> usize {
    grid.par_iter()
        .map(|g| grid.iter().filter(|h| !check_thm_4_1(g, h).map(|c| c.holds()).unwrap_or(false)).count())
        .sum()
}

fn criterion_3() -> Outcome {
    let (_, zgrid) = integer_grid();
    let start = Instant::now();
    let zfail = thm41_failures(&zgrid);
    let tz = start.elapsed();
    let (_, agrid) = artinian_grid();
    let start = Instant::now();
    let afail = thm41_failures(&agrid);
    let ta = start.elapsed();
    outcome(
        zgrid.len() == 70 && zfail == 0 && afail == 0 && within(tz, 5.0),
        format!(
            "Z: {} modules, {} pairs, {zfail} failures, {:.2}s (limit 5s); Z/360: {} modules, {} pairs, {afail} failures, {:.2}s",
            zgrid.len(),
            zgrid.len().pow(2),
            tz.as_secs_f64(),
            agrid.len(),
            agrid.len().pow(2),
            ta.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for (ring, grid) in [integer_grid(), artinian_grid()] {
        let layer_fail = grid.par_iter().filter(|g| !matches!(filtration_case(g), Ok((_, true)))).count();
        let morphisms = generate_morphisms(&ring, &grid, MORPHISMS_PER_RING);
        let func_fail = morphisms.iter().filter(|f| !functoriality_check(f).unwrap_or(false)).count();
        pass &= layer_fail == 0 && func_fail == 0 && morphisms.len() >= 50;
        detail.push(format!(
            "{ring}: {} filtrations, {layer_fail} failures; {} morphisms, {func_fail} failures",
            grid.len(),
            morphisms.len()
        ));
    }
    outcome(pass, detail.join("; "))
}

fn criterion_5() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for ((ring, grid), gens) in [(integer_grid(), vec!["2", "3", "5"]), (artinian_grid(), vec![])] {
        let literals: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let primes = resolve_primes(&ring, &literals).unwrap();
        let probes = injective_probes(&ring, &primes);
        let cases: Vec<_> = grid.par_iter().flat_map_iter(|g| module_cases(&ring, g, &probes, 2)).collect();
        let bad: Vec<String> =
            cases.iter().filter(|c| !c.verdict).map(|c| format!("{} {:?}: {}", c.operation, c.inputs, c.output)).collect();
        let count = |op: &str| cases.iter().filter(|c| c.operation == op).count();
        pass &= bad.is_empty();
        detail.push(format!(
            "{ring}: lemma2.1 {}, prop2.2 {}, cor2.3 {}, prop2.4 {}, {} failures {:?}",
            count("lemma2.1"),
            count("prop2.2"),
            count("cor2.3"),
            count("prop2.4"),
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ));
    }
    outcome(pass, detail.join("; "))
}

/// Every module over the ring with at most three cyclic generators `R/(d)`.
fn small_modules(ring: &Ring, cyclic_texts: &[String]) -> Vec<TameModule> {
    let mut out = Vec::new();
    let n = cyclic_texts.len();
    for a in 0..=n {
        for b in a..=n {
            for c in b..=n {
                let parts: Vec<&str> =
                    [a, b, c].iter().filter(|&&i| i < n).map(|&i| cyclic_texts[i].as_str()).collect();
                let text = if parts.is_empty() { "0".to_string() } else { parts.join(" (+) ") };
                out.push(parse_module(ring, &text).unwrap());
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let z12 = parse_ring("Z/12").unwrap();
    let f2 = parse_ring("F2[x]/(x^3)").unwrap();
    let texts12: Vec<String> = [2, 3, 4, 6, 12].iter().map(|d| format!("Z/{d}")).collect();
    let textsf2: Vec<String> = vec!["C(x,1)".into(), "C(x,2)".into(), "C(x,3)".into()];
    for (ring, texts) in [(z12, texts12), (f2, textsf2)] {
        let modules = small_modules(&ring, &texts);
        let mut failures = 0;
        for m in &modules {
            let cert = is_gorenstein_injective(m);
            let f = filtration(m).unwrap();
            let single = f.layers().len() == 1 && f.layers()[0].k == 0;
            let crt = ring
                .minimal_primes()
                .iter()
                .all(|p| f.layers()[0].summands.get(p).cloned().unwrap_or_else(|| TameModule::zero(&ring)) == gamma(p, m).unwrap());
            let ok = cert.verdict
                && cert.witness == Witness::DimensionZero
                && cert.verify(m)
                && single
                && crt
                && f.reconstruct() == *m;
            if !ok {
                failures += 1;
            }
        }
        pass &= failures == 0;
        detail.push(format!("{ring}: {} modules, {failures} failures", modules.len()));
    }
    outcome(pass, detail.join("; "))
}

fn criterion_7() -> Outcome {
    use common::{build, build_filtered, choice, fixture_index, fixtures, pick_prime, prime_pair};
    let start = Instant::now();
    let config = Config { cases: 10_000, failure_persistence: None, ..Config::default() };
    let mut results: Vec<(&str, Result<(), String>)> = Vec::new();
    let mut run = |name: &'static str, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new(config.clone());
        results.push((name, f(&mut runner)));
    };

    run("normalize", &|r| {
        r.run(&(fixture_index(), choice()), |(fi, c)| {
            let f = &fixtures()[fi];
            let raw: Vec<Atom> = c.iter().map(|(i, _)| f.pool[i % f.pool.len()].clone()).collect();
            let m = normalize(&f.ring, &raw).unwrap();
            prop_assert_eq!(normalize(&f.ring, &m.instances()).unwrap(), m.clone());
            let rev: Vec<Atom> = raw.iter().rev().cloned().collect();
            prop_assert_eq!(normalize(&f.ring, &rev).unwrap(), m);
            Ok(())
        })
        .map_err(describe)
    });
    run("t(P) exclusivity", &|r| {
        r.run(&(fixture_index(), choice(), 0usize..8, 0usize..8), |(fi, c, i, j)| {
            let f = &fixtures()[fi];
            let Some((p, q)) = prime_pair(f, i, j) else { return Ok(()) };
            let t = |a: &Atom, p: &PrimeSpec| has_property_t(&TameModule::atom(&f.ring, a.clone()).unwrap(), p).unwrap();
            let m = build_filtered(f, &c, |a| t(a, &p) || t(a, &q));
            if has_property_t(&m, &p).unwrap() && has_property_t(&m, &q).unwrap() {
                prop_assert!(m.is_zero());
            }
            Ok(())
        })
        .map_err(describe)
    });
    run("gamma", &|r| {
        r.run(&(fixture_index(), choice(), choice(), 0usize..8), |(fi, a, b, i)| {
            let f = &fixtures()[fi];
            let (m, n) = (build(f, &a), build(f, &b));
            let p = pick_prime(f, i);
            let gm = gamma(&p, &m).unwrap();
            prop_assert_eq!(gamma(&p, &gm).unwrap(), gm.clone());
            prop_assert_eq!(
                gamma(&p, &m.direct_sum(&n).unwrap()).unwrap(),
                gm.direct_sum(&gamma(&p, &n).unwrap()).unwrap()
            );
            Ok(())
        })
        .map_err(describe)
    });
    run("tensor/tor", &|r| {
        r.run(&(fixture_index(), choice(), choice(), choice(), 0u32..4), |(fi, a, b, c, k)| {
            let f = &fixtures()[fi];
            let (m, n, l) = (build(f, &a), build(f, &b), build(f, &c));
            prop_assert_eq!(tensor(&m, &n).unwrap(), tensor(&n, &m).unwrap());
            prop_assert_eq!(tor(k, &m, &n).unwrap(), tor(k, &n, &m).unwrap());
            let lhs = tor(k, &m.direct_sum(&n).unwrap(), &l).unwrap();
            prop_assert_eq!(lhs, tor(k, &m, &l).unwrap().direct_sum(&tor(k, &n, &l).unwrap()).unwrap());
            Ok(())
        })
        .map_err(describe)
    });
    run("hull/cosyzygy t(P)", &|r| {
        r.run(&(fixture_index(), choice(), 0usize..8), |(fi, a, i)| {
            let f = &fixtures()[fi];
            let p = pick_prime(f, i);
            let s = build_filtered(f, &a, |atom| {
                has_property_t(&TameModule::atom(&f.ring, atom.clone()).unwrap(), &p).unwrap()
            });
            prop_assert!(has_property_t(&injective_hull(&s), &p).unwrap());
            prop_assert!(has_property_t(&cosyzygy(&s), &p).unwrap());
            Ok(())
        })
        .map_err(describe)
    });
    run("smith", &|r| {
        let matrix = (1usize..5, 1usize..5)
            .prop_flat_map(|(rows, cols)| prop::collection::vec(prop::collection::vec(-20i64..20, cols), rows));
        r.run(&matrix, |a| {
            let m = Matrix::from_rows(
                a[0].len(),
                a.iter().map(|row| row.iter().map(|&x| num_bigint::BigInt::from(x)).collect()).collect(),
            );
            let s = smith_normal_form(&Integers, &m);
            prop_assert_eq!(verify_smith(&Integers, &m, &s), Ok(()));
            Ok(())
        })
        .map_err(describe)
    });
    let t = start.elapsed();
    let failed: Vec<String> =
        results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    outcome(
        failed.is_empty() && within(t, 60.0),
        format!("{} suites x 10000 cases, {:.2}s (limit 60s) {:?}", results.len(), t.as_secs_f64(), failed),
    )
}

fn describe<T: std::fmt::Debug>(e: proptest::test_runner::TestError<T>) -> String {
    format!("{e:?}")
}

fn gorinj(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_gorinj")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_8() -> Outcome {
    let dir = std::env::temp_dir().join(format!("gorinj-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for (ring, extra) in [("Z", vec!["--primes", "2,3", "--max-atoms", "3"]), ("Z/12", vec![])] {
        let path = dir.join(format!("{}.json", ring.replace('/', "_")));
        let mut args = vec!["--ring", ring, "--sweep", "--json", path.to_str().unwrap()];
        args.extend(extra);
        let (code, _) = gorinj(&args);
        let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let cases = doc["cases"].as_array().unwrap();
        let experiment: Vec<&serde_json::Value> =
            cases.iter().filter(|c| c["operation"] == EXPERIMENT_OPERATION).collect();
        let crashed = experiment.iter().filter(|c| c["output"].as_str().unwrap().starts_with("error:")).count();
        let gi_true = experiment.iter().filter(|c| c["output"].as_str().unwrap().ends_with("gi = true")).count();
        let ks = [1, 2].iter().all(|k| experiment.iter().any(|c| c["inputs"][0] == format!("k={k}")));
        let ok = code == 0 && !experiment.is_empty() && crashed == 0 && ks;
        pass &= ok;
        detail.push(format!(
            "{ring}: {} experiment cases, {gi_true} with gi = true, {crashed} crashed, exit {code}",
            experiment.len()
        ));
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(pass, detail.join("; "))
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let mut lines = Vec::new();
    let (clean, _) = gorinj(&["--ring", "Z", "--sweep", "--primes", "2,3"]);
    pass &= clean == 0;
    for row in TableRow::ALL {
        let mismatches: usize = run_grids(&TorTable::with_fault(row)).iter().map(|r| r.mismatches().len()).sum();
        let ring = if row.name().starts_with("artinian") { "Z/12" } else { "Z" };
        let mut args = vec!["--ring", ring, "--sweep", "--inject-fault", row.name()];
        if ring == "Z" {
            args.extend(["--primes", "2,3"]);
        }
        let (code, _) = gorinj(&args);
        let ok = mismatches > 0 && code == 1;
        pass &= ok;
        lines.push(format!("{row}: {mismatches} mismatches, exit {code}"));
    }
    outcome(pass, format!("clean sweep exit {clean}; {}", lines.join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("tor of injectives", criterion_1),
        ("oracle equivalence", criterion_2),
        ("tensor closure of GI modules", criterion_3),
        ("filtration layers and functoriality", criterion_4),
        ("verifier battery", criterion_5),
        ("dimension zero", criterion_6),
        ("property suites", criterion_7),
        ("Tor GI experiment report", criterion_8),
        ("fault injection", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("[{}] criterion {} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
