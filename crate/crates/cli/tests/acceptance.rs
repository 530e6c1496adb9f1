//! Acceptance criteria, one PASS/FAIL line each. Run with `--nocapture` to
//! see the lines.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use isofact::classify::{self, BoundStatus};
use isofact::construct::{self, BettiDivisibleParams};
use isofact::explore::{self, enumerate_numerical_by_genus};
use isofact::{betti, constants, factor, isolated, Exec, NatVec, Semigroup};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isofact")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> Result<String, String> {
    let out = run(args);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    if out.status.code() != Some(0) {
        return Err(format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(text)
}

fn contains(text: &str, needle: &str) -> Result<(), String> {
    if text.contains(needle) {
        Ok(())
    } else {
        Err(format!("output lacks {needle:?}:\n{text}"))
    }
}

fn ns(g: &[u64]) -> Semigroup {
    Semigroup::numerical(g).unwrap()
}

fn facts(v: &[&[u64]]) -> Vec<NatVec> {
    let mut out: Vec<NatVec> = v.iter().map(|x| NatVec::new(x.to_vec())).collect();
    out.sort();
    out
}

fn scalar_betti(s: &Semigroup) -> Vec<u64> {
    betti::betti_profile(s).unwrap().values().iter().map(|v| v[0]).collect()
}

fn golden_four() -> Check {
    let t0 = Instant::now();
    let s = ns(&[24, 26, 36, 39]);
    let p = betti::betti_profile(&s).map_err(|e| e.to_string())?;
    let ip = isolated::isolated_profile(&s, &p).map_err(|e| e.to_string())?;
    let rel = betti::minimal_presentation(&s).map_err(|e| e.to_string())?;
    let ci = betti::is_complete_intersection(&s).map_err(|e| e.to_string())?;
    let arr = constants::Arrangement::new(&s, vec![0, 2, 1, 3]).map_err(|e| e.to_string())?;
    let free = classify::is_free(&s, &arr).map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed();
    let ms = elapsed.as_secs_f64() * 1000.0;
    ensure!(scalar_betti(&s) == [72, 78, 156], "Betti {:?}", scalar_betti(&s));
    ensure!(ip.betti[2].isolated.is_empty(), "156 has isolated factorizations");
    ensure!(rel.len() == 3 && ci && free, "presentation {} ci {ci} free {free}", rel.len());
    ensure!(elapsed < Duration::from_millis(50), "took {ms:.1} ms");

    let text = stdout(&["analyze", "--gens", "24,26,36,39"])?;
    contains(&text, "Betti {72,78,156}")?;
    contains(&text, "156: no isolated factorizations")?;
    contains(&text, "minimal presentation of size 3")?;
    contains(&text, "complete intersection: yes")?;
    contains(&text, "arrangement (24,26,36,39)")?;
    let text = stdout(&["classify", "--gens", "24,26,36,39", "--order", "24,36,26,39"])?;
    contains(&text, "free for arrangement (24,36,26,39): yes")?;
    let json = stdout(&["analyze", "--gens", "2,3", "--json"])?;
    contains(&json, "\"betti\":[6]")?;
    Ok(format!("analysis in {ms:.2} ms"))
}

fn sixteen() -> Check {
    let s = ns(&[16, 20, 30, 45]);
    let ib = isolated::ib_set(&s).map_err(|e| e.to_string())?;
    let want = facts(&[&[0, 3, 0, 0], &[0, 0, 2, 0], &[5, 0, 0, 0], &[0, 0, 0, 2]]);
    ensure!(ib.factorizations == want, "I_b {:?}", ib.factorizations);
    let mins = isolated::betti_minimals(&s).map_err(|e| e.to_string())?;
    ensure!(mins == [NatVec::scalar(60)], "Betti minimals {mins:?}");
    let (alpha, _) = classify::is_alpha_rectangular(&s, &[1]).map_err(|e| e.to_string())?;
    ensure!(alpha, "not alpha-rectangular for 20");
    let text = stdout(&["factorize", "--gens", "16,20,30,45", "--element", "80"])?;
    contains(&text, "element 80: 3 factorizations")?;
    Ok("I_b, single minimal 60, α-rectangular for 20".into())
}

fn three_four_five() -> Check {
    let s = ns(&[3, 4, 5]);
    let is = isolated::is_set(&s).map_err(|e| e.to_string())?;
    let want = facts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, 0, 0], &[1, 1, 0]]);
    ensure!(is.factorizations == want, "I_s {:?}", is.factorizations);
    let b = classify::verify_bounds(&s).map_err(|e| e.to_string())?;
    let row = |id: &str| b.iter().find(|x| x.id == id).cloned().unwrap();
    let (lo_e, lo_c) = (row("is_lower_e"), row("is_lower_c"));
    ensure!((lo_e.lhs, lo_e.rhs, lo_c.rhs) == (6, 6, 6), "{lo_e:?} {lo_c:?}");
    Ok("e + 3 = sum c - e + 2 = i_s = 6".into())
}

fn random_pairs() -> Check {
    let mut rng = StdRng::seed_from_u64(20);
    let mut done = 0;
    while done < 20 {
        let a = rng.gen_range(2u64..20);
        let b = rng.gen_range(a + 1..=400 / a);
        if common::gcd_all(&[a, b]) != 1 {
            continue;
        }
        let s = ns(&[a, b]);
        let p = betti::betti_profile(&s).map_err(|e| e.to_string())?;
        let ip = isolated::isolated_profile(&s, &p).map_err(|e| e.to_string())?;
        ensure!(ip.i_s == Some((a * b) as usize) && ip.i_b == 2, "<{a},{b}>: i_s {:?} i_b {}", ip.i_s, ip.i_b);
        done += 1;
    }
    Ok("20 pairs: i_s = n1 n2, i_b = 2".into())
}

fn divisible_search() -> Check {
    let t0 = Instant::now();
    let h = explore::min_frobenius_betti_divisible(4, 600, 2, Exec::Parallel).map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed();
    let ms = elapsed.as_secs_f64() * 1000.0;
    ensure!((h.frobenius, h.generators.as_slice()) == (523, &[30, 42, 105, 140][..]), "{h:?}");
    ensure!(elapsed < Duration::from_secs(2), "took {ms:.0} ms");
    let s = ns(&h.generators);
    ensure!(s.frobenius().unwrap() == 523, "F = {}", s.frobenius().unwrap());
    ensure!(scalar_betti(&s) == [210, 420], "Betti {:?}", scalar_betti(&s));
    let text = stdout(&["search", "min-frobenius-betti-divisible", "--edim", "4", "--max-frobenius", "600"])?;
    contains(&text, "523 : ⟨30,42,105,140⟩")?;
    Ok(format!("search in {ms:.1} ms"))
}

fn params_round_trip() -> Check {
    let params = BettiDivisibleParams { a: vec![7, 5, 2, 3], f: vec![1, 1, 1, 2] };
    let s = construct::betti_divisible_from_params(&params).map_err(|e| e.to_string())?;
    let back = construct::recover_params(&s).map_err(|e| e.to_string())?.ok_or("no parameters recovered")?;
    ensure!(back.params == params, "recovered {:?}", back.params);
    let json = stdout(&["construct", "params", "--a", "7,5,2,3", "--f", "1,1,1,2", "--json"])?;
    let v: Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure!(v["round_trip"] == Value::Bool(true), "{json}");
    Ok(format!("{s} and back"))
}

fn affine_goldens() -> Check {
    let text = stdout(&["analyze", "--gens", "(1,0);(0,2);(0,3)"])?;
    contains(&text, "I_b = {(0,0,2),(0,3,0)}")?;
    contains(&text, "𝒞 = {2,3}")?;
    let m = "(1,0,1);(0,1,0);(1,1,0);(0,0,1)";
    let text = stdout(&["analyze", "--gens", m, "--degree-bound", "8"])?;
    contains(&text, "Betti {(1,1,1)}")?;
    contains(&text, "𝒞 = {}")?;
    let gens: Vec<Vec<u64>> = vec![vec![1, 0, 1], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]];
    let brute = common::affine_betti(&gens, 8);
    ensure!(brute == BTreeSet::from([vec![1, 1, 1]]), "brute Betti {brute:?}");
    Ok("both goldens, brute force to degree 8".into())
}

fn genus_suite() -> Check {
    let json = stdout(&["verify", "--genus", "15", "--with-gluings", "--json"])?;
    let v: Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let n = v["report"]["semigroups"].as_u64().unwrap_or(0);
    ensure!(v["violation_count"] == 0, "violations: {}", v["violation_count"]);
    let strict = v["report"]["strictness"].as_array().ok_or("no strictness")?;
    ensure!(strict.len() == 6 && strict.iter().all(|s| s["witness"].is_string()), "{strict:?}");
    let text = stdout(&["verify", "--genus", "8"])?;
    contains(&text, "0 violations")?;
    Ok(format!("{n} semigroups, 0 violations, 6 strictness witnesses"))
}

fn oracles() -> Check {
    let mut corpus: Vec<Vec<u64>> = enumerate_numerical_by_genus(7, Exec::Sequential)
        .unwrap()
        .entries
        .iter()
        .filter(|e| e.generators.len() >= 2)
        .map(|e| e.generators.iter().map(|v| v[0]).collect())
        .collect();
    corpus.extend(common::small_semigroups(3, 20, 60));
    for g in &corpus {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        ensure!(scalar_betti(&ns(g)) == common::betti_numerical(&sorted), "Betti of {g:?}");
    }
    let mut fibers = 0;
    for g in [&[4u64, 6, 9][..], &[5, 7, 9, 11], &[16, 20, 30, 45]] {
        let s = ns(g);
        for m in 1..=100u64 {
            let brute = common::factorizations(g, m);
            if brute.is_empty() || brute.len() > 50 {
                continue;
            }
            let f = factor::fiber(&s, &NatVec::scalar(m)).map_err(|e| e.to_string())?;
            let mut lib: Vec<Vec<Vec<u64>>> = f
                .classes
                .iter()
                .map(|c| {
                    let mut v: Vec<Vec<u64>> = c.iter().map(|&i| f.factorizations[i].coords().to_vec()).collect();
                    v.sort();
                    v
                })
                .collect();
            lib.sort();
            ensure!(lib == common::r_classes(&brute), "R-classes of {m} in {g:?}");
            fibers += 1;
        }
    }
    let bounds_ok = corpus
        .iter()
        .take(50)
        .all(|g| classify::verify_bounds(&ns(g)).map(|b| b.iter().all(|x| x.status != BoundStatus::Fail)).unwrap_or(false));
    ensure!(bounds_ok, "a bound failed");
    Ok(format!("{} Betti sweeps, {fibers} fibers", corpus.len()))
}

fn determinism() -> Check {
    let args = ["verify", "--genus", "12", "--threads", "8", "--json"];
    let a = run(&args);
    let b = run(&args);
    ensure!(a.status.code() == Some(0), "exit {:?}", a.status.code());
    ensure!(!a.stdout.is_empty() && a.stdout == b.stdout, "outputs differ");
    Ok(format!("{} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("golden <24,26,36,39>", golden_four),
        ("<16,20,30,45> isolated set", sixteen),
        ("<3,4,5> unique factorizations", three_four_five),
        ("coprime pairs", random_pairs),
        ("least Betti divisible Frobenius number", divisible_search),
        ("parameter round trip", params_round_trip),
        ("affine goldens", affine_goldens),
        ("genus 15 property suite", genus_suite),
        ("brute-force oracles", oracles),
        ("deterministic verify output", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "--gens", "4,x"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--gens", "4,6"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--gens", "(1,0,1);(0,1,0);(1,1,0);(0,0,1)"]).status.code(), Some(3));
    assert_eq!(run(&["glue", "--left", "2,3", "--right", "2,3", "--a1", "5", "--a2", "3"]).status.code(), Some(2));
    assert_eq!(run(&["search", "min-frobenius-betti-divisible", "--edim", "4", "--max-frobenius", "100"]).status.code(), Some(3));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn json_errors_are_objects() {
    let out = run(&["analyze", "--gens", "4,6", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["category"], "input");
}
