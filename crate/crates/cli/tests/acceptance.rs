//! One PASS/FAIL line per acceptance criterion, with wall time against budget.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use scf_core::suite::{self, Check};

struct Line {
    id: u32,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn run(id: u32, title: &'static str, budget_s: u64, f: impl FnOnce() -> Vec<Check>) -> Line {
    let t = Instant::now();
    let checks = f();
    let took = t.elapsed();
    let mut ok = took <= Duration::from_secs(budget_s);
    let mut detail = format!("{:.1}s of {budget_s}s", took.as_secs_f64());
    for c in &checks {
        ok &= c.passed();
        detail.push_str(&format!("; {} {}/{}", c.name, c.checked - c.failures.len().min(c.checked), c.checked));
        for f in c.failures.iter().take(3) {
            detail.push_str(&format!("\n      {f}"));
        }
    }
    Line { id, title, ok, detail }
}

fn tables_twice() -> Check {
    let mut c = Check::new("scf tables twice");
    let go = || Command::new(env!("CARGO_BIN_EXE_scf")).args(["tables", "--format", "md"]).output().unwrap();
    let (a, b) = (go(), go());
    c.expect(a.status.success() && b.status.success(), || "scf tables failed".into());
    c.expect(!a.stdout.is_empty() && a.stdout == b.stdout, || "outputs differ".into());
    let go = || Command::new(env!("CARGO_BIN_EXE_scf")).args(["tables", "--format", "json"]).output().unwrap();
    let (a, b) = (go(), go());
    c.expect(a.status.success() && a.stdout == b.stdout, || "json outputs differ".into());
    c
}

#[test]
fn acceptance() {
    let lines = vec![
        run(1, "bracket tables", 10, || vec![suite::bracket_tables()]),
        run(2, "Jacobi fuzz", 30, || vec![suite::jacobi_fuzz(500, 1)]),
        run(3, "N2 singular lists", 60, || vec![suite::n2_singular(20, 7)]),
        run(4, "N2 ranks", 60, || vec![suite::n2_ranks(20, 7)]),
        run(5, "N3 tables and identities", 120, || vec![suite::catalog("n3")]),
        run(6, "N3 ranks", 300, || vec![suite::n3_ranks(4)]),
        run(7, "small N4", 600, || vec![suite::catalog("sn4"), suite::small_n4_ranks(3)]),
        run(8, "big N4", 1200, || vec![suite::catalog("bn4"), suite::big_n4_ranks(2)]),
        run(9, "lambda axioms", 60, || vec![suite::lambda_axioms()]),
        run(10, "representation property", 300, || vec![suite::representation(11)]),
        run(11, "determinism", 120, || vec![tables_twice()]),
    ];
    // Written to the raw handle so the lines show without --nocapture.
    let mut err = std::io::stderr().lock();
    for l in &lines {
        let _ = writeln!(err, "{} {:>2} {}: {}", if l.ok { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
