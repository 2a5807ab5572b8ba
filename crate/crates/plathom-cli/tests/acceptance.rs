//! Runs `plathom selftest` twice and reports each acceptance criterion.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

use serde_json::Value;

const CRITERIA: [&str; 10] = [
    "d² = 0 for d0 and d0 + d1",
    "vertex homology is free of rank one with binomial gradings",
    "E2 equals Khovanov homology",
    "edge maps compose to U actions",
    "homology-level U action identities",
    "MOY relations",
    "invariance of the total homology",
    "sl1 homology and the composition product",
    "strands algebra relations, associativity and h",
    "selftest output is deterministic",
];

fn selftest(cache: &std::path::Path) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_plathom"))
        .args(["--no-cache", "--format", "json-like", "selftest"])
        .env("PLATHOM_CACHE_DIR", cache)
        .current_dir(cache)
        .output()
        .expect("run plathom");
    (out.stdout, out.status.code())
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let (first, code) = selftest(dir.path());
    let (second, _) = selftest(dir.path());

    let parsed: Value = serde_json::from_slice(&first).unwrap_or(Value::Null);
    let mut by_criterion: BTreeMap<u64, (usize, Vec<String>)> = BTreeMap::new();
    for c in parsed["checks"].as_array().into_iter().flatten() {
        let Some(k) = c["criterion"].as_u64() else { continue };
        let entry = by_criterion.entry(k).or_default();
        entry.0 += 1;
        if c["passed"] != Value::Bool(true) {
            entry.1.push(c["name"].as_str().unwrap_or("?").to_string());
        }
    }

    let mut all = true;
    for (i, title) in CRITERIA.iter().enumerate() {
        let k = i as u64 + 1;
        let (ok, detail) = if k == 10 {
            (!first.is_empty() && first == second, format!("{} bytes", first.len()))
        } else {
            match by_criterion.get(&k) {
                Some((n, failed)) if failed.is_empty() => (true, format!("{n} checks")),
                Some((n, failed)) => (false, format!("{} of {n} checks failed: {}", failed.len(), failed.join("; "))),
                None => (false, "no checks ran".to_string()),
            }
        };
        all &= ok;
        println!("criterion {k:>2} {}: {title} ({detail})", if ok { "PASS" } else { "FAIL" });
    }
    if code != Some(0) {
        println!("selftest exit code {code:?}");
        all = false;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
