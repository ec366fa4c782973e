//! The ten acceptance criteria, each at its stated tolerance, printing one
//! `PASS`/`FAIL` line per criterion. Every criterion runs on a one-thread
//! pool (timed), on a four-thread pool and once more on the global pool;
//! criterion 10 compares the three runs bit for bit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hypermap::verify::{all_passed, example_outcomes, run_check, CheckParams, CheckReport};
use hypermap::VertexSet;

struct Criterion {
    id: u8,
    title: &'static str,
    checks: &'static [&'static str],
    params: fn() -> CheckParams,
    time_limit: Option<Duration>,
}

fn defaults() -> CheckParams {
    CheckParams::default()
}

fn three_vertices() -> CheckParams {
    CheckParams { vertex_sets: Some(vec![VertexSet::numbered("v", 3).unwrap()]), ..CheckParams::default() }
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "complement and closure images of the hypergraph law",
        checks: &["thm1.1-all"],
        params: defaults,
        time_limit: Some(Duration::from_secs(5)),
    },
    Criterion {
        id: 2,
        title: "closed-form products equal preimage sums",
        checks: &["thm3.5-all"],
        params: defaults,
        time_limit: None,
    },
    Criterion {
        id: 3,
        title: "join of independent laws on 2+2 vertices",
        checks: &["cor1.2-join-1", "cor1.2-join-2", "cor1.2-join-3"],
        params: defaults,
        time_limit: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 3,
        title: "intersection and union of independent laws on 3 vertices",
        checks: &["cor1.3-capcup-1", "cor1.3-capcup-2", "cor1.3-capcup-3"],
        params: three_vertices,
        time_limit: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 4,
        title: "closure operators commute with set operations in law",
        checks: &["lemma3.1-all"],
        params: defaults,
        time_limit: None,
    },
    Criterion {
        id: 5,
        title: "operator identity suite",
        checks: &["lemma2.4", "relations-2.1"],
        params: defaults,
        time_limit: None,
    },
    Criterion {
        id: 6,
        title: "worked example fixtures",
        checks: &["example-2.1-fixtures"],
        params: defaults,
        time_limit: None,
    },
    Criterion {
        id: 7,
        title: "sampler statistics at N=200000",
        checks: &["sampler-stat-pbar", "sampler-stat-p", "sampler-stat-q"],
        params: three_vertices,
        time_limit: Some(Duration::from_secs(30)),
    },
    Criterion {
        id: 8,
        title: "lower closures of hypergraph samples match direct samples",
        checks: &["cross-sampler"],
        params: three_vertices,
        time_limit: None,
    },
    Criterion {
        id: 9,
        title: "random pipelines stay in their class",
        checks: &["pipeline-class-complex", "pipeline-class-indep"],
        params: defaults,
        time_limit: None,
    },
];

fn run_criterion(c: &Criterion) -> Vec<CheckReport> {
    let params = (c.params)();
    c.checks
        .iter()
        .flat_map(|name| run_check(name, &params).unwrap_or_else(|e| panic!("{name}: {e}")))
        .collect()
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(f)
}

/// Reports rendered with every value's exact bit pattern.
fn fingerprint(reports: &[CheckReport]) -> Vec<String> {
    reports.iter().map(|r| format!("{r} bits={:016x}", r.value.to_bits())).collect()
}

fn summary(reports: &[CheckReport]) -> String {
    let counted: Vec<&CheckReport> = reports.iter().filter(|r| !r.advisory).collect();
    let passed = counted.iter().filter(|r| r.passed).count();
    let mut failing: Vec<&str> = counted.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    failing.dedup();
    let mut s = format!("{passed}/{} comparisons pass", counted.len());
    if !failing.is_empty() {
        s.push_str(&format!("; failing: {}", failing.join(", ")));
    }
    s
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut identical = true;
    let line = |ok: bool, text: String| {
        println!("{} {text}", if ok { "PASS" } else { "FAIL" });
        ok
    };
    for c in CRITERIA {
        let start = Instant::now();
        let serial = in_pool(1, || run_criterion(c));
        let elapsed = start.elapsed();
        let parallel = in_pool(4, || run_criterion(c));
        identical &= fingerprint(&serial) == fingerprint(&parallel) && fingerprint(&serial) == fingerprint(&run_criterion(c));

        let mut ok = all_passed(&serial);
        let mut text = format!("criterion-{} {}: {}", c.id, c.title, summary(&serial));
        if c.id == 6 {
            let outcomes = example_outcomes().expect("fixtures evaluate");
            let same = outcomes.iter().filter(|o| o.identical()).count();
            ok &= same == outcomes.len();
            text.push_str(&format!(", {same}/{} byte-identical", outcomes.len()));
        }
        text.push_str(&format!(", {:.2}s", elapsed.as_secs_f64()));
        if let Some(limit) = c.time_limit {
            ok &= elapsed < limit;
            text.push_str(&format!(" (limit {}s)", limit.as_secs()));
        }
        if !ok {
            for r in serial.iter().filter(|r| !r.passed && !r.advisory) {
                println!("    {r}");
            }
        }
        all_ok &= line(ok, text);
    }
    all_ok &= line(
        identical,
        "criterion-10 determinism: reports bit-identical across 1-thread, 4-thread and repeated runs".to_string(),
    );
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
